//! Acceptance suite: one line per criterion, nonzero exit if any fails.
//!
//! Expected values come from oracles defined in this file (binomial counts,
//! the zonotope recursion, formal derivatives, minors) rather than from the
//! library routines under test.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use cubical_core::builders::{
    self, catalogue, cube_boundary_signed, zonotope_boundary, Arrangement,
};
use cubical_core::cubation::{fixture, Cubation};
use cubical_core::derivative::{derivation_check, DerivativeComplex};
use cubical_core::lattice::{mine_modular_equations, span_e, zonotope_f};
use cubical_core::parity::{bicolor, eulerian_degree, theorem52_check, ChainOperators};
use cubical_core::{validate_cubical, CubicalComplex};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let t = start.elapsed();
    ensure(t < limit, || format!("took {t:?}, limit {limit:?}"))?;
    Ok(t)
}

fn load(name: &str) -> Result<CubicalComplex, String> {
    catalogue(name).map_err(|e| format!("{name}: {e}"))
}

// ---- oracles ----

fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// f-vector of the boundary of the `k`-cube: `f_i = 2^(k-i) C(k,i)`, `i < k`.
fn cube_f(k: u64) -> Vec<u64> {
    (0..k).map(|i| (1 << (k - i)) * binomial(k, i)).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    (0..a.len().max(b.len()))
        .map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0))
        .collect()
}

fn times_one_plus_t(a: &[i64]) -> Vec<i64> {
    let mut shifted = vec![0];
    shifted.extend_from_slice(a);
    add(a, &shifted)
}

fn mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn trim(mut v: Vec<i64>) -> Vec<i64> {
    while v.len() > 1 && v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn derivative(a: &[i64]) -> Vec<i64> {
    trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &x)| i as i64 * x)
            .collect(),
    )
}

/// `F(d, n) = F(d, n-1) + (1+t) F(d-1, n)`, `F(d, 0) = (2+t)^(d+1) - t^(d+1)`,
/// `F(0, n) = 2`.
fn zono_oracle(d: usize, n: usize) -> Vec<i64> {
    if d == 0 {
        return vec![2];
    }
    if n == 0 {
        let mut p = vec![1i64];
        for _ in 0..=d {
            p = mul(&p, &[2, 1]);
        }
        p[d + 1] -= 1;
        return trim(p);
    }
    add(
        &zono_oracle(d, n - 1),
        &times_one_plus_t(&zono_oracle(d - 1, n)),
    )
}

fn f_signed(k: &CubicalComplex) -> Vec<i64> {
    k.f_vector().into_iter().map(|x| x as i64).collect()
}

fn bigs(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return BigInt::zero();
        };
        if p != k {
            m.swap(p, k);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    sign * &m[n - 1][n - 1]
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}

/// Rank and gcd of the maximal nonzero minors of the row span of `rows`.
fn rank_and_minor_gcd(rows: &[Vec<BigInt>]) -> (usize, BigInt) {
    let cols = rows.first().map_or(0, Vec::len);
    for r in (1..=rows.len().min(cols)).rev() {
        let mut g = BigInt::zero();
        for rs in combinations(rows.len(), r) {
            for cs in combinations(cols, r) {
                let m = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| rows[i][j].clone()).collect())
                    .collect();
                g = g.gcd(&determinant(m));
            }
        }
        if !g.is_zero() {
            return (r, g);
        }
    }
    (0, BigInt::zero())
}

// ---- criteria ----

fn derivative_spheres() -> Vec<String> {
    let mut names: Vec<String> = (2..=6).map(|k| format!("cube{k}")).collect();
    names.extend((2..=8).map(|n| format!("{}gon", 2 * n)));
    for d in 1..=3 {
        for n in 1..=3 {
            names.push(format!("zono({},{})", d + 1, d + 1 + n));
        }
    }
    names.extend(
        [
            "4gon*4gon",
            "4gon*6gon",
            "cube3*4gon",
            "6gon*zono(2,3)",
            "cube3*edge",
        ]
        .map(String::from),
    );
    names
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let names = derivative_spheres();
    for name in &names {
        let k = load(name)?;
        let d = DerivativeComplex::build(&k).map_err(|e| format!("{name}: {e}"))?;
        let expected = derivative(&f_signed(&k));
        let got = trim(f_signed(&d.dk));
        ensure(got == expected, || {
            format!("{name}: f(DK) = {got:?}, derivative {expected:?}")
        })?;
        if let Some(k_cube) = name
            .strip_prefix("cube")
            .and_then(|s| s.parse::<u64>().ok())
        {
            ensure(k.f_vector() == cube_f(k_cube), || {
                format!("{name}: f = {:?}", k.f_vector())
            })?;
        }
    }
    let t = within(start, Duration::from_secs(10))?;
    Ok(format!("{} complexes, {t:.2?}", names.len()))
}

fn criterion_2() -> Outcome {
    let pairs = [
        ("4gon", "4gon"),
        ("cube3", "edge"),
        ("6gon", "square"),
        ("cube3", "4gon"),
        ("zono(2,3)", "8gon"),
    ];
    for (a, b) in pairs {
        let (k1, k2) = (load(a)?, load(b)?);
        let r = derivation_check(&k1, &k2).map_err(|e| format!("{a} x {b}: {e}"))?;
        let (f1, f2) = (f_signed(&k1), f_signed(&k2));
        let expected = trim(add(
            &mul(&derivative(&f1), &f2),
            &mul(&f1, &derivative(&f2)),
        ));
        let got: Vec<i64> = trim(r.f_lhs.to_i64_vec(0).ok_or("overflow")?);
        ensure(got == expected, || {
            format!("{a} x {b}: f = {got:?}, product rule {expected:?}")
        })?;
        ensure(r.f_lhs == r.f_rhs, || format!("{a} x {b}: sides differ"))?;
        let mut seen = r.bijection.clone();
        seen.sort_unstable();
        seen.dedup();
        ensure(seen.len() == r.bijection.len(), || {
            format!("{a} x {b}: map not injective")
        })?;
    }
    Ok(format!("{} pairs", pairs.len()))
}

fn criterion_3() -> Outcome {
    ensure(zono_oracle(2, 1) == vec![14, 24, 12], || {
        "F(2,1) oracle".into()
    })?;
    ensure(zono_oracle(1, 1) == vec![6, 6], || "F(1,1) oracle".into())?;
    ensure(zono_oracle(3, 1) == vec![30, 70, 60, 20], || {
        "F(3,1) oracle".into()
    })?;
    let mut checked = 0;
    for d in 0..=3usize {
        for n in 0..=3usize {
            let expected = zono_oracle(d, n);
            let lib = zonotope_f(d, n).to_i64_vec(0).ok_or("overflow")?;
            ensure(lib == expected, || {
                format!("F({d},{n}) = {lib:?}, oracle {expected:?}")
            })?;
            let zones = n + d + 1;
            let moment = zonotope_boundary(&Arrangement::moment_curve(d + 1, zones))
                .map_err(|e| e.to_string())?;
            let random = zonotope_boundary(&Arrangement::random_generic(
                d + 1,
                zones,
                17 + (4 * d + n) as u64,
            ))
            .map_err(|e| e.to_string())?;
            for (what, z) in [("moment curve", moment), ("random", random)] {
                let got = f_signed(&z.complex);
                ensure(got == expected, || {
                    format!("F({d},{n}) {what}: {got:?} vs {expected:?}")
                })?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} arrangements, F(2,1) = (14,24,12)"))
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for d in 1..=10usize {
        let count = d + 2;
        let l = span_e(d, count).map_err(|e| format!("d={d}: {e}"))?;
        let expected = d.div_ceil(2);
        ensure(l.rank() == expected, || {
            format!("d={d}: rank {} expected {expected}", l.rank())
        })?;
        let later: Vec<Vec<BigInt>> = (0..count + 4).map(|n| bigs(&zono_oracle(d, n))).collect();
        ensure(later.iter().all(|v| l.contains(v)), || {
            format!("d={d}: later family members escape the span")
        })?;
    }
    let t = within(start, Duration::from_secs(5))?;
    Ok(format!("d = 1..10, {t:.2?}"))
}

fn criterion_5() -> Outcome {
    for d in 1..=10usize {
        let count = d + 2;
        let l = span_e(d, count).map_err(|e| format!("d={d}: {e}"))?;
        let inv = l.smith_invariants();
        ensure(
            inv.len() == d.div_ceil(2) && inv.iter().all(|x| *x == BigInt::from(2)),
            || format!("d={d}: invariants {inv:?}"),
        )?;
        // oracle: differences are all even and half of them span a saturated lattice
        let family: Vec<Vec<BigInt>> = (0..count).map(|n| bigs(&zono_oracle(d, n))).collect();
        let diffs: Vec<Vec<BigInt>> = family[1..]
            .iter()
            .map(|v| v.iter().zip(&family[0]).map(|(a, b)| a - b).collect())
            .collect();
        let two = BigInt::from(2);
        ensure(
            diffs.iter().flatten().all(|x| x.is_multiple_of(&two)),
            || format!("d={d}: odd difference"),
        )?;
        let halves: Vec<Vec<BigInt>> = diffs
            .iter()
            .map(|v| v.iter().map(|x| x / &two).collect())
            .collect();
        let (rank, g) = rank_and_minor_gcd(&halves);
        ensure(rank == d.div_ceil(2) && g.abs().is_one(), || {
            format!("d={d}: halves rank {rank}, minor gcd {g}")
        })?;
        let eqs = mine_modular_equations(&family).map_err(|e| e.to_string())?;
        ensure(
            eqs.iter().all(|e| e.modulus.is_zero() || e.modulus == two),
            || format!("d={d}: modulus not 2"),
        )?;
        ensure(eqs.iter().any(|e| e.modulus == two), || {
            format!("d={d}: no modular equation")
        })?;
        let extended: Vec<Vec<BigInt>> = (0..count + 3).map(|n| bigs(&zono_oracle(d, n))).collect();
        ensure(
            eqs.iter().all(|e| extended.iter().all(|v| e.holds_for(v))),
            || format!("d={d}: equation fails"),
        )?;
    }
    Ok("all invariant factors 2, all moduli 2, d = 1..10".into())
}

fn criterion_6() -> Outcome {
    for (k, half) in [(4usize, 8usize), (6, 32)] {
        let z = cube_boundary_signed(k);
        let c = bicolor(&z.complex).map_err(|e| e.to_string())?;
        ensure(c.is_valid(&z.complex), || {
            format!("cube{k}: invalid coloring")
        })?;
        ensure((c.black_count(), c.white_count()) == (half, half), || {
            format!(
                "cube{k}: {} black, {} white",
                c.black_count(),
                c.white_count()
            )
        })?;
        // oracle: colour classes are the parity classes of the number of minus signs
        let odd = |v: usize| z.covectors[v].iter().filter(|&&s| s < 0).count() % 2;
        let v0 = c.vertices[0];
        ensure(
            c.vertices
                .iter()
                .all(|&v| (c.is_black(v) == c.is_black(v0)) == (odd(v) == odd(v0))),
            || format!("cube{k}: colouring is not coordinate parity"),
        )?;
    }
    let spheres = builders::catalogue_spheres();
    for name in &spheres {
        let k = load(name)?;
        let d = k.dim().ok_or("empty")? as i64;
        let n = eulerian_degree(&k).map_err(|e| format!("{name}: {e}"))?;
        let expected = 1 + if (d - 1) % 2 == 0 { 1 } else { -1 };
        ensure(n == expected, || {
            format!("{name}: degree {n}, expected {expected}")
        })?;
    }
    Ok(format!(
        "8/8, 32/32, Eulerian degree on {} spheres",
        spheres.len()
    ))
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let mut chains = 0;
    for (i, name) in ["4gon", "8gon", "cube3", "zono(3,4)", "zono(3,5)", "cube4"]
        .iter()
        .enumerate()
    {
        let k = load(name)?;
        let ops = ChainOperators::new(&k).map_err(|e| format!("{name}: {e}"))?;
        let r = ops.check_identities(40, 1000 + i as u64);
        ensure(r.pass, || format!("{name}: {:?}", r.failures))?;
        chains += r.chains;
    }
    ensure(chains >= 200, || format!("only {chains} chains"))?;
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!("{chains} random chains, {t:.2?}"))
}

fn criterion_8() -> Outcome {
    let mut names: Vec<String> = builders::catalogue_three_spheres();
    names.extend((2..=8).map(|n| format!("{}gon", 2 * n)));
    names.extend(["cube2", "cube6", "zono(2,3)", "zono(2,5)"].map(String::from));
    for name in &names {
        let k = load(name)?;
        let f = k.f_vector();
        let d = f.len() - 1;
        ensure(d % 2 == 1, || format!("{name} is not odd-dimensional"))?;
        let sum: u64 = (1..=d.saturating_sub(2)).step_by(2).map(|i| f[i]).sum();
        ensure(sum.is_multiple_of(2), || format!("{name}: odd sum {sum}"))?;
        let r = theorem52_check(&k).map_err(|e| format!("{name}: {e}"))?;
        ensure(r.pass && r.parity_sum == 0, || {
            format!("{name}: report fails")
        })?;
    }
    ensure(load("cube4")?.f_vector()[1] == 32, || "cube4 f_1".into())?;
    for n in 1..=3 {
        let got = f_signed(&load(&format!("zono(4,{})", 4 + n))?);
        ensure(got == zono_oracle(3, n), || format!("F(3,{n}) = {got:?}"))?;
    }
    Ok(format!("{} odd spheres", names.len()))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let equator = Cubation::build(fixture("octahedron-equator").map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let r = equator.verify().map_err(|e| e.to_string())?;
    ensure(
        r.pass && r.euler == 2 && r.f.iter().all(|x| x % 2 == 0),
        || format!("equator: {r:?}"),
    )?;
    ensure(r.strata_chi == vec![2, 0, 0], || {
        format!("equator strata {:?}", r.strata_chi)
    })?;
    let eight = Cubation::build(fixture("figure-eight").map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let r8 = eight.verify().map_err(|e| e.to_string())?;
    let parities: Vec<u64> = r8.f.iter().map(|x| x % 2).collect();
    ensure(r8.pass && parities == vec![1, 0, 1], || {
        format!("figure eight: {r8:?}")
    })?;
    ensure(r8.strata_chi == vec![3, -2, 1], || {
        format!("figure eight strata {:?}", r8.strata_chi)
    })?;
    // the dual is cubical on its own, independent of how it was built
    for c in [&equator, &eight] {
        validate_cubical(c.complex().poset().clone()).map_err(|e| e.to_string())?;
        c.check_class_parities().map_err(|e| e.to_string())?;
    }
    let t = within(start, Duration::from_secs(60))?;
    Ok(format!(
        "equator f = {:?}, figure eight f = {:?}, {t:.2?}",
        r.f, r8.f
    ))
}

fn criterion_10() -> Outcome {
    let congruent = |f: &[u64]| {
        f.len() == 4
            && f[0].is_multiple_of(2)
            && f[1].is_multiple_of(2)
            && (f[2] + f[3]).is_multiple_of(2)
    };
    let mut checked = Vec::new();
    for name in builders::catalogue_three_spheres() {
        checked.push((name.clone(), load(&name)?.f_vector()));
    }
    for (n, seed) in [(5, 1u64), (6, 2), (7, 3), (8, 4)] {
        let z = zonotope_boundary(&Arrangement::random_generic(4, n, seed))
            .map_err(|e| e.to_string())?;
        checked.push((format!("random zonotope with {n} zones"), z.f_vector()));
    }
    let c = Cubation::build(fixture("cross-polytope-equator").map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    checked.push(("cubation of the 3-sphere".into(), c.f_vector()));
    for (name, f) in &checked {
        ensure(congruent(f), || format!("{name}: f = {f:?}"))?;
    }
    cubical_core::lattice::verify_facet_parity_d3().map_err(|e| e.to_string())?;
    Ok(format!("{} cubical 3-spheres", checked.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("derivative identity", criterion_1),
        ("derivation property", criterion_2),
        ("zonotope recursion", criterion_3),
        ("lattice ranks", criterion_4),
        ("modular mining", criterion_5),
        ("bicoloring and parity", criterion_6),
        ("chain-operator identities", criterion_7),
        ("odd sphere parity", criterion_8),
        ("cubation end to end", criterion_9),
        ("3-sphere facet parity", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {}: pass ({name}: {detail})", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}: {why})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
