use std::collections::HashMap;

/// Column-sparse GF(2) matrix used for ranks of large boundary matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SparseMatrix {
    rows: usize,
    cols: Vec<Vec<usize>>,
}

impl SparseMatrix {
    /// Each column lists its nonzero rows; duplicates cancel.
    pub fn from_columns(rows: usize, cols: Vec<Vec<usize>>) -> Self {
        let cols = cols
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                let mut out: Vec<usize> = Vec::with_capacity(c.len());
                for r in c {
                    if out.last() == Some(&r) {
                        out.pop();
                    } else {
                        out.push(r);
                    }
                }
                out
            })
            .collect();
        Self { rows, cols }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols.len()
    }

    pub fn column(&self, c: usize) -> &[usize] {
        &self.cols[c]
    }

    /// Rank by the standard left-to-right column reduction on lowest entries.
    pub fn rank(&self) -> usize {
        let mut reduced: Vec<Vec<usize>> = Vec::with_capacity(self.cols.len());
        let mut owner: HashMap<usize, usize> = HashMap::new();
        let mut rank = 0;
        for col in &self.cols {
            let mut c = col.clone();
            while let Some(&low) = c.last() {
                match owner.get(&low) {
                    Some(&j) => c = sym_diff(&c, &reduced[j]),
                    None => break,
                }
            }
            if let Some(&low) = c.last() {
                owner.insert(low, reduced.len());
                rank += 1;
            }
            reduced.push(c);
        }
        rank
    }
}

fn sym_diff(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}
