use super::{Echelon, QuotientBasis};

/// Row-major sparse matrix over `F_p` with `(column, value)` entries.
#[derive(Clone, Debug)]
pub struct SparseMatrix {
    p: u32,
    ncols: usize,
    rows: Vec<Vec<(usize, u32)>>,
}

impl SparseMatrix {
    pub fn new(p: u32, ncols: usize) -> SparseMatrix {
        SparseMatrix { p, ncols, rows: Vec::new() }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    /// Appends a row, merging repeated columns and dropping zeros.
    pub fn push_row(&mut self, mut entries: Vec<(usize, u32)>) {
        entries.sort_unstable_by_key(|e| e.0);
        let mut merged: Vec<(usize, u32)> = Vec::with_capacity(entries.len());
        for (c, v) in entries {
            match merged.last_mut() {
                Some(last) if last.0 == c => last.1 = (last.1 + v) % self.p,
                _ => merged.push((c, v % self.p)),
            }
        }
        merged.retain(|e| e.1 != 0);
        self.rows.push(merged);
    }

    pub fn row(&self, i: usize) -> &[(usize, u32)] {
        &self.rows[i]
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let p = self.p as u64;
        self.rows
            .iter()
            .map(|r| (r.iter().map(|&(c, a)| a as u64 * v[c] as u64).sum::<u64>() % p) as u32)
            .collect()
    }

    pub fn is_zero_product(&self, other: &SparseMatrix) -> bool {
        // self ∘ other = 0, with self: C^{n+1} ← C^n and other: C^n ← C^{n-1}
        let cols = other.columns_dense();
        cols.iter().all(|c| self.mul_vec(c).iter().all(|&x| x == 0))
    }

    pub fn row_echelon(&self) -> Echelon {
        let mut e = Echelon::new(self.p, self.ncols);
        for r in &self.rows {
            if e.is_full() {
                break;
            }
            e.add_sparse(r);
        }
        e
    }

    pub fn kernel(&self) -> Vec<Vec<u32>> {
        self.row_echelon().kernel()
    }

    /// Columns as dense vectors of length `nrows`.
    pub fn columns_dense(&self) -> Vec<Vec<u32>> {
        let mut cols = vec![vec![0u32; self.rows.len()]; self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                cols[c][i] = v;
            }
        }
        cols
    }

    /// Column space as an echelon form.
    pub fn image_echelon(&self) -> Echelon {
        let mut cols: Vec<Vec<(usize, u32)>> = vec![Vec::new(); self.ncols];
        for (i, r) in self.rows.iter().enumerate() {
            for &(c, v) in r {
                cols[c].push((i, v));
            }
        }
        let mut e = Echelon::new(self.p, self.rows.len());
        for c in &cols {
            e.add_sparse(c);
        }
        e
    }
}

/// `ker(next) / im(prev)` for a cochain complex `C^{n-1} → C^n → C^{n+1}`;
/// `prev` is `None` in degree zero.
pub fn sparse_cohomology(dim: usize, p: u32, prev: Option<&SparseMatrix>, next: &SparseMatrix) -> QuotientBasis {
    debug_assert_eq!(next.ncols(), dim);
    let z = next.kernel();
    let b = match prev {
        Some(m) => m.image_echelon(),
        None => Echelon::new(p, dim),
    };
    QuotientBasis::from_echelons(b, &z)
}
