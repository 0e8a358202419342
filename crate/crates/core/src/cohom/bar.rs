use super::{cell_cap, CohomologyBasis};
use crate::error::{Error, Result};
use crate::linalg::{sparse_cohomology, Fp, QuotientBasis, SparseMatrix};
use crate::module::GModule;
use crate::perm::{Elt, Subgroup};

/// Normalized bar cochains of a subgroup `P` of the module's group.
///
/// A cochain of degree `n` has coordinate `idx(x_1,…,x_n)·dim M + m`, with
/// tuples of non-identity elements of `P` ordered lexicographically by their
/// position in `P`'s sorted element list.
#[derive(Clone, Debug)]
pub struct BarComplex {
    p: u32,
    dim_m: usize,
    elems: Vec<Elt>,
    index: std::collections::HashMap<Elt, usize>,
    coboundaries: Vec<SparseMatrix>,
}

impl BarComplex {
    /// Coboundaries `δ^0, …, δ^{n_max}`, subject to the cell cap.
    pub fn new(module: &GModule, sub: &Subgroup, n_max: usize) -> Result<BarComplex> {
        let census = bar_census(sub.order(), n_max + 1);
        let needed = bar_cells(&census, module.dim());
        let cap = cell_cap();
        if needed > cap {
            return Err(Error::CellCapExceeded { needed, cap, census });
        }
        let g = module.group();
        let elems: Vec<Elt> = sub.elements()[1..].to_vec();
        let index = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let mut bc = BarComplex { p: module.p(), dim_m: module.dim(), elems, index, coboundaries: Vec::new() };
        for k in 0..=n_max {
            let m = bc.coboundary(module, g, k);
            bc.coboundaries.push(m);
        }
        Ok(bc)
    }

    fn coboundary(&self, module: &GModule, g: &crate::perm::PermGroup, k: usize) -> SparseMatrix {
        let f = Fp::new(self.p);
        let d = self.dim_m;
        let b = self.elems.len();
        let ncols = b.pow(k as u32) * d;
        let mut mat = SparseMatrix::new(self.p, ncols);
        let nrows_t = b.pow(k as u32 + 1);
        let mut tuple = vec![0usize; k + 1];
        for _ in 0..nrows_t {
            let x: Vec<Elt> = tuple.iter().map(|&i| self.elems[i]).collect();
            let mut common: Vec<(usize, u32)> = Vec::new();
            // inner faces
            for i in 0..k {
                let prod = g.mul(x[i], x[i + 1]);
                if prod == 0 {
                    continue;
                }
                let mut t: Vec<usize> = Vec::with_capacity(k);
                t.extend_from_slice(&tuple[..i]);
                t.push(self.index[&prod]);
                t.extend_from_slice(&tuple[i + 2..]);
                let sign = if (i + 1) % 2 == 0 { 1 } else { f.neg(1) };
                common.push((encode(&t, b), sign));
            }
            let last = encode(&tuple[..k], b);
            let sign_last = if (k + 1) % 2 == 0 { 1 } else { f.neg(1) };
            let first = encode(&tuple[1..], b);
            let a = module.act(x[0]);
            for m in 0..d {
                let mut row: Vec<(usize, u32)> = Vec::new();
                for m2 in 0..d {
                    let v = a.get(m, m2);
                    if v != 0 {
                        row.push((first * d + m2, v));
                    }
                }
                for &(c, s) in &common {
                    row.push((c * d + m, s));
                }
                row.push((last * d + m, sign_last));
                mat.push_row(row);
            }
            for pos in (0..=k).rev() {
                tuple[pos] += 1;
                if tuple[pos] < b {
                    break;
                }
                tuple[pos] = 0;
            }
        }
        mat
    }

    pub fn max_degree(&self) -> usize {
        self.coboundaries.len() - 1
    }

    pub fn coboundary_matrix(&self, k: usize) -> &SparseMatrix {
        &self.coboundaries[k]
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        self.coboundaries[k].ncols()
    }

    /// Position of a tuple of group elements, or `None` if one is the identity.
    pub fn tuple_index(&self, xs: &[Elt]) -> Option<usize> {
        let b = self.elems.len();
        let mut idx = 0;
        for x in xs {
            idx = idx * b + *self.index.get(x)?;
        }
        Some(idx)
    }

    pub fn cohomology(&self, n: usize) -> QuotientBasis {
        let prev = if n == 0 { None } else { Some(&self.coboundaries[n - 1]) };
        sparse_cohomology(self.cochain_dim(n), self.p, prev, &self.coboundaries[n])
    }
}

fn encode(t: &[usize], b: usize) -> usize {
    t.iter().fold(0, |a, &x| a * b + x)
}

/// Numbers of normalized chains `(|P|-1)^k` for `k = 0..=top`.
pub fn bar_census(order: usize, top: usize) -> Vec<u64> {
    (0..=top).map(|k| ((order - 1) as u64).saturating_pow(k as u32)).collect()
}

/// Upper bound on the nonzero entries of `δ^0, …, δ^{top-1}`.
pub fn bar_cells(census: &[u64], dim: usize) -> u64 {
    let d = dim as u64;
    census
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, &c)| c.saturating_mul(d).saturating_mul(d + k as u64))
        .fold(0u64, |a, b| a.saturating_add(b))
}

/// `H^0, …, H^{n_max}` of `P` with coefficients in `M` from the normalized
/// bar complex.
pub fn bar_cohomology(module: &GModule, sub: &Subgroup, n_max: usize) -> Result<Vec<CohomologyBasis>> {
    let bc = BarComplex::new(module, sub, n_max)?;
    Ok((0..=n_max).map(|n| CohomologyBasis::from_quotient(n, &bc.cohomology(n))).collect())
}
