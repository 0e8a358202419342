use super::{Echelon, Fp, Matrix};

/// A subspace of `F_p^n` held by its canonical reduced row-echelon basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    p: u32,
    n: usize,
    basis: Vec<Vec<u32>>,
}

impl Subspace {
    pub fn zero(p: u32, n: usize) -> Subspace {
        Subspace { p, n, basis: Vec::new() }
    }

    pub fn full(p: u32, n: usize) -> Subspace {
        let basis = (0..n)
            .map(|i| {
                let mut v = vec![0; n];
                v[i] = 1;
                v
            })
            .collect();
        Subspace { p, n, basis }
    }

    pub fn span(p: u32, n: usize, vectors: &[Vec<u32>]) -> Subspace {
        let e = Echelon::from_rows(p, n, vectors.iter().map(|v| v.as_slice()));
        Subspace { p, n, basis: e.basis() }
    }

    pub fn from_echelon(e: &Echelon) -> Subspace {
        Subspace { p: e.p(), n: e.ncols(), basis: e.basis() }
    }

    /// `{x : A x = 0}`.
    pub fn kernel_of(a: &Matrix) -> Subspace {
        Subspace::span(a.p(), a.ncols(), &a.kernel())
    }

    /// Column space of `A`.
    pub fn image_of(a: &Matrix) -> Subspace {
        Subspace::span(a.p(), a.nrows(), &a.columns())
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    fn echelon(&self) -> Echelon {
        Echelon::from_rows(self.p, self.n, self.basis.iter().map(|v| v.as_slice()))
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.echelon().contains(v)
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        let e = other.echelon();
        self.basis.iter().all(|v| e.contains(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut v = self.basis.clone();
        v.extend(other.basis.iter().cloned());
        Subspace::span(self.p, self.n, &v)
    }

    /// Orthogonal complement for the standard bilinear form.
    pub fn perp(&self) -> Subspace {
        Subspace::span(self.p, self.n, &self.echelon().kernel())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.perp().sum(&other.perp()).perp()
    }

    /// Image of the subspace under `A`.
    pub fn map(&self, a: &Matrix) -> Subspace {
        let imgs: Vec<Vec<u32>> = self.basis.iter().map(|v| a.mul_vec(v)).collect();
        Subspace::span(self.p, a.nrows(), &imgs)
    }

    /// Basis vectors as the columns of an `n × dim` matrix.
    pub fn as_columns(&self) -> Matrix {
        Matrix::from_columns(self.p, self.n, &self.basis)
    }
}

/// A canonical basis of a quotient `Z/B` of subspaces `B ≤ Z ≤ F_p^n`.
///
/// The representatives are the rows of the reduced echelon basis of `Z`
/// whose pivot columns are not pivots of `B`; they vanish on the pivots of `B`.
#[derive(Clone, Debug)]
pub struct QuotientBasis {
    p: u32,
    n: usize,
    boundaries: Echelon,
    reps: Vec<Vec<u32>>,
    rep_pivots: Vec<usize>,
}

impl QuotientBasis {
    pub fn new(p: u32, n: usize, cycles: &[Vec<u32>], boundaries: &[Vec<u32>]) -> QuotientBasis {
        let b = Echelon::from_rows(p, n, boundaries.iter().map(|v| v.as_slice()));
        QuotientBasis::from_echelons(b, cycles)
    }

    /// `cycles` must span `Z` and contain the span of `boundaries`.
    pub fn from_echelons(boundaries: Echelon, cycles: &[Vec<u32>]) -> QuotientBasis {
        let p = boundaries.p();
        let n = boundaries.ncols();
        let mut all = boundaries.clone();
        for z in cycles {
            all.add_row(z);
        }
        let bpiv: std::collections::HashSet<usize> = boundaries.pivots().iter().copied().collect();
        let mut reps = Vec::new();
        let mut rep_pivots = Vec::new();
        for (i, &c) in all.pivots().iter().enumerate() {
            if !bpiv.contains(&c) {
                reps.push(all.row(i));
                rep_pivots.push(c);
            }
        }
        QuotientBasis { p, n, boundaries, reps, rep_pivots }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    /// Representative cocycles, one per basis class.
    pub fn representatives(&self) -> &[Vec<u32>] {
        &self.reps
    }

    pub fn representative(&self, i: usize) -> &[u32] {
        &self.reps[i]
    }

    /// Coordinates of the class of `z` (which must be a cocycle).
    pub fn coords(&self, z: &[u32]) -> Vec<u32> {
        let mut w = z.to_vec();
        self.boundaries.reduce(&mut w);
        let c: Vec<u32> = self.rep_pivots.iter().map(|&q| w[q]).collect();
        debug_assert!({
            let f = Fp::new(self.p);
            for (i, &a) in c.iter().enumerate() {
                f.axpy(&mut w, f.neg(a), &self.reps[i]);
            }
            w.iter().all(|&x| x == 0)
        });
        c
    }

    pub fn is_boundary(&self, z: &[u32]) -> bool {
        self.boundaries.contains(z)
    }

    /// Matrix of a cochain map in the canonical bases: `f` sends a cocycle of
    /// this complex to a cocycle of `target`.
    pub fn induced_map(&self, target: &QuotientBasis, f: impl Fn(&[u32]) -> Vec<u32>) -> Matrix {
        let cols: Vec<Vec<u32>> = (0..self.dim()).map(|i| target.coords(&f(&self.reps[i]))).collect();
        Matrix::from_columns(self.p, target.dim(), &cols)
    }
}
