use crate::linalg::{Echelon, Fp, Matrix, Solver};
use crate::perm::{Elt, PermGroup, Subgroup};
use std::collections::HashMap;

/// Minimal free resolution `R_* → F_p` over `F_p[S]` for a `p`-group `S`.
///
/// `R_k = F_p[S]^{r_k}`; a vector of `R_k` has coordinate `i·|S| + pos(s)`
/// for the basis element `s·e_i`. Generators of each syzygy module are the
/// first vectors (in kernel-basis order) independent modulo `I·K`, where `I`
/// is the augmentation ideal; by Nakayama they generate minimally.
#[derive(Clone, Debug)]
pub struct Resolution {
    p: u32,
    sylow: Subgroup,
    elems: Vec<Elt>,
    pos: HashMap<Elt, usize>,
    /// `lmul[a][b] = pos(elems[a]·elems[b])`.
    lmul: Vec<Vec<u32>>,
    ranks: Vec<usize>,
    /// `images[k][j] = d_k(e_j) ∈ R_{k-1}` for `k ≥ 1` (index 0 unused).
    images: Vec<Vec<Vec<u32>>>,
    /// Matrix of `d_k` on `F_p`-coordinates for `k ≥ 1`.
    matrices: Vec<Matrix>,
    solvers: Vec<Option<Solver>>,
}

impl Resolution {
    /// Builds `R_0, …, R_top`; linear solvers are kept for `d_k`, `k < top`.
    pub fn new(group: &PermGroup, sylow: &Subgroup, p: u32, top: usize) -> Resolution {
        let elems = sylow.elements().to_vec();
        let n = elems.len();
        let pos: HashMap<Elt, usize> = elems.iter().enumerate().map(|(i, &x)| (x, i)).collect();
        let lmul: Vec<Vec<u32>> = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&group.mul(a, b)] as u32).collect())
            .collect();
        let gens: Vec<usize> = sylow.gens().iter().map(|x| pos[x]).collect();
        let f = Fp::new(p);

        let mut ranks = vec![1usize];
        let mut images: Vec<Vec<Vec<u32>>> = vec![Vec::new()];
        let mut matrices = vec![Matrix::zeros(p, 0, 0)];
        let mut solvers = vec![None];

        // K_0 = ker(augmentation).
        let mut kernel: Vec<Vec<u32>> = (1..n)
            .map(|i| {
                let mut v = vec![0u32; n];
                v[0] = f.neg(1);
                v[i] = 1;
                v
            })
            .collect();
        for k in 1..=top {
            let prev = ranks[k - 1] * n;
            let mut ik = Echelon::new(p, prev);
            for v in &kernel {
                for &u in &gens {
                    let mut w = left_mul(&lmul, n, u, v);
                    f.axpy(&mut w, f.neg(1), v);
                    ik.add_row(&w);
                }
            }
            let mut gens_k = Vec::new();
            for v in &kernel {
                if ik.add_row(v) {
                    gens_k.push(v.clone());
                }
            }
            let r = gens_k.len();
            let mut cols = Vec::with_capacity(r * n);
            for g in &gens_k {
                for s in 0..n {
                    cols.push(left_mul(&lmul, n, s, g));
                }
            }
            let d = Matrix::from_columns(p, prev, &cols);
            kernel = if k < top { d.kernel() } else { Vec::new() };
            solvers.push(if k < top { Some(Solver::new(&d)) } else { None });
            ranks.push(r);
            images.push(gens_k);
            matrices.push(d);
        }
        Resolution { p, sylow: sylow.clone(), elems, pos, lmul, ranks, images, matrices, solvers }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    pub fn top(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Ranks `r_0, …, r_top`.
    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elt] {
        &self.elems
    }

    pub fn position(&self, x: Elt) -> usize {
        self.pos[&x]
    }

    /// `d_k(e_j)` in `R_{k-1}`.
    pub fn image(&self, k: usize, j: usize) -> &[u32] {
        &self.images[k][j]
    }

    pub fn matrix(&self, k: usize) -> &Matrix {
        &self.matrices[k]
    }

    /// Left multiplication by the element at position `u` on a vector of `R_k`.
    pub fn left_mul(&self, u: usize, v: &[u32]) -> Vec<u32> {
        left_mul(&self.lmul, self.elems.len(), u, v)
    }

    pub fn mul_pos(&self, a: usize, b: usize) -> usize {
        self.lmul[a][b] as usize
    }

    /// Some `x ∈ R_k` with `d_k x = y`; `y` must be a cycle.
    pub fn lift(&self, k: usize, y: &[u32]) -> Vec<u32> {
        let s = self.solvers[k].as_ref().expect("solver kept for this degree");
        debug_assert!(s.in_image(y), "not a boundary");
        s.solve_unchecked(y)
    }

    /// Nonzero entries `(i, pos(s), c)` of `d_k(e_j) = Σ c·s·e_i`.
    pub fn image_terms(&self, k: usize, j: usize) -> Vec<(usize, usize, u32)> {
        let n = self.elems.len();
        self.images[k][j]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(idx, &c)| (idx / n, idx % n, c))
            .collect()
    }

    /// Comparison map to the normalized bar resolution: the bar chain
    /// `ψ_k(e_j) = Σ c·[x_1|…|x_k]`, with tuples given by element positions.
    pub fn bar_comparison(&self, k: usize) -> Vec<HashMap<Vec<usize>, u32>> {
        let f = Fp::new(self.p);
        let mut psi: Vec<HashMap<Vec<usize>, u32>> = vec![HashMap::from([(Vec::new(), 1)])];
        for deg in 1..=k {
            let mut next = Vec::with_capacity(self.ranks[deg]);
            for j in 0..self.ranks[deg] {
                let mut out: HashMap<Vec<usize>, u32> = HashMap::new();
                for (i, u, c) in self.image_terms(deg, j) {
                    if u == 0 {
                        continue;
                    }
                    for (x, &a) in &psi[i] {
                        let mut t = Vec::with_capacity(deg);
                        t.push(u);
                        t.extend_from_slice(x);
                        let e = out.entry(t).or_insert(0);
                        *e = f.add(*e, f.mul(a, c));
                    }
                }
                out.retain(|_, v| *v != 0);
                next.push(out);
            }
            psi = next;
        }
        psi
    }
}

fn left_mul(lmul: &[Vec<u32>], n: usize, u: usize, v: &[u32]) -> Vec<u32> {
    let mut w = vec![0u32; v.len()];
    let row = &lmul[u];
    for (idx, &c) in v.iter().enumerate() {
        if c != 0 {
            let (i, s) = (idx / n, idx % n);
            w[i * n + row[s] as usize] = c;
        }
    }
    w
}
