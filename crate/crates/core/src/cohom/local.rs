use super::resolution::Resolution;
use super::CohomologyBasis;
use crate::error::{Error, Result};
use crate::linalg::{sparse_cohomology, Fp, Matrix, QuotientBasis, SparseMatrix};
use crate::module::GModule;
use crate::perm::{o_upper_p, sylow_subgroup, Elt, PermGroup, Subgroup};
use std::collections::HashMap;
use std::sync::{Arc, Mutex};

/// Decomposition `S = ⊔ P·t_c` into right cosets of `P ≤ S`.
#[derive(Clone, Debug)]
pub struct RightCosets {
    /// Positions (in the resolution's element list) of the representatives.
    reps: Vec<usize>,
    /// For every `s ∈ S` (by position): `(p, c)` with `s = p·t_c`.
    dec: Vec<(Elt, usize)>,
}

impl RightCosets {
    fn new(g: &PermGroup, res: &Resolution, p: &Subgroup) -> RightCosets {
        let n = res.order();
        let mut dec = vec![(0, usize::MAX); n];
        let mut reps = Vec::new();
        for (spos, &t) in res.elements().iter().enumerate() {
            if dec[spos].1 != usize::MAX {
                continue;
            }
            let c = reps.len();
            reps.push(spos);
            for &x in p.elements() {
                dec[res.position(g.mul(x, t))] = (x, c);
            }
        }
        RightCosets { reps, dec }
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// The complex `Hom_{F_p[P]}(R_*, M)` for `P ≤ S` and its cohomology.
///
/// A cochain of degree `k` has coordinate `(i·[S:P] + c)·dim M + m` for the
/// value at `t_c·e_i`.
#[derive(Debug)]
pub struct LocalCohomology {
    subgroup: Subgroup,
    cosets: RightCosets,
    dim_m: usize,
    coboundaries: Vec<SparseMatrix>,
    bases: Vec<QuotientBasis>,
}

impl LocalCohomology {
    pub fn subgroup(&self) -> &Subgroup {
        &self.subgroup
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.bases[n].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.dim()).collect()
    }

    pub fn basis(&self, n: usize) -> &QuotientBasis {
        &self.bases[n]
    }

    pub fn cochain_dim(&self, n: usize) -> usize {
        self.coboundaries[n].ncols()
    }

    /// `δ^n : C^n → C^{n+1}`.
    pub fn coboundary(&self, n: usize) -> &SparseMatrix {
        &self.coboundaries[n]
    }

    pub fn cohomology_basis(&self, n: usize) -> CohomologyBasis {
        CohomologyBasis::from_quotient(n, &self.bases[n])
    }

    fn index(&self, i: usize, c: usize, m: usize) -> usize {
        (i * self.cosets.len() + c) * self.dim_m + m
    }
}

/// Cohomology of all subgroups `P ≤ S` with coefficients in a `G`-module,
/// computed from one minimal resolution over `S`, with restriction maps and
/// the twisted conjugation maps `κ_g`.
pub struct CohomologyEngine {
    module: GModule,
    res: Resolution,
    max_degree: usize,
    cache: Mutex<HashMap<Subgroup, Arc<LocalCohomology>>>,
    /// `α(x)` for every element of `S`, by position.
    alpha_s: Vec<Matrix>,
}

impl std::fmt::Debug for CohomologyEngine {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CohomologyEngine")
            .field("sylow_order", &self.res.order())
            .field("ranks", &self.res.ranks())
            .finish()
    }
}

impl CohomologyEngine {
    /// Engine over a Sylow `p`-subgroup of the module's group.
    pub fn new(module: &GModule, max_degree: usize) -> CohomologyEngine {
        let g = module.group();
        let s = sylow_subgroup(g, &g.whole(), module.p());
        CohomologyEngine::with_sylow(module, &s, max_degree)
    }

    /// Engine over a given `p`-subgroup `S`.
    pub fn with_sylow(module: &GModule, s: &Subgroup, max_degree: usize) -> CohomologyEngine {
        let g = module.group();
        let res = Resolution::new(g, s, module.p(), max_degree + 1);
        let alpha_s = res.elements().iter().map(|&x| module.act(x).clone()).collect();
        CohomologyEngine { module: module.clone(), res, max_degree, cache: Mutex::new(HashMap::new()), alpha_s }
    }

    pub fn module(&self) -> &GModule {
        &self.module
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        self.module.group()
    }

    pub fn sylow(&self) -> &Subgroup {
        self.res.sylow()
    }

    pub fn resolution(&self) -> &Resolution {
        &self.res
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn p(&self) -> u32 {
        self.module.p()
    }

    /// Cohomology of `P ≤ S`, built on first use.
    pub fn local(&self, p: &Subgroup) -> Arc<LocalCohomology> {
        if let Some(l) = self.cache.lock().unwrap().get(p) {
            return l.clone();
        }
        let l = Arc::new(self.build_local(p));
        self.cache.lock().unwrap().entry(p.clone()).or_insert(l).clone()
    }

    pub fn dim(&self, p: &Subgroup, n: usize) -> usize {
        self.local(p).dim(n)
    }

    fn build_local(&self, sub: &Subgroup) -> LocalCohomology {
        assert!(sub.is_subgroup_of(self.sylow()), "subgroup must lie in S");
        let g = self.group();
        let res = &self.res;
        let cosets = RightCosets::new(g, res, sub);
        let nc = cosets.len();
        let d = self.module.dim();
        let p = self.p();
        let ranks = res.ranks();
        let mut coboundaries = Vec::with_capacity(self.max_degree + 1);
        for k in 0..=self.max_degree {
            let ncols = ranks[k] * nc * d;
            let mut mat = SparseMatrix::new(p, ncols);
            for j in 0..ranks[k + 1] {
                let terms = res.image_terms(k + 1, j);
                for c in 0..nc {
                    let t = cosets.reps[c];
                    let mut rows: Vec<Vec<(usize, u32)>> = vec![Vec::new(); d];
                    for &(i, u, coef) in &terms {
                        let (x, c2) = cosets.dec[res.mul_pos(t, u)];
                        let a = self.module.act(x);
                        for (m, row) in rows.iter_mut().enumerate() {
                            for m2 in 0..d {
                                let v = a.get(m, m2);
                                if v != 0 {
                                    row.push(((i * nc + c2) * d + m2, v * coef % p));
                                }
                            }
                        }
                    }
                    for row in rows {
                        mat.push_row(row);
                    }
                }
            }
            coboundaries.push(mat);
        }
        let mut bases = Vec::with_capacity(self.max_degree + 1);
        for k in 0..=self.max_degree {
            let prev = if k == 0 { None } else { Some(&coboundaries[k - 1]) };
            bases.push(sparse_cohomology(coboundaries[k].ncols(), p, prev, &coboundaries[k]));
        }
        LocalCohomology { subgroup: sub.clone(), cosets, dim_m: d, coboundaries, bases }
    }

    /// Restriction of a cochain on `Q` to a cochain on `P ≤ Q`.
    pub fn restrict_cochain(&self, from: &LocalCohomology, to: &LocalCohomology, n: usize, f: &[u32]) -> Vec<u32> {
        let fp = Fp::new(self.p());
        let d = self.module.dim();
        let mut out = vec![0u32; to.cochain_dim(n)];
        for i in 0..self.res.ranks()[n] {
            for (c, &t) in to.cosets.reps.iter().enumerate() {
                let (q, cq) = from.cosets.dec[t];
                let a = self.module.act(q);
                let src = &f[from.index(i, cq, 0)..from.index(i, cq, 0) + d];
                let img = a.mul_vec(src);
                let base = to.index(i, c, 0);
                for m in 0..d {
                    out[base + m] = fp.add(out[base + m], img[m]);
                }
            }
        }
        out
    }

    /// `Res^Q_P : H^n(Q,M) → H^n(P,M)` in the canonical bases.
    pub fn restriction(&self, q: &Subgroup, p: &Subgroup, n: usize) -> Matrix {
        assert!(p.is_subgroup_of(q));
        let lq = self.local(q);
        let lp = self.local(p);
        lq.basis(n).induced_map(lp.basis(n), |f| self.restrict_cochain(&lq, &lp, n, f))
    }

    /// A chain map `φ : R → R` over `c_g : P → Q` lifting the identity, on the
    /// `P`-basis `t_c·e_j`, in degrees `0..=n`.
    fn chain_lift(&self, g: Elt, lp: &LocalCohomology, n: usize) -> Vec<Vec<Vec<Vec<u32>>>> {
        let grp = self.group();
        let res = &self.res;
        let nc = lp.cosets.len();
        let mut phi: Vec<Vec<Vec<Vec<u32>>>> = Vec::with_capacity(n + 1);
        let mut e0 = vec![0u32; res.order()];
        e0[0] = 1;
        phi.push(vec![vec![e0]; nc]);
        let f = Fp::new(self.p());
        for k in 1..=n {
            let len = res.ranks()[k - 1] * res.order();
            let mut layer = vec![Vec::with_capacity(res.ranks()[k]); nc];
            for (c, &t) in lp.cosets.reps.iter().enumerate() {
                for j in 0..res.ranks()[k] {
                    let mut y = vec![0u32; len];
                    for (i, u, coef) in res.image_terms(k, j) {
                        let (x, c2) = lp.cosets.dec[res.mul_pos(t, u)];
                        let gx = res.position(grp.conj(g, x));
                        let v = res.left_mul(gx, &phi[k - 1][c2][i]);
                        f.axpy(&mut y, coef, &v);
                    }
                    layer[c].push(res.lift(k, &y));
                }
            }
            phi.push(layer);
        }
        phi
    }

    /// `κ_g` on cochains: `(κf)(t·e_j) = α(g)^{-1} f(φ(t·e_j))`.
    fn kappa_cochain_with(
        &self,
        g: Elt,
        phi: &[Vec<Vec<u32>>],
        lq: &LocalCohomology,
        lp: &LocalCohomology,
        n: usize,
        f: &[u32],
    ) -> Vec<u32> {
        let fp = Fp::new(self.p());
        let d = self.module.dim();
        let so = self.res.order();
        let ginv = self.module.act(self.group().inv(g));
        let mut out = vec![0u32; lp.cochain_dim(n)];
        for (c, layer) in phi.iter().enumerate() {
            for (j, v) in layer.iter().enumerate() {
                let mut acc = vec![0u32; d];
                for (idx, &coef) in v.iter().enumerate() {
                    if coef == 0 {
                        continue;
                    }
                    let (i, s) = (idx / so, idx % so);
                    let (q, cq) = lq.cosets.dec[s];
                    let base = lq.index(i, cq, 0);
                    let img = self.module.act(q).mul_vec(&f[base..base + d]);
                    fp.axpy(&mut acc, coef, &img);
                }
                let r = ginv.mul_vec(&acc);
                let base = lp.index(j, c, 0);
                out[base..base + d].copy_from_slice(&r);
            }
        }
        out
    }

    /// Matrices of `κ_g : H^k(Q,M) → H^k(P,M)` for `k = 0..=n`, where
    /// `gPg^{-1} ≤ Q`. No compatibility check is made.
    pub fn kappa_all(&self, g: Elt, q: &Subgroup, p: &Subgroup, n: usize) -> Vec<Matrix> {
        let grp = self.group();
        debug_assert!(grp.conjugates_into(g, p, q));
        let lq = self.local(q);
        let lp = self.local(p);
        let phi = self.chain_lift(g, &lp, n);
        (0..=n)
            .map(|k| {
                let map = |f: &[u32]| self.kappa_cochain_with(g, &phi[k], &lq, &lp, k, f);
                lq.basis(k).induced_map(lp.basis(k), map)
            })
            .collect()
    }

    /// `κ_g : H^n(Q,M) → H^n(P,M)` without a compatibility check.
    pub fn kappa(&self, g: Elt, q: &Subgroup, p: &Subgroup, n: usize) -> Matrix {
        self.kappa_all(g, q, p, n).pop().unwrap()
    }

    /// `κ_g : H^n(S,M) → H^n(P,M)`, refusing when `O^p(C_G(P))` acts
    /// nontrivially on `M`.
    pub fn kappa_map(&self, g: Elt, p: &Subgroup, n: usize) -> Result<Matrix> {
        let grp = self.group();
        if !grp.conjugates_into(g, p, self.sylow()) {
            return Err(Error::NotASubgroup);
        }
        let c = grp.centralizer(&grp.whole(), p);
        let r = o_upper_p(grp, &c, self.p());
        if let Some(&x) = r.gens().iter().find(|&&x| !self.module.acts_trivially(x)) {
            return Err(Error::IncompatibleAction { subgroup_order: p.order(), witness: grp.perm(x).to_string() });
        }
        Ok(self.kappa(g, self.sylow(), p, n))
    }

    /// Pulls a normalized bar cochain of `S` back to a resolution cochain of
    /// `S`. The bar cochain has coordinate `idx(x_1,…,x_n)·dim M + m` where
    /// tuples of non-identity elements of `S` are ordered lexicographically by
    /// position.
    pub fn bar_pullback(&self, psi: &[HashMap<Vec<usize>, u32>], z: &[u32]) -> Vec<u32> {
        let fp = Fp::new(self.p());
        let d = self.module.dim();
        let base = self.res.order() - 1;
        let mut out = vec![0u32; psi.len() * d];
        for (j, terms) in psi.iter().enumerate() {
            for (t, &c) in terms {
                let idx = t.iter().fold(0usize, |a, &x| a * base + (x - 1));
                fp.axpy(&mut out[j * d..(j + 1) * d], c, &z[idx * d..(idx + 1) * d]);
            }
        }
        out
    }

    /// `α(x)` for the element of `S` at position `i`.
    pub fn alpha_at(&self, i: usize) -> &Matrix {
        &self.alpha_s[i]
    }
}
