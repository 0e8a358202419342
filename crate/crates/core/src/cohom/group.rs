use super::local::CohomologyEngine;
use super::CohomologyBasis;
use crate::linalg::{Fp, Matrix, Subspace};
use crate::module::GModule;
use crate::perm::Elt;

/// `H^n(G,M)` for `n = 0..=n_max`, computed as the image of the idempotent
/// `e = i∘π` of `F_p[G/S]` acting on `Ext_G(F_p[G/S], M) = H^n(S,M)`.
///
/// `e` is lifted to a chain endomorphism of `F_p[G] ⊗_S R_*`; the image of
/// `e^*` is exactly the image of restriction `H^n(G,M) → H^n(S,M)`.
#[derive(Debug)]
pub struct GroupCohomology {
    engine: CohomologyEngine,
    idempotents: Vec<Matrix>,
    images: Vec<Subspace>,
}

impl GroupCohomology {
    pub fn new(module: &GModule, n_max: usize) -> GroupCohomology {
        GroupCohomology::from_engine(CohomologyEngine::new(module, n_max))
    }

    pub fn from_engine(engine: CohomologyEngine) -> GroupCohomology {
        let n_max = engine.max_degree();
        let idempotents = idempotent_matrices(&engine, n_max);
        let images = idempotents.iter().map(Subspace::image_of).collect();
        GroupCohomology { engine, idempotents, images }
    }

    pub fn engine(&self) -> &CohomologyEngine {
        &self.engine
    }

    pub fn max_degree(&self) -> usize {
        self.images.len() - 1
    }

    pub fn dim(&self, n: usize) -> usize {
        self.images[n].dim()
    }

    pub fn dims(&self) -> Vec<usize> {
        self.images.iter().map(|s| s.dim()).collect()
    }

    /// `Res(H^n(G,M))` as a subspace of `H^n(S,M)` in its canonical basis.
    pub fn restriction_image(&self, n: usize) -> &Subspace {
        &self.images[n]
    }

    /// The matrix of `e^*` on `H^n(S,M)`.
    pub fn idempotent(&self, n: usize) -> &Matrix {
        &self.idempotents[n]
    }

    /// Cocycle representatives (on the resolution over `S`) of a basis of
    /// the restriction image.
    pub fn cohomology_basis(&self, n: usize) -> CohomologyBasis {
        let local = self.engine.local(self.engine.sylow());
        let qb = local.basis(n);
        let f = Fp::new(self.engine.p());
        let reps = self.images[n]
            .basis()
            .iter()
            .map(|coords| {
                let mut v = vec![0u32; qb.ambient_dim()];
                for (i, &a) in coords.iter().enumerate() {
                    f.axpy(&mut v, a, qb.representative(i));
                }
                v
            })
            .collect();
        CohomologyBasis { degree: n, representatives: reps }
    }
}

/// Matrices of `e^*` on `H^n(S,M)` for `n = 0..=n_max`.
fn idempotent_matrices(engine: &CohomologyEngine, n_max: usize) -> Vec<Matrix> {
    let module = engine.module();
    let g = engine.group();
    let res = engine.resolution();
    let s = engine.sylow();
    let p = engine.p();
    let f = Fp::new(p);
    let so = res.order();
    let d = module.dim();

    // Left cosets G = ⊔ x_c S and the action u·x_c = x_{c'}·s for u ∈ S.
    let reps: Vec<Elt> = g.left_coset_reps(&g.whole(), s);
    let m = reps.len();
    let mut coset_of = vec![usize::MAX; g.order()];
    for (c, &x) in reps.iter().enumerate() {
        for &y in s.elements() {
            coset_of[g.mul(x, y) as usize] = c;
        }
    }
    let act: Vec<Vec<(usize, usize)>> = res
        .elements()
        .iter()
        .map(|&u| {
            reps.iter()
                .map(|&x| {
                    let y = g.mul(u, x);
                    let c2 = coset_of[y as usize];
                    let sp = res.position(g.mul(g.inv(reps[c2]), y));
                    (c2, sp)
                })
                .collect()
        })
        .collect();

    let minv = f.inv((m as u32) % p);
    let mut e0 = vec![vec![0u32; so]; m];
    for block in e0.iter_mut() {
        block[0] = minv;
    }
    let mut layers: Vec<Vec<Vec<Vec<u32>>>> = vec![vec![e0]];
    for k in 1..=n_max {
        let len = res.ranks()[k - 1] * so;
        let mut layer = Vec::with_capacity(res.ranks()[k]);
        for j in 0..res.ranks()[k] {
            let mut y = vec![vec![0u32; len]; m];
            for (i, u, coef) in res.image_terms(k, j) {
                for (c, block) in layers[k - 1][i].iter().enumerate() {
                    let (c2, sp) = act[u][c];
                    let v = res.left_mul(sp, block);
                    f.axpy(&mut y[c2], coef, &v);
                }
            }
            layer.push(y.iter().map(|b| res.lift(k, b)).collect());
        }
        layers.push(layer);
    }

    let alpha_x: Vec<Matrix> = reps.iter().map(|&x| module.act(x).clone()).collect();
    let local = engine.local(s);
    (0..=n_max)
        .map(|n| {
            let pull = |z: &[u32]| {
                let mut out = vec![0u32; res.ranks()[n] * d];
                for (j, blocks) in layers[n].iter().enumerate() {
                    let mut acc = vec![0u32; d];
                    for (c, v) in blocks.iter().enumerate() {
                        let mut inner = vec![0u32; d];
                        for (idx, &coef) in v.iter().enumerate() {
                            if coef == 0 {
                                continue;
                            }
                            let (i, sp) = (idx / so, idx % so);
                            let img = engine.alpha_at(sp).mul_vec(&z[i * d..(i + 1) * d]);
                            f.axpy(&mut inner, coef, &img);
                        }
                        f.axpy(&mut acc, 1, &alpha_x[c].mul_vec(&inner));
                    }
                    out[j * d..(j + 1) * d].copy_from_slice(&acc);
                }
                out
            };
            local.basis(n).induced_map(local.basis(n), pull)
        })
        .collect()
}
