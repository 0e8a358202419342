//! Finite-dimensional `F_p[G]`-modules.

use crate::error::{Error, Result};
use crate::linalg::{Echelon, Fp, Matrix, Subspace};
use crate::perm::{o_upper_p, Elt, Perm, PermGroup, Subgroup};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// A left `F_p[G]`-module with the action matrix of every group element
/// precomputed. Vectors are columns; `α(g)α(h) = α(gh)`.
#[derive(Clone, Debug)]
pub struct GModule {
    group: Arc<PermGroup>,
    p: u32,
    dim: usize,
    action: Vec<Matrix>,
}

impl GModule {
    /// Builds a module from one matrix per group generator, verifying the
    /// homomorphism property on the full multiplication table.
    pub fn new(group: Arc<PermGroup>, p: u32, dim: usize, gen_matrices: Vec<Matrix>) -> Result<GModule> {
        if gen_matrices.len() != group.gens().len() {
            return Err(Error::InvalidModule(format!(
                "{} matrices for {} generators",
                gen_matrices.len(),
                group.gens().len()
            )));
        }
        for m in &gen_matrices {
            if m.nrows() != dim || m.ncols() != dim || m.p() != p {
                return Err(Error::InvalidModule("matrix shape or prime mismatch".into()));
            }
            if !m.is_invertible() {
                return Err(Error::InvalidModule("action matrix is singular".into()));
            }
        }
        let n = group.order();
        let mut action: Vec<Option<Matrix>> = vec![None; n];
        action[0] = Some(Matrix::identity(p, dim));
        let (parent, letter) = group.schreier_tree();
        let mut order: Vec<Elt> = (1..n as Elt).collect();
        let depth = |x: Elt| {
            let mut d = 0;
            let mut y = x;
            while y != 0 {
                y = parent[y as usize];
                d += 1;
            }
            d
        };
        order.sort_by_key(|&x| depth(x));
        for x in order {
            let px = parent[x as usize];
            let m = gen_matrices[letter[x as usize]].mul(action[px as usize].as_ref().unwrap());
            action[x as usize] = Some(m);
        }
        let action: Vec<Matrix> = action.into_iter().map(|m| m.unwrap()).collect();
        let module = GModule { group, p, dim, action };
        if !module.verify() {
            return Err(Error::InvalidModule("generator matrices do not define an action".into()));
        }
        Ok(module)
    }

    fn verify(&self) -> bool {
        let g = &self.group;
        g.gens().iter().enumerate().all(|(_, &s)| {
            (0..g.order() as Elt).all(|x| self.act(s).mul(self.act(x)) == *self.act(g.mul(s, x)))
        })
    }

    pub fn trivial(group: Arc<PermGroup>, p: u32, dim: usize) -> GModule {
        let k = group.gens().len();
        GModule::new(group, p, dim, vec![Matrix::identity(p, dim); k]).expect("trivial action")
    }

    /// One-dimensional sign module.
    pub fn sign(group: Arc<PermGroup>, p: u32) -> GModule {
        let mats = group
            .generators()
            .iter()
            .map(|g| {
                let odd = g.cycles().iter().map(|c| c.len() - 1).sum::<usize>() % 2 == 1;
                Matrix::from_rows(p, 1, &[vec![if odd { p - 1 } else { 1 }]])
            })
            .collect();
        GModule::new(group, p, 1, mats).expect("sign is a character")
    }

    /// Permutation module on the orbit of a block system: `blocks` lists sets
    /// of points (1-based) permuted by the group.
    pub fn permutation_on_blocks(group: Arc<PermGroup>, p: u32, blocks: &[Vec<usize>]) -> Result<GModule> {
        let mats = group
            .generators()
            .iter()
            .map(|g| block_action(g, blocks).map(|img| perm_matrix(p, &img)))
            .collect::<Result<Vec<_>>>()?;
        GModule::new(group, p, blocks.len(), mats)
    }

    /// Sum-zero submodule of the permutation module on blocks, in the basis
    /// `b_i − b_last`.
    pub fn sum_zero_on_blocks(group: Arc<PermGroup>, p: u32, blocks: &[Vec<usize>]) -> Result<GModule> {
        let mats = group
            .generators()
            .iter()
            .map(|g| block_action(g, blocks).map(|img| sum_zero_matrix(p, &img)))
            .collect::<Result<Vec<_>>>()?;
        GModule::new(group, p, blocks.len() - 1, mats)
    }

    /// Permutation module on a set of partitions of the points (each a list
    /// of 1-based blocks) permuted by the group.
    pub fn permutation_on_partitions(group: Arc<PermGroup>, p: u32, parts: &[Vec<Vec<usize>>]) -> Result<GModule> {
        let mats = group
            .generators()
            .iter()
            .map(|g| partition_action(g, parts).map(|img| perm_matrix(p, &img)))
            .collect::<Result<Vec<_>>>()?;
        GModule::new(group, p, parts.len(), mats)
    }

    /// Sum-zero submodule of the permutation module on partitions.
    pub fn sum_zero_on_partitions(group: Arc<PermGroup>, p: u32, parts: &[Vec<Vec<usize>>]) -> Result<GModule> {
        let mats = group
            .generators()
            .iter()
            .map(|g| partition_action(g, parts).map(|img| sum_zero_matrix(p, &img)))
            .collect::<Result<Vec<_>>>()?;
        GModule::new(group, p, parts.len() - 1, mats)
    }

    /// Permutation module `F_p[G/H]` on left cosets.
    pub fn permutation_on_cosets(group: Arc<PermGroup>, p: u32, h: &Subgroup) -> Result<GModule> {
        let mats = coset_images(&group, h)?.iter().map(|img| perm_matrix(p, img)).collect();
        let k = group.order() / h.order();
        GModule::new(group, p, k, mats)
    }

    /// Sum-zero submodule of `F_p[G/H]`.
    pub fn sum_zero_on_cosets(group: Arc<PermGroup>, p: u32, h: &Subgroup) -> Result<GModule> {
        let mats = coset_images(&group, h)?.iter().map(|img| sum_zero_matrix(p, img)).collect();
        let k = group.order() / h.order();
        if k < 2 {
            return Err(Error::InvalidModule("sum-zero module of a single coset".into()));
        }
        GModule::new(group, p, k - 1, mats)
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    #[inline]
    pub fn act(&self, x: Elt) -> &Matrix {
        &self.action[x as usize]
    }

    pub fn generator_matrices(&self) -> Vec<Matrix> {
        self.group.gens().iter().map(|&g| self.act(g).clone()).collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.group.gens().iter().all(|&g| *self.act(g) == Matrix::identity(self.p, self.dim))
    }

    /// Kernel of the action.
    pub fn kernel(&self) -> Subgroup {
        let id = Matrix::identity(self.p, self.dim);
        let elems = (0..self.group.order() as Elt).filter(|&x| *self.act(x) == id).collect();
        self.group.subgroup_from_elements(elems)
    }

    pub fn acts_trivially(&self, x: Elt) -> bool {
        *self.act(x) == Matrix::identity(self.p, self.dim)
    }

    /// Restriction to a subgroup, as a module over a standalone copy of it.
    pub fn restrict(&self, h: &Subgroup) -> Result<GModule> {
        let g = &self.group;
        if h.elements().iter().any(|&x| x as usize >= g.order()) {
            return Err(Error::NotASubgroup);
        }
        let gens: Vec<Perm> = h.gens().iter().map(|&x| g.perm(x).clone()).collect();
        let hg = Arc::new(PermGroup::new(g.degree(), gens)?);
        if hg.order() != h.order() {
            return Err(Error::NotASubgroup);
        }
        let mats = h.gens().iter().map(|&x| self.act(x).clone()).collect();
        GModule::new(hg, self.p, self.dim, mats)
    }

    /// Transports the module along an inclusion of its group into `g` given
    /// by matching permutations: returns the embedded subgroup.
    fn embedding(&self, g: &PermGroup) -> Result<(Subgroup, Vec<Elt>)> {
        let h = &self.group;
        let map: Vec<Elt> = h
            .elements()
            .iter()
            .map(|x| g.index_of(x).ok_or(Error::NotASubgroup))
            .collect::<Result<_>>()?;
        Ok((g.subgroup_from_elements(map.clone()), map))
    }

    /// `Ind_H^G M = F_p[G] ⊗_{F_p[H]} M` with basis `t ⊗ m` over left coset
    /// representatives `t` of `H` in `G`.
    pub fn induce(&self, g: Arc<PermGroup>) -> Result<GModule> {
        let (h, map) = self.embedding(&g)?;
        let reps = g.left_coset_reps(&g.whole(), &h);
        check_index(reps.len())?;
        let lookup = inverse_map(&g, &map);
        let d = self.dim;
        let k = reps.len();
        let coset_of = coset_table(&g, &reps, &h, true);
        let mats = g
            .gens()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(self.p, k * d, k * d);
                for (c, &t) in reps.iter().enumerate() {
                    let st = g.mul(s, t);
                    let c2 = coset_of[st as usize] as usize;
                    let hh = g.mul(g.inv(reps[c2]), st);
                    let a = self.act(lookup[hh as usize]);
                    for i in 0..d {
                        for j in 0..d {
                            m.set(c2 * d + i, c * d + j, a.get(i, j));
                        }
                    }
                }
                m
            })
            .collect();
        GModule::new(g, self.p, k * d, mats)
    }

    /// `coInd_H^G M = Hom_{F_p[H]}(F_p[G], M)` with coordinates `f(t)` over
    /// right coset representatives `t` of `H` in `G`; `(g f)(x) = f(x g)`.
    pub fn coinduce(&self, g: Arc<PermGroup>) -> Result<GModule> {
        let (h, map) = self.embedding(&g)?;
        let reps = g.right_coset_reps(&g.whole(), &h);
        check_index(reps.len())?;
        let lookup = inverse_map(&g, &map);
        let d = self.dim;
        let k = reps.len();
        let coset_of = coset_table(&g, &reps, &h, false);
        let mats = g
            .gens()
            .iter()
            .map(|&s| {
                let mut m = Matrix::zeros(self.p, k * d, k * d);
                for (c, &t) in reps.iter().enumerate() {
                    let ts = g.mul(t, s);
                    let c2 = coset_of[ts as usize] as usize;
                    let hh = g.mul(ts, g.inv(reps[c2]));
                    let a = self.act(lookup[hh as usize]);
                    for i in 0..d {
                        for j in 0..d {
                            m.set(c * d + i, c2 * d + j, a.get(i, j));
                        }
                    }
                }
                m
            })
            .collect();
        GModule::new(g, self.p, k * d, mats)
    }

    /// Canonical basis of `M^H`.
    pub fn fixed_points(&self, h: &Subgroup) -> Subspace {
        let id = Matrix::identity(self.p, self.dim);
        let mut e = Echelon::new(self.p, self.dim);
        for &x in h.gens() {
            let a = self.act(x).sub(&id);
            for i in 0..self.dim {
                e.add_row(a.row(i));
            }
        }
        Subspace::span(self.p, self.dim, &e.kernel())
    }

    /// Fixed points of `H` inside a given subspace.
    pub fn fixed_points_in(&self, h: &Subgroup, v: &Subspace) -> Subspace {
        let fixed = self.fixed_points(h);
        fixed.intersect(v)
    }

    /// Basis of `Hom_G(self, other)` as `other.dim × self.dim` matrices.
    pub fn hom_basis(&self, other: &GModule) -> Vec<Matrix> {
        assert!(Arc::ptr_eq(&self.group, &other.group) || self.group.order() == other.group.order());
        let (m, n) = (self.dim, other.dim);
        let f = Fp::new(self.p);
        let nvars = n * m;
        let mut e = Echelon::new(self.p, nvars);
        for &s in self.group.gens() {
            let a = self.act(s);
            let b = other.act(s);
            // (B X − X A)_{ij} = Σ_k B_ik X_kj − Σ_k X_ik A_kj
            for i in 0..n {
                for j in 0..m {
                    let mut row = vec![0u32; nvars];
                    for k in 0..n {
                        row[k * m + j] = f.add(row[k * m + j], b.get(i, k));
                    }
                    for k in 0..m {
                        row[i * m + k] = f.sub(row[i * m + k], a.get(k, j));
                    }
                    e.add_row(&row);
                }
            }
        }
        e.kernel()
            .into_iter()
            .map(|v| Matrix::from_rows(self.p, m, &v.chunks(m).map(|c| c.to_vec()).collect::<Vec<_>>()))
            .collect()
    }

    /// Searches `Hom_G(self, other)` for an invertible intertwiner: all
    /// combinations when there are at most 4096, otherwise seeded sampling.
    pub fn find_isomorphism(&self, other: &GModule) -> Option<Matrix> {
        if self.dim != other.dim {
            return None;
        }
        let basis = self.hom_basis(other);
        if basis.is_empty() {
            return (self.dim == 0).then(|| Matrix::zeros(self.p, 0, 0));
        }
        let k = basis.len() as u32;
        let combine = |coeffs: &[u32]| -> Matrix {
            let mut acc = Matrix::zeros(self.p, self.dim, self.dim);
            for (c, b) in coeffs.iter().zip(&basis) {
                if *c != 0 {
                    acc = acc.add(&b.scaled(*c));
                }
            }
            acc
        };
        let total = (self.p as u64).checked_pow(k);
        match total {
            Some(t) if t <= 4096 => (1..t).find_map(|mut idx| {
                let coeffs: Vec<u32> = (0..k)
                    .map(|_| {
                        let c = (idx % self.p as u64) as u32;
                        idx /= self.p as u64;
                        c
                    })
                    .collect();
                let m = combine(&coeffs);
                m.is_invertible().then_some(m)
            }),
            _ => {
                let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
                (0..4096).find_map(|_| {
                    let coeffs: Vec<u32> = (0..k).map(|_| rng.gen_range(0..self.p)).collect();
                    let m = combine(&coeffs);
                    m.is_invertible().then_some(m)
                })
            }
        }
    }
}

fn check_index(k: usize) -> Result<()> {
    const INDEX_CAP: usize = 100_000;
    if k > INDEX_CAP {
        return Err(Error::IndexCapExceeded { index: k, cap: INDEX_CAP });
    }
    Ok(())
}

fn inverse_map(g: &PermGroup, map: &[Elt]) -> Vec<Elt> {
    let mut inv = vec![u32::MAX; g.order()];
    for (i, &x) in map.iter().enumerate() {
        inv[x as usize] = i as Elt;
    }
    inv
}

/// For each element, the index of its coset among `reps`: left cosets `tH`
/// when `left`, otherwise right cosets `Ht`.
fn coset_table(g: &PermGroup, reps: &[Elt], h: &Subgroup, left: bool) -> Vec<u32> {
    let mut table = vec![u32::MAX; g.order()];
    for (c, &t) in reps.iter().enumerate() {
        for &y in h.elements() {
            let x = if left { g.mul(t, y) } else { g.mul(y, t) };
            table[x as usize] = c as u32;
        }
    }
    table
}

fn block_action(g: &Perm, blocks: &[Vec<usize>]) -> Result<Vec<usize>> {
    blocks
        .iter()
        .map(|b| {
            let mut img: Vec<usize> = b.iter().map(|&x| g.apply(x - 1) + 1).collect();
            img.sort_unstable();
            blocks
                .iter()
                .position(|c| {
                    let mut c = c.clone();
                    c.sort_unstable();
                    c == img
                })
                .ok_or_else(|| Error::InvalidModule(format!("{g} does not permute the blocks")))
        })
        .collect()
}

/// Action of each generator on the left cosets of `H`.
fn coset_images(g: &PermGroup, h: &Subgroup) -> Result<Vec<Vec<usize>>> {
    if h.elements().iter().any(|&x| x as usize >= g.order()) || !g.is_closed(h.elements()) {
        return Err(Error::NotASubgroup);
    }
    let reps = g.left_coset_reps(&g.whole(), h);
    let mut coset_of = vec![0usize; g.order()];
    for (c, &r) in reps.iter().enumerate() {
        for &y in h.elements() {
            coset_of[g.mul(r, y) as usize] = c;
        }
    }
    Ok(g.gens().iter().map(|&s| reps.iter().map(|&r| coset_of[g.mul(s, r) as usize]).collect()).collect())
}

fn canonical_partition(parts: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = parts
        .iter()
        .map(|b| {
            let mut b = b.clone();
            b.sort_unstable();
            b
        })
        .collect();
    out.sort();
    out
}

fn partition_action(g: &Perm, parts: &[Vec<Vec<usize>>]) -> Result<Vec<usize>> {
    let canon: Vec<Vec<Vec<usize>>> = parts.iter().map(|q| canonical_partition(q)).collect();
    canon
        .iter()
        .map(|q| {
            let img: Vec<Vec<usize>> = q.iter().map(|b| b.iter().map(|&x| g.apply(x - 1) + 1).collect()).collect();
            let img = canonical_partition(&img);
            canon
                .iter()
                .position(|c| *c == img)
                .ok_or_else(|| Error::InvalidModule(format!("{g} does not permute the partitions")))
        })
        .collect()
}

/// Action on `b_i − b_last` of the permutation `i ↦ img[i]` of basis vectors.
fn sum_zero_matrix(p: u32, img: &[usize]) -> Matrix {
    let k = img.len();
    let f = Fp::new(p);
    let mut m = Matrix::zeros(p, k - 1, k - 1);
    for i in 0..k - 1 {
        let (a, b) = (img[i], img[k - 1]);
        if a < k - 1 {
            m.add_at(a, i, 1);
        }
        if b < k - 1 {
            m.add_at(b, i, f.neg(1));
        }
    }
    m
}

fn perm_matrix(p: u32, img: &[usize]) -> Matrix {
    let n = img.len();
    let mut m = Matrix::zeros(p, n, n);
    for (i, &j) in img.iter().enumerate() {
        m.set(j, i, 1);
    }
    m
}

/// Checks that `O^p(C_G(P))` acts trivially for every `P` in the collection.
/// On failure returns `(P, g)` with `g ∈ O^p(C_G(P))` acting nontrivially.
pub fn check_pilocal_compatibility(
    m: &GModule,
    collection: &[Subgroup],
) -> std::result::Result<(), (Subgroup, Elt)> {
    let g = m.group();
    let whole = g.whole();
    for q in collection {
        let c = g.centralizer(&whole, q);
        let r = o_upper_p(g, &c, m.p());
        if let Some(&x) = r.gens().iter().find(|&&x| !m.acts_trivially(x)) {
            return Err((q.clone(), x));
        }
    }
    Ok(())
}

/// Convenience wrapper turning a compatibility failure into an error.
pub fn require_compatible(m: &GModule, collection: &[Subgroup]) -> Result<()> {
    check_pilocal_compatibility(m, collection).map_err(|(q, x)| Error::IncompatibleAction {
        subgroup_order: q.order(),
        witness: m.group().perm(x).to_string(),
    })
}
