//! Transporter and linking categories over a collection, their nerves with
//! local coefficients, and comparison maps.

use crate::cohom::{bar_cells, cell_cap, CohomologyBasis, CohomologyEngine};
use crate::error::{Error, Result};
use crate::fusion::FusionData;
use crate::linalg::{sparse_cohomology, Fp, Matrix, QuotientBasis, SparseMatrix};
use crate::module::{require_compatible, GModule};
use crate::perm::{o_upper_p, Elt, PermGroup, Subgroup};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CategoryKind {
    Transporter,
    Linking,
}

/// A morphism `P → Q` labelled by `g` with `gPg⁻¹ ≤ Q`; in a linking
/// category `g` is the smallest element of `g·O^p(C_G(P))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub source: u32,
    pub target: u32,
    pub label: Elt,
}

/// A finite category whose objects are subgroups of `S`.
#[derive(Debug)]
pub struct FiniteCategory {
    kind: CategoryKind,
    group: Arc<PermGroup>,
    objects: Vec<Subgroup>,
    /// `O^p(C_G(P))` per object for linking categories, trivial otherwise.
    kernels: Vec<Subgroup>,
    /// Non-identity morphisms, sorted by `(target, source, label)`.
    arrows: Vec<Arrow>,
    lookup: HashMap<Arrow, u32>,
    into: Vec<Vec<u32>>,
    identity_count: usize,
}

impl FiniteCategory {
    /// Transporter category on the given subgroups of `S` (indices into `f`).
    pub fn transporter(f: &FusionData, collection: &[usize]) -> Result<FiniteCategory> {
        FiniteCategory::build(f, collection, CategoryKind::Transporter)
    }

    pub fn linking(f: &FusionData, collection: &[usize]) -> Result<FiniteCategory> {
        FiniteCategory::build(f, collection, CategoryKind::Linking)
    }

    fn build(f: &FusionData, collection: &[usize], kind: CategoryKind) -> Result<FiniteCategory> {
        f.validate_collection(collection)?;
        let g = f.group().clone();
        let mut idx = collection.to_vec();
        idx.sort_unstable();
        idx.dedup();
        let objects: Vec<Subgroup> = idx.iter().map(|&i| f.subgroup(i).clone()).collect();
        FiniteCategory::from_objects(g, f.p(), objects, kind)
    }

    /// A category on arbitrary subgroups, without closure checks.
    pub fn from_objects(group: Arc<PermGroup>, p: u32, objects: Vec<Subgroup>, kind: CategoryKind) -> Result<FiniteCategory> {
        let g = &*group;
        let whole = g.whole();
        let kernels: Vec<Subgroup> = objects
            .iter()
            .map(|o| match kind {
                CategoryKind::Transporter => g.trivial(),
                CategoryKind::Linking => o_upper_p(g, &g.centralizer(&whole, o), p),
            })
            .collect();
        let mut arrows = Vec::new();
        let mut identity_count = 0;
        for (t, q) in objects.iter().enumerate() {
            for (s, pp) in objects.iter().enumerate() {
                let mut labels: Vec<Elt> = g
                    .transporter(&whole, pp, q)
                    .into_iter()
                    .map(|x| kernels[s].elements().iter().map(|&k| g.mul(x, k)).min().unwrap())
                    .collect();
                labels.sort_unstable();
                labels.dedup();
                for label in labels {
                    if s == t && label == 0 {
                        identity_count += 1;
                        continue;
                    }
                    arrows.push(Arrow { source: s as u32, target: t as u32, label });
                }
            }
        }
        let lookup = arrows.iter().enumerate().map(|(i, a)| (*a, i as u32)).collect();
        let mut into = vec![Vec::new(); objects.len()];
        for (i, a) in arrows.iter().enumerate() {
            into[a.target as usize].push(i as u32);
        }
        Ok(FiniteCategory { kind, group, objects, kernels, arrows, lookup, into, identity_count })
    }

    pub fn kind(&self) -> CategoryKind {
        self.kind
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn objects(&self) -> &[Subgroup] {
        &self.objects
    }

    pub fn object_index(&self, p: &Subgroup) -> Option<usize> {
        self.objects.iter().position(|o| o == p)
    }

    /// Non-identity morphisms.
    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    /// `|Mor(P,Q)|` including identities.
    pub fn hom_count(&self, s: usize, t: usize) -> usize {
        let n = self.into[t].iter().filter(|&&a| self.arrows[a as usize].source as usize == s).count();
        n + usize::from(s == t)
    }

    pub fn morphism_count(&self) -> usize {
        self.arrows.len() + self.identity_count
    }

    fn normalize(&self, x: Elt, source: u32) -> Elt {
        let g = &*self.group;
        self.kernels[source as usize].elements().iter().map(|&k| g.mul(x, k)).min().unwrap()
    }

    /// The morphism with the given endpoints and label; `None` for an identity.
    pub fn arrow(&self, source: u32, target: u32, x: Elt) -> Option<u32> {
        let label = self.normalize(x, source);
        if source == target && label == 0 {
            return None;
        }
        Some(*self.lookup.get(&Arrow { source, target, label }).expect("label of a morphism"))
    }

    /// `outer ∘ inner`, or `None` when the composite is an identity.
    pub fn compose(&self, outer: u32, inner: u32) -> Option<u32> {
        let (a, b) = (self.arrows[outer as usize], self.arrows[inner as usize]);
        debug_assert_eq!(b.target, a.source);
        self.arrow(b.source, a.target, self.group.mul(a.label, b.label))
    }

    /// Numbers of normalized `k`-chains for `k = 0..=top`.
    pub fn chain_census(&self, top: usize) -> Vec<u64> {
        let n = self.objects.len();
        let mut b = vec![1u64; n];
        let mut out = vec![n as u64];
        for _ in 1..=top {
            let next: Vec<u64> = (0..n)
                .map(|q| {
                    self.into[q]
                        .iter()
                        .map(|&a| b[self.arrows[a as usize].source as usize])
                        .fold(0u64, |x, y| x.saturating_add(y))
                })
                .collect();
            out.push(next.iter().fold(0u64, |x, &y| x.saturating_add(y)));
            b = next;
        }
        out
    }

    /// Normalized `k`-chains `m_1 … m_k` with `source(m_i) = target(m_{i+1})`.
    fn chains(&self, k: usize) -> Vec<Vec<u32>> {
        if k == 0 {
            return Vec::new();
        }
        let mut cur: Vec<Vec<u32>> = (0..self.arrows.len() as u32).map(|a| vec![a]).collect();
        for _ in 1..k {
            let mut next = Vec::new();
            for c in &cur {
                let s = self.arrows[*c.last().unwrap() as usize].source as usize;
                for &a in &self.into[s] {
                    let mut d = c.clone();
                    d.push(a);
                    next.push(d);
                }
            }
            cur = next;
        }
        cur
    }
}

/// The normalized nerve cochain complex of a category with coefficients in
/// `M`, the first face twisted by the action of the morphism's label.
///
/// A `k`-cochain has coordinate `idx(chain)·dim M + m`; degree-0 chains are
/// the objects.
#[derive(Debug)]
pub struct NerveComplex {
    p: u32,
    dim_m: usize,
    chains: Vec<Vec<Vec<u32>>>,
    index: Vec<HashMap<Vec<u32>, usize>>,
    coboundaries: Vec<SparseMatrix>,
    bases: Vec<QuotientBasis>,
    census: Vec<u64>,
}

impl NerveComplex {
    pub fn new(cat: &FiniteCategory, module: &GModule, n_max: usize) -> Result<NerveComplex> {
        if cat.kind == CategoryKind::Linking {
            require_compatible(module, &cat.objects)?;
        }
        let census = cat.chain_census(n_max + 1);
        let needed = bar_cells(&census, module.dim());
        let cap = cell_cap();
        if needed > cap {
            return Err(Error::CellCapExceeded { needed, cap, census });
        }
        let p = module.p();
        let fp = Fp::new(p);
        let d = module.dim();
        let chains: Vec<Vec<Vec<u32>>> = (0..=n_max + 1).map(|k| cat.chains(k)).collect();
        let index: Vec<HashMap<Vec<u32>, usize>> = chains
            .iter()
            .map(|cs| cs.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect())
            .collect();
        let count = |k: usize| if k == 0 { cat.objects.len() } else { chains[k].len() };
        let mut coboundaries = Vec::with_capacity(n_max + 1);
        for k in 0..=n_max {
            let mut mat = SparseMatrix::new(p, count(k) * d);
            for c in &chains[k + 1] {
                let first = cat.arrows[c[0] as usize];
                let a = module.act(first.label);
                let mut common: Vec<(usize, u32)> = Vec::new();
                let d0 = if k == 0 { cat.arrows[c[0] as usize].source as usize } else { index[k][&c[1..]] };
                for i in 1..=k {
                    if let Some(m) = cat.compose(c[i - 1], c[i]) {
                        let mut t = Vec::with_capacity(k);
                        t.extend_from_slice(&c[..i - 1]);
                        t.push(m);
                        t.extend_from_slice(&c[i + 1..]);
                        let sign = if i % 2 == 0 { 1 } else { fp.neg(1) };
                        common.push((index[k][&t], sign));
                    }
                }
                let last = if k == 0 { first.target as usize } else { index[k][&c[..k]] };
                let sign_last = if (k + 1) % 2 == 0 { 1 } else { fp.neg(1) };
                for m in 0..d {
                    let mut row: Vec<(usize, u32)> = Vec::new();
                    for m2 in 0..d {
                        let v = a.get(m, m2);
                        if v != 0 {
                            row.push((d0 * d + m2, v));
                        }
                    }
                    for &(col, s) in &common {
                        row.push((col * d + m, s));
                    }
                    row.push((last * d + m, sign_last));
                    mat.push_row(row);
                }
            }
            coboundaries.push(mat);
        }
        let bases = (0..=n_max)
            .map(|n| {
                let prev = if n == 0 { None } else { Some(&coboundaries[n - 1]) };
                sparse_cohomology(coboundaries[n].ncols(), p, prev, &coboundaries[n])
            })
            .collect();
        Ok(NerveComplex { p, dim_m: d, chains, index, coboundaries, bases, census })
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn census(&self) -> &[u64] {
        &self.census
    }

    pub fn coboundary_matrix(&self, k: usize) -> &SparseMatrix {
        &self.coboundaries[k]
    }

    pub fn cochain_dim(&self, k: usize) -> usize {
        self.coboundaries[k].ncols()
    }

    pub fn cohomology(&self, n: usize) -> &QuotientBasis {
        &self.bases[n]
    }

    pub fn dims(&self) -> Vec<usize> {
        self.bases.iter().map(|b| b.dim()).collect()
    }

    /// Index of a normalized chain of degree `k ≥ 1`.
    pub fn chain_index(&self, k: usize, chain: &[u32]) -> Option<usize> {
        self.index[k].get(chain).copied()
    }

    pub fn chains(&self, k: usize) -> &[Vec<u32>] {
        &self.chains[k]
    }

    /// Value of a cochain on an object (`k = 0`) or chain, as a slice.
    fn value<'a>(&self, f: &'a [u32], idx: usize) -> &'a [u32] {
        &f[idx * self.dim_m..(idx + 1) * self.dim_m]
    }
}

/// `H^0, …, H^{n_max}` of the nerve with local coefficients.
pub fn nerve_cohomology(cat: &FiniteCategory, module: &GModule, n_max: usize) -> Result<Vec<CohomologyBasis>> {
    let nc = NerveComplex::new(cat, module, n_max)?;
    Ok((0..=n_max).map(|n| CohomologyBasis::from_quotient(n, nc.cohomology(n))).collect())
}

/// The map `H^n(|C|,M) → H^n(S,M)` induced by the one-object category of
/// `S` at the object `S`, as a matrix in the engine's basis of `H^n(S,M)`.
pub fn delta_s_comparison(
    cat: &FiniteCategory,
    nerve: &NerveComplex,
    engine: &CohomologyEngine,
    n: usize,
) -> Result<Matrix> {
    let s = engine.sylow();
    let so = cat.object_index(s).ok_or_else(|| Error::InvalidCollection("S is not an object".into()))? as u32;
    let res = engine.resolution();
    let d = nerve.dim_m;
    let p = nerve.p;
    let local = engine.local(s);
    let target = local.basis(n);
    let elems = res.elements();
    let b = elems.len() - 1;
    let arrow_of: Vec<Option<u32>> = elems.iter().map(|&x| cat.arrow(so, so, x)).collect();
    let psi = res.bar_comparison(n);
    let cols: Vec<Vec<u32>> = nerve
        .cohomology(n)
        .representatives()
        .iter()
        .map(|z| {
            let mut bar = vec![0u32; b.pow(n as u32) * d];
            if n == 0 {
                bar.copy_from_slice(nerve.value(z, so as usize));
            } else {
                let mut t = vec![1usize; n];
                for slot in 0..b.pow(n as u32) {
                    let chain: Option<Vec<u32>> = t.iter().map(|&i| arrow_of[i]).collect();
                    if let Some(ci) = chain.and_then(|c| nerve.chain_index(n, &c)) {
                        bar[slot * d..(slot + 1) * d].copy_from_slice(nerve.value(z, ci));
                    }
                    for pos in (0..n).rev() {
                        t[pos] += 1;
                        if t[pos] <= b {
                            break;
                        }
                        t[pos] = 1;
                    }
                }
            }
            let r = engine.bar_pullback(&psi, &bar);
            target.coords(&r)
        })
        .collect();
    Ok(Matrix::from_columns(p, target.dim(), &cols))
}

/// The map `H^n(|L|,M) → H^n(|T|,M)` induced by the label functor `T → L`.
pub fn homofunctor_map(
    t: &FiniteCategory,
    tn: &NerveComplex,
    l: &FiniteCategory,
    ln: &NerveComplex,
    n: usize,
) -> Result<Matrix> {
    if t.objects != l.objects {
        return Err(Error::InvalidCollection("categories have different objects".into()));
    }
    let d = tn.dim_m;
    let to_l: Vec<Option<u32>> = t.arrows.iter().map(|a| l.arrow(a.source, a.target, a.label)).collect();
    Ok(ln.cohomology(n).induced_map(tn.cohomology(n), |f| {
        let mut out = vec![0u32; tn.cochain_dim(n)];
        if n == 0 {
            out.copy_from_slice(f);
            return out;
        }
        for (i, c) in tn.chains(n).iter().enumerate() {
            let image: Option<Vec<u32>> = c.iter().map(|&a| to_l[a as usize]).collect();
            if let Some(j) = image.and_then(|c2| ln.chain_index(n, &c2)) {
                out[i * d..(i + 1) * d].copy_from_slice(ln.value(f, j));
            }
        }
        out
    }))
}
