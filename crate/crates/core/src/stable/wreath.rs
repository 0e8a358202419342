use super::{stable_subspaces, Family, PairMode};
use crate::cohom::{CohomologyEngine, GroupCohomology};
use crate::error::{Error, Result};
use crate::fusion::{CollectionKind, FusionData};
use crate::module::GModule;
use crate::nerve::{FiniteCategory, NerveComplex};
use crate::perm::{sylow_subgroup, wreath_product_cp, Elt, Perm, PermGroup, Subgroup, Wreath};
use serde::Serialize;
use std::sync::Arc;

/// An essential class of `G_0 ≀ C_p` sorted by the two cases of the
/// classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssentialEntry {
    pub order: usize,
    /// `"E1"` when inside the base `S_0^p`, `"E2"` otherwise.
    pub kind: String,
    pub is_base: bool,
    pub normalizer_order: usize,
    pub expected_normalizer_order: Option<usize>,
    pub matches: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DimRow {
    pub n: usize,
    pub lhs: usize,
    pub rhs: usize,
}

impl DimRow {
    pub fn equal(&self) -> bool {
        self.lhs == self.rhs
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WreathReport {
    pub group_order: usize,
    pub sylow_order: usize,
    pub essentials: Vec<EssentialEntry>,
    pub essentials_match: bool,
    /// `dim N` against `[G : G_0^Δ]·dim M_0`.
    pub coind_dim: (usize, usize),
    /// `H^n(G, N)` against `H^n(G_0, M_0)`.
    pub shapiro_group: Vec<DimRow>,
    /// `H^n(S, coInd_{S_0^Δ}^S M_0)` against `H^n(S_0, M_0)`.
    pub shapiro_sylow: Vec<DimRow>,
    /// `H^n(H, Res Ind_H^G M)` against `[G:H]·H^n(H, M)` for `H = G_0^p`,
    /// `M = Res_H N`.
    pub topowr: Vec<DimRow>,
    /// The same identity for `S_0^p ⊴ S_0 ≀ C_p` and `M = Res coInd_{S_0^Δ}^S M_0`.
    pub topowr_sylow: Vec<DimRow>,
    /// `H^n(F^c, N)` against `H^n(G, N)`. Informational: the two agree only
    /// when the centric transporters generate `G`.
    pub stable_vs_group: Vec<DimRow>,
    /// `H^n(F^c, N)` against the nerve of `T^c`; `None` over the cell budget.
    pub stable_vs_nerve: Option<Vec<DimRow>>,
}

impl WreathReport {
    pub fn passes(&self) -> bool {
        let rows_ok = |v: &[DimRow]| v.iter().all(DimRow::equal);
        self.essentials_match
            && self.coind_dim.0 == self.coind_dim.1
            && rows_ok(&self.shapiro_group)
            && rows_ok(&self.shapiro_sylow)
            && rows_ok(&self.topowr)
            && rows_ok(&self.topowr_sylow)
            && self.stable_vs_nerve.as_deref().map_or(true, rows_ok)
    }
}

fn standalone(g: &PermGroup, gens: &[Elt]) -> Result<Arc<PermGroup>> {
    let perms: Vec<Perm> = gens.iter().map(|&x| g.perm(x).clone()).collect();
    Ok(Arc::new(PermGroup::new(g.degree(), perms)?))
}

/// `H^k` of a `p`-group, `k = 0..=n`.
fn sylow_dims(m: &GModule, n: usize) -> Vec<usize> {
    let e = CohomologyEngine::new(m, n);
    e.local(e.sylow()).dims()
}

fn rows(lhs: &[usize], rhs: &[usize]) -> Vec<DimRow> {
    lhs.iter().zip(rhs).enumerate().map(|(n, (&l, &r))| DimRow { n, lhs: l, rhs: r }).collect()
}

/// `S_0 ≀ C_p` inside the wreath product.
fn wreath_sylow(w: &Wreath, g0: &PermGroup, s0: &Subgroup) -> Subgroup {
    let mut gens: Vec<Elt> = (0..w.p as usize)
        .flat_map(|k| s0.gens().iter().map(move |&x| (x, k)))
        .map(|(x, k)| w.embed_in_copy(g0.perm(x), k))
        .collect();
    gens.push(w.cycle);
    w.group.closure(&gens)
}

/// Projection of a subgroup of the base onto the first copy.
fn first_projection(w: &Wreath, g0: &PermGroup, p: &Subgroup) -> Result<Subgroup> {
    let d = w.base_degree;
    let elems: Vec<Elt> = p
        .elements()
        .iter()
        .map(|&x| {
            let imgs = w.group.perm(x).images()[..d].iter().map(|&i| i as usize).collect();
            let q = Perm::from_images(imgs)?;
            g0.index_of(&q).ok_or(Error::NotASubgroup)
        })
        .collect::<Result<_>>()?;
    Ok(g0.closure(&elems))
}

fn classify_essentials(w: &Wreath, g0: &Arc<PermGroup>, f: &FusionData, f0: &FusionData) -> Result<Vec<EssentialEntry>> {
    let g = &w.group;
    let pp = w.p as usize;
    let base_s = g.intersection(&w.base, f.sylow());
    let n0 = f0.info(f0.sylow_index()).normalizer.order();
    let mut out = Vec::new();
    for i in f.essential_subgroups() {
        let p = f.subgroup(i);
        let norm = &f.info(i).normalizer;
        let entry = if p.is_subgroup_of(&w.base) {
            let is_base = *p == base_s;
            if is_base {
                let expected = n0.pow(w.p) * pp;
                EssentialEntry {
                    order: p.order(),
                    kind: "E1".into(),
                    is_base,
                    normalizer_order: norm.order(),
                    expected_normalizer_order: Some(expected),
                    matches: norm.order() == expected,
                }
            } else {
                EssentialEntry {
                    order: p.order(),
                    kind: "E1".into(),
                    is_base,
                    normalizer_order: norm.order(),
                    expected_normalizer_order: None,
                    matches: norm.is_subgroup_of(&w.base),
                }
            }
        } else {
            let p0 = g.intersection(p, &w.base);
            let q = first_projection(w, g0, &p0)?;
            let q_ess = f0.classify_subgroup(&q).is_some_and(|fl| fl.essential);
            let nq = g0.normalizer(&g0.whole(), &q).order();
            let expected = nq / q.order() * p.order();
            EssentialEntry {
                order: p.order(),
                kind: "E2".into(),
                is_base: false,
                normalizer_order: norm.order(),
                expected_normalizer_order: Some(expected),
                matches: q_ess && p.order() == q.order().pow(w.p) * pp && norm.order() == expected,
            }
        };
        out.push(entry);
    }
    Ok(out)
}

/// Desk-scale checks for `G = G_0 ≀ C_p` with `N = coInd_{G_0^Δ}^G M_0`.
pub fn wreath_split_check(m0: &GModule, n: usize) -> Result<WreathReport> {
    let g0 = m0.group().clone();
    let p = m0.p();
    let w = wreath_product_cp(&g0, p)?;
    let g = w.group.clone();
    let s0 = sylow_subgroup(&g0, &g0.whole(), p);
    let s = wreath_sylow(&w, &g0, &s0);
    let f = FusionData::with_sylow(g.clone(), p, s.clone())?;
    let f0 = FusionData::with_sylow(g0.clone(), p, s0.clone())?;
    let essentials = classify_essentials(&w, &g0, &f, &f0)?;
    let essentials_match = essentials.iter().all(|e| e.matches);

    // M_0 carried by the diagonal copy
    let diag_gens: Vec<Elt> = g0.generators().iter().map(|x| w.embed_diagonal(x)).collect();
    let diag = standalone(&w.group, &diag_gens)?;
    let m_diag = GModule::new(diag.clone(), p, m0.dim(), m0.generator_matrices())?;
    let big_n = m_diag.coinduce(g.clone())?;
    let coind_dim = (big_n.dim(), w.group.order() / w.diagonal.order() * m0.dim());

    let gc_n = GroupCohomology::from_engine(CohomologyEngine::with_sylow(&big_n, &s, n));
    let gc_0 = GroupCohomology::new(m0, n);
    let shapiro_group = rows(&gc_n.dims(), &gc_0.dims());

    let s_grp = standalone(&w.group, s.gens())?;
    let s0_diag: Vec<Elt> = s0
        .gens()
        .iter()
        .map(|&x| diag.index_of(w.group.perm(w.embed_diagonal(g0.perm(x)))).ok_or(Error::NotASubgroup))
        .collect::<Result<_>>()?;
    let m_s0 = m_diag.restrict(&diag.closure(&s0_diag))?;
    let n_loc = m_s0.coinduce(s_grp.clone())?;
    let shapiro_sylow = rows(&sylow_dims(&n_loc, n), &sylow_dims(&m_s0, n));

    let index = w.group.order() / w.base.order();
    let m_base = big_n.restrict(&w.base)?;
    let induced = m_base.induce(g.clone())?.restrict(&w.base)?;
    let lhs = GroupCohomology::new(&induced, n).dims();
    let rhs: Vec<usize> = GroupCohomology::new(&m_base, n).dims().iter().map(|d| d * index).collect();
    let topowr = rows(&lhs, &rhs);

    let base_in_s: Vec<Elt> = g
        .intersection(&w.base, &s)
        .gens()
        .iter()
        .map(|&x| s_grp.index_of(g.perm(x)).ok_or(Error::NotASubgroup))
        .collect::<Result<_>>()?;
    let base_s = s_grp.closure(&base_in_s);
    let m_bs = n_loc.restrict(&base_s)?;
    let induced_s = m_bs.induce(s_grp.clone())?.restrict(&base_s)?;
    let rhs: Vec<usize> = sylow_dims(&m_bs, n).iter().map(|d| d * index).collect();
    let topowr_sylow = rows(&sylow_dims(&induced_s, n), &rhs);

    let st: Vec<usize> = stable_subspaces(&f, gc_n.engine(), n, &Family::Collection(CollectionKind::Centric), PairMode::Reduced)?
        .iter()
        .map(|x| x.dim())
        .collect();
    let stable_vs_group = rows(&st, &gc_n.dims());
    let cat = FiniteCategory::transporter(&f, &f.collection(CollectionKind::Centric))?;
    let stable_vs_nerve = match NerveComplex::new(&cat, &big_n, n) {
        Ok(nc) => Some(rows(&st, &nc.dims())),
        Err(Error::CellCapExceeded { .. }) => None,
        Err(e) => return Err(e),
    };

    Ok(WreathReport {
        group_order: w.group.order(),
        sylow_order: s.order(),
        essentials,
        essentials_match,
        coind_dim,
        shapiro_group,
        shapiro_sylow,
        topowr,
        topowr_sylow,
        stable_vs_group,
        stable_vs_nerve,
    })
}
