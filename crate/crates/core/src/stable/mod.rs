//! Stable-element subspaces of `H^n(S,M)`, fixed points under outer
//! automizers, and family comparisons.

mod wreath;

pub use wreath::{wreath_split_check, DimRow, EssentialEntry, WreathReport};

use crate::cohom::CohomologyEngine;
use crate::error::{Error, Result};
use crate::fusion::{opprime_fusion, CollectionKind, FusionData, OpprimeData, DEFAULT_CLOSURE_CAP};
use crate::linalg::{Echelon, Matrix, Subspace};
use crate::module::require_compatible;
use crate::perm::{Bits, Elt, Subgroup};
use serde::Serialize;
use std::collections::HashSet;

/// Which subgroups carry stability conditions.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Family {
    /// A collection closed under conjugacy and overgroups.
    Collection(CollectionKind),
    /// The `F`-conjugacy closure of the listed subgroups.
    Subgroups(Vec<usize>),
}

impl Family {
    pub fn label(&self) -> String {
        match self {
            Family::Collection(k) => serde_json::to_value(k).ok().and_then(|v| v.as_str().map(str::to_owned)).unwrap_or_default(),
            Family::Subgroups(v) => format!("subgroups{v:?}"),
        }
    }

    /// Every subgroup index in the family.
    pub fn members(&self, f: &FusionData) -> Vec<usize> {
        match self {
            Family::Collection(k) => f.collection(*k),
            Family::Subgroups(v) => {
                let mut out: Vec<usize> = v.iter().flat_map(|&i| f.classes()[f.class_of(i)].members.clone()).collect();
                out.sort_unstable();
                out.dedup();
                out
            }
        }
    }
}

/// How the `(P, g)` pairs are enumerated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairMode {
    /// Class representatives and double-coset lifts, with redundant pairs dropped.
    Reduced,
    /// Every member and every lift. Slow; kept as the oracle.
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyDescriptor {
    pub family: String,
    pub mode: PairMode,
    /// Number of `(P, g)` pairs imposed.
    pub conditions: usize,
}

/// A subspace of `H^n(S,M)` in the canonical basis of the engine.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StableSubspace {
    pub degree: usize,
    pub space: Subspace,
    pub family: FamilyDescriptor,
}

impl StableSubspace {
    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn ambient_dim(&self) -> usize {
        self.space.ambient_dim()
    }
}

fn check_engine(f: &FusionData, engine: &CohomologyEngine, n: usize) -> Result<()> {
    if engine.sylow() != f.sylow() || engine.p() != f.p() || engine.group().order() != f.group().order() {
        return Err(Error::InvalidModule("engine and fusion data disagree on G, S or p".into()));
    }
    if n > engine.max_degree() {
        return Err(Error::InvalidModule(format!("degree {n} exceeds engine degree {}", engine.max_degree())));
    }
    Ok(())
}

/// Accumulates `κ_g − Res` rows in every degree `0..=n`.
struct Conditions<'a> {
    engine: &'a CohomologyEngine,
    n: usize,
    rows: Vec<Echelon>,
    pairs: usize,
    seen: HashSet<(usize, Vec<Elt>)>,
}

impl<'a> Conditions<'a> {
    fn new(engine: &'a CohomologyEngine, n: usize) -> Conditions<'a> {
        let s = engine.sylow();
        let rows = (0..=n).map(|k| Echelon::new(engine.p(), engine.dim(s, k))).collect();
        Conditions { engine, n, rows, pairs: 0, seen: HashSet::new() }
    }

    fn is_silent(&self, p: &Subgroup) -> bool {
        (0..=self.n).all(|k| self.engine.dim(p, k) == 0)
    }

    /// Imposes `κ_g = Res_P` for `c_g : P → S`, once per `(P, key)`.
    fn impose(&mut self, pi: usize, p: &Subgroup, g: Elt, key: Vec<Elt>) {
        if !self.seen.insert((pi, key)) {
            return;
        }
        let s = self.engine.sylow();
        let kappa = self.engine.kappa_all(g, s, p, self.n);
        for (k, kk) in kappa.iter().enumerate() {
            if kk.nrows() == 0 {
                continue;
            }
            let res = self.engine.restriction(s, p, k);
            let diff = kk.sub(&res);
            for i in 0..diff.nrows() {
                self.rows[k].add_row(diff.row(i));
            }
        }
        self.pairs += 1;
    }

    fn finish(self, family: String, mode: PairMode) -> Vec<StableSubspace> {
        let pairs = self.pairs;
        self.rows
            .iter()
            .enumerate()
            .map(|(k, e)| StableSubspace {
                degree: k,
                space: Subspace::span(e.p(), e.ncols(), &e.kernel()),
                family: FamilyDescriptor { family: family.clone(), mode, conditions: pairs },
            })
            .collect()
    }
}

/// `P·(C_G(P) ∩ K)`, `K` the kernel of the action: its elements act trivially
/// on `H^*(P,M)`.
fn inert_subgroup(f: &FusionData, p: &Subgroup, kernel: &Subgroup) -> Subgroup {
    let g = &**f.group();
    let c = g.centralizer(&g.whole(), p);
    let ck = g.intersection(&c, kernel);
    g.product(p, &ck)
}

/// Representatives of `S \ T_G(P,S) / H`.
fn double_coset_reps(f: &FusionData, p: &Subgroup, h: &Subgroup) -> Vec<Elt> {
    let g = &**f.group();
    let s = f.sylow();
    let mut seen = Bits::new(g.order());
    let mut reps = Vec::new();
    let mut t = f.transporter(p, s);
    t.sort_unstable();
    for x in t {
        if seen.contains(x) {
            continue;
        }
        reps.push(x);
        for &a in s.elements() {
            let ax = g.mul(a, x);
            for &b in h.elements() {
                seen.insert(g.mul(ax, b));
            }
        }
    }
    reps
}

/// Whether `(P, g)` is implied by a condition on the strictly larger
/// subgroup `S ∩ (gh)⁻¹ S (gh)` for some `h ∈ H`.
fn implied_by_overgroup(f: &FusionData, p: &Subgroup, h: &Subgroup, x: Elt) -> bool {
    let g = &**f.group();
    let s = f.sylow();
    h.elements().iter().any(|&y| {
        let gh = g.mul(x, y);
        let back = g.conjugate(g.inv(gh), s);
        g.intersection(s, &back).order() > p.order()
    })
}

/// Stable subspaces in degrees `0..=n` for a family of subgroups.
///
/// Conditions are `κ_g(x) = Res^S_P(x)` for `g ∈ T_G(P,S)`. Collections other
/// than the full one require the compatibility criterion.
pub fn stable_subspaces(
    f: &FusionData,
    engine: &CohomologyEngine,
    n: usize,
    family: &Family,
    mode: PairMode,
) -> Result<Vec<StableSubspace>> {
    check_engine(f, engine, n)?;
    let members = family.members(f);
    let module = engine.module();
    if let Family::Collection(kind) = family {
        f.validate_collection(&members)?;
        if *kind != CollectionKind::All {
            let subs: Vec<Subgroup> = members.iter().map(|&i| f.subgroup(i).clone()).collect();
            require_compatible(module, &subs)?;
        }
    }
    let overgroup_closed = matches!(family, Family::Collection(_));
    let kernel = module.kernel();
    let mut cond = Conditions::new(engine, n);
    match mode {
        PairMode::Reduced => {
            let mut reps: Vec<usize> = members.iter().map(|&i| f.representative(i)).collect();
            reps.sort_unstable();
            reps.dedup();
            for pi in reps {
                let p = f.subgroup(pi);
                if cond.is_silent(p) {
                    continue;
                }
                let h = inert_subgroup(f, p, &kernel);
                for x in double_coset_reps(f, p, &h) {
                    if is_in_sh(f, &h, x) {
                        continue;
                    }
                    if overgroup_closed && implied_by_overgroup(f, p, &h, x) {
                        continue;
                    }
                    cond.impose(pi, p, x, vec![x]);
                }
            }
        }
        PairMode::Exhaustive => {
            for &pi in &members {
                let p = f.subgroup(pi);
                for x in f.transporter(p, f.sylow()) {
                    cond.impose(pi, p, x, vec![x]);
                }
            }
        }
    }
    Ok(cond.finish(family.label(), mode))
}

/// `c_g|_P` on generators. Under the compatibility criterion `κ_g` depends
/// only on this.
fn restriction_key(f: &FusionData, p: &Subgroup, g: Elt) -> Vec<Elt> {
    let grp = &**f.group();
    p.gens().iter().map(|&x| grp.conj(g, x)).collect()
}

fn is_in_sh(f: &FusionData, h: &Subgroup, x: Elt) -> bool {
    let g = &**f.group();
    f.sylow().elements().iter().any(|&s| h.contains(g.mul(g.inv(s), x)))
}

pub fn stable_subspace(
    f: &FusionData,
    engine: &CohomologyEngine,
    n: usize,
    family: &Family,
    mode: PairMode,
) -> Result<StableSubspace> {
    Ok(stable_subspaces(f, engine, n, family, mode)?.pop().expect("degree range is nonempty"))
}

/// One degree of [`opprime_stable_and_fixed`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpprimeFixed {
    pub degree: usize,
    /// `H^n(O^{p'}(F)^c, M)`.
    pub opprime: StableSubspace,
    /// Its fixed points under the outer lifts of `Aut_F(S)`.
    pub fixed: Subspace,
}

/// Stable elements for `O^{p'}(F)` at centric sources, and their fixed points
/// under `Aut_F(S)/Aut_{O^{p'}(F)}(S)`, in degrees `0..=n`.
///
/// `Reduced` imposes the generating conjugations `c_n|_P` for
/// `n ∈ O^{p'}(N_G(Q))` and centric `P ≤ Q`; `Exhaustive` imposes every
/// morphism of the closed subsystem.
pub fn opprime_stable_and_fixed(
    f: &FusionData,
    engine: &CohomologyEngine,
    n: usize,
    mode: PairMode,
) -> Result<Vec<OpprimeFixed>> {
    let data = opprime_fusion(f, DEFAULT_CLOSURE_CAP)?;
    opprime_stable_and_fixed_with(f, engine, n, mode, &data)
}

pub fn opprime_stable_and_fixed_with(
    f: &FusionData,
    engine: &CohomologyEngine,
    n: usize,
    mode: PairMode,
    data: &OpprimeData,
) -> Result<Vec<OpprimeFixed>> {
    check_engine(f, engine, n)?;
    let centric = f.collection(CollectionKind::Centric);
    let subs: Vec<Subgroup> = centric.iter().map(|&i| f.subgroup(i).clone()).collect();
    require_compatible(engine.module(), &subs)?;
    let mut cond = Conditions::new(engine, n);
    match mode {
        PairMode::Reduced => {
            for (qi, seeds) in data.fusion.seeds().iter().enumerate() {
                let q = f.subgroup(qi);
                for &pi in &centric {
                    let p = f.subgroup(pi);
                    if !p.is_subgroup_of(q) || cond.is_silent(p) {
                        continue;
                    }
                    for &x in seeds {
                        cond.impose(pi, p, x, restriction_key(f, p, x));
                    }
                }
            }
        }
        PairMode::Exhaustive => {
            for &pi in &centric {
                let p = f.subgroup(pi);
                for m in data.fusion.morphisms(pi) {
                    cond.impose(pi, p, m.lift, restriction_key(f, p, m.lift));
                }
            }
        }
    }
    let opprime = cond.finish("opprime-centric".into(), mode);
    let s = f.sylow();
    let outer: Vec<Vec<Matrix>> = data.outer_lifts.iter().map(|&h| engine.kappa_all(h, s, s, n)).collect();
    Ok(opprime
        .into_iter()
        .map(|st| {
            let k = st.degree;
            let fixed = fixed_points(&st.space, outer.iter().map(|v| &v[k]));
            OpprimeFixed { degree: k, opprime: st, fixed }
        })
        .collect())
}

/// `{v ∈ V : A v = v}` for every listed `A`.
pub fn fixed_points<'a>(v: &Subspace, maps: impl IntoIterator<Item = &'a Matrix>) -> Subspace {
    let p = v.p();
    let amb = v.ambient_dim();
    if v.dim() == 0 {
        return v.clone();
    }
    let b = v.as_columns();
    let id = Matrix::identity(p, amb);
    let mut stacked = Matrix::zeros(p, 0, v.dim());
    for a in maps {
        stacked = stacked.vstack(&a.sub(&id).mul(&b));
    }
    let coords = stacked.kernel();
    let vecs: Vec<Vec<u32>> = coords.iter().map(|c| b.mul_vec(c)).collect();
    Subspace::span(p, amb, &vecs)
}

/// Dimensions and mutual containment of two stable subspaces.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FamilyComparison {
    pub n: usize,
    pub dim_a: usize,
    pub dim_b: usize,
    pub a_in_b: bool,
    pub b_in_a: bool,
    pub equal: bool,
}

pub fn compare(a: &StableSubspace, b: &StableSubspace) -> FamilyComparison {
    let a_in_b = a.space.is_subspace_of(&b.space);
    let b_in_a = b.space.is_subspace_of(&a.space);
    FamilyComparison { n: a.degree, dim_a: a.dim(), dim_b: b.dim(), a_in_b, b_in_a, equal: a_in_b && b_in_a }
}

/// Compares the stable subspaces of two families in degrees `0..=n`.
pub fn family_equality(
    f: &FusionData,
    engine: &CohomologyEngine,
    n: usize,
    a: &Family,
    b: &Family,
) -> Result<Vec<FamilyComparison>> {
    let sa = stable_subspaces(f, engine, n, a, PairMode::Reduced)?;
    let sb = stable_subspaces(f, engine, n, b, PairMode::Reduced)?;
    Ok(sa.iter().zip(&sb).map(|(x, y)| compare(x, y)).collect())
}
