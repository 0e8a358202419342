//! Theorem checks, their JSON reports and manifests of checks.

pub mod corpus;
pub mod io;

use crate::cohom::{CohomologyEngine, GroupCohomology};
use crate::error::{Error, Result};
use crate::fusion::{model_of, CollectionKind, FusionData};
use crate::linalg::Subspace;
use crate::module::{require_compatible, GModule};
use crate::nerve::{delta_s_comparison, homofunctor_map, FiniteCategory, NerveComplex};
use crate::perm::{is_p_solvable, o_p, o_upper_p, p_part, sylow_subgroup, Elt, Perm, PermGroup, Quotient, Subgroup};
use crate::stable::{family_equality, opprime_stable_and_fixed, stable_subspaces, wreath_split_check, Family, PairMode};
use corpus::ModuleChoice;
use io::{GroupDoc, ModuleDoc};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};
use std::sync::Arc;

/// Largest cohomological degree a check accepts.
pub const MAX_DEGREE: usize = 6;
pub const DEFAULT_DEGREE: usize = 3;

pub const CHECK_NAMES: [&str; 14] = [
    "cartan-eilenberg",
    "theorem-a",
    "constrained",
    "coprime",
    "pnilpotent",
    "psolvable",
    "grodal",
    "fixed-point-lemma",
    "wreath",
    "shapiro",
    "homofunctor",
    "collection-independence",
    "subpessential",
    "product-essentials",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Violated,
    HypothesisFailed,
    Budget,
}

impl Verdict {
    pub fn exit_code(self) -> i32 {
        match self {
            Verdict::Pass => 0,
            Verdict::Violated => 1,
            Verdict::HypothesisFailed => 2,
            Verdict::Budget => 3,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Violated => "violated",
            Verdict::HypothesisFailed => "hypothesis-failed",
            Verdict::Budget => "skipped (budget)",
        }
    }
}

/// A module given by corpus choice, inline document or file path.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ModuleSpec {
    Choice(ModuleChoice),
    Doc(ModuleDoc),
    Path(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Doc(GroupDoc),
    Path(PathBuf),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckSpec {
    pub check: String,
    /// A corpus instance such as `"S4@2"`; overrides `group` and `prime`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub instance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group: Option<GroupSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prime: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default = "default_degree")]
    pub max_degree: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collection: Option<CollectionKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Verdict>,
}

fn default_degree() -> usize {
    DEFAULT_DEGREE
}

impl CheckSpec {
    pub fn corpus(check: &str, instance: &str, module: ModuleChoice, max_degree: usize) -> CheckSpec {
        CheckSpec {
            check: check.into(),
            instance: Some(instance.into()),
            group: None,
            prime: None,
            module: Some(ModuleSpec::Choice(module)),
            max_degree,
            collection: None,
            expect: None,
        }
    }

    pub fn from_group(check: &str, group: GroupDoc, prime: u32, module: Option<ModuleSpec>, max_degree: usize) -> CheckSpec {
        CheckSpec {
            check: check.into(),
            instance: None,
            group: Some(GroupSpec::Doc(group)),
            prime: Some(prime),
            module,
            max_degree,
            collection: None,
            expect: None,
        }
    }

    /// Loads referenced files, relative to `base`.
    pub fn load_files(&mut self, base: &Path) -> Result<()> {
        if let Some(GroupSpec::Path(p)) = &self.group {
            self.group = Some(GroupSpec::Doc(io::read_json(&base.join(p))?));
        }
        if let Some(ModuleSpec::Path(p)) = &self.module {
            self.module = Some(ModuleSpec::Doc(io::read_json(&base.join(p))?));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if !self.check.is_empty() && !CHECK_NAMES.contains(&self.check.as_str()) {
            return Err(Error::Parse(format!("unknown check {:?}", self.check)));
        }
        if self.max_degree > MAX_DEGREE {
            return Err(Error::Parse(format!("degree bound {} exceeds {MAX_DEGREE}", self.max_degree)));
        }
        if self.instance.is_none() && (self.group.is_none() || self.prime.is_none()) {
            return Err(Error::Parse("a check needs an instance or a group and a prime".into()));
        }
        for path in [
            match &self.group {
                Some(GroupSpec::Path(p)) => Some(p),
                _ => None,
            },
            match &self.module {
                Some(ModuleSpec::Path(p)) => Some(p),
                _ => None,
            },
        ]
        .into_iter()
        .flatten()
        {
            if !path.exists() {
                return Err(Error::Parse(format!("{} does not exist", path.display())));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InstanceInfo {
    pub name: String,
    pub group_order: usize,
    pub prime: u32,
    pub module: String,
    pub module_dim: usize,
    pub max_degree: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub collection: Option<CollectionKind>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeRow {
    pub n: usize,
    pub comparison: String,
    pub lhs_dim: usize,
    pub rhs_dim: usize,
    pub equal: bool,
    /// Basis-level comparison when the two sides live in a common space.
    pub contained: Option<bool>,
}

impl DegreeRow {
    fn new(n: usize, comparison: &str, lhs: usize, rhs: usize, contained: Option<bool>) -> DegreeRow {
        DegreeRow { n, comparison: comparison.into(), lhs_dim: lhs, rhs_dim: rhs, equal: lhs == rhs, contained }
    }

    pub fn holds(&self) -> bool {
        self.equal && self.contained != Some(false)
    }
}

/// Cell counts only: reports carry no timing so that they are reproducible.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Telemetry {
    pub subgroups: usize,
    pub classes: usize,
    /// Stable-element conditions imposed, per family.
    pub conditions: BTreeMap<String, usize>,
    /// Nondegenerate chains per degree, per nerve.
    pub census: BTreeMap<String, Vec<u64>>,
    pub cells: u64,
    pub notes: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CheckReport {
    pub check: String,
    pub instance: InstanceInfo,
    pub degrees: Vec<DegreeRow>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expect: Option<Verdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub details: Option<serde_json::Value>,
    pub telemetry: Telemetry,
}

impl CheckReport {
    /// Exit code. With a stated expectation, a match is success and a
    /// mismatch counts as a violation.
    pub fn exit_code(&self) -> i32 {
        match self.expect {
            Some(e) if e == self.verdict => 0,
            Some(_) => 1,
            None => self.verdict.exit_code(),
        }
    }

    pub fn summary_line(&self) -> String {
        let mut s = format!(
            "{:<18} {:<24} {:<10} p={} module={} n<={}",
            self.verdict.label(),
            self.check,
            self.instance.name,
            self.instance.prime,
            self.instance.module,
            self.instance.max_degree
        );
        if let Some(e) = self.expect {
            s.push_str(&format!(" (expected {})", e.label()));
        }
        if let Some(w) = &self.witness {
            s.push_str(&format!(": {w}"));
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// A spec with its group and module built.
pub struct Resolved {
    pub group_doc: GroupDoc,
    pub group: Arc<PermGroup>,
    pub p: u32,
    pub module: GModule,
    pub n: usize,
    pub collection: Option<CollectionKind>,
    pub info: InstanceInfo,
}

pub fn resolve(spec: &CheckSpec) -> Result<Resolved> {
    spec.validate()?;
    let choice_label;
    let (group_doc, group, p, name, module) = if let Some(name) = &spec.instance {
        let inst = corpus::instance(name)?;
        let module = match &spec.module {
            None => {
                choice_label = "trivial".to_string();
                inst.module(ModuleChoice::Trivial)
            }
            Some(ModuleSpec::Choice(c)) => {
                choice_label = inst.label(*c).to_string();
                inst.module(*c)
            }
            Some(ModuleSpec::Doc(d)) => {
                choice_label = "custom".to_string();
                d.build(inst.group.clone(), inst.p)?
            }
            Some(ModuleSpec::Path(p)) => {
                choice_label = p.display().to_string();
                io::read_json::<ModuleDoc>(p)?.build(inst.group.clone(), inst.p)?
            }
        };
        (inst.group_doc.clone(), inst.group.clone(), inst.p, inst.name.to_string(), module)
    } else {
        let doc = match spec.group.as_ref().expect("validated") {
            GroupSpec::Doc(d) => d.clone(),
            GroupSpec::Path(p) => io::read_json(p)?,
        };
        let p = spec.prime.expect("validated");
        let group = Arc::new(doc.build()?);
        let module = match &spec.module {
            None | Some(ModuleSpec::Choice(ModuleChoice::Trivial)) => {
                choice_label = "trivial".to_string();
                GModule::trivial(group.clone(), p, 1)
            }
            Some(ModuleSpec::Choice(ModuleChoice::Twisted)) => {
                return Err(Error::Parse("\"twisted\" names a module only for corpus instances".into()))
            }
            Some(ModuleSpec::Doc(d)) => {
                choice_label = "custom".to_string();
                d.build(group.clone(), p)?
            }
            Some(ModuleSpec::Path(path)) => {
                choice_label = path.display().to_string();
                io::read_json::<ModuleDoc>(path)?.build(group.clone(), p)?
            }
        };
        let name = format!("{}@{p}", doc.label());
        (doc, group, p, name, module)
    };
    let info = InstanceInfo {
        name,
        group_order: group.order(),
        prime: p,
        module: choice_label,
        module_dim: module.dim(),
        max_degree: spec.max_degree,
        collection: spec.collection,
    };
    Ok(Resolved { group_doc, group, p, module, n: spec.max_degree, collection: spec.collection, info })
}

#[derive(Default)]
struct Outcome {
    rows: Vec<DegreeRow>,
    hypothesis: Option<String>,
    details: Option<serde_json::Value>,
    telemetry: Telemetry,
}

impl Outcome {
    fn hypothesis_failed(msg: impl Into<String>, telemetry: Telemetry) -> Outcome {
        Outcome { hypothesis: Some(msg.into()), telemetry, ..Default::default() }
    }
}

/// Runs one named check. Cell-budget overruns and failed hypotheses become
/// verdicts; other errors are returned.
pub fn run_check(name: &str, spec: &CheckSpec) -> Result<CheckReport> {
    let mut spec = spec.clone();
    spec.check = name.to_string();
    let ctx = resolve(&spec)?;
    let result = match name {
        "cartan-eilenberg" => cartan_eilenberg(&ctx),
        "theorem-a" => theorem_a(&ctx),
        "constrained" => constrained(&ctx),
        "coprime" => coprime(&ctx),
        "pnilpotent" => pnilpotent(&ctx),
        "psolvable" => psolvable(&ctx),
        "grodal" => grodal(&ctx),
        "fixed-point-lemma" => fixed_point_lemma(&ctx),
        "wreath" => wreath(&ctx, true),
        "shapiro" => wreath(&ctx, false),
        "homofunctor" => homofunctor(&ctx),
        "collection-independence" => collection_independence(&ctx),
        "subpessential" => subpessential(&ctx),
        "product-essentials" => product_essentials(&ctx),
        _ => unreachable!("validated"),
    };
    let (outcome, budget) = match result {
        Ok(o) => (o, None),
        Err(Error::CellCapExceeded { needed, cap, census }) => {
            let mut t = Telemetry::default();
            t.census.insert("over-budget".into(), census);
            t.cells = needed;
            (Outcome { telemetry: t, ..Default::default() }, Some(format!("needs {needed} cells, cap {cap}")))
        }
        Err(e @ (Error::IncompatibleAction { .. } | Error::NotConstrained)) => {
            (Outcome::hypothesis_failed(e.to_string(), Telemetry::default()), None)
        }
        Err(e) => return Err(e),
    };
    let (verdict, witness) = if let Some(b) = budget {
        (Verdict::Budget, Some(b))
    } else if let Some(h) = outcome.hypothesis {
        (Verdict::HypothesisFailed, Some(h))
    } else if let Some(r) = outcome.rows.iter().find(|r| !r.holds()) {
        let w = format!(
            "degree {}: {} has {} vs {}{}",
            r.n,
            r.comparison,
            r.lhs_dim,
            r.rhs_dim,
            if r.contained == Some(false) { ", bases differ" } else { "" }
        );
        (Verdict::Violated, Some(w))
    } else if outcome.rows.is_empty() {
        (Verdict::Violated, Some("no comparisons were made".into()))
    } else {
        (Verdict::Pass, None)
    };
    let witness = match (spec.expect, witness) {
        (Some(e), None) if e != verdict => Some(format!("expected {}, got {}", e.label(), verdict.label())),
        (_, w) => w,
    };
    Ok(CheckReport {
        check: name.to_string(),
        instance: ctx.info,
        degrees: outcome.rows,
        verdict,
        expect: spec.expect,
        witness,
        details: outcome.details,
        telemetry: outcome.telemetry,
    })
}

fn fusion(ctx: &Resolved, t: &mut Telemetry) -> Result<FusionData> {
    let f = FusionData::build(ctx.group.clone(), ctx.p)?;
    t.subgroups = f.subgroups().len();
    t.classes = f.classes().len();
    Ok(f)
}

fn engine(ctx: &Resolved, f: &FusionData) -> CohomologyEngine {
    CohomologyEngine::with_sylow(&ctx.module, f.sylow(), ctx.n)
}

fn members(f: &FusionData, idx: &[usize]) -> Vec<Subgroup> {
    idx.iter().map(|&i| f.subgroup(i).clone()).collect()
}

fn stable(
    f: &FusionData,
    e: &CohomologyEngine,
    n: usize,
    family: &Family,
    t: &mut Telemetry,
) -> Result<Vec<crate::stable::StableSubspace>> {
    let st = stable_subspaces(f, e, n, family, PairMode::Reduced)?;
    if let Some(s) = st.first() {
        t.conditions.insert(s.family.family.clone(), s.family.conditions);
    }
    Ok(st)
}

fn kind_label(kind: CollectionKind) -> &'static str {
    match kind {
        CollectionKind::All => "all",
        CollectionKind::Centric => "centric",
        CollectionKind::Cr => "cr",
        CollectionKind::Quasicentric => "quasicentric",
        CollectionKind::Constrained => "constrained",
    }
}

/// The nerve of a transporter or linking category, with its census logged.
fn nerve(
    f: &FusionData,
    m: &GModule,
    n: usize,
    kind: CollectionKind,
    linking: bool,
    t: &mut Telemetry,
) -> Result<(FiniteCategory, NerveComplex)> {
    let coll = f.collection(kind);
    let cat = if linking { FiniteCategory::linking(f, &coll)? } else { FiniteCategory::transporter(f, &coll)? };
    let label = format!("{}({})", if linking { "L" } else { "T" }, kind_label(kind));
    let nc = match NerveComplex::new(&cat, m, n) {
        Ok(nc) => nc,
        Err(Error::CellCapExceeded { needed, cap, census }) => {
            t.census.insert(label, census.clone());
            return Err(Error::CellCapExceeded { needed, cap, census });
        }
        Err(e) => return Err(e),
    };
    t.cells += nc.census().iter().sum::<u64>();
    t.census.insert(label, nc.census().to_vec());
    Ok((cat, nc))
}

/// Images of `δ_S^*` in `H^k(S,M)` and whether `δ_S^*` is injective.
fn delta_images(cat: &FiniteCategory, nc: &NerveComplex, e: &CohomologyEngine, n: usize) -> Result<Vec<(Subspace, bool)>> {
    (0..=n)
        .map(|k| {
            let d = delta_s_comparison(cat, nc, e, k)?;
            let injective = d.rank() == d.ncols();
            Ok((Subspace::image_of(&d), injective))
        })
        .collect()
}

/// `Γ`, the image of the action map `G → GL(M)`.
fn action_image(m: &GModule) -> Result<PermGroup> {
    let g = m.group();
    Ok(Quotient::new(g, &g.whole(), &m.kernel())?.group)
}

fn cartan_eilenberg(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let f = fusion(ctx, &mut t)?;
    let gc = GroupCohomology::from_engine(engine(ctx, &f));
    let st = stable(&f, gc.engine(), ctx.n, &Family::Collection(CollectionKind::All), &mut t)?;
    let rows = st
        .iter()
        .map(|s| {
            let k = s.degree;
            DegreeRow::new(k, "stable(all) vs H(G)", s.dim(), gc.dim(k), Some(s.space == *gc.restriction_image(k)))
        })
        .collect();
    Ok(Outcome { rows, telemetry: t, ..Default::default() })
}

/// `H^n(|T_kind|, M)` against stable elements for the same collection, with
/// `δ_S^*` required to be injective onto the stable subspace.
fn nerve_vs_stable(ctx: &Resolved, kind: CollectionKind, t: &mut Telemetry) -> Result<Vec<DegreeRow>> {
    let f = fusion(ctx, t)?;
    let e = engine(ctx, &f);
    let st = stable(&f, &e, ctx.n, &Family::Collection(kind), t)?;
    let (cat, nc) = nerve(&f, &ctx.module, ctx.n, kind, false, t)?;
    let images = delta_images(&cat, &nc, &e, ctx.n)?;
    let dims = nc.dims();
    let label = format!("nerve(T {}) vs stable({})", kind_label(kind), kind_label(kind));
    Ok(st
        .iter()
        .zip(images)
        .map(|(s, (img, inj))| DegreeRow::new(s.degree, &label, dims[s.degree], s.dim(), Some(inj && img == s.space)))
        .collect())
}

fn theorem_a(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    if !ctx.module.is_trivial() {
        return Ok(Outcome::hypothesis_failed("coefficients are not trivial", t));
    }
    let rows = nerve_vs_stable(ctx, ctx.collection.unwrap_or(CollectionKind::Centric), &mut t)?;
    Ok(Outcome { rows, telemetry: t, ..Default::default() })
}

fn coprime(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let gamma = action_image(&ctx.module)?;
    if gamma.order() % ctx.p as usize == 0 {
        return Ok(Outcome::hypothesis_failed(format!("the action factors through a group of order {}", gamma.order()), t));
    }
    t.notes.push(format!("action image of order {}", gamma.order()));
    let rows = nerve_vs_stable(ctx, CollectionKind::Centric, &mut t)?;
    Ok(Outcome { rows, telemetry: t, ..Default::default() })
}

fn pnilpotent(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let gamma = action_image(&ctx.module)?;
    let op = o_p(&gamma, &gamma.whole(), ctx.p);
    if op.order() != p_part(gamma.order(), ctx.p) {
        return Ok(Outcome::hypothesis_failed(
            format!("the action image of order {} has no normal Sylow {}-subgroup", gamma.order(), ctx.p),
            t,
        ));
    }
    t.notes.push(format!("action image of order {} with O_p of order {}", gamma.order(), op.order()));
    let rows = nerve_vs_stable(ctx, CollectionKind::Centric, &mut t)?;
    Ok(Outcome { rows, telemetry: t, ..Default::default() })
}

fn constrained(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let f = fusion(ctx, &mut t)?;
    if !f.is_constrained() {
        return Ok(Outcome::hypothesis_failed("the fusion system is not constrained", t));
    }
    let model = model_of(&f)?;
    let details = serde_json::json!({
        "model_order": model.group.order(),
        "op_order": model.op_order,
        "sylow_order_matches": model.sylow_order_matches,
        "self_centralizing": model.self_centralizing,
        "class_counts_match": model.class_counts_match,
        "class_counts": [model.class_counts.0, model.class_counts.1],
    });
    if !model.passes() {
        return Ok(Outcome { details: Some(details), ..Outcome::hypothesis_failed("model_of fails", t) });
    }
    let gc = GroupCohomology::from_engine(engine(ctx, &f));
    let e = gc.engine();
    let st = stable(&f, e, ctx.n, &Family::Collection(CollectionKind::Centric), &mut t)?;
    let (cat, nc) = nerve(&f, &ctx.module, ctx.n, CollectionKind::Constrained, false, &mut t)?;
    let images = delta_images(&cat, &nc, e, ctx.n)?;
    let dims = nc.dims();
    let mut rows = Vec::new();
    for (s, (img, inj)) in st.iter().zip(images) {
        let k = s.degree;
        let res = gc.restriction_image(k);
        rows.push(DegreeRow::new(k, "H(G) vs stable(centric)", gc.dim(k), s.dim(), Some(*res == s.space)));
        rows.push(DegreeRow::new(k, "nerve(T constrained) vs H(G)", dims[k], gc.dim(k), Some(inj && img == *res)));
    }
    Ok(Outcome { rows, details: Some(details), telemetry: t, ..Default::default() })
}

fn psolvable(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let gamma = action_image(&ctx.module)?;
    if !is_p_solvable(&gamma, &gamma.whole(), ctx.p) {
        return Ok(Outcome::hypothesis_failed(format!("the action image of order {} is not p-solvable", gamma.order()), t));
    }
    t.notes.push(format!("action image of order {} is p-solvable", gamma.order()));
    let f = fusion(ctx, &mut t)?;
    let image = transporter_image(&f, CollectionKind::Centric);
    if image.order() != ctx.group.order() {
        return Ok(Outcome::hypothesis_failed(
            format!("centric transporters generate a subgroup of order {} < |G|", image.order()),
            t,
        ));
    }
    // the action on L^c is defined through G only under compatibility
    require_compatible(&ctx.module, &members(&f, &f.collection(CollectionKind::Centric)))?;
    let gc = GroupCohomology::from_engine(engine(ctx, &f));
    let e = gc.engine();
    let (tc, tn) = nerve(&f, &ctx.module, ctx.n, CollectionKind::Centric, false, &mut t)?;
    let (lc, ln) = nerve(&f, &ctx.module, ctx.n, CollectionKind::Centric, true, &mut t)?;
    let images = delta_images(&tc, &tn, e, ctx.n)?;
    let (td, ld) = (tn.dims(), ln.dims());
    let mut rows = Vec::new();
    for (k, (img, inj)) in images.into_iter().enumerate() {
        let res = gc.restriction_image(k);
        rows.push(DegreeRow::new(k, "nerve(T centric) vs H(G)", td[k], gc.dim(k), Some(inj && img == *res)));
        let h = homofunctor_map(&tc, &tn, &lc, &ln, k)?;
        let iso = h.rank() == ld[k] && h.rank() == td[k];
        rows.push(DegreeRow::new(k, "nerve(L centric) vs nerve(T centric)", ld[k], td[k], Some(iso)));
    }
    Ok(Outcome { rows, telemetry: t, ..Default::default() })
}

/// The image of `π_1(|T|) → G`: the subgroup generated by all transporter
/// elements between members of the collection.
pub fn transporter_image(f: &FusionData, kind: CollectionKind) -> Subgroup {
    let g = f.group();
    let s = f.sylow();
    let mut gens: Vec<Elt> = Vec::new();
    let mut cur = g.closure(&[]);
    for i in f.collection(kind) {
        for x in f.transporter(f.subgroup(i), s) {
            if !cur.contains(x) {
                gens.push(x);
                cur = g.closure(&gens);
            }
        }
    }
    cur
}

fn grodal(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let f = fusion(ctx, &mut t)?;
    let e = engine(ctx, &f);
    let fam = f.grodal_family(&ctx.module);
    let orders: Vec<usize> = fam.iter().map(|&i| f.subgroup(i).order()).collect();
    let cmp = family_equality(&f, &e, ctx.n, &Family::Collection(CollectionKind::All), &Family::Subgroups(fam))?;
    let rows = cmp
        .iter()
        .map(|c| DegreeRow::new(c.n, "stable(all) vs stable(S + radical M-essential)", c.dim_a, c.dim_b, Some(c.equal)))
        .collect();
    Ok(Outcome { rows, details: Some(serde_json::json!({ "family_orders": orders })), telemetry: t, ..Default::default() })
}

fn fixed_point_lemma(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let f = fusion(ctx, &mut t)?;
    let e = engine(ctx, &f);
    let st = stable(&f, &e, ctx.n, &Family::Collection(CollectionKind::Centric), &mut t)?;
    let op = opprime_stable_and_fixed(&f, &e, ctx.n, PairMode::Reduced)?;
    if let Some(o) = op.first() {
        t.conditions.insert(o.opprime.family.family.clone(), o.opprime.family.conditions);
    }
    let opprime_dims: Vec<usize> = op.iter().map(|o| o.opprime.dim()).collect();
    let rows = st
        .iter()
        .zip(&op)
        .map(|(s, o)| DegreeRow::new(s.degree, "stable(centric) vs fixed points", s.dim(), o.fixed.dim(), Some(s.space == o.fixed)))
        .collect();
    Ok(Outcome {
        rows,
        details: Some(serde_json::json!({ "opprime_dims": opprime_dims })),
        telemetry: t,
        ..Default::default()
    })
}

fn wreath(ctx: &Resolved, essentials: bool) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let r = wreath_split_check(&ctx.module, ctx.n)?;
    let mut rows = Vec::new();
    if essentials {
        let ok = r.essentials.iter().filter(|e| e.matches).count();
        rows.push(DegreeRow::new(0, "essential classes matching the classification", ok, r.essentials.len(), Some(r.essentials_match)));
    }
    rows.push(DegreeRow::new(0, "dim coInd vs index * dim M0", r.coind_dim.0, r.coind_dim.1, None));
    let mut push = |label: &str, v: &[crate::stable::DimRow]| {
        rows.extend(v.iter().map(|d| DegreeRow::new(d.n, label, d.lhs, d.rhs, None)));
    };
    push("H(G, coInd M0) vs H(G0, M0)", &r.shapiro_group);
    push("H(S, coInd M0) vs H(S0, M0)", &r.shapiro_sylow);
    push("H(G0^p, Ind M) vs index * H(G0^p, M)", &r.topowr);
    push("H(S0^p, Ind M) vs index * H(S0^p, M)", &r.topowr_sylow);
    if essentials {
        match &r.stable_vs_nerve {
            Some(v) => push("stable(centric) vs nerve(T centric)", v),
            None => t.notes.push("nerve of T centric skipped over the cell budget".into()),
        }
    }
    Ok(Outcome {
        rows,
        details: Some(serde_json::to_value(&r).expect("report serializes")),
        telemetry: t,
        ..Default::default()
    })
}

fn homofunctor(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let f = fusion(ctx, &mut t)?;
    let kind = ctx.collection.unwrap_or(CollectionKind::Centric);
    require_compatible(&ctx.module, &members(&f, &f.collection(kind)))?;
    let (tc, tn) = nerve(&f, &ctx.module, ctx.n, kind, false, &mut t)?;
    let (lc, ln) = nerve(&f, &ctx.module, ctx.n, kind, true, &mut t)?;
    let (td, ld) = (tn.dims(), ln.dims());
    let label = format!("nerve(L {k}) vs nerve(T {k})", k = kind_label(kind));
    let rows = (0..=ctx.n)
        .map(|k| {
            let h = homofunctor_map(&tc, &tn, &lc, &ln, k)?;
            Ok(DegreeRow::new(k, &label, ld[k], td[k], Some(h.rank() == ld[k] && h.rank() == td[k])))
        })
        .collect::<Result<_>>()?;
    Ok(Outcome { rows, telemetry: t, ..Default::default() })
}

fn collection_independence(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let f = fusion(ctx, &mut t)?;
    let e = engine(ctx, &f);
    let mut kinds = vec![CollectionKind::Centric, CollectionKind::Cr];
    let op = o_p(&ctx.group, &ctx.group.whole(), ctx.p);
    if f.index_of(&op).is_some_and(|i| f.flags(i).centric) {
        kinds.push(CollectionKind::Constrained);
    } else {
        t.notes.push("O_p(G) is not centric: constrained collection skipped".into());
    }
    let mut sides = Vec::new();
    for &kind in &kinds {
        let (cat, nc) = nerve(&f, &ctx.module, ctx.n, kind, false, &mut t)?;
        sides.push((nc.dims(), delta_images(&cat, &nc, &e, ctx.n)?));
    }
    let mut rows = Vec::new();
    for (j, &kind) in kinds.iter().enumerate().skip(1) {
        let label = format!("nerve(T centric) vs nerve(T {})", kind_label(kind));
        for k in 0..=ctx.n {
            let (a, b) = (&sides[0], &sides[j]);
            let same = a.1[k].1 && b.1[k].1 && a.1[k].0 == b.1[k].0;
            rows.push(DegreeRow::new(k, &label, a.0[k], b.0[k], Some(same)));
        }
    }
    Ok(Outcome { rows, telemetry: t, ..Default::default() })
}

fn standalone(g: &PermGroup, h: &Subgroup) -> Result<Arc<PermGroup>> {
    let gens: Vec<Perm> = h.gens().iter().map(|&x| g.perm(x).clone()).collect();
    Ok(Arc::new(PermGroup::new(g.degree(), gens)?))
}

/// A subgroup of `g` as a subgroup of `h`, both acting on the same points.
fn transfer(g: &PermGroup, h: &PermGroup, p: &Subgroup) -> Result<Subgroup> {
    let gens: Vec<Elt> =
        p.gens().iter().map(|&x| h.index_of(g.perm(x)).ok_or(Error::NotASubgroup)).collect::<Result<_>>()?;
    Ok(h.closure(&gens))
}

/// Normal subgroups of index `p` containing `O^p(G)`.
fn index_p_normals(g: &PermGroup, p: u32) -> Result<Vec<Subgroup>> {
    let whole = g.whole();
    let top = o_upper_p(g, &whole, p);
    let q = Quotient::new(g, &whole, &top)?;
    let qg = &q.group;
    let pp = p as usize;
    let mut out = Vec::new();
    for k in crate::perm::all_subgroups(qg, &qg.whole(), p, crate::perm::DEFAULT_SUBGROUP_CAP)? {
        if k.order() * pp != qg.order() {
            continue;
        }
        let elems: Vec<Elt> = whole.elements().iter().copied().filter(|&x| k.contains(q.map(&whole, x))).collect();
        out.push(g.subgroup_from_elements(elems));
    }
    Ok(out)
}

fn subpessential(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let g = &ctx.group;
    let f = fusion(ctx, &mut t)?;
    let normals = index_p_normals(g, ctx.p)?;
    if normals.is_empty() {
        return Ok(Outcome::hypothesis_failed("no normal subgroup of index p", t));
    }
    let s = f.sylow();
    let ess: Vec<usize> = (0..f.subgroups().len()).filter(|&i| f.flags(i).essential).collect();
    let mut rows = Vec::new();
    let mut found = Vec::new();
    for (j, h) in normals.iter().enumerate() {
        let hg = standalone(g, h)?;
        let sh = g.intersection(s, h);
        let f1 = FusionData::with_sylow(hg.clone(), ctx.p, transfer(g, &hg, &sh)?)?;
        let below: Vec<&Subgroup> =
            ess.iter().map(|&i| f.subgroup(i)).filter(|q| q.is_subgroup_of(&sh) && q.order() < sh.order()).collect();
        let mut ok = 0;
        for q in &below {
            let q1 = transfer(g, &hg, q)?;
            let i1 = f1.index_of(&q1).ok_or(Error::NotASubgroup)?;
            if f1.flags(i1).essential {
                ok += 1;
            }
        }
        found.push(serde_json::json!({ "h_order": h.order(), "essential_below": below.len(), "f1_essential": ok }));
        rows.push(DegreeRow::new(j, "F-essentials below S∩H vs those F1-essential", below.len(), ok, None));
    }
    Ok(Outcome {
        rows,
        details: Some(serde_json::json!({ "normal_subgroups": found, "essential_subgroups": ess.len() })),
        telemetry: t,
        ..Default::default()
    })
}

fn shift(x: &Perm, offset: usize, degree: usize) -> Result<Perm> {
    let d = x.degree();
    Perm::from_images((0..degree).map(|i| if i >= offset && i < offset + d { offset + x.apply(i - offset) } else { i }).collect())
}

fn product_essentials(ctx: &Resolved) -> Result<Outcome> {
    let mut t = Telemetry::default();
    let factors = match &ctx.group_doc {
        GroupDoc::Product { factors, .. } if factors.len() == 2 => factors,
        _ => return Ok(Outcome::hypothesis_failed("the group is not given as a product of two factors", t)),
    };
    let g = &ctx.group;
    let p = ctx.p;
    let degree = g.degree();
    let gs: Vec<Arc<PermGroup>> = factors.iter().map(|d| d.build().map(Arc::new)).collect::<Result<_>>()?;
    let offsets = [0, gs[0].degree()];
    let embed = |i: usize, sub: &Subgroup| -> Result<Vec<Elt>> {
        sub.gens()
            .iter()
            .map(|&x| g.index_of(&shift(gs[i].perm(x), offsets[i], degree)?).ok_or(Error::NotASubgroup))
            .collect()
    };
    let sylows: Vec<Subgroup> = gs.iter().map(|h| sylow_subgroup(h, &h.whole(), p)).collect();
    let mut s_gens = embed(0, &sylows[0])?;
    s_gens.extend(embed(1, &sylows[1])?);
    let f = FusionData::with_sylow(g.clone(), p, g.closure(&s_gens))?;
    t.subgroups = f.subgroups().len();
    t.classes = f.classes().len();
    let found: BTreeSet<usize> = f.essential_subgroups().into_iter().map(|i| f.class_of(i)).collect();
    let mut predicted = BTreeSet::new();
    for i in 0..2 {
        let fi = FusionData::with_sylow(gs[i].clone(), p, sylows[i].clone())?;
        let other = embed(1 - i, &sylows[1 - i])?;
        for q in fi.essential_subgroups() {
            let mut gens = embed(i, fi.subgroup(q))?;
            gens.extend(&other);
            let sub = g.closure(&gens);
            predicted.insert(f.class_of(f.index_of(&sub).ok_or(Error::NotASubgroup)?));
        }
    }
    let of_form = found.intersection(&predicted).count();
    let rows = vec![DegreeRow::new(0, "F-essential classes vs those of the form Q1xS2 or S1xQ2", found.len(), of_form, None)];
    let details = serde_json::json!({ "essential_classes": found.len(), "predicted_classes": predicted.len() });
    Ok(Outcome { rows, details: Some(details), telemetry: t, ..Default::default() })
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Manifest {
    #[serde(default)]
    pub name: Option<String>,
    pub checks: Vec<CheckSpec>,
}

impl Manifest {
    /// Reads a manifest, resolving file references against its directory.
    pub fn load(path: &Path) -> Result<Manifest> {
        let mut m: Manifest = io::read_json(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        for c in &mut m.checks {
            c.load_files(base)?;
        }
        if m.name.is_none() {
            m.name = Some(path.display().to_string());
        }
        Ok(m)
    }

    pub fn builtin(name: &str) -> Option<Manifest> {
        (name == "acceptance").then(acceptance_manifest)
    }
}

/// Every acceptance criterion as a list of checks.
pub fn acceptance_manifest() -> Manifest {
    use ModuleChoice::{Trivial, Twisted};
    let mut checks = Vec::new();
    for inst in corpus::INSTANCE_NAMES {
        for m in [Trivial, Twisted] {
            checks.push(CheckSpec::corpus("cartan-eilenberg", inst, m, 3));
        }
    }
    for inst in ["S3@3", "S4@2", "A4@2"] {
        checks.push(CheckSpec::corpus("theorem-a", inst, Trivial, 2));
    }
    for inst in ["S4@2", "S3@3"] {
        checks.push(CheckSpec::corpus("constrained", inst, Twisted, 2));
    }
    checks.push(CheckSpec::corpus("coprime", "S3@3", Twisted, 3));
    for inst in corpus::INSTANCE_NAMES {
        checks.push(CheckSpec::corpus("fixed-point-lemma", inst, Twisted, 3));
    }
    checks.push(CheckSpec::corpus("psolvable", "S4@2", Twisted, 2));
    for (inst, m) in [("S3@3", Twisted), ("S4@2", Trivial), ("S4@2", Twisted)] {
        checks.push(CheckSpec::corpus("grodal", inst, m, 3));
    }
    checks.push(CheckSpec::from_group("wreath", GroupDoc::named("S3"), 3, None, 2));
    Manifest { name: Some("acceptance".into()), checks }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteSummary {
    pub total: usize,
    pub pass: usize,
    pub violated: usize,
    pub hypothesis_failed: usize,
    pub budget: usize,
    /// Reports whose verdict differs from a stated expectation.
    pub unexpected: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SuiteReport {
    pub manifest: String,
    pub reports: Vec<CheckReport>,
    pub summary: SuiteSummary,
    pub exit_code: i32,
}

impl SuiteReport {
    pub fn summary_lines(&self) -> Vec<String> {
        let mut v: Vec<String> = self.reports.iter().map(CheckReport::summary_line).collect();
        let s = &self.summary;
        v.push(format!(
            "{} checks: {} pass, {} violated, {} hypothesis-failed, {} budget",
            s.total, s.pass, s.violated, s.hypothesis_failed, s.budget
        ));
        v
    }
}

/// Aggregate exit code: a violation dominates, then a failed hypothesis,
/// then a budget skip.
pub fn aggregate_exit(codes: impl IntoIterator<Item = i32>) -> i32 {
    let codes: BTreeSet<i32> = codes.into_iter().collect();
    [1, 2, 3].into_iter().find(|c| codes.contains(c)).unwrap_or(0)
}

/// Runs a manifest in its listed order.
pub fn run_suite(manifest: &Manifest) -> Result<SuiteReport> {
    let mut reports = Vec::new();
    for spec in &manifest.checks {
        reports.push(run_check(&spec.check, spec)?);
    }
    let count = |v: Verdict| reports.iter().filter(|r| r.verdict == v).count();
    let summary = SuiteSummary {
        total: reports.len(),
        pass: count(Verdict::Pass),
        violated: count(Verdict::Violated),
        hypothesis_failed: count(Verdict::HypothesisFailed),
        budget: count(Verdict::Budget),
        unexpected: reports.iter().filter(|r| r.expect.is_some_and(|e| e != r.verdict)).count(),
    };
    let exit_code = aggregate_exit(reports.iter().map(CheckReport::exit_code));
    Ok(SuiteReport { manifest: manifest.name.clone().unwrap_or_default(), reports, summary, exit_code })
}
