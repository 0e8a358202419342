//! Structural properties as functions of a seeded draw, shared by the
//! proptest suites and the acceptance target.
#![allow(dead_code)]

use fusionlab::check::corpus::{self, ModuleChoice};
use fusionlab::check::io::{GroupDoc, ProductTag, WreathTag};
use fusionlab::check::transporter_image;
use fusionlab::cohom::{BarComplex, CohomologyEngine, GroupCohomology};
use fusionlab::fusion::{CollectionKind, FusionData};
use fusionlab::linalg::Subspace;
use fusionlab::module::{check_pilocal_compatibility, GModule};
use fusionlab::nerve::{delta_s_comparison, homofunctor_map, FiniteCategory, NerveComplex};
use fusionlab::perm::{
    has_strongly_p_embedded, named, o_p, strongly_p_embedded_witness, Elt, Perm, PermGroup, Subgroup,
};
use fusionlab::stable::{stable_subspaces, Family, PairMode};
use fusionlab::Error;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeSet;
use std::sync::{Arc, OnceLock};

pub const DEGREE: usize = 3;

/// `Ok(Some(k))`: the instance was admitted and `k` nontrivial subchecks ran.
/// `Ok(None)`: a hypothesis or the cell budget excluded the instance.
pub type Outcome = Result<Option<usize>, String>;

pub struct Draw(ChaCha8Rng);

impl Draw {
    pub fn new(seed: u64) -> Draw {
        Draw(ChaCha8Rng::seed_from_u64(seed))
    }

    pub fn below(&mut self, n: usize) -> usize {
        self.0.gen_range(0..n)
    }

    pub fn pick<T: Copy>(&mut self, v: &[T]) -> T {
        v[self.below(v.len())]
    }

    pub fn bits(&mut self) -> u64 {
        self.0.gen()
    }

    pub fn elt(&mut self, g: &PermGroup) -> Elt {
        self.below(g.order()) as Elt
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

pub struct Fixture {
    pub name: &'static str,
    pub f: FusionData,
    pub modules: Vec<GModule>,
    pub engines: Vec<CohomologyEngine>,
}

pub fn fixtures() -> &'static [Fixture] {
    static CELL: OnceLock<Vec<Fixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        corpus::corpus()
            .unwrap()
            .into_iter()
            .map(|inst| {
                let f = FusionData::build(inst.group.clone(), inst.p).unwrap();
                let modules = vec![inst.module(ModuleChoice::Trivial), inst.module(ModuleChoice::Twisted)];
                let engines = modules.iter().map(|m| CohomologyEngine::with_sylow(m, f.sylow(), DEGREE)).collect();
                Fixture { name: inst.name, f, modules, engines }
            })
            .collect()
    })
}

/// Corpus members small enough for nerves and exhaustive enumerations.
fn nerve_sized(d: &mut Draw) -> &'static Fixture {
    let idx: Vec<usize> =
        fixtures().iter().enumerate().filter(|(_, x)| x.name != "S3wrC3@3").map(|(i, _)| i).collect();
    &fixtures()[d.pick(&idx)]
}

fn any_fixture(d: &mut Draw) -> &'static Fixture {
    &fixtures()[d.below(fixtures().len())]
}

fn compatible(fx: &Fixture, m: usize, kind: CollectionKind) -> bool {
    let subs: Vec<Subgroup> = fx.f.collection(kind).iter().map(|&i| fx.f.subgroup(i).clone()).collect();
    check_pilocal_compatibility(&fx.modules[m], &subs).is_ok()
}

const KINDS: [CollectionKind; 3] = [CollectionKind::All, CollectionKind::Centric, CollectionKind::Cr];

fn nerve(cat: &FiniteCategory, m: &GModule, n: usize) -> Result<Option<NerveComplex>, String> {
    match NerveComplex::new(cat, m, n) {
        Ok(nc) => Ok(Some(nc)),
        Err(Error::CellCapExceeded { .. }) => Ok(None),
        Err(e) => Err(e.to_string()),
    }
}

pub fn coboundaries_square_to_zero(d: &mut Draw) -> Outcome {
    let fx = nerve_sized(d);
    let (m, kind, linking, n) = (d.below(2), d.pick(&KINDS), d.below(2) == 1, 1 + d.below(2));
    let coll = fx.f.collection(kind);
    let cat = if linking && compatible(fx, m, kind) {
        FiniteCategory::linking(&fx.f, &coll)
    } else {
        FiniteCategory::transporter(&fx.f, &coll)
    }
    .map_err(|e| e.to_string())?;
    let Some(nc) = nerve(&cat, &fx.modules[m], n)? else { return Ok(None) };
    for k in 0..n {
        ensure!(nc.coboundary_matrix(k + 1).is_zero_product(nc.coboundary_matrix(k)), "{} nerve k={k}", fx.name);
    }
    let sub = fx.f.subgroup(d.below(fx.f.subgroups().len()));
    let bar = BarComplex::new(&fx.modules[m], sub, 2).map_err(|e| e.to_string())?;
    ensure!(bar.coboundary_matrix(1).is_zero_product(bar.coboundary_matrix(0)), "{} bar", fx.name);
    Ok(Some(n + 1))
}

pub fn degree_zero_is_fixed_points(d: &mut Draw) -> Outcome {
    let fx = any_fixture(d);
    let m = d.below(2);
    let (mo, e) = (&fx.modules[m], &fx.engines[m]);
    let p = fx.f.subgroup(d.below(fx.f.subgroups().len()));
    ensure!(e.dim(p, 0) == mo.fixed_points(p).dim(), "{} local H^0", fx.name);
    let g = fx.f.group();
    let gc = GroupCohomology::from_engine(CohomologyEngine::with_sylow(mo, fx.f.sylow(), 0));
    ensure!(gc.dim(0) == mo.fixed_points(&g.whole()).dim(), "{} H^0(G)", fx.name);
    if fx.name == "S3wrC3@3" {
        return Ok(Some(2));
    }
    let coll = fx.f.collection(CollectionKind::Centric);
    let cat = FiniteCategory::transporter(&fx.f, &coll).map_err(|e| e.to_string())?;
    let Some(nc) = nerve(&cat, mo, 0)? else { return Ok(Some(2)) };
    let image = transporter_image(&fx.f, CollectionKind::Centric);
    ensure!(nc.dims()[0] == mo.fixed_points(&image).dim(), "{} nerve H^0", fx.name);
    Ok(Some(3))
}

pub fn kappa_does_not_depend_on_the_lift(d: &mut Draw) -> Outcome {
    let fx = any_fixture(d);
    let m = d.below(2);
    if !compatible(fx, m, CollectionKind::Centric) {
        return Ok(None);
    }
    let f = &fx.f;
    let p = f.subgroup(d.pick(&f.collection(CollectionKind::Centric)));
    let g = f.group();
    let x = d.pick(&f.transporter(p, f.sylow()));
    let c = g.centralizer(&g.whole(), p);
    let z = c.elements()[d.below(c.order())];
    let e = &fx.engines[m];
    ensure!(
        e.kappa_all(x, f.sylow(), p, DEGREE) == e.kappa_all(g.mul(x, z), f.sylow(), p, DEGREE),
        "{} |P| = {}",
        fx.name,
        p.order()
    );
    Ok(Some(DEGREE + 1))
}

pub fn kappa_is_functorial(d: &mut Draw) -> Outcome {
    let fx = any_fixture(d);
    let m = d.below(2);
    let f = &fx.f;
    let g = f.group();
    let n_subs = f.subgroups().len();
    let p = f.subgroup(d.below(n_subs));
    let targets: Vec<usize> = (0..n_subs).filter(|&j| !f.transporter(p, f.subgroup(j)).is_empty()).collect();
    let q = f.subgroup(d.pick(&targets));
    let x = d.pick(&f.transporter(p, q));
    let y = d.pick(&f.transporter(q, f.sylow()));
    let e = &fx.engines[m];
    let whole = e.kappa_all(g.mul(y, x), f.sylow(), p, 2);
    let first = e.kappa_all(y, f.sylow(), q, 2);
    let second = e.kappa_all(x, q, p, 2);
    for k in 0..=2 {
        ensure!(whole[k] == second[k].mul(&first[k]), "{} k={k}", fx.name);
    }
    Ok(Some(3))
}

pub fn delta_image_is_stable(d: &mut Draw) -> Outcome {
    let fx = nerve_sized(d);
    let (m, kind, n) = (d.below(2), d.pick(&KINDS), d.below(3));
    if kind != CollectionKind::All && !compatible(fx, m, kind) {
        return Ok(None);
    }
    let e = &fx.engines[m];
    let st = stable_subspaces(&fx.f, e, n, &Family::Collection(kind), PairMode::Reduced).map_err(|e| e.to_string())?;
    let cat = FiniteCategory::transporter(&fx.f, &fx.f.collection(kind)).map_err(|e| e.to_string())?;
    let Some(nc) = nerve(&cat, &fx.modules[m], n)? else { return Ok(None) };
    let img = Subspace::image_of(&delta_s_comparison(&cat, &nc, e, n).map_err(|e| e.to_string())?);
    ensure!(img.is_subspace_of(&st[n].space), "{} {kind:?} n={n}", fx.name);
    Ok(Some(1))
}

pub fn larger_families_have_fewer_stable_elements(d: &mut Draw) -> Outcome {
    let fx = any_fixture(d);
    let (m, small, extra, n) = (d.below(2), d.bits(), d.bits(), d.below(3));
    let f = &fx.f;
    let reps: Vec<usize> = f.classes().iter().map(|c| c.representative).collect();
    let chosen = |mask: u64| -> Vec<usize> {
        reps.iter().enumerate().filter(|(i, _)| mask >> (i % 64) & 1 == 1).map(|(_, &r)| r).collect()
    };
    let a = chosen(small);
    let mut b = a.clone();
    b.extend(chosen(extra));
    let e = &fx.engines[m];
    let run = |fam: Vec<usize>, mode| stable_subspaces(f, e, n, &Family::Subgroups(fam), mode).map_err(|e| e.to_string());
    let sa = run(a.clone(), PairMode::Reduced)?;
    let sb = run(b, PairMode::Reduced)?;
    for k in 0..=n {
        ensure!(sb[k].space.is_subspace_of(&sa[k].space), "{} k={k}", fx.name);
    }
    if fx.name != "S3wrC3@3" {
        let ex = run(a, PairMode::Exhaustive)?;
        ensure!(sa[n].space == ex[n].space, "{} reduced vs exhaustive n={n}", fx.name);
    }
    Ok(Some(n + 1))
}

pub fn transporter_and_linking_nerves_agree(d: &mut Draw) -> Outcome {
    let fx = nerve_sized(d);
    let (m, kind, n) = (d.below(2), d.pick(&KINDS[1..]), d.below(3));
    if !compatible(fx, m, kind) {
        return Ok(None);
    }
    let coll = fx.f.collection(kind);
    let t = FiniteCategory::transporter(&fx.f, &coll).map_err(|e| e.to_string())?;
    let l = FiniteCategory::linking(&fx.f, &coll).map_err(|e| e.to_string())?;
    let (Some(tn), Some(ln)) = (nerve(&t, &fx.modules[m], n)?, nerve(&l, &fx.modules[m], n)?) else {
        return Ok(None);
    };
    let h = homofunctor_map(&t, &tn, &l, &ln, n).map_err(|e| e.to_string())?;
    ensure!(h.rank() == tn.dims()[n] && h.rank() == ln.dims()[n], "{} {kind:?} n={n}", fx.name);
    Ok(Some(1))
}

pub fn nerve_does_not_depend_on_the_collection(d: &mut Draw) -> Outcome {
    let fx = nerve_sized(d);
    let (m, n) = (d.below(2), d.below(3));
    let f = &fx.f;
    let g = f.group();
    let mut kinds = vec![CollectionKind::Centric, CollectionKind::Cr];
    let op = o_p(g, &g.whole(), f.p());
    if f.index_of(&op).is_some_and(|i| f.flags(i).centric) {
        kinds.push(CollectionKind::Constrained);
    }
    let e = &fx.engines[m];
    let mut images: Vec<(usize, Subspace)> = Vec::new();
    for &k in &kinds {
        let cat = FiniteCategory::transporter(f, &f.collection(k)).map_err(|e| e.to_string())?;
        let Some(nc) = nerve(&cat, &fx.modules[m], n)? else { return Ok(None) };
        let img = Subspace::image_of(&delta_s_comparison(&cat, &nc, e, n).map_err(|e| e.to_string())?);
        images.push((nc.dims()[n], img));
    }
    for w in images.windows(2) {
        ensure!(w[0] == w[1], "{} n={n} over {kinds:?}", fx.name);
    }
    Ok(Some(kinds.len() - 1))
}

fn is_p_power(mut n: usize, p: usize) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

fn affine(n: usize, mult: usize) -> PermGroup {
    let shift = Perm::from_images((0..n).map(|i| (i + 1) % n).collect()).unwrap();
    let scale = Perm::from_images((0..n).map(|i| i * mult % n).collect()).unwrap();
    PermGroup::new(n, vec![shift, scale]).unwrap()
}

// X proper, p | |X|, and |X ∩ X^g| prime to p for every g outside X.
fn strongly_p_embedded_by_definition(g: &PermGroup, x: &Subgroup, within: &Subgroup, p: u32) -> bool {
    let p = p as usize;
    x.order() < within.order()
        && x.order() % p == 0
        && within
            .elements()
            .iter()
            .filter(|&&h| !x.contains(h))
            .all(|&h| g.intersection(x, &g.conjugate(h, x)).order() % p != 0)
}

/// A random subgroup of p-power index and order divisible by p. `Some(1)`
/// when the ambient group has a strongly p-embedded subgroup and the
/// subgroup is proper.
pub fn strong_p_embedding_passes_down(d: &mut Draw) -> Outcome {
    static GROUPS: OnceLock<Vec<(&'static str, PermGroup, u32)>> = OnceLock::new();
    let groups = GROUPS.get_or_init(|| {
        vec![
            ("S3", named::symmetric(3).unwrap(), 2),
            ("S4", named::symmetric(4).unwrap(), 3),
            ("A4", named::alternating(4).unwrap(), 3),
            ("A5", named::alternating(5).unwrap(), 2),
            ("A5", named::alternating(5).unwrap(), 5),
            ("F20", affine(5, 2), 2),
            ("C13:C4", affine(13, 5), 2),
            ("C19:C9", affine(19, 4), 3),
            ("D10", named::dihedral(10).unwrap(), 2),
        ]
    });
    let (name, g, p) = &groups[d.below(groups.len())];
    let gens: Vec<Elt> = (0..1 + d.below(2)).map(|_| d.elt(g)).collect();
    let g0 = g.closure(&gens);
    let whole = g.whole();
    let pp = *p as usize;
    if !is_p_power(g0.index_in(&whole), pp) || g0.order() % pp != 0 {
        return Ok(None);
    }
    if !has_strongly_p_embedded(g, &whole, *p) {
        return Ok(Some(0));
    }
    let w = strongly_p_embedded_witness(g, &whole, *p).ok_or("no witness")?;
    ensure!(strongly_p_embedded_by_definition(g, &w, &whole, *p), "{name} at {p}: witness");
    ensure!(has_strongly_p_embedded(g, &g0, *p), "{name} at {p}: subgroup of order {}", g0.order());
    let w0 = strongly_p_embedded_witness(g, &g0, *p).ok_or("no witness")?;
    ensure!(strongly_p_embedded_by_definition(g, &w0, &g0, *p), "{name} at {p}: witness of order {}", g0.order());
    Ok(Some(usize::from(g0.order() < g.order())))
}

fn standalone(g: &PermGroup, h: &Subgroup) -> Arc<PermGroup> {
    let gens: Vec<Perm> = h.gens().iter().map(|&x| g.perm(x).clone()).collect();
    Arc::new(PermGroup::new(g.degree(), gens).unwrap())
}

fn transfer(g: &PermGroup, h: &PermGroup, p: &Subgroup) -> Subgroup {
    h.closure(&p.gens().iter().map(|&x| h.index_of(g.perm(x)).unwrap()).collect::<Vec<_>>())
}

fn wreath(base: &str, p: u32) -> PermGroup {
    GroupDoc::Wreath { name: WreathTag::Wreath, base: Box::new(GroupDoc::named(base)), p }.build().unwrap()
}

fn product(a: &str, b: &str) -> PermGroup {
    GroupDoc::Product { name: ProductTag::Product, factors: vec![GroupDoc::named(a), GroupDoc::named(b)] }
        .build()
        .unwrap()
}

struct NormalFixture {
    f: FusionData,
    normals: Vec<Subgroup>,
}

fn normal_fixtures() -> &'static [NormalFixture] {
    static CELL: OnceLock<Vec<NormalFixture>> = OnceLock::new();
    CELL.get_or_init(|| {
        let mut d = Draw::new(0x5eed_0002);
        [wreath("S4", 2), wreath("S3", 2), product("S4", "S3"), product("S4", "S4"), product("S3", "S3")]
            .into_iter()
            .map(|g| {
                let g = Arc::new(g);
                let whole = g.whole();
                let mut normals: Vec<Subgroup> = Vec::new();
                for _ in 0..400 {
                    let gens: Vec<Elt> = (0..1 + d.below(3)).map(|_| d.elt(&g)).collect();
                    let n = g.normal_closure(&whole, &g.closure(&gens));
                    if n.index_in(&whole) == 2 && !normals.contains(&n) {
                        normals.push(n);
                    }
                }
                NormalFixture { f: FusionData::build(g, 2).unwrap(), normals }
            })
            .collect()
    })
}

/// Essential subgroups strictly below `S ∩ H`, for `H` normal of index p,
/// are essential for the fusion system of `H`.
pub fn essentials_below_index_p_normal(d: &mut Draw) -> Outcome {
    let fx = &normal_fixtures()[d.below(normal_fixtures().len())];
    if fx.normals.is_empty() {
        return Ok(None);
    }
    let g = fx.f.group();
    let p = fx.f.p();
    let h = &fx.normals[d.below(fx.normals.len())];
    let f = FusionData::with_sylow(g.clone(), p, g.conjugate(d.elt(g), fx.f.sylow())).map_err(|e| e.to_string())?;
    let s = f.sylow();
    let hg = standalone(g, h);
    let sh = g.intersection(s, h);
    let f1 = FusionData::with_sylow(hg.clone(), p, transfer(g, &hg, &sh)).map_err(|e| e.to_string())?;
    let mut checked = 0;
    for j in 0..f.subgroups().len() {
        let q = f.subgroup(j);
        if !f.flags(j).essential || !q.is_subgroup_of(&sh) || q.order() == sh.order() {
            continue;
        }
        let k = f1.index_of(&transfer(g, &hg, q)).ok_or("not a subgroup of S∩H")?;
        ensure!(f1.flags(k).essential, "|G| = {}, |H| = {}, |P| = {}", g.order(), h.order(), q.order());
        checked += 1;
    }
    Ok(Some(checked))
}

fn lift(g: &PermGroup, factor: &PermGroup, offset: usize, x: Elt) -> Elt {
    let perm = factor.perm(x);
    let images = (0..g.degree())
        .map(|i| if i >= offset && i < offset + perm.degree() { offset + perm.apply(i - offset) } else { i })
        .collect();
    g.index_of(&Perm::from_images(images).unwrap()).unwrap()
}

const FACTORS: [&str; 8] = ["S3", "S4", "A4", "D8", "SL(2,3)", "C2", "C3", "Q8"];

fn products() -> &'static Vec<Vec<Arc<PermGroup>>> {
    static CELL: OnceLock<Vec<Vec<Arc<PermGroup>>>> = OnceLock::new();
    CELL.get_or_init(|| FACTORS.iter().map(|a| FACTORS.iter().map(|b| Arc::new(product(a, b))).collect()).collect())
}

/// Every essential class of a direct product is `Q1×S2` or `S1×Q2` with
/// `Q_i` essential in its factor.
pub fn product_essentials_come_from_one_factor(d: &mut Draw) -> Outcome {
    let (a, b) = (d.below(FACTORS.len()), d.below(FACTORS.len()));
    let p = if d.below(10) < 7 { 2 } else { 3 };
    let factors = [Arc::new(named::by_name(FACTORS[a]).unwrap()), Arc::new(named::by_name(FACTORS[b]).unwrap())];
    let g = products()[a][b].clone();
    let offsets = [0, factors[0].degree()];
    let mut sylows = Vec::new();
    for h in &factors {
        let s = FusionData::build(h.clone(), p).map_err(|e| e.to_string())?.sylow().clone();
        sylows.push(h.conjugate(d.elt(h), &s));
    }
    let embed =
        |i: usize, q: &Subgroup| -> Vec<Elt> { q.gens().iter().map(|&x| lift(&g, &factors[i], offsets[i], x)).collect() };
    let mut s_gens = embed(0, &sylows[0]);
    s_gens.extend(embed(1, &sylows[1]));
    let f = FusionData::with_sylow(g.clone(), p, g.closure(&s_gens)).map_err(|e| e.to_string())?;
    let mut predicted = BTreeSet::new();
    for i in 0..2 {
        let fi = FusionData::with_sylow(factors[i].clone(), p, sylows[i].clone()).map_err(|e| e.to_string())?;
        for q in fi.essential_subgroups() {
            let mut gens = embed(i, fi.subgroup(q));
            gens.extend(embed(1 - i, &sylows[1 - i]));
            let idx = f.index_of(&g.closure(&gens)).ok_or("product subgroup missing")?;
            predicted.insert(f.class_of(idx));
        }
    }
    let found = f.essential_subgroups();
    for &r in &found {
        ensure!(predicted.contains(&f.class_of(r)), "{} x {} at {p}", FACTORS[a], FACTORS[b]);
    }
    Ok(Some(found.len()))
}

pub struct Suite {
    pub name: &'static str,
    pub run: fn(&mut Draw) -> Outcome,
    /// Admitted draws per run, at least 100.
    pub instances: usize,
    /// Least total of nontrivial subchecks for the run to count.
    pub min_weight: usize,
}

pub const SUITES: [Suite; 11] = [
    Suite { name: "d∘d = 0", run: coboundaries_square_to_zero, instances: 100, min_weight: 100 },
    Suite { name: "H^0 = fixed points", run: degree_zero_is_fixed_points, instances: 100, min_weight: 100 },
    Suite { name: "kappa lift-independence", run: kappa_does_not_depend_on_the_lift, instances: 100, min_weight: 100 },
    Suite { name: "kappa functoriality", run: kappa_is_functorial, instances: 100, min_weight: 100 },
    Suite { name: "delta image in stable", run: delta_image_is_stable, instances: 100, min_weight: 100 },
    Suite { name: "monotonicity", run: larger_families_have_fewer_stable_elements, instances: 100, min_weight: 100 },
    Suite { name: "nerve(T) = nerve(L)", run: transporter_and_linking_nerves_agree, instances: 100, min_weight: 100 },
    Suite { name: "collection independence", run: nerve_does_not_depend_on_the_collection, instances: 100, min_weight: 100 },
    Suite { name: "strongly p-embedded subgroups", run: strong_p_embedding_passes_down, instances: 400, min_weight: 10 },
    Suite { name: "essentials below index p", run: essentials_below_index_p_normal, instances: 400, min_weight: 20 },
    Suite { name: "product essentials", run: product_essentials_come_from_one_factor, instances: 400, min_weight: 20 },
];

pub struct SuiteResult {
    pub admitted: usize,
    pub weight: usize,
    pub draws: usize,
    pub failure: Option<String>,
}

/// Draws seeds `base, base+1, …` until `admitted` instances pass the
/// hypotheses, stopping at the first violation.
pub fn run_suite(s: &Suite, base: u64, admitted: usize) -> SuiteResult {
    let mut r = SuiteResult { admitted: 0, weight: 0, draws: 0, failure: None };
    while r.admitted < admitted && r.draws < 50 * admitted {
        let seed = base + r.draws as u64;
        r.draws += 1;
        match (s.run)(&mut Draw::new(seed)) {
            Ok(Some(w)) => {
                r.admitted += 1;
                r.weight += w;
            }
            Ok(None) => {}
            Err(msg) => {
                r.failure = Some(format!("seed {seed}: {msg}"));
                break;
            }
        }
    }
    r
}
