use fusionlab::check::corpus::{self, ModuleChoice};
use fusionlab::cohom::{bar_cohomology, CohomologyEngine, GroupCohomology};
use fusionlab::fusion::{CollectionKind, FusionData};
use fusionlab::linalg::Subspace;
use fusionlab::module::GModule;
use fusionlab::nerve::{delta_s_comparison, FiniteCategory, NerveComplex};
use fusionlab::perm::named;
use fusionlab::stable::{
    family_equality, opprime_stable_and_fixed, stable_subspaces, wreath_split_check, Family, PairMode,
    StableSubspace,
};
use fusionlab::Error;
use std::sync::Arc;

const SMALL: [&str; 5] = ["S3@2", "S3@3", "S4@2", "A4@2", "D8@2"];
const BOTH: [ModuleChoice; 2] = [ModuleChoice::Trivial, ModuleChoice::Twisted];

fn bar_dims(m: &GModule, n: usize) -> Vec<usize> {
    bar_cohomology(m, &m.group().whole(), n).unwrap().iter().map(|b| b.dim()).collect()
}

fn setup(name: &str, which: ModuleChoice, n: usize) -> (FusionData, CohomologyEngine) {
    let inst = corpus::instance(name).unwrap();
    let m = inst.module(which);
    let f = FusionData::build(inst.group.clone(), inst.p).unwrap();
    let e = CohomologyEngine::with_sylow(&m, f.sylow(), n);
    (f, e)
}

fn stable(f: &FusionData, e: &CohomologyEngine, n: usize, kind: CollectionKind, mode: PairMode) -> Vec<StableSubspace> {
    stable_subspaces(f, e, n, &Family::Collection(kind), mode).unwrap()
}

fn dims(v: &[StableSubspace]) -> Vec<usize> {
    v.iter().map(StableSubspace::dim).collect()
}

#[test]
fn full_family_matches_bar_complex_of_g() {
    for name in SMALL {
        for which in BOTH {
            let inst = corpus::instance(name).unwrap();
            let m = inst.module(which);
            let (f, e) = setup(name, which, 3);
            let st = stable(&f, &e, 3, CollectionKind::All, PairMode::Reduced);
            assert_eq!(dims(&st), bar_dims(&m, 3), "{name} {which:?}");
        }
    }
}

#[test]
fn full_family_is_the_restriction_image() {
    for name in corpus::INSTANCE_NAMES {
        for which in BOTH {
            let (f, e) = setup(name, which, 2);
            let gc = GroupCohomology::from_engine(e);
            for s in stable(&f, gc.engine(), 2, CollectionKind::All, PairMode::Reduced) {
                assert_eq!(s.space, *gc.restriction_image(s.degree), "{name} {which:?} n={}", s.degree);
            }
        }
    }
}

#[test]
fn reduced_conditions_agree_with_exhaustive() {
    for name in SMALL {
        for which in BOTH {
            let (f, e) = setup(name, which, 2);
            for kind in [CollectionKind::All, CollectionKind::Centric, CollectionKind::Cr] {
                match stable_subspaces(&f, &e, 2, &Family::Collection(kind), PairMode::Reduced) {
                    Ok(r) => {
                        let x = stable(&f, &e, 2, kind, PairMode::Exhaustive);
                        for (a, b) in r.iter().zip(&x) {
                            assert_eq!(a.space, b.space, "{name} {which:?} {kind:?}");
                            assert!(a.family.conditions <= b.family.conditions);
                        }
                    }
                    Err(Error::IncompatibleAction { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
    }
}

#[test]
fn p_group_stable_elements_are_everything() {
    let (f, e) = setup("D8@2", ModuleChoice::Trivial, 3);
    let s = f.sylow().clone();
    let g = Arc::new(named::dihedral(8).unwrap());
    let bar = bar_dims(&GModule::trivial(g, 2, 1), 3);
    for kind in [CollectionKind::All, CollectionKind::Centric] {
        let st = stable(&f, &e, 3, kind, PairMode::Reduced);
        assert_eq!(dims(&st), bar);
        for x in &st {
            assert_eq!(x.dim(), e.dim(&s, x.degree));
        }
    }
}

#[test]
fn sign_module_at_three_matches_bar_complex() {
    let inst = corpus::instance("S3@3").unwrap();
    let m = inst.module(ModuleChoice::Twisted);
    let bar = bar_dims(&m, 3);
    assert_eq!(bar, vec![0, 1, 1, 0]);
    let (f, e) = setup("S3@3", ModuleChoice::Twisted, 3);
    assert_eq!(dims(&stable(&f, &e, 3, CollectionKind::Centric, PairMode::Reduced)), bar);
    let coll = f.collection(CollectionKind::Centric);
    let cat = FiniteCategory::transporter(&f, &coll).unwrap();
    assert_eq!(NerveComplex::new(&cat, &m, 3).unwrap().dims(), bar);
}

#[test]
fn s4_trivial_degree_two_matches_bar_complex() {
    let inst = corpus::instance("S4@2").unwrap();
    let bar = bar_dims(&inst.module(ModuleChoice::Trivial), 2);
    let (f, e) = setup("S4@2", ModuleChoice::Trivial, 2);
    let st = stable(&f, &e, 2, CollectionKind::Centric, PairMode::Reduced);
    assert_eq!(st[2].dim(), bar[2]);
}

#[test]
fn stable_subspaces_shrink_as_the_family_grows() {
    for name in SMALL {
        for which in BOTH {
            let (f, e) = setup(name, which, 2);
            let all = stable(&f, &e, 2, CollectionKind::All, PairMode::Reduced);
            let Ok(centric) = stable_subspaces(&f, &e, 2, &Family::Collection(CollectionKind::Centric), PairMode::Reduced)
            else {
                continue;
            };
            let cr = stable(&f, &e, 2, CollectionKind::Cr, PairMode::Reduced);
            for k in 0..=2 {
                assert!(all[k].space.is_subspace_of(&centric[k].space));
                assert!(centric[k].space.is_subspace_of(&cr[k].space));
            }
        }
    }
}

#[test]
fn delta_image_lies_in_stable_elements() {
    for name in SMALL {
        for which in BOTH {
            let inst = corpus::instance(name).unwrap();
            let m = inst.module(which);
            let (f, e) = setup(name, which, 2);
            let st = stable(&f, &e, 2, CollectionKind::Centric, PairMode::Reduced);
            let cat = FiniteCategory::transporter(&f, &f.collection(CollectionKind::Centric)).unwrap();
            let nc = NerveComplex::new(&cat, &m, 2).unwrap();
            for k in 0..=2 {
                let img = Subspace::image_of(&delta_s_comparison(&cat, &nc, &e, k).unwrap());
                assert!(img.is_subspace_of(&st[k].space), "{name} {which:?} n={k}");
            }
        }
    }
}

#[test]
fn fixed_points_of_outer_lifts_give_stable_elements() {
    for name in SMALL.iter().chain(&["SL(2,3)@3"]) {
        for which in BOTH {
            let (f, e) = setup(name, which, 3);
            let st = stable(&f, &e, 3, CollectionKind::Centric, PairMode::Reduced);
            let red = opprime_stable_and_fixed(&f, &e, 3, PairMode::Reduced).unwrap();
            let ex = opprime_stable_and_fixed(&f, &e, 3, PairMode::Exhaustive).unwrap();
            for k in 0..=3 {
                assert_eq!(red[k].fixed, st[k].space, "{name} {which:?} n={k}");
                assert_eq!(red[k].opprime.space, ex[k].opprime.space, "{name} {which:?} n={k}");
                assert!(st[k].space.is_subspace_of(&red[k].opprime.space));
            }
        }
    }
}

#[test]
fn s3_mod_two_degree_one_is_fully_opprime_stable() {
    // S3 has a normal 2-complement, so F = F_S(S)
    let (f, e) = setup("S3@2", ModuleChoice::Trivial, 1);
    let op = opprime_stable_and_fixed(&f, &e, 1, PairMode::Reduced).unwrap();
    let s = f.sylow().clone();
    assert_eq!(op[1].opprime.dim(), e.dim(&s, 1));
    assert_eq!(op[1].fixed.dim(), op[1].opprime.dim());
}

#[test]
fn grodal_family_suffices_for_sign_module() {
    let (f, e) = setup("S3@3", ModuleChoice::Twisted, 3);
    let inst = corpus::instance("S3@3").unwrap();
    let fam = f.grodal_family(&inst.module(ModuleChoice::Twisted));
    for c in family_equality(&f, &e, 3, &Family::Collection(CollectionKind::All), &Family::Subgroups(fam)).unwrap() {
        assert!(c.equal, "n={}", c.n);
    }
}

#[test]
fn incompatible_module_is_refused_for_centric_families() {
    // C6 at p = 3: the involution centralizes S and acts by -1
    let g = Arc::new(named::cyclic(6).unwrap());
    let m = GModule::sign(g.clone(), 3);
    let f = FusionData::build(g, 3).unwrap();
    let e = CohomologyEngine::with_sylow(&m, f.sylow(), 1);
    let r = stable_subspaces(&f, &e, 1, &Family::Collection(CollectionKind::Centric), PairMode::Reduced);
    assert!(matches!(r, Err(Error::IncompatibleAction { .. })));
    assert!(stable_subspaces(&f, &e, 1, &Family::Collection(CollectionKind::All), PairMode::Reduced).is_ok());
}

#[test]
fn wreath_of_s3_at_three() {
    let g0 = Arc::new(named::symmetric(3).unwrap());
    let r = wreath_split_check(&GModule::trivial(g0, 3, 1), 2).unwrap();
    assert!(r.passes());
    assert_eq!(r.essentials.len(), 1);
    let e = &r.essentials[0];
    assert!(e.is_base && e.kind == "E1" && e.order == 27 && e.matches);
    assert_eq!(r.coind_dim.0, r.coind_dim.1);
}
