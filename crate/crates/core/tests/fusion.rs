use fusionlab::fusion::{hyp_f, m_essential_subgroups, model_of, opprime_fusion, FusionData, DEFAULT_CLOSURE_CAP};
use fusionlab::module::GModule;
use fusionlab::perm::{named, Elt, Perm, PermGroup, Subgroup};
use std::collections::HashSet;
use std::sync::Arc;

fn build(g: PermGroup, p: u32) -> FusionData {
    FusionData::build(Arc::new(g), p).unwrap()
}

fn sub(g: &PermGroup, n: usize, cycles: &[&[Vec<usize>]]) -> Subgroup {
    let gens: Vec<Perm> = cycles.iter().map(|c| Perm::from_cycles(n, c).unwrap()).collect();
    named::subgroup_of(g, &gens).unwrap()
}

fn klein_normal(g: &PermGroup) -> Subgroup {
    sub(g, 4, &[&[vec![1, 2], vec![3, 4]], &[vec![1, 3], vec![2, 4]]])
}

/// Subsets of `S` closed under multiplication, by exhaustive search.
fn brute_force_subgroup_count(g: &PermGroup, s: &Subgroup) -> usize {
    let e = s.elements();
    let n = e.len();
    assert!(n <= 16);
    (0u32..1 << n)
        .filter(|mask| {
            let set: Vec<Elt> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| e[i]).collect();
            set.contains(&0)
                && set.iter().all(|&a| set.iter().all(|&b| set.contains(&g.mul(a, b))))
        })
        .count()
}

/// Distinct restrictions `c_g|_P` over `g` with `gPg⁻¹ = P`.
fn brute_force_aut_count(g: &PermGroup, p: &Subgroup) -> usize {
    let mut maps: HashSet<Vec<Elt>> = HashSet::new();
    for x in 0..g.order() as Elt {
        let img: Vec<Elt> = p.elements().iter().map(|&y| g.conj(x, y)).collect();
        if img.iter().all(|&y| p.contains(y)) {
            maps.insert(img);
        }
    }
    maps.len()
}

#[test]
fn s4_at_two_subgroups_and_flags() {
    let f = build(named::symmetric(4).unwrap(), 2);
    let g = f.group().clone();
    assert_eq!(f.subgroups().len(), brute_force_subgroup_count(&g, f.sylow()));
    assert_eq!(f.subgroups().len(), 10);
    let v = klein_normal(&g);
    let vi = f.index_of(&v).unwrap();
    let fl = f.flags(vi);
    assert!(fl.centric && fl.radical && fl.essential);
    let z = g.center(f.sylow());
    assert!(!f.flags(f.index_of(&z).unwrap()).centric);
    let other_klein: Vec<usize> = (0..f.subgroups().len())
        .filter(|&i| f.subgroup(i).order() == 4 && f.subgroup(i) != &v)
        .filter(|&i| f.subgroup(i).elements().iter().all(|&x| g.element_order(x) <= 2))
        .collect();
    assert_eq!(other_klein.len(), 1);
    assert!(!f.flags(other_klein[0]).essential);
    assert_eq!(f.essential_subgroups(), vec![vi]);
    let s = f.sylow_index();
    assert!(f.flags(s).centric && f.flags(s).fully_normalized && !f.flags(s).essential);
}

#[test]
fn hom_sets_match_normalizer_over_centralizer() {
    let f = build(named::symmetric(4).unwrap(), 2);
    let g = f.group().clone();
    let vi = f.index_of(&klein_normal(&g)).unwrap();
    assert_eq!(f.hom_f(vi, vi).len(), brute_force_aut_count(&g, f.subgroup(vi)));
    assert_eq!(f.hom_f(vi, vi).len(), 6);
    for i in 0..f.subgroups().len() {
        assert!(f.hom_f(i, i).iter().any(|m| m.images == f.subgroup(i).elements()));
        let a = f.automizer(i).unwrap();
        assert_eq!(a.aut.order(), f.info(i).aut_order);
        assert!(g.is_normal_in(&a.inn, &a.aut.whole()) || a.aut.is_normal_in(&a.inn, &a.aut.whole()));
    }
    let f3 = build(named::symmetric(3).unwrap(), 3);
    let s = f3.sylow_index();
    assert_eq!(f3.hom_f(s, s).len(), brute_force_aut_count(f3.group(), f3.sylow()));
    assert_eq!(f3.hom_f(s, s).len(), 2);
    assert!(f3.essential_subgroups().is_empty());
    assert!(f3.flags(s).centric);
}

#[test]
fn p_group_has_no_essentials() {
    let f = build(named::dihedral(8).unwrap(), 2);
    let s = f.sylow_index();
    assert!(f.flags(s).centric && f.flags(s).radical);
    assert!(f.essential_subgroups().is_empty());
    assert!(hyp_f(&f).is_trivial());
    assert_eq!(f.op_of_f(), *f.sylow());
    let m = model_of(&f).unwrap();
    assert_eq!(m.group.order(), 8);
    assert!(m.passes());
}

#[test]
fn classification_is_conjugation_invariant() {
    for (g, p) in [(named::symmetric(4).unwrap(), 2), (named::alternating(4).unwrap(), 2), (named::sl23().unwrap(), 3)] {
        let f = build(g, p);
        let g = f.group().clone();
        for c in f.classes() {
            let a = f.flags(c.members[0]);
            for &j in &c.members {
                assert_eq!(f.flags(j).centric, a.centric);
                assert_eq!(f.flags(j).quasicentric, a.quasicentric);
            }
        }
        for i in 0..f.subgroups().len() {
            if f.flags(i).centric {
                assert!(f.flags(i).quasicentric);
                for m in f.hom_f(i, f.sylow_index()) {
                    let img = g.conjugate(m.lift, f.subgroup(i));
                    assert!(f.flags(f.index_of(&img).unwrap()).centric);
                }
            }
        }
    }
}

/// Intersection of all Sylow `p`-subgroups, computed from conjugates of `S`.
fn sylow_core(f: &FusionData) -> Subgroup {
    let g = f.group();
    let mut cur = f.sylow().clone();
    for x in 0..g.order() as Elt {
        cur = g.intersection(&cur, &g.conjugate(x, f.sylow()));
    }
    cur
}

#[test]
fn largest_normal_subgroup_and_models() {
    let f = build(named::symmetric(4).unwrap(), 2);
    assert_eq!(f.op_of_f(), sylow_core(&f));
    assert_eq!(f.op_of_f(), klein_normal(f.group()));
    assert!(f.is_constrained());
    let m = model_of(&f).unwrap();
    assert_eq!(m.group.order(), 24);
    assert!(m.passes());

    let f3 = build(named::symmetric(3).unwrap(), 3);
    assert!(f3.is_constrained());
    let m3 = model_of(&f3).unwrap();
    assert_eq!(m3.group.order(), 6);
    assert!(m3.passes());

    // S3 has a normal 2-complement, so every morphism is realized inside S
    let f2 = build(named::symmetric(3).unwrap(), 2);
    let s = f2.sylow_index();
    for i in 0..f2.subgroups().len() {
        let inner: HashSet<Vec<Elt>> = f2
            .sylow()
            .elements()
            .iter()
            .map(|&x| f2.subgroup(i).elements().iter().map(|&y| f2.group().conj(x, y)).collect())
            .collect();
        assert_eq!(f2.hom_f(i, s).len(), inner.len());
    }
    assert_eq!(f2.op_of_f(), *f2.sylow());
    assert!(f2.is_constrained());

    // O_2(A5) = 1 but the fusion on V4 is that of A4
    let f5 = build(named::alternating(5).unwrap(), 2);
    assert!(sylow_core(&f5).is_trivial());
    assert_eq!(f5.op_of_f(), *f5.sylow());
    let m5 = model_of(&f5).unwrap();
    assert_eq!(m5.group.order(), f5.info(f5.sylow_index()).normalizer.order());
    assert_eq!(m5.group.order(), 12);
    assert!(m5.passes());

    let s4 = named::symmetric(4).unwrap();
    let d8 = named::dihedral(8).unwrap();
    let (prod, _) = named::direct_product(&[&s4, &d8]).unwrap();
    let fp = build(prod, 2);
    assert_eq!(fp.op_of_f(), sylow_core(&fp));
}

#[test]
fn hyperfocal_subgroup() {
    let f3 = build(named::symmetric(3).unwrap(), 3);
    assert_eq!(hyp_f(&f3), *f3.sylow());
    // S4 at 2: S/hyp is the largest p-quotient of S4, of order 2
    let f = build(named::symmetric(4).unwrap(), 2);
    assert_eq!(hyp_f(&f).order(), 4);
}

#[test]
fn opprime_subsystem() {
    let f3 = build(named::symmetric(3).unwrap(), 3);
    let d = opprime_fusion(&f3, DEFAULT_CLOSURE_CAP).unwrap();
    assert_eq!(d.out0_order(), 1);
    assert_eq!(d.outer_lifts.len(), 2);
    assert!(d.generates_f);
    assert_eq!(d.fusion.morphisms(f3.sylow_index()).len(), 1);

    let f = build(named::symmetric(4).unwrap(), 2);
    let d = opprime_fusion(&f, DEFAULT_CLOSURE_CAP).unwrap();
    assert!(d.generates_f);
    assert_eq!(d.outer_lifts.len(), 1);

    let fp = build(named::dihedral(8).unwrap(), 2);
    let dp = opprime_fusion(&fp, DEFAULT_CLOSURE_CAP).unwrap();
    for i in 0..fp.subgroups().len() {
        assert_eq!(dp.fusion.morphisms(i).len(), fp.hom_f(i, fp.sylow_index()).len());
    }
}

#[test]
fn m_essential_sign_module() {
    let f = build(named::symmetric(3).unwrap(), 3);
    let sign = GModule::sign(f.group().clone(), 3);
    assert_eq!(m_essential_subgroups(&f, &sign), vec![f.sylow_index()]);
    let fam = f.grodal_family(&sign);
    assert_eq!(fam, vec![f.sylow_index()]);
}
