use super::{AutomizerData, FusionData};
use crate::error::{Error, Result};
use crate::perm::{o_upper_p, p_part, Bits, Elt, Subgroup};
use std::collections::HashMap;

pub const DEFAULT_CLOSURE_CAP: usize = 1_000_000;

/// A morphism `P → S` of a generated subsystem: `x ↦ g x g⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Morphism {
    pub lift: Elt,
    /// Images of the generators of `P`.
    pub images: Vec<Elt>,
}

/// The fusion subsystem generated by conjugation seeds `c_n : Q → S`,
/// `n ∈ seeds[Q]`, closed under composition and restriction.
#[derive(Debug)]
pub struct GeneratedFusion {
    seeds: Vec<Vec<Elt>>,
    /// `Mor(P, S)` for every subgroup `P`, in discovery order.
    morphisms: Vec<Vec<Morphism>>,
}

impl GeneratedFusion {
    pub fn close(f: &FusionData, seeds: Vec<Vec<Elt>>, cap: usize) -> Result<GeneratedFusion> {
        let g = &**f.group();
        let subs = f.subgroups();
        let active: Vec<(usize, Elt)> =
            seeds.iter().enumerate().flat_map(|(q, v)| v.iter().map(move |&n| (q, n))).collect();
        let mut total = 0usize;
        let mut morphisms = Vec::with_capacity(subs.len());
        for pp in subs {
            let gens = pp.gens();
            let mut seen: HashMap<Vec<Elt>, usize> = HashMap::new();
            let mut list = vec![Morphism { lift: 0, images: gens.to_vec() }];
            seen.insert(gens.to_vec(), 0);
            let mut k = 0;
            while k < list.len() {
                let cur = list[k].clone();
                for &(q, n) in &active {
                    let target = &subs[q];
                    if !cur.images.iter().all(|&x| target.contains(x)) {
                        continue;
                    }
                    let images: Vec<Elt> = cur.images.iter().map(|&x| g.conj(n, x)).collect();
                    if !seen.contains_key(&images) {
                        seen.insert(images.clone(), list.len());
                        list.push(Morphism { lift: g.mul(n, cur.lift), images });
                        total += 1;
                        if total > cap {
                            return Err(Error::ClosureCapExceeded { cap });
                        }
                    }
                }
                k += 1;
            }
            morphisms.push(list);
        }
        Ok(GeneratedFusion { seeds, morphisms })
    }

    pub fn seeds(&self) -> &[Vec<Elt>] {
        &self.seeds
    }

    /// `Mor(P, S)` for subgroup index `i`.
    pub fn morphisms(&self, i: usize) -> &[Morphism] {
        &self.morphisms[i]
    }

    /// Whether `c_g : P → S` is a morphism of the subsystem.
    pub fn contains(&self, f: &FusionData, i: usize, g: Elt) -> bool {
        let grp = &**f.group();
        let images: Vec<Elt> = f.subgroup(i).gens().iter().map(|&x| grp.conj(g, x)).collect();
        self.morphisms[i].iter().any(|m| m.images == images)
    }

    /// `|Mor(P, Q)|`.
    pub fn hom_count(&self, f: &FusionData, i: usize, j: usize) -> usize {
        let q = f.subgroup(j);
        self.morphisms[i].iter().filter(|m| m.images.iter().all(|&x| q.contains(x))).count()
    }

    pub fn total(&self) -> usize {
        self.morphisms.iter().map(Vec::len).sum()
    }
}

/// Generators of `O^{p'}(N_G(P))`, the group generated by its `p`-elements.
fn opprime_normalizer_gens(f: &FusionData, i: usize) -> Vec<Elt> {
    let g = &**f.group();
    let p = f.p() as usize;
    let norm = &f.info(i).normalizer;
    let mut gens = Vec::new();
    let mut cur = g.trivial();
    for &x in norm.elements() {
        let o = g.element_order(x) as usize;
        if p_part(o, f.p()) == o && !cur.contains(x) {
            gens.push(x);
            cur = g.closure(&gens);
        }
    }
    debug_assert!(cur.order() % p == 0 || cur.is_trivial());
    gens
}

/// `O^{p'}(F)` together with the automizer data of `S` it determines.
#[derive(Debug)]
pub struct OpprimeData {
    pub fusion: GeneratedFusion,
    pub aut_s: AutomizerData,
    /// `Aut_{O^{p'}(F)}(S)` inside `aut_s.aut`.
    pub aut_opprime_s: Subgroup,
    /// Preimage of `Out_F^0(S)` inside `aut_s.aut`.
    pub out0: Subgroup,
    /// Lifts in `N_G(S)` of coset representatives of `Aut_F(S)/Aut_{O^{p'}(F)}(S)`.
    pub outer_lifts: Vec<Elt>,
    /// `⟨Aut_F(S), O^{p'}(F)⟩` has the Hom-set sizes of `F`.
    pub generates_f: bool,
}

impl OpprimeData {
    pub fn out0_order(&self) -> usize {
        self.out0.order() / self.aut_s.inn.order()
    }
}

pub fn opprime_fusion(f: &FusionData, cap: usize) -> Result<OpprimeData> {
    let n = f.subgroups().len();
    let seeds: Vec<Vec<Elt>> = (0..n).map(|i| opprime_normalizer_gens(f, i)).collect();
    let fusion = GeneratedFusion::close(f, seeds.clone(), cap)?;

    let si = f.sylow_index();
    let aut_s = f.automizer(si)?;
    let aut = &aut_s.aut;
    let lift_in = |a: Elt| aut_s.lifts[a as usize];
    let in_opprime: Vec<Elt> = aut.whole().elements().iter().copied().filter(|&a| fusion.contains(f, si, lift_in(a))).collect();
    let aut_opprime_s = aut.subgroup_from_elements(in_opprime);

    let centric: Vec<usize> = (0..n).filter(|&i| f.flags(i).centric).collect();
    let out0_gens: Vec<Elt> = aut
        .whole()
        .elements()
        .iter()
        .copied()
        .filter(|&a| centric.iter().any(|&i| fusion.contains(f, i, lift_in(a))))
        .collect();
    let mut gens = out0_gens;
    gens.extend_from_slice(aut_s.inn.gens());
    let out0 = aut.closure(&gens);

    let outer_lifts = aut.left_coset_reps(&aut.whole(), &aut_opprime_s).into_iter().map(lift_in).collect();

    let mut both = seeds;
    both[si].extend_from_slice(f.info(si).normalizer.gens());
    let joined = GeneratedFusion::close(f, both, cap)?;
    let sylow = f.sylow();
    let generates_f = (0..n).all(|i| {
        let expected = f.transporter(f.subgroup(i), sylow).len() / f.info(i).centralizer.order();
        joined.morphisms(i).len() == expected
    });
    Ok(OpprimeData { fusion, aut_s, aut_opprime_s, out0, outer_lifts, generates_f })
}

/// `hyp(F)`: the normal closure in `S` of `x⁻¹ α(x)` over `x ∈ P ≤ S` and
/// `α ∈ O^p(Aut_F(P))`, the image of `O^p(N_G(P))`.
pub fn hyp_f(f: &FusionData) -> Subgroup {
    let g = &**f.group();
    let p = f.p();
    let mut bits = Bits::new(g.order());
    let mut gens: Vec<Elt> = Vec::new();
    let mut cur = g.trivial();
    for (i, pp) in f.subgroups().iter().enumerate() {
        let r = o_upper_p(g, &f.info(i).normalizer, p);
        for &nn in r.gens() {
            for &x in pp.elements() {
                let y = g.mul(g.inv(x), g.conj(nn, x));
                if bits.insert(y) && !cur.contains(y) {
                    gens.push(y);
                    cur = g.closure(&gens);
                }
            }
        }
    }
    g.normal_closure(f.sylow(), &cur)
}
