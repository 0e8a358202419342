//! The fusion system `F_S(G)` of a finite group at a prime, with subgroup
//! classification, morphism sets and the collections used downstream.

mod constrained;
mod essential;
mod generated;

pub use constrained::{model_of, ModelReport};
pub use essential::{m_essential_subgroups, MEssentialFlags};
pub use generated::{hyp_f, opprime_fusion, GeneratedFusion, Morphism, OpprimeData, DEFAULT_CLOSURE_CAP};

use crate::error::{Error, Result};
use crate::module::GModule;
use crate::perm::{
    all_subgroups, has_strongly_p_embedded, is_strongly_p_embedded, o_p, o_upper_p, o_upper_pprime, p_part,
    strongly_p_embedded_witness, sylow_subgroup, Elt, Perm, PermGroup, Quotient, Subgroup, DEFAULT_SUBGROUP_CAP,
};
use serde::Serialize;
use std::collections::HashMap;
use std::sync::Arc;

/// Classification flags of a subgroup of `S`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Flags {
    pub centric: bool,
    pub radical: bool,
    pub quasicentric: bool,
    pub essential: bool,
    pub fully_normalized: bool,
}

#[derive(Clone, Debug)]
pub struct SubgroupInfo {
    pub flags: Flags,
    pub class: usize,
    pub normalizer: Subgroup,
    pub centralizer: Subgroup,
    /// `|N_S(P)|`.
    pub normalizer_in_s: usize,
    /// `|Aut_F(P)| = |N_G(P)|/|C_G(P)|`.
    pub aut_order: usize,
    /// `|Out_F(P)| = |N_G(P)|/|P·C_G(P)|`.
    pub out_order: usize,
}

/// An `F`-conjugacy class of subgroups of `S`.
#[derive(Clone, Debug)]
pub struct FusionClass {
    /// Indices into [`FusionData::subgroups`], increasing.
    pub members: Vec<usize>,
    /// Fully normalized member with smallest index.
    pub representative: usize,
}

/// `F_S(G)` with all subgroups of `S` enumerated and classified.
#[derive(Debug)]
pub struct FusionData {
    group: Arc<PermGroup>,
    p: u32,
    sylow: Subgroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    info: Vec<SubgroupInfo>,
    classes: Vec<FusionClass>,
}

/// A morphism of `F` with a transporter lift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionMorphism {
    pub lift: Elt,
    /// Images of the source's elements, aligned with `source.elements()`.
    pub images: Vec<Elt>,
}

/// `Aut_F(P)` as a permutation group on the elements of `P`.
#[derive(Debug)]
pub struct AutomizerData {
    pub aut: PermGroup,
    pub inn: Subgroup,
    pub out: PermGroup,
    pub opprime: Subgroup,
    /// A lift in `N_G(P)` of each element of `aut`, aligned with its elements.
    pub lifts: Vec<Elt>,
}

/// Object collections of subgroups of `S`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CollectionKind {
    All,
    Centric,
    /// Overgroups of centric radical subgroups.
    Cr,
    Quasicentric,
    /// Subgroups containing `O_p(G)`.
    Constrained,
}

impl std::str::FromStr for CollectionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "all" | "full" => Ok(CollectionKind::All),
            "centric" => Ok(CollectionKind::Centric),
            "cr" | "centric-radical" => Ok(CollectionKind::Cr),
            "quasicentric" => Ok(CollectionKind::Quasicentric),
            "constrained" => Ok(CollectionKind::Constrained),
            _ => Err(Error::InvalidCollection(s.to_string())),
        }
    }
}

impl FusionData {
    pub fn build(group: Arc<PermGroup>, p: u32) -> Result<FusionData> {
        let whole = group.whole();
        let sylow = sylow_subgroup(&group, &whole, p);
        FusionData::with_sylow(group, p, sylow)
    }

    pub fn with_sylow(group: Arc<PermGroup>, p: u32, sylow: Subgroup) -> Result<FusionData> {
        let g = &*group;
        let whole = g.whole();
        let subgroups = all_subgroups(g, &sylow, p, DEFAULT_SUBGROUP_CAP)?;
        let index: HashMap<Subgroup, usize> = subgroups.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect();
        let n = subgroups.len();

        let mut class_of = vec![usize::MAX; n];
        let mut members_of: Vec<Vec<usize>> = Vec::new();
        let mut normalizers: Vec<Option<Subgroup>> = vec![None; n];
        for i in 0..n {
            if class_of[i] != usize::MAX {
                continue;
            }
            let c = members_of.len();
            let norm = g.normalizer(&whole, &subgroups[i]);
            let mut members = Vec::new();
            for x in g.left_coset_reps(&whole, &norm) {
                let q = g.conjugate(x, &subgroups[i]);
                if q.is_subgroup_of(&sylow) {
                    let j = index[&q];
                    if class_of[j] == usize::MAX {
                        class_of[j] = c;
                        members.push(j);
                    }
                }
            }
            members.sort_unstable();
            normalizers[i] = Some(norm);
            members_of.push(members);
        }

        let mut info: Vec<Option<SubgroupInfo>> = vec![None; n];
        let mut classes = Vec::with_capacity(members_of.len());
        for (c, members) in members_of.into_iter().enumerate() {
            let first = members[0];
            let mut local: Vec<(usize, Subgroup, Subgroup, usize)> = Vec::new();
            for &j in &members {
                let norm = normalizers[j].take().unwrap_or_else(|| g.normalizer(&whole, &subgroups[j]));
                let cent = g.centralizer(&whole, &subgroups[j]);
                let ns = norm.elements().iter().filter(|&&x| sylow.contains(x)).count();
                local.push((j, norm, cent, ns));
            }
            let best = local.iter().map(|t| t.3).max().unwrap();
            let representative = local.iter().find(|t| t.3 == best).unwrap().0;
            let (_, norm, cent, _) = local.iter().find(|t| t.0 == first).unwrap();
            let pp = &subgroups[first];
            let z = cent.elements().iter().filter(|&&x| pp.contains(x)).count();
            let centric = z == p_part(cent.order(), p);
            let quasicentric = o_upper_p(g, cent, p).order() % p as usize != 0;
            let pc = g.product(pp, cent);
            let out = Quotient::new(g, norm, &pc)?.group;
            let out_whole = out.whole();
            let radical = o_p(&out, &out_whole, p).is_trivial();
            let spe = has_strongly_p_embedded(&out, &out_whole, p);
            if spe {
                let w = strongly_p_embedded_witness(&out, &out_whole, p).expect("witness exists");
                debug_assert!(is_strongly_p_embedded(&out, &out_whole, &w, p));
            }
            let aut_order = norm.order() / cent.order();
            let out_order = out.order();
            for (j, norm, cent, ns) in local {
                let fully_normalized = ns == best;
                let essential = j != n - 1 && centric && fully_normalized && spe;
                info[j] = Some(SubgroupInfo {
                    flags: Flags { centric, radical, quasicentric, essential, fully_normalized },
                    class: c,
                    normalizer: norm,
                    centralizer: cent,
                    normalizer_in_s: ns,
                    aut_order,
                    out_order,
                });
            }
            classes.push(FusionClass { members, representative });
        }
        let info = info.into_iter().map(|x| x.expect("every subgroup classified")).collect();
        Ok(FusionData { group, p, sylow, subgroups, index, info, classes })
    }

    pub fn group(&self) -> &Arc<PermGroup> {
        &self.group
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn sylow(&self) -> &Subgroup {
        &self.sylow
    }

    /// All subgroups of `S`, by order and then canonically; `S` is last.
    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn index_of(&self, p: &Subgroup) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn sylow_index(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn info(&self, i: usize) -> &SubgroupInfo {
        &self.info[i]
    }

    pub fn flags(&self, i: usize) -> Flags {
        self.info[i].flags
    }

    pub fn classes(&self) -> &[FusionClass] {
        &self.classes
    }

    pub fn class_of(&self, i: usize) -> usize {
        self.info[i].class
    }

    /// Representative of the class of subgroup `i`.
    pub fn representative(&self, i: usize) -> usize {
        self.classes[self.info[i].class].representative
    }

    pub fn classify_subgroup(&self, p: &Subgroup) -> Option<Flags> {
        self.index_of(p).map(|i| self.flags(i))
    }

    /// `T_G(P,Q)`.
    pub fn transporter(&self, p: &Subgroup, q: &Subgroup) -> Vec<Elt> {
        self.group.transporter(&self.group.whole(), p, q)
    }

    /// One morphism per class of `T_G(P,Q)` modulo `C_G(P)`, lifted by the
    /// smallest element of the class.
    pub fn hom_f(&self, p: usize, q: usize) -> Vec<FusionMorphism> {
        let g = &*self.group;
        let src = &self.subgroups[p];
        let cent = &self.info[p].centralizer;
        let mut seen = crate::perm::Bits::new(g.order());
        let mut out = Vec::new();
        for x in self.transporter(src, &self.subgroups[q]) {
            if seen.contains(x) {
                continue;
            }
            for &c in cent.elements() {
                seen.insert(g.mul(x, c));
            }
            out.push(FusionMorphism { lift: x, images: src.elements().iter().map(|&y| g.conj(x, y)).collect() });
        }
        out
    }

    /// `Aut_F(P)` acting on the elements of `P`.
    pub fn automizer(&self, i: usize) -> Result<AutomizerData> {
        let g = &*self.group;
        let pp = &self.subgroups[i];
        let elems = pp.elements();
        let pos: HashMap<Elt, usize> = elems.iter().enumerate().map(|(k, &x)| (x, k)).collect();
        let act = |n: Elt| -> Perm {
            Perm::from_images(elems.iter().map(|&y| pos[&g.conj(n, y)]).collect()).expect("conjugation permutes P")
        };
        let norm = &self.info[i].normalizer;
        let gens: Vec<Perm> = norm.gens().iter().map(|&n| act(n)).collect();
        let aut = PermGroup::new(elems.len(), gens)?;
        let mut lifts = vec![u32::MAX; aut.order()];
        for &n in norm.elements() {
            let a = aut.index_of(&act(n)).expect("image in Aut");
            if lifts[a as usize] == u32::MAX {
                lifts[a as usize] = n;
            }
        }
        let inn_gens: Vec<Elt> = pp.gens().iter().map(|&x| aut.index_of(&act(x)).unwrap()).collect();
        let inn = aut.closure(&inn_gens);
        let out = Quotient::new(&aut, &aut.whole(), &inn)?.group;
        let opprime = o_upper_pprime(&aut, &aut.whole(), self.p);
        Ok(AutomizerData { aut, inn, out, opprime, lifts })
    }

    /// Fully normalized representatives of the essential classes.
    pub fn essential_subgroups(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.representative).filter(|&r| self.flags(r).essential).collect()
    }

    /// Indices of the subgroups in a collection, increasing.
    pub fn collection(&self, kind: CollectionKind) -> Vec<usize> {
        let n = self.subgroups.len();
        match kind {
            CollectionKind::All => (0..n).collect(),
            CollectionKind::Centric => (0..n).filter(|&i| self.flags(i).centric).collect(),
            CollectionKind::Quasicentric => (0..n).filter(|&i| self.flags(i).quasicentric).collect(),
            CollectionKind::Cr => {
                let cr: Vec<usize> = (0..n).filter(|&i| self.flags(i).centric && self.flags(i).radical).collect();
                (0..n).filter(|&i| cr.iter().any(|&j| self.subgroups[j].is_subgroup_of(&self.subgroups[i]))).collect()
            }
            CollectionKind::Constrained => {
                let g = &*self.group;
                let op = o_p(g, &g.whole(), self.p);
                (0..n).filter(|&i| op.is_subgroup_of(&self.subgroups[i])).collect()
            }
        }
    }

    /// Checks closure under `F`-conjugacy and overgroups.
    pub fn validate_collection(&self, members: &[usize]) -> Result<()> {
        let set: std::collections::HashSet<usize> = members.iter().copied().collect();
        for &i in members {
            for &j in &self.classes[self.class_of(i)].members {
                if !set.contains(&j) {
                    return Err(Error::InvalidCollection(format!("not closed under conjugacy at subgroup {j}")));
                }
            }
            for (j, q) in self.subgroups.iter().enumerate() {
                if !set.contains(&j) && self.subgroups[i].is_subgroup_of(q) {
                    return Err(Error::InvalidCollection(format!("not closed under overgroups at subgroup {j}")));
                }
            }
        }
        Ok(())
    }

    /// The family `{S} ∪ {P : O_p(N_G(P)) = P and P is M-essential}`.
    pub fn grodal_family(&self, m: &GModule) -> Vec<usize> {
        let g = &*self.group;
        let mut out: Vec<usize> = m_essential_subgroups(self, m)
            .into_iter()
            .filter(|&i| {
                let norm = &self.info[i].normalizer;
                o_p(g, norm, self.p) == self.subgroups[i]
            })
            .collect();
        let s = self.sylow_index();
        if !out.contains(&s) {
            out.push(s);
        }
        out.sort_unstable();
        out
    }
}
