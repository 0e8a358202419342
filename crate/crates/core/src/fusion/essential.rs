use super::FusionData;
use crate::module::GModule;
use crate::perm::{o_p, p_part, p_subgroup_components, Quotient};
use serde::Serialize;

/// The three conditions defining an `M`-essential subgroup, with `K` the
/// kernel of the action on `M`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MEssentialFlags {
    /// The poset of nontrivial p-subgroups of `N_G(P)/P` is empty or disconnected.
    pub poset: bool,
    /// `Z(P) ∩ K` is Sylow in `C_G(P) ∩ K`.
    pub sylow: bool,
    /// `O_p(N_G(P)/P(C_G(P) ∩ K)) = 1`.
    pub core: bool,
}

impl MEssentialFlags {
    pub fn holds(&self) -> bool {
        self.poset && self.sylow && self.core
    }
}

impl FusionData {
    pub fn m_essential_flags(&self, i: usize, kernel: &crate::perm::Subgroup) -> MEssentialFlags {
        let g = &*self.group;
        let p = self.p;
        let pp = &self.subgroups[i];
        let info = &self.info[i];
        let norm = &info.normalizer;
        let over_p = Quotient::new(g, norm, pp).expect("P is normal in its normalizer").group;
        let poset = p_subgroup_components(&over_p, &over_p.whole(), p).len() != 1;
        let ck = g.intersection(&info.centralizer, kernel);
        let zk = ck.elements().iter().filter(|&&x| pp.contains(x)).count();
        let sylow = zk == p_part(ck.order(), p);
        let pck = g.product(pp, &ck);
        let out = Quotient::new(g, norm, &pck).expect("P(C_G(P) ∩ K) is normal in N_G(P)").group;
        let core = o_p(&out, &out.whole(), p).is_trivial();
        MEssentialFlags { poset, sylow, core }
    }
}

/// Class representatives of the `M`-essential subgroups, increasing.
pub fn m_essential_subgroups(f: &FusionData, m: &GModule) -> Vec<usize> {
    let k = m.kernel();
    let mut out: Vec<usize> =
        f.classes().iter().map(|c| c.representative).filter(|&r| f.m_essential_flags(r, &k).holds()).collect();
    out.sort_unstable();
    out
}
