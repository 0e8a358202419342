use super::FusionData;
use crate::error::{Error, Result};
use crate::perm::{o_p, o_upper_p, p_part, sylow_subgroup, Bits, PermGroup, Quotient, Subgroup};
use std::sync::Arc;

impl FusionData {
    /// `Q ⊴ F` for `Q ⊴ S`: every `c_g` with `g ∈ T_G(P,S)` agrees on `P`
    /// with some `c_n`, `n ∈ N_G(Q)`, so it extends to `PQ`.
    pub fn normal_in_f(&self, q: &Subgroup) -> bool {
        let g = &*self.group;
        if !q.is_subgroup_of(&self.sylow) || !g.is_normal_in(q, &self.sylow) {
            return false;
        }
        let whole = g.whole();
        let nq = g.normalizer(&whole, q);
        for (i, pp) in self.subgroups.iter().enumerate() {
            let cent = &self.info[i].centralizer;
            let mut ok = Bits::new(g.order());
            for &n in nq.elements() {
                for &c in cent.elements() {
                    ok.insert(g.mul(n, c));
                }
            }
            if self.transporter(pp, &self.sylow).into_iter().any(|x| !ok.contains(x)) {
                return false;
            }
        }
        true
    }

    /// `O_p(F)`: the largest subgroup normal in `F`.
    pub fn op_of_f(&self) -> Subgroup {
        let g = &*self.group;
        self.subgroups
            .iter()
            .rev()
            .filter(|q| g.is_normal_in(q, &self.sylow))
            .find(|q| self.normal_in_f(q))
            .cloned()
            .unwrap_or_else(|| g.trivial())
    }

    pub fn is_constrained(&self) -> bool {
        let q = self.op_of_f();
        self.index_of(&q).map(|i| self.flags(i).centric).unwrap_or(false)
    }
}

/// A model `N_G(Q)/O^p(C_G(Q))` for `Q = O_p(F)` with its three checks.
#[derive(Debug)]
pub struct ModelReport {
    pub group: Arc<PermGroup>,
    pub op_order: usize,
    /// The Sylow subgroup of the model has order `|S|`.
    pub sylow_order_matches: bool,
    /// `C(O_p) ≤ O_p` in the model.
    pub self_centralizing: bool,
    /// Number of subgroups and of conjugacy classes of the model's fusion
    /// system agree with `F`.
    pub class_counts_match: bool,
    pub class_counts: (usize, usize),
}

impl ModelReport {
    pub fn passes(&self) -> bool {
        self.sylow_order_matches && self.self_centralizing && self.class_counts_match
    }
}

pub fn model_of(f: &FusionData) -> Result<ModelReport> {
    let q = f.op_of_f();
    let qi = f.index_of(&q).ok_or(Error::NotConstrained)?;
    if !f.flags(qi).centric {
        return Err(Error::NotConstrained);
    }
    let g = f.group();
    let p = f.p();
    let norm = &f.info(qi).normalizer;
    let cent = &f.info(qi).centralizer;
    let kill = o_upper_p(g, cent, p);
    let model = Arc::new(Quotient::new(g, norm, &kill)?.group);
    let whole = model.whole();
    let ms = sylow_subgroup(&model, &whole, p);
    let sylow_order_matches = ms.order() == f.sylow().order() && p_part(model.order(), p) == ms.order();
    let op = o_p(&model, &whole, p);
    let self_centralizing = model.centralizer(&whole, &op).is_subgroup_of(&op);
    let mf = FusionData::with_sylow(model.clone(), p, ms)?;
    let class_counts = (f.classes().len(), mf.classes().len());
    let class_counts_match = class_counts.0 == class_counts.1 && f.subgroups().len() == mf.subgroups().len();
    Ok(ModelReport {
        group: model,
        op_order: q.order(),
        sylow_order_matches,
        self_centralizing,
        class_counts_match,
        class_counts,
    })
}
