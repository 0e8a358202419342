use super::{ops::p_part, Elt, PermGroup, Subgroup};
use crate::error::{Error, Result};
use std::collections::HashSet;

pub const DEFAULT_SUBGROUP_CAP: usize = 20_000;

/// All subgroups of the p-group `S`, sorted by order and then canonically.
///
/// Layer `k+1` is obtained from layer `k` by adjoining an element of the
/// normalizer whose `p`-th power already lies in the subgroup; every subgroup
/// of order `p^{k+1}` arises this way from any of its index-`p` subgroups.
pub fn all_subgroups(g: &PermGroup, s: &Subgroup, p: u32, cap: usize) -> Result<Vec<Subgroup>> {
    if p_part(s.order(), p) != s.order() {
        return Err(Error::NotAPGroup { p });
    }
    let mut all = vec![g.trivial()];
    let mut layer = vec![g.trivial()];
    while !layer.is_empty() {
        let mut next: Vec<Subgroup> = Vec::new();
        let mut seen: HashSet<Vec<Elt>> = HashSet::new();
        for h in &layer {
            if h.order() == s.order() {
                continue;
            }
            let n = g.normalizer(s, h);
            let mut covered = h.bits().clone();
            for &x in n.elements() {
                if covered.contains(x) || !h.contains(g.pow(x, p as u64)) {
                    continue;
                }
                let mut elems = Vec::with_capacity(h.order() * p as usize);
                let mut xk = 0;
                for _ in 0..p {
                    elems.extend(h.elements().iter().map(|&y| g.mul(xk, y)));
                    xk = g.mul(xk, x);
                }
                for &e in &elems {
                    covered.insert(e);
                }
                elems.sort_unstable();
                if seen.insert(elems.clone()) {
                    let mut gens = h.gens().to_vec();
                    gens.push(x);
                    let k = Subgroup::from_sorted(g, elems, gens);
                    next.push(k);
                    if all.len() + next.len() > cap {
                        return Err(Error::SubgroupCapExceeded { cap });
                    }
                }
            }
        }
        next.sort();
        all.extend(next.iter().cloned());
        layer = next;
    }
    Ok(all)
}
