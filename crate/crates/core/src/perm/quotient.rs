use super::{Elt, Perm, PermGroup, Subgroup};
use crate::error::{Error, Result};

/// `H/N` realized as a permutation group on the left cosets of `N`.
#[derive(Debug)]
pub struct Quotient {
    pub group: PermGroup,
    /// Image in `group` of each element of `H`, indexed like `H.elements()`.
    pub image: Vec<Elt>,
    coset_of: Vec<u32>,
}

impl Quotient {
    pub fn new(g: &PermGroup, h: &Subgroup, n: &Subgroup) -> Result<Quotient> {
        if !g.is_normal_in(n, h) {
            return Err(Error::NotNormal);
        }
        let mut coset_of = vec![u32::MAX; g.order()];
        let mut reps = Vec::new();
        for &x in h.elements() {
            if coset_of[x as usize] != u32::MAX {
                continue;
            }
            let id = reps.len() as u32;
            reps.push(x);
            for &y in n.elements() {
                coset_of[g.mul(x, y) as usize] = id;
            }
        }
        let action = |x: Elt| -> Perm {
            let imgs = reps.iter().map(|&r| coset_of[g.mul(x, r) as usize] as usize).collect();
            Perm::from_images(imgs).expect("coset action is a permutation")
        };
        let gens: Vec<Perm> = h.gens().iter().map(|&x| action(x)).collect();
        let group = PermGroup::new(reps.len(), gens)?;
        let image = h
            .elements()
            .iter()
            .map(|&x| group.index_of(&action(x)).expect("image lies in quotient"))
            .collect();
        Ok(Quotient { group, image, coset_of })
    }

    /// Image of an element of `H` (given as an index of the ambient group).
    pub fn map(&self, h: &Subgroup, x: Elt) -> Elt {
        let pos = h.elements().binary_search(&x).expect("element of H");
        self.image[pos]
    }

    /// Coset identifier of an element of `H`.
    pub fn coset(&self, x: Elt) -> u32 {
        self.coset_of[x as usize]
    }
}
