use super::{Elt, PermGroup, Subgroup};

/// A homomorphism from a subgroup of one ambient group into another,
/// stored as an explicit element map.
#[derive(Clone, Debug)]
pub struct GroupHom {
    /// Source elements (ambient indices, sorted).
    pub source: Vec<Elt>,
    /// Image of each source element, aligned with `source`.
    pub images: Vec<Elt>,
}

impl GroupHom {
    /// Extends generator images to the whole source by breadth-first
    /// multiplication; returns `None` if the assignment is not well defined.
    pub fn from_generators(
        src: &PermGroup,
        h: &Subgroup,
        dst: &PermGroup,
        gen_images: &[Elt],
    ) -> Option<GroupHom> {
        let gens = h.gens();
        assert_eq!(gens.len(), gen_images.len());
        let mut img = vec![u32::MAX; src.order()];
        img[0] = 0;
        let mut queue = vec![0u32];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (k, &g) in gens.iter().enumerate() {
                let y = src.mul(g, x);
                let v = dst.mul(gen_images[k], img[x as usize]);
                if img[y as usize] == u32::MAX {
                    img[y as usize] = v;
                    queue.push(y);
                } else if img[y as usize] != v {
                    return None;
                }
            }
            i += 1;
        }
        let source = h.elements().to_vec();
        let images = source.iter().map(|&x| img[x as usize]).collect();
        let hom = GroupHom { source, images };
        hom.is_homomorphism(src, dst).then_some(hom)
    }

    pub fn apply(&self, x: Elt) -> Elt {
        let i = self.source.binary_search(&x).expect("element of the source");
        self.images[i]
    }

    /// Full multiplication-table check.
    pub fn is_homomorphism(&self, src: &PermGroup, dst: &PermGroup) -> bool {
        self.source.iter().enumerate().all(|(i, &a)| {
            self.source.iter().enumerate().all(|(j, &b)| {
                let ab = src.mul(a, b);
                match self.source.binary_search(&ab) {
                    Ok(k) => self.images[k] == dst.mul(self.images[i], self.images[j]),
                    Err(_) => false,
                }
            })
        })
    }

    pub fn kernel(&self) -> Vec<Elt> {
        self.source.iter().zip(&self.images).filter(|(_, &y)| y == 0).map(|(&x, _)| x).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }
}
