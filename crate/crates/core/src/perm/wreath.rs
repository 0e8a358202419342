use super::{Elt, Perm, PermGroup, Subgroup};
use crate::error::Result;
use std::sync::Arc;

/// `G_0 ≀ C_p` acting on `p` copies of the domain of `G_0`.
#[derive(Debug)]
pub struct Wreath {
    pub group: Arc<PermGroup>,
    pub p: u32,
    /// Degree of `G_0`.
    pub base_degree: usize,
    /// The base subgroup `G_0^p`.
    pub base: Subgroup,
    /// The diagonal copy of `G_0`.
    pub diagonal: Subgroup,
    /// The cycle permuting the copies.
    pub cycle: Elt,
}

impl Wreath {
    /// Image of `g ∈ G_0` acting on copy `k` only.
    pub fn embed_in_copy(&self, g: &Perm, k: usize) -> Elt {
        let d = self.base_degree;
        let n = d * self.p as usize;
        let imgs = (0..n)
            .map(|i| if i / d == k { k * d + g.apply(i % d) } else { i })
            .collect();
        self.group.index_of(&Perm::from_images(imgs).unwrap()).expect("base element")
    }

    /// Image of `(g_0, …, g_{p-1}) ∈ G_0^p`.
    pub fn embed_tuple(&self, gs: &[Perm]) -> Elt {
        let d = self.base_degree;
        let n = d * self.p as usize;
        let imgs = (0..n).map(|i| (i / d) * d + gs[i / d].apply(i % d)).collect();
        self.group.index_of(&Perm::from_images(imgs).unwrap()).expect("base element")
    }

    pub fn embed_diagonal(&self, g: &Perm) -> Elt {
        let gs = vec![g.clone(); self.p as usize];
        self.embed_tuple(&gs)
    }
}

pub fn wreath_product_cp(g0: &PermGroup, p: u32) -> Result<Wreath> {
    let d = g0.degree();
    let pp = p as usize;
    let n = d * pp;
    let copy = |g: &Perm, k: usize| -> Perm {
        let imgs = (0..n).map(|i| if i / d == k { k * d + g.apply(i % d) } else { i }).collect();
        Perm::from_images(imgs).unwrap()
    };
    let cycle = Perm::from_images((0..n).map(|i| (i + d) % n).collect()).unwrap();
    let mut gens: Vec<Perm> = g0.generators().iter().map(|g| copy(g, 0)).collect();
    gens.push(cycle.clone());
    let group = Arc::new(PermGroup::new(n, gens)?);
    let base_gens: Vec<Elt> = (0..pp)
        .flat_map(|k| g0.generators().iter().map(move |g| (g, k)))
        .map(|(g, k)| group.index_of(&copy(g, k)).unwrap())
        .collect();
    let diag_gens: Vec<Elt> = g0
        .generators()
        .iter()
        .map(|g| {
            let imgs = (0..n).map(|i| (i / d) * d + g.apply(i % d)).collect();
            group.index_of(&Perm::from_images(imgs).unwrap()).unwrap()
        })
        .collect();
    let base = group.closure(&base_gens);
    let diagonal = group.closure(&diag_gens);
    let cycle = group.index_of(&cycle).unwrap();
    Ok(Wreath { group, p, base_degree: d, base, diagonal, cycle })
}
