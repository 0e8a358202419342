//! Finite permutation groups enumerated element by element.

mod bits;
mod group;
mod hom;
mod lattice;
pub mod named;
mod ops;
mod quotient;
mod wreath;

pub use bits::Bits;
pub use group::{Elt, PermGroup, Subgroup, DEFAULT_ORDER_CAP};
pub use hom::GroupHom;
pub use lattice::{all_subgroups, DEFAULT_SUBGROUP_CAP};
pub use ops::{
    has_strongly_p_embedded, is_p_solvable, o_p, o_pprime, o_upper_p, o_upper_pprime, is_strongly_p_embedded, is_prime, p_part, p_subgroup_components,
    residuals, strongly_p_embedded_witness, sylow_subgroup, Residuals,
};
pub use quotient::Quotient;
pub use wreath::{wreath_product_cp, Wreath};

use crate::error::{Error, Result};
use std::fmt;

/// A permutation of `0..n` stored as its image tuple.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Box<[u16]>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n as u16).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::MalformedPermutation(format!("{images:?} is not a bijection")));
            }
            seen[i] = true;
        }
        if n > u16::MAX as usize {
            return Err(Error::MalformedPermutation("degree too large".into()));
        }
        Ok(Perm(images.into_iter().map(|i| i as u16).collect()))
    }

    /// Builds a permutation of `1..=n` from disjoint cycles of 1-based points.
    pub fn from_cycles(n: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut img: Vec<usize> = (0..n).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for &x in cyc {
                if x == 0 || x > n {
                    return Err(Error::MalformedPermutation(format!(
                        "point {x} outside 1..{n}"
                    )));
                }
                if touched[x - 1] {
                    return Err(Error::MalformedPermutation(format!(
                        "point {x} repeated in cycles {cycles:?}"
                    )));
                }
                touched[x - 1] = true;
            }
            for (k, &x) in cyc.iter().enumerate() {
                img[x - 1] = cyc[(k + 1) % cyc.len()] - 1;
            }
        }
        Perm::from_images(img)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u16] {
        &self.0
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.0[i] as usize
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        Perm(other.0.iter().map(|&i| self.0[i as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u16; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j as usize] = i as u16;
        }
        Perm(inv.into_boxed_slice())
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Disjoint cycles of length at least two, 1-based.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for s in 0..n {
            if seen[s] || self.apply(s) == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x + 1);
                x = self.apply(x);
            }
            out.push(cyc);
        }
        out
    }

    /// Pads the permutation with fixed points up to degree `n`.
    pub fn extend_to(&self, n: usize) -> Perm {
        let mut v: Vec<u16> = self.0.to_vec();
        v.extend(self.0.len() as u16..n as u16);
        Perm(v.into_boxed_slice())
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
