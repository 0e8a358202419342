//! Built-in groups used by the corpus and the JSON front end.

use super::{Elt, Perm, PermGroup, Subgroup};
use crate::error::{Error, Result};

fn cyc(n: usize, cycles: &[&[usize]]) -> Perm {
    let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.to_vec()).collect();
    Perm::from_cycles(n, &cs).expect("built-in permutation")
}

pub fn symmetric(n: usize) -> Result<PermGroup> {
    if n <= 1 {
        return PermGroup::new(1, vec![]);
    }
    let t = cyc(n, &[&[1, 2]]);
    let c: Vec<usize> = (1..=n).collect();
    PermGroup::new(n, vec![t, cyc(n, &[&c])])
}

pub fn alternating(n: usize) -> Result<PermGroup> {
    if n <= 2 {
        return PermGroup::new(n.max(1), vec![]);
    }
    if n == 4 {
        return PermGroup::new(4, vec![cyc(4, &[&[1, 2, 3]]), cyc(4, &[&[1, 2], &[3, 4]])]);
    }
    let gens = (3..=n).map(|k| cyc(n, &[&[1, 2, k]])).collect();
    PermGroup::new(n, gens)
}

pub fn cyclic(n: usize) -> Result<PermGroup> {
    if n <= 1 {
        return PermGroup::new(1, vec![]);
    }
    let c: Vec<usize> = (1..=n).collect();
    PermGroup::new(n, vec![cyc(n, &[&c])])
}

/// Dihedral group of order `2m` on `m` points.
pub fn dihedral(order: usize) -> Result<PermGroup> {
    let m = order / 2;
    if order % 2 != 0 || m < 2 {
        return Err(Error::Parse(format!("no dihedral group of order {order}")));
    }
    if m == 2 {
        return PermGroup::new(4, vec![cyc(4, &[&[1, 2]]), cyc(4, &[&[3, 4]])]);
    }
    let r: Vec<usize> = (1..=m).collect();
    let refl: Vec<Vec<usize>> = (1..=m / 2).map(|i| vec![i + 1, m + 1 - i]).filter(|c| c[0] < c[1]).collect();
    let refl = Perm::from_cycles(m, &refl)?;
    PermGroup::new(m, vec![cyc(m, &[&r]), refl])
}

/// Quaternion group in its regular representation on 8 points.
pub fn quaternion() -> Result<PermGroup> {
    // element (s, u): sign s ∈ {0,1}, unit u ∈ {1,i,j,k} as 0..3; index 4s+u
    let unit_mul = |a: usize, b: usize| -> (usize, usize) {
        match (a, b) {
            (0, x) | (x, 0) => (0, x),
            (x, y) if x == y => (1, 0),
            (1, 2) => (0, 3),
            (2, 3) => (0, 1),
            (3, 1) => (0, 2),
            (2, 1) => (1, 3),
            (3, 2) => (1, 1),
            (1, 3) => (1, 2),
            _ => unreachable!(),
        }
    };
    let left = |a: usize| -> Perm {
        let imgs = (0..8)
            .map(|x| {
                let (s, u) = unit_mul(a, x % 4);
                ((x / 4 + s) % 2) * 4 + u
            })
            .collect();
        Perm::from_images(imgs).unwrap()
    };
    PermGroup::new(8, vec![left(1), left(2)])
}

/// `SL(2,3)` acting on the eight nonzero vectors of `F_3^2`.
pub fn sl23() -> Result<PermGroup> {
    let vecs: Vec<(u32, u32)> =
        (0..3).flat_map(|a| (0..3).map(move |b| (a, b))).filter(|&v| v != (0, 0)).collect();
    let act = |m: [[u32; 2]; 2]| -> Perm {
        let imgs = vecs
            .iter()
            .map(|&(a, b)| {
                let w = ((m[0][0] * a + m[0][1] * b) % 3, (m[1][0] * a + m[1][1] * b) % 3);
                vecs.iter().position(|&v| v == w).unwrap()
            })
            .collect();
        Perm::from_images(imgs).unwrap()
    };
    PermGroup::new(8, vec![act([[1, 1], [0, 1]]), act([[0, 2], [1, 0]])])
}

/// Direct product on disjoint point sets, with generator embeddings.
pub fn direct_product(factors: &[&PermGroup]) -> Result<(PermGroup, Vec<Vec<Perm>>)> {
    let n: usize = factors.iter().map(|g| g.degree()).sum();
    let mut gens = Vec::new();
    let mut factor_gens = Vec::new();
    let mut offset = 0;
    for g in factors {
        let d = g.degree();
        let mut fg = Vec::new();
        for x in g.generators() {
            let imgs =
                (0..n).map(|i| if i >= offset && i < offset + d { offset + x.apply(i - offset) } else { i }).collect();
            fg.push(Perm::from_images(imgs)?);
        }
        gens.extend(fg.iter().cloned());
        factor_gens.push(fg);
        offset += d;
    }
    Ok((PermGroup::new(n.max(1), gens)?, factor_gens))
}

/// The subgroup generated by permutations given as perms of the ambient degree.
pub fn subgroup_of(g: &PermGroup, gens: &[Perm]) -> Result<Subgroup> {
    let idx: Vec<Elt> =
        gens.iter().map(|x| g.index_of(x).ok_or(Error::NotASubgroup)).collect::<Result<_>>()?;
    Ok(g.closure(&idx))
}

/// Parses the short names accepted in group documents.
pub fn by_name(name: &str) -> Result<PermGroup> {
    let name = name.trim();
    let num = |s: &str| -> Result<usize> {
        s.trim_matches(|c| c == '(' || c == ')')
            .parse()
            .map_err(|_| Error::Parse(format!("unknown group name {name:?}")))
    };
    match name {
        "Q8" => quaternion(),
        "SL(2,3)" | "SL23" => sl23(),
        _ if name.starts_with('S') => symmetric(num(&name[1..])?),
        _ if name.starts_with('A') => alternating(num(&name[1..])?),
        _ if name.starts_with('C') => cyclic(num(&name[1..])?),
        _ if name.starts_with('D') => dihedral(num(&name[1..])?),
        _ => Err(Error::Parse(format!("unknown group name {name:?}"))),
    }
}
