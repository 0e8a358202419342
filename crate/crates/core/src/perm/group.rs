use super::{Bits, Perm};
use crate::error::{Error, Result};
use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

/// Index of an element in the canonical element list of its group.
pub type Elt = u32;

pub const DEFAULT_ORDER_CAP: usize = 1_000_000;
const TABLE_LIMIT: usize = 2048;

/// A finite permutation group with its canonically ordered element list.
///
/// Elements are sorted lexicographically by image tuple, so the identity is
/// always element `0`.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, Elt>,
    inverses: Vec<Elt>,
    gen_elts: Vec<Elt>,
    table: Option<Vec<Elt>>,
    orders: OnceLock<Vec<u32>>,
    tree: OnceLock<(Vec<Elt>, Vec<usize>)>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<PermGroup> {
        Self::with_cap(degree, generators, DEFAULT_ORDER_CAP)
    }

    pub fn with_cap(degree: usize, generators: Vec<Perm>, cap: usize) -> Result<PermGroup> {
        let degree = degree.max(1);
        let generators: Vec<Perm> = generators
            .into_iter()
            .map(|g| {
                if g.degree() > degree {
                    Err(Error::MalformedPermutation(format!("{g} moves points beyond {degree}")))
                } else {
                    Ok(g.extend_to(degree))
                }
            })
            .collect::<Result<_>>()?;
        let id = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        seen.insert(id.clone(), ());
        let mut queue = VecDeque::from([id]);
        let mut elements = Vec::new();
        while let Some(x) = queue.pop_front() {
            for g in &generators {
                let y = g.compose(&x);
                if !seen.contains_key(&y) {
                    if seen.len() >= cap {
                        return Err(Error::OrderCapExceeded { cap });
                    }
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
            elements.push(x);
        }
        elements.sort();
        let index: HashMap<Perm, Elt> =
            elements.iter().enumerate().map(|(i, p)| (p.clone(), i as Elt)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let gen_elts = generators.iter().map(|g| index[g]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = Vec::with_capacity(n * n);
            for a in &elements {
                for b in &elements {
                    t.push(index[&a.compose(b)]);
                }
            }
            t
        });
        Ok(PermGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            gen_elts,
            table,
            orders: OnceLock::new(),
            tree: OnceLock::new(),
        })
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    /// Generators as element indices.
    pub fn gens(&self) -> &[Elt] {
        &self.gen_elts
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn perm(&self, x: Elt) -> &Perm {
        &self.elements[x as usize]
    }

    pub fn index_of(&self, p: &Perm) -> Option<Elt> {
        if p.degree() == self.degree {
            self.index.get(p).copied()
        } else {
            self.index.get(&p.extend_to(self.degree)).copied()
        }
    }

    pub fn identity(&self) -> Elt {
        0
    }

    #[inline]
    pub fn mul(&self, a: Elt, b: Elt) -> Elt {
        match &self.table {
            Some(t) => t[a as usize * self.elements.len() + b as usize],
            None => self.index[&self.elements[a as usize].compose(&self.elements[b as usize])],
        }
    }

    #[inline]
    pub fn inv(&self, a: Elt) -> Elt {
        self.inverses[a as usize]
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: Elt, x: Elt) -> Elt {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, x: Elt, k: u64) -> Elt {
        let mut r = 0;
        let mut b = x;
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                r = self.mul(r, b);
            }
            b = self.mul(b, b);
            k >>= 1;
        }
        r
    }

    pub fn element_order(&self, x: Elt) -> u32 {
        self.orders.get_or_init(|| {
            (0..self.order() as Elt)
                .map(|x| {
                    let mut k = 1;
                    let mut y = x;
                    while y != 0 {
                        y = self.mul(y, x);
                        k += 1;
                    }
                    k
                })
                .collect()
        })[x as usize]
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted(self, (0..self.order() as Elt).collect(), self.gen_elts.clone())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(self, vec![0], vec![])
    }

    /// Subgroup generated by the given elements.
    pub fn closure(&self, gens: &[Elt]) -> Subgroup {
        let mut gens: Vec<Elt> = gens.iter().copied().filter(|&g| g != 0).collect();
        gens.sort_unstable();
        gens.dedup();
        let mut bits = Bits::new(self.order());
        bits.insert(0);
        let mut elems = vec![0];
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in &gens {
                let y = self.mul(g, x);
                if bits.insert(y) {
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Subgroup { elems, bits, gens }
    }

    /// Subgroup whose element set is `elems` (which must be closed).
    pub fn subgroup_from_elements(&self, mut elems: Vec<Elt>) -> Subgroup {
        elems.sort_unstable();
        elems.dedup();
        let gens = self.greedy_generators(&elems);
        Subgroup::from_sorted(self, elems, gens)
    }

    fn greedy_generators(&self, sorted: &[Elt]) -> Vec<Elt> {
        let mut gens = Vec::new();
        let mut cur = self.trivial();
        for &x in sorted {
            if cur.elems.len() == sorted.len() {
                break;
            }
            if !cur.contains(x) {
                gens.push(x);
                cur = self.closure(&gens);
            }
        }
        gens
    }

    /// Checks that `elems` is closed under multiplication.
    pub fn is_closed(&self, elems: &[Elt]) -> bool {
        let mut bits = Bits::new(self.order());
        for &x in elems {
            bits.insert(x);
        }
        elems.iter().all(|&a| elems.iter().all(|&b| bits.contains(self.mul(a, b))))
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut g = a.gens.clone();
        g.extend_from_slice(&b.gens);
        self.closure(&g)
    }

    pub fn intersection(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let elems: Vec<Elt> = a.elems.iter().copied().filter(|&x| b.contains(x)).collect();
        let gens = self.greedy_generators(&elems);
        Subgroup::from_sorted(self, elems, gens)
    }

    /// `g P g⁻¹`.
    pub fn conjugate(&self, g: Elt, p: &Subgroup) -> Subgroup {
        let mut elems: Vec<Elt> = p.elems.iter().map(|&x| self.conj(g, x)).collect();
        elems.sort_unstable();
        let gens = p.gens.iter().map(|&x| self.conj(g, x)).collect();
        Subgroup::from_sorted(self, elems, gens)
    }

    /// Whether `g P g⁻¹ ≤ Q`.
    pub fn conjugates_into(&self, g: Elt, p: &Subgroup, q: &Subgroup) -> bool {
        p.gens.iter().all(|&x| q.contains(self.conj(g, x)))
    }

    /// `N_H(P)`.
    pub fn normalizer(&self, h: &Subgroup, p: &Subgroup) -> Subgroup {
        let elems = h.elems.iter().copied().filter(|&x| self.conjugates_into(x, p, p)).collect();
        self.subgroup_from_elements(elems)
    }

    /// `C_H(P)`.
    pub fn centralizer(&self, h: &Subgroup, p: &Subgroup) -> Subgroup {
        let elems = h
            .elems
            .iter()
            .copied()
            .filter(|&x| p.gens.iter().all(|&y| self.mul(x, y) == self.mul(y, x)))
            .collect();
        self.subgroup_from_elements(elems)
    }

    pub fn center(&self, p: &Subgroup) -> Subgroup {
        self.centralizer(p, p)
    }

    /// `T_H(P, Q) = {h ∈ H : h P h⁻¹ ≤ Q}`.
    pub fn transporter(&self, h: &Subgroup, p: &Subgroup, q: &Subgroup) -> Vec<Elt> {
        h.elems.iter().copied().filter(|&x| self.conjugates_into(x, p, q)).collect()
    }

    pub fn is_normal_in(&self, n: &Subgroup, h: &Subgroup) -> bool {
        n.is_subgroup_of(h) && h.gens.iter().all(|&g| self.conjugates_into(g, n, n))
    }

    /// Smallest normal subgroup of `H` containing `X`.
    pub fn normal_closure(&self, h: &Subgroup, x: &Subgroup) -> Subgroup {
        let mut gens = x.gens.clone();
        let mut cur = self.closure(&gens);
        loop {
            let mut added = false;
            for &g in &h.gens {
                for k in 0..cur.gens.len() {
                    let c = self.conj(g, cur.gens[k]);
                    if !cur.contains(c) {
                        gens.push(c);
                        cur = self.closure(&gens);
                        added = true;
                    }
                }
            }
            if !added {
                return cur;
            }
        }
    }

    /// Product set `A·B` as a sorted element list.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> Vec<Elt> {
        let mut bits = Bits::new(self.order());
        for &x in &a.elems {
            for &y in &b.elems {
                bits.insert(self.mul(x, y));
            }
        }
        bits.iter().collect()
    }

    /// Subgroup `A·B`, valid when one factor normalizes the other.
    pub fn product(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut g = a.gens.clone();
        g.extend_from_slice(&b.gens);
        let elems = self.product_set(a, b);
        let mut gens = g;
        gens.retain(|&x| x != 0);
        gens.sort_unstable();
        gens.dedup();
        Subgroup::from_sorted(self, elems, gens)
    }

    /// Left coset representatives of `K` in `H` (minimal element of each coset).
    pub fn left_coset_reps(&self, h: &Subgroup, k: &Subgroup) -> Vec<Elt> {
        let mut seen = Bits::new(self.order());
        let mut reps = Vec::new();
        for &x in &h.elems {
            if seen.contains(x) {
                continue;
            }
            reps.push(x);
            for &y in &k.elems {
                seen.insert(self.mul(x, y));
            }
        }
        reps
    }

    /// Right coset representatives of `K` in `H` (minimal element of each coset `Kx`).
    pub fn right_coset_reps(&self, h: &Subgroup, k: &Subgroup) -> Vec<Elt> {
        let mut seen = Bits::new(self.order());
        let mut reps = Vec::new();
        for &x in &h.elems {
            if seen.contains(x) {
                continue;
            }
            reps.push(x);
            for &y in &k.elems {
                seen.insert(self.mul(y, x));
            }
        }
        reps
    }

    /// Expresses `x` as a word in the generators (indices into `gens()`),
    /// with letters applied right to left: `x = g_{w[0]} g_{w[1]} ⋯`.
    pub fn word(&self, x: Elt) -> Vec<usize> {
        let (parent, letter) = self.schreier_tree();
        let mut w = Vec::new();
        let mut y = x;
        while y != 0 {
            let l = letter[y as usize];
            w.push(l);
            y = parent[y as usize];
        }
        w
    }

    /// Breadth-first tree from the identity: `x = gens[letter[x]] · parent[x]`.
    pub fn schreier_tree(&self) -> &(Vec<Elt>, Vec<usize>) {
        self.tree.get_or_init(|| self.build_tree())
    }

    fn build_tree(&self) -> (Vec<Elt>, Vec<usize>) {
        let n = self.order();
        let mut parent = vec![u32::MAX; n];
        let mut letter = vec![usize::MAX; n];
        parent[0] = 0;
        let mut queue = VecDeque::from([0u32]);
        while let Some(x) = queue.pop_front() {
            for (l, &g) in self.gen_elts.iter().enumerate() {
                let y = self.mul(g, x);
                if parent[y as usize] == u32::MAX {
                    parent[y as usize] = x;
                    letter[y as usize] = l;
                    queue.push_back(y);
                }
            }
        }
        (parent, letter)
    }
}

/// A subgroup of an ambient [`PermGroup`], stored as a sorted list of element
/// indices together with a membership bitset and a generating set.
#[derive(Clone)]
pub struct Subgroup {
    elems: Vec<Elt>,
    bits: Bits,
    gens: Vec<Elt>,
}

impl Subgroup {
    pub(crate) fn from_sorted(g: &PermGroup, elems: Vec<Elt>, gens: Vec<Elt>) -> Subgroup {
        let mut bits = Bits::new(g.order());
        for &x in &elems {
            bits.insert(x);
        }
        Subgroup { elems, bits, gens }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[Elt] {
        &self.elems
    }

    pub fn gens(&self) -> &[Elt] {
        &self.gens
    }

    pub fn bits(&self) -> &Bits {
        &self.bits
    }

    #[inline]
    pub fn contains(&self, x: Elt) -> bool {
        self.bits.contains(x)
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn is_trivial(&self) -> bool {
        self.elems.len() == 1
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order() / self.order()
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.elems == other.elems
    }
}
impl Eq for Subgroup {}
impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.elems.hash(state)
    }
}
impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.elems.cmp(&other.elems)
    }
}
impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {}, gens {:?})", self.order(), self.gens)
    }
}
