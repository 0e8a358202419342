use super::{Bits, Elt, PermGroup, Quotient, Subgroup};

pub fn is_prime(p: u32) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: usize, p: u32) -> usize {
    let p = p as usize;
    let mut m = n;
    let mut r = 1;
    while m % p == 0 && m > 0 {
        m /= p;
        r *= p;
    }
    r
}

fn is_p_power(n: usize, p: u32) -> bool {
    p_part(n, p) == n
}

/// Sylow `p`-subgroup of `H`, grown greedily inside successive normalizers.
/// At each step the smallest admissible element (canonical order) is adjoined.
pub fn sylow_subgroup(g: &PermGroup, h: &Subgroup, p: u32) -> Subgroup {
    let target = p_part(h.order(), p);
    let mut t = g.trivial();
    while t.order() < target {
        let n = g.normalizer(h, &t);
        let x = n
            .elements()
            .iter()
            .copied()
            .find(|&x| !t.contains(x) && t.contains(g.pow(x, p as u64)))
            .expect("normalizer of a non-Sylow p-subgroup has a p-element outside it");
        let mut gens = t.gens().to_vec();
        gens.push(x);
        t = g.closure(&gens);
    }
    t
}

/// The four residual subgroups of a group at a prime.
#[derive(Clone, Debug)]
pub struct Residuals {
    /// Largest normal p-subgroup.
    pub o_p: Subgroup,
    /// Smallest normal subgroup with p-group quotient.
    pub o_upper_p: Subgroup,
    /// Smallest normal subgroup with quotient of order prime to p.
    pub o_upper_pprime: Subgroup,
    /// Largest normal subgroup of order prime to p.
    pub o_pprime: Subgroup,
}

pub fn residuals(g: &PermGroup, h: &Subgroup, p: u32) -> Residuals {
    Residuals {
        o_p: o_p(g, h, p),
        o_upper_p: o_upper_p(g, h, p),
        o_upper_pprime: o_upper_pprime(g, h, p),
        o_pprime: o_pprime(g, h, p),
    }
}

fn is_p_element(g: &PermGroup, x: Elt, p: u32) -> bool {
    is_p_power(g.element_order(x) as usize, p)
}

fn is_pprime_element(g: &PermGroup, x: Elt, p: u32) -> bool {
    g.element_order(x) % p != 0
}

/// `O_p(H)`: the core of a Sylow subgroup.
pub fn o_p(g: &PermGroup, h: &Subgroup, p: u32) -> Subgroup {
    let t = sylow_subgroup(g, h, p);
    let elems = t
        .elements()
        .iter()
        .copied()
        .filter(|&x| h.elements().iter().all(|&y| t.contains(g.conj(y, x))))
        .collect();
    g.subgroup_from_elements(elems)
}

/// `O^p(H)`: generated by the elements of order prime to `p`.
pub fn o_upper_p(g: &PermGroup, h: &Subgroup, p: u32) -> Subgroup {
    generated_by(g, h, |x| is_pprime_element(g, x, p))
}

/// `O^{p'}(H)`: generated by the `p`-elements.
pub fn o_upper_pprime(g: &PermGroup, h: &Subgroup, p: u32) -> Subgroup {
    generated_by(g, h, |x| is_p_element(g, x, p))
}

fn generated_by(g: &PermGroup, h: &Subgroup, pred: impl Fn(Elt) -> bool) -> Subgroup {
    let mut gens = Vec::new();
    let mut cur = g.trivial();
    for &x in h.elements() {
        if pred(x) && !cur.contains(x) {
            gens.push(x);
            cur = g.closure(&gens);
        }
    }
    cur
}

/// `O_{p'}(H)`: join of the normal closures that are `p'`-groups.
pub fn o_pprime(g: &PermGroup, h: &Subgroup, p: u32) -> Subgroup {
    let mut cur = g.trivial();
    for &x in h.elements() {
        if cur.contains(x) || !is_pprime_element(g, x, p) {
            continue;
        }
        let nc = g.normal_closure(h, &g.closure(&[x]));
        if nc.order() % p as usize != 0 {
            cur = g.join(&cur, &nc);
        }
    }
    cur
}

/// Upper p-series test: alternately factor out `O_{p'}` and `O_p`.
pub fn is_p_solvable(g: &PermGroup, h: &Subgroup, p: u32) -> bool {
    let q = Quotient::new(g, h, &g.trivial()).expect("trivial subgroup is normal");
    let mut cur = q.group;
    loop {
        if cur.order() == 1 {
            return true;
        }
        let whole = cur.whole();
        let a = o_pprime(&cur, &whole, p);
        let n = if !a.is_trivial() {
            a
        } else {
            let b = o_p(&cur, &whole, p);
            if b.is_trivial() {
                return false;
            }
            b
        };
        cur = Quotient::new(&cur, &whole, &n).expect("characteristic subgroup is normal").group;
    }
}

/// Connected components of the poset of nontrivial `p`-subgroups of `H`,
/// each described by the order-`p` subgroups it contains.
pub fn p_subgroup_components(g: &PermGroup, h: &Subgroup, p: u32) -> Vec<Vec<Subgroup>> {
    if h.order() % p as usize != 0 {
        return Vec::new();
    }
    let t = sylow_subgroup(g, h, p);
    let mut sylows: Vec<Subgroup> = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for &x in h.elements() {
        let c = g.conjugate(x, &t);
        if seen.insert(c.elements().to_vec()) {
            sylows.push(c);
        }
    }
    let mut minimal: Vec<Subgroup> = Vec::new();
    let mut id_of = std::collections::HashMap::new();
    for &x in h.elements() {
        if g.element_order(x) == p {
            let c = g.closure(&[x]);
            if !id_of.contains_key(c.elements()) {
                id_of.insert(c.elements().to_vec(), minimal.len());
                minimal.push(c);
            }
        }
    }
    let mut parent: Vec<usize> = (0..minimal.len()).collect();
    fn find(parent: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while parent[r] != r {
            r = parent[r];
        }
        let mut y = x;
        while parent[y] != r {
            let n = parent[y];
            parent[y] = r;
            y = n;
        }
        r
    }
    for s in &sylows {
        let inside: Vec<usize> = minimal
            .iter()
            .enumerate()
            .filter(|(_, m)| m.is_subgroup_of(s))
            .map(|(i, _)| i)
            .collect();
        for w in inside.windows(2) {
            let a = find(&mut parent, w[0]);
            let b = find(&mut parent, w[1]);
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut comps: std::collections::BTreeMap<usize, Vec<Subgroup>> = Default::default();
    for i in 0..minimal.len() {
        let r = find(&mut parent, i);
        comps.entry(r).or_default().push(minimal[i].clone());
    }
    comps.into_values().collect()
}

/// `H` is strongly p-embedded in `X`: proper, `p` divides `|H|`, and
/// `H ∩ xHx⁻¹` has order prime to `p` for all `x ∉ H`.
pub fn is_strongly_p_embedded(g: &PermGroup, x: &Subgroup, h: &Subgroup, p: u32) -> bool {
    if !h.is_subgroup_of(x) || h.order() == x.order() || h.order() % p as usize != 0 {
        return false;
    }
    let pp = p as usize;
    g.left_coset_reps(x, h).into_iter().filter(|&r| !h.contains(r)).all(|r| {
        let ri = g.inv(r);
        let k = h.elements().iter().filter(|&&y| h.contains(g.mul(g.mul(ri, y), r))).count();
        k % pp != 0
    })
}

/// Whether `X` has a strongly p-embedded subgroup, decided by disconnectedness
/// of the nontrivial p-subgroup poset.
pub fn has_strongly_p_embedded(g: &PermGroup, x: &Subgroup, p: u32) -> bool {
    p_subgroup_components(g, x, p).len() > 1
}

/// A strongly p-embedded subgroup of `X` when one exists: the stabilizer of
/// the poset component containing the canonical Sylow subgroup.
pub fn strongly_p_embedded_witness(g: &PermGroup, x: &Subgroup, p: u32) -> Option<Subgroup> {
    let comps = p_subgroup_components(g, x, p);
    if comps.len() < 2 {
        return None;
    }
    let t = sylow_subgroup(g, x, p);
    let comp = comps.iter().find(|c| c.iter().any(|m| m.is_subgroup_of(&t)))?;
    let mut bits = Bits::new(g.order());
    for m in comp {
        for &e in m.elements() {
            bits.insert(e);
        }
    }
    let stab: Vec<Elt> = x
        .elements()
        .iter()
        .copied()
        .filter(|&y| comp.iter().all(|m| m.gens().iter().all(|&e| bits.contains(g.conj(y, e)))))
        .collect();
    Some(g.subgroup_from_elements(stab))
}
