//! Finite permutation groups stored as explicit element lists, with
//! subgroups as index sets into the parent.

use std::collections::{HashMap, HashSet, VecDeque};

use crate::error::{Error, Result};
use crate::galois::perm::Perm;

const TABLE_LIMIT: usize = 1024;

#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    /// Sorted; the identity is the smallest permutation and sits at index 0.
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl PermGroup {
    /// The group generated by `gens` inside `Sym(degree)`.
    pub fn generate(degree: usize, gens: &[Perm], max_order: usize) -> Result<PermGroup> {
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::invalid(format!("generator degree differs from {degree}")));
        }
        let id = Perm::identity(degree);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.compose(&x);
                if seen.insert(y.clone()) {
                    if seen.len() > max_order {
                        return Err(Error::SizeLimit(format!("group order exceeds {max_order}")));
                    }
                    queue.push_back(y);
                }
            }
        }
        Ok(Self::from_closed_set(degree, seen.into_iter().collect()))
    }

    /// Builds a group from an explicit element list, checking closure.
    pub fn from_elements(elements: Vec<Perm>) -> Result<PermGroup> {
        let degree = elements.first().map(Perm::degree).ok_or_else(|| Error::invalid("empty element list"))?;
        let set: HashSet<Perm> = elements.into_iter().collect();
        if !set.contains(&Perm::identity(degree)) {
            return Err(Error::invalid("element list lacks the identity"));
        }
        for a in &set {
            if a.degree() != degree {
                return Err(Error::invalid("mixed permutation degrees"));
            }
            for b in &set {
                if !set.contains(&a.compose(b)) {
                    return Err(Error::invalid(format!("not closed: {a} * {b}")));
                }
            }
        }
        Ok(Self::from_closed_set(degree, set.into_iter().collect()))
    }

    fn from_closed_set(degree: usize, mut elements: Vec<Perm>) -> PermGroup {
        elements.sort();
        let index: HashMap<Perm, usize> = elements.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();
        let n = elements.len();
        let table = (n <= TABLE_LIMIT).then(|| {
            let mut t = vec![0u32; n * n];
            for (i, a) in elements.iter().enumerate() {
                for (j, b) in elements.iter().enumerate() {
                    t[i * n + j] = index[&a.compose(b)] as u32;
                }
            }
            t
        });
        PermGroup { degree, elements, index, inverses, table }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub const IDENTITY: usize = 0;

    /// Index of `elements[a] ∘ elements[b]`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.elements.len() + b] as usize,
            None => self.index[&self.elements[a].compose(&self.elements[b])],
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g x g^-1`.
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut k = 1;
        let mut x = a;
        while x != Self::IDENTITY {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.order();
        (0..n).all(|a| (0..a).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup::from_sorted((0..self.order()).collect(), self.order())
    }

    pub fn trivial(&self) -> Subgroup {
        Subgroup::from_sorted(vec![Self::IDENTITY], self.order())
    }

    /// Subgroup generated by the given element indices.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let n = self.order();
        let mut mask = vec![false; n];
        mask[Self::IDENTITY] = true;
        let mut queue = VecDeque::from([Self::IDENTITY]);
        let mut elems = vec![Self::IDENTITY];
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !mask[y] {
                    mask[y] = true;
                    elems.push(y);
                    queue.push_back(y);
                }
            }
        }
        elems.sort_unstable();
        Subgroup::from_sorted(elems, n)
    }

    /// Validates that `elems` is a subgroup.
    pub fn subgroup(&self, elems: &[usize]) -> Result<Subgroup> {
        let n = self.order();
        if elems.iter().any(|&e| e >= n) {
            return Err(Error::invalid("element index out of range"));
        }
        let mut sorted = elems.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        let sub = Subgroup::from_sorted(sorted, n);
        if !sub.contains(Self::IDENTITY) {
            return Err(Error::invalid("subset lacks the identity"));
        }
        for &a in sub.elements() {
            for &b in sub.elements() {
                if !sub.contains(self.mul(a, self.inv(b))) {
                    return Err(Error::invalid("subset is not closed under a * b^-1"));
                }
            }
        }
        Ok(sub)
    }

    pub fn subgroup_from_perms(&self, perms: &[Perm]) -> Result<Subgroup> {
        let idx = perms
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::invalid(format!("{p} is not in the group"))))
            .collect::<Result<Vec<_>>>()?;
        self.subgroup(&idx)
    }

    pub fn subgroup_generated_by(&self, perms: &[Perm]) -> Result<Subgroup> {
        let idx = perms
            .iter()
            .map(|p| self.index_of(p).ok_or_else(|| Error::invalid(format!("{p} is not in the group"))))
            .collect::<Result<Vec<_>>>()?;
        Ok(self.closure(&idx))
    }

    /// `g H g^-1`.
    pub fn conjugate(&self, h: &Subgroup, g: usize) -> Subgroup {
        let mut elems: Vec<usize> = h.elements().iter().map(|&x| self.conj(g, x)).collect();
        elems.sort_unstable();
        Subgroup::from_sorted(elems, self.order())
    }

    /// The subgroup as a standalone group on the same points.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> PermGroup {
        Self::from_closed_set(self.degree, h.elements().iter().map(|&i| self.elements[i].clone()).collect())
    }

    /// All subgroups, sorted by order and then by element set.
    ///
    /// Starts from the cyclic subgroups and repeatedly adjoins one element to
    /// each known subgroup until no new subgroup appears.
    pub fn enumerate_subgroups(&self, max_order: usize) -> Result<Vec<Subgroup>> {
        if self.order() > max_order {
            return Err(Error::SizeLimit(format!(
                "subgroup enumeration limited to groups of order <= {max_order} (got {})",
                self.order()
            )));
        }
        let n = self.order();
        let mut known: HashSet<Vec<usize>> = HashSet::new();
        // (subgroup, generators)
        let mut found: Vec<(Subgroup, Vec<usize>)> = Vec::new();
        let mut queue = VecDeque::new();
        for g in 0..n {
            let s = self.closure(&[g]);
            if known.insert(s.elements().to_vec()) {
                found.push((s, vec![g]));
                queue.push_back(found.len() - 1);
            }
        }
        while let Some(k) = queue.pop_front() {
            let (sub, gens) = found[k].clone();
            for g in 0..n {
                if sub.contains(g) {
                    continue;
                }
                let mut next_gens = gens.clone();
                next_gens.push(g);
                let s = self.closure(&next_gens);
                if known.insert(s.elements().to_vec()) {
                    found.push((s, next_gens));
                    queue.push_back(found.len() - 1);
                }
            }
        }
        let mut subs: Vec<Subgroup> = found.into_iter().map(|(s, _)| s).collect();
        subs.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.elements().cmp(b.elements())));
        Ok(subs)
    }

    fn invariants(&self) -> (usize, bool, Vec<usize>) {
        let mut orders: Vec<usize> = (0..self.order()).map(|a| self.element_order(a)).collect();
        orders.sort_unstable();
        (self.order(), self.is_abelian(), orders)
    }

    /// A short list of elements generating the group.
    pub fn small_generating_set(&self) -> Vec<usize> {
        // try elements of large order first
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&a| std::cmp::Reverse(self.element_order(a)));
        let mut gens = Vec::new();
        let mut span = self.trivial();
        for a in by_order {
            if span.order() == self.order() {
                break;
            }
            if !span.contains(a) {
                gens.push(a);
                span = self.closure(&gens);
            }
        }
        gens
    }
}

/// Abstract isomorphism test. Cheap invariants (order, commutativity,
/// element-order multiset) first, then a backtracking search for images of a
/// generating set that extend to a bijective homomorphism.
pub fn is_isomorphic(a: &PermGroup, b: &PermGroup) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if a.invariants() != b.invariants() {
        return false;
    }
    let gens = a.small_generating_set();
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&g| {
            let o = a.element_order(g);
            (0..b.order()).filter(|&h| b.element_order(h) == o).collect()
        })
        .collect();
    let mut images = Vec::with_capacity(gens.len());
    search_images(a, b, &gens, &candidates, &mut images)
}

fn search_images(
    a: &PermGroup,
    b: &PermGroup,
    gens: &[usize],
    candidates: &[Vec<usize>],
    images: &mut Vec<usize>,
) -> bool {
    if images.len() == gens.len() {
        return extends_to_isomorphism(a, b, gens, images);
    }
    for &h in &candidates[images.len()] {
        images.push(h);
        if search_images(a, b, gens, candidates, images) {
            return true;
        }
        images.pop();
    }
    false
}

/// Defines `phi(x * g_i) = phi(x) * h_i` by breadth-first search from the
/// identity and checks that every edge is consistent and `phi` is injective.
fn extends_to_isomorphism(a: &PermGroup, b: &PermGroup, gens: &[usize], images: &[usize]) -> bool {
    let n = a.order();
    let mut phi = vec![usize::MAX; n];
    let mut used = vec![false; b.order()];
    phi[PermGroup::IDENTITY] = PermGroup::IDENTITY;
    used[PermGroup::IDENTITY] = true;
    let mut queue = VecDeque::from([PermGroup::IDENTITY]);
    while let Some(x) = queue.pop_front() {
        for (&g, &h) in gens.iter().zip(images) {
            let y = a.mul(x, g);
            let img = b.mul(phi[x], h);
            if phi[y] == usize::MAX {
                if used[img] {
                    return false;
                }
                used[img] = true;
                phi[y] = img;
                queue.push_back(y);
            } else if phi[y] != img {
                return false;
            }
        }
    }
    phi.iter().all(|&v| v != usize::MAX)
}

/// A subgroup of a [`PermGroup`], as a sorted set of element indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subgroup {
    elems: Vec<usize>,
    mask: Vec<u64>,
}

impl Subgroup {
    fn from_sorted(elems: Vec<usize>, group_order: usize) -> Subgroup {
        let mut mask = vec![0u64; group_order.div_ceil(64)];
        for &e in &elems {
            mask[e / 64] |= 1 << (e % 64);
        }
        Subgroup { elems, mask }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.elems
    }

    pub fn contains(&self, e: usize) -> bool {
        self.mask.get(e / 64).is_some_and(|w| w & (1 << (e % 64)) != 0)
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.mask.iter().zip(&other.mask).all(|(a, b)| a & !b == 0)
    }

    pub fn is_proper_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() < other.order() && self.is_subset_of(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::perm::parse_generators;

    fn group(n: usize, gens: &str) -> PermGroup {
        PermGroup::generate(n, &parse_generators(n, gens).unwrap(), 10_000).unwrap()
    }

    #[test]
    fn orders() {
        assert_eq!(group(3, "(1 2 3)").order(), 3);
        assert_eq!(group(3, "(1 2);(1 2 3)").order(), 6);
        assert_eq!(group(4, "(1 2 3 4);(1 2)").order(), 24);
        assert_eq!(group(5, "").order(), 1);
        assert!(PermGroup::generate(6, &parse_generators(6, "(1 2 3 4 5 6);(1 2)").unwrap(), 100).is_err());
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(group(6, "(1 2 3 4 5 6)").enumerate_subgroups(100).unwrap().len(), 4);
        let s3 = group(3, "(1 2);(1 2 3)").enumerate_subgroups(100).unwrap();
        assert_eq!(s3.iter().map(Subgroup::order).collect::<Vec<_>>(), vec![1, 2, 2, 2, 3, 6]);
        assert_eq!(group(4, "(1 2)(3 4);(1 3)(2 4)").enumerate_subgroups(100).unwrap().len(), 5);
        // S4 has 30 subgroups, D4 has 10, Q8 (regular rep) has 6
        assert_eq!(group(4, "(1 2 3 4);(1 2)").enumerate_subgroups(100).unwrap().len(), 30);
        assert_eq!(group(4, "(1 2 3 4);(1 3)").enumerate_subgroups(100).unwrap().len(), 10);
        let q8 = group(8, "(1 2 4 7)(3 6 8 5);(1 3 4 8)(2 5 7 6)");
        assert_eq!(q8.order(), 8);
        assert_eq!(q8.enumerate_subgroups(100).unwrap().len(), 6);
    }

    #[test]
    fn subgroup_validation() {
        let g = group(3, "(1 2);(1 2 3)");
        let t = g.index_of(&Perm::parse_cycles(3, "(1 2)").unwrap()).unwrap();
        assert!(g.subgroup(&[0, t]).is_ok());
        assert!(g.subgroup(&[t]).is_err());
        let c = g.index_of(&Perm::parse_cycles(3, "(1 2 3)").unwrap()).unwrap();
        assert!(g.subgroup(&[0, c]).is_err());
    }

    #[test]
    fn isomorphism() {
        let c4 = group(4, "(1 2 3 4)");
        let v4 = group(4, "(1 2)(3 4);(1 3)(2 4)");
        let c4_other = group(8, "(1 2 3 4)(5 6 7 8)");
        assert!(is_isomorphic(&c4, &c4_other));
        assert!(!is_isomorphic(&c4, &v4));
        let s3 = group(3, "(1 2);(1 2 3)");
        let s3_on_6 = group(6, "(1 2)(3 4)(5 6);(1 3 5)(2 6 4)");
        let c6 = group(6, "(1 2 3 4 5 6)");
        assert!(is_isomorphic(&s3, &s3_on_6));
        assert!(!is_isomorphic(&s3, &c6));
        // D4 and Q8 share order and commutativity but not element orders
        let d4 = group(4, "(1 2 3 4);(1 3)");
        let q8 = group(8, "(1 2 4 7)(3 6 8 5);(1 3 4 8)(2 5 7 6)");
        assert!(!is_isomorphic(&d4, &q8));
    }

    #[test]
    fn elementary_abelian_representations() {
        let regular = group(8, "(1 2)(3 4)(5 6)(7 8);(1 3)(2 4)(5 7)(6 8);(1 5)(2 6)(3 7)(4 8)");
        let intransitive = group(6, "(1 2);(3 4);(5 6)");
        assert!(is_isomorphic(&regular, &intransitive));
    }
}
