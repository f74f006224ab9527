//! Subgroup data of a deck group: the fixed-point criterion for points of
//! intermediate covers, and the classification of a point by the
//! isomorphism class of its image subgroup.
//!
//! A point of the base is simulated by its image subgroup `I` in the deck
//! group `G`. The intermediate cover `T/H` has a point over it exactly when
//! `I` fixes a coset of `H`, equivalently when `I ⊆ g H g^-1` for some `g`.

use crate::error::{Error, Result};
use crate::galois::group::{is_isomorphic, PermGroup, Subgroup};

fn check_subgroup(group: &PermGroup, s: &Subgroup, name: &str) -> Result<()> {
    let ok = s.elements().last().is_some_and(|&e| e < group.order()) && group.subgroup(s.elements()).is_ok();
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("{name} is not a subgroup of the deck group")))
    }
}

/// `true` iff `I ⊆ g H g^-1` for some `g` in the group.
pub fn fixed_point_check(group: &PermGroup, h: &Subgroup, i: &Subgroup) -> Result<bool> {
    check_subgroup(group, h, "H")?;
    check_subgroup(group, i, "I")?;
    Ok(contained_in_conjugate(group, h, i))
}

fn contained_in_conjugate(group: &PermGroup, h: &Subgroup, i: &Subgroup) -> bool {
    if !h.order().is_multiple_of(i.order()) {
        return false;
    }
    // I ⊆ gHg^-1  <=>  g^-1 I g ⊆ H
    (0..group.order()).any(|g| {
        let g_inv = group.inv(g);
        i.elements().iter().all(|&x| h.contains(group.conj(g_inv, x)))
    })
}

/// Independent oracle: does `I`, acting by left multiplication on the left
/// cosets `xH`, fix one of them?
pub fn coset_fixed_point_oracle(group: &PermGroup, h: &Subgroup, i: &Subgroup) -> bool {
    let n = group.order();
    let mut coset_of = vec![usize::MAX; n];
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let members: Vec<usize> = h.elements().iter().map(|&y| group.mul(x, y)).collect();
        for &m in &members {
            coset_of[m] = cosets.len();
        }
        cosets.push(members);
    }
    cosets
        .iter()
        .enumerate()
        .any(|(c, members)| i.elements().iter().all(|&a| members.iter().all(|&m| coset_of[group.mul(a, m)] == c)))
}

/// All subgroups of a deck group, grouped into isomorphism classes.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    group: PermGroup,
    subgroups: Vec<Subgroup>,
    /// Isomorphism class index of each subgroup.
    class_of: Vec<usize>,
    /// For each class, the first subgroup in enumeration order.
    representatives: Vec<usize>,
    /// `proper[a][b]`: subgroup `b` is a proper subgroup of `a`.
    proper: Vec<Vec<bool>>,
}

impl SubgroupLattice {
    pub fn new(group: PermGroup, max_order: usize) -> Result<SubgroupLattice> {
        let subgroups = group.enumerate_subgroups(max_order)?;
        let as_groups: Vec<PermGroup> = subgroups.iter().map(|s| group.subgroup_as_group(s)).collect();
        let mut class_of = Vec::with_capacity(subgroups.len());
        let mut representatives: Vec<usize> = Vec::new();
        for (k, g) in as_groups.iter().enumerate() {
            let found = representatives.iter().position(|&r| is_isomorphic(&as_groups[r], g));
            match found {
                Some(c) => class_of.push(c),
                None => {
                    class_of.push(representatives.len());
                    representatives.push(k);
                }
            }
        }
        let proper = subgroups.iter().map(|a| subgroups.iter().map(|b| b.is_proper_subgroup_of(a)).collect()).collect();
        Ok(SubgroupLattice { group, subgroups, class_of, representatives, proper })
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    pub fn class_of(&self, k: usize) -> usize {
        self.class_of[k]
    }

    /// Representative subgroups `H_1, .., H_m`, one per isomorphism class,
    /// ordered by subgroup order.
    pub fn class_representatives(&self) -> Vec<Subgroup> {
        self.representatives.iter().map(|&k| self.subgroups[k].clone()).collect()
    }

    pub fn position(&self, s: &Subgroup) -> Option<usize> {
        self.subgroups.iter().position(|t| t.elements() == s.elements())
    }

    /// Number of conjugacy classes of subgroups within each isomorphism class.
    pub fn conjugacy_class_counts(&self) -> Vec<usize> {
        let mut seen = vec![false; self.subgroups.len()];
        let mut counts = vec![0; self.class_count()];
        for k in 0..self.subgroups.len() {
            if seen[k] {
                continue;
            }
            counts[self.class_of[k]] += 1;
            for g in 0..self.group.order() {
                let c = self.group.conjugate(&self.subgroups[k], g);
                if let Some(j) = self.position(&c) {
                    seen[j] = true;
                }
            }
        }
        counts
    }

    pub fn class_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.class_count()];
        for &c in &self.class_of {
            sizes[c] += 1;
        }
        sizes
    }
}

/// Index `i` of the class with `I ≅ H_i`, computed two ways:
///
/// * directly, by testing `I` against each representative;
/// * through the stratification: among all subgroups `H` with
///   `I ⊆ g H g^-1` for some `g`, keep those for which no proper subgroup
///   `K ⊊ H` has the same property, and read off their class.
///
/// The routes must agree, and every minimal `H` of the second route must
/// land in the same class; otherwise a theorem-violation error is returned.
pub fn classify_point(lattice: &SubgroupLattice, i: &Subgroup, class_reps: &[Subgroup]) -> Result<usize> {
    let group = lattice.group();
    check_subgroup(group, i, "I")?;
    if class_reps.len() != lattice.class_count() {
        return Err(Error::invalid(format!(
            "{} class representatives given, the deck group has {} subgroup classes",
            class_reps.len(),
            lattice.class_count()
        )));
    }

    let i_group = group.subgroup_as_group(i);
    let direct: Vec<usize> = class_reps
        .iter()
        .enumerate()
        .filter(|(_, h)| is_isomorphic(&group.subgroup_as_group(h), &i_group))
        .map(|(k, _)| k)
        .collect();
    let direct = match direct.as_slice() {
        [k] => *k,
        _ => {
            return Err(Error::invalid(format!(
                "I matches {} of the class representatives (expected exactly one)",
                direct.len()
            )))
        }
    };

    let subs = lattice.subgroups();
    let admits: Vec<bool> = subs.iter().map(|h| contained_in_conjugate(group, h, i)).collect();
    let minimal: Vec<usize> =
        (0..subs.len()).filter(|&h| admits[h] && !(0..subs.len()).any(|k| admits[k] && lattice.proper[h][k])).collect();
    if minimal.is_empty() {
        return Err(Error::TheoremViolation("no minimal subgroup admits the point".into()));
    }
    let rep_positions: Vec<usize> = class_reps
        .iter()
        .map(|r| lattice.position(r).ok_or_else(|| Error::invalid("class representative is not a subgroup")))
        .collect::<Result<_>>()?;
    let class_index_of = |k: usize| -> Result<usize> {
        let c = lattice.class_of(k);
        rep_positions
            .iter()
            .position(|&r| lattice.class_of(r) == c)
            .ok_or_else(|| Error::invalid("class representatives do not cover every class"))
    };
    let via_strata = class_index_of(minimal[0])?;
    for &h in &minimal[1..] {
        if class_index_of(h)? != via_strata {
            return Err(Error::TheoremViolation("minimal strata fall into different classes".into()));
        }
    }
    if via_strata != direct {
        return Err(Error::TheoremViolation(format!(
            "direct class {direct} differs from stratification class {via_strata}"
        )));
    }
    Ok(direct)
}
