//! Finite connected covers as transitive permutation actions on a fiber, and
//! their Galois closures built as a connected component of the `n`-fold
//! fiber product.
//!
//! A cover of degree `n` is given by generators acting on the fiber
//! `{1, .., n}`. Points of the `n`-fold product over a base point are
//! `n`-tuples of fiber points, with the generators acting diagonally. The
//! closure is the orbit `C` of the tuple `b = (b_1, .., b_n)` of distinct
//! points; the coordinate maps `p_i : C -> fiber` play the role of the
//! morphisms from the closure to the cover.
//!
//! Deck transformations of `C` commute with the generators, so each is
//! fixed by the image `d` of the base tuple and acts by
//! `x -> x ∘ b^-1 ∘ d` (a permutation of coordinates). On projections the
//! deck group acts by `phi . p_i = p_i ∘ phi^-1`.

use std::collections::{HashMap, VecDeque};

use crate::error::{Error, Result};
use crate::galois::group::PermGroup;
use crate::galois::perm::Perm;

/// Size limits for closure construction and subgroup enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_degree: usize,
    pub max_group_order: usize,
    pub max_enumeration_order: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_degree: 10, max_group_order: 10_000, max_enumeration_order: 10_000 }
    }
}

/// Monodromy generators acting on a fiber of `degree` points.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteCover {
    degree: usize,
    generators: Vec<Perm>,
}

impl FiniteCover {
    /// Checks degrees and transitivity (connectedness).
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<FiniteCover> {
        if degree == 0 {
            return Err(Error::invalid("cover degree must be positive"));
        }
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::invalid(format!("generator {g} has degree {} != {degree}", g.degree())));
        }
        let cover = FiniteCover { degree, generators };
        let reached = cover.orbit_of_point(0).len();
        if reached != degree {
            return Err(Error::DisconnectedCover { orbit: reached, degree });
        }
        Ok(cover)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    fn orbit_of_point(&self, start: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[start] = true;
        let mut out = vec![start];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for g in &self.generators {
                let y = g.apply(x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    /// The cover given by a group acting on itself by left multiplication.
    pub fn regular(group: &PermGroup) -> Result<FiniteCover> {
        let n = group.order();
        let gens = group
            .small_generating_set()
            .into_iter()
            .map(|g| Perm::from_images((0..n).map(|x| group.mul(g, x)).collect()))
            .collect::<Result<Vec<_>>>()?;
        FiniteCover::new(n, gens)
    }
}

#[derive(Debug, Clone)]
pub struct GaloisClosure {
    base_cover: FiniteCover,
    base_tuple: Perm,
    /// Connected component of the `n`-fold product through the base tuple.
    orbit: Vec<Perm>,
    orbit_index: HashMap<Perm, usize>,
    /// Deck element `k` is the one sending the base tuple to `orbit[k]`;
    /// this is its action on projection indices.
    deck_on_projections: Vec<Perm>,
    deck_group: PermGroup,
}

/// Galois closure through the base tuple `(1, .., n)`.
pub fn galois_closure(cover: &FiniteCover, limits: &Limits) -> Result<GaloisClosure> {
    galois_closure_from(cover, &Perm::identity(cover.degree()), limits)
}

/// Galois closure through an arbitrary tuple of distinct fiber points,
/// given as a permutation in one-line notation.
pub fn galois_closure_from(cover: &FiniteCover, base_tuple: &Perm, limits: &Limits) -> Result<GaloisClosure> {
    let n = cover.degree();
    if n > limits.max_degree {
        return Err(Error::SizeLimit(format!("cover degree {n} exceeds {}", limits.max_degree)));
    }
    if base_tuple.degree() != n {
        return Err(Error::invalid("base tuple has the wrong length"));
    }

    // diagonal action: g . (x_1..x_n) = (g x_1, .., g x_n)
    let mut orbit = vec![base_tuple.clone()];
    let mut orbit_index = HashMap::from([(base_tuple.clone(), 0usize)]);
    let mut queue = VecDeque::from([0usize]);
    while let Some(k) = queue.pop_front() {
        for g in cover.generators() {
            let y = g.compose(&orbit[k]);
            if !orbit_index.contains_key(&y) {
                if orbit.len() >= limits.max_group_order {
                    return Err(Error::SizeLimit(format!("closure exceeds {} points", limits.max_group_order)));
                }
                orbit_index.insert(y.clone(), orbit.len());
                queue.push_back(orbit.len());
                orbit.push(y);
            }
        }
    }

    let deck_on_projections: Vec<Perm> = orbit.iter().map(|d| d.inverse().compose(base_tuple)).collect();
    let deck_group = PermGroup::from_elements(deck_on_projections.clone())?;
    Ok(GaloisClosure {
        base_cover: cover.clone(),
        base_tuple: base_tuple.clone(),
        orbit,
        orbit_index,
        deck_on_projections,
        deck_group,
    })
}

impl GaloisClosure {
    pub fn base_cover(&self) -> &FiniteCover {
        &self.base_cover
    }

    pub fn base_tuple(&self) -> &Perm {
        &self.base_tuple
    }

    pub fn orbit(&self) -> &[Perm] {
        &self.orbit
    }

    pub fn orbit_size(&self) -> usize {
        self.orbit.len()
    }

    /// The deck group in its faithful action on the `n` projections.
    pub fn deck_group(&self) -> &PermGroup {
        &self.deck_group
    }

    pub fn deck_on_projections(&self) -> &[Perm] {
        &self.deck_on_projections
    }

    /// Image of orbit point `x` under deck element `k`.
    pub fn deck_apply(&self, k: usize, x: usize) -> usize {
        let shift = self.base_tuple.inverse().compose(&self.orbit[k]);
        self.orbit_index[&self.orbit[x].compose(&shift)]
    }

    /// Deck element `k` as a permutation of the orbit, or `None` if it
    /// sends some point outside the orbit.
    fn deck_row(&self, k: usize) -> Option<Vec<usize>> {
        let shift = self.base_tuple.inverse().compose(&self.orbit[k]);
        self.orbit.iter().map(|x| self.orbit_index.get(&x.compose(&shift)).copied()).collect()
    }

    /// `p_i` evaluated at orbit point `x`.
    pub fn projection(&self, i: usize, x: usize) -> usize {
        self.orbit[x].apply(i)
    }

    /// Evaluation of each projection at the base tuple.
    pub fn evaluation_map(&self) -> Vec<usize> {
        let base = self.orbit_index[&self.base_tuple];
        (0..self.base_cover.degree()).map(|i| self.projection(i, base)).collect()
    }

    /// Checks the structural properties of the closure against the
    /// generated group, computed independently:
    ///
    /// * the orbit has as many points as the monodromy group has elements;
    /// * deck maps commute with the generators and act simply transitively;
    /// * evaluating projections at the base tuple is a bijection onto the fiber;
    /// * the deck group acts on projections faithfully and transitively, and
    ///   `deck_on_projections` describes that action correctly.
    pub fn verify(&self, limits: &Limits) -> Result<()> {
        let n = self.base_cover.degree();
        let monodromy = PermGroup::generate(n, self.base_cover.generators(), limits.max_group_order)?;
        let fail = |msg: String| Err(Error::TheoremViolation(msg));
        if self.orbit.len() != monodromy.order() {
            return fail(format!("orbit size {} != group order {}", self.orbit.len(), monodromy.order()));
        }
        let size = self.orbit.len();

        let base = self.orbit_index[&self.base_tuple];
        let gen_tables: Vec<Vec<usize>> = self
            .base_cover
            .generators()
            .iter()
            .map(|g| self.orbit.iter().map(|x| self.orbit_index[&g.compose(x)]).collect())
            .collect();
        let mut images_of_base = vec![false; size];
        for k in 0..size {
            let Some(row) = self.deck_row(k) else {
                return fail(format!("deck map {k} leaves the component"));
            };
            let mut inverse_row = vec![usize::MAX; size];
            for (x, &y) in row.iter().enumerate() {
                if inverse_row[y] != usize::MAX {
                    return fail(format!("deck element {k} is not injective"));
                }
                inverse_row[y] = x;
            }
            for (g, table) in self.base_cover.generators().iter().zip(&gen_tables) {
                if (0..size).any(|x| row[table[x]] != table[row[x]]) {
                    return fail(format!("deck element {k} does not commute with {g}"));
                }
            }
            if images_of_base[row[base]] {
                return fail("deck action on the base fiber is not free".into());
            }
            images_of_base[row[base]] = true;

            // phi . p_i = p_i ∘ phi^-1 must be the projection named by the stored action
            let sigma = &self.deck_on_projections[k];
            for i in 0..n {
                let j = sigma.apply(i);
                if (0..size).any(|x| self.projection(i, inverse_row[x]) != self.projection(j, x)) {
                    return fail(format!("deck element {k} moves p_{} off p_{}", i + 1, j + 1));
                }
            }
        }

        let mut eval = self.evaluation_map();
        eval.sort_unstable();
        if eval != (0..n).collect::<Vec<_>>() {
            return fail("evaluation map is not a bijection onto the fiber".into());
        }

        let mut distinct = self.deck_on_projections.clone();
        distinct.sort();
        distinct.dedup();
        if distinct.len() != size {
            return fail("deck action on projections is not faithful".into());
        }
        let mut reached = vec![false; n];
        for sigma in &self.deck_on_projections {
            reached[sigma.apply(0)] = true;
        }
        if reached.iter().any(|r| !r) {
            return fail("deck action on projections is not transitive".into());
        }
        Ok(())
    }
}
