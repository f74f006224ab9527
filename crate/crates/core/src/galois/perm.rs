use std::fmt;

use crate::error::{Error, Result};

/// A permutation of `{0, .., n-1}` in one-line notation. Displayed and parsed
/// 1-based in cycle notation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm(Vec<usize>);

impl Perm {
    pub fn identity(n: usize) -> Perm {
        Perm((0..n).collect())
    }

    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || seen[i] {
                return Err(Error::invalid(format!("{images:?} is not a permutation of 0..{n}")));
            }
            seen[i] = true;
        }
        Ok(Perm(images))
    }

    /// Parses 1-based cycle notation such as `(1 2 3)(4 5)`; `()` is the
    /// identity. Commas may separate points.
    pub fn parse_cycles(n: usize, text: &str) -> Result<Perm> {
        let mut images: Vec<usize> = (0..n).collect();
        let mut seen = vec![false; n];
        let text = text.trim();
        let bad = |msg: &str| Error::invalid(format!("bad cycle notation {text:?}: {msg}"));
        let mut rest = text;
        while !rest.is_empty() {
            let open = rest.strip_prefix('(').ok_or_else(|| bad("expected '('"))?;
            let close = open.find(')').ok_or_else(|| bad("unclosed cycle"))?;
            let body = &open[..close];
            rest = open[close + 1..].trim_start();
            let points = body
                .split(|c: char| c == ',' || c.is_whitespace())
                .filter(|t| !t.is_empty())
                .map(|t| {
                    let k: usize = t.parse().map_err(|_| bad("non-numeric point"))?;
                    if k == 0 || k > n {
                        return Err(bad(&format!("point {k} outside 1..={n}")));
                    }
                    Ok(k - 1)
                })
                .collect::<Result<Vec<_>>>()?;
            for &pt in &points {
                if seen[pt] {
                    return Err(bad("cycles are not disjoint"));
                }
                seen[pt] = true;
            }
            for (i, &pt) in points.iter().enumerate() {
                images[pt] = points[(i + 1) % points.len()];
            }
        }
        Ok(Perm(images))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.0[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm(other.0.iter().map(|&i| self.0[i]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0; self.0.len()];
        for (i, &j) in self.0.iter().enumerate() {
            inv[j] = i;
        }
        Perm(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &j)| i == j)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut i = self.0[start];
            while i != start {
                seen[i] = true;
                cycle.push(i);
                i = self.0[i];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().fold(1, |acc, c| num::integer::lcm(acc, c.len()))
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            let pts: Vec<String> = c.iter().map(|i| (i + 1).to_string()).collect();
            write!(f, "({})", pts.join(" "))?;
        }
        Ok(())
    }
}

/// Parses a `;`-separated list of permutations in cycle notation.
pub fn parse_generators(n: usize, text: &str) -> Result<Vec<Perm>> {
    text.split(';').map(str::trim).filter(|t| !t.is_empty()).map(|t| Perm::parse_cycles(n, t)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_roundtrip() {
        let p = Perm::parse_cycles(5, "(1 3 5)(2 4)").unwrap();
        assert_eq!(p.images(), &[2, 3, 4, 1, 0]);
        assert_eq!(p.to_string(), "(1 3 5)(2 4)");
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::parse_cycles(5, &p.to_string()).unwrap(), p);
        assert!(Perm::parse_cycles(3, "()").unwrap().is_identity());
    }

    #[test]
    fn composition_order() {
        let a = Perm::parse_cycles(3, "(1 2)").unwrap();
        let b = Perm::parse_cycles(3, "(1 2 3)").unwrap();
        // apply b then a: 1 -> 2 -> 1, 2 -> 3 -> 3, 3 -> 1 -> 2
        assert_eq!(a.compose(&b).to_string(), "(2 3)");
        assert!(b.compose(&b.inverse()).is_identity());
    }

    #[test]
    fn rejects_garbage() {
        assert!(Perm::parse_cycles(3, "(1 4)").is_err());
        assert!(Perm::parse_cycles(3, "(1 2)(2 3)").is_err());
        assert!(Perm::parse_cycles(3, "1 2").is_err());
        assert!(Perm::from_images(vec![0, 0, 1]).is_err());
        assert_eq!(parse_generators(3, "(1 2); (1 2 3)").unwrap().len(), 2);
    }
}
