//! Permutations of `{0..n-1}` stored as image sequences.
//!
//! The composition convention is left-to-right throughout the crate:
//! `p.then(q)` maps `i` to `q[p[i]]`, i.e. apply `p` first, then `q`.
//! This matches the exponent notation `x^p` used in the reports.

use std::fmt;

use crate::error::{Error, Result};

/// Internal point storage. Degrees stay well below `u16::MAX`.
type Pt = u16;

/// A bijection on `{0..n-1}`, the atom of everything else.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<Pt>,
}

impl Perm {
    /// The identity on `degree` points.
    pub fn identity(degree: usize) -> Perm {
        Perm {
            images: (0..degree as Pt).collect(),
        }
    }

    /// Builds a permutation from an image sequence, validating that it is
    /// a bijection.
    pub fn from_images(images: &[usize]) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in images {
            if v >= n {
                return Err(Error::MalformedPermutation(format!(
                    "image {v} out of range for degree {n}"
                )));
            }
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::MalformedPermutation(format!(
                    "image {v} appears twice"
                )));
            }
        }
        Ok(Perm {
            images: images.iter().map(|&v| v as Pt).collect(),
        })
    }

    /// Builds a permutation of `degree` points from disjoint cycles.
    /// Repeated points are rejected, so the cycles really must be disjoint.
    pub fn from_cycles(degree: usize, cycles: &[Vec<usize>]) -> Result<Perm> {
        let mut images: Vec<Pt> = (0..degree as Pt).collect();
        let mut seen = vec![false; degree];
        for cycle in cycles {
            for (i, &p) in cycle.iter().enumerate() {
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if std::mem::replace(&mut seen[p], true) {
                    return Err(Error::MalformedPermutation(format!(
                        "point {p} appears twice in cycle notation"
                    )));
                }
                let q = cycle[(i + 1) % cycle.len()];
                if q >= degree {
                    return Err(Error::PointOutOfRange { point: q, degree });
                }
                images[p] = q as Pt;
            }
        }
        Ok(Perm { images })
    }

    /// Parses disjoint-cycle notation like `(0 1 2)(3 4)`; `()` is the identity.
    /// Points may be separated by spaces or commas.
    pub fn parse_cycles(degree: usize, text: &str) -> Result<Perm> {
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut chars = text.chars().peekable();
        let bad = |msg: &str| Error::MalformedPermutation(format!("{msg} in {text:?}"));
        loop {
            while matches!(chars.peek(), Some(c) if c.is_whitespace()) {
                chars.next();
            }
            match chars.next() {
                None => break,
                Some('(') => {
                    let mut cycle = Vec::new();
                    let mut num = String::new();
                    loop {
                        match chars.next() {
                            Some(c) if c.is_ascii_digit() => num.push(c),
                            Some(c) if c.is_whitespace() || c == ',' => {
                                if !num.is_empty() {
                                    cycle.push(num.parse::<usize>().map_err(|_| {
                                        bad("point too large")
                                    })?);
                                    num.clear();
                                }
                            }
                            Some(')') => {
                                if !num.is_empty() {
                                    cycle.push(num.parse::<usize>().map_err(|_| {
                                        bad("point too large")
                                    })?);
                                }
                                break;
                            }
                            Some(c) => return Err(bad(&format!("unexpected character {c:?}"))),
                            None => return Err(bad("unterminated cycle")),
                        }
                    }
                    if cycle.len() == 1 {
                        return Err(bad("cycles of length 1 are not allowed; omit fixed points"));
                    }
                    if !cycle.is_empty() {
                        cycles.push(cycle);
                    }
                }
                Some(c) => return Err(bad(&format!("expected '(' but found {c:?}"))),
            }
        }
        Perm::from_cycles(degree, &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn apply(&self, point: usize) -> usize {
        self.images[point] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v as usize)
    }

    /// Left-to-right composition with a degree check: apply `self`, then `other`.
    pub fn compose(&self, other: &Perm) -> Result<Perm> {
        if self.degree() != other.degree() {
            return Err(Error::DegreeMismatch(self.degree(), other.degree()));
        }
        Ok(self.then(other))
    }

    /// Left-to-right composition for internal use; degrees must match.
    pub(crate) fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self
                .images
                .iter()
                .map(|&v| other.images[v as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0 as Pt; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v as usize] = i as Pt;
        }
        Perm { images }
    }

    /// Conjugate `self` by `g`: first undo `g`, act, then redo `g`.
    pub(crate) fn conjugate_by(&self, g: &Perm) -> Perm {
        g.inverse().then(self).then(g)
    }

    pub fn pow(&self, mut k: u64) -> Perm {
        let mut acc = Perm::identity(self.degree());
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.then(&base);
            }
            base = base.then(&base);
            k >>= 1;
        }
        acc
    }

    /// Nontrivial cycles, each starting at its smallest point, sorted by
    /// smallest point. Fixed points are omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.apply(start) == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut p = self.apply(start);
            while p != start {
                seen[p] = true;
                cycle.push(p);
                p = self.apply(p);
            }
            out.push(cycle);
        }
        out
    }

    /// Order of the element: lcm of its cycle lengths.
    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .fold(1u64, |acc, c| num_integer::lcm(acc, c.len() as u64))
    }

    /// Parity: even iff the number of even-length cycles is even.
    pub fn is_even(&self) -> bool {
        self.cycles().iter().filter(|c| c.len() % 2 == 0).count() % 2 == 0
    }

    pub fn smallest_moved_point(&self) -> Option<usize> {
        (0..self.degree()).find(|&i| self.apply(i) != i)
    }

    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&v| v as usize).collect()
    }

    /// Disjoint-cycle notation; the identity prints as `()`.
    pub fn cycle_string(&self) -> String {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return "()".to_string();
        }
        cycles
            .iter()
            .map(|c| {
                let body = c
                    .iter()
                    .map(|p| p.to_string())
                    .collect::<Vec<_>>()
                    .join(" ");
                format!("({body})")
            })
            .collect::<Vec<_>>()
            .join("")
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.cycle_string())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}]{}", self.degree(), self.cycle_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pc(degree: usize, s: &str) -> Perm {
        Perm::parse_cycles(degree, s).unwrap()
    }

    #[test]
    fn identity_composes_trivially() {
        let p = pc(4, "(0 1 2 3)");
        let id = Perm::identity(4);
        assert_eq!(id.compose(&p).unwrap(), p);
        assert_eq!(p.compose(&id).unwrap(), p);
    }

    #[test]
    fn involution_squares_to_identity() {
        let p = pc(2, "(0 1)");
        assert!(p.compose(&p).unwrap().is_identity());
    }

    #[test]
    fn left_to_right_convention() {
        // (0 1 2) then (0 1) is (1 2) under left-to-right application.
        let p = pc(3, "(0 1 2)");
        let q = pc(3, "(0 1)");
        assert_eq!(p.compose(&q).unwrap(), pc(3, "(1 2)"));
    }

    #[test]
    fn compose_rejects_degree_mismatch() {
        let p = Perm::identity(3);
        let q = Perm::identity(4);
        assert!(matches!(p.compose(&q), Err(Error::DegreeMismatch(3, 4))));
    }

    #[test]
    fn from_images_rejects_non_bijection() {
        assert!(Perm::from_images(&[0, 0, 1]).is_err());
        assert!(Perm::from_images(&[0, 3]).is_err());
        assert!(Perm::from_images(&[1, 0, 2]).is_ok());
    }

    #[test]
    fn cycle_parsing_round_trip() {
        let p = pc(7, "(0 1 2)(3 4)");
        assert_eq!(p.cycle_string(), "(0 1 2)(3 4)");
        assert_eq!(pc(5, "()"), Perm::identity(5));
        assert!(Perm::parse_cycles(3, "(0 1 5)").is_err());
        assert!(Perm::parse_cycles(4, "(0 1)(1 2)").is_err());
    }

    #[test]
    fn order_and_parity() {
        assert_eq!(pc(6, "(0 1 2)(3 4)").order(), 6);
        assert!(!pc(6, "(0 1 2)(3 4)").is_even());
        assert!(pc(5, "(0 1 2 3 4)").is_even());
        assert!(!pc(4, "(0 1 2 3)").is_even());
        assert_eq!(Perm::identity(3).order(), 1);
    }

    #[test]
    fn pow_matches_repeated_composition() {
        let p = pc(5, "(0 1 2 3 4)");
        assert_eq!(p.pow(0), Perm::identity(5));
        assert_eq!(p.pow(5), Perm::identity(5));
        assert_eq!(p.pow(2), p.compose(&p).unwrap());
    }

    fn arb_perm(degree: usize) -> impl Strategy<Value = Perm> {
        Just(()).prop_perturb(move |_, mut rng| {
            let mut v: Vec<usize> = (0..degree).collect();
            for i in (1..degree).rev() {
                let j = (rng.next_u64() % (i as u64 + 1)) as usize;
                v.swap(i, j);
            }
            Perm::from_images(&v).unwrap()
        })
    }

    proptest! {
        #[test]
        fn inverse_is_two_sided(p in arb_perm(9)) {
            prop_assert!(p.then(&p.inverse()).is_identity());
            prop_assert!(p.inverse().then(&p).is_identity());
        }

        #[test]
        fn cycle_string_round_trips(p in arb_perm(11)) {
            let s = p.cycle_string();
            prop_assert_eq!(Perm::parse_cycles(11, &s).unwrap(), p);
        }

        #[test]
        fn composition_is_associative(a in arb_perm(7), b in arb_perm(7), c in arb_perm(7)) {
            prop_assert_eq!(a.then(&b).then(&c), a.then(&b.then(&c)));
        }
    }
}
