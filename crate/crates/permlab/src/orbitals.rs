//! Suborbits of a point stabilizer, orbital pairing, self-paired detection,
//! and the data entering the Wielandt kernel check.
//!
//! Pairing is computed with a single transversal lookup per suborbit: pick
//! the smallest y in the suborbit, take g with y^g = x from the orbit
//! transversal of x, and read off the suborbit containing x^g. Orbital
//! digraphs are never materialized.

use crate::actions::{is_primitive, restrict_to_invariant_set};
use crate::error::{Error, Result};
use crate::group::PermGroup;

/// A G_x-orbit together with its paired suborbit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Suborbit {
    pub base_point: usize,
    /// Points of the suborbit, sorted ascending.
    pub points: Vec<usize>,
    /// Canonical representative: the smallest point.
    pub representative: usize,
    /// Index of the paired suborbit in the suborbit list.
    pub paired_index: usize,
    pub self_paired: bool,
}

impl Suborbit {
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.points.len() == 1 && self.points[0] == self.base_point
    }
}

/// The suborbits of (G, x): orbits of the point stabilizer, listed by
/// smallest element, with pairing filled in. Their sizes sum to the degree
/// and exactly one of them is `{x}`.
pub fn suborbits(g: &PermGroup, x: usize) -> Result<Vec<Suborbit>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if x >= g.degree() {
        return Err(Error::PointOutOfRange {
            point: x,
            degree: g.degree(),
        });
    }
    let stabilizer = g.point_stabilizer(x)?;
    let parts = stabilizer.orbits();
    let mut suborbit_of = vec![usize::MAX; g.degree()];
    for (i, part) in parts.iter().enumerate() {
        for &p in part {
            suborbit_of[p] = i;
        }
    }
    let (_, transversal) = g.orbit_transversal(x)?;
    let mut out = Vec::with_capacity(parts.len());
    for part in &parts {
        let y = part[0];
        // g with y^g = x is the inverse of the transversal element x -> y
        let to_x = transversal[y]
            .as_ref()
            .expect("transitive group covers the domain")
            .inverse();
        let paired_index = suborbit_of[to_x.apply(x)];
        out.push(Suborbit {
            base_point: x,
            points: part.clone(),
            representative: y,
            paired_index,
            self_paired: false,
        });
    }
    for i in 0..out.len() {
        out[i].self_paired = out[i].paired_index == i;
        debug_assert_eq!(out[out[i].paired_index].paired_index, i, "pairing involution");
        debug_assert_eq!(out[out[i].paired_index].len(), out[i].len());
    }
    Ok(out)
}

/// The suborbit paired with `delta`. The trivial suborbit pairs with itself.
pub fn paired_suborbit(g: &PermGroup, x: usize, delta: &Suborbit) -> Result<Suborbit> {
    let all = suborbits(g, x)?;
    let idx = all
        .iter()
        .position(|s| s.points == delta.points)
        .ok_or_else(|| Error::InvalidInput("not a suborbit of (G, x)".into()))?;
    Ok(all[all[idx].paired_index].clone())
}

/// Among self-paired suborbits of size at least 2, one of minimum size
/// (ties broken by smallest minimum element); `None` if there is none.
pub fn smallest_self_paired_nontrivial(g: &PermGroup, x: usize) -> Result<Option<Suborbit>> {
    let all = suborbits(g, x)?;
    Ok(all
        .into_iter()
        .filter(|s| s.self_paired && s.len() >= 2)
        .min_by_key(|s| (s.len(), s.representative)))
}

/// The ingredients of the Wielandt kernel check for one suborbit: T(x) is
/// the kernel of G_x acting on Delta(x), P the induced image, and the two
/// two-point stabilizer images on Delta(x) and Delta'(x).
#[derive(Clone, Debug)]
pub struct WielandtData {
    /// Kernel of the action of G_x on Delta(x); |G_x| = |P| * |T|.
    pub t_kernel: PermGroup,
    /// G_x induced on Delta(x).
    pub image_on_delta: PermGroup,
    /// (G_{x,y}) induced on Delta(x).
    pub stab_on_delta: PermGroup,
    /// (G_{x,y'}) induced on Delta'(x).
    pub stab_on_delta_paired: PermGroup,
    pub y: usize,
    pub y_paired: usize,
}

/// Assembles the Wielandt data for a primitive nonregular group, a base
/// point and a nontrivial suborbit. Representatives are the minimum points
/// of Delta(x) and Delta'(x), fixed for reproducibility.
pub fn wielandt_data(g: &PermGroup, x: usize, delta: &Suborbit) -> Result<WielandtData> {
    if !is_primitive(g)? {
        return Err(Error::NotPrimitive);
    }
    if g.is_regular() {
        return Err(Error::Precondition("group must be nonregular".into()));
    }
    if delta.is_trivial() {
        return Err(Error::Precondition("suborbit must be nontrivial".into()));
    }
    let stabilizer = g.point_stabilizer(x)?;
    let on_delta = restrict_to_invariant_set(&stabilizer, &delta.points)?;
    let paired = paired_suborbit(g, x, delta)?;

    let y = delta.representative;
    let y_paired = paired.representative;
    let two_point = stabilizer.point_stabilizer(y)?;
    let stab_on_delta = restrict_to_invariant_set(&two_point, &delta.points)?.image;
    let two_point_paired = stabilizer.point_stabilizer(y_paired)?;
    let stab_on_delta_paired =
        restrict_to_invariant_set(&two_point_paired, &paired.points)?.image;

    debug_assert_eq!(
        stabilizer.order().clone(),
        on_delta.image.order() * on_delta.kernel.order()
    );
    Ok(WielandtData {
        t_kernel: on_delta.kernel,
        image_on_delta: on_delta.image,
        stab_on_delta,
        stab_on_delta_paired,
        y,
        y_paired,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Perm;
    use num_bigint::BigUint;

    fn pc(degree: usize, s: &str) -> Perm {
        Perm::parse_cycles(degree, s).unwrap()
    }

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_generators(degree, gens.iter().map(|s| pc(degree, s)).collect()).unwrap()
    }

    /// Sym(5) on the 10 unordered pairs of {0..4}, pairs in lexicographic
    /// order, so point 0 is the pair {0,1}.
    fn johnson52() -> PermGroup {
        let pairs: Vec<(usize, usize)> = (0..5)
            .flat_map(|i| ((i + 1)..5).map(move |j| (i, j)))
            .collect();
        let index = |a: usize, b: usize| {
            let (a, b) = if a < b { (a, b) } else { (b, a) };
            pairs.iter().position(|&p| p == (a, b)).unwrap()
        };
        let mut gens = Vec::new();
        for s in ["(0 1)", "(0 1 2 3 4)"] {
            let base = pc(5, s);
            let images: Vec<usize> = pairs
                .iter()
                .map(|&(a, b)| index(base.apply(a), base.apply(b)))
                .collect();
            gens.push(Perm::from_images(&images).unwrap());
        }
        PermGroup::from_generators(10, gens).unwrap()
    }

    #[test]
    fn suborbits_of_two_transitive_group() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let subs = suborbits(&s4, 0).unwrap();
        assert_eq!(subs.len(), 2);
        assert_eq!(subs[0].points, vec![0]);
        assert_eq!(subs[1].points, vec![1, 2, 3]);
        assert!(subs[1].self_paired);
    }

    #[test]
    fn pentagon_dihedral_suborbits() {
        let d5 = grp(5, &["(0 1 2 3 4)", "(1 4)(2 3)"]);
        assert_eq!(d5.order(), &BigUint::from(10u32));
        let subs = suborbits(&d5, 0).unwrap();
        let sets: Vec<Vec<usize>> = subs.iter().map(|s| s.points.clone()).collect();
        assert_eq!(sets, vec![vec![0], vec![1, 4], vec![2, 3]]);
        assert!(subs.iter().all(|s| s.self_paired));
    }

    #[test]
    fn regular_group_has_singleton_suborbits() {
        let c5 = grp(5, &["(0 1 2 3 4)"]);
        let subs = suborbits(&c5, 0).unwrap();
        assert_eq!(subs.len(), 5);
        assert!(subs.iter().all(|s| s.len() == 1));
        // {1} pairs with {4}: the rotation sending 1 to 0 sends 0 to 4
        let one = subs.iter().find(|s| s.points == vec![1]).unwrap();
        assert_eq!(subs[one.paired_index].points, vec![4]);
        assert!(!one.self_paired);
    }

    #[test]
    fn paired_suborbit_is_an_involution() {
        let c5 = grp(5, &["(0 1 2 3 4)"]);
        let subs = suborbits(&c5, 0).unwrap();
        for s in &subs {
            let paired = paired_suborbit(&c5, 0, s).unwrap();
            let back = paired_suborbit(&c5, 0, &paired).unwrap();
            assert_eq!(back.points, s.points);
            assert_eq!(paired.len(), s.len());
        }
    }

    #[test]
    fn smallest_self_paired_examples() {
        let c5 = grp(5, &["(0 1 2 3 4)"]);
        assert!(smallest_self_paired_nontrivial(&c5, 0).unwrap().is_none());

        let d5 = grp(5, &["(0 1 2 3 4)", "(1 4)(2 3)"]);
        let delta = smallest_self_paired_nontrivial(&d5, 0).unwrap().unwrap();
        assert_eq!(delta.points, vec![1, 4]);

        let j = johnson52();
        let delta = smallest_self_paired_nontrivial(&j, 0).unwrap().unwrap();
        // pairs disjoint from {0,1}: {2,3}, {2,4}, {3,4} sit at indices 7, 8, 9
        assert_eq!(delta.points, vec![7, 8, 9]);
    }

    #[test]
    fn johnson_suborbit_sizes() {
        let j = johnson52();
        assert_eq!(j.order(), &BigUint::from(120u32));
        let subs = suborbits(&j, 0).unwrap();
        let mut sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
        sizes.sort_unstable();
        assert_eq!(sizes, vec![1, 3, 6]);
        assert!(subs.iter().all(|s| s.self_paired));
    }

    #[test]
    fn wielandt_data_for_johnson() {
        let j = johnson52();
        let subs = suborbits(&j, 0).unwrap();
        let delta = subs.iter().find(|s| s.len() == 3).unwrap();
        let data = wielandt_data(&j, 0, delta).unwrap();
        assert_eq!(data.t_kernel.order_u64(), Some(2));
        assert_eq!(data.image_on_delta.order_u64(), Some(6));
        assert_eq!(data.stab_on_delta.order_u64(), Some(2));
        assert_eq!(data.stab_on_delta_paired.order_u64(), Some(2));
    }

    #[test]
    fn wielandt_data_for_symmetric_and_dihedral() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let subs = suborbits(&s4, 0).unwrap();
        let delta = subs.iter().find(|s| s.len() == 3).unwrap();
        let data = wielandt_data(&s4, 0, delta).unwrap();
        assert!(data.t_kernel.is_trivial()); // G_x faithful on its suborbit
        assert_eq!(data.image_on_delta.order_u64(), Some(6));

        let d5 = grp(5, &["(0 1 2 3 4)", "(1 4)(2 3)"]);
        let subs = suborbits(&d5, 0).unwrap();
        let delta = subs.iter().find(|s| s.points == vec![1, 4]).unwrap();
        let data = wielandt_data(&d5, 0, delta).unwrap();
        assert!(data.t_kernel.is_trivial());
        assert_eq!(data.image_on_delta.order_u64(), Some(2));
    }

    #[test]
    fn wielandt_preconditions() {
        let c5 = grp(5, &["(0 1 2 3 4)"]);
        let subs = suborbits(&c5, 0).unwrap();
        assert!(wielandt_data(&c5, 0, &subs[1]).is_err()); // regular
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let subs = suborbits(&s4, 0).unwrap();
        assert!(wielandt_data(&s4, 0, &subs[0]).is_err()); // trivial suborbit
    }

    #[test]
    fn suborbit_sizes_sum_to_degree_across_base_points() {
        let d5 = grp(5, &["(0 1 2 3 4)", "(1 4)(2 3)"]);
        let mut size_multisets = Vec::new();
        for x in 0..5 {
            let subs = suborbits(&d5, x).unwrap();
            let total: usize = subs.iter().map(|s| s.len()).sum();
            assert_eq!(total, 5);
            let mut sizes: Vec<usize> = subs.iter().map(|s| s.len()).collect();
            sizes.sort_unstable();
            size_multisets.push(sizes);
        }
        assert!(size_multisets.windows(2).all(|w| w[0] == w[1]));
    }
}
