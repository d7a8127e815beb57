//! Orbits, block systems, primitivity and actions induced on blocks and
//! invariant sets.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::structure::{minimal_normal_subgroups, Limits};

/// A G-invariant partition of the domain into equal-size blocks. Blocks are
/// kept sorted internally and ordered by their minimum element, so equal
/// systems compare equal and serialize identically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlockSystem {
    degree: usize,
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl BlockSystem {
    pub fn from_blocks(degree: usize, blocks: Vec<Vec<usize>>) -> Result<BlockSystem> {
        if blocks.is_empty() {
            return Err(Error::InvalidBlockSystem("no blocks".into()));
        }
        let size = blocks[0].len();
        let mut block_of = vec![usize::MAX; degree];
        let mut sorted: Vec<Vec<usize>> = Vec::with_capacity(blocks.len());
        for mut b in blocks {
            b.sort_unstable();
            b.dedup();
            if b.len() != size {
                return Err(Error::InvalidBlockSystem("blocks have unequal sizes".into()));
            }
            for &p in &b {
                if p >= degree {
                    return Err(Error::PointOutOfRange { point: p, degree });
                }
                if block_of[p] != usize::MAX {
                    return Err(Error::InvalidBlockSystem(format!(
                        "point {p} appears in two blocks"
                    )));
                }
                block_of[p] = 0;
            }
            sorted.push(b);
        }
        if size * sorted.len() != degree {
            return Err(Error::InvalidBlockSystem("blocks do not cover the domain".into()));
        }
        sorted.sort_by_key(|b| b[0]);
        for (i, b) in sorted.iter().enumerate() {
            for &p in b {
                block_of[p] = i;
            }
        }
        Ok(BlockSystem {
            degree,
            blocks: sorted,
            block_of,
        })
    }

    pub fn singletons(degree: usize) -> BlockSystem {
        BlockSystem::from_blocks(degree, (0..degree).map(|p| vec![p]).collect())
            .expect("valid partition")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    pub fn block_size(&self) -> usize {
        self.blocks[0].len()
    }

    pub fn block_index_of(&self, point: usize) -> usize {
        self.block_of[point]
    }

    /// Trivial systems: all singletons, or one block.
    pub fn is_trivial(&self) -> bool {
        self.block_size() == 1 || self.block_count() == 1
    }

    /// Explicit generator check of the block property: the image of every
    /// block under every generator is exactly some block.
    pub fn is_valid_for(&self, g: &PermGroup) -> bool {
        if g.degree() != self.degree {
            return false;
        }
        for gen in g.generators() {
            for b in &self.blocks {
                let target = self.block_of[gen.apply(b[0])];
                if b.iter().any(|&p| self.block_of[gen.apply(p)] != target) {
                    return false;
                }
            }
        }
        true
    }

    /// The system generated by translating one block around the domain.
    pub fn from_seed_block(g: &PermGroup, seed: &[usize]) -> Result<BlockSystem> {
        let mut seed: Vec<usize> = seed.to_vec();
        seed.sort_unstable();
        seed.dedup();
        if seed.is_empty() || g.degree() % seed.len() != 0 {
            return Err(Error::InvalidBlockSystem(
                "seed size does not divide the degree".into(),
            ));
        }
        let mut blocks: Vec<Vec<usize>> = vec![seed.clone()];
        let mut queue = vec![seed];
        while let Some(b) = queue.pop() {
            for gen in g.generators() {
                let mut image: Vec<usize> = b.iter().map(|&p| gen.apply(p)).collect();
                image.sort_unstable();
                if !blocks.contains(&image) {
                    blocks.push(image.clone());
                    queue.push(image);
                }
            }
        }
        BlockSystem::from_blocks(g.degree(), blocks)
    }
}

/// A quotient or restriction of a group action: the induced image, the
/// kernel inside the source group, and how source points map to action
/// points (`None` for points outside the acted-on set).
#[derive(Clone, Debug)]
pub struct InducedAction {
    pub image: PermGroup,
    pub kernel: PermGroup,
    pub point_map: Vec<Option<usize>>,
}

/// Smallest block of a G-block-system containing both `x` and `y`, by the
/// classical union-find closure. Returns the whole domain iff no proper
/// block contains both.
pub fn minimal_block_containing(g: &PermGroup, x: usize, y: usize) -> Result<Vec<usize>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    if x >= n {
        return Err(Error::PointOutOfRange { point: x, degree: n });
    }
    if y >= n {
        return Err(Error::PointOutOfRange { point: y, degree: n });
    }
    if x == y {
        return Err(Error::InvalidInput("minimal block needs two distinct points".into()));
    }
    let mut uf = UnionFind::new(n);
    uf.union(x, y);
    let mut queue = vec![(x, y)];
    while let Some((a, b)) = queue.pop() {
        for gen in g.generators() {
            let (ia, ib) = (gen.apply(a), gen.apply(b));
            let (ra, rb) = (uf.find(ia), uf.find(ib));
            if ra != rb {
                uf.union(ra, rb);
                queue.push((ra, rb));
            }
        }
    }
    let root = uf.find(x);
    Ok((0..n).filter(|&p| uf.find(p) == root).collect())
}

/// Primitive iff the only blocks through point 0 are trivial.
pub fn is_primitive(g: &PermGroup) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    if g.degree() < 2 {
        return Err(Error::InvalidInput("primitivity needs degree >= 2".into()));
    }
    for y in 1..g.degree() {
        if minimal_block_containing(g, 0, y)?.len() < g.degree() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All minimal nontrivial block systems: one per inclusion-minimal
/// nontrivial block through point 0, deduplicated and canonically ordered.
pub fn minimal_block_systems(g: &PermGroup) -> Result<Vec<BlockSystem>> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let n = g.degree();
    let mut candidates: Vec<Vec<usize>> = Vec::new();
    for y in 1..n {
        let block = minimal_block_containing(g, 0, y)?;
        if block.len() < n && !candidates.contains(&block) {
            candidates.push(block);
        }
    }
    // keep inclusion-minimal blocks only
    let minimal: Vec<Vec<usize>> = candidates
        .iter()
        .filter(|b| {
            !candidates
                .iter()
                .any(|c| c.len() < b.len() && c.iter().all(|p| b.contains(p)))
        })
        .cloned()
        .collect();
    let mut systems = Vec::new();
    for block in minimal {
        let system = BlockSystem::from_seed_block(g, &block)?;
        if !systems.contains(&system) {
            systems.push(system);
        }
    }
    systems.sort_by(|a, b| (a.block_size(), a.blocks()).cmp(&(b.block_size(), b.blocks())));
    Ok(systems)
}

/// A system of maximal proper blocks: take a minimal system and recurse on
/// the quotient action until it is primitive, then pull blocks back. The
/// stabilizer of the block through any point is then a maximal subgroup
/// containing that point's stabilizer.
pub fn maximal_block_containing(g: &PermGroup, x: usize) -> Result<BlockSystem> {
    if x >= g.degree() {
        return Err(Error::PointOutOfRange {
            point: x,
            degree: g.degree(),
        });
    }
    if is_primitive(g)? {
        return Err(Error::PrimitiveInput);
    }
    let base = minimal_block_systems(g)?.into_iter().next().ok_or_else(|| {
        Error::Internal("imprimitive group with no minimal system".into())
    })?;
    let quotient = block_action(g, &base)?;
    if is_primitive(&quotient.image)? {
        return Ok(base);
    }
    let upper = maximal_block_containing(&quotient.image, base.block_index_of(x))?;
    let blocks = upper
        .blocks()
        .iter()
        .map(|idxs| {
            idxs.iter()
                .flat_map(|&i| base.blocks()[i].iter().copied())
                .collect()
        })
        .collect();
    BlockSystem::from_blocks(g.degree(), blocks)
}

/// The action induced on the blocks of `bs`: image on block indices, kernel
/// fixing every block setwise. `|G| = |image| * |kernel|`.
pub fn block_action(g: &PermGroup, bs: &BlockSystem) -> Result<InducedAction> {
    if !bs.is_valid_for(g) {
        return Err(Error::InvalidBlockSystem(
            "partition is not invariant under the group".into(),
        ));
    }
    let n = g.degree();
    let t = bs.block_count();
    // extend the action with one point per block; the kernel is then the
    // pointwise stabilizer of the block points
    let mut ext_gens = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let mut images: Vec<usize> = (0..n + t).collect();
        for p in 0..n {
            images[p] = gen.apply(p);
        }
        for (j, block) in bs.blocks().iter().enumerate() {
            images[n + j] = n + bs.block_index_of(gen.apply(block[0]));
        }
        ext_gens.push(Perm::from_images(&images)?);
    }
    let extended = PermGroup::from_generators(n + t, ext_gens)?;
    let image_gens = extended
        .generators()
        .iter()
        .map(|gen| {
            let images: Vec<usize> = (0..t).map(|j| gen.apply(n + j) - n).collect();
            Perm::from_images(&images)
        })
        .collect::<Result<Vec<_>>>()?;
    let image = PermGroup::from_generators(t, image_gens)?;
    let block_points: Vec<usize> = (n..n + t).collect();
    let kernel_ext = extended.pointwise_stabilizer(&block_points)?;
    let kernel_gens = kernel_ext
        .generators()
        .iter()
        .map(|gen| {
            let images: Vec<usize> = (0..n).map(|p| gen.apply(p)).collect();
            Perm::from_images(&images)
        })
        .collect::<Result<Vec<_>>>()?;
    let kernel = PermGroup::from_generators(n, kernel_gens)?;
    debug_assert_eq!(
        g.order().clone(),
        image.order() * kernel.order(),
        "block action order identity"
    );
    let point_map = (0..n).map(|p| Some(bs.block_index_of(p))).collect();
    Ok(InducedAction {
        image,
        kernel,
        point_map,
    })
}

/// The action induced on a G-invariant set `s`, re-indexed to `0..|s|-1`.
/// The kernel is the pointwise stabilizer of `s` in `g`.
pub fn restrict_to_invariant_set(g: &PermGroup, s: &[usize]) -> Result<InducedAction> {
    let mut s: Vec<usize> = s.to_vec();
    s.sort_unstable();
    s.dedup();
    for &p in &s {
        if p >= g.degree() {
            return Err(Error::PointOutOfRange {
                point: p,
                degree: g.degree(),
            });
        }
    }
    let mut local = vec![None; g.degree()];
    for (i, &p) in s.iter().enumerate() {
        local[p] = Some(i);
    }
    let mut image_gens = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let mut images = vec![0usize; s.len()];
        for (i, &p) in s.iter().enumerate() {
            let q = gen.apply(p);
            match local[q] {
                Some(j) => images[i] = j,
                None => return Err(Error::NotInvariant),
            }
        }
        image_gens.push(Perm::from_images(&images)?);
    }
    let image = PermGroup::from_generators(s.len().max(1), image_gens)?;
    let kernel = g.pointwise_stabilizer(&s)?;
    debug_assert_eq!(g.order().clone(), image.order() * kernel.order());
    Ok(InducedAction {
        image,
        kernel,
        point_map: local,
    })
}

/// The setwise stabilizer of one block: the subgroup mapping
/// `bs.blocks()[block_idx]` to itself. For a transitive group it acts
/// transitively on the block and has index `block_count` in `g`.
pub fn block_setwise_stabilizer(
    g: &PermGroup,
    bs: &BlockSystem,
    block_idx: usize,
) -> Result<PermGroup> {
    if !bs.is_valid_for(g) {
        return Err(Error::InvalidBlockSystem(
            "partition is not invariant under the group".into(),
        ));
    }
    if block_idx >= bs.block_count() {
        return Err(Error::PointOutOfRange {
            point: block_idx,
            degree: bs.block_count(),
        });
    }
    let n = g.degree();
    let t = bs.block_count();
    let mut ext_gens = Vec::with_capacity(g.generators().len());
    for gen in g.generators() {
        let mut images: Vec<usize> = (0..n + t).collect();
        for p in 0..n {
            images[p] = gen.apply(p);
        }
        for (j, block) in bs.blocks().iter().enumerate() {
            images[n + j] = n + bs.block_index_of(gen.apply(block[0]));
        }
        ext_gens.push(Perm::from_images(&images)?);
    }
    let extended = PermGroup::from_generators(n + t, ext_gens)?;
    let stab = extended.point_stabilizer(n + block_idx)?;
    let gens = stab
        .generators()
        .iter()
        .map(|gen| {
            let images: Vec<usize> = (0..n).map(|p| gen.apply(p)).collect();
            Perm::from_images(&images)
        })
        .collect::<Result<Vec<_>>>()?;
    PermGroup::from_generators(n, gens)
}

/// Transitive with every minimal normal subgroup transitive. Subject to the
/// enumeration limit of the normal-subgroup search.
pub fn is_quasiprimitive(g: &PermGroup, limits: &Limits) -> Result<bool> {
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    for n in minimal_normal_subgroups(g, limits)? {
        if !n.is_transitive() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Orbit-counting helper used by a few reports: the number of blocks times
/// the block size is the degree.
pub fn order_identity_holds(g: &PermGroup, action: &InducedAction) -> bool {
    g.order().clone() == action.image.order() * action.kernel.order()
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            // keep the smaller root as representative for determinism
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

#[allow(dead_code)]
fn order_of(g: &PermGroup) -> BigUint {
    g.order().clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;

    fn pc(degree: usize, s: &str) -> Perm {
        Perm::parse_cycles(degree, s).unwrap()
    }

    fn grp(degree: usize, gens: &[&str]) -> PermGroup {
        PermGroup::from_generators(degree, gens.iter().map(|s| pc(degree, s)).collect()).unwrap()
    }

    #[test]
    fn orbit_examples() {
        let c4 = grp(4, &["(0 1 2 3)"]);
        assert_eq!(c4.orbits(), vec![vec![0, 1, 2, 3]]);
        let g = grp(4, &["(0 1)"]);
        assert_eq!(g.orbits(), vec![vec![0, 1], vec![2], vec![3]]);
        let v4 = grp(4, &["(0 1)(2 3)", "(0 2)(1 3)"]);
        assert_eq!(v4.orbits().len(), 1);
        assert!(v4.is_transitive());
    }

    #[test]
    fn minimal_block_in_c4() {
        let c4 = grp(4, &["(0 1 2 3)"]);
        assert_eq!(minimal_block_containing(&c4, 0, 2).unwrap(), vec![0, 2]);
        assert_eq!(
            minimal_block_containing(&c4, 0, 1).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert!(minimal_block_containing(&c4, 0, 0).is_err());
    }

    #[test]
    fn symmetric_groups_are_primitive() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        assert_eq!(
            minimal_block_containing(&s4, 0, 1).unwrap(),
            vec![0, 1, 2, 3]
        );
        assert!(is_primitive(&s4).unwrap());
        let s5 = grp(5, &["(0 1)", "(0 1 2 3 4)"]);
        assert!(is_primitive(&s5).unwrap());
    }

    #[test]
    fn c4_has_one_minimal_system() {
        let c4 = grp(4, &["(0 1 2 3)"]);
        assert!(!is_primitive(&c4).unwrap());
        let systems = minimal_block_systems(&c4).unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].blocks(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn square_dihedral_diagonals() {
        // dihedral of order 8 on square vertices 0-1-2-3
        let d4 = grp(4, &["(0 1 2 3)", "(1 3)"]);
        assert_eq!(d4.order(), &BigUint::from(8u32));
        let systems = minimal_block_systems(&d4).unwrap();
        assert_eq!(systems.len(), 1);
        assert_eq!(systems[0].blocks(), &[vec![0, 2], vec![1, 3]]);
    }

    #[test]
    fn maximal_blocks_of_cyclic_groups() {
        let c8 = grp(8, &["(0 1 2 3 4 5 6 7)"]);
        let maximal = maximal_block_containing(&c8, 0).unwrap();
        assert_eq!(maximal.blocks(), &[vec![0, 2, 4, 6], vec![1, 3, 5, 7]]);
        let c4 = grp(4, &["(0 1 2 3)"]);
        assert_eq!(
            maximal_block_containing(&c4, 0).unwrap().blocks(),
            &[vec![0, 2], vec![1, 3]]
        );
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        assert!(matches!(
            maximal_block_containing(&s4, 0),
            Err(Error::PrimitiveInput)
        ));
    }

    #[test]
    fn maximal_blocks_of_order_eight_wreath() {
        // C2 wr C2 in its imprimitive action on 4 points
        let w = grp(4, &["(0 1)", "(0 2)(1 3)"]);
        assert_eq!(w.order(), &BigUint::from(8u32));
        let maximal = maximal_block_containing(&w, 0).unwrap();
        assert_eq!(maximal.block_size(), 2);
        let quotient = block_action(&w, &maximal).unwrap();
        assert!(is_primitive(&quotient.image).unwrap());
    }

    #[test]
    fn block_action_on_c4() {
        let c4 = grp(4, &["(0 1 2 3)"]);
        let bs = BlockSystem::from_blocks(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let action = block_action(&c4, &bs).unwrap();
        assert_eq!(action.image.order(), &BigUint::from(2u32));
        assert_eq!(action.kernel.order(), &BigUint::from(2u32));
        assert!(order_identity_holds(&c4, &action));
    }

    #[test]
    fn block_action_on_square_dihedral() {
        let d4 = grp(4, &["(0 1 2 3)", "(1 3)"]);
        let bs = BlockSystem::from_blocks(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let action = block_action(&d4, &bs).unwrap();
        assert_eq!(action.image.order(), &BigUint::from(2u32));
        assert_eq!(action.kernel.order(), &BigUint::from(4u32));
    }

    #[test]
    fn block_action_on_singletons_is_faithful() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let action = block_action(&s4, &BlockSystem::singletons(4)).unwrap();
        assert_eq!(action.image.order(), s4.order());
        assert!(action.kernel.order().is_one());
    }

    #[test]
    fn invalid_block_system_is_rejected() {
        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let bs = BlockSystem::from_blocks(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(
            block_action(&s4, &bs),
            Err(Error::InvalidBlockSystem(_))
        ));
    }

    #[test]
    fn restriction_to_invariant_set() {
        let g = grp(4, &["(0 1)", "(2 3)"]);
        let action = restrict_to_invariant_set(&g, &[0, 1]).unwrap();
        assert_eq!(action.image.order(), &BigUint::from(2u32));
        assert_eq!(action.kernel.order(), &BigUint::from(2u32));
        assert!(action.kernel.contains(&pc(4, "(2 3)")).unwrap());

        let s4 = grp(4, &["(0 1)", "(0 1 2 3)"]);
        let full = restrict_to_invariant_set(&s4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(full.image.order(), s4.order());
        assert!(full.kernel.is_trivial());

        assert!(matches!(
            restrict_to_invariant_set(&s4, &[0, 1]),
            Err(Error::NotInvariant)
        ));
    }

    #[test]
    fn quasiprimitivity_examples() {
        let limits = Limits::default();
        let a5 = grp(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        assert!(is_quasiprimitive(&a5, &limits).unwrap());
        let c4 = grp(4, &["(0 1 2 3)"]);
        assert!(!is_quasiprimitive(&c4, &limits).unwrap());
    }

    #[test]
    fn block_stabilizer_acts_transitively_on_its_block() {
        let c4 = grp(4, &["(0 1 2 3)"]);
        let bs = BlockSystem::from_blocks(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let stab = block_setwise_stabilizer(&c4, &bs, 0).unwrap();
        assert_eq!(stab.order(), &BigUint::from(2u32));
        assert!(stab.contains(&pc(4, "(0 2)(1 3)")).unwrap());

        let d4 = grp(4, &["(0 1 2 3)", "(1 3)"]);
        let stab = block_setwise_stabilizer(&d4, &bs, 0).unwrap();
        assert_eq!(stab.order(), &BigUint::from(4u32));
        assert_eq!(stab.orbit(0).unwrap(), vec![0, 2]);
    }

    #[test]
    fn a5_on_cosets_of_c5_is_quasiprimitive_but_imprimitive() {
        let a5 = grp(5, &["(0 1 2)", "(0 1 2 3 4)"]);
        let c5 = grp(5, &["(0 1 2 3 4)"]);
        let action = a5.coset_action(&c5, 10_000).unwrap();
        assert_eq!(action.degree(), 12);
        assert!(!is_primitive(&action).unwrap());
        assert!(is_quasiprimitive(&action, &Limits::default()).unwrap());
    }
}
