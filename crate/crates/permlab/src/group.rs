//! Permutation groups backed by a deterministic Schreier–Sims stabilizer
//! chain: exact orders, membership, point and pointwise stabilizers, normal
//! closures and element enumeration.
//!
//! Everything is deterministic: the same generators in the same order always
//! produce the same chain, the same transversals and the same element
//! enumeration order. There is no randomization anywhere.

use std::collections::BTreeSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};

use crate::error::{Error, Result};
use crate::perm::Perm;

/// One level of a stabilizer chain: a base point, the strong generators that
/// fix all earlier base points, and the fundamental orbit with an explicit
/// transversal (elements, not words).
#[derive(Clone, Debug)]
struct Level {
    base_point: usize,
    gens: Vec<Perm>,
    /// Fundamental orbit in BFS discovery order.
    orbit: Vec<usize>,
    /// `transversal[p]` maps the base point to `p`; paired with its inverse.
    transversal: Vec<Option<(Perm, Perm)>>,
}

impl Level {
    fn new(degree: usize, base_point: usize) -> Level {
        let mut level = Level {
            base_point,
            gens: Vec::new(),
            orbit: Vec::new(),
            transversal: vec![None; degree],
        };
        level.recompute_orbit(degree);
        level
    }

    fn recompute_orbit(&mut self, degree: usize) {
        self.orbit.clear();
        self.transversal = vec![None; degree];
        self.orbit.push(self.base_point);
        let id = Perm::identity(degree);
        self.transversal[self.base_point] = Some((id.clone(), id));
        let mut head = 0;
        while head < self.orbit.len() {
            let p = self.orbit[head];
            head += 1;
            let up = self.transversal[p].as_ref().unwrap().0.clone();
            for g in &self.gens {
                let q = g.apply(p);
                if self.transversal[q].is_none() {
                    let uq = up.then(g);
                    let uq_inv = uq.inverse();
                    self.transversal[q] = Some((uq, uq_inv));
                    self.orbit.push(q);
                }
            }
        }
    }
}

/// Base, fundamental orbits, transversals and strong generators for a group,
/// built by the deterministic (non-random) Schreier–Sims procedure.
#[derive(Clone, Debug)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds a chain for `⟨gens⟩` on `degree` points. `base_prefix` points
    /// are installed as the first base points in the given order, which is
    /// how base changes for pointwise stabilizers are done.
    pub fn build(degree: usize, gens: &[Perm], base_prefix: &[usize]) -> Result<StabilizerChain> {
        let mut chain = StabilizerChain {
            degree,
            levels: Vec::new(),
        };
        let mut seen_base = vec![false; degree];
        for &b in base_prefix {
            if b >= degree {
                return Err(Error::PointOutOfRange { point: b, degree });
            }
            if !std::mem::replace(&mut seen_base[b], true) {
                chain.levels.push(Level::new(degree, b));
            }
        }
        let mut normalized: Vec<Perm> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if !g.is_identity() && !normalized.contains(g) {
                normalized.push(g.clone());
            }
        }
        for g in normalized {
            chain.add_strong_generator(g);
        }
        // Verify every level's Schreier generators, deepest first. A failed
        // sift adds a strong generator further down and restarts there.
        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            match chain.verify_level(i as usize) {
                Some(residue) => {
                    let j = chain.add_strong_generator(residue);
                    i = j as isize;
                }
                None => i -= 1,
            }
        }
        Ok(chain)
    }

    /// Inserts `g` into every level whose base prefix it fixes, appending a
    /// new level if it fixes the whole base. Returns the deepest level that
    /// received it.
    fn add_strong_generator(&mut self, g: Perm) -> usize {
        debug_assert!(!g.is_identity());
        let mut j = 0;
        while j < self.levels.len() && g.apply(self.levels[j].base_point) == self.levels[j].base_point
        {
            j += 1;
        }
        if j == self.levels.len() {
            let b = g.smallest_moved_point().expect("non-identity");
            self.levels.push(Level::new(self.degree, b));
        }
        for i in 0..=j {
            self.levels[i].gens.push(g.clone());
            let level = &mut self.levels[i];
            level.recompute_orbit(g.degree());
        }
        j
    }

    /// Checks all Schreier generators of level `i` against the deeper part of
    /// the chain; returns the first nontrivial sift residue, if any.
    fn verify_level(&self, i: usize) -> Option<Perm> {
        let level = &self.levels[i];
        for &p in &level.orbit {
            let up = &level.transversal[p].as_ref().unwrap().0;
            for s in &level.gens {
                let q = s.apply(p);
                let uq_inv = &level.transversal[q].as_ref().unwrap().1;
                let schreier = up.then(s).then(uq_inv);
                if schreier.is_identity() {
                    continue;
                }
                let (residue, _) = self.sift_from(i + 1, schreier);
                if !residue.is_identity() {
                    return Some(residue);
                }
            }
        }
        None
    }

    /// Sifts `g` through levels `start..`, returning the residue and the
    /// level index at which sifting stopped.
    fn sift_from(&self, start: usize, mut g: Perm) -> (Perm, usize) {
        for l in start..self.levels.len() {
            let level = &self.levels[l];
            let q = g.apply(level.base_point);
            match &level.transversal[q] {
                None => return (g, l),
                Some((_, uq_inv)) => g = g.then(uq_inv),
            }
        }
        (g, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Product of the fundamental orbit lengths.
    pub fn order(&self) -> BigUint {
        let mut order = BigUint::one();
        for level in &self.levels {
            order *= BigUint::from(level.orbit.len());
        }
        order
    }

    pub fn contains(&self, p: &Perm) -> bool {
        if p.degree() != self.degree {
            return false;
        }
        self.sift_from(0, p.clone()).0.is_identity()
    }

    pub fn base(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.base_point).collect()
    }

    /// All strong generators (the level-0 generator list).
    pub fn strong_generators(&self) -> Vec<Perm> {
        self.levels
            .first()
            .map(|l| l.gens.clone())
            .unwrap_or_default()
    }

    /// Strong generators fixing the first `k` base points pointwise; they
    /// generate that pointwise stabilizer.
    pub fn generators_fixing_prefix(&self, k: usize) -> Vec<Perm> {
        if k >= self.levels.len() {
            Vec::new()
        } else {
            self.levels[k].gens.clone()
        }
    }

    /// Elements in a canonical order: transversal products, deepest level
    /// innermost, orbit points visited in ascending order.
    fn elements(&self) -> Vec<Perm> {
        let mut result = vec![Perm::identity(self.degree)];
        for level in self.levels.iter().rev() {
            if level.orbit.len() == 1 {
                continue;
            }
            let mut points: Vec<usize> = level.orbit.clone();
            points.sort_unstable();
            let mut next = Vec::with_capacity(result.len() * points.len());
            for &p in &points {
                let up = &level.transversal[p].as_ref().unwrap().0;
                for d in &result {
                    next.push(d.then(up));
                }
            }
            result = next;
        }
        result
    }
}

/// A permutation group: generators plus a stabilizer chain giving exact
/// order, membership and stabilizers.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    chain: StabilizerChain,
    order: BigUint,
}

impl PermGroup {
    /// Builds the group generated by `gens` on `degree` points. The empty
    /// list gives the trivial group. Identity and duplicate generators are
    /// dropped; otherwise generator order is preserved, so identical input
    /// yields an identical chain.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        if degree == 0 {
            return Err(Error::InvalidInput("degree must be at least 1".into()));
        }
        let mut normalized: Vec<Perm> = Vec::new();
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
            if !g.is_identity() && !normalized.contains(&g) {
                normalized.push(g);
            }
        }
        let chain = StabilizerChain::build(degree, &normalized, &[])?;
        let order = chain.order();
        Ok(PermGroup {
            degree,
            gens: normalized,
            chain,
            order,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new()).expect("degree >= 1")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> &BigUint {
        &self.order
    }

    pub fn order_u64(&self) -> Option<u64> {
        self.order.to_u64()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn chain(&self) -> &StabilizerChain {
        &self.chain
    }

    pub fn is_trivial(&self) -> bool {
        self.order.is_one()
    }

    pub fn contains(&self, p: &Perm) -> Result<bool> {
        if p.degree() != self.degree {
            return Err(Error::DegreeMismatch(self.degree, p.degree()));
        }
        Ok(self.chain.contains(p))
    }

    /// The orbit of `x`, sorted ascending.
    pub fn orbit(&self, x: usize) -> Result<Vec<usize>> {
        Ok(self.orbit_transversal(x)?.0)
    }

    /// Orbit of `x` (sorted) together with transversal elements `u_p`
    /// mapping `x` to each orbit point `p`.
    pub fn orbit_transversal(&self, x: usize) -> Result<(Vec<usize>, Vec<Option<Perm>>)> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        let mut transversal: Vec<Option<Perm>> = vec![None; self.degree];
        transversal[x] = Some(Perm::identity(self.degree));
        let mut queue = vec![x];
        let mut head = 0;
        while head < queue.len() {
            let p = queue[head];
            head += 1;
            let up = transversal[p].clone().unwrap();
            for g in &self.gens {
                let q = g.apply(p);
                if transversal[q].is_none() {
                    transversal[q] = Some(up.then(g));
                    queue.push(q);
                }
            }
        }
        queue.sort_unstable();
        Ok((queue, transversal))
    }

    /// Orbits as a partition: each orbit sorted, orbits ordered by smallest
    /// element. They are G-invariant, pairwise disjoint and cover the domain.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree];
        let mut out = Vec::new();
        for start in 0..self.degree {
            if seen[start] {
                continue;
            }
            let orbit = self.orbit(start).expect("in range");
            for &p in &orbit {
                seen[p] = true;
            }
            out.push(orbit);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 1 || self.orbit(0).expect("in range").len() == self.degree
    }

    /// Transitive with trivial point stabilizers.
    pub fn is_regular(&self) -> bool {
        self.is_transitive() && self.order == BigUint::from(self.degree)
    }

    /// The subgroup fixing `x`, with its own generators and chain.
    pub fn point_stabilizer(&self, x: usize) -> Result<PermGroup> {
        if x >= self.degree {
            return Err(Error::PointOutOfRange {
                point: x,
                degree: self.degree,
            });
        }
        self.pointwise_stabilizer(&[x])
    }

    /// The subgroup fixing every point of `s`, via a base change placing `s`
    /// first.
    pub fn pointwise_stabilizer(&self, s: &[usize]) -> Result<PermGroup> {
        let mut prefix: Vec<usize> = s.to_vec();
        prefix.sort_unstable();
        prefix.dedup();
        for &p in &prefix {
            if p >= self.degree {
                return Err(Error::PointOutOfRange {
                    point: p,
                    degree: self.degree,
                });
            }
        }
        if prefix.is_empty() {
            return Ok(self.clone());
        }
        let rebased = StabilizerChain::build(self.degree, &self.gens, &prefix)?;
        let gens = rebased.generators_fixing_prefix(prefix.len());
        PermGroup::from_generators(self.degree, gens)
    }

    /// Smallest normal subgroup of `self` containing `seeds`; closed under
    /// conjugation by all generators.
    pub fn normal_closure(&self, seeds: &[Perm]) -> Result<PermGroup> {
        let mut closure_gens: Vec<Perm> = Vec::new();
        for s in seeds {
            if !self.contains(s)? {
                return Err(Error::NotInGroup);
            }
            if !s.is_identity() && !closure_gens.contains(s) {
                closure_gens.push(s.clone());
            }
        }
        loop {
            let n = PermGroup::from_generators(self.degree, closure_gens.clone())?;
            let mut fresh: Vec<Perm> = Vec::new();
            let mut fresh_set: BTreeSet<Perm> = BTreeSet::new();
            for x in &closure_gens {
                for g in &self.gens {
                    let c = x.conjugate_by(g);
                    if !n.chain.contains(&c) && fresh_set.insert(c.clone()) {
                        fresh.push(c);
                    }
                }
            }
            if fresh.is_empty() {
                return Ok(n);
            }
            closure_gens.extend(fresh);
        }
    }

    /// Whether `n` is a normal subgroup of `self`, by conjugating `n`'s
    /// generators with `self`'s generators. `n` must be a subgroup.
    pub fn is_normal(&self, n: &PermGroup) -> Result<bool> {
        if n.degree != self.degree {
            return Err(Error::DegreeMismatch(self.degree, n.degree));
        }
        for x in &n.gens {
            if !self.chain.contains(x) {
                return Err(Error::NotInGroup);
            }
        }
        for g in &self.gens {
            for x in &n.gens {
                if !n.chain.contains(&x.conjugate_by(g)) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Every element exactly once, in a deterministic order. Errors when the
    /// order exceeds `limit`.
    pub fn elements(&self, limit: u64) -> Result<Vec<Perm>> {
        if self.order > BigUint::from(limit) {
            return Err(Error::ResourceLimit {
                what: "element enumeration",
                needed: self.order.to_string(),
                limit,
            });
        }
        Ok(self.chain.elements())
    }

    /// Same underlying set of permutations.
    pub fn eq_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree
            && self.order == other.order
            && other.gens.iter().all(|g| self.chain.contains(g))
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.gens.iter().all(|g| other.chain.contains(g))
    }

    /// The group rebuilt from its strong generating set.
    pub fn rebuilt_from_strong_generators(&self) -> PermGroup {
        PermGroup::from_generators(self.degree, self.chain.strong_generators())
            .expect("strong generators are valid")
    }

    /// Action of `self` on the right cosets of `subgroup`, with cosets
    /// labelled by their lexicographically minimal element and numbered in
    /// that order. Needs full element enumeration of `self`.
    pub fn coset_action(&self, subgroup: &PermGroup, limit: u64) -> Result<PermGroup> {
        if !subgroup.is_subgroup_of(self) {
            return Err(Error::NotInGroup);
        }
        let elems = self.elements(limit)?;
        let sub_elems = subgroup.elements(limit)?;
        let mut coset_of: std::collections::HashMap<Perm, usize> = std::collections::HashMap::new();
        let mut reps: Vec<Perm> = Vec::new();
        for e in &elems {
            if coset_of.contains_key(e) {
                continue;
            }
            let members: Vec<Perm> = sub_elems.iter().map(|h| h.then(e)).collect();
            let rep = members.iter().min().unwrap().clone();
            let idx = reps.len();
            reps.push(rep);
            for m in members {
                coset_of.insert(m, idx);
            }
        }
        // Renumber cosets by their minimal representative.
        let mut order: Vec<usize> = (0..reps.len()).collect();
        order.sort_by(|&a, &b| reps[a].cmp(&reps[b]));
        let mut rank = vec![0usize; reps.len()];
        for (new, &old) in order.iter().enumerate() {
            rank[old] = new;
        }
        let t = reps.len();
        let mut action_gens = Vec::new();
        for g in &self.gens {
            let mut images = vec![0usize; t];
            for old in 0..t {
                let target = coset_of[&reps[old].then(g)];
                images[rank[old]] = rank[target];
            }
            action_gens.push(Perm::from_images(&images)?);
        }
        PermGroup::from_generators(t, action_gens)
    }
}
