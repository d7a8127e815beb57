//! Deterministic constructors for families of transitive groups plus a
//! seeded random transitive-subgroup sampler. Together they provide the
//! test universe for every bound check: two runs with equal parameters
//! produce identical generator lists, bit for bit.

use std::collections::HashMap;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::fileformat::format_group_file;
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::primes::sieve;

/// A family tag plus parameters, resolving deterministically to a
/// transitive permutation group of the declared degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Frobenius group of order p*d on p points: translations plus a
    /// multiplier of order d, where d divides p-1.
    Frobenius { p: usize, d: usize },
    /// Sym(n) acting on the n(n-1)/2 unordered pairs.
    Johnson(usize),
    /// PSL(2,p) on the projective line, infinity encoded as point p.
    Psl2(usize),
    /// A wr B in the imprimitive action on (deg A)·(deg B) points.
    WreathImprimitive(Box<GroupSpec>, Box<GroupSpec>),
    /// A wr Sym(b) in the product action on (deg A)^b points.
    WreathPower(Box<GroupSpec>, usize),
    /// Right regular representation of the base group.
    RegularRep(Box<GroupSpec>),
    Random {
        degree: usize,
        order_cap: u64,
        seed: u64,
    },
}

impl GroupSpec {
    pub fn name(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("cyclic({n})"),
            GroupSpec::Dihedral(n) => format!("dihedral({n})"),
            GroupSpec::Symmetric(n) => format!("symmetric({n})"),
            GroupSpec::Alternating(n) => format!("alternating({n})"),
            GroupSpec::Frobenius { p, d } => format!("frobenius({p},{d})"),
            GroupSpec::Johnson(n) => format!("johnson({n})"),
            GroupSpec::Psl2(p) => format!("psl2({p})"),
            GroupSpec::WreathImprimitive(a, b) => {
                format!("wreath_imprimitive({},{})", a.name(), b.name())
            }
            GroupSpec::WreathPower(a, b) => format!("wreath_power({},{b})", a.name()),
            GroupSpec::RegularRep(a) => format!("regular({})", a.name()),
            GroupSpec::Random { degree, seed, .. } => format!("random(d={degree},seed={seed})"),
        }
    }

    /// Filesystem-safe slug used in corpus export file names.
    pub fn slug(&self) -> String {
        match self {
            GroupSpec::Cyclic(n) => format!("cyclic_{n}"),
            GroupSpec::Dihedral(n) => format!("dihedral_{n}"),
            GroupSpec::Symmetric(n) => format!("symmetric_{n}"),
            GroupSpec::Alternating(n) => format!("alternating_{n}"),
            GroupSpec::Frobenius { p, d } => format!("frobenius_{p}_{d}"),
            GroupSpec::Johnson(n) => format!("johnson_{n}"),
            GroupSpec::Psl2(p) => format!("psl2_{p}"),
            GroupSpec::WreathImprimitive(a, b) => {
                format!("wreath_imprimitive_{}_{}", a.slug(), b.slug())
            }
            GroupSpec::WreathPower(a, b) => format!("wreath_power_{}_{b}", a.slug()),
            GroupSpec::RegularRep(a) => format!("regular_{}", a.slug()),
            GroupSpec::Random { degree, seed, .. } => format!("random_{degree}_{seed}"),
        }
    }

    /// Builds the group. Family parameters are validated; the result is
    /// always transitive of the declared degree.
    pub fn build(&self) -> Result<PermGroup> {
        match self {
            GroupSpec::Cyclic(n) => {
                require(*n >= 2, "cyclic needs n >= 2")?;
                let images: Vec<usize> = (0..*n).map(|i| (i + 1) % n).collect();
                PermGroup::from_generators(*n, vec![Perm::from_images(&images)?])
            }
            GroupSpec::Dihedral(n) => {
                require(*n >= 3, "dihedral needs n >= 3")?;
                let rotation: Vec<usize> = (0..*n).map(|i| (i + 1) % n).collect();
                let reflection: Vec<usize> = (0..*n).map(|i| (n - i) % n).collect();
                PermGroup::from_generators(
                    *n,
                    vec![
                        Perm::from_images(&rotation)?,
                        Perm::from_images(&reflection)?,
                    ],
                )
            }
            GroupSpec::Symmetric(n) => {
                require(*n >= 2, "symmetric needs n >= 2")?;
                PermGroup::from_generators(*n, symmetric_generators(*n))
            }
            GroupSpec::Alternating(n) => {
                require(*n >= 3, "alternating needs n >= 3")?;
                PermGroup::from_generators(*n, alternating_generators(*n))
            }
            GroupSpec::Frobenius { p, d } => {
                require(
                    crate::primes::is_prime_u64(*p as u64),
                    "frobenius needs prime p",
                )?;
                require(*d >= 1 && (p - 1) % d == 0, "frobenius needs d | p-1")?;
                let translation: Vec<usize> = (0..*p).map(|i| (i + 1) % p).collect();
                let g = primitive_root(*p);
                let mult = pow_mod(g, ((p - 1) / d) as u64, *p);
                let multiplier: Vec<usize> = (0..*p).map(|i| (i * mult) % p).collect();
                PermGroup::from_generators(
                    *p,
                    vec![
                        Perm::from_images(&translation)?,
                        Perm::from_images(&multiplier)?,
                    ],
                )
            }
            GroupSpec::Johnson(n) => {
                require(*n >= 3, "johnson needs n >= 3")?;
                let pairs: Vec<(usize, usize)> = (0..*n)
                    .flat_map(|i| ((i + 1)..*n).map(move |j| (i, j)))
                    .collect();
                let mut index = HashMap::new();
                for (idx, &pair) in pairs.iter().enumerate() {
                    index.insert(pair, idx);
                }
                let mut gens = Vec::new();
                for base in symmetric_generators(*n) {
                    let images: Vec<usize> = pairs
                        .iter()
                        .map(|&(a, b)| {
                            let (a, b) = (base.apply(a), base.apply(b));
                            index[&(a.min(b), a.max(b))]
                        })
                        .collect();
                    gens.push(Perm::from_images(&images)?);
                }
                PermGroup::from_generators(pairs.len(), gens)
            }
            GroupSpec::Psl2(p) => {
                require(
                    *p >= 5 && crate::primes::is_prime_u64(*p as u64),
                    "psl2 needs prime p >= 5",
                )?;
                let infinity = *p;
                // z -> z + 1, infinity fixed
                let mut translation: Vec<usize> = (0..*p).map(|i| (i + 1) % p).collect();
                translation.push(infinity);
                // z -> -1/z, swapping 0 and infinity
                let mut inversion = vec![0usize; p + 1];
                inversion[0] = infinity;
                inversion[infinity] = 0;
                for z in 1..*p {
                    let inv = pow_mod(z, (*p as u64) - 2, *p);
                    inversion[z] = (p - inv) % p;
                }
                PermGroup::from_generators(
                    p + 1,
                    vec![
                        Perm::from_images(&translation)?,
                        Perm::from_images(&inversion)?,
                    ],
                )
            }
            GroupSpec::WreathImprimitive(a_spec, b_spec) => {
                let a = a_spec.build()?;
                let b = b_spec.build()?;
                let (da, db) = (a.degree(), b.degree());
                let n = da * db;
                let mut gens = Vec::new();
                // base generators acting on the first block
                for g in a.generators() {
                    let mut images: Vec<usize> = (0..n).collect();
                    for o in 0..da {
                        images[o] = g.apply(o);
                    }
                    gens.push(Perm::from_images(&images)?);
                }
                // top generators permuting the blocks wholesale
                for h in b.generators() {
                    let images: Vec<usize> = (0..n)
                        .map(|point| {
                            let (block, offset) = (point / da, point % da);
                            h.apply(block) * da + offset
                        })
                        .collect();
                    gens.push(Perm::from_images(&images)?);
                }
                PermGroup::from_generators(n, gens)
            }
            GroupSpec::WreathPower(a_spec, b) => {
                require(*b >= 2, "wreath power needs b >= 2")?;
                let a = a_spec.build()?;
                let da = a.degree();
                let n = da.pow(*b as u32);
                let decode = |mut point: usize| -> Vec<usize> {
                    let mut tuple = vec![0usize; *b];
                    for slot in tuple.iter_mut() {
                        *slot = point % da;
                        point /= da;
                    }
                    tuple
                };
                let encode = |tuple: &[usize]| -> usize {
                    tuple.iter().rev().fold(0usize, |acc, &x| acc * da + x)
                };
                let mut gens = Vec::new();
                // base generators acting on coordinate 0
                for g in a.generators() {
                    let images: Vec<usize> = (0..n)
                        .map(|point| {
                            let mut tuple = decode(point);
                            tuple[0] = g.apply(tuple[0]);
                            encode(&tuple)
                        })
                        .collect();
                    gens.push(Perm::from_images(&images)?);
                }
                // coordinate permutations from Sym(b)
                for h in symmetric_generators(*b) {
                    let images: Vec<usize> = (0..n)
                        .map(|point| {
                            let tuple = decode(point);
                            let mut moved = vec![0usize; *b];
                            for (j, &x) in tuple.iter().enumerate() {
                                moved[h.apply(j)] = x;
                            }
                            encode(&moved)
                        })
                        .collect();
                    gens.push(Perm::from_images(&images)?);
                }
                PermGroup::from_generators(n, gens)
            }
            GroupSpec::RegularRep(base_spec) => {
                let base = base_spec.build()?;
                let order = base
                    .order_u64()
                    .ok_or_else(|| Error::InvalidInput("base group too large".into()))?;
                let elems = base.elements(order.max(1))?;
                let mut index = HashMap::new();
                for (i, e) in elems.iter().enumerate() {
                    index.insert(e.clone(), i);
                }
                let mut gens = Vec::new();
                for g in base.generators() {
                    let images: Vec<usize> =
                        elems.iter().map(|e| index[&e.compose(g).unwrap()]).collect();
                    gens.push(Perm::from_images(&images)?);
                }
                PermGroup::from_generators(elems.len(), gens)
            }
            GroupSpec::Random {
                degree,
                order_cap,
                seed,
            } => random_transitive(*degree, *order_cap, *seed).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "no transitive group of degree {degree} under cap {order_cap} for seed {seed}"
                ))
            }),
        }
    }

    /// Closed-form order when the family has one.
    pub fn expected_order(&self) -> Option<BigUint> {
        match self {
            GroupSpec::Cyclic(n) => Some(BigUint::from(*n)),
            GroupSpec::Dihedral(n) => Some(BigUint::from(2 * n)),
            GroupSpec::Symmetric(n) => Some(factorial(*n)),
            GroupSpec::Alternating(n) => Some(factorial(*n) / BigUint::from(2u32)),
            GroupSpec::Frobenius { p, d } => Some(BigUint::from(p * d)),
            GroupSpec::Johnson(n) => Some(factorial(*n)),
            GroupSpec::Psl2(p) => Some(BigUint::from(p * (p * p - 1) / 2)),
            GroupSpec::WreathImprimitive(a, b) => {
                let oa = a.expected_order()?;
                let ob = b.expected_order()?;
                let db = degree_of(b)?;
                Some(oa.pow(db as u32) * ob)
            }
            GroupSpec::WreathPower(a, b) => {
                let oa = a.expected_order()?;
                Some(oa.pow(*b as u32) * factorial(*b))
            }
            GroupSpec::RegularRep(a) => a.expected_order(),
            GroupSpec::Random { .. } => None,
        }
    }
}

fn degree_of(spec: &GroupSpec) -> Option<usize> {
    match spec {
        GroupSpec::Cyclic(n)
        | GroupSpec::Dihedral(n)
        | GroupSpec::Symmetric(n)
        | GroupSpec::Alternating(n) => Some(*n),
        GroupSpec::Frobenius { p, .. } => Some(*p),
        GroupSpec::Johnson(n) => Some(n * (n - 1) / 2),
        GroupSpec::Psl2(p) => Some(p + 1),
        _ => None,
    }
}

fn require(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::InvalidInput(msg.to_string()))
    }
}

fn factorial(n: usize) -> BigUint {
    let mut out = BigUint::one();
    for i in 2..=n {
        out *= BigUint::from(i);
    }
    out
}

fn symmetric_generators(n: usize) -> Vec<Perm> {
    let mut gens = Vec::new();
    if n >= 2 {
        gens.push(Perm::from_cycles(n, &[vec![0, 1]]).unwrap());
    }
    if n >= 3 {
        gens.push(Perm::from_cycles(n, &[(0..n).collect()]).unwrap());
    }
    gens
}

fn alternating_generators(n: usize) -> Vec<Perm> {
    let mut gens = vec![Perm::from_cycles(n, &[vec![0, 1, 2]]).unwrap()];
    if n > 3 {
        if n % 2 == 1 {
            gens.push(Perm::from_cycles(n, &[(0..n).collect()]).unwrap());
        } else {
            gens.push(Perm::from_cycles(n, &[(1..n).collect()]).unwrap());
        }
    }
    gens
}

fn pow_mod(base: usize, mut exp: u64, modulus: usize) -> usize {
    let mut acc = 1u64;
    let mut b = (base % modulus) as u64;
    let m = modulus as u64;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    acc as usize
}

/// Smallest primitive root modulo the prime p.
fn primitive_root(p: usize) -> usize {
    let factors: Vec<u64> = crate::primes::factor_u64((p - 1) as u64)
        .into_iter()
        .map(|(q, _)| q)
        .collect();
    'outer: for g in 2..p {
        for &q in &factors {
            if pow_mod(g, ((p - 1) as u64) / q, p) == 1 {
                continue 'outer;
            }
        }
        return g;
    }
    1
}

/// The fixed pseudorandom stream behind the sampler: the multiplicative
/// linear congruential generator with Knuth's MMIX constants
/// (a = 6364136223846793005, c = 1442695040888963407, modulus 2^64),
/// outputs taken from the top 31 bits.
#[derive(Clone, Debug)]
pub struct Lcg {
    state: u64,
}

impl Lcg {
    pub fn new(seed: u64) -> Lcg {
        Lcg { state: seed }
    }

    pub fn next_u32(&mut self) -> u32 {
        self.state = self
            .state
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        (self.state >> 33) as u32
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u32() as usize) % bound
    }

    /// Fisher-Yates shuffle driven by the stream.
    pub fn permutation(&mut self, degree: usize) -> Perm {
        let mut v: Vec<usize> = (0..degree).collect();
        for i in (1..degree).rev() {
            let j = self.below(i + 1);
            v.swap(i, j);
        }
        Perm::from_images(&v).expect("shuffle yields a bijection")
    }
}

const RANDOM_RETRY_BUDGET: usize = 64;

/// Draws 2-3 pseudorandom permutations from the seeded stream and keeps the
/// generated group iff it is transitive with order at most `order_cap`.
/// Deterministic for fixed inputs; `None` after a bounded retry budget.
pub fn random_transitive(degree: usize, order_cap: u64, seed: u64) -> Option<PermGroup> {
    if degree < 2 {
        return None;
    }
    let mut rng = Lcg::new(seed);
    for _ in 0..RANDOM_RETRY_BUDGET {
        let count = 2 + rng.below(2);
        let gens: Vec<Perm> = (0..count).map(|_| rng.permutation(degree)).collect();
        let g = PermGroup::from_generators(degree, gens).expect("valid generators");
        if g.is_transitive() && g.order() <= &BigUint::from(order_cap) {
            return Some(g);
        }
    }
    None
}

/// One corpus member: the resolved spec and the built group.
#[derive(Clone, Debug)]
pub struct CorpusEntry {
    pub spec: GroupSpec,
    pub group: PermGroup,
}

impl CorpusEntry {
    pub fn name(&self) -> String {
        self.spec.name()
    }
}

fn wreath_base_pool() -> Vec<GroupSpec> {
    // bases are primitive, so the base block system of the wreath product
    // is a minimal one
    vec![
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(5),
        GroupSpec::Symmetric(3),
        GroupSpec::Symmetric(4),
        GroupSpec::Dihedral(5),
    ]
}

fn wreath_top_pool() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(4),
        GroupSpec::Cyclic(5),
        GroupSpec::Cyclic(6),
        GroupSpec::Symmetric(3),
        GroupSpec::Symmetric(4),
        GroupSpec::Dihedral(4),
        GroupSpec::Dihedral(5),
    ]
}

fn regular_rep_pool() -> Vec<GroupSpec> {
    vec![
        GroupSpec::Symmetric(3),
        GroupSpec::Dihedral(4),
        GroupSpec::Dihedral(5),
        GroupSpec::Dihedral(6),
        GroupSpec::Alternating(4),
        GroupSpec::Frobenius { p: 5, d: 2 },
    ]
}

/// All family instances with degree and order below the caps, in a fixed
/// enumeration order, plus `seed_count` random groups per degree starting
/// at `seed0`. Duplicates by (degree, order, sorted generator images) are
/// removed. The result is bit-stable across runs.
pub fn enumerate_corpus(
    max_degree: usize,
    max_order: u64,
    seed_count: u64,
    seed0: u64,
) -> Vec<CorpusEntry> {
    let mut specs: Vec<GroupSpec> = Vec::new();
    for n in 2..=max_degree {
        specs.push(GroupSpec::Cyclic(n));
    }
    for n in 3..=max_degree {
        specs.push(GroupSpec::Dihedral(n));
    }
    for n in 2..=max_degree {
        specs.push(GroupSpec::Symmetric(n));
    }
    for n in 3..=max_degree {
        specs.push(GroupSpec::Alternating(n));
    }
    for p in sieve(max_degree) {
        let p = p as usize;
        for d in 2..p {
            if (p - 1) % d == 0 {
                specs.push(GroupSpec::Frobenius { p, d });
            }
        }
    }
    let mut n = 4;
    while n * (n - 1) / 2 <= max_degree {
        specs.push(GroupSpec::Johnson(n));
        n += 1;
    }
    for p in sieve(max_degree.saturating_sub(1)) {
        let p = p as usize;
        if p >= 5 {
            specs.push(GroupSpec::Psl2(p));
        }
    }
    for a in wreath_base_pool() {
        for b in wreath_top_pool() {
            let (da, db) = (degree_of(&a).unwrap(), degree_of(&b).unwrap());
            if da * db <= max_degree {
                specs.push(GroupSpec::WreathImprimitive(
                    Box::new(a.clone()),
                    Box::new(b),
                ));
            }
        }
    }
    for a in [
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Symmetric(3),
    ] {
        let da = degree_of(&a).unwrap();
        let mut b = 2;
        while da.pow(b as u32) <= max_degree {
            specs.push(GroupSpec::WreathPower(Box::new(a.clone()), b));
            b += 1;
        }
    }
    for base in regular_rep_pool() {
        if let Some(order) = base.expected_order() {
            if order <= BigUint::from(max_degree) {
                specs.push(GroupSpec::RegularRep(Box::new(base)));
            }
        }
    }
    for degree in 2..=max_degree {
        for i in 0..seed_count {
            specs.push(GroupSpec::Random {
                degree,
                order_cap: max_order,
                seed: seed0 + i,
            });
        }
    }

    let cap = BigUint::from(max_order);
    let mut seen: Vec<(usize, BigUint, Vec<Vec<usize>>)> = Vec::new();
    let mut out = Vec::new();
    for spec in specs {
        let group = match spec.build() {
            Ok(g) => g,
            Err(_) => continue, // random specs may fail to produce a group
        };
        if group.degree() > max_degree || group.order() > &cap {
            continue;
        }
        debug_assert!(group.is_transitive());
        let mut gen_key: Vec<Vec<usize>> = group.generators().iter().map(|p| p.images()).collect();
        gen_key.sort();
        let key = (group.degree(), group.order().clone(), gen_key);
        if seen.contains(&key) {
            continue;
        }
        seen.push(key);
        out.push(CorpusEntry { spec, group });
    }
    out
}

/// Writes one `<slug>_<degree>.grp` file per entry in the generator text
/// format.
pub fn export_corpus(dir: &Path, entries: &[CorpusEntry]) -> Result<()> {
    std::fs::create_dir_all(dir)?;
    for entry in entries {
        let path = dir.join(format!("{}_{}.grp", entry.spec.slug(), entry.group.degree()));
        std::fs::write(
            &path,
            format_group_file(entry.group.degree(), entry.group.generators()),
        )?;
    }
    Ok(())
}

/// A constructed subdirect-product instance: a group on a split domain,
/// projecting onto both halves.
#[derive(Clone, Debug)]
pub struct SubdirectInstance {
    pub name: String,
    pub group: PermGroup,
    /// Points 0..split form the first domain, the rest the second.
    pub split: usize,
}

impl SubdirectInstance {
    pub fn domains(&self) -> (Vec<usize>, Vec<usize>) {
        (
            (0..self.split).collect(),
            (self.split..self.group.degree()).collect(),
        )
    }
}

fn shift(p: &Perm, offset: usize, total: usize) -> Perm {
    let mut images: Vec<usize> = (0..total).collect();
    for i in 0..p.degree() {
        images[offset + i] = offset + p.apply(i);
    }
    Perm::from_images(&images).expect("shifted bijection")
}

fn embed(p: &Perm, total: usize) -> Perm {
    shift(p, 0, total)
}

/// Diagonal copy of the base group acting on two copies of its domain.
fn diagonal(spec: &GroupSpec) -> Result<SubdirectInstance> {
    let base = spec.build()?;
    let d = base.degree();
    let gens: Vec<Perm> = base
        .generators()
        .iter()
        .map(|g| embed(g, 2 * d).compose(&shift(g, d, 2 * d)).unwrap())
        .collect();
    Ok(SubdirectInstance {
        name: format!("diagonal({})", spec.name()),
        group: PermGroup::from_generators(2 * d, gens)?,
        split: d,
    })
}

/// Full direct product acting on the disjoint union of the two domains.
fn direct_product(a_spec: &GroupSpec, b_spec: &GroupSpec) -> Result<SubdirectInstance> {
    let a = a_spec.build()?;
    let b = b_spec.build()?;
    let total = a.degree() + b.degree();
    let mut gens: Vec<Perm> = a.generators().iter().map(|g| embed(g, total)).collect();
    gens.extend(b.generators().iter().map(|g| shift(g, a.degree(), total)));
    Ok(SubdirectInstance {
        name: format!("product({},{})", a_spec.name(), b_spec.name()),
        group: PermGroup::from_generators(total, gens)?,
        split: a.degree(),
    })
}

/// Graph of a quotient map: generators of the source paired with their
/// images in the quotient realization.
fn quotient_graph(
    name: &str,
    degree_a: usize,
    degree_b: usize,
    pairs: &[(&str, &str)],
) -> Result<SubdirectInstance> {
    let total = degree_a + degree_b;
    let mut gens = Vec::new();
    for (left, right) in pairs {
        let l = Perm::parse_cycles(degree_a, left)?;
        let r = Perm::parse_cycles(degree_b, right)?;
        gens.push(embed(&l, total).compose(&shift(&r, degree_a, total))?);
    }
    Ok(SubdirectInstance {
        name: name.to_string(),
        group: PermGroup::from_generators(total, gens)?,
        split: degree_a,
    })
}

/// The constructed suite of subdirect products: diagonals, graphs of
/// quotient maps, and full products.
pub fn subdirect_instances() -> Vec<SubdirectInstance> {
    let mut out = Vec::new();
    for spec in [
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(4),
        GroupSpec::Cyclic(5),
        GroupSpec::Cyclic(6),
        GroupSpec::Symmetric(3),
        GroupSpec::Symmetric(4),
        GroupSpec::Dihedral(4),
        GroupSpec::Dihedral(5),
        GroupSpec::Alternating(4),
        GroupSpec::Alternating(5),
    ] {
        out.push(diagonal(&spec).expect("diagonal instance"));
    }
    for (a, b) in [
        (GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)),
        (GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)),
        (GroupSpec::Cyclic(3), GroupSpec::Cyclic(3)),
        (GroupSpec::Cyclic(4), GroupSpec::Cyclic(2)),
        (GroupSpec::Symmetric(3), GroupSpec::Cyclic(2)),
        (GroupSpec::Symmetric(3), GroupSpec::Symmetric(3)),
        (GroupSpec::Alternating(4), GroupSpec::Cyclic(3)),
    ] {
        out.push(direct_product(&a, &b).expect("product instance"));
    }
    let graphs: Vec<SubdirectInstance> = vec![
        // C4 onto C2
        quotient_graph("graph(c4->c2)", 4, 2, &[("(0 1 2 3)", "(0 1)")]).unwrap(),
        // C6 onto C2 and onto C3
        quotient_graph("graph(c6->c2)", 6, 2, &[("(0 1 2 3 4 5)", "(0 1)")]).unwrap(),
        quotient_graph("graph(c6->c3)", 6, 3, &[("(0 1 2 3 4 5)", "(0 1 2)")]).unwrap(),
        // S3 onto the sign
        quotient_graph("graph(s3->c2)", 3, 2, &[("(0 1 2)", "()"), ("(0 1)", "(0 1)")]).unwrap(),
        // A4 onto A4/V4 = C3
        quotient_graph(
            "graph(a4->c3)",
            4,
            3,
            &[("(0 1)(2 3)", "()"), ("(0 1 2)", "(0 1 2)")],
        )
        .unwrap(),
        // S4 onto S4/V4 = S3, realized on the three pair-partitions
        quotient_graph(
            "graph(s4->s3)",
            4,
            3,
            &[("(0 1)", "(1 2)"), ("(0 1 2 3)", "(0 2)")],
        )
        .unwrap(),
        // D4 onto C2 (rotation parity)
        quotient_graph(
            "graph(d4->c2)",
            4,
            2,
            &[("(0 1 2 3)", "(0 1)"), ("(1 3)", "()")],
        )
        .unwrap(),
    ];
    out.extend(graphs);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn family_orders_match_closed_forms() {
        let cases = [
            GroupSpec::Cyclic(6),
            GroupSpec::Dihedral(5),
            GroupSpec::Symmetric(5),
            GroupSpec::Alternating(6),
            GroupSpec::Frobenius { p: 7, d: 3 },
            GroupSpec::Johnson(5),
            GroupSpec::Psl2(5),
            GroupSpec::Psl2(7),
            GroupSpec::WreathImprimitive(
                Box::new(GroupSpec::Cyclic(2)),
                Box::new(GroupSpec::Cyclic(2)),
            ),
            GroupSpec::WreathPower(Box::new(GroupSpec::Symmetric(3)), 2),
            GroupSpec::RegularRep(Box::new(GroupSpec::Symmetric(3))),
        ];
        for spec in cases {
            let g = spec.build().unwrap();
            assert_eq!(
                g.order(),
                &spec.expected_order().unwrap(),
                "order mismatch for {}",
                spec.name()
            );
            assert!(g.is_transitive(), "{} must be transitive", spec.name());
        }
    }

    #[test]
    fn frobenius_7_3_matches_the_known_construction() {
        let spec = GroupSpec::Frobenius { p: 7, d: 3 };
        let g = spec.build().unwrap();
        assert_eq!(g.degree(), 7);
        assert_eq!(g.order_u64(), Some(21));
        // the multiplier is x -> 2x mod 7
        assert!(g
            .contains(&Perm::parse_cycles(7, "(1 2 4)(3 6 5)").unwrap())
            .unwrap());
    }

    #[test]
    fn wreath_imprimitive_of_two_cyclics() {
        let spec = GroupSpec::WreathImprimitive(
            Box::new(GroupSpec::Cyclic(2)),
            Box::new(GroupSpec::Cyclic(2)),
        );
        let g = spec.build().unwrap();
        assert_eq!(g.degree(), 4);
        assert_eq!(g.order_u64(), Some(8));
    }

    #[test]
    fn johnson_action_is_faithful() {
        let g = GroupSpec::Johnson(5).build().unwrap();
        assert_eq!(g.degree(), 10);
        assert_eq!(g.order_u64(), Some(120));
    }

    #[test]
    fn random_sampler_is_deterministic() {
        let a = random_transitive(6, 1_000_000, 1).unwrap();
        let b = random_transitive(6, 1_000_000, 1).unwrap();
        assert_eq!(a.generators(), b.generators());
        assert!(a.is_transitive());

        let c = random_transitive(2, 100, 0).unwrap();
        assert_eq!(c.order_u64(), Some(2));

        for seed in 0..5 {
            if let Some(g) = random_transitive(8, 100, seed) {
                assert!(g.order_u64().unwrap() <= 100);
            }
        }
    }

    #[test]
    fn corpus_enumeration_is_stable_and_complete() {
        let corpus = enumerate_corpus(7, 10_000, 0, 0);
        let names: Vec<String> = corpus.iter().map(|e| e.name()).collect();
        for expected in [
            "cyclic(2)",
            "cyclic(7)",
            "dihedral(3)",
            "symmetric(4)",
            "alternating(5)",
            "frobenius(5,2)",
            "frobenius(7,2)",
            "frobenius(7,3)",
            "psl2(5)",
        ] {
            assert!(
                names.contains(&expected.to_string()),
                "missing {expected} in {names:?}"
            );
        }
        // degree-5 member of order 20: the full affine frobenius(5,4)
        assert!(corpus
            .iter()
            .any(|e| e.group.degree() == 5 && e.group.order_u64() == Some(20)));

        let again = enumerate_corpus(7, 10_000, 0, 0);
        assert_eq!(corpus.len(), again.len());
        for (a, b) in corpus.iter().zip(again.iter()) {
            assert_eq!(a.group.generators(), b.group.generators());
        }

        assert!(enumerate_corpus(1, 100, 0, 0).is_empty());
    }

    #[test]
    fn corpus_members_are_transitive_with_matching_orders() {
        for entry in enumerate_corpus(9, 1_000_000, 2, 0) {
            assert!(entry.group.is_transitive(), "{}", entry.name());
            if let Some(expected) = entry.spec.expected_order() {
                assert_eq!(entry.group.order(), &expected, "{}", entry.name());
            }
        }
    }

    #[test]
    fn odd_order_members_exist() {
        let corpus = enumerate_corpus(12, 1_000_000, 0, 0);
        let odd: Vec<&CorpusEntry> = corpus
            .iter()
            .filter(|e| (e.group.order() % BigUint::from(2u32)) != BigUint::from(0u32))
            .collect();
        assert!(odd.len() >= 5, "want odd-order coverage, got {}", odd.len());
        assert!(odd.iter().any(|e| e.group.order_u64() == Some(21)));
        assert!(odd.iter().any(|e| e.group.order_u64() == Some(81)));
    }

    #[test]
    fn export_writes_parseable_files() {
        let dir = std::env::temp_dir().join(format!("permlab_corpus_{}", std::process::id()));
        let corpus = enumerate_corpus(5, 1_000, 0, 0);
        export_corpus(&dir, &corpus).unwrap();
        let mut count = 0;
        for entry in std::fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            let text = std::fs::read_to_string(&path).unwrap();
            let (degree, gens) = crate::fileformat::parse_group_file(&text).unwrap();
            let g = PermGroup::from_generators(degree, gens).unwrap();
            assert!(g.is_transitive());
            count += 1;
        }
        assert_eq!(count, corpus.len());
        std::fs::remove_dir_all(&dir).unwrap();
    }

    #[test]
    fn subdirect_suite_has_enough_instances() {
        let suite = subdirect_instances();
        assert!(suite.len() >= 20, "suite size {}", suite.len());
        // spot checks
        let diag_c2 = &suite[0];
        assert_eq!(diag_c2.group.order_u64(), Some(2));
        let (s1, s2) = diag_c2.domains();
        assert_eq!(s1, vec![0, 1]);
        assert_eq!(s2, vec![2, 3]);
    }
}
