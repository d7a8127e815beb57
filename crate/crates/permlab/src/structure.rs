//! Composition series, factor signatures, Comp_A, minimal normal subgroups,
//! the socle, subdirect-product verification, and the order arithmetic
//! invariants pi(G) and exponent(G).
//!
//! Everything here enumerates elements, so every operation is guarded by an
//! enumeration limit and fails loudly above it; callers turn that failure
//! into a SKIPPED report, never a silent pass.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde_json::json;

use crate::error::{Error, Result};
use crate::group::PermGroup;
use crate::perm::Perm;
use crate::primes::{distinct_prime_divisors, factor_u64, is_prime_u64};
use crate::report::{CheckReport, Verdict};

/// Resource limits for element-enumeration based operations.
#[derive(Clone, Copy, Debug)]
pub struct Limits {
    /// Maximum group order for which elements are enumerated.
    pub enum_limit: u64,
    /// Maximum group order for which structure operations run at all.
    pub order_limit: u64,
}

impl Default for Limits {
    fn default() -> Limits {
        Limits {
            enum_limit: 1_000_000,
            order_limit: 1_000_000,
        }
    }
}

impl Limits {
    fn check(&self, g: &PermGroup, what: &'static str) -> Result<()> {
        let cap = self.enum_limit.min(self.order_limit);
        if g.order() > &BigUint::from(cap) {
            return Err(Error::ResourceLimit {
                what,
                needed: g.order().to_string(),
                limit: cap,
            });
        }
        Ok(())
    }
}

/// The isomorphism type of a simple composition factor, as far as the
/// artifact resolves it: abelian factors are primes, nonabelian factors are
/// compared by order, refined by an element-order frequency table only when
/// two distinct simple groups share an order (20160 is the only such order
/// within reach of the enumeration limit).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FactorSignature {
    Abelian { prime: u64 },
    NonAbelian {
        order: u64,
        refinement: Option<BTreeMap<u64, u64>>,
    },
}

/// The single nonabelian order below 10^6 shared by two nonisomorphic
/// simple groups, so the only case where the refinement is computed.
const AMBIGUOUS_SIMPLE_ORDER: u64 = 20160;

impl FactorSignature {
    pub fn is_abelian(&self) -> bool {
        matches!(self, FactorSignature::Abelian { .. })
    }

    pub fn order(&self) -> u64 {
        match self {
            FactorSignature::Abelian { prime } => *prime,
            FactorSignature::NonAbelian { order, .. } => *order,
        }
    }

    /// Two signatures compare equal iff kinds, orders and, when present on
    /// both sides, refinements agree.
    pub fn matches(&self, other: &FactorSignature) -> bool {
        match (self, other) {
            (FactorSignature::Abelian { prime: a }, FactorSignature::Abelian { prime: b }) => {
                a == b
            }
            (
                FactorSignature::NonAbelian {
                    order: a,
                    refinement: ra,
                },
                FactorSignature::NonAbelian {
                    order: b,
                    refinement: rb,
                },
            ) => {
                a == b
                    && match (ra, rb) {
                        (Some(x), Some(y)) => x == y,
                        _ => true,
                    }
            }
            _ => false,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        match self {
            FactorSignature::Abelian { prime } => json!({"kind": "abelian", "prime": prime}),
            FactorSignature::NonAbelian { order, .. } => {
                json!({"kind": "nonabelian", "order": order})
            }
        }
    }
}

/// A descending chain G = G_0 > G_1 > ... > 1 with simple quotients, plus
/// the factor signatures top-down.
#[derive(Clone, Debug)]
pub struct CompositionSeries {
    pub chain: Vec<PermGroup>,
    pub factors: Vec<FactorSignature>,
}

impl CompositionSeries {
    /// Multiset of factor signatures.
    pub fn factor_multiset(&self) -> Vec<FactorSignature> {
        let mut v = self.factors.clone();
        v.sort();
        v
    }
}

/// Deterministic element table: all elements plus conjugacy class
/// representatives (first element of each class in enumeration order).
struct ElementTable {
    elements: Vec<Perm>,
    class_reps: Vec<usize>,
}

fn element_table(g: &PermGroup, limits: &Limits) -> Result<ElementTable> {
    limits.check(g, "conjugacy class scan")?;
    let elements = g.elements(limits.enum_limit)?;
    let mut index: HashMap<&Perm, usize> = HashMap::with_capacity(elements.len());
    for (i, e) in elements.iter().enumerate() {
        index.insert(e, i);
    }
    let mut visited = vec![false; elements.len()];
    let mut class_reps = Vec::new();
    for i in 0..elements.len() {
        if visited[i] {
            continue;
        }
        class_reps.push(i);
        let mut queue = vec![i];
        visited[i] = true;
        while let Some(j) = queue.pop() {
            for gen in g.generators() {
                let c = elements[j].conjugate_by(gen);
                let k = index[&c];
                if !visited[k] {
                    visited[k] = true;
                    queue.push(k);
                }
            }
        }
    }
    Ok(ElementTable {
        elements,
        class_reps,
    })
}

fn generator_key(g: &PermGroup) -> Vec<Vec<usize>> {
    let mut key: Vec<Vec<usize>> = g.generators().iter().map(|p| p.images()).collect();
    key.sort();
    key
}

/// A nontrivial proper normal subgroup, or `None` if the group is simple
/// (or trivial). Found as a normal closure of a single element, scanning
/// class representatives in deterministic order and keeping an
/// inclusion-minimal result; ties resolved by order then generator key.
pub fn proper_normal_subgroup(g: &PermGroup, limits: &Limits) -> Result<Option<PermGroup>> {
    let table = element_table(g, limits)?;
    let mut best: Option<PermGroup> = None;
    for &i in &table.class_reps {
        let e = &table.elements[i];
        if e.is_identity() {
            continue;
        }
        let n = g.normal_closure(std::slice::from_ref(e))?;
        if n.order() >= g.order() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                n.order() < b.order()
                    || (n.order() == b.order() && generator_key(&n) < generator_key(b))
            }
        };
        if better {
            best = Some(n);
        }
    }
    Ok(best)
}

/// Smallest proper normal subgroup strictly containing `n`, scanning single
/// element extensions over class representatives. `None` means G/n is
/// simple.
fn smallest_proper_extension(
    g: &PermGroup,
    n: &PermGroup,
    table: &ElementTable,
    reverse: bool,
) -> Result<Option<PermGroup>> {
    let mut best: Option<PermGroup> = None;
    let reps: Vec<usize> = if reverse {
        table.class_reps.iter().rev().copied().collect()
    } else {
        table.class_reps.clone()
    };
    for i in reps {
        let e = &table.elements[i];
        if e.is_identity() || n.contains(e)? {
            continue;
        }
        let mut seeds: Vec<Perm> = n.generators().to_vec();
        seeds.push(e.clone());
        let k = g.normal_closure(&seeds)?;
        if k.order() >= g.order() {
            continue;
        }
        let better = match &best {
            None => true,
            Some(b) => {
                k.order() < b.order()
                    || (k.order() == b.order() && generator_key(&k) < generator_key(b))
            }
        };
        if better {
            best = Some(k);
        }
    }
    Ok(best)
}

/// A normal subgroup with simple quotient: grow from the trivial subgroup by
/// smallest proper extensions until no proper normal subgroup lies above.
fn simple_quotient_step(g: &PermGroup, limits: &Limits, reverse: bool) -> Result<PermGroup> {
    let table = element_table(g, limits)?;
    let mut n = PermGroup::trivial(g.degree());
    while let Some(k) = smallest_proper_extension(g, &n, &table, reverse)? {
        n = k;
    }
    Ok(n)
}

pub fn composition_series(g: &PermGroup, limits: &Limits) -> Result<CompositionSeries> {
    composition_series_scan(g, limits, false)
}

/// Composition series with a controllable element-scan direction; the factor
/// multiset is independent of it (Jordan–Hölder), which the tests check.
pub fn composition_series_scan(
    g: &PermGroup,
    limits: &Limits,
    reverse: bool,
) -> Result<CompositionSeries> {
    limits.check(g, "composition series")?;
    let mut chain = vec![g.clone()];
    let mut factors = Vec::new();
    let mut current = g.clone();
    while !current.is_trivial() {
        let next = simple_quotient_step(&current, limits, reverse)?;
        let q = (current.order() / next.order())
            .to_u64()
            .expect("factor order under enumeration limit");
        factors.push(factor_signature(&current, &next, q, limits)?);
        chain.push(next.clone());
        current = next;
    }
    Ok(CompositionSeries { chain, factors })
}

fn factor_signature(
    g: &PermGroup,
    n: &PermGroup,
    quotient_order: u64,
    limits: &Limits,
) -> Result<FactorSignature> {
    if is_prime_u64(quotient_order) {
        return Ok(FactorSignature::Abelian {
            prime: quotient_order,
        });
    }
    let refinement = if quotient_order == AMBIGUOUS_SIMPLE_ORDER {
        Some(quotient_element_orders(g, n, limits)?)
    } else {
        None
    };
    Ok(FactorSignature::NonAbelian {
        order: quotient_order,
        refinement,
    })
}

/// Frequency table of element orders in the quotient G/N, computed by
/// counting over elements of G and dividing by |N|.
fn quotient_element_orders(
    g: &PermGroup,
    n: &PermGroup,
    limits: &Limits,
) -> Result<BTreeMap<u64, u64>> {
    let elements = g.elements(limits.enum_limit)?;
    let mut histogram: BTreeMap<u64, u64> = BTreeMap::new();
    for e in &elements {
        let full = e.order();
        let mut coset_order = full;
        let mut d = 1;
        while d <= full {
            if full % d == 0 && n.contains(&e.pow(d))? {
                coset_order = d;
                break;
            }
            d += 1;
        }
        *histogram.entry(coset_order).or_insert(0) += 1;
    }
    let n_order = n.order_u64().expect("under limit");
    for v in histogram.values_mut() {
        *v /= n_order;
    }
    Ok(histogram)
}

/// The set of primes p with a cyclic factor of order p in a composition
/// series. By Jordan–Hölder it does not depend on the series.
pub fn comp_a(g: &PermGroup, limits: &Limits) -> Result<BTreeSet<u64>> {
    let series = composition_series(g, limits)?;
    Ok(series
        .factors
        .iter()
        .filter_map(|f| match f {
            FactorSignature::Abelian { prime } => Some(*prime),
            _ => None,
        })
        .collect())
}

/// All inclusion-minimal nontrivial normal subgroups. Each arises as the
/// normal closure of one of its nonidentity elements, so scanning class
/// representatives finds all of them.
pub fn minimal_normal_subgroups(g: &PermGroup, limits: &Limits) -> Result<Vec<PermGroup>> {
    if g.is_trivial() {
        return Ok(Vec::new());
    }
    let table = element_table(g, limits)?;
    let mut closures: Vec<PermGroup> = Vec::new();
    for &i in &table.class_reps {
        let e = &table.elements[i];
        if e.is_identity() {
            continue;
        }
        let n = g.normal_closure(std::slice::from_ref(e))?;
        if !closures.iter().any(|c| c.eq_group(&n)) {
            closures.push(n);
        }
    }
    let mut minimal: Vec<PermGroup> = closures
        .iter()
        .filter(|n| {
            !closures
                .iter()
                .any(|m| m.order() < n.order() && m.is_subgroup_of(n))
        })
        .cloned()
        .collect();
    minimal.sort_by(|a, b| (a.order(), generator_key(a)).cmp(&(b.order(), generator_key(b))));
    Ok(minimal)
}

/// The subgroup generated by all minimal normal subgroups.
pub fn socle(g: &PermGroup, limits: &Limits) -> Result<PermGroup> {
    let minimal = minimal_normal_subgroups(g, limits)?;
    let gens: Vec<Perm> = minimal
        .iter()
        .flat_map(|n| n.generators().iter().cloned())
        .collect();
    PermGroup::from_generators(g.degree(), gens)
}

pub(crate) fn is_abelian(g: &PermGroup) -> bool {
    let gens = g.generators();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            if a.then(b) != b.then(a) {
                return false;
            }
        }
    }
    true
}

/// Socle checks for a primitive group: the socle factors share one
/// signature; if the socle is abelian it is elementary abelian of order
/// p^s = n and |G/Soc(G)| < p^(s^2).
pub fn check_socle_primitive(
    g: &PermGroup,
    name: &str,
    limits: &Limits,
) -> Result<CheckReport> {
    if !crate::actions::is_primitive(g)? {
        return Err(Error::NotPrimitive);
    }
    let minimal = minimal_normal_subgroups(g, limits)?;
    let soc = socle(g, limits)?;
    let series = composition_series(&soc, limits)?;
    let mut ok = true;
    let mut notes = Vec::new();

    // all composition factors of the socle share one signature
    if let Some(first) = series.factors.first() {
        if !series.factors.iter().all(|f| f.matches(first)) {
            ok = false;
            notes.push("socle factors are not all of one isomorphism type".to_string());
        }
    }
    // minimal normal subgroups of a primitive group are transitive
    for n in &minimal {
        if !n.is_transitive() {
            ok = false;
            notes.push("intransitive minimal normal subgroup in a primitive group".to_string());
        }
    }

    let abelian = is_abelian(&soc);
    let mut witness = json!({
        "socle_order": soc.order().to_string(),
        "minimal_normal_count": minimal.len(),
        "socle_abelian": abelian,
        "factor_count": series.factors.len(),
    });
    if abelian && !soc.is_trivial() {
        let n = g.degree() as u64;
        let soc_order = soc.order_u64().expect("socle under limit");
        let factors = factor_u64(soc_order);
        let elementary = factors.len() == 1;
        if !elementary || soc_order != n {
            ok = false;
            notes.push(format!(
                "abelian socle of order {soc_order} is not elementary abelian of order equal to the degree {n}"
            ));
        } else {
            let (p, s) = factors[0];
            // every nonidentity element has order p
            if soc
                .generators()
                .iter()
                .any(|gen| gen.order() != p)
            {
                ok = false;
                notes.push("abelian socle generator of wrong order".to_string());
            }
            let quotient = g.order() / soc.order();
            let bound = BigUint::from(p).pow(s * s);
            if quotient >= bound {
                ok = false;
                notes.push(format!(
                    "|G/Soc(G)| = {quotient} is not below p^(s^2) = {bound}"
                ));
            }
            let obj = witness.as_object_mut().unwrap();
            obj.insert("p".into(), json!(p));
            obj.insert("s".into(), json!(s));
            obj.insert("quotient_order".into(), json!(quotient.to_string()));
            obj.insert("quotient_bound".into(), json!(bound.to_string()));
        }
    }
    if !notes.is_empty() {
        witness
            .as_object_mut()
            .unwrap()
            .insert("notes".into(), json!(notes));
    }
    Ok(CheckReport::new(
        "socle_primitive",
        name,
        g,
        if ok { Verdict::Pass } else { Verdict::Fail },
        witness,
    ))
}

/// Multiset containment with the signature matching rules: every entry of
/// `sub` must match a distinct entry of `sup`.
pub fn factor_multiset_contained(sub: &[FactorSignature], sup: &[FactorSignature]) -> bool {
    let mut used = vec![false; sup.len()];
    for f in sub {
        let slot = sup
            .iter()
            .enumerate()
            .position(|(i, g)| !used[i] && f.matches(g));
        match slot {
            Some(i) => used[i] = true,
            None => return false,
        }
    }
    true
}

/// Multiset difference `a - b`; `b` must be contained in `a`.
pub fn factor_multiset_difference(
    a: &[FactorSignature],
    b: &[FactorSignature],
) -> Option<Vec<FactorSignature>> {
    let mut remaining: Vec<FactorSignature> = a.to_vec();
    for f in b {
        let slot = remaining.iter().position(|g| f.matches(g))?;
        remaining.remove(slot);
    }
    Some(remaining)
}

fn multisets_equal(a: &[FactorSignature], b: &[FactorSignature]) -> bool {
    a.len() == b.len() && factor_multiset_contained(a, b) && factor_multiset_contained(b, a)
}

/// Verifies the structure of a subdirect product subgroup: `g` acts on two
/// disjoint invariant domains (`s1`, `s2`), the constituents are its
/// projections, N_i is the kernel of the opposite projection, and the
/// three-way quotient isomorphism plus the factor containment are checked
/// at the level of orders and factor multisets.
pub fn check_subdirect(
    g: &PermGroup,
    name: &str,
    s1: &[usize],
    s2: &[usize],
    limits: &Limits,
) -> Result<CheckReport> {
    let mut all: Vec<usize> = s1.iter().chain(s2.iter()).copied().collect();
    all.sort_unstable();
    if all != (0..g.degree()).collect::<Vec<_>>() {
        return Err(Error::InvalidInput(
            "domains must partition the points".into(),
        ));
    }
    let proj1 = crate::actions::restrict_to_invariant_set(g, s1)?;
    let proj2 = crate::actions::restrict_to_invariant_set(g, s2)?;
    let d1 = proj1.image;
    let d2 = proj2.image;
    // N_1 = kernel of the projection onto constituent 2, viewed inside D_1.
    let n1 = crate::actions::restrict_to_invariant_set(&proj2.kernel, s1)?.image;
    let n2 = crate::actions::restrict_to_invariant_set(&proj1.kernel, s2)?.image;

    let q1 = d1.order() / n1.order();
    let q2 = d2.order() / n2.order();
    let qg = g.order() / (n1.order() * n2.order());
    let orders_ok = q1 == q2 && q1 == qg;
    let order_identity_ok =
        g.order().clone() == n1.order() * n2.order() * q1.clone();

    let fg = composition_series(g, limits)?.factor_multiset();
    let fd1 = composition_series(&d1, limits)?.factor_multiset();
    let fd2 = composition_series(&d2, limits)?.factor_multiset();
    let fn1 = composition_series(&n1, limits)?.factor_multiset();
    let fn2 = composition_series(&n2, limits)?.factor_multiset();

    let quot1 = factor_multiset_difference(&fd1, &fn1);
    let quot2 = factor_multiset_difference(&fd2, &fn2);
    let quotients_ok = match (&quot1, &quot2) {
        (Some(a), Some(b)) => multisets_equal(a, b),
        _ => false,
    };
    let mut union: Vec<FactorSignature> = fd1.clone();
    union.extend(fd2.iter().cloned());
    let containment_ok = factor_multiset_contained(&fg, &union);

    let ok = orders_ok && order_identity_ok && quotients_ok && containment_ok;
    let witness = json!({
        "d1_order": d1.order().to_string(),
        "d2_order": d2.order().to_string(),
        "n1_order": n1.order().to_string(),
        "n2_order": n2.order().to_string(),
        "quotient_order": qg.to_string(),
        "orders_agree": orders_ok,
        "order_identity": order_identity_ok,
        "quotient_factors_agree": quotients_ok,
        "factor_containment": containment_ok,
        "g_factors": fg.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
        "constituent_factors": union.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
    });
    Ok(CheckReport::new(
        "subdirect_product",
        name,
        g,
        if ok { Verdict::Pass } else { Verdict::Fail },
        witness,
    ))
}

/// Product of the distinct primes dividing |G|. Only needs the order.
pub fn pi_product(g: &PermGroup) -> BigUint {
    let mut out = BigUint::one();
    for p in distinct_prime_divisors(g.order(), g.degree()) {
        out *= BigUint::from(p);
    }
    out
}

/// The least common multiple of the orders of the elements. Exact only
/// below the enumeration limit.
pub fn exponent(g: &PermGroup, limits: &Limits) -> Result<BigUint> {
    limits.check(g, "exponent")?;
    let mut exp = BigUint::one();
    for e in g.elements(limits.enum_limit)? {
        let o = BigUint::from(e.order());
        exp = exp.lcm(&o);
    }
    Ok(exp)
}
