//! Unit sets inside V(KG): enumeration, symmetric units, subgroup
//! closures, and the conjecture check.
//!
//! In the modular setting the normalized units are exactly the elements of
//! augmentation 1, so V(KG) has order p^(|G|−1) and can be enumerated
//! directly. The symmetric units S* = {x ∈ V : x* = x} are generated
//! structurally from the inversion orbits {g, g⁻¹}: an element is symmetric
//! iff its coefficients are constant on every orbit, which pins |S*| at
//! p^(d−1) for d orbits. The conjecture check compares |V| against
//! |⟨G, S*⟩| computed by closure.
//!
//! The heavy loops (enumeration, closure frontier expansion, subgroup
//! verification) run on rayon when the `parallel` feature is on; the
//! `*_seq` twins are always compiled and produce identical sets, since
//! every result is a set whose content does not depend on discovery order.

use std::collections::HashSet;
use std::sync::Arc;

use rand::Rng;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{AlgebraContext, AlgebraElement};
use crate::error::{Error, Result};
use crate::group::build_group;

/// A finite set of normalized units, keyed by coefficient vector.
///
/// `closed` records whether the set has been verified closed under
/// multiplication; a closed set containing 1 is a subgroup of V(KG), since
/// finiteness supplies inverses as powers.
#[derive(Debug, Clone)]
pub struct UnitSet {
    ctx: Arc<AlgebraContext>,
    members: HashSet<AlgebraElement>,
    closed: bool,
}

impl UnitSet {
    fn new(ctx: &Arc<AlgebraContext>, members: HashSet<AlgebraElement>, closed: bool) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            members,
            closed,
        }
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Whether closure under multiplication has been verified.
    pub fn closed(&self) -> bool {
        self.closed
    }

    pub fn contains(&self, x: &AlgebraElement) -> bool {
        self.members.contains(x)
    }

    pub fn iter(&self) -> impl Iterator<Item = &AlgebraElement> {
        self.members.iter()
    }

    /// Members in canonical listing order: lexicographic on coefficients.
    pub fn sorted_elements(&self) -> Vec<AlgebraElement> {
        let mut v: Vec<AlgebraElement> = self.members.iter().cloned().collect();
        v.sort_unstable();
        v
    }

    /// Set intersection. Closedness is inherited when both sides are
    /// closed (an intersection of subgroups is a subgroup).
    pub fn intersection(&self, other: &UnitSet) -> Result<UnitSet> {
        if !self.ctx.same_as(&other.ctx) {
            return Err(Error::ContextMismatch);
        }
        let members = self
            .members
            .iter()
            .filter(|m| other.contains(m))
            .cloned()
            .collect();
        Ok(UnitSet::new(
            &self.ctx,
            members,
            self.closed && other.closed,
        ))
    }
}

/// The group G embedded in V(KG) as the set {embed(g)}.
pub fn embedded_group(ctx: &Arc<AlgebraContext>) -> UnitSet {
    let members = (0..ctx.group().order())
        .map(|g| AlgebraElement::embed(ctx, g))
        .collect();
    UnitSet::new(ctx, members, true)
}

fn guarded_count(p: u64, exponent: u32, cap: u64) -> Result<u64> {
    let needed = (p as u128).checked_pow(exponent).unwrap_or(u128::MAX);
    if needed > cap as u128 {
        return Err(Error::CapExceeded { needed, cap });
    }
    Ok(needed as u64)
}

/// The element of V(KG) at position `idx` of the enumeration: base-p
/// digits of `idx` fill coefficients 1..n, and the identity coefficient is
/// solved so the augmentation is 1.
fn unit_from_index(ctx: &Arc<AlgebraContext>, idx: u64) -> AlgebraElement {
    let n = ctx.group().order();
    let p = ctx.prime();
    let mut coeffs = vec![0u8; n];
    let mut x = idx;
    let mut rest: u32 = 0;
    for c in coeffs.iter_mut().skip(1) {
        *c = (x % p) as u8;
        rest += *c as u32;
        x /= p;
    }
    let p32 = p as u32;
    coeffs[0] = ((1 + p32 - rest % p32) % p32) as u8;
    AlgebraElement::from_coeffs(ctx, coeffs)
}

/// The symmetric unit at position `idx`: base-p digits assign one
/// coefficient per non-identity inversion orbit, and the identity
/// coefficient is solved so the augmentation is 1.
fn symmetric_from_index(ctx: &Arc<AlgebraContext>, idx: u64) -> AlgebraElement {
    let n = ctx.group().order();
    let p = ctx.prime();
    let orbits = ctx.inversion_orbits();
    let mut coeffs = vec![0u8; n];
    let mut x = idx;
    let mut rest: u32 = 0;
    for orbit in &orbits[1..] {
        let digit = (x % p) as u8;
        x /= p;
        rest += digit as u32 * orbit.len() as u32;
        for &m in orbit {
            coeffs[m] = digit;
        }
    }
    let p32 = p as u32;
    coeffs[0] = ((1 + p32 * n as u32 - rest % p32) % p32) as u8;
    AlgebraElement::from_coeffs(ctx, coeffs)
}

fn collect_units_seq(
    ctx: &Arc<AlgebraContext>,
    count: u64,
    make: fn(&Arc<AlgebraContext>, u64) -> AlgebraElement,
) -> HashSet<AlgebraElement> {
    (0..count).map(|i| make(ctx, i)).collect()
}

#[cfg(feature = "parallel")]
fn collect_units_par(
    ctx: &Arc<AlgebraContext>,
    count: u64,
    make: fn(&Arc<AlgebraContext>, u64) -> AlgebraElement,
) -> HashSet<AlgebraElement> {
    (0..count).into_par_iter().map(|i| make(ctx, i)).collect()
}

/// All of V(KG): the p^(|G|−1) elements of augmentation 1.
///
/// Fails with the would-be cardinality when it exceeds `cap`.
pub fn enumerate_normalized_units(ctx: &Arc<AlgebraContext>, cap: u64) -> Result<UnitSet> {
    let count = guarded_count(ctx.prime(), ctx.group().order() as u32 - 1, cap)?;
    #[cfg(feature = "parallel")]
    let members = collect_units_par(ctx, count, unit_from_index);
    #[cfg(not(feature = "parallel"))]
    let members = collect_units_seq(ctx, count, unit_from_index);
    Ok(UnitSet::new(ctx, members, true))
}

/// Sequential twin of [`enumerate_normalized_units`]; same set.
pub fn enumerate_normalized_units_seq(ctx: &Arc<AlgebraContext>, cap: u64) -> Result<UnitSet> {
    let count = guarded_count(ctx.prime(), ctx.group().order() as u32 - 1, cap)?;
    let members = collect_units_seq(ctx, count, unit_from_index);
    Ok(UnitSet::new(ctx, members, true))
}

/// The symmetric units S* = {x ∈ V(KG) : x* = x}, enumerated structurally
/// over the inversion orbits: |S*| = p^(d−1) for d orbits.
///
/// The returned set is flagged closed exactly when the symmetric elements
/// all commute (see [`symmetric_elements_commute`]); that is precisely when
/// S* is a subgroup. Fails when p^(d−1) exceeds `cap` — elementary abelian
/// 2-groups have S* = V, so the structural count needs the same guard as
/// full enumeration.
pub fn symmetric_units(ctx: &Arc<AlgebraContext>, cap: u64) -> Result<UnitSet> {
    let orbits = ctx.inversion_orbits().len() as u32;
    let count = guarded_count(ctx.prime(), orbits - 1, cap)?;
    #[cfg(feature = "parallel")]
    let members = collect_units_par(ctx, count, symmetric_from_index);
    #[cfg(not(feature = "parallel"))]
    let members = collect_units_seq(ctx, count, symmetric_from_index);
    Ok(UnitSet::new(ctx, members, symmetric_elements_commute(ctx)))
}

/// Sequential twin of [`symmetric_units`]; same set.
pub fn symmetric_units_seq(ctx: &Arc<AlgebraContext>, cap: u64) -> Result<UnitSet> {
    let orbits = ctx.inversion_orbits().len() as u32;
    let count = guarded_count(ctx.prime(), orbits - 1, cap)?;
    let members = collect_units_seq(ctx, count, symmetric_from_index);
    Ok(UnitSet::new(ctx, members, symmetric_elements_commute(ctx)))
}

/// The indicator elements of the inversion orbits. They are a GF(p) basis
/// of the symmetric subspace of KG, and S* spans that subspace (1 ∈ S*,
/// and any symmetric w equals s − (1 − aug(w))·1 for some s ∈ S*), so
/// linear predicates about all of S* reduce to this basis.
fn orbit_sums(ctx: &Arc<AlgebraContext>) -> Vec<AlgebraElement> {
    let n = ctx.group().order();
    ctx.inversion_orbits()
        .iter()
        .map(|orbit| {
            let mut coeffs = vec![0u8; n];
            for &m in orbit {
                coeffs[m] = 1;
            }
            AlgebraElement::from_coeffs(ctx, coeffs)
        })
        .collect()
}

/// Whether every symmetric element of KG is central. Centrality is linear,
/// so checking the d orbit sums settles all p^(d−1) symmetric units.
pub fn symmetric_elements_central(ctx: &Arc<AlgebraContext>) -> bool {
    orbit_sums(ctx).iter().all(|s| s.is_central())
}

/// Whether all symmetric elements of KG commute pairwise. The commutator
/// xy − yx is bilinear, so the d² orbit-sum pairs decide it.
///
/// This is exactly the criterion for S* to be a subgroup: a product of
/// symmetric units x, y is symmetric iff (xy)* = y*x* = yx equals xy.
pub fn symmetric_elements_commute(ctx: &Arc<AlgebraContext>) -> bool {
    let sums = orbit_sums(ctx);
    sums.iter().enumerate().all(|(i, x)| {
        sums[i + 1..]
            .iter()
            .all(|y| x.mul(y).expect("same context") == y.mul(x).expect("same context"))
    })
}

fn two_sided_products_seq(
    frontier: &[AlgebraElement],
    kept: &[AlgebraElement],
) -> Vec<AlgebraElement> {
    frontier
        .iter()
        .flat_map(|x| {
            kept.iter().flat_map(move |h| {
                [
                    x.mul(h).expect("same context"),
                    h.mul(x).expect("same context"),
                ]
            })
        })
        .collect()
}

#[cfg(feature = "parallel")]
fn two_sided_products_par(
    frontier: &[AlgebraElement],
    kept: &[AlgebraElement],
) -> Vec<AlgebraElement> {
    frontier
        .par_iter()
        .flat_map_iter(|x| {
            kept.iter().flat_map(move |h| {
                [
                    x.mul(h).expect("same context"),
                    h.mul(x).expect("same context"),
                ]
            })
        })
        .collect()
}

fn closure_driver(
    ctx: &Arc<AlgebraContext>,
    generators: &[AlgebraElement],
    cap: u64,
    expand: fn(&[AlgebraElement], &[AlgebraElement]) -> Vec<AlgebraElement>,
) -> Result<UnitSet> {
    for g in generators {
        if !ctx.same_as(g.context()) {
            return Err(Error::ContextMismatch);
        }
        let aug = g.augmentation();
        if aug != 1 {
            return Err(Error::NotNormalized(aug));
        }
    }

    let mut members = HashSet::new();
    members.insert(AlgebraElement::one(ctx));
    // Generators already reached are redundant, so the kept list stays
    // logarithmic in the closure size even when `generators` is a whole
    // unit set; each kept generator re-opens the frontier.
    let mut kept: Vec<AlgebraElement> = Vec::new();
    for g in generators {
        if members.contains(g) {
            continue;
        }
        kept.push(g.clone());
        members.insert(g.clone());
        let mut frontier: Vec<AlgebraElement> = members.iter().cloned().collect();
        while !frontier.is_empty() {
            if members.len() as u64 > cap {
                return Err(Error::ClosureCapExceeded {
                    cap,
                    reached: members.len() as u64,
                });
            }
            let products = expand(&frontier, &kept);
            frontier = Vec::new();
            for x in products {
                if !members.contains(&x) {
                    members.insert(x.clone());
                    frontier.push(x);
                }
            }
        }
        if members.len() as u64 > cap {
            return Err(Error::ClosureCapExceeded {
                cap,
                reached: members.len() as u64,
            });
        }
    }
    Ok(UnitSet::new(ctx, members, true))
}

/// The smallest multiplicatively closed subset of V(KG) containing 1 and
/// the generators — a subgroup, since inverses appear as powers. Computed
/// by worklist closure, multiplying frontier elements by the kept
/// generators on both sides until fixpoint.
///
/// Generators must be normalized units; the closure fails once it exceeds
/// `cap` members, reporting the size reached.
pub fn closure(
    ctx: &Arc<AlgebraContext>,
    generators: &[AlgebraElement],
    cap: u64,
) -> Result<UnitSet> {
    #[cfg(feature = "parallel")]
    return closure_driver(ctx, generators, cap, two_sided_products_par);
    #[cfg(not(feature = "parallel"))]
    closure_driver(ctx, generators, cap, two_sided_products_seq)
}

/// Sequential twin of [`closure`]; same set.
pub fn closure_seq(
    ctx: &Arc<AlgebraContext>,
    generators: &[AlgebraElement],
    cap: u64,
) -> Result<UnitSet> {
    closure_driver(ctx, generators, cap, two_sided_products_seq)
}

/// The image H* = {h* : h ∈ H} under the involution.
///
/// When the input is closed, the image of a subgroup is again a subgroup
/// (the involution is an antiautomorphism); that postcondition is verified
/// here and the flag carried over.
pub fn star_image(h: &UnitSet) -> UnitSet {
    let members = h.members.iter().map(|x| x.involution()).collect();
    let image = UnitSet::new(&h.ctx, members, h.closed);
    if h.closed {
        assert!(
            is_subgroup(&image),
            "star image of a closed set must be closed"
        );
    }
    image
}

/// Whether H* = H as sets. Weaker than elementwise fixedness: the embedded
/// group is symmetric (g* = g⁻¹) without any element being fixed.
pub fn is_symmetric_subset(h: &UnitSet) -> bool {
    h.members.iter().all(|x| h.contains(&x.involution()))
}

fn is_subgroup_impl(h: &UnitSet, members: &[&AlgebraElement]) -> bool {
    let one = AlgebraElement::one(&h.ctx);
    if !h.contains(&one) {
        return false;
    }
    #[cfg(feature = "parallel")]
    return members.par_iter().all(|x| {
        members
            .iter()
            .all(|y| h.contains(&x.mul(y).expect("same context")))
    });
    #[cfg(not(feature = "parallel"))]
    members.iter().all(|x| {
        members
            .iter()
            .all(|y| h.contains(&x.mul(y).expect("same context")))
    })
}

/// Whether H contains 1 and is closed under multiplication — for a finite
/// subset of V(KG), exactly the subgroup test. Quadratic in |H|.
pub fn is_subgroup(h: &UnitSet) -> bool {
    let members: Vec<&AlgebraElement> = h.members.iter().collect();
    is_subgroup_impl(h, &members)
}

/// Sequential twin of [`is_subgroup`]; same verdict.
pub fn is_subgroup_seq(h: &UnitSet) -> bool {
    let one = AlgebraElement::one(&h.ctx);
    if !h.contains(&one) {
        return false;
    }
    h.members.iter().all(|x| {
        h.members
            .iter()
            .all(|y| h.contains(&x.mul(y).expect("same context")))
    })
}

/// A uniformly random normalized unit: free coefficients uniform over
/// GF(p), identity coefficient solved to make the augmentation 1.
pub fn random_normalized_unit(ctx: &Arc<AlgebraContext>, rng: &mut impl Rng) -> AlgebraElement {
    let n = ctx.group().order();
    let p = ctx.prime();
    let mut coeffs = vec![0u8; n];
    let mut rest: u32 = 0;
    for c in coeffs.iter_mut().skip(1) {
        *c = rng.gen_range(0..p) as u8;
        rest += *c as u32;
    }
    let p32 = p as u32;
    coeffs[0] = ((1 + p32 - rest % p32) % p32) as u8;
    AlgebraElement::from_coeffs(ctx, coeffs)
}

/// The verdict record for one (group, prime) pair. Field order matches the
/// serialized schema.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub group: String,
    pub prime: u64,
    pub order_group: u64,
    #[serde(rename = "order_V")]
    pub order_v: u64,
    #[serde(rename = "order_S")]
    pub order_s: u64,
    #[serde(rename = "order_H")]
    pub order_h: u64,
    #[serde(rename = "S_is_subgroup")]
    pub s_is_subgroup: bool,
    #[serde(rename = "S_central")]
    pub s_central: bool,
    #[serde(rename = "H_symmetric")]
    pub h_symmetric: bool,
    pub conjecture_holds: bool,
    #[serde(rename = "enumerated_V")]
    pub enumerated_v: bool,
}

/// Runs the whole pipeline for one (group, prime) pair: build the group,
/// form KG, count V(KG) by the order formula (enumerating fully only when
/// the count fits under `cap`), compute S*, close H = ⟨G, S*⟩, and compare
/// |H| against |V|.
pub fn check_conjecture(spec: &str, p: u64, cap: u64) -> Result<ConjectureReport> {
    let group = build_group(spec)?;
    let ctx = AlgebraContext::new(group, p)?;
    let n = ctx.group().order();
    let exponent = (n - 1) as u32;
    let order_v: u64 = (p as u128)
        .checked_pow(exponent)
        .and_then(|v| u64::try_from(v).ok())
        .ok_or(Error::OrderOverflow {
            p,
            exponent: exponent as u64,
        })?;

    let enumerated_v = order_v <= cap;
    if enumerated_v {
        let v = enumerate_normalized_units(&ctx, cap)?;
        assert_eq!(v.len() as u64, order_v, "enumeration must match p^(n-1)");
    }

    let s = symmetric_units(&ctx, cap)?;
    let s_is_subgroup = s.closed();
    let s_central = symmetric_elements_central(&ctx);

    let mut generators: Vec<AlgebraElement> =
        (0..n).map(|g| AlgebraElement::embed(&ctx, g)).collect();
    generators.extend(s.sorted_elements());
    let h = closure(&ctx, &generators, cap)?;
    let h_symmetric = is_symmetric_subset(&h);
    let order_h = h.len() as u64;

    Ok(ConjectureReport {
        group: ctx.group().name().to_string(),
        prime: p,
        order_group: n as u64,
        order_v,
        order_s: s.len() as u64,
        order_h,
        s_is_subgroup,
        s_central,
        h_symmetric,
        conjecture_holds: order_h == order_v,
        enumerated_v,
    })
}

/// Verifies the central-product structure of ⟨G, S⟩ for a central subgroup
/// S: the closure must have exactly |S|·|G| / |G ∩ S| elements, and the
/// intersection G ∩ S must be the embedded center of G. Returns the
/// conjunction; violated preconditions are errors, not `false`.
pub fn central_product_check(g_emb: &UnitSet, s: &UnitSet) -> Result<bool> {
    if !g_emb.ctx.same_as(&s.ctx) {
        return Err(Error::ContextMismatch);
    }
    let ctx = &g_emb.ctx;
    let n = ctx.group().order();
    if g_emb.len() != n || (0..n).any(|g| !g_emb.contains(&AlgebraElement::embed(ctx, g))) {
        return Err(Error::CentralProductPrecondition(
            "first argument must be the embedded group",
        ));
    }
    if s.members.iter().any(|x| !x.is_central()) {
        return Err(Error::CentralProductPrecondition(
            "second argument must be central",
        ));
    }
    if !is_subgroup(s) {
        return Err(Error::CentralProductPrecondition(
            "second argument must be a subgroup",
        ));
    }

    let intersection = g_emb.intersection(s)?;
    let mut generators: Vec<AlgebraElement> =
        (0..n).map(|g| AlgebraElement::embed(ctx, g)).collect();
    generators.extend(s.sorted_elements());
    // With S central the closure is the product set G·S, so |G|·|S| bounds it.
    let closure_cap = (n as u64) * (s.len() as u64);
    let h = closure(ctx, &generators, closure_cap)?;

    let formula_holds =
        (h.len() as u128) * (intersection.len() as u128) == (s.len() as u128) * (n as u128);
    let center: HashSet<AlgebraElement> = ctx
        .group()
        .center()
        .into_iter()
        .map(|z| AlgebraElement::embed(ctx, z))
        .collect();
    let center_matches =
        intersection.len() == center.len() && center.iter().all(|z| intersection.contains(z));
    Ok(formula_holds && center_matches)
}
