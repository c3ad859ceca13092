//! The modular group algebra KG over GF(p).
//!
//! An element is a dense coefficient vector over the group's element
//! indices: x = Σ λ_g·g. The classical involution sends x to Σ λ_g·g⁻¹ and
//! is an antiautomorphism of order two. The augmentation map Σλ_g ↦ GF(p)
//! splits off the augmentation ideal I(G); because G is a p-group and
//! char K = p, I(G) is nilpotent, so every element of augmentation 1 is a
//! unit whose inverse the geometric series reaches in at most |G| steps.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{is_prime, ConjugacyPartition, FiniteGroup};

/// A finite group paired with a prime characteristic, plus the derived
/// caches (inversion orbits, conjugacy classes, class-sum vectors) that the
/// unit-set computations lean on. Immutable once built; share via `Arc`.
#[derive(Debug)]
pub struct AlgebraContext {
    group: FiniteGroup,
    p: u64,
    inversion_orbits: Vec<Vec<usize>>,
    conjugacy: ConjugacyPartition,
    class_sum_coeffs: Vec<Box<[u8]>>,
}

impl AlgebraContext {
    /// Pairs `group` with the prime `p`, enforcing the modular condition
    /// |G| = p^k. Everything downstream (nilpotency of I(G), the p-power
    /// order of V(KG)) depends on it.
    pub fn new(group: FiniteGroup, p: u64) -> Result<Arc<Self>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let mut m = group.order() as u64;
        while m.is_multiple_of(p) {
            m /= p;
        }
        if m != 1 {
            return Err(Error::NotModular {
                order: group.order() as u64,
                p,
            });
        }

        let n = group.order();
        let mut inversion_orbits = Vec::new();
        let mut seen = vec![false; n];
        for i in 0..n {
            if seen[i] {
                continue;
            }
            let j = group.inv(i);
            seen[i] = true;
            seen[j] = true;
            let orbit = if i == j {
                vec![i]
            } else {
                vec![i.min(j), i.max(j)]
            };
            inversion_orbits.push(orbit);
        }

        let conjugacy = group.conjugacy_classes();
        let class_sum_coeffs = conjugacy
            .classes()
            .iter()
            .map(|class| {
                let mut coeffs = vec![0u8; n];
                for &m in class.members() {
                    coeffs[m] = 1;
                }
                coeffs.into_boxed_slice()
            })
            .collect();

        Ok(Arc::new(Self {
            group,
            p,
            inversion_orbits,
            conjugacy,
            class_sum_coeffs,
        }))
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    /// The partition of element indices into sets {g, g⁻¹}; singletons
    /// exactly where g² = 1. Orbits are sorted and listed by minimal member.
    pub fn inversion_orbits(&self) -> &[Vec<usize>] {
        &self.inversion_orbits
    }

    pub fn conjugacy(&self) -> &ConjugacyPartition {
        &self.conjugacy
    }

    /// The sum of the elements of conjugacy class `index`; always central.
    pub fn class_sum(self: &Arc<Self>, index: usize) -> Result<AlgebraElement> {
        let coeffs = self
            .class_sum_coeffs
            .get(index)
            .ok_or(Error::ClassIndexOutOfRange {
                index,
                classes: self.class_sum_coeffs.len(),
            })?
            .clone();
        Ok(AlgebraElement {
            ctx: Arc::clone(self),
            coeffs,
        })
    }

    pub(crate) fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (self.p == other.p && self.group == other.group)
    }
}

/// An element of KG: `coeffs[i]` is the GF(p) coefficient of group element
/// `i`, always kept reduced mod p. Equality, ordering, and hashing use the
/// coefficient vector alone.
#[derive(Debug, Clone)]
pub struct AlgebraElement {
    ctx: Arc<AlgebraContext>,
    coeffs: Box<[u8]>,
}

impl PartialEq for AlgebraElement {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for AlgebraElement {}

impl Hash for AlgebraElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.coeffs.hash(state);
    }
}

impl PartialOrd for AlgebraElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for AlgebraElement {
    /// Lexicographic on the coefficient vector; the listing order of all
    /// deterministic output.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl AlgebraElement {
    /// The zero element.
    pub fn zero(ctx: &Arc<AlgebraContext>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            coeffs: vec![0; ctx.group.order()].into_boxed_slice(),
        }
    }

    /// The multiplicative identity 1 = embed(identity).
    pub fn one(ctx: &Arc<AlgebraContext>) -> Self {
        Self::embed(ctx, 0)
    }

    /// The group element `g` viewed inside KG.
    pub fn embed(ctx: &Arc<AlgebraContext>, g: usize) -> Self {
        assert!(g < ctx.group.order(), "element index out of range");
        let mut coeffs = vec![0u8; ctx.group.order()];
        coeffs[g] = 1;
        Self {
            ctx: Arc::clone(ctx),
            coeffs: coeffs.into_boxed_slice(),
        }
    }

    /// Builds an element from raw coefficients, reducing entries mod p.
    /// Panics if the length does not match the group order.
    pub fn from_coeffs(ctx: &Arc<AlgebraContext>, coeffs: impl Into<Vec<u8>>) -> Self {
        let mut coeffs = coeffs.into();
        assert_eq!(
            coeffs.len(),
            ctx.group.order(),
            "one coefficient per group element"
        );
        let p = ctx.p as u8;
        for c in &mut coeffs {
            *c %= p;
        }
        Self {
            ctx: Arc::clone(ctx),
            coeffs: coeffs.into_boxed_slice(),
        }
    }

    pub fn context(&self) -> &Arc<AlgebraContext> {
        &self.ctx
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    fn check_context(&self, other: &Self) -> Result<()> {
        if Arc::ptr_eq(&self.ctx, &other.ctx) || self.ctx.same_as(&other.ctx) {
            Ok(())
        } else {
            Err(Error::ContextMismatch)
        }
    }

    /// Entrywise sum mod p.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let p = self.ctx.p as u16;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(&a, &b)| ((a as u16 + b as u16) % p) as u8)
            .collect();
        Ok(Self {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        })
    }

    /// Entrywise difference mod p.
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let p = self.ctx.p as u16;
        let coeffs = self
            .coeffs
            .iter()
            .zip(other.coeffs.iter())
            .map(|(&a, &b)| ((a as u16 + p - b as u16) % p) as u8)
            .collect();
        Ok(Self {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        })
    }

    /// Additive inverse.
    pub fn neg(&self) -> Self {
        let p = self.ctx.p as u16;
        let coeffs = self
            .coeffs
            .iter()
            .map(|&a| ((p - a as u16) % p) as u8)
            .collect();
        Self {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        }
    }

    /// Convolution product: coeffs[k] = Σ_{gh=k} x_g·y_h mod p, by the
    /// double loop over support pairs.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_context(other)?;
        let group = &self.ctx.group;
        let n = group.order();
        let mut acc = vec![0u32; n];
        for i in 0..n {
            let xi = self.coeffs[i] as u32;
            if xi == 0 {
                continue;
            }
            let row = group.row(i);
            for j in 0..n {
                let yj = other.coeffs[j] as u32;
                if yj != 0 {
                    acc[row[j] as usize] += xi * yj;
                }
            }
        }
        let p = self.ctx.p as u32;
        let coeffs = acc.iter().map(|&c| (c % p) as u8).collect();
        Ok(Self {
            ctx: Arc::clone(&self.ctx),
            coeffs,
        })
    }

    /// The classical involution x ↦ Σ λ_g·g⁻¹.
    pub fn involution(&self) -> Self {
        let group = &self.ctx.group;
        let mut coeffs = vec![0u8; group.order()];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[group.inv(i)] = c;
        }
        Self {
            ctx: Arc::clone(&self.ctx),
            coeffs: coeffs.into_boxed_slice(),
        }
    }

    /// Sum of all coefficients mod p. Zero exactly on the augmentation
    /// ideal I(G); one on normalized-unit candidates.
    pub fn augmentation(&self) -> u8 {
        let p = self.ctx.p as u32;
        (self.coeffs.iter().map(|&c| c as u32).sum::<u32>() % p) as u8
    }

    /// Inverse of a normalized unit via the nilpotent geometric series:
    /// with x = 1 + z, z ∈ I(G), the inverse is Σ_{i≥0} (−z)^i, which
    /// terminates because I(G) is nilpotent. More than |G| non-vanishing
    /// powers would contradict the modular condition, so that bound is
    /// defensive failure, not a tunable.
    pub fn inverse_normalized(&self) -> Result<Self> {
        let aug = self.augmentation();
        if aug != 1 {
            return Err(Error::NotNormalized(aug));
        }
        let bound = self.ctx.group.order();
        let one = Self::one(&self.ctx);
        let neg_z = one.sub(self)?; // −z = 1 − x
        let mut acc = one;
        let mut term = neg_z.clone();
        let mut steps = 0usize;
        while !term.is_zero() {
            steps += 1;
            if steps > bound {
                return Err(Error::SeriesDiverged(bound));
            }
            acc = acc.add(&term)?;
            term = term.mul(&neg_z)?;
        }
        Ok(acc)
    }

    /// Whether x commutes with all of KG; checked against the embedded
    /// generators, which suffices since they generate the group.
    pub fn is_central(&self) -> bool {
        let group = &self.ctx.group;
        let n = group.order();
        // x·g = g·x ⟺ g⁻¹xg = x ⟺ coeffs constant on ⟨g⟩-conjugation orbits
        group
            .generators()
            .iter()
            .all(|&g| (0..n).all(|i| self.coeffs[i] == self.coeffs[group.conjugate(i, g)]))
    }

    /// Whether x* = x, i.e. the coefficients are constant on every
    /// inversion orbit {g, g⁻¹}.
    pub fn is_symmetric(&self) -> bool {
        let group = &self.ctx.group;
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, &c)| c == self.coeffs[group.inv(i)])
    }
}

impl fmt::Display for AlgebraElement {
    /// Formal sum in element-index order, zero terms omitted, coefficient
    /// 1 implicit: e.g. `1 + 2*g` over GF(3), `1 + a + b` over GF(2).
    /// The zero element prints `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            if c == 1 {
                f.write_str(self.ctx.group.label(i))?;
            } else {
                write!(f, "{}*{}", c, self.ctx.group.label(i))?;
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}
