//! Finite groups as explicit multiplication tables.
//!
//! Groups come from a small catalog of presentations (cyclic, dihedral,
//! quaternion, elementary abelian) and their direct products, parsed from
//! spec strings like `"q8"` or `"c4xc2"`. Every table is validated
//! exhaustively at construction: identity, inverses, associativity, the
//! Latin-square property, and generator closure. Element 0 is always the
//! identity and labels are deterministic, so downstream listings are
//! byte-reproducible.

use crate::error::{Error, Result};

/// Largest supported group order. Exhaustive O(n³) validation and unit
/// enumeration stop being sensible beyond this.
pub const MAX_GROUP_ORDER: usize = 64;

/// A finite group given by its full Cayley table.
///
/// Element indices run over `0..order` with index 0 reserved for the
/// identity. The table is immutable after construction and safe to share
/// across threads.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    /// Row-major `order × order` table of element indices.
    cayley: Vec<u8>,
    inverse: Vec<u8>,
    generators: Vec<usize>,
    labels: Vec<String>,
}

impl FiniteGroup {
    /// Builds a group from an explicit table, validating every group axiom.
    ///
    /// The inverse table is derived from the Cayley table. Fails if the
    /// table is not a group of order at most [`MAX_GROUP_ORDER`] with
    /// identity at index 0, or if `generators` does not generate it.
    pub fn from_table(
        name: impl Into<String>,
        order: usize,
        cayley: Vec<u8>,
        generators: Vec<usize>,
        labels: Vec<String>,
    ) -> Result<Self> {
        let name = name.into();
        let invalid = |reason: String| Error::InvalidTable {
            name: name.clone(),
            reason,
        };

        if order == 0 {
            return Err(invalid("order must be positive".into()));
        }
        if order > MAX_GROUP_ORDER {
            return Err(Error::OrderTooLarge {
                order: order as u64,
                max: MAX_GROUP_ORDER as u64,
            });
        }
        if cayley.len() != order * order {
            return Err(invalid(format!(
                "table has {} entries, expected {}",
                cayley.len(),
                order * order
            )));
        }
        if labels.len() != order {
            return Err(invalid("one label per element required".into()));
        }
        if cayley.iter().any(|&e| e as usize >= order) {
            return Err(invalid("table entry out of range".into()));
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(invalid("generator index out of range".into()));
        }

        let at = |i: usize, j: usize| cayley[i * order + j] as usize;

        // Identity law at index 0.
        for i in 0..order {
            if at(0, i) != i || at(i, 0) != i {
                return Err(invalid(format!("element 0 is not an identity at {i}")));
            }
        }

        // Latin square: every row and column is a permutation.
        let mut seen = vec![false; order];
        for i in 0..order {
            seen.fill(false);
            for j in 0..order {
                seen[at(i, j)] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(invalid(format!("row {i} is not a permutation")));
            }
            seen.fill(false);
            for j in 0..order {
                seen[at(j, i)] = true;
            }
            if seen.iter().any(|s| !s) {
                return Err(invalid(format!("column {i} is not a permutation")));
            }
        }

        // Two-sided inverses, derived from the table.
        let mut inverse = vec![0u8; order];
        for (i, slot) in inverse.iter_mut().enumerate() {
            let j = (0..order)
                .find(|&j| at(i, j) == 0)
                .expect("Latin row contains the identity");
            if at(j, i) != 0 {
                return Err(invalid(format!("element {i} has no two-sided inverse")));
            }
            *slot = j as u8;
        }

        // Exhaustive associativity.
        for i in 0..order {
            for j in 0..order {
                let ij = at(i, j);
                for k in 0..order {
                    if at(ij, k) != at(i, at(j, k)) {
                        return Err(invalid(format!("associativity fails at ({i}, {j}, {k})")));
                    }
                }
            }
        }

        // The generators must generate: BFS closure from the identity.
        let mut reached = vec![false; order];
        reached[0] = true;
        let mut frontier = vec![0usize];
        while let Some(x) = frontier.pop() {
            for &g in &generators {
                let y = at(x, g);
                if !reached[y] {
                    reached[y] = true;
                    frontier.push(y);
                }
            }
        }
        if reached.iter().any(|r| !r) {
            return Err(invalid("generators do not generate the group".into()));
        }

        Ok(Self {
            name,
            order,
            cayley,
            inverse,
            generators,
            labels,
        })
    }

    /// Catalog identifier, e.g. `"q8"` or `"c4xc2"`.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        self.order
    }

    /// Product of elements `i` and `j`.
    #[inline]
    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.cayley[i * self.order + j] as usize
    }

    /// Inverse of element `i`.
    #[inline]
    pub fn inv(&self, i: usize) -> usize {
        self.inverse[i] as usize
    }

    /// Conjugate `g⁻¹ x g`.
    #[inline]
    pub fn conjugate(&self, x: usize, g: usize) -> usize {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// Indices of the catalog generators.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    /// Display label of element `i`.
    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    /// All element labels in index order.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    /// Row `i` of the Cayley table: `row[j]` is the index of `e_i · e_j`.
    #[inline]
    pub fn row(&self, i: usize) -> &[u8] {
        &self.cayley[i * self.order..(i + 1) * self.order]
    }

    /// Whether all pairs of elements commute.
    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|i| (i..self.order).all(|j| self.mul(i, j) == self.mul(j, i)))
    }

    /// The center: all indices commuting with every element.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order)
            .filter(|&z| (0..self.order).all(|i| self.mul(z, i) == self.mul(i, z)))
            .collect()
    }

    /// Partition of the elements into conjugacy classes, listed in ascending
    /// order of their minimal member.
    pub fn conjugacy_classes(&self) -> ConjugacyPartition {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in 0..self.order {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..self.order).map(|g| self.conjugate(x, g)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(ConjugacyClass {
                representative: x,
                members,
            });
        }
        ConjugacyPartition { classes, class_of }
    }
}

/// One conjugacy class: sorted member indices plus its minimal representative.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClass {
    representative: usize,
    members: Vec<usize>,
}

impl ConjugacyClass {
    pub fn representative(&self) -> usize {
        self.representative
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// The conjugacy classes of a group, covering every element exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyPartition {
    classes: Vec<ConjugacyClass>,
    class_of: Vec<usize>,
}

impl ConjugacyPartition {
    pub fn classes(&self) -> &[ConjugacyClass] {
        &self.classes
    }

    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    /// Index of the class containing element `x`.
    pub fn class_of(&self, x: usize) -> usize {
        self.class_of[x]
    }
}

/// Parses a group spec string and builds the group.
///
/// The grammar is `atom ( "x" atom )*`, case-insensitive. Atoms:
/// `q8`, `d8`, `d16`, `c{m}` for a prime power `m` (plus `c1` for the
/// trivial group), and `elem{p}e{k}` for the elementary abelian group of
/// order `p^k`. Products multiply left to right.
pub fn build_group(spec: &str) -> Result<FiniteGroup> {
    let normalized = spec.trim().to_ascii_lowercase();
    if normalized.is_empty() {
        return Err(Error::MalformedSpec(spec.to_string()));
    }
    let mut atoms = normalized.split('x');
    let first = atoms.next().expect("split yields at least one part");
    if first.is_empty() {
        return Err(Error::MalformedSpec(spec.to_string()));
    }
    let mut group = build_atom(first)?;
    for atom in atoms {
        if atom.is_empty() {
            return Err(Error::MalformedSpec(spec.to_string()));
        }
        group = direct_product(&group, &build_atom(atom)?)?;
    }
    Ok(group)
}

fn build_atom(atom: &str) -> Result<FiniteGroup> {
    match atom {
        "q8" => quaternion8(),
        "d8" => dihedral(4),
        "d16" => dihedral(8),
        _ => {
            if let Some(rest) = atom.strip_prefix("elem") {
                let (p, k) = rest
                    .split_once('e')
                    .and_then(|(p, k)| Some((p.parse::<u64>().ok()?, k.parse::<u32>().ok()?)))
                    .ok_or_else(|| Error::UnknownAtom(atom.to_string()))?;
                elementary_abelian(p, k)
            } else if let Some(rest) = atom.strip_prefix('c') {
                let m: u64 = rest
                    .parse()
                    .map_err(|_| Error::UnknownAtom(atom.to_string()))?;
                cyclic(m)
            } else {
                Err(Error::UnknownAtom(atom.to_string()))
            }
        }
    }
}

fn table_from_fn(n: usize, f: impl Fn(usize, usize) -> usize) -> Vec<u8> {
    let mut t = vec![0u8; n * n];
    for i in 0..n {
        for j in 0..n {
            t[i * n + j] = f(i, j) as u8;
        }
    }
    t
}

fn pow_label(base: &str, e: usize) -> String {
    match e {
        0 => "1".to_string(),
        1 => base.to_string(),
        _ => format!("{base}^{e}"),
    }
}

/// Cyclic group of order `m`, for `m` a prime power (or 1, the trivial
/// group). Elements are powers of the single generator `g`.
pub fn cyclic(m: u64) -> Result<FiniteGroup> {
    if m == 0 || (m > 1 && prime_power_base(m).is_none()) {
        return Err(Error::NotPrimePower(m));
    }
    if m > MAX_GROUP_ORDER as u64 {
        return Err(Error::OrderTooLarge {
            order: m,
            max: MAX_GROUP_ORDER as u64,
        });
    }
    let n = m as usize;
    let labels = (0..n).map(|i| pow_label("g", i)).collect();
    let generators = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_table(
        format!("c{m}"),
        n,
        table_from_fn(n, |i, j| (i + j) % n),
        generators,
        labels,
    )
}

/// Dihedral group of order `2m`: rotations `r` of order `m` and a
/// reflection `s`, with `s·r·s = r⁻¹`. Element `r^i s^j` has index
/// `i + j·m`.
fn dihedral(m: usize) -> Result<FiniteGroup> {
    let n = 2 * m;
    let table = table_from_fn(n, |x, y| {
        let (i1, j1) = (x % m, x / m);
        let (i2, j2) = (y % m, y / m);
        if j1 == 0 {
            (i1 + i2) % m + j2 * m
        } else {
            (i1 + m - i2) % m + ((1 + j2) % 2) * m
        }
    });
    let labels = (0..n)
        .map(|x| {
            let (i, j) = (x % m, x / m);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (_, 0) => pow_label("r", i),
                (0, 1) => "s".to_string(),
                (_, 1) => format!("{}*s", pow_label("r", i)),
                _ => unreachable!(),
            }
        })
        .collect();
    FiniteGroup::from_table(format!("d{n}"), n, table, vec![1, m], labels)
}

/// The quaternion group of order 8: `a` of order 4, `b` with `b² = a²` and
/// `b⁻¹·a·b = a³`. Element `a^i b^j` has index `i + 4j`, giving the fixed
/// element order 1, a, a², a³, b, ab, a²b, a³b.
pub fn quaternion8() -> Result<FiniteGroup> {
    let table = table_from_fn(8, |x, y| {
        let (i1, j1) = (x % 4, x / 4);
        let (i2, j2) = (y % 4, y / 4);
        if j1 == 0 {
            (i1 + i2) % 4 + 4 * j2
        } else if j2 == 0 {
            (i1 + 4 - i2) % 4 + 4
        } else {
            (i1 + 4 - i2 + 2) % 4
        }
    });
    let labels = (0..8)
        .map(|x| {
            let (i, j) = (x % 4, x / 4);
            match (i, j) {
                (0, 0) => "1".to_string(),
                (_, 0) => pow_label("a", i),
                (0, 1) => "b".to_string(),
                (_, 1) => format!("{}*b", pow_label("a", i)),
                _ => unreachable!(),
            }
        })
        .collect();
    FiniteGroup::from_table("q8", 8, table, vec![1, 4], labels)
}

/// Elementary abelian group of order `p^k`: the direct sum of `k` copies of
/// the cyclic group of prime order `p`, with generators `g1..gk`. Element
/// indices encode exponent vectors in base `p`, `g1` most significant.
pub fn elementary_abelian(p: u64, k: u32) -> Result<FiniteGroup> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if k == 0 {
        return Err(Error::MalformedSpec(format!("elem{p}e{k}")));
    }
    let order = (p as u128)
        .checked_pow(k)
        .filter(|&n| n <= MAX_GROUP_ORDER as u128);
    let n = match order {
        Some(n) => n as usize,
        None => {
            return Err(Error::OrderTooLarge {
                order: u64::MAX,
                max: MAX_GROUP_ORDER as u64,
            })
        }
    };
    let p = p as usize;
    let k = k as usize;
    let digits = |mut x: usize| -> Vec<usize> {
        let mut d = vec![0; k];
        for slot in (0..k).rev() {
            d[slot] = x % p;
            x /= p;
        }
        d
    };
    let table = table_from_fn(n, |x, y| {
        let (dx, dy) = (digits(x), digits(y));
        dx.iter()
            .zip(&dy)
            .fold(0, |acc, (a, b)| acc * p + (a + b) % p)
    });
    let labels = (0..n)
        .map(|x| {
            let parts: Vec<String> = digits(x)
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(slot, &e)| pow_label(&format!("g{}", slot + 1), e))
                .collect();
            if parts.is_empty() {
                "1".to_string()
            } else {
                parts.join("*")
            }
        })
        .collect();
    let generators = (0..k).map(|slot| p.pow((k - 1 - slot) as u32)).collect();
    FiniteGroup::from_table(format!("elem{p}e{k}"), n, table, generators, labels)
}

/// Direct product `A × B`, with element `(i, j)` at index `i·|B| + j`.
pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Result<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    if n > MAX_GROUP_ORDER {
        return Err(Error::OrderTooLarge {
            order: (na as u64) * (nb as u64),
            max: MAX_GROUP_ORDER as u64,
        });
    }
    let table = table_from_fn(n, |x, y| {
        let (ia, ja) = (x / nb, x % nb);
        let (ib, jb) = (y / nb, y % nb);
        a.mul(ia, ib) * nb + b.mul(ja, jb)
    });
    let labels = (0..n)
        .map(|x| {
            if x == 0 {
                "1".to_string()
            } else {
                format!("({},{})", a.label(x / nb), b.label(x % nb))
            }
        })
        .collect();
    let mut generators: Vec<usize> = a.generators().iter().map(|&g| g * nb).collect();
    generators.extend(b.generators().iter().copied());
    FiniteGroup::from_table(
        format!("{}x{}", a.name(), b.name()),
        n,
        table,
        generators,
        labels,
    )
}

/// The fixed roster of catalog groups of order at most 16 whose order is a
/// power of `p`, in the deterministic order used by sweeps.
pub fn sweep_specs(p: u64) -> &'static [&'static str] {
    match p {
        2 => &[
            "c2", "c4", "c2xc2", "elem2e2", "c8", "c4xc2", "elem2e3", "d8", "q8", "c16", "c8xc2",
            "c4xc4", "c4xc2xc2", "elem2e4", "d16", "d8xc2", "q8xc2",
        ],
        3 => &["c3", "c9", "c3xc3", "elem3e2"],
        5 => &["c5"],
        7 => &["c7"],
        11 => &["c11"],
        13 => &["c13"],
        _ => &[],
    }
}

/// Trial-division primality test; inputs here are small.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// If `n = p^k` for a prime `p` and `k ≥ 1`, returns `(p, k)`.
pub fn prime_power_base(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let p = (2..=n)
        .find(|&d| n.is_multiple_of(d))
        .expect("n ≥ 2 has a divisor");
    let mut m = n;
    let mut k = 0;
    while m.is_multiple_of(p) {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}
