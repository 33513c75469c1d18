//! Cyclic difference sets: brute-force verification, equivalence under
//! affine maps t*D + s, orbit decomposition under a multiplier, and the
//! fixed-point bookkeeping behind shifted set families.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::util::{gcd, mulmod};

/// A verified (v, k, lambda) difference set: k distinct residues mod v whose
/// pairwise differences hit every nonzero residue exactly lambda times.
///
/// Construction always runs the tally oracle, so a value of this type is a
/// certificate.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DifferenceSet {
    modulus: u64,
    /// Sorted ascending.
    elements: Vec<u64>,
    lambda: u64,
}

impl DifferenceSet {
    /// Verifies and wraps a set of residues mod `modulus`.
    pub fn new(elements: impl IntoIterator<Item = u64>, modulus: u64) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::ModulusTooSmall(modulus));
        }
        let mut elements: Vec<u64> = elements.into_iter().map(|x| x % modulus).collect();
        elements.sort_unstable();
        let lambda = verify_difference_set(&elements, modulus)?;
        Ok(DifferenceSet {
            modulus,
            elements,
            lambda,
        })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Elements sorted ascending.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.modulus)).is_ok()
    }

    /// First element (ascending) whose image under x -> t*x mod v escapes the
    /// set, or None if the set is closed.
    pub fn multiplier_escape(&self, t: u64) -> Option<u64> {
        self.elements
            .iter()
            .copied()
            .find(|&d| !self.contains(mulmod(d, t % self.modulus, self.modulus)))
    }

    /// True iff t*D = D as sets mod v.
    pub fn is_fixed_by_multiplier(&self, t: u64) -> bool {
        self.multiplier_escape(t).is_none()
    }
}

impl<'de> Deserialize<'de> for DifferenceSet {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            modulus: u64,
            elements: Vec<u64>,
            #[serde(default)]
            lambda: Option<u64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        let set =
            DifferenceSet::new(raw.elements, raw.modulus).map_err(serde::de::Error::custom)?;
        if let Some(l) = raw.lambda {
            if l != set.lambda {
                return Err(serde::de::Error::custom(format!(
                    "declared lambda {l} does not match the verified value {}",
                    set.lambda
                )));
            }
        }
        Ok(set)
    }
}

/// The brute-force oracle: tallies all k(k-1) nonzero differences and
/// demands a perfectly uniform count. Returns that count (lambda).
pub fn verify_difference_set(elements: &[u64], modulus: u64) -> Result<u64> {
    let v = modulus;
    if v < 2 {
        return Err(Error::ModulusTooSmall(v));
    }
    let k = elements.len() as u64;
    let mut seen = vec![false; v as usize];
    for &d in elements {
        let d = d % v;
        if seen[d as usize] {
            return Err(Error::DuplicateElement(d));
        }
        seen[d as usize] = true;
    }
    let mut counts = vec![0u64; v as usize];
    for &a in elements {
        for &b in elements {
            if a != b {
                counts[((a + v - b) % v) as usize] += 1;
            }
        }
    }
    let total = k * k.saturating_sub(1);
    let expected = if total.is_multiple_of(v - 1) {
        total / (v - 1)
    } else {
        counts[1 % v as usize]
    };
    for (alpha, &count) in counts.iter().enumerate().skip(1) {
        if count != expected {
            return Err(Error::NotADifferenceSet {
                alpha: alpha as u64,
                count,
                expected,
            });
        }
    }
    Ok(expected)
}

/// The affine image {t*d + s mod v}; t must be a unit.
pub fn transform(set: &DifferenceSet, t: u64, s: u64) -> Result<DifferenceSet> {
    let v = set.modulus;
    if gcd(t % v, v) != 1 {
        return Err(Error::NotAUnit { t, modulus: v });
    }
    let mapped = set.elements.iter().map(|&d| (mulmod(d, t % v, v) + s) % v);
    let out = DifferenceSet::new(mapped, v)?;
    debug_assert_eq!(out.lambda, set.lambda);
    Ok(out)
}

/// Exhaustive equivalence scan: the first (t, s), t ascending over units and
/// s ascending, with t*D1 + s = D2. None if the sets are inequivalent (or
/// have different modulus or size).
pub fn equivalent(d1: &DifferenceSet, d2: &DifferenceSet) -> Option<(u64, u64)> {
    if d1.modulus != d2.modulus || d1.elements.len() != d2.elements.len() {
        return None;
    }
    let v = d1.modulus;
    let mut member = vec![false; v as usize];
    for &d in &d2.elements {
        member[d as usize] = true;
    }
    for t in 1..v {
        if gcd(t, v) != 1 {
            continue;
        }
        for s in 0..v {
            if d1
                .elements
                .iter()
                .all(|&d| member[((mulmod(d, t, v) + s) % v) as usize])
            {
                return Some((t, s));
            }
        }
    }
    None
}

/// Orbits of x -> multiplier * x mod v restricted to a set closed under that
/// map. Orbits are sorted by minimal element and each starts at its minimal
/// element, so the output is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrbitDecomposition {
    pub multiplier: u64,
    pub modulus: u64,
    /// Declared order of the acting cyclic group (f in context).
    pub group_order: u64,
    /// Each orbit in cycle order d, t*d, t^2*d, ...; starting at its minimum.
    pub orbits: Vec<Vec<u64>>,
}

impl OrbitDecomposition {
    pub fn lengths(&self) -> Vec<u64> {
        self.orbits.iter().map(|o| o.len() as u64).collect()
    }

    /// True iff every orbit length divides the declared group order.
    pub fn lengths_divide_group_order(&self) -> bool {
        self.orbits
            .iter()
            .all(|o| self.group_order.is_multiple_of(o.len() as u64))
    }
}

/// Decomposes a multiplier-fixed set into orbits of x -> p*x mod v.
pub fn frobenius_orbits(set: &DifferenceSet, p: u64, f: u64) -> Result<OrbitDecomposition> {
    let v = set.modulus;
    if let Some(element) = set.multiplier_escape(p) {
        return Err(Error::NotFrobeniusFixed {
            multiplier: p % v,
            modulus: v,
            element,
        });
    }
    let mut visited = vec![false; set.elements.len()];
    let mut orbits = Vec::new();
    for (start, &d0) in set.elements.iter().enumerate() {
        if visited[start] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut cur = d0;
        loop {
            let idx = set
                .elements
                .binary_search(&cur)
                .expect("closed under multiplier");
            if visited[idx] {
                break;
            }
            visited[idx] = true;
            orbit.push(cur);
            cur = mulmod(cur, p % v, v);
        }
        orbits.push(orbit);
    }
    Ok(OrbitDecomposition {
        multiplier: p % v,
        modulus: v,
        group_order: f,
        orbits,
    })
}

/// Residues w with (p - 1) * w = 0 mod l: the vertices fixed by x -> p*x.
/// There are exactly gcd(p - 1, l) of them.
pub fn fixed_vertices(l: u64, p: u64) -> Vec<u64> {
    let r = (p % l + l - 1) % l;
    let g = gcd(r, l);
    let step = l / g;
    (0..g).map(|k| k * step).collect()
}

/// One shifted copy of a multiplier-fixed set per fixed vertex; every member
/// is itself verified fixed.
pub fn frobenius_shift_family(set: &DifferenceSet, p: u64) -> Result<Vec<DifferenceSet>> {
    let v = set.modulus;
    if let Some(element) = set.multiplier_escape(p) {
        return Err(Error::NotFrobeniusFixed {
            multiplier: p % v,
            modulus: v,
            element,
        });
    }
    let mut family = Vec::new();
    for s in fixed_vertices(v, p) {
        let shifted = transform(set, 1, s)?;
        if let Some(element) = shifted.multiplier_escape(p) {
            return Err(Error::Internal(format!(
                "shift by fixed vertex {s} broke multiplier closure at {element}"
            )));
        }
        family.push(shifted);
    }
    Ok(family)
}
