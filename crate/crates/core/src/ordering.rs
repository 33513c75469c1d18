//! Cyclic orderings of difference-set elements and the two compatibility
//! notions that drive the dessin construction: all consecutive differences
//! prime to the modulus, and block structure under the Frobenius multiplier.

use serde::{Deserialize, Serialize};

use crate::diffset::{frobenius_orbits, DifferenceSet};
use crate::error::{Error, Result};
use crate::util::{gcd, modpow, mulmod, units};

/// Node limit for [`find_compatible_ordering`] unless the caller overrides it.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// A difference set together with a cyclic ordering of its elements.
///
/// Rotations are the same ordering; the stored form is canonical, rotated so
/// the minimal element comes first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrderedDifferenceSet {
    #[serde(skip)]
    base: DifferenceSet,
    modulus: u64,
    order: Vec<u64>,
}

impl OrderedDifferenceSet {
    /// Wraps an ordering of the elements of `base`; errors unless `order` is
    /// a permutation of them.
    pub fn new(base: DifferenceSet, order: Vec<u64>) -> Result<Self> {
        let mut sorted: Vec<u64> = order.iter().map(|&x| x % base.modulus()).collect();
        sorted.sort_unstable();
        if sorted != base.elements() {
            return Err(Error::NotAPermutation);
        }
        let modulus = base.modulus();
        let mut order: Vec<u64> = order.into_iter().map(|x| x % modulus).collect();
        let min_pos = order
            .iter()
            .enumerate()
            .min_by_key(|(_, &x)| x)
            .map(|(i, _)| i)
            .unwrap_or(0);
        order.rotate_left(min_pos);
        Ok(OrderedDifferenceSet {
            base,
            modulus,
            order,
        })
    }

    /// Builds the ordering and verifies the underlying set in one step.
    pub fn from_order(order: Vec<u64>, modulus: u64) -> Result<Self> {
        let base = DifferenceSet::new(order.iter().copied(), modulus)?;
        Self::new(base, order)
    }

    pub fn base(&self) -> &DifferenceSet {
        &self.base
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical rotation of the cyclic ordering (minimal element first).
    pub fn order(&self) -> &[u64] {
        &self.order
    }

    pub fn len(&self) -> u64 {
        self.order.len() as u64
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Element at cyclic position i.
    pub fn element(&self, i: u64) -> u64 {
        self.order[(i % self.len()) as usize]
    }

    /// Position of a residue in the ordering, if present.
    pub fn position_of(&self, x: u64) -> Option<u64> {
        let x = x % self.modulus;
        self.order.iter().position(|&d| d == x).map(|i| i as u64)
    }
}

impl<'de> Deserialize<'de> for OrderedDifferenceSet {
    fn deserialize<D>(deserializer: D) -> std::result::Result<Self, D::Error>
    where
        D: serde::Deserializer<'de>,
    {
        #[derive(Deserialize)]
        struct Raw {
            modulus: u64,
            order: Vec<u64>,
        }
        let raw = Raw::deserialize(deserializer)?;
        OrderedDifferenceSet::from_order(raw.order, raw.modulus).map_err(serde::de::Error::custom)
    }
}

/// One adjacent pair whose difference shares a factor with the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OffendingPair {
    pub left: u64,
    pub right: u64,
    pub gcd: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WadaVerdict {
    pub compatible: bool,
    pub offending: Vec<OffendingPair>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusVerdict {
    pub compatible: bool,
    /// Witness block exponent when compatible.
    pub j: Option<u64>,
    /// Block length k = q/f when compatible.
    pub block_len: Option<u64>,
}

/// Verdicts for one ordering; each checker fills its own half.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize, Default)]
pub struct CompatibilityReport {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wada: Option<WadaVerdict>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frobenius: Option<FrobeniusVerdict>,
}

impl CompatibilityReport {
    pub fn is_wada(&self) -> bool {
        self.wada.as_ref().is_some_and(|w| w.compatible)
    }

    pub fn is_frobenius(&self) -> bool {
        self.frobenius.as_ref().is_some_and(|f| f.compatible)
    }

    /// Merges the halves of two reports, preferring filled-in sides.
    pub fn merge(mut self, other: CompatibilityReport) -> CompatibilityReport {
        if self.wada.is_none() {
            self.wada = other.wada;
        }
        if self.frobenius.is_none() {
            self.frobenius = other.frobenius;
        }
        self
    }
}

/// Checks gcd(d_i - d_{i+1}, l) = 1 for every cyclically consecutive pair,
/// wrap-around included.
pub fn is_wada_compatible(ordering: &OrderedDifferenceSet) -> CompatibilityReport {
    let l = ordering.modulus();
    let k = ordering.order().len();
    let mut offending = Vec::new();
    for i in 0..k {
        let a = ordering.order()[i];
        let b = ordering.order()[(i + 1) % k];
        let g = gcd((a + l - b) % l, l);
        if g != 1 {
            offending.push(OffendingPair {
                left: a,
                right: b,
                gcd: g,
            });
        }
    }
    CompatibilityReport {
        wada: Some(WadaVerdict {
            compatible: offending.is_empty(),
            offending,
        }),
        frobenius: None,
    }
}

/// Checks whether some rotation of the ordering has the block form
/// d_1..d_k, p^j d_1..p^j d_k, ..., for a single j coprime to f. Requires
/// the base set to be fixed under the multiplier and f to divide q.
pub fn is_frobenius_compatible(
    ordering: &OrderedDifferenceSet,
    p: u64,
    f: u64,
) -> Result<CompatibilityReport> {
    let l = ordering.modulus();
    if let Some(element) = ordering.base().multiplier_escape(p) {
        return Err(Error::NotFrobeniusFixed {
            multiplier: p % l,
            modulus: l,
            element,
        });
    }
    let q = ordering.order().len() as u64;
    if f <= 1 {
        // Trivial group: one block, nothing to align.
        return Ok(CompatibilityReport {
            wada: None,
            frobenius: Some(FrobeniusVerdict {
                compatible: true,
                j: Some(0),
                block_len: Some(q),
            }),
        });
    }
    if !q.is_multiple_of(f) {
        return Err(Error::FNotDividingQ { f, q });
    }
    let k = (q / f) as usize;
    let order = ordering.order();
    let n = order.len();
    for rot in 0..n {
        let at = |i: usize| order[(rot + i) % n];
        for &j in &units(f) {
            let pj = modpow(p, j, l);
            let mut ok = true;
            'blocks: for h in 1..f as usize {
                for i in 0..k {
                    if at(h * k + i) != mulmod(at((h - 1) * k + i), pj, l) {
                        ok = false;
                        break 'blocks;
                    }
                }
            }
            if ok {
                return Ok(CompatibilityReport {
                    wada: None,
                    frobenius: Some(FrobeniusVerdict {
                        compatible: true,
                        j: Some(j),
                        block_len: Some(k as u64),
                    }),
                });
            }
        }
    }
    Ok(CompatibilityReport {
        wada: None,
        frobenius: Some(FrobeniusVerdict {
            compatible: false,
            j: None,
            block_len: None,
        }),
    })
}

/// Runs both checkers and merges the verdicts.
pub fn full_report(ordering: &OrderedDifferenceSet, p: u64, f: u64) -> Result<CompatibilityReport> {
    let wada = is_wada_compatible(ordering);
    let frob = is_frobenius_compatible(ordering, p, f)?;
    Ok(wada.merge(frob))
}

/// Exact backtracking search for a compatible cyclic ordering.
///
/// With `require_frobenius`, the search runs over arrangements of the
/// multiplier orbits (one representative per block slot) and a block
/// exponent j coprime to f; the two gcd conditions checked there suffice for
/// full Wada compatibility because every remaining adjacent difference is a
/// p-power multiple of a checked one and gcd(l, p) = 1. Without the flag it
/// is plain backtracking over cyclic orderings under the Wada condition.
///
/// `Ok(None)` means the whole space was exhausted: no compatible ordering of
/// this set exists. Running out of budget is an error, not a verdict.
pub fn find_compatible_ordering(
    set: &DifferenceSet,
    p: u64,
    f: u64,
    require_frobenius: bool,
    budget: u64,
) -> Result<Option<OrderedDifferenceSet>> {
    if require_frobenius && f > 1 {
        find_frobenius_ordering(set, p, f, budget)
    } else {
        find_wada_ordering(set, budget)
    }
}

struct Budget {
    left: u64,
    total: u64,
}

impl Budget {
    fn new(total: u64) -> Self {
        Budget { left: total, total }
    }

    fn spend(&mut self) -> Result<()> {
        if self.left == 0 {
            return Err(Error::BudgetExhausted { budget: self.total });
        }
        self.left -= 1;
        Ok(())
    }
}

fn find_wada_ordering(set: &DifferenceSet, budget: u64) -> Result<Option<OrderedDifferenceSet>> {
    let l = set.modulus();
    let elements = set.elements();
    let k = elements.len();
    let mut budget = Budget::new(budget);
    // The first slot is pinned to the minimal element: every cyclic ordering
    // has exactly one rotation of that shape.
    let mut chosen = vec![elements[0]];
    let mut used = vec![false; k];
    used[0] = true;
    if search_wada(l, elements, &mut chosen, &mut used, &mut budget)? {
        let order = chosen;
        return Ok(Some(OrderedDifferenceSet::new(set.clone(), order)?));
    }
    Ok(None)
}

fn search_wada(
    l: u64,
    elements: &[u64],
    chosen: &mut Vec<u64>,
    used: &mut [bool],
    budget: &mut Budget,
) -> Result<bool> {
    if chosen.len() == elements.len() {
        let wrap = (chosen[chosen.len() - 1] + l - chosen[0]) % l;
        return Ok(gcd(wrap, l) == 1);
    }
    let prev = chosen[chosen.len() - 1];
    for (idx, &cand) in elements.iter().enumerate() {
        if used[idx] {
            continue;
        }
        budget.spend()?;
        if gcd((prev + l - cand) % l, l) != 1 {
            continue;
        }
        used[idx] = true;
        chosen.push(cand);
        if search_wada(l, elements, chosen, used, budget)? {
            return Ok(true);
        }
        chosen.pop();
        used[idx] = false;
    }
    Ok(false)
}

fn find_frobenius_ordering(
    set: &DifferenceSet,
    p: u64,
    f: u64,
    budget: u64,
) -> Result<Option<OrderedDifferenceSet>> {
    let l = set.modulus();
    let q = set.len();
    if !q.is_multiple_of(f) {
        return Err(Error::FNotDividingQ { f, q });
    }
    let decomposition = frobenius_orbits(set, p, f)?;
    for orbit in &decomposition.orbits {
        if orbit.len() as u64 != f {
            return Err(Error::OrbitLength {
                element: orbit[0],
                len: orbit.len() as u64,
                expected: f,
            });
        }
    }
    // Representatives ascending within each orbit; orbits are already sorted
    // by their minimal element.
    let reps: Vec<Vec<u64>> = decomposition
        .orbits
        .iter()
        .map(|o| {
            let mut r = o.clone();
            r.sort_unstable();
            r
        })
        .collect();
    let k = reps.len();
    let js = units(f);
    let mut budget = Budget::new(budget);

    // Slot 0 is pinned to the orbit of the global minimum: any block
    // arrangement can be rotated so that orbit leads, and rotations are the
    // same cyclic ordering.
    let mut slots: Vec<u64> = Vec::with_capacity(k);
    let mut used = vec![false; k];
    used[0] = true;
    for &first in &reps[0] {
        budget.spend()?;
        slots.push(first);
        if let Some(j) = search_frobenius(l, p, &reps, &js, &mut slots, &mut used, &mut budget)? {
            let order = materialize_blocks(l, p, f, j, &slots);
            return Ok(Some(OrderedDifferenceSet::new(set.clone(), order)?));
        }
        slots.pop();
    }
    Ok(None)
}

fn search_frobenius(
    l: u64,
    p: u64,
    reps: &[Vec<u64>],
    js: &[u64],
    slots: &mut Vec<u64>,
    used: &mut [bool],
    budget: &mut Budget,
) -> Result<Option<u64>> {
    if slots.len() == reps.len() {
        let last = slots[slots.len() - 1];
        let first = slots[0];
        for &j in js {
            let pj = modpow(p, j, l);
            if gcd((last + l - mulmod(first, pj, l)) % l, l) == 1 {
                return Ok(Some(j));
            }
        }
        return Ok(None);
    }
    let prev = slots[slots.len() - 1];
    for (orbit_idx, orbit_reps) in reps.iter().enumerate() {
        if used[orbit_idx] {
            continue;
        }
        for &cand in orbit_reps {
            budget.spend()?;
            if gcd((prev + l - cand) % l, l) != 1 {
                continue;
            }
            used[orbit_idx] = true;
            slots.push(cand);
            if let Some(j) = search_frobenius(l, p, reps, js, slots, used, budget)? {
                return Ok(Some(j));
            }
            slots.pop();
            used[orbit_idx] = false;
        }
    }
    Ok(None)
}

fn materialize_blocks(l: u64, p: u64, f: u64, j: u64, first_block: &[u64]) -> Vec<u64> {
    let mut order = Vec::with_capacity(first_block.len() * f as usize);
    for h in 0..f {
        let scale = modpow(p, h * j, l);
        for &x in first_block {
            order.push(mulmod(x, scale, l));
        }
    }
    order
}
