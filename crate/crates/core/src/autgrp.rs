//! Certification of candidate dessin automorphisms induced by index maps,
//! orbit bookkeeping for the cyclic group generated by the Frobenius
//! multiplier, and the arithmetic feasibility conditions for that group and
//! its subgroups.

use serde::{Deserialize, Serialize};

use crate::dessin::{Color, Dart, Dessin};
use crate::diffset;
use crate::error::{Error, Result};
use crate::singer::SpaceParams;
use crate::util::{divisors, gcd, is_prime, modpow, mulmod};

/// A candidate symmetry, acting on white and black vertex indices alike.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum VertexMap {
    /// x -> t*x + s mod l.
    Affine { t: u64, s: u64 },
    /// An explicit bijection of 0..l.
    Explicit { perm: Vec<u64> },
}

impl VertexMap {
    pub fn affine(t: u64, s: u64) -> Self {
        VertexMap::Affine { t, s }
    }

    pub fn identity() -> Self {
        VertexMap::Affine { t: 1, s: 0 }
    }

    pub fn apply(&self, x: u64, l: u64) -> u64 {
        match self {
            VertexMap::Affine { t, s } => (mulmod(*t % l, x % l, l) + s % l) % l,
            VertexMap::Explicit { perm } => perm[(x % l) as usize],
        }
    }

    /// The full value table on 0..l, validated as a bijection.
    fn table(&self, l: u64) -> Result<Vec<u64>> {
        match self {
            VertexMap::Affine { t, s: _ } => {
                if gcd(t % l, l) != 1 {
                    return Err(Error::NotAUnit { t: *t, modulus: l });
                }
                Ok((0..l).map(|x| self.apply(x, l)).collect())
            }
            VertexMap::Explicit { perm } => {
                if perm.len() as u64 != l {
                    return Err(Error::NotABijection);
                }
                let mut seen = vec![false; l as usize];
                for &y in perm {
                    if y >= l || seen[y as usize] {
                        return Err(Error::NotABijection);
                    }
                    seen[y as usize] = true;
                }
                Ok(perm.clone())
            }
        }
    }
}

/// A dart named by its coordinates, for readable counterexamples.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DartRef {
    pub color: Color,
    pub vertex: u64,
    pub position: u64,
}

/// Verdict for one candidate map.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AutReport {
    pub map: VertexMap,
    #[serde(rename = "valid")]
    pub is_automorphism: bool,
    /// A dart whose image breaks incidence or rotation, when invalid.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub counterexample: Option<DartRef>,
    /// Vertex indices fixed by the map (same set for both colors).
    pub fixed_vertices: Vec<u64>,
    pub fixed_edges: u64,
    /// Orbit lengths of the induced cell permutation, in discovery order
    /// from the lowest-numbered cell; empty when invalid.
    #[serde(rename = "cell_orbits")]
    pub cell_orbit_lengths: Vec<u64>,
}

/// Verifies that the index map sends edges to edges and commutes with the
/// rotation successor on every dart. A negative verdict is a value, not an
/// error; errors mean the map itself is malformed for this dessin.
pub fn check_automorphism(dessin: &Dessin, map: &VertexMap) -> Result<AutReport> {
    let l = dessin.l();
    let q = dessin.q();
    let phi = map.table(l)?;

    let mut counterexample = None;
    'scan: for color in [Color::White, Color::Black] {
        for v in 0..l {
            let mut prev = None;
            let mut first = 0u64;
            for i in 0..q {
                let e = dessin.element_at(i);
                // Image of the edge difference at this dart.
                let target = match color {
                    Color::White => {
                        let b = (v + e) % l;
                        (phi[b as usize] + l - phi[v as usize]) % l
                    }
                    Color::Black => {
                        let w = (v + l - e) % l;
                        (phi[v as usize] + l - phi[w as usize]) % l
                    }
                };
                let Some(pi) = dessin.position_of(target) else {
                    counterexample = Some(DartRef {
                        color,
                        vertex: v,
                        position: i,
                    });
                    break 'scan;
                };
                if let Some(prev) = prev {
                    if pi != (prev + 1) % q {
                        counterexample = Some(DartRef {
                            color,
                            vertex: v,
                            position: i,
                        });
                        break 'scan;
                    }
                } else {
                    first = pi;
                }
                prev = Some(pi);
            }
            if (prev.unwrap() + 1) % q != first {
                counterexample = Some(DartRef {
                    color,
                    vertex: v,
                    position: q - 1,
                });
                break 'scan;
            }
        }
    }

    if let Some(counterexample) = counterexample {
        return Ok(AutReport {
            map: map.clone(),
            is_automorphism: false,
            counterexample: Some(counterexample),
            fixed_vertices: Vec::new(),
            fixed_edges: 0,
            cell_orbit_lengths: Vec::new(),
        });
    }

    let fixed_vertices: Vec<u64> = (0..l).filter(|&x| phi[x as usize] == x).collect();
    let mut fixed_edges = 0u64;
    for &w in &fixed_vertices {
        for i in 0..q {
            let b = (w + dessin.element_at(i)) % l;
            if phi[b as usize] == b {
                fixed_edges += 1;
            }
        }
    }

    let perm = cell_permutation_from_table(dessin, &phi);
    let cell_orbit_lengths = orbit_lengths(&perm);

    Ok(AutReport {
        map: map.clone(),
        is_automorphism: true,
        counterexample: None,
        fixed_vertices,
        fixed_edges,
        cell_orbit_lengths,
    })
}

/// The induced permutation of cell indices for a map already known to be an
/// automorphism.
pub fn cell_permutation(dessin: &Dessin, map: &VertexMap) -> Result<Vec<u32>> {
    let phi = map.table(dessin.l())?;
    Ok(cell_permutation_from_table(dessin, &phi))
}

fn cell_permutation_from_table(dessin: &Dessin, phi: &[u64]) -> Vec<u32> {
    dessin
        .cells()
        .iter()
        .map(|cell| {
            let image = dart_image(dessin, phi, cell.start);
            dessin.cell_of_dart(image) as u32
        })
        .collect()
}

fn dart_image(dessin: &Dessin, phi: &[u64], d: Dart) -> Dart {
    let l = dessin.l();
    let v = dessin.dart_vertex(d);
    let i = dessin.dart_position(d);
    let e = dessin.element_at(i);
    match dessin.dart_color(d) {
        Color::White => {
            let w2 = phi[v as usize];
            let b2 = phi[((v + e) % l) as usize];
            let pos = dessin
                .position_of((b2 + l - w2) % l)
                .expect("image edge exists for a verified automorphism");
            dessin.white_dart(w2, pos)
        }
        Color::Black => {
            let b2 = phi[v as usize];
            let w2 = phi[((v + l - e) % l) as usize];
            let pos = dessin
                .position_of((b2 + l - w2) % l)
                .expect("image edge exists for a verified automorphism");
            dessin.black_dart(b2, pos)
        }
    }
}

fn orbit_lengths(perm: &[u32]) -> Vec<u64> {
    let mut seen = vec![false; perm.len()];
    let mut lengths = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0u64;
        let mut cur = start;
        while !seen[cur] {
            seen[cur] = true;
            len += 1;
            cur = perm[cur] as usize;
        }
        lengths.push(len);
    }
    lengths
}

/// Per-power verdicts for the cyclic group generated by x -> p*x.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerReport {
    pub u: u32,
    pub multiplier: u64,
    pub fixed_vertices: Vec<u64>,
    pub fixed_edges: u64,
    pub cell_orbit_lengths: Vec<u64>,
}

/// Summary of the action of the full cyclic multiplier group on a dessin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FrobeniusGroupReport {
    pub multiplier: u64,
    pub order: u32,
    /// q/f when the group order divides the vertex valency.
    pub block_count: Option<u64>,
    /// m with cells mapped c -> c + m*k around vertex 0, when the dessin is
    /// of Wada type and the fit succeeds.
    pub cell_rotation_m: Option<u64>,
    pub powers: Vec<PowerReport>,
}

/// Certifies every nonidentity power of x -> p*x as an automorphism and
/// reports fixed elements and cell orbits. The fixed-vertex sets are
/// cross-checked against the congruence (p^u - 1)w = 0 as a bug guard.
pub fn frobenius_group_report(dessin: &Dessin, p: u64, f: u32) -> Result<FrobeniusGroupReport> {
    let l = dessin.l();
    let q = dessin.q();
    let sigma = VertexMap::affine(p % l, 0);
    let base = check_automorphism(dessin, &sigma)?;
    if !base.is_automorphism {
        return Err(Error::NotAnAutomorphism {
            multiplier: p % l,
            modulus: l,
        });
    }

    let block_count = if f > 0 && q.is_multiple_of(f as u64) {
        Some(q / f as u64)
    } else {
        None
    };
    let mut powers = Vec::new();
    for u in 1..f.max(1) {
        let t = modpow(p, u as u64, l);
        let report = check_automorphism(dessin, &VertexMap::affine(t, 0))?;
        if !report.is_automorphism {
            return Err(Error::Internal(format!(
                "power {u} of a certified automorphism failed its own check"
            )));
        }
        let expected = diffset::fixed_vertices(l, t);
        if report.fixed_vertices != expected {
            return Err(Error::Internal(format!(
                "fixed vertices of power {u} disagree with the congruence solution"
            )));
        }
        powers.push(PowerReport {
            u,
            multiplier: t,
            fixed_vertices: report.fixed_vertices,
            fixed_edges: report.fixed_edges,
            cell_orbit_lengths: report.cell_orbit_lengths,
        });
    }

    let cell_rotation_m = fit_cell_rotation(dessin, &sigma, block_count)?;

    Ok(FrobeniusGroupReport {
        multiplier: p % l,
        order: f,
        block_count,
        cell_rotation_m,
        powers,
    })
}

/// Recovers m from the observed cell permutation against the model
/// c -> c + m*k mod q, with cells numbered by their boundary position at
/// white vertex 0. Only Wada dessins carry that numbering; a failed fit is
/// None, not an error.
fn fit_cell_rotation(
    dessin: &Dessin,
    sigma: &VertexMap,
    block_count: Option<u64>,
) -> Result<Option<u64>> {
    let q = dessin.q();
    let Some(k) = block_count else {
        return Ok(None);
    };
    if dessin.cells().len() as u64 != q {
        return Ok(None);
    }
    // cell index <-> position of its unique boundary dart at vertex 0
    let mut pos_key = vec![u64::MAX; q as usize];
    let mut cell_at = vec![u32::MAX; q as usize];
    for i in 0..q {
        let c = dessin.cell_of_dart(dessin.white_dart(0, i));
        if cell_at[i as usize] != u32::MAX {
            return Ok(None);
        }
        cell_at[i as usize] = c as u32;
        if pos_key[c] != u64::MAX {
            return Ok(None); // vertex 0 met twice on one boundary
        }
        pos_key[c] = i;
    }
    let perm = cell_permutation(dessin, sigma)?;
    let delta = (pos_key[perm[cell_at[0] as usize] as usize] + q) % q;
    for i in 0..q {
        let image = pos_key[perm[cell_at[i as usize] as usize] as usize];
        if image != (i + delta) % q {
            return Ok(None);
        }
    }
    if delta.is_multiple_of(k) {
        Ok(Some(delta / k))
    } else {
        Ok(None)
    }
}

/// The five predicates that make a space a "prime order, free action" case:
/// the group order f is prime, p differs from m+1 and is not 1 mod m+1, f
/// divides q, and gcd(p-1, l) = 1. The last two follow from the first three
/// but are evaluated independently.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrimeCaseVerdict {
    pub f_prime: bool,
    pub p_differs_from_m_plus_1: bool,
    pub p_not_one_mod_m_plus_1: bool,
    pub f_divides_q: bool,
    pub shift_free: bool,
    pub nice_case: bool,
}

pub fn check_prime_case_conditions(params: &SpaceParams) -> PrimeCaseVerdict {
    let m1 = (params.m + 1) as u64;
    let f_prime = is_prime(params.f as u64);
    let p_differs_from_m_plus_1 = params.p != m1;
    let p_not_one_mod_m_plus_1 = params.p % m1 != 1;
    let f_divides_q = params.q.is_multiple_of(params.f as u64);
    let shift_free = gcd(params.p - 1, params.l) == 1;
    let nice_case =
        f_prime && p_differs_from_m_plus_1 && p_not_one_mod_m_plus_1 && f_divides_q && shift_free;
    PrimeCaseVerdict {
        f_prime,
        p_differs_from_m_plus_1,
        p_not_one_mod_m_plus_1,
        f_divides_q,
        shift_free,
        nice_case,
    }
}

/// Feasibility of each subgroup of the multiplier group: the subgroup of
/// order g is generated by the s-th power of the base map, s = f/g, and acts
/// by t = p^s mod l. It can act freely with equal orbits iff g divides q and
/// gcd(t - 1, l) = 1; the trivial subgroup always qualifies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupVerdict {
    pub g: u64,
    pub s: u64,
    pub t: u64,
    pub divides_q: bool,
    pub multiplier_free: bool,
    pub orbit_count: Option<u64>,
}

pub fn subgroup_feasibility(params: &SpaceParams) -> Vec<SubgroupVerdict> {
    let f = params.f as u64;
    let l = params.l;
    divisors(f)
        .into_iter()
        .map(|g| {
            let s = f / g;
            let t = modpow(params.p, s, l);
            if g == 1 {
                // Trivial subgroup: every orbit has length one.
                return SubgroupVerdict {
                    g,
                    s,
                    t,
                    divides_q: true,
                    multiplier_free: true,
                    orbit_count: Some(params.q),
                };
            }
            let divides_q = params.q.is_multiple_of(g);
            let multiplier_free = gcd((t + l - 1) % l, l) == 1;
            let orbit_count = (divides_q && multiplier_free).then_some(params.q / g);
            SubgroupVerdict {
                g,
                s,
                t,
                divides_q,
                multiplier_free,
                orbit_count,
            }
        })
        .collect()
}
