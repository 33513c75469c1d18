//! Parameters of the cyclic projective space P^m(F_n) and the Singer
//! difference set read off the trace-zero hyperplane.

use serde::{Deserialize, Serialize};

use crate::diffset::DifferenceSet;
use crate::error::{Error, Result};
use crate::gf::{self, FieldCtx};
use crate::util::{gcd, is_prime};

/// Parameters of one projective space P^m(F_n), n = p^e:
/// l points and hyperplanes, q points per hyperplane, difference-set
/// multiplicity lambda, and the order f = e*(m+1) of the cyclic group
/// generated by the Frobenius map.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpaceParams {
    pub m: u32,
    pub p: u64,
    pub e: u32,
    pub n: u64,
    pub l: u64,
    pub q: u64,
    pub lambda: u64,
    pub f: u32,
}

impl SpaceParams {
    /// Degree of the field extension housing the space: e*(m+1).
    pub fn field_degree(&self) -> u32 {
        self.f
    }
}

/// Derives all parameters of P^m(F_n); m >= 2 so hyperplanes are proper
/// nontrivial subspaces.
pub fn space_params(m: u32, p: u64, e: u32) -> Result<SpaceParams> {
    if m < 2 {
        return Err(Error::DimensionTooSmall(m));
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if e < 1 {
        return Err(Error::InvalidDegree);
    }
    let n128 = (p as u128)
        .checked_pow(e)
        .ok_or(Error::Overflow("n = p^e"))?;
    let n: u64 = n128.try_into().map_err(|_| Error::Overflow("n = p^e"))?;
    let top = n128.checked_pow(m + 1).ok_or(Error::Overflow("n^(m+1)"))?;
    let l128 = (top - 1) / (n128 - 1);
    let q128 = (n128.pow(m) - 1) / (n128 - 1);
    let l: u64 = l128.try_into().map_err(|_| Error::Overflow("l"))?;
    let q: u64 = q128.try_into().map_err(|_| Error::Overflow("q"))?;
    let lambda128 = q128 * (q128 - 1) / (l128 - 1);
    debug_assert_eq!(q128 * (q128 - 1) % (l128 - 1), 0, "counting identity");
    let lambda: u64 = lambda128
        .try_into()
        .map_err(|_| Error::Overflow("lambda"))?;
    let f = e.checked_mul(m + 1).ok_or(Error::Overflow("f = e*(m+1)"))?;
    debug_assert_eq!(gcd(l, p), 1);
    Ok(SpaceParams {
        m,
        p,
        e,
        n,
        l,
        q,
        lambda,
        f,
    })
}

/// Builds GF(n^(m+1)) for the space with the default size ceiling.
pub fn build_space_field(params: &SpaceParams) -> Result<FieldCtx> {
    gf::build_field(params.p, params.field_degree())
}

/// Generates the Singer difference set of the space: the residues b mod l
/// with Tr(g^b) = 0, where the trace goes down to GF(n). The result is a
/// verified (l, q, lambda) difference set and is fixed under multiplication
/// by p mod l.
pub fn generate_singer_set(params: &SpaceParams) -> Result<DifferenceSet> {
    let ctx = build_space_field(params)?;
    generate_singer_set_in(params, &ctx)
}

/// As [`generate_singer_set`], reusing an already-built field context.
pub fn generate_singer_set_in(params: &SpaceParams, ctx: &FieldCtx) -> Result<DifferenceSet> {
    if ctx.p() != params.p || ctx.degree() != params.field_degree() {
        return Err(Error::Internal(format!(
            "field GF({}^{}) does not house P^{}(F_{})",
            ctx.p(),
            ctx.degree(),
            params.m,
            params.n
        )));
    }
    let zero = ctx.zero();
    // The trace is F_n-linear, so membership only depends on b mod l; the
    // coset consistency of the full exponent range is covered by tests.
    let mut elements = Vec::with_capacity(params.q as usize);
    for b in 0..params.l {
        if ctx.trace_to_subfield(ctx.power_of_g(b), params.e)? == zero {
            elements.push(b);
        }
    }
    if elements.len() as u64 != params.q {
        return Err(Error::Internal(format!(
            "trace-zero hyperplane has {} points, expected q = {}",
            elements.len(),
            params.q
        )));
    }
    let set = DifferenceSet::new(elements, params.l)?;
    if set.lambda() != params.lambda {
        return Err(Error::Internal(format!(
            "Singer set has lambda {} but the space demands {}",
            set.lambda(),
            params.lambda
        )));
    }
    if let Some(element) = set.multiplier_escape(params.p) {
        return Err(Error::Internal(format!(
            "Singer set is not fixed by the multiplier {}: element {element} escapes",
            params.p
        )));
    }
    Ok(set)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffset;
    use crate::fixtures;

    #[test]
    fn published_parameter_rows() {
        let s = space_params(4, 2, 1).unwrap();
        assert_eq!((s.l, s.q, s.f, s.lambda), (31, 15, 5, 7));
        let s = space_params(3, 3, 1).unwrap();
        assert_eq!((s.l, s.q, s.f, s.lambda), (40, 13, 4, 4));
        let s = space_params(2, 5, 1).unwrap();
        assert_eq!((s.l, s.q, s.f), (31, 6, 3));
    }

    #[test]
    fn rejects_degenerate_dimensions() {
        assert_eq!(space_params(1, 2, 1), Err(Error::DimensionTooSmall(1)));
        assert_eq!(space_params(2, 4, 1), Err(Error::NotPrime(4)));
        assert_eq!(space_params(2, 2, 0), Err(Error::InvalidDegree));
    }

    #[test]
    fn overflow_is_reported() {
        assert!(matches!(space_params(200, 2, 9), Err(Error::Overflow(_))));
    }

    #[test]
    fn fano_set_is_the_classical_one() {
        // Brute-force oracle: enumerate every 3-subset of Z/7Z and keep the
        // (7, 3, 1) difference sets.
        let mut valid = Vec::new();
        for a in 0..7u64 {
            for b in a + 1..7 {
                for c in b + 1..7 {
                    if diffset::verify_difference_set(&[a, b, c], 7) == Ok(1) {
                        valid.push(vec![a, b, c]);
                    }
                }
            }
        }
        assert!(!valid.is_empty());

        let params = space_params(2, 2, 1).unwrap();
        let singer = generate_singer_set(&params).unwrap();
        assert!(valid.contains(&singer.elements().to_vec()));

        let fano = DifferenceSet::new([1u64, 2, 4], 7).unwrap();
        assert!(diffset::equivalent(&singer, &fano).is_some());
    }

    #[test]
    fn singer_set_p4_f2_is_equivalent_to_the_published_set() {
        let params = space_params(4, 2, 1).unwrap();
        let singer = generate_singer_set(&params).unwrap();
        assert_eq!(singer.len(), 15);
        assert!(singer.is_fixed_by_multiplier(2));

        let published = DifferenceSet::new(fixtures::d5_mod_31(), 31).unwrap();
        let (t, s) = diffset::equivalent(&singer, &published).expect("equivalent");
        assert_eq!(diffset::transform(&singer, t, s).unwrap(), published);
    }

    #[test]
    fn singer_set_p3_f3_is_equivalent_to_the_published_set() {
        let params = space_params(3, 3, 1).unwrap();
        let singer = generate_singer_set(&params).unwrap();
        assert_eq!(singer.len(), 13);
        assert!(singer.is_fixed_by_multiplier(3));

        let published = DifferenceSet::new(fixtures::d4_mod_40(), 40).unwrap();
        assert!(diffset::equivalent(&singer, &published).is_some());
    }

    #[test]
    fn trace_membership_is_constant_on_cosets() {
        // The generator's full exponent range collapses mod l: b and b + l
        // land on the same side of the hyperplane.
        for (m, p, e) in [(2u32, 2u64, 1u32), (3, 3, 1), (2, 5, 1), (4, 2, 1)] {
            let params = space_params(m, p, e).unwrap();
            let ctx = build_space_field(&params).unwrap();
            let zero = ctx.zero();
            let member: Vec<bool> = (0..ctx.order() - 1)
                .map(|b| ctx.trace_to_subfield(ctx.power_of_g(b), e).unwrap() == zero)
                .collect();
            for (b, &m0) in member.iter().enumerate() {
                assert_eq!(m0, member[(b as u64 % params.l) as usize]);
            }
        }
    }

    #[test]
    fn incidence_structure_is_q_regular() {
        // Every vertex of the bipartite incidence graph has degree exactly q.
        for (m, p, e) in [(2u32, 2u64, 1u32), (3, 3, 1), (2, 3, 1)] {
            let params = space_params(m, p, e).unwrap();
            let set = generate_singer_set(&params).unwrap();
            let l = params.l;
            let mut white_deg = vec![0u64; l as usize];
            let mut black_deg = vec![0u64; l as usize];
            for w in 0..l {
                for &d in set.elements() {
                    white_deg[w as usize] += 1;
                    black_deg[((w + d) % l) as usize] += 1;
                }
            }
            assert!(white_deg.iter().all(|&deg| deg == params.q));
            assert!(black_deg.iter().all(|&deg| deg == params.q));
        }
    }

    #[test]
    fn singer_sizes_match_q_across_small_spaces() {
        for (m, p, e) in [
            (2u32, 2u64, 1u32),
            (2, 3, 1),
            (2, 5, 1),
            (2, 7, 1),
            (3, 2, 1),
            (3, 3, 1),
            (4, 2, 1),
            (4, 3, 1),
            (2, 2, 2),
            (2, 3, 2),
            (6, 2, 1),
        ] {
            let params = space_params(m, p, e).unwrap();
            let set = generate_singer_set(&params).unwrap();
            assert_eq!(set.len(), params.q, "m={m} p={p} e={e}");
            assert!(set.is_fixed_by_multiplier(params.p));
        }
    }
}
