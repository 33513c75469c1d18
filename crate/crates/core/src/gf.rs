//! Exact arithmetic in GF(p^d) with a pinned primitive element and a full
//! discrete-log table.
//!
//! The context is built once per field: the modulus is the lexicographically
//! smallest monic irreducible of degree d whose residue class of x generates
//! the multiplicative group, so element numberings are reproducible across
//! runs. Logs are filled in one pass of repeated multiplication by the
//! generator, which doubles as a definitive order check.

use crate::error::{Error, Result};
use crate::util::{is_prime, prime_factors};

/// Elements are encoded as base-p digit vectors packed into a u64, so the
/// degree can never exceed the bits of the smallest prime.
const MAX_DEGREE: usize = 32;

/// Hard ceiling on table sizes; encodings and logs must fit in u32.
const ABSOLUTE_MAX_ELEMENTS: u64 = 1 << 31;

/// Default ceiling for `build_field`.
pub const DEFAULT_MAX_ELEMENTS: u64 = 1 << 26;

const LOG_ZERO: u32 = u32::MAX;

/// An element of a [`FieldCtx`], stored as the base-p encoding of its
/// coefficient vector in the power basis of the modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(u64);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);

    /// Raw base-p encoding; mostly useful for table indexing.
    pub fn encoding(self) -> u64 {
        self.0
    }
}

/// Arithmetic context for GF(p^d).
#[derive(Debug, Clone)]
pub struct FieldCtx {
    p: u64,
    d: u32,
    size: u64,
    /// Monic modulus, coefficients ascending, length d + 1.
    modulus: Vec<u64>,
    g: FieldElement,
    log_table: Vec<u32>,
    pow_table: Vec<u32>,
}

/// Builds GF(p^d) with the default size ceiling.
pub fn build_field(p: u64, d: u32) -> Result<FieldCtx> {
    build_field_with_limit(p, d, DEFAULT_MAX_ELEMENTS)
}

/// Builds GF(p^d), refusing fields with more than `max_elements` elements.
pub fn build_field_with_limit(p: u64, d: u32, max_elements: u64) -> Result<FieldCtx> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if d < 1 || d as usize >= MAX_DEGREE {
        return Err(Error::InvalidDegree);
    }
    let size128 = (p as u128).pow(d);
    let cap = max_elements.min(ABSOLUTE_MAX_ELEMENTS);
    if size128 > cap as u128 {
        return Err(Error::FieldTooLarge {
            elements: size128,
            max: cap,
        });
    }
    let size = size128 as u64;
    let group_factors = prime_factors(size - 1);

    // Lexicographic scan: enc's base-p digits, most significant first, are
    // the coefficients (c_{d-1}, ..., c_0) of x^d + c_{d-1} x^{d-1} + ... + c_0.
    let mut fallback: Option<Vec<u64>> = None;
    for enc in 0..size {
        let mut modulus = decode(p, d, enc);
        modulus.push(1);
        if !is_irreducible(p, &modulus) {
            continue;
        }
        if fallback.is_none() {
            fallback = Some(modulus.clone());
        }
        let raw = RawField {
            p,
            d,
            modulus: &modulus,
        };
        let x_enc = if d == 1 { (p - modulus[0] % p) % p } else { p };
        if raw.is_primitive(x_enc, size, &group_factors) {
            return finish_build(p, d, size, modulus, x_enc);
        }
    }

    // A primitive polynomial of degree d always exists, so this fallback is
    // only reachable through arithmetic bugs; keep it anyway as specified:
    // pin the smallest irreducible modulus and scan elements for a generator.
    let modulus = fallback
        .ok_or_else(|| Error::Internal(format!("no irreducible of degree {d} over GF({p})")))?;
    let raw = RawField {
        p,
        d,
        modulus: &modulus,
    };
    for enc in 2..size {
        if raw.is_primitive(enc, size, &group_factors) {
            return finish_build(p, d, size, modulus, enc);
        }
    }
    Err(Error::Internal(format!(
        "GF({p}^{d}) has no primitive element"
    )))
}

fn finish_build(p: u64, d: u32, size: u64, modulus: Vec<u64>, g_enc: u64) -> Result<FieldCtx> {
    let raw = RawField {
        p,
        d,
        modulus: &modulus,
    };
    let mut log_table = vec![LOG_ZERO; size as usize];
    let mut pow_table = vec![0u32; (size - 1) as usize];
    let by_x = d > 1 && g_enc == p;
    let mut cur = 1u64;
    for k in 0..size - 1 {
        if log_table[cur as usize] != LOG_ZERO {
            return Err(Error::Internal(format!(
                "generator order check failed: repeat at exponent {k}"
            )));
        }
        log_table[cur as usize] = k as u32;
        pow_table[k as usize] = cur as u32;
        cur = if by_x {
            raw.mul_by_x(cur)
        } else {
            raw.mul(cur, g_enc)
        };
    }
    if cur != 1 {
        return Err(Error::Internal("generator does not close the cycle".into()));
    }
    Ok(FieldCtx {
        p,
        d,
        size,
        modulus,
        g: FieldElement(g_enc),
        log_table,
        pow_table,
    })
}

impl FieldCtx {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    /// Number of elements, p^d.
    pub fn order(&self) -> u64 {
        self.size
    }

    /// Monic modulus polynomial, coefficients ascending.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn generator(&self) -> FieldElement {
        self.g
    }

    pub fn zero(&self) -> FieldElement {
        FieldElement(0)
    }

    pub fn one(&self) -> FieldElement {
        FieldElement(1)
    }

    fn raw(&self) -> RawField<'_> {
        RawField {
            p: self.p,
            d: self.d,
            modulus: &self.modulus,
        }
    }

    /// Element from power-basis coefficients (low degree first); entries are
    /// reduced mod p, missing high coefficients are zero.
    pub fn element_from_coeffs(&self, coeffs: &[u64]) -> FieldElement {
        let mut enc = 0u64;
        for &c in coeffs.iter().take(self.d as usize).rev() {
            enc = enc * self.p + c % self.p;
        }
        FieldElement(enc)
    }

    /// Power-basis coefficients of `a`, low degree first, length d.
    pub fn coeffs(&self, a: FieldElement) -> Vec<u64> {
        let mut out = Vec::with_capacity(self.d as usize);
        let mut enc = a.0;
        for _ in 0..self.d {
            out.push(enc % self.p);
            enc /= self.p;
        }
        out
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        let (mut ea, mut eb) = (a.0, b.0);
        let mut enc = 0u64;
        let mut place = 1u64;
        for _ in 0..self.d {
            let s = (ea % self.p + eb % self.p) % self.p;
            enc += s * place;
            place *= self.p;
            ea /= self.p;
            eb /= self.p;
        }
        FieldElement(enc)
    }

    pub fn neg(&self, a: FieldElement) -> FieldElement {
        let mut ea = a.0;
        let mut enc = 0u64;
        let mut place = 1u64;
        for _ in 0..self.d {
            enc += (self.p - ea % self.p) % self.p * place;
            place *= self.p;
            ea /= self.p;
        }
        FieldElement(enc)
    }

    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        FieldElement(self.raw().mul(a.0, b.0))
    }

    /// Square-and-multiply exponentiation; `pow(0, 0) = 1` by convention.
    pub fn pow(&self, a: FieldElement, k: u64) -> FieldElement {
        FieldElement(self.raw().pow(a.0, k))
    }

    /// The Frobenius power a -> a^(p^u); u is taken mod d since the map has
    /// order d.
    pub fn frobenius(&self, a: FieldElement, u: u32) -> FieldElement {
        let u = u % self.d;
        let exp = self.p.pow(u);
        self.pow(a, exp)
    }

    /// Trace from GF(p^d) onto the subfield GF(p^e): the sum of a^(p^(e*i))
    /// for i in 0..d/e. Errors unless e divides d.
    pub fn trace_to_subfield(&self, a: FieldElement, e: u32) -> Result<FieldElement> {
        if e == 0 || !self.d.is_multiple_of(e) {
            return Err(Error::NotASubfield { e, d: self.d });
        }
        let mut acc = a;
        let mut term = a;
        for _ in 1..self.d / e {
            term = self.frobenius(term, e);
            acc = self.add(acc, term);
        }
        let n = self.p.pow(e);
        if self.pow(acc, n) != acc {
            return Err(Error::Internal("trace left the subfield".into()));
        }
        Ok(acc)
    }

    /// Discrete log of `a` base the generator; None for zero.
    pub fn log(&self, a: FieldElement) -> Option<u64> {
        match self.log_table[a.0 as usize] {
            LOG_ZERO => None,
            k => Some(k as u64),
        }
    }

    /// g^k via the antilog table.
    pub fn power_of_g(&self, k: u64) -> FieldElement {
        FieldElement(self.pow_table[(k % (self.size - 1)) as usize] as u64)
    }

    /// Multiplicative order of `a`; None for zero.
    pub fn multiplicative_order(&self, a: FieldElement) -> Option<u64> {
        let k = self.log(a)?;
        Some((self.size - 1) / crate::util::gcd(k, self.size - 1))
    }

    /// The modulus rendered as a polynomial in x.
    pub fn modulus_string(&self) -> String {
        poly_string(&self.modulus)
    }
}

/// Stateless polynomial arithmetic mod (p, modulus); used both during
/// construction (before any table exists) and by the public ops.
struct RawField<'a> {
    p: u64,
    d: u32,
    modulus: &'a [u64],
}

impl RawField<'_> {
    fn mul(&self, a: u64, b: u64) -> u64 {
        let p = self.p;
        let d = self.d as usize;
        let mut prod = [0u64; 2 * MAX_DEGREE];
        let av = decode_buf(p, d, a);
        let bv = decode_buf(p, d, b);
        for (i, &ai) in av[..d].iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bv[..d].iter().enumerate() {
                if bj != 0 {
                    prod[i + j] = (prod[i + j] + ai * bj) % p;
                }
            }
        }
        // x^d = -(modulus - x^d), folded down from the top.
        for i in (d..2 * d - 1).rev() {
            let c = prod[i];
            if c == 0 {
                continue;
            }
            prod[i] = 0;
            for j in 0..d {
                let m = self.modulus[j];
                if m != 0 {
                    prod[i - d + j] = (prod[i - d + j] + c * (p - m)) % p;
                }
            }
        }
        encode_buf(p, d, &prod)
    }

    fn mul_by_x(&self, a: u64) -> u64 {
        let p = self.p;
        let d = self.d as usize;
        let av = decode_buf(p, d, a);
        let mut out = [0u64; 2 * MAX_DEGREE];
        out[1..=d].copy_from_slice(&av[..d]);
        let c = out[d];
        if c != 0 {
            out[d] = 0;
            for (slot, &m) in out.iter_mut().zip(&self.modulus[..d]) {
                if m != 0 {
                    *slot = (*slot + c * (p - m)) % p;
                }
            }
        }
        encode_buf(p, d, &out)
    }

    fn pow(&self, a: u64, mut k: u64) -> u64 {
        let mut base = a;
        let mut acc = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            k >>= 1;
        }
        acc
    }

    /// True iff `a` generates the full multiplicative group: a^(n-1) = 1 and
    /// a^((n-1)/r) != 1 for every prime r dividing n - 1.
    fn is_primitive(&self, a: u64, size: u64, group_factors: &[u64]) -> bool {
        if a == 0 || self.pow(a, size - 1) != 1 {
            return false;
        }
        group_factors
            .iter()
            .all(|&r| self.pow(a, (size - 1) / r) != 1)
    }
}

fn decode(p: u64, d: u32, enc: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity(d as usize);
    let mut e = enc;
    for _ in 0..d {
        out.push(e % p);
        e /= p;
    }
    out
}

fn decode_buf(p: u64, d: usize, enc: u64) -> [u64; MAX_DEGREE] {
    let mut out = [0u64; MAX_DEGREE];
    let mut e = enc;
    for slot in out.iter_mut().take(d) {
        *slot = e % p;
        e /= p;
    }
    out
}

fn encode_buf(p: u64, d: usize, coeffs: &[u64]) -> u64 {
    let mut enc = 0u64;
    for &c in coeffs[..d].iter().rev() {
        enc = enc * p + c;
    }
    enc
}

/// Brute-force irreducibility: trial division by every monic polynomial of
/// degree 1..=deg/2.
fn is_irreducible(p: u64, poly: &[u64]) -> bool {
    let deg = poly.len() - 1;
    if deg == 1 {
        return true;
    }
    for k in 1..=deg / 2 {
        let count = (p as u128).pow(k as u32) as u64;
        for enc in 0..count {
            let mut divisor = decode(p, k as u32, enc);
            divisor.push(1);
            if poly_rem_is_zero(p, poly, &divisor) {
                return false;
            }
        }
    }
    true
}

fn poly_rem_is_zero(p: u64, dividend: &[u64], divisor: &[u64]) -> bool {
    let mut rem: Vec<u64> = dividend.to_vec();
    let dk = divisor.len() - 1;
    while rem.len() > dk {
        let lead = *rem.last().unwrap();
        let top = rem.len() - 1;
        if lead != 0 {
            // divisor is monic, so the quotient digit is just `lead`.
            for (j, &div) in divisor.iter().enumerate() {
                let idx = top - dk + j;
                rem[idx] = (rem[idx] + lead * (p - div % p)) % p;
            }
        }
        rem.pop();
    }
    rem.iter().all(|&c| c == 0)
}

fn poly_string(coeffs: &[u64]) -> String {
    let mut parts: Vec<String> = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Order of `a` by brute repeated multiplication, the oracle the table
    /// construction is checked against.
    fn order_by_iteration(ctx: &FieldCtx, a: FieldElement) -> u64 {
        let mut cur = a;
        let mut n = 1u64;
        while cur != ctx.one() {
            cur = ctx.mul(cur, a);
            n += 1;
            assert!(n <= ctx.order(), "iteration escaped the group");
        }
        n
    }

    #[test]
    fn prime_field_gf2() {
        let ctx = build_field(2, 1).unwrap();
        assert_eq!(ctx.order(), 2);
        assert_eq!(ctx.generator(), ctx.one());
        assert_eq!(ctx.log(ctx.one()), Some(0));
        assert_eq!(ctx.log(ctx.zero()), None);
    }

    #[test]
    fn gf32_generator_order() {
        let ctx = build_field(2, 5).unwrap();
        assert_eq!(ctx.order(), 32);
        // x^5 + x^2 + 1 is the first monic irreducible in lexicographic
        // order with x primitive.
        assert_eq!(ctx.modulus(), &[1, 0, 1, 0, 0, 1]);
        assert_eq!(order_by_iteration(&ctx, ctx.generator()), 31);
    }

    #[test]
    fn gf81_generator_order() {
        let ctx = build_field(3, 4).unwrap();
        assert_eq!(ctx.order(), 81);
        assert_eq!(ctx.modulus(), &[2, 1, 0, 0, 1]);
        assert_eq!(order_by_iteration(&ctx, ctx.generator()), 80);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(build_field(6, 2).unwrap_err(), Error::NotPrime(6));
        assert_eq!(build_field(2, 0).unwrap_err(), Error::InvalidDegree);
        assert!(matches!(
            build_field_with_limit(2, 20, 1 << 10),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn identities() {
        let ctx = build_field(5, 3).unwrap();
        let g = ctx.generator();
        let a = ctx.pow(g, 17);
        assert_eq!(ctx.mul(a, ctx.one()), a);
        assert_eq!(ctx.add(a, ctx.zero()), a);
        assert_eq!(ctx.add(a, ctx.neg(a)), ctx.zero());
        assert_eq!(ctx.pow(g, ctx.order() - 1), ctx.one());
    }

    #[test]
    fn lagrange_by_repeated_multiplication() {
        for (p, d) in [(2, 5), (3, 4), (7, 2)] {
            let ctx = build_field(p, d).unwrap();
            let g = ctx.generator();
            let mut cur = ctx.one();
            for _ in 0..ctx.order() - 1 {
                cur = ctx.mul(cur, g);
            }
            assert_eq!(cur, ctx.one());
        }
    }

    #[test]
    fn log_table_is_bijective() {
        for (p, d) in [(2, 5), (3, 4), (5, 3), (2, 8)] {
            let ctx = build_field(p, d).unwrap();
            let mut seen = vec![false; (ctx.order() - 1) as usize];
            for enc in 1..ctx.order() {
                let a = FieldElement(enc);
                let k = ctx.log(a).expect("nonzero element has a log");
                assert!(!seen[k as usize]);
                seen[k as usize] = true;
                assert_eq!(ctx.power_of_g(k), a, "g^log(a) = a");
            }
            assert!(seen.into_iter().all(|b| b));
        }
    }

    #[test]
    fn field_axioms_random_samples() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x5eed);
        for (p, d) in [(2u64, 5u32), (3, 4), (7, 3)] {
            let ctx = build_field(p, d).unwrap();
            for _ in 0..1200 {
                let a = FieldElement(rng.gen_range(0..ctx.order()));
                let b = FieldElement(rng.gen_range(0..ctx.order()));
                let c = FieldElement(rng.gen_range(0..ctx.order()));
                assert_eq!(ctx.mul(a, b), ctx.mul(b, a));
                assert_eq!(ctx.add(a, b), ctx.add(b, a));
                assert_eq!(ctx.mul(ctx.mul(a, b), c), ctx.mul(a, ctx.mul(b, c)));
                assert_eq!(ctx.add(ctx.add(a, b), c), ctx.add(a, ctx.add(b, c)));
                assert_eq!(
                    ctx.mul(a, ctx.add(b, c)),
                    ctx.add(ctx.mul(a, b), ctx.mul(a, c))
                );
            }
        }
    }

    #[test]
    fn frobenius_is_an_automorphism() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for (p, d) in [(2u64, 5u32), (3, 4)] {
            let ctx = build_field(p, d).unwrap();
            for _ in 0..1000 {
                let a = FieldElement(rng.gen_range(0..ctx.order()));
                let b = FieldElement(rng.gen_range(0..ctx.order()));
                let u = rng.gen_range(0..d);
                assert_eq!(ctx.frobenius(a, 0), a);
                let fa = ctx.frobenius(a, u);
                let fb = ctx.frobenius(b, u);
                assert_eq!(ctx.frobenius(ctx.add(a, b), u), ctx.add(fa, fb));
                assert_eq!(ctx.frobenius(ctx.mul(a, b), u), ctx.mul(fa, fb));
                assert_eq!(ctx.frobenius(ctx.frobenius(a, 1), d - 1), a);
            }
        }
    }

    #[test]
    fn frobenius_doubles_logs_in_gf32() {
        let ctx = build_field(2, 5).unwrap();
        let g = ctx.generator();
        assert_eq!(ctx.frobenius(g, 1), ctx.mul(g, g));
        for b in 0..31 {
            let a = ctx.power_of_g(b);
            assert_eq!(ctx.log(ctx.frobenius(a, 1)), Some(2 * b % 31));
        }
    }

    #[test]
    fn trace_counts_match_hyperplane_sizes() {
        // GF(2^5) -> GF(2): 15 of the 31 nonzero elements are trace zero.
        let ctx = build_field(2, 5).unwrap();
        let zeros = (0..31)
            .filter(|&b| ctx.trace_to_subfield(ctx.power_of_g(b), 1).unwrap() == ctx.zero())
            .count();
        assert_eq!(zeros, 15);

        // GF(3^4) -> GF(3): 13 of the 40 point classes are trace zero, and
        // the trace is constant on classes mod 40.
        let ctx = build_field(3, 4).unwrap();
        let is_zero: Vec<bool> = (0..80)
            .map(|b| ctx.trace_to_subfield(ctx.power_of_g(b), 1).unwrap() == ctx.zero())
            .collect();
        for b in 0..40 {
            assert_eq!(is_zero[b], is_zero[b + 40]);
        }
        assert_eq!(is_zero.iter().take(40).filter(|&&z| z).count(), 13);
    }

    #[test]
    fn trace_is_additive_and_equivariant() {
        for (p, d, e) in [
            (2u64, 5u32, 1u32),
            (3, 4, 1),
            (2, 6, 2),
            (2, 6, 3),
            (5, 2, 1),
        ] {
            let ctx = build_field(p, d).unwrap();
            let tr = |a| ctx.trace_to_subfield(a, e).unwrap();
            assert_eq!(tr(ctx.zero()), ctx.zero());
            for enc_a in 0..ctx.order() {
                let a = FieldElement(enc_a);
                // Tr(a^p) = Tr(a)^p.
                assert_eq!(tr(ctx.frobenius(a, 1)), ctx.frobenius(tr(a), 1));
                // Spot additivity against a shifted partner.
                let b = FieldElement((enc_a * 7 + 3) % ctx.order());
                assert_eq!(tr(ctx.add(a, b)), ctx.add(tr(a), tr(b)));
            }
        }
    }

    #[test]
    fn subfield_errors() {
        let ctx = build_field(2, 6).unwrap();
        assert!(matches!(
            ctx.trace_to_subfield(ctx.one(), 4),
            Err(Error::NotASubfield { e: 4, d: 6 })
        ));
    }

    #[test]
    fn modulus_rendering() {
        let ctx = build_field(2, 5).unwrap();
        assert_eq!(ctx.modulus_string(), "x^5 + x^2 + 1");
    }
}
