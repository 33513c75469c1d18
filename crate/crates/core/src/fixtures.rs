//! Known difference sets and reference data from the classical literature
//! on cyclic projective spaces, in their published element orderings.
//!
//! These are used by the test suites and by the CLI `reproduce` command as
//! ground truth.

/// The (31, 15, 7) difference set of P^4(F_2), ordered compatibly with the
/// multiplier 2 (blocks of three, each block twice the previous).
pub fn d5_mod_31() -> Vec<u64> {
    vec![1, 3, 15, 2, 6, 30, 4, 12, 29, 8, 24, 27, 16, 17, 23]
}

/// The shift D - 1 mod 31 of [`d5_mod_31`], same ordering; not fixed by the
/// multiplier 2.
pub fn d5_shifted_mod_31() -> Vec<u64> {
    vec![0, 2, 14, 1, 5, 29, 3, 11, 28, 7, 23, 26, 15, 16, 22]
}

/// The elements of [`d5_mod_31`] sorted ascending; a valid difference set
/// ordering that is not compatible with the multiplier 2.
pub fn d5_sorted_mod_31() -> Vec<u64> {
    vec![1, 2, 3, 4, 6, 8, 12, 15, 16, 17, 23, 24, 27, 29, 30]
}

/// The multiplier-2 orbits of [`d5_mod_31`]: three orbits of length five, in
/// cycle order starting at the minimal element.
pub fn d5_orbits_mod_31() -> Vec<Vec<u64>> {
    vec![
        vec![1, 2, 4, 8, 16],
        vec![3, 6, 12, 24, 17],
        vec![15, 30, 29, 27, 23],
    ]
}

/// The (40, 13, 4) difference set of P^3(F_3), fixed by the multiplier 3.
pub fn d4_mod_40() -> Vec<u64> {
    vec![21, 22, 23, 25, 26, 29, 34, 35, 38, 0, 5, 7, 15]
}

/// The shift D + 20 mod 40 of [`d4_mod_40`]; also fixed by the multiplier 3.
pub fn d4_plus_20_mod_40() -> Vec<u64> {
    vec![1, 2, 3, 5, 6, 9, 14, 15, 18, 20, 25, 27, 35]
}

/// The multiplier-3 orbit partition of [`d4_mod_40`] as published (sets, not
/// cycle order): lengths 4, 4, 2, 2, 1.
pub fn d4_orbit_sets_mod_40() -> Vec<Vec<u64>> {
    vec![
        vec![21, 23, 29, 7],
        vec![22, 26, 34, 38],
        vec![25, 35],
        vec![5, 15],
        vec![0],
    ]
}

/// The (121, 40, 13) difference set of P^4(F_3) in an ordering compatible
/// with the multiplier 3 and with all consecutive differences prime to 121.
pub fn d5_mod_121() -> Vec<u64> {
    vec![
        1, 4, 7, 11, 13, 34, 25, 67, //
        3, 12, 21, 33, 39, 102, 75, 80, //
        9, 36, 63, 99, 117, 64, 104, 119, //
        27, 108, 68, 55, 109, 71, 70, 115, //
        81, 82, 83, 44, 85, 92, 89, 103,
    ]
}

/// Reference parameter rows (m, p, e, q, l, f) for spaces where the cyclic
/// group generated by the Frobenius map has prime order and acts freely.
pub fn frobenius_space_rows() -> Vec<(u32, u64, u32, u64, u64, u32)> {
    vec![
        (2, 5, 1, 6, 31, 3),
        (4, 2, 1, 15, 31, 5),
        (4, 3, 1, 40, 121, 5),
        (4, 7, 1, 400, 2801, 5),
        (6, 2, 1, 63, 127, 7),
        (6, 3, 1, 364, 1093, 7),
        (6, 5, 1, 3906, 19531, 7),
        (10, 2, 1, 1023, 2047, 11),
    ]
}
