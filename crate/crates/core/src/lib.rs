//! Construction and analysis of Wada dessins over cyclic projective spaces.
//!
//! The pipeline runs from exact finite-field arithmetic to certified graph
//! symmetries:
//!
//! * [`gf`] — GF(p^d) with a pinned primitive element and discrete-log table,
//! * [`singer`] — parameters of P^m(F_n) and the Singer difference set on
//!   the trace-zero hyperplane,
//! * [`diffset`] — verification, equivalence and multiplier orbits of cyclic
//!   difference sets,
//! * [`ordering`] — cyclic orderings compatible with the Wada condition
//!   and/or the Frobenius multiplier, plus an exact backtracking search,
//! * [`dessin`] — the oriented bipartite map, its cells, signature and
//!   genus,
//! * [`autgrp`] — certification of candidate automorphisms and the group
//!   feasibility conditions,
//! * [`export`] — DOT and schematic SVG renderings,
//! * [`fixtures`] — published reference sets used as ground truth.

pub mod autgrp;
pub mod dessin;
pub mod diffset;
pub mod error;
pub mod export;
pub mod fixtures;
pub mod gf;
pub mod ordering;
pub mod singer;
pub mod util;

pub use autgrp::{
    check_automorphism, check_prime_case_conditions, frobenius_group_report, subgroup_feasibility,
    AutReport, FrobeniusGroupReport, PrimeCaseVerdict, SubgroupVerdict, VertexMap,
};
pub use dessin::{
    build_dessin, build_dessin_with_limit, Dessin, DessinReport, SignatureTriple,
    DEFAULT_EDGE_LIMIT,
};
pub use diffset::{
    equivalent, fixed_vertices, frobenius_orbits, frobenius_shift_family, transform,
    verify_difference_set, DifferenceSet, OrbitDecomposition,
};
pub use error::{Error, Result};
pub use gf::{build_field, build_field_with_limit, FieldCtx, FieldElement, DEFAULT_MAX_ELEMENTS};
pub use ordering::{
    find_compatible_ordering, full_report, is_frobenius_compatible, is_wada_compatible,
    CompatibilityReport, OrderedDifferenceSet, DEFAULT_SEARCH_BUDGET,
};
pub use singer::{generate_singer_set, space_params, SpaceParams};
