//! Text renderers for the command outputs.

use std::collections::BTreeMap;

use wada_core::autgrp::{AutReport, FrobeniusGroupReport, PrimeCaseVerdict, SubgroupVerdict};
use wada_core::dessin::DessinReport;
use wada_core::diffset::OrbitDecomposition;
use wada_core::ordering::CompatibilityReport;
use wada_core::{Dessin, DifferenceSet, OrderedDifferenceSet, SpaceParams};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn print_space(
    params: &SpaceParams,
    prime_case: &PrimeCaseVerdict,
    subgroups: &[SubgroupVerdict],
) {
    println!("space P^{}(F_{})", params.m, params.n);
    println!(
        "  m={} p={} e={} n={}  l={} q={} lambda={} f={}",
        params.m, params.p, params.e, params.n, params.l, params.q, params.lambda, params.f
    );
    println!(
        "nice case (prime group order, free action): {}",
        yes_no(prime_case.nice_case)
    );
    println!(
        "  f prime: {} | p != m+1: {} | p != 1 mod m+1: {} | f divides q: {} | gcd(p-1, l) = 1: {}",
        yes_no(prime_case.f_prime),
        yes_no(prime_case.p_differs_from_m_plus_1),
        yes_no(prime_case.p_not_one_mod_m_plus_1),
        yes_no(prime_case.f_divides_q),
        yes_no(prime_case.shift_free),
    );
    println!(
        "subgroups of the multiplier group (order f = {}):",
        params.f
    );
    for v in subgroups {
        match v.orbit_count {
            Some(orbits) => println!(
                "  g={:<3} (power s={}, t={}): feasible, {} orbits of length {}",
                v.g, v.s, v.t, orbits, v.g
            ),
            None => {
                let reason = if !v.divides_q {
                    "g does not divide q"
                } else {
                    "gcd(t-1, l) > 1"
                };
                println!(
                    "  g={:<3} (power s={}, t={}): infeasible ({reason})",
                    v.g, v.s, v.t
                );
            }
        }
    }
}

pub fn print_diffset(
    params: &SpaceParams,
    set: &DifferenceSet,
    orbits: Option<&OrbitDecomposition>,
    shifts: Option<&[DifferenceSet]>,
) {
    println!(
        "Singer difference set of P^{}(F_{}): ({}, {}, {})",
        params.m,
        params.n,
        set.modulus(),
        set.len(),
        set.lambda()
    );
    println!("  elements: {:?}", set.elements());
    println!(
        "  fixed under x -> {}x: {}",
        params.p,
        yes_no(set.is_fixed_by_multiplier(params.p))
    );
    if let Some(dec) = orbits {
        println!(
            "orbits under x -> {}x (lengths {:?}):",
            dec.multiplier,
            dec.lengths()
        );
        for orbit in &dec.orbits {
            println!("  {orbit:?}");
        }
    }
    if let Some(family) = shifts {
        println!("fixed shifted sets: {}", family.len());
        for member in family {
            println!("  {:?}", member.elements());
        }
    }
}

pub fn print_ordering(ordering: &OrderedDifferenceSet, compat: &CompatibilityReport) {
    println!(
        "ordering mod {} ({} elements):",
        ordering.modulus(),
        ordering.len()
    );
    println!("  {:?}", ordering.order());
    if let Some(w) = &compat.wada {
        println!("wada compatible: {}", yes_no(w.compatible));
        for pair in &w.offending {
            println!(
                "  offending pair ({}, {}): gcd {} with the modulus",
                pair.left, pair.right, pair.gcd
            );
        }
    }
    if let Some(f) = &compat.frobenius {
        match (f.compatible, f.j, f.block_len) {
            (true, Some(j), Some(k)) => {
                println!("frobenius compatible: yes (j = {j}, block length k = {k})")
            }
            _ => println!("frobenius compatible: {}", yes_no(f.compatible)),
        }
    }
}

pub fn print_dessin(dessin: &Dessin, report: &DessinReport) {
    println!(
        "dessin on l = {}, q = {}: {} vertices, {} edges, {} cells",
        report.l,
        report.q,
        dessin.vertex_count(),
        dessin.edge_count(),
        report.cells.len()
    );
    println!(
        "  signature ({}, {}, {}), Euler characteristic {}, genus {}",
        report.signature.0,
        report.signature.1,
        report.signature.2,
        dessin.euler_characteristic(),
        report.genus
    );
    println!(
        "  wada: {} | uniform: {}",
        yes_no(report.wada),
        yes_no(report.uniform)
    );
    if report.cells.len() <= 48 {
        for (i, cell) in report.cells.iter().enumerate() {
            println!(
                "  cell {:>3}: valency {:>6}, entered along ({}, {})",
                i, cell.valency, cell.entering_pair.0, cell.entering_pair.1
            );
        }
    } else {
        let mut by_valency: BTreeMap<u64, usize> = BTreeMap::new();
        for cell in &report.cells {
            *by_valency.entry(cell.valency).or_default() += 1;
        }
        for (valency, count) in by_valency {
            println!("  {count} cells of valency {valency}");
        }
    }
}

pub fn print_aut_report(report: &AutReport) {
    match &report.map {
        wada_core::VertexMap::Affine { t, s } => {
            println!("map x -> {t}x + {s}: {}", verdict(report.is_automorphism))
        }
        wada_core::VertexMap::Explicit { .. } => {
            println!("explicit permutation: {}", verdict(report.is_automorphism))
        }
    }
    if let Some(c) = &report.counterexample {
        println!(
            "  broken at dart ({:?}, vertex {}, position {})",
            c.color, c.vertex, c.position
        );
    }
    if report.is_automorphism {
        println!(
            "  fixed vertices per class: {:?} | fixed edges: {}",
            report.fixed_vertices, report.fixed_edges
        );
        println!("  cell orbit lengths: {:?}", report.cell_orbit_lengths);
    }
}

fn verdict(b: bool) -> &'static str {
    if b {
        "automorphism"
    } else {
        "NOT an automorphism"
    }
}

pub fn print_group_report(report: &FrobeniusGroupReport) {
    println!(
        "cyclic group of order {} generated by x -> {}x: automorphism group of the dessin",
        report.order, report.multiplier
    );
    if let Some(k) = report.block_count {
        println!("  cells fall into k = {k} orbits");
    }
    match report.cell_rotation_m {
        Some(m) => println!("  cell action fits c -> c + m*k with m = {m}"),
        None => println!("  cell action does not fit the rotation model"),
    }
    for power in &report.powers {
        println!(
            "  power u={} (t={}): fixed vertices {:?}, fixed edges {}, cell orbits {:?}",
            power.u,
            power.multiplier,
            power.fixed_vertices,
            power.fixed_edges,
            power.cell_orbit_lengths
        );
    }
}
