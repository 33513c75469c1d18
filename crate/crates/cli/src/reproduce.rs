//! The `reproduce` command: re-derives the reference fixtures and prints one
//! pass/fail line per item.

use std::process::ExitCode;

use serde::Serialize;
use wada_core::dessin::DEFAULT_EDGE_LIMIT;
use wada_core::ordering::OrderedDifferenceSet;
use wada_core::{
    build_dessin_with_limit, check_automorphism, check_prime_case_conditions, diffset,
    find_compatible_ordering, fixtures, frobenius_group_report, generate_singer_set,
    is_frobenius_compatible, is_wada_compatible, space_params, DifferenceSet, Error, VertexMap,
};

use crate::{CliError, ReproduceArgs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
enum Status {
    Pass,
    Fail,
    /// Attempted but gated by size or budget; informational, not a failure.
    Gated,
}

#[derive(Serialize)]
struct Outcome {
    name: String,
    status: Status,
    detail: String,
}

fn estr(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn run_fixture(
    outcomes: &mut Vec<Outcome>,
    name: &str,
    f: impl FnOnce() -> Result<String, String>,
) {
    let outcome = match f() {
        Ok(detail) => Outcome {
            name: name.into(),
            status: Status::Pass,
            detail,
        },
        Err(detail) => Outcome {
            name: name.into(),
            status: Status::Fail,
            detail,
        },
    };
    outcomes.push(outcome);
}

fn gated(outcomes: &mut Vec<Outcome>, name: &str, detail: String) {
    outcomes.push(Outcome {
        name: name.into(),
        status: Status::Gated,
        detail,
    });
}

pub fn run(json: bool, args: &ReproduceArgs) -> CliResult<ExitCode> {
    if !args.examples && !args.table2 {
        return Err(CliError::Usage(
            "reproduce needs at least one of --examples, --table2".into(),
        ));
    }
    let mut outcomes = Vec::new();
    if args.examples {
        run_examples(&mut outcomes, args.budget);
    }
    if args.table2 {
        run_table(&mut outcomes, args.budget, args.force_large);
    }

    let failed = outcomes.iter().filter(|o| o.status == Status::Fail).count();
    if json {
        let payload = serde_json::json!({
            "outcomes": outcomes,
            "failed": failed,
        });
        println!("{}", serde_json::to_string_pretty(&payload).unwrap());
    } else {
        for o in &outcomes {
            let tag = match o.status {
                Status::Pass => "PASS ",
                Status::Fail => "FAIL ",
                Status::Gated => "GATED",
            };
            println!("[{tag}] {} — {}", o.name, o.detail);
        }
        println!(
            "{} fixtures: {} passed, {} failed, {} gated",
            outcomes.len(),
            outcomes.iter().filter(|o| o.status == Status::Pass).count(),
            failed,
            outcomes
                .iter()
                .filter(|o| o.status == Status::Gated)
                .count(),
        );
    }
    Ok(if failed > 0 {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}

type CliResult<T> = Result<T, CliError>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn run_examples(out: &mut Vec<Outcome>, budget: u64) {
    run_fixture(out, "params P^4(F_2)", || {
        let s = space_params(4, 2, 1).map_err(estr)?;
        expect("(q, l, f)", (s.q, s.l, s.f), (15, 31, 5))?;
        Ok("l=31 q=15 f=5".into())
    });

    run_fixture(out, "params P^3(F_3)", || {
        let s = space_params(3, 3, 1).map_err(estr)?;
        expect("(q, l, f)", (s.q, s.l, s.f), (13, 40, 4))?;
        Ok("l=40 q=13 f=4".into())
    });

    run_fixture(
        out,
        "reference sets verify with the published multiplicities",
        || {
            let checks: [(&str, Vec<u64>, u64, u64, u64); 4] = [
                ("D mod 31", fixtures::d5_mod_31(), 31, 7, 2),
                ("D mod 40", fixtures::d4_mod_40(), 40, 4, 3),
                ("D+20 mod 40", fixtures::d4_plus_20_mod_40(), 40, 4, 3),
                ("D mod 121", fixtures::d5_mod_121(), 121, 13, 3),
            ];
            for (name, elements, v, lambda, p) in checks {
                let set = DifferenceSet::new(elements, v).map_err(estr)?;
                expect(&format!("lambda of {name}"), set.lambda(), lambda)?;
                expect(
                    &format!("{name} fixed under {p}"),
                    set.is_fixed_by_multiplier(p),
                    true,
                )?;
            }
            Ok("lambda = 7, 4, 4, 13; all multiplier-fixed".into())
        },
    );

    run_fixture(out, "shifted set mod 31 escapes the multiplier", || {
        let shifted = DifferenceSet::new(fixtures::d5_shifted_mod_31(), 31).map_err(estr)?;
        expect("fixed", shifted.is_fixed_by_multiplier(2), false)?;
        Ok("D - 1 mod 31 is not multiplier-fixed".into())
    });

    run_fixture(
        out,
        "generated Singer sets are equivalent to the published ones",
        || {
            for (m, p, e, published, v) in [
                (4u32, 2u64, 1u32, fixtures::d5_mod_31(), 31u64),
                (3, 3, 1, fixtures::d4_mod_40(), 40),
                (4, 3, 1, fixtures::d5_mod_121(), 121),
            ] {
                let params = space_params(m, p, e).map_err(estr)?;
                let singer = generate_singer_set(&params).map_err(estr)?;
                let reference = DifferenceSet::new(published, v).map_err(estr)?;
                let (t, s) = diffset::equivalent(&singer, &reference)
                    .ok_or(format!("no (t, s) witness for P^{m}(F_{p}^{e})"))?;
                let image = diffset::transform(&singer, t, s).map_err(estr)?;
                expect("transformed set", image.elements(), reference.elements())?;
            }
            Ok("witnessed (t, s) for mod 31, 40 and 121".into())
        },
    );

    run_fixture(out, "published shifts reproduce", || {
        let d5 = DifferenceSet::new(fixtures::d5_mod_31(), 31).map_err(estr)?;
        let shifted = diffset::transform(&d5, 1, 30).map_err(estr)?;
        let expected = DifferenceSet::new(fixtures::d5_shifted_mod_31(), 31).map_err(estr)?;
        expect("D - 1 mod 31", shifted.elements(), expected.elements())?;
        let d4 = DifferenceSet::new(fixtures::d4_mod_40(), 40).map_err(estr)?;
        let shifted = diffset::transform(&d4, 1, 20).map_err(estr)?;
        let expected = DifferenceSet::new(fixtures::d4_plus_20_mod_40(), 40).map_err(estr)?;
        expect("D + 20 mod 40", shifted.elements(), expected.elements())?;
        Ok("D - 1 mod 31 and D + 20 mod 40 match".into())
    });

    run_fixture(out, "multiplier orbits mod 31", || {
        let d5 = DifferenceSet::new(fixtures::d5_mod_31(), 31).map_err(estr)?;
        let dec = diffset::frobenius_orbits(&d5, 2, 5).map_err(estr)?;
        expect("orbits", dec.orbits.clone(), fixtures::d5_orbits_mod_31())?;
        Ok("three orbits of length five".into())
    });

    run_fixture(out, "multiplier orbits mod 40", || {
        let d4 = DifferenceSet::new(fixtures::d4_mod_40(), 40).map_err(estr)?;
        let dec = diffset::frobenius_orbits(&d4, 3, 4).map_err(estr)?;
        let mut got: Vec<Vec<u64>> = dec
            .orbits
            .iter()
            .map(|o| {
                let mut o = o.clone();
                o.sort_unstable();
                o
            })
            .collect();
        got.sort();
        let mut want: Vec<Vec<u64>> = fixtures::d4_orbit_sets_mod_40()
            .into_iter()
            .map(|mut o| {
                o.sort_unstable();
                o
            })
            .collect();
        want.sort();
        expect("orbit partition", got, want)?;
        let mut lengths = dec.lengths();
        lengths.sort_unstable_by(|a, b| b.cmp(a));
        expect("lengths", lengths, vec![4, 4, 2, 2, 1])?;
        Ok("orbits of lengths 4, 4, 2, 2, 1".into())
    });

    run_fixture(out, "fixed vertices", || {
        expect("mod 31 under 2", diffset::fixed_vertices(31, 2), vec![0])?;
        expect(
            "mod 40 under 3",
            diffset::fixed_vertices(40, 3),
            vec![0, 20],
        )?;
        Ok("{0} mod 31; {0, 20} mod 40".into())
    });

    run_fixture(out, "fixed shift families", || {
        let d5 = DifferenceSet::new(fixtures::d5_mod_31(), 31).map_err(estr)?;
        let family = diffset::frobenius_shift_family(&d5, 2).map_err(estr)?;
        expect("mod 31 family size", family.len(), 1)?;
        let d4 = DifferenceSet::new(fixtures::d4_mod_40(), 40).map_err(estr)?;
        let family = diffset::frobenius_shift_family(&d4, 3).map_err(estr)?;
        expect("mod 40 family size", family.len(), 2)?;
        let expected = DifferenceSet::new(fixtures::d4_plus_20_mod_40(), 40).map_err(estr)?;
        expect("second member", family[1].elements(), expected.elements())?;
        Ok("unique mod 31; the pair D, D+20 mod 40".into())
    });

    run_fixture(out, "ordering compatibility mod 31", || {
        let published =
            OrderedDifferenceSet::from_order(fixtures::d5_mod_31(), 31).map_err(estr)?;
        let report = is_frobenius_compatible(&published, 2, 5).map_err(estr)?;
        let v = report.frobenius.ok_or("missing verdict")?;
        expect("compatible", v.compatible, true)?;
        expect("j", v.j, Some(1))?;
        expect("k", v.block_len, Some(3))?;
        expect("wada", is_wada_compatible(&published).is_wada(), true)?;

        let sorted =
            OrderedDifferenceSet::from_order(fixtures::d5_sorted_mod_31(), 31).map_err(estr)?;
        let report = is_frobenius_compatible(&sorted, 2, 5).map_err(estr)?;
        expect("sorted ordering compatible", report.is_frobenius(), false)?;
        Ok("published ordering: blocks with j=1, k=3; sorted ordering rejected".into())
    });

    run_fixture(out, "ordering compatibility mod 121", || {
        let o = OrderedDifferenceSet::from_order(fixtures::d5_mod_121(), 121).map_err(estr)?;
        expect("wada", is_wada_compatible(&o).is_wada(), true)?;
        let report = is_frobenius_compatible(&o, 3, 5).map_err(estr)?;
        let v = report.frobenius.ok_or("missing verdict")?;
        expect("compatible", v.compatible, true)?;
        expect("k", v.block_len, Some(8))?;
        Ok("published 40-element ordering is Wada and multiplier compatible".into())
    });

    run_fixture(out, "dessin on the published mod 31 ordering", || {
        let o = OrderedDifferenceSet::from_order(fixtures::d5_mod_31(), 31).map_err(estr)?;
        let d = build_dessin_with_limit(&o, DEFAULT_EDGE_LIMIT).map_err(estr)?;
        expect("vertices", d.vertex_count(), 62)?;
        expect("edges", d.edge_count(), 465)?;
        expect("cells", d.cells().len(), 15)?;
        expect("valencies", d.cells().iter().all(|c| c.valency == 62), true)?;
        let sig = d.signature();
        expect("signature", (sig.0, sig.1, sig.2), (15, 15, 31))?;
        expect("chi", d.euler_characteristic(), -388)?;
        expect("genus", d.genus(), 195)?;
        expect("wada", d.is_wada().wada, true)?;
        Ok("15 cells of valency 62, signature (15,15,31), genus 195".into())
    });

    run_fixture(out, "automorphism discrimination", || {
        let build = |order: Vec<u64>| -> Result<_, String> {
            let o = OrderedDifferenceSet::from_order(order, 31).map_err(estr)?;
            build_dessin_with_limit(&o, DEFAULT_EDGE_LIMIT).map_err(estr)
        };
        let d = build(fixtures::d5_mod_31())?;
        let d_shift = build(fixtures::d5_shifted_mod_31())?;
        let d_sorted = build(fixtures::d5_sorted_mod_31())?;
        let sigma = VertexMap::affine(2, 0);
        let gamma = VertexMap::affine(1, 1);
        expect(
            "2x on the published ordering",
            check_automorphism(&d, &sigma)
                .map_err(estr)?
                .is_automorphism,
            true,
        )?;
        expect(
            "2x on the shifted set",
            check_automorphism(&d_shift, &sigma)
                .map_err(estr)?
                .is_automorphism,
            false,
        )?;
        expect(
            "2x on the sorted ordering",
            check_automorphism(&d_sorted, &sigma)
                .map_err(estr)?
                .is_automorphism,
            false,
        )?;
        for (name, dess) in [
            ("published", &d),
            ("shifted", &d_shift),
            ("sorted", &d_sorted),
        ] {
            expect(
                &format!("x+1 on {name}"),
                check_automorphism(dess, &gamma)
                    .map_err(estr)?
                    .is_automorphism,
                true,
            )?;
        }
        Ok("2x valid only on the compatible ordering; x+1 valid on all three".into())
    });

    run_fixture(out, "multiplier group action on the mod 31 dessin", || {
        let o = OrderedDifferenceSet::from_order(fixtures::d5_mod_31(), 31).map_err(estr)?;
        let d = build_dessin_with_limit(&o, DEFAULT_EDGE_LIMIT).map_err(estr)?;
        let report = frobenius_group_report(&d, 2, 5).map_err(estr)?;
        for power in &report.powers {
            expect(
                &format!("fixed edges of power {}", power.u),
                power.fixed_edges,
                0,
            )?;
            expect(
                &format!("fixed vertices of power {}", power.u),
                power.fixed_vertices.clone(),
                vec![0],
            )?;
            let mut lengths = power.cell_orbit_lengths.clone();
            lengths.sort_unstable();
            expect(
                &format!("cell orbits of power {}", power.u),
                lengths,
                vec![5, 5, 5],
            )?;
        }
        expect("rotation fit", report.cell_rotation_m.is_some(), true)?;
        Ok("free on edges; cells rotate in three 5-orbits around vertex 0".into())
    });

    run_fixture(out, "ordering search for the mod 121 space", || {
        let params = space_params(4, 3, 1).map_err(estr)?;
        let set = generate_singer_set(&params).map_err(estr)?;
        let found = find_compatible_ordering(&set, 3, 5, true, budget)
            .map_err(estr)?
            .ok_or("search exhausted with no ordering")?;
        expect("wada", is_wada_compatible(&found).is_wada(), true)?;
        expect(
            "frobenius",
            is_frobenius_compatible(&found, 3, 5)
                .map_err(estr)?
                .is_frobenius(),
            true,
        )?;
        Ok("found an ordering passing both standalone checkers".into())
    });
}

fn run_table(out: &mut Vec<Outcome>, budget: u64, force_large: bool) {
    for (m, p, e, q, l, f) in fixtures::frobenius_space_rows() {
        let name = format!("table row P^{m}(F_{p})");
        run_fixture(out, &format!("{name}: parameters"), || {
            let s = space_params(m, p, e).map_err(estr)?;
            expect("(q, l, f)", (s.q, s.l, s.f), (q, l, f))?;
            let verdict = check_prime_case_conditions(&s);
            expect("nice case", verdict.nice_case, true)?;
            Ok(format!("q={q} l={l} f={f}, conditions hold"))
        });

        let edges = l * q;
        let within_guard = edges <= DEFAULT_EDGE_LIMIT;
        // The large spaces still get their set generated and an ordering
        // search; only the map build is gated.
        let params = match space_params(m, p, e) {
            Ok(s) => s,
            Err(_) => continue,
        };

        let setup = || -> Result<OrderedDifferenceSet, String> {
            let set = generate_singer_set(&params).map_err(estr)?;
            let found = find_compatible_ordering(&set, p, f as u64, true, budget)
                .map_err(estr)?
                .ok_or("no compatible ordering exists")?;
            Ok(found)
        };

        if !within_guard && !force_large {
            // Report the ordering search outcome without failing the suite.
            let set = match generate_singer_set(&params) {
                Ok(s) => s,
                Err(e) => {
                    gated(
                        out,
                        &format!("{name}: pipeline"),
                        format!("set generation gated: {e}"),
                    );
                    continue;
                }
            };
            match find_compatible_ordering(&set, p, f as u64, true, budget) {
                Ok(Some(found)) => {
                    let wada = is_wada_compatible(&found).is_wada();
                    gated(
                        out,
                        &format!("{name}: pipeline"),
                        format!(
                            "ordering found (wada: {wada}); map build skipped ({edges} edges > {DEFAULT_EDGE_LIMIT}, use --force-large)"
                        ),
                    );
                }
                Ok(None) => {
                    gated(
                        out,
                        &format!("{name}: pipeline"),
                        "search exhausted: no compatible ordering".into(),
                    );
                }
                Err(Error::BudgetExhausted { budget }) => {
                    gated(
                        out,
                        &format!("{name}: pipeline"),
                        format!("ordering search inconclusive within {budget} nodes"),
                    );
                }
                Err(e) => {
                    gated(
                        out,
                        &format!("{name}: pipeline"),
                        format!("ordering search gated: {e}"),
                    );
                }
            }
            continue;
        }

        run_fixture(out, &format!("{name}: pipeline"), || {
            let found = setup()?;
            let limit = if force_large {
                u64::MAX
            } else {
                DEFAULT_EDGE_LIMIT
            };
            let d = build_dessin_with_limit(&found, limit).map_err(estr)?;
            expect("cells", d.cells().len() as u64, q)?;
            expect(
                "valencies",
                d.cells().iter().all(|c| c.valency == 2 * l),
                true,
            )?;
            let sig = d.signature();
            expect("signature", (sig.0, sig.1, sig.2), (q, q, l))?;
            expect("wada", d.is_wada().wada, true)?;
            expect("uniform", d.is_uniform(), true)?;
            let report = frobenius_group_report(&d, p, f).map_err(estr)?;
            expect("block count", report.block_count, Some(q / f as u64))?;
            for power in &report.powers {
                expect(
                    &format!("fixed edges of power {}", power.u),
                    power.fixed_edges,
                    0,
                )?;
                expect(
                    &format!("orbit count of power {}", power.u),
                    power.cell_orbit_lengths.len() as u64,
                    q / f as u64,
                )?;
                expect(
                    &format!("orbit lengths of power {}", power.u),
                    power.cell_orbit_lengths.iter().all(|&len| len == f as u64),
                    true,
                )?;
            }
            Ok(format!(
                "({q},{q},{l}) Wada dessin; group of order {f} free on edges, {} cell orbits",
                q / f as u64
            ))
        });
    }
}
