//! Report builders behind the CLI subcommands. The `relations` and `cube`
//! commands forward to the verifiers in the core crate; the other commands
//! assemble their reports here.

use anyhow::Context;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::json;

use braidcover::braid::{evaluate_braid, BraidLetter, BraidWord};
use braidcover::covering::{verify_cube_failure, verify_relations, CoverGroupoid, RelationOptions};
use braidcover::groupoid::conjugate_support_check;
use braidcover::invariants::{
    check_formula_consistency, genus_dm, operad_genus_additivity, rh_invariants,
};
use braidcover::operad::{
    act_on_configurations, act_on_surfaces, predicted_surface, sample_configuration,
    sample_valid_element, FramedDisksElement, SurfaceOperand, VALIDITY_TOLERANCE,
};
use braidcover::polygon::{
    boundary_rotation_check, classify_simple_twists, cover_equivalence_check, edge_relabeling,
    expected_classification, polygon_surface_invariants, shift_twist, signed_edge_functor,
    PolygonSurface, TwistDirection,
};
use braidcover::report::{Check, ReportBuilder, VerificationReport};
use braidcover::ribbon::{build_cover_ribbon, cover_sheet_shift};

pub fn relations(n: usize, d: usize, max_power: usize) -> anyhow::Result<VerificationReport> {
    Ok(verify_relations(n, d, RelationOptions { max_power })?)
}

pub fn ribbon(n: usize, d: usize, emit_faces: bool) -> anyhow::Result<VerificationReport> {
    let mut report = ReportBuilder::new("ribbon");
    report
        .parameter("n", n as u64)
        .parameter("d", d as u64)
        .parameter("emit_faces", emit_faces);
    let graph = build_cover_ribbon(n, d)?;
    let invariants = graph.surface_invariants()?;
    let (g, k) = rh_invariants(d as u64, n as u64)?;
    if (invariants.genus as u64, invariants.boundary as u64) == (g, k) {
        report.pass_with(
            "matches_riemann_hurwitz",
            json!({"g": g, "k": k, "euler": invariants.euler}),
        );
    } else {
        report.fail(
            "matches_riemann_hurwitz",
            json!({
                "traversal": {"g": invariants.genus, "k": invariants.boundary},
                "formula": {"g": g, "k": k},
            }),
        );
    }

    let faces = graph.faces();
    let total: usize = faces.iter().map(|f| f.len()).sum();
    let witness = if emit_faces {
        json!(graph.face_labels())
    } else {
        json!({"faces": faces.len(), "half_edges": total})
    };
    if total == graph.half_edge_count() {
        report.pass_with("face_partition", witness);
    } else {
        report.fail("face_partition", witness);
    }

    report.verdict(
        "sheet_shift_automorphism",
        graph.is_automorphism(&cover_sheet_shift(&graph, n, d)),
        json!("sheet shift does not preserve the rotation system"),
    );
    Ok(report.build())
}

pub fn invariants(d: u64, m: Option<u64>, n: Option<u64>) -> anyhow::Result<VerificationReport> {
    let mut report = ReportBuilder::new("invariants");
    report.parameter("d", d);
    match (m, n) {
        (Some(m), None) => {
            report.parameter("m", m);
            let g = genus_dm(d, m)?;
            report.pass_with("genus_formula", json!({"g": g}));
            let consistent = check_formula_consistency(d, m);
            report.verdict(
                "formula_consistency",
                consistent.is_ok(),
                json!(consistent.err().map(|e| e.to_string())),
            );
        }
        (None, Some(n)) => {
            report.parameter("n", n);
            let (g, k) = rh_invariants(d, n)?;
            report.pass_with("riemann_hurwitz", json!({"g": g, "k": k}));
        }
        _ => unreachable!("clap enforces exactly one of --m / --n"),
    }
    Ok(report.build())
}

fn maps_close(a: &FramedDisksElement, b: &FramedDisksElement, tolerance: f64) -> bool {
    a.arity() == b.arity()
        && a.maps().iter().zip(b.maps()).all(|(x, y)| {
            (x.scale - y.scale).norm() <= tolerance && (x.offset - y.offset).norm() <= tolerance
        })
}

pub fn operad(samples: usize, seed: u64) -> anyhow::Result<VerificationReport> {
    let mut report = ReportBuilder::new("operad");
    report
        .parameter("samples", samples as u64)
        .parameter("seed", seed);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let mut unit_failure = None;
    let mut associativity_failure = None;
    let mut validity_failure = None;
    let mut cardinality_failure = None;
    for round in 0..samples {
        let k = rng.random_range(1..=4);
        let f = sample_valid_element(&mut rng, k);

        let identities = vec![FramedDisksElement::identity(); k];
        let right_unit = f.compose(&identities)?;
        let left_unit = FramedDisksElement::identity().compose(std::slice::from_ref(&f))?;
        if !(maps_close(&right_unit, &f, VALIDITY_TOLERANCE)
            && maps_close(&left_unit, &f, VALIDITY_TOLERANCE))
        {
            unit_failure.get_or_insert(round);
        }

        let middles: Vec<FramedDisksElement> = (0..k)
            .map(|_| {
                let arity = rng.random_range(1..=3);
                sample_valid_element(&mut rng, arity)
            })
            .collect();
        let inners: Vec<Vec<FramedDisksElement>> = middles
            .iter()
            .map(|g| {
                (0..g.arity())
                    .map(|_| {
                        let arity = rng.random_range(1..=2);
                        sample_valid_element(&mut rng, arity)
                    })
                    .collect()
            })
            .collect();
        let flat: Vec<FramedDisksElement> = inners.iter().flatten().cloned().collect();
        let left = f.compose(&middles)?.compose(&flat)?;
        let right = f.compose(
            &middles
                .iter()
                .zip(&inners)
                .map(|(g, hs)| g.compose(hs))
                .collect::<Result<Vec<_>, _>>()?,
        )?;
        if !maps_close(&left, &right, VALIDITY_TOLERANCE) {
            associativity_failure.get_or_insert(round);
        }
        if !left.is_valid() {
            validity_failure.get_or_insert(round);
        }

        let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(0..=5)).collect();
        let configs: Vec<_> = sizes
            .iter()
            .map(|&s| sample_configuration(&mut rng, s))
            .collect();
        let merged = act_on_configurations(&f, &configs)?;
        if merged.len() != sizes.iter().sum::<usize>() {
            cardinality_failure.get_or_insert(round);
        }
    }

    let fail_witness = |round: Option<usize>| json!({"first_failing_sample": round});
    report.verdict(
        "unit_laws",
        unit_failure.is_none(),
        fail_witness(unit_failure),
    );
    report.verdict(
        "associativity",
        associativity_failure.is_none(),
        fail_witness(associativity_failure),
    );
    report.verdict(
        "composition_preserves_validity",
        validity_failure.is_none(),
        fail_witness(validity_failure),
    );
    report.verdict(
        "configuration_cardinality",
        cardinality_failure.is_none(),
        fail_witness(cardinality_failure),
    );
    Ok(report.build())
}

pub fn polygon(h: usize, b: usize) -> anyhow::Result<VerificationReport> {
    let mut report = ReportBuilder::new("polygon");
    report.parameter("h", h as u64).parameter("b", b as u64);
    let polygon = PolygonSurface::new(h, b)?;
    let d = polygon.edge_count();
    report.parameter("d", d as u64);

    let found = classify_simple_twists(h, b)?;
    let expected = expected_classification(&polygon);
    report.verdict(
        "classification_matches_case",
        found == expected,
        json!({
            "found": found.iter().collect::<Vec<_>>(),
            "expected": expected.iter().collect::<Vec<_>>(),
        }),
    );
    if b >= 3 {
        report.verdict(
            "classification_empty",
            found.is_empty(),
            json!({"found": found.len()}),
        );
    }

    let twist = shift_twist(&polygon, TwistDirection::Positive);
    let rotation = boundary_rotation_check(twist.functor(), &polygon)?;
    if b <= 2 {
        report.verdict(
            "shift_rotates_boundaries",
            rotation.passes(),
            json!(rotation.per_word),
        );
        let expected_order = if b == 1 { 2 * d } else { d };
        let order = twist.functor().order(2 * d + 1);
        report.verdict(
            "shift_twist_order",
            order == Some(expected_order),
            json!({"order": order, "expected": expected_order}),
        );
        let equivalence = cover_equivalence_check(d)?;
        report.verdict(
            "cover_equivalence",
            equivalence.matches,
            json!(equivalence.mismatch),
        );
    } else {
        report.verdict(
            "shift_rejected",
            !rotation.passes(),
            json!("the shift twist fixed every boundary word despite b >= 3"),
        );
    }

    let invariants = polygon_surface_invariants(&polygon)?;
    report.verdict(
        "ribbon_invariants",
        (invariants.genus, invariants.boundary) == (h, b),
        json!({"g": invariants.genus, "b": invariants.boundary}),
    );
    Ok(report.build())
}

type Cell = Box<dyn FnOnce() -> anyhow::Result<Vec<Check>> + Send>;

fn prefixed(prefix: String, report: VerificationReport) -> Vec<Check> {
    report
        .checks
        .into_iter()
        .map(|mut check| {
            check.name = format!("{prefix}/{}", check.name);
            check
        })
        .collect()
}

/// Runs every verification family over the grid `n <= n_max`, `d <= d_max`
/// (covers), plus the fixed-size polygon, equivalence, operad, and support-
/// transport families. Cells run in parallel; `BRAIDCOVER_THREADS` caps the
/// worker count.
pub fn sweep(n_max: usize, d_max: usize) -> anyhow::Result<VerificationReport> {
    if n_max < 2 || d_max < 2 {
        anyhow::bail!("sweep needs --n-max >= 2 and --d-max >= 2");
    }
    let mut cells: Vec<Cell> = Vec::new();

    for n in 2..=n_max {
        for d in 2..=d_max {
            cells.push(Box::new(move || {
                let report = verify_relations(n, d, RelationOptions::default())?;
                Ok(prefixed(format!("relations[n={n},d={d}]"), report))
            }));
            cells.push(Box::new(move || {
                let report = ribbon(n, d, false)?;
                Ok(prefixed(format!("ribbon[n={n},d={d}]"), report))
            }));
        }
    }
    for d in 2..=d_max {
        cells.push(Box::new(move || {
            let report = verify_cube_failure(d)?;
            Ok(prefixed(format!("cube[d={d}]"), report))
        }));
        cells.push(Box::new(move || {
            let d = d as u64;
            let mut report = ReportBuilder::new("invariants");
            let mut mismatch = None;
            for m in 1..=6u64 {
                if let Err(err) = check_formula_consistency(d, m) {
                    mismatch.get_or_insert(err.to_string());
                }
            }
            report.verdict("formula_consistency", mismatch.is_none(), json!(mismatch));

            let mut additivity_mismatch = None;
            for k in 1..=4usize {
                let mut parts = vec![1u64; k];
                loop {
                    let (lhs, rhs) = operad_genus_additivity(d, &parts)?;
                    if lhs != rhs {
                        additivity_mismatch
                            .get_or_insert(format!("parts {parts:?}: {lhs} != {rhs}"));
                    }
                    let mut carry = true;
                    for slot in parts.iter_mut() {
                        if *slot < 4 {
                            *slot += 1;
                            carry = false;
                            break;
                        }
                        *slot = 1;
                    }
                    if carry {
                        break;
                    }
                }
            }
            report.verdict(
                "genus_additivity",
                additivity_mismatch.is_none(),
                json!(additivity_mismatch),
            );

            // the symbolic surface action against the closed form, with the
            // arity-zero disks filler included
            let mut rng = ChaCha8Rng::seed_from_u64(d);
            let mut action_mismatch = None;
            for k in 1..=3usize {
                let mut parts = vec![0u64; k];
                loop {
                    let f = sample_valid_element(&mut rng, k);
                    let operands: Vec<SurfaceOperand> = parts
                        .iter()
                        .map(|&m| predicted_surface(d, m))
                        .collect::<Result<_, _>>()?;
                    let glued = act_on_surfaces(&f, &operands)?;
                    let expected = if parts.iter().all(|&m| m == 0) {
                        SurfaceOperand::Disks {
                            boundary: d as usize,
                        }
                    } else {
                        let surfaces = parts.iter().filter(|&&m| m > 0).count() as u64;
                        let genus_sum: u64 = parts
                            .iter()
                            .filter(|&&m| m > 0)
                            .map(|&m| genus_dm(d, m))
                            .sum::<Result<u64, _>>()?;
                        SurfaceOperand::Surface {
                            genus: (genus_sum + (surfaces - 1) * (d - 1)) as usize,
                            boundary: d as usize,
                        }
                    };
                    if glued != expected {
                        action_mismatch
                            .get_or_insert(format!("parts {parts:?}: {glued:?} != {expected:?}"));
                    }
                    let mut carry = true;
                    for slot in parts.iter_mut() {
                        if *slot < 3 {
                            *slot += 1;
                            carry = false;
                            break;
                        }
                        *slot = 0;
                    }
                    if carry {
                        break;
                    }
                }
            }
            report.verdict(
                "surface_action",
                action_mismatch.is_none(),
                json!(action_mismatch),
            );
            Ok(prefixed(format!("invariants[d={d}]"), report.build()))
        }));
    }

    for h in 0..=4usize {
        for b in 1..=9usize {
            if 2 * h + b > 9 || (h, b) == (0, 1) {
                continue;
            }
            cells.push(Box::new(move || {
                let report = polygon(h, b)?;
                Ok(prefixed(format!("polygon[h={h},b={b}]"), report))
            }));
        }
    }
    for d in 2..=9usize {
        cells.push(Box::new(move || {
            let outcome = cover_equivalence_check(d)?;
            let mut report = ReportBuilder::new("equivalence");
            report.verdict(
                "matches_polygon_shift",
                outcome.matches,
                json!(outcome.mismatch),
            );
            Ok(prefixed(format!("equivalence[d={d}]"), report.build()))
        }));
    }
    cells.push(Box::new(|| {
        let report = operad(60, 1)?;
        Ok(prefixed("operad".to_string(), report))
    }));
    cells.push(Box::new(|| {
        let mut report = ReportBuilder::new("support");
        let mut failure = None;
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for round in 0..60 {
            if !support_transport_sample(&mut rng)? {
                failure.get_or_insert(round);
            }
        }
        report.verdict(
            "support_transport",
            failure.is_none(),
            json!({"first_failing_pair": failure}),
        );
        Ok(prefixed("lemma".to_string(), report.build()))
    }));

    let run = |cells: Vec<Cell>| -> anyhow::Result<Vec<Vec<Check>>> {
        cells.into_par_iter().map(|cell| cell()).collect()
    };
    let nested = match std::env::var("BRAIDCOVER_THREADS") {
        Ok(value) => {
            let threads: usize =
                value
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&t| t >= 1)
                    .with_context(|| {
                        format!("BRAIDCOVER_THREADS must be a positive integer, got {value:?}")
                    })?;
            rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .context("cannot build thread pool")?
                .install(|| run(cells))?
        }
        Err(_) => run(cells)?,
    };

    let mut report = ReportBuilder::new("sweep");
    report
        .parameter("n_max", n_max as u64)
        .parameter("d_max", d_max as u64);
    for checks in nested {
        report.append_checks(checks);
    }
    Ok(report.build())
}

/// One random (functor, relabeling) pair; returns the support-transport
/// verdict. Covers and polygons alternate by coin flip.
fn support_transport_sample(rng: &mut ChaCha8Rng) -> anyhow::Result<bool> {
    if rng.random_bool(0.5) {
        let n = rng.random_range(3..=4);
        let d = rng.random_range(2..=4);
        let cover = CoverGroupoid::new(n, d)?;
        let assignment = cover.twist_assignment()?;
        let letters = (0..rng.random_range(0..=6))
            .map(|_| {
                let index = rng.random_range(1..n);
                if rng.random_bool(0.5) {
                    BraidLetter::positive(index)
                } else {
                    BraidLetter::negative(index)
                }
            })
            .collect();
        let f = evaluate_braid(&BraidWord::new(n, letters)?, &assignment)?;
        let perms: Vec<Vec<usize>> = (0..=n)
            .map(|_| {
                let mut items: Vec<usize> = (1..=d).collect();
                let mut perm = Vec::with_capacity(d);
                for remaining in (1..=d).rev() {
                    perm.push(items.remove(rng.random_range(0..remaining)));
                }
                perm
            })
            .collect();
        let h = cover.sheet_relabeling(&perms, rng.random_bool(0.3))?;
        Ok(conjugate_support_check(&f, &h)?)
    } else {
        let genus = rng.random_range(0..=2);
        let b = rng.random_range(1..=3);
        let (genus, b) = if (genus, b) == (0, 1) {
            (1, 1)
        } else {
            (genus, b)
        };
        let polygon = PolygonSurface::new(genus, b)?;
        let d = polygon.edge_count();
        let mut f = shift_twist(&polygon, TwistDirection::Positive).into_functor();
        for _ in 0..rng.random_range(0..=3) {
            let dir = if rng.random_bool(0.5) {
                TwistDirection::Positive
            } else {
                TwistDirection::Negative
            };
            f = shift_twist(&polygon, dir).into_functor().after(&f)?;
        }
        let mut sigma = Vec::with_capacity(d);
        let mut items: Vec<usize> = (0..d).collect();
        for remaining in (1..=d).rev() {
            sigma.push(items.remove(rng.random_range(0..remaining)));
        }
        let h = if rng.random_bool(0.5) {
            signed_edge_functor(&polygon, &sigma)?
        } else {
            edge_relabeling(&polygon, &sigma)?
        };
        Ok(conjugate_support_check(&f, &h)?)
    }
}
