//! Acceptance suite: one test per criterion, each over its full parameter
//! grid with exact comparisons (or the stated 1e-9 tolerance for the
//! floating-point operad axioms). Run with `--nocapture` to see one
//! pass/fail line per criterion.

use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use braidcover::braid::{braid_relators, evaluate_braid, BraidWord};
use braidcover::covering::{verify_cube_failure, CoverGroupoid, DiskChainGroupoid};
use braidcover::groupoid::{conjugate_support_check, GroupoidFunctor};
use braidcover::invariants::{check_formula_consistency, operad_genus_additivity, rh_invariants};
use braidcover::operad::{
    act_on_configurations, act_on_surfaces, predicted_surface, sample_configuration,
    sample_valid_element, AffineMap, FramedDisksElement, SurfaceOperand, VALIDITY_TOLERANCE,
};
use braidcover::polygon::{
    classify_simple_twists, cover_equivalence_check, expected_classification, PolygonSurface,
};
use braidcover::ribbon::build_cover_ribbon;

fn report(number: usize, name: &str) {
    println!("acceptance criterion {number:02} ({name}): PASS");
}

#[test]
fn criterion_01_braid_relators_evaluate_to_identity() {
    let started = Instant::now();
    for n in 3..=8 {
        for d in 2..=6 {
            let cover = CoverGroupoid::new(n, d).unwrap();
            let assignment = cover.twist_assignment().unwrap();
            for relator in braid_relators(n).unwrap() {
                let evaluated = evaluate_braid(&relator, &assignment).unwrap();
                assert!(
                    evaluated.is_identity(),
                    "relator {} is not the identity on cover (n={n}, d={d})",
                    relator.render()
                );
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 10, "relator sweep took {elapsed:?}");
    report(1, "braid relations of lifts, 3<=n<=8, 2<=d<=6");
}

#[test]
fn criterion_02_twist_powers_are_nontrivial() {
    for n in 3..=8 {
        for d in 2..=6 {
            let cover = CoverGroupoid::new(n, d).unwrap();
            for i in 1..n {
                let twist = cover.lifted_twist(i).unwrap();
                let identity = GroupoidFunctor::identity(cover.groupoid().clone());
                let mut power = twist.clone();
                for m in 1..=12 {
                    let witness = power.difference_witness(&identity).unwrap();
                    assert!(
                        witness.is_some(),
                        "b{i}^{m} is the identity on cover (n={n}, d={d})"
                    );
                    power = twist.after(&power).unwrap();
                }
            }
        }
    }
    report(2, "nontriviality of twist powers up to 12");
}

#[test]
fn criterion_03_cubes_break_the_braid_relation() {
    for d in [2, 3, 4] {
        let outcome = verify_cube_failure(d).unwrap();
        assert!(
            outcome.all_passed(),
            "cube check failed for d={d}: {}",
            outcome.to_json()
        );
        let cube = outcome
            .checks
            .iter()
            .find(|c| c.name == "cube_relation_fails")
            .unwrap();
        assert!(cube.witness.is_some(), "missing witness for d={d}");
    }
    report(3, "cube powers fail the braid relation, first powers pass");
}

#[test]
fn criterion_04_ribbon_traversal_matches_riemann_hurwitz() {
    for n in 2..=10u64 {
        for d in 2..=8u64 {
            let ribbon = build_cover_ribbon(n as usize, d as usize).unwrap();
            let found = ribbon.surface_invariants().unwrap();
            let (g, k) = rh_invariants(d, n).unwrap();
            assert_eq!(
                (found.genus as u64, found.boundary as u64),
                (g, k),
                "keystone mismatch at (n={n}, d={d})"
            );
        }
    }
    let spot = |d: usize, n: usize| {
        let inv = build_cover_ribbon(n, d)
            .unwrap()
            .surface_invariants()
            .unwrap();
        (inv.genus, inv.boundary)
    };
    assert_eq!(spot(2, 3), (1, 1));
    assert_eq!(spot(3, 3), (1, 3));
    assert_eq!(spot(2, 4), (1, 2));
    report(4, "ribbon faces reproduce (g, k), 2<=n<=10, 2<=d<=8");
}

#[test]
fn criterion_05_genus_formulas_are_consistent() {
    for d in 2..=8 {
        for m in 1..=6 {
            check_formula_consistency(d, m).unwrap();
        }
    }
    report(5, "g(d,m) formula agrees with the gcd form");
}

#[test]
fn criterion_06_operad_genus_additivity() {
    let mut rng = ChaCha8Rng::seed_from_u64(602);
    for d in 2..=8u64 {
        for k in 1..=5usize {
            let mut parts = vec![1u64; k];
            loop {
                let (lhs, rhs) = operad_genus_additivity(d, &parts).unwrap();
                assert_eq!(lhs, rhs, "additivity fails at d={d}, parts={parts:?}");

                // the symbolic surface action must agree with the closed form
                let f = sample_valid_element(&mut rng, k);
                let operands: Vec<SurfaceOperand> = parts
                    .iter()
                    .map(|&m| predicted_surface(d, m).unwrap())
                    .collect();
                let glued = act_on_surfaces(&f, &operands).unwrap();
                let genus_sum: u64 = parts
                    .iter()
                    .map(|&m| braidcover::invariants::genus_dm(d, m).unwrap())
                    .sum();
                let closed_form = genus_sum + (k as u64 - 1) * (d - 1);
                assert_eq!(
                    glued,
                    SurfaceOperand::Surface {
                        genus: closed_form as usize,
                        boundary: d as usize
                    },
                    "surface action disagrees at d={d}, parts={parts:?}"
                );

                // odometer over {1..5}^k
                let mut carry = true;
                for slot in parts.iter_mut() {
                    if *slot < 5 {
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
    }
    report(6, "glued genus bookkeeping, exhaustive d<=8, k<=5, m_i<=5");
}

fn maps_close(a: &FramedDisksElement, b: &FramedDisksElement, tolerance: f64) -> bool {
    a.arity() == b.arity()
        && a.maps().iter().zip(b.maps()).all(|(x, y)| {
            (x.scale - y.scale).norm() <= tolerance && (x.offset - y.offset).norm() <= tolerance
        })
}

#[test]
fn criterion_07_operad_axioms() {
    let mut rng = ChaCha8Rng::seed_from_u64(700);
    for round in 0..120 {
        let k = rng.random_range(1..=4);
        let f = sample_valid_element(&mut rng, k);

        // unit laws
        let identities = vec![FramedDisksElement::identity(); k];
        assert!(maps_close(
            &f.compose(&identities).unwrap(),
            &f,
            VALIDITY_TOLERANCE
        ));
        assert!(maps_close(
            &FramedDisksElement::identity()
                .compose(std::slice::from_ref(&f))
                .unwrap(),
            &f,
            VALIDITY_TOLERANCE
        ));

        // associativity of substitution
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
        let left = f.compose(&middles).unwrap().compose(&flat).unwrap();
        let right = f
            .compose(
                &middles
                    .iter()
                    .zip(&inners)
                    .map(|(g, hs)| g.compose(hs).unwrap())
                    .collect::<Vec<_>>(),
            )
            .unwrap();
        assert!(left.is_valid(), "round {round}: composite invalid");
        assert!(
            maps_close(&left, &right, 1e-9),
            "round {round}: associativity off"
        );

        // configuration action: cardinalities add exactly
        let sizes: Vec<usize> = (0..k).map(|_| rng.random_range(0..=5)).collect();
        let configs: Vec<_> = sizes
            .iter()
            .map(|&s| sample_configuration(&mut rng, s))
            .collect();
        let merged = act_on_configurations(&f, &configs).unwrap();
        assert_eq!(merged.len(), sizes.iter().sum::<usize>());
    }
    report(
        7,
        "operad unit/associativity within 1e-9 over 120 seeded samples",
    );
}

#[test]
fn criterion_08_polygon_classification() {
    for h in 0..=4usize {
        for b in 1..=9usize {
            let d = 2 * h + b;
            if d > 9 || (h, b) == (0, 1) {
                continue;
            }
            let polygon = PolygonSurface::new(h, b).unwrap();
            let found = classify_simple_twists(h, b).unwrap();
            let expected = expected_classification(&polygon);
            assert_eq!(found, expected, "classification differs at (h,b)=({h},{b})");
            if b <= 2 {
                assert!(!found.is_empty());
            } else {
                assert!(found.is_empty());
            }
        }
    }
    report(
        8,
        "simple twists: two shifts iff b<=2, none for b>=3, 2h+b<=9",
    );
}

#[test]
fn criterion_09_cover_twist_equals_polygon_shift() {
    for d in 2..=9 {
        let outcome = cover_equivalence_check(d).unwrap();
        assert!(
            outcome.matches,
            "cover/polygon equivalence fails at d={d}: {:?}",
            outcome.mismatch
        );
    }
    report(
        9,
        "lifted twist over two points equals the polygon shift, 2<=d<=9",
    );
}

#[test]
fn criterion_10_projection_and_deck_equivariance() {
    for n in 2..=8usize {
        for d in 1..=6usize {
            let cover = CoverGroupoid::new(n, d).unwrap();
            let base = DiskChainGroupoid::new(n).unwrap();
            let projection = cover.projection(&base).unwrap();
            for i in 1..n {
                let lifted = cover.lifted_twist(i).unwrap();
                let half = base.half_twist(i).unwrap();
                for o in cover.groupoid().object_ids() {
                    assert_eq!(
                        projection.apply_object(lifted.apply_object(o)),
                        half.apply_object(projection.apply_object(o)),
                        "object equivariance fails at (n={n}, d={d}, i={i})"
                    );
                }
                for e in cover.groupoid().edge_ids() {
                    assert_eq!(
                        projection.apply_word(lifted.edge_image(e)),
                        half.apply_word(projection.edge_image(e)),
                        "projection equivariance fails at (n={n}, d={d}, i={i})"
                    );
                }
                for s in 0..d {
                    let deck = cover.deck(s).unwrap();
                    let left = deck.after(&lifted).unwrap();
                    let right = lifted.after(&deck).unwrap();
                    assert!(
                        left.equals(&right).unwrap(),
                        "deck equivariance fails at (n={n}, d={d}, i={i}, s={s})"
                    );
                }
            }
        }
    }
    report(10, "projection and deck equivariance on 2<=n<=8, 1<=d<=6");
}

#[test]
fn criterion_11_conjugation_transports_supports() {
    let mut rng = ChaCha8Rng::seed_from_u64(1101);
    let mut checked = 0usize;

    // covers: random twist-word functors against deck maps composed with
    // sheet permutations and the occasional chain flip
    while checked < 120 {
        let n = rng.random_range(3..=5);
        let d = rng.random_range(2..=4);
        let cover = CoverGroupoid::new(n, d).unwrap();
        let assignment = cover.twist_assignment().unwrap();
        let length = rng.random_range(0..=8);
        let letters = (0..length)
            .map(|_| {
                let index = rng.random_range(1..n);
                if rng.random_bool(0.5) {
                    braidcover::braid::BraidLetter::positive(index)
                } else {
                    braidcover::braid::BraidLetter::negative(index)
                }
            })
            .collect();
        let f = evaluate_braid(&BraidWord::new(n, letters).unwrap(), &assignment).unwrap();

        let flip = rng.random_bool(0.3);
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
        let h = cover.sheet_relabeling(&perms, flip).unwrap();
        assert!(
            conjugate_support_check(&f, &h).unwrap(),
            "cover pair {checked} fails"
        );
        checked += 1;
    }

    // polygons: shift-twist words against forward and sign-flip relabelings
    while checked < 240 {
        let h_genus = rng.random_range(0..=3);
        let b = rng.random_range(1..=3);
        if (h_genus, b) == (0, 1) {
            continue;
        }
        let polygon = PolygonSurface::new(h_genus, b).unwrap();
        let d = polygon.edge_count();
        let g = polygon.groupoid();
        let mut f = GroupoidFunctor::identity(g.clone());
        for _ in 0..rng.random_range(1..=4) {
            let dir = if rng.random_bool(0.5) {
                braidcover::polygon::TwistDirection::Positive
            } else {
                braidcover::polygon::TwistDirection::Negative
            };
            f = braidcover::polygon::shift_twist(&polygon, dir)
                .into_functor()
                .after(&f)
                .unwrap();
        }
        let mut sigma: Vec<usize> = Vec::with_capacity(d);
        let mut items: Vec<usize> = (0..d).collect();
        for remaining in (1..=d).rev() {
            sigma.push(items.remove(rng.random_range(0..remaining)));
        }
        let h = if rng.random_bool(0.5) {
            braidcover::polygon::signed_edge_functor(&polygon, &sigma).unwrap()
        } else {
            braidcover::polygon::edge_relabeling(&polygon, &sigma).unwrap()
        };
        assert!(
            conjugate_support_check(&f, &h).unwrap(),
            "polygon pair {checked} fails"
        );
        checked += 1;
    }

    assert!(checked >= 200);
    report(11, "support transport under conjugation, 240 seeded pairs");
}

#[test]
fn operad_identity_element_sanity() {
    // anchor for the tolerance convention: the identity is exactly valid
    let id = FramedDisksElement::identity();
    assert!(id.is_valid());
    assert_eq!(id.maps()[0], AffineMap::identity());
}
