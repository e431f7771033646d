mod common;

use common::*;
use ctregion::geometry::ConvexPiece;
use ctregion::{
    build_region, ct_contains_point, oracle_region_equivalence, region_disagreements, Branch, GridSpec, Point,
    RegionDescription, RegionPiece,
};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn union_matches_definition_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for k in 0..21 {
        let (c, l) = instance_in_case(&mut rng, CASES[k % 3]);
        let spec = GridSpec::equivalence_for(&c, &l, 500).unwrap();
        let bad = oracle_region_equivalence(&c, &l, &spec);
        assert!(bad.is_empty(), "instance {k}: {} disagreements, first {:?}", bad.len(), bad[0]);
    }
}

#[test]
fn reference_instances_match_definition() {
    for (t1, t2) in [(1.0, 1.0), (1.0, 0.2), (0.2, 1.0)] {
        let (c, l) = (cfg(3.0, 3.0), load(t1, t2));
        let spec = GridSpec::equivalence_for(&c, &l, 500).unwrap();
        assert!(oracle_region_equivalence(&c, &l, &spec).is_empty());
    }
}

/// Requiring both sum-rate faces everywhere (intersection instead of union)
/// is a tempting misreading. The harness must catch it.
#[test]
fn conjunctive_reading_is_detected() {
    let (c, l) = (cfg(3.0, 3.0), load(1.0, 1.0));
    let region = build_region(&c, &l);
    let mut all = Vec::new();
    for rp in &region.pieces {
        for h in &rp.piece.halfplanes {
            // keep the sum faces and floors, drop the diagonal splits
            if h.c != 0.0 && !all.contains(h) {
                all.push(*h);
            }
        }
    }
    let wrong = RegionDescription {
        pieces: vec![RegionPiece {
            sub_region: Branch::One,
            piece: ConvexPiece::new(all),
        }],
        ..region
    };
    let spec = GridSpec::new(500, Point::new(0.5, 0.5), Point::new(4.0, 4.0)).unwrap();
    let bad = region_disagreements(&c, &l, &wrong, &spec, 1e-6);
    assert!(!bad.is_empty());
    let witness = Point::new(1.9, 1.05);
    assert!(ct_contains_point(&c, &l, witness, TOL));
    assert!(!wrong.contains(witness, TOL));
    assert!(bad.iter().any(|p| (p.x - 1.9).abs() < 0.05 && (p.y - 1.05).abs() < 0.05));
}
