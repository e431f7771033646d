//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use ctregion::completion::{LABEL_A_BAR, LABEL_A_BAR_PRIME, LABEL_B_BAR, LABEL_B_BAR_PRIME, LABEL_C_BAR};
use ctregion::{
    build_region, case_boundaries, classify_case, constrained_contains, ct_contains, ct_contains_point,
    dominant_extreme_points, gamma, minimax, minimize_subregion, minimize_weighted_sum, objective_d,
    oracle_minimax, oracle_region_equivalence, standard_capacity_region, synthesize, transform_contains, validate,
    Branch, CaseKind, ChannelConfig, CompletionTimePair, ConstrainedRateQuery, FeasibleGrid, GridSpec, Point,
    RatePair, TrafficLoad,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Membership tolerance used throughout.
const EPS_MEM: f64 = 1e-9;
/// Points this close to a piece boundary are exempt from the equivalence check.
const EPS_BOUNDARY: f64 = 1e-6;
/// Floating-point allowance on either side of an oracle bracket.
const BRACKET_SLACK: f64 = 1e-12;
/// Allowed excess of a sub-region optimum over the best extreme point.
const EXTREME_POINT_SLACK: f64 = 1e-12;
/// Closed-form reference values are checked to this.
const CLOSED_FORM_TOL: f64 = 1e-6;
/// The weighted-sum reference value against the grid oracle.
const ORACLE_REFERENCE_TOL: f64 = 2e-3;
/// Bit conservation and phase-rate tightness.
const SCHEDULE_TOL: f64 = 1e-9;

const MEMBERSHIP_SAMPLES: usize = 100_000;
const EQUIVALENCE_INSTANCES: usize = 21;
const EQUIVALENCE_RESOLUTION: usize = 500;
const ORACLE_RESOLUTION: usize = 2001;
const PAIRS_PER_INSTANCE: usize = 1000;
const WEIGHTS_PER_BRANCH: usize = 50;

const CASES: [CaseKind; 3] = [CaseKind::CaseI, CaseKind::CaseII, CaseKind::CaseIII];

struct Outcome {
    passed: bool,
    detail: String,
    budget: Duration,
}

fn outcome(passed: bool, detail: impl Into<String>, budget_secs: u64) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
        budget: Duration::from_secs(budget_secs),
    }
}

fn cfg(p1: f64, p2: f64) -> ChannelConfig<f64> {
    ChannelConfig::new(p1, p2).unwrap()
}

fn load(t1: f64, t2: f64) -> TrafficLoad<f64> {
    TrafficLoad::new(t1, t2).unwrap()
}

fn log_uniform<R: Rng>(rng: &mut R, lo: f64, hi: f64) -> f64 {
    (rng.gen_range(lo.ln()..hi.ln())).exp()
}

fn instance_in_case<R: Rng>(rng: &mut R, case: CaseKind) -> (ChannelConfig<f64>, TrafficLoad<f64>) {
    let c = cfg(log_uniform(rng, 0.1, 100.0), log_uniform(rng, 0.1, 100.0));
    let (lo, hi) = case_boundaries(&c);
    let ratio = match case {
        CaseKind::CaseI => lo * rng.gen_range(0.05..0.95),
        CaseKind::CaseII => lo + (hi - lo) * rng.gen_range(0.05..0.95),
        CaseKind::CaseIII => hi * rng.gen_range(1.05..8.0),
    };
    let tau1 = rng.gen_range(0.2..3.0);
    (c, load(tau1, tau1 * ratio))
}

/// The three reference families: P = (3, 3) with traffic ratios 0.2, 1, 5.
fn families() -> [(ChannelConfig<f64>, TrafficLoad<f64>); 3] {
    [(1.0, 0.2), (1.0, 1.0), (1.0, 5.0)].map(|(t1, t2)| (cfg(3.0, 3.0), load(t1, t2)))
}

fn sample_member<R: Rng>(rng: &mut R, c: &ChannelConfig<f64>, l: &TrafficLoad<f64>) -> CompletionTimePair<f64> {
    let hi = 4.0 * build_region(c, l).minimax_point.x;
    loop {
        let d = CompletionTimePair::new(rng.gen_range(1e-3..hi), rng.gen_range(1e-3..hi)).unwrap();
        if ct_contains(c, l, &d, EPS_MEM) {
            return d;
        }
    }
}

fn criterion_1() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let (mut disagreements, mut members) = (0, 0);
    for _ in 0..MEMBERSHIP_SAMPLES {
        let c = cfg(rng.gen_range(0.1..100.0), rng.gen_range(0.1..100.0));
        let rates = RatePair::new(log_uniform(&mut rng, 0.05, 20.0), log_uniform(&mut rng, 0.05, 20.0)).unwrap();
        let q = ConstrainedRateQuery::new(rates, log_uniform(&mut rng, 0.05, 20.0)).unwrap();
        let direct = constrained_contains(&c, &q, EPS_MEM);
        members += direct as usize;
        disagreements += (direct != transform_contains(&c, &q, EPS_MEM)) as usize;
    }
    outcome(
        disagreements == 0 && members > 0,
        format!("{disagreements} disagreements in {MEMBERSHIP_SAMPLES} samples ({members} members)"),
        5,
    )
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut bad_instances = 0;
    let mut seen = [0usize; 3];
    for k in 0..EQUIVALENCE_INSTANCES {
        let (c, l) = instance_in_case(&mut rng, CASES[k % 3]);
        seen[k % 3] += (classify_case(&c, &l) == CASES[k % 3]) as usize;
        let spec = GridSpec::equivalence_for(&c, &l, EQUIVALENCE_RESOLUTION).unwrap();
        let region = build_region(&c, &l);
        let bad = ctregion::region_disagreements(&c, &l, &region, &spec, EPS_BOUNDARY);
        debug_assert_eq!(bad.len(), oracle_region_equivalence(&c, &l, &spec).len());
        bad_instances += !bad.is_empty() as usize;
    }
    outcome(
        bad_instances == 0 && seen.iter().all(|&n| n > 0),
        format!(
            "{bad_instances} of {EQUIVALENCE_INSTANCES} instances disagree on {EQUIVALENCE_RESOLUTION}^2 grids; per case {seen:?}"
        ),
        30,
    )
}

fn criterion_3() -> Outcome {
    let mut failures = Vec::new();
    for (c, l) in families() {
        let grid = FeasibleGrid::sweep(&c, &l, GridSpec::default_for(&c, &l, ORACLE_RESOLUTION).unwrap());
        for k in 0..=20 {
            let w = k as f64 / 20.0;
            let closed = minimize_weighted_sum(&c, &l, w).unwrap();
            let report = grid.weighted_min(w).unwrap();
            if !report.brackets(closed.optimal_value, BRACKET_SLACK) {
                failures.push(format!("tau2={} w={w}", l.tau2));
            }
        }
    }
    let (c, l) = (cfg(3.0, 3.0), load(1.0, 1.0));
    let reference = minimize_weighted_sum(&c, &l, 0.2).unwrap().optimal_value;
    let oracle = FeasibleGrid::sweep(&c, &l, GridSpec::default_for(&c, &l, ORACLE_RESOLUTION).unwrap())
        .weighted_min(0.2)
        .unwrap()
        .optimum_value;
    let reference_ok =
        (reference - 1.119_265).abs() <= CLOSED_FORM_TOL && (oracle - reference).abs() <= ORACLE_REFERENCE_TOL;
    outcome(
        failures.is_empty() && reference_ok,
        format!(
            "63 weight/instance pairs, {} outside bracket; reference {reference:.9} vs oracle {oracle:.9}",
            failures.len()
        ),
        120,
    )
}

fn criterion_4() -> Outcome {
    let two_over_g12 = 2.0 / gamma(6.0).unwrap();
    let mut ok = true;
    let mut values = Vec::new();
    for ((t1, t2), expected) in [((1.0, 1.0), two_over_g12), ((1.0, 0.2), 1.0), ((0.2, 1.0), 1.0)] {
        let (c, l) = (cfg(3.0, 3.0), load(t1, t2));
        let closed = minimax(&c, &l).value;
        let report = oracle_minimax(&c, &l, &GridSpec::default_for(&c, &l, ORACLE_RESOLUTION).unwrap()).unwrap();
        ok &= (closed - expected).abs() <= CLOSED_FORM_TOL && report.brackets(closed, BRACKET_SLACK);
        values.push(format!("{closed:.6}"));
    }
    outcome(ok, format!("values {}", values.join(", ")), 60)
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut instances: Vec<_> = families().to_vec();
    for case in CASES {
        instances.push(instance_in_case(&mut rng, case));
    }
    let mut failures = 0;
    for (c, l) in &instances {
        let mut done = 0;
        while done < PAIRS_PER_INSTANCE {
            let (d, e) = (sample_member(&mut rng, c, l), sample_member(&mut rng, c, l));
            if d.branch() != e.branch() {
                continue;
            }
            done += 1;
            let a: f64 = rng.gen_range(0.0..=1.0);
            let mid = Point::new(a * d.d1 + (1.0 - a) * e.d1, a * d.d2 + (1.0 - a) * e.d2);
            failures += !ct_contains_point(c, l, mid, EPS_MEM) as usize;
        }
    }
    outcome(
        failures == 0,
        format!("{failures} failures over {} instances x {PAIRS_PER_INSTANCE} pairs", instances.len()),
        10,
    )
}

fn criterion_6() -> Outcome {
    let (c, l) = (cfg(3.0, 3.0), load(1.0, 1.0));
    let region = build_region(&c, &l);
    let (a, b) = (region.vertex(LABEL_A_BAR).unwrap(), region.vertex(LABEL_B_BAR_PRIME).unwrap());
    let mid = Point::new((a.x + b.x) / 2.0, (a.y + b.y) / 2.0);
    let ends_member = ct_contains_point(&c, &l, a, EPS_MEM) && ct_contains_point(&c, &l, b, EPS_MEM);
    let at_expected = (mid.x - 1.298_161).abs() <= CLOSED_FORM_TOL && (mid.y - 1.298_161).abs() <= CLOSED_FORM_TOL;
    let excluded = !ct_contains_point(&c, &l, mid, EPS_MEM) && 2.0 / mid.x > c.gamma_sum();
    outcome(
        ends_member && at_expected && excluded,
        format!("midpoint ({:.6}, {:.6}) rejected: {excluded}", mid.x, mid.y),
        1,
    )
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut instances: Vec<_> = families().to_vec();
    for case in CASES {
        instances.push(instance_in_case(&mut rng, case));
    }
    let mut invalid = 0;
    let mut loose_vertices = 0;
    for (c, l) in &instances {
        for _ in 0..PAIRS_PER_INSTANCE {
            let d = sample_member(&mut rng, c, l);
            let ok = synthesize(c, l, d, EPS_MEM).is_ok_and(|s| validate(c, l, &s, SCHEDULE_TOL).passed());
            invalid += !ok as usize;
        }
        let faces = standard_capacity_region(c).halfplanes;
        let region = build_region(c, l);
        for label in [LABEL_A_BAR, LABEL_B_BAR, LABEL_C_BAR, LABEL_A_BAR_PRIME, LABEL_B_BAR_PRIME] {
            let Some(v) = region.vertex(label) else { continue };
            let Ok(s) = synthesize(c, l, CompletionTimePair::from_point(v).unwrap(), EPS_MEM) else {
                loose_vertices += 1;
                continue;
            };
            let shared = s.phases[0].rates.as_point();
            let tight = faces.iter().filter(|h| h.c != 0.0).any(|h| h.slack(shared).abs() <= SCHEDULE_TOL);
            let solo_tight = s.phases[1..].iter().all(|p| {
                let u = p.active.users()[0];
                (p.rates.get(u) - c.single_user_rate(u)).abs() <= SCHEDULE_TOL
            });
            loose_vertices += !(tight && solo_tight) as usize;
        }
    }
    outcome(
        invalid == 0 && loose_vertices == 0,
        format!(
            "{invalid} invalid schedules over {} instances x {PAIRS_PER_INSTANCE}; {loose_vertices} non-tight vertices",
            instances.len()
        ),
        10,
    )
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut instances: Vec<_> = families().to_vec();
    for case in CASES {
        instances.push(instance_in_case(&mut rng, case));
    }
    let (mut worst, mut checks) = (f64::NEG_INFINITY, 0);
    for (c, l) in &instances {
        for branch in [Branch::One, Branch::Two] {
            let points = dominant_extreme_points(c, l, branch);
            for _ in 0..WEIGHTS_PER_BRANCH {
                let w = rng.gen_range(0.0..=1.0);
                let best = points
                    .iter()
                    .filter_map(|r| objective_d(c, l, branch, w, *r).ok())
                    .fold(f64::INFINITY, f64::min);
                let sol = minimize_subregion(c, l, branch, w).unwrap();
                worst = worst.max(sol.optimal_value - best);
                checks += 1;
            }
        }
    }
    outcome(
        worst <= EXTREME_POINT_SLACK,
        format!("{checks} checks, worst excess {worst:.3e}"),
        5,
    )
}

fn criterion_9() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_ctregion");
    let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let mut mismatches = Vec::new();
    let outputs: [(&str, &[&str]); 4] = [
        ("region.json", &["region"]),
        ("region.csv", &["region", "--csv"]),
        ("minimax.json", &["minimize", "--minimax"]),
        ("weight-0.2.json", &["minimize", "--weight", "0.2"]),
    ];
    for name in ["balanced", "user1_heavy", "user2_heavy"] {
        let toml = golden.join(format!("{name}.toml"));
        for (suffix, args) in outputs {
            let out = Command::new(bin)
                .args(args)
                .args(["--scenario", toml.to_str().unwrap()])
                .output()
                .unwrap();
            let want = std::fs::read(golden.join(format!("{name}.{suffix}"))).unwrap_or_default();
            if !out.status.success() || out.stdout != want {
                mismatches.push(format!("{name}.{suffix}"));
            }
        }
    }
    let reference = ["--p1", "3", "--p2", "3", "--tau1", "1", "--tau2", "1"];
    let matrix: [(&[&str], i32); 8] = [
        (&["check", "10", "10"], 0),
        (&["check", "1.3", "1.3"], 1),
        (&["check", "-1", "1"], 2),
        (&["minimize", "--weight", "0.2", "--verify", "--grid", "401"], 0),
        (&["minimize", "--weight", "-0.1"], 2),
        (&["schedule", "1.596323", "1"], 0),
        (&["schedule", "1.3", "1.3"], 1),
        (&["region", "--tau1", "0"], 2),
    ];
    let mut wrong_codes = Vec::new();
    for (args, expected) in matrix {
        let code = Command::new(bin).args(reference).args(args).output().unwrap().status.code();
        if code != Some(expected) {
            wrong_codes.push(format!("{args:?} -> {code:?}"));
        }
    }
    outcome(
        mismatches.is_empty() && wrong_codes.is_empty(),
        format!("golden mismatches {mismatches:?}; exit-code mismatches {wrong_codes:?}"),
        30,
    )
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("closed-form constrained membership matches clamp transform", criterion_1),
        ("region pieces match definitional membership", criterion_2),
        ("weighted-sum optimum inside oracle bracket", criterion_3),
        ("minimax optimum inside oracle bracket", criterion_4),
        ("each sub-region is convex", criterion_5),
        ("union is not convex (balanced witness)", criterion_6),
        ("synthesized schedules validate and are tight at vertices", criterion_7),
        ("sub-region optimum equals best dominant extreme point", criterion_8),
        ("CLI golden files and exit codes", criterion_9),
    ];
    let mut all_passed = true;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let elapsed = start.elapsed();
        let in_time = elapsed <= o.budget;
        let passed = o.passed && in_time;
        all_passed &= passed;
        println!(
            "criterion {} {}: {name} | {} | {:.2}s (budget {}s)",
            k + 1,
            if passed { "PASS" } else { "FAIL" },
            o.detail,
            elapsed.as_secs_f64(),
            o.budget.as_secs()
        );
    }
    if all_passed {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
