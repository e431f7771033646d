#![allow(dead_code)]

use ctregion::{case_boundaries, classify_case, CaseKind, ChannelConfig, TrafficLoad};
use rand::Rng;

pub const TOL: f64 = 1e-9;

pub fn cfg(p1: f64, p2: f64) -> ChannelConfig<f64> {
    ChannelConfig::new(p1, p2).unwrap()
}

pub fn load(t1: f64, t2: f64) -> TrafficLoad<f64> {
    TrafficLoad::new(t1, t2).unwrap()
}

/// Random channel and load whose traffic ratio falls strictly inside `case`.
pub fn instance_in_case<R: Rng>(rng: &mut R, case: CaseKind) -> (ChannelConfig<f64>, TrafficLoad<f64>) {
    let c = cfg(10f64.powf(rng.gen_range(-1.0..2.0)), 10f64.powf(rng.gen_range(-1.0..2.0)));
    let (lo, hi) = case_boundaries(&c);
    let ratio = match case {
        CaseKind::CaseI => lo * rng.gen_range(0.05..0.95),
        CaseKind::CaseII => lo + (hi - lo) * rng.gen_range(0.05..0.95),
        CaseKind::CaseIII => hi * rng.gen_range(1.05..8.0),
    };
    let tau1 = rng.gen_range(0.2..3.0);
    let l = load(tau1, tau1 * ratio);
    assert_eq!(classify_case(&c, &l), case);
    (c, l)
}

pub const CASES: [CaseKind; 3] = [CaseKind::CaseI, CaseKind::CaseII, CaseKind::CaseIII];
