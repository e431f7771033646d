//! Closed-form weighted-sum and minimax completion-time optimization.

use crate::capacity::{corner_points, ChannelConfig, RatePair};
use crate::completion::{
    case_boundaries, classify_case, map_rate_to_ct, minimax_value, point_c_for_case, Branch, CaseKind,
    CompletionTimePair, TrafficLoad,
};
use crate::error::{invalid, Error, Result};
use crate::Scalar;

/// Candidate rate points of the weighted-sum problem.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum RatePoint {
    A,
    B,
    C,
}

impl RatePoint {
    pub fn name(self) -> &'static str {
        match self {
            RatePoint::A => "A",
            RatePoint::B => "B",
            RatePoint::C => "C",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Thresholds<T> {
    /// Weight where `B` and the left candidate tie in the first sub-region.
    pub w1: T,
    /// Weight where `A` and the right candidate tie in the second sub-region.
    pub w2: T,
    /// `tau1 / (tau1 + tau2)`
    pub w3: T,
}

pub fn thresholds<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> Thresholds<T> {
    let g12 = cfg.gamma_sum();
    Thresholds {
        w1: (g12 - cfg.gamma2()) / g12,
        w2: cfg.gamma1() / g12,
        w3: load.tau1 / (load.tau1 + load.tau2),
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WeightedSumSolution<T> {
    pub weight: T,
    pub case: CaseKind,
    pub optimal_value: T,
    pub optimizer_point: CompletionTimePair<T>,
    pub rate_point: RatePoint,
    pub branch: Branch,
    /// The weight sits on a threshold where two different cells give the
    /// same value; the closed-interval cell was returned.
    pub tie: bool,
}

impl<T: Scalar> WeightedSumSolution<T> {
    /// Human-readable table cell, e.g. `Case II, D2(A)`.
    pub fn cell(&self) -> String {
        format!(
            "Case {}, D{}({})",
            self.case.roman(),
            self.branch.index(),
            self.rate_point.name()
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MinimaxSolution<T> {
    pub case: CaseKind,
    pub value: T,
    pub point: CompletionTimePair<T>,
}

fn check_weight<T: Scalar>(w: T) -> Result<()> {
    if !w.is_finite() || w < T::zero() || w > T::one() {
        return Err(invalid("weight", "must lie in [0, 1]", w));
    }
    Ok(())
}

fn at_threshold<T: Scalar>(w: T, threshold: T) -> bool {
    (w - threshold).abs() <= T::lit(1e-12).max(T::epsilon() * T::lit(4.0))
}

/// Weighted-sum objective of the branch map, as a function of the rate
/// point it is evaluated at.
pub fn objective_d<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    branch: Branch,
    w: T,
    r: RatePair<T>,
) -> Result<T> {
    check_weight(w)?;
    let wb = T::one() - w;
    let TrafficLoad { tau1, tau2 } = *load;
    match branch {
        Branch::One => {
            if r.r1 <= T::zero() {
                return Err(Error::ZeroDivisor { component: 1 });
            }
            let g2 = cfg.gamma2();
            Ok(wb * tau2 / g2 + tau1 * (g2 - wb * r.r2) / (g2 * r.r1))
        }
        Branch::Two => {
            if r.r2 <= T::zero() {
                return Err(Error::ZeroDivisor { component: 2 });
            }
            let g1 = cfg.gamma1();
            Ok(w * tau1 / g1 + tau2 * (g1 - w * r.r1) / (g1 * r.r2))
        }
    }
}

fn rate_point_for_case<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    case: CaseKind,
    which: RatePoint,
) -> RatePair<T> {
    let (a, b) = corner_points(cfg);
    match which {
        RatePoint::A => a,
        RatePoint::B => b,
        RatePoint::C => point_c_for_case(cfg, load, case),
    }
}

/// Optimal rate point inside one sub-region. Returns the point and whether
/// the weight is a genuine tie between two different cells.
fn subregion_cell<T: Scalar>(case: CaseKind, branch: Branch, w: T, th: &Thresholds<T>) -> (RatePoint, bool) {
    use CaseKind::*;
    use RatePoint::*;
    let (threshold, low, high) = match (branch, case) {
        (Branch::One, CaseI) => (th.w1, C, C),
        (Branch::One, CaseII) => (th.w1, C, B),
        (Branch::One, CaseIII) => (th.w1, A, B),
        (Branch::Two, CaseI) => (th.w2, A, B),
        (Branch::Two, CaseII) => (th.w2, A, C),
        (Branch::Two, CaseIII) => (th.w2, C, C),
    };
    let tie = low != high && at_threshold(w, threshold);
    if w <= threshold || tie {
        (low, tie)
    } else {
        (high, false)
    }
}

/// Optimal cell over the whole region.
fn full_region_cell<T: Scalar>(case: CaseKind, w: T, th: &Thresholds<T>) -> (Branch, RatePoint, bool) {
    let (threshold, low, high) = match case {
        CaseKind::CaseI => (th.w2, (Branch::Two, RatePoint::A), (Branch::Two, RatePoint::B)),
        CaseKind::CaseII => (th.w3, (Branch::Two, RatePoint::A), (Branch::One, RatePoint::B)),
        CaseKind::CaseIII => (th.w1, (Branch::One, RatePoint::A), (Branch::One, RatePoint::B)),
    };
    let tie = at_threshold(w, threshold);
    if w <= threshold || tie {
        (low.0, low.1, tie)
    } else {
        (high.0, high.1, false)
    }
}

/// The other case when the instance sits on a case boundary.
fn adjacent_case<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> Option<CaseKind> {
    let (lo, hi) = case_boundaries(cfg);
    let ratio = load.ratio();
    let near = |b: T| (ratio - b).abs() <= T::lit(1e-12) * b;
    match classify_case(cfg, load) {
        CaseKind::CaseI if near(lo) => Some(CaseKind::CaseII),
        CaseKind::CaseII if near(lo) => Some(CaseKind::CaseI),
        CaseKind::CaseII if near(hi) => Some(CaseKind::CaseIII),
        CaseKind::CaseIII if near(hi) => Some(CaseKind::CaseII),
        _ => None,
    }
}

fn evaluate<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    case: CaseKind,
    branch: Branch,
    which: RatePoint,
    w: T,
    tie: bool,
) -> Result<WeightedSumSolution<T>> {
    let r = rate_point_for_case(cfg, load, case, which);
    let d = map_rate_to_ct(cfg, load, branch, r)?;
    Ok(WeightedSumSolution {
        weight: w,
        case,
        optimal_value: w * d.d1 + (T::one() - w) * d.d2,
        optimizer_point: d,
        rate_point: which,
        branch,
        tie,
    })
}

fn cross_check<T: Scalar>(
    primary: WeightedSumSolution<T>,
    other: Option<WeightedSumSolution<T>>,
) -> Result<WeightedSumSolution<T>> {
    if let Some(o) = other {
        let scale = primary.optimal_value.abs().max(T::one());
        if (o.optimal_value - primary.optimal_value).abs() > T::lit(1e-9) * scale {
            return Err(Error::Inconsistent(format!(
                "case-boundary instance: {} gives {} but {} gives {}",
                primary.cell(),
                primary.optimal_value,
                o.cell(),
                o.optimal_value
            )));
        }
    }
    Ok(primary)
}

/// Minimum of `w d1 + (1 - w) d2` over one sub-region.
pub fn minimize_subregion<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    branch: Branch,
    w: T,
) -> Result<WeightedSumSolution<T>> {
    check_weight(w)?;
    let th = thresholds(cfg, load);
    let solve = |case| {
        let (which, tie) = subregion_cell(case, branch, w, &th);
        evaluate(cfg, load, case, branch, which, w, tie)
    };
    let primary = solve(classify_case(cfg, load))?;
    let other = adjacent_case(cfg, load).map(solve).transpose()?;
    cross_check(primary, other)
}

/// Minimum of `w d1 + (1 - w) d2` over the whole completion-time region.
/// The optimum is always the image of corner `A` or `B`.
pub fn minimize_weighted_sum<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    w: T,
) -> Result<WeightedSumSolution<T>> {
    check_weight(w)?;
    let th = thresholds(cfg, load);
    let solve = |case| {
        let (branch, which, tie) = full_region_cell(case, w, &th);
        evaluate(cfg, load, case, branch, which, w, tie)
    };
    let primary = solve(classify_case(cfg, load))?;
    let other = adjacent_case(cfg, load).map(solve).transpose()?;
    cross_check(primary, other)
}

/// Minimum of `max(d1, d2)`, attained at the equal-component point `C_bar`.
pub fn minimax<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> MinimaxSolution<T> {
    let m = minimax_value(cfg, load);
    MinimaxSolution {
        case: classify_case(cfg, load),
        value: m,
        point: CompletionTimePair { d1: m, d2: m },
    }
}
