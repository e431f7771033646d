//! The completion-time region.
//!
//! A completion-time pair `(d1, d2)` is achievable iff the constrained rates
//! `(tau1/d1, tau2/d2)` are achievable at ratio `c = d1/d2`. The region is
//! the union of two convex pieces split by the diagonal `d1 = d2`, and can
//! be non-convex as a whole.

use crate::capacity::{corner_points, ChannelConfig, RatePair};
use crate::constrained::{constrained_contains, constraint_slacks, ConstrainedRateQuery, RateSlacks};
use crate::error::{invalid, Error, Result};
use crate::geometry::{ConvexPiece, HalfPlane, Point};
use crate::Scalar;

/// Bits per source unit that each user must deliver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrafficLoad<T> {
    pub tau1: T,
    pub tau2: T,
}

impl<T: Scalar> TrafficLoad<T> {
    pub fn new(tau1: T, tau2: T) -> Result<Self> {
        for (field, t) in [("tau1", tau1), ("tau2", tau2)] {
            if !t.is_finite() || t <= T::zero() {
                return Err(invalid(field, "must be positive and finite", t));
            }
        }
        Ok(TrafficLoad { tau1, tau2 })
    }

    /// Scales both loads by `lambda`.
    pub fn scaled(&self, lambda: T) -> Result<Self> {
        Self::new(self.tau1 * lambda, self.tau2 * lambda)
    }

    pub fn ratio(&self) -> T {
        self.tau2 / self.tau1
    }
}

/// Normalized completion times: channel uses per source unit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CompletionTimePair<T> {
    pub d1: T,
    pub d2: T,
}

impl<T: Scalar> CompletionTimePair<T> {
    pub fn new(d1: T, d2: T) -> Result<Self> {
        for (field, d) in [("d1", d1), ("d2", d2)] {
            if !d.is_finite() || d <= T::zero() {
                return Err(invalid(field, "must be positive and finite", d));
            }
        }
        Ok(CompletionTimePair { d1, d2 })
    }

    pub fn as_point(&self) -> Point<T> {
        Point::new(self.d1, self.d2)
    }

    pub fn from_point(p: Point<T>) -> Result<Self> {
        Self::new(p.x, p.y)
    }

    /// The sub-region the pair belongs to; the diagonal goes to the first.
    pub fn branch(&self) -> Branch {
        if self.d1 <= self.d2 {
            Branch::One
        } else {
            Branch::Two
        }
    }
}

/// Position of the demand ray `r2/r1 = tau2/tau1` against the pentagon.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseKind {
    /// The ray leaves through the user-1 face `r1 = gamma(P1)`.
    CaseI,
    /// The ray leaves through the sum-rate face.
    CaseII,
    /// The ray leaves through the user-2 face `r2 = gamma(P2)`.
    CaseIII,
}

impl CaseKind {
    pub fn roman(self) -> &'static str {
        match self {
            CaseKind::CaseI => "I",
            CaseKind::CaseII => "II",
            CaseKind::CaseIII => "III",
        }
    }
}

/// Sub-region index: `One` is `d1 <= d2` (user 1 finishes first), `Two` is
/// `d1 >= d2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    One,
    Two,
}

impl Branch {
    pub fn index(self) -> usize {
        match self {
            Branch::One => 1,
            Branch::Two => 2,
        }
    }

    pub fn from_index(i: usize) -> Result<Branch> {
        match i {
            1 => Ok(Branch::One),
            2 => Ok(Branch::Two),
            other => Err(Error::InvalidUser(other)),
        }
    }
}

/// Ratio thresholds on `tau2/tau1` separating the three cases.
pub fn case_boundaries<T: Scalar>(cfg: &ChannelConfig<T>) -> (T, T) {
    let (g1, g2, g12) = (cfg.gamma1(), cfg.gamma2(), cfg.gamma_sum());
    ((g12 - g1) / g1, g2 / (g12 - g2))
}

pub fn classify_case<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> CaseKind {
    let (lo, hi) = case_boundaries(cfg);
    let ratio = load.ratio();
    if ratio <= lo {
        CaseKind::CaseI
    } else if ratio >= hi {
        CaseKind::CaseIII
    } else {
        CaseKind::CaseII
    }
}

/// Point `C` evaluated with the formula of a given case, regardless of
/// which case the instance is in.
pub fn point_c_for_case<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>, case: CaseKind) -> RatePair<T> {
    let TrafficLoad { tau1, tau2 } = *load;
    match case {
        CaseKind::CaseI => RatePair {
            r1: cfg.gamma1(),
            r2: tau2 / tau1 * cfg.gamma1(),
        },
        CaseKind::CaseII => {
            let total = tau1 + tau2;
            RatePair {
                r1: tau1 / total * cfg.gamma_sum(),
                r2: tau2 / total * cfg.gamma_sum(),
            }
        }
        CaseKind::CaseIII => RatePair {
            r1: tau1 / tau2 * cfg.gamma2(),
            r2: cfg.gamma2(),
        },
    }
}

/// Where the demand ray `r2/r1 = tau2/tau1` exits the pentagon.
pub fn point_c<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> RatePair<T> {
    point_c_for_case(cfg, load, classify_case(cfg, load))
}

/// Completion-time pair reached from standard rate point `r` by the
/// two-phase scheme of the given branch: in branch one user 1 finishes
/// first and user 2 continues alone at `gamma(P2)`; branch two mirrors it.
pub fn map_rate_to_ct<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    branch: Branch,
    r: RatePair<T>,
) -> Result<CompletionTimePair<T>> {
    let r = RatePair::new(r.r1, r.r2)?;
    let TrafficLoad { tau1, tau2 } = *load;
    match branch {
        Branch::One => {
            if r.r1 <= T::zero() {
                return Err(Error::ZeroDivisor { component: 1 });
            }
            let g2 = cfg.gamma2();
            CompletionTimePair::new(tau1 / r.r1, tau2 / g2 + (g2 - r.r2) * tau1 / (g2 * r.r1))
        }
        Branch::Two => {
            if r.r2 <= T::zero() {
                return Err(Error::ZeroDivisor { component: 2 });
            }
            let g1 = cfg.gamma1();
            CompletionTimePair::new(tau1 / g1 + (g1 - r.r1) * tau2 / (g1 * r.r2), tau2 / r.r2)
        }
    }
}

/// The constrained-rate query a completion-time pair stands for.
pub fn ct_query<T: Scalar>(load: &TrafficLoad<T>, d: &CompletionTimePair<T>) -> ConstrainedRateQuery<T> {
    ConstrainedRateQuery::new_unchecked(
        RatePair {
            r1: load.tau1 / d.d1,
            r2: load.tau2 / d.d2,
        },
        d.d1 / d.d2,
    )
}

pub fn ct_slacks<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>, d: &CompletionTimePair<T>) -> RateSlacks<T> {
    constraint_slacks(cfg, &ct_query(load, d))
}

/// Canonical membership: forms `R = (tau1/d1, tau2/d2)`, `c = d1/d2` and
/// tests the closed-form constrained-rate constraints.
pub fn ct_contains<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>, d: &CompletionTimePair<T>, tol: T) -> bool {
    constrained_contains(cfg, &ct_query(load, d), tol)
}

/// Like [`ct_contains`] for a raw point; non-positive or non-finite
/// coordinates are never members.
pub fn ct_contains_point<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>, p: Point<T>, tol: T) -> bool {
    match CompletionTimePair::from_point(p) {
        Ok(d) => ct_contains(cfg, load, &d, tol),
        Err(_) => false,
    }
}

/// `{d1 >= tau1/gamma(P1), d2 >= tau2/gamma(P2)}`: neither user can beat its
/// interference-free time.
pub fn outer_bound<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> ConvexPiece<T> {
    let z = T::zero();
    ConvexPiece::new(vec![
        HalfPlane { a: cfg.gamma1(), b: z, c: load.tau1 },
        HalfPlane { a: z, b: cfg.gamma2(), c: load.tau2 },
    ])
    .with_vertex("corner", lower_corner(cfg, load))
}

pub(crate) fn lower_corner<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> Point<T> {
    Point::new(load.tau1 / cfg.gamma1(), load.tau2 / cfg.gamma2())
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegionPiece<T> {
    pub sub_region: Branch,
    pub piece: ConvexPiece<T>,
}

/// The completion-time region as a union of convex pieces.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionDescription<T> {
    pub case: CaseKind,
    pub pieces: Vec<RegionPiece<T>>,
    /// `(tau1/gamma(P1), tau2/gamma(P2))`
    pub lower_corner: Point<T>,
    /// The equal-component point `C_bar`.
    pub minimax_point: Point<T>,
}

pub const LABEL_C_BAR: &str = "C_bar";
/// Image of corner `A` under the branch-two map.
pub const LABEL_A_BAR: &str = "A_bar";
/// Image of corner `B` under the branch-two map.
pub const LABEL_B_BAR: &str = "B_bar";
/// Image of corner `A` under the branch-one map.
pub const LABEL_A_BAR_PRIME: &str = "A_bar'";
/// Image of corner `B` under the branch-one map.
pub const LABEL_B_BAR_PRIME: &str = "B_bar'";

impl<T: Scalar> RegionDescription<T> {
    pub fn contains(&self, p: Point<T>, tol: T) -> bool {
        self.pieces.iter().any(|rp| rp.piece.contains(p, tol))
    }

    pub fn piece(&self, branch: Branch) -> &ConvexPiece<T> {
        &self
            .pieces
            .iter()
            .find(|rp| rp.sub_region == branch)
            .expect("region has both sub-regions")
            .piece
    }

    /// Looks up a labeled vertex in any piece.
    pub fn vertex(&self, label: &str) -> Option<Point<T>> {
        self.pieces.iter().find_map(|rp| rp.piece.vertex(label))
    }

    /// Distance from `p` to the nearest boundary line of any piece.
    pub fn boundary_distance(&self, p: Point<T>) -> T {
        self.pieces
            .iter()
            .map(|rp| rp.piece.boundary_distance(p))
            .fold(T::infinity(), T::min)
    }

    /// Vertices on the lower-left frontier of the union, by increasing `d1`.
    pub fn frontier(&self) -> Vec<Point<T>> {
        let mut all: Vec<Point<T>> = Vec::new();
        for v in self.pieces.iter().flat_map(|rp| rp.piece.vertices.iter()) {
            if !all.contains(&v.point) {
                all.push(v.point);
            }
        }
        let mut front: Vec<Point<T>> = all
            .iter()
            .filter(|v| !all.iter().any(|u| u != *v && u.dominated_by(v)))
            .copied()
            .collect();
        front.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(b.y.partial_cmp(&a.y).unwrap()));
        front
    }

    /// Boundary of the union as a polyline from the top of the `d1` floor to
    /// the right end of the `d2` floor, clipped to `[0, d1_max] x [0, d2_max]`.
    pub fn boundary_polyline(&self, d1_max: T, d2_max: T) -> Vec<Point<T>> {
        let mut raw = vec![Point::new(self.lower_corner.x, d2_max.max(self.lower_corner.y))];
        raw.extend(self.frontier());
        raw.push(Point::new(d1_max.max(self.lower_corner.x), self.lower_corner.y));
        let mut out: Vec<Point<T>> = Vec::new();
        for w in raw.windows(2) {
            if let Some((p, q)) = clip_segment(w[0], w[1], d1_max, d2_max) {
                for pt in [p, q] {
                    if out.last() != Some(&pt) {
                        out.push(pt);
                    }
                }
            }
        }
        out
    }
}

/// Liang-Barsky clip of segment `p -> q` to `[0, xmax] x [0, ymax]`.
fn clip_segment<T: Scalar>(p: Point<T>, q: Point<T>, xmax: T, ymax: T) -> Option<(Point<T>, Point<T>)> {
    let (dx, dy) = (q.x - p.x, q.y - p.y);
    let (mut t0, mut t1) = (T::zero(), T::one());
    let checks = [(-dx, p.x), (dx, xmax - p.x), (-dy, p.y), (dy, ymax - p.y)];
    for (pk, qk) in checks {
        if pk == T::zero() {
            if qk < T::zero() {
                return None;
            }
        } else {
            let t = qk / pk;
            if pk < T::zero() {
                t0 = t0.max(t);
            } else {
                t1 = t1.min(t);
            }
        }
    }
    if t0 > t1 {
        return None;
    }
    let at = |t: T| {
        if t == T::zero() {
            p
        } else if t == T::one() {
            q
        } else {
            Point::new(p.x + t * dx, p.y + t * dy)
        }
    };
    Some((at(t0), at(t1)))
}

/// The closed-form minimax completion time: the largest of the three
/// single-constraint lower bounds on `max(d1, d2)`.
pub fn minimax_value<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> T {
    let TrafficLoad { tau1, tau2 } = *load;
    match classify_case(cfg, load) {
        CaseKind::CaseI => tau1 / cfg.gamma1(),
        CaseKind::CaseII => (tau1 + tau2) / cfg.gamma_sum(),
        CaseKind::CaseIII => tau2 / cfg.gamma2(),
    }
}

/// Builds the two convex pieces. Each piece carries the outer bound, its
/// side of the diagonal and, when it is not implied by the others, its
/// sum-rate face. Membership in the union equals [`ct_contains`].
pub fn build_region<T: Scalar>(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>) -> RegionDescription<T> {
    let (z, one) = (T::zero(), T::one());
    let (g1, g2, g12) = (cfg.gamma1(), cfg.gamma2(), cfg.gamma_sum());
    let TrafficLoad { tau1, tau2 } = *load;
    let case = classify_case(cfg, load);

    let floor1 = HalfPlane { a: g1, b: z, c: tau1 };
    let floor2 = HalfPlane { a: z, b: g2, c: tau2 };
    let below_diag = HalfPlane { a: -one, b: one, c: z };
    let above_diag = HalfPlane { a: one, b: -one, c: z };
    let sum_one = HalfPlane { a: g12 - g2, b: g2, c: tau1 + tau2 };
    let sum_two = HalfPlane { a: g1, b: g12 - g1, c: tau1 + tau2 };

    let m = minimax_value(cfg, load);
    let c_bar = Point::new(m, m);
    let (a, b) = corner_points(cfg);
    let image = |branch, r| {
        map_rate_to_ct(cfg, load, branch, r)
            .expect("corner points have positive components")
            .as_point()
    };

    let mut first = ConvexPiece::new(vec![floor1, floor2, below_diag]);
    let mut second = ConvexPiece::new(vec![floor1, floor2, above_diag]);
    if case != CaseKind::CaseI {
        first.halfplanes.push(sum_one);
    }
    if case != CaseKind::CaseIII {
        second.halfplanes.push(sum_two);
    }
    match case {
        CaseKind::CaseI => {
            first = first.with_vertex(LABEL_C_BAR, c_bar);
            second = second
                .with_vertex(LABEL_C_BAR, c_bar)
                .with_vertex(LABEL_B_BAR, image(Branch::Two, b))
                .with_vertex(LABEL_A_BAR, image(Branch::Two, a));
        }
        CaseKind::CaseII => {
            first = first
                .with_vertex(LABEL_B_BAR_PRIME, image(Branch::One, b))
                .with_vertex(LABEL_C_BAR, c_bar);
            second = second
                .with_vertex(LABEL_C_BAR, c_bar)
                .with_vertex(LABEL_A_BAR, image(Branch::Two, a));
        }
        CaseKind::CaseIII => {
            first = first
                .with_vertex(LABEL_B_BAR_PRIME, image(Branch::One, b))
                .with_vertex(LABEL_A_BAR_PRIME, image(Branch::One, a))
                .with_vertex(LABEL_C_BAR, c_bar);
            second = second.with_vertex(LABEL_C_BAR, c_bar);
        }
    }

    RegionDescription {
        case,
        pieces: vec![
            RegionPiece {
                sub_region: Branch::One,
                piece: first,
            },
            RegionPiece {
                sub_region: Branch::Two,
                piece: second,
            },
        ],
        lower_corner: lower_corner(cfg, load),
        minimax_point: c_bar,
    }
}
