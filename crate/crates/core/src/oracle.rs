//! Brute-force ground truth.
//!
//! Everything here depends only on the definitional membership test
//! [`ct_contains_point`] and on generic polygon enumeration, never on the
//! closed-form optimizer, so it can certify the closed forms independently.

use rayon::prelude::*;

use crate::capacity::{standard_capacity_region, ChannelConfig, RatePair};
use crate::completion::{build_region, ct_contains_point, Branch, RegionDescription, TrafficLoad};
use crate::error::{invalid, Error, Result};
use crate::geometry::{HalfPlane, Point};
use crate::Scalar;

/// A uniform `resolution x resolution` grid over a box in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<T> {
    pub resolution: usize,
    pub lo: Point<T>,
    pub hi: Point<T>,
    /// Membership tolerance used when sweeping the grid.
    pub tol: T,
}

pub const DEFAULT_RESOLUTION: usize = 2001;
pub const MIN_RESOLUTION: usize = 16;

impl<T: Scalar> GridSpec<T> {
    pub fn new(resolution: usize, lo: Point<T>, hi: Point<T>) -> Result<Self> {
        if resolution < MIN_RESOLUTION {
            return Err(invalid("grid resolution", "must be at least 16", T::lit(resolution as f64)));
        }
        for v in [lo.x, lo.y, hi.x, hi.y] {
            if !v.is_finite() || v <= T::zero() {
                return Err(invalid("grid bounds", "must be positive and finite", v));
            }
        }
        if hi.x <= lo.x || hi.y <= lo.y {
            return Err(invalid("grid bounds", "upper corner must exceed lower corner", hi.x - lo.x));
        }
        Ok(GridSpec {
            resolution,
            lo,
            hi,
            tol: T::zero(),
        })
    }

    /// Square box from `0.9` times the smaller single-user floor to `4`
    /// times the largest lower bound on `max(d1, d2)`.
    pub fn default_for(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>, resolution: usize) -> Result<Self> {
        let (f1, f2) = (load.tau1 / cfg.gamma1(), load.tau2 / cfg.gamma2());
        let joint = (load.tau1 + load.tau2) / cfg.gamma_sum();
        let lo = T::lit(0.9) * f1.min(f2);
        let hi = T::lit(4.0) * f1.max(f2).max(joint);
        Self::new(resolution, Point::new(lo, lo), Point::new(hi, hi))
    }

    /// Square box `[0.5 min floor, 4 max floor]` used for region comparison.
    pub fn equivalence_for(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>, resolution: usize) -> Result<Self> {
        let (f1, f2) = (load.tau1 / cfg.gamma1(), load.tau2 / cfg.gamma2());
        let lo = T::lit(0.5) * f1.min(f2);
        let hi = T::lit(4.0) * f1.max(f2);
        Self::new(resolution, Point::new(lo, lo), Point::new(hi, hi))
    }

    pub fn with_tol(mut self, tol: T) -> Self {
        self.tol = tol;
        self
    }

    pub fn step(&self) -> (T, T) {
        let n = T::lit((self.resolution - 1) as f64);
        ((self.hi.x - self.lo.x) / n, (self.hi.y - self.lo.y) / n)
    }

    /// Length of one cell diagonal.
    pub fn diagonal(&self) -> T {
        let (hx, hy) = self.step();
        hx.hypot(hy)
    }

    #[inline]
    pub fn point(&self, i: usize, j: usize) -> Point<T> {
        let (hx, hy) = self.step();
        let last = self.resolution - 1;
        let x = if i == last { self.hi.x } else { self.lo.x + T::lit(i as f64) * hx };
        let y = if j == last { self.hi.y } else { self.lo.y + T::lit(j as f64) * hy };
        Point::new(x, y)
    }

    fn empty_error(&self) -> Error {
        let f = |v: T| v.to_f64().unwrap_or(f64::NAN);
        Error::EmptyFeasibleGrid {
            lo1: f(self.lo.x),
            hi1: f(self.hi.x),
            lo2: f(self.lo.y),
            hi2: f(self.hi.y),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleReport<T> {
    pub optimum_value: T,
    pub optimizer: Point<T>,
    /// Cell diagonal of the searched grid.
    pub grid_step: T,
    /// Objective Lipschitz constant times `grid_step`: the true optimum over
    /// the box is no lower than `optimum_value - certified_gap_bound`.
    pub certified_gap_bound: T,
}

impl<T: Scalar> OracleReport<T> {
    /// Whether `value` lies in `[optimum - gap, optimum]`, allowing `slack`
    /// for floating-point evaluation of either side.
    pub fn brackets(&self, value: T, slack: T) -> bool {
        value >= self.optimum_value - self.certified_gap_bound - slack && value <= self.optimum_value + slack
    }
}

/// Membership of every grid point, evaluated once and reused across
/// objectives.
#[derive(Debug, Clone)]
pub struct FeasibleGrid<T> {
    spec: GridSpec<T>,
    /// Row-major by `d1` index.
    mask: Vec<bool>,
}

impl<T: Scalar> FeasibleGrid<T> {
    pub fn sweep(cfg: &ChannelConfig<T>, load: &TrafficLoad<T>, spec: GridSpec<T>) -> Self {
        let n = spec.resolution;
        let mut mask = vec![false; n * n];
        mask.par_chunks_mut(n).enumerate().for_each(|(i, row)| {
            for (j, cell) in row.iter_mut().enumerate() {
                *cell = ct_contains_point(cfg, load, spec.point(i, j), spec.tol);
            }
        });
        FeasibleGrid { spec, mask }
    }

    pub fn spec(&self) -> &GridSpec<T> {
        &self.spec
    }

    pub fn feasible_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    fn argmin<F>(&self, i_max: usize, j_max: usize, objective: F) -> Option<(T, Point<T>)>
    where
        F: Fn(Point<T>) -> T + Sync,
    {
        let n = self.spec.resolution;
        (0..i_max)
            .into_par_iter()
            .filter_map(|i| {
                let mut best: Option<(T, Point<T>)> = None;
                for j in 0..j_max {
                    if self.mask[i * n + j] {
                        let p = self.spec.point(i, j);
                        best = lex_min(best, Some((objective(p), p)));
                    }
                }
                best
            })
            .reduce_with(|a, b| lex_min(Some(a), Some(b)).unwrap())
    }

    pub fn weighted_min(&self, w: T) -> Result<OracleReport<T>> {
        if !w.is_finite() || w < T::zero() || w > T::one() {
            return Err(invalid("weight", "must lie in [0, 1]", w));
        }
        let wb = T::one() - w;
        let n = self.spec.resolution;
        let (v, p) = self
            .argmin(n, n, |p| w * p.x + wb * p.y)
            .ok_or_else(|| self.spec.empty_error())?;
        let step = self.spec.diagonal();
        Ok(OracleReport {
            optimum_value: v,
            optimizer: p,
            grid_step: step,
            certified_gap_bound: w.hypot(wb) * step,
        })
    }

    pub fn minimax(&self) -> Result<OracleReport<T>> {
        let (v, p) = self
            .argmin(self.spec.resolution, self.spec.resolution, |p| p.x.max(p.y))
            .ok_or_else(|| self.spec.empty_error())?;
        let step = self.spec.diagonal();
        Ok(OracleReport {
            optimum_value: v,
            optimizer: p,
            grid_step: step,
            certified_gap_bound: step,
        })
    }
}

fn lex_min<T: Scalar>(a: Option<(T, Point<T>)>, b: Option<(T, Point<T>)>) -> Option<(T, Point<T>)> {
    match (a, b) {
        (None, x) | (x, None) => x,
        (Some(a), Some(b)) => {
            let key = |v: &(T, Point<T>)| (v.0, v.1.x, v.1.y);
            let (ka, kb) = (key(&a), key(&b));
            if ka.partial_cmp(&kb) == Some(std::cmp::Ordering::Greater) {
                Some(b)
            } else {
                Some(a)
            }
        }
    }
}

/// Exhaustive minimum of `w d1 + (1 - w) d2` over feasible grid points.
pub fn oracle_weighted_min<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    w: T,
    spec: &GridSpec<T>,
) -> Result<OracleReport<T>> {
    FeasibleGrid::sweep(cfg, load, *spec).weighted_min(w)
}

/// Grid minimum of `max(d1, d2)`. A coarse pass bounds the optimum, then
/// the full-resolution grid is searched only where both coordinates stay
/// below that bound.
pub fn oracle_minimax<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    spec: &GridSpec<T>,
) -> Result<OracleReport<T>> {
    let coarse_res = spec.resolution.min(129);
    let cap = if coarse_res < spec.resolution {
        let coarse = GridSpec { resolution: coarse_res, ..*spec };
        FeasibleGrid::sweep(cfg, load, coarse)
            .minimax()
            .map(|r| r.optimum_value + r.certified_gap_bound)
            .unwrap_or(T::infinity())
    } else {
        T::infinity()
    };
    let n = spec.resolution;
    let (hx, hy) = spec.step();
    let count = |lo: T, h: T| {
        if cap.is_finite() {
            let k = ((cap - lo) / h).floor().to_f64().unwrap_or(0.0).max(0.0) as usize;
            (k + 2).min(n)
        } else {
            n
        }
    };
    // The restricted search stays on the parent grid.
    let (ni, nj) = (count(spec.lo.x, hx), count(spec.lo.y, hy));
    let mut best: Option<(T, Point<T>)> = None;
    let rows: Vec<Option<(T, Point<T>)>> = (0..ni)
        .into_par_iter()
        .map(|i| {
            let mut row_best = None;
            for j in 0..nj {
                let p = spec.point(i, j);
                if ct_contains_point(cfg, load, p, spec.tol) {
                    row_best = lex_min(row_best, Some((p.x.max(p.y), p)));
                }
            }
            row_best
        })
        .collect();
    for r in rows {
        best = lex_min(best, r);
    }
    let (v, p) = best.ok_or_else(|| spec.empty_error())?;
    let step = spec.diagonal();
    Ok(OracleReport {
        optimum_value: v,
        optimizer: p,
        grid_step: step,
        certified_gap_bound: step,
    })
}

/// Grid points where union membership of `region` and the definitional
/// test disagree, skipping points within `band` of any piece boundary.
pub fn region_disagreements<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    region: &RegionDescription<T>,
    spec: &GridSpec<T>,
    band: T,
) -> Vec<Point<T>> {
    let n = spec.resolution;
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| {
            (0..n).filter_map(move |j| {
                let p = spec.point(i, j);
                if region.boundary_distance(p) <= band {
                    return None;
                }
                let by_pieces = region.contains(p, spec.tol);
                let by_definition = ct_contains_point(cfg, load, p, spec.tol);
                (by_pieces != by_definition).then_some(p)
            })
        })
        .collect()
}

/// Default exemption band around piece boundaries.
pub const BOUNDARY_BAND: f64 = 1e-6;

/// Compares [`build_region`] against the definitional membership test.
/// An empty result means they agree everywhere off the boundary band.
pub fn oracle_region_equivalence<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    spec: &GridSpec<T>,
) -> Vec<Point<T>> {
    let region = build_region(cfg, load);
    region_disagreements(cfg, load, &region, spec, T::lit(BOUNDARY_BAND))
}

/// Extreme points of the pentagon cut by the demand ray on the given
/// branch's side, keeping those no other extreme point dominates.
///
/// Found by intersecting every pair of boundary lines and keeping the
/// feasible intersections.
pub fn dominant_extreme_points<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    branch: Branch,
) -> Vec<RatePair<T>> {
    let mut lines: Vec<HalfPlane<T>> = standard_capacity_region(cfg).halfplanes;
    let (t1, t2) = (load.tau1, load.tau2);
    lines.push(match branch {
        Branch::One => HalfPlane { a: t2, b: -t1, c: T::zero() },
        Branch::Two => HalfPlane { a: -t2, b: t1, c: T::zero() },
    });
    let scale = cfg.gamma_sum().max(t1).max(t2);
    let eps = T::lit(1e-12) * scale;

    let mut extreme: Vec<Point<T>> = Vec::new();
    for (k, h) in lines.iter().enumerate() {
        for g in &lines[k + 1..] {
            if let Some(p) = h.intersect(g) {
                let feasible = lines.iter().all(|l| l.slack(p) >= -eps);
                let fresh = !extreme.iter().any(|q| (q.x - p.x).abs() <= eps && (q.y - p.y).abs() <= eps);
                if feasible && fresh {
                    extreme.push(p);
                }
            }
        }
    }
    let dominates = |u: &Point<T>, v: &Point<T>| {
        let distinct = (u.x - v.x).abs() > eps || (u.y - v.y).abs() > eps;
        distinct && u.x >= v.x - eps && u.y >= v.y - eps
    };
    let mut out: Vec<RatePair<T>> = extreme
        .iter()
        .filter(|v| !extreme.iter().any(|u| dominates(u, v)))
        .map(|p| RatePair {
            r1: p.x.max(T::zero()),
            r2: p.y.max(T::zero()),
        })
        .collect();
    out.sort_by(|a, b| a.r1.partial_cmp(&b.r1).unwrap());
    out
}
