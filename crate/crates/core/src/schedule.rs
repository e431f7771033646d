//! Time-sharing transmission schedules that realize completion-time pairs.
//!
//! Durations are normalized channel uses per source unit, so a schedule for
//! `(d1, d2)` spans `max(d1, d2)`.

use std::fmt;

use crate::capacity::{pentagon_contains, ChannelConfig, RatePair, User};
use crate::completion::{ct_contains, ct_query, ct_slacks, CompletionTimePair, TrafficLoad};
use crate::constrained::decompose_rate;
use crate::error::{invalid, Error, Result};
use crate::Scalar;

/// Phases shorter than this are dropped.
pub const MIN_PHASE_DURATION: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ActiveUsers {
    pub user1: bool,
    pub user2: bool,
}

impl ActiveUsers {
    pub const BOTH: ActiveUsers = ActiveUsers { user1: true, user2: true };

    pub fn only(user: User) -> Self {
        ActiveUsers {
            user1: user == User::One,
            user2: user == User::Two,
        }
    }

    pub fn contains(&self, user: User) -> bool {
        match user {
            User::One => self.user1,
            User::Two => self.user2,
        }
    }

    pub fn count(&self) -> usize {
        self.user1 as usize + self.user2 as usize
    }

    pub fn users(&self) -> Vec<User> {
        [User::One, User::Two].into_iter().filter(|u| self.contains(*u)).collect()
    }
}

/// A stretch of channel uses with fixed per-user coding rates. Inactive
/// users send the all-zero silence symbol.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Phase<T> {
    pub duration: T,
    pub rates: RatePair<T>,
    pub active: ActiveUsers,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schedule<T> {
    pub phases: Vec<Phase<T>>,
    pub achieved: CompletionTimePair<T>,
}

impl<T: Scalar> Schedule<T> {
    /// Bits per source unit delivered to `user`.
    pub fn delivered(&self, user: User) -> T {
        self.phases
            .iter()
            .fold(T::zero(), |acc, p| acc + p.duration * p.rates.get(user))
    }

    /// End time of `user`'s last phase with a nonzero rate.
    pub fn finish_time(&self, user: User) -> T {
        let mut t = T::zero();
        let mut finish = T::zero();
        for p in &self.phases {
            t = t + p.duration;
            if p.rates.get(user) > T::zero() {
                finish = t;
            }
        }
        finish
    }

    pub fn total_duration(&self) -> T {
        self.phases.iter().fold(T::zero(), |acc, p| acc + p.duration)
    }
}

/// Builds the two-phase scheme for a feasible `d`: both users share the
/// channel until the early finisher is done, then the late finisher runs
/// alone as fast as its single-user rate allows.
pub fn synthesize<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    d: CompletionTimePair<T>,
    tol: T,
) -> Result<Schedule<T>> {
    let d = CompletionTimePair::new(d.d1, d.d2)?;
    if let Some(err) = ct_slacks(cfg, load, &d).violation(tol) {
        return Err(err);
    }
    let (short, long) = (d.d1.min(d.d2), d.d1.max(d.d2));
    let q = ct_query(load, &d);

    if long - short < T::lit(MIN_PHASE_DURATION) {
        let rates = RatePair {
            r1: load.tau1 / short,
            r2: load.tau2 / short,
        };
        return Ok(Schedule {
            phases: vec![Phase {
                duration: short,
                rates,
                active: ActiveUsers::BOTH,
            }],
            achieved: d,
        });
    }

    let dec = decompose_rate(cfg, &q, tol)?;
    let late = dec
        .solo_user
        .ok_or_else(|| Error::Inconsistent("unequal completion times without a solo user".into()))?;
    let solo_rates = match late {
        User::One => RatePair { r1: dec.solo_phase_rate, r2: T::zero() },
        User::Two => RatePair { r1: T::zero(), r2: dec.solo_phase_rate },
    };
    Ok(Schedule {
        phases: vec![
            Phase {
                duration: short,
                rates: dec.shared_pair(&q),
                active: ActiveUsers::BOTH,
            },
            Phase {
                duration: long - short,
                rates: solo_rates,
                active: ActiveUsers::only(late),
            },
        ],
        achieved: d,
    })
}

/// Time-shares two schedules of the same sub-region with weights `alpha`
/// and `1 - alpha`. All shared phases run before all solo phases, so the
/// early finisher's codewords from both schemes end together.
pub fn compose<T: Scalar>(s: &Schedule<T>, s_prime: &Schedule<T>, alpha: T) -> Result<Schedule<T>> {
    if !alpha.is_finite() || alpha < T::zero() || alpha > T::one() {
        return Err(invalid("alpha", "must lie in [0, 1]", alpha));
    }
    let (a, b) = (s.achieved, s_prime.achieved);
    let mixed = (a.d1 < a.d2 && b.d1 > b.d2) || (a.d1 > a.d2 && b.d1 < b.d2);
    if mixed {
        return Err(Error::MixedSubRegions);
    }
    let beta = T::one() - alpha;
    let min_len = T::lit(MIN_PHASE_DURATION);
    let scaled = |sched: &Schedule<T>, k: T, shared: bool| -> Vec<Phase<T>> {
        sched
            .phases
            .iter()
            .filter(|p| (p.active.count() == 2) == shared)
            .map(|p| Phase { duration: p.duration * k, ..*p })
            .filter(|p| p.duration >= min_len)
            .collect()
    };
    let mut phases = scaled(s, alpha, true);
    phases.extend(scaled(s_prime, beta, true));
    phases.extend(scaled(s, alpha, false));
    phases.extend(scaled(s_prime, beta, false));
    Ok(Schedule {
        phases,
        achieved: CompletionTimePair {
            d1: alpha * a.d1 + beta * b.d1,
            d2: alpha * a.d2 + beta * b.d2,
        },
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    BadDuration { phase: usize },
    NoActiveUser { phase: usize },
    SilentUserTransmits { phase: usize, user: usize },
    PhaseRatesInfeasible { phase: usize },
    BitConservation { user: usize, delivered: f64, required: f64 },
    CompletionMismatch { user: usize, finishes: f64, claimed: f64 },
    NotPrefixContiguous { user: usize },
    AchievedOutsideRegion,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BadDuration { phase } => write!(f, "phase {phase}: duration must be positive and finite"),
            Violation::NoActiveUser { phase } => write!(f, "phase {phase}: no active user"),
            Violation::SilentUserTransmits { phase, user } => {
                write!(f, "phase {phase}: inactive user {user} has a nonzero rate")
            }
            Violation::PhaseRatesInfeasible { phase } => {
                write!(f, "phase {phase}: rates outside the capacity region")
            }
            Violation::BitConservation { user, delivered, required } => {
                write!(f, "user {user}: delivers {delivered} bits, needs {required}")
            }
            Violation::CompletionMismatch { user, finishes, claimed } => {
                write!(f, "user {user}: finishes at {finishes}, schedule claims {claimed}")
            }
            Violation::NotPrefixContiguous { user } => {
                write!(f, "user {user}: becomes active again after going silent")
            }
            Violation::AchievedOutsideRegion => write!(f, "achieved pair is outside the completion-time region"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks every phase and schedule invariant. `tol` bounds constraint
/// slack, bit mismatch and completion-time mismatch (relative to the larger
/// of 1 and the compared magnitude).
pub fn validate<T: Scalar>(
    cfg: &ChannelConfig<T>,
    load: &TrafficLoad<T>,
    s: &Schedule<T>,
    tol: T,
) -> ValidationReport {
    let mut v = Vec::new();
    let f64_of = |x: T| x.to_f64().unwrap_or(f64::NAN);
    let near = |x: T, y: T| (x - y).abs() <= tol * y.abs().max(T::one());

    for (k, p) in s.phases.iter().enumerate() {
        if !p.duration.is_finite() || p.duration <= T::zero() {
            v.push(Violation::BadDuration { phase: k });
        }
        if p.active.count() == 0 {
            v.push(Violation::NoActiveUser { phase: k });
        }
        for user in [User::One, User::Two] {
            if !p.active.contains(user) && p.rates.get(user) != T::zero() {
                v.push(Violation::SilentUserTransmits { phase: k, user: user.index() });
            }
        }
        let feasible = p.rates.r1 >= T::zero()
            && p.rates.r2 >= T::zero()
            && match p.active.count() {
                2 => pentagon_contains(cfg, p.rates.as_point(), tol),
                1 => {
                    let user = p.active.users()[0];
                    p.rates.get(user) <= cfg.single_user_rate(user) + tol
                }
                _ => true,
            };
        if !feasible {
            v.push(Violation::PhaseRatesInfeasible { phase: k });
        }
    }

    let claimed = [(User::One, s.achieved.d1, load.tau1), (User::Two, s.achieved.d2, load.tau2)];
    for (user, d, tau) in claimed {
        let delivered = s.delivered(user);
        if !near(delivered, tau) {
            v.push(Violation::BitConservation {
                user: user.index(),
                delivered: f64_of(delivered),
                required: f64_of(tau),
            });
        }
        let finish = s.finish_time(user);
        if !near(finish, d) {
            v.push(Violation::CompletionMismatch {
                user: user.index(),
                finishes: f64_of(finish),
                claimed: f64_of(d),
            });
        }
        let mut gone = false;
        for p in &s.phases {
            if !p.active.contains(user) {
                gone = true;
            } else if gone {
                v.push(Violation::NotPrefixContiguous { user: user.index() });
                break;
            }
        }
    }

    let achieved_ok = CompletionTimePair::new(s.achieved.d1, s.achieved.d2)
        .map(|d| ct_contains(cfg, load, &d, tol))
        .unwrap_or(false);
    if !achieved_ok {
        v.push(Violation::AchievedOutsideRegion);
    }
    ValidationReport { violations: v }
}
