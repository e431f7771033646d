//! Rates under unequal codeword lengths.
//!
//! When user 1 spends `n1` channel uses and user 2 spends `n2`, the rates
//! `R_i = log2(M_i) / n_i` live in a region that depends on `c = n1 / n2`.
//! For `c < 1` the late user 2 can spend its last `n2 - n1` channel uses
//! alone at its point-to-point rate; symmetrically for `c > 1`.

use crate::capacity::{pentagon_contains, ChannelConfig, RatePair, User};
use crate::error::{invalid, Error, RateConstraint, Result};
use crate::Scalar;

/// A constrained rate pair together with the codeword-length ratio `c = n1/n2`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstrainedRateQuery<T> {
    pub rates: RatePair<T>,
    pub c: T,
}

impl<T: Scalar> ConstrainedRateQuery<T> {
    /// Ratios outside `[1e-12, 1e12]` are rejected as ill-conditioned.
    pub fn new(rates: RatePair<T>, c: T) -> Result<Self> {
        let rates = RatePair::new(rates.r1, rates.r2)?;
        if !c.is_finite() || c <= T::zero() {
            return Err(invalid("c", "must be positive and finite", c));
        }
        if c < T::lit(1e-12) || c > T::lit(1e12) {
            return Err(invalid("c", "ratio is ill-conditioned (outside [1e-12, 1e12])", c));
        }
        Ok(ConstrainedRateQuery { rates, c })
    }

    pub(crate) fn new_unchecked(rates: RatePair<T>, c: T) -> Self {
        ConstrainedRateQuery { rates, c }
    }
}

/// Slack of each of the three constraints; negative means violated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateSlacks<T> {
    pub user1: T,
    pub user2: T,
    pub sum: T,
}

impl<T: Scalar> RateSlacks<T> {
    pub fn get(&self, which: RateConstraint) -> T {
        match which {
            RateConstraint::User1 => self.user1,
            RateConstraint::User2 => self.user2,
            RateConstraint::Sum => self.sum,
        }
    }

    /// The constraint with the smallest slack. Ties resolve to the sum-rate
    /// constraint, then user 1.
    pub fn binding(&self) -> RateConstraint {
        let mut best = RateConstraint::Sum;
        for k in [RateConstraint::User1, RateConstraint::User2] {
            if self.get(k) < self.get(best) {
                best = k;
            }
        }
        best
    }

    pub fn all_within(&self, tol: T) -> bool {
        self.user1 >= -tol && self.user2 >= -tol && self.sum >= -tol
    }

    /// The most violated constraint, if any is violated beyond `tol`.
    pub fn violation(&self, tol: T) -> Option<Error> {
        let k = self.binding();
        let s = self.get(k);
        (s < -tol).then(|| Error::Infeasible {
            constraint: k,
            slack: s.to_f64().unwrap_or(f64::NAN),
        })
    }
}

/// Slacks of the closed-form constraints
/// `R1 <= g1`, `R2 <= g2`, and
/// `max(1,c) R1 + max(1,1/c) R2 <= (c-1) g1 [c>=1] + (1/c-1) g2 [c<1] + g12`.
pub fn constraint_slacks<T: Scalar>(cfg: &ChannelConfig<T>, q: &ConstrainedRateQuery<T>) -> RateSlacks<T> {
    let (g1, g2, g12) = (cfg.gamma1(), cfg.gamma2(), cfg.gamma_sum());
    let (r1, r2, c) = (q.rates.r1, q.rates.r2, q.c);
    let one = T::one();
    let sum = if c >= one {
        (c - one) * g1 + g12 - (c * r1 + r2)
    } else {
        let inv = one / c;
        (inv - one) * g2 + g12 - (r1 + inv * r2)
    };
    RateSlacks {
        user1: g1 - r1,
        user2: g2 - r2,
        sum,
    }
}

/// Membership in the constrained-rate capacity region for ratio `q.c`.
/// At `c = 1` this is exactly pentagon membership.
pub fn constrained_contains<T: Scalar>(cfg: &ChannelConfig<T>, q: &ConstrainedRateQuery<T>, tol: T) -> bool {
    constraint_slacks(cfg, q).all_within(tol)
}

/// Maps a constrained rate pair to the standard rate pair whose pentagon
/// membership is equivalent: the late user's rate is stripped of what its
/// solo tail can carry at full single-user rate, clamped at zero.
pub fn clamp_transform<T: Scalar>(cfg: &ChannelConfig<T>, q: &ConstrainedRateQuery<T>) -> RatePair<T> {
    let one = T::one();
    let RatePair { r1, r2 } = q.rates;
    let c = q.c;
    if c < one {
        let inv = one / c;
        RatePair {
            r1,
            r2: (inv * r2 - (inv - one) * cfg.gamma2()).max(T::zero()),
        }
    } else if c > one {
        RatePair {
            r1: (c * r1 - (c - one) * cfg.gamma1()).max(T::zero()),
            r2,
        }
    } else {
        q.rates
    }
}

/// Standard-region cross-check of [`constrained_contains`].
pub fn transform_contains<T: Scalar>(cfg: &ChannelConfig<T>, q: &ConstrainedRateQuery<T>, tol: T) -> bool {
    pentagon_contains(cfg, clamp_transform(cfg, q).as_point(), tol)
}

/// Split of the late user's rate into a shared-phase part and a solo-phase
/// part.
///
/// The late user spends a fraction `shared_fraction` of its codeword in the
/// shared phase at `shared_phase_rate`, and the rest alone at
/// `solo_phase_rate`, so that
/// `shared_fraction * shared_phase_rate + (1 - shared_fraction) * solo_phase_rate`
/// reproduces its constrained rate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateDecomposition<T> {
    /// `None` when both users finish together (`c = 1`).
    pub solo_user: Option<User>,
    /// `min(c, 1/c)`
    pub shared_fraction: T,
    pub shared_phase_rate: T,
    pub solo_phase_rate: T,
}

impl<T: Scalar> RateDecomposition<T> {
    /// The standard rate pair used while both users transmit.
    pub fn shared_pair(&self, q: &ConstrainedRateQuery<T>) -> RatePair<T> {
        match self.solo_user {
            Some(User::One) => RatePair {
                r1: self.shared_phase_rate,
                r2: q.rates.r2,
            },
            Some(User::Two) => RatePair {
                r1: q.rates.r1,
                r2: self.shared_phase_rate,
            },
            None => q.rates,
        }
    }

    /// Rate of the solo user reassembled from both phases.
    pub fn reconstruct(&self) -> T {
        let f = self.shared_fraction;
        f * self.shared_phase_rate + (T::one() - f) * self.solo_phase_rate
    }
}

/// Decomposes a feasible query with the solo phase run as fast as possible:
/// the solo rate is the single-user rate, or lower if the solo tail alone
/// already carries all of the late user's bits.
pub fn decompose_rate<T: Scalar>(
    cfg: &ChannelConfig<T>,
    q: &ConstrainedRateQuery<T>,
    tol: T,
) -> Result<RateDecomposition<T>> {
    if let Some(err) = constraint_slacks(cfg, q).violation(tol) {
        return Err(err);
    }
    let one = T::one();
    let (solo, f) = if q.c < one {
        (User::Two, q.c)
    } else if q.c > one {
        (User::One, one / q.c)
    } else {
        return Ok(RateDecomposition {
            solo_user: None,
            shared_fraction: one,
            shared_phase_rate: T::zero(),
            solo_phase_rate: T::zero(),
        });
    };
    let rate = q.rates.get(solo);
    let full = cfg.single_user_rate(solo);
    let tail_only = rate / (one - f);
    let (shared, solo_rate) = if tail_only <= full {
        (T::zero(), tail_only)
    } else {
        (((rate - (one - f) * full) / f).max(T::zero()), full)
    };
    Ok(RateDecomposition {
        solo_user: Some(solo),
        shared_fraction: f,
        shared_phase_rate: shared,
        solo_phase_rate: solo_rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    const TOL: f64 = 1e-9;

    fn cfg33() -> ChannelConfig<f64> {
        ChannelConfig::new(3.0, 3.0).unwrap()
    }

    fn query(r1: f64, r2: f64, c: f64) -> ConstrainedRateQuery<f64> {
        ConstrainedRateQuery::new(RatePair::new(r1, r2).unwrap(), c).unwrap()
    }

    /// `d1` of the corner image where user 2 runs at full rate while user 1
    /// finishes alone, for P = (3, 3), tau = (1, 1).
    fn a_bar_d1() -> f64 {
        let c = cfg33();
        (c.gamma2() + c.gamma1() + c.gamma2() - c.gamma_sum()) / (c.gamma1() * c.gamma2())
    }

    #[test]
    fn membership_examples() {
        let c = cfg33();
        assert!(constrained_contains(&c, &query(0.4, 0.9, 0.5), TOL));
        assert!(!constrained_contains(&c, &query(1.0, 1.0, 1.0), TOL));

        let ca = a_bar_d1();
        let tight = query(1.0 / ca, 1.0, ca);
        assert!(constrained_contains(&c, &tight, TOL));
        assert!(constraint_slacks(&c, &tight).sum.abs() < 1e-12);
        assert_eq!(constraint_slacks(&c, &tight).binding(), RateConstraint::Sum);
        // The six-digit rounding of the same point sits 1.2e-7 outside.
        let rounded = query(0.62644, 1.0, 1.596323);
        assert!(!constrained_contains(&c, &rounded, TOL));
        assert!(constrained_contains(&c, &rounded, 1e-6));
    }

    #[test]
    fn extreme_ratios_rejected() {
        let r = RatePair::new(0.1, 0.1).unwrap();
        assert!(ConstrainedRateQuery::new(r, 1e-13).is_err());
        assert!(ConstrainedRateQuery::new(r, 1e13).is_err());
        assert!(ConstrainedRateQuery::new(r, 0.0).is_err());
        assert!(ConstrainedRateQuery::new(r, f64::NAN).is_err());
        assert!(ConstrainedRateQuery::new(RatePair { r1: -0.1, r2: 0.0 }, 1.0).is_err());
    }

    #[test]
    fn clamp_examples() {
        let c = cfg33();
        let t = clamp_transform(&c, &query(0.4, 0.4, 0.5));
        assert_abs_diff_eq!(t.r1, 0.4);
        assert_eq!(t.r2, 0.0);
        let t = clamp_transform(&c, &query(0.4, 0.9, 0.5));
        assert_abs_diff_eq!(t.r1, 0.4);
        assert_abs_diff_eq!(t.r2, 0.8, epsilon = 1e-12);
        let q = query(0.37, 1.9, 1.0);
        assert_eq!(clamp_transform(&c, &q), q.rates);
    }

    #[test]
    fn decomposition_examples() {
        let c = cfg33();
        let d = decompose_rate(&c, &query(0.4, 0.9, 0.5), TOL).unwrap();
        assert_eq!(d.solo_user, Some(User::Two));
        assert_abs_diff_eq!(d.solo_phase_rate, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.shared_phase_rate, 0.8, epsilon = 1e-12);

        let d = decompose_rate(&c, &query(0.4, 0.4, 0.5), TOL).unwrap();
        assert_eq!(d.solo_user, Some(User::Two));
        assert_abs_diff_eq!(d.solo_phase_rate, 0.8, epsilon = 1e-12);
        assert_eq!(d.shared_phase_rate, 0.0);

        let ca = a_bar_d1();
        let q = query(1.0 / ca, 1.0, ca);
        let d = decompose_rate(&c, &q, TOL).unwrap();
        assert_eq!(d.solo_user, Some(User::One));
        assert_abs_diff_eq!(d.solo_phase_rate, 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(d.shared_phase_rate, c.gamma_sum() - 1.0, epsilon = 1e-12);
        let shared = d.shared_pair(&q);
        assert!(pentagon_contains(&c, shared.as_point(), 1e-12));
        assert!((shared.r1 + shared.r2 - c.gamma_sum()).abs() < 1e-12);
    }

    #[test]
    fn decomposition_at_unit_ratio_is_trivial() {
        let d = decompose_rate(&cfg33(), &query(0.5, 0.5, 1.0), TOL).unwrap();
        assert_eq!(d.solo_user, None);
        assert_eq!(d.shared_fraction, 1.0);
    }

    #[test]
    fn decomposition_rejects_infeasible() {
        match decompose_rate(&cfg33(), &query(1.0, 1.0, 1.0), TOL) {
            Err(Error::Infeasible { constraint, .. }) => assert_eq!(constraint, RateConstraint::Sum),
            other => panic!("unexpected {other:?}"),
        }
        match decompose_rate(&cfg33(), &query(1.2, 0.0, 2.0), TOL) {
            Err(Error::Infeasible { constraint, .. }) => assert_eq!(constraint, RateConstraint::User1),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn unit_ratio_matches_pentagon_on_grid() {
        let c = cfg33();
        let mut disagreements = 0;
        for i in 0..=200 {
            for j in 0..=200 {
                let (r1, r2) = (i as f64 * 0.0075, j as f64 * 0.0075);
                let q = query(r1, r2, 1.0);
                let pent = crate::capacity::standard_capacity_region(&c);
                if constrained_contains(&c, &q, TOL) != pent.contains(q.rates.as_point(), TOL) {
                    disagreements += 1;
                }
            }
        }
        assert_eq!(disagreements, 0);
    }

    proptest! {
        #[test]
        fn closed_form_agrees_with_transform(
            p1 in 0.1f64..100.0, p2 in 0.1f64..100.0,
            u1 in 0.0f64..1.5, u2 in 0.0f64..1.5, c in 0.05f64..20.0,
        ) {
            let cfg = ChannelConfig::new(p1, p2).unwrap();
            let q = query(u1 * cfg.gamma1(), u2 * cfg.gamma2(), c);
            prop_assert_eq!(constrained_contains(&cfg, &q, TOL), transform_contains(&cfg, &q, TOL));
        }

        #[test]
        fn shrinking_ratio_keeps_membership(
            p1 in 0.1f64..100.0, p2 in 0.1f64..100.0,
            u1 in 0.0f64..1.0, u2 in 0.0f64..0.999, c in 0.05f64..1.0, s in 0.01f64..1.0,
        ) {
            let cfg = ChannelConfig::new(p1, p2).unwrap();
            let r = RatePair::new(u1 * cfg.gamma1(), u2 * cfg.gamma2()).unwrap();
            let q = ConstrainedRateQuery::new(r, c).unwrap();
            if constrained_contains(&cfg, &q, TOL) {
                let smaller = ConstrainedRateQuery::new(r, c * s).unwrap();
                prop_assert!(constrained_contains(&cfg, &smaller, TOL));
            }
        }

        #[test]
        fn decomposition_round_trip(
            p1 in 0.1f64..100.0, p2 in 0.1f64..100.0,
            u1 in 0.0f64..1.5, u2 in 0.0f64..1.5, c in 0.05f64..20.0,
        ) {
            let cfg = ChannelConfig::new(p1, p2).unwrap();
            let q = query(u1 * cfg.gamma1(), u2 * cfg.gamma2(), c);
            match decompose_rate(&cfg, &q, TOL) {
                Ok(d) => {
                    prop_assert!(constrained_contains(&cfg, &q, TOL));
                    let user = d.solo_user.unwrap();
                    let rate = q.rates.get(user);
                    prop_assert!((d.reconstruct() - rate).abs() <= 1e-12 * rate.max(1.0));
                    prop_assert!(d.solo_phase_rate <= cfg.single_user_rate(user) + TOL);
                    prop_assert!(pentagon_contains(&cfg, d.shared_pair(&q).as_point(), TOL));
                }
                Err(_) => prop_assert!(!constrained_contains(&cfg, &q, TOL)),
            }
        }
    }
}
