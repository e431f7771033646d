//! Gaussian channel primitives: the rate function, point-to-point rates and
//! the standard two-user capacity pentagon.

use crate::error::{invalid, Error, Result};
use crate::geometry::{ConvexPiece, HalfPlane, Point};
use crate::Scalar;

/// `gamma(x) = 1/2 * log2(1 + x)`, the capacity of a unit-noise AWGN channel
/// at linear SNR `x`, in bits per channel use.
pub fn gamma<T: Scalar>(x: T) -> Result<T> {
    if !x.is_finite() {
        return Err(invalid("gamma argument", "must be finite", x));
    }
    if x < T::zero() {
        return Err(invalid("gamma argument", "must be nonnegative", x));
    }
    Ok(gamma_unchecked(x))
}

#[inline]
pub(crate) fn gamma_unchecked<T: Scalar>(x: T) -> T {
    x.ln_1p() / (T::two() * T::LN_2())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum User {
    One,
    Two,
}

impl User {
    pub fn from_index(i: usize) -> Result<User> {
        match i {
            1 => Ok(User::One),
            2 => Ok(User::Two),
            other => Err(Error::InvalidUser(other)),
        }
    }

    pub fn index(self) -> usize {
        match self {
            User::One => 1,
            User::Two => 2,
        }
    }

    pub fn other(self) -> User {
        match self {
            User::One => User::Two,
            User::Two => User::One,
        }
    }
}

/// Receive powers of the two users, as linear SNR over unit noise.
///
/// The rate-function values are computed once at construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelConfig<T> {
    p1: T,
    p2: T,
    g1: T,
    g2: T,
    g12: T,
}

impl<T: Scalar> ChannelConfig<T> {
    pub fn new(p1: T, p2: T) -> Result<Self> {
        let check = |field, p: T| {
            if !p.is_finite() {
                Err(invalid(field, "must be finite", p))
            } else if p <= T::zero() {
                Err(invalid(field, "must be strictly positive", p))
            } else {
                Ok(())
            }
        };
        check("p1", p1)?;
        check("p2", p2)?;
        Ok(ChannelConfig {
            p1,
            p2,
            g1: gamma_unchecked(p1),
            g2: gamma_unchecked(p2),
            g12: gamma_unchecked(p1 + p2),
        })
    }

    /// Builds a configuration from powers given in dB.
    pub fn from_db(p1_db: T, p2_db: T) -> Result<Self> {
        let ten = T::lit(10.0);
        Self::new(ten.powf(p1_db / ten), ten.powf(p2_db / ten))
    }

    pub fn p1(&self) -> T {
        self.p1
    }

    pub fn p2(&self) -> T {
        self.p2
    }

    /// `gamma(P1)`
    #[inline]
    pub fn gamma1(&self) -> T {
        self.g1
    }

    /// `gamma(P2)`
    #[inline]
    pub fn gamma2(&self) -> T {
        self.g2
    }

    /// `gamma(P1 + P2)`
    #[inline]
    pub fn gamma_sum(&self) -> T {
        self.g12
    }

    #[inline]
    pub fn single_user_rate(&self, user: User) -> T {
        match user {
            User::One => self.g1,
            User::Two => self.g2,
        }
    }
}

/// A pair of rates in bits per channel use. Holds standard rates `(r1, r2)`
/// as well as constrained rates `(R1, R2)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatePair<T> {
    pub r1: T,
    pub r2: T,
}

impl<T: Scalar> RatePair<T> {
    pub fn new(r1: T, r2: T) -> Result<Self> {
        for (field, r) in [("r1", r1), ("r2", r2)] {
            if !r.is_finite() {
                return Err(invalid(field, "must be finite", r));
            }
            if r < T::zero() {
                return Err(invalid(field, "must be nonnegative", r));
            }
        }
        Ok(RatePair { r1, r2 })
    }

    pub fn get(&self, user: User) -> T {
        match user {
            User::One => self.r1,
            User::Two => self.r2,
        }
    }

    pub fn as_point(&self) -> Point<T> {
        Point::new(self.r1, self.r2)
    }
}

/// Maximum rate of `user` when the other user is silent.
pub fn point_to_point_rate<T: Scalar>(cfg: &ChannelConfig<T>, user: User) -> T {
    cfg.single_user_rate(user)
}

/// Same as [`point_to_point_rate`] with a 1-based user index.
pub fn point_to_point_rate_by_index<T: Scalar>(cfg: &ChannelConfig<T>, user: usize) -> Result<T> {
    Ok(cfg.single_user_rate(User::from_index(user)?))
}

/// The two corner points of the pentagon where the sum-rate face meets a
/// single-user face. `A` decodes user 1 first (user 2 at full rate), `B`
/// decodes user 2 first.
pub fn corner_points<T: Scalar>(cfg: &ChannelConfig<T>) -> (RatePair<T>, RatePair<T>) {
    let (g1, g2, g12) = (cfg.gamma1(), cfg.gamma2(), cfg.gamma_sum());
    let a = RatePair { r1: g12 - g2, r2: g2 };
    let b = RatePair { r1: g1, r2: g12 - g1 };
    (a, b)
}

/// The capacity pentagon
/// `{r1, r2 >= 0, r1 <= gamma(P1), r2 <= gamma(P2), r1 + r2 <= gamma(P1 + P2)}`.
///
/// Vertices in counterclockwise order: `O`, `E` on the r1 axis, `B`, `A`,
/// `F` on the r2 axis.
pub fn standard_capacity_region<T: Scalar>(cfg: &ChannelConfig<T>) -> ConvexPiece<T> {
    let (z, one) = (T::zero(), T::one());
    let (g1, g2, g12) = (cfg.gamma1(), cfg.gamma2(), cfg.gamma_sum());
    let (a, b) = corner_points(cfg);
    ConvexPiece::new(vec![
        HalfPlane { a: one, b: z, c: z },
        HalfPlane { a: z, b: one, c: z },
        HalfPlane { a: -one, b: z, c: -g1 },
        HalfPlane { a: z, b: -one, c: -g2 },
        HalfPlane { a: -one, b: -one, c: -g12 },
    ])
    .with_vertex("O", Point::new(z, z))
    .with_vertex("E", Point::new(g1, z))
    .with_vertex("B", b.as_point())
    .with_vertex("A", a.as_point())
    .with_vertex("F", Point::new(z, g2))
}

/// Pentagon membership of a standard rate pair.
pub fn pentagon_contains<T: Scalar>(cfg: &ChannelConfig<T>, r: Point<T>, tol: T) -> bool {
    r.x >= -tol
        && r.y >= -tol
        && r.x <= cfg.gamma1() + tol
        && r.y <= cfg.gamma2() + tol
        && r.x + r.y <= cfg.gamma_sum() + tol
}
