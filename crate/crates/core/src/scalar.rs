//! Scalar abstraction shared by the covariance algebra.
//!
//! Everything in [`crate::gaussian`] is generic over [`Real`] so the same code
//! path runs in `f64` and in [`Hp`], a 1024-bit binary float. The extended
//! type exists because at low temperature the thermal occupation (`~e^-100`)
//! vanishes next to the vacuum noise `1/2` in double precision, while the
//! extracted work is proportional to it.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use dashu_float::round::mode::HalfEven;
use dashu_float::FBig;

/// Real field operations needed by the Gaussian formulas.
pub trait Real:
    Clone
    + fmt::Debug
    + PartialOrd
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;

    /// Purity deficits `1 - mu` below this are treated as a pure state.
    fn pure_threshold() -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }

    fn one() -> Self {
        Self::from_f64(1.0)
    }

    fn half() -> Self {
        Self::from_f64(0.5)
    }

    fn abs(&self) -> Self {
        if *self < Self::zero() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    fn cosh(&self) -> Self {
        let e = self.exp();
        (e.clone() + Self::one() / e) * Self::half()
    }

    fn sinh(&self) -> Self {
        let e = self.exp();
        (e.clone() - Self::one() / e) * Self::half()
    }

    fn sin_cos(&self) -> (Self, Self) {
        let (s, c) = self.to_f64().sin_cos();
        (Self::from_f64(s), Self::from_f64(c))
    }

    fn max(self, other: Self) -> Self {
        if other > self {
            other
        } else {
            self
        }
    }
}

impl Real for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }

    fn to_f64(&self) -> f64 {
        *self
    }

    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }

    fn ln(&self) -> Self {
        f64::ln(*self)
    }

    fn exp(&self) -> Self {
        f64::exp(*self)
    }

    fn pure_threshold() -> Self {
        1e-12
    }

    fn abs(&self) -> Self {
        f64::abs(*self)
    }

    fn cosh(&self) -> Self {
        f64::cosh(*self)
    }

    fn sinh(&self) -> Self {
        f64::sinh(*self)
    }
}

/// Working precision of [`Hp`] in bits (about 308 decimal digits).
pub const HP_PRECISION: usize = 1024;

type Big = FBig<HalfEven, 2>;

/// Extended-precision real backed by a 1024-bit binary float.
///
/// Angles passed through [`Real::sin_cos`] are evaluated in `f64`; only the
/// measurement rotation uses them and it enters the algebra as an exact
/// `f64` input.
#[derive(Clone, PartialEq, PartialOrd)]
pub struct Hp(Big);

impl Hp {
    fn wrap(x: Big) -> Self {
        Hp(x)
    }
}

impl fmt::Debug for Hp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Hp({:e})", self.to_f64())
    }
}

impl From<f64> for Hp {
    fn from(x: f64) -> Self {
        Hp::from_f64(x)
    }
}

macro_rules! hp_binop {
    ($tr:ident, $method:ident, $op:tt) => {
        impl $tr for Hp {
            type Output = Hp;
            fn $method(self, rhs: Hp) -> Hp {
                Hp::wrap(self.0 $op rhs.0)
            }
        }
    };
}

hp_binop!(Add, add, +);
hp_binop!(Sub, sub, -);
hp_binop!(Mul, mul, *);
hp_binop!(Div, div, /);

impl Neg for Hp {
    type Output = Hp;
    fn neg(self) -> Hp {
        Hp::wrap(-self.0)
    }
}

impl Real for Hp {
    fn from_f64(x: f64) -> Self {
        assert!(x.is_finite(), "non-finite value {x} cannot enter Hp");
        let v = Big::try_from(x).expect("finite f64 converts exactly");
        Hp::wrap(v.with_precision(HP_PRECISION).value())
    }

    fn to_f64(&self) -> f64 {
        self.0.to_f64().value()
    }

    fn sqrt(&self) -> Self {
        Hp::wrap(self.0.sqrt())
    }

    fn ln(&self) -> Self {
        Hp::wrap(self.0.ln())
    }

    fn exp(&self) -> Self {
        Hp::wrap(self.0.exp())
    }

    fn pure_threshold() -> Self {
        Hp::from_f64(1e-290)
    }
}
