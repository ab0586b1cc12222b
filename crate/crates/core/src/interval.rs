//! Closed intervals with rational endpoints.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::poly::{rat, Poly, Rat};
use crate::univariate::UniPoly;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rat,
    hi: Rat,
}

impl Interval {
    pub fn new(lo: Rat, hi: Rat) -> Self {
        assert!(lo <= hi, "empty interval");
        Interval { lo, hi }
    }

    pub fn point(x: Rat) -> Self {
        Interval {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn lo(&self) -> &Rat {
        &self.lo
    }

    pub fn hi(&self) -> &Rat {
        &self.hi
    }

    pub fn width(&self) -> Rat {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rat {
        (&self.lo + &self.hi) / rat::int(2)
    }

    pub fn contains(&self, x: &Rat) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(&Rat::zero())
    }

    /// Largest absolute value over the interval.
    pub fn magnitude(&self) -> Rat {
        self.lo.abs().max(self.hi.abs())
    }

    pub fn add(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &o.lo,
            hi: &self.hi + &o.hi,
        }
    }

    pub fn sub(&self, o: &Interval) -> Interval {
        Interval {
            lo: &self.lo - &o.hi,
            hi: &self.hi - &o.lo,
        }
    }

    pub fn neg(&self) -> Interval {
        Interval {
            lo: -self.hi.clone(),
            hi: -self.lo.clone(),
        }
    }

    pub fn scale(&self, c: &Rat) -> Interval {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if a <= b {
            Interval { lo: a, hi: b }
        } else {
            Interval { lo: b, hi: a }
        }
    }

    pub fn mul(&self, o: &Interval) -> Interval {
        let p = [
            &self.lo * &o.lo,
            &self.lo * &o.hi,
            &self.hi * &o.lo,
            &self.hi * &o.hi,
        ];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Interval { lo, hi }
    }

    /// Tight enclosure of `x^e` (even powers stay non-negative).
    pub fn pow(&self, e: u32) -> Interval {
        if e == 0 {
            return Interval::point(Rat::one());
        }
        let a = rat::pow(&self.lo, e);
        let b = rat::pow(&self.hi, e);
        if e % 2 == 1 {
            Interval { lo: a, hi: b }
        } else if self.contains_zero() {
            Interval {
                lo: Rat::zero(),
                hi: a.max(b),
            }
        } else {
            Interval {
                lo: a.clone().min(b.clone()),
                hi: a.max(b),
            }
        }
    }

    /// `None` when the divisor contains zero.
    pub fn div(&self, o: &Interval) -> Option<Interval> {
        if o.contains_zero() {
            return None;
        }
        let inv = Interval {
            lo: o.hi.recip(),
            hi: o.lo.recip(),
        };
        Some(self.mul(&inv))
    }

    /// Widens to endpoints that are multiples of `2^-bits`.
    pub fn round_outward(&self, bits: u32) -> Interval {
        let scale = Rat::from_integer(BigInt::one() << bits);
        let lo = (&self.lo * &scale).floor() / &scale;
        let hi = (&self.hi * &scale).ceil() / &scale;
        Interval { lo, hi }
    }

    /// Rounds outward only when an endpoint has grown a large denominator.
    pub fn tame(&self, bits: u32) -> Interval {
        let big = |r: &Rat| r.denom().bits() > u64::from(bits);
        if big(&self.lo) || big(&self.hi) {
            self.round_outward(bits)
        } else {
            self.clone()
        }
    }

    pub fn hull(&self, o: &Interval) -> Interval {
        Interval {
            lo: self.lo.clone().min(o.lo.clone()),
            hi: self.hi.clone().max(o.hi.clone()),
        }
    }
}

impl fmt::Debug for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}]", self.lo, self.hi)
    }
}

/// Interval Horner evaluation.
pub fn eval_uni(p: &UniPoly, x: &Interval) -> Interval {
    let mut acc = Interval::point(Rat::zero());
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(x).add(&Interval::point(c.clone()));
    }
    acc
}

/// Enclosure of `p` over a box, term by term.
pub fn eval_poly(p: &Poly, point: &[Interval]) -> Interval {
    assert_eq!(point.len(), p.registry().len());
    let mut acc = Interval::point(Rat::zero());
    for (m, c) in p.terms() {
        let mut t = Interval::point(c.clone());
        for (i, &e) in m.exps().iter().enumerate() {
            if e > 0 {
                t = t.mul(&point[i].pow(e));
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// Smallest `k` with `2^-k <= r` for positive `r`.
pub fn bits_for(r: &Rat) -> u32 {
    assert!(r.is_positive());
    let mut k = 0u32;
    let mut v = r.clone();
    while v < Rat::one() {
        v *= rat::int(2);
        k += 1;
    }
    k
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iv(a: i64, b: i64) -> Interval {
        Interval::new(rat::int(a), rat::int(b))
    }

    #[test]
    fn basic_operations() {
        assert_eq!(iv(1, 2).add(&iv(-3, 1)), iv(-2, 3));
        assert_eq!(iv(1, 2).sub(&iv(-3, 1)), iv(0, 5));
        assert_eq!(iv(-1, 2).mul(&iv(-3, 1)), iv(-6, 3));
        assert_eq!(iv(-2, 1).pow(2), iv(0, 4));
        assert_eq!(iv(-3, -1).pow(2), iv(1, 9));
        assert_eq!(iv(-3, -1).pow(3), iv(-27, -1));
        assert!(iv(1, 2).div(&iv(-1, 1)).is_none());
        assert_eq!(
            iv(1, 2).div(&iv(2, 4)).unwrap(),
            Interval::new(rat::frac(1, 4), rat::int(1))
        );
    }

    #[test]
    fn outward_rounding_encloses() {
        let x = Interval::new(rat::frac(1, 3), rat::frac(2, 3));
        let r = x.round_outward(4);
        assert!(r.lo() <= x.lo() && r.hi() >= x.hi());
        assert_eq!(r, Interval::new(rat::frac(5, 16), rat::frac(11, 16)));
        assert_eq!(bits_for(&rat::frac(1, 1000)), 10);
    }

    #[test]
    fn horner_enclosure_contains_values() {
        let p = UniPoly::from_ints(&[-2, 1, 1]);
        let x = Interval::new(rat::frac(9, 10), rat::frac(11, 10));
        let e = eval_uni(&p, &x);
        assert!(e.contains_zero());
        for k in 9..=11 {
            assert!(e.contains(&p.eval(&rat::frac(k, 10))));
        }
    }
}
