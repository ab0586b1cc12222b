//! Dense univariate polynomials over the rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::poly::{rat, Monomial, Poly, Rat, Registry};

/// Coefficients stored from the constant term upwards, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Rat>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Rat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat::int(c)).collect())
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::new(vec![c])
    }

    /// The identity polynomial `T`.
    pub fn x() -> Self {
        Self::new(vec![Rat::zero(), Rat::one()])
    }

    /// `prod (T - r)` over the given roots.
    pub fn from_roots(roots: &[Rat]) -> Self {
        roots.iter().fold(UniPoly::one(), |acc, r| {
            &acc * &UniPoly::new(vec![-r.clone(), Rat::one()])
        })
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Rat {
        self.coeffs.get(i).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading_coeff(&self) -> Rat {
        self.coeffs.last().cloned().unwrap_or_else(Rat::zero)
    }

    pub fn eval(&self, x: &Rat) -> Rat {
        let mut acc = Rat::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + rat::to_f64(c))
    }

    /// Sign of the value at `x`: -1, 0 or 1.
    pub fn sign_at(&self, x: &Rat) -> i32 {
        let v = self.eval(x);
        if v.is_zero() {
            0
        } else if v.is_positive() {
            1
        } else {
            -1
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat::int(i as i64))
                .collect(),
        )
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(&self.leading_coeff().recip())
    }

    /// Euclidean division. Panics on a zero divisor.
    pub fn div_rem(&self, d: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading_coeff().recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![Rat::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] * &lc_inv;
            if !c.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * dc;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, d: &UniPoly) -> UniPoly {
        self.div_rem(d).1
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(), UniPoly::zero());
        let (mut t0, mut t1) = (UniPoly::zero(), UniPoly::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = &s0 - &(&q * &s1);
            let t = &t0 - &(&q * &t1);
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.leading_coeff().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Inverse modulo `m`, if `gcd(self, m) = 1`.
    pub fn inverse_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = self.rem(m).ext_gcd(m);
        if g.degree() == Some(0) {
            Some(s.rem(m))
        } else {
            None
        }
    }

    /// `p(T + c)`.
    pub fn taylor_shift(&self, c: &Rat) -> UniPoly {
        let mut a = self.coeffs.clone();
        let n = a.len();
        for i in 0..n {
            for j in (i..n.saturating_sub(1)).rev() {
                let t = &a[j + 1] * c;
                a[j] += t;
            }
        }
        UniPoly::new(a)
    }

    /// `p(s*T)`.
    pub fn scale_arg(&self, s: &Rat) -> UniPoly {
        let mut f = Rat::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for c in &self.coeffs {
            out.push(c * &f);
            f *= s;
        }
        UniPoly::new(out)
    }

    /// Positive rational content (gcd of numerators over lcm of denominators).
    pub fn content(&self) -> Rat {
        let mut g = BigInt::zero();
        let mut l = BigInt::one();
        for c in &self.coeffs {
            g = g.gcd(c.numer());
            l = l.lcm(c.denom());
        }
        if g.is_zero() {
            Rat::zero()
        } else {
            Rat::new(g, l)
        }
    }

    /// Scaled to coprime integer coefficients with a positive leading coefficient.
    pub fn primitive_part(&self) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = self.content();
        if self.leading_coeff().is_negative() {
            c = -c;
        }
        self.scale(&c.recip())
    }

    /// Integer coefficients of the primitive part.
    pub fn integer_coeffs(&self) -> Vec<BigInt> {
        self.primitive_part()
            .coeffs
            .iter()
            .map(|c| {
                debug_assert!(rat::is_integer(c));
                c.numer().clone()
            })
            .collect()
    }

    /// Reads a polynomial in a single variable (or a constant) as dense.
    pub fn from_poly(p: &Poly, var: usize) -> Option<UniPoly> {
        let mut coeffs = vec![Rat::zero(); p.degree_in(var) as usize + 1];
        for (m, c) in p.terms() {
            if m.exps().iter().enumerate().any(|(i, &e)| i != var && e > 0) {
                return None;
            }
            coeffs[m.exp(var) as usize] = c.clone();
        }
        Some(UniPoly::new(coeffs))
    }

    /// Sparse polynomial in variable `var` of `registry`.
    pub fn to_poly(&self, registry: &Registry, var: usize) -> Poly {
        Poly::from_terms(
            registry,
            self.coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| (Monomial::var(registry.len(), var, i as u32), c.clone())),
        )
    }

    /// `self^e mod m`.
    pub fn pow_mod(&self, e: u32, m: &UniPoly) -> UniPoly {
        let mut result = UniPoly::one().rem(m);
        let mut base = self.rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = (&result * &base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = (&base * &base).rem(m);
            }
        }
        result
    }

    pub fn fmt_var(&self, var: &str) -> String {
        let reg = Registry::new([var]).expect("single name");
        self.to_poly(&reg, 0).to_string()
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.fmt_var("T"))
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly({})", self)
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut out = vec![Rat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UniPoly::new(out)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn up(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        let f = &up(&[-2, 1, 1]) * &up(&[-1, 1]); // (T^2+T-2)(T-1)
        let (q, r) = f.div_rem(&up(&[-1, 1]));
        assert_eq!(q, up(&[-2, 1, 1]));
        assert!(r.is_zero());
        assert_eq!(f.gcd(&f.derivative()), up(&[-1, 1]));
        assert_eq!(up(&[1, 0, 1]).gcd(&up(&[-2, 0, 1])), UniPoly::one());
    }

    #[test]
    fn extended_gcd_and_inverse() {
        let a = up(&[1, 2, 3]);
        let m = up(&[-2, 0, 1]);
        let inv = a.inverse_mod(&m).unwrap();
        assert_eq!((&a * &inv).rem(&m), UniPoly::one());
        assert!(up(&[-1, 1]).inverse_mod(&up(&[1, -2, 1])).is_none());
    }

    #[test]
    fn taylor_shift_matches_evaluation() {
        let f = up(&[3, -1, 0, 2]);
        let c = rat::frac(-5, 3);
        let g = f.taylor_shift(&c);
        for x in [-2i64, 0, 1, 7] {
            let x = rat::int(x);
            assert_eq!(g.eval(&x), f.eval(&(&x + &c)));
        }
        let h = f.scale_arg(&rat::frac(1, 2));
        assert_eq!(h.eval(&rat::int(4)), f.eval(&rat::int(2)));
    }

    #[test]
    fn primitive_integer_coefficients() {
        let f = UniPoly::new(vec![rat::frac(-1, 2), rat::frac(3, 4), rat::frac(-1, 6)]);
        assert_eq!(
            f.integer_coeffs(),
            vec![BigInt::from(6), BigInt::from(-9), BigInt::from(2)]
        );
    }

    #[test]
    fn sparse_conversion() {
        let reg = Registry::new(["T"]).unwrap();
        let p = Poly::parse("T^2 + T - 2", &reg).unwrap();
        let u = UniPoly::from_poly(&p, 0).unwrap();
        assert_eq!(u, up(&[-2, 1, 1]));
        assert_eq!(u.to_poly(&reg, 0), p);
        assert_eq!(u.to_string(), "T^2 + T - 2");
    }
}
