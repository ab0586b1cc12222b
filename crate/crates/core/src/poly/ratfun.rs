use std::fmt;

use num_traits::{One, Signed, Zero};

use super::{Poly, PolyError, Rat, Registry, TermOrder};

/// Quotient of two polynomials over a shared registry.
///
/// The denominator is never zero. It is stored monic with respect to grevlex
/// and collapses to `1` whenever it divides the numerator exactly.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFun {
    num: Poly,
    den: Poly,
}

impl RatFun {
    pub fn new(num: Poly, den: Poly) -> Result<Self, PolyError> {
        if num.registry() != den.registry() {
            return Err(PolyError::RegistryMismatch);
        }
        if den.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: Poly) -> Self {
        let den = Poly::one(p.registry());
        RatFun { num: p, den }
    }

    pub fn constant(registry: &Registry, c: Rat) -> Self {
        Self::from_poly(Poly::constant(registry, c))
    }

    fn normalized(num: Poly, den: Poly) -> Self {
        let reg = num.registry().clone();
        if num.is_zero() {
            return RatFun {
                num,
                den: Poly::one(&reg),
            };
        }
        if den.is_constant() {
            let c = den.constant_term();
            return RatFun {
                num: num.scale(&c.recip()),
                den: Poly::one(&reg),
            };
        }
        if let Some(q) = num.div_exact(&den) {
            return RatFun {
                num: q,
                den: Poly::one(&reg),
            };
        }
        let order = TermOrder::grevlex(reg.len());
        let lc = den.leading_term(&order).map(|(_, c)| c.clone()).unwrap();
        let inv = lc.recip();
        RatFun {
            num: num.scale(&inv),
            den: den.scale(&inv),
        }
    }

    pub fn num(&self) -> &Poly {
        &self.num
    }

    pub fn den(&self) -> &Poly {
        &self.den
    }

    pub fn registry(&self) -> &Registry {
        self.num.registry()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn as_poly(&self) -> Option<&Poly> {
        self.is_polynomial().then_some(&self.num)
    }

    pub fn add(&self, other: &RatFun) -> Result<RatFun, PolyError> {
        if self.den == other.den {
            return RatFun::new(self.num.checked_add(&other.num)?, self.den.clone());
        }
        let n = self
            .num
            .checked_mul(&other.den)?
            .checked_add(&other.num.checked_mul(&self.den)?)?;
        RatFun::new(n, self.den.checked_mul(&other.den)?)
    }

    pub fn sub(&self, other: &RatFun) -> Result<RatFun, PolyError> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &RatFun) -> Result<RatFun, PolyError> {
        RatFun::new(
            self.num.checked_mul(&other.num)?,
            self.den.checked_mul(&other.den)?,
        )
    }

    pub fn div(&self, other: &RatFun) -> Result<RatFun, PolyError> {
        if other.is_zero() {
            return Err(PolyError::ZeroDenominator);
        }
        RatFun::new(
            self.num.checked_mul(&other.den)?,
            self.den.checked_mul(&other.num)?,
        )
    }

    pub fn neg(&self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn powi(&self, e: i32) -> Result<RatFun, PolyError> {
        let base = if e < 0 {
            RatFun::from_poly(Poly::one(self.registry())).div(self)?
        } else {
            self.clone()
        };
        let k = e.unsigned_abs();
        Ok(RatFun {
            num: base.num.pow(k),
            den: base.den.pow(k),
        })
    }

    /// Partial derivative by the quotient rule.
    pub fn diff(&self, var: usize) -> RatFun {
        if self.is_polynomial() {
            return RatFun::from_poly(self.num.diff(var));
        }
        let n = &(&self.num.diff(var) * &self.den) - &(&self.num * &self.den.diff(var));
        RatFun::normalized(n, &self.den * &self.den)
    }

    /// Exact value, or `None` where the denominator vanishes.
    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.num.eval_f64(point) / self.den.eval_f64(point)
    }

    /// Substitutes polynomial images for every variable.
    pub fn compose(&self, target: &Registry, images: &[Poly]) -> Result<RatFun, PolyError> {
        RatFun::new(
            self.num.compose(target, images),
            self.den.compose(target, images),
        )
    }

    pub fn rename_into(&self, target: &Registry) -> Result<RatFun, PolyError> {
        RatFun::new(self.num.rename_into(target)?, self.den.rename_into(target)?)
    }

    pub fn variables(&self) -> Vec<usize> {
        let mut v = self.num.variables();
        v.extend(self.den.variables());
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFun({})", self)
    }
}

/// Splits a rational function into a numerator and denominator with integer,
/// content-free coefficients. The denominator is `1` when it is constant and
/// otherwise has a positive leading coefficient under grevlex.
pub fn clear_denominators(r: &RatFun) -> Result<(Poly, Poly), PolyError> {
    let reg = r.registry().clone();
    if r.den.is_zero() {
        return Err(PolyError::ZeroDenominator);
    }
    let num_c = r.num.content();
    let den_c = r.den.content();
    let mut den = r.den.primitive();
    let mut scalar = if num_c.is_zero() {
        Rat::zero()
    } else {
        num_c / den_c
    };
    let order = TermOrder::grevlex(reg.len());
    if let Some((_, lc)) = den.leading_term(&order) {
        if lc.is_negative() {
            den = -&den;
            scalar = -scalar;
        }
    }
    let num = r.num.primitive().scale(&scalar);
    if den.is_constant() {
        debug_assert!(den.constant_term().is_one());
        return Ok((num, Poly::one(&reg)));
    }
    Ok((num, den))
}
