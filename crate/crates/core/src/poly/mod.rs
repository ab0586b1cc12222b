//! Exact multivariate polynomials over the rationals.
//!
//! Every polynomial is tied to a [`Registry`] that names its variables.
//! Terms are kept in a sparse map from [`Monomial`] to a nonzero [`Rat`],
//! so two polynomials with the same registry compare equal exactly when
//! they are the same mathematical object.

mod monomial;
mod order;
pub mod parse;
mod ratfun;
pub mod rat;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

pub use monomial::Monomial;
pub use order::{OrderKind, TermOrder};
pub use rat::Rat;
pub use ratfun::{clear_denominators, RatFun};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("registry mismatch: operands live over different variable sets")]
    RegistryMismatch,
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("expression is not a polynomial")]
    NotPolynomial,
}

/// Ordered set of variable names shared by a family of polynomials.
#[derive(Clone)]
pub struct Registry {
    names: Arc<[String]>,
}

impl Registry {
    pub fn new<I, S>(names: I) -> Result<Self, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Registry {
            names: names.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }
}

impl PartialEq for Registry {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.names, &other.names) || self.names == other.names
    }
}

impl Eq for Registry {}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.names.iter()).finish()
    }
}

/// Sparse polynomial with exact rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    registry: Registry,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    pub fn zero(registry: &Registry) -> Self {
        Poly {
            registry: registry.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn one(registry: &Registry) -> Self {
        Self::constant(registry, Rat::one())
    }

    pub fn constant(registry: &Registry, c: Rat) -> Self {
        let mut p = Self::zero(registry);
        if !c.is_zero() {
            p.terms.insert(Monomial::one(registry.len()), c);
        }
        p
    }

    /// The polynomial consisting of the single variable `index`.
    pub fn var(registry: &Registry, index: usize) -> Self {
        assert!(index < registry.len(), "variable index out of range");
        let mut p = Self::zero(registry);
        p.terms
            .insert(Monomial::var(registry.len(), index, 1), Rat::one());
        p
    }

    pub fn term(registry: &Registry, mono: Monomial, coeff: Rat) -> Self {
        assert_eq!(mono.len(), registry.len());
        let mut p = Self::zero(registry);
        if !coeff.is_zero() {
            p.terms.insert(mono, coeff);
        }
        p
    }

    /// Builds a polynomial from (possibly repeated) terms, merging duplicates.
    pub fn from_terms<I>(registry: &Registry, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Rat)>,
    {
        let mut p = Self::zero(registry);
        for (m, c) in terms {
            assert_eq!(m.len(), registry.len());
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    /// Value of the constant term.
    pub fn constant_term(&self) -> Rat {
        self.terms
            .get(&Monomial::one(self.registry.len()))
            .cloned()
            .unwrap_or_else(Rat::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in the canonical (lexicographic on exponent vectors) storage order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn coeff(&self, m: &Monomial) -> Rat {
        self.terms.get(m).cloned().unwrap_or_else(Rat::zero)
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(var)).max().unwrap_or(0)
    }

    /// Indices of variables that occur with a positive exponent.
    pub fn variables(&self) -> Vec<usize> {
        let mut used = vec![false; self.registry.len()];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter()
            .enumerate()
            .filter_map(|(i, &u)| u.then_some(i))
            .collect()
    }

    pub fn leading_term(&self, order: &TermOrder) -> Option<(&Monomial, &Rat)> {
        self.terms
            .iter()
            .max_by(|a, b| order.compare(a.0, b.0))
    }

    /// Terms sorted from largest to smallest under `order`.
    pub fn sorted_terms(&self, order: &TermOrder) -> Vec<(&Monomial, &Rat)> {
        let mut v: Vec<_> = self.terms.iter().collect();
        v.sort_by(|a, b| order.compare(b.0, a.0));
        v
    }

    fn check_registry(&self, other: &Poly) -> Result<(), PolyError> {
        if self.registry == other.registry {
            Ok(())
        } else {
            Err(PolyError::RegistryMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_registry(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_registry(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), -c);
        }
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.check_registry(other)?;
        let mut out = Poly::zero(&self.registry);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.registry);
        }
        Poly {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.clone(), v * c))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, mono: &Monomial) -> Poly {
        Poly {
            registry: self.registry.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, v)| (m.mul(mono), v.clone()))
                .collect(),
        }
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut result = Poly::one(&self.registry);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact evaluation. Panics if `point` does not match the registry size.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.registry.len(), "point has wrong length");
        let mut acc = Rat::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= rat::pow(&point[i], e);
                }
            }
            acc += t;
        }
        acc
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        assert_eq!(point.len(), self.registry.len(), "point has wrong length");
        self.terms
            .iter()
            .map(|(m, c)| {
                let mut t = rat::to_f64(c);
                for (i, &e) in m.exps().iter().enumerate() {
                    if e > 0 {
                        t *= point[i].powi(e as i32);
                    }
                }
                t
            })
            .sum()
    }

    /// Formal partial derivative with respect to variable `var`.
    pub fn diff(&self, var: usize) -> Poly {
        let mut out = Poly::zero(&self.registry);
        for (m, c) in &self.terms {
            let e = m.exp(var);
            if e > 0 {
                let mut exps = m.exps().to_vec();
                exps[var] -= 1;
                out.add_term(Monomial::new(exps), c * Rat::from_integer(BigInt::from(e)));
            }
        }
        out
    }

    /// Positive rational `c` such that `self / c` has coprime integer coefficients.
    /// Zero for the zero polynomial.
    pub fn content(&self) -> Rat {
        let mut num_gcd = BigInt::zero();
        let mut den_lcm = BigInt::one();
        for c in self.terms.values() {
            num_gcd = num_gcd.gcd(c.numer());
            den_lcm = den_lcm.lcm(c.denom());
        }
        if num_gcd.is_zero() {
            Rat::zero()
        } else {
            Rat::new(num_gcd, den_lcm)
        }
    }

    /// `self / content(self)`, so integer coefficients with gcd one.
    pub fn primitive(&self) -> Poly {
        let c = self.content();
        if c.is_zero() {
            return self.clone();
        }
        self.scale(&c.recip())
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        if d.is_zero() || self.registry != d.registry {
            return None;
        }
        let order = TermOrder::grevlex(self.registry.len());
        let (lm, lc) = d.leading_term(&order).map(|(m, c)| (m.clone(), c.clone()))?;
        let mut rem = self.clone();
        let mut quot = Poly::zero(&self.registry);
        while let Some((m, c)) = rem.leading_term(&order) {
            let mono = m.div(&lm)?;
            let coef = c / &lc;
            rem = &rem - &d.mul_monomial(&mono).scale(&coef);
            quot.add_term(mono, coef);
        }
        Some(quot)
    }

    /// Substitutes every variable `i` by `images[i]`, producing a polynomial
    /// over the images' registry.
    pub fn compose(&self, target: &Registry, images: &[Poly]) -> Poly {
        assert_eq!(images.len(), self.registry.len());
        let mut cache: Vec<Vec<Poly>> = vec![Vec::new(); images.len()];
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let powers = &mut cache[i];
                if powers.is_empty() {
                    powers.push(Poly::one(target));
                }
                while powers.len() <= e as usize {
                    let next = &powers[powers.len() - 1] * &images[i];
                    powers.push(next);
                }
                t = &t * &powers[e as usize];
            }
            for (mm, cc) in t.terms {
                out.add_term(mm, cc);
            }
        }
        out
    }

    /// Moves the polynomial to `target`, sending variable `i` to `map[i]`.
    /// Panics if a used variable has no image.
    pub fn remap(&self, target: &Registry, map: &[Option<usize>]) -> Poly {
        assert_eq!(map.len(), self.registry.len());
        let mut out = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut exps = vec![0u32; target.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    let j = map[i].unwrap_or_else(|| {
                        panic!("variable `{}` has no image", self.registry.name(i))
                    });
                    exps[j] += e;
                }
            }
            out.add_term(Monomial::new(exps), c.clone());
        }
        out
    }

    /// Moves the polynomial to `target` by matching variable names.
    pub fn rename_into(&self, target: &Registry) -> Result<Poly, PolyError> {
        let mut map = Vec::with_capacity(self.registry.len());
        for (i, name) in self.registry.names().iter().enumerate() {
            let j = target.index_of(name);
            if j.is_none() && self.degree_in(i) > 0 {
                return Err(PolyError::UnknownVariable(name.clone()));
            }
            map.push(j);
        }
        Ok(self.remap(target, &map))
    }

    pub fn parse(text: &str, registry: &Registry) -> Result<Poly, parse::ParseError> {
        parse::parse_poly(text, registry)
    }

    fn fmt_with(&self, f: &mut fmt::Formatter<'_>, order: &TermOrder) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.sorted_terms(order).into_iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mut factors = Vec::new();
            if !abs.is_one() || m.is_one() {
                factors.push(abs.to_string());
            }
            for (i, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.registry.name(i).to_string()),
                    _ => factors.push(format!("{}^{}", self.registry.name(i), e)),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.fmt_with(f, &TermOrder::grevlex(self.registry.len()))
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({})", self)
    }
}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.registry.names.hash(state);
        for (m, c) in &self.terms {
            m.hash(state);
            c.hash(state);
        }
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl $tr<&Poly> for &Poly {
            type Output = Poly;
            /// Panics on registry mismatch; use the `checked_*` form to get an error.
            fn $method(self, rhs: &Poly) -> Poly {
                self.$checked(rhs).expect("polynomial registry mismatch")
            }
        }
        impl $tr<Poly> for Poly {
            type Output = Poly;
            fn $method(self, rhs: Poly) -> Poly {
                (&self).$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            registry: self.registry.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn reg(names: &[&str]) -> Registry {
        Registry::new(names.iter().copied()).unwrap()
    }

    fn p(s: &str, r: &Registry) -> Poly {
        Poly::parse(s, r).unwrap()
    }

    #[test]
    fn add_identity_and_cancellation() {
        let r = reg(&["x"]);
        assert_eq!(&p("x^2+x", &r) + &Poly::zero(&r), p("x^2+x", &r));
        assert!((&p("x+1", &r) + &p("-x-1", &r)).is_zero());
    }

    #[test]
    fn toy_left_hand_sides() {
        let r = reg(&["x0", "x1"]);
        assert_eq!(&p("x0^2", &r) + &p("x0", &r), p("x0^2 + x0", &r));
        let lhs = &(&p("2x1", &r) * &p("x0", &r)) + &p("x1", &r);
        assert_eq!(lhs, p("2*x1*x0 + x1", &r));
        assert_eq!(lhs.to_string(), "2*x0*x1 + x1");
    }

    #[test]
    fn mul_examples() {
        let r = reg(&["x"]);
        assert_eq!(&p("x+1", &r) * &p("x-1", &r), p("x^2-1", &r));
        let q = p("3x^2 - 1/2 x + 7", &r);
        assert_eq!(&q * &Poly::one(&r), q);
    }

    #[test]
    fn registry_mismatch_is_reported() {
        let a = Poly::var(&reg(&["x"]), 0);
        let b = Poly::var(&reg(&["y"]), 0);
        assert_eq!(a.checked_add(&b), Err(PolyError::RegistryMismatch));
        assert_eq!(a.checked_mul(&b), Err(PolyError::RegistryMismatch));
        // same names, different allocation: still compatible
        let c = Poly::var(&reg(&["x"]), 0);
        assert!(a.checked_add(&c).is_ok());
    }

    #[test]
    fn eval_examples() {
        let r = reg(&["x0"]);
        let q = p("x0^2 + x0", &r);
        assert_eq!(q.eval(&[rat::int(1)]), rat::int(2));
        assert_eq!(q.eval(&[rat::int(-2)]), rat::int(2));
        assert_eq!(Poly::zero(&r).eval(&[rat::int(17)]), rat::int(0));
    }

    #[test]
    fn diff_examples() {
        let r = reg(&["x"]);
        assert_eq!(p("x^2+x", &r).diff(0), p("2x+1", &r));
        assert!(p("5/3", &r).diff(0).is_zero());
        let rt = reg(&["T"]);
        assert_eq!(p("T^2+T-2", &rt).diff(0), p("2T+1", &rt));
    }

    #[test]
    fn content_and_primitive() {
        let r = reg(&["x", "y"]);
        let q = p("4/3 x - 2/9 y", &r);
        assert_eq!(q.content(), Rat::new(2.into(), 9.into()));
        assert_eq!(q.primitive(), p("6x - y", &r));
    }

    #[test]
    fn compose_substitutes() {
        let r = reg(&["x", "y"]);
        let t = reg(&["t"]);
        let q = p("x*y + y^2", &r);
        let images = [p("t+1", &t), p("2t", &t)];
        assert_eq!(q.compose(&t, &images), p("6t^2 + 2t", &t));
    }

    #[test]
    fn degree_queries() {
        let r = reg(&["x", "y"]);
        let q = p("x^3*y + y^2 + 1", &r);
        assert_eq!(q.total_degree(), Some(4));
        assert_eq!(q.degree_in(1), 2);
        assert_eq!(Poly::zero(&r).total_degree(), None);
        assert_eq!(q.variables(), vec![0, 1]);
    }

    #[test]
    fn display_round_trips() {
        let r = reg(&["x", "y"]);
        for s in ["x^2*y - 3/4*y + 2", "-x", "0", "-7/2", "x*y^3 + x^2"] {
            let q = p(s, &r);
            assert_eq!(p(&q.to_string(), &r), q, "{s}");
        }
    }
}
