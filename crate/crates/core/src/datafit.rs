//! Exact interpolation of sampled outputs and derivatives of the interpolant.

use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::Dataset;
use crate::poly::{rat, Rat};
use crate::univariate::UniPoly;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum InterpKind {
    /// Newton divided differences.
    Polynomial,
    /// Thiele continued fraction built from inverse differences.
    Rational,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interpolant {
    kind: InterpKind,
    nodes: Vec<Rat>,
    /// Divided differences, or continued-fraction coefficients.
    coeffs: Vec<Rat>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FitError {
    #[error("need at least 2 nodes, found {0}")]
    TooFewNodes(usize),
    #[error("repeated node {0}")]
    RepeatedNode(Rat),
    #[error("continued fraction breaks down at level {0}")]
    ThieleBreakdown(usize),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivError {
    #[error("expansion time {0} lies outside the data span")]
    OutsideSpan(Rat),
    #[error("order {requested} exceeds what {nodes} nodes determine")]
    OrderTooHigh { requested: usize, nodes: usize },
    #[error("interpolant has a pole at {0}")]
    Pole(Rat),
}

impl Interpolant {
    pub fn through(nodes: &[Rat], values: &[Rat], kind: InterpKind) -> Result<Self, FitError> {
        assert_eq!(nodes.len(), values.len());
        if nodes.len() < 2 {
            return Err(FitError::TooFewNodes(nodes.len()));
        }
        for (i, a) in nodes.iter().enumerate() {
            if nodes[..i].contains(a) {
                return Err(FitError::RepeatedNode(a.clone()));
            }
        }
        let coeffs = match kind {
            InterpKind::Polynomial => divided_differences(nodes, values),
            InterpKind::Rational => inverse_differences(nodes, values)?,
        };
        Ok(Interpolant {
            kind,
            nodes: nodes.to_vec(),
            coeffs,
        })
    }

    pub fn kind(&self) -> InterpKind {
        self.kind
    }

    pub fn nodes(&self) -> &[Rat] {
        &self.nodes
    }

    pub fn coeffs(&self) -> &[Rat] {
        &self.coeffs
    }

    /// Numerator and denominator as polynomials in `s = t - center`.
    fn shifted_parts(&self, center: &Rat) -> (UniPoly, UniPoly) {
        let n = self.coeffs.len();
        let lin = |k: usize| UniPoly::new(vec![center - &self.nodes[k], Rat::one()]);
        match self.kind {
            InterpKind::Polynomial => {
                let mut p = UniPoly::constant(self.coeffs[n - 1].clone());
                for k in (0..n - 1).rev() {
                    p = &(&p * &lin(k)) + &UniPoly::constant(self.coeffs[k].clone());
                }
                (p, UniPoly::one())
            }
            InterpKind::Rational => {
                // R_k = a_k + (s - s_k) / R_{k+1}, kept as P/Q
                let mut p = UniPoly::constant(self.coeffs[n - 1].clone());
                let mut q = UniPoly::one();
                for k in (0..n - 1).rev() {
                    let np = &p.scale(&self.coeffs[k]) + &(&lin(k) * &q);
                    q = p;
                    p = np;
                }
                (p, q)
            }
        }
    }

    pub fn eval(&self, t: &Rat) -> Option<Rat> {
        let (p, q) = self.shifted_parts(t);
        let d = q.coeff(0);
        if d.is_zero() {
            None
        } else {
            Some(p.coeff(0) / d)
        }
    }

    /// Derivatives of orders `0..=maxorder` at `tstar`.
    pub fn derivatives(&self, tstar: &Rat, maxorder: usize) -> Result<Vec<Rat>, DerivError> {
        let lo = self.nodes.iter().min().unwrap();
        let hi = self.nodes.iter().max().unwrap();
        if tstar < lo || tstar > hi {
            return Err(DerivError::OutsideSpan(tstar.clone()));
        }
        if maxorder >= self.nodes.len() {
            return Err(DerivError::OrderTooHigh {
                requested: maxorder,
                nodes: self.nodes.len(),
            });
        }
        let (p, q) = self.shifted_parts(tstar);
        let q0 = q.coeff(0);
        if q0.is_zero() {
            return Err(DerivError::Pole(tstar.clone()));
        }
        // Taylor coefficients of p/q by power-series division
        let mut series: Vec<Rat> = Vec::with_capacity(maxorder + 1);
        for k in 0..=maxorder {
            let mut acc = p.coeff(k);
            for j in 1..=k {
                acc -= q.coeff(j) * &series[k - j];
            }
            series.push(acc / &q0);
        }
        let mut fact = Rat::one();
        Ok(series
            .into_iter()
            .enumerate()
            .map(|(k, c)| {
                if k > 0 {
                    fact *= rat::int(k as i64);
                }
                c * &fact
            })
            .collect())
    }
}

fn divided_differences(nodes: &[Rat], values: &[Rat]) -> Vec<Rat> {
    let n = nodes.len();
    let mut table = values.to_vec();
    let mut out = vec![table[0].clone()];
    for level in 1..n {
        for i in 0..n - level {
            table[i] = (&table[i + 1] - &table[i]) / (&nodes[i + level] - &nodes[i]);
        }
        out.push(table[0].clone());
    }
    out
}

fn inverse_differences(nodes: &[Rat], values: &[Rat]) -> Result<Vec<Rat>, FitError> {
    let n = nodes.len();
    let mut phi = values.to_vec();
    let mut out = vec![phi[0].clone()];
    for k in 1..n {
        let base = phi[k - 1].clone();
        let diffs: Vec<Rat> = (k..n).map(|i| &phi[i] - &base).collect();
        if diffs.iter().all(Zero::is_zero) {
            // remaining data already reproduced: the fraction terminates here
            break;
        }
        if diffs.iter().any(Zero::is_zero) {
            return Err(FitError::ThieleBreakdown(k));
        }
        for (i, d) in (k..n).zip(diffs) {
            phi[i] = (&nodes[i] - &nodes[k - 1]) / d;
        }
        out.push(phi[k].clone());
    }
    Ok(out)
}

pub fn fit_interpolant(data: &Dataset, output: usize, kind: InterpKind) -> Result<Interpolant, FitError> {
    Interpolant::through(data.times(), data.values(output), kind)
}

pub fn estimate_derivatives(ip: &Interpolant, tstar: &Rat, maxorder: usize) -> Result<Vec<Rat>, DerivError> {
    ip.derivatives(tstar, maxorder)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(v: &[(i64, i64)]) -> Vec<Rat> {
        v.iter().map(|&(n, d)| rat::frac(n, d)).collect()
    }

    fn toy() -> (Vec<Rat>, Vec<Rat>) {
        (
            r(&[(0, 1), (33, 100), (66, 100), (1, 1)]),
            r(&[(2, 1), (156, 100), (123, 100), (97, 100)]),
        )
    }

    #[test]
    fn toy_cubic_derivatives() {
        let (t, y) = toy();
        let ip = Interpolant::through(&t, &y, InterpKind::Polynomial).unwrap();
        let d = ip.derivatives(&rat::int(0), 2).unwrap();
        assert_eq!(d, r(&[(2, 1), (-174667, 113900), (148253, 112761)]));
        for (ti, yi) in t.iter().zip(&y) {
            assert_eq!(ip.eval(ti).as_ref(), Some(yi));
        }
    }

    #[test]
    fn constant_and_quadratic_data() {
        let t = r(&[(0, 1), (1, 1), (2, 1)]);
        let c = r(&[(7, 3), (7, 3), (7, 3)]);
        for kind in [InterpKind::Polynomial, InterpKind::Rational] {
            let ip = Interpolant::through(&t, &c, kind).unwrap();
            assert_eq!(ip.derivatives(&rat::int(1), 2).unwrap(), r(&[(7, 3), (0, 1), (0, 1)]));
        }
        let sq: Vec<Rat> = t.iter().map(|x| x * x).collect();
        let ip = Interpolant::through(&t, &sq, InterpKind::Polynomial).unwrap();
        assert_eq!(ip.derivatives(&rat::int(1), 2).unwrap(), r(&[(1, 1), (2, 1), (2, 1)]));
        assert!(matches!(
            ip.derivatives(&rat::int(1), 3),
            Err(DerivError::OrderTooHigh { .. })
        ));
        assert!(matches!(ip.derivatives(&rat::int(5), 1), Err(DerivError::OutsideSpan(_))));
    }

    #[test]
    fn thiele_reproduces_a_rational_function() {
        // y = (1 + t) / (2 + t^2) is recovered exactly from 5 samples
        let f = |t: &Rat| (Rat::one() + t) / (rat::int(2) + t * t);
        let t: Vec<Rat> = (0..5).map(|k| rat::frac(k, 3)).collect();
        let y: Vec<Rat> = t.iter().map(f).collect();
        let ip = Interpolant::through(&t, &y, InterpKind::Rational).unwrap();
        for k in 0..8 {
            let x = rat::frac(2 * k + 1, 7);
            assert_eq!(ip.eval(&x), Some(f(&x)));
        }
        // f = (1 + t)(1 - t^2/2 + ...)/2
        let d = ip.derivatives(&rat::int(0), 2).unwrap();
        assert_eq!(d, r(&[(1, 2), (1, 2), (-1, 2)]));
    }

    #[test]
    fn thiele_breakdown_is_reported() {
        let t = r(&[(0, 1), (1, 1), (2, 1)]);
        let y = r(&[(1, 1), (2, 1), (1, 1)]);
        assert_eq!(
            Interpolant::through(&t, &y, InterpKind::Rational),
            Err(FitError::ThieleBreakdown(1))
        );
    }
}
