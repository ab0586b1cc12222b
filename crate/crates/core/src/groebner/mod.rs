//! Reduced Gröbner bases over the rationals.
//!
//! The engine is Buchberger's algorithm with the sugar selection strategy and
//! the Gebauer–Möller criteria. Intermediate polynomials are kept with
//! primitive integer coefficients (fraction-free reduction followed by content
//! removal); the final basis is interreduced and made monic.

mod engine;

use std::fmt;

use thiserror::Error;

use crate::budget::{Deadline, TimedOut};
use crate::poly::{Monomial, Poly, Rat, Registry, TermOrder};

pub use engine::normal_form_terms;

/// Reduced Gröbner basis: monic, interreduced, sorted by leading monomial.
#[derive(Clone, PartialEq, Eq)]
pub struct GroebnerBasis {
    generators: Vec<Poly>,
    leading: Vec<Monomial>,
    order: TermOrder,
    registry: Registry,
}

impl GroebnerBasis {
    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn order(&self) -> &TermOrder {
        &self.order
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    /// The basis is `{1}`: the equations have no common complex solution.
    pub fn is_inconsistent(&self) -> bool {
        self.generators.len() == 1 && self.generators[0].is_constant()
    }

    pub fn contains(&self, p: &Poly) -> bool {
        normal_form(p, self).is_zero()
    }
}

impl fmt::Display for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# groebner basis ({} generators)", self.generators.len())?;
        for g in &self.generators {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}

impl fmt::Debug for GroebnerBasis {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.generators.iter()).finish()
    }
}

/// Reduced Gröbner basis of the ideal generated by `polys`.
pub fn buchberger(polys: &[Poly], order: &TermOrder) -> GroebnerBasis {
    buchberger_with_deadline(polys, order, Deadline::none()).expect("no deadline set")
}

pub fn buchberger_with_deadline(
    polys: &[Poly],
    order: &TermOrder,
    deadline: Deadline,
) -> Result<GroebnerBasis, TimedOut> {
    assert!(!polys.is_empty(), "empty generating set");
    let registry = polys[0].registry().clone();
    assert!(
        polys.iter().all(|p| p.registry() == &registry),
        "generators over different registries"
    );
    assert_eq!(order.nvars(), registry.len());
    let gens = engine::groebner(polys, order, deadline)?;
    let leading = gens
        .iter()
        .map(|g| g.leading_term(order).expect("nonzero generator").0.clone())
        .collect();
    Ok(GroebnerBasis {
        generators: gens,
        leading,
        order: order.clone(),
        registry,
    })
}

/// Remainder of `p` on division by `gb`; no term of the result is divisible
/// by a leading monomial of `gb`.
pub fn normal_form(p: &Poly, gb: &GroebnerBasis) -> Poly {
    assert_eq!(p.registry(), &gb.registry, "registry mismatch");
    let terms = engine::normal_form_terms(p, gb);
    Poly::from_terms(&gb.registry, terms)
}

/// Monomials under the staircase of a zero-dimensional ideal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientBasis {
    monomials: Vec<Monomial>,
}

impl QuotientBasis {
    /// Sorted ascending under the basis' term order; `1` comes first.
    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.monomials.iter().position(|b| b == m)
    }
}

/// The ideal has infinitely many solutions.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("ideal is not zero-dimensional (dimension {dimension}); free variables: {}", free_variables.join(", "))]
pub struct NotZeroDimensional {
    /// Variables with no pure power among the leading monomials.
    pub free_variables: Vec<String>,
    /// A largest set of variables independent modulo the leading ideal.
    pub independent_set: Vec<String>,
    pub dimension: usize,
}

pub fn quotient_basis(gb: &GroebnerBasis) -> Result<QuotientBasis, NotZeroDimensional> {
    let n = gb.registry.len();
    if gb.is_inconsistent() {
        return Ok(QuotientBasis {
            monomials: Vec::new(),
        });
    }
    let mut has_power = vec![false; n];
    for lm in &gb.leading {
        if let Some(v) = lm.pure_power_var() {
            has_power[v] = true;
        }
    }
    if has_power.iter().any(|h| !h) {
        let free_variables = (0..n)
            .filter(|&v| !has_power[v])
            .map(|v| gb.registry.name(v).to_string())
            .collect();
        let indep = max_independent_set(&gb.leading, n);
        return Err(NotZeroDimensional {
            free_variables,
            dimension: indep.len(),
            independent_set: indep
                .into_iter()
                .map(|v| gb.registry.name(v).to_string())
                .collect(),
        });
    }
    let divisible = |m: &Monomial| gb.leading.iter().any(|lm| lm.divides(m));
    let mut basis = vec![Monomial::one(n)];
    let mut frontier = vec![Monomial::one(n)];
    while let Some(m) = frontier.pop() {
        for v in 0..n {
            let next = m.mul(&Monomial::var(n, v, 1));
            if !divisible(&next) && !basis.contains(&next) {
                basis.push(next.clone());
                frontier.push(next);
            }
        }
    }
    basis.sort_by(|a, b| gb.order.compare(a, b));
    Ok(QuotientBasis { monomials: basis })
}

fn max_independent_set(leading: &[Monomial], n: usize) -> Vec<usize> {
    // a set S is independent when no leading monomial uses only variables of S
    fn ok(set: &[bool], leading: &[Monomial]) -> bool {
        !leading
            .iter()
            .any(|m| m.exps().iter().enumerate().all(|(i, &e)| e == 0 || set[i]))
    }
    fn search(v: usize, n: usize, set: &mut Vec<bool>, size: usize, best: &mut Vec<usize>, leading: &[Monomial]) {
        if size + (n - v) <= best.len() {
            return;
        }
        if v == n {
            *best = (0..n).filter(|&i| set[i]).collect();
            return;
        }
        set[v] = true;
        if ok(set, leading) {
            search(v + 1, n, set, size + 1, best, leading);
        }
        set[v] = false;
        search(v + 1, n, set, size, best, leading);
    }
    let mut best = Vec::new();
    let mut set = vec![false; n];
    search(0, n, &mut set, 0, &mut best, leading);
    best
}

/// Coefficient vector of `p` (already a normal form) in the quotient basis.
pub fn coordinates(p: &Poly, qb: &QuotientBasis) -> Option<Vec<Rat>> {
    let mut v = vec![num_traits::Zero::zero(); qb.dim()];
    for (m, c) in p.terms() {
        v[qb.index_of(m)?] = c.clone();
    }
    Some(v)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    fn sys(reg: &Registry, eqs: &[&str]) -> Vec<Poly> {
        eqs.iter().map(|e| Poly::parse(e, reg).unwrap()).collect()
    }

    fn gb_of(names: &[&str], eqs: &[&str]) -> GroebnerBasis {
        let reg = Registry::new(names.iter().copied()).unwrap();
        buchberger(&sys(&reg, eqs), &TermOrder::grevlex(reg.len()))
    }

    #[test]
    fn already_a_basis() {
        let gb = gb_of(&["x", "y"], &["x-1", "y-2"]);
        let reg = gb.registry().clone();
        assert_eq!(gb.generators(), &sys(&reg, &["y-2", "x-1"])[..]);
        let x2 = Poly::parse("x^2", &reg).unwrap();
        assert_eq!(normal_form(&x2, &gb), Poly::one(&reg));
        assert!(normal_form(&gb.generators()[0], &gb).is_zero());
    }

    #[test]
    fn redundant_generator_collapses() {
        let gb = gb_of(&["x"], &["x^2-1", "x-1"]);
        assert_eq!(gb.generators().len(), 1);
        assert_eq!(gb.generators()[0].to_string(), "x - 1");
    }

    #[test]
    fn inconsistent_system_gives_one() {
        let gb = gb_of(&["x"], &["x-1", "x-2"]);
        assert!(gb.is_inconsistent());
        assert_eq!(quotient_basis(&gb).unwrap().dim(), 0);
    }

    #[test]
    fn staircase_of_small_ideal() {
        let gb = gb_of(&["x", "y"], &["x^2-1", "y-x"]);
        let qb = quotient_basis(&gb).unwrap();
        let n = 2;
        assert_eq!(qb.monomials(), &[Monomial::one(n), Monomial::var(n, 1, 1)]);
    }

    #[test]
    fn hyperbola_is_not_zero_dimensional() {
        let gb = gb_of(&["x", "y"], &["x*y-1"]);
        let err = quotient_basis(&gb).unwrap_err();
        assert_eq!(err.free_variables, vec!["x".to_string(), "y".to_string()]);
        assert_eq!(err.dimension, 1);
    }

    #[test]
    fn toy_system_basis() {
        let names = ["x0", "x1", "x2", "mu"];
        let eqs = [
            "x0^2 + x0 - 2",
            "2x1 x0 + x1 + 3/2",
            "2(x1^2 + x0 x2) + x2 - 61/50",
            "x1 + mu x0",
        ];
        let gb = gb_of(&names, &eqs);
        assert_eq!(quotient_basis(&gb).unwrap().dim(), 2);
        let reg = gb.registry().clone();
        for e in sys(&reg, &eqs) {
            assert!(gb.contains(&e));
        }
    }

    #[test]
    fn buchberger_is_order_independent() {
        let names = ["x", "y", "z"];
        let eqs = ["x^2 + y z - 2", "y^2 - x z + 1", "x y z - 1/3", "x + y + z"];
        let a = gb_of(&names, &eqs);
        let mut rev = eqs;
        rev.reverse();
        let b = gb_of(&names, &rev);
        assert_eq!(a, b);
    }

    #[test]
    fn lex_basis_of_circle_and_line() {
        let reg = Registry::new(["x", "y"]).unwrap();
        let gb = buchberger(&sys(&reg, &["x^2 + y^2 - 1", "x - y"]), &TermOrder::lex(2));
        assert_eq!(gb.generators(), &sys(&reg, &["y^2 - 1/2", "x - y"])[..]);
        let qb = quotient_basis(&gb).unwrap();
        assert_eq!(qb.dim(), 2);
        let _ = rat::int(0);
    }
}
