//! Rational univariate representation of a zero-dimensional system.
//!
//! Every solution is written as `x_i = g_i(τ) / f̄'(τ)` where `τ` runs over the
//! roots of the squarefree polynomial `f̄`, and `τ = Σ λ_i x_i` at the solution.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::budget::{Deadline, TimedOut};
use crate::groebner::{coordinates, normal_form, GroebnerBasis, QuotientBasis};
use crate::isolate::squarefree_part;
use crate::linalg::Matrix;
use crate::poly::{parse, rat, Monomial, Poly, Rat, Registry};
use crate::univariate::UniPoly;

/// `t = Σ λ_i x_i` with small integer weights.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SeparatingForm {
    pub lambda: Vec<i64>,
}

impl SeparatingForm {
    pub fn variable(nvars: usize, i: usize) -> Self {
        let mut lambda = vec![0; nvars];
        lambda[i] = 1;
        SeparatingForm { lambda }
    }

    pub fn to_poly(&self, registry: &Registry) -> Poly {
        let n = registry.len();
        Poly::from_terms(
            registry,
            self.lambda
                .iter()
                .enumerate()
                .map(|(i, &l)| (Monomial::var(n, i, 1), rat::int(l))),
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rur {
    /// Unknown names in registry order.
    pub variables: Vec<String>,
    pub form: SeparatingForm,
    /// Characteristic polynomial of multiplication by the form.
    pub f: UniPoly,
    /// Monic squarefree part of `f`.
    pub fbar: UniPoly,
    /// Derivative of `fbar`.
    pub fprime: UniPoly,
    /// Coordinate numerators, one per variable, each of degree below `deg fbar`.
    pub coords: Vec<UniPoly>,
    /// Distinct complex solutions, from the rank of the trace form.
    pub distinct_solutions: usize,
}

impl Rur {
    /// Value of each coordinate at a root of `fbar`.
    pub fn point_at(&self, tau: &Rat) -> Vec<Rat> {
        let d = self.fprime.eval(tau);
        self.coords.iter().map(|g| g.eval(tau) / &d).collect()
    }
}

/// Multiplication operators of the quotient ring in the staircase basis.
pub struct QuotientRing<'a> {
    gb: &'a GroebnerBasis,
    qb: &'a QuotientBasis,
    /// `var_mats[i]` has column `k` equal to the coordinates of `NF(x_i * b_k)`.
    var_mats: Vec<Matrix>,
}

impl<'a> QuotientRing<'a> {
    pub fn new(gb: &'a GroebnerBasis, qb: &'a QuotientBasis) -> Self {
        Self::with_deadline(gb, qb, Deadline::none()).expect("no deadline")
    }

    pub fn with_deadline(
        gb: &'a GroebnerBasis,
        qb: &'a QuotientBasis,
        deadline: Deadline,
    ) -> Result<Self, TimedOut> {
        let reg = gb.registry();
        let mut var_mats = Vec::with_capacity(reg.len());
        for i in 0..reg.len() {
            deadline.check()?;
            var_mats.push(multiplication_matrix(&Poly::var(reg, i), qb, gb));
        }
        Ok(QuotientRing { gb, qb, var_mats })
    }

    pub fn dim(&self) -> usize {
        self.qb.dim()
    }

    pub fn variable_matrix(&self, i: usize) -> &Matrix {
        &self.var_mats[i]
    }

    pub fn form_matrix(&self, form: &SeparatingForm) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zero(d);
        for (i, &l) in form.lambda.iter().enumerate() {
            if l != 0 {
                m = m.add(&self.var_mats[i].scale(&rat::int(l)));
            }
        }
        m
    }

    /// `tr[k] = Tr(M_{b_k})` for every staircase monomial.
    pub fn trace_vector(&self) -> Vec<Rat> {
        let mons = self.qb.monomials();
        let d = mons.len();
        let mut mats: Vec<Option<Matrix>> = vec![None; d];
        let mut tr = vec![Rat::zero(); d];
        // ascending order guarantees every proper divisor is handled first
        for k in 0..d {
            let m = &mons[k];
            if m.is_one() {
                mats[k] = Some(Matrix::identity(d));
                tr[k] = rat::int(d as i64);
                continue;
            }
            let v = (0..m.len()).find(|&v| m.exp(v) > 0).unwrap();
            let parent = m.div(&Monomial::var(m.len(), v, 1)).unwrap();
            let p = self.qb.index_of(&parent).expect("staircase closed under division");
            let pm = mats[p].as_ref().expect("parent computed");
            let mk = self.var_mats[v].mul(pm);
            tr[k] = mk.trace();
            mats[k] = Some(mk);
        }
        tr
    }

    /// Rank of the trace bilinear form: the number of distinct solutions.
    pub fn distinct_solution_count(&self, tr: &[Rat]) -> usize {
        let mons = self.qb.monomials();
        let d = mons.len();
        if d == 0 {
            return 0;
        }
        let mut h = Matrix::zero(d);
        for j in 0..d {
            for k in j..d {
                let prod = Poly::term(self.gb.registry(), mons[j].mul(&mons[k]), Rat::one());
                let nf = normal_form(&prod, self.gb);
                let c = coordinates(&nf, self.qb).expect("normal form lies in staircase");
                let v: Rat = c.iter().zip(tr).map(|(a, b)| a * b).sum();
                h.set(j, k, v.clone());
                h.set(k, j, v);
            }
        }
        h.rank()
    }
}

/// Matrix of `p -> NF(v * p)` in the staircase basis, column per basis element.
pub fn multiplication_matrix(v: &Poly, qb: &QuotientBasis, gb: &GroebnerBasis) -> Matrix {
    let cols = qb
        .monomials()
        .iter()
        .map(|b| {
            let prod = v.mul_monomial(b);
            let nf = normal_form(&prod, gb);
            coordinates(&nf, qb).expect("normal form lies in staircase")
        })
        .collect();
    Matrix::from_columns(cols)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RurError {
    #[error("separating form does not separate the solutions")]
    NotSeparating,
    #[error("time budget exhausted")]
    TimedOut,
}

impl From<TimedOut> for RurError {
    fn from(_: TimedOut) -> Self {
        RurError::TimedOut
    }
}

fn separates(ring: &QuotientRing<'_>, form: &SeparatingForm, distinct: usize) -> bool {
    let f = ring.form_matrix(form).charpoly();
    squarefree_part(&f).degree().unwrap_or(0) == distinct
}

/// Candidate forms in search order: single variables, then small integer
/// combinations, then `Σ c^i x_i` for growing `c`.
pub fn candidate_forms(nvars: usize, dim: usize) -> impl Iterator<Item = SeparatingForm> {
    let singles = (0..nvars).map(move |i| SeparatingForm::variable(nvars, i));
    let small = small_combinations(nvars, 2, 400);
    let pairs = dim * dim.saturating_sub(1) / 2;
    let powers = (1..=(pairs as i64 + 1)).map(move |c| SeparatingForm {
        lambda: (0..nvars as u32).map(|i| c.pow(i)).collect(),
    });
    singles.chain(small).chain(powers)
}

/// Forms with at least two nonzero weights in `[-bound, bound]`, first nonzero
/// weight positive, ordered by largest weight, then support size, then
/// weights read as `0, 1, -1, 2, -2, ...`.
fn small_combinations(nvars: usize, bound: i64, cap: usize) -> Vec<SeparatingForm> {
    let key = |l: i64| if l > 0 { 2 * l - 1 } else { -2 * l };
    let mut out = Vec::new();
    for b in 1..=bound {
        for support in 2..=nvars {
            let mut batch = Vec::new();
            let mut lambda = vec![0i64; nvars];
            enumerate(&mut lambda, 0, support, b, &mut batch, cap);
            batch.sort_by_key(|f: &SeparatingForm| f.lambda.iter().map(|&l| key(l)).collect::<Vec<_>>());
            for f in batch {
                if out.len() >= cap {
                    return out;
                }
                out.push(f);
            }
        }
    }
    out
}

fn enumerate(
    lambda: &mut Vec<i64>,
    pos: usize,
    support_left: usize,
    bound: i64,
    out: &mut Vec<SeparatingForm>,
    cap: usize,
) {
    if out.len() >= cap {
        return;
    }
    let n = lambda.len();
    if support_left == 0 {
        let first = lambda.iter().find(|&&l| l != 0);
        if first.is_some_and(|&l| l > 0) && lambda.iter().any(|l| l.abs() == bound) {
            out.push(SeparatingForm {
                lambda: lambda.clone(),
            });
        }
        return;
    }
    if n - pos < support_left {
        return;
    }
    for l in (-bound..=bound).filter(|&l| l != 0) {
        lambda[pos] = l;
        enumerate(lambda, pos + 1, support_left - 1, bound, out, cap);
    }
    lambda[pos] = 0;
    enumerate(lambda, pos + 1, support_left, bound, out, cap);
}

/// First candidate whose characteristic polynomial has as many distinct
/// roots as there are distinct solutions. Also returns the number tried.
pub fn find_separating_form(
    ring: &QuotientRing<'_>,
    distinct: usize,
    deadline: Deadline,
) -> Result<(SeparatingForm, usize), TimedOut> {
    let nvars = ring.var_mats.len();
    for (tried, form) in candidate_forms(nvars, ring.dim()).enumerate() {
        deadline.check()?;
        if separates(ring, &form, distinct) {
            return Ok((form, tried + 1));
        }
    }
    unreachable!("a power form always separates")
}

/// Builds the representation for a given form; fails if it does not separate.
pub fn compute_rur(
    ring: &QuotientRing<'_>,
    form: &SeparatingForm,
    distinct: usize,
    tr: &[Rat],
) -> Result<Rur, RurError> {
    let reg = ring.gb.registry();
    let nvars = reg.len();
    let variables = reg.names().to_vec();
    let d = ring.dim();
    if d == 0 {
        return Ok(Rur {
            variables,
            form: form.clone(),
            f: UniPoly::one(),
            fbar: UniPoly::one(),
            fprime: UniPoly::zero(),
            coords: vec![UniPoly::zero(); nvars],
            distinct_solutions: 0,
        });
    }
    let mt = ring.form_matrix(form);
    let f = mt.charpoly();
    let fbar = squarefree_part(&f).monic();
    let db = fbar.degree().unwrap_or(0);
    if db != distinct {
        return Err(RurError::NotSeparating);
    }
    let fprime = fbar.derivative();
    // Horner polynomials of fbar: H_0 = 1, H_k = T*H_{k-1} + a_{db-k}
    let mut horner = vec![UniPoly::one()];
    for k in 1..db {
        let prev = &horner[k - 1];
        let next = &(prev * &UniPoly::x()) + &UniPoly::constant(fbar.coeff(db - k));
        horner.push(next);
    }
    // w_j = coordinates of NF(t^j)
    let mut e1 = vec![Rat::zero(); d];
    e1[0] = Rat::one();
    let mut powers = vec![e1];
    for j in 1..db {
        let next = mt.mul_vec(&powers[j - 1]);
        powers.push(next);
    }
    let dot = |v: &[Rat]| -> Rat { v.iter().zip(tr).map(|(a, b)| a * b).sum() };
    let numerator = |vm: Option<&Matrix>| -> UniPoly {
        let mut g = UniPoly::zero();
        for (j, w) in powers.iter().enumerate() {
            let s = match vm {
                Some(m) => dot(&m.mul_vec(w)),
                None => dot(w),
            };
            if !s.is_zero() {
                g = &g + &horner[db - 1 - j].scale(&s);
            }
        }
        g
    };
    let g1 = numerator(None);
    let rescale = if g1 == fprime {
        None
    } else {
        // multiplicities present: g_v / g_1 = x_v, so renormalize to fprime
        let inv = g1.inverse_mod(&fbar).ok_or(RurError::NotSeparating)?;
        Some((&fprime * &inv).rem(&fbar))
    };
    let coords = (0..nvars)
        .map(|i| {
            let g = numerator(Some(ring.variable_matrix(i)));
            match &rescale {
                Some(r) => (&g * r).rem(&fbar),
                None => g,
            }
        })
        .collect();
    Ok(Rur {
        variables,
        form: form.clone(),
        f,
        fbar,
        fprime,
        coords,
        distinct_solutions: distinct,
    })
}

/// Full pipeline from a zero-dimensional basis.
pub fn rur_from_basis(
    gb: &GroebnerBasis,
    qb: &QuotientBasis,
    deadline: Deadline,
) -> Result<Rur, RurError> {
    let ring = QuotientRing::with_deadline(gb, qb, deadline)?;
    let tr = ring.trace_vector();
    deadline.check()?;
    let distinct = ring.distinct_solution_count(&tr);
    let (form, _) = find_separating_form(&ring, distinct, deadline)?;
    compute_rur(&ring, &form, distinct, &tr)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Rejection {
    #[error("squarefree polynomial shares a factor with its derivative")]
    NotSquarefree,
    #[error("equation {index} is not satisfied by the parametrization")]
    EquationNotSatisfied { index: usize },
    #[error("form weights do not reproduce the parameter T")]
    FormMismatch,
    #[error("degree {degree} differs from the distinct solution count {expected}")]
    CountMismatch { degree: usize, expected: usize },
    #[error("equation {index} uses variables outside the representation")]
    RegistryMismatch { index: usize },
}

/// Exact certificate: `fbar` is squarefree of the expected degree, the
/// parametrization satisfies every equation modulo `fbar`, and the form maps
/// back to `T`.
pub fn certify_rur(rur: &Rur, equations: &[Poly]) -> Result<(), Rejection> {
    let fbar = &rur.fbar;
    let db = fbar.degree().unwrap_or(0);
    if db == 0 {
        return if rur.distinct_solutions == 0 {
            Ok(())
        } else {
            Err(Rejection::CountMismatch {
                degree: 0,
                expected: rur.distinct_solutions,
            })
        };
    }
    if fbar.gcd(&rur.fprime).degree() != Some(0) {
        return Err(Rejection::NotSquarefree);
    }
    if db != rur.distinct_solutions {
        return Err(Rejection::CountMismatch {
            degree: db,
            expected: rur.distinct_solutions,
        });
    }
    let mut pow_cache: HashMap<(usize, u32), UniPoly> = HashMap::new();
    let mut fp_pows: Vec<UniPoly> = vec![UniPoly::one()];
    let power = |cache: &mut HashMap<(usize, u32), UniPoly>, i: usize, e: u32| -> UniPoly {
        cache
            .entry((i, e))
            .or_insert_with(|| rur.coords[i].pow_mod(e, fbar))
            .clone()
    };
    for (index, p) in equations.iter().enumerate() {
        if p.registry().names() != rur.variables.as_slice() {
            return Err(Rejection::RegistryMismatch { index });
        }
        let deg = p.total_degree().unwrap_or(0);
        while fp_pows.len() <= deg as usize {
            let next = (fp_pows.last().unwrap() * &rur.fprime).rem(fbar);
            fp_pows.push(next);
        }
        let mut acc = UniPoly::zero();
        for (m, c) in p.terms() {
            let mut term = fp_pows[(deg - m.degree()) as usize].scale(c);
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    term = (&term * &power(&mut pow_cache, i, e)).rem(fbar);
                }
            }
            acc = &acc + &term;
        }
        if !acc.rem(fbar).is_zero() {
            return Err(Rejection::EquationNotSatisfied { index });
        }
    }
    let mut form_sum = UniPoly::zero();
    for (l, g) in rur.form.lambda.iter().zip(&rur.coords) {
        form_sum = &form_sum + &g.scale(&rat::int(*l));
    }
    let t_fp = &UniPoly::x() * &rur.fprime;
    if !(&form_sum - &t_fp).rem(fbar).is_zero() {
        return Err(Rejection::FormMismatch);
    }
    Ok(())
}

impl fmt::Display for Rur {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# rur")?;
        writeln!(f, "variables: {}", self.variables.join(" "))?;
        let weights: Vec<String> = self.form.lambda.iter().map(|l| l.to_string()).collect();
        writeln!(f, "form: {}", weights.join(" "))?;
        writeln!(f, "solutions: {}", self.distinct_solutions)?;
        writeln!(f, "f: {}", self.f)?;
        writeln!(f, "fbar: {}", self.fbar)?;
        writeln!(f, "fprime: {}", self.fprime)?;
        for (name, g) in self.variables.iter().zip(&self.coords) {
            writeln!(f, "g {name}: {g}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct RurParseError {
    pub line: usize,
    pub message: String,
}

impl FromStr for Rur {
    type Err = RurParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let treg = Registry::new(["T"]).expect("single name");
        let uni = |text: &str, line: usize| -> Result<UniPoly, RurParseError> {
            let p = parse::parse_poly(text, &treg).map_err(|e| RurParseError {
                line,
                message: e.to_string(),
            })?;
            Ok(UniPoly::from_poly(&p, 0).expect("single variable"))
        };
        let err = |line: usize, message: &str| RurParseError {
            line,
            message: message.to_string(),
        };
        let mut variables = None;
        let mut form = None;
        let mut count = None;
        let (mut fpoly, mut fbar, mut fprime) = (None, None, None);
        let mut coords = Vec::new();
        for (ln, raw) in s.lines().enumerate() {
            let line = ln + 1;
            let text = raw.trim();
            if text.is_empty() || text.starts_with('#') {
                continue;
            }
            let (key, value) = text.split_once(':').ok_or_else(|| err(line, "expected `key: value`"))?;
            let value = value.trim();
            match key.trim() {
                "variables" => variables = Some(value.split_whitespace().map(String::from).collect::<Vec<_>>()),
                "form" => {
                    let lambda = value
                        .split_whitespace()
                        .map(|w| w.parse::<i64>().map_err(|_| err(line, "bad form weight")))
                        .collect::<Result<Vec<_>, _>>()?;
                    form = Some(SeparatingForm { lambda });
                }
                "solutions" => count = Some(value.parse::<usize>().map_err(|_| err(line, "bad count"))?),
                "f" => fpoly = Some(uni(value, line)?),
                "fbar" => fbar = Some(uni(value, line)?),
                "fprime" => fprime = Some(uni(value, line)?),
                k if k.starts_with("g ") => coords.push((k[2..].trim().to_string(), uni(value, line)?)),
                _ => return Err(err(line, "unknown key")),
            }
        }
        let variables = variables.ok_or_else(|| err(0, "missing variables"))?;
        let form = form.ok_or_else(|| err(0, "missing form"))?;
        if form.lambda.len() != variables.len() || coords.len() != variables.len() {
            return Err(err(0, "arity mismatch"));
        }
        let mut ordered = Vec::with_capacity(variables.len());
        for (v, (name, g)) in variables.iter().zip(coords) {
            if *v != name {
                return Err(err(0, "coordinate order differs from variables"));
            }
            ordered.push(g);
        }
        Ok(Rur {
            variables,
            form,
            f: fpoly.ok_or_else(|| err(0, "missing f"))?,
            fbar: fbar.ok_or_else(|| err(0, "missing fbar"))?,
            fprime: fprime.ok_or_else(|| err(0, "missing fprime"))?,
            coords: ordered,
            distinct_solutions: count.ok_or_else(|| err(0, "missing solutions"))?,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, quotient_basis};
    use crate::poly::TermOrder;

    fn setup(names: &[&str], eqs: &[&str]) -> (GroebnerBasis, Vec<Poly>) {
        let reg = Registry::new(names.iter().copied()).unwrap();
        let sys: Vec<Poly> = eqs.iter().map(|e| Poly::parse(e, &reg).unwrap()).collect();
        (buchberger(&sys, &TermOrder::grevlex(reg.len())), sys)
    }

    fn full(names: &[&str], eqs: &[&str]) -> (Rur, Vec<Poly>) {
        let (gb, sys) = setup(names, eqs);
        let qb = quotient_basis(&gb).unwrap();
        (rur_from_basis(&gb, &qb, Deadline::none()).unwrap(), sys)
    }

    #[test]
    fn multiplication_matrix_examples() {
        let (gb, _) = setup(&["x"], &["x^2 - 2"]);
        let qb = quotient_basis(&gb).unwrap();
        let x = Poly::var(gb.registry(), 0);
        let m = multiplication_matrix(&x, &qb, &gb);
        let r = |v| rat::int(v);
        assert_eq!(m, Matrix::from_rows(vec![vec![r(0), r(2)], vec![r(1), r(0)]]));
        assert!(multiplication_matrix(&Poly::zero(gb.registry()), &qb, &gb).is_zero());
        let (gb5, _) = setup(&["x"], &["x - 5"]);
        let qb5 = quotient_basis(&gb5).unwrap();
        let m5 = multiplication_matrix(&Poly::var(gb5.registry(), 0), &qb5, &gb5);
        assert_eq!(m5, Matrix::from_rows(vec![vec![r(5)]]));
    }

    #[test]
    fn sqrt_two() {
        let (rur, sys) = full(&["x"], &["x^2 - 2"]);
        assert_eq!(rur.fbar, UniPoly::from_ints(&[-2, 0, 1]));
        assert_eq!(rur.fprime, UniPoly::from_ints(&[0, 2]));
        // x = g(T)/fprime(T) = T on both roots
        let diff = &rur.coords[0] - &(&UniPoly::x() * &rur.fprime);
        assert!(diff.rem(&rur.fbar).is_zero());
        assert_eq!(rur.coords[0], UniPoly::from_ints(&[4]));
        assert!(certify_rur(&rur, &sys).is_ok());
        let mut bad = rur.clone();
        bad.fbar = UniPoly::from_ints(&[-3, 0, 1]);
        assert!(matches!(
            certify_rur(&bad, &sys),
            Err(Rejection::EquationNotSatisfied { .. })
        ));
    }

    #[test]
    fn single_point() {
        let (rur, sys) = full(&["x"], &["x - 5"]);
        assert_eq!(rur.fbar, UniPoly::from_ints(&[-5, 1]));
        assert_eq!(rur.point_at(&rat::int(5)), vec![rat::int(5)]);
        assert!(certify_rur(&rur, &sys).is_ok());
    }

    #[test]
    fn sign_pairs_need_a_combination() {
        let (gb, sys) = setup(&["x", "y"], &["x^2 - 1", "y^2 - 1"]);
        let qb = quotient_basis(&gb).unwrap();
        let ring = QuotientRing::new(&gb, &qb);
        let tr = ring.trace_vector();
        assert_eq!(ring.distinct_solution_count(&tr), 4);
        let x = SeparatingForm::variable(2, 0);
        assert!(matches!(compute_rur(&ring, &x, 4, &tr), Err(RurError::NotSeparating)));
        let (form, _) = find_separating_form(&ring, 4, Deadline::none()).unwrap();
        assert_eq!(form.lambda, vec![1, 2]);
        let rur = compute_rur(&ring, &form, 4, &tr).unwrap();
        assert!(certify_rur(&rur, &sys).is_ok());
    }

    #[test]
    fn toy_system_uses_first_state() {
        let (rur, sys) = full(
            &["x0", "x1", "x2", "mu"],
            &[
                "x0^2 + x0 - 2",
                "2x1 x0 + x1 + 3/2",
                "2(x1^2 + x0 x2) + x2 - 61/50",
                "x1 + mu x0",
            ],
        );
        assert_eq!(rur.form, SeparatingForm::variable(4, 0));
        assert_eq!(rur.fbar, UniPoly::from_ints(&[-2, 1, 1]));
        assert!(certify_rur(&rur, &sys).is_ok());
        let at_one = rur.point_at(&rat::int(1));
        assert_eq!(at_one[3], rat::int(1) / rat::int(2));
        let at_minus_two = rur.point_at(&rat::int(-2));
        assert_eq!(at_minus_two[0], rat::int(-2));
    }

    #[test]
    fn multiplicity_is_collapsed() {
        // double root at x = 1 plus a simple root at x = -1
        let (rur, sys) = full(&["x", "y"], &["(x-1)^2 (x+1)", "y - x^2 - x"]);
        assert_eq!(rur.distinct_solutions, 2);
        assert_eq!(rur.f.degree(), Some(3));
        assert!(certify_rur(&rur, &sys).is_ok());
        let mut pts: Vec<Vec<Rat>> = [1, -1, 2, -2, 0, 3]
            .iter()
            .map(|&t| rat::int(t))
            .filter(|t| rur.fbar.eval(t).is_zero())
            .map(|t| rur.point_at(&t))
            .collect();
        pts.sort();
        assert_eq!(pts.len(), 2);
    }

    #[test]
    fn inconsistent_system_has_empty_representation() {
        let (rur, sys) = full(&["x"], &["x - 1", "x - 2"]);
        assert_eq!(rur.distinct_solutions, 0);
        assert!(certify_rur(&rur, &sys).is_ok());
    }

    #[test]
    fn text_round_trip() {
        let (rur, _) = full(&["x", "y"], &["x^2 - 1", "y^2 - 1"]);
        let back: Rur = rur.to_string().parse().unwrap();
        assert_eq!(back, rur);
    }
}
