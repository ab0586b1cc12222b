//! Square polynomial systems from Lie derivatives of the outputs.
//!
//! Each state `x` gets fresh symbols `x_0, x_1, ...` for its value and
//! derivatives at the expansion time. Output derivatives are obtained by
//! formal total differentiation and equated to values estimated from data;
//! ODE relations `x_{j+1} = D^j f` tie the symbols together.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::model::Model;
use crate::poly::parse::{self, ParseError};
use crate::poly::{Poly, Rat, RatFun, Registry};

/// `num / base^power` where `base` is fixed for the whole derivative chain.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowFrac {
    pub num: Poly,
    pub base: Poly,
    pub power: u32,
}

impl PowFrac {
    fn from_ratfun(r: &RatFun) -> Self {
        let base = r.den().clone();
        let power = if base.is_constant() { 0 } else { 1 };
        let num = if base.is_constant() {
            r.num().scale(&base.constant_term().recip())
        } else {
            r.num().clone()
        };
        PowFrac {
            num,
            base: if power == 0 { Poly::one(r.registry()) } else { base },
            power,
        }
    }

    pub fn is_polynomial(&self) -> bool {
        self.power == 0
    }

    pub fn denominator(&self) -> Poly {
        self.base.pow(self.power)
    }

    pub fn eval(&self, point: &[Rat]) -> Option<Rat> {
        let d = self.base.eval(point);
        if self.power > 0 && d.is_zero() {
            return None;
        }
        let mut v = self.num.eval(point);
        for _ in 0..self.power {
            v /= &d;
        }
        Some(v)
    }

    pub fn to_ratfun(&self) -> RatFun {
        RatFun::new(self.num.clone(), self.denominator()).expect("nonzero base")
    }
}

/// Registry of prolonged symbols plus the time variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProlongedVars {
    registry: Registry,
    /// `state_vars[i][j]` is the symbol for the `j`-th derivative of state `i`.
    state_vars: Vec<Vec<usize>>,
    param_vars: Vec<usize>,
    time_var: usize,
}

impl ProlongedVars {
    fn new(model: &Model, max_order: usize) -> Self {
        let mut names: Vec<String> = Vec::new();
        let taken = |n: &str, names: &[String]| {
            n == "t" || model.params().iter().any(|p| p == n) || names.iter().any(|m| m == n)
        };
        let mut state_vars = Vec::new();
        for s in model.states() {
            let mut sep = String::from("_");
            // widen the separator until no derived name clashes
            while (0..=max_order).any(|j| taken(&format!("{s}{sep}{j}"), &names)) {
                sep.push('_');
            }
            let mut row = Vec::new();
            for j in 0..=max_order {
                row.push(names.len());
                names.push(format!("{s}{sep}{j}"));
            }
            state_vars.push(row);
        }
        let mut param_vars = Vec::new();
        for p in model.params() {
            param_vars.push(names.len());
            names.push(p.clone());
        }
        let time_var = names.len();
        names.push("t".into());
        ProlongedVars {
            registry: Registry::new(names).expect("distinct by construction"),
            state_vars,
            param_vars,
            time_var,
        }
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn state_var(&self, state: usize, order: usize) -> usize {
        self.state_vars[state][order]
    }

    pub fn param_var(&self, p: usize) -> usize {
        self.param_vars[p]
    }

    pub fn time_var(&self) -> usize {
        self.time_var
    }

    pub fn max_order(&self) -> usize {
        self.state_vars.first().map_or(0, |r| r.len() - 1)
    }

    /// What a working-registry variable stands for.
    pub fn role(&self, var: usize) -> Unknown {
        for (i, row) in self.state_vars.iter().enumerate() {
            if let Some(j) = row.iter().position(|&v| v == var) {
                return Unknown::State { state: i, order: j };
            }
        }
        if let Some(p) = self.param_vars.iter().position(|&v| v == var) {
            return Unknown::Param(p);
        }
        Unknown::Time
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Unknown {
    State { state: usize, order: usize },
    Param(usize),
    Time,
}

/// Output derivatives and ODE relations over the prolonged registry.
#[derive(Clone, Debug)]
pub struct Prolongation {
    pub vars: ProlongedVars,
    /// `outputs[j][k]` is the `k`-th derivative of output `j`.
    pub outputs: Vec<Vec<PowFrac>>,
    /// `relations[i][j]` is `D^j f_i`, the value of symbol `x_i_{j+1}`.
    pub relations: Vec<Vec<PowFrac>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProlongError {
    #[error("output `{0}` has a denominator that vanishes identically")]
    ZeroDenominator(String),
    #[error("{equations} equations in {unknowns} unknowns at orders {orders:?}; try larger orders")]
    NotSquare {
        equations: usize,
        unknowns: usize,
        orders: Vec<usize>,
    },
    #[error("no derivative order up to {0} gives a square system")]
    NoSquareOrder(usize),
    #[error("orders given for {given} outputs, model has {expected}")]
    OrderArity { given: usize, expected: usize },
    #[error("missing estimate for output {output} at order {order}")]
    MissingDerivative { output: usize, order: usize },
    #[error("known initial values require the expansion time to be 0")]
    PinAwayFromStart,
    #[error("every equation vanished after substitution")]
    Empty,
}

/// Formal total derivative along the prolonged vector field.
fn total_derivative(e: &PowFrac, vars: &ProlongedVars) -> PowFrac {
    let reg = &vars.registry;
    let d = |p: &Poly| -> Poly {
        let mut acc = p.diff(vars.time_var);
        for row in &vars.state_vars {
            for j in 0..row.len() {
                if p.degree_in(row[j]) == 0 {
                    continue;
                }
                assert!(j + 1 < row.len(), "derivative order exceeds prolongation");
                acc = &acc + &(&p.diff(row[j]) * &Poly::var(reg, row[j + 1]));
            }
        }
        acc
    };
    if e.power == 0 {
        return PowFrac {
            num: d(&e.num),
            base: e.base.clone(),
            power: 0,
        };
    }
    // (N / B^m)' = (N' B - m N B') / B^(m+1)
    let m = Rat::from_integer(BigInt::from(e.power));
    let num = &(&d(&e.num) * &e.base) - &(&e.num * &d(&e.base)).scale(&m);
    PowFrac {
        num,
        base: e.base.clone(),
        power: e.power + 1,
    }
}

/// Lie derivatives of each output up to `orders[j]`, plus the relations they
/// can require.
pub fn lie_prolong(model: &Model, orders: &[usize]) -> Result<Prolongation, ProlongError> {
    if orders.len() != model.outputs().len() {
        return Err(ProlongError::OrderArity {
            given: orders.len(),
            expected: model.outputs().len(),
        });
    }
    let max_order = orders.iter().copied().max().unwrap_or(0);
    let vars = ProlongedVars::new(model, max_order + 1);
    let reg = vars.registry.clone();
    // model variable -> prolonged image; inputs become polynomials in t
    let mut images: Vec<Poly> = Vec::new();
    for i in 0..model.states().len() {
        images.push(Poly::var(&reg, vars.state_var(i, 0)));
    }
    for p in 0..model.params().len() {
        images.push(Poly::var(&reg, vars.param_var(p)));
    }
    for (_, u) in model.inputs() {
        images.push(u.to_poly(&reg, vars.time_var));
    }
    let lift = |r: &RatFun, name: &str| -> Result<PowFrac, ProlongError> {
        let c = r
            .compose(&reg, &images)
            .map_err(|_| ProlongError::ZeroDenominator(name.to_string()))?;
        Ok(PowFrac::from_ratfun(&c))
    };
    let mut outputs = Vec::new();
    for ((name, g), &k) in model.outputs().iter().zip(orders) {
        let mut chain = vec![lift(g, name)?];
        for _ in 0..k {
            let next = total_derivative(chain.last().unwrap(), &vars);
            chain.push(next);
        }
        outputs.push(chain);
    }
    let mut relations = Vec::new();
    for (i, f) in model.rhs().iter().enumerate() {
        let mut chain = vec![lift(f, &model.states()[i])?];
        for _ in 1..max_order {
            let next = total_derivative(chain.last().unwrap(), &vars);
            chain.push(next);
        }
        chain.truncate(max_order);
        relations.push(chain);
    }
    Ok(Prolongation {
        vars,
        outputs,
        relations,
    })
}

/// Polynomial equations (implicitly `= 0`) over a registry of unknowns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolySystem {
    equations: Vec<Poly>,
    registry: Registry,
}

impl PolySystem {
    /// Panics if an equation uses a different registry.
    pub fn new(registry: Registry, equations: Vec<Poly>) -> Self {
        assert!(equations.iter().all(|e| e.registry() == &registry));
        PolySystem { equations, registry }
    }

    pub fn equations(&self) -> &[Poly] {
        &self.equations
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn unknowns(&self) -> &[String] {
        self.registry.names()
    }

    pub fn is_square(&self) -> bool {
        self.equations.len() == self.registry.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.equations.iter().map(|e| e.total_degree().unwrap_or(0)).collect()
    }

    pub fn permuted(&self, perm: &[usize]) -> PolySystem {
        PolySystem {
            equations: perm.iter().map(|&k| self.equations[k].clone()).collect(),
            registry: self.registry.clone(),
        }
    }
}

impl fmt::Display for PolySystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "# unknowns: {}", self.registry.names().join(" "))?;
        for e in &self.equations {
            writeln!(f, "{e}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SystemParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("line {0}: bad unknowns header")]
    Header(usize),
    #[error("system has no equations")]
    Empty,
}

impl FromStr for PolySystem {
    type Err = SystemParseError;

    /// Without a `# unknowns:` header, unknowns are taken in order of first
    /// appearance.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut header: Option<Vec<String>> = None;
        let mut lines: Vec<(usize, &str)> = Vec::new();
        for (ln, raw) in s.lines().enumerate() {
            let text = raw.trim();
            if let Some(rest) = text.strip_prefix('#') {
                if let Some(names) = rest.trim().strip_prefix("unknowns:") {
                    if header.is_some() {
                        return Err(SystemParseError::Header(ln + 1));
                    }
                    header = Some(names.split_whitespace().map(String::from).collect());
                }
                continue;
            }
            if !text.is_empty() {
                lines.push((ln + 1, raw));
            }
        }
        if lines.is_empty() {
            return Err(SystemParseError::Empty);
        }
        let names = match header {
            Some(h) => h,
            None => {
                let mut out: Vec<String> = Vec::new();
                for (ln, l) in &lines {
                    let mut ids = Vec::new();
                    for side in l.split('=') {
                        ids.extend(parse::identifiers(side).map_err(|mut e| {
                            e.line = *ln;
                            e
                        })?);
                    }
                    for id in ids {
                        if !out.contains(&id) {
                            out.push(id);
                        }
                    }
                }
                out
            }
        };
        let registry = Registry::new(names).map_err(|_| SystemParseError::Header(1))?;
        let equations = lines
            .iter()
            .map(|(ln, l)| parse::parse_poly_at(l, &registry, *ln, 0))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(PolySystem { equations, registry })
    }
}

/// Product of total degrees, with its prime factorization.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BezoutBound {
    pub value: BigInt,
    /// `(prime, exponent)` pairs in increasing prime order.
    pub factors: Vec<(u32, u32)>,
}

impl fmt::Display for BezoutBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

pub fn bezout_from_degrees(degrees: &[u32]) -> BezoutBound {
    let mut value = BigInt::one();
    let mut factors: std::collections::BTreeMap<u32, u32> = Default::default();
    for &d in degrees {
        value *= d;
        let mut n = d;
        let mut p = 2;
        while n > 1 && p * p <= n {
            while n % p == 0 {
                *factors.entry(p).or_default() += 1;
                n /= p;
            }
            p += 1;
        }
        if n > 1 {
            *factors.entry(n).or_default() += 1;
        }
        if d == 0 {
            factors.clear();
            factors.insert(0, 1);
        }
    }
    BezoutBound {
        value,
        factors: factors.into_iter().collect(),
    }
}

pub fn bezout_bound(sys: &PolySystem) -> BezoutBound {
    bezout_from_degrees(&sys.degrees())
}

/// A square system together with what its unknowns mean.
#[derive(Clone, Debug)]
pub struct SquareSystem {
    pub system: PolySystem,
    pub roles: Vec<Unknown>,
    /// Cleared denominators over the system registry; solutions on their
    /// zero sets are spurious.
    pub denominators: Vec<Poly>,
    pub orders: Vec<usize>,
}

impl SquareSystem {
    pub fn param_index(&self, p: usize) -> Option<usize> {
        self.roles.iter().position(|r| *r == Unknown::Param(p))
    }

    pub fn state_index(&self, state: usize, order: usize) -> Option<usize> {
        self.roles
            .iter()
            .position(|r| *r == Unknown::State { state, order })
    }
}

struct Candidate {
    /// Equation over the working registry, `t` and pins substituted.
    eq: Poly,
    /// `Some((state, order))` for a relation.
    relation: Option<(usize, usize)>,
}

/// Equations from estimated output derivatives (`derivs[j][k]`) plus the
/// fewest high-order relations that leave a square system.
pub fn build_square_system(
    model: &Model,
    derivs: &[Vec<Rat>],
    orders: &[usize],
    tstar: &Rat,
) -> Result<SquareSystem, ProlongError> {
    let pro = lie_prolong(model, orders)?;
    for (j, &k) in orders.iter().enumerate() {
        for order in 0..=k {
            if derivs.get(j).and_then(|d| d.get(order)).is_none() {
                return Err(ProlongError::MissingDerivative { output: j, order });
            }
        }
    }
    if !model.known().is_empty() && !tstar.is_zero() {
        return Err(ProlongError::PinAwayFromStart);
    }
    let vars = &pro.vars;
    let reg = vars.registry().clone();
    let n = reg.len();
    // substitute t = t* and pinned initial values
    let mut images: Vec<Poly> = (0..n).map(|v| Poly::var(&reg, v)).collect();
    images[vars.time_var] = Poly::constant(&reg, tstar.clone());
    for (i, c) in model.known() {
        images[vars.state_var(*i, 0)] = Poly::constant(&reg, c.clone());
    }
    let fix = |p: &Poly| p.compose(&reg, &images);

    let mut denominators: Vec<Poly> = Vec::new();
    let mut note_den = |b: &Poly| {
        let b = fix(b);
        if !b.is_constant() && !denominators.contains(&b) {
            denominators.push(b);
        }
    };
    let mut output_eqs = Vec::new();
    for (j, chain) in pro.outputs.iter().enumerate() {
        for (k, e) in chain.iter().enumerate() {
            let c = &derivs[j][k];
            let eq = fix(&(&e.num - &e.denominator().scale(c)));
            if e.power > 0 {
                note_den(&e.base);
            }
            if !eq.is_zero() {
                output_eqs.push(Candidate { eq, relation: None });
            }
        }
    }
    let relation_eq = |i: usize, j: usize| -> Poly {
        let e = &pro.relations[i][j];
        let x = Poly::var(&reg, vars.state_var(i, j + 1));
        fix(&(&(&x * &e.denominator()) - &e.num))
    };
    // relations needed to define every derivative symbol in use
    let mut rels: BTreeSet<(usize, usize)> = BTreeSet::new();
    let mut frontier: Vec<Poly> = output_eqs.iter().map(|c| c.eq.clone()).collect();
    while let Some(p) = frontier.pop() {
        for v in p.variables() {
            if let Unknown::State { state, order } = vars.role(v) {
                if order >= 1 && rels.insert((order - 1, state)) {
                    let r = relation_eq(state, order - 1);
                    if pro.relations[state][order - 1].power > 0 {
                        note_den(&pro.relations[state][order - 1].base);
                    }
                    frontier.push(r);
                }
            }
        }
    }
    let mut rel_list: Vec<Candidate> = rels
        .iter()
        .map(|&(j, i)| Candidate {
            eq: relation_eq(i, j),
            relation: Some((i, j)),
        })
        .collect();
    loop {
        let used: BTreeSet<usize> = output_eqs
            .iter()
            .chain(&rel_list)
            .flat_map(|c| c.eq.variables())
            .chain((0..model.params().len()).map(|p| vars.param_var(p)))
            .collect();
        let n_eq = output_eqs.len() + rel_list.len();
        if n_eq == 0 {
            return Err(ProlongError::Empty);
        }
        if n_eq == used.len() {
            return Ok(finish(vars, &output_eqs, &rel_list, used, denominators, orders));
        }
        if n_eq < used.len() || rel_list.is_empty() {
            return Err(ProlongError::NotSquare {
                equations: n_eq,
                unknowns: used.len(),
                orders: orders.to_vec(),
            });
        }
        // highest order first, last state on ties (list is sorted by (order, state))
        rel_list.pop();
    }
}

fn finish(
    vars: &ProlongedVars,
    outputs: &[Candidate],
    rels: &[Candidate],
    used: BTreeSet<usize>,
    denominators: Vec<Poly>,
    orders: &[usize],
) -> SquareSystem {
    // states by (state, order), then parameters
    let mut unknowns: Vec<usize> = used.into_iter().collect();
    unknowns.sort_by_key(|&v| vars.role(v));
    let names: Vec<String> = unknowns.iter().map(|&v| vars.registry().name(v).to_string()).collect();
    let target = Registry::new(names).expect("distinct");
    let map: Vec<Option<usize>> = (0..vars.registry().len())
        .map(|v| unknowns.iter().position(|&u| u == v))
        .collect();
    let mut equations: Vec<Poly> = outputs.iter().map(|c| c.eq.remap(&target, &map)).collect();
    let mut rel_sorted: Vec<&Candidate> = rels.iter().collect();
    rel_sorted.sort_by_key(|c| c.relation);
    equations.extend(rel_sorted.iter().map(|c| c.eq.remap(&target, &map)));
    let denominators = denominators
        .iter()
        .filter(|d| d.variables().iter().all(|v| map[*v].is_some()))
        .map(|d| d.remap(&target, &map))
        .collect();
    SquareSystem {
        system: PolySystem::new(target, equations),
        roles: unknowns.iter().map(|&v| vars.role(v)).collect(),
        denominators,
        orders: orders.to_vec(),
    }
}

/// Structure-only check used by order selection: does a square system exist?
pub fn square_at(model: &Model, orders: &[usize]) -> bool {
    let derivs: Vec<Vec<Rat>> = orders
        .iter()
        .map(|&k| (0..=k).map(|i| Rat::from_integer(BigInt::from(i as i64 + 2))).collect())
        .collect();
    let tstar = if model.known().is_empty() { Rat::one() } else { Rat::zero() };
    build_square_system(model, &derivs, orders, &tstar).is_ok()
}

/// Smallest uniform order with a square system, then one more when the data
/// supports it (this extra order reproduces the classic one-state example).
pub fn default_orders(model: &Model, max_available: usize) -> Result<Vec<usize>, ProlongError> {
    let m = model.outputs().len();
    for nu in 0..=max_available {
        if square_at(model, &vec![nu; m]) {
            if nu < max_available && square_at(model, &vec![nu + 1; m]) {
                return Ok(vec![nu + 1; m]);
            }
            return Ok(vec![nu; m]);
        }
    }
    Err(ProlongError::NoSquareOrder(max_available))
}

/// Exact derivatives of the states and outputs at `tstar` for given
/// parameter and state values. `None` if a denominator vanishes.
pub fn exact_derivatives(
    pro: &Prolongation,
    params: &[Rat],
    states: &[Rat],
    tstar: &Rat,
) -> Option<(Vec<Rat>, Vec<Vec<Rat>>)> {
    let vars = &pro.vars;
    let mut point = vec![Rat::zero(); vars.registry().len()];
    point[vars.time_var] = tstar.clone();
    for (p, v) in params.iter().enumerate() {
        point[vars.param_var(p)] = v.clone();
    }
    for (i, v) in states.iter().enumerate() {
        point[vars.state_var(i, 0)] = v.clone();
    }
    let levels = pro.relations.first().map_or(0, |r| r.len());
    for j in 0..levels {
        for (i, chain) in pro.relations.iter().enumerate() {
            point[vars.state_var(i, j + 1)] = chain[j].eval(&point)?;
        }
    }
    let outs = pro
        .outputs
        .iter()
        .map(|chain| chain.iter().map(|e| e.eval(&point)).collect::<Option<Vec<_>>>())
        .collect::<Option<Vec<_>>>()?;
    Some((point, outs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_model;
    use crate::poly::rat;

    const TOY: &str = "states: x\nparams: mu\ndynamics:\n  x' = -mu*x\noutputs:\n  y = x^2 + x\n";

    fn toy() -> Model {
        parse_model(TOY).unwrap()
    }

    #[test]
    fn toy_lie_derivatives() {
        let pro = lie_prolong(&toy(), &[2]).unwrap();
        let reg = pro.vars.registry().clone();
        let p = |s: &str| Poly::parse(s, &reg).unwrap();
        assert_eq!(pro.outputs[0][0].num, p("x_0^2 + x_0"));
        assert_eq!(pro.outputs[0][1].num, p("2x_1 x_0 + x_1"));
        assert_eq!(pro.outputs[0][2].num, p("2(x_1^2 + x_0 x_2) + x_2"));
        assert_eq!(pro.relations[0][0].num, p("-mu x_0"));
    }

    #[test]
    fn toy_square_system() {
        let d = vec![vec![rat::int(2), rat::frac(-3, 2), rat::frac(61, 50)]];
        let sq = build_square_system(&toy(), &d, &[2], &rat::int(0)).unwrap();
        let sys = &sq.system;
        assert_eq!(sys.unknowns(), &["x_0", "x_1", "x_2", "mu"]);
        let reg = sys.registry().clone();
        let p = |s: &str| Poly::parse(s, &reg).unwrap();
        assert_eq!(
            sys.equations(),
            &[
                p("x_0^2 + x_0 - 2"),
                p("2x_1 x_0 + x_1 + 3/2"),
                p("2(x_1^2 + x_0 x_2) + x_2 - 61/50"),
                p("x_1 + mu x_0"),
            ]
        );
        assert_eq!(bezout_bound(sys).value, BigInt::from(16));
        assert_eq!(bezout_bound(sys).to_string(), "2^4");
        assert!(sq.denominators.is_empty());
    }

    #[test]
    fn constant_rate_model() {
        let m = parse_model("states: x\nparams: mu\ndynamics: x' = mu\noutputs: y = x\n").unwrap();
        let pro = lie_prolong(&m, &[0]).unwrap();
        assert_eq!(pro.outputs[0][0].num.to_string(), "x_0");
        let sq = build_square_system(&m, &[vec![rat::int(3), rat::int(5)]], &[1], &rat::int(0)).unwrap();
        assert_eq!(sq.system.unknowns(), &["x_0", "x_1", "mu"]);
        let eqs: Vec<String> = sq.system.equations().iter().map(|e| e.to_string()).collect();
        assert_eq!(eqs, vec!["x_0 - 3", "x_1 - 5", "x_1 - mu"]);
    }

    #[test]
    fn underdetermined_order_is_rejected() {
        let e = build_square_system(&toy(), &[vec![rat::int(2)]], &[0], &rat::int(0)).unwrap_err();
        assert_eq!(
            e,
            ProlongError::NotSquare {
                equations: 1,
                unknowns: 2,
                orders: vec![0]
            }
        );
    }

    #[test]
    fn default_order_for_toy_is_two() {
        assert_eq!(default_orders(&toy(), 3).unwrap(), vec![2]);
        assert_eq!(default_orders(&toy(), 1).unwrap(), vec![1]);
    }

    #[test]
    fn bezout_factorization() {
        let mut degs = vec![2u32; 5];
        degs.extend(vec![3; 20]);
        degs.extend(vec![1; 18]);
        let b = bezout_from_degrees(&degs);
        assert_eq!(b.factors, vec![(2, 5), (3, 20)]);
        assert_eq!(b.value, BigInt::from(2).pow(5) * BigInt::from(3).pow(20));
        assert_eq!(bezout_from_degrees(&[1, 1, 1]).to_string(), "1");
        assert_eq!(bezout_from_degrees(&[4, 6]).to_string(), "2^3*3");
    }

    #[test]
    fn rational_rhs_keeps_denominators() {
        let m = parse_model("states: x\nparams: k\ndynamics: x' = k/(1 + x)\noutputs: y = x\n").unwrap();
        let pro = lie_prolong(&m, &[2]).unwrap();
        assert_eq!(pro.relations[0][1].power, 2);
        let (point, outs) = exact_derivatives(&pro, &[rat::int(2)], &[rat::int(1)], &rat::int(0)).unwrap();
        // x' = 2/2 = 1, x'' = -k x' / (1+x)^2 = -1/2
        assert_eq!(outs[0], vec![rat::int(1), rat::int(1), rat::frac(-1, 2)]);
        let _ = point;
        let sq = build_square_system(&m, &outs, &[2], &rat::int(0)).unwrap();
        assert_eq!(sq.denominators.len(), 1);
        assert_eq!(sq.denominators[0].to_string(), "x_0 + 1");
    }

    #[test]
    fn inputs_are_differentiated_in_time() {
        let m = parse_model("states: x\nparams: a\ninputs: u = t^2\ndynamics: x' = -a*x + u\noutputs: y = x\n").unwrap();
        let pro = lie_prolong(&m, &[2]).unwrap();
        let (_, outs) = exact_derivatives(&pro, &[rat::int(1)], &[rat::int(1)], &rat::int(1)).unwrap();
        // x' = -1 + 1 = 0, x'' = -a x' + 2t = 2
        assert_eq!(outs[0], vec![rat::int(1), rat::int(0), rat::int(2)]);
    }

    #[test]
    fn known_initial_value_is_substituted() {
        let m = parse_model("states: x\nparams: mu\ndynamics: x' = -mu*x\noutputs: y = x^2 + x\nknown x(0) = 1\n").unwrap();
        let sq = build_square_system(&m, &[vec![rat::int(2), rat::frac(-3, 2)]], &[1], &rat::int(0)).unwrap();
        assert_eq!(sq.system.unknowns(), &["x_1", "mu"]);
        let e = build_square_system(&m, &[vec![rat::int(2), rat::frac(-3, 2)]], &[1], &rat::int(1));
        assert_eq!(e.unwrap_err(), ProlongError::PinAwayFromStart);
    }

    #[test]
    fn system_text_round_trip() {
        let d = vec![vec![rat::int(2), rat::frac(-3, 2), rat::frac(61, 50)]];
        let sq = build_square_system(&toy(), &d, &[2], &rat::int(0)).unwrap();
        let text = sq.system.to_string();
        assert!(text.starts_with("# unknowns: x_0 x_1 x_2 mu\n"));
        let back: PolySystem = text.parse().unwrap();
        assert_eq!(back, sq.system);
        let bare: PolySystem = "x^2 + x - 2\ny = x".parse().unwrap();
        assert_eq!(bare.unknowns(), &["x", "y"]);
        assert!(matches!("".parse::<PolySystem>(), Err(SystemParseError::Empty)));
    }
}
