//! ODE models with rational right-hand sides, and measurement datasets.
//!
//! Model text is split into sections:
//!
//! ```text
//! states: x
//! params: mu
//! inputs:
//!   u = t^2 + 1
//! dynamics:
//!   x' = -mu*x + u
//! outputs:
//!   y = x^2 + x
//! known x(0) = 2
//! ```
//!
//! A section keyword may carry its first item on the same line. `#` starts a
//! comment. `t` is the time variable and may only appear in input definitions.

use std::fmt;

use thiserror::Error;

use crate::poly::parse::{self, ParseError, ParseErrorKind};
use crate::poly::{rat, Poly, Rat, RatFun, Registry};
use crate::univariate::UniPoly;

const SECTIONS: [&str; 6] = ["states", "params", "inputs", "dynamics", "outputs", "known"];
const TIME: &str = "t";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    states: Vec<String>,
    params: Vec<String>,
    inputs: Vec<(String, UniPoly)>,
    /// States, then parameters, then inputs.
    registry: Registry,
    rhs: Vec<RatFun>,
    outputs: Vec<(String, RatFun)>,
    /// State index and its value at time 0.
    known: Vec<(usize, Rat)>,
}

impl Model {
    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn inputs(&self) -> &[(String, UniPoly)] {
        &self.inputs
    }

    pub fn registry(&self) -> &Registry {
        &self.registry
    }

    pub fn rhs(&self) -> &[RatFun] {
        &self.rhs
    }

    pub fn outputs(&self) -> &[(String, RatFun)] {
        &self.outputs
    }

    pub fn known(&self) -> &[(usize, Rat)] {
        &self.known
    }

    pub fn state_var(&self, i: usize) -> usize {
        i
    }

    pub fn param_var(&self, i: usize) -> usize {
        self.states.len() + i
    }

    pub fn input_var(&self, i: usize) -> usize {
        self.states.len() + self.params.len() + i
    }

    pub fn output_names(&self) -> Vec<String> {
        self.outputs.iter().map(|(n, _)| n.clone()).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelErrorKind {
    Syntax(String),
    Unsupported(String),
    Undeclared(String),
    Semantic(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {}", describe(.kind))]
pub struct ModelError {
    pub line: usize,
    pub column: usize,
    pub kind: ModelErrorKind,
}

fn describe(k: &ModelErrorKind) -> String {
    match k {
        ModelErrorKind::Syntax(m) => format!("syntax error: {m}"),
        ModelErrorKind::Unsupported(m) => format!("unsupported expression: {m}"),
        ModelErrorKind::Undeclared(s) => format!("undeclared symbol `{s}`"),
        ModelErrorKind::Semantic(m) => m.clone(),
    }
}

impl From<ParseError> for ModelError {
    fn from(e: ParseError) -> Self {
        let kind = match e.kind {
            ParseErrorKind::Syntax(m) => ModelErrorKind::Syntax(m),
            ParseErrorKind::Unsupported(m) => ModelErrorKind::Unsupported(m),
            ParseErrorKind::UnknownSymbol(s) => ModelErrorKind::Undeclared(s),
            ParseErrorKind::NotPolynomial => {
                ModelErrorKind::Unsupported("input must be a polynomial in t".into())
            }
            ParseErrorKind::Algebra(a) => ModelErrorKind::Semantic(a.to_string()),
        };
        ModelError {
            line: e.line,
            column: e.column,
            kind,
        }
    }
}

fn semantic(line: usize, column: usize, msg: impl Into<String>) -> ModelError {
    ModelError {
        line,
        column,
        kind: ModelErrorKind::Semantic(msg.into()),
    }
}

fn syntax(line: usize, column: usize, msg: impl Into<String>) -> ModelError {
    ModelError {
        line,
        column,
        kind: ModelErrorKind::Syntax(msg.into()),
    }
}

/// One content item: its section, line, 0-based column offset and text.
struct Item<'a> {
    section: &'a str,
    line: usize,
    col: usize,
    text: &'a str,
}

fn is_identifier(s: &str) -> bool {
    let mut c = s.chars();
    c.next().is_some_and(|f| f.is_ascii_alphabetic() || f == '_')
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

fn split_items(text: &str) -> Result<Vec<Item<'_>>, ModelError> {
    let mut items = Vec::new();
    let mut section: Option<&str> = None;
    for (ln, raw) in text.lines().enumerate() {
        let line = ln + 1;
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        if trimmed.trim().is_empty() {
            continue;
        }
        let mut col = body.len() - trimmed.len();
        let mut content = trimmed;
        let word_end = trimmed
            .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
            .unwrap_or(trimmed.len());
        let word = &trimmed[..word_end];
        if let Some(&kw) = SECTIONS.iter().find(|&&s| s == word) {
            let rest = &trimmed[word_end..];
            // keywords are reserved, so an item never starts with one
            if rest.is_empty() || rest.starts_with(':') || rest.starts_with(char::is_whitespace) {
                section = Some(kw);
                let after = rest.strip_prefix(':').unwrap_or(rest);
                col += word_end + (rest.len() - after.len());
                let lead = after.len() - after.trim_start().len();
                col += lead;
                content = after.trim_start();
                if content.trim().is_empty() {
                    continue;
                }
            }
        }
        let Some(sec) = section else {
            return Err(syntax(line, col + 1, "content before any section header"));
        };
        items.push(Item {
            section: sec,
            line,
            col,
            text: content.trim_end(),
        });
    }
    Ok(items)
}

fn names_in(item: &Item<'_>) -> Result<Vec<(String, usize)>, ModelError> {
    let mut out = Vec::new();
    let mut offset = 0;
    for piece in item.text.split(|c: char| c == ',' || c.is_whitespace()) {
        let start = offset;
        offset += piece.len() + 1;
        if piece.is_empty() {
            continue;
        }
        if !is_identifier(piece) {
            return Err(syntax(
                item.line,
                item.col + start + 1,
                format!("`{piece}` is not a valid name"),
            ));
        }
        out.push((piece.to_string(), item.col + start + 1));
    }
    Ok(out)
}

pub fn parse_model(text: &str) -> Result<Model, ModelError> {
    let items = split_items(text)?;
    let mut states: Vec<String> = Vec::new();
    let mut params: Vec<String> = Vec::new();
    let mut input_defs: Vec<(String, &Item<'_>, usize)> = Vec::new();
    let mut seen: Vec<String> = Vec::new();
    let mut declare = |name: &str, line: usize, col: usize| -> Result<(), ModelError> {
        if name == TIME || SECTIONS.contains(&name) {
            return Err(semantic(line, col, format!("`{name}` is a reserved name")));
        }
        if seen.iter().any(|s| s == name) {
            return Err(semantic(line, col, format!("duplicate name `{name}`")));
        }
        seen.push(name.to_string());
        Ok(())
    };

    for item in &items {
        match item.section {
            "states" | "params" => {
                for (name, col) in names_in(item)? {
                    declare(&name, item.line, col)?;
                    if item.section == "states" {
                        states.push(name);
                    } else {
                        params.push(name);
                    }
                }
            }
            "inputs" => {
                let (lhs, _) = item
                    .text
                    .split_once('=')
                    .ok_or_else(|| syntax(item.line, item.col + 1, "expected `name = polynomial in t`"))?;
                let name = lhs.trim();
                if !is_identifier(name) {
                    return Err(syntax(item.line, item.col + 1, format!("`{name}` is not a valid name")));
                }
                declare(name, item.line, item.col + 1)?;
                input_defs.push((name.to_string(), item, lhs.len() + 1));
            }
            _ => {}
        }
    }
    if states.is_empty() {
        return Err(semantic(1, 1, "model declares no states"));
    }

    let time_reg = Registry::new([TIME]).expect("single name");
    let mut inputs = Vec::new();
    for (name, item, rhs_off) in input_defs {
        let p = parse::parse_poly_at(&item.text[rhs_off..], &time_reg, item.line, item.col + rhs_off)?;
        inputs.push((name, UniPoly::from_poly(&p, 0).expect("univariate")));
    }

    let names: Vec<String> = states
        .iter()
        .chain(&params)
        .cloned()
        .chain(inputs.iter().map(|(n, _)| n.clone()))
        .collect();
    let registry = Registry::new(names).map_err(|e| semantic(1, 1, e.to_string()))?;

    let mut rhs: Vec<Option<RatFun>> = vec![None; states.len()];
    let mut outputs: Vec<(String, RatFun)> = Vec::new();
    let mut known: Vec<(usize, Rat)> = Vec::new();
    for item in &items {
        match item.section {
            "dynamics" => {
                let (lhs, rest) = item
                    .text
                    .split_once('=')
                    .ok_or_else(|| syntax(item.line, item.col + 1, "expected `x' = expression`"))?;
                let lhs_t = lhs.trim();
                let Some(state) = lhs_t.strip_suffix('\'').map(str::trim) else {
                    return Err(syntax(item.line, item.col + 1, "left side must be a state derivative like `x'`"));
                };
                let Some(i) = states.iter().position(|s| s == state) else {
                    return Err(ModelError {
                        line: item.line,
                        column: item.col + 1,
                        kind: ModelErrorKind::Undeclared(state.to_string()),
                    });
                };
                if rhs[i].is_some() {
                    return Err(semantic(item.line, item.col + 1, format!("second equation for state `{state}`")));
                }
                let f = parse::parse_ratfun_at(rest, &registry, item.line, item.col + lhs.len() + 1)?;
                rhs[i] = Some(f);
            }
            "outputs" => {
                let (lhs, rest) = item
                    .text
                    .split_once('=')
                    .ok_or_else(|| syntax(item.line, item.col + 1, "expected `y = expression`"))?;
                let name = lhs.trim();
                if !is_identifier(name) {
                    return Err(syntax(item.line, item.col + 1, format!("`{name}` is not a valid output name")));
                }
                if name == TIME
                    || registry.index_of(name).is_some()
                    || outputs.iter().any(|(n, _)| n == name)
                {
                    return Err(semantic(item.line, item.col + 1, format!("duplicate name `{name}`")));
                }
                let g = parse::parse_ratfun_at(rest, &registry, item.line, item.col + lhs.len() + 1)?;
                outputs.push((name.to_string(), g));
            }
            "known" => {
                let (lhs, rest) = item
                    .text
                    .split_once('=')
                    .ok_or_else(|| syntax(item.line, item.col + 1, "expected `x(0) = value`"))?;
                let lhs_t = lhs.trim();
                let state = lhs_t
                    .strip_suffix("(0)")
                    .map(str::trim)
                    .ok_or_else(|| syntax(item.line, item.col + 1, "expected `x(0) = value`"))?;
                let i = states.iter().position(|s| s == state).ok_or_else(|| ModelError {
                    line: item.line,
                    column: item.col + 1,
                    kind: ModelErrorKind::Undeclared(state.to_string()),
                })?;
                let value = rat::parse(rest.trim())
                    .ok_or_else(|| syntax(item.line, item.col + lhs.len() + 2, "expected a number"))?;
                if known.iter().any(|(k, _)| *k == i) {
                    return Err(semantic(item.line, item.col + 1, format!("state `{state}` pinned twice")));
                }
                known.push((i, value));
            }
            _ => {}
        }
    }
    let rhs = rhs
        .into_iter()
        .enumerate()
        .map(|(i, f)| f.ok_or_else(|| semantic(1, 1, format!("state `{}` has no dynamics", states[i]))))
        .collect::<Result<Vec<_>, _>>()?;
    if outputs.is_empty() {
        return Err(semantic(1, 1, "model declares no outputs"));
    }
    Ok(Model {
        states,
        params,
        inputs,
        registry,
        rhs,
        outputs,
        known,
    })
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.states.join(", "))?;
        if !self.params.is_empty() {
            writeln!(f, "params: {}", self.params.join(", "))?;
        }
        if !self.inputs.is_empty() {
            writeln!(f, "inputs:")?;
            for (name, u) in &self.inputs {
                writeln!(f, "  {name} = {}", u.fmt_var(TIME))?;
            }
        }
        writeln!(f, "dynamics:")?;
        for (s, r) in self.states.iter().zip(&self.rhs) {
            writeln!(f, "  {s}' = {r}")?;
        }
        writeln!(f, "outputs:")?;
        for (name, g) in &self.outputs {
            writeln!(f, "  {name} = {g}")?;
        }
        for (i, v) in &self.known {
            writeln!(f, "known {}(0) = {v}", self.states[*i])?;
        }
        Ok(())
    }
}

/// Time series of every model output, exact rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    times: Vec<Rat>,
    outputs: Vec<String>,
    /// `values[j][i]` is output `j` at `times[i]`.
    values: Vec<Vec<Rat>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DataError {
    #[error("malformed CSV: {0}")]
    Csv(String),
    #[error("header has no time column `t`")]
    MissingTime,
    #[error("no column for output `{0}`")]
    MissingOutput(String),
    /// Rows count data lines from 1, header excluded.
    #[error("row {row}, column `{column}`: cannot read `{text}` as a number")]
    Unparsable {
        row: usize,
        column: String,
        text: String,
    },
    #[error("row {row}: times must be strictly increasing")]
    NonIncreasing { row: usize },
    #[error("need at least 2 samples, found {0}")]
    TooFewSamples(usize),
}

impl Dataset {
    pub fn new(times: Vec<Rat>, outputs: Vec<String>, values: Vec<Vec<Rat>>) -> Result<Self, DataError> {
        assert_eq!(outputs.len(), values.len());
        assert!(values.iter().all(|v| v.len() == times.len()), "ragged dataset");
        if times.len() < 2 {
            return Err(DataError::TooFewSamples(times.len()));
        }
        if let Some(k) = times.windows(2).position(|w| w[0] >= w[1]) {
            return Err(DataError::NonIncreasing { row: k + 2 });
        }
        Ok(Dataset { times, outputs, values })
    }

    /// Sorts rows by time before validating.
    pub fn from_unsorted_rows(
        outputs: Vec<String>,
        mut rows: Vec<(Rat, Vec<Rat>)>,
    ) -> Result<Self, DataError> {
        rows.sort_by(|a, b| a.0.cmp(&b.0));
        let times = rows.iter().map(|r| r.0.clone()).collect();
        let values = (0..outputs.len())
            .map(|j| rows.iter().map(|r| r.1[j].clone()).collect())
            .collect();
        Self::new(times, outputs, values)
    }

    pub fn times(&self) -> &[Rat] {
        &self.times
    }

    pub fn outputs(&self) -> &[String] {
        &self.outputs
    }

    pub fn values(&self, output: usize) -> &[Rat] {
        &self.values[output]
    }

    pub fn len(&self) -> usize {
        self.times.len()
    }

    pub fn is_empty(&self) -> bool {
        self.times.is_empty()
    }

    /// Columns reordered to follow the model's outputs.
    pub fn aligned_to(&self, model: &Model) -> Result<Dataset, DataError> {
        let mut values = Vec::new();
        for name in model.output_names() {
            let j = self
                .outputs
                .iter()
                .position(|o| *o == name)
                .ok_or_else(|| DataError::MissingOutput(name.clone()))?;
            values.push(self.values[j].clone());
        }
        Ok(Dataset {
            times: self.times.clone(),
            outputs: model.output_names(),
            values,
        })
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from(TIME);
        for o in &self.outputs {
            out.push(',');
            out.push_str(o);
        }
        out.push('\n');
        for (i, t) in self.times.iter().enumerate() {
            out.push_str(&t.to_string());
            for v in &self.values {
                out.push(',');
                out.push_str(&v[i].to_string());
            }
            out.push('\n');
        }
        out
    }
}

/// Reads a CSV whose header names `t` and every output of `model`.
pub fn parse_dataset(text: &str, model: &Model) -> Result<Dataset, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .comment(Some(b'#'))
        .from_reader(text.as_bytes());
    let header: Vec<String> = reader
        .headers()
        .map_err(|e| DataError::Csv(e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    let tcol = header.iter().position(|h| h == TIME).ok_or(DataError::MissingTime)?;
    let mut cols = Vec::new();
    for name in model.output_names() {
        let c = header
            .iter()
            .position(|h| *h == name)
            .ok_or_else(|| DataError::MissingOutput(name.clone()))?;
        cols.push(c);
    }
    let mut times = Vec::new();
    let mut values = vec![Vec::new(); cols.len()];
    for (r, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| DataError::Csv(e.to_string()))?;
        let row = r + 1;
        let cell = |c: usize| -> Result<Rat, DataError> {
            let text = rec.get(c).unwrap_or("");
            rat::parse(text).ok_or_else(|| DataError::Unparsable {
                row,
                column: header[c].clone(),
                text: text.to_string(),
            })
        };
        times.push(cell(tcol)?);
        for (j, &c) in cols.iter().enumerate() {
            values[j].push(cell(c)?);
        }
    }
    Dataset::new(times, model.output_names(), values)
}

/// Value of every input at time `t`.
pub fn input_values(model: &Model, t: &Rat) -> Vec<Rat> {
    model.inputs.iter().map(|(_, u)| u.eval(t)).collect()
}

/// Parses a polynomial over the model registry (used for bounds and tests).
pub fn parse_in_model(text: &str, model: &Model) -> Result<Poly, ModelError> {
    Ok(parse::parse_poly(text, &model.registry)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) const TOY: &str = "states: x\nparams: mu\ndynamics:\n  x' = -mu*x\noutputs:\n  y = x^2 + x\n";
    const TOY_DATA: &str = "t,y\n0.00,2.00\n0.33,1.56\n0.66,1.23\n1.00,0.97\n";

    #[test]
    fn toy_model() {
        let m = parse_model(TOY).unwrap();
        assert_eq!(m.states(), &["x".to_string()]);
        assert_eq!(m.params(), &["mu".to_string()]);
        assert_eq!(m.outputs().len(), 1);
        assert_eq!(m.rhs()[0].to_string(), "-x*mu");
    }

    #[test]
    fn duplicate_state_is_rejected() {
        let e = parse_model("states: x, x\ndynamics:\n x' = 1\noutputs:\n y = x\n").unwrap_err();
        assert!(matches!(e.kind, ModelErrorKind::Semantic(_)));
        assert_eq!((e.line, e.column), (1, 12));
    }

    #[test]
    fn rational_rhs_and_errors() {
        let m = parse_model("states: x\ndynamics: x' = 1/x\noutputs: y = x\n").unwrap();
        assert!(!m.rhs()[0].is_polynomial());
        let e = parse_model("states: x\ndynamics: x' = sin(x)\noutputs: y = x\n").unwrap_err();
        assert!(matches!(e.kind, ModelErrorKind::Unsupported(_)));
        assert_eq!(e.line, 2);
        let e = parse_model("states: x\ndynamics: x' = k*x\noutputs: y = x\n").unwrap_err();
        assert_eq!(e.kind, ModelErrorKind::Undeclared("k".into()));
        assert_eq!((e.line, e.column), (2, 16));
        let e = parse_model("states: x\ndynamics: x' = (x\noutputs: y = x\n").unwrap_err();
        assert!(matches!(e.kind, ModelErrorKind::Syntax(_)));
    }

    #[test]
    fn inputs_and_pins_round_trip() {
        let src = "states: a, b\nparams: k1, k2\ninputs:\n u = t^2 + 1/2\ndynamics:\n a' = -k1*a + u\n b' = k1*a/(1 + b) - k2*b\noutputs:\n y1 = a\n y2 = b^2\nknown a(0) = 3/2\n";
        let m = parse_model(src).unwrap();
        assert_eq!(m.inputs()[0].1, UniPoly::new(vec![rat::frac(1, 2), rat::int(0), rat::int(1)]));
        assert_eq!(m.known(), &[(0, rat::frac(3, 2))]);
        let again = parse_model(&m.to_string()).unwrap();
        assert_eq!(again, m);
    }

    #[test]
    fn toy_dataset() {
        let m = parse_model(TOY).unwrap();
        let d = parse_dataset(TOY_DATA, &m).unwrap();
        assert_eq!(d.times(), &[rat::int(0), rat::frac(33, 100), rat::frac(66, 100), rat::int(1)]);
        assert_eq!(
            d.values(0),
            &[rat::int(2), rat::frac(156, 100), rat::frac(123, 100), rat::frac(97, 100)]
        );
    }

    #[test]
    fn dataset_validation() {
        let m = parse_model(TOY).unwrap();
        assert_eq!(parse_dataset("t,y\n0,1\n", &m), Err(DataError::TooFewSamples(1)));
        assert_eq!(
            parse_dataset("t,y\n1,1\n0,2\n", &m),
            Err(DataError::NonIncreasing { row: 2 })
        );
        assert_eq!(
            parse_dataset("t,z\n0,1\n1,2\n", &m),
            Err(DataError::MissingOutput("y".into()))
        );
        assert!(matches!(
            parse_dataset("t,y\n0,1\n1,abc\n", &m),
            Err(DataError::Unparsable { row: 2, .. })
        ));
        let d = parse_dataset("y,t\n1/3,0\n2,1e-1\n", &m).unwrap();
        assert_eq!(d.values(0)[0], rat::frac(1, 3));
        assert_eq!(d.times()[1], rat::frac(1, 10));
    }
}
