//! Definite Horn formulas and hydra formulas.
//!
//! A hydra formula is a definite 3-Horn formula in which every body that
//! occurs appears with every other variable as head. Its bodies form a graph,
//! and the shortest equivalent formula has exactly as many clauses as that
//! graph's hydra number; [`minimize_hydra`] computes one.
//!
//! Text format: one clause per line, `x & y -> z`; identifiers are
//! `[A-Za-z0-9_]+`; `#` starts a comment.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::Serialize;

use crate::error::{HydraError, Result};
use crate::graph::Graph;
use crate::solver::{hydra_number_with_isolated, SolverOptions};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Clause {
    body: BTreeSet<usize>,
    head: usize,
}

impl Clause {
    pub fn new(body: impl IntoIterator<Item = usize>, head: usize) -> Result<Self> {
        let body: BTreeSet<usize> = body.into_iter().collect();
        if body.is_empty() {
            return Err(HydraError::InvalidParameter("a clause needs a non-empty body".into()));
        }
        if body.contains(&head) {
            return Err(HydraError::InvalidParameter(format!("head {head} lies in the body")));
        }
        Ok(Clause { body, head })
    }

    pub fn body(&self) -> &BTreeSet<usize> {
        &self.body
    }

    pub fn head(&self) -> usize {
        self.head
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HornFormula {
    variables: Vec<String>,
    clauses: BTreeSet<Clause>,
}

impl HornFormula {
    /// Empty formula over the given variable names.
    pub fn with_variables(variables: Vec<String>) -> Self {
        HornFormula {
            variables,
            clauses: BTreeSet::new(),
        }
    }

    pub fn variables(&self) -> &[String] {
        &self.variables
    }

    pub fn clauses(&self) -> &BTreeSet<Clause> {
        &self.clauses
    }

    pub fn len(&self) -> usize {
        self.clauses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn variable(&self, name: &str) -> Option<usize> {
        self.variables.iter().position(|v| v == name)
    }

    /// Adds a clause over existing variable indices.
    pub fn insert(&mut self, clause: Clause) -> Result<bool> {
        let n = self.variables.len();
        if let Some(&v) = clause.body.iter().chain([&clause.head]).find(|&&v| v >= n) {
            return Err(HydraError::VertexOutOfRange { vertex: v, n });
        }
        Ok(self.clauses.insert(clause))
    }

    /// Builds a clause from variable names of this formula.
    pub fn clause(&self, body: &[&str], head: &str) -> Result<Clause> {
        let index = |name: &str| {
            self.variable(name)
                .ok_or_else(|| HydraError::InvalidParameter(format!("unknown variable `{name}`")))
        };
        Clause::new(body.iter().map(|b| index(b)).collect::<Result<Vec<_>>>()?, index(head)?)
    }

    pub fn is_three_horn(&self) -> bool {
        self.clauses.iter().all(|c| c.body.len() == 2)
    }

    /// Renders one clause with its body in name order.
    pub fn render(&self, c: &Clause) -> String {
        let name = |v: usize| self.variables.get(v).cloned().unwrap_or_else(|| format!("_{v}"));
        let mut body: Vec<String> = c.body.iter().map(|&v| name(v)).collect();
        body.sort();
        format!("{} -> {}", body.join(" & "), name(c.head))
    }

    /// Clauses rendered and sorted.
    pub fn lines(&self) -> Vec<String> {
        let mut lines: Vec<String> = self.clauses.iter().map(|c| self.render(c)).collect();
        lines.sort();
        lines
    }
}

impl fmt::Display for HornFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Ident(&'a str),
    And,
    Arrow,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> HydraError {
    HydraError::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(line_no: usize, line: &str) -> Result<Vec<(usize, Token<'_>)>> {
    let body = line.split('#').next().unwrap_or("");
    let bytes = body.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let col = body[..i].chars().count() + 1;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c == b'&' {
            out.push((col, Token::And));
            i += 1;
        } else if c == b'-' && bytes.get(i + 1) == Some(&b'>') {
            out.push((col, Token::Arrow));
            i += 2;
        } else if c.is_ascii_alphanumeric() || c == b'_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push((col, Token::Ident(&body[start..i])));
        } else {
            let ch = body[i..].chars().next().expect("in bounds");
            return Err(parse_err(line_no, col, format!("unexpected character `{ch}`")));
        }
    }
    Ok(out)
}

/// Parses the clause-per-line format; variables are numbered by first appearance.
pub fn parse(text: &str) -> Result<HornFormula> {
    let mut formula = HornFormula::default();
    let mut index: HashMap<String, usize> = HashMap::new();
    for (i, line) in text.lines().enumerate() {
        let line_no = i + 1;
        let tokens = tokenize(line_no, line)?;
        if tokens.is_empty() {
            continue;
        }
        let end_col = line.split('#').next().unwrap_or("").chars().count() + 1;
        let mut body: Vec<(usize, &str)> = Vec::new();
        let mut pos = 0;
        loop {
            match tokens.get(pos) {
                Some((col, Token::Ident(name))) => body.push((*col, name)),
                Some((col, _)) => return Err(parse_err(line_no, *col, "expected a variable")),
                None => return Err(parse_err(line_no, end_col, "expected a variable")),
            }
            pos += 1;
            match tokens.get(pos) {
                Some((_, Token::And)) => pos += 1,
                Some((_, Token::Arrow)) => {
                    pos += 1;
                    break;
                }
                Some((col, _)) => return Err(parse_err(line_no, *col, "expected `&` or `->`")),
                None => return Err(parse_err(line_no, end_col, "expected `->`")),
            }
        }
        let (head_col, head) = match tokens.get(pos) {
            Some((col, Token::Ident(name))) => (*col, *name),
            Some((col, _)) => return Err(parse_err(line_no, *col, "expected the head variable")),
            None => return Err(parse_err(line_no, end_col, "expected the head variable")),
        };
        if let Some((col, _)) = tokens.get(pos + 1) {
            return Err(parse_err(line_no, *col, "unexpected input after the head"));
        }
        if body.iter().any(|&(_, b)| b == head) {
            return Err(parse_err(line_no, head_col, format!("head `{head}` also appears in the body")));
        }
        let mut intern = |name: &str| -> usize {
            if let Some(&v) = index.get(name) {
                return v;
            }
            let v = formula.variables.len();
            formula.variables.push(name.to_string());
            index.insert(name.to_string(), v);
            v
        };
        let body_ids: Vec<usize> = body.iter().map(|&(_, b)| intern(b)).collect();
        let head_id = intern(head);
        let clause = Clause::new(body_ids, head_id).expect("checked above");
        formula.clauses.insert(clause);
    }
    Ok(formula)
}

/// Forward chaining from `start`; indices outside the variable table stay
/// marked only if they start marked.
fn chain(phi: &HornFormula, start: &BTreeSet<usize>) -> BTreeSet<usize> {
    let n = phi.variables.len();
    let mut marked: BTreeSet<usize> = start.clone();
    let clauses: Vec<&Clause> = phi.clauses.iter().collect();
    let mut pending: Vec<usize> = clauses
        .iter()
        .map(|c| c.body.iter().filter(|v| !marked.contains(v)).count())
        .collect();
    let mut watchers: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, c) in clauses.iter().enumerate() {
        for &v in &c.body {
            watchers[v].push(i);
        }
    }
    let mut queue: Vec<usize> = (0..clauses.len()).filter(|&i| pending[i] == 0).collect();
    while let Some(i) = queue.pop() {
        let head = clauses[i].head;
        if marked.insert(head) {
            for &j in &watchers[head] {
                pending[j] -= 1;
                if pending[j] == 0 {
                    queue.push(j);
                }
            }
        }
    }
    marked
}

/// Does `phi` imply the clause? (Its head is marked by chaining from its body.)
pub fn implies(phi: &HornFormula, c: &Clause) -> bool {
    chain(phi, &c.body).contains(&c.head)
}

/// Every clause of each formula follows from the other. Both must share the variable table.
pub fn equivalent(a: &HornFormula, b: &HornFormula) -> bool {
    a.clauses.iter().all(|c| implies(b, c)) && b.clauses.iter().all(|c| implies(a, c))
}

pub fn is_hydra(phi: &HornFormula) -> Result<bool> {
    if !phi.is_three_horn() {
        return Err(HydraError::NotThreeHorn);
    }
    let n = phi.variables.len();
    let mut heads: HashMap<&BTreeSet<usize>, usize> = HashMap::new();
    for c in &phi.clauses {
        *heads.entry(&c.body).or_default() += 1;
    }
    Ok(heads.values().all(|&count| count + 2 == n))
}

/// Graph on the variables whose edges are the bodies.
pub fn body_graph(phi: &HornFormula) -> Result<Graph> {
    if !is_hydra(phi)? {
        return Err(HydraError::NotHydra);
    }
    let pairs = phi.clauses.iter().map(|c| {
        let mut it = c.body.iter();
        (*it.next().expect("two"), *it.next().expect("two"))
    });
    Graph::from_edges_dedup(phi.variables.len(), pairs)
}

/// All clauses `u & v -> w` for edges `(u, v)`; variables are named `v0, v1, ...`.
pub fn expand_to_hydra(g: &Graph) -> Result<HornFormula> {
    let names = (0..g.n()).map(|v| format!("v{v}")).collect();
    expand_to_hydra_named(g, names)
}

pub fn expand_to_hydra_named(g: &Graph, names: Vec<String>) -> Result<HornFormula> {
    if g.n() < 3 {
        return Err(HydraError::TooFewVertices(g.n()));
    }
    if names.len() != g.n() {
        return Err(HydraError::DimensionMismatch {
            hypergraph: names.len(),
            graph: g.n(),
        });
    }
    let mut phi = HornFormula::with_variables(names);
    for &(u, v) in g.edges() {
        for w in (0..g.n()).filter(|&w| w != u && w != v) {
            phi.clauses.insert(Clause::new([u, v], w)?);
        }
    }
    Ok(phi)
}

#[derive(Clone, Debug, Serialize)]
pub struct Minimized {
    #[serde(skip)]
    pub formula: HornFormula,
    /// Proven interval for the shortest equivalent formula.
    pub lower: usize,
    pub upper: usize,
    pub exact: bool,
}

/// Shortest equivalent subformula of a hydra formula, via the exact solver on
/// its body graph. If the solver stops early the result is the best verified
/// reduction and `exact` is false.
pub fn minimize_hydra(phi: &HornFormula, opts: &SolverOptions) -> Result<Minimized> {
    let g = body_graph(phi)?;
    if g.m() == 0 {
        return Ok(Minimized {
            formula: phi.clone(),
            lower: 0,
            upper: 0,
            exact: true,
        });
    }
    let (result, _) = hydra_number_with_isolated(&g, opts)?;
    let cert = result
        .certificate
        .as_ref()
        .ok_or(HydraError::SearchLimit { nodes: result.stats.nodes })?;
    let mut out = HornFormula::with_variables(phi.variables.clone());
    for a in cert.arcs() {
        let (u, v) = a.body();
        out.insert(Clause::new([u, v], a.head())?)?;
    }
    debug_assert!(out.clauses.is_subset(&phi.clauses));
    Ok(Minimized {
        lower: result.lower,
        upper: out.len(),
        exact: result.is_exact(),
        formula: out,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const EXAMPLE: &str = "x & y -> z\nx & y -> u\nx & z -> y\nx & z -> u\n";

    #[test]
    fn parses_example() {
        let phi = parse(EXAMPLE).unwrap();
        assert_eq!(phi.len(), 4);
        assert_eq!(phi.variables(), &["x", "y", "z", "u"]);
        assert!(is_hydra(&phi).unwrap());
        let g = body_graph(&phi).unwrap();
        assert_eq!(g.edges(), &[(0, 1), (0, 2)]);
    }

    #[test]
    fn parse_errors() {
        let err = parse("x & y -> x").unwrap_err();
        assert_eq!(
            err,
            HydraError::Parse {
                line: 1,
                column: 10,
                message: "head `x` also appears in the body".into()
            }
        );
        assert!(matches!(parse("# c\nx & -> y"), Err(HydraError::Parse { line: 2, column: 5, .. })));
        assert!(matches!(parse("x y -> z"), Err(HydraError::Parse { line: 1, column: 3, .. })));
        assert!(matches!(parse("x & y -> z w"), Err(HydraError::Parse { column: 12, .. })));
        assert!(matches!(parse("x & y -> z!"), Err(HydraError::Parse { column: 11, .. })));
        assert!(parse("a_1 & B2 -> c # trailing\n\n").is_ok());
    }

    #[test]
    fn not_hydra_after_dropping() {
        let phi = parse("x & y -> z\nx & y -> u\nx & z -> y\n").unwrap();
        assert!(!is_hydra(&phi).unwrap());
        assert_eq!(body_graph(&phi).unwrap_err(), HydraError::NotHydra);
        let wide = parse("a & b & c -> d").unwrap();
        assert_eq!(is_hydra(&wide).unwrap_err(), HydraError::NotThreeHorn);
    }

    #[test]
    fn implication() {
        let phi = parse(EXAMPLE).unwrap();
        assert!(implies(&phi, &phi.clause(&["x", "y"], "u").unwrap()));
        assert!(!implies(&phi, &phi.clause(&["x", "u"], "y").unwrap()));
        let empty = HornFormula::with_variables(vec!["x".into(), "y".into(), "z".into()]);
        assert!(!implies(&empty, &empty.clause(&["x", "y"], "z").unwrap()));
        // Index 9 is not a variable of the formula and never helps a body fire.
        assert!(!implies(&phi, &Clause::new([0, 9], 3).unwrap()));
        assert!(implies(&phi, &Clause::new([0, 9, 1], 3).unwrap()));
    }

    #[test]
    fn expansion_counts() {
        let c3 = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(expand_to_hydra(&c3).unwrap().len(), 3);
        let b2 = Graph::new(7, [(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)]).unwrap();
        let phi = expand_to_hydra(&b2).unwrap();
        assert_eq!(phi.len(), 30);
        assert_eq!(body_graph(&phi).unwrap(), b2);
    }

    #[test]
    fn minimizes_example() {
        let phi = parse(EXAMPLE).unwrap();
        let min = minimize_hydra(&phi, &SolverOptions::default()).unwrap();
        assert!(min.exact);
        assert!(equivalent(&phi, &min.formula));
        assert!(min.formula.clauses().is_subset(phi.clauses()));
        // Star body graph plus one isolated head-only variable.
        assert_eq!(min.formula.len(), 3);
    }
}
