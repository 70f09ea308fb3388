//! Bounded integer quadratic programs and an exact branch-and-bound solver.
//!
//! The objective is `x^T Q x + c^T x + offset`. `Q` is kept symmetrized as
//! `S = Q + Q^T`, which has an even diagonal, so `x^T S x` is always even and
//! the objective `x^T S x / 2 + c^T x + offset` stays integral.
//!
//! All arithmetic on values is exact: `i128` intermediates with checked
//! operations, narrowed to `i64` on output.

use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_NODE_BUDGET: u64 = 1_000_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Relation {
    /// `a^T x = b`
    Eq,
    /// `a^T x <= b`
    Le,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearConstraint {
    /// Sparse coefficients `(variable, coefficient)`, one entry per variable.
    pub terms: Vec<(usize, i64)>,
    pub relation: Relation,
    pub rhs: i64,
}

impl LinearConstraint {
    fn activity(&self, x: &[i64]) -> Result<i128> {
        self.terms.iter().try_fold(0i128, |acc, &(i, a)| {
            (a as i128)
                .checked_mul(x[i] as i128)
                .and_then(|t| acc.checked_add(t))
                .ok_or(Error::Overflow("constraint activity"))
        })
    }

    pub fn is_satisfied(&self, x: &[i64]) -> Result<bool> {
        let lhs = self.activity(x)?;
        let rhs = self.rhs as i128;
        Ok(match self.relation {
            Relation::Eq => lhs == rhs,
            Relation::Le => lhs <= rhs,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IqpInstance {
    num_vars: usize,
    // S = Q + Q^T, row-major
    quad: Vec<i64>,
    linear: Vec<i64>,
    offset: i64,
    constraints: Vec<LinearConstraint>,
    bounds: Vec<(i64, i64)>,
}

/// Incremental construction of an [`IqpInstance`].
#[derive(Debug, Clone)]
pub struct IqpBuilder {
    inst: IqpInstance,
}

impl IqpBuilder {
    /// `num_vars` variables, all initially fixed at zero by the bounds `[0, 0]`.
    pub fn new(num_vars: usize) -> Self {
        IqpBuilder {
            inst: IqpInstance {
                num_vars,
                quad: vec![0; num_vars * num_vars],
                linear: vec![0; num_vars],
                offset: 0,
                constraints: Vec::new(),
                bounds: vec![(0, 0); num_vars],
            },
        }
    }

    /// Adds `coeff * x_i * x_j` to the objective.
    pub fn quadratic(&mut self, i: usize, j: usize, coeff: i64) -> &mut Self {
        let t = self.inst.num_vars;
        if i == j {
            self.inst.quad[i * t + i] += 2 * coeff;
        } else {
            self.inst.quad[i * t + j] += coeff;
            self.inst.quad[j * t + i] += coeff;
        }
        self
    }

    /// Adds `coeff * x_i` to the objective.
    pub fn linear(&mut self, i: usize, coeff: i64) -> &mut Self {
        self.inst.linear[i] += coeff;
        self
    }

    pub fn offset(&mut self, value: i64) -> &mut Self {
        self.inst.offset += value;
        self
    }

    pub fn constraint(
        &mut self,
        terms: &[(usize, i64)],
        relation: Relation,
        rhs: i64,
    ) -> &mut Self {
        self.inst.constraints.push(LinearConstraint {
            terms: merge_terms(terms),
            relation,
            rhs,
        });
        self
    }

    pub fn bound(&mut self, i: usize, lo: i64, hi: i64) -> &mut Self {
        self.inst.bounds[i] = (lo, hi);
        self
    }

    pub fn build(&self) -> Result<IqpInstance> {
        self.inst.validate()?;
        Ok(self.inst.clone())
    }
}

fn merge_terms(terms: &[(usize, i64)]) -> Vec<(usize, i64)> {
    let mut merged: Vec<(usize, i64)> = terms.to_vec();
    merged.sort_by_key(|&(i, _)| i);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(merged.len());
    for (i, a) in merged {
        match out.last_mut() {
            Some((j, b)) if *j == i => *b += a,
            _ => out.push((i, a)),
        }
    }
    out.retain(|&(_, a)| a != 0);
    out
}

impl IqpInstance {
    /// Builds an instance from a dense (not necessarily symmetric) `Q`.
    pub fn from_dense(
        q: &[Vec<i64>],
        linear: Vec<i64>,
        offset: i64,
        constraints: Vec<LinearConstraint>,
        bounds: Vec<(i64, i64)>,
    ) -> Result<Self> {
        let t = linear.len();
        if q.len() != t || q.iter().any(|row| row.len() != t) || bounds.len() != t {
            return Err(Error::InvalidInput(format!(
                "dimension mismatch: {t} linear coefficients, {} rows in Q, {} bounds",
                q.len(),
                bounds.len()
            )));
        }
        let mut quad = vec![0i64; t * t];
        for i in 0..t {
            for j in 0..t {
                quad[i * t + j] = q[i][j]
                    .checked_add(q[j][i])
                    .ok_or(Error::Overflow("symmetrizing Q"))?;
            }
        }
        let inst = IqpInstance {
            num_vars: t,
            quad,
            linear,
            offset,
            constraints: constraints
                .into_iter()
                .map(|c| LinearConstraint {
                    terms: merge_terms(&c.terms),
                    ..c
                })
                .collect(),
            bounds,
        };
        inst.validate()?;
        Ok(inst)
    }

    fn validate(&self) -> Result<()> {
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            if lo > hi {
                return Err(Error::InvalidInput(format!(
                    "variable {i} has empty bounds [{lo}, {hi}]"
                )));
            }
        }
        for c in &self.constraints {
            if let Some(&(i, _)) = c.terms.iter().find(|&&(i, _)| i >= self.num_vars) {
                return Err(Error::InvalidInput(format!(
                    "constraint references variable {i} of {}",
                    self.num_vars
                )));
            }
        }
        Ok(())
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    /// Entry `(i, j)` of `S = Q + Q^T`.
    pub fn symmetric_quadratic(&self, i: usize, j: usize) -> i64 {
        self.quad[i * self.num_vars + j]
    }

    pub fn linear_coefficients(&self) -> &[i64] {
        &self.linear
    }

    pub fn offset_value(&self) -> i64 {
        self.offset
    }

    pub fn constraints(&self) -> &[LinearConstraint] {
        &self.constraints
    }

    pub fn bounds(&self) -> &[(i64, i64)] {
        &self.bounds
    }

    /// Largest absolute entry of the symmetric `Q = S / 2` (rounded up) and of
    /// the constraint matrix.
    pub fn alpha(&self) -> u64 {
        let q = self
            .quad
            .iter()
            .map(|&s| s.unsigned_abs().div_ceil(2))
            .max()
            .unwrap_or(0);
        let a = self
            .constraints
            .iter()
            .flat_map(|c| c.terms.iter().map(|&(_, a)| a.unsigned_abs()))
            .max()
            .unwrap_or(0);
        q.max(a)
    }

    /// Exact objective value at `x`.
    pub fn objective(&self, x: &[i64]) -> Result<i64> {
        if x.len() != self.num_vars {
            return Err(Error::InvalidInput(format!(
                "assignment has {} values for {} variables",
                x.len(),
                self.num_vars
            )));
        }
        let overflow = || Error::Overflow("IQP objective");
        let t = self.num_vars;
        let mut quad = 0i128;
        for i in 0..t {
            for j in 0..t {
                let s = self.quad[i * t + j];
                if s == 0 {
                    continue;
                }
                let term = (s as i128)
                    .checked_mul(x[i] as i128)
                    .and_then(|v| v.checked_mul(x[j] as i128))
                    .ok_or_else(overflow)?;
                quad = quad.checked_add(term).ok_or_else(overflow)?;
            }
        }
        debug_assert!(quad % 2 == 0);
        let mut total = (quad / 2)
            .checked_add(self.offset as i128)
            .ok_or_else(overflow)?;
        for i in 0..t {
            let term = (self.linear[i] as i128)
                .checked_mul(x[i] as i128)
                .ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
        i64::try_from(total).map_err(|_| overflow())
    }

    /// Bounds and constraints hold at `x`.
    pub fn is_feasible(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.num_vars {
            return Ok(false);
        }
        if x.iter()
            .zip(&self.bounds)
            .any(|(&v, &(lo, hi))| v < lo || v > hi)
        {
            return Ok(false);
        }
        for c in &self.constraints {
            if !c.is_satisfied(x)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// Debug dump, one item per line:
///
/// ```text
/// vars 2
/// min
/// q 0 0 1
/// c 0 -6
/// const 0
/// eq 1 1 5
/// bound 0 0 10
/// ```
///
/// `q i j coeff` (with `i <= j`) adds `coeff * x_i * x_j`; constraint lines
/// list one dense coefficient per variable followed by the right-hand side.
impl fmt::Display for IqpInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.num_vars;
        writeln!(f, "vars {t}")?;
        writeln!(f, "min")?;
        for i in 0..t {
            for j in i..t {
                let s = self.quad[i * t + j];
                let coeff = if i == j { s / 2 } else { s };
                if coeff != 0 {
                    writeln!(f, "q {i} {j} {coeff}")?;
                }
            }
        }
        for (i, &c) in self.linear.iter().enumerate() {
            if c != 0 {
                writeln!(f, "c {i} {c}")?;
            }
        }
        if self.offset != 0 {
            writeln!(f, "const {}", self.offset)?;
        }
        for c in &self.constraints {
            let mut dense = vec![0i64; t];
            for &(i, a) in &c.terms {
                dense[i] = a;
            }
            let tag = match c.relation {
                Relation::Eq => "eq",
                Relation::Le => "le",
            };
            write!(f, "{tag}")?;
            for a in dense {
                write!(f, " {a}")?;
            }
            writeln!(f, " {}", c.rhs)?;
        }
        for (i, &(lo, hi)) in self.bounds.iter().enumerate() {
            writeln!(f, "bound {i} {lo} {hi}")?;
        }
        Ok(())
    }
}

impl std::str::FromStr for IqpInstance {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut builder: Option<IqpBuilder> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line = idx + 1;
            let err = |message: &str| Error::Parse {
                line,
                message: message.to_string(),
            };
            let mut fields = raw.split_whitespace();
            let Some(tag) = fields.next() else { continue };
            let nums: Vec<i64> = fields
                .map(|s| {
                    s.parse::<i64>()
                        .map_err(|_| err(&format!("bad integer {s:?}")))
                })
                .collect::<Result<_>>()?;
            if tag == "vars" {
                match nums.as_slice() {
                    [t] if *t >= 0 => builder = Some(IqpBuilder::new(*t as usize)),
                    _ => return Err(err("expected `vars <count>`")),
                }
                continue;
            }
            let b = builder
                .as_mut()
                .ok_or_else(|| err("`vars` line must come first"))?;
            let t = b.inst.num_vars;
            let var = |v: i64| -> Result<usize> {
                if v < 0 || v as usize >= t {
                    Err(err(&format!("variable {v} out of range")))
                } else {
                    Ok(v as usize)
                }
            };
            match (tag, nums.as_slice()) {
                ("min", []) => {}
                ("q", &[i, j, c]) => {
                    b.quadratic(var(i)?, var(j)?, c);
                }
                ("c", &[i, c]) => {
                    b.linear(var(i)?, c);
                }
                ("const", &[v]) => {
                    b.offset(v);
                }
                ("eq" | "le", coeffs) if coeffs.len() == t + 1 => {
                    let terms: Vec<(usize, i64)> =
                        coeffs[..t].iter().copied().enumerate().collect();
                    let rel = if tag == "eq" {
                        Relation::Eq
                    } else {
                        Relation::Le
                    };
                    b.constraint(&terms, rel, coeffs[t]);
                }
                ("bound", &[i, lo, hi]) => {
                    b.bound(var(i)?, lo, hi);
                }
                _ => return Err(err(&format!("unrecognized line {raw:?}"))),
            }
        }
        builder
            .ok_or(Error::Parse {
                line: 0,
                message: "missing `vars` line".into(),
            })?
            .build()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IqpSolution {
    pub assignment: Vec<i64>,
    pub objective: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IqpOutcome {
    Optimal(IqpSolution),
    Infeasible,
}

impl IqpOutcome {
    pub fn solution(&self) -> Option<&IqpSolution> {
        match self {
            IqpOutcome::Optimal(s) => Some(s),
            IqpOutcome::Infeasible => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct IqpOptions {
    /// Maximum number of search nodes before giving up.
    pub node_budget: u64,
}

impl Default for IqpOptions {
    fn default() -> Self {
        IqpOptions {
            node_budget: DEFAULT_NODE_BUDGET,
        }
    }
}

pub fn solve_iqp(inst: &IqpInstance) -> Result<IqpOutcome> {
    solve_iqp_with(inst, &IqpOptions::default()).map(|(o, _)| o)
}

/// Depth-first branch-and-bound over variables in index order, values
/// ascending. Returns the outcome and the number of nodes explored. Among
/// optimal assignments the lexicographically smallest is returned.
pub fn solve_iqp_with(inst: &IqpInstance, opts: &IqpOptions) -> Result<(IqpOutcome, u64)> {
    let mut search = Search::new(inst, opts.node_budget);
    let domains: Vec<(i128, i128)> = inst
        .bounds
        .iter()
        .map(|&(lo, hi)| (lo as i128, hi as i128))
        .collect();
    search.branch(domains)?;
    let outcome = match search.best {
        Some((objective, assignment)) => IqpOutcome::Optimal(IqpSolution {
            assignment,
            objective,
        }),
        None => IqpOutcome::Infeasible,
    };
    Ok((outcome, search.nodes))
}

struct Search<'a> {
    inst: &'a IqpInstance,
    // Q_ii, so the diagonal contribution is diag[i] * x_i^2
    diag: Vec<i128>,
    // (i, j, S_ij) for i < j: contribution S_ij * x_i * x_j
    cross: Vec<(usize, usize, i128)>,
    budget: u64,
    nodes: u64,
    best: Option<(i64, Vec<i64>)>,
}

fn floor_div(a: i128, b: i128) -> i128 {
    let q = a / b;
    if (a % b != 0) && ((a < 0) != (b < 0)) {
        q - 1
    } else {
        q
    }
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

fn mul(a: i128, b: i128) -> Result<i128> {
    a.checked_mul(b).ok_or(Error::Overflow("IQP search"))
}

fn add(a: i128, b: i128) -> Result<i128> {
    a.checked_add(b).ok_or(Error::Overflow("IQP search"))
}

fn sub(a: i128, b: i128) -> Result<i128> {
    a.checked_sub(b).ok_or(Error::Overflow("IQP search"))
}

impl<'a> Search<'a> {
    fn new(inst: &'a IqpInstance, budget: u64) -> Self {
        let t = inst.num_vars;
        let diag = (0..t).map(|i| (inst.quad[i * t + i] / 2) as i128).collect();
        let mut cross = Vec::new();
        for i in 0..t {
            for j in i + 1..t {
                let s = inst.quad[i * t + j];
                if s != 0 {
                    cross.push((i, j, s as i128));
                }
            }
        }
        Search {
            inst,
            diag,
            cross,
            budget,
            nodes: 0,
            best: None,
        }
    }

    /// Tightens domains against every linear constraint until nothing
    /// changes. Returns `false` when some domain becomes empty.
    fn propagate(&self, dom: &mut [(i128, i128)]) -> Result<bool> {
        loop {
            let mut changed = false;
            for c in &self.inst.constraints {
                let (mut min_act, mut max_act) = (0i128, 0i128);
                for &(i, a) in &c.terms {
                    let (lo, hi) = dom[i];
                    let (x, y) = (mul(a as i128, lo)?, mul(a as i128, hi)?);
                    min_act = add(min_act, x.min(y))?;
                    max_act = add(max_act, x.max(y))?;
                }
                let b = c.rhs as i128;
                if min_act > b || (c.relation == Relation::Eq && max_act < b) {
                    return Ok(false);
                }
                for &(i, a) in &c.terms {
                    let a = a as i128;
                    let (lo, hi) = dom[i];
                    let (x, y) = (a * lo, a * hi);
                    let (mut new_lo, mut new_hi) = (lo, hi);
                    // a * x_i <= b - (min activity of the others)
                    let upper = sub(b, sub(min_act, x.min(y))?)?;
                    if a > 0 {
                        new_hi = new_hi.min(floor_div(upper, a));
                    } else {
                        new_lo = new_lo.max(ceil_div(upper, a));
                    }
                    if c.relation == Relation::Eq {
                        // a * x_i >= b - (max activity of the others)
                        let lower = sub(b, sub(max_act, x.max(y))?)?;
                        if a > 0 {
                            new_lo = new_lo.max(ceil_div(lower, a));
                        } else {
                            new_hi = new_hi.min(floor_div(lower, a));
                        }
                    }
                    if new_lo > new_hi {
                        return Ok(false);
                    }
                    if (new_lo, new_hi) != (lo, hi) {
                        dom[i] = (new_lo, new_hi);
                        changed = true;
                        // activities are stale now; revisit on the next pass
                        break;
                    }
                }
            }
            if !changed {
                return Ok(true);
            }
        }
    }

    /// Lower bound on the objective over the box: each variable's own terms
    /// minimized independently, each cross term minimized over the corners.
    fn lower_bound(&self, dom: &[(i128, i128)]) -> Result<i128> {
        let mut lb = self.inst.offset as i128;
        for (i, &(lo, hi)) in dom.iter().enumerate() {
            let a = self.diag[i];
            let b = self.inst.linear[i] as i128;
            let f = |x: i128| add(mul(mul(a, x)?, x)?, mul(b, x)?);
            let mut best = f(lo)?.min(f(hi)?);
            if a > 0 {
                let v = floor_div(-b, 2 * a);
                for x in [v, v + 1] {
                    if lo <= x && x <= hi {
                        best = best.min(f(x)?);
                    }
                }
            }
            lb = add(lb, best)?;
        }
        for &(i, j, s) in &self.cross {
            let (ilo, ihi) = dom[i];
            let (jlo, jhi) = dom[j];
            let mut best = i128::MAX;
            for (x, y) in [(ilo, jlo), (ilo, jhi), (ihi, jlo), (ihi, jhi)] {
                best = best.min(mul(s, mul(x, y)?)?);
            }
            lb = add(lb, best)?;
        }
        Ok(lb)
    }

    fn branch(&mut self, mut dom: Vec<(i128, i128)>) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget {
                unit: "search nodes",
                required: self.nodes as u128,
                budget: self.budget as u128,
            });
        }
        if !self.propagate(&mut dom)? {
            return Ok(());
        }
        if let Some((incumbent, _)) = &self.best {
            if self.lower_bound(&dom)? >= *incumbent as i128 {
                return Ok(());
            }
        }
        let Some(var) = dom.iter().position(|&(lo, hi)| lo < hi) else {
            return self.leaf(&dom);
        };
        let (lo, hi) = dom[var];
        for value in lo..=hi {
            let mut child = dom.clone();
            child[var] = (value, value);
            self.branch(child)?;
        }
        Ok(())
    }

    fn leaf(&mut self, dom: &[(i128, i128)]) -> Result<()> {
        let x: Vec<i64> = dom
            .iter()
            .map(|&(v, _)| i64::try_from(v).map_err(|_| Error::Overflow("IQP assignment")))
            .collect::<Result<_>>()?;
        if !self.inst.is_feasible(&x)? {
            return Ok(());
        }
        let value = self.inst.objective(&x)?;
        if self.best.as_ref().is_none_or(|(b, _)| value < *b) {
            self.best = Some((value, x));
        }
        Ok(())
    }
}
