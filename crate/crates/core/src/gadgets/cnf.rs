//! CNF formulas: DIMACS parsing, brute-force satisfiability and the padding
//! transforms applied before building reduction gadgets.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest variable count accepted by [`sat_oracle`].
pub const SAT_ORACLE_CAP: usize = 24;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfFormula {
    pub variable_count: usize,
    /// Nonzero literals; `-v` is the negation of variable `v` (1-based).
    pub clauses: Vec<Vec<i32>>,
    /// Common clause length, if all clauses share one.
    pub clause_width: Option<usize>,
}

impl CnfFormula {
    pub fn new(variable_count: usize, clauses: Vec<Vec<i32>>) -> Result<Self> {
        for (j, clause) in clauses.iter().enumerate() {
            if clause.is_empty() {
                return Err(Error::Precondition(format!("clause {} is empty", j + 1)));
            }
            if let Some(&lit) = clause.iter().find(|&&l| l == 0 || l.unsigned_abs() as usize > variable_count) {
                return Err(Error::Precondition(format!(
                    "clause {} has literal {lit} outside 1..={variable_count}",
                    j + 1
                )));
            }
        }
        let clause_width = common_width(&clauses);
        Ok(Self { variable_count, clauses, clause_width })
    }

    /// Number of literals of clause `j` (0-based) made true by `assignment`.
    pub fn true_literals(&self, j: usize, assignment: &[bool]) -> usize {
        self.clauses[j].iter().filter(|&&l| literal_value(l, assignment)).count()
    }

    /// Ok when every clause has at least `mode.required()` true literals;
    /// otherwise the first failing clause (1-based).
    pub fn check(&self, mode: SatMode, assignment: &[bool]) -> Result<()> {
        if assignment.len() != self.variable_count {
            return Err(Error::Precondition(format!(
                "assignment has {} values for {} variables",
                assignment.len(),
                self.variable_count
            )));
        }
        for j in 0..self.clauses.len() {
            let satisfied = self.true_literals(j, assignment);
            if satisfied < mode.required() {
                return Err(Error::UnsatisfiedClause { clause: j + 1, satisfied, required: mode.required() });
            }
        }
        Ok(())
    }

    pub(crate) fn require_width_three(&self) -> Result<()> {
        match self.clauses.iter().position(|c| c.len() != 3) {
            None => Ok(()),
            Some(j) => {
                Err(Error::Precondition(format!("clause {} has {} literals, expected 3", j + 1, self.clauses[j].len())))
            }
        }
    }
}

fn common_width(clauses: &[Vec<i32>]) -> Option<usize> {
    let w = clauses.first()?.len();
    clauses.iter().all(|c| c.len() == w).then_some(w)
}

pub fn literal_value(lit: i32, assignment: &[bool]) -> bool {
    assignment[lit.unsigned_abs() as usize - 1] == (lit > 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SatMode {
    /// At least one true literal per clause.
    Exists,
    /// At least `k` true literals per clause.
    AtLeast(usize),
}

impl SatMode {
    pub fn required(self) -> usize {
        match self {
            SatMode::Exists => 1,
            SatMode::AtLeast(k) => k,
        }
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, message: message.into() }
}

/// Parses DIMACS CNF. Comment lines start with `c`; a line starting with
/// `%` ends the input.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula> {
    let mut header: Option<(usize, usize)> = None;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    let mut current: Vec<i32> = Vec::new();
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if header.is_some() {
                return Err(parse_err(line, "repeated header"));
            }
            let toks: Vec<&str> = trimmed.split_whitespace().collect();
            let (Some(&"p"), Some(&"cnf"), Some(v), Some(c), None) =
                (toks.first(), toks.get(1), toks.get(2), toks.get(3), toks.get(4))
            else {
                return Err(parse_err(line, "expected `p cnf <variables> <clauses>`"));
            };
            let v = v.parse().map_err(|_| parse_err(line, format!("invalid variable count `{v}`")))?;
            let c = c.parse().map_err(|_| parse_err(line, format!("invalid clause count `{c}`")))?;
            header = Some((v, c));
            continue;
        }
        let Some((vars, _)) = header else {
            return Err(parse_err(line, "clause before `p cnf` header"));
        };
        for tok in trimmed.split_whitespace() {
            let lit: i32 = tok.parse().map_err(|_| parse_err(line, format!("invalid literal `{tok}`")))?;
            if lit == 0 {
                if current.is_empty() {
                    return Err(parse_err(line, "empty clause"));
                }
                clauses.push(std::mem::take(&mut current));
            } else if lit.unsigned_abs() as usize > vars {
                return Err(parse_err(line, format!("literal {lit} exceeds variable count {vars}")));
            } else {
                current.push(lit);
            }
        }
    }
    let (vars, count) = header.ok_or_else(|| parse_err(last_line, "missing `p cnf` header"))?;
    if !current.is_empty() {
        return Err(parse_err(last_line, "last clause is not terminated by 0"));
    }
    if clauses.len() != count {
        return Err(parse_err(last_line, format!("header declares {count} clauses, found {}", clauses.len())));
    }
    CnfFormula::new(vars, clauses)
}

pub fn write_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.variable_count, f.clauses.len());
    for clause in &f.clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// First satisfying assignment in counting order (variable 1 is the low
/// bit), or `None`. Exponential; capped at [`SAT_ORACLE_CAP`] variables.
pub fn sat_oracle(f: &CnfFormula, mode: SatMode) -> Result<Option<Vec<bool>>> {
    let n = f.variable_count;
    if n > SAT_ORACLE_CAP {
        return Err(Error::BudgetExceeded { what: "variable count for the SAT oracle", size: n, cap: SAT_ORACLE_CAP });
    }
    let need = mode.required();
    let mut assignment = vec![false; n];
    for mask in 0u32..1 << n {
        for (i, a) in assignment.iter_mut().enumerate() {
            *a = mask >> i & 1 == 1;
        }
        if (0..f.clauses.len()).all(|j| f.true_literals(j, &assignment) >= need) {
            return Ok(Some(assignment));
        }
    }
    Ok(None)
}

/// Appends the positive literals of `k − 1` fresh variables to every clause.
/// A 3-CNF formula is satisfiable iff the result has an assignment with at
/// least `k` true literals per clause.
pub fn widen_to_k_of_k2(f: &CnfFormula, k: usize) -> Result<CnfFormula> {
    if k < 3 {
        return Err(Error::Precondition(format!("k = {k}, expected k ≥ 3")));
    }
    f.require_width_three()?;
    let n = f.variable_count;
    let dummies: Vec<i32> = (n + 1..n + k).map(|v| v as i32).collect();
    let clauses = f.clauses.iter().map(|c| c.iter().chain(&dummies).copied().collect()).collect();
    Ok(CnfFormula { variable_count: n + k - 1, clauses, clause_width: Some(k + 2) })
}

/// Makes the variable count even by adding the clause `(a ∨ b ∨ c)` over
/// three fresh variables when it is odd.
pub fn pad_even_variables(f: &CnfFormula) -> CnfFormula {
    if f.variable_count.is_multiple_of(2) {
        return f.clone();
    }
    let n = f.variable_count as i32;
    let mut clauses = f.clauses.clone();
    clauses.push(vec![n + 1, n + 2, n + 3]);
    let clause_width = common_width(&clauses);
    CnfFormula { variable_count: f.variable_count + 3, clauses, clause_width }
}
