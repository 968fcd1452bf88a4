use std::collections::{BTreeMap, BTreeSet};

use super::cnf::{pad_even_variables, widen_to_k_of_k2, CnfFormula};
use super::{GadgetArtifact, Layout, Region};
use crate::error::{Error, Result};
use crate::graph::{ordered, CapacitatedGraph, Edge, Vertex};

#[derive(Default)]
struct Builder {
    region: Vec<Region>,
    edges: Vec<Edge>,
}

impl Builder {
    fn add(&mut self, r: Region, count: usize) -> Vec<Vertex> {
        let start = self.region.len();
        self.region.extend(std::iter::repeat_n(r, count));
        (start..start + count).collect()
    }

    fn one(&mut self, r: Region) -> Vertex {
        self.add(r, 1)[0]
    }

    fn join(&mut self, a: &[Vertex], b: &[Vertex]) {
        for &u in a {
            for &v in b {
                self.edges.push(ordered(u, v));
            }
        }
    }
}

fn reject_repeated_literals(f: &CnfFormula) -> Result<()> {
    for (j, clause) in f.clauses.iter().enumerate() {
        let mut seen = BTreeSet::new();
        if let Some(&lit) = clause.iter().find(|&&l| !seen.insert(l)) {
            return Err(Error::Precondition(format!("clause {} repeats literal {lit}", j + 1)));
        }
    }
    Ok(())
}

fn literal(vars: &[(Vertex, Vertex)], lit: i32) -> Vertex {
    let (w, wbar) = vars[lit.unsigned_abs() as usize - 1];
    if lit > 0 {
        w
    } else {
        wbar
    }
}

/// Capacity-2 gadget for a 3-CNF formula.
///
/// The base graph pairs variables `2p` and `2p + 1`: it joins `W` of the
/// pair completely, attaches each `r_i` to `W_i`, and links `r_{2p+1}` to
/// the next pair's `r`. Every base edge is subdivided once (region U). Each
/// `Z_i` (5 vertices) is joined to `W_i` and `q_1`, `Q` is joined to `X*`
/// (5 vertices), and each clause vertex sees its literals and `q_1`.
pub fn gadget_k2(f: &CnfFormula) -> Result<GadgetArtifact> {
    f.require_width_three()?;
    reject_repeated_literals(f)?;
    let padded = pad_even_variables(f);
    let n = padded.variable_count;
    let mut b = Builder::default();

    let mut vars = Vec::with_capacity(n);
    let mut r = Vec::with_capacity(n);
    let mut z = Vec::with_capacity(n);
    for _ in 0..n {
        let w = b.add(Region::W, 2);
        vars.push((w[0], w[1]));
        r.push(b.one(Region::R));
        z.push(b.add(Region::Z, 5));
    }

    let mut base: Vec<Edge> = Vec::with_capacity(9 * n / 2);
    for p in 0..n / 2 {
        let (a, c) = (2 * p, 2 * p + 1);
        let (wa, wc) = ([vars[a].0, vars[a].1], [vars[c].0, vars[c].1]);
        base.extend(wa.iter().map(|&w| (r[a], w)));
        base.extend(wa.iter().flat_map(|&x| wc.iter().map(move |&y| (x, y))));
        base.extend(wc.iter().map(|&w| (w, r[c])));
        base.push((r[c], r[(c + 1) % n]));
    }
    let mut u = BTreeMap::new();
    for (s, t) in base {
        let mid = b.one(Region::U);
        b.edges.push(ordered(s, mid));
        b.edges.push(ordered(mid, t));
        u.insert(ordered(s, t), mid);
    }

    let q = b.add(Region::Q, 2);
    let x_star = b.add(Region::XStar, 5);
    b.join(&q, &x_star);
    for (i, zi) in z.iter().enumerate() {
        b.join(zi, &[vars[i].0, vars[i].1]);
        b.join(zi, &[q[0]]);
    }

    let mut clause_vertices = Vec::with_capacity(padded.clauses.len());
    for clause in &padded.clauses {
        let c = b.one(Region::C);
        let lits: Vec<Vertex> = clause.iter().map(|&l| literal(&vars, l)).collect();
        b.join(&[c], &lits);
        b.join(&[c], &[q[0]]);
        clause_vertices.push(c);
    }

    let graph = CapacitatedGraph::new(vec![2; b.region.len()], b.edges)?;
    Ok(GadgetArtifact {
        graph,
        k: 2,
        var_vertices: vars,
        clause_vertices,
        region: b.region,
        padded_formula: padded,
        layout: Layout::Two { r, z, u, q: [q[0], q[1]], x_star },
    })
}

/// Capacity-`k` gadget (`k ≥ 3`) for a 3-CNF formula, encoded through its
/// `k`-out-of-`(k + 2)` widening.
///
/// Variable `i` owns `W_i` (2), `X_i` and `X_i'` (`k(k−1)/2` each), `Y_i`
/// (`k − 2`) and `Z_i` (`2k + 1`), joined in the cycle
/// `Y* – Z_i – W_i – X_i – Y_i – X_i' – W_{i+1}`. Shared regions are `y'`,
/// `X*` (`k² + 1`) and `Y*` (`k − 1`), with `y' – X* – Y*` complete.
pub fn gadget_k(f: &CnfFormula, k: u32) -> Result<GadgetArtifact> {
    if k < 3 {
        return Err(Error::Precondition(format!("k = {k}; the capacity-2 gadget covers k = 2")));
    }
    let ku = k as usize;
    let padded = widen_to_k_of_k2(f, ku)?;
    reject_repeated_literals(&padded)?;
    let n = padded.variable_count;
    let half = ku * (ku - 1) / 2;
    let mut b = Builder::default();

    let (mut vars, mut x, mut y, mut x_prime, mut z) = (Vec::new(), Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for _ in 0..n {
        let w = b.add(Region::W, 2);
        vars.push((w[0], w[1]));
        x.push(b.add(Region::X, half));
        y.push(b.add(Region::Y, ku - 2));
        x_prime.push(b.add(Region::XPrime, half));
        z.push(b.add(Region::Z, 2 * ku + 1));
    }
    let y_prime = b.one(Region::YPrime);
    let x_star = b.add(Region::XStar, ku * ku + 1);
    let y_star = b.add(Region::YStar, ku - 1);

    for i in 0..n {
        let w = [vars[i].0, vars[i].1];
        let next = [vars[(i + 1) % n].0, vars[(i + 1) % n].1];
        b.join(&y_star, &z[i]);
        b.join(&z[i], &w);
        b.join(&w, &x[i]);
        b.join(&x[i], &y[i]);
        b.join(&y[i], &x_prime[i]);
        b.join(&x_prime[i], &next);
    }
    b.join(&[y_prime], &x_star);
    b.join(&x_star, &y_star);

    let mut clause_vertices = Vec::with_capacity(padded.clauses.len());
    for clause in &padded.clauses {
        let c = b.one(Region::C);
        let lits: Vec<Vertex> = clause.iter().map(|&l| literal(&vars, l)).collect();
        b.join(&[c], &lits);
        clause_vertices.push(c);
    }

    let graph = CapacitatedGraph::new(vec![k; b.region.len()], b.edges)?;
    Ok(GadgetArtifact {
        graph,
        k,
        var_vertices: vars,
        clause_vertices,
        region: b.region,
        padded_formula: padded,
        layout: Layout::Many { x, y, x_prime, z, y_prime, x_star, y_star },
    })
}
