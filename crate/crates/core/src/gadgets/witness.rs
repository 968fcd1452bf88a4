use super::{GadgetArtifact, Layout};
use crate::construct::Assembly;
use crate::error::Result;
use crate::graph::{ordered, NashSubgraph, Vertex};

/// DP-Nash subgraph of the artifact whose D-set differs from `X ∪ Z`, built
/// from an assignment satisfying the padded formula.
///
/// The true literal vertex of each variable goes to P and the false one to
/// D. Errors with the first clause that has too few true literals.
pub fn claim_b_witness(a: &GadgetArtifact, assignment: &[bool]) -> Result<NashSubgraph> {
    a.padded_formula.check(a.mode(), assignment)?;
    let g = &a.graph;
    let sides: Vec<(Vertex, Vertex)> = a
        .var_vertices
        .iter()
        .zip(assignment)
        .map(|(&(w, wbar), &value)| if value { (w, wbar) } else { (wbar, w) })
        .collect();
    let mut out = Assembly::new(g.vertex_count());
    let mut in_p = vec![false; g.vertex_count()];

    // each clause vertex takes its first `required` true literals
    let required = a.mode().required();
    let mut clause_edges = Vec::new();
    for (j, clause) in a.padded_formula.clauses.iter().enumerate() {
        let c = a.clause_vertices[j];
        let lits = clause.iter().filter(|&&l| assignment[l.unsigned_abs() as usize - 1] == (l > 0));
        clause_edges.extend(lits.take(required).map(|&l| (c, a.literal_vertex(l))));
    }

    match &a.layout {
        Layout::Two { r, z, u, q, x_star } => {
            let n = sides.len();
            let sub = |s: Vertex, t: Vertex| u[&ordered(s, t)];
            for &(t, _) in &sides {
                in_p[t] = true;
            }
            for &v in q {
                in_p[v] = true;
            }
            for &v in u.values() {
                in_p[v] = true;
            }
            for p in 0..n / 2 {
                let (ia, ib) = (2 * p, 2 * p + 1);
                let ((ta, fa), (tb, fb)) = (sides[ia], sides[ib]);
                let (ra, rb, rnext) = (r[ia], r[ib], r[(ib + 1) % n]);
                let promoted = sub(ta, tb);
                in_p[promoted] = false;
                out.add_edge(promoted, ta);
                out.add_edge(promoted, tb);
                for (owner, (s, t)) in [
                    (ra, (ra, ta)),
                    (ra, (ra, fa)),
                    (fa, (fa, tb)),
                    (fa, (fa, fb)),
                    (fb, (ta, fb)),
                    (fb, (fb, rb)),
                    (rb, (tb, rb)),
                    (rb, (rb, rnext)),
                ] {
                    out.add_edge(owner, sub(s, t));
                }
            }
            out.add_edges_between(x_star, q);
            for (i, zi) in z.iter().enumerate() {
                for &v in zi {
                    out.add_edge(v, q[0]);
                    out.add_edge(v, sides[i].0);
                }
            }
            for &c in &a.clause_vertices {
                out.add_edge(c, q[0]);
            }
        }
        Layout::Many { x, y, x_prime, z, y_prime, x_star, y_star } => {
            let k = a.k as usize;
            for &(t, _) in &sides {
                in_p[t] = true;
            }
            for v in x.iter().chain(x_prime).flatten().chain(std::iter::once(y_prime)).chain(y_star) {
                in_p[*v] = true;
            }
            out.add_edges_between(x_star, &[*y_prime]);
            out.add_edges_between(x_star, y_star);
            for (i, &(t, f)) in sides.iter().enumerate() {
                for &v in &z[i] {
                    out.add_edge(v, t);
                }
                out.add_edges_between(&z[i], y_star);
                out.add_edges_between(&[f], &x[i][..k]);
                // the rest of X_i and all of X_i' are shared out round-robin
                let pool = x[i][k..].iter().chain(&x_prime[i]);
                for (j, &v) in pool.enumerate() {
                    out.add_edge(y[i][j % y[i].len()], v);
                }
            }
        }
    }
    for (c, v) in clause_edges {
        out.add_edge(c, v);
    }
    for v in g.vertices() {
        if in_p[v] {
            out.p_set.insert(v);
        } else {
            out.d_set.insert(v);
        }
    }
    Ok(out.finish())
}
