//! Qualitative shadiness decisions: the sufficient covering test for
//! shadiness, and the constructive norm-one projection for centrally
//! symmetric 3-polytopes with at most 10 vertices.

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;

use crate::exact::linalg::{cross3, dot, is_zero_vec, neg, RMatrix, RVec};
use crate::exact::rational::{lex_cmp, lex_positive, Rat};
use crate::polytope::Polytope;
use crate::projection::{operator_norm, ProjectionMatrix, ShadinessWitness};

#[derive(Debug, thiserror::Error)]
pub enum ShadyError {
    #[error("no symmetric 4-cycle found (more than 10 vertices?)")]
    NoCycleFound,
    #[error("kernel construction degenerated")]
    DegenerateKernel,
}

/// `true` iff every 3-subset of the half normal set is linearly independent.
pub fn general_position(hhalf: &[RVec]) -> bool {
    let m = hhalf.len();
    for i in 0..m {
        for j in i + 1..m {
            for k in j + 1..m {
                let d = RMatrix::from_rows(vec![
                    hhalf[i].clone(),
                    hhalf[j].clone(),
                    hhalf[k].clone(),
                ])
                .det();
                if d.is_zero() {
                    return false;
                }
            }
        }
    }
    true
}

/// `true` iff every plane through the origin meets the relative interiors of
/// at least two pairs of opposite facets. Checked via the contrapositive:
/// a plane `n^perp` misses rel-int(F) and rel-int(-F) exactly when `n` has a
/// constant sign on the vertex set of F, so the test enumerates all ways of
/// assigning signs to all but one facet pair and verifies each resulting
/// cone `{n : sgn_F (n.v) >= 0 for v in V_F}` is trivial.
///
/// The threshold really is two: the stronger "at least three pairs" variant
/// fails even for the 12-vertex example (the plane with normal
/// (61/100, 53/50, 13/50) crosses only two of its facet pairs).
pub fn covers_all_planes(c: &Polytope) -> bool {
    covering_refutation(c).is_none()
}

/// A nonzero `n` whose plane misses the relative interiors of all but at
/// most one facet pair, or None when no such plane exists.
pub fn covering_refutation(c: &Polytope) -> Option<RVec> {
    let pairs: Vec<Vec<RVec>> = c
        .normals()
        .iter()
        .enumerate()
        .filter(|(_, h)| lex_positive(h))
        .map(|(fi, _)| {
            c.facet(fi)
                .iter()
                .map(|&vi| c.vertices()[vi].clone())
                .collect()
        })
        .collect();
    let m = pairs.len();
    if m <= 1 {
        // at most one pair exists, so any plane refutes
        return Some(vec![Rat::one(), Rat::zero(), Rat::zero()]);
    }

    // Subsets of size m-1 = complements of single pairs; fix the first
    // chosen facet's sign to + since the cone of -sigma is -cone(sigma).
    (0..m)
        .into_par_iter()
        .find_map_any(|a| {
            let chosen: Vec<usize> = (0..m).filter(|&i| i != a).collect();
            let nsigns = chosen.len() - 1;
            for mask in 0u64..(1u64 << nsigns) {
                let mut rows: Vec<RVec> = Vec::new();
                for (ci, &f) in chosen.iter().enumerate() {
                    let flip = ci > 0 && (mask >> (ci - 1)) & 1 == 1;
                    for v in &pairs[f] {
                        rows.push(if flip { neg(v) } else { v.clone() });
                    }
                }
                if let Some(n) = nontrivial_cone_point(&rows) {
                    return Some(n);
                }
            }
            None
        })
}

/// A nonzero point of the cone `{n in R^3 : r.n >= 0 for all rows r}`,
/// or None when the cone is trivial. Exact geometric decision: a rank-
/// deficient row set leaves a whole line inside; otherwise the cone is
/// pointed and any nonzero point yields an extreme ray, which must lie
/// along a cross product of two rows.
fn nontrivial_cone_point(rows: &[RVec]) -> Option<RVec> {
    let mat = RMatrix::from_rows(rows.to_vec());
    if mat.rank() < 3 {
        // a nullspace direction satisfies every constraint with equality
        return nullspace_vector(&mat);
    }
    for i in 0..rows.len() {
        for j in i + 1..rows.len() {
            let r = cross3(&rows[i], &rows[j]);
            if is_zero_vec(&r) {
                continue;
            }
            if rows.iter().all(|a| !dot(a, &r).is_negative()) {
                return Some(r);
            }
            let rn = neg(&r);
            if rows.iter().all(|a| !dot(a, &rn).is_negative()) {
                return Some(rn);
            }
        }
    }
    None
}

/// Some nonzero vector in the nullspace of a rank-deficient 3-column matrix.
fn nullspace_vector(m: &RMatrix) -> Option<RVec> {
    if m.rows() == 0 {
        return Some(vec![Rat::one(), Rat::zero(), Rat::zero()]);
    }
    if m.rank() >= 3 {
        return None;
    }
    // two rows span the row space; their cross product (or any vector
    // orthogonal to a single spanning row) generates the nullspace
    for i in 0..m.rows() {
        if is_zero_vec(m.row(i)) {
            continue;
        }
        for j in i + 1..m.rows() {
            let r = cross3(m.row(i), m.row(j));
            if !is_zero_vec(&r) && (0..m.rows()).all(|k| dot(m.row(k), &r).is_zero()) {
                return Some(r);
            }
        }
    }
    // rank <= 1: pick any vector orthogonal to the first nonzero row
    let row = (0..m.rows()).map(|i| m.row(i)).find(|r| !is_zero_vec(r))?;
    let candidates = [
        cross3(row, &[Rat::one(), Rat::zero(), Rat::zero()]),
        cross3(row, &[Rat::zero(), Rat::one(), Rat::zero()]),
    ];
    candidates.into_iter().find(|c| !is_zero_vec(c))
}

/// Number of facet pairs whose relative interiors meet the plane `n^perp`.
pub fn crossed_pair_count(c: &Polytope, n: &[Rat]) -> usize {
    c.normals()
        .iter()
        .enumerate()
        .filter(|(_, h)| lex_positive(h))
        .filter(|(fi, _)| {
            let vals: Vec<Rat> = c.facet(*fi).iter().map(|&vi| dot(n, &c.vertices()[vi])).collect();
            vals.iter().any(|x| x.is_positive()) && vals.iter().any(|x| x.is_negative())
        })
        .count()
}

/// The sufficient shadiness test: normals in general position and every
/// plane covered. `true` implies the polytope is shady in dimension 2.
pub fn simple_shady_test(c: &Polytope) -> bool {
    general_position(&c.half_normals()) && covers_all_planes(c)
}

/// A centrally symmetric triangulation of the polytope boundary; no new
/// vertices are introduced, so `verts` is the polytope's vertex list.
#[derive(Clone, Debug)]
pub struct SymmetricTriangulation {
    pub verts: Vec<RVec>,
    pub edges: Vec<(usize, usize)>,
    pub triangles: Vec<(usize, usize, usize)>,
    pub polytope: Polytope,
}

#[derive(Clone, Debug)]
pub struct FourCycle {
    pub v: RVec,
    pub w: RVec,
}

/// Fan-triangulates every facet from its lexicographically smallest vertex;
/// antipodal facets receive the mirrored fan, so edge and triangle sets are
/// centrally symmetric.
pub fn triangulate_symmetric(c: &Polytope) -> SymmetricTriangulation {
    let verts = c.vertices().to_vec();
    let antipode: Vec<usize> = verts
        .iter()
        .map(|v| {
            let nv = neg(v);
            verts.iter().position(|u| *u == nv).expect("V = -V")
        })
        .collect();

    let mut triangles: Vec<(usize, usize, usize)> = Vec::new();
    for (fi, h) in c.normals().iter().enumerate() {
        if !lex_positive(h) {
            continue;
        }
        let cycle = c.facet(fi);
        let apex_pos = (0..cycle.len())
            .min_by(|&a, &b| lex_cmp(&verts[cycle[a]], &verts[cycle[b]]))
            .unwrap();
        let k = cycle.len();
        for t in 1..k - 1 {
            let tri = (
                cycle[apex_pos],
                cycle[(apex_pos + t) % k],
                cycle[(apex_pos + t + 1) % k],
            );
            triangles.push(tri);
            triangles.push((antipode[tri.0], antipode[tri.1], antipode[tri.2]));
        }
    }

    let mut edges: Vec<(usize, usize)> = Vec::new();
    for &(a, b, c3) in &triangles {
        for (x, y) in [(a, b), (b, c3), (a, c3)] {
            edges.push((x.min(y), x.max(y)));
        }
    }
    edges.sort();
    edges.dedup();

    SymmetricTriangulation {
        verts,
        edges,
        triangles,
        polytope: c.clone(),
    }
}

/// Finds `(v, w)` with `v, w, -v, -w` a cycle of the triangulation graph.
/// Vertices are scanned by descending degree (lexicographic tie-break), so
/// the output is deterministic; existence is guaranteed for at most 10
/// vertices by a pigeonhole count on the degrees.
pub fn find_symmetric_4cycle(t: &SymmetricTriangulation) -> Result<FourCycle, ShadyError> {
    let n = t.verts.len();
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in &t.edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let antipode: Vec<usize> = t
        .verts
        .iter()
        .map(|v| {
            let nv = neg(v);
            t.verts.iter().position(|u| *u == nv).expect("V = -V")
        })
        .collect();

    let mut order: Vec<usize> = (0..n).collect();
    let degree = |i: usize| adj[i].iter().filter(|&&b| b).count();
    order.sort_by(|&a, &b| {
        degree(b)
            .cmp(&degree(a))
            .then_with(|| lex_cmp(&t.verts[a], &t.verts[b]))
    });
    for &vi in &order {
        let mut nbrs: Vec<usize> = (0..n).filter(|&j| adj[vi][j]).collect();
        nbrs.sort_by(|&a, &b| lex_cmp(&t.verts[a], &t.verts[b]));
        for &wi in &nbrs {
            if wi == antipode[vi] || wi == vi {
                continue;
            }
            if adj[vi][antipode[wi]] {
                return Ok(FourCycle {
                    v: t.verts[vi].clone(),
                    w: t.verts[wi].clone(),
                });
            }
        }
    }
    Err(ShadyError::NoCycleFound)
}

/// The §-style norm-one construction: projects onto the plane of a symmetric
/// 4-cycle `v, w, -v, -w` along the line where two supporting planes meet.
/// The returned witness has operator norm exactly 1, proving the polytope
/// admits a norm-one rank-2 projection (hence is not 2-shady).
pub fn norm_one_projection(c: &Polytope, polytope_id: &str) -> Result<ShadinessWitness, ShadyError> {
    let t = triangulate_symmetric(c);
    let cycle = find_symmetric_4cycle(&t)?;
    let p = projection_for_cycle(c, &cycle)?;
    let (bound, (h, v)) = operator_norm(c, p.matrix());
    Ok(ShadinessWitness {
        projection: p,
        bound,
        polytope_id: polytope_id.to_string(),
        attaining_h: h,
        attaining_v: v,
    })
}

/// Builds the rank-2 projection with image `span{v, w}` determined by a
/// symmetric 4-cycle, along the intersection line of supporting planes
/// through edges `(v, w)` and `(v, -w)`.
pub fn projection_for_cycle(c: &Polytope, cycle: &FourCycle) -> Result<ProjectionMatrix, ShadyError> {
    let (v, w) = (&cycle.v, &cycle.w);
    let f = supporting_normal(c, v, w).ok_or(ShadyError::DegenerateKernel)?;
    let g = supporting_normal(c, v, &neg(w)).ok_or(ShadyError::DegenerateKernel)?;
    let mut kernel = cross3(&f, &g);
    if is_zero_vec(&kernel) {
        // both edges lie in one facet plane: project along that normal
        kernel = f;
    }
    let b = RMatrix::from_rows(vec![v.clone(), w.clone(), kernel]).transpose();
    let binv = b.inverse().map_err(|_| ShadyError::DegenerateKernel)?;
    let diag = RMatrix::from_fn(3, 3, |i, j| {
        if i == j && i < 2 {
            Rat::one()
        } else {
            Rat::zero()
        }
    });
    let p = b.matmul(&diag).matmul(&binv);
    ProjectionMatrix::new(p, 2).map_err(|_| ShadyError::DegenerateKernel)
}

/// Lexicographically smallest facet normal whose facet contains both points.
fn supporting_normal(c: &Polytope, a: &[Rat], b: &[Rat]) -> Option<RVec> {
    c.normals()
        .iter()
        .find(|h| dot(h, a) == Rat::one() && dot(h, b) == Rat::one())
        .cloned()
}
