//! Centrally symmetric convex 3-polytopes: exact vertex/facet representations,
//! polytopal norms, enclosing-ball constants and similarity transforms.

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::exact::linalg::{cross3, dot, is_zero_vec, neg, norm_sq, sub, RMatrix, RVec};
use crate::exact::rational::{lex_positive, rat, sqrt_upper, Rat};
use crate::exact::ExactError;

#[derive(Debug, thiserror::Error)]
pub enum PolytopeError {
    #[error("input is degenerate: {0}")]
    DegenerateInput(String),
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error("parse error at line {line}: {msg}")]
    ParseError { line: usize, msg: String },
}

/// A centrally symmetric convex polytope in R^3, stored as the vertex set
/// together with the derived H-representation. Normals are scaled so that
/// `h . x = 1` on the corresponding facet. Immutable after construction.
#[derive(Clone, Debug)]
pub struct Polytope {
    dim: usize,
    vertices: Vec<RVec>,
    half_vertices: Vec<RVec>,
    normals: Vec<RVec>,
    /// Vertex indices per facet, aligned with `normals`, in cyclic order
    /// (counterclockwise as seen from outside).
    facets: Vec<Vec<usize>>,
}

/// Squared enclosing-ball constants of a polytope; `c_upper` is a rational
/// outward rounding of the (generally irrational) distortion constant.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EnclosingConstants {
    pub r_sq: Rat,
    pub big_r_sq: Rat,
    pub c_sq: Rat,
    pub c_upper: Rat,
}

impl Polytope {
    /// Exact convex hull of a centrally symmetric, full-dimensional point set
    /// in R^3: every vertex triple spanning a supporting plane contributes a
    /// facet, coplanar sets merge into one facet.
    pub fn from_vertices(points: Vec<RVec>) -> Result<Polytope, PolytopeError> {
        if points.iter().any(|p| p.len() != 3) {
            return Err(PolytopeError::DegenerateInput(
                "vertices must be 3-dimensional".into(),
            ));
        }
        let mut point_set: BTreeSet<RVec> = BTreeSet::new();
        for p in points {
            point_set.insert(p);
        }
        let pts: Vec<RVec> = point_set.iter().cloned().collect();
        for p in &pts {
            if !point_set.contains(&neg(p)) {
                return Err(PolytopeError::DegenerateInput(
                    "vertex set is not centrally symmetric".into(),
                ));
            }
            if is_zero_vec(p) {
                return Err(PolytopeError::DegenerateInput(
                    "origin listed as a vertex".into(),
                ));
            }
        }
        if RMatrix::from_rows(pts.clone()).rank() < 3 {
            return Err(PolytopeError::DegenerateInput(
                "vertex set does not span R^3".into(),
            ));
        }

        // Supporting planes from vertex triples.
        let mut normals: BTreeSet<RVec> = BTreeSet::new();
        let n = pts.len();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let nrm = cross3(&sub(&pts[j], &pts[i]), &sub(&pts[k], &pts[i]));
                    if is_zero_vec(&nrm) {
                        continue;
                    }
                    let offset = dot(&nrm, &pts[i]);
                    if offset.is_zero() {
                        // A supporting plane through the origin would put the
                        // origin on the boundary; for a symmetric spanning set
                        // such a plane never supports, so just skip it.
                        continue;
                    }
                    let h: RVec = nrm.iter().map(|x| x / &offset).collect();
                    if pts.iter().all(|p| dot(&h, p) <= Rat::one()) {
                        normals.insert(h);
                    }
                }
            }
        }
        let normals: Vec<RVec> = normals.into_iter().collect();
        if normals.is_empty() {
            return Err(PolytopeError::DegenerateInput(
                "no supporting facet planes found".into(),
            ));
        }

        // Keep only genuine vertices: points on at least three facets.
        let incident = |p: &RVec| {
            normals
                .iter()
                .filter(|h| dot(h, p) == Rat::one())
                .count()
        };
        let vertices: Vec<RVec> = pts.into_iter().filter(|p| incident(p) >= 3).collect();
        if vertices.is_empty() {
            return Err(PolytopeError::DegenerateInput("no vertices on hull".into()));
        }

        let half_vertices: Vec<RVec> = vertices
            .iter()
            .filter(|v| lex_positive(v))
            .cloned()
            .collect();

        let facets: Vec<Vec<usize>> = normals
            .iter()
            .map(|h| {
                let idx: Vec<usize> = (0..vertices.len())
                    .filter(|&i| dot(h, &vertices[i]) == Rat::one())
                    .collect();
                cyclic_order(&vertices, h, idx)
            })
            .collect();
        if facets.iter().any(|f| f.len() < 3) {
            return Err(PolytopeError::DegenerateInput(
                "facet with fewer than three vertices".into(),
            ));
        }

        Ok(Polytope {
            dim: 3,
            vertices,
            half_vertices,
            normals,
            facets,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// All vertices, lexicographically sorted.
    pub fn vertices(&self) -> &[RVec] {
        &self.vertices
    }

    /// One representative per antipodal vertex pair (first nonzero coordinate
    /// positive), lexicographically sorted.
    pub fn half_vertices(&self) -> &[RVec] {
        &self.half_vertices
    }

    /// All facet normals, lexicographically sorted, scaled to `h . x = 1`.
    pub fn normals(&self) -> &[RVec] {
        &self.normals
    }

    /// One normal per antipodal facet pair.
    pub fn half_normals(&self) -> Vec<RVec> {
        self.normals
            .iter()
            .filter(|h| lex_positive(h))
            .cloned()
            .collect()
    }

    pub fn num_facets(&self) -> usize {
        self.normals.len()
    }

    /// Cyclically ordered vertex indices of facet `i` (aligned with `normals`).
    pub fn facet(&self, i: usize) -> &[usize] {
        &self.facets[i]
    }

    /// Index of the facet with normal `-normals[i]`.
    pub fn antipodal_facet(&self, i: usize) -> usize {
        let target = neg(&self.normals[i]);
        self.normals
            .iter()
            .position(|h| *h == target)
            .expect("H = -H for a centrally symmetric polytope")
    }

    /// The polytopal norm `max_h h . x`; zero exactly at the origin.
    pub fn norm_point(&self, x: &[Rat]) -> Rat {
        self.normals
            .iter()
            .map(|h| dot(h, x))
            .max()
            .expect("polytope has at least one facet")
    }

    pub fn enclosing_constants(&self) -> EnclosingConstants {
        let r_sq = self
            .normals
            .iter()
            .map(|h| norm_sq(h).recip())
            .min()
            .unwrap();
        let big_r_sq = self.vertices.iter().map(|v| norm_sq(v)).max().unwrap();
        let c_sq = &big_r_sq / &r_sq;
        let c_upper = sqrt_upper(&c_sq, 1_000_000);
        EnclosingConstants {
            r_sq,
            big_r_sq,
            c_sq,
            c_upper,
        }
    }

    /// The image polytope `T C`; the hull is rebuilt from the transformed
    /// vertices, so the normals satisfy `H_TC = T^-T H_C` as sets.
    pub fn transform(&self, t: &RMatrix) -> Result<Polytope, PolytopeError> {
        if t.det().is_zero() {
            return Err(PolytopeError::Exact(ExactError::SingularMatrix));
        }
        Polytope::from_vertices(self.vertices.iter().map(|v| t.matvec(v)).collect())
    }

    /// Wavefront OBJ text (1-based vertex indices, polygonal faces).
    pub fn to_obj(&self) -> String {
        let mut out = String::new();
        for v in &self.vertices {
            let coords: Vec<String> = v
                .iter()
                .map(|x| {
                    let f = rat_to_f64(x);
                    format!("{:.9}", f)
                })
                .collect();
            out.push_str(&format!("v {}\n", coords.join(" ")));
        }
        for f in &self.facets {
            let idx: Vec<String> = f.iter().map(|i| (i + 1).to_string()).collect();
            out.push_str(&format!("f {}\n", idx.join(" ")));
        }
        out
    }
}

fn rat_to_f64(x: &Rat) -> f64 {
    let n = x.numer();
    let d = x.denom();
    str::parse::<f64>(&n.to_string()).unwrap_or(f64::NAN)
        / str::parse::<f64>(&d.to_string()).unwrap_or(f64::NAN)
}

/// Orders the vertex indices of a facet cyclically around the facet centroid,
/// counterclockwise as seen from outside (along `h`). Comparisons are exact:
/// halfplane classification plus a cross-product orientation test.
fn cyclic_order(vertices: &[RVec], h: &[Rat], mut idx: Vec<usize>) -> Vec<usize> {
    if idx.len() < 3 {
        return idx;
    }
    let k = rat(idx.len() as i64, 1);
    let mut centroid = vec![Rat::zero(); 3];
    for &i in &idx {
        for (c, x) in centroid.iter_mut().zip(&vertices[i]) {
            *c += x;
        }
    }
    for c in centroid.iter_mut() {
        *c /= &k;
    }
    let reference = sub(&vertices[idx[0]], &centroid);
    let half = |p: &RVec| -> u8 {
        let s = dot(&cross3(&reference, p), h);
        if s.is_positive() {
            0
        } else if s.is_negative() {
            1
        } else if dot(&reference, p).is_positive() {
            0
        } else {
            1
        }
    };
    idx.sort_by(|&a, &b| {
        let pa = sub(&vertices[a], &centroid);
        let pb = sub(&vertices[b], &centroid);
        let (ha, hb) = (half(&pa), half(&pb));
        if ha != hb {
            return ha.cmp(&hb);
        }
        let s = dot(&cross3(&pa, &pb), h);
        if s.is_positive() {
            std::cmp::Ordering::Less
        } else if s.is_negative() {
            std::cmp::Ordering::Greater
        } else {
            std::cmp::Ordering::Equal
        }
    });
    idx
}

fn rv(xs: [(i64, i64); 3]) -> RVec {
    xs.iter().map(|&(n, d)| rat(n, d)).collect()
}

/// The cube `[-1,1]^3`.
pub fn make_cube() -> Polytope {
    let mut pts = Vec::new();
    for &x in &[-1i64, 1] {
        for &y in &[-1i64, 1] {
            for &z in &[-1i64, 1] {
                pts.push(rv([(x, 1), (y, 1), (z, 1)]));
            }
        }
    }
    Polytope::from_vertices(pts).expect("cube is a valid polytope")
}

/// The cross-polytope (octahedron) with vertices at the signed unit vectors.
pub fn make_octahedron() -> Polytope {
    let mut pts = Vec::new();
    for i in 0..3 {
        for &s in &[-1i64, 1] {
            let mut v = rv([(0, 1), (0, 1), (0, 1)]);
            v[i] = rat(s, 1);
            pts.push(v);
        }
    }
    Polytope::from_vertices(pts).expect("octahedron is a valid polytope")
}

/// The 12-vertex polytope I with vertices built from a = -3/5, b = -1/5, c = 1/10.
pub fn make_icosahedron_i() -> Polytope {
    let (a, b, c) = ((-3, 5), (-1, 5), (1, 10));
    let half = vec![
        rv([(1, 1), a, c]),
        rv([(1, 1), b, c]),
        rv([c, (1, 1), a]),
        rv([c, (1, 1), b]),
        rv([a, c, (1, 1)]),
        rv([b, c, (1, 1)]),
    ];
    let mut pts = half.clone();
    pts.extend(half.iter().map(|v| neg(v)));
    Polytope::from_vertices(pts).expect("I is a valid polytope")
}

/// The linear map bringing I approximately into John position.
pub fn john_transform() -> RMatrix {
    RMatrix::from_rows(vec![
        rv([(11, 10), (11, 10), (11, 10)]),
        rv([(7, 10), (1, 5), (-9, 10)]),
        rv([(3, 5), (-9, 10), (3, 10)]),
    ])
}

/// J = T I, the John-position image of I.
pub fn make_john_j() -> Polytope {
    make_icosahedron_i()
        .transform(&john_transform())
        .expect("T is invertible")
}

/// Looks up a builtin polytope by name.
pub fn builtin(name: &str) -> Option<Polytope> {
    match name {
        "I" => Some(make_icosahedron_i()),
        "J" => Some(make_john_j()),
        "cube" => Some(make_cube()),
        "octahedron" => Some(make_octahedron()),
        _ => None,
    }
}

/// Parses the polytope text format: one vertex per line, `;`-separated
/// `a//b` rationals; blank lines and `#` comments ignored.
pub fn parse_polytope(text: &str) -> Result<Polytope, PolytopeError> {
    let mut pts = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let coords: Result<RVec, _> = line
            .split(';')
            .map(|f| crate::exact::parse_rat(f))
            .collect();
        let coords = coords.map_err(|e| PolytopeError::ParseError {
            line: lineno + 1,
            msg: e.to_string(),
        })?;
        pts.push(coords);
    }
    Polytope::from_vertices(pts)
}

/// Writes a polytope in the same text format (canonical vertex order).
pub fn format_polytope(p: &Polytope) -> String {
    let mut out = String::new();
    for v in p.vertices() {
        let fields: Vec<String> = v.iter().map(crate::exact::format_rat).collect();
        out.push_str(&fields.join(";"));
        out.push('\n');
    }
    out
}

/// Random centrally symmetric polytope with (up to) `2 * half_points`
/// vertices: sample points with coordinates in [-1,1], denominators <= 64,
/// take the antipodal closure, and rebuild the hull. Returns None when the
/// hull degenerates or loses vertices.
pub fn random_symmetric_polytope(rng: &mut impl Rng, half_points: usize) -> Option<Polytope> {
    let mut pts = Vec::new();
    for _ in 0..half_points {
        let v: RVec = (0..3)
            .map(|_| {
                let d = rng.gen_range(1..=64i64);
                let n = rng.gen_range(-d..=d);
                rat(n, d)
            })
            .collect();
        if is_zero_vec(&v) {
            return None;
        }
        pts.push(neg(&v));
        pts.push(v);
    }
    let expected = pts.len();
    let p = Polytope::from_vertices(pts).ok()?;
    if p.vertices().len() != expected {
        return None;
    }
    Some(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rational::{lex_cmp, rat_int};

    #[test]
    fn cube_facets_and_normals() {
        let cube = make_cube();
        assert_eq!(cube.num_facets(), 6);
        let mut expect: Vec<RVec> = Vec::new();
        for i in 0..3 {
            for &s in &[-1i64, 1] {
                let mut v = vec![Rat::zero(); 3];
                v[i] = rat_int(s);
                expect.push(v);
            }
        }
        expect.sort_by(|a, b| lex_cmp(a, b));
        assert_eq!(cube.normals(), &expect[..]);
        assert_eq!(cube.half_vertices().len(), 4);
    }

    #[test]
    fn octahedron_duality() {
        let oct = make_octahedron();
        assert_eq!(oct.num_facets(), 8);
        for h in oct.normals() {
            assert!(h.iter().all(|x| x.abs() == Rat::one()));
        }
    }

    #[test]
    fn cube_norms() {
        let cube = make_cube();
        assert_eq!(cube.norm_point(&rv([(1, 1), (1, 1), (1, 1)])), rat_int(1));
        assert_eq!(cube.norm_point(&rv([(2, 1), (0, 1), (0, 1)])), rat_int(2));
        assert_eq!(cube.norm_point(&rv([(0, 1), (0, 1), (0, 1)])), rat_int(0));
    }

    #[test]
    fn icosahedron_vertex_count_and_symmetry() {
        let p = make_icosahedron_i();
        assert_eq!(p.vertices().len(), 12);
        assert_eq!(p.half_vertices().len(), 6);
        assert_eq!(p.num_facets(), 20);
        // I = -I as vertex sets
        let negated: BTreeSet<RVec> = p.vertices().iter().map(|v| neg(v)).collect();
        let orig: BTreeSet<RVec> = p.vertices().iter().cloned().collect();
        assert_eq!(negated, orig);
        // a vertex has norm one
        assert_eq!(p.norm_point(&rv([(1, 1), (-3, 5), (1, 10)])), rat_int(1));
    }

    #[test]
    fn enclosing_constants_cube_and_i() {
        let e = make_cube().enclosing_constants();
        assert_eq!(e.r_sq, rat_int(1));
        assert_eq!(e.big_r_sq, rat_int(3));
        assert_eq!(e.c_sq, rat_int(3));

        let e = make_icosahedron_i().enclosing_constants();
        assert_eq!(e.big_r_sq, rat(137, 100));
        assert_eq!(e.c_sq, rat(137, 27));
    }

    #[test]
    fn john_position_constants() {
        let e = make_john_j().enclosing_constants();
        assert!(e.c_sq <= rat(961, 400));
        assert!(e.c_upper <= rat(31, 20));
        assert!(&e.c_upper * &e.c_upper >= e.c_sq);
    }

    #[test]
    fn transform_properties() {
        let cube = make_cube();
        let same = cube.transform(&RMatrix::identity(3)).unwrap();
        assert_eq!(same.vertices(), cube.vertices());

        let doubled = cube.transform(&RMatrix::identity(3).scale(&rat_int(2))).unwrap();
        for h in doubled.normals() {
            assert!(cube.normals().contains(&h.iter().map(|x| x * rat_int(2)).collect::<RVec>()));
        }

        let j = make_john_j();
        assert_eq!(j.num_facets(), make_icosahedron_i().num_facets());
    }

    #[test]
    fn norm_transform_invariance() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(2);
        let p = make_icosahedron_i();
        let t = john_transform();
        let tp = p.transform(&t).unwrap();
        for _ in 0..20 {
            let x: RVec = (0..3)
                .map(|_| rat(rng.gen_range(-20..=20), rng.gen_range(1..=7)))
                .collect();
            assert_eq!(tp.norm_point(&t.matvec(&x)), p.norm_point(&x));
        }
    }

    #[test]
    fn lemma_ball_sandwich() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
        for p in [make_cube(), make_octahedron(), make_icosahedron_i()] {
            let e = p.enclosing_constants();
            for _ in 0..20 {
                let x: RVec = (0..3)
                    .map(|_| rat(rng.gen_range(-9..=9), rng.gen_range(1..=5)))
                    .collect();
                let nc = p.norm_point(&x);
                let n2_sq = norm_sq(&x);
                // r^2 |x|_C^2 <= |x|_2^2 <= R^2 |x|_C^2, all in squared form
                assert!(&e.r_sq * &nc * &nc <= n2_sq);
                assert!(n2_sq <= &e.big_r_sq * &nc * &nc);
            }
        }
    }

    #[test]
    fn vertices_have_norm_one_and_norm_is_even() {
        let p = make_john_j();
        for v in p.vertices() {
            assert_eq!(p.norm_point(v), rat_int(1));
            assert_eq!(p.norm_point(&neg(v)), rat_int(1));
        }
    }

    #[test]
    fn hull_roundtrip_same_normals() {
        for p in [make_cube(), make_octahedron(), make_icosahedron_i(), make_john_j()] {
            let again = Polytope::from_vertices(p.vertices().to_vec()).unwrap();
            assert_eq!(again.normals(), p.normals());
        }
    }

    #[test]
    fn degenerate_inputs_rejected() {
        // not centrally symmetric
        let r = Polytope::from_vertices(vec![
            rv([(1, 1), (0, 1), (0, 1)]),
            rv([(0, 1), (1, 1), (0, 1)]),
        ]);
        assert!(matches!(r, Err(PolytopeError::DegenerateInput(_))));
        // planar
        let r = Polytope::from_vertices(vec![
            rv([(1, 1), (0, 1), (0, 1)]),
            rv([(-1, 1), (0, 1), (0, 1)]),
            rv([(0, 1), (1, 1), (0, 1)]),
            rv([(0, 1), (-1, 1), (0, 1)]),
        ]);
        assert!(matches!(r, Err(PolytopeError::DegenerateInput(_))));
    }

    #[test]
    fn parse_format_roundtrip() {
        let p = make_icosahedron_i();
        let text = format_polytope(&p);
        let q = parse_polytope(&text).unwrap();
        assert_eq!(q.vertices(), p.vertices());
        assert_eq!(format_polytope(&q), text);
    }

    #[test]
    fn facets_are_cyclic() {
        let p = make_icosahedron_i();
        for fi in 0..p.num_facets() {
            let f = p.facet(fi);
            let h = &p.normals()[fi];
            assert!(f.len() >= 3);
            // consecutive triples wind positively around the outward normal
            for w in 0..f.len() {
                let a = &p.vertices()[f[w]];
                let b = &p.vertices()[f[(w + 1) % f.len()]];
                let c = &p.vertices()[f[(w + 2) % f.len()]];
                let s = dot(&cross3(&sub(b, a), &sub(c, b)), h);
                assert!(!s.is_negative());
            }
        }
    }

    #[test]
    fn random_generator_produces_valid_polytopes() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0);
        let mut produced = 0;
        for _ in 0..200 {
            if let Some(p) = random_symmetric_polytope(&mut rng, 5) {
                assert_eq!(p.vertices().len(), 10);
                for v in p.vertices() {
                    assert_eq!(p.norm_point(v), rat_int(1));
                }
                produced += 1;
                if produced >= 5 {
                    break;
                }
            }
        }
        assert!(produced >= 5, "generator kept rejecting");
    }
}
