//! Spherical and planar geometric primitives.
//!
//! Signed spherical triangle areas (the cocycle feeding every area
//! groupoid), geodesic midpoints, the inscribed-tetrahedron point
//! configuration, and the right-triangle-grid triangulation of the
//! standard 2-simplex.

use rand::Rng;
use rand_distr::StandardNormal;
use thiserror::Error;

/// Antipodality threshold: pairs with `‖x + y‖` at or below this are
/// rejected. Well above double-precision noise, far below any fixture
/// geometry.
pub const ANTIPODAL_TOL: f64 = 1e-9;

/// Unit-norm tolerance for [`SpherePoint`].
pub const UNIT_TOL: f64 = 1e-12;

#[derive(Debug, Error, PartialEq)]
pub enum GeometryError {
    /// Two points are antipodal (or too close to antipodal to trust).
    #[error("antipodal point pair (‖x + y‖ ≤ {ANTIPODAL_TOL})")]
    AntipodalPair,
    /// A vector could not be normalized to a sphere point.
    #[error("vector has norm {0}, not a usable direction")]
    NotUnit(f64),
}

/// A point on the unit sphere S² ⊂ ℝ³, kept unit-length to within 1e-12.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpherePoint {
    v: [f64; 3],
}

impl SpherePoint {
    /// Wraps a vector that is already unit length (within [`UNIT_TOL`]).
    pub fn new(v: [f64; 3]) -> Result<Self, GeometryError> {
        let n = norm(v);
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(GeometryError::NotUnit(n));
        }
        Ok(Self { v })
    }

    /// Normalizes an arbitrary non-zero vector onto the sphere.
    pub fn normalize(v: [f64; 3]) -> Result<Self, GeometryError> {
        let n = norm(v);
        if n <= ANTIPODAL_TOL {
            return Err(GeometryError::NotUnit(n));
        }
        Ok(Self {
            v: [v[0] / n, v[1] / n, v[2] / n],
        })
    }

    pub fn coords(&self) -> [f64; 3] {
        self.v
    }

    pub fn dot(&self, other: &SpherePoint) -> f64 {
        dot(self.v, other.v)
    }

    /// Euclidean distance in ℝ³ (chordal, not geodesic).
    pub fn chord_distance(&self, other: &SpherePoint) -> f64 {
        norm(sub(self.v, other.v))
    }

    pub fn antipode(&self) -> SpherePoint {
        SpherePoint {
            v: [-self.v[0], -self.v[1], -self.v[2]],
        }
    }

    /// True if `‖self + other‖` is above the antipodality threshold.
    pub fn non_antipodal(&self, other: &SpherePoint) -> bool {
        norm(add(self.v, other.v)) > ANTIPODAL_TOL
    }
}

fn dot(a: [f64; 3], b: [f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

fn add(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

fn sub(a: [f64; 3], b: [f64; 3]) -> [f64; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

fn norm(a: [f64; 3]) -> f64 {
    dot(a, a).sqrt()
}

/// Signed area of the geodesic triangle `xyz` on the unit sphere, in
/// radians of solid angle, in the range (−2π, 2π].
///
/// Computed branch-free as `2·atan2(det[x y z], 1 + x·y + y·z + z·x)`.
/// Antisymmetric under swapping any two arguments and invariant under
/// cyclic rotation; the value is well defined modulo 4π as an enclosed
/// area.
pub fn signed_area(
    x: &SpherePoint,
    y: &SpherePoint,
    z: &SpherePoint,
) -> Result<f64, GeometryError> {
    if !x.non_antipodal(y) || !y.non_antipodal(z) || !z.non_antipodal(x) {
        return Err(GeometryError::AntipodalPair);
    }
    let det = dot(x.v, cross(y.v, z.v));
    let den = 1.0 + dot(x.v, y.v) + dot(y.v, z.v) + dot(z.v, x.v);
    Ok(2.0 * det.atan2(den))
}

/// Midpoint of the shorter great-circle arc from `x` to `y`:
/// the normalization of `x + y`.
pub fn geodesic_midpoint(x: &SpherePoint, y: &SpherePoint) -> Result<SpherePoint, GeometryError> {
    if !x.non_antipodal(y) {
        return Err(GeometryError::AntipodalPair);
    }
    SpherePoint::normalize(add(x.v, y.v)).map_err(|_| GeometryError::AntipodalPair)
}

/// The seven marked points of a regular tetrahedron inscribed in S²:
/// odd-indexed entries (positions 0, 2, 4, 6) are the four vertices,
/// even-indexed entries are normalized midpoints of the edge joining
/// their neighbors.
///
/// The vertex labeling is frozen from a search over all 24 assignments
/// of `{(1,1,1), (1,−1,−1), (−1,1,−1), (−1,−1,1)}/√3` to path
/// positions: this one makes the two standard parenthesizations of the
/// six-arrow word along the path evaluate to area coordinates +2π and
/// −2π in the windowed sphere groupoid (see `sphere::tetrahedron_word`).
pub fn tetrahedron_configuration() -> [SpherePoint; 7] {
    let s = 3f64.sqrt().recip();
    let v1 = SpherePoint::normalize([s, s, s]).unwrap();
    let v3 = SpherePoint::normalize([s, -s, -s]).unwrap();
    let v5 = SpherePoint::normalize([-s, s, -s]).unwrap();
    let v7 = SpherePoint::normalize([-s, -s, s]).unwrap();
    let v2 = geodesic_midpoint(&v1, &v3).unwrap();
    let v4 = geodesic_midpoint(&v3, &v5).unwrap();
    let v6 = geodesic_midpoint(&v5, &v7).unwrap();
    [v1, v2, v3, v4, v5, v6, v7]
}

/// A point of the triangular grid on the standard 2-simplex, as grid
/// indices `(i, j)` with `i + j ≤ k`. The planar embedding is `(i/k, j/k)`.
pub type GridVertex = (u32, u32);

/// The standard right-triangle grid triangulation of
/// `Δ = {(x, y) : x ≥ 0, y ≥ 0, x + y ≤ 1}` with k² faces.
#[derive(Debug, Clone)]
pub struct TriangulatedSimplex {
    pub k: u32,
    pub vertices: Vec<GridVertex>,
    pub edges: Vec<(GridVertex, GridVertex)>,
    /// Lower triangles `{(i,j), (i+1,j), (i,j+1)}` interleaved with upper
    /// triangles `{(i+1,j), (i,j+1), (i+1,j+1)}` per cell, column-major.
    pub faces: Vec<[GridVertex; 3]>,
}

impl TriangulatedSimplex {
    /// Planar coordinates of a grid vertex, as exact fractions `(i/k, j/k)`.
    pub fn embed(&self, v: GridVertex) -> (f64, f64) {
        (f64::from(v.0) / f64::from(self.k), f64::from(v.1) / f64::from(self.k))
    }

    pub fn is_vertex(&self, v: GridVertex) -> bool {
        v.0 + v.1 <= self.k
    }

    /// True if `{a, b}` is one of the grid edges (ignoring orientation).
    pub fn is_edge(&self, a: GridVertex, b: GridVertex) -> bool {
        if !self.is_vertex(a) || !self.is_vertex(b) {
            return false;
        }
        let dx = i64::from(b.0) - i64::from(a.0);
        let dy = i64::from(b.1) - i64::from(a.1);
        matches!((dx, dy), (1, 0) | (-1, 0) | (0, 1) | (0, -1) | (1, -1) | (-1, 1))
    }

    /// The face with the given vertex set, if present. Vertices may come
    /// in any order.
    pub fn face_of(&self, mut tri: [GridVertex; 3]) -> Option<usize> {
        tri.sort_unstable();
        self.faces.iter().position(|f| {
            let mut g = *f;
            g.sort_unstable();
            g == tri
        })
    }

    /// Boundary edges in counterclockwise traversal order starting at
    /// `(0,0)`: along the bottom, up the hypotenuse, down the left side.
    pub fn boundary_cycle(&self) -> Vec<(GridVertex, GridVertex)> {
        let k = self.k;
        let mut out = Vec::with_capacity(3 * k as usize);
        for i in 0..k {
            out.push(((i, 0), (i + 1, 0)));
        }
        for i in 0..k {
            out.push(((k - i, i), (k - i - 1, i + 1)));
        }
        for j in 0..k {
            out.push(((0, k - j), (0, k - j - 1)));
        }
        out
    }
}

/// Builds [`TriangulatedSimplex`] for grid parameter `k ∈ [1, 64]`.
///
/// Faces split into "lower" triangles (right angle at the lattice point
/// nearest the origin) and "upper" triangles filling each unit cell.
pub fn triangulate_simplex(k: u32) -> TriangulatedSimplex {
    assert!((1..=64).contains(&k), "k must be in 1..=64, got {k}");
    let mut vertices = Vec::new();
    for i in 0..=k {
        for j in 0..=(k - i) {
            vertices.push((i, j));
        }
    }
    let mut edges = Vec::new();
    for &(i, j) in &vertices {
        if i + j < k {
            edges.push(((i, j), (i + 1, j)));
            edges.push(((i, j), (i, j + 1)));
            edges.push(((i + 1, j), (i, j + 1)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let mut faces = Vec::new();
    for i in 0..k {
        for j in 0..k - i {
            faces.push([(i, j), (i + 1, j), (i, j + 1)]);
            if i + j + 1 < k {
                faces.push([(i + 1, j), (i, j + 1), (i + 1, j + 1)]);
            }
        }
    }
    TriangulatedSimplex {
        k,
        vertices,
        edges,
        faces,
    }
}

/// Draws a uniformly distributed point on S² (normalized 3-d Gaussian).
pub fn random_sphere_point<R: Rng + ?Sized>(rng: &mut R) -> SpherePoint {
    loop {
        let v: [f64; 3] = [
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
            rng.sample(StandardNormal),
        ];
        if let Ok(p) = SpherePoint::normalize(v) {
            return p;
        }
    }
}

/// Draws a point non-antipodal to every point of `anchors`.
pub fn random_point_avoiding<R: Rng + ?Sized>(
    rng: &mut R,
    anchors: &[SpherePoint],
) -> SpherePoint {
    loop {
        let p = random_sphere_point(rng);
        if anchors.iter().all(|a| a.non_antipodal(&p)) {
            return p;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::PI;

    fn pt(v: [f64; 3]) -> SpherePoint {
        SpherePoint::normalize(v).unwrap()
    }

    #[test]
    fn octant_has_area_half_pi() {
        let x = pt([1.0, 0.0, 0.0]);
        let y = pt([0.0, 1.0, 0.0]);
        let z = pt([0.0, 0.0, 1.0]);
        let a = signed_area(&x, &y, &z).unwrap();
        assert!((a - PI / 2.0).abs() < 1e-12, "got {a}");
    }

    #[test]
    fn odd_permutation_flips_sign() {
        let x = pt([1.0, 0.0, 0.0]);
        let y = pt([0.0, 1.0, 0.0]);
        let z = pt([0.0, 0.0, 1.0]);
        let a = signed_area(&y, &x, &z).unwrap();
        assert!((a + PI / 2.0).abs() < 1e-12, "got {a}");
    }

    #[test]
    fn great_circle_triangle_is_degenerate() {
        // three points on the equator
        let x = pt([1.0, 0.0, 0.0]);
        let y = pt([0.5, 3f64.sqrt() / 2.0, 0.0]);
        let z = pt([-0.5, 3f64.sqrt() / 2.0, 0.0]);
        let a = signed_area(&x, &y, &z).unwrap();
        assert!(a.abs() < 1e-12, "got {a}");
    }

    #[test]
    fn antipodal_pair_is_rejected() {
        let x = pt([1.0, 0.0, 0.0]);
        let y = pt([-1.0, 0.0, 0.0]);
        let z = pt([0.0, 0.0, 1.0]);
        assert_eq!(signed_area(&x, &y, &z), Err(GeometryError::AntipodalPair));
        assert_eq!(geodesic_midpoint(&x, &y), Err(GeometryError::AntipodalPair));
    }

    #[test]
    fn antisymmetry_and_cyclic_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let x = random_sphere_point(&mut rng);
            let y = random_point_avoiding(&mut rng, &[x]);
            let z = random_point_avoiding(&mut rng, &[x, y]);
            let a = signed_area(&x, &y, &z).unwrap();
            let swapped = signed_area(&y, &x, &z).unwrap();
            let cycled = signed_area(&y, &z, &x).unwrap();
            assert!((a + swapped).abs() <= 1e-12);
            assert!((a - cycled).abs() <= 1e-12);
        }
    }

    #[test]
    fn quadrangle_cocycle_mod_4pi() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..10_000 {
            let w = random_sphere_point(&mut rng);
            let x = random_point_avoiding(&mut rng, &[w]);
            let y = random_point_avoiding(&mut rng, &[w, x]);
            let z = random_point_avoiding(&mut rng, &[w, x, y]);
            let lhs = signed_area(&x, &y, &z).unwrap() + signed_area(&w, &x, &z).unwrap();
            let rhs = signed_area(&w, &x, &y).unwrap() + signed_area(&w, &y, &z).unwrap();
            let r = (lhs - rhs).rem_euclid(4.0 * PI);
            let d = r.min(4.0 * PI - r);
            assert!(d < 1e-9, "cocycle defect {d}");
        }
    }

    #[test]
    fn midpoint_basics() {
        let x = pt([1.0, 0.0, 0.0]);
        let y = pt([0.0, 1.0, 0.0]);
        let m = geodesic_midpoint(&x, &y).unwrap();
        let c = m.coords();
        let inv = 2f64.sqrt().recip();
        assert!((c[0] - inv).abs() < 1e-12 && (c[1] - inv).abs() < 1e-12);
        let same = geodesic_midpoint(&x, &x).unwrap();
        assert!(same.chord_distance(&x) < 1e-12);
    }

    #[test]
    fn midpoint_is_coplanar_with_endpoints() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let x = random_sphere_point(&mut rng);
            let y = random_point_avoiding(&mut rng, &[x]);
            let m = geodesic_midpoint(&x, &y).unwrap();
            let det = dot(x.coords(), cross(y.coords(), m.coords()));
            assert!(det.abs() < 1e-12);
            assert!((m.dot(&x) - m.dot(&y)).abs() < 1e-12, "not equidistant");
        }
    }

    #[test]
    fn tetrahedron_fixture_shape() {
        let xs = tetrahedron_configuration();
        for w in xs.windows(2) {
            assert!(w[0].non_antipodal(&w[1]));
        }
        let m = geodesic_midpoint(&xs[0], &xs[2]).unwrap();
        assert!(m.chord_distance(&xs[1]) < 1e-12);
        let m = geodesic_midpoint(&xs[2], &xs[4]).unwrap();
        assert!(m.chord_distance(&xs[3]) < 1e-12);
        let m = geodesic_midpoint(&xs[4], &xs[6]).unwrap();
        assert!(m.chord_distance(&xs[5]) < 1e-12);
    }

    #[test]
    fn triangulation_counts() {
        let t1 = triangulate_simplex(1);
        assert_eq!(t1.vertices.len(), 3);
        assert_eq!(t1.edges.len(), 3);
        assert_eq!(t1.faces.len(), 1);
        assert_eq!(triangulate_simplex(2).faces.len(), 4);
        assert_eq!(triangulate_simplex(8).faces.len(), 64);
    }

    #[test]
    fn triangulation_euler_characteristic_and_boundary() {
        for k in 1..=10 {
            let t = triangulate_simplex(k);
            let v = t.vertices.len() as i64;
            let e = t.edges.len() as i64;
            let f = t.faces.len() as i64;
            assert_eq!(v - e + f, 1, "χ ≠ 1 for k={k}");
            assert_eq!(f, i64::from(k) * i64::from(k));
            // every edge in ≤ 2 faces, boundary edge count = 3k
            let mut per_edge = std::collections::HashMap::new();
            for face in &t.faces {
                for (a, b) in [(0, 1), (1, 2), (0, 2)] {
                    let mut key = [face[a], face[b]];
                    key.sort_unstable();
                    *per_edge.entry(key).or_insert(0u32) += 1;
                }
            }
            assert!(per_edge.values().all(|&c| c <= 2));
            let boundary = per_edge.values().filter(|&&c| c == 1).count();
            assert_eq!(boundary, 3 * k as usize);
            assert_eq!(t.boundary_cycle().len(), 3 * k as usize);
            for (a, b) in t.boundary_cycle() {
                assert!(t.is_edge(a, b));
            }
        }
    }

    #[test]
    fn random_points_are_reproducible_and_uniformish() {
        let mut r1 = ChaCha8Rng::seed_from_u64(42);
        let mut r2 = ChaCha8Rng::seed_from_u64(42);
        let a = random_sphere_point(&mut r1);
        let b = random_sphere_point(&mut r2);
        assert_eq!(a.coords(), b.coords());

        let mut rng = ChaCha8Rng::seed_from_u64(42);
        let mut mean = [0.0f64; 3];
        let n = 100_000;
        for _ in 0..n {
            let p = random_sphere_point(&mut rng);
            let c = p.coords();
            for i in 0..3 {
                mean[i] += c[i];
            }
            assert!((norm(c) - 1.0).abs() <= UNIT_TOL);
        }
        for m in &mut mean {
            *m /= n as f64;
        }
        assert!(norm(mean) < 0.02, "mean norm {}", norm(mean));
    }
}
