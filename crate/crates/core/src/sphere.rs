//! Groupoids of geodesic arrows on the sphere with an area coordinate.
//!
//! An arrow `(target, source, a)` stands for the geodesic from `source`
//! to `target` decorated by a real number. Composition adds the signed
//! area of the spherical triangle spanned by the three endpoints:
//!
//! `(z, y, a) · (y, x, a′) = (z, x, a + a′ + A(Δxyz))`.
//!
//! Three variants live here:
//! - [`ModularSphereGroupoid`]: the area coordinate is reduced modulo
//!   4π and every non-antipodal composition is defined; this one embeds
//!   in a global groupoid.
//! - [`WindowedSphereGroupoid`]: the coordinate is a plain real and the
//!   product is only defined when the triangle area lies in (−π, π);
//!   globally associative it is not (see [`tetrahedron_witness`]).
//! - [`ProductSphereGroupoid`]: arrows over S²×S² with the second
//!   factor's area weighted by λ, the window scaled to (−π/|λ|, π/|λ|).

use std::f64::consts::PI;

use thiserror::Error;

use crate::geometry::{signed_area, tetrahedron_configuration, SpherePoint};
use crate::groupoid::Groupoid;
use crate::words::ParenTree;

/// Margin inside the open area windows: products within 1e−12 of the
/// boundary count as undefined, so floating error never fabricates a
/// defined product.
pub const WINDOW_MARGIN: f64 = 1e-12;

/// Default tolerance for element equality and the matching visited-set
/// rounding grid.
pub const ELEMENT_TOL: f64 = 1e-7;

/// Tolerance for object (endpoint) matching in compositions.
pub const OBJECT_TOL: f64 = 1e-9;

pub const FOUR_PI: f64 = 4.0 * PI;

#[derive(Debug, Error, PartialEq)]
pub enum SphereGroupoidError {
    #[error("source of the left factor does not match target of the right factor")]
    SourceTargetMismatch,
}

/// A geodesic arrow on S² with an area coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SphereArrow {
    pub target: SpherePoint,
    pub source: SpherePoint,
    pub area: f64,
}

impl SphereArrow {
    /// Requires non-antipodal endpoints.
    pub fn new(target: SpherePoint, source: SpherePoint, area: f64) -> Option<Self> {
        target.non_antipodal(&source).then_some(Self {
            target,
            source,
            area,
        })
    }
}

/// An arrow over S²×S²: both endpoint pairs non-antipodal factorwise.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProductArrow {
    pub target: (SpherePoint, SpherePoint),
    pub source: (SpherePoint, SpherePoint),
    pub area: f64,
}

impl ProductArrow {
    pub fn new(
        target: (SpherePoint, SpherePoint),
        source: (SpherePoint, SpherePoint),
        area: f64,
    ) -> Option<Self> {
        (target.0.non_antipodal(&source.0) && target.1.non_antipodal(&source.1)).then_some(Self {
            target,
            source,
            area,
        })
    }
}

fn grid(v: f64) -> i64 {
    (v / ELEMENT_TOL).round() as i64
}

fn point_key(p: &SpherePoint) -> [i64; 3] {
    let c = p.coords();
    [grid(c[0]), grid(c[1]), grid(c[2])]
}

fn points_close(a: &SpherePoint, b: &SpherePoint, tol: f64) -> bool {
    a.chord_distance(b) <= tol
}

/// Arrows with area reduced to [0, 4π); composition defined whenever the
/// outer endpoints are non-antipodal.
#[derive(Debug, Clone, Copy)]
pub struct ModularSphereGroupoid {
    pub element_tol: f64,
}

impl Default for ModularSphereGroupoid {
    fn default() -> Self {
        Self {
            element_tol: ELEMENT_TOL,
        }
    }
}

impl ModularSphereGroupoid {
    pub fn reduce(a: f64) -> f64 {
        a.rem_euclid(FOUR_PI)
    }

    /// Checked composition: endpoint mismatch is an error, an undefined
    /// product (antipodal outer endpoints) is `None`.
    pub fn compose(
        &self,
        g: &SphereArrow,
        h: &SphereArrow,
    ) -> Result<Option<SphereArrow>, SphereGroupoidError> {
        if !points_close(&g.source, &h.target, OBJECT_TOL) {
            return Err(SphereGroupoidError::SourceTargetMismatch);
        }
        if !h.source.non_antipodal(&g.target) {
            return Ok(None);
        }
        let tri = signed_area(&h.source, &g.source, &g.target)
            .expect("pairwise non-antipodal by arrow invariants");
        Ok(Some(SphereArrow {
            target: g.target,
            source: h.source,
            area: Self::reduce(g.area + h.area + tri),
        }))
    }

    /// Distance between two area values modulo 4π.
    pub fn area_distance(a: f64, b: f64) -> f64 {
        let d = (a - b).rem_euclid(FOUR_PI);
        d.min(FOUR_PI - d)
    }
}

impl Groupoid for ModularSphereGroupoid {
    type Object = SpherePoint;
    type Element = SphereArrow;
    type Key = [i64; 7];

    fn source(&self, g: &SphereArrow) -> SpherePoint {
        g.source
    }

    fn target(&self, g: &SphereArrow) -> SpherePoint {
        g.target
    }

    fn unit(&self, x: &SpherePoint) -> SphereArrow {
        SphereArrow {
            target: *x,
            source: *x,
            area: 0.0,
        }
    }

    fn try_mul(&self, g: &SphereArrow, h: &SphereArrow) -> Option<SphereArrow> {
        self.compose(g, h).ok().flatten()
    }

    fn try_inv(&self, g: &SphereArrow) -> Option<SphereArrow> {
        Some(SphereArrow {
            target: g.source,
            source: g.target,
            area: Self::reduce(-g.area),
        })
    }

    fn elements_equal(&self, g: &SphereArrow, h: &SphereArrow) -> bool {
        points_close(&g.target, &h.target, self.element_tol)
            && points_close(&g.source, &h.source, self.element_tol)
            && Self::area_distance(g.area, h.area) <= self.element_tol
    }

    fn objects_equal(&self, x: &SpherePoint, y: &SpherePoint) -> bool {
        points_close(x, y, OBJECT_TOL)
    }

    fn element_key(&self, g: &SphereArrow) -> [i64; 7] {
        let t = point_key(&g.target);
        let s = point_key(&g.source);
        [t[0], t[1], t[2], s[0], s[1], s[2], grid(Self::reduce(g.area))]
    }
}

/// Arrows with an unreduced real area coordinate; composition requires
/// the triangle area to fall strictly inside (−π, π).
#[derive(Debug, Clone, Copy)]
pub struct WindowedSphereGroupoid {
    pub element_tol: f64,
}

impl Default for WindowedSphereGroupoid {
    fn default() -> Self {
        Self {
            element_tol: ELEMENT_TOL,
        }
    }
}

impl WindowedSphereGroupoid {
    pub fn compose(
        &self,
        g: &SphereArrow,
        h: &SphereArrow,
    ) -> Result<Option<SphereArrow>, SphereGroupoidError> {
        if !points_close(&g.source, &h.target, OBJECT_TOL) {
            return Err(SphereGroupoidError::SourceTargetMismatch);
        }
        if !h.source.non_antipodal(&g.target) {
            return Ok(None);
        }
        let tri = signed_area(&h.source, &g.source, &g.target)
            .expect("pairwise non-antipodal by arrow invariants");
        if tri.abs() >= PI - WINDOW_MARGIN {
            return Ok(None);
        }
        Ok(Some(SphereArrow {
            target: g.target,
            source: h.source,
            area: g.area + h.area + tri,
        }))
    }
}

impl Groupoid for WindowedSphereGroupoid {
    type Object = SpherePoint;
    type Element = SphereArrow;
    type Key = [i64; 7];

    fn source(&self, g: &SphereArrow) -> SpherePoint {
        g.source
    }

    fn target(&self, g: &SphereArrow) -> SpherePoint {
        g.target
    }

    fn unit(&self, x: &SpherePoint) -> SphereArrow {
        SphereArrow {
            target: *x,
            source: *x,
            area: 0.0,
        }
    }

    fn try_mul(&self, g: &SphereArrow, h: &SphereArrow) -> Option<SphereArrow> {
        self.compose(g, h).ok().flatten()
    }

    fn try_inv(&self, g: &SphereArrow) -> Option<SphereArrow> {
        Some(SphereArrow {
            target: g.source,
            source: g.target,
            area: -g.area,
        })
    }

    fn elements_equal(&self, g: &SphereArrow, h: &SphereArrow) -> bool {
        points_close(&g.target, &h.target, self.element_tol)
            && points_close(&g.source, &h.source, self.element_tol)
            && (g.area - h.area).abs() <= self.element_tol
    }

    fn objects_equal(&self, x: &SpherePoint, y: &SpherePoint) -> bool {
        points_close(x, y, OBJECT_TOL)
    }

    fn element_key(&self, g: &SphereArrow) -> [i64; 7] {
        let t = point_key(&g.target);
        let s = point_key(&g.source);
        [t[0], t[1], t[2], s[0], s[1], s[2], grid(g.area)]
    }
}

/// Arrows over S²×S² with coupling parameter λ: the composed area is
/// `a₁ + a₂ + A(Δ) + λ·A(Δ′)` and the second-factor window is void when
/// λ = 0.
#[derive(Debug, Clone, Copy)]
pub struct ProductSphereGroupoid {
    pub lambda: f64,
    pub element_tol: f64,
}

impl ProductSphereGroupoid {
    pub fn new(lambda: f64) -> Self {
        Self {
            lambda,
            element_tol: ELEMENT_TOL,
        }
    }

    pub fn compose(
        &self,
        g: &ProductArrow,
        h: &ProductArrow,
    ) -> Result<Option<ProductArrow>, SphereGroupoidError> {
        if !points_close(&g.source.0, &h.target.0, OBJECT_TOL)
            || !points_close(&g.source.1, &h.target.1, OBJECT_TOL)
        {
            return Err(SphereGroupoidError::SourceTargetMismatch);
        }
        if !h.source.0.non_antipodal(&g.target.0) || !h.source.1.non_antipodal(&g.target.1) {
            return Ok(None);
        }
        let tri0 = signed_area(&h.source.0, &g.source.0, &g.target.0)
            .expect("pairwise non-antipodal by arrow invariants");
        if tri0.abs() >= PI - WINDOW_MARGIN {
            return Ok(None);
        }
        let tri1 = signed_area(&h.source.1, &g.source.1, &g.target.1)
            .expect("pairwise non-antipodal by arrow invariants");
        if self.lambda != 0.0 && tri1.abs() >= PI / self.lambda.abs() - WINDOW_MARGIN {
            return Ok(None);
        }
        Ok(Some(ProductArrow {
            target: g.target,
            source: h.source,
            area: g.area + h.area + tri0 + self.lambda * tri1,
        }))
    }
}

impl Groupoid for ProductSphereGroupoid {
    type Object = (SpherePoint, SpherePoint);
    type Element = ProductArrow;
    type Key = [i64; 13];

    fn source(&self, g: &ProductArrow) -> (SpherePoint, SpherePoint) {
        g.source
    }

    fn target(&self, g: &ProductArrow) -> (SpherePoint, SpherePoint) {
        g.target
    }

    fn unit(&self, x: &(SpherePoint, SpherePoint)) -> ProductArrow {
        ProductArrow {
            target: *x,
            source: *x,
            area: 0.0,
        }
    }

    fn try_mul(&self, g: &ProductArrow, h: &ProductArrow) -> Option<ProductArrow> {
        self.compose(g, h).ok().flatten()
    }

    fn try_inv(&self, g: &ProductArrow) -> Option<ProductArrow> {
        Some(ProductArrow {
            target: g.source,
            source: g.target,
            area: -g.area,
        })
    }

    fn elements_equal(&self, g: &ProductArrow, h: &ProductArrow) -> bool {
        points_close(&g.target.0, &h.target.0, self.element_tol)
            && points_close(&g.target.1, &h.target.1, self.element_tol)
            && points_close(&g.source.0, &h.source.0, self.element_tol)
            && points_close(&g.source.1, &h.source.1, self.element_tol)
            && (g.area - h.area).abs() <= self.element_tol
    }

    fn objects_equal(
        &self,
        x: &(SpherePoint, SpherePoint),
        y: &(SpherePoint, SpherePoint),
    ) -> bool {
        points_close(&x.0, &y.0, OBJECT_TOL) && points_close(&x.1, &y.1, OBJECT_TOL)
    }

    fn element_key(&self, g: &ProductArrow) -> [i64; 13] {
        let t0 = point_key(&g.target.0);
        let t1 = point_key(&g.target.1);
        let s0 = point_key(&g.source.0);
        let s1 = point_key(&g.source.1);
        [
            t0[0], t0[1], t0[2], t1[0], t1[1], t1[2], s0[0], s0[1], s0[2], s1[0], s1[1], s1[2],
            grid(g.area),
        ]
    }
}

/// The six consecutive arrows along the tetrahedron path together with
/// the two bracketings whose evaluations differ by 4π.
#[derive(Debug, Clone)]
pub struct TetrahedronWitness {
    /// Word letters in evaluation order (leftmost letter carries the
    /// target of the whole product): the arrows x₆→x₇, x₅→x₆, …, x₁→x₂.
    pub letters: [SphereArrow; 6],
    /// Bracketing evaluating to area +2π.
    pub tree_pos: ParenTree,
    /// Bracketing evaluating to area −2π.
    pub tree_neg: ParenTree,
}

/// Builds the six-arrow word along the tetrahedron point path, each
/// arrow with area coordinate 0.
pub fn tetrahedron_witness() -> TetrahedronWitness {
    let xs = tetrahedron_configuration();
    // consecutive arrows x_i → x_{i+1}
    let arrow = |i: usize| SphereArrow {
        target: xs[i + 1],
        source: xs[i],
        area: 0.0,
    };
    let letters = [arrow(5), arrow(4), arrow(3), arrow(2), arrow(1), arrow(0)];
    let leaf = ParenTree::leaf;
    let node = ParenTree::node;
    // F (E ((D (C B)) A))
    let tree_pos = node(
        leaf(),
        node(
            leaf(),
            node(node(leaf(), node(leaf(), leaf())), leaf()),
        ),
    );
    // ((F ((E D) C)) B) A
    let tree_neg = node(
        node(
            node(leaf(), node(node(leaf(), leaf()), leaf())),
            leaf(),
        ),
        leaf(),
    );
    TetrahedronWitness {
        letters,
        tree_pos,
        tree_neg,
    }
}

/// Letters for associator searches on the product groupoid: the six
/// tetrahedron arrows and their inverses acting on one factor, the other
/// factor frozen at `frozen`. `factor` 0 moves the first sphere, 1 the
/// second.
pub fn factor_gadget_letters(factor: usize, frozen: SpherePoint) -> Vec<ProductArrow> {
    assert!(factor < 2);
    let xs = tetrahedron_configuration();
    let mut letters = Vec::with_capacity(12);
    for i in 0..6 {
        let (s, t) = (xs[i], xs[i + 1]);
        let (mk_t, mk_s) = if factor == 0 {
            ((t, frozen), (s, frozen))
        } else {
            ((frozen, t), (frozen, s))
        };
        letters.push(ProductArrow {
            target: mk_t,
            source: mk_s,
            area: 0.0,
        });
        letters.push(ProductArrow {
            target: mk_s,
            source: mk_t,
            area: 0.0,
        });
    }
    letters
}

/// Base object for [`factor_gadget_letters`]: the first tetrahedron
/// point on the moving factor, `frozen` on the other.
pub fn factor_gadget_base(factor: usize, frozen: SpherePoint) -> (SpherePoint, SpherePoint) {
    assert!(factor < 2);
    let x1 = tetrahedron_configuration()[0];
    if factor == 0 {
        (x1, frozen)
    } else {
        (frozen, x1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::{random_point_avoiding, random_sphere_point};
    use crate::words::evaluate;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_arrow_chain<R: Rng>(rng: &mut R, len: usize) -> Vec<SpherePoint> {
        let mut pts = vec![random_sphere_point(rng)];
        for _ in 0..len {
            let prev = *pts.last().unwrap();
            pts.push(random_point_avoiding(rng, &[prev]));
        }
        pts
    }

    #[test]
    fn colinear_composition_adds_areas() {
        let g = WindowedSphereGroupoid::default();
        let x = SpherePoint::normalize([1.0, 0.0, 0.0]).unwrap();
        let y = SpherePoint::normalize([0.0, 1.0, 0.0]).unwrap();
        let z = SpherePoint::normalize([-1.0, 1.0, 0.0]).unwrap();
        let a = SphereArrow::new(z, y, 0.25).unwrap();
        let b = SphereArrow::new(y, x, 0.5).unwrap();
        let c = g.compose(&a, &b).unwrap().unwrap();
        assert!((c.area - 0.75).abs() < 1e-12);

        let m = ModularSphereGroupoid::default();
        let am = SphereArrow::new(z, y, FOUR_PI - 0.25).unwrap();
        let cm = m.compose(&am, &b).unwrap().unwrap();
        assert!((cm.area - 0.25).abs() < 1e-12);
    }

    #[test]
    fn mismatched_endpoints_error() {
        let g = WindowedSphereGroupoid::default();
        let x = SpherePoint::normalize([1.0, 0.0, 0.0]).unwrap();
        let y = SpherePoint::normalize([0.0, 1.0, 0.0]).unwrap();
        let z = SpherePoint::normalize([0.0, 0.0, 1.0]).unwrap();
        let a = SphereArrow::new(z, y, 0.0).unwrap();
        let b = SphereArrow::new(z, x, 0.0).unwrap();
        assert_eq!(
            g.compose(&a, &b),
            Err(SphereGroupoidError::SourceTargetMismatch)
        );
    }

    #[test]
    fn wide_triangles_are_undefined() {
        let g = WindowedSphereGroupoid::default();
        // a triangle covering most of a hemisphere: area well beyond π
        let x = SpherePoint::normalize([1.0, 0.0, 1e-3]).unwrap();
        let y = SpherePoint::normalize([-0.5, 0.867, 1e-3]).unwrap();
        let z = SpherePoint::normalize([-0.5, -0.867, 1e-3]).unwrap();
        let tri = signed_area(&x, &y, &z).unwrap();
        assert!(tri.abs() >= std::f64::consts::PI);
        let a = SphereArrow::new(z, y, 0.0).unwrap();
        let b = SphereArrow::new(y, x, 0.0).unwrap();
        assert_eq!(g.compose(&a, &b).unwrap(), None);
    }

    #[test]
    fn unit_laws_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let g = WindowedSphereGroupoid::default();
        for _ in 0..100 {
            let pts = random_arrow_chain(&mut rng, 1);
            let a = SphereArrow::new(pts[1], pts[0], rng.random::<f64>()).unwrap();
            let us = g.unit(&g.source(&a));
            let ut = g.unit(&g.target(&a));
            let right = g.try_mul(&a, &us).unwrap();
            let left = g.try_mul(&ut, &a).unwrap();
            assert!(g.elements_equal(&right, &a));
            assert!(g.elements_equal(&left, &a));
            let inv = g.try_inv(&a).unwrap();
            let lo = g.try_mul(&inv, &a).unwrap();
            assert!(g.elements_equal(&lo, &us));
        }
    }

    #[test]
    fn modular_three_associativity_on_random_triples() {
        let g = ModularSphereGroupoid::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut checked = 0;
        while checked < 10_000 {
            let p = random_arrow_chain(&mut rng, 3);
            let (w, x, y, z) = (p[0], p[1], p[2], p[3]);
            let a = SphereArrow::new(z, y, rng.random::<f64>()).unwrap();
            let b = SphereArrow::new(y, x, rng.random::<f64>()).unwrap();
            let c = SphereArrow::new(x, w, rng.random::<f64>()).unwrap();
            let Some(ab) = g.try_mul(&a, &b) else { continue };
            let Some(bc) = g.try_mul(&b, &c) else { continue };
            let (Some(l), Some(r)) = (g.try_mul(&ab, &c), g.try_mul(&a, &bc)) else {
                continue;
            };
            checked += 1;
            assert!(
                ModularSphereGroupoid::area_distance(l.area, r.area) < 1e-9,
                "associativity defect at triple {checked}"
            );
        }
    }

    #[test]
    fn windowed_three_associativity_on_random_triples() {
        let g = WindowedSphereGroupoid::default();
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 10_000 {
            let p = random_arrow_chain(&mut rng, 3);
            let (w, x, y, z) = (p[0], p[1], p[2], p[3]);
            let a = SphereArrow::new(z, y, rng.random::<f64>()).unwrap();
            let b = SphereArrow::new(y, x, rng.random::<f64>()).unwrap();
            let c = SphereArrow::new(x, w, rng.random::<f64>()).unwrap();
            let Some(ab) = g.try_mul(&a, &b) else { continue };
            let Some(bc) = g.try_mul(&b, &c) else { continue };
            let (Some(l), Some(r)) = (g.try_mul(&ab, &c), g.try_mul(&a, &bc)) else {
                continue;
            };
            checked += 1;
            assert!((l.area - r.area).abs() < 1e-9);
        }
    }

    #[test]
    fn windowed_products_agree_with_modular_mod_4pi() {
        let gw = WindowedSphereGroupoid::default();
        let gm = ModularSphereGroupoid::default();
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut checked = 0;
        while checked < 2_000 {
            let p = random_arrow_chain(&mut rng, 2);
            let a = SphereArrow::new(p[2], p[1], rng.random::<f64>()).unwrap();
            let b = SphereArrow::new(p[1], p[0], rng.random::<f64>()).unwrap();
            let Some(w) = gw.try_mul(&a, &b) else { continue };
            let m = gm
                .try_mul(
                    &SphereArrow {
                        area: ModularSphereGroupoid::reduce(a.area),
                        ..a
                    },
                    &SphereArrow {
                        area: ModularSphereGroupoid::reduce(b.area),
                        ..b
                    },
                )
                .expect("modular product defined whenever windowed one is");
            checked += 1;
            assert!(ModularSphereGroupoid::area_distance(w.area, m.area) < 1e-9);
        }
    }

    #[test]
    fn tetrahedron_word_evaluates_to_plus_minus_2pi() {
        let g = WindowedSphereGroupoid::default();
        let w = tetrahedron_witness();
        let pos = evaluate(&g, &w.letters, &w.tree_pos).expect("all steps defined");
        let neg = evaluate(&g, &w.letters, &w.tree_neg).expect("all steps defined");
        assert!((pos.area - 2.0 * std::f64::consts::PI).abs() < 1e-9);
        assert!((neg.area + 2.0 * std::f64::consts::PI).abs() < 1e-9);
        // both evaluations run from x₁ to x₇
        let xs = tetrahedron_configuration();
        assert!(pos.source.chord_distance(&xs[0]) < 1e-12);
        assert!(pos.target.chord_distance(&xs[6]) < 1e-12);
    }

    #[test]
    fn frozen_second_factor_reduces_to_windowed_groupoid() {
        let lambda = 0.37;
        let gp = ProductSphereGroupoid::new(lambda);
        let gw = WindowedSphereGroupoid::default();
        let n = SpherePoint::normalize([0.0, 0.0, 1.0]).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let mut checked = 0;
        while checked < 2_000 {
            let p = random_arrow_chain(&mut rng, 2);
            let a1 = rng.random::<f64>();
            let a2 = rng.random::<f64>();
            let a = SphereArrow::new(p[2], p[1], a1).unwrap();
            let b = SphereArrow::new(p[1], p[0], a2).unwrap();
            let pa = ProductArrow::new((p[2], n), (p[1], n), a1).unwrap();
            let pb = ProductArrow::new((p[1], n), (p[0], n), a2).unwrap();
            let w = gw.try_mul(&a, &b);
            let pr = gp.try_mul(&pa, &pb);
            match (w, pr) {
                (None, None) => {}
                (Some(w), Some(pr)) => {
                    checked += 1;
                    assert!((w.area - pr.area).abs() < 1e-12);
                }
                (w, pr) => panic!("definedness mismatch: {w:?} vs {pr:?}"),
            }
        }
    }

    #[test]
    fn lambda_zero_second_window_is_void() {
        let gp = ProductSphereGroupoid::new(0.0);
        // wide triangle on the second factor
        let x = SpherePoint::normalize([1.0, 0.0, 1e-3]).unwrap();
        let y = SpherePoint::normalize([-0.5, 0.867, 1e-3]).unwrap();
        let z = SpherePoint::normalize([-0.5, -0.867, 1e-3]).unwrap();
        let n = SpherePoint::normalize([0.0, 0.0, 1.0]).unwrap();
        let e = SpherePoint::normalize([1.0, 0.0, 0.0]).unwrap();
        let a = ProductArrow::new((n, z), (e, y), 0.0).unwrap();
        let b = ProductArrow::new((e, y), (n, x), 0.0).unwrap();
        assert!(gp.try_mul(&a, &b).is_some());
        let gp_coupled = ProductSphereGroupoid::new(0.9);
        assert!(gp_coupled.try_mul(&a, &b).is_none());
    }

    /// Second-factor points drawn from a spherical cap so the primed
    /// triangle areas stay within a half-period (−π, π). With the wide
    /// window (−π/|λ|, π/|λ|) and |λ| < 1, primed areas beyond π admit a
    /// genuine 4π cocycle wrap, so the associativity identity only binds
    /// on this restriction.
    #[test]
    fn product_three_associativity_sampled() {
        let gp = ProductSphereGroupoid::new(0.5);
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        let pole = SpherePoint::normalize([0.0, 0.0, 1.0]).unwrap();
        let mut cap_point = |rng: &mut ChaCha8Rng| loop {
            let p = random_sphere_point(rng);
            if p.chord_distance(&pole) < 0.6 {
                return p;
            }
        };
        let mut checked = 0;
        while checked < 10_000 {
            let p = random_arrow_chain(&mut rng, 3);
            let q: Vec<SpherePoint> = (0..4).map(|_| cap_point(&mut rng)).collect();
            let a = ProductArrow::new((p[3], q[3]), (p[2], q[2]), rng.random::<f64>()).unwrap();
            let b = ProductArrow::new((p[2], q[2]), (p[1], q[1]), rng.random::<f64>()).unwrap();
            let c = ProductArrow::new((p[1], q[1]), (p[0], q[0]), rng.random::<f64>()).unwrap();
            let Some(ab) = gp.try_mul(&a, &b) else { continue };
            let Some(bc) = gp.try_mul(&b, &c) else { continue };
            let (Some(l), Some(r)) = (gp.try_mul(&ab, &c), gp.try_mul(&a, &bc)) else {
                continue;
            };
            checked += 1;
            assert!((l.area - r.area).abs() < 1e-9);
        }
    }

    #[test]
    fn frozen_tetrahedron_labeling_is_the_search_result() {
        // re-run the labeling search the fixture was frozen from: over
        // all 24 vertex assignments, the first that makes the two
        // bracketings evaluate to (+2π, −2π) must be the shipped one.
        let g = WindowedSphereGroupoid::default();
        let s = 3f64.sqrt().recip();
        let verts = [
            SpherePoint::normalize([s, s, s]).unwrap(),
            SpherePoint::normalize([s, -s, -s]).unwrap(),
            SpherePoint::normalize([-s, s, -s]).unwrap(),
            SpherePoint::normalize([-s, -s, s]).unwrap(),
        ];
        let w = tetrahedron_witness();
        let mut perms = Vec::new();
        let idx = [0usize, 1, 2, 3];
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [idx[a], idx[b], idx[c], idx[d]];
                        let mut q = p;
                        q.sort_unstable();
                        if q == [0, 1, 2, 3] {
                            perms.push(p);
                        }
                    }
                }
            }
        }
        let mut first_hit = None;
        for p in &perms {
            let odd = [verts[p[0]], verts[p[1]], verts[p[2]], verts[p[3]]];
            let mids = [
                crate::geometry::geodesic_midpoint(&odd[0], &odd[1]).unwrap(),
                crate::geometry::geodesic_midpoint(&odd[1], &odd[2]).unwrap(),
                crate::geometry::geodesic_midpoint(&odd[2], &odd[3]).unwrap(),
            ];
            let xs = [odd[0], mids[0], odd[1], mids[1], odd[2], mids[2], odd[3]];
            let arrow = |i: usize| SphereArrow {
                target: xs[i + 1],
                source: xs[i],
                area: 0.0,
            };
            let letters = [arrow(5), arrow(4), arrow(3), arrow(2), arrow(1), arrow(0)];
            let pos = evaluate(&g, &letters, &w.tree_pos);
            let neg = evaluate(&g, &letters, &w.tree_neg);
            if let (Some(pos), Some(neg)) = (pos, neg) {
                if (pos.area - 2.0 * PI).abs() < 1e-9 && (neg.area + 2.0 * PI).abs() < 1e-9 {
                    first_hit = Some(*p);
                    break;
                }
            }
        }
        assert_eq!(first_hit, Some([0, 1, 2, 3]), "frozen labeling drifted");
    }
}
