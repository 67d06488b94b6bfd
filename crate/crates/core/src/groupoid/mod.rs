//! The partial-groupoid contract and finite table-backed groupoids.
//!
//! A *local* groupoid has multiplication and inversion defined only on
//! part of the composable pairs. The [`Groupoid`] trait captures the
//! capability set shared by finite tables and parametric families:
//! source/target maps, units, partial multiplication, partial inversion,
//! and (tolerance-aware) element equality.

mod assoc;
mod finite;
mod io;

pub use assoc::{is_n_associative, is_n_associative_exhaustive, AssociativityWitness};
pub use finite::{
    make_3_associative, validate, BuildError, ElementRecord, FiniteLocalGroupoid,
    RestrictError, ValidationReport, Violation,
};
pub use io::{load, load_strict, save, to_canonical_json, LoadError};

use std::fmt::Debug;
use std::hash::Hash;

/// Capability contract for local groupoids, finite or parametric.
///
/// Multiplication and inversion are partial: `try_mul` and `try_inv`
/// return `None` outside their domains. Equality of elements goes
/// through the groupoid so that parametric implementations can compare
/// with a tolerance while finite ones compare ids.
pub trait Groupoid {
    type Object: Clone + Debug;
    type Element: Clone + Debug;
    /// Hashable proxy for an element, used to bucket visited sets in
    /// searches. Keys of equal elements must collide (coordinates are
    /// rounded to a grid coarser than the equality tolerance).
    type Key: Clone + Debug + Eq + Hash + Ord;

    fn source(&self, g: &Self::Element) -> Self::Object;
    fn target(&self, g: &Self::Element) -> Self::Object;
    fn unit(&self, x: &Self::Object) -> Self::Element;
    fn try_mul(&self, g: &Self::Element, h: &Self::Element) -> Option<Self::Element>;
    fn try_inv(&self, g: &Self::Element) -> Option<Self::Element>;
    fn elements_equal(&self, g: &Self::Element, h: &Self::Element) -> bool;
    fn objects_equal(&self, x: &Self::Object, y: &Self::Object) -> bool;
    fn element_key(&self, g: &Self::Element) -> Self::Key;

    /// True if `source(g) = target(h)`, i.e. the word `(g, h)` is
    /// well-formed (not necessarily multipliable).
    fn composable(&self, g: &Self::Element, h: &Self::Element) -> bool {
        self.objects_equal(&self.source(g), &self.target(h))
    }

    fn is_unit(&self, g: &Self::Element) -> bool {
        let s = self.source(g);
        self.objects_equal(&s, &self.target(g)) && self.elements_equal(g, &self.unit(&s))
    }
}

/// Extra surface for groupoids whose objects and elements can be listed,
/// enabling exhaustive checks.
pub trait EnumerableGroupoid: Groupoid {
    fn all_objects(&self) -> Vec<Self::Object>;
    fn all_elements(&self) -> Vec<Self::Element>;
}
