//! Simplicial maps from a good complex into the 2-truncated nerve of a
//! groupoid, and the constructive bridge between word equivalence and
//! such maps: a rewrite path from one word to another builds a complex
//! on which both appear as boundary words.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::groupoid::Groupoid;
use crate::words::{RewriteStep, Word};

use super::{GoodComplex, Label};

/// A simplicial map into the nerve: vertices go to objects, edges to
/// elements, and each face must commute (the long edge carries the
/// product of the two short ones).
#[derive(Debug, Clone)]
pub struct NerveMap<G: Groupoid> {
    pub vertex_objects: BTreeMap<Label, G::Object>,
    pub edge_elements: BTreeMap<(Label, Label), G::Element>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum MapError {
    #[error("vertex {0} has no assigned object")]
    MissingVertex(Label),
    #[error("edge ({0}, {1}) has no assigned element")]
    MissingEdge(Label, Label),
    #[error("edge ({0}, {1}) endpoints disagree with its element")]
    EdgeEndpoints(Label, Label),
    #[error("face ({0}, {1}, {2}) does not commute in the nerve")]
    FaceProduct(Label, Label, Label),
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PathError {
    #[error("step {0} does not apply to the current word")]
    BadStep(usize),
    #[error("step {0}: complex move failed: {1}")]
    BadMove(usize, super::MoveError),
}

impl<G: Groupoid> NerveMap<G> {
    /// Checks the simplicial-map conditions against a complex.
    pub fn validate(&self, complex: &GoodComplex, g: &G) -> Result<(), MapError> {
        for &v in complex.vertices() {
            if !self.vertex_objects.contains_key(&v) {
                return Err(MapError::MissingVertex(v));
            }
        }
        for &(u, w) in complex.edges() {
            let Some(e) = self.edge_elements.get(&(u, w)) else {
                return Err(MapError::MissingEdge(u, w));
            };
            let su = &self.vertex_objects[&u];
            let tw = &self.vertex_objects[&w];
            if !g.objects_equal(&g.source(e), su) || !g.objects_equal(&g.target(e), tw) {
                return Err(MapError::EdgeEndpoints(u, w));
            }
        }
        for &(u, v, w) in complex.faces() {
            let lower = &self.edge_elements[&(u, v)];
            let upper = &self.edge_elements[&(v, w)];
            let long = &self.edge_elements[&(u, w)];
            match g.try_mul(upper, lower) {
                Some(p) if g.elements_equal(&p, long) => {}
                _ => return Err(MapError::FaceProduct(u, v, w)),
            }
        }
        Ok(())
    }
}

/// Reads one well-formed word per boundary path: the letter order is
/// target-first, so the last edge of a path contributes the first
/// letter.
pub fn boundary_words<G: Groupoid>(
    map: &NerveMap<G>,
    complex: &GoodComplex,
    g: &G,
) -> Result<Vec<Word<G::Element>>, MapError> {
    map.validate(complex, g)?;
    let mut words = Vec::new();
    for path in complex.boundary_paths() {
        let mut letters = Vec::with_capacity(path.len() - 1);
        for pair in path.windows(2).rev() {
            letters.push(map.edge_elements[&(pair[0], pair[1])].clone());
        }
        words.push(Word::from_letters_unchecked(letters));
    }
    Ok(words)
}

/// Replays a rewrite path from `w1`, building the good complex and
/// nerve map it traces out: the start word and the final word are both
/// boundary words of the result.
///
/// The frontier invariant: after i steps the current word is carried by
/// a monotone boundary path, letter j on the edge between frontier
/// positions `len−1−j` and `len−j`.
pub fn realize_equivalence<G: Groupoid>(
    g: &G,
    w1: &Word<G::Element>,
    steps: &[RewriteStep<G::Element>],
) -> Result<(GoodComplex, NerveMap<G>), PathError> {
    let n = w1.len() as u32;
    let mut complex = GoodComplex::edge_chain(n);
    let mut word: Vec<G::Element> = w1.letters().to_vec();
    let mut frontier: Vec<Label> = (0..=i64::from(n)).map(Label::integer).collect();

    let mut map = NerveMap::<G> {
        vertex_objects: BTreeMap::new(),
        edge_elements: BTreeMap::new(),
    };
    // object chain: frontier vertex j sits under the source of letter
    // len−j (equivalently, the target of letter len−1−j)
    map.vertex_objects
        .insert(frontier[0], g.source(word.last().expect("nonempty word")));
    for j in 1..frontier.len() {
        let letter = &word[word.len() - j];
        map.vertex_objects.insert(frontier[j], g.target(letter));
    }
    for (j, pair) in frontier.windows(2).enumerate() {
        let letter = word[word.len() - 1 - j].clone();
        map.edge_elements.insert((pair[0], pair[1]), letter);
    }

    for (i, step) in steps.iter().enumerate() {
        match step {
            RewriteStep::Expansion { position, factors } => {
                let j = *position;
                if j >= word.len() {
                    return Err(PathError::BadStep(i));
                }
                let factors_ok = g
                    .try_mul(&factors.0, &factors.1)
                    .is_some_and(|p| g.elements_equal(&p, &word[j]));
                if !factors_ok {
                    return Err(PathError::BadStep(i));
                }
                let len = word.len();
                let u = frontier[len - 1 - j];
                let w = frontier[len - j];
                complex = complex.expand(u, w).map_err(|e| PathError::BadMove(i, e))?;
                let inserted = match complex.log().last() {
                    Some(super::Move::Expand { inserted, .. }) => *inserted,
                    _ => unreachable!("expand appends an expand move"),
                };
                // the source-side factor lands on the lower edge
                map.vertex_objects.insert(inserted, g.target(&factors.1));
                map.edge_elements.insert((u, inserted), factors.1.clone());
                map.edge_elements.insert((inserted, w), factors.0.clone());
                frontier.insert(len - j, inserted);
                word.splice(j..=j, [factors.0.clone(), factors.1.clone()]);
            }
            RewriteStep::Contraction { position } => {
                let j = *position;
                if j + 1 >= word.len() {
                    return Err(PathError::BadStep(i));
                }
                let prod = g
                    .try_mul(&word[j], &word[j + 1])
                    .ok_or(PathError::BadStep(i))?;
                let len = word.len();
                let u = frontier[len - 2 - j];
                let v = frontier[len - 1 - j];
                let w = frontier[len - j];
                complex = complex
                    .contract(u, v, w)
                    .map_err(|e| PathError::BadMove(i, e))?;
                map.edge_elements.insert((u, w), prod.clone());
                frontier.remove(len - 1 - j);
                word.splice(j..=j + 1, [prod]);
            }
        }
    }
    Ok((complex, map))
}
