//! Word calculus over a groupoid: well-formed words, full binary
//! parenthesization trees, and bottom-up evaluation.
//!
//! A word `(w₁, …, wₙ)` is well-formed when `source(wᵢ) = target(wᵢ₊₁)`
//! for all `i`; evaluation composes right-to-left, so the first letter
//! carries the target of the whole word and the last letter its source.

mod ac;
mod associators;
mod rewrite;

pub use ac::{ac_explore, ac_partition, AcClass, AcReport};
pub use associators::{find_associators, parenthesization_values, AssociatorRecord};
pub use rewrite::{
    apply, equivalence_search, is_expand_then_contract, replay, AlphabetExpansions,
    ExpansionSource, FiniteExpansions, MonotoneCertificate, RewriteStep, SearchLimits,
    SearchOutcome,
};

use thiserror::Error;

use crate::groupoid::Groupoid;

/// Longest word/tuple length for which all parenthesizations are
/// enumerated (Catalan(11) = 58786 trees).
pub const MAX_TREE_LEAVES: usize = 12;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WordError {
    #[error("words must be nonempty")]
    Empty,
    #[error("letters {0} and {1} are not composable (source ≠ target)")]
    NotComposable(usize, usize),
    #[error("parenthesization enumeration is capped at {MAX_TREE_LEAVES} leaves, got {0}")]
    TooLong(usize),
}

/// A nonempty sequence of groupoid elements with matching
/// source/target chain.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word<E> {
    letters: Vec<E>,
}

impl<E: Clone> Word<E> {
    /// Builds a word, checking nonemptiness and the chain condition.
    pub fn new<G>(g: &G, letters: Vec<E>) -> Result<Self, WordError>
    where
        G: Groupoid<Element = E>,
    {
        if letters.is_empty() {
            return Err(WordError::Empty);
        }
        for i in 0..letters.len() - 1 {
            if !g.composable(&letters[i], &letters[i + 1]) {
                return Err(WordError::NotComposable(i, i + 1));
            }
        }
        Ok(Self { letters })
    }

    /// Wraps letters already known to chain correctly.
    pub fn from_letters_unchecked(letters: Vec<E>) -> Self {
        debug_assert!(!letters.is_empty());
        Self { letters }
    }

    pub fn letters(&self) -> &[E] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }
}

/// A full binary tree describing one parenthesization of a product.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ParenTree {
    Leaf,
    Node(Box<ParenTree>, Box<ParenTree>),
}

impl ParenTree {
    pub fn leaf() -> Self {
        ParenTree::Leaf
    }

    pub fn node(left: ParenTree, right: ParenTree) -> Self {
        ParenTree::Node(Box::new(left), Box::new(right))
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ParenTree::Leaf => 1,
            ParenTree::Node(l, r) => l.leaf_count() + r.leaf_count(),
        }
    }

    /// Renders the parenthesization over the given leaf labels,
    /// e.g. `((a b) c)`.
    pub fn render(&self, labels: &[&str]) -> String {
        fn go(t: &ParenTree, labels: &[&str], next: &mut usize, out: &mut String) {
            match t {
                ParenTree::Leaf => {
                    out.push_str(labels[*next]);
                    *next += 1;
                }
                ParenTree::Node(l, r) => {
                    out.push('(');
                    go(l, labels, next, out);
                    out.push(' ');
                    go(r, labels, next, out);
                    out.push(')');
                }
            }
        }
        assert_eq!(self.leaf_count(), labels.len());
        let mut out = String::new();
        let mut next = 0;
        go(self, labels, &mut next, &mut out);
        out
    }
}

/// All parenthesization trees over `n` leaves, in a fixed deterministic
/// order (left subtree size ascending, then recursively). Returns
/// exactly Catalan(n−1) trees.
pub fn enumerate_paren_trees(n: usize) -> Result<Vec<ParenTree>, WordError> {
    if n == 0 {
        return Err(WordError::Empty);
    }
    if n > MAX_TREE_LEAVES {
        return Err(WordError::TooLong(n));
    }
    fn build(n: usize, memo: &mut Vec<Option<Vec<ParenTree>>>) -> Vec<ParenTree> {
        if let Some(v) = &memo[n] {
            return v.clone();
        }
        let out = if n == 1 {
            vec![ParenTree::Leaf]
        } else {
            let mut out = Vec::new();
            for left in 1..n {
                let ls = build(left, memo);
                let rs = build(n - left, memo);
                for l in &ls {
                    for r in &rs {
                        out.push(ParenTree::node(l.clone(), r.clone()));
                    }
                }
            }
            out
        };
        memo[n] = Some(out.clone());
        out
    }
    let mut memo = vec![None; n + 1];
    Ok(build(n, &mut memo))
}

/// Evaluates `word` bottom-up along `tree`; `None` as soon as any
/// partial product is undefined.
pub fn evaluate<G: Groupoid>(
    g: &G,
    word: &[G::Element],
    tree: &ParenTree,
) -> Option<G::Element> {
    assert_eq!(
        tree.leaf_count(),
        word.len(),
        "tree leaf count must match word length"
    );
    fn go<G: Groupoid>(g: &G, word: &[G::Element], tree: &ParenTree) -> Option<G::Element> {
        match tree {
            ParenTree::Leaf => Some(word[0].clone()),
            ParenTree::Node(l, r) => {
                let nl = l.leaf_count();
                let lv = go(g, &word[..nl], l)?;
                let rv = go(g, &word[nl..], r)?;
                g.try_mul(&lv, &rv)
            }
        }
    }
    go(g, word, tree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteLocalGroupoid;

    #[test]
    fn catalan_counts() {
        assert_eq!(enumerate_paren_trees(1).unwrap().len(), 1);
        assert_eq!(enumerate_paren_trees(3).unwrap().len(), 2);
        assert_eq!(enumerate_paren_trees(4).unwrap().len(), 5);
        assert_eq!(enumerate_paren_trees(8).unwrap().len(), 429);
        assert_eq!(enumerate_paren_trees(13), Err(WordError::TooLong(13)));
    }

    #[test]
    fn trees_are_distinct() {
        let trees = enumerate_paren_trees(6).unwrap();
        let mut set = std::collections::HashSet::new();
        for t in &trees {
            assert_eq!(t.leaf_count(), 6);
            assert!(set.insert(t.clone()), "duplicate tree");
        }
    }

    #[test]
    fn single_letter_word_evaluates_to_itself() {
        let g = FiniteLocalGroupoid::cyclic_group(5);
        let w = [g.element_by_id("3").unwrap()];
        assert_eq!(evaluate(&g, &w, &ParenTree::Leaf), Some(w[0]));
    }

    #[test]
    fn evaluation_stops_on_undefined_products() {
        let g = FiniteLocalGroupoid::integer_interval(4);
        let four = g.element_by_id("4").unwrap();
        let word = [four, four];
        let tree = ParenTree::node(ParenTree::leaf(), ParenTree::leaf());
        assert_eq!(evaluate(&g, &word, &tree), None);
    }

    #[test]
    fn render_shows_bracketing() {
        let t = ParenTree::node(
            ParenTree::node(ParenTree::leaf(), ParenTree::leaf()),
            ParenTree::leaf(),
        );
        assert_eq!(t.render(&["a", "b", "c"]), "((a b) c)");
    }
}
