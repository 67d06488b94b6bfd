//! Degrees of associativity: a groupoid is associative to order n when
//! every defined m-fold product (3 ≤ m ≤ n) of a tuple is independent of
//! parenthesization. Local structures can fail this even when the unit
//! and inversion laws hold.

use crate::words::{enumerate_paren_trees, evaluate, ParenTree};

use super::{EnumerableGroupoid, Groupoid};

/// Two defined evaluations of the same tuple that disagree.
#[derive(Debug, Clone)]
pub struct AssociativityWitness<E> {
    pub tuple: Vec<E>,
    pub tree_a: ParenTree,
    pub tree_b: ParenTree,
    pub value_a: E,
    pub value_b: E,
}

/// Checks the supplied tuples (lengths between 3 and `n`) against every
/// parenthesization; returns the first witness where two defined
/// evaluations differ. Tuples outside the length range or with broken
/// source/target chains are skipped.
pub fn is_n_associative<G: Groupoid>(
    g: &G,
    n: usize,
    tuples: &[Vec<G::Element>],
) -> Option<AssociativityWitness<G::Element>> {
    assert!((3..=10).contains(&n), "order must be in 3..=10, got {n}");
    for tuple in tuples {
        let m = tuple.len();
        if !(3..=n).contains(&m) || !chain_ok(g, tuple) {
            continue;
        }
        if let Some(w) = check_tuple(g, tuple) {
            return Some(w);
        }
    }
    None
}

/// Exhaustive check over every composable m-tuple, 3 ≤ m ≤ n, in
/// lexicographic element order.
pub fn is_n_associative_exhaustive<G: EnumerableGroupoid>(
    g: &G,
    n: usize,
) -> Option<AssociativityWitness<G::Element>> {
    assert!((3..=10).contains(&n), "order must be in 3..=10, got {n}");
    let elements = g.all_elements();
    for m in 3..=n {
        let mut tuple: Vec<G::Element> = Vec::with_capacity(m);
        if let Some(w) = extend_and_check(g, &elements, m, &mut tuple) {
            return Some(w);
        }
    }
    None
}

fn extend_and_check<G: Groupoid>(
    g: &G,
    elements: &[G::Element],
    m: usize,
    tuple: &mut Vec<G::Element>,
) -> Option<AssociativityWitness<G::Element>> {
    if tuple.len() == m {
        return check_tuple(g, tuple);
    }
    for e in elements {
        if let Some(prev) = tuple.last() {
            if !g.composable(prev, e) {
                continue;
            }
        }
        tuple.push(e.clone());
        let found = extend_and_check(g, elements, m, tuple);
        tuple.pop();
        if found.is_some() {
            return found;
        }
    }
    None
}

fn chain_ok<G: Groupoid>(g: &G, tuple: &[G::Element]) -> bool {
    tuple.windows(2).all(|w| g.composable(&w[0], &w[1]))
}

fn check_tuple<G: Groupoid>(
    g: &G,
    tuple: &[G::Element],
) -> Option<AssociativityWitness<G::Element>> {
    let trees = enumerate_paren_trees(tuple.len()).expect("tuple length is within tree cap");
    let mut defined: Vec<(usize, G::Element)> = Vec::new();
    for (i, tree) in trees.iter().enumerate() {
        if let Some(v) = evaluate(g, tuple, tree) {
            for (j, earlier) in &defined {
                if !g.elements_equal(earlier, &v) {
                    return Some(AssociativityWitness {
                        tuple: tuple.to_vec(),
                        tree_a: trees[*j].clone(),
                        tree_b: tree.clone(),
                        value_a: earlier.clone(),
                        value_b: v,
                    });
                }
            }
            defined.push((i, v));
        }
    }
    None
}
