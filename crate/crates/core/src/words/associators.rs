//! Associator detection: words that evaluate, under different
//! parenthesizations, both to a unit and to a nontrivial isotropy
//! element.

use crate::groupoid::Groupoid;

use super::{ParenTree, Word, MAX_TREE_LEAVES};

/// A word witnessing an associator `g` at base object `x`: it evaluates
/// to `unit(x)` under `tree_unit` and to `g ≠ unit(x)` under `tree_g`.
#[derive(Debug, Clone)]
pub struct AssociatorRecord<O, E> {
    pub base: O,
    pub word: Word<E>,
    pub tree_unit: ParenTree,
    pub tree_g: ParenTree,
    pub g: E,
}

/// All values a word can evaluate to, together with one representative
/// tree per value, via dynamic programming over subranges. Covers every
/// parenthesization without enumerating the Catalan-many trees.
pub fn parenthesization_values<G: Groupoid>(
    g: &G,
    word: &[G::Element],
) -> Vec<(G::Element, ParenTree)> {
    let n = word.len();
    assert!(n >= 1);
    // table[i][j] = values of word[i..i+j+1]
    let mut table: Vec<Vec<Vec<(G::Element, ParenTree)>>> = vec![vec![Vec::new(); n]; n];
    for (i, letter) in word.iter().enumerate() {
        table[i][0].push((letter.clone(), ParenTree::Leaf));
    }
    for span in 1..n {
        for i in 0..n - span {
            let mut cell: Vec<(G::Element, ParenTree)> = Vec::new();
            for split in 0..span {
                // left = word[i..i+split+1], right = word[i+split+1..i+span+1]
                let left = table[i][split].clone();
                let right = table[i + split + 1][span - split - 1].clone();
                for (lv, lt) in &left {
                    for (rv, rt) in &right {
                        if let Some(v) = g.try_mul(lv, rv) {
                            if !cell.iter().any(|(u, _)| g.elements_equal(u, &v)) {
                                cell.push((v, ParenTree::node(lt.clone(), rt.clone())));
                            }
                        }
                    }
                }
            }
            table[i][span] = cell;
        }
    }
    table[0].swap_remove(n - 1)
}

/// Enumerates well-formed words over `alphabet` that start and end at
/// `base`, up to `max_len` letters, and records every word that
/// bi-evaluates to the unit at `base` and to some other isotropy
/// element. Records are deduplicated by element equality of `g`, first
/// find wins; enumeration order is fixed by the alphabet order, so the
/// result is deterministic.
pub fn find_associators<G: Groupoid>(
    g: &G,
    alphabet: &[G::Element],
    max_len: usize,
    base: &G::Object,
) -> Vec<AssociatorRecord<G::Object, G::Element>> {
    assert!(
        max_len <= MAX_TREE_LEAVES,
        "max_len is capped at {MAX_TREE_LEAVES}"
    );
    let unit = g.unit(base);
    let mut records: Vec<AssociatorRecord<G::Object, G::Element>> = Vec::new();
    let mut stack: Vec<G::Element> = Vec::new();
    // words are built left to right: the first letter's target is the
    // base, each later letter's target matches the previous source, and
    // the final letter's source must return to the base.
    fn extend<G: Groupoid>(
        g: &G,
        alphabet: &[G::Element],
        max_len: usize,
        base: &G::Object,
        unit: &G::Element,
        stack: &mut Vec<G::Element>,
        records: &mut Vec<AssociatorRecord<G::Object, G::Element>>,
    ) {
        if !stack.is_empty() && g.objects_equal(&g.source(stack.last().unwrap()), base) {
            harvest(g, base, unit, stack, records);
        }
        if stack.len() == max_len {
            return;
        }
        let want_target = match stack.last() {
            Some(prev) => g.source(prev),
            None => base.clone(),
        };
        for letter in alphabet {
            if g.objects_equal(&g.target(letter), &want_target) {
                stack.push(letter.clone());
                extend(g, alphabet, max_len, base, unit, stack, records);
                stack.pop();
            }
        }
    }
    fn harvest<G: Groupoid>(
        g: &G,
        base: &G::Object,
        unit: &G::Element,
        stack: &[G::Element],
        records: &mut Vec<AssociatorRecord<G::Object, G::Element>>,
    ) {
        if stack.len() < 3 {
            return;
        }
        let values = parenthesization_values(g, stack);
        let Some((_, tree_unit)) = values.iter().find(|(v, _)| g.elements_equal(v, unit)) else {
            return;
        };
        for (v, tree) in &values {
            if g.elements_equal(v, unit) {
                continue;
            }
            if records.iter().any(|r| g.elements_equal(&r.g, v)) {
                continue;
            }
            records.push(AssociatorRecord {
                base: base.clone(),
                word: Word::from_letters_unchecked(stack.to_vec()),
                tree_unit: tree_unit.clone(),
                tree_g: tree.clone(),
                g: v.clone(),
            });
        }
    }
    extend(g, alphabet, max_len, base, &unit, &mut stack, &mut records);
    records
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::FiniteLocalGroupoid;
    use crate::words::{enumerate_paren_trees, evaluate};

    #[test]
    fn dp_matches_tree_enumeration() {
        let g = FiniteLocalGroupoid::integer_interval(4);
        let ids = ["2", "2", "-1", "1", "-3"];
        let word: Vec<usize> = ids.iter().map(|s| g.element_by_id(s).unwrap()).collect();
        let dp: Vec<usize> = parenthesization_values(&g, &word)
            .into_iter()
            .map(|(v, _)| v)
            .collect();
        let mut brute: Vec<usize> = Vec::new();
        for tree in enumerate_paren_trees(word.len()).unwrap() {
            if let Some(v) = evaluate(&g, &word, &tree) {
                if !brute.contains(&v) {
                    brute.push(v);
                }
            }
        }
        let mut dp_sorted = dp.clone();
        dp_sorted.sort_unstable();
        let mut brute_sorted = brute.clone();
        brute_sorted.sort_unstable();
        assert_eq!(dp_sorted, brute_sorted);
    }

    #[test]
    fn dp_trees_replay_to_their_values() {
        let g = FiniteLocalGroupoid::integer_interval(4);
        let ids = ["3", "2", "-4", "2", "1"];
        let word: Vec<usize> = ids.iter().map(|s| g.element_by_id(s).unwrap()).collect();
        for (v, tree) in parenthesization_values(&g, &word) {
            assert_eq!(evaluate(&g, &word, &tree), Some(v));
        }
    }

    #[test]
    fn globally_associative_group_has_no_associators() {
        let g = FiniteLocalGroupoid::cyclic_group(5);
        let alphabet: Vec<usize> = (0..5).collect();
        let records = find_associators(&g, &alphabet, 6, &0);
        assert!(
            records.is_empty(),
            "Z5 is a group, associators must be trivial"
        );
    }
}
