//! Contraction/expansion rewriting of words and bounded search over the
//! rewrite graph.
//!
//! A contraction replaces an adjacent multipliable pair by its product;
//! an expansion is the inverse move. Two words are equivalent when a
//! chain of such moves connects them. Equivalence is only semi-decidable
//! at bounded depth, so searches return `Unknown` rather than a negative.

use std::collections::{HashMap, VecDeque};

use crate::groupoid::{FiniteLocalGroupoid, Groupoid};

use super::Word;

/// One elementary rewrite. Positions index the letter sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RewriteStep<E> {
    /// Replace `(w[i], w[i+1])` by their product.
    Contraction { position: usize },
    /// Replace `w[i]` by the pair `factors`, whose product must equal it.
    Expansion { position: usize, factors: (E, E) },
}

/// Applies one step; `None` if the step does not apply at this word.
pub fn apply<G: Groupoid>(
    g: &G,
    word: &Word<G::Element>,
    step: &RewriteStep<G::Element>,
) -> Option<Word<G::Element>> {
    let letters = word.letters();
    match step {
        RewriteStep::Contraction { position } => {
            let i = *position;
            if i + 1 >= letters.len() {
                return None;
            }
            let prod = g.try_mul(&letters[i], &letters[i + 1])?;
            let mut out = Vec::with_capacity(letters.len() - 1);
            out.extend_from_slice(&letters[..i]);
            out.push(prod);
            out.extend_from_slice(&letters[i + 2..]);
            Some(Word::from_letters_unchecked(out))
        }
        RewriteStep::Expansion { position, factors } => {
            let i = *position;
            if i >= letters.len() {
                return None;
            }
            let prod = g.try_mul(&factors.0, &factors.1)?;
            if !g.elements_equal(&prod, &letters[i]) {
                return None;
            }
            let mut out = Vec::with_capacity(letters.len() + 1);
            out.extend_from_slice(&letters[..i]);
            out.push(factors.0.clone());
            out.push(factors.1.clone());
            out.extend_from_slice(&letters[i + 1..]);
            Some(Word::from_letters_unchecked(out))
        }
    }
}

/// Supplier of factorizations `g·h = e` used to enumerate expansions.
///
/// Parametric groupoids have continuum-many factorizations, so their
/// expansions are drawn from a caller-supplied finite alphabet; finite
/// groupoids can afford the full reverse-multiplication index.
pub trait ExpansionSource<G: Groupoid> {
    fn factorizations(&self, g: &G, of: &G::Element) -> Vec<(G::Element, G::Element)>;
}

/// Full reverse index of a finite multiplication table.
pub struct FiniteExpansions {
    by_product: HashMap<usize, Vec<(usize, usize)>>,
}

impl FiniteExpansions {
    pub fn new(g: &FiniteLocalGroupoid) -> Self {
        let mut by_product: HashMap<usize, Vec<(usize, usize)>> = HashMap::new();
        for (&(a, b), &ab) in g.mul_table() {
            by_product.entry(ab).or_default().push((a, b));
        }
        for v in by_product.values_mut() {
            v.sort_unstable();
        }
        Self { by_product }
    }
}

impl ExpansionSource<FiniteLocalGroupoid> for FiniteExpansions {
    fn factorizations(&self, _g: &FiniteLocalGroupoid, of: &usize) -> Vec<(usize, usize)> {
        self.by_product.get(of).cloned().unwrap_or_default()
    }
}

/// Expansions restricted to pairs from a fixed letter list (callers
/// usually pass fixture letters plus their inverses).
pub struct AlphabetExpansions<E> {
    letters: Vec<E>,
}

impl<E: Clone> AlphabetExpansions<E> {
    pub fn new(letters: Vec<E>) -> Self {
        Self { letters }
    }
}

impl<G: Groupoid> ExpansionSource<G> for AlphabetExpansions<G::Element> {
    fn factorizations(&self, g: &G, of: &G::Element) -> Vec<(G::Element, G::Element)> {
        let mut out = Vec::new();
        for a in &self.letters {
            for b in &self.letters {
                if let Some(p) = g.try_mul(a, b) {
                    if g.elements_equal(&p, of) {
                        out.push((a.clone(), b.clone()));
                    }
                }
            }
        }
        out
    }
}

/// Bounds for rewrite-graph searches.
#[derive(Debug, Clone, Copy)]
pub struct SearchLimits {
    /// Longest word the search may visit.
    pub max_len: usize,
    /// Budget of visited words before giving up.
    pub max_steps: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome<E> {
    /// A replayable step path transforming the first word into the second.
    Equivalent(Vec<RewriteStep<E>>),
    /// Not found within the limits; the relation is only semi-decidable.
    Unknown,
}

/// Visited-set bucketing: words keyed by their letter keys, compared
/// exactly (with the groupoid's tolerance) inside a bucket so that grid
/// collisions never merge distinct words.
struct Visited<G: Groupoid> {
    buckets: HashMap<Vec<G::Key>, Vec<usize>>,
    words: Vec<Word<G::Element>>,
    /// parent word index and the step that produced this word from it
    parents: Vec<Option<(usize, RewriteStep<G::Element>)>>,
}

impl<G: Groupoid> Visited<G> {
    fn new() -> Self {
        Self {
            buckets: HashMap::new(),
            words: Vec::new(),
            parents: Vec::new(),
        }
    }

    fn key(g: &G, w: &Word<G::Element>) -> Vec<G::Key> {
        w.letters().iter().map(|e| g.element_key(e)).collect()
    }

    fn find(&self, g: &G, w: &Word<G::Element>) -> Option<usize> {
        let key = Self::key(g, w);
        let bucket = self.buckets.get(&key)?;
        bucket
            .iter()
            .copied()
            .find(|&i| words_equal(g, &self.words[i], w))
    }

    /// Inserts if absent; returns (index, inserted).
    fn insert(
        &mut self,
        g: &G,
        w: Word<G::Element>,
        parent: Option<(usize, RewriteStep<G::Element>)>,
    ) -> (usize, bool) {
        if let Some(i) = self.find(g, &w) {
            return (i, false);
        }
        let key = Self::key(g, &w);
        let idx = self.words.len();
        self.buckets.entry(key).or_default().push(idx);
        self.words.push(w);
        self.parents.push(parent);
        (idx, true)
    }

    fn path_to_root(&self, mut idx: usize) -> Vec<(usize, RewriteStep<G::Element>)> {
        let mut out = Vec::new();
        while let Some((p, step)) = &self.parents[idx] {
            out.push((*p, step.clone()));
            idx = *p;
        }
        out
    }
}

fn words_equal<G: Groupoid>(g: &G, a: &Word<G::Element>, b: &Word<G::Element>) -> bool {
    a.len() == b.len()
        && a.letters()
            .iter()
            .zip(b.letters())
            .all(|(x, y)| g.elements_equal(x, y))
}

/// All single-step neighbors of a word, in deterministic order:
/// contractions by position, then expansions by position and
/// factorization order.
fn neighbors<G: Groupoid, X: ExpansionSource<G>>(
    g: &G,
    exp: &X,
    word: &Word<G::Element>,
    max_len: usize,
  ) -> Vec<(RewriteStep<G::Element>, Word<G::Element>)> {
    let mut out = Vec::new();
    if word.len() >= 2 {
        for i in 0..word.len() - 1 {
            let step = RewriteStep::Contraction { position: i };
            if let Some(w) = apply(g, word, &step) {
                out.push((step, w));
            }
        }
    }
    if word.len() < max_len {
        for i in 0..word.len() {
            for factors in exp.factorizations(g, &word.letters()[i]) {
                let step = RewriteStep::Expansion {
                    position: i,
                    factors: factors.clone(),
                };
                if let Some(w) = apply(g, word, &step) {
                    out.push((step, w));
                }
            }
        }
    }
    out
}

/// Inverse of a step applied at `from` yielding `to`.
fn invert_step<G: Groupoid>(
    _g: &G,
    from: &Word<G::Element>,
    step: &RewriteStep<G::Element>,
) -> RewriteStep<G::Element> {
    match step {
        RewriteStep::Contraction { position } => RewriteStep::Expansion {
            position: *position,
            factors: (
                from.letters()[*position].clone(),
                from.letters()[*position + 1].clone(),
            ),
        },
        RewriteStep::Expansion { position, .. } => RewriteStep::Contraction {
            position: *position,
        },
    }
}

/// Bidirectional breadth-first search for a rewrite path from `w1` to
/// `w2` through words of length at most `limits.max_len`.
pub fn equivalence_search<G: Groupoid, X: ExpansionSource<G>>(
    g: &G,
    exp: &X,
    w1: &Word<G::Element>,
    w2: &Word<G::Element>,
    limits: SearchLimits,
) -> SearchOutcome<G::Element> {
    if words_equal(g, w1, w2) {
        return SearchOutcome::Equivalent(Vec::new());
    }
    let mut fwd: Visited<G> = Visited::new();
    let mut bwd: Visited<G> = Visited::new();
    let (f0, _) = fwd.insert(g, w1.clone(), None);
    let (b0, _) = bwd.insert(g, w2.clone(), None);
    let mut fq = VecDeque::from([f0]);
    let mut bq = VecDeque::from([b0]);
    let mut budget = limits.max_steps;

    loop {
        if fq.is_empty() && bq.is_empty() {
            return SearchOutcome::Unknown;
        }
        if budget == 0 {
            return SearchOutcome::Unknown;
        }
        budget -= 1;
        // expand the smaller frontier first; forward on ties
        let forward = !fq.is_empty() && (bq.is_empty() || fq.len() <= bq.len());
        let meet = if forward {
            advance_frontier(g, exp, &mut fwd, &mut fq, &bwd, limits)
        } else {
            advance_frontier(g, exp, &mut bwd, &mut bq, &fwd, limits)
        };
        if let Some((this_idx, other_idx)) = meet {
            // reconstruct: w1 → meet (forward side), meet → w2 (inverted
            // backward side)
            let (f_idx, b_idx) = if forward {
                (this_idx, other_idx)
            } else {
                (other_idx, this_idx)
            };
            return SearchOutcome::Equivalent(assemble_path(g, &fwd, f_idx, &bwd, b_idx));
        }
    }
}

/// Pops one word from `queue`, inserts its neighbors into `this`, and
/// reports the first neighbor also present in `other` as
/// `(this index, other index)`.
fn advance_frontier<G: Groupoid, X: ExpansionSource<G>>(
    g: &G,
    exp: &X,
    this: &mut Visited<G>,
    queue: &mut VecDeque<usize>,
    other: &Visited<G>,
    limits: SearchLimits,
) -> Option<(usize, usize)> {
    let cur = queue.pop_front()?;
    let word = this.words[cur].clone();
    for (step, next) in neighbors(g, exp, &word, limits.max_len) {
        let (idx, inserted) = this.insert(g, next.clone(), Some((cur, step)));
        if inserted {
            queue.push_back(idx);
        }
        if let Some(other_idx) = other.find(g, &next) {
            return Some((idx, other_idx));
        }
    }
    None
}

fn assemble_path<G: Groupoid>(
    g: &G,
    fwd: &Visited<G>,
    f_idx: usize,
    bwd: &Visited<G>,
    b_idx: usize,
) -> Vec<RewriteStep<G::Element>> {
    let mut steps = Vec::new();
    let mut fw = fwd.path_to_root(f_idx);
    fw.reverse();
    for (_, step) in fw {
        steps.push(step);
    }
    // backward side: steps lead from w2 down to the meet; replay them
    // inverted, in meet→w2 order
    for (parent, step) in bwd.path_to_root(b_idx) {
        steps.push(invert_step(g, &bwd.words[parent], &step));
    }
    steps
}

/// A monotone certificate: expansions from the first word up to a peak,
/// then contractions down to the second word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MonotoneCertificate<E> {
    pub expansions: Vec<RewriteStep<E>>,
    pub contractions: Vec<RewriteStep<E>>,
}

impl<E: Clone> MonotoneCertificate<E> {
    pub fn steps(&self) -> Vec<RewriteStep<E>> {
        let mut out = self.expansions.clone();
        out.extend(self.contractions.iter().cloned());
        out
    }
}

/// Searches for a path that performs all expansions before all
/// contractions: such a path exists iff the expansion closures of the
/// two words intersect within the limits.
pub fn is_expand_then_contract<G: Groupoid, X: ExpansionSource<G>>(
    g: &G,
    exp: &X,
    w1: &Word<G::Element>,
    w2: &Word<G::Element>,
    limits: SearchLimits,
) -> Option<MonotoneCertificate<G::Element>> {
    let up1 = expansion_closure(g, exp, w1, limits);
    let mut up2: Visited<G> = Visited::new();
    let (b0, _) = up2.insert(g, w2.clone(), None);
    let mut queue = VecDeque::from([b0]);
    let mut budget = limits.max_steps;
    // check w2 itself first, then its expansion closure layer by layer
    loop {
        let Some(cur) = queue.pop_front() else {
            return None;
        };
        let word = up2.words[cur].clone();
        if let Some(meet) = up1.find(g, &word) {
            let mut expansions = Vec::new();
            let mut fw = up1.path_to_root(meet);
            fw.reverse();
            for (_, step) in fw {
                expansions.push(step);
            }
            let contractions = up2
                .path_to_root(cur)
                .into_iter()
                .map(|(parent, step)| invert_step(g, &up2.words[parent], &step))
                .collect();
            return Some(MonotoneCertificate {
                expansions,
                contractions,
            });
        }
        if budget == 0 {
            return None;
        }
        budget -= 1;
        for (step, next) in expansion_neighbors(g, exp, &word, limits.max_len) {
            let (idx, inserted) = up2.insert(g, next, Some((cur, step)));
            if inserted {
                queue.push_back(idx);
            }
        }
    }
}

fn expansion_neighbors<G: Groupoid, X: ExpansionSource<G>>(
    g: &G,
    exp: &X,
    word: &Word<G::Element>,
    max_len: usize,
) -> Vec<(RewriteStep<G::Element>, Word<G::Element>)> {
    let mut out = Vec::new();
    if word.len() < max_len {
        for i in 0..word.len() {
            for factors in exp.factorizations(g, &word.letters()[i]) {
                let step = RewriteStep::Expansion {
                    position: i,
                    factors: factors.clone(),
                };
                if let Some(w) = apply(g, word, &step) {
                    out.push((step, w));
                }
            }
        }
    }
    out
}

fn expansion_closure<G: Groupoid, X: ExpansionSource<G>>(
    g: &G,
    exp: &X,
    w: &Word<G::Element>,
    limits: SearchLimits,
) -> Visited<G> {
    let mut set: Visited<G> = Visited::new();
    let (root, _) = set.insert(g, w.clone(), None);
    let mut queue = VecDeque::from([root]);
    let mut budget = limits.max_steps;
    while let Some(cur) = queue.pop_front() {
        if budget == 0 {
            break;
        }
        budget -= 1;
        let word = set.words[cur].clone();
        for (step, next) in expansion_neighbors(g, exp, &word, limits.max_len) {
            let (idx, inserted) = set.insert(g, next, Some((cur, step)));
            if inserted {
                queue.push_back(idx);
            }
        }
    }
    set
}

/// Replays a step path, returning the final word; `None` if any step
/// fails to apply.
pub fn replay<G: Groupoid>(
    g: &G,
    start: &Word<G::Element>,
    steps: &[RewriteStep<G::Element>],
) -> Option<Word<G::Element>> {
    let mut cur = start.clone();
    for step in steps {
        cur = apply(g, &cur, step)?;
    }
    Some(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groupoid::{FiniteLocalGroupoid, Groupoid};

    fn interval() -> FiniteLocalGroupoid {
        FiniteLocalGroupoid::integer_interval(4)
    }

    fn word_of(g: &FiniteLocalGroupoid, ids: &[&str]) -> Word<usize> {
        Word::new(
            g,
            ids.iter().map(|s| g.element_by_id(s).unwrap()).collect(),
        )
        .unwrap()
    }

    fn limits() -> SearchLimits {
        SearchLimits {
            max_len: 5,
            max_steps: 200_000,
        }
    }

    #[test]
    fn contract_unit_pair() {
        let g = interval();
        let w = word_of(&g, &["3", "0"]);
        let out = apply(&g, &w, &RewriteStep::Contraction { position: 0 }).unwrap();
        assert_eq!(out.letters(), word_of(&g, &["3"]).letters());
    }

    #[test]
    fn expand_then_contract_is_identity() {
        let g = interval();
        let w = word_of(&g, &["3"]);
        let two = g.element_by_id("2").unwrap();
        let one = g.element_by_id("1").unwrap();
        let expanded = apply(
            &g,
            &w,
            &RewriteStep::Expansion {
                position: 0,
                factors: (two, one),
            },
        )
        .unwrap();
        let back = apply(&g, &expanded, &RewriteStep::Contraction { position: 0 }).unwrap();
        assert_eq!(back, w);
    }

    #[test]
    fn contraction_preserves_endpoints_and_sum() {
        let g = interval();
        let w = word_of(&g, &["2", "-3", "4"]);
        let out = apply(&g, &w, &RewriteStep::Contraction { position: 0 }).unwrap();
        assert_eq!(g.source(out.letters().last().unwrap()), 0);
        let sum: i64 = out
            .letters()
            .iter()
            .map(|&e| g.element_id(e).parse::<i64>().unwrap())
            .sum();
        assert_eq!(sum, 3);
    }

    #[test]
    fn search_finds_paper_style_example() {
        let g = interval();
        let exp = FiniteExpansions::new(&g);
        let w1 = word_of(&g, &["2", "2", "-1"]);
        let w2 = word_of(&g, &["3"]);
        match equivalence_search(&g, &exp, &w1, &w2, limits()) {
            SearchOutcome::Equivalent(path) => {
                assert_eq!(replay(&g, &w1, &path).unwrap(), w2);
            }
            SearchOutcome::Unknown => panic!("expected a path"),
        }
    }

    #[test]
    fn different_sums_stay_unknown() {
        let g = interval();
        let exp = FiniteExpansions::new(&g);
        let w1 = word_of(&g, &["4", "4"]);
        let w2 = word_of(&g, &["1"]);
        assert_eq!(
            equivalence_search(&g, &exp, &w1, &w2, limits()),
            SearchOutcome::Unknown
        );
    }

    #[test]
    fn identical_words_have_empty_path() {
        let g = interval();
        let exp = FiniteExpansions::new(&g);
        let w = word_of(&g, &["1", "2"]);
        assert_eq!(
            equivalence_search(&g, &exp, &w, &w, limits()),
            SearchOutcome::Equivalent(vec![])
        );
    }

    #[test]
    fn monotone_certificate_round_trips() {
        let g = interval();
        let exp = FiniteExpansions::new(&g);
        let w1 = word_of(&g, &["2", "2", "-1"]);
        let w2 = word_of(&g, &["3"]);
        let cert = is_expand_then_contract(&g, &exp, &w1, &w2, limits()).unwrap();
        assert_eq!(replay(&g, &w1, &cert.steps()).unwrap(), w2);
        // all expansions precede all contractions by construction
        assert!(cert
            .expansions
            .iter()
            .all(|s| matches!(s, RewriteStep::Expansion { .. })));
        assert!(cert
            .contractions
            .iter()
            .all(|s| matches!(s, RewriteStep::Contraction { .. })));
    }

    #[test]
    fn trivial_monotone_certificate() {
        // (g) → expand to (a, a⁻¹g) → contract → (g)
        let g = interval();
        let w = word_of(&g, &["3"]);
        let a = g.element_by_id("-1").unwrap();
        let rest = g.element_by_id("4").unwrap();
        let cert = MonotoneCertificate {
            expansions: vec![RewriteStep::Expansion {
                position: 0,
                factors: (a, rest),
            }],
            contractions: vec![RewriteStep::Contraction { position: 0 }],
        };
        assert_eq!(replay(&g, &w, &cert.steps()).unwrap(), w);
        // and the search itself degenerates to the empty certificate
        let exp = FiniteExpansions::new(&g);
        let found = is_expand_then_contract(&g, &exp, &w, &w, limits()).unwrap();
        assert!(found.steps().is_empty());
    }
}
