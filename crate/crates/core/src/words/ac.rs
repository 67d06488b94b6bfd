//! Bounded exploration of the associative completion of a finite local
//! groupoid: union-find over the rewrite graph restricted to words of
//! bounded length.

use std::collections::HashMap;

use crate::groupoid::{EnumerableGroupoid, FiniteLocalGroupoid, Groupoid};

/// One equivalence class of the bounded rewrite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AcClass {
    /// Lexicographically smallest among the shortest member words
    /// (element indices).
    pub representative: Vec<usize>,
    pub size: usize,
    /// Whether the class contains a one-letter word.
    pub has_singleton: bool,
    /// Whether the class contains a word at the length bound; such
    /// classes might merge with others at a larger bound.
    pub touches_frontier: bool,
}

/// Partition of all words of length ≤ `max_len` into rewrite-equivalence
/// classes. Bounded exploration can only miss merges, so the partition
/// is possibly finer than that of the full associative completion;
/// classes touching the frontier are the ones that may still merge at
/// larger bounds.
#[derive(Debug, Clone)]
pub struct AcReport {
    pub word_count: usize,
    pub classes: Vec<AcClass>,
    /// True when the word budget cut enumeration short, making counts
    /// unreliable.
    pub truncated: bool,
}

impl AcReport {
    pub fn class_count(&self) -> usize {
        self.classes.len()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra != rb {
            // keep the smaller index as root for determinism
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// The raw bounded partition: every well-formed word of length at most
/// `max_len` paired with its class id. Classes are numbered by first
/// appearance in the lexicographic shortest-first word order.
pub fn ac_partition(
    g: &FiniteLocalGroupoid,
    max_len: usize,
    max_words: usize,
) -> Vec<(Vec<usize>, usize)> {
    let (words, mut uf, _) = explore(g, max_len, max_words);
    let mut renumber: HashMap<usize, usize> = HashMap::new();
    let mut out = Vec::new();
    for (wi, w) in words.iter().enumerate() {
        if w.len() > max_len {
            continue;
        }
        let root = uf.find(wi);
        let next = renumber.len();
        let class = *renumber.entry(root).or_insert(next);
        out.push((w.clone(), class));
    }
    out
}

/// Explores the rewrite graph on all well-formed words of length at most
/// `max_len`, identifying words related by a chain of moves. The
/// exploration itself runs one letter beyond `max_len`: merges often
/// need a temporary slot (expand one letter, contract elsewhere), and a
/// single slot recovers them without blowing up the enumeration.
/// `max_words` caps the enumeration; a report with `truncated = true`
/// means the budget was hit and counts are unreliable.
pub fn ac_explore(g: &FiniteLocalGroupoid, max_len: usize, max_words: usize) -> AcReport {
    let (words, mut uf, truncated) = explore(g, max_len, max_words);

    // report only the words within the requested bound
    let mut by_root: HashMap<usize, AcClass> = HashMap::new();
    for (wi, w) in words.iter().enumerate() {
        if w.len() > max_len {
            continue;
        }
        let root = uf.find(wi);
        let entry = by_root.entry(root).or_insert_with(|| AcClass {
            representative: w.clone(),
            size: 0,
            has_singleton: false,
            touches_frontier: false,
        });
        entry.size += 1;
        if w.len() < entry.representative.len()
            || (w.len() == entry.representative.len() && *w < entry.representative)
        {
            entry.representative = w.clone();
        }
        entry.has_singleton |= w.len() == 1;
        entry.touches_frontier |= w.len() == max_len;
    }
    let word_count = words.iter().filter(|w| w.len() <= max_len).count();
    let mut classes: Vec<AcClass> = by_root.into_values().collect();
    classes.sort_by(|a, b| {
        (a.representative.len(), &a.representative).cmp(&(b.representative.len(), &b.representative))
    });
    AcReport {
        word_count,
        classes,
        truncated,
    }
}

fn explore(
    g: &FiniteLocalGroupoid,
    max_len: usize,
    max_words: usize,
) -> (Vec<Vec<usize>>, UnionFind, bool) {
    assert!(max_len >= 1);
    let elements = g.all_elements();
    let explore_len = max_len + 1;
    let mut words: Vec<Vec<usize>> = Vec::new();
    let mut truncated = false;

    // lexicographic enumeration of well-formed words, shortest first
    let mut current: Vec<Vec<usize>> = elements.iter().map(|&e| vec![e]).collect();
    words.extend(current.iter().cloned());
    for _ in 2..=explore_len {
        let mut next = Vec::new();
        for w in &current {
            let last = *w.last().expect("words are nonempty");
            for &e in &elements {
                if g.composable(&last, &e) {
                    let mut ext = w.clone();
                    ext.push(e);
                    next.push(ext);
                }
            }
        }
        words.extend(next.iter().cloned());
        current = next;
        if words.len() > max_words {
            truncated = true;
            words.truncate(max_words);
            break;
        }
    }

    let index: HashMap<Vec<usize>, usize> = words
        .iter()
        .enumerate()
        .map(|(i, w)| (w.clone(), i))
        .collect();
    let mut uf = UnionFind::new(words.len());
    for (wi, w) in words.iter().enumerate() {
        for i in 0..w.len().saturating_sub(1) {
            if let Some(p) = g.try_mul(&w[i], &w[i + 1]) {
                let mut contracted = Vec::with_capacity(w.len() - 1);
                contracted.extend_from_slice(&w[..i]);
                contracted.push(p);
                contracted.extend_from_slice(&w[i + 2..]);
                if let Some(&ci) = index.get(&contracted) {
                    uf.union(wi, ci);
                }
            }
        }
    }
    (words, uf, truncated)
}
