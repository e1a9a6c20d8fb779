//! Words over the vertices of a simplicial graph.
//!
//! Two rewriting moves generate the equivalence on [`Word`]s: delete one of
//! two equal adjacent letters, and swap adjacent letters joined by an edge.
//! A word is reduced when any two equal letters are separated by some letter
//! not adjacent to them. Reduced representatives of one class are exactly the
//! shuffle class of any one of them, so a canonical form is the
//! lexicographically least linear arrangement of a reduced word.
//!
//! [`GroupWord`]s carry integer exponents and model the right-angled Artin
//! group of the graph: same-vertex neighbours add their exponents, zero
//! syllables vanish, and syllables on adjacent vertices commute.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashSet, VecDeque};
use std::fmt;

use thiserror::Error;

use crate::graph::SimplicialGraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("`{0}` is not a vertex of the graph")]
    UnknownVertex(String),
    #[error("letter index {0} is out of range")]
    IndexOutOfRange(usize),
    #[error("words live over different graphs")]
    GraphMismatch,
    #[error("word is not reduced: {0}")]
    NotReduced(String),
    #[error("words are not equivalent")]
    NotEquivalent,
    #[error("zero exponent in syllable `{0}`")]
    ZeroExponent(String),
    #[error("malformed token `{0}`")]
    BadToken(String),
    #[error("not a permutation of 1..={0}")]
    NotAPermutation(usize),
}

fn same_graph(a: &SimplicialGraph, b: &SimplicialGraph) -> bool {
    std::ptr::eq(a, b) || a == b
}

/// Dense commutation table for a graph's vertex indices.
struct Commutes {
    n: usize,
    table: Vec<bool>,
}

impl Commutes {
    fn of(graph: &SimplicialGraph) -> Self {
        Self {
            n: graph.vertex_count(),
            table: graph.adjacency_matrix(),
        }
    }

    #[inline]
    fn get(&self, a: usize, b: usize) -> bool {
        self.table[a * self.n + b]
    }
}

/// A finite sequence of vertices of `graph`, held as vertex indices.
#[derive(Clone)]
pub struct Word<'g> {
    graph: &'g SimplicialGraph,
    letters: Vec<usize>,
}

impl<'g> Word<'g> {
    pub fn new<S: AsRef<str>>(graph: &'g SimplicialGraph, labels: &[S]) -> Result<Self, WordError> {
        let letters = labels
            .iter()
            .map(|l| {
                graph
                    .index_of(l.as_ref())
                    .ok_or_else(|| WordError::UnknownVertex(l.as_ref().to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { graph, letters })
    }

    /// Parses whitespace-separated vertex identifiers.
    pub fn parse(graph: &'g SimplicialGraph, text: &str) -> Result<Self, WordError> {
        let tokens: Vec<&str> = text.split_whitespace().collect();
        Self::new(graph, &tokens)
    }

    pub fn from_indices(
        graph: &'g SimplicialGraph,
        letters: Vec<usize>,
    ) -> Result<Self, WordError> {
        if let Some(&bad) = letters.iter().find(|&&i| i >= graph.vertex_count()) {
            return Err(WordError::IndexOutOfRange(bad));
        }
        Ok(Self { graph, letters })
    }

    pub fn empty(graph: &'g SimplicialGraph) -> Self {
        Self {
            graph,
            letters: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g SimplicialGraph {
        self.graph
    }

    /// Letters as vertex indices into `graph().vertices()`.
    pub fn indices(&self) -> &[usize] {
        &self.letters
    }

    pub fn labels(&self) -> Vec<&'g str> {
        self.letters
            .iter()
            .map(|&i| self.graph.vertices()[i].as_str())
            .collect()
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    fn with_letters(&self, letters: Vec<usize>) -> Self {
        Self {
            graph: self.graph,
            letters,
        }
    }
}

impl PartialEq for Word<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.letters == other.letters && same_graph(self.graph, other.graph)
    }
}

impl Eq for Word<'_> {}

impl PartialOrd for Word<'_> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word<'_> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.letters.cmp(&other.letters)
    }
}

impl fmt::Display for Word<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.labels().join(" "))
    }
}

impl fmt::Debug for Word<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.labels().join(","))
    }
}

/// Any two equal letters are separated by a letter not adjacent to them.
pub fn is_reduced(w: &Word) -> bool {
    let c = Commutes::of(w.graph);
    let l = &w.letters;
    (0..l.len()).all(|k| {
        match (k + 1..l.len()).find(|&j| l[j] == l[k]) {
            // Only the next equal letter matters; later ones are separated
            // by it or by whatever separates it.
            Some(next) => (k + 1..next).any(|p| !c.get(l[k], l[p])),
            None => true,
        }
    })
}

/// Reduced word equivalent to `w`, built letter by letter: an incoming letter
/// is absorbed when it can shuffle back onto an equal letter.
pub fn reduce<'g>(w: &Word<'g>) -> Word<'g> {
    let c = Commutes::of(w.graph);
    let mut out: Vec<usize> = Vec::with_capacity(w.len());
    for &x in &w.letters {
        let mut absorbed = false;
        for &y in out.iter().rev() {
            if y == x {
                absorbed = true;
                break;
            }
            if !c.get(x, y) {
                break;
            }
        }
        if !absorbed {
            out.push(x);
        }
    }
    w.with_letters(out)
}

/// Lexicographically least shuffle of `letters`: repeatedly emit the
/// smallest item that commutes with everything still ahead of it.
fn least_shuffle<T: Copy + Ord>(mut rest: Vec<T>, commutes: impl Fn(T, T) -> bool) -> Vec<T> {
    let mut out = Vec::with_capacity(rest.len());
    while !rest.is_empty() {
        let mut best: Option<usize> = None;
        for i in 0..rest.len() {
            if best.is_some_and(|b| rest[b] <= rest[i]) {
                continue;
            }
            if rest[..i].iter().all(|&y| commutes(rest[i], y)) {
                best = Some(i);
            }
        }
        out.push(rest.remove(best.expect("the first item is always free")));
    }
    out
}

/// The lexicographically least reduced word equivalent to `w`.
pub fn normal_form<'g>(w: &Word<'g>) -> Word<'g> {
    let c = Commutes::of(w.graph);
    let reduced = reduce(w).letters;
    w.with_letters(least_shuffle(reduced, |a, b| c.get(a, b)))
}

pub fn equivalent(w1: &Word, w2: &Word) -> Result<bool, WordError> {
    if !same_graph(w1.graph, w2.graph) {
        return Err(WordError::GraphMismatch);
    }
    Ok(normal_form(w1).letters == normal_form(w2).letters)
}

/// Bijection on `1..=n`, stored as the sequence of images.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(images: Vec<usize>) -> Result<Self, WordError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || std::mem::replace(&mut seen[i - 1], true) {
                return Err(WordError::NotAPermutation(n));
            }
        }
        Ok(Self(images))
    }

    pub fn identity(n: usize) -> Self {
        Self((1..=n).collect())
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(items[σ(1)], ..., items[σ(n)])`.
    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.0.iter().map(|&i| items[i - 1].clone()).collect()
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join(" "))
    }
}

/// The permutation `σ` with `w2 = (w1[σ(1)], ..., w1[σ(n)])` that keeps
/// repeated letters in their original relative order.
pub fn matching_permutation(w1: &Word, w2: &Word) -> Result<Permutation, WordError> {
    if !same_graph(w1.graph, w2.graph) {
        return Err(WordError::GraphMismatch);
    }
    for w in [w1, w2] {
        if !is_reduced(w) {
            return Err(WordError::NotReduced(w.to_string()));
        }
    }
    if !equivalent(w1, w2)? {
        return Err(WordError::NotEquivalent);
    }
    let mut occurrences: Vec<VecDeque<usize>> = vec![VecDeque::new(); w1.graph.vertex_count()];
    for (pos, &x) in w1.letters.iter().enumerate() {
        occurrences[x].push_back(pos + 1);
    }
    let images = w2
        .letters
        .iter()
        .map(|&x| occurrences[x].pop_front().ok_or(WordError::NotEquivalent))
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::new(images)
}

/// Closure of `w` under single shuffle, merge and un-merge moves, restricted
/// to words of length at most `cap`.
pub fn bfs_class<'g>(w: &Word<'g>, cap: usize) -> BTreeSet<Word<'g>> {
    let c = Commutes::of(w.graph);
    let mut seen: HashSet<Vec<usize>> = HashSet::from([w.letters.clone()]);
    let mut queue = VecDeque::from([w.letters.clone()]);
    while let Some(u) = queue.pop_front() {
        let mut next = Vec::new();
        for i in 0..u.len().saturating_sub(1) {
            if c.get(u[i], u[i + 1]) {
                let mut s = u.clone();
                s.swap(i, i + 1);
                next.push(s);
            }
            if u[i] == u[i + 1] {
                let mut s = u.clone();
                s.remove(i);
                next.push(s);
            }
        }
        if u.len() < cap {
            for i in 0..u.len() {
                let mut s = u.clone();
                s.insert(i, u[i]);
                next.push(s);
            }
        }
        for s in next {
            if seen.insert(s.clone()) {
                queue.push_back(s);
            }
        }
    }
    seen.into_iter().map(|l| w.with_letters(l)).collect()
}

/// Product of generators and their powers in the right-angled Artin group
/// of `graph`. Exponents are nonzero.
#[derive(Clone)]
pub struct GroupWord<'g> {
    graph: &'g SimplicialGraph,
    syllables: Vec<(usize, i64)>,
}

impl<'g> GroupWord<'g> {
    pub fn new<S: AsRef<str>>(
        graph: &'g SimplicialGraph,
        syllables: &[(S, i64)],
    ) -> Result<Self, WordError> {
        let syllables = syllables
            .iter()
            .map(|(v, k)| {
                let v = v.as_ref();
                let i = graph
                    .index_of(v)
                    .ok_or_else(|| WordError::UnknownVertex(v.to_string()))?;
                if *k == 0 {
                    return Err(WordError::ZeroExponent(format!("{v}^0")));
                }
                Ok((i, *k))
            })
            .collect::<Result<_, _>>()?;
        Ok(Self { graph, syllables })
    }

    /// Parses whitespace-separated `v` / `v^k` tokens.
    pub fn parse(graph: &'g SimplicialGraph, text: &str) -> Result<Self, WordError> {
        let mut syllables = Vec::new();
        for token in text.split_whitespace() {
            let (v, k) = match token.rsplit_once('^') {
                Some((v, k)) => (
                    v,
                    k.parse::<i64>()
                        .map_err(|_| WordError::BadToken(token.to_string()))?,
                ),
                None => (token, 1),
            };
            if v.is_empty() {
                return Err(WordError::BadToken(token.to_string()));
            }
            syllables.push((v, k));
        }
        Self::new(graph, &syllables)
    }

    pub fn from_indices(
        graph: &'g SimplicialGraph,
        syllables: Vec<(usize, i64)>,
    ) -> Result<Self, WordError> {
        for &(i, k) in &syllables {
            if i >= graph.vertex_count() {
                return Err(WordError::IndexOutOfRange(i));
            }
            if k == 0 {
                return Err(WordError::ZeroExponent(format!(
                    "{}^0",
                    graph.vertices()[i]
                )));
            }
        }
        Ok(Self { graph, syllables })
    }

    pub fn identity(graph: &'g SimplicialGraph) -> Self {
        Self {
            graph,
            syllables: Vec::new(),
        }
    }

    pub fn graph(&self) -> &'g SimplicialGraph {
        self.graph
    }

    pub fn syllables(&self) -> &[(usize, i64)] {
        &self.syllables
    }

    pub fn len(&self) -> usize {
        self.syllables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.syllables.is_empty()
    }
}

impl PartialEq for GroupWord<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.syllables == other.syllables && same_graph(self.graph, other.graph)
    }
}

impl Eq for GroupWord<'_> {}

impl fmt::Display for GroupWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tokens: Vec<String> = self
            .syllables
            .iter()
            .map(|&(i, k)| {
                let v = &self.graph.vertices()[i];
                if k == 1 {
                    v.clone()
                } else {
                    format!("{v}^{k}")
                }
            })
            .collect();
        f.write_str(&tokens.join(" "))
    }
}

impl fmt::Debug for GroupWord<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{self}]")
    }
}

/// Canonical form: fewest syllables, then lexicographically least under
/// (vertex, exponent) order.
pub fn raag_normal_form<'g>(gw: &GroupWord<'g>) -> GroupWord<'g> {
    let c = Commutes::of(gw.graph);
    let mut out: Vec<(usize, i64)> = Vec::with_capacity(gw.len());
    for &(x, e) in &gw.syllables {
        let mut merged = false;
        for k in (0..out.len()).rev() {
            let y = out[k].0;
            if y == x {
                let sum = out[k].1.checked_add(e).expect("exponent overflow");
                if sum == 0 {
                    out.remove(k);
                } else {
                    out[k].1 = sum;
                }
                merged = true;
                break;
            }
            if !c.get(x, y) {
                break;
            }
        }
        if !merged {
            out.push((x, e));
        }
    }
    GroupWord {
        graph: gw.graph,
        syllables: least_shuffle(out, |a, b| c.get(a.0, b.0)),
    }
}

pub fn raag_is_trivial(gw: &GroupWord) -> bool {
    raag_normal_form(gw).is_empty()
}

pub fn raag_multiply<'g>(a: &GroupWord<'g>, b: &GroupWord<'g>) -> Result<GroupWord<'g>, WordError> {
    if !same_graph(a.graph, b.graph) {
        return Err(WordError::GraphMismatch);
    }
    let mut syllables = a.syllables.clone();
    syllables.extend_from_slice(&b.syllables);
    Ok(raag_normal_form(&GroupWord {
        graph: a.graph,
        syllables,
    }))
}

pub fn raag_invert<'g>(gw: &GroupWord<'g>) -> GroupWord<'g> {
    let syllables = gw.syllables.iter().rev().map(|&(v, k)| (v, -k)).collect();
    raag_normal_form(&GroupWord {
        graph: gw.graph,
        syllables,
    })
}
