//! Membership in the graded pincushion classes.
//!
//! Level 0 holds the single-vertex graph (and, by convention, the empty
//! graph). A level `m + 1` graph is built by appending level `m` blocks one
//! after another, each either isolated from everything built so far or pinned
//! at one vertex of it. The decision procedure peels the last block off:
//!
//! `g` is in level `m + 1` iff `g` is in level `m`, or some nonempty proper
//! vertex subset `S` induces a level `m` graph, its complement induces a level
//! `m + 1` graph, and the edges between them are either absent or exactly
//! `S x {v}` for a single vertex `v` outside `S`.
//!
//! Subsets are bitmasks, so the search handles at most 64 vertices; the
//! running time is exponential in the vertex count regardless.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::{disjoint_union, pin_graph, GraphError, SimplicialGraph};

pub const MAX_SEARCH_VERTICES: usize = 64;
pub const MAX_ENUMERATION_VERTICES: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PincushionError {
    #[error("graph has {n} vertices; the search supports at most {max}")]
    TooManyVertices { n: usize, max: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TraceError {
    #[error("first step of a stage must be isolated")]
    FirstStepPinned,
    #[error("pinned at `{0}`, which no earlier step contributed")]
    DanglingPin(String),
    #[error("level {parent} stage contains a level {found} block")]
    WrongLevel { parent: usize, found: usize },
    #[error("a stage must have level at least 1")]
    ZeroLevelStage,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Attachment {
    Isolated,
    PinnedAt(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub block: ConstructionTrace,
    pub attach: Attachment,
}

/// Certificate of membership at a given level.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ConstructionTrace {
    /// The empty graph, at level 0.
    Empty,
    /// A single vertex, at level 0.
    Vertex(String),
    /// Blocks of level `level - 1` appended in order.
    Stage { level: usize, steps: Vec<Step> },
}

impl ConstructionTrace {
    pub fn level(&self) -> usize {
        match self {
            Self::Empty | Self::Vertex(_) => 0,
            Self::Stage { level, .. } => *level,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LevelResult {
    Member {
        min_level: usize,
        trace: ConstructionTrace,
    },
    NotMember,
}

impl LevelResult {
    pub fn is_member(&self) -> bool {
        matches!(self, Self::Member { .. })
    }

    pub fn min_level(&self) -> Option<usize> {
        match self {
            Self::Member { min_level, .. } => Some(*min_level),
            Self::NotMember => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
enum Choice {
    Lower,
    Split { block: u64, pin: Option<usize> },
}

/// Memoised last-block search over vertex bitmasks of one graph.
struct LevelSearch<'a> {
    graph: &'a SimplicialGraph,
    adj: Vec<u64>,
    memo: HashMap<(u64, usize), Option<Choice>>,
}

fn bits(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            None
        } else {
            let i = m.trailing_zeros() as usize;
            m &= m - 1;
            Some(i)
        }
    })
}

fn submasks(mask: u64) -> impl Iterator<Item = u64> {
    // Walks all submasks of `mask` from `mask` down to 0.
    let mut sub = mask;
    let mut done = false;
    std::iter::from_fn(move || {
        if done {
            return None;
        }
        let out = sub;
        if sub == 0 {
            done = true;
        } else {
            sub = (sub - 1) & mask;
        }
        Some(out)
    })
}

impl<'a> LevelSearch<'a> {
    fn new(graph: &'a SimplicialGraph) -> Result<Self, PincushionError> {
        let n = graph.vertex_count();
        if n > MAX_SEARCH_VERTICES {
            return Err(PincushionError::TooManyVertices {
                n,
                max: MAX_SEARCH_VERTICES,
            });
        }
        let mut adj = vec![0u64; n];
        for (i, j) in graph.edge_indices() {
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Self {
            graph,
            adj,
            memo: HashMap::new(),
        })
    }

    fn full_mask(&self) -> u64 {
        match self.graph.vertex_count() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    /// How block `s` would attach to the rest of `mask`, if it can.
    fn attachment(&self, mask: u64, s: u64) -> Option<Option<usize>> {
        let rest = mask & !s;
        let cross = bits(s).fold(0u64, |acc, i| acc | (self.adj[i] & rest));
        if cross == 0 {
            return Some(None);
        }
        if cross.count_ones() != 1 {
            return None;
        }
        let v = cross.trailing_zeros() as usize;
        (self.adj[v] & s == s).then_some(Some(v))
    }

    fn components(&self, mask: u64) -> Vec<u64> {
        let mut left = mask;
        let mut out = Vec::new();
        while left != 0 {
            let mut comp = left & left.wrapping_neg();
            let mut frontier = comp;
            while frontier != 0 {
                let grown = bits(frontier).fold(comp, |acc, i| acc | (self.adj[i] & mask));
                frontier = grown & !comp;
                comp = grown;
            }
            out.push(comp);
            left &= !comp;
        }
        out
    }

    fn member(&mut self, mask: u64, level: usize) -> bool {
        if mask.count_ones() <= 1 {
            return true;
        }
        if level == 0 {
            return false;
        }
        if let Some(hit) = self.memo.get(&(mask, level)) {
            return hit.is_some();
        }
        let choice = self.search(mask, level);
        self.memo.insert((mask, level), choice);
        choice.is_some()
    }

    fn search(&mut self, mask: u64, level: usize) -> Option<Choice> {
        if self.member(mask, level - 1) {
            return Some(Choice::Lower);
        }
        let comps = self.components(mask);
        if comps.len() > 1 {
            for &c in &comps {
                if self.member(c, level - 1) && self.member(mask & !c, level) {
                    return Some(Choice::Split {
                        block: c,
                        pin: None,
                    });
                }
            }
        }
        let mut candidates: Vec<u64> = submasks(mask).filter(|&s| s != 0 && s != mask).collect();
        candidates.sort_by_key(|s| (s.count_ones(), *s));
        for s in candidates {
            let Some(pin) = self.attachment(mask, s) else {
                continue;
            };
            if self.member(s, level - 1) && self.member(mask & !s, level) {
                return Some(Choice::Split { block: s, pin });
            }
        }
        None
    }

    /// Builds the certificate for a (mask, level) already known to be a member.
    fn trace(&mut self, mask: u64, level: usize) -> ConstructionTrace {
        let vertices = self.graph.vertices();
        match (mask.count_ones(), level) {
            (0, 0) => return ConstructionTrace::Empty,
            (0, _) => {
                return ConstructionTrace::Stage {
                    level,
                    steps: Vec::new(),
                }
            }
            (1, 0) => {
                return ConstructionTrace::Vertex(vertices[mask.trailing_zeros() as usize].clone())
            }
            _ => {}
        }
        let choice = if mask.count_ones() == 1 {
            Choice::Lower
        } else {
            self.memo[&(mask, level)].expect("trace requested for a non-member")
        };
        match choice {
            Choice::Lower => ConstructionTrace::Stage {
                level,
                steps: vec![Step {
                    block: self.trace(mask, level - 1),
                    attach: Attachment::Isolated,
                }],
            },
            Choice::Split { block, pin } => {
                let mut rest = self.trace(mask & !block, level);
                let step = Step {
                    block: self.trace(block, level - 1),
                    attach: match pin {
                        None => Attachment::Isolated,
                        Some(v) => Attachment::PinnedAt(vertices[v].clone()),
                    },
                };
                match &mut rest {
                    ConstructionTrace::Stage { steps, .. } => steps.push(step),
                    _ => unreachable!("level >= 1 traces are stages"),
                }
                rest
            }
        }
    }
}

/// Certificate that `g` lies in level `m`, if it does.
pub fn is_in_level(
    g: &SimplicialGraph,
    m: usize,
) -> Result<Option<ConstructionTrace>, PincushionError> {
    let mut search = LevelSearch::new(g)?;
    let full = search.full_mask();
    Ok(search.member(full, m).then(|| search.trace(full, m)))
}

/// Smallest level containing `g`, searching levels `0..=max_level`.
pub fn min_level_capped(
    g: &SimplicialGraph,
    max_level: usize,
) -> Result<LevelResult, PincushionError> {
    let mut search = LevelSearch::new(g)?;
    let full = search.full_mask();
    for m in 0..=max_level {
        if search.member(full, m) {
            return Ok(LevelResult::Member {
                min_level: m,
                trace: search.trace(full, m),
            });
        }
    }
    Ok(LevelResult::NotMember)
}

/// Smallest level containing `g`, searching up to the vertex count.
pub fn min_level(g: &SimplicialGraph) -> Result<LevelResult, PincushionError> {
    min_level_capped(g, g.vertex_count())
}

pub fn is_pincushion(g: &SimplicialGraph) -> Result<bool, PincushionError> {
    Ok(min_level(g)?.is_member())
}

/// Rebuilds the graph a certificate describes, checking it along the way.
pub fn replay(trace: &ConstructionTrace) -> Result<SimplicialGraph, TraceError> {
    match trace {
        ConstructionTrace::Empty => Ok(SimplicialGraph::empty()),
        ConstructionTrace::Vertex(v) => Ok(SimplicialGraph::new(
            [v.as_str()],
            Vec::<(&str, &str)>::new(),
        )?),
        ConstructionTrace::Stage { level: 0, .. } => Err(TraceError::ZeroLevelStage),
        ConstructionTrace::Stage { level, steps } => {
            let mut acc = SimplicialGraph::empty();
            for (i, step) in steps.iter().enumerate() {
                if step.block.level() + 1 != *level {
                    return Err(TraceError::WrongLevel {
                        parent: *level,
                        found: step.block.level(),
                    });
                }
                let block = replay(&step.block)?;
                acc = match &step.attach {
                    Attachment::Isolated => disjoint_union(&acc, &block)?,
                    Attachment::PinnedAt(_) if i == 0 => return Err(TraceError::FirstStepPinned),
                    Attachment::PinnedAt(v) if !acc.contains(v) => {
                        return Err(TraceError::DanglingPin(v.clone()))
                    }
                    Attachment::PinnedAt(v) => pin_graph(&acc, v, &block)?,
                };
            }
            Ok(acc)
        }
    }
}

fn write_trace(
    f: &mut fmt::Formatter<'_>,
    trace: &ConstructionTrace,
    depth: usize,
    id: &str,
) -> fmt::Result {
    let indent = "  ".repeat(depth);
    match trace {
        ConstructionTrace::Empty => writeln!(f, "{indent}empty"),
        ConstructionTrace::Vertex(v) => writeln!(f, "{indent}vertex {v}"),
        ConstructionTrace::Stage { level, steps } => {
            writeln!(f, "{indent}level {level}")?;
            for (i, step) in steps.iter().enumerate() {
                let child = if id.is_empty() {
                    format!("{}", i + 1)
                } else {
                    format!("{id}.{}", i + 1)
                };
                match &step.attach {
                    Attachment::Isolated => writeln!(f, "{indent}append {child} isolated")?,
                    Attachment::PinnedAt(v) => writeln!(f, "{indent}append {child} pinned-at {v}")?,
                }
                write_trace(f, &step.block, depth + 1, &child)?;
            }
            Ok(())
        }
    }
}

impl fmt::Display for ConstructionTrace {
    /// Indented text form: each `append <block-id> ...` line is followed by
    /// its block, indented two spaces further. Block ids are dotted paths.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_trace(f, self, 0, "")
    }
}

struct TraceParser<'t> {
    lines: Vec<(usize, usize, &'t str)>,
    pos: usize,
}

impl<'t> TraceParser<'t> {
    fn err(&self, line: usize, msg: impl Into<String>) -> TraceError {
        TraceError::Parse {
            line,
            msg: msg.into(),
        }
    }

    fn node(&mut self, depth: usize, id: &str) -> Result<ConstructionTrace, TraceError> {
        let Some(&(line, indent, body)) = self.lines.get(self.pos) else {
            return Err(self.err(
                self.lines.last().map_or(1, |l| l.0),
                "unexpected end of trace",
            ));
        };
        if indent != depth * 2 {
            return Err(self.err(line, "unexpected indentation"));
        }
        self.pos += 1;
        let tokens: Vec<&str> = body.split_whitespace().collect();
        match tokens.as_slice() {
            ["empty"] => Ok(ConstructionTrace::Empty),
            ["vertex", v] => Ok(ConstructionTrace::Vertex(v.to_string())),
            ["level", m] => {
                let level: usize = m
                    .parse()
                    .map_err(|_| self.err(line, format!("bad level `{m}`")))?;
                let mut steps = Vec::new();
                while let Some(&(line, indent, body)) = self.lines.get(self.pos) {
                    if indent != depth * 2 || !body.starts_with("append") {
                        break;
                    }
                    self.pos += 1;
                    let expected = if id.is_empty() {
                        format!("{}", steps.len() + 1)
                    } else {
                        format!("{id}.{}", steps.len() + 1)
                    };
                    let tokens: Vec<&str> = body.split_whitespace().collect();
                    let attach = match tokens.as_slice() {
                        ["append", b, "isolated"] if *b == expected => Attachment::Isolated,
                        ["append", b, "pinned-at", v] if *b == expected => {
                            Attachment::PinnedAt(v.to_string())
                        }
                        _ => {
                            return Err(self.err(
                                line,
                                format!("expected `append {expected} isolated|pinned-at <vertex>`"),
                            ))
                        }
                    };
                    let block = self.node(depth + 1, &expected)?;
                    steps.push(Step { block, attach });
                }
                Ok(ConstructionTrace::Stage { level, steps })
            }
            _ => Err(self.err(line, format!("unrecognised line `{body}`"))),
        }
    }
}

impl FromStr for ConstructionTrace {
    type Err = TraceError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let lines: Vec<_> = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty())
            .map(|(i, l)| {
                let body = l.trim_start_matches(' ');
                (i + 1, l.len() - body.len(), body.trim_end())
            })
            .collect();
        let mut parser = TraceParser { lines, pos: 0 };
        let trace = parser.node(0, "")?;
        if let Some(&(line, _, _)) = parser.lines.get(parser.pos) {
            return Err(parser.err(line, "trailing content"));
        }
        Ok(trace)
    }
}

/// Labelled graph on vertices `0..n` as (vertex mask, edge mask over pair slots).
type Packed = (u32, u64);

fn pair_slot(i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    j * (j - 1) / 2 + i
}

fn unpack(n: usize, (_, edges): Packed) -> SimplicialGraph {
    let labels: Vec<String> = (1..=n).map(|i| i.to_string()).collect();
    let mut pairs = Vec::new();
    for j in 0..n {
        for i in 0..j {
            if edges >> pair_slot(i, j) & 1 == 1 {
                pairs.push((labels[i].clone(), labels[j].clone()));
            }
        }
    }
    SimplicialGraph::new(labels.clone(), pairs).expect("well-formed by construction")
}

/// Forward closure of the construction rules: every labelled graph on any
/// subset of `0..n` at each level `0..=max_level`.
fn forward_levels(n: usize, max_level: usize) -> Vec<HashSet<Packed>> {
    let mut levels: Vec<HashSet<Packed>> = Vec::with_capacity(max_level + 1);
    levels.push((0..n).map(|i| (1u32 << i, 0u64)).collect());
    for _ in 0..max_level {
        let blocks = levels.last().expect("level 0 present");
        let mut by_mask: HashMap<u32, Vec<u64>> = HashMap::new();
        for &(vm, em) in blocks {
            by_mask.entry(vm).or_default().push(em);
        }
        let mut seen: HashSet<Packed> = blocks.clone();
        let mut queue: Vec<Packed> = seen.iter().copied().collect();
        while let Some((gv, ge)) = queue.pop() {
            for (&bv, block_edges) in &by_mask {
                if bv & gv != 0 {
                    continue;
                }
                for &be in block_edges {
                    let union = (gv | bv, ge | be);
                    if seen.insert(union) {
                        queue.push(union);
                    }
                    for v in 0..n {
                        if gv >> v & 1 == 0 {
                            continue;
                        }
                        let star = (0..n)
                            .filter(|&w| bv >> w & 1 == 1)
                            .fold(0u64, |acc, w| acc | 1 << pair_slot(v, w));
                        let pinned = (gv | bv, ge | be | star);
                        if seen.insert(pinned) {
                            queue.push(pinned);
                        }
                    }
                }
            }
        }
        levels.push(seen);
    }
    levels
}

/// All labelled graphs on vertices `1..=n` at each level `0..=max_level`,
/// generated forward from the construction rules.
pub fn enumerate_levels(
    n: usize,
    max_level: usize,
) -> Result<Vec<BTreeSet<SimplicialGraph>>, PincushionError> {
    if n > MAX_ENUMERATION_VERTICES {
        return Err(PincushionError::TooManyVertices {
            n,
            max: MAX_ENUMERATION_VERTICES,
        });
    }
    if n == 0 {
        return Ok(vec![
            BTreeSet::from([SimplicialGraph::empty()]);
            max_level + 1
        ]);
    }
    let full = (1u32 << n) - 1;
    Ok(forward_levels(n, max_level)
        .into_iter()
        .map(|level| {
            level
                .into_iter()
                .filter(|&(vm, _)| vm == full)
                .map(|p| unpack(n, p))
                .collect()
        })
        .collect())
}

/// All labelled graphs on vertices `1..=n` constructible at level `m`.
pub fn enumerate_level(n: usize, m: usize) -> Result<BTreeSet<SimplicialGraph>, PincushionError> {
    Ok(enumerate_levels(n, m)?.pop().expect("non-empty"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete_graph, cycle_graph, path_graph, star_graph};

    fn k1() -> SimplicialGraph {
        complete_graph(1).unwrap()
    }

    fn vertex(v: &str) -> ConstructionTrace {
        ConstructionTrace::Vertex(v.into())
    }

    #[test]
    fn complete_graph_levels() {
        for m in 0..=4 {
            let k = complete_graph(m + 1).unwrap();
            assert_eq!(min_level(&k).unwrap().min_level(), Some(m), "K_{}", m + 1);
        }
        let k4 = complete_graph(4).unwrap();
        assert!(is_in_level(&k4, 3).unwrap().is_some());
        assert!(is_in_level(&k4, 2).unwrap().is_none());
    }

    #[test]
    fn single_vertex_and_empty() {
        assert_eq!(is_in_level(&k1(), 0).unwrap(), Some(vertex("1")));
        assert_eq!(
            min_level(&SimplicialGraph::empty()).unwrap(),
            LevelResult::Member {
                min_level: 0,
                trace: ConstructionTrace::Empty
            }
        );
        let lifted = is_in_level(&SimplicialGraph::empty(), 2).unwrap().unwrap();
        assert_eq!(replay(&lifted).unwrap(), SimplicialGraph::empty());
    }

    #[test]
    fn squares_and_pentagons_are_not_members() {
        for n in [4, 5] {
            let c = cycle_graph(n).unwrap();
            for m in 0..=n {
                assert!(is_in_level(&c, m).unwrap().is_none());
            }
            assert_eq!(min_level(&c).unwrap(), LevelResult::NotMember);
            assert!(!is_pincushion(&c).unwrap());
        }
    }

    #[test]
    fn path_and_star_are_level_one() {
        assert_eq!(
            min_level(&path_graph(4).unwrap()).unwrap().min_level(),
            Some(1)
        );
        assert_eq!(
            min_level(&star_graph(5).unwrap()).unwrap().min_level(),
            Some(1)
        );
    }

    #[test]
    fn pinning_example_output_is_a_member() {
        let tri =
            SimplicialGraph::new(["v", "x", "y"], [("v", "x"), ("v", "y"), ("x", "y")]).unwrap();
        let path = SimplicialGraph::new(["p", "q", "r"], [("p", "q"), ("q", "r")]).unwrap();
        let g = pin_graph(&tri, "v", &path).unwrap();
        let res = min_level(&g).unwrap();
        // Triangle is level 2 and the pinned path is level 1, so level 2.
        assert_eq!(res.min_level(), Some(2));
        if let LevelResult::Member { trace, .. } = res {
            assert_eq!(replay(&trace).unwrap(), g);
        }
    }

    #[test]
    fn replay_examples() {
        assert_eq!(replay(&vertex("v")).unwrap(), {
            SimplicialGraph::new(["v"], Vec::<(&str, &str)>::new()).unwrap()
        });
        let mut steps = vec![Step {
            block: vertex("1"),
            attach: Attachment::Isolated,
        }];
        for i in 2..=4 {
            steps.push(Step {
                block: vertex(&i.to_string()),
                attach: Attachment::PinnedAt((i - 1).to_string()),
            });
        }
        let p4 = ConstructionTrace::Stage { level: 1, steps };
        assert_eq!(replay(&p4).unwrap(), path_graph(4).unwrap());

        let k4 = complete_graph(4).unwrap();
        let cert = is_in_level(&k4, 3).unwrap().unwrap();
        assert_eq!(cert.level(), 3);
        assert_eq!(replay(&cert).unwrap(), k4);
    }

    #[test]
    fn replay_rejects_malformed_traces() {
        let pinned_first = ConstructionTrace::Stage {
            level: 1,
            steps: vec![Step {
                block: vertex("a"),
                attach: Attachment::PinnedAt("a".into()),
            }],
        };
        assert_eq!(replay(&pinned_first), Err(TraceError::FirstStepPinned));

        let dangling = ConstructionTrace::Stage {
            level: 1,
            steps: vec![
                Step {
                    block: vertex("a"),
                    attach: Attachment::Isolated,
                },
                Step {
                    block: vertex("b"),
                    attach: Attachment::PinnedAt("b".into()),
                },
            ],
        };
        assert_eq!(replay(&dangling), Err(TraceError::DanglingPin("b".into())));

        let wrong_level = ConstructionTrace::Stage {
            level: 2,
            steps: vec![Step {
                block: vertex("a"),
                attach: Attachment::Isolated,
            }],
        };
        assert_eq!(
            replay(&wrong_level),
            Err(TraceError::WrongLevel {
                parent: 2,
                found: 0
            })
        );

        let repeated = ConstructionTrace::Stage {
            level: 1,
            steps: vec![
                Step {
                    block: vertex("a"),
                    attach: Attachment::Isolated,
                },
                Step {
                    block: vertex("a"),
                    attach: Attachment::Isolated,
                },
            ],
        };
        assert!(matches!(replay(&repeated), Err(TraceError::Graph(_))));
        assert_eq!(
            replay(&ConstructionTrace::Stage {
                level: 0,
                steps: vec![]
            }),
            Err(TraceError::ZeroLevelStage)
        );
    }

    #[test]
    fn trace_text_round_trip() {
        let k4 = complete_graph(4).unwrap();
        let cert = is_in_level(&k4, 3).unwrap().unwrap();
        let text = cert.to_string();
        assert!(text.starts_with("level 3\nappend 1 isolated\n  level 2\n"));
        assert_eq!(text.parse::<ConstructionTrace>().unwrap(), cert);
        assert_eq!(
            "empty\n".parse::<ConstructionTrace>().unwrap(),
            ConstructionTrace::Empty
        );
        assert!("level 1\nappend 2 isolated\n  vertex a\n"
            .parse::<ConstructionTrace>()
            .is_err());
        assert!("vertex a\nvertex b\n".parse::<ConstructionTrace>().is_err());
    }

    #[test]
    fn p4_certificate_text() {
        let cert = is_in_level(&path_graph(4).unwrap(), 1).unwrap().unwrap();
        assert_eq!(replay(&cert).unwrap(), path_graph(4).unwrap());
        for line in cert.to_string().lines().filter(|l| l.starts_with("append")) {
            assert!(line.ends_with("isolated") || line.contains(" pinned-at "));
        }
    }

    #[test]
    fn enumerate_small() {
        assert_eq!(enumerate_level(1, 0).unwrap(), BTreeSet::from([k1()]));
        assert!(enumerate_level(2, 0).unwrap().is_empty());
        // Labelled forests on 3 vertices: 1 edgeless + 3 single edges + 3 paths.
        assert_eq!(enumerate_level(3, 1).unwrap().len(), 7);
        let c4 = cycle_graph(4).unwrap();
        for m in 1..=4 {
            assert!(!enumerate_level(4, m).unwrap().contains(&c4));
        }
        assert!(enumerate_level(9, 1).is_err());
    }

    #[test]
    fn too_many_vertices() {
        let names: Vec<String> = (0..65).map(|i| format!("v{i:02}")).collect();
        let g = SimplicialGraph::new(names, Vec::<(String, String)>::new()).unwrap();
        assert!(matches!(
            is_in_level(&g, 1),
            Err(PincushionError::TooManyVertices { n: 65, .. })
        ));
    }
}
