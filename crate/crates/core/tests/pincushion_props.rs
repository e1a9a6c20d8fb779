use graphprod::graph::{disjoint_union, pin_graph, SimplicialGraph};
use graphprod::pincushion::{is_in_level, min_level, replay, ConstructionTrace, LevelResult};
use proptest::prelude::*;

/// Random graph on vertices `{prefix}1 ..= {prefix}n`.
fn graph(prefix: &'static str, max_n: usize) -> impl Strategy<Value = SimplicialGraph> {
    (1..=max_n).prop_flat_map(move |n| {
        prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let names: Vec<String> = (1..=n).map(|i| format!("{prefix}{i}")).collect();
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] {
                        edges.push((names[i].clone(), names[j].clone()));
                    }
                    k += 1;
                }
            }
            SimplicialGraph::new(names, edges).unwrap()
        })
    })
}

fn level(g: &SimplicialGraph) -> Option<usize> {
    min_level(g).unwrap().min_level()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn levels_are_monotone(g in graph("v", 7)) {
        let members: Vec<bool> = (0..=g.vertex_count())
            .map(|m| is_in_level(&g, m).unwrap().is_some())
            .collect();
        for w in members.windows(2) {
            prop_assert!(!w[0] || w[1]);
        }
    }

    #[test]
    fn disjoint_union_stays_in_the_larger_level(a in graph("a", 5), b in graph("b", 5)) {
        let u = disjoint_union(&a, &b).unwrap();
        match (level(&a), level(&b)) {
            (Some(x), Some(y)) => prop_assert!(level(&u).unwrap() <= x.max(y).max(1)),
            _ => prop_assert_eq!(level(&u), None),
        }
    }

    #[test]
    fn pinning_a_lower_level_block_stays_in_level(a in graph("a", 5), b in graph("b", 4), pick in any::<usize>()) {
        if let (Some(x), Some(y)) = (level(&a), level(&b)) {
            let v = a.vertices()[pick % a.vertex_count()].clone();
            let pinned = pin_graph(&a, &v, &b).unwrap();
            prop_assert!(level(&pinned).unwrap() <= x.max(y + 1));
        }
    }

    #[test]
    fn certificates_replay_and_round_trip(g in graph("v", 8)) {
        if let LevelResult::Member { min_level, trace } = min_level(&g).unwrap() {
            prop_assert_eq!(trace.level(), min_level);
            prop_assert_eq!(&replay(&trace).unwrap(), &g);
            let text = trace.to_string();
            let back: ConstructionTrace = text.parse().unwrap();
            prop_assert_eq!(back, trace);
        }
    }

    #[test]
    fn graph_text_round_trips(g in graph("v", 8)) {
        let back: SimplicialGraph = g.to_string().parse().unwrap();
        prop_assert_eq!(back, g);
    }
}
