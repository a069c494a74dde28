use super::{AgentSet, ColoredGraph};

/// A graph with `∅`-joined nodes merged.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quotient {
    /// One node per class; key and colour come from the class's first member.
    pub graph: ColoredGraph,
    /// Original node indices of each class, ascending. Classes are ordered by
    /// their first member.
    pub classes: Vec<Vec<usize>>,
    /// Class of each original node.
    pub class_of: Vec<usize>,
    /// Two nodes of one class with different colours, if any. No morphism into
    /// a graph that separates its nodes exists in that case.
    pub conflict: Option<(usize, usize)>,
}

/// Merges nodes that any morphism into a node-separating graph (every decision
/// graph) must send to the same target.
///
/// Nodes joined by `∅` are merged, and the colour of a pair of classes is the
/// intersection of the colours between their members. Merging repeats until no
/// two distinct classes meet in `∅`. On an observation graph `∅` is already an
/// equivalence with uniform colours across members, so a single round suffices
/// and edge colours are inherited unchanged.
pub fn quotient_by_indistinguishability(graph: &ColoredGraph) -> Quotient {
    let size = graph.node_count();
    let mut parent: Vec<usize> = (0..size).collect();
    for (u, v, colour) in graph.pairs() {
        if colour.is_empty() {
            union(&mut parent, u, v);
        }
    }
    loop {
        let (classes, class_of) = collect_classes(&mut parent);
        let class_edges = class_colours(graph, &classes, &class_of);
        let count = classes.len();
        let mut merged = false;
        for a in 0..count {
            for b in a + 1..count {
                if class_edges[a * count + b].is_empty() {
                    union(&mut parent, classes[a][0], classes[b][0]);
                    merged = true;
                }
            }
        }
        if merged {
            continue;
        }
        let conflict = classes.iter().find_map(|members| {
            let first = members[0];
            members
                .iter()
                .find(|&&m| graph.colour(m) != graph.colour(first))
                .map(|&m| (first, m))
        });
        let keys = classes.iter().map(|c| graph.key(c[0]).clone()).collect();
        let colours = classes.iter().map(|c| graph.colour(c[0])).collect();
        let quotient = ColoredGraph::from_fn(graph.agents(), keys, colours, |a, b| class_edges[a * count + b])
            .expect("agent count already validated");
        return Quotient {
            graph: quotient,
            classes,
            class_of,
            conflict,
        };
    }
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

fn union(parent: &mut [usize], a: usize, b: usize) {
    let (ra, rb) = (find(parent, a), find(parent, b));
    // smaller index stays the root so roots are first members
    if ra < rb {
        parent[rb] = ra;
    } else if rb < ra {
        parent[ra] = rb;
    }
}

fn collect_classes(parent: &mut [usize]) -> (Vec<Vec<usize>>, Vec<usize>) {
    let size = parent.len();
    let mut class_of = vec![usize::MAX; size];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut root_class = vec![usize::MAX; size];
    for (v, class) in class_of.iter_mut().enumerate() {
        let root = find(parent, v);
        if root_class[root] == usize::MAX {
            root_class[root] = classes.len();
            classes.push(Vec::new());
        }
        *class = root_class[root];
        classes[root_class[root]].push(v);
    }
    (classes, class_of)
}

fn class_colours(graph: &ColoredGraph, classes: &[Vec<usize>], class_of: &[usize]) -> Vec<AgentSet> {
    let count = classes.len();
    let mut edges = vec![AgentSet::full(graph.agents()); count * count];
    for (u, v, colour) in graph.pairs() {
        let (a, b) = (class_of[u], class_of[v]);
        if a != b {
            edges[a * count + b] = edges[a * count + b].intersection(colour);
            edges[b * count + a] = edges[b * count + a].intersection(colour);
        }
    }
    edges
}

#[cfg(test)]
mod tests {
    use indexmap::IndexSet;

    use super::*;
    use crate::graph::{observation_graph, NodeKey};
    use crate::model::test_support::two_agent_problem;
    use crate::model::{ObservationProblem, Observer, Token, Word};

    fn blind_problem(legal: &[&str]) -> ObservationProblem {
        // Both agents observe only `a`, so `s = b` and `t = bb` look identical.
        ObservationProblem::new(
            ["a", "b"].into_iter().map(Token::new).collect(),
            ["b", "bb"].iter().map(|s| Word::from_symbols(s)).collect(),
            legal.iter().map(|s| Word::from_symbols(s)).collect::<IndexSet<_>>(),
            vec![Observer::projection(["a"]), Observer::projection(["a"])],
        )
    }

    #[test]
    fn two_agent_problem_is_identity() {
        let g = observation_graph(&two_agent_problem()).unwrap();
        let q = quotient_by_indistinguishability(&g);
        assert_eq!(q.conflict, None);
        assert_eq!(q.graph, g);
        assert_eq!(q.class_of, vec![0, 1, 2, 3]);
    }

    #[test]
    fn colour_clash_is_reported() {
        let g = observation_graph(&blind_problem(&["b"])).unwrap();
        let q = quotient_by_indistinguishability(&g);
        assert_eq!(q.conflict, Some((0, 1)));
        assert_eq!(q.graph.node_count(), 1);
    }

    #[test]
    fn compatible_merge() {
        let g = observation_graph(&blind_problem(&["b", "bb"])).unwrap();
        let q = quotient_by_indistinguishability(&g);
        assert_eq!(q.conflict, None);
        assert_eq!(q.graph.node_count(), 1);
        assert!(q.graph.colour(0));
        assert_eq!(q.classes, vec![vec![0, 1]]);
    }

    #[test]
    fn intersection_forces_further_merges() {
        // 0 ~∅ 1, and colours {1} and {2} to node 2 intersect to ∅.
        let keys = (0..3).map(|i| NodeKey::Label(i.to_string())).collect();
        let g = ColoredGraph::from_fn(2, keys, vec![false; 3], |u, v| match (u, v) {
            (0, 1) => AgentSet::EMPTY,
            (0, 2) => AgentSet::singleton(0),
            _ => AgentSet::singleton(1),
        })
        .unwrap();
        let q = quotient_by_indistinguishability(&g);
        assert_eq!(q.graph.node_count(), 1);
        assert!(q.graph.separates_nodes());
    }
}
