//! Graphs from the worked examples, embedded so reproductions need no files.

use crate::graph::{parse_graph, DirectedGraph, PartiallyDirectedGraph};

pub const FIG2_G: &str = "n=4\n1 -> 3\n2 -> 3\n3 -> 4\n4 -> 2\n";
pub const FIG2_H: &str = "n=4\n1 -> 2\n3 -> 2\n4 -> 3\n2 -> 4\n";

pub const FIG3_LEFT: &str = "n=4\n2 -> 1\n3 -> 1\n4 -> 1\n3 -> 2\n4 -> 3\n";
pub const FIG3_MIDDLE: &str = "n=4\n2 -> 1\n3 -> 1\n4 -> 1\n3 -> 2\n3 -> 4\n";
pub const FIG3_RIGHT: &str = "n=4\n2 -> 1\n3 -> 1\n4 -> 1\n2 -> 3\n3 -> 4\n";

pub const FIG4_LEFT: &str = r#"{"n":4,"edges":[[4,1],[1,2],[1,3],[2,3],[2,4],[3,4]]}"#;
pub const FIG4_RIGHT: &str = "n=4\n2 -> 1\n3 -> 1\n3 -> 2\n4 -> 2\n4 -> 3\n1 -> 4\n";

/// Families 24→1, 35→2, 15→3, 25→4, 14→5.
pub const FIG5_LEFT: &str = "n=5\n2 -> 1\n4 -> 1\n3 -> 2\n5 -> 2\n1 -> 3\n5 -> 3\n2 -> 4\n5 -> 4\n1 -> 5\n4 -> 5\n";
/// Families 35→1, 14→2, 25→3, 15→4, 24→5.
pub const FIG5_RIGHT: &str = "n=5\n3 -> 1\n5 -> 1\n1 -> 2\n4 -> 2\n2 -> 3\n5 -> 3\n1 -> 4\n5 -> 4\n2 -> 5\n4 -> 5\n";

pub const FIG6_G: &str = "n=3\n1 -> 2\n2 -> 3\n3 -> 1\n";
pub const FIG6_H: &str = "n=3\n1 -> 3\n3 -> 2\n2 -> 1\n";

pub const FIG7_G: &str = "n=6
1 -> 2
2 -> 3
3 -> 4
1 -> 6
6 -> 5
5 -> 4
2 -> 4
4 -> 6
6 -> 2
1 -> 3
3 -> 5
5 -> 1
4 -> 1
3 -> 6
5 -> 2
";
pub const FIG7_H: &str = "n=6
2 -> 1
3 -> 2
3 -> 4
1 -> 6
5 -> 6
4 -> 5
4 -> 2
6 -> 4
2 -> 6
3 -> 1
5 -> 3
1 -> 5
1 -> 4
6 -> 3
5 -> 2
";

/// Characteristic imset shared by both Fig 4 graphs, in size-then-lex order over nonempty sets.
pub const FIG4_CHAR: [i64; 15] = [1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 1, 0, 0, 1, 0];
/// Standard imset shared by both Fig 4 graphs, in size-then-lex order including ∅.
pub const FIG4_STD: [i64; 16] = [0, -1, 0, 0, -1, 0, 0, 1, -1, 0, 0, 1, 0, 0, 1, 0];

pub fn graph(text: &str) -> DirectedGraph {
    parse_graph(text).expect("embedded fixture parses")
}

/// Essential graph of the Fig 3 class: 2→1, 3→1, 4→1 directed, 2−3 and 3−4 undirected.
pub fn fig3_essential() -> PartiallyDirectedGraph {
    PartiallyDirectedGraph::new(4, [(2, 1), (3, 1), (4, 1)].into(), [(2, 3), (3, 4)].into())
        .expect("valid fixture")
}

/// Name and text of every fixture graph.
pub const ALL: &[(&str, &str)] = &[
    ("fig2_g", FIG2_G),
    ("fig2_h", FIG2_H),
    ("fig3_left", FIG3_LEFT),
    ("fig3_middle", FIG3_MIDDLE),
    ("fig3_right", FIG3_RIGHT),
    ("fig4_left", FIG4_LEFT),
    ("fig4_right", FIG4_RIGHT),
    ("fig5_left", FIG5_LEFT),
    ("fig5_right", FIG5_RIGHT),
    ("fig6_g", FIG6_G),
    ("fig6_h", FIG6_H),
    ("fig7_g", FIG7_G),
    ("fig7_h", FIG7_H),
];

pub fn by_name(name: &str) -> Option<DirectedGraph> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| graph(t))
}
