//! Text and JSON graph formats.
//!
//! Text:
//! ```text
//! # comment
//! n=4
//! 4 -> 1
//! 1 -> 2
//! ```
//! JSON: `{"n": 4, "edges": [[4, 1], [1, 2]]}`.

use serde::{Deserialize, Serialize};

use super::nodeset::MAX_NODES;
use super::DirectedGraph;
use crate::error::{Error, Result};

#[derive(Serialize, Deserialize, Debug, Clone, PartialEq, Eq)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<(usize, usize)>,
}

impl From<&DirectedGraph> for GraphJson {
    fn from(g: &DirectedGraph) -> Self {
        GraphJson { n: g.n(), edges: g.edges() }
    }
}

impl TryFrom<GraphJson> for DirectedGraph {
    type Error = Error;
    fn try_from(j: GraphJson) -> Result<Self> {
        if j.n > MAX_NODES || j.n == 0 {
            return Err(Error::InvalidNodeCount(j.n));
        }
        DirectedGraph::from_edges(j.n, j.edges)
    }
}

impl Serialize for DirectedGraph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        GraphJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for DirectedGraph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        DirectedGraph::try_from(j).map_err(serde::de::Error::custom)
    }
}

/// Accepts either format; JSON is detected by a leading `{`.
pub fn parse_graph(input: &str) -> Result<DirectedGraph> {
    if input.trim_start().starts_with('{') {
        let j: GraphJson = serde_json::from_str(input)?;
        DirectedGraph::try_from(j)
    } else {
        parse_text(input)
    }
}

fn parse_text(input: &str) -> Result<DirectedGraph> {
    let mut graph: Option<DirectedGraph> = None;
    for (idx, raw) in input.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: line_no, message };
        match graph.as_mut() {
            None => {
                let (key, val) = line
                    .split_once('=')
                    .ok_or_else(|| err(format!("expected `n=<int>`, found `{line}`")))?;
                if key.trim() != "n" {
                    return Err(err(format!("expected `n=<int>`, found `{line}`")));
                }
                let n: usize = val
                    .trim()
                    .parse()
                    .map_err(|_| err(format!("invalid node count `{}`", val.trim())))?;
                graph = Some(DirectedGraph::empty(n)?);
            }
            Some(g) => {
                let (u, v) = line
                    .split_once("->")
                    .ok_or_else(|| err(format!("expected `<u> -> <v>`, found `{line}`")))?;
                let u: usize =
                    u.trim().parse().map_err(|_| err(format!("invalid node id `{}`", u.trim())))?;
                let v: usize =
                    v.trim().parse().map_err(|_| err(format!("invalid node id `{}`", v.trim())))?;
                g.add_edge(u, v)?;
            }
        }
    }
    graph.ok_or(Error::Parse { line: 0, message: "missing `n=<int>` header".into() })
}
