//! Imset serialization and the aligned text table.

use serde::{Deserialize, Serialize};

use super::imsets::{subsets_by_size, CharImset, StdImset};
use crate::error::{Error, Result};
use crate::graph::{NodeSet, MAX_NODES};

#[derive(Serialize, Deserialize, Clone, Copy, Debug, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum ImsetKind {
    Char,
    Std,
}

#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ImsetEntry {
    pub set: NodeSet,
    pub value: i64,
}

/// `{"n": .., "kind": "char"|"std", "entries": [{"set": [..], "value": ..}]}`.
///
/// Entries are ordered by set size, then lexicographically.
#[derive(Serialize, Deserialize, Clone, Debug, PartialEq, Eq)]
pub struct ImsetJson {
    pub n: usize,
    pub kind: ImsetKind,
    pub entries: Vec<ImsetEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Imset {
    Char(CharImset),
    Std(StdImset),
}

impl ImsetJson {
    /// `include_zeros` writes every nonempty coordinate; otherwise zeros are omitted.
    pub fn from_char(c: &CharImset, include_zeros: bool) -> Self {
        let entries = subsets_by_size(c.n())
            .into_iter()
            .filter(|s| !s.is_empty())
            .map(|s| ImsetEntry { set: s, value: c.get(s) })
            .filter(|e| include_zeros || e.value != 0)
            .collect();
        ImsetJson { n: c.n(), kind: ImsetKind::Char, entries }
    }

    pub fn from_std(s: &StdImset) -> Self {
        let entries = subsets_by_size(s.n())
            .into_iter()
            .map(|set| ImsetEntry { set, value: s.get(set) })
            .filter(|e| e.value != 0)
            .collect();
        ImsetJson { n: s.n(), kind: ImsetKind::Std, entries }
    }

    pub fn into_imset(self) -> Result<Imset> {
        if self.n == 0 || self.n > MAX_NODES {
            return Err(Error::InvalidNodeCount(self.n));
        }
        let full = NodeSet::full(self.n);
        if let Some(e) = self.entries.iter().find(|e| !e.set.is_subset(full)) {
            return Err(Error::InvalidImset(format!("set {} exceeds n = {}", e.set, self.n)));
        }
        match self.kind {
            ImsetKind::Char => {
                let mut c = CharImset::zeros(self.n)?;
                for e in self.entries {
                    if e.set.is_empty() {
                        return Err(Error::InvalidImset(
                            "characteristic imsets have no empty-set coordinate".into(),
                        ));
                    }
                    c.set(e.set, e.value);
                }
                Ok(Imset::Char(c))
            }
            ImsetKind::Std => Ok(Imset::Std(StdImset::new(
                self.n,
                self.entries.into_iter().map(|e| (e.set, e.value)),
            )?)),
        }
    }
}

/// Two-row table: set labels over values, columns right-aligned.
pub fn render_table(labels: &[String], values: &[i64]) -> String {
    let cells: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    let widths: Vec<usize> = labels
        .iter()
        .zip(&cells)
        .map(|(l, c)| l.chars().count().max(c.chars().count()))
        .collect();
    let line = |items: &[String]| {
        items
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{:>w$}", s, w = w))
            .collect::<Vec<_>>()
            .join(" ")
    };
    format!("{}\n{}\n", line(labels), line(&cells))
}

pub fn render_char(c: &CharImset) -> String {
    let sets: Vec<NodeSet> = subsets_by_size(c.n()).into_iter().filter(|s| !s.is_empty()).collect();
    let labels: Vec<String> = sets.iter().map(|s| s.to_string()).collect();
    let values: Vec<i64> = sets.iter().map(|&s| c.get(s)).collect();
    render_table(&labels, &values)
}

pub fn render_std(s: &StdImset) -> String {
    let sets = subsets_by_size(s.n());
    let labels: Vec<String> = sets.iter().map(|x| x.to_string()).collect();
    let values: Vec<i64> = sets.iter().map(|&x| s.get(x)).collect();
    render_table(&labels, &values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::DirectedGraph;
    use crate::imset::{char_imset, std_imset};

    #[test]
    fn char_roundtrip_and_zero_omission() {
        let g = DirectedGraph::from_edges(2, [(1, 2)]).unwrap();
        let c = char_imset(&g);
        let j = ImsetJson::from_char(&c, false);
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"n":2,"kind":"char","entries":[{"set":[1],"value":1},{"set":[2],"value":1},{"set":[1,2],"value":1}]}"#
        );
        assert_eq!(j.into_imset().unwrap(), Imset::Char(c));
    }

    #[test]
    fn std_has_empty_set() {
        let g = DirectedGraph::from_edges(2, [(1, 2)]).unwrap();
        let j = ImsetJson::from_std(&std_imset(&g));
        assert_eq!(
            serde_json::to_string(&j).unwrap(),
            r#"{"n":2,"kind":"std","entries":[{"set":[],"value":-1},{"set":[1,2],"value":1}]}"#
        );
    }

    #[test]
    fn rejects_bad_sets() {
        let bad = r#"{"n":2,"kind":"char","entries":[{"set":[3],"value":1}]}"#;
        let j: ImsetJson = serde_json::from_str(bad).unwrap();
        assert!(j.into_imset().is_err());
        let empty = r#"{"n":2,"kind":"char","entries":[{"set":[],"value":1}]}"#;
        let j: ImsetJson = serde_json::from_str(empty).unwrap();
        assert!(j.into_imset().is_err());
    }

    #[test]
    fn table_alignment() {
        let t = render_table(&["1".into(), "12".into()], &[1, -1]);
        assert_eq!(t, "1 12\n1 -1\n");
    }
}
