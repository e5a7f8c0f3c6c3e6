// SPDX-License-Identifier: Apache-2.0

//! Undirected simple graphs in compact (CSR) form, plus Pajek and edge-list I/O.
//!
//! Every graph keeps the identifiers found in its source file as `labels`;
//! algorithms work on dense 0-based indices and translate back only at the
//! I/O boundary.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Pajek,
    #[serde(rename = "edgelist")]
    EdgeList,
}

impl FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "pajek" | "net" => Ok(Format::Pajek),
            "edgelist" | "edge-list" | "edges" => Ok(Format::EdgeList),
            other => Err(Error::InvalidParameter(format!(
                "unknown graph format '{other}'"
            ))),
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct ParseOptions {
    pub format: Format,
    /// Edge lists only: accept node id 0. Pajek ids are always 1-based.
    pub zero_based: bool,
}

impl ParseOptions {
    pub fn new(format: Format) -> Self {
        Self {
            format,
            zero_based: false,
        }
    }
}

/// Immutable undirected, unweighted graph without self-loops or parallel edges.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    offsets: Vec<usize>,
    targets: Vec<usize>,
    labels: Vec<u64>,
    index: HashMap<u64, usize>,
    edge_count: usize,
}

impl Graph {
    /// Builds a graph over `labels.len()` nodes from index pairs.
    ///
    /// Pairs are symmetrized; self-loops and duplicates are dropped.
    pub fn from_index_edges<I>(labels: Vec<u64>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let n = labels.len();
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, &label) in labels.iter().enumerate() {
            if index.insert(label, i).is_some() {
                return Err(Error::InvalidParameter(format!(
                    "duplicate node label {label}"
                )));
            }
        }

        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) references a node index >= {n}"
                )));
            }
            if u == v {
                continue;
            }
            adj[u].push(v);
            adj[v].push(u);
        }

        let mut offsets = Vec::with_capacity(n + 1);
        let mut targets = Vec::new();
        offsets.push(0);
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            targets.extend_from_slice(list);
            offsets.push(targets.len());
        }
        let edge_count = targets.len() / 2;

        Ok(Self {
            offsets,
            targets,
            labels,
            index,
            edge_count,
        })
    }

    /// Convenience constructor with labels `1..=n`.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_index_edges((1..=n as u64).collect(), edges)
    }

    pub fn node_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbor indices of `i`.
    #[inline]
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.targets[self.offsets[i]..self.offsets[i + 1]]
    }

    #[inline]
    pub fn degree(&self, i: usize) -> usize {
        self.offsets[i + 1] - self.offsets[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.neighbors(i).binary_search(&j).is_ok()
    }

    pub fn label(&self, i: usize) -> u64 {
        self.labels[i]
    }

    pub fn labels(&self) -> &[u64] {
        &self.labels
    }

    pub fn index_of(&self, label: u64) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Resolves labels to indices, failing on the first unknown one.
    pub fn indices_of(&self, labels: &[u64]) -> Result<Vec<usize>> {
        labels
            .iter()
            .map(|&l| self.index_of(l).ok_or(Error::UnknownLabel(l)))
            .collect()
    }

    /// Each undirected edge once, as `(i, j)` with `i < j`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.node_count()).flat_map(move |i| {
            self.neighbors(i)
                .iter()
                .filter(move |&&j| i < j)
                .map(move |&j| (i, j))
        })
    }

    pub fn parse<R: BufRead>(reader: R, opts: ParseOptions) -> Result<Self> {
        match opts.format {
            Format::Pajek => parse_pajek(reader),
            Format::EdgeList => parse_edge_list(reader, opts.zero_based),
        }
    }

    pub fn parse_str(text: &str, opts: ParseOptions) -> Result<Self> {
        Self::parse(text.as_bytes(), opts)
    }

    /// Writes the graph so that [`Graph::parse`] with the same format
    /// reproduces it. Pajek output requires labels to be exactly `1..=n`
    /// in index order, which holds for every Pajek-parsed graph.
    pub fn write<W: Write>(&self, mut w: W, format: Format) -> Result<()> {
        match format {
            Format::Pajek => {
                let contiguous = self
                    .labels
                    .iter()
                    .enumerate()
                    .all(|(i, &l)| l == i as u64 + 1);
                if !contiguous {
                    return Err(Error::InvalidParameter(
                        "pajek output needs labels 1..=n in index order".into(),
                    ));
                }
                writeln!(w, "*Vertices {}", self.node_count())?;
                writeln!(w, "*Edges")?;
                for (i, j) in self.edges() {
                    writeln!(w, "{} {}", i + 1, j + 1)?;
                }
            }
            Format::EdgeList => {
                for (i, j) in self.edges() {
                    writeln!(w, "{} {}", self.labels[i], self.labels[j])?;
                }
            }
        }
        Ok(())
    }
}

fn parse_err(line: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        message: message.into(),
    }
}

fn parse_id(token: &str, line: usize) -> Result<u64> {
    token.parse::<u64>().map_err(|_| {
        parse_err(
            line,
            format!("expected a non-negative integer node id, found '{token}'"),
        )
    })
}

#[derive(PartialEq)]
enum Section {
    Preamble,
    Vertices,
    Pairs,
    Lists,
}

fn parse_pajek<R: BufRead>(reader: R) -> Result<Graph> {
    let mut declared: Option<usize> = None;
    let mut section = Section::Preamble;
    let mut edges = Vec::new();

    let check = |id: u64, line: usize, n: usize| -> Result<usize> {
        if id == 0 || id as usize > n {
            Err(Error::LabelOutOfRange {
                line,
                label: id,
                max: n,
            })
        } else {
            Ok(id as usize - 1)
        }
    };

    for (k, raw) in reader.lines().enumerate() {
        let line_no = k + 1;
        let raw = raw?;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }

        if let Some(header) = line.strip_prefix('*') {
            let mut parts = header.split_whitespace();
            let keyword = parts.next().unwrap_or("").to_ascii_lowercase();
            match keyword.as_str() {
                "network" => {}
                "vertices" => {
                    if declared.is_some() {
                        return Err(parse_err(line_no, "duplicate *Vertices header"));
                    }
                    let count = parts
                        .next()
                        .ok_or_else(|| parse_err(line_no, "*Vertices without a count"))?;
                    let n = count.parse::<usize>().map_err(|_| {
                        parse_err(line_no, format!("invalid vertex count '{count}'"))
                    })?;
                    declared = Some(n);
                    section = Section::Vertices;
                }
                "edges" | "arcs" => section = Section::Pairs,
                "edgeslist" | "arcslist" => section = Section::Lists,
                other => {
                    return Err(parse_err(
                        line_no,
                        format!("unsupported section '*{other}'"),
                    ))
                }
            }
            if section != Section::Preamble && declared.is_none() {
                return Err(parse_err(line_no, "section before *Vertices header"));
            }
            continue;
        }

        let n = match (&section, declared) {
            (Section::Preamble, _) | (_, None) => {
                return Err(parse_err(line_no, "data line before *Vertices header"))
            }
            (_, Some(n)) => n,
        };

        let mut tokens = line.split_whitespace();
        let first = tokens.next().expect("non-empty line has a token");
        match section {
            Section::Vertices => {
                check(parse_id(first, line_no)?, line_no, n)?;
            }
            Section::Pairs => {
                let u = check(parse_id(first, line_no)?, line_no, n)?;
                let second = tokens
                    .next()
                    .ok_or_else(|| parse_err(line_no, "edge line needs two endpoints"))?;
                let v = check(parse_id(second, line_no)?, line_no, n)?;
                edges.push((u, v));
            }
            Section::Lists => {
                let u = check(parse_id(first, line_no)?, line_no, n)?;
                for tok in tokens {
                    edges.push((u, check(parse_id(tok, line_no)?, line_no, n)?));
                }
            }
            Section::Preamble => unreachable!(),
        }
    }

    let n = declared.ok_or_else(|| parse_err(1, "missing *Vertices header"))?;
    Graph::from_edges(n, edges)
}

fn parse_edge_list<R: BufRead>(reader: R, zero_based: bool) -> Result<Graph> {
    let mut raw_edges = Vec::new();
    for (k, raw) in reader.lines().enumerate() {
        let line_no = k + 1;
        let raw = raw?;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut tokens = content.split_whitespace();
        let u = parse_id(tokens.next().expect("non-empty"), line_no)?;
        let v = parse_id(
            tokens
                .next()
                .ok_or_else(|| parse_err(line_no, "edge line needs two endpoints"))?,
            line_no,
        )?;
        if !zero_based && (u == 0 || v == 0) {
            return Err(parse_err(
                line_no,
                "node id 0 in a 1-based edge list (use the zero-based option)",
            ));
        }
        raw_edges.push((u, v));
    }
    if raw_edges.is_empty() {
        return Err(Error::EmptyGraph);
    }

    let mut labels: Vec<u64> = raw_edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    labels.sort_unstable();
    labels.dedup();
    let pos = |l: u64| labels.binary_search(&l).expect("label collected above");
    let edges: Vec<(usize, usize)> = raw_edges.iter().map(|&(u, v)| (pos(u), pos(v))).collect();
    Graph::from_index_edges(labels, edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pajek(s: &str) -> Result<Graph> {
        Graph::parse_str(s, ParseOptions::new(Format::Pajek))
    }

    fn edgelist(s: &str) -> Result<Graph> {
        Graph::parse_str(s, ParseOptions::new(Format::EdgeList))
    }

    #[test]
    fn minimal_pajek() {
        let g = pajek("*Vertices 3\n*Edges\n1 2\n2 3\n").unwrap();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.neighbors(1), &[0, 2]);
    }

    #[test]
    fn pajek_vertex_lines_arcs_and_weights() {
        let text =
            "% comment\n*Network demo\n*Vertices 4\n1 \"Anchorage Intl\" 0.1 0.2 0.5\n2 \"b\"\n\
                    *Arcs\n1 2 0.5\n2 1 0.5\n*Edges\n3 4 2\n";
        let g = pajek(text).unwrap();
        assert_eq!(g.node_count(), 4);
        assert_eq!(g.edge_count(), 2);
        assert!(g.has_edge(0, 1) && g.has_edge(1, 0));
    }

    #[test]
    fn pajek_edges_list_section() {
        let g = pajek("*Vertices 4\n*Edgeslist\n1 2 3 4\n").unwrap();
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.edge_count(), 3);
    }

    #[test]
    fn pajek_out_of_range() {
        match pajek("*Vertices 3\n*Edges\n1 4\n") {
            Err(Error::LabelOutOfRange {
                line: 3,
                label: 4,
                max: 3,
            }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            pajek("*Vertices 3\n*Edges\n0 1\n"),
            Err(Error::LabelOutOfRange { .. })
        ));
    }

    #[test]
    fn pajek_malformed() {
        assert!(matches!(pajek("1 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            pajek("*Vertices x\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(matches!(
            pajek("*Vertices 2\n*Edges\n1\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            pajek("*Vertices 2\n*Edges\n1 b\n"),
            Err(Error::Parse { line: 3, .. })
        ));
        assert!(matches!(
            pajek("*Vertices 2\n*Matrix\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(matches!(pajek("*Vertices 0\n"), Err(Error::EmptyGraph)));
        assert!(matches!(pajek(""), Err(Error::Parse { .. })));
    }

    #[test]
    fn edge_list_cleaning() {
        let g = edgelist("# header\n1 2\n1 2\n3 3\n2 1 # reversed\n").unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.node_count(), 3);
        let three = g.index_of(3).unwrap();
        assert_eq!(g.degree(three), 0);
        assert!(g.neighbors(three).is_empty());
    }

    #[test]
    fn edge_list_labels_and_zero_based() {
        let g = edgelist("10 20\n20 30\n").unwrap();
        assert_eq!(g.labels(), &[10, 20, 30]);
        assert!(matches!(
            edgelist("0 1\n"),
            Err(Error::Parse { line: 1, .. })
        ));
        let opts = ParseOptions {
            format: Format::EdgeList,
            zero_based: true,
        };
        let g = Graph::parse_str("0 1\n1 2\n", opts).unwrap();
        assert_eq!(g.labels(), &[0, 1, 2]);
        assert!(matches!(edgelist("# nothing\n"), Err(Error::EmptyGraph)));
    }

    #[test]
    fn write_then_parse_is_identity() {
        let g = pajek("*Vertices 5\n*Edges\n1 2\n2 3\n3 1\n4 2\n").unwrap();
        let mut buf = Vec::new();
        g.write(&mut buf, Format::Pajek).unwrap();
        assert_eq!(pajek(std::str::from_utf8(&buf).unwrap()).unwrap(), g);

        let g = edgelist("7 9\n9 11\n").unwrap();
        let mut buf = Vec::new();
        g.write(&mut buf, Format::EdgeList).unwrap();
        assert_eq!(edgelist(std::str::from_utf8(&buf).unwrap()).unwrap(), g);
        assert!(g.write(Vec::new(), Format::Pajek).is_err());
    }

    #[test]
    fn format_from_str() {
        assert_eq!("Pajek".parse::<Format>().unwrap(), Format::Pajek);
        assert_eq!("edgelist".parse::<Format>().unwrap(), Format::EdgeList);
        assert!("gml".parse::<Format>().is_err());
    }
}
