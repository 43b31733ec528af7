//! Simple undirected graphs on dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest order accepted by the short graph6 header.
pub const GRAPH6_MAX_ORDER: usize = 62;

/// A simple undirected graph with sorted adjacency lists.
///
/// Immutable after construction; every constructor checks symmetry and
/// rejects loops.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph from an edge iterator. Duplicate edges are collapsed;
    /// the returned count says how many were dropped.
    pub fn from_edges_counting<I>(n: usize, edges: I) -> Result<(Self, usize)>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut doubled = 0;
        for list in &mut adj {
            list.sort_unstable();
            let before = list.len();
            list.dedup();
            doubled += before - list.len();
        }
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Ok((Graph { adj, m }, doubled / 2))
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        Self::from_edges_counting(n, edges).map(|(g, _)| g)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.adj.len()
    }

    #[inline]
    pub fn m(&self) -> usize {
        self.m
    }

    #[inline]
    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.adj[u]
    }

    #[inline]
    pub fn degree(&self, u: usize) -> usize {
        self.adj[u].len()
    }

    pub fn degrees(&self) -> impl Iterator<Item = usize> + '_ {
        self.adj.iter().map(Vec::len)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().min().unwrap_or(0)
    }

    /// Common degree if the graph is regular (the empty graph counts as
    /// 0-regular).
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.adj.first().map_or(0, Vec::len);
        self.degrees().all(|x| x == d).then_some(d)
    }

    pub fn is_cubic(&self) -> bool {
        self.n() > 0 && self.regular_degree() == Some(3)
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is
    /// `vertices[i]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let adj: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                let mut list: Vec<usize> = self.adj[v]
                    .iter()
                    .filter(|&&w| index[w] != usize::MAX)
                    .map(|&w| index[w])
                    .collect();
                list.sort_unstable();
                list
            })
            .collect();
        let m = adj.iter().map(Vec::len).sum::<usize>() / 2;
        Graph { adj, m }
    }

    /// Disjoint union; vertices of `other` are shifted by `self.n()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let shift = self.n();
        let edges = self
            .edges()
            .chain(other.edges().map(|(u, v)| (u + shift, v + shift)));
        Graph::from_edges(shift + other.n(), edges).expect("union of simple graphs is simple")
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut out = Vec::new();
        for start in 0..self.n() {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                for &v in &self.adj[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// No connected component of order exactly two.
    pub fn is_nice(&self) -> bool {
        self.first_k2_component().is_none()
    }

    /// Errors with the offending component unless the graph is nice.
    pub fn require_nice(&self) -> Result<()> {
        match self.first_k2_component() {
            Some(component) => Err(Error::NotNice { component }),
            None => Ok(()),
        }
    }

    fn first_k2_component(&self) -> Option<Vec<usize>> {
        // a two-vertex component is an edge whose endpoints both have degree 1
        self.edges()
            .find(|&(u, v)| self.degree(u) == 1 && self.degree(v) == 1)
            .map(|(u, v)| vec![u, v])
    }

    /// Multi-source BFS distances; `None` marks unreachable vertices.
    pub fn bfs_distances(&self, sources: &[usize]) -> Result<Vec<Option<usize>>> {
        if sources.is_empty() {
            return Err(Error::EmptySources);
        }
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        for &s in sources {
            if s >= self.n() {
                return Err(Error::VertexOutOfRange {
                    vertex: s,
                    n: self.n(),
                });
            }
            if dist[s].is_none() {
                dist[s] = Some(0);
                queue.push_back(s);
            }
        }
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &v in &self.adj[u] {
                if dist[v].is_none() {
                    dist[v] = Some(du + 1);
                    queue.push_back(v);
                }
            }
        }
        Ok(dist)
    }

    /// Length of a shortest cycle, `None` for forests. BFS from every vertex.
    pub fn girth(&self) -> Option<usize> {
        let n = self.n();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        let mut queue = VecDeque::new();
        for root in 0..n {
            dist.fill(usize::MAX);
            parent.fill(usize::MAX);
            dist[root] = 0;
            queue.clear();
            queue.push_back(root);
            while let Some(u) = queue.pop_front() {
                if let Some(b) = best {
                    // any cycle found from here on is at least 2*dist[u]+1 long
                    if 2 * dist[u] + 1 >= b {
                        break;
                    }
                }
                for &v in &self.adj[u] {
                    if dist[v] == usize::MAX {
                        dist[v] = dist[u] + 1;
                        parent[v] = u;
                        queue.push_back(v);
                    } else if parent[u] != v {
                        let len = dist[u] + dist[v] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// Proper 2-coloring if the graph has no odd cycle.
    pub fn bipartition(&self) -> Option<Bipartition> {
        let mut side = vec![None::<bool>; self.n()];
        for start in 0..self.n() {
            if side[start].is_some() {
                continue;
            }
            side[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(u) = queue.pop_front() {
                let su = side[u].unwrap();
                for &v in &self.adj[u] {
                    match side[v] {
                        None => {
                            side[v] = Some(!su);
                            queue.push_back(v);
                        }
                        Some(sv) if sv == su => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(Bipartition {
            side: side.into_iter().map(Option::unwrap).collect(),
        })
    }

    pub fn structure_report(&self) -> StructureReport {
        StructureReport {
            n: self.n(),
            m: self.m(),
            min_degree: self.min_degree(),
            max_degree: self.max_degree(),
            regular: self.regular_degree().is_some(),
            bipartition: self.bipartition(),
            connected: self.is_connected(),
            nice: self.is_nice(),
        }
    }

    /// Connected, bipartite with both sides of size `d` and all `d*d` edges.
    pub fn is_complete_bipartite_balanced(&self) -> bool {
        let n = self.n();
        if n == 0 || n % 2 == 1 {
            return false;
        }
        let d = n / 2;
        self.regular_degree() == Some(d)
            && self
                .bipartition()
                .is_some_and(|b| b.side.iter().filter(|&&s| s).count() == d)
    }

    pub fn is_complete(&self) -> bool {
        self.n() > 0 && self.regular_degree() == Some(self.n() - 1)
    }
}

/// Two-sided vertex classification in which every edge crosses sides.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Bipartition {
    pub side: Vec<bool>,
}

impl Bipartition {
    pub fn is_valid_for(&self, g: &Graph) -> bool {
        self.side.len() == g.n() && g.edges().all(|(u, v)| self.side[u] != self.side[v])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureReport {
    pub n: usize,
    pub m: usize,
    pub min_degree: usize,
    pub max_degree: usize,
    pub regular: bool,
    pub bipartition: Option<Bipartition>,
    pub connected: bool,
    pub nice: bool,
}

/// Parses one graph6 record (short header only, `n <= 62`).
///
/// A trailing line terminator is ignored; any other trailing byte is an
/// error. The optional `>>graph6<<` prefix is accepted.
pub fn parse_graph6(line: &str) -> Result<Graph> {
    let line = line.trim_end_matches(['\n', '\r']);
    let (prefix_len, body) = match line.strip_prefix(">>graph6<<") {
        Some(rest) => (10, rest.as_bytes()),
        None => (0, line.as_bytes()),
    };
    let err = |offset: usize, message: String| Error::Graph6 {
        offset: offset + prefix_len,
        message,
    };
    let header = *body.first().ok_or_else(|| err(0, "empty record".into()))?;
    if !(63..=126).contains(&header) {
        return Err(err(0, format!("byte {header} outside 63..126")));
    }
    if header == 126 {
        return Err(err(
            0,
            format!("long header (order > {GRAPH6_MAX_ORDER}) is not supported"),
        ));
    }
    let n = (header - 63) as usize;
    let bits = n * n.saturating_sub(1) / 2;
    let expected = 1 + bits.div_ceil(6);
    if body.len() < expected {
        return Err(err(
            body.len(),
            format!(
                "record truncated: order {n} needs {expected} bytes, got {}",
                body.len()
            ),
        ));
    }
    if body.len() > expected {
        return Err(err(expected, "trailing bytes after adjacency data".into()));
    }
    for (i, &b) in body.iter().enumerate().skip(1) {
        if !(63..=126).contains(&b) {
            return Err(err(i, format!("byte {b} outside 63..126")));
        }
    }
    let bit = |k: usize| ((body[1 + k / 6] - 63) >> (5 - k % 6)) & 1 == 1;
    let pad_start = bits;
    if let Some(k) = (pad_start..(expected - 1) * 6).find(|&k| bit(k)) {
        return Err(err(1 + k / 6, "non-zero padding bits".into()));
    }
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if bit(k) {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, edges)
}

/// Encodes a graph of order at most 62 in graph6.
pub fn encode_graph6(g: &Graph) -> Result<String> {
    let n = g.n();
    if n > GRAPH6_MAX_ORDER {
        return Err(Error::Precondition(format!(
            "graph6 short form supports order <= {GRAPH6_MAX_ORDER}, got {n}"
        )));
    }
    let bits = n * n.saturating_sub(1) / 2;
    let mut data = vec![0u8; bits.div_ceil(6)];
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if g.has_edge(i, j) {
                data[k / 6] |= 1 << (5 - k % 6);
            }
            k += 1;
        }
    }
    let mut out = String::with_capacity(1 + data.len());
    out.push((n as u8 + 63) as char);
    out.extend(data.into_iter().map(|b| (b + 63) as char));
    Ok(out)
}

/// Result of parsing an edge list.
#[derive(Debug, Clone)]
pub struct EdgeList {
    pub graph: Graph,
    /// Repeated edges that were collapsed.
    pub duplicates: usize,
}

/// Parses `n` on the first line followed by one `u v` pair per line.
/// Blank lines and `#` comments are skipped.
pub fn parse_edge_list(text: &str) -> Result<EdgeList> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let (first_line, first) = lines.next().ok_or(Error::EdgeList {
        line: 1,
        message: "missing vertex count".into(),
    })?;
    let n: usize = first.parse().map_err(|_| Error::EdgeList {
        line: first_line,
        message: format!("expected vertex count, got {first:?}"),
    })?;
    let mut edges = Vec::new();
    for (line, l) in lines {
        let bad = |message: String| Error::EdgeList { line, message };
        let mut it = l.split_whitespace();
        let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
            return Err(bad(format!("expected two vertex indices, got {l:?}")));
        };
        let u: usize = a.parse().map_err(|_| bad(format!("bad vertex {a:?}")))?;
        let v: usize = b.parse().map_err(|_| bad(format!("bad vertex {b:?}")))?;
        if u >= n || v >= n {
            return Err(bad(format!("vertex {} out of range 0..{n}", u.max(v))));
        }
        if u == v {
            return Err(bad(format!("self-loop at vertex {u}")));
        }
        edges.push((u, v));
    }
    let (graph, duplicates) = Graph::from_edges_counting(n, edges)?;
    if duplicates > 0 {
        log::warn!("edge list: collapsed {duplicates} duplicate edge(s)");
    }
    Ok(EdgeList { graph, duplicates })
}

/// Writes a graph as an edge list accepted by [`parse_edge_list`].
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = format!("{}\n", g.n());
    for (u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
