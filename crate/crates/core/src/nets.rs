//! Noncrossing perfect matchings on a line of grouped vertices, and the
//! bijection with two-row semistandard tableaux.
//!
//! The `2d - 2` vertices sit on a line, numbered from 1, and are split into
//! consecutive blocks of sizes `a_1, ..., a_q`. A net is a perfect matching
//! whose chords, drawn in the upper half plane, do not cross and never join
//! two vertices of the same block. Nets with a given block structure are
//! counted by the same Kostka number as the tableaux with that content; the
//! maps [`net_to_ssyt`] and [`ssyt_to_net`] realize the bijection and are
//! exercised as mutual inverses by the test suite.

use crate::combinatorics::{ContentVector, Tableau};
use crate::error::{Error, Result};

/// Consecutive blocks of sizes `a_1, ..., a_q` covering vertices
/// `1..=2d-2` left to right.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockStructure {
    content: ContentVector,
    /// `starts[j]` is the first vertex of block `j+1`; a trailing sentinel
    /// holds `2d - 1`.
    starts: Vec<usize>,
}

impl BlockStructure {
    pub fn new(content: ContentVector) -> Self {
        let mut starts = Vec::with_capacity(content.block_count() + 1);
        let mut next = 1;
        for &a in content.entries() {
            starts.push(next);
            next += a;
        }
        starts.push(next);
        Self { content, starts }
    }

    pub fn content(&self) -> &ContentVector {
        &self.content
    }

    pub fn vertex_count(&self) -> usize {
        self.content.total()
    }

    /// Block (1-based) containing vertex `v` (1-based).
    pub fn block_of(&self, v: usize) -> usize {
        assert!(v >= 1 && v <= self.vertex_count(), "vertex out of range");
        self.starts.partition_point(|&s| s <= v)
    }

    /// Vertices of block `j` (1-based), left to right.
    pub fn block_vertices(&self, j: usize) -> std::ops::Range<usize> {
        assert!(j >= 1 && j <= self.content.block_count(), "block out of range");
        self.starts[j - 1]..self.starts[j]
    }
}

/// A noncrossing perfect matching compatible with a block structure.
/// Edges are stored as `(low, high)` vertex pairs sorted by low endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Net {
    blocks: BlockStructure,
    edges: Vec<(usize, usize)>,
}

impl Net {
    pub fn new(blocks: BlockStructure, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = blocks.vertex_count();
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        edges.sort_unstable();
        if edges.len() * 2 != n {
            return Err(Error::MalformedNet(format!(
                "expected {} edges for {} vertices, got {}",
                n / 2,
                n,
                edges.len()
            )));
        }
        let mut seen = vec![false; n + 1];
        for &(a, b) in &edges {
            if a == 0 || b > n || a == b {
                return Err(Error::MalformedNet(format!("edge ({a},{b}) out of range")));
            }
            for v in [a, b] {
                if seen[v] {
                    return Err(Error::MalformedNet(format!("vertex {v} matched twice")));
                }
                seen[v] = true;
            }
            if blocks.block_of(a) == blocks.block_of(b) {
                return Err(Error::MalformedNet(format!(
                    "edge ({a},{b}) stays inside block {}",
                    blocks.block_of(a)
                )));
            }
        }
        for (i, &(a, b)) in edges.iter().enumerate() {
            for &(c, d) in &edges[i + 1..] {
                if a < c && c < b && b < d {
                    return Err(Error::MalformedNet(format!(
                        "edges ({a},{b}) and ({c},{d}) cross"
                    )));
                }
            }
        }
        Ok(Self { blocks, edges })
    }

    pub fn blocks(&self) -> &BlockStructure {
        &self.blocks
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Vertex matched with `v`.
    pub fn partner(&self, v: usize) -> usize {
        for &(a, b) in &self.edges {
            if a == v {
                return b;
            }
            if b == v {
                return a;
            }
        }
        panic!("vertex {v} out of range");
    }
}

impl std::fmt::Display for Net {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        for (a, b) in &self.edges {
            write!(f, "({a},{b})")?;
        }
        Ok(())
    }
}

/// All nets on the given block structure, ordered lexicographically by their
/// sorted edge lists.
///
/// A noncrossing matching decomposes recursively: the leftmost vertex of a
/// segment pairs with some vertex splitting the rest into two even segments,
/// which are matched independently.
pub fn enumerate_nets(blocks: &BlockStructure) -> Vec<Net> {
    fn segment(blocks: &BlockStructure, lo: usize, hi: usize) -> Vec<Vec<(usize, usize)>> {
        if lo > hi {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        let mut w = lo + 1;
        while w <= hi {
            if blocks.block_of(w) != blocks.block_of(lo) {
                for inner in segment(blocks, lo + 1, w - 1) {
                    for outer in segment(blocks, w + 1, hi) {
                        let mut edges = vec![(lo, w)];
                        edges.extend_from_slice(&inner);
                        edges.extend_from_slice(&outer);
                        out.push(edges);
                    }
                }
            }
            w += 2;
        }
        out
    }

    let n = blocks.vertex_count();
    let mut matchings = segment(blocks, 1, n);
    for m in &mut matchings {
        m.sort_unstable();
    }
    matchings.sort();
    matchings
        .into_iter()
        .map(|edges| Net::new(blocks.clone(), edges).expect("valid by construction"))
        .collect()
}

/// Reads a net left to right into a tableau: a vertex in block `j` whose
/// partner lies to the right contributes `j` to the first row, otherwise to
/// the second row.
pub fn net_to_ssyt(net: &Net) -> Result<Tableau> {
    let blocks = net.blocks();
    let mut row1 = Vec::new();
    let mut row2 = Vec::new();
    for v in 1..=blocks.vertex_count() {
        let j = blocks.block_of(v);
        if net.partner(v) > v {
            row1.push(j);
        } else {
            row2.push(j);
        }
    }
    Tableau::new(row1, row2)
}

/// Rebuilds the net from a tableau. Each step reads `k`, the first entry of
/// the second row, picks `m`, the rightmost first-row entry smaller than `k`,
/// joins the leftmost free vertex of block `k` to the rightmost free vertex
/// of block `m`, and deletes both entries.
pub fn ssyt_to_net(tableau: &Tableau, blocks: &BlockStructure) -> Result<Net> {
    if !tableau.matches_content(blocks.content()) {
        return Err(Error::ContentMismatch(format!(
            "tableau content {:?} does not match blocks {}",
            tableau.content_counts(),
            blocks.content()
        )));
    }
    let mut free: Vec<std::collections::VecDeque<usize>> = (1..=blocks.content().block_count())
        .map(|j| blocks.block_vertices(j).collect())
        .collect();
    let mut row1 = tableau.row1().to_vec();
    let mut row2 = tableau.row2().to_vec();
    let mut edges: Vec<(usize, usize)> = Vec::new();

    while let Some(&k) = row2.first() {
        let Some(pos) = row1.iter().rposition(|&m| m < k) else {
            return Err(Error::MalformedTableau(format!(
                "no first-row entry below {k}; the filling is not semistandard"
            )));
        };
        let m = row1[pos];
        let right = free[m - 1].pop_back().ok_or_else(|| {
            Error::MalformedTableau(format!("block {m} has no free vertex left"))
        })?;
        let left = free[k - 1].pop_front().ok_or_else(|| {
            Error::MalformedTableau(format!("block {k} has no free vertex left"))
        })?;
        debug_assert!(right < left);
        // Each new chord must leave the earlier ones uncrossed; this mirrors
        // the step invariant of the reconstruction argument.
        for &(a, b) in &edges {
            let crossing = (a < right && right < b && b < left) || (right < a && a < left && left < b);
            if crossing {
                return Err(Error::MalformedNet(format!(
                    "step edge ({right},{left}) crosses ({a},{b})"
                )));
            }
        }
        edges.push((right, left));
        row1.remove(pos);
        row2.remove(0);
    }
    if !row1.is_empty() {
        return Err(Error::MalformedTableau(
            "first row has leftover entries".into(),
        ));
    }
    Net::new(blocks.clone(), edges)
}
