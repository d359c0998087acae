//! Acyclic quivers, the Euler form of their path algebras, and recognition
//! of Dynkin and extended Dynkin underlying graphs.

use std::collections::{BTreeSet, HashMap};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::One;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::digraph::{find_cycle, topological_order};
use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;
use crate::forms::{analyze, symmetrize, Classification, FormAnalysis};
use crate::reflections::{is_generalized_cartan, ReflectionSystem};

/// A finite quiver without oriented cycles. Vertices are kept in a
/// topological order, so every arrow goes from a smaller to a larger index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<(usize, usize)>,
}

impl Quiver {
    /// Vertices are reordered topologically, preferring smaller positions
    /// in `vertices`. Repeated arrows are kept as multiple arrows.
    pub fn new(vertices: Vec<String>, arrows: &[(usize, usize)]) -> Result<Self> {
        let n = vertices.len();
        let mut seen = BTreeSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::DuplicateElement(v.clone()));
            }
        }
        if let Some(&(a, b)) = arrows.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::IndexOutOfRange { index: a.max(b), n });
        }
        if let Some(cycle) = find_cycle(n, arrows) {
            return Err(Error::Cycle(
                cycle.into_iter().map(|v| vertices[v].clone()).collect(),
            ));
        }
        let order = topological_order(n, arrows, |v| v).expect("acyclic");
        let mut position = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mut moved: Vec<(usize, usize)> = arrows
            .iter()
            .map(|&(a, b)| (position[a], position[b]))
            .collect();
        moved.sort_unstable();
        Ok(Quiver {
            vertices: order.into_iter().map(|v| vertices[v].clone()).collect(),
            arrows: moved,
        })
    }

    /// Orients every edge of `g` along a uniformly random linear order of the
    /// vertices; every acyclic orientation can occur.
    pub fn random_orientation<R: Rng + ?Sized>(g: &UnderlyingGraph, rng: &mut R) -> Self {
        let mut rank: Vec<usize> = (0..g.vertices.len()).collect();
        rank.shuffle(rng);
        let arrows: Vec<(usize, usize)> = g
            .edges
            .iter()
            .map(|&(a, b)| if rank[a] < rank[b] { (a, b) } else { (b, a) })
            .collect();
        Self::new(g.vertices.clone(), &arrows).expect("orientation along a linear order is acyclic")
    }

    /// Lines `x -> y` (chains `x -> y -> z` allowed, repeats add arrows) and
    /// an optional `vertices: a b c` line; `#` starts a comment. Without a
    /// `vertices:` line the vertex names are taken in lexicographic order.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared: Option<Vec<String>> = None;
        let mut pairs: Vec<(String, String)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("vertices:") {
                let list = declared.get_or_insert_with(Vec::new);
                for name in rest.split_whitespace() {
                    if name.contains("->") {
                        return Err(Error::parse(lineno, format!("bad vertex name `{name}`")));
                    }
                    if list.iter().any(|s| s == name) {
                        return Err(Error::DuplicateElement(name.to_string()));
                    }
                    list.push(name.to_string());
                }
                continue;
            }
            let parts: Vec<&str> = line.split("->").map(str::trim).collect();
            if parts.len() < 2
                || parts
                    .iter()
                    .any(|p| p.is_empty() || p.contains(char::is_whitespace))
            {
                return Err(Error::parse(
                    lineno,
                    format!("expected `x -> y`, found `{line}`"),
                ));
            }
            for w in parts.windows(2) {
                pairs.push((w[0].to_string(), w[1].to_string()));
            }
        }
        let names = match declared {
            Some(list) => list,
            None => pairs
                .iter()
                .flat_map(|(a, b)| [a.clone(), b.clone()])
                .collect::<BTreeSet<_>>()
                .into_iter()
                .collect(),
        };
        let index: HashMap<&str, usize> = names
            .iter()
            .enumerate()
            .map(|(i, s)| (s.as_str(), i))
            .collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let arrows = pairs
            .iter()
            .map(|(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, &arrows)
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("vertices: {}\n", self.vertices.join(" "));
        for &(a, b) in &self.arrows {
            let _ = writeln!(s, "{} -> {}", self.vertices[a], self.vertices[b]);
        }
        s
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }
}

pub fn parse_quiver(text: &str) -> Result<Quiver> {
    Quiver::parse(text)
}

/// `C_ii = 1`, `C_ij = -#{arrows i -> j}` in the stored topological order.
pub fn euler_form_quiver(q: &Quiver) -> Result<IntMatrix> {
    let n = q.vertices.len();
    let mut c = IntMatrix::identity(n).to_rows();
    for &(a, b) in &q.arrows {
        c[a][b] -= BigInt::one();
    }
    let c = IntMatrix::from_rows(c)?;
    if n > 0 {
        let sys = ReflectionSystem::new(symmetrize(&c)?)?;
        if !c.is_unitriangular() || !is_generalized_cartan(&sys)? {
            return Err(Error::Internal(
                "quiver Euler form is not of the expected shape".into(),
            ));
        }
    }
    Ok(c)
}

/// Undirected multigraph; each edge `(a, b)` has `a < b` and may repeat.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnderlyingGraph {
    pub vertices: Vec<String>,
    pub edges: Vec<(usize, usize)>,
}

impl UnderlyingGraph {
    /// Vertices named `1..=n`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut edges: Vec<(usize, usize)> =
            edges.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        edges.sort_unstable();
        UnderlyingGraph {
            vertices: (1..=n).map(|i| i.to_string()).collect(),
            edges,
        }
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    fn degrees(&self) -> Vec<usize> {
        let mut d = vec![0; self.n()];
        for &(a, b) in &self.edges {
            d[a] += 1;
            d[b] += 1;
        }
        d
    }

    fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.n()];
        for &(a, b) in &self.edges {
            out[a].push(b);
            out[b].push(a);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let n = self.n();
        if n == 0 {
            return false;
        }
        let adj = self.neighbors();
        let mut seen = vec![false; n];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(v) = stack.pop() {
            for &w in &adj[v] {
                if !std::mem::replace(&mut seen[w], true) {
                    stack.push(w);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    fn has_multi_edge(&self) -> bool {
        self.edges.windows(2).any(|w| w[0] == w[1])
    }

    /// `2I - adjacency`, the Cartan matrix of the graph.
    pub fn cartan_matrix(&self) -> IntMatrix {
        let n = self.n();
        let mut m = IntMatrix::identity(n).scale(&BigInt::from(2)).to_rows();
        for &(a, b) in &self.edges {
            m[a][b] -= BigInt::one();
            m[b][a] -= BigInt::one();
        }
        IntMatrix::from_rows(m).expect("square")
    }
}

pub fn underlying_graph(q: &Quiver) -> UnderlyingGraph {
    let mut edges = q.arrows.clone();
    edges.sort_unstable();
    UnderlyingGraph {
        vertices: q.vertices.clone(),
        edges,
    }
}

/// Simply-laced Dynkin and extended Dynkin types. `ATilde(n)`, `DTilde(n)`
/// and `ETilde(n)` have `n + 1` vertices; the others have `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphType {
    A(usize),
    D(usize),
    E(usize),
    ATilde(usize),
    DTilde(usize),
    ETilde(usize),
    Other,
}

impl GraphType {
    pub fn is_dynkin(self) -> bool {
        matches!(self, GraphType::A(_) | GraphType::D(_) | GraphType::E(_))
    }

    pub fn is_extended_dynkin(self) -> bool {
        matches!(
            self,
            GraphType::ATilde(_) | GraphType::DTilde(_) | GraphType::ETilde(_)
        )
    }

    /// Order of a Coxeter element, for Dynkin types.
    pub fn coxeter_number(self) -> Option<u64> {
        match self {
            GraphType::A(n) => Some(n as u64 + 1),
            GraphType::D(n) => Some(2 * n as u64 - 2),
            GraphType::E(6) => Some(12),
            GraphType::E(7) => Some(18),
            GraphType::E(8) => Some(30),
            _ => None,
        }
    }

    /// Every Dynkin type with at most `max_rank` vertices.
    pub fn dynkin_types(max_rank: usize) -> Vec<GraphType> {
        let mut out: Vec<GraphType> = (1..=max_rank).map(GraphType::A).collect();
        out.extend((4..=max_rank).map(GraphType::D));
        out.extend((6..=max_rank.min(8)).map(GraphType::E));
        out
    }

    /// Every extended Dynkin type whose index is at most `max_index`.
    pub fn extended_types(max_index: usize) -> Vec<GraphType> {
        let mut out: Vec<GraphType> = (1..=max_index).map(GraphType::ATilde).collect();
        out.extend((4..=max_index).map(GraphType::DTilde));
        out.extend((6..=max_index.min(8)).map(GraphType::ETilde));
        out
    }

    /// The standard diagram of this type, or `None` for `Other` and
    /// indices outside the family.
    pub fn diagram(self) -> Option<UnderlyingGraph> {
        let path = |k: usize| -> Vec<(usize, usize)> { (1..k).map(|i| (i - 1, i)).collect() };
        let (n, edges) = match self {
            GraphType::A(n) if n >= 1 => (n, path(n)),
            GraphType::D(n) if n >= 4 => star(&[1, 1, n - 3]),
            GraphType::E(n) if (6..=8).contains(&n) => star(&[1, 2, n - 4]),
            GraphType::ATilde(1) => (2, vec![(0, 1), (0, 1)]),
            GraphType::ATilde(n) if n >= 2 => {
                let mut e = path(n + 1);
                e.push((0, n));
                (n + 1, e)
            }
            GraphType::DTilde(4) => star(&[1, 1, 1, 1]),
            GraphType::DTilde(n) if n >= 5 => {
                // spine 0..n-3, two leaves on each end of the spine
                let spine = n - 3;
                let mut e = path(spine);
                e.extend([
                    (0, spine),
                    (0, spine + 1),
                    (spine - 1, spine + 2),
                    (spine - 1, spine + 3),
                ]);
                (n + 1, e)
            }
            GraphType::ETilde(6) => star(&[2, 2, 2]),
            GraphType::ETilde(7) => star(&[1, 3, 3]),
            GraphType::ETilde(8) => star(&[1, 2, 5]),
            _ => return None,
        };
        Some(UnderlyingGraph::from_edges(n, &edges))
    }
}

/// Star with center 0 and legs of the given lengths.
fn star(legs: &[usize]) -> (usize, Vec<(usize, usize)>) {
    let mut edges = Vec::new();
    let mut next = 1;
    for &len in legs {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    (next, edges)
}

impl fmt::Display for GraphType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphType::A(n) => write!(f, "A{n}"),
            GraphType::D(n) => write!(f, "D{n}"),
            GraphType::E(n) => write!(f, "E{n}"),
            GraphType::ATilde(n) => write!(f, "Atilde{n}"),
            GraphType::DTilde(n) => write!(f, "Dtilde{n}"),
            GraphType::ETilde(n) => write!(f, "Etilde{n}"),
            GraphType::Other => f.write_str("other"),
        }
    }
}

/// Lengths of the paths hanging off `center` in a tree with a single
/// branch vertex.
fn leg_lengths(adj: &[Vec<usize>], center: usize) -> Vec<usize> {
    let mut legs: Vec<usize> = adj[center]
        .iter()
        .map(|&start| {
            let (mut prev, mut cur, mut len) = (center, start, 1);
            while adj[cur].len() == 2 {
                let next = if adj[cur][0] == prev {
                    adj[cur][1]
                } else {
                    adj[cur][0]
                };
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        })
        .collect();
    legs.sort_unstable();
    legs
}

pub fn classify_graph(g: &UnderlyingGraph) -> GraphType {
    let n = g.n();
    let m = g.edges.len();
    if !g.is_connected() {
        return GraphType::Other;
    }
    if g.has_multi_edge() {
        return if n == 2 && m == 2 {
            GraphType::ATilde(1)
        } else {
            GraphType::Other
        };
    }
    let deg = g.degrees();
    if m == n {
        return if n >= 3 && deg.iter().all(|&d| d == 2) {
            GraphType::ATilde(n - 1)
        } else {
            GraphType::Other
        };
    }
    if m + 1 != n {
        return GraphType::Other;
    }
    let adj = g.neighbors();
    let branch: Vec<usize> = (0..n).filter(|&v| deg[v] >= 3).collect();
    match branch.as_slice() {
        [] => GraphType::A(n),
        &[c] if deg[c] == 3 => match leg_lengths(&adj, c).as_slice() {
            [1, 1, k] => GraphType::D(k + 3),
            [1, 2, 2] => GraphType::E(6),
            [1, 2, 3] => GraphType::E(7),
            [1, 2, 4] => GraphType::E(8),
            [2, 2, 2] => GraphType::ETilde(6),
            [1, 3, 3] => GraphType::ETilde(7),
            [1, 2, 5] => GraphType::ETilde(8),
            _ => GraphType::Other,
        },
        &[c] if deg[c] == 4 && n == 5 => GraphType::DTilde(4),
        &[b1, b2] if deg[b1] == 3 && deg[b2] == 3 => {
            let leaves = |v: usize| adj[v].iter().filter(|&&w| deg[w] == 1).count();
            if leaves(b1) == 2 && leaves(b2) == 2 {
                GraphType::DTilde(n - 1)
            } else {
                GraphType::Other
            }
        }
        _ => GraphType::Other,
    }
}

/// The hereditary case: periodic iff positive iff Dynkin, and weakly
/// periodic iff non-negative iff Dynkin or extended Dynkin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HereditaryReport {
    pub graph_type: GraphType,
    pub euler_form: IntMatrix,
    pub analysis: FormAnalysis,
}

impl HereditaryReport {
    pub fn positive(&self) -> bool {
        self.analysis.classification == Classification::Positive
    }

    pub fn non_negative(&self) -> bool {
        self.analysis.classification != Classification::Indefinite
    }
}

pub fn hereditary_dictionary(q: &Quiver) -> Result<HereditaryReport> {
    let g = underlying_graph(q);
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let graph_type = classify_graph(&g);
    let euler_form = euler_form_quiver(q)?;
    let analysis = analyze(&euler_form)?;
    let report = HereditaryReport {
        graph_type,
        euler_form,
        analysis,
    };
    let dynkin = graph_type.is_dynkin();
    let tame_or_dynkin = dynkin || graph_type.is_extended_dynkin();
    let a = &report.analysis;
    if a.periodic != report.positive() || a.periodic != dynkin {
        return Err(Error::Internal(format!(
            "periodic = {}, positive = {}, type {graph_type}",
            a.periodic,
            report.positive()
        )));
    }
    if a.weakly_periodic != report.non_negative() || a.weakly_periodic != tame_or_dynkin {
        return Err(Error::Internal(format!(
            "weakly periodic = {}, non-negative = {}, type {graph_type}",
            a.weakly_periodic,
            report.non_negative()
        )));
    }
    Ok(report)
}
