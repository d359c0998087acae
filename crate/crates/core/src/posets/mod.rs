//! Finite posets, their incidence and Möbius matrices, Euler forms and
//! Coxeter matrices.
//!
//! A [`Poset`] stores its elements in a fixed linear extension, so the
//! incidence matrix is always upper unitriangular.

mod enumerate;

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::digraph::{find_cycle, topological_order};
use crate::error::{Error, Result};
use crate::exactmat::IntMatrix;

pub use enumerate::{count_posets, enumerate_posets, PosetStream, MAX_ENUMERATION_SIZE};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Poset {
    names: Vec<String>,
    // leq[i][j] iff names[i] <= names[j]
    leq: Vec<Vec<bool>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HasseDiagram {
    pub vertices: Vec<String>,
    /// Covers `(x, y)`: `x < y` with nothing strictly between.
    pub edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn edge_names(&self) -> Vec<(&str, &str)> {
        self.edges
            .iter()
            .map(|&(a, b)| (self.vertices[a].as_str(), self.vertices[b].as_str()))
            .collect()
    }
}

impl Poset {
    /// The order generated by `x < y` for every `(x, y)` in `relations`.
    /// Elements are reordered into the topological order that prefers
    /// smaller positions in `names`.
    pub fn new(names: Vec<String>, relations: &[(usize, usize)]) -> Result<Self> {
        let n = names.len();
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name.as_str()) {
                return Err(Error::DuplicateElement(name.clone()));
            }
        }
        if let Some(&(a, b)) = relations.iter().find(|&&(a, b)| a >= n || b >= n) {
            return Err(Error::IndexOutOfRange { index: a.max(b), n });
        }
        if let Some(cycle) = find_cycle(n, relations) {
            return Err(Error::Cycle(
                cycle.into_iter().map(|v| names[v].clone()).collect(),
            ));
        }
        let order = topological_order(n, relations, |v| v).expect("acyclic");
        let mut position = vec![0; n];
        for (k, &v) in order.iter().enumerate() {
            position[v] = k;
        }
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in relations {
            succ[position[a]].push(position[b]);
        }
        let mut leq = vec![vec![false; n]; n];
        for i in (0..n).rev() {
            leq[i][i] = true;
            for &j in &succ[i] {
                for k in j..n {
                    if leq[j][k] {
                        leq[i][k] = true;
                    }
                }
            }
        }
        let names = order.into_iter().map(|v| names[v].clone()).collect();
        Ok(Poset { names, leq })
    }

    /// Convenience constructor from element and relation names.
    pub fn from_pairs(names: &[&str], relations: &[(&str, &str)]) -> Result<Self> {
        let owned: Vec<String> = names.iter().map(|s| s.to_string()).collect();
        let index: HashMap<&str, usize> = names.iter().enumerate().map(|(i, &s)| (s, i)).collect();
        let lookup = |s: &str| {
            index
                .get(s)
                .copied()
                .ok_or_else(|| Error::UnknownElement(s.to_string()))
        };
        let rel = relations
            .iter()
            .map(|&(a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(owned, &rel)
    }

    pub fn chain(n: usize) -> Self {
        let rel: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::new(default_names(n), &rel).expect("chain")
    }

    pub fn antichain(n: usize) -> Self {
        Self::new(default_names(n), &[]).expect("antichain")
    }

    /// Each pair `i < j` of the natural order is related with probability
    /// `density` before closing transitively.
    pub fn random<R: Rng + ?Sized>(n: usize, density: f64, rng: &mut R) -> Self {
        let mut rel = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if rng.gen_bool(density) {
                    rel.push((i, j));
                }
            }
        }
        Self::new(default_names(n), &rel).expect("forward relations are acyclic")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|s| s == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j]
    }

    /// Strict relations `(i, j)` with `i < j`.
    pub fn relations(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        (0..n)
            .flat_map(|i| (0..n).filter(move |&j| self.lt(i, j)).map(move |j| (i, j)))
            .collect()
    }

    /// The same poset with its elements listed as `order[0], order[1], ...`
    /// (indices into the current order). `order` must be a linear extension.
    pub fn with_order(&self, order: &[usize]) -> Result<Self> {
        let n = self.len();
        let mut seen = vec![false; n];
        if order.len() != n
            || order
                .iter()
                .any(|&v| v >= n || std::mem::replace(&mut seen[v], true))
        {
            return Err(Error::InvalidPermutation(format!(
                "{order:?} is not a permutation of 0..{n}"
            )));
        }
        let leq: Vec<Vec<bool>> = order
            .iter()
            .map(|&a| order.iter().map(|&b| self.leq[a][b]).collect())
            .collect();
        if (0..n).any(|i| (0..i).any(|j| leq[i][j])) {
            return Err(Error::InvalidPermutation(
                "order is not a linear extension".into(),
            ));
        }
        let names = order.iter().map(|&v| self.names[v].clone()).collect();
        Ok(Poset { names, leq })
    }

    /// Parses the poset text format: an optional `elements: a b c` line and
    /// lines `x < y` (chains `x < y < z` are allowed); `#` starts a comment.
    pub fn parse(text: &str) -> Result<Self> {
        let mut declared: Option<Vec<String>> = None;
        let mut pairs: Vec<(usize, String, String)> = Vec::new();
        for (k, raw) in text.lines().enumerate() {
            let lineno = k + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some(rest) = line.strip_prefix("elements:") {
                let list = declared.get_or_insert_with(Vec::new);
                for name in rest.split_whitespace() {
                    if name.contains('<') {
                        return Err(Error::parse(lineno, format!("bad element name `{name}`")));
                    }
                    if list.iter().any(|s| s == name) {
                        return Err(Error::DuplicateElement(name.to_string()));
                    }
                    list.push(name.to_string());
                }
                continue;
            }
            let parts: Vec<&str> = line.split('<').map(str::trim).collect();
            if parts.len() < 2
                || parts
                    .iter()
                    .any(|p| p.is_empty() || p.contains(char::is_whitespace))
            {
                return Err(Error::parse(
                    lineno,
                    format!("expected `x < y`, found `{line}`"),
                ));
            }
            for w in parts.windows(2) {
                pairs.push((lineno, w[0].to_string(), w[1].to_string()));
            }
        }
        let names = match declared {
            Some(list) => list,
            None => pairs
                .iter()
                .flat_map(|(_, a, b)| [a.clone(), b.clone()])
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
        let rel = pairs
            .iter()
            .map(|(_, a, b)| Ok((lookup(a)?, lookup(b)?)))
            .collect::<Result<Vec<_>>>()?;
        Self::new(names, &rel)
    }

    /// Writes the element order and the covers; [`Poset::parse`] reads it back.
    pub fn to_text(&self) -> String {
        let mut s = format!("elements: {}\n", self.names.join(" "));
        for (x, y) in hasse(self).edge_names() {
            let _ = writeln!(s, "{x} < {y}");
        }
        s
    }
}

fn default_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| i.to_string()).collect()
}

pub fn parse_poset(text: &str) -> Result<Poset> {
    Poset::parse(text)
}

/// `1_X`: entry `(x, y)` is 1 iff `x <= y`.
pub fn incidence_matrix(x: &Poset) -> IntMatrix {
    let n = x.len();
    IntMatrix::from_fn(n, n, |i, j| {
        if x.leq(i, j) {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    })
}

/// `mu_X(x, y) = (1_X^{-1})_{xy}`
pub fn mobius(x: &Poset) -> IntMatrix {
    incidence_matrix(x)
        .inverse_unitriangular()
        .expect("incidence matrix in a linear extension is unitriangular")
}

/// `C_X = 1_X^{-1}`
pub fn euler_form_poset(x: &Poset) -> IntMatrix {
    mobius(x)
}

/// `Phi_X = -1_X (1_X^{-1})^t`
pub fn coxeter_poset(x: &Poset) -> IntMatrix {
    -(&incidence_matrix(x) * &mobius(x).transpose())
}

fn entry_from_mobius(x: &Poset, mu: &IntMatrix, i: usize, j: usize) -> BigInt {
    let sum: BigInt = (0..x.len())
        .filter(|&z| x.leq(i, z))
        .map(|z| mu.get(j, z))
        .sum();
    -sum
}

/// `(Phi_X)_{xy} = -sum_{z >= x} mu_X(y, z)`
pub fn coxeter_entry(x: &Poset, a: &str, b: &str) -> Result<BigInt> {
    let (i, j) = (x.index_of(a)?, x.index_of(b)?);
    Ok(entry_from_mobius(x, &mobius(x), i, j))
}

/// The whole Coxeter matrix assembled entry by entry from the Möbius sum.
pub fn coxeter_from_mobius_sums(x: &Poset) -> IntMatrix {
    let mu = mobius(x);
    let n = x.len();
    IntMatrix::from_fn(n, n, |i, j| entry_from_mobius(x, &mu, i, j))
}

pub fn hasse(x: &Poset) -> HasseDiagram {
    let n = x.len();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if x.lt(i, j) && !(i + 1..j).any(|z| x.lt(i, z) && x.lt(z, j)) {
                edges.push((i, j));
            }
        }
    }
    HasseDiagram {
        vertices: x.names.clone(),
        edges,
    }
}

/// Componentwise order on pairs, listed in lexicographic pair order so that
/// `1_{X x Y}` is the Kronecker product `1_X (x) 1_Y`. Names are `x,y`.
pub fn product_poset(x: &Poset, y: &Poset) -> Poset {
    let (n, m) = (x.len(), y.len());
    let names = x
        .names
        .iter()
        .flat_map(|a| y.names.iter().map(move |b| format!("{a},{b}")))
        .collect();
    let leq = (0..n * m)
        .map(|p| {
            (0..n * m)
                .map(|q| x.leq(p / m, q / m) && y.leq(p % m, q % m))
                .collect()
        })
        .collect();
    Poset { names, leq }
}
