//! Concrete graphs, the standard families, and a BFS certifier that reads
//! the intersection array off a graph when it is distance-regular.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num::Zero;
use rayon::prelude::*;
use serde::Serialize;

use crate::arrays::IntersectionArray;
use crate::linalg;
use crate::spectral::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("{family}: {message}")]
    BadParameter { family: String, message: String },
    #[error("unknown graph family {0:?}")]
    UnknownFamily(String),
    #[error("edge list line {line}: {message}")]
    EdgeList { line: usize, message: String },
    #[error("distance {i} out of range for a graph of diameter {diameter}")]
    Distance { i: usize, diameter: usize },
    #[error("graph is not connected")]
    Disconnected,
}

fn bad(family: &str, message: impl Into<String>) -> GraphError {
    GraphError::BadParameter {
        family: family.to_string(),
        message: message.into(),
    }
}

/// Finite simple undirected graph on `0..n` with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
}

impl Graph {
    /// Loops and out-of-range endpoints are errors; repeated edges collapse.
    pub fn from_edges(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Graph, GraphError> {
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(bad("graph", format!("edge {u}-{v} outside 0..{n}")));
            }
            if u == v {
                return Err(bad("graph", format!("loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
        }
        Ok(Graph { adj })
    }

    /// Graph on `0..n` with `u ~ v` whenever `adjacent(u, v)` for `u < v`.
    pub fn from_relation(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Graph {
        let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
        let edges: Vec<_> = edges.filter(|&(u, v)| adjacent(u, v)).collect();
        Graph::from_edges(n, edges).expect("edges in range")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n())
            .flat_map(|u| {
                self.adj[u]
                    .iter()
                    .filter(move |&&v| u < v)
                    .map(move |&v| (u, v))
            })
            .collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    /// BFS distances from `x`; `None` for unreachable vertices.
    pub fn distances_from(&self, x: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        dist[x] = Some(0);
        let mut queue = VecDeque::from([x]);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// All-pairs distances, or `None` if disconnected.
    pub fn distance_matrix(&self) -> Option<Vec<Vec<usize>>> {
        (0..self.n())
            .map(|x| self.distances_from(x).into_iter().collect())
            .collect()
    }

    pub fn is_connected(&self) -> bool {
        self.n() > 0 && self.distances_from(0).iter().all(Option::is_some)
    }

    /// `None` if disconnected or empty.
    pub fn diameter(&self) -> Option<usize> {
        let d = self.distance_matrix()?;
        d.iter().flatten().copied().max()
    }

    /// One `u v` line per edge.
    pub fn to_edge_list(&self) -> String {
        self.edges()
            .iter()
            .map(|(u, v)| format!("{u} {v}\n"))
            .collect()
    }

    pub fn adjacency_f64(&self) -> nalgebra::DMatrix<f64> {
        let n = self.n();
        nalgebra::DMatrix::from_fn(n, n, |i, j| if self.has_edge(i, j) { 1.0 } else { 0.0 })
    }

    /// Adjacency eigenvalues in descending order, by a dense symmetric solve.
    pub fn eigenvalues(&self) -> Vec<f64> {
        let mut ev: Vec<f64> = self
            .adjacency_f64()
            .symmetric_eigenvalues()
            .iter()
            .copied()
            .collect();
        ev.sort_by(|a, b| b.total_cmp(a));
        ev
    }

    /// Distinct eigenvalues with multiplicities, descending; values closer
    /// than `tol` are merged.
    pub fn spectrum(&self, tol: f64) -> Vec<(f64, usize)> {
        let mut out: Vec<(f64, usize, f64)> = Vec::new();
        for x in self.eigenvalues() {
            match out.last_mut() {
                Some((_, m, last)) if (*last - x).abs() < tol => {
                    *m += 1;
                    *last = x;
                }
                _ => out.push((x, 1, x)),
            }
        }
        out.into_iter()
            .map(|(first, m, last)| ((first + last) / 2.0, m))
            .collect()
    }

    /// `dim ker(A - theta I)` computed exactly.
    pub fn eigenspace_dimension(&self, theta: &Q) -> usize {
        let n = self.n();
        let m: Vec<Vec<Q>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let a = if self.has_edge(i, j) {
                            Q::from_integer(1.into())
                        } else {
                            Q::zero()
                        };
                        if i == j {
                            a - theta
                        } else {
                            a
                        }
                    })
                    .collect()
            })
            .collect();
        linalg::nullity(&m)
    }
}

impl FromStr for Graph {
    type Err = GraphError;

    /// Edge list: one `u v` pair per line, 0-indexed; blank lines and text
    /// after `#` ignored. The vertex count is one more than the largest index.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut edges = Vec::new();
        for (i, raw) in s.lines().enumerate() {
            let line = raw.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let err = |message: String| GraphError::EdgeList {
                line: i + 1,
                message,
            };
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 2 {
                return Err(err(format!("expected two vertices, got {:?}", line)));
            }
            let parse = |f: &str| f.parse::<usize>().map_err(|e| err(format!("{f:?}: {e}")));
            let (u, v) = (parse(fields[0])?, parse(fields[1])?);
            if u == v {
                return Err(err(format!("loop at {u}")));
            }
            edges.push((u, v));
        }
        let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Graph::from_edges(n, edges)
    }
}

/// A pair whose neighbour count differs from the one seen first at the same
/// distance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub x: usize,
    pub y: usize,
    pub distance: usize,
    /// `b` or `c`.
    pub parameter: char,
    pub expected: usize,
    pub actual: usize,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "d({}, {}) = {}: {}{} = {}, expected {}",
            self.x,
            self.y,
            self.distance,
            self.parameter,
            self.distance,
            self.actual,
            self.expected
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum CertificationOutcome {
    DistanceRegular { array: IntersectionArray },
    NotDrg { witness: Witness },
    Disconnected,
}

impl CertificationOutcome {
    pub fn array(&self) -> Option<&IntersectionArray> {
        match self {
            CertificationOutcome::DistanceRegular { array } => Some(array),
            _ => None,
        }
    }
}

/// `(b, c)` counts of every vertex seen from `x`, indexed by vertex.
fn layer_counts(g: &Graph, dist: &[usize], y: usize) -> (usize, usize) {
    let d = dist[y];
    let mut b = 0;
    let mut c = 0;
    for &w in g.neighbors(y) {
        if dist[w] == d + 1 {
            b += 1;
        } else if dist[w] + 1 == d {
            c += 1;
        }
    }
    (b, c)
}

/// BFS from every vertex, checking that the numbers `b_i`, `c_i` of
/// neighbours one step further and one step closer depend only on the
/// distance. The reference values come from the BFS at vertex 0; past its
/// eccentricity `b` is taken to be 0.
pub fn certify_drg(g: &Graph) -> CertificationOutcome {
    let Some(dist) = g.distance_matrix() else {
        return CertificationOutcome::Disconnected;
    };
    let n = g.n();
    let diameter = dist[0].iter().copied().max().unwrap();
    let mut b_ref = vec![None; diameter + 2];
    let mut c_ref = vec![None; diameter + 2];
    b_ref[diameter] = Some(0);
    for y in 0..n {
        let d = dist[0][y];
        let (b, c) = layer_counts(g, &dist[0], y);
        b_ref[d].get_or_insert(b);
        c_ref[d].get_or_insert(c);
    }
    let b_ref: Vec<usize> = b_ref.into_iter().map(|x| x.unwrap_or(0)).collect();
    let c_ref: Vec<usize> = c_ref.into_iter().map(|x| x.unwrap_or(0)).collect();
    let witness = (0..n).into_par_iter().find_map_first(|x| {
        (0..n).find_map(|y| {
            let d = dist[x][y];
            let (b, c) = layer_counts(g, &dist[x], y);
            let check = |parameter, expected: Option<&usize>, actual| {
                let expected = expected.copied().unwrap_or(0);
                (expected != actual).then_some(Witness {
                    x,
                    y,
                    distance: d,
                    parameter,
                    expected,
                    actual,
                })
            };
            check('b', b_ref.get(d), b).or_else(|| check('c', c_ref.get(d), c))
        })
    });
    if let Some(witness) = witness {
        return CertificationOutcome::NotDrg { witness };
    }
    if diameter == 0 {
        // a single vertex has no array; report it through its degree
        return CertificationOutcome::NotDrg {
            witness: Witness {
                x: 0,
                y: 0,
                distance: 0,
                parameter: 'b',
                expected: 1,
                actual: 0,
            },
        };
    }
    let to_u64 = |xs: &[usize]| xs.iter().map(|&x| x as u64).collect::<Vec<_>>();
    let array = IntersectionArray::new(&to_u64(&b_ref[..diameter]), &to_u64(&c_ref[1..=diameter]))
        .expect("counts of a regular distance partition form an array");
    debug_assert_eq!(array.derived_counts().v, Q::from_integer(n.into()));
    CertificationOutcome::DistanceRegular { array }
}

/// Vertices of `g`, adjacent when at distance exactly `i`.
pub fn distance_i_graph(g: &Graph, i: usize) -> Result<Graph, GraphError> {
    let dist = g.distance_matrix().ok_or(GraphError::Disconnected)?;
    let diameter = dist.iter().flatten().copied().max().unwrap_or(0);
    if i == 0 || i > diameter {
        return Err(GraphError::Distance { i, diameter });
    }
    Ok(Graph::from_relation(g.n(), |u, v| dist[u][v] == i))
}

pub fn is_bipartite(g: &Graph) -> bool {
    let mut colour: Vec<Option<bool>> = vec![None; g.n()];
    for s in 0..g.n() {
        if colour[s].is_some() {
            continue;
        }
        colour[s] = Some(false);
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            let cu = colour[u].unwrap();
            for &w in g.neighbors(u) {
                match colour[w] {
                    None => {
                        colour[w] = Some(!cu);
                        queue.push_back(w);
                    }
                    Some(cw) if cw == cu => return false,
                    Some(_) => {}
                }
            }
        }
    }
    true
}

/// Being at distance 0 or `D` is an equivalence relation. False for
/// disconnected graphs.
pub fn is_antipodal(g: &Graph) -> bool {
    let Some(dist) = g.distance_matrix() else {
        return false;
    };
    let d = dist.iter().flatten().copied().max().unwrap_or(0);
    let n = g.n();
    (0..n).all(|x| {
        let far: Vec<usize> = (0..n).filter(|&y| dist[x][y] == d).collect();
        far.iter()
            .all(|&y| far.iter().all(|&z| y == z || dist[y][z] == d))
    })
}

/// Every set of common neighbours of two vertices at distance 2 is a
/// clique. False for disconnected graphs.
pub fn is_terwilliger(g: &Graph) -> bool {
    let Some(dist) = g.distance_matrix() else {
        return false;
    };
    let n = g.n();
    (0..n).all(|x| {
        (x + 1..n).filter(|&y| dist[x][y] == 2).all(|y| {
            let mu: Vec<usize> = g
                .neighbors(x)
                .iter()
                .copied()
                .filter(|&w| g.has_edge(w, y))
                .collect();
            mu.iter()
                .enumerate()
                .all(|(i, &u)| mu[i + 1..].iter().all(|&w| g.has_edge(u, w)))
        })
    })
}

fn subsets(n: usize, m: usize) -> Vec<u64> {
    (0u64..1 << n)
        .filter(|s| s.count_ones() as usize == m)
        .collect()
}

/// `J(n, m)`: `m`-subsets of an `n`-set, adjacent when they share `m - 1`.
pub fn johnson(n: usize, m: usize) -> Result<Graph, GraphError> {
    if m == 0 || m >= n {
        return Err(bad(
            "johnson",
            format!("need 1 <= m < n, got n = {n}, m = {m}"),
        ));
    }
    if n > 20 {
        return Err(bad("johnson", format!("n = {n} is too large")));
    }
    let sets = subsets(n, m);
    Ok(Graph::from_relation(sets.len(), |u, v| {
        (sets[u] & sets[v]).count_ones() as usize == m - 1
    }))
}

/// `Q_n`: binary words of length `n` at Hamming distance 1.
pub fn hypercube(n: usize) -> Result<Graph, GraphError> {
    if n == 0 || n > 16 {
        return Err(bad("hypercube", format!("need 1 <= n <= 16, got {n}")));
    }
    Ok(Graph::from_relation(1 << n, |u, v| {
        (u ^ v).count_ones() == 1
    }))
}

/// Even-weight words of length `n` at Hamming distance 2.
pub fn halved_cube(n: usize) -> Result<Graph, GraphError> {
    if n < 2 || n > 16 {
        return Err(bad("halved-cube", format!("need 2 <= n <= 16, got {n}")));
    }
    let words: Vec<usize> = (0..1usize << n)
        .filter(|w| w.count_ones() % 2 == 0)
        .collect();
    Ok(Graph::from_relation(words.len(), |u, v| {
        (words[u] ^ words[v]).count_ones() == 2
    }))
}

pub fn cycle(n: usize) -> Result<Graph, GraphError> {
    if n < 3 {
        return Err(bad("cycle", format!("need n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph, GraphError> {
    if n < 2 {
        return Err(bad("complete", format!("need n >= 2, got {n}")));
    }
    Ok(Graph::from_relation(n, |_, _| true))
}

pub fn pentagon() -> Graph {
    cycle(5).expect("n = 5")
}

/// 2-subsets of a 5-set, adjacent when disjoint.
pub fn petersen() -> Graph {
    let sets = subsets(5, 2);
    Graph::from_relation(sets.len(), |u, v| sets[u] & sets[v] == 0)
}

/// Apex 0, upper ring 1..=5, lower ring 6..=10, apex 11.
pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let (up, up_next) = (1 + i, 1 + (i + 1) % 5);
        let (low, low_next) = (6 + i, 6 + (i + 1) % 5);
        edges.extend([(0, up), (up, up_next), (low, low_next), (low, 11)]);
        edges.extend([(up, low), (up, low_next)]);
    }
    Graph::from_edges(12, edges).expect("12 vertices")
}

/// Hadamard graph of the `2^t x 2^t` Sylvester matrix `H`: vertices
/// `r_i^+, r_i^-, c_j^+, c_j^-`, with `r_i^s ~ c_j^u` when `s u H_ij = 1`.
pub fn hadamard_graph(t: usize) -> Result<Graph, GraphError> {
    if t == 0 || t > 8 {
        return Err(bad("hadamard", format!("need 1 <= t <= 8, got {t}")));
    }
    let n = 1usize << t;
    let h = |i: usize, j: usize| (i & j).count_ones() % 2 == 0;
    // row vertex 2i + s, column vertex 2n + 2j + u, with sign bit 0 for +
    let mut edges = Vec::new();
    for i in 0..n {
        for j in 0..n {
            for s in 0..2 {
                for u in 0..2 {
                    if h(i, j) == (s == u) {
                        edges.push((2 * i + s, 2 * n + 2 * j + u));
                    }
                }
            }
        }
    }
    Graph::from_edges(4 * n, edges)
}

/// Edges of `g`, adjacent when they share an endpoint.
pub fn line_graph(g: &Graph) -> Graph {
    let edges = g.edges();
    Graph::from_relation(edges.len(), |e, f| {
        let (a, b) = edges[e];
        let (c, d) = edges[f];
        a == c || a == d || b == c || b == d
    })
}

/// Families by name, as accepted on the command line: `johnson n m`,
/// `hypercube n`, `halved-cube n`, `cycle n`, `complete n`, `petersen`,
/// `pentagon`, `icosahedron`, `hadamard t`, and `line:<family> ...` for the
/// line graph of another family.
pub fn build_family(name: &str, params: &[usize]) -> Result<Graph, GraphError> {
    if let Some(inner) = name.strip_prefix("line:") {
        return build_family(inner, params).map(|g| line_graph(&g));
    }
    let arity = match name {
        "petersen" | "pentagon" | "icosahedron" => 0,
        "hypercube" | "halved-cube" | "cycle" | "complete" | "hadamard" => 1,
        "johnson" => 2,
        _ => return Err(GraphError::UnknownFamily(name.to_string())),
    };
    if params.len() != arity {
        return Err(bad(
            name,
            format!("expected {arity} parameters, got {}", params.len()),
        ));
    }
    match name {
        "petersen" => Ok(petersen()),
        "pentagon" => Ok(pentagon()),
        "icosahedron" => Ok(icosahedron()),
        "hypercube" => hypercube(params[0]),
        "halved-cube" => halved_cube(params[0]),
        "cycle" => cycle(params[0]),
        "complete" => complete(params[0]),
        "hadamard" => hadamard_graph(params[0]),
        "johnson" => johnson(params[0], params[1]),
        _ => unreachable!(),
    }
}
