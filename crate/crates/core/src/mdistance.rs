//! Monomial orders on N^m, L1 compatibility, m-lengths and m-distances on
//! edge-colored graphs, m-distance matrices, and m-distance-regularity
//! detection, with a bridge from regular colored graphs to explicit schemes.
//!
//! The m-distance between two vertices is the order-minimal vector of
//! per-color edge counts over all connecting walks. Since the zero vector is
//! the global minimum of any monomial order and addition preserves order,
//! a settled-label shortest-path search computes it exactly.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::scheme::ExplicitScheme;
use crate::Error;

/// Per-color edge counts of a walk, a vector in N^m.
pub type MLength = Vec<u32>;

pub fn l1(v: &[u32]) -> u64 {
    v.iter().map(|&x| x as u64).sum()
}

fn add(a: &[u32], b: &[u32]) -> MLength {
    a.iter().zip(b).map(|(&x, &y)| x + y).collect()
}

/// A monomial order on N^m: total, multiplicative, well-ordered (any total
/// multiplicative order is well-ordered on the finite domains used here).
#[derive(Clone, Debug)]
pub enum MonomialOrder {
    /// Compare total degree first, then lexicographically along `priority`
    /// (most significant coordinate first).
    DegLex { priority: Vec<usize> },
    /// Plain lexicographic order along `priority`. Not L1-compatible.
    Lex { priority: Vec<usize> },
    /// A comparison table on a finite domain, validated on construction.
    Custom(CustomOrder),
}

impl MonomialOrder {
    pub fn deglex(m: usize) -> Self {
        MonomialOrder::DegLex {
            priority: (0..m).collect(),
        }
    }

    pub fn lex(m: usize) -> Self {
        MonomialOrder::Lex {
            priority: (0..m).collect(),
        }
    }

    /// deg-lex with an explicit tie-break permutation of coordinates.
    pub fn deglex_with(priority: Vec<usize>) -> Result<Self, Error> {
        validate_permutation(&priority)?;
        Ok(MonomialOrder::DegLex { priority })
    }

    pub fn lex_with(priority: Vec<usize>) -> Result<Self, Error> {
        validate_permutation(&priority)?;
        Ok(MonomialOrder::Lex { priority })
    }

    pub fn arity(&self) -> usize {
        match self {
            MonomialOrder::DegLex { priority } | MonomialOrder::Lex { priority } => priority.len(),
            MonomialOrder::Custom(c) => c.m,
        }
    }

    /// Total-order comparison. Errors on arity mismatch, or on vectors
    /// outside a custom order's domain.
    pub fn compare(&self, a: &[u32], b: &[u32]) -> Result<Ordering, Error> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        if a.len() != self.arity() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: self.arity(),
            });
        }
        match self {
            MonomialOrder::DegLex { priority } => {
                Ok(l1(a).cmp(&l1(b)).then_with(|| lex_cmp(a, b, priority)))
            }
            MonomialOrder::Lex { priority } => Ok(lex_cmp(a, b, priority)),
            MonomialOrder::Custom(c) => c.compare(a, b),
        }
    }
}

fn lex_cmp(a: &[u32], b: &[u32], priority: &[usize]) -> Ordering {
    for &i in priority {
        match a[i].cmp(&b[i]) {
            Ordering::Equal => continue,
            other => return other,
        }
    }
    Ordering::Equal
}

fn validate_permutation(priority: &[usize]) -> Result<(), Error> {
    let mut seen = vec![false; priority.len()];
    for &i in priority {
        if i >= priority.len() || seen[i] {
            return Err(Error::InvalidOrder(format!(
                "tie-break {priority:?} is not a permutation"
            )));
        }
        seen[i] = true;
    }
    Ok(())
}

/// A monomial order given explicitly as a comparison table on a finite
/// domain. Validated for totality, antisymmetry, transitivity, and
/// multiplicativity (where sums stay inside the domain) on construction.
#[derive(Clone, Debug)]
pub struct CustomOrder {
    m: usize,
    domain: Vec<MLength>,
    index: HashMap<MLength, usize>,
    table: Vec<Ordering>,
}

impl CustomOrder {
    pub fn new(domain: Vec<MLength>, table: Vec<Ordering>) -> Result<Self, Error> {
        let n = domain.len();
        if n == 0 || table.len() != n * n {
            return Err(Error::InvalidOrder(
                "custom order needs a non-empty domain and an n x n table".into(),
            ));
        }
        let m = domain[0].len();
        if domain.iter().any(|v| v.len() != m) {
            return Err(Error::InvalidOrder(
                "domain vectors have mixed arity".into(),
            ));
        }
        let index: HashMap<MLength, usize> = domain
            .iter()
            .cloned()
            .enumerate()
            .map(|(i, v)| (v, i))
            .collect();
        if index.len() != n {
            return Err(Error::InvalidOrder("duplicate domain vectors".into()));
        }
        let get = |i: usize, j: usize| table[i * n + j];
        for i in 0..n {
            if get(i, i) != Ordering::Equal {
                return Err(Error::InvalidOrder("order is not reflexive".into()));
            }
            for j in 0..n {
                if get(i, j) != get(j, i).reverse() {
                    return Err(Error::InvalidOrder("order is not antisymmetric".into()));
                }
                if i != j && get(i, j) == Ordering::Equal {
                    return Err(Error::InvalidOrder("distinct vectors compare equal".into()));
                }
            }
        }
        for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    if get(i, j) == Ordering::Less
                        && get(j, k) == Ordering::Less
                        && get(i, k) != Ordering::Less
                    {
                        return Err(Error::InvalidOrder("order is not transitive".into()));
                    }
                }
            }
        }
        // Multiplicativity on the domain: u <= v implies u+w <= v+w.
        for i in 0..n {
            for j in 0..n {
                if get(i, j) != Ordering::Less {
                    continue;
                }
                for w in &domain {
                    let (iu, iv) = (add(&domain[i], w), add(&domain[j], w));
                    if let (Some(&iw), Some(&jw)) = (index.get(&iu), index.get(&iv)) {
                        if get(iw, jw) != Ordering::Less {
                            return Err(Error::InvalidOrder(format!(
                                "order is not multiplicative: {:?} < {:?} but +{w:?} flips",
                                domain[i], domain[j]
                            )));
                        }
                    }
                }
            }
        }
        Ok(CustomOrder {
            m,
            domain,
            index,
            table,
        })
    }

    pub fn domain(&self) -> &[MLength] {
        &self.domain
    }

    fn compare(&self, a: &[u32], b: &[u32]) -> Result<Ordering, Error> {
        let ia = self
            .index
            .get(a)
            .ok_or_else(|| Error::InvalidOrder(format!("{a:?} outside the custom domain")))?;
        let ib = self
            .index
            .get(b)
            .ok_or_else(|| Error::InvalidOrder(format!("{b:?} outside the custom domain")))?;
        Ok(self.table[ia * self.domain.len() + ib])
    }
}

/// L1-compatibility report: a <= b must imply |a|_1 <= |b|_1 on the domain.
#[derive(Clone, Debug)]
pub struct L1Report {
    pub compatible: bool,
    pub witness: Option<(MLength, MLength)>,
}

/// Exhaustive pairwise L1-compatibility check over a finite domain.
pub fn is_l1_compatible(order: &MonomialOrder, domain: &[MLength]) -> Result<L1Report, Error> {
    for a in domain {
        for b in domain {
            if order.compare(a, b)? != Ordering::Greater && l1(a) > l1(b) {
                return Ok(L1Report {
                    compatible: false,
                    witness: Some((a.clone(), b.clone())),
                });
            }
        }
    }
    Ok(L1Report {
        compatible: true,
        witness: None,
    })
}

/// The full box {0..=max}^m as a domain for order checks.
pub fn box_domain(m: usize, max: u32) -> Vec<MLength> {
    let mut out: Vec<MLength> = vec![vec![]];
    for _ in 0..m {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=max).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

// ---------------------------------------------------------------------------
// Colored graphs
// ---------------------------------------------------------------------------

/// Connected undirected graph with edges colored 1..=m, every color
/// non-empty.
#[derive(Clone, Debug)]
pub struct ColoredGraph {
    vertex_count: usize,
    m: usize,
    edges: Vec<(usize, usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

/// On-disk JSON format: `{"vertices": N, "edges": [[u, v, color], ...]}` with
/// colors 1-based.
#[derive(Serialize, Deserialize)]
pub struct GraphFile {
    pub vertices: usize,
    pub edges: Vec<(usize, usize, usize)>,
}

impl ColoredGraph {
    /// Builds and validates. `edges` carry 1-based colors in 1..=m.
    pub fn new(
        vertex_count: usize,
        m: usize,
        edges: Vec<(usize, usize, usize)>,
    ) -> Result<Self, Error> {
        if vertex_count == 0 || m == 0 {
            return Err(Error::InvalidGraph(
                "need vertices and at least one color".into(),
            ));
        }
        let mut adj = vec![Vec::new(); vertex_count];
        let mut seen_pairs = BTreeSet::new();
        let mut color_used = vec![false; m];
        for &(u, v, color) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if color == 0 || color > m {
                return Err(Error::InvalidGraph(format!(
                    "edge ({u},{v}) has color {color}, expected 1..={m}"
                )));
            }
            if !seen_pairs.insert((u.min(v), u.max(v))) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
            adj[u].push((v, color - 1));
            adj[v].push((u, color - 1));
            color_used[color - 1] = true;
        }
        if let Some(c) = color_used.iter().position(|&used| !used) {
            return Err(Error::InvalidGraph(format!("color {} is unused", c + 1)));
        }
        let graph = ColoredGraph {
            vertex_count,
            m,
            edges,
            adj,
        };
        if !graph.is_connected() {
            return Err(Error::InvalidGraph("graph is not connected".into()));
        }
        Ok(graph)
    }

    pub fn from_file(file: &GraphFile) -> Result<Self, Error> {
        let m = file
            .edges
            .iter()
            .map(|&(_, _, c)| c)
            .max()
            .ok_or_else(|| Error::InvalidGraph("graph has no edges".into()))?;
        ColoredGraph::new(file.vertices, m, file.edges.clone())
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn color_count(&self) -> usize {
        self.m
    }

    pub fn edges(&self) -> &[(usize, usize, usize)] {
        &self.edges
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.vertex_count];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut count = 1;
        while let Some(u) = stack.pop() {
            for &(v, _) in &self.adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    count += 1;
                    stack.push(v);
                }
            }
        }
        count == self.vertex_count
    }
}

/// Cycle on n vertices, one color.
pub fn cycle_graph(n: usize) -> ColoredGraph {
    let edges = (0..n).map(|i| (i, (i + 1) % n, 1)).collect();
    ColoredGraph::new(n, 1, edges).expect("cycle is valid")
}

/// Complete graph on n vertices, one color.
pub fn complete_graph(n: usize) -> ColoredGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            edges.push((u, v, 1));
        }
    }
    ColoredGraph::new(n, 1, edges).expect("complete graph is valid")
}

/// Path on n vertices, one color.
pub fn path_graph(n: usize) -> ColoredGraph {
    let edges = (0..n - 1).map(|i| (i, i + 1, 1)).collect();
    ColoredGraph::new(n, 1, edges).expect("path is valid")
}

/// The Petersen graph, one color.
pub fn petersen_graph() -> ColoredGraph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5, 1)); // outer cycle
        edges.push((i, i + 5, 1)); // spokes
        edges.push((i + 5, (i + 2) % 5 + 5, 1)); // inner pentagram
    }
    ColoredGraph::new(10, 1, edges).expect("petersen is valid")
}

/// Seeded random connected colored graph: a random spanning tree plus
/// `extra_edges` random chords, colors uniform with every color forced
/// non-empty.
pub fn random_connected_colored(
    vertices: usize,
    m: usize,
    extra_edges: usize,
    seed: u64,
) -> ColoredGraph {
    assert!(vertices >= 2 && m >= 1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize, usize)> = Vec::new();
    let mut pairs = BTreeSet::new();
    for v in 1..vertices {
        let u = rng.gen_range(0..v);
        edges.push((u, v, 0));
        pairs.insert((u, v));
    }
    let mut attempts = 0;
    while edges.len() < vertices - 1 + extra_edges && attempts < 200 {
        attempts += 1;
        let u = rng.gen_range(0..vertices);
        let v = rng.gen_range(0..vertices);
        let key = (u.min(v), u.max(v));
        if u != v && pairs.insert(key) {
            edges.push((key.0, key.1, 0));
        }
    }
    // Color assignment: first m edges get distinct colors, the rest uniform.
    let count = edges.len();
    assert!(count >= m, "not enough edges for {m} colors");
    for (i, e) in edges.iter_mut().enumerate() {
        e.2 = if i < m { i + 1 } else { rng.gen_range(1..=m) };
    }
    ColoredGraph::new(vertices, m, edges).expect("constructed graph is valid")
}

// ---------------------------------------------------------------------------
// m-distance computation
// ---------------------------------------------------------------------------

/// Single-source m-distances by settled-label search over N^m-valued path
/// lengths (edge weights are unit vectors, lengths add componentwise).
pub fn m_distance_from(
    graph: &ColoredGraph,
    source: usize,
    order: &MonomialOrder,
) -> Result<Vec<MLength>, Error> {
    let n = graph.vertex_count;
    let m = graph.m;
    if order.arity() != m {
        return Err(Error::LengthMismatch {
            left: order.arity(),
            right: m,
        });
    }
    let mut dist: Vec<Option<MLength>> = vec![None; n];
    let mut settled = vec![false; n];
    dist[source] = Some(vec![0u32; m]);
    loop {
        let mut best: Option<usize> = None;
        for v in 0..n {
            if settled[v] || dist[v].is_none() {
                continue;
            }
            best = match best {
                None => Some(v),
                Some(b) => {
                    let cand = dist[v].as_ref().expect("checked");
                    let cur = dist[b].as_ref().expect("checked");
                    if order.compare(cand, cur)? == Ordering::Less {
                        Some(v)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        let Some(u) = best else { break };
        settled[u] = true;
        let du = dist[u].clone().expect("reachable");
        for &(v, color) in &graph.adj[u] {
            if settled[v] {
                continue;
            }
            let mut cand = du.clone();
            cand[color] += 1;
            let better = match &dist[v] {
                None => true,
                Some(cur) => order.compare(&cand, cur)? == Ordering::Less,
            };
            if better {
                dist[v] = Some(cand);
            }
        }
    }
    Ok(dist
        .into_iter()
        .map(|d| d.expect("graph is connected"))
        .collect())
}

/// The order-minimal m-length over all walks between x and y.
pub fn m_distance(
    graph: &ColoredGraph,
    x: usize,
    y: usize,
    order: &MonomialOrder,
) -> Result<MLength, Error> {
    Ok(m_distance_from(graph, x, order)?.swap_remove(y))
}

/// All-pairs m-distances.
pub fn all_pairs_m_distance(
    graph: &ColoredGraph,
    order: &MonomialOrder,
) -> Result<Vec<Vec<MLength>>, Error> {
    (0..graph.vertex_count)
        .map(|s| m_distance_from(graph, s, order))
        .collect()
}

/// The set D of attained m-distances plus the assignment of every pair to
/// its distance. The distance list is sorted ascending by the order, so the
/// zero vector sits at index 0.
#[derive(Clone, Debug)]
pub struct MDistanceMatrices {
    pub distances: Vec<MLength>,
    /// `assignment[x][y]` indexes into `distances`.
    pub assignment: Vec<Vec<usize>>,
}

impl MDistanceMatrices {
    /// Sparse 0/1 matrix for one distance value, as (row, col) pairs.
    pub fn triplets(&self, idx: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (x, row) in self.assignment.iter().enumerate() {
            for (y, &a) in row.iter().enumerate() {
                if a == idx {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

pub fn m_distance_matrices(
    graph: &ColoredGraph,
    order: &MonomialOrder,
) -> Result<MDistanceMatrices, Error> {
    let table = all_pairs_m_distance(graph, order)?;
    let set: BTreeSet<MLength> = table.iter().flatten().cloned().collect();
    let mut distances: Vec<MLength> = set.into_iter().collect();
    // BTreeSet gives lexicographic order; re-sort by the monomial order.
    let mut err = None;
    distances.sort_by(|a, b| match order.compare(a, b) {
        Ok(o) => o,
        Err(e) => {
            err = Some(e);
            Ordering::Equal
        }
    });
    if let Some(e) = err {
        return Err(e);
    }
    let index: HashMap<&MLength, usize> =
        distances.iter().enumerate().map(|(i, d)| (d, i)).collect();
    let assignment = table
        .iter()
        .map(|row| row.iter().map(|d| index[d]).collect())
        .collect();
    Ok(MDistanceMatrices {
        distances,
        assignment,
    })
}

// ---------------------------------------------------------------------------
// m-distance regularity
// ---------------------------------------------------------------------------

/// Intersection tensor `p^c_{ab}` over m-distance values.
#[derive(Clone, Debug)]
pub struct MIntersectionTensor {
    pub distances: Vec<MLength>,
    p: Vec<u32>,
}

impl MIntersectionTensor {
    pub fn get(&self, a: usize, b: usize, c: usize) -> u32 {
        let d = self.distances.len();
        self.p[(a * d + b) * d + c]
    }
}

#[derive(Clone, Debug)]
pub struct RegularityWitness {
    pub a: MLength,
    pub b: MLength,
    pub c: MLength,
    pub pair_a: (usize, usize),
    pub count_a: u32,
    pub pair_b: (usize, usize),
    pub count_b: u32,
}

#[derive(Clone, Debug)]
pub enum MDistanceRegularity {
    /// Some unit vector e_i is not an attained m-distance, so the notion
    /// does not apply.
    NotApplicable {
        missing_units: Vec<MLength>,
    },
    Regular {
        tensor: MIntersectionTensor,
    },
    Irregular {
        witness: Box<RegularityWitness>,
    },
}

impl MDistanceRegularity {
    pub fn is_regular(&self) -> bool {
        matches!(self, MDistanceRegularity::Regular { .. })
    }
}

/// Checks constancy of `p^c_{ab}` over all vertex pairs at every m-distance
/// c. Requires every unit vector e_1..e_m to appear in D.
pub fn is_m_distance_regular(
    graph: &ColoredGraph,
    order: &MonomialOrder,
) -> Result<MDistanceRegularity, Error> {
    let mats = m_distance_matrices(graph, order)?;
    let m = graph.m;
    let missing: Vec<MLength> = (0..m)
        .map(|i| {
            let mut e = vec![0u32; m];
            e[i] = 1;
            e
        })
        .filter(|e| !mats.distances.contains(e))
        .collect();
    if !missing.is_empty() {
        return Ok(MDistanceRegularity::NotApplicable {
            missing_units: missing,
        });
    }

    let n = graph.vertex_count;
    let d = mats.distances.len();
    let mut reference: Vec<Option<Vec<u32>>> = vec![None; d];
    let mut ref_pair = vec![(0usize, 0usize); d];
    let mut buf = vec![0u32; d * d];
    for x in 0..n {
        for y in 0..n {
            let c = mats.assignment[x][y];
            buf.iter_mut().for_each(|v| *v = 0);
            for z in 0..n {
                buf[mats.assignment[x][z] * d + mats.assignment[z][y]] += 1;
            }
            match &reference[c] {
                None => {
                    reference[c] = Some(buf.clone());
                    ref_pair[c] = (x, y);
                }
                Some(r) if r != &buf => {
                    let (idx, (&ca, &cb)) = r
                        .iter()
                        .zip(&buf)
                        .enumerate()
                        .find(|(_, (a, b))| a != b)
                        .expect("vectors differ");
                    return Ok(MDistanceRegularity::Irregular {
                        witness: Box::new(RegularityWitness {
                            a: mats.distances[idx / d].clone(),
                            b: mats.distances[idx % d].clone(),
                            c: mats.distances[c].clone(),
                            pair_a: ref_pair[c],
                            count_a: ca,
                            pair_b: (x, y),
                            count_b: cb,
                        }),
                    });
                }
                _ => {}
            }
        }
    }
    let mut p = vec![0u32; d * d * d];
    for c in 0..d {
        let r = reference[c].as_ref().expect("every distance attained");
        for a in 0..d {
            for b in 0..d {
                p[(a * d + b) * d + c] = r[a * d + b];
            }
        }
    }
    Ok(MDistanceRegularity::Regular {
        tensor: MIntersectionTensor {
            distances: mats.distances,
            p,
        },
    })
}

// ---------------------------------------------------------------------------
// Triangle inequality and the WMAS bridge
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct TriangleReport {
    pub triples_checked: u64,
    /// Vector inequality d(x,y) <= d(x,z) + d(z,y) under the order.
    pub vector_holds: bool,
    pub vector_witness: Option<(usize, usize, usize)>,
    /// Scalar inequality for |d|_1; None when the order is not
    /// L1-compatible on the attained domain (claim unproven, not asserted).
    pub scalar_holds: Option<bool>,
    pub scalar_witness: Option<(usize, usize, usize)>,
    pub annotation: Option<String>,
}

/// Exhaustively verifies the vector triangle inequality, and the scalar one
/// when the order is L1-compatible on the attained distances and their
/// pairwise sums.
pub fn triangle_inequality_check(
    graph: &ColoredGraph,
    order: &MonomialOrder,
) -> Result<TriangleReport, Error> {
    let table = all_pairs_m_distance(graph, order)?;
    let n = graph.vertex_count;

    let mut domain: BTreeSet<MLength> = table.iter().flatten().cloned().collect();
    let attained: Vec<MLength> = domain.iter().cloned().collect();
    for a in &attained {
        for b in &attained {
            domain.insert(add(a, b));
        }
    }
    let domain: Vec<MLength> = domain.into_iter().collect();
    let l1_ok = is_l1_compatible(order, &domain)?.compatible;

    let mut report = TriangleReport {
        triples_checked: 0,
        vector_holds: true,
        vector_witness: None,
        scalar_holds: if l1_ok { Some(true) } else { None },
        scalar_witness: None,
        annotation: (!l1_ok).then(|| {
            "order not L1-compatible on the attained domain; scalar claim unproven".into()
        }),
    };
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                report.triples_checked += 1;
                let sum = add(&table[x][z], &table[z][y]);
                if order.compare(&table[x][y], &sum)? == Ordering::Greater {
                    report.vector_holds = false;
                    report.vector_witness.get_or_insert((x, y, z));
                }
                if l1_ok && l1(&table[x][y]) > l1(&table[x][z]) + l1(&table[z][y]) {
                    report.scalar_holds = Some(false);
                    report.scalar_witness.get_or_insert((x, y, z));
                }
            }
        }
    }
    Ok(report)
}

/// Converts the m-distance partition of a colored graph into an explicit
/// scheme with quasi-distance |d_m|_1. Requires an L1-compatible order; the
/// resulting candidate is meaningful exactly when the graph is
/// m-distance-regular (then it passes the scheme axioms).
pub fn to_scheme(graph: &ColoredGraph, order: &MonomialOrder) -> Result<ExplicitScheme, Error> {
    let mats = m_distance_matrices(graph, order)?;
    let report = is_l1_compatible(order, &mats.distances)?;
    if let Some((a, b)) = report.witness {
        return Err(Error::NotL1Compatible { a, b });
    }
    let n = graph.vertex_count;
    let mut table = vec![0u32; n * n];
    for x in 0..n {
        for y in 0..n {
            table[x * n + y] = mats.assignment[x][y] as u32;
        }
    }
    let d: Vec<u64> = mats.distances.iter().map(|v| l1(v)).collect();
    ExplicitScheme::from_class_table(mats.distances, d, n, table)
}
