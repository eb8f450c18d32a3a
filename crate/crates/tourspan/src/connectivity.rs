//! Vertex connectivity via unit-capacity Menger flows.
//!
//! Local connectivity between an ordered pair is computed on the standard
//! vertex-split network (each internal vertex becomes an in-node/out-node
//! pair joined by a capacity-1 edge) with BFS augmenting paths. Every answer
//! carries both witnesses: a family of internally disjoint paths and a
//! matching minimum separator.

use serde::Serialize;
use thiserror::Error;

use crate::tournament::{bits, Path, Tournament, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConnectivityError {
    #[error("same vertex {0} given twice")]
    SameVertex(Vertex),
    #[error("no arc {u}->{v}")]
    NoSuchArc { u: Vertex, v: Vertex },
    #[error("bypass length must be at least 2, got {0}")]
    BadLength(usize),
    #[error("irregularity {actual} exceeds claimed budget {budget}")]
    IrregularityExceeded { actual: usize, budget: usize },
}

/// Internally disjoint paths sharing source and sink.
#[derive(Clone, Debug, Serialize)]
pub struct PathFamily {
    pub source: Vertex,
    pub sink: Vertex,
    pub paths: Vec<Path>,
}

impl PathFamily {
    /// Checks the family invariants against a tournament.
    pub fn validate(&self, t: &Tournament) -> Result<(), String> {
        let mut internals = 0u64;
        let mut trivial = 0;
        for p in &self.paths {
            p.validate(t)?;
            if p.first() != self.source || p.last() != self.sink {
                return Err(format!("path endpoints {:?} mismatch", p.vertices()));
            }
            if p.internal_vertices().is_empty() {
                trivial += 1;
            }
            for &v in p.internal_vertices() {
                if internals >> v & 1 == 1 {
                    return Err(format!("internal vertex {v} shared"));
                }
                if v == self.source || v == self.sink {
                    return Err(format!("endpoint {v} used internally"));
                }
                internals |= 1 << v;
            }
        }
        if trivial > 1 {
            return Err("more than one zero-internal path".into());
        }
        Ok(())
    }
}

/// Minimum separator with the two sides it induces.
#[derive(Clone, Debug, Serialize)]
pub struct CutCertificate {
    pub separator: Vec<Vertex>,
    pub side_source: Vec<Vertex>,
    pub side_sink: Vec<Vertex>,
}

#[derive(Clone, Debug)]
pub struct LocalConnectivity {
    /// Maximum number of internally disjoint (x,y)-paths.
    pub count: usize,
    pub family: PathFamily,
    pub cut: CutCertificate,
}

struct FlowNet {
    // forward/backward edge pairs: edge 2i is forward, 2i+1 its residual twin
    to: Vec<usize>,
    cap: Vec<i32>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(nodes: usize) -> Self {
        FlowNet {
            to: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); nodes],
        }
    }

    fn add_edge(&mut self, from: usize, to: usize) -> usize {
        let id = self.to.len();
        self.to.push(to);
        self.cap.push(1);
        self.adj[from].push(id);
        self.to.push(from);
        self.cap.push(0);
        self.adj[to].push(id + 1);
        id
    }

    fn bfs_augment(&mut self, s: usize, t: usize) -> bool {
        let mut prev_edge = vec![usize::MAX; self.adj.len()];
        let mut visited = vec![false; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        visited[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            if u == t {
                break;
            }
            for &e in &self.adj[u] {
                let v = self.to[e];
                if !visited[v] && self.cap[e] > 0 {
                    visited[v] = true;
                    prev_edge[v] = e;
                    queue.push_back(v);
                }
            }
        }
        if !visited[t] {
            return false;
        }
        let mut v = t;
        while v != s {
            let e = prev_edge[v];
            self.cap[e] -= 1;
            self.cap[e ^ 1] += 1;
            v = self.to[e ^ 1];
        }
        true
    }

    fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.adj.len()];
        let mut queue = std::collections::VecDeque::new();
        seen[s] = true;
        queue.push_back(s);
        while let Some(u) = queue.pop_front() {
            for &e in &self.adj[u] {
                let v = self.to[e];
                if !seen[v] && self.cap[e] > 0 {
                    seen[v] = true;
                    queue.push_back(v);
                }
            }
        }
        seen
    }
}

#[inline]
fn in_node(v: Vertex) -> usize {
    2 * v
}
#[inline]
fn out_node(v: Vertex) -> usize {
    2 * v + 1
}

/// Maximum internally disjoint (x,y)-path count with witnesses.
///
/// The direct arc x→y, when present, is excluded from the flow network and
/// accounted for as one extra path; the separator then certifies the
/// internal part (count = |separator| + 1).
pub fn local_connectivity(
    t: &Tournament,
    x: Vertex,
    y: Vertex,
) -> Result<LocalConnectivity, ConnectivityError> {
    if x == y {
        return Err(ConnectivityError::SameVertex(x));
    }
    let n = t.n();
    let mut net = FlowNet::new(2 * n);
    // split edges, ascending vertex order for determinism
    let mut split_edge = vec![usize::MAX; n];
    for v in 0..n {
        if v != x && v != y {
            split_edge[v] = net.add_edge(in_node(v), out_node(v));
        }
    }
    // arc edges; skip arcs out of y, into x, and the direct arc
    let mut x_arc_edge = vec![usize::MAX; n];
    for u in 0..n {
        if u == y {
            continue;
        }
        for v in bits(t.out_bits(u)) {
            if v == x || (u == x && v == y) {
                continue;
            }
            let id = net.add_edge(out_node(u), in_node(v));
            if u == x {
                x_arc_edge[v] = id;
            }
        }
    }
    let s = out_node(x);
    let snk = in_node(y);
    let mut flow = 0usize;
    while net.bfs_augment(s, snk) {
        flow += 1;
    }

    // decompose the flow into vertex paths, smallest next vertex first
    let mut used_edge = vec![false; net.to.len()];
    let mut paths: Vec<Path> = Vec::new();
    let direct = t.dominates(x, y);
    if direct {
        paths.push(Path::new(vec![x, y]));
    }
    for _ in 0..flow {
        let mut verts = vec![x];
        let mut node = s;
        loop {
            // forward edges carrying flow: cap 0 on a forward edge (ids even)
            let next = net.adj[node]
                .iter()
                .copied()
                .filter(|&e| e % 2 == 0 && net.cap[e] == 0 && !used_edge[e])
                .min_by_key(|&e| net.to[e])
                .expect("flow conservation");
            used_edge[next] = true;
            node = net.to[next];
            if node == snk {
                verts.push(y);
                break;
            }
            if node.is_multiple_of(2) {
                verts.push(node / 2);
            }
        }
        paths.push(Path::new(verts));
    }

    // minimum separator from residual reachability
    let reach = net.residual_reachable(s);
    let mut separator = Vec::new();
    for v in 0..n {
        if v == x || v == y {
            continue;
        }
        if reach[in_node(v)] && !reach[out_node(v)] {
            separator.push(v);
        } else if !reach[in_node(v)] && x_arc_edge[v] != usize::MAX && net.cap[x_arc_edge[v]] == 0 {
            // saturated source arc crossing the cut: v itself separates
            separator.push(v);
        }
    }
    debug_assert_eq!(separator.len(), flow);

    let mut side_source = vec![x];
    let mut side_sink = Vec::new();
    for v in 0..n {
        if v == x || v == y || separator.contains(&v) {
            continue;
        }
        if reach[in_node(v)] {
            side_source.push(v);
        } else {
            side_sink.push(v);
        }
    }
    side_sink.push(y);

    let count = flow + usize::from(direct);
    Ok(LocalConnectivity {
        count,
        family: PathFamily {
            source: x,
            sink: y,
            paths,
        },
        cut: CutCertificate {
            separator,
            side_source,
            side_sink,
        },
    })
}

/// κ(T): the largest k such that T is k-strong, with a minimum separating
/// set when 0 < κ.
pub fn vertex_connectivity(t: &Tournament) -> (usize, Option<CutCertificate>) {
    let n = t.n();
    if n < 2 {
        return (0, None);
    }
    let mut best: Option<(usize, CutCertificate)> = None;
    for x in 0..n {
        for y in 0..n {
            if x == y || t.dominates(x, y) {
                continue;
            }
            let lc = local_connectivity(t, x, y).expect("distinct vertices");
            if best.as_ref().is_none_or(|(k, _)| lc.count < *k) {
                best = Some((lc.count, lc.cut));
            }
        }
    }
    let (kappa, cut) = best.expect("n >= 2 always has a non-adjacent ordered pair");
    if kappa == 0 {
        (0, None)
    } else {
        (kappa, Some(cut))
    }
}

/// True iff n ≥ k+1 and κ(T) ≥ k.
pub fn is_k_strong(t: &Tournament, k: usize) -> bool {
    if k == 0 {
        return true;
    }
    t.n() > k && vertex_connectivity(t).0 >= k
}

/// A (u,v)-path of exactly the given length for the arc u→v, if one exists.
pub fn find_bypass(
    t: &Tournament,
    u: Vertex,
    v: Vertex,
    length: usize,
) -> Result<Option<Path>, ConnectivityError> {
    if u == v {
        return Err(ConnectivityError::SameVertex(u));
    }
    if !t.dominates(u, v) {
        return Err(ConnectivityError::NoSuchArc { u, v });
    }
    if length < 2 {
        return Err(ConnectivityError::BadLength(length));
    }
    if length == 2 {
        // common out-of-u / in-of-v vertices
        let w = bits(t.out_bits(u) & t.in_bits(v)).next();
        return Ok(w.map(|w| Path::new(vec![u, w, v])));
    }
    let mut stack = vec![u];
    let used = 1u64 << u | 1 << v;
    Ok(bypass_dfs(t, v, length, &mut stack, used))
}

fn bypass_dfs(
    t: &Tournament,
    sink: Vertex,
    length: usize,
    stack: &mut Vec<Vertex>,
    used: u64,
) -> Option<Path> {
    let cur = *stack.last().unwrap();
    if stack.len() == length {
        if t.dominates(cur, sink) {
            let mut verts = stack.clone();
            verts.push(sink);
            return Some(Path::new(verts));
        }
        return None;
    }
    for w in bits(t.out_bits(cur) & !used) {
        stack.push(w);
        if let Some(p) = bypass_dfs(t, sink, length, stack, used | 1 << w) {
            return Some(p);
        }
        stack.pop();
    }
    None
}

/// Lemma-style comparison record: κ(T) against ⌈(n − 2k)/3⌉.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IrregularityBoundCheck {
    pub n: usize,
    pub irregularity: usize,
    pub budget: usize,
    pub kappa: usize,
    pub bound: usize,
    pub satisfied: bool,
}

/// Asserts κ(T) ≥ ⌈(n − 2k)/3⌉ for a tournament with i(T) ≤ k.
pub fn check_irregularity_bound(
    t: &Tournament,
    k: usize,
) -> Result<IrregularityBoundCheck, ConnectivityError> {
    let irregularity = t.irregularity();
    if irregularity > k {
        return Err(ConnectivityError::IrregularityExceeded {
            actual: irregularity,
            budget: k,
        });
    }
    let n = t.n();
    let bound = if n > 2 * k { (n - 2 * k).div_ceil(3) } else { 0 };
    let (kappa, _) = vertex_connectivity(t);
    Ok(IrregularityBoundCheck {
        n,
        irregularity,
        budget: k,
        kappa,
        bound,
        satisfied: kappa >= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c3() -> Tournament {
        Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    fn r5() -> Tournament {
        Tournament::circulant(5, &[1, 2]).unwrap()
    }

    fn r7() -> Tournament {
        Tournament::circulant(7, &[1, 2, 3]).unwrap()
    }

    /// removing the separator really disconnects x from y
    fn assert_cut_separates(t: &Tournament, x: Vertex, y: Vertex, cut: &CutCertificate) {
        let mut within = t.full_mask();
        for &v in &cut.separator {
            within &= !(1u64 << v);
        }
        let reach = t.forward_closure(1 << x, within);
        assert_eq!(reach >> y & 1, 0, "separator fails to cut {x}->{y}");
    }

    #[test]
    fn c3_local_connectivity() {
        // only (0,1)-path is the arc itself
        let lc = local_connectivity(&c3(), 0, 1).unwrap();
        assert_eq!(lc.count, 1);
        assert_eq!(lc.family.paths.len(), 1);
        lc.family.validate(&c3()).unwrap();
        assert!(lc.cut.separator.is_empty());
    }

    #[test]
    fn tt3_reverse_pair_has_none() {
        let tt3 = Tournament::transitive(3).unwrap();
        let lc = local_connectivity(&tt3, 2, 0).unwrap();
        assert_eq!(lc.count, 0);
        assert!(lc.family.paths.is_empty());
        assert_cut_separates(&tt3, 2, 0, &lc.cut);
    }

    #[test]
    fn r5_nonadjacent_pairs_have_two_paths() {
        let t = r5();
        for x in 0..5 {
            for y in 0..5 {
                if x != y && !t.dominates(x, y) {
                    let lc = local_connectivity(&t, x, y).unwrap();
                    assert_eq!(lc.count, 2, "pair ({x},{y})");
                    lc.family.validate(&t).unwrap();
                    assert_eq!(lc.cut.separator.len(), 2);
                    assert_cut_separates(&t, x, y, &lc.cut);
                }
            }
        }
    }

    #[test]
    fn kappa_values() {
        assert_eq!(vertex_connectivity(&Tournament::transitive(4).unwrap()).0, 0);
        let (k, cut) = vertex_connectivity(&c3());
        assert_eq!(k, 1);
        assert_eq!(cut.unwrap().separator.len(), 1);
        assert_eq!(vertex_connectivity(&r5()).0, 2);
        assert_eq!(vertex_connectivity(&r7()).0, 3);
    }

    #[test]
    fn k_strong_monotone() {
        assert!(is_k_strong(&c3(), 1));
        assert!(!is_k_strong(&c3(), 2));
        assert!(is_k_strong(&r5(), 2));
        for k in 0..=3 {
            if is_k_strong(&r7(), k + 1) {
                assert!(is_k_strong(&r7(), k));
            }
        }
    }

    #[test]
    fn bypasses() {
        // R5 arc 0->1 has no 2-bypass
        assert_eq!(find_bypass(&r5(), 0, 1, 2).unwrap(), None);
        // C3 arc 0->1 has no 2-bypass either
        assert_eq!(find_bypass(&c3(), 0, 1, 2).unwrap(), None);
        // TT3 arc 0->2 has the 2-bypass 0,1,2
        assert_eq!(
            find_bypass(&Tournament::transitive(3).unwrap(), 0, 2, 2).unwrap(),
            Some(Path::new(vec![0, 1, 2]))
        );
        assert_eq!(
            find_bypass(&c3(), 1, 0, 2),
            Err(ConnectivityError::NoSuchArc { u: 1, v: 0 })
        );
        // longer bypass via dfs: R5 arc 0->1, length 4 uses all vertices
        let p = find_bypass(&r5(), 0, 1, 4).unwrap().unwrap();
        assert_eq!(p.len(), 4);
        p.validate(&r5()).unwrap();
    }

    #[test]
    fn irregularity_bound_examples() {
        let rec = check_irregularity_bound(&r7(), 0).unwrap();
        assert_eq!((rec.kappa, rec.bound), (3, 3));
        assert!(rec.satisfied);

        let rec = check_irregularity_bound(&c3(), 0).unwrap();
        assert_eq!((rec.kappa, rec.bound), (1, 1));
        assert!(rec.satisfied);

        let rec = check_irregularity_bound(&r5(), 0).unwrap();
        assert_eq!((rec.kappa, rec.bound), (2, 2));
        assert!(rec.satisfied);

        assert_eq!(
            check_irregularity_bound(&Tournament::transitive(4).unwrap(), 0),
            Err(ConnectivityError::IrregularityExceeded { actual: 3, budget: 0 })
        );
    }

    #[test]
    fn deletion_law_on_samples() {
        // if T is k-strong and |S| = m <= k-1 then T - S is (k-m)-strong
        for seed in 0..5u64 {
            let t = crate::generate::random_tournament(9, seed).unwrap();
            let (kappa, _) = vertex_connectivity(&t);
            if kappa < 2 {
                continue;
            }
            for s in 0..t.n() {
                let keep = t.full_mask() & !(1u64 << s);
                let (sub, _) = t.induced_mask(keep).unwrap();
                assert!(is_k_strong(&sub, kappa - 1));
            }
        }
    }
}
