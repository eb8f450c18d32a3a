//! Tournament representation and basic structure: dominance queries, degree
//! profiles, induced sub-tournaments, strong decomposition, and the
//! `tourn-v1` text format.
//!
//! A tournament on `n` vertices stores one out-neighborhood bitset per
//! vertex, so every set operation (arc scans between vertex sets, common
//! out-neighbors, reachability closures) is word-parallel. Orders are capped
//! at 64 vertices, far beyond anything the constructive or oracle machinery
//! touches.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Vertex index, valid relative to a tournament of order `n`.
pub type Vertex = usize;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TournamentError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("vertex {v} out of range for order {n}")]
    IndexOutOfRange { v: Vertex, n: usize },
    #[error("pair {{{u},{v}}} has {count} arcs, expected exactly one")]
    NotATournament { u: Vertex, v: Vertex, count: usize },
    #[error("induced sub-tournament needs a nonempty vertex set")]
    EmptyVertexSet,
    #[error("order {n} exceeds supported maximum {max}")]
    OrderTooLarge { n: usize, max: usize },
    #[error("order must be at least 1")]
    EmptyOrder,
    #[error("order {n} below required minimum {min}")]
    OrderTooSmall { n: usize, min: usize },
    #[error("same vertex {0} given twice")]
    SameVertex(Vertex),
    #[error("no regular tournament of even order {n} (irregularity budget 0 infeasible)")]
    InfeasibleBudget { n: usize },
    #[error("tourn-v1 parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Complete asymmetric digraph on `n` labeled vertices.
///
/// Invariant: for every unordered pair of distinct vertices exactly one of
/// the two arcs is present, and no vertex dominates itself. All constructors
/// enforce this.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    n: usize,
    out: Vec<u64>,
}

impl std::fmt::Debug for Tournament {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Tournament(n={}, arcs=[", self.n)?;
        let mut first = true;
        for u in 0..self.n {
            for v in 0..self.n {
                if u != v && self.dominates(u, v) {
                    if !first {
                        write!(f, " ")?;
                    }
                    write!(f, "{u}->{v}")?;
                    first = false;
                }
            }
        }
        write!(f, "])")
    }
}

impl Tournament {
    fn check_order(n: usize) -> Result<(), TournamentError> {
        if n == 0 {
            return Err(TournamentError::EmptyOrder);
        }
        if n > MAX_ORDER {
            return Err(TournamentError::OrderTooLarge { n, max: MAX_ORDER });
        }
        Ok(())
    }

    /// Builds a tournament from an explicit arc list; every unordered pair
    /// must be covered exactly once.
    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Result<Self, TournamentError> {
        Self::check_order(n)?;
        let mut out = vec![0u64; n];
        for &(u, v) in arcs {
            if u >= n {
                return Err(TournamentError::IndexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(TournamentError::IndexOutOfRange { v, n });
            }
            if u == v {
                return Err(TournamentError::SelfLoop(u));
            }
            out[u] |= 1 << v;
        }
        let t = Tournament { n, out };
        for u in 0..n {
            for v in (u + 1)..n {
                let uv = t.out[u] >> v & 1;
                let vu = t.out[v] >> u & 1;
                if uv + vu != 1 {
                    return Err(TournamentError::NotATournament {
                        u,
                        v,
                        count: (uv + vu) as usize,
                    });
                }
            }
        }
        Ok(t)
    }

    /// Constructs directly from out-neighborhood bitsets; caller guarantees
    /// the tournament invariant (used by enumeration and generators).
    pub(crate) fn from_rows_unchecked(n: usize, out: Vec<u64>) -> Self {
        debug_assert!((1..=MAX_ORDER).contains(&n) && out.len() == n);
        #[cfg(debug_assertions)]
        {
            for u in 0..n {
                for v in (u + 1)..n {
                    debug_assert_eq!((out[u] >> v & 1) + (out[v] >> u & 1), 1);
                }
                debug_assert_eq!(out[u] >> u & 1, 0);
            }
        }
        Tournament { n, out }
    }

    /// Transitive tournament TT_n: i dominates j iff i < j.
    pub fn transitive(n: usize) -> Result<Self, TournamentError> {
        Self::check_order(n)?;
        let full = full_mask(n);
        let out = (0..n).map(|i| full & !((1u64 << (i + 1)) - 1)).collect();
        Ok(Tournament { n, out })
    }

    /// Circulant tournament on Z_n: i dominates i+s (mod n) for each s in the
    /// connection set. The set must pick exactly one of {s, n-s} for every
    /// distance.
    pub fn circulant(n: usize, connection: &[usize]) -> Result<Self, TournamentError> {
        Self::check_order(n)?;
        let mut out = vec![0u64; n];
        for i in 0..n {
            for &s in connection {
                if s == 0 || s >= n {
                    return Err(TournamentError::IndexOutOfRange { v: s, n });
                }
                out[i] |= 1 << ((i + s) % n);
            }
        }
        // defer to the full validity check
        Tournament::from_arcs(
            n,
            &(0..n)
                .flat_map(|u| bits(out[u]).map(move |v| (u, v)))
                .collect::<Vec<_>>(),
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.n
    }

    pub fn full_mask(&self) -> u64 {
        full_mask(self.n)
    }

    /// True iff the arc u→v is present. Panics if `u == v`.
    pub fn dominates(&self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "dominates queried with identical vertices {u}");
        assert!(u < self.n && v < self.n);
        self.out[u] >> v & 1 == 1
    }

    /// Out-neighborhood of `v` as a bitset.
    pub fn out_bits(&self, v: Vertex) -> u64 {
        self.out[v]
    }

    /// In-neighborhood of `v` as a bitset.
    pub fn in_bits(&self, v: Vertex) -> u64 {
        self.full_mask() & !self.out[v] & !(1 << v)
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[v].count_ones() as usize
    }

    pub fn in_degree(&self, v: Vertex) -> usize {
        self.n - 1 - self.out_degree(v)
    }

    pub fn degree_profile(&self) -> DegreeProfile {
        let out_degrees: Vec<usize> = (0..self.n).map(|v| self.out_degree(v)).collect();
        let in_degrees: Vec<usize> = (0..self.n).map(|v| self.in_degree(v)).collect();
        let irregularity = out_degrees
            .iter()
            .zip(&in_degrees)
            .map(|(&o, &i)| o.abs_diff(i))
            .max()
            .unwrap_or(0);
        DegreeProfile {
            out_degrees,
            in_degrees,
            irregularity,
        }
    }

    /// Irregularity i(T) = max |d⁺(x) − d⁻(x)|.
    pub fn irregularity(&self) -> usize {
        self.degree_profile().irregularity
    }

    /// Reverses every arc.
    pub fn reverse(&self) -> Tournament {
        let out = (0..self.n)
            .map(|v| self.full_mask() & !self.out[v] & !(1 << v))
            .collect();
        Tournament { n: self.n, out }
    }

    /// Flips the orientation of the arc between u and v (generator internals).
    pub(crate) fn flip_arc(&mut self, u: Vertex, v: Vertex) {
        debug_assert!(u != v);
        self.out[u] ^= 1 << v;
        self.out[v] ^= 1 << u;
    }

    /// Sub-tournament on the vertices of `keep` (a bitset), with the
    /// old↔new index mapping so paths found in the piece lift back.
    pub fn induced_mask(&self, keep: u64) -> Result<(Tournament, SubMap), TournamentError> {
        let keep = keep & self.full_mask();
        if keep == 0 {
            return Err(TournamentError::EmptyVertexSet);
        }
        let old_of_new: Vec<Vertex> = bits(keep).collect();
        let mut new_of_old = vec![usize::MAX; self.n];
        for (new, &old) in old_of_new.iter().enumerate() {
            new_of_old[old] = new;
        }
        let m = old_of_new.len();
        let mut out = vec![0u64; m];
        for (new_u, &old_u) in old_of_new.iter().enumerate() {
            for old_v in bits(self.out[old_u] & keep) {
                out[new_u] |= 1 << new_of_old[old_v];
            }
        }
        Ok((
            Tournament { n: m, out },
            SubMap {
                old_of_new,
                new_of_old,
            },
        ))
    }

    /// Sub-tournament on an explicit vertex list (deduplicated, any order).
    pub fn induced(&self, keep: &[Vertex]) -> Result<(Tournament, SubMap), TournamentError> {
        let mut mask = 0u64;
        for &v in keep {
            if v >= self.n {
                return Err(TournamentError::IndexOutOfRange { v, n: self.n });
            }
            mask |= 1 << v;
        }
        self.induced_mask(mask)
    }

    /// Vertices reachable from `start` by directed paths inside `within`
    /// (both bitsets; `start` is intersected with `within`).
    pub fn forward_closure(&self, start: u64, within: u64) -> u64 {
        let within = within & self.full_mask();
        let mut reach = start & within;
        loop {
            let mut next = reach;
            for v in bits(reach) {
                next |= self.out[v] & within;
            }
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }

    /// Vertices that reach `start` by directed paths inside `within`.
    pub fn backward_closure(&self, start: u64, within: u64) -> u64 {
        let within = within & self.full_mask();
        let mut reach = start & within;
        loop {
            let mut next = reach;
            for v in bits(within & !reach) {
                if self.out[v] & reach != 0 {
                    next |= 1 << v;
                }
            }
            if next == reach {
                return reach;
            }
            reach = next;
        }
    }

    /// True iff the whole tournament is strongly connected.
    pub fn is_strong(&self) -> bool {
        let full = self.full_mask();
        if self.n == 1 {
            return true;
        }
        self.forward_closure(1, full) == full && self.backward_closure(1, full) == full
    }

    /// Strong components in their unique domination order: for i < j every
    /// vertex of component i dominates every vertex of component j.
    pub fn strong_decomposition(&self) -> StrongDecomposition {
        let full = self.full_mask();
        let mut seen = 0u64;
        let mut comps: Vec<(u64, Vec<Vertex>)> = Vec::new();
        for v in 0..self.n {
            if seen >> v & 1 == 1 {
                continue;
            }
            let comp = self.forward_closure(1 << v, full) & self.backward_closure(1 << v, full);
            seen |= comp;
            comps.push((comp, bits(comp).collect()));
        }
        // Condensation of a tournament is a total order; any representative
        // pair decides which component comes first.
        comps.sort_by(|a, b| {
            let (ra, rb) = (a.1[0], b.1[0]);
            if self.dominates(ra, rb) {
                std::cmp::Ordering::Less
            } else {
                std::cmp::Ordering::Greater
            }
        });
        StrongDecomposition {
            components: comps.into_iter().map(|(_, vs)| vs).collect(),
        }
    }

    /// Serializes to the `tourn-v1` text format.
    pub fn to_tourn_v1(&self) -> String {
        let mut s = format!("{}\n", self.n);
        for u in 0..self.n {
            for v in 0..self.n {
                s.push(if u != v && self.dominates(u, v) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    /// Strict `tourn-v1` parser: line 1 is n, then n rows of n characters;
    /// row i column j is '1' iff i dominates j. Rejects any asymmetry.
    pub fn from_tourn_v1(text: &str) -> Result<Self, TournamentError> {
        let mut lines = text.lines();
        let first = lines.next().ok_or(TournamentError::Parse {
            line: 1,
            msg: "empty input".into(),
        })?;
        let n: usize = first.trim().parse().map_err(|_| TournamentError::Parse {
            line: 1,
            msg: format!("expected order, got {first:?}"),
        })?;
        Self::check_order(n).map_err(|e| TournamentError::Parse {
            line: 1,
            msg: e.to_string(),
        })?;
        let mut out = vec![0u64; n];
        for i in 0..n {
            let line_no = i + 2;
            let row = lines.next().ok_or(TournamentError::Parse {
                line: line_no,
                msg: "unexpected end of input".into(),
            })?;
            let row = row.trim_end();
            if row.chars().count() != n {
                return Err(TournamentError::Parse {
                    line: line_no,
                    msg: format!("expected {n} characters, got {}", row.chars().count()),
                });
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '1' => out[i] |= 1 << j,
                    '0' => {}
                    other => {
                        return Err(TournamentError::Parse {
                            line: line_no,
                            msg: format!("unexpected character {other:?}"),
                        })
                    }
                }
            }
        }
        let t = Tournament { n, out };
        for u in 0..n {
            if t.out[u] >> u & 1 == 1 {
                return Err(TournamentError::Parse {
                    line: u + 2,
                    msg: format!("diagonal entry for vertex {u} must be 0"),
                });
            }
            for v in (u + 1)..n {
                let uv = t.out[u] >> v & 1;
                let vu = t.out[v] >> u & 1;
                if uv + vu != 1 {
                    return Err(TournamentError::Parse {
                        line: u + 2,
                        msg: format!("pair {{{u},{v}}} has {} arcs, expected exactly one", uv + vu),
                    });
                }
            }
        }
        Ok(t)
    }
}

/// Iterates set bit positions of a word, ascending.
pub fn bits(mask: u64) -> impl Iterator<Item = usize> {
    std::iter::successors(
        if mask == 0 { None } else { Some(mask) },
        |&m| {
            let m = m & (m - 1);
            if m == 0 {
                None
            } else {
                Some(m)
            }
        },
    )
    .map(|m| m.trailing_zeros() as usize)
}

pub fn full_mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Old↔new index mapping recorded by `induced`.
#[derive(Clone, Debug)]
pub struct SubMap {
    /// new index → old index, ascending in old index
    pub old_of_new: Vec<Vertex>,
    /// old index → new index (usize::MAX when the vertex was dropped)
    pub new_of_old: Vec<usize>,
}

impl SubMap {
    pub fn to_old(&self, new: Vertex) -> Vertex {
        self.old_of_new[new]
    }

    pub fn to_new(&self, old: Vertex) -> Option<Vertex> {
        match self.new_of_old.get(old) {
            Some(&idx) if idx != usize::MAX => Some(idx),
            _ => None,
        }
    }

    /// Lifts a path of the sub-tournament back to the original indices.
    pub fn lift_path(&self, p: &Path) -> Path {
        Path::new(p.vertices().iter().map(|&v| self.to_old(v)).collect())
    }

    pub fn lift_cycle(&self, c: &Cycle) -> Cycle {
        Cycle::new(c.vertices().iter().map(|&v| self.to_old(v)).collect())
    }
}

/// Directed path given as its vertex sequence; consecutive vertices must be
/// joined by forward arcs (checked by `validate`, not by construction).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Path(Vec<Vertex>);

impl Path {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Path(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn first(&self) -> Vertex {
        self.0[0]
    }

    pub fn last(&self) -> Vertex {
        *self.0.last().unwrap()
    }

    /// Number of arcs.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn internal_vertices(&self) -> &[Vertex] {
        if self.0.len() <= 2 {
            &[]
        } else {
            &self.0[1..self.0.len() - 1]
        }
    }

    /// Checks distinctness and that every consecutive pair is a forward arc.
    pub fn validate(&self, t: &Tournament) -> Result<(), String> {
        if self.0.is_empty() {
            return Err("empty path".into());
        }
        let mut seen = 0u64;
        for &v in &self.0 {
            if v >= t.n() {
                return Err(format!("vertex {v} out of range"));
            }
            if seen >> v & 1 == 1 {
                return Err(format!("vertex {v} repeated"));
            }
            seen |= 1 << v;
        }
        for w in self.0.windows(2) {
            if !t.dominates(w[0], w[1]) {
                return Err(format!("missing arc {}->{}", w[0], w[1]));
            }
        }
        Ok(())
    }
}

/// Directed cycle; consecutive vertices (cyclically) must be forward arcs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Cycle(Vec<Vertex>);

impl Cycle {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        Cycle(vertices)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn validate(&self, t: &Tournament) -> Result<(), String> {
        if self.0.len() < 3 {
            return Err("cycle needs at least 3 vertices".into());
        }
        let mut seen = 0u64;
        for &v in &self.0 {
            if v >= t.n() {
                return Err(format!("vertex {v} out of range"));
            }
            if seen >> v & 1 == 1 {
                return Err(format!("vertex {v} repeated"));
            }
            seen |= 1 << v;
        }
        for i in 0..self.0.len() {
            let u = self.0[i];
            let v = self.0[(i + 1) % self.0.len()];
            if !t.dominates(u, v) {
                return Err(format!("missing arc {u}->{v}"));
            }
        }
        Ok(())
    }

    /// The Hamiltonian-path obtained by cutting the cycle so it starts at `v`.
    pub fn cut_at(&self, v: Vertex) -> Path {
        let pos = self.0.iter().position(|&u| u == v).expect("vertex on cycle");
        let mut verts = Vec::with_capacity(self.0.len());
        verts.extend_from_slice(&self.0[pos..]);
        verts.extend_from_slice(&self.0[..pos]);
        Path::new(verts)
    }
}

/// Per-vertex degrees plus the irregularity i(T).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    pub out_degrees: Vec<usize>,
    pub in_degrees: Vec<usize>,
    pub irregularity: usize,
}

/// Strong components T_1 … T_k in domination order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StrongDecomposition {
    pub components: Vec<Vec<Vertex>>,
}

impl StrongDecomposition {
    pub fn is_strong(&self) -> bool {
        self.components.len() == 1
    }

    pub fn initial(&self) -> &[Vertex] {
        &self.components[0]
    }

    pub fn terminal(&self) -> &[Vertex] {
        self.components.last().unwrap()
    }

    pub fn component_of(&self, v: Vertex) -> usize {
        self.components
            .iter()
            .position(|c| c.contains(&v))
            .expect("vertex in some component")
    }
}
