//! Hamiltonian paths and cycles in tournaments: insertion construction,
//! Moon-style cycle extension, path augmentation, and the decision procedure
//! for Hamiltonian paths between two prescribed vertices together with its
//! exceptional 6-vertex catalog.
//!
//! The catalog is derived, not transcribed: at first use we enumerate all
//! 32,768 labeled 6-vertex tournaments and keep every (T, {x,y}) where no
//! Hamiltonian path joins x and y in either direction yet none of the three
//! structural obstructions applies, deduplicated under isomorphism.

use once_cell::sync::Lazy;
use thiserror::Error;

use crate::enumerate::{enumerate_all, find_isomorphism_mapping_pair};
use crate::tournament::{bits, Cycle, Path, Tournament, Vertex};

/// Default node-expansion budget for the directed backtracking search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HamiltonError {
    #[error("same vertex {0} given twice")]
    SameVertex(Vertex),
    #[error("tournament is not strong")]
    NotStrong,
    #[error("vertex {0} cannot be inserted into the path")]
    NotInsertable(Vertex),
    #[error("no arc {u}->{v}")]
    NoSuchArc { u: Vertex, v: Vertex },
    #[error("search budget of {0} node expansions exhausted")]
    BudgetExhausted(u64),
}

/// Why no Hamiltonian path joins the pair (the four obstruction shapes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Obstruction {
    /// T is not strong and the initial or terminal component avoids both
    /// endpoints.
    ComponentAvoidsPair,
    /// T strong, T−x not strong, y inside a middle component of T−x.
    CutVertexX,
    /// T strong, T−y not strong, x inside a middle component of T−y.
    CutVertexY,
    /// Order 6 and the pair matches the exceptional catalog under
    /// isomorphism.
    Exceptional,
}

/// A Hamiltonian path of any tournament, by single-vertex insertion:
/// each new vertex goes before the first path vertex it dominates, else at
/// the end.
pub fn hamiltonian_path_any(t: &Tournament) -> Path {
    let mut verts: Vec<Vertex> = vec![0];
    for x in 1..t.n() {
        match verts.iter().position(|&p| t.dominates(x, p)) {
            Some(i) => verts.insert(i, x),
            None => verts.push(x),
        }
    }
    Path::new(verts)
}

/// A Hamiltonian cycle of a strong tournament, by Moon-style extension:
/// start from a 3-cycle, then repeatedly insert an outside vertex between
/// consecutive cycle vertices, or absorb two vertices at once when no
/// insertion point exists.
pub fn hamiltonian_cycle(t: &Tournament) -> Result<Cycle, HamiltonError> {
    let n = t.n();
    if n < 3 || !t.is_strong() {
        return Err(HamiltonError::NotStrong);
    }
    // seed 3-cycle, smallest lexicographic
    let mut cycle: Vec<Vertex> = 'seed: {
        for a in 0..n {
            for b in 0..n {
                if a == b || !t.dominates(a, b) {
                    continue;
                }
                for c in 0..n {
                    if c != a && c != b && t.dominates(b, c) && t.dominates(c, a) {
                        break 'seed vec![a, b, c];
                    }
                }
            }
        }
        unreachable!("strong tournament on >= 3 vertices contains a 3-cycle");
    };
    let mut outside = 0u64;
    for v in 0..n {
        if !cycle.contains(&v) {
            outside |= 1 << v;
        }
    }
    while outside != 0 {
        let mut inserted = false;
        'insert: for v in bits(outside) {
            for i in 0..cycle.len() {
                let a = cycle[i];
                let b = cycle[(i + 1) % cycle.len()];
                if t.dominates(a, v) && t.dominates(v, b) {
                    cycle.insert(i + 1, v);
                    outside &= !(1u64 << v);
                    inserted = true;
                    break 'insert;
                }
            }
        }
        if inserted {
            continue;
        }
        // every outside vertex either dominates the whole cycle or is
        // dominated by it; strongness forces an arc from the dominated side
        // back out, absorbing two vertices at once
        let mut dominated = 0u64; // cycle -> v for every cycle vertex
        let mut dominating = 0u64; // v -> cycle for every cycle vertex
        for v in bits(outside) {
            if cycle.iter().all(|&c| t.dominates(c, v)) {
                dominated |= 1 << v;
            } else {
                debug_assert!(cycle.iter().all(|&c| t.dominates(v, c)));
                dominating |= 1 << v;
            }
        }
        let mut expanded = false;
        for a in bits(dominated) {
            if let Some(b) = bits(t.out_bits(a) & dominating).next() {
                // c_last -> a -> b -> c_0
                cycle.push(a);
                cycle.push(b);
                outside &= !(1u64 << a);
                outside &= !(1u64 << b);
                expanded = true;
                break;
            }
        }
        assert!(
            expanded,
            "Moon extension stuck on a strong tournament: {t:?}"
        );
    }
    Ok(Cycle::new(cycle))
}

/// Inserts an outside vertex into a path between a dominator and a
/// dominated successor, preserving both endpoints.
pub fn augment(t: &Tournament, p: &Path, x: Vertex) -> Result<Path, HamiltonError> {
    assert!(!p.vertices().contains(&x), "vertex {x} already on the path");
    for (i, w) in p.vertices().windows(2).enumerate() {
        if t.dominates(w[0], x) && t.dominates(x, w[1]) {
            let mut verts = p.vertices().to_vec();
            verts.insert(i + 1, x);
            return Ok(Path::new(verts));
        }
    }
    Err(HamiltonError::NotInsertable(x))
}

/// Hamiltonian path of a strong tournament starting at `v`.
fn ham_path_starting_at(t: &Tournament, v: Vertex) -> Result<Path, HamiltonError> {
    if t.n() == 1 {
        return Ok(Path::new(vec![v]));
    }
    if t.n() == 2 {
        return Err(HamiltonError::NotStrong);
    }
    Ok(hamiltonian_cycle(t)?.cut_at(v))
}

/// Hamiltonian path of a strong tournament ending at `v`.
fn ham_path_ending_at(t: &Tournament, v: Vertex) -> Result<Path, HamiltonError> {
    if t.n() == 1 {
        return Ok(Path::new(vec![v]));
    }
    if t.n() == 2 {
        return Err(HamiltonError::NotStrong);
    }
    let cycle = hamiltonian_cycle(t)?;
    let pos = cycle
        .vertices()
        .iter()
        .position(|&u| u == v)
        .expect("vertex on cycle");
    let succ = cycle.vertices()[(pos + 1) % cycle.len()];
    Ok(cycle.cut_at(succ))
}

fn obstruction_i_iii(t: &Tournament, x: Vertex, y: Vertex) -> Option<Obstruction> {
    let decomp = t.strong_decomposition();
    if !decomp.is_strong() {
        let init_hits = decomp.initial().contains(&x) || decomp.initial().contains(&y);
        let term_hits = decomp.terminal().contains(&x) || decomp.terminal().contains(&y);
        if !init_hits || !term_hits {
            return Some(Obstruction::ComponentAvoidsPair);
        }
        return None;
    }
    if t.n() < 3 {
        return None;
    }
    for (removed, other, tag) in [
        (x, y, Obstruction::CutVertexX),
        (y, x, Obstruction::CutVertexY),
    ] {
        let keep = t.full_mask() & !(1u64 << removed);
        let (sub, map) = t.induced_mask(keep).expect("nonempty");
        let d = sub.strong_decomposition();
        if !d.is_strong() {
            let o = map.to_new(other).expect("other vertex kept");
            if !d.initial().contains(&o) && !d.terminal().contains(&o) {
                return Some(tag);
            }
        }
    }
    None
}

/// Decision procedure for the existence of a Hamiltonian path between x and
/// y (in either direction). `Ok(None)` means such a path exists; otherwise
/// the obstruction explains the absence.
pub fn ham_path_between_obstruction(
    t: &Tournament,
    x: Vertex,
    y: Vertex,
) -> Result<Option<Obstruction>, HamiltonError> {
    if x == y {
        return Err(HamiltonError::SameVertex(x));
    }
    if let Some(o) = obstruction_i_iii(t, x, y) {
        return Ok(Some(o));
    }
    if t.n() == 6 && t.is_strong() && is_exceptional_pair(t, x, y) {
        return Ok(Some(Obstruction::Exceptional));
    }
    Ok(None)
}

/// Boolean form of the decision procedure.
pub fn ham_path_between_exists(t: &Tournament, x: Vertex, y: Vertex) -> Result<bool, HamiltonError> {
    ham_path_between_obstruction(t, x, y).map(|o| o.is_none())
}

/// Witness companion of the decision: a Hamiltonian path with endpoint set
/// {x, y}, in whichever direction exists; `None` exactly when the decision
/// says no.
pub fn find_ham_path_between(
    t: &Tournament,
    x: Vertex,
    y: Vertex,
) -> Result<Option<Path>, HamiltonError> {
    if ham_path_between_obstruction(t, x, y)?.is_some() {
        return Ok(None);
    }
    if let Some(p) = find_ham_path_directed(t, x, y)? {
        return Ok(Some(p));
    }
    if let Some(p) = find_ham_path_directed(t, y, x)? {
        return Ok(Some(p));
    }
    unreachable!("decision procedure affirmed a Hamiltonian path between {x} and {y}, but exhaustive search found none: {t:?}");
}

/// A Hamiltonian (x,y)-path if one exists.
///
/// Non-strong tournaments are handled constructively through the component
/// order; strong ones by backtracking with reachability pruning and a
/// fail-first vertex order. Exceeding the node budget is an error, distinct
/// from proven absence.
pub fn find_ham_path_directed(
    t: &Tournament,
    x: Vertex,
    y: Vertex,
) -> Result<Option<Path>, HamiltonError> {
    find_ham_path_directed_with_budget(t, x, y, DEFAULT_SEARCH_BUDGET)
}

pub fn find_ham_path_directed_with_budget(
    t: &Tournament,
    x: Vertex,
    y: Vertex,
    budget: u64,
) -> Result<Option<Path>, HamiltonError> {
    if x == y {
        return Err(HamiltonError::SameVertex(x));
    }
    let decomp = t.strong_decomposition();
    if !decomp.is_strong() {
        // the path must start inside the initial component and drain the
        // components in domination order
        if !decomp.initial().contains(&x) || !decomp.terminal().contains(&y) {
            return Ok(None);
        }
        let mut verts: Vec<Vertex> = Vec::with_capacity(t.n());
        let m = decomp.components.len();
        for (i, comp) in decomp.components.iter().enumerate() {
            let (sub, map) = t.induced(comp).expect("nonempty component");
            let piece = if i == 0 {
                let xs = map.to_new(x).unwrap();
                ham_path_starting_at(&sub, xs)?
            } else if i == m - 1 {
                let ys = map.to_new(y).unwrap();
                ham_path_ending_at(&sub, ys)?
            } else {
                hamiltonian_path_any(&sub)
            };
            verts.extend(map.lift_path(&piece).vertices());
        }
        return Ok(Some(Path::new(verts)));
    }
    let mut search = DirectedSearch {
        t,
        y,
        remaining: budget,
    };
    let unvisited = t.full_mask() & !(1u64 << x) & !(1u64 << y);
    let mut path = vec![x];
    match search.go(x, unvisited, &mut path) {
        Ok(true) => Ok(Some(Path::new(path))),
        Ok(false) => Ok(None),
        Err(()) => Err(HamiltonError::BudgetExhausted(budget)),
    }
}

struct DirectedSearch<'a> {
    t: &'a Tournament,
    y: Vertex,
    remaining: u64,
}

impl DirectedSearch<'_> {
    fn go(&mut self, cur: Vertex, unvisited: u64, path: &mut Vec<Vertex>) -> Result<bool, ()> {
        if self.remaining == 0 {
            return Err(());
        }
        self.remaining -= 1;
        let t = self.t;
        if unvisited == 0 {
            if t.dominates(cur, self.y) {
                path.push(self.y);
                return Ok(true);
            }
            return Ok(false);
        }
        let avail = unvisited | 1 << cur | 1 << self.y;
        // every unvisited vertex must be reachable from cur without passing
        // through y, and must itself reach y
        let fwd = t.forward_closure(1 << cur, avail & !(1 << self.y));
        if fwd & unvisited != unvisited {
            return Ok(false);
        }
        let bwd = t.backward_closure(1 << self.y, avail);
        if bwd & (unvisited | 1 << cur) != unvisited | 1 << cur {
            return Ok(false);
        }
        // fail-first: extend toward vertices with few remaining out-arcs
        let mut cands: Vec<Vertex> = bits(t.out_bits(cur) & unvisited).collect();
        cands.sort_by_key(|&w| (t.out_bits(w) & unvisited).count_ones());
        for w in cands {
            path.push(w);
            if self.go(w, unvisited & !(1u64 << w), path)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }
}

/// A Hamiltonian cycle traversing the arc u→v, if one exists; equivalent to
/// a Hamiltonian (v,u)-path closed by the arc.
pub fn hamiltonian_cycle_through_arc(
    t: &Tournament,
    u: Vertex,
    v: Vertex,
) -> Result<Option<Cycle>, HamiltonError> {
    if u == v {
        return Err(HamiltonError::SameVertex(u));
    }
    if !t.dominates(u, v) {
        return Err(HamiltonError::NoSuchArc { u, v });
    }
    Ok(find_ham_path_directed(t, v, u)?.map(|p| {
        let mut verts = vec![u];
        verts.extend(p.vertices());
        verts.pop(); // u closes the cycle, drop the duplicate
        // verts is u, v, ..., predecessor-of-u
        Cycle::new(verts)
    }))
}

/// One exceptional 6-vertex tournament together with the pair admitting no
/// Hamiltonian path in either direction.
#[derive(Clone, Debug)]
pub struct ExceptionalEntry {
    pub tournament: Tournament,
    pub pair: (Vertex, Vertex),
}

static CATALOG: Lazy<Vec<ExceptionalEntry>> = Lazy::new(derive_exceptional_catalog);

/// The exceptional catalog (derived once, cached).
pub fn exceptional_catalog() -> &'static [ExceptionalEntry] {
    &CATALOG
}

/// Plain backtracking for a Hamiltonian (x,y)-path, no heuristics; only used
/// at order 6 for catalog derivation.
fn ham_directed_brute(t: &Tournament, cur: Vertex, y: Vertex, unvisited: u64) -> bool {
    if unvisited == 0 {
        return t.dominates(cur, y);
    }
    for w in bits(t.out_bits(cur) & unvisited) {
        if ham_directed_brute(t, w, y, unvisited & !(1u64 << w)) {
            return true;
        }
    }
    false
}

fn ham_between_brute(t: &Tournament, x: Vertex, y: Vertex) -> bool {
    let unvisited = t.full_mask() & !(1u64 << x) & !(1u64 << y);
    ham_directed_brute(t, x, y, unvisited) || ham_directed_brute(t, y, x, unvisited)
}

/// Enumerates all labeled 6-vertex tournaments and collects every pair with
/// no Hamiltonian path between its vertices that none of the structural
/// obstructions explains, deduplicated under pair-preserving isomorphism.
pub fn derive_exceptional_catalog() -> Vec<ExceptionalEntry> {
    let mut entries: Vec<ExceptionalEntry> = Vec::new();
    for t in enumerate_all(6).expect("order 6 enumerable") {
        // obstruction (i) settles every non-strong case
        if !t.is_strong() {
            continue;
        }
        for x in 0..6 {
            for y in (x + 1)..6 {
                if obstruction_i_iii(&t, x, y).is_some() {
                    continue;
                }
                if ham_between_brute(&t, x, y) {
                    continue;
                }
                let known = entries.iter().any(|e| {
                    find_isomorphism_mapping_pair(&e.tournament, &t, e.pair, (x, y))
                        .expect("order 6")
                        .is_some()
                });
                if !known {
                    entries.push(ExceptionalEntry {
                        tournament: t.clone(),
                        pair: (x, y),
                    });
                }
            }
        }
    }
    entries
}

/// True iff (T, {x,y}) matches a catalog entry under isomorphism.
pub fn is_exceptional_pair(t: &Tournament, x: Vertex, y: Vertex) -> bool {
    if t.n() != 6 {
        return false;
    }
    exceptional_catalog().iter().any(|e| {
        find_isomorphism_mapping_pair(&e.tournament, t, e.pair, (x, y))
            .expect("order 6")
            .is_some()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::connectivity::is_k_strong;
    use crate::generate::near_regular_tournament;
    use crate::tournament::Tournament;

    fn c3() -> Tournament {
        Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn insertion_path_tt4_and_c3() {
        let p = hamiltonian_path_any(&Tournament::transitive(4).unwrap());
        assert_eq!(p.vertices(), &[0, 1, 2, 3]);
        let p = hamiltonian_path_any(&c3());
        p.validate(&c3()).unwrap();
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn insertion_path_always_valid_n5() {
        for t in enumerate_all(5).unwrap() {
            let p = hamiltonian_path_any(&t);
            assert_eq!(p.vertices().len(), 5);
            p.validate(&t).unwrap();
        }
    }

    #[test]
    fn moon_cycle_c3_and_tt4() {
        let c = hamiltonian_cycle(&c3()).unwrap();
        c.validate(&c3()).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(
            hamiltonian_cycle(&Tournament::transitive(4).unwrap()),
            Err(HamiltonError::NotStrong)
        );
    }

    #[test]
    fn moon_cycle_matches_strongness_n5() {
        for t in enumerate_all(5).unwrap() {
            match hamiltonian_cycle(&t) {
                Ok(c) => {
                    assert!(t.is_strong());
                    assert_eq!(c.len(), 5);
                    c.validate(&t).unwrap();
                }
                Err(HamiltonError::NotStrong) => assert!(!t.is_strong()),
                Err(e) => panic!("unexpected {e}"),
            }
        }
    }

    #[test]
    fn augment_examples() {
        let tt4 = Tournament::transitive(4).unwrap();
        let p = augment(&tt4, &Path::new(vec![0, 1, 3]), 2).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2, 3]);

        assert_eq!(
            augment(&c3(), &Path::new(vec![0, 1]), 2),
            Err(HamiltonError::NotInsertable(2))
        );
    }

    #[test]
    fn decision_tt4_cases() {
        let tt4 = Tournament::transitive(4).unwrap();
        assert!(ham_path_between_exists(&tt4, 0, 3).unwrap());
        assert_eq!(
            ham_path_between_obstruction(&tt4, 1, 2).unwrap(),
            Some(Obstruction::ComponentAvoidsPair)
        );
        assert_eq!(
            ham_path_between_obstruction(&tt4, 0, 0),
            Err(HamiltonError::SameVertex(0))
        );
    }

    #[test]
    fn witness_matches_decision_small() {
        let tt4 = Tournament::transitive(4).unwrap();
        assert_eq!(find_ham_path_between(&tt4, 1, 2).unwrap(), None);
        let p = find_ham_path_between(&c3(), 0, 2).unwrap().unwrap();
        p.validate(&c3()).unwrap();
        let ends = [p.first(), p.last()];
        assert!(ends.contains(&0) && ends.contains(&2));
        assert_eq!(p.vertices().len(), 3);
    }

    #[test]
    fn directed_search_examples() {
        let tt4 = Tournament::transitive(4).unwrap();
        assert_eq!(
            find_ham_path_directed(&tt4, 0, 3).unwrap().unwrap().vertices(),
            &[0, 1, 2, 3]
        );
        assert_eq!(find_ham_path_directed(&tt4, 3, 0).unwrap(), None);
        assert_eq!(
            find_ham_path_directed(&c3(), 1, 0).unwrap().unwrap().vertices(),
            &[1, 2, 0]
        );
    }

    #[test]
    fn directed_search_nonstrong_constructive() {
        // two 3-cycles in series: path must run initial -> terminal
        let mut arcs = vec![(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3)];
        for u in 0..3 {
            for v in 3..6 {
                arcs.push((u, v));
            }
        }
        let t = Tournament::from_arcs(6, &arcs).unwrap();
        let p = find_ham_path_directed(&t, 1, 4).unwrap().unwrap();
        p.validate(&t).unwrap();
        assert_eq!((p.first(), p.last()), (1, 4));
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(find_ham_path_directed(&t, 4, 1).unwrap(), None);
    }

    #[test]
    fn cycle_through_arc_examples() {
        let c = hamiltonian_cycle_through_arc(&c3(), 0, 1).unwrap().unwrap();
        c.validate(&c3()).unwrap();
        let tt3 = Tournament::transitive(3).unwrap();
        assert_eq!(hamiltonian_cycle_through_arc(&tt3, 0, 1).unwrap(), None);
        assert!(matches!(
            hamiltonian_cycle_through_arc(&c3(), 1, 0),
            Err(HamiltonError::NoSuchArc { u: 1, v: 0 })
        ));
    }

    #[test]
    fn cycle_through_every_arc_of_3_strong_samples() {
        for seed in 0..3u64 {
            let t = near_regular_tournament(9, 0, seed).unwrap();
            assert!(is_k_strong(&t, 3));
            for u in 0..t.n() {
                for v in crate::tournament::bits(t.out_bits(u)) {
                    let c = hamiltonian_cycle_through_arc(&t, u, v)
                        .unwrap()
                        .unwrap_or_else(|| panic!("arc {u}->{v} missed"));
                    c.validate(&t).unwrap();
                    assert_eq!(c.len(), t.n());
                }
            }
        }
    }

    #[test]
    fn catalog_shape() {
        let catalog = exceptional_catalog();
        assert!(!catalog.is_empty());
        for e in catalog {
            // 2-strong, no ham path between the pair, closed under reversal
            assert!(is_k_strong(&e.tournament, 2));
            assert!(!ham_between_brute(&e.tournament, e.pair.0, e.pair.1));
            let rev = e.tournament.reverse();
            assert!(
                catalog.iter().any(|other| find_isomorphism_mapping_pair(
                    &other.tournament,
                    &rev,
                    other.pair,
                    e.pair
                )
                .unwrap()
                .is_some()),
                "catalog not closed under reversal"
            );
        }
    }

    #[test]
    fn budget_exhaustion_is_reported() {
        let t = near_regular_tournament(11, 0, 1).unwrap();
        assert_eq!(
            find_ham_path_directed_with_budget(&t, 0, 1, 1),
            Err(HamiltonError::BudgetExhausted(1))
        );
    }
}
