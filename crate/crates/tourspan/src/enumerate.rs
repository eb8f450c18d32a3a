//! Exhaustive enumeration of small labeled tournaments and brute-force
//! isomorphism testing. This is the substrate for the exhaustive oracles:
//! n = 7 already means 2,097,152 tournaments, so the enumerator hands out
//! bitmask-indexed tournaments cheaply and in a fixed order.

use crate::tournament::{Tournament, TournamentError, Vertex};

/// Largest order `enumerate_all` accepts.
pub const MAX_ENUM_ORDER: usize = 7;

/// Largest order `are_isomorphic` accepts (permutation brute force).
pub const MAX_ISO_ORDER: usize = 8;

/// Every labeled tournament on `n` vertices exactly once, in orientation
/// bitmask order: bit b of the mask orients the b-th pair (i,j), i < j, in
/// lexicographic order (set bit = i dominates j).
pub fn enumerate_all(
    n: usize,
) -> Result<impl Iterator<Item = Tournament> + Send, TournamentError> {
    if n == 0 {
        return Err(TournamentError::EmptyOrder);
    }
    if n > MAX_ENUM_ORDER {
        return Err(TournamentError::OrderTooLarge {
            n,
            max: MAX_ENUM_ORDER,
        });
    }
    let pair_count = n * (n - 1) / 2;
    Ok((0u64..1 << pair_count).map(move |mask| tournament_from_mask(n, mask)))
}

/// Number of labeled tournaments on `n` vertices: 2^(n(n-1)/2).
pub fn count_all(n: usize) -> u64 {
    1u64 << (n * (n - 1) / 2)
}

/// Decodes one orientation bitmask into a tournament (see `enumerate_all`).
pub fn tournament_from_mask(n: usize, mask: u64) -> Tournament {
    let mut out = vec![0u64; n];
    let mut bit = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            if mask >> bit & 1 == 1 {
                out[i] |= 1 << j;
            } else {
                out[j] |= 1 << i;
            }
            bit += 1;
        }
    }
    Tournament::from_rows_unchecked(n, out)
}

/// Splits the bitmask range into `parts` contiguous chunks for parallel
/// consumption; chunk boundaries are deterministic.
pub fn enumeration_ranges(n: usize, parts: usize) -> Result<Vec<std::ops::Range<u64>>, TournamentError> {
    if n == 0 {
        return Err(TournamentError::EmptyOrder);
    }
    if n > MAX_ENUM_ORDER {
        return Err(TournamentError::OrderTooLarge {
            n,
            max: MAX_ENUM_ORDER,
        });
    }
    let total = count_all(n);
    let parts = parts.max(1) as u64;
    let step = total.div_ceil(parts);
    Ok((0..parts)
        .map(|i| (i * step).min(total)..((i + 1) * step).min(total))
        .collect())
}

/// Brute-force isomorphism with witness: returns a permutation p with
/// p[v1-vertex] = v2-vertex mapping dominance onto dominance, if any exists.
pub fn find_isomorphism(t1: &Tournament, t2: &Tournament) -> Result<Option<Vec<Vertex>>, TournamentError> {
    if t1.n() > MAX_ISO_ORDER || t2.n() > MAX_ISO_ORDER {
        return Err(TournamentError::OrderTooLarge {
            n: t1.n().max(t2.n()),
            max: MAX_ISO_ORDER,
        });
    }
    if t1.n() != t2.n() {
        return Ok(None);
    }
    let n = t1.n();
    // sorted degree sequences must agree
    let mut d1: Vec<usize> = (0..n).map(|v| t1.out_degree(v)).collect();
    let mut d2: Vec<usize> = (0..n).map(|v| t2.out_degree(v)).collect();
    d1.sort_unstable();
    d2.sort_unstable();
    if d1 != d2 {
        return Ok(None);
    }
    let mut perm = vec![usize::MAX; n];
    let mut used = vec![false; n];
    if extend_isomorphism(t1, t2, &mut perm, &mut used, 0, &[]) {
        Ok(Some(perm))
    } else {
        Ok(None)
    }
}

pub fn are_isomorphic(t1: &Tournament, t2: &Tournament) -> Result<bool, TournamentError> {
    find_isomorphism(t1, t2).map(|w| w.is_some())
}

/// Isomorphism t1 → t2 whose image of the unordered pair `pair1` is exactly
/// the unordered pair `pair2`. Used by the exceptional-catalog lookup.
pub fn find_isomorphism_mapping_pair(
    t1: &Tournament,
    t2: &Tournament,
    pair1: (Vertex, Vertex),
    pair2: (Vertex, Vertex),
) -> Result<Option<Vec<Vertex>>, TournamentError> {
    if t1.n() > MAX_ISO_ORDER || t2.n() > MAX_ISO_ORDER {
        return Err(TournamentError::OrderTooLarge {
            n: t1.n().max(t2.n()),
            max: MAX_ISO_ORDER,
        });
    }
    if t1.n() != t2.n() {
        return Ok(None);
    }
    let n = t1.n();
    for &(a, b) in &[(pair2.0, pair2.1), (pair2.1, pair2.0)] {
        let mut perm = vec![usize::MAX; n];
        let mut used = vec![false; n];
        let pinned = [(pair1.0, a), (pair1.1, b)];
        let mut ok = true;
        for &(from, to) in &pinned {
            if t1.out_degree(from) != t2.out_degree(to) {
                ok = false;
                break;
            }
            perm[from] = to;
            used[to] = true;
        }
        // pinned images must respect the arc between the pair
        if ok && t1.dominates(pair1.0, pair1.1) != t2.dominates(a, b) {
            ok = false;
        }
        if ok && extend_isomorphism(t1, t2, &mut perm, &mut used, 0, &[pair1.0, pair1.1]) {
            return Ok(Some(perm));
        }
    }
    Ok(None)
}

fn extend_isomorphism(
    t1: &Tournament,
    t2: &Tournament,
    perm: &mut [usize],
    used: &mut [bool],
    from: Vertex,
    skip: &[Vertex],
) -> bool {
    let n = t1.n();
    let mut from = from;
    while from < n && (perm[from] != usize::MAX || skip.contains(&from)) {
        from += 1;
    }
    if from == n {
        return true;
    }
    for to in 0..n {
        if used[to] || t1.out_degree(from) != t2.out_degree(to) {
            continue;
        }
        // consistency against everything already mapped
        let consistent = (0..n).all(|w| {
            perm[w] == usize::MAX || w == from || t1.dominates(from, w) == t2.dominates(to, perm[w])
        });
        if !consistent {
            continue;
        }
        perm[from] = to;
        used[to] = true;
        if extend_isomorphism(t1, t2, perm, used, from + 1, skip) {
            return true;
        }
        perm[from] = usize::MAX;
        used[to] = false;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn counts_and_uniqueness() {
        assert_eq!(enumerate_all(1).unwrap().count(), 1);
        assert_eq!(enumerate_all(3).unwrap().count(), 8);
        assert_eq!(enumerate_all(4).unwrap().count(), 64);

        for n in 1..=5 {
            let all: Vec<Tournament> = enumerate_all(n).unwrap().collect();
            let set: HashSet<Tournament> = all.iter().cloned().collect();
            assert_eq!(set.len() as u64, count_all(n));
        }
        assert!(matches!(
            enumerate_all(8),
            Err(TournamentError::OrderTooLarge { .. })
        ));
    }

    #[test]
    fn strong_counts_small_orders() {
        let strong3 = enumerate_all(3).unwrap().filter(|t| t.is_strong()).count();
        assert_eq!(strong3, 2);
        let strong4 = enumerate_all(4).unwrap().filter(|t| t.is_strong()).count();
        assert_eq!(strong4, 24);
    }

    #[test]
    fn ranges_partition_the_space() {
        let ranges = enumeration_ranges(4, 5).unwrap();
        let total: u64 = ranges.iter().map(|r| r.end - r.start).sum();
        assert_eq!(total, 64);
        assert_eq!(ranges[0].start, 0);
    }

    #[test]
    fn iso_c3_relabelings() {
        let c3 = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let relabeled = Tournament::from_arcs(3, &[(1, 0), (0, 2), (2, 1)]).unwrap();
        let w = find_isomorphism(&c3, &relabeled).unwrap().unwrap();
        // witness really maps arcs to arcs
        for u in 0..3 {
            for v in 0..3 {
                if u != v {
                    assert_eq!(c3.dominates(u, v), relabeled.dominates(w[u], w[v]));
                }
            }
        }
        let tt3 = Tournament::transitive(3).unwrap();
        assert!(!are_isomorphic(&c3, &tt3).unwrap());
    }

    #[test]
    fn c3_is_self_converse() {
        let c3 = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert!(are_isomorphic(&c3, &c3.reverse()).unwrap());
    }

    #[test]
    fn some_tournament_is_not_self_converse() {
        // sanity for the converse notion: not every tournament is
        // isomorphic to its reverse
        let found = enumerate_all(5)
            .unwrap()
            .any(|t| !are_isomorphic(&t, &t.reverse()).unwrap());
        assert!(found);
    }

    #[test]
    fn pair_pinned_isomorphism() {
        let c3 = Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        // rotation sends {0,1} to {1,2}
        let w = find_isomorphism_mapping_pair(&c3, &c3, (0, 1), (1, 2))
            .unwrap()
            .unwrap();
        let img = [w[0], w[1]];
        assert!(img.contains(&1) && img.contains(&2));
    }
}
