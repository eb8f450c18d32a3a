//! Spanning-connectivity values κ*_s and κ*_w, the n ≥ 6t+5k verification
//! harness, and the batch survey driver behind `verify-theorems`.
//!
//! κ* is the largest k such that spanning ω-containers of the given kind
//! exist between every pair for every ω ≤ k; a tournament that is not even
//! 1*-connected gets κ* = 0. At oracle scale the value is certified `Exact`
//! (the failing ω = value+1 search also ran to completion); above the
//! oracle bound the constructive builders only ever yield `LowerBound`.

use serde::Serialize;
use thiserror::Error;

use crate::connectivity::vertex_connectivity;
use crate::containers::{
    build_strong_container, build_weak_container, oracle_container, BuildOptions, BuildTrace,
    Container, ContainerError, Mode, OracleOutcome,
};
use crate::generate::near_regular_tournament;
use crate::tournament::{Tournament, TournamentError, Vertex};

#[derive(Debug, Error)]
pub enum SpanningError {
    #[error("irregularity {actual} exceeds budget {budget}")]
    IrregularityExceeded { actual: usize, budget: usize },
    #[error(transparent)]
    Tournament(#[from] TournamentError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Exact,
    LowerBound,
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Exact => write!(f, "exact"),
            Status::LowerBound => write!(f, "lower_bound"),
        }
    }
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct KappaStar {
    pub value: usize,
    pub status: Status,
}

/// One pair/mode/ω probe inside a report. `status` is `found`, `absent`,
/// or `unknown` (builder failed without an absence proof).
#[derive(Clone, Debug, Serialize)]
pub struct PairRecord {
    pub x: Vertex,
    pub y: Vertex,
    pub mode: Mode,
    pub omega: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<BuildTrace>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Meta {
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub irregularity: usize,
    pub kappa: usize,
}

/// Comparison record for the n ≥ 6t+5k (strong) and n ≥ 6t+5k−3 (weak)
/// bounds: each side is certified only when its hypothesis holds, and
/// `satisfied` means no hypothesis-satisfying side failed.
#[derive(Clone, Debug, Serialize)]
pub struct Section4 {
    pub t: usize,
    pub k: usize,
    pub bound_s: usize,
    pub bound_w: usize,
    pub hypothesis_s: bool,
    pub hypothesis_w: bool,
    pub certified_s: bool,
    pub certified_w: bool,
    pub satisfied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<PairRecord>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpanningReport {
    pub meta: Meta,
    pub pairs: Vec<PairRecord>,
    pub kappa_s_star: KappaStar,
    pub kappa_w_star: KappaStar,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub section4: Option<Section4>,
}

/// Largest k with spanning ω-containers of the given kind between every
/// pair for all ω ≤ k. Oracle-exact when n fits under the oracle bound,
/// otherwise a builder-certified lower bound.
pub fn kappa_star(t: &Tournament, mode: Mode, opts: &BuildOptions) -> KappaStar {
    kappa_star_with_pairs(t, mode, opts).0
}

pub fn kappa_star_with_pairs(
    t: &Tournament,
    mode: Mode,
    opts: &BuildOptions,
) -> (KappaStar, Vec<PairRecord>) {
    let n = t.n();
    let exact = n <= opts.oracle_bound;
    let mut records: Vec<PairRecord> = Vec::new();
    let mut value = 0usize;
    // k internally disjoint paths need k-1 internal vertices at minimum
    // (one direct arc), so omega never exceeds n-1
    'omega: for omega in 1..n.max(2) {
        let mut level: Vec<PairRecord> = Vec::new();
        for x in 0..n {
            for y in (x + 1)..n {
                let (status, trace) = probe(t, x, y, omega, mode, exact, opts);
                let found = status == "found";
                level.push(PairRecord {
                    x,
                    y,
                    mode,
                    omega,
                    status,
                    trace,
                });
                if !found {
                    records.push(level.pop().unwrap());
                    break 'omega;
                }
            }
        }
        records = level;
        value = omega;
    }
    let status = if exact { Status::Exact } else { Status::LowerBound };
    (KappaStar { value, status }, records)
}

fn probe(
    t: &Tournament,
    x: Vertex,
    y: Vertex,
    omega: usize,
    mode: Mode,
    exact: bool,
    opts: &BuildOptions,
) -> (String, Option<BuildTrace>) {
    if exact {
        match oracle_container(t, x, y, omega, mode, opts.oracle_bound) {
            Ok(OracleOutcome::Found(c)) => ("found".into(), c.trace),
            Ok(OracleOutcome::ProvenAbsent) => ("absent".into(), None),
            Err(_) => ("unknown".into(), None),
        }
    } else {
        let built: Result<Container, ContainerError> = match mode {
            Mode::Strong => build_strong_container(t, x, y, omega, opts),
            Mode::Weak => build_weak_container(t, x, y, omega, opts),
        };
        match built {
            Ok(c) => ("found".into(), c.trace),
            Err(ContainerError::NotConstructible {
                proven_absent: true,
                ..
            }) => ("absent".into(), None),
            Err(_) => ("unknown".into(), None),
        }
    }
}

/// Certify the §-style bounds for one tournament: κ*_s ≥ t when
/// n ≥ 6t+5k, and κ*_w ≥ t+1 when n ≥ 6t+5k−3. A side whose hypothesis
/// fails is reported as not met, never as a failure.
pub fn verify_section4(
    t: &Tournament,
    k: usize,
    target: usize,
    opts: &BuildOptions,
) -> Result<Section4, SpanningError> {
    let irr = t.irregularity();
    if irr > k {
        return Err(SpanningError::IrregularityExceeded {
            actual: irr,
            budget: k,
        });
    }
    let n = t.n();
    let bound_s = 6 * target + 5 * k;
    let bound_w = (6 * target + 5 * k).saturating_sub(3);
    let hypothesis_s = n >= bound_s;
    let hypothesis_w = n >= bound_w;
    let mut counterexample = None;
    let certified_s = hypothesis_s
        && certify_all_pairs(t, Mode::Strong, target, opts, &mut counterexample);
    let certified_w = hypothesis_w
        && certify_all_pairs(t, Mode::Weak, target + 1, opts, &mut counterexample);
    let satisfied = (!hypothesis_s || certified_s) && (!hypothesis_w || certified_w);
    Ok(Section4 {
        t: target,
        k,
        bound_s,
        bound_w,
        hypothesis_s,
        hypothesis_w,
        certified_s,
        certified_w,
        satisfied,
        counterexample,
    })
}

fn certify_all_pairs(
    t: &Tournament,
    mode: Mode,
    up_to: usize,
    opts: &BuildOptions,
    counterexample: &mut Option<PairRecord>,
) -> bool {
    for omega in 1..=up_to {
        for x in 0..t.n() {
            for y in (x + 1)..t.n() {
                let built = match mode {
                    Mode::Strong => build_strong_container(t, x, y, omega, opts),
                    Mode::Weak => build_weak_container(t, x, y, omega, opts),
                };
                if let Err(e) = built {
                    if counterexample.is_none() {
                        *counterexample = Some(PairRecord {
                            x,
                            y,
                            mode,
                            omega,
                            status: format!("failed: {e}"),
                            trace: None,
                        });
                    }
                    return false;
                }
            }
        }
    }
    true
}

/// Deterministic batch over the cross product of orders × budgets ×
/// t-values × seeds using near-regular instances. With no t-values the
/// reports omit the bound comparison. Reports are ordered by
/// (seed, n, budget, t).
pub fn survey(
    orders: &[usize],
    budgets: &[usize],
    t_values: &[usize],
    seeds: &[u64],
    opts: &BuildOptions,
) -> Result<Vec<SpanningReport>, SpanningError> {
    let mut reports = Vec::new();
    let mut seeds_sorted = seeds.to_vec();
    seeds_sorted.sort_unstable();
    let mut orders_sorted = orders.to_vec();
    orders_sorted.sort_unstable();
    for &seed in &seeds_sorted {
        for &n in &orders_sorted {
            for &k in budgets {
                let t = near_regular_tournament(n, k, seed)?;
                let ts: Vec<Option<usize>> = if t_values.is_empty() {
                    vec![None]
                } else {
                    t_values.iter().map(|&v| Some(v)).collect()
                };
                for tv in ts {
                    reports.push(report_one(&t, Some(seed), k, tv, opts)?);
                }
            }
        }
    }
    Ok(reports)
}

/// Full report for one tournament: κ*_s, κ*_w, per-pair records at the
/// certified level, and optionally the bound comparison for target `t`.
pub fn report_one(
    t: &Tournament,
    seed: Option<u64>,
    k_budget: usize,
    target: Option<usize>,
    opts: &BuildOptions,
) -> Result<SpanningReport, SpanningError> {
    let (kappa, _) = vertex_connectivity(t);
    let meta = Meta {
        n: t.n(),
        seed,
        irregularity: t.irregularity(),
        kappa,
    };
    let (kappa_s_star, mut pairs) = kappa_star_with_pairs(t, Mode::Strong, opts);
    let (kappa_w_star, weak_pairs) = kappa_star_with_pairs(t, Mode::Weak, opts);
    pairs.extend(weak_pairs);
    let section4 = match target {
        Some(tv) => Some(verify_section4(t, k_budget, tv, opts)?),
        None => None,
    };
    Ok(SpanningReport {
        meta,
        pairs,
        kappa_s_star,
        kappa_w_star,
        section4,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::enumerate_all;
    use crate::generate::random_tournament;

    fn c3() -> Tournament {
        Tournament::from_arcs(3, &[(0, 1), (1, 2), (2, 0)]).unwrap()
    }

    #[test]
    fn tt4_strong_is_zero_exact() {
        let tt4 = Tournament::transitive(4).unwrap();
        let ks = kappa_star(&tt4, Mode::Strong, &BuildOptions::default());
        assert_eq!(ks.value, 0);
        assert_eq!(ks.status, Status::Exact);
    }

    #[test]
    fn c3_weak_is_two_exact() {
        let ks = kappa_star(&c3(), Mode::Weak, &BuildOptions::default());
        assert_eq!(ks.value, 2);
        assert_eq!(ks.status, Status::Exact);
    }

    #[test]
    fn near_regular_13_strong_lower_bound() {
        let t = near_regular_tournament(13, 0, 1).unwrap();
        let ks = kappa_star(&t, Mode::Strong, &BuildOptions::default());
        assert_eq!(ks.status, Status::LowerBound);
        assert!(ks.value >= 2, "got {}", ks.value);
    }

    /// Direct per-ω sweep the long way around, as an independent check of
    /// the maximal-prefix logic.
    fn direct_sweep(t: &Tournament, mode: Mode) -> usize {
        let mut value = 0;
        'outer: for omega in 1..t.n().max(2) {
            for x in 0..t.n() {
                for y in (x + 1)..t.n() {
                    match oracle_container(t, x, y, omega, mode, 64).unwrap() {
                        OracleOutcome::Found(_) => {}
                        OracleOutcome::ProvenAbsent => break 'outer,
                    }
                }
            }
            value = omega;
        }
        value
    }

    #[test]
    fn definition_conformance_small_orders() {
        for n in 2..=5 {
            for t in enumerate_all(n).unwrap() {
                for mode in [Mode::Strong, Mode::Weak] {
                    let ks = kappa_star(&t, mode, &BuildOptions::default());
                    assert_eq!(ks.status, Status::Exact);
                    assert_eq!(ks.value, direct_sweep(&t, mode), "n={n} mode={mode}");
                }
            }
        }
    }

    #[test]
    fn definition_conformance_n6_exhaustive() {
        for t in enumerate_all(6).unwrap() {
            for mode in [Mode::Strong, Mode::Weak] {
                let ks = kappa_star(&t, mode, &BuildOptions::default());
                assert_eq!(ks.value, direct_sweep(&t, mode));
            }
        }
    }

    #[test]
    fn definition_conformance_random_7_8() {
        for seed in 0..100u64 {
            for n in [7usize, 8] {
                let t = random_tournament(n, seed ^ (n as u64) << 32).unwrap();
                for mode in [Mode::Strong, Mode::Weak] {
                    let ks = kappa_star(&t, mode, &BuildOptions::default());
                    assert_eq!(ks.status, Status::Exact);
                    assert_eq!(ks.value, direct_sweep(&t, mode), "n={n} seed={seed}");
                }
            }
        }
    }

    #[test]
    fn section4_thresholds() {
        let t13 = near_regular_tournament(13, 0, 3).unwrap();
        let rec = verify_section4(&t13, 0, 2, &BuildOptions::default()).unwrap();
        assert!(rec.hypothesis_s && rec.certified_s, "{rec:?}");
        assert!(rec.satisfied);

        let t11 = near_regular_tournament(11, 0, 3).unwrap();
        let rec = verify_section4(&t11, 0, 2, &BuildOptions::default()).unwrap();
        assert!(!rec.hypothesis_s);
        assert!(rec.hypothesis_w && rec.certified_w, "{rec:?}");
        assert!(rec.satisfied);
    }

    #[test]
    fn section4_hypothesis_not_met_is_not_failure() {
        let tt4 = Tournament::transitive(4).unwrap();
        let rec = verify_section4(&tt4, 3, 2, &BuildOptions::default()).unwrap();
        assert!(!rec.hypothesis_s && !rec.hypothesis_w);
        assert!(rec.satisfied);
    }

    #[test]
    fn section4_rejects_irregularity_over_budget() {
        let tt4 = Tournament::transitive(4).unwrap();
        assert!(matches!(
            verify_section4(&tt4, 0, 1, &BuildOptions::default()),
            Err(SpanningError::IrregularityExceeded { actual: 3, budget: 0 })
        ));
    }

    #[test]
    fn survey_shapes_and_thresholds() {
        let opts = BuildOptions::default();
        let reports = survey(&[7], &[0], &[2], &[1, 2, 3, 4, 5], &opts).unwrap();
        assert_eq!(reports.len(), 5);
        for r in &reports {
            let s4 = r.section4.as_ref().unwrap();
            assert!(!s4.hypothesis_s && !s4.hypothesis_w);
            assert!(s4.satisfied);
            assert_eq!(r.meta.n, 7);
            assert_eq!(r.meta.irregularity, 0);
        }

        let reports = survey(&[9], &[0], &[], &[0, 1, 2], &opts).unwrap();
        assert_eq!(reports.len(), 3);
        for r in &reports {
            assert!(r.section4.is_none());
            assert_eq!(r.kappa_w_star.status, Status::Exact);
        }
    }

    #[test]
    fn report_serializes_to_schema() {
        let t = c3();
        let r = report_one(&t, Some(7), 0, Some(1), &BuildOptions::default()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        for key in ["meta", "pairs", "kappa_s_star", "kappa_w_star", "section4"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
        assert_eq!(v["meta"]["n"], 3);
        assert_eq!(v["meta"]["seed"], 7);
        assert!(v["pairs"].as_array().unwrap().iter().all(|p| {
            p.get("x").is_some()
                && p.get("mode").is_some()
                && p.get("omega").is_some()
                && p.get("status").is_some()
        }));
        assert!(v["kappa_s_star"].get("value").is_some());
        assert!(v["kappa_s_star"].get("status").is_some());
    }
}
