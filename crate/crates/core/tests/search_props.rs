mod common;

use common::naive_search;
use kturan::search::{verify_warmup_guess, SearchResult};
use kturan::{exhaustive_st, Error, Forbidden, Graph, SearchOptions};

fn opts(maximal_only: bool, workers: usize, split_depth: usize) -> SearchOptions {
    SearchOptions {
        maximal_only,
        workers,
        split_depth,
    }
}

#[test]
fn maximal_only_gives_the_same_answer() {
    for forbidden in [Forbidden::C3, Forbidden::C4] {
        for n in 2..=7 {
            let full = exhaustive_st(n, forbidden, opts(false, 1, 8)).unwrap();
            let maximal = exhaustive_st(n, forbidden, opts(true, 1, 8)).unwrap();
            assert_eq!(full.max_tau, maximal.max_tau, "{forbidden} n={n}");
            assert_eq!(full.witness, maximal.witness, "{forbidden} n={n}");
            assert!(maximal.graphs_examined <= full.graphs_examined);
        }
    }
}

#[test]
fn results_do_not_depend_on_workers_or_split_depth() {
    for forbidden in [Forbidden::C3, Forbidden::C4] {
        for n in [5usize, 6, 7] {
            let base = exhaustive_st(n, forbidden, opts(false, 1, 8)).unwrap();
            for workers in [1usize, 2, 8] {
                for depth in [0usize, 3, 8, 30] {
                    let r = exhaustive_st(n, forbidden, opts(false, workers, depth)).unwrap();
                    assert_eq!(r, base, "{forbidden} n={n} workers={workers} depth={depth}");
                }
            }
        }
    }
}

#[test]
fn agrees_with_the_unpruned_oracle() {
    for n in 2..=6 {
        for (forbidden, c3) in [(Forbidden::C4, false), (Forbidden::C3, true)] {
            let naive = naive_search(n, c3);
            let r = exhaustive_st(n, forbidden, SearchOptions::default()).unwrap();
            assert_eq!(r.max_tau, naive.max_tau, "{forbidden} n={n}");
            assert_eq!(r.witness, naive.witness, "{forbidden} n={n}");
            let g = Graph::from_edge_list(n, &r.witness).unwrap();
            assert!(forbidden.admits(&g) && g.is_connected());
        }
    }
}

#[test]
fn witness_is_edge_maximal() {
    for forbidden in [Forbidden::C3, Forbidden::C4] {
        for n in 3..=7usize {
            let r = exhaustive_st(n, forbidden, SearchOptions::default()).unwrap();
            let g = Graph::from_edge_list(n, &r.witness).unwrap();
            for u in 0..n {
                for v in u + 1..n {
                    if !g.has_edge(u, v) {
                        assert!(!forbidden.admits(&g.with_edge(u, v).unwrap()), "{forbidden} n={n} +({u},{v})");
                    }
                }
            }
        }
    }
}

#[test]
fn warmup_values() {
    let expected = [(4usize, 4u32), (5, 12), (6, 81), (7, 432)];
    for (n, b) in expected {
        let rep = verify_warmup_guess(n, SearchOptions::default()).unwrap();
        assert_eq!(rep.bipartite_tau, b.into());
        assert_eq!(rep.guess_holds, rep.max_tau == rep.bipartite_tau);
    }
}

#[test]
fn results_serialize_with_decimal_integers() {
    let r = exhaustive_st(7, Forbidden::C3, SearchOptions::default()).unwrap();
    let text = serde_json::to_string(&r).unwrap();
    assert!(text.contains(&format!("\"max_tau\":\"{}\"", r.max_tau)));
    let back: SearchResult = serde_json::from_str(&text).unwrap();
    assert_eq!(back, r);
}

#[test]
fn size_cap() {
    assert!(matches!(
        exhaustive_st(9, Forbidden::C4, SearchOptions::default()),
        Err(Error::InstanceTooLarge { n: 9, cap: 8 })
    ));
}
