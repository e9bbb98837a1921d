//! Exact st(n, C4) and st(n, C3) for small n, with the polarity and bipartite comparisons.
use std::time::Instant;

use kturan::search::verify_warmup_guess;
use kturan::{exhaustive_st, Forbidden, SearchOptions};

fn main() -> kturan::Result<()> {
    let workers = std::thread::available_parallelism().map_or(1, |n| n.get());
    let opts = SearchOptions {
        workers,
        ..SearchOptions::default()
    };
    for n in 3..=8 {
        let start = Instant::now();
        let r = exhaustive_st(n, Forbidden::C4, opts)?;
        println!(
            "st({n}, C4) = {:<5} {:>9} graphs  {:.1?}  witness {:?}",
            r.max_tau.to_string(),
            r.graphs_examined,
            start.elapsed(),
            r.witness
        );
    }
    println!();
    for n in 4..=8 {
        let w = verify_warmup_guess(n, opts)?;
        println!(
            "st({n}, C3) = {:<5} balanced bipartite = {:<5} equal: {}",
            w.max_tau.to_string(),
            w.bipartite_tau.to_string(),
            w.guess_holds
        );
    }
    Ok(())
}
