//! Count spanning trees with both determinant engines.
use std::time::Instant;

use kturan::trees::tau_er_closed_form;
use kturan::{er_graph, tau, DetEngine, Graph};

fn main() -> kturan::Result<()> {
    println!("Petersen graph: {}", tau(&Graph::petersen(), None).value);
    println!("K_(3,4): {}", tau(&Graph::complete_bipartite(3, 4), None).value);

    for q in [2u64, 3, 4, 5, 7, 8, 9, 11] {
        let g = er_graph(q)?.simple_graph;
        for engine in [DetEngine::Bareiss, DetEngine::Crt] {
            let start = Instant::now();
            let t = tau(&g, Some(engine));
            let ok = t.value == tau_er_closed_form(q)?;
            let digits = t.value.to_string().len();
            println!(
                "ER_{q:<2} n = {:<3} {:<8} {digits:>4} digits  closed form: {ok}  {:.1?}",
                g.n(),
                t.engine.to_string(),
                start.elapsed()
            );
        }
    }
    Ok(())
}
