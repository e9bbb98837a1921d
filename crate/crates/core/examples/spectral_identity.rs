//! Check A^2 = J + qI for the looped adjacency matrix of ER_q.
use kturan::er_graph;
use kturan::trees::verify_polarity_spectrum;

fn main() -> kturan::Result<()> {
    println!("{:>3} {:>5} {:>9} {:>6} {:>10}", "q", "n", "identity", "trace", "mult(+/-)");
    for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
        let rep = verify_polarity_spectrum(&er_graph(q)?)?;
        println!(
            "{:>3} {:>5} {:>9} {:>6} {:>5}/{}",
            rep.q, rep.n, rep.identity_holds, rep.trace, rep.mult_plus, rep.mult_minus
        );
    }
    Ok(())
}
