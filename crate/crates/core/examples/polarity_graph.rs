//! Build the orthogonal polarity graph ER_q and print its profile.
use kturan::er_graph;

fn main() -> kturan::Result<()> {
    let q: u64 = std::env::args().nth(1).map(|s| s.parse().expect("q must be an integer")).unwrap_or(5);
    let bundle = er_graph(q)?;
    let g = &bundle.simple_graph;
    println!("ER_{q}: n = {}, m = {}", g.n(), g.m());
    println!("degree histogram: {:?}", g.degrees().histogram());
    println!("absolute points:");
    for &v in &bundle.absolute_indices {
        let c: Vec<String> = bundle.points[v].coords().iter().map(|x| bundle.field.format(x)).collect();
        println!("  #{v:<3} ({})", c.join(", "));
    }
    println!("C4-free: {}, connected: {}", g.is_c4_free(), g.is_connected());
    Ok(())
}
