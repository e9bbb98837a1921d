//! Round-trip graphs through graph6 and the edge-list format.
use kturan::graph::io::{from_graph6, read_edge_list, to_graph6, write_edge_list};
use kturan::{er_graph, Graph};

fn main() -> kturan::Result<()> {
    for (name, g) in [("K_2", Graph::complete(2)), ("C_5", Graph::cycle(5)), ("Petersen", Graph::petersen())] {
        println!("{name:<9} graph6 {}", to_graph6(&g));
    }
    let er3 = er_graph(3)?.simple_graph;
    let g6 = to_graph6(&er3);
    println!("ER_3      graph6 {g6}");
    assert_eq!(from_graph6(&g6)?, er3);

    let text = write_edge_list(&er_graph(2)?.simple_graph);
    print!("\nER_2 edge list:\n{text}");
    assert_eq!(read_edge_list(&text)?, er_graph(2)?.simple_graph);
    Ok(())
}
