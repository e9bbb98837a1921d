//! Degree envelopes for explicit, K_{2,t} and C_{2k} edge budgets.
use kturan::bounds::{c2k_edge_budget, envelope_p, generic_envelope_bound, k2t_edge_budget, ratio_step};
use num_rational::BigRational;
use num_traits::Zero;

fn main() -> kturan::Result<()> {
    println!("P(7, 18) = {}", envelope_p(7, 18));
    println!("P(17)/P(18) at n = 7: {}", ratio_step(7, 18));
    println!("envelope at the ER_2 budget: {}", generic_envelope_bound(7, 9));

    let zero = BigRational::zero();
    let one = BigRational::from_integer(1.into());
    println!("\n{:>6} {:>10} {:>10} {:>10}", "n", "K_2,2", "K_2,3", "C_6 (C=1)");
    for n in [10u64, 100, 1000, 10_000] {
        println!(
            "{n:>6} {:>10} {:>10} {:>10}",
            k2t_edge_budget(n, 2, &zero)?,
            k2t_edge_budget(n, 3, &zero)?,
            c2k_edge_budget(n, 3, &one, &zero)?
        );
    }
    Ok(())
}
