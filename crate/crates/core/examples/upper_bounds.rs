//! Upper and lower logs of st(n, C4) at n = q^2 + q + 1, plus the deficit bound.
use kturan::bounds::{deficit_bound, leading_term_report, c4_upper_bound, DEFAULT_PRECISION_BITS};

fn main() -> kturan::Result<()> {
    let bits = DEFAULT_PRECISION_BITS;
    println!("{:>3} {:>5} {:>26} {:>26} {:>9}", "q", "n", "ln lower", "ln upper", "residual");
    for q in [17u64, 19, 23, 25, 27, 29, 31] {
        let r = leading_term_report(q, bits)?;
        println!(
            "{q:>3} {:>5} {:>26} {:>26} {:>9.4}",
            r.n,
            r.log_lower.to_decimal(20),
            r.log_upper.to_decimal(20),
            r.normalized_residual_upper()
        );
    }

    let q = 17;
    let exact = c4_upper_bound(q)?;
    println!("\nq = {q}: upper bound has a {}-digit numerator", exact.numerator().to_string().len());
    for t in [0u64, 1, 10, 50, 144] {
        let d = deficit_bound(q, t, bits)?;
        println!("  t = {t:>3}: ln bound = {}", d.natural_log_value.to_decimal(24));
    }
    Ok(())
}
