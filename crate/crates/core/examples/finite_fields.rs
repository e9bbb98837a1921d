//! Arithmetic in GF(q): moduli, a multiplication table and inverses.
use kturan::make_field;

fn main() -> kturan::Result<()> {
    for q in [4u64, 8, 9, 16, 27] {
        let f = make_field(q)?;
        println!("GF({q}) = GF({})[x] / ({})", f.p(), kturan::field::format_poly(f.modulus()));
    }

    let f = make_field(8)?;
    let elems = f.enumerate_elements();
    println!("\nGF(8) multiplication table (element indices):");
    for a in &elems {
        let row: Vec<String> = elems.iter().map(|b| format!("{:>2}", f.index_of(&f.mul(a, b)))).collect();
        println!("  {}", row.join(" "));
    }

    println!("\nInverses in GF(9):");
    let f = make_field(9)?;
    for a in f.enumerate_elements().iter().skip(1) {
        println!("  ({})^-1 = {}", f.format(a), f.format(&f.inv(a)?));
    }
    Ok(())
}
