// Factoring Z_n over the divisors of n, and L_n - 2 over the psi_d.

use spreadpoly::factor::{factor_lucas_minus2, factor_zpread};
use spreadpoly::sequences::{lucas, zpread};
use spreadpoly::{IntPoly, Result};

pub fn run_example() -> Result<()> {
    for n in [6u64, 12] {
        let record = factor_zpread(n)?;
        println!("Z_{n} = {}", zpread(n)?);
        for f in &record.factors {
            println!("  Phi_{:<2} (degree {}) = {}", f.d, f.poly.degree().unwrap_or(0), f.poly);
        }
        assert_eq!(record.total_degree(), n as usize);
    }

    let record = factor_lucas_minus2(10)?;
    println!("L_10 - 2 = {}", lucas(10) - IntPoly::constant(2));
    for f in &record.factors {
        println!("  psi_{}^{} = ({})^{}", f.d, f.multiplicity, f.poly, f.multiplicity);
    }

    println!("{}", serde_json::to_string(&factor_zpread(4)?).expect("record serializes"));
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
