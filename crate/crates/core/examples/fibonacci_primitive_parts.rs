// Fibonacci numbers as products of primitive parts p_d = |phi_d(5)|.

use spreadpoly::fib::{fib_factorization, primitive_part, tabulated_phi_at_5, zpread_at5_identity};
use spreadpoly::Result;

pub fn run_example() -> Result<()> {
    for n in 1..=16 {
        println!(
            "n = {n:>2}: p_n = {:>4}, signed table value {:>4}",
            primitive_part(n)?,
            tabulated_phi_at_5(n)?
        );
    }
    for n in [12u64, 30, 60] {
        let table = fib_factorization(n)?;
        let parts: Vec<String> = table.parts.iter().map(|(d, p)| format!("p_{d}={p}")).collect();
        println!("F_{n} = {} = {}", table.reconstructed, parts.join(" * "));
        zpread_at5_identity(n)?;
    }
    println!("Z_n(5) = (-1)^(n-1) 5 F_n^2 checked for n = 12, 30, 60");
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
