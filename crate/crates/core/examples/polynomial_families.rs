// Tables of the Lucas, cyclotomic, zpread and spread families.

use spreadpoly::sequences::{cyclotomic, lucas, monic_zpread, spread, zpread, zpread_via_lucas};
use spreadpoly::Result;

pub fn run_example() -> Result<()> {
    println!("Lucas");
    for n in 0..=6 {
        println!("  L_{n} = {}", lucas(n));
    }
    println!("cyclotomic");
    for n in 1..=9 {
        println!("  C_{n} = {}", cyclotomic(n)?);
    }
    println!("zpread, monic zpread, spread");
    for n in 1..=5 {
        let z = zpread(n)?;
        assert_eq!(z, zpread_via_lucas(n)?);
        println!("  Z_{n} = {z}");
        println!("  z_{n} = {}", monic_zpread(n)?);
        println!("  S_{n} = {}", spread(n)?);
    }

    // S_n(sin^2 t) = sin^2(n t)
    let t = 0.37f64;
    for n in 1..=5 {
        let lhs = spread(n)?.eval_float(t.sin().powi(2));
        let rhs = (n as f64 * t).sin().powi(2);
        assert!((lhs - rhs).abs() < 1e-12);
    }
    println!("S_n(sin^2 t) = sin^2(n t) holds at t = {t} for n <= 5");
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
