// Exact integer polynomial arithmetic: ring operations, both multiplication
// kernels, exact division, composition and evaluation.

use num_bigint::BigInt;
use spreadpoly::{ExactRational, IntPoly, Result};

pub fn run_example() -> Result<()> {
    let a = IntPoly::from_i64s(&[1, -2, 0, 3]);
    let b = IntPoly::linear(-1, 1);
    println!("a       = {a}");
    println!("b       = {b}");
    println!("a + b   = {}", &a + &b);
    println!("a * b   = {}", &a * &b);

    let product = &a * &b;
    let back = product.div_exact(&b)?;
    assert_eq!(back, a);
    println!("(a*b)/b = {back}");

    match a.div_exact(&IntPoly::linear(0, 2)) {
        Ok(q) => println!("unexpected quotient {q}"),
        Err(e) => println!("a / 2x  -> {e}"),
    }

    // a(b(x)) and evaluation agree with evaluating in two steps
    let composed = a.compose(&b);
    let at = BigInt::from(7);
    assert_eq!(composed.eval_int(&at), a.eval_int(&b.eval_int(&at)));
    println!("a(b(x)) = {composed}");

    let half = ExactRational::new(BigInt::from(1), BigInt::from(2))?;
    println!("a(1/2)  = {}", a.eval_rational(&half));

    let big = IntPoly::new((1..=200).map(|k| BigInt::from(k) << 70).collect());
    let karatsuba = big.mul_divide_and_conquer(&big, 16);
    assert_eq!(karatsuba, big.mul_schoolbook(&big));
    println!(
        "degree-{} square computed by both kernels, leading coefficient has {} bits",
        karatsuba.degree().unwrap_or(0),
        karatsuba.leading_coeff().map_or(0, |c| c.bits())
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
