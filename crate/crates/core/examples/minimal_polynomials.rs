// Minimal polynomials of 2cos(2pi/n) and 4sin^2(pi/n), including the
// palindrome fold and the independent construction routes for phi_n.

use spreadpoly::factor::{cross_check_phi, float_root_check, phi_by_route, phi_min, psi, PhiRoute};
use spreadpoly::fold::palindrome_fold;
use spreadpoly::sequences::cyclotomic;
use spreadpoly::Result;

pub fn run_example() -> Result<()> {
    let c12 = cyclotomic(12)?;
    let fold = palindrome_fold(&c12)?;
    println!("C_12 = {c12}");
    println!("  folds to {} = psi_12", fold.lucas_expand());
    assert_eq!(fold.lucas_expand(), psi(12)?);

    for n in 1..=12 {
        println!("psi_{n:<2} = {:<28} phi_{n:<2} = {}", psi(n)?.to_string(), phi_min(n)?);
    }

    for n in [9u64, 16, 24, 45] {
        let check = cross_check_phi(n)?;
        let routes: Vec<_> = check.routes.iter().map(|r| r.name()).collect();
        println!("phi_{n}: routes {} agree", routes.join(", "));
    }
    assert!(phi_by_route(9, PhiRoute::PowerOfTwoRoute)?.is_none());

    let roots = float_root_check(30, 1e-9)?;
    println!(
        "phi_30 vanishes at {} values 4sin^2(k pi/30), max residual {:.1e}",
        roots.roots_checked, roots.max_residual
    );
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
