// Timings for the two multiplication kernels, as reported by `spreadpoly bench`.

use spreadpoly::cli::cmd_bench;
use spreadpoly::Result;

pub fn run_example() -> Result<()> {
    let rows = cmd_bench(&[16, 64, 256])?;
    println!("{:>6} {:>12} {:>12}", "size", "schoolbook", "karatsuba");
    for row in rows {
        println!(
            "{:>6} {:>12.2?} {:>12.2?}",
            row.size, row.mul_schoolbook, row.mul_divide_and_conquer
        );
    }
    Ok(())
}

fn main() -> Result<()> {
    run_example()
}
