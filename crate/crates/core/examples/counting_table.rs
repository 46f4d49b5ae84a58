//! Class counts next to tree counts, by closed formula and by brute force.
//!
//!     cargo run --release --example counting_table -- 3 12

use fusscat::counting::{count_minimal_brute, fuss_catalan, modular_fuss_catalan};
use fusscat::Params;

fn main() -> anyhow::Result<()> {
    let mut args = std::env::args().skip(1);
    let m: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(2);
    let max: usize = args.next().map(|a| a.parse()).transpose()?.unwrap_or(10);

    print!("{:>4} {:>10}", "L", "trees");
    for k in 1..=4 {
        print!(" {:>9}", format!("k={k}"));
    }
    println!();
    for length in (m - 1..=max).step_by(m - 1) {
        print!("{length:>4} {:>10}", fuss_catalan(m, length + 1)?);
        for k in 1..=4 {
            let params = Params::new(m, k)?;
            let c = modular_fuss_catalan(&params, length)?;
            if length <= 12 {
                assert_eq!(c, count_minimal_brute(&params, length)?);
            }
            print!(" {c:>9}");
        }
        println!();
    }
    Ok(())
}
