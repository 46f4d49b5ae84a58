//! Canonical representatives and linear-time equivalence on Dyck tuples.
//!
//!     cargo run --example canonical_forms -- 3 2 "(4,2,0,0,0,0)" "(2,0,4,0,0,0)"

use fusscat::dyck::equivalent;
use fusscat::expr::{print, Style};
use fusscat::{DyckTuple, Params};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (m, k, inputs) = match args.as_slice() {
        [m, k, rest @ ..] if !rest.is_empty() => (m.parse()?, k.parse()?, rest.to_vec()),
        _ => (
            3,
            2,
            [
                "(6,0,0,0,0,0)",
                "(2,4,0,0,0,0)",
                "(2,0,4,0,0,0)",
                "(4,2,0,0,0,0)",
            ]
            .map(String::from)
            .to_vec(),
        ),
    };
    let params = Params::new(m, k)?;
    let tuples = inputs
        .iter()
        .map(|s| DyckTuple::parse(s, &params))
        .collect::<Result<Vec<_>, _>>()?;
    for d in &tuples {
        let c = d.canonicalize(&params)?;
        println!(
            "{:<16} minimal={:<5} signature {:<12} canonical {c} = {}",
            d.to_string(),
            d.is_minimal(&params),
            d.signature(&params).to_string(),
            print(&c.to_tree(&params)?, Style::Minimal)
        );
    }
    if let [a, b, ..] = tuples.as_slice() {
        println!("{a} ~ {b}: {}", equivalent(a, b, &params)?);
    }
    Ok(())
}
