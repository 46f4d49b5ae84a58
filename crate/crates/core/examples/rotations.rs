//! Right and left k-rotations, and a rotation path from every tree in a
//! class to the class representative.
//!
//!     cargo run --example rotations -- 3 2 "x1*((x2*x3*x4)*x5*x6)*x7"

use fusscat::counting::{enumerate_classes, ClassOptions};
use fusscat::expr::{parse, print, Style};
use fusscat::{Direction, DyckTuple, Params};

fn main() -> anyhow::Result<()> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (m, k, text) = match args.as_slice() {
        [m, k, text] => (m.parse()?, k.parse()?, text.as_str()),
        _ => (3, 2, "x1*x2*((x3*x4*x5)*x6*x7)"),
    };
    let params = Params::new(m, k)?;
    let t = parse(text, &params)?;
    println!("{} with {params}", print(&t, Style::Grouped));
    for direction in [Direction::Right, Direction::Left] {
        for site in t.rotation_sites(&params, direction) {
            let u = t.rotate(&params, &site, direction)?;
            println!(
                "  {:<5} at {:<6} -> {:<28} {}",
                direction.to_string(),
                site.to_string(),
                print(&u, Style::Grouped),
                DyckTuple::from_tree(&u, &params)?
            );
        }
    }

    let options = ClassOptions {
        traces: true,
        ..Default::default()
    };
    let me = DyckTuple::from_tree(&t, &params)?;
    for class in enumerate_classes(&params, t.leaf_count(), options)? {
        let Some(trace) = class.traces.iter().flatten().find(|tr| tr.member == me) else {
            continue;
        };
        println!("path to the representative {}:", class.representative);
        let mut cur = t.clone();
        for mv in &trace.moves {
            cur = cur.apply(&params, mv)?;
            println!("  {:<14} {}", mv.to_string(), print(&cur, Style::Grouped));
        }
        if trace.moves.is_empty() {
            println!("  (already minimal)");
        }
    }
    Ok(())
}
