//! The twelve ternary trees on seven operands and their 2-equivalence classes.

use fusscat::counting::{enumerate_classes, modular_fuss_catalan, ClassOptions};
use fusscat::expr::{print, Style};
use fusscat::Params;

fn main() -> anyhow::Result<()> {
    let params = Params::new(3, 2)?;
    let options = ClassOptions {
        members: true,
        ..Default::default()
    };
    let classes = enumerate_classes(&params, 7, options)?;
    for (i, class) in classes.iter().enumerate() {
        println!(
            "class {} (size {}, signature {})",
            i + 1,
            class.size,
            class.signature
        );
        for d in class.members.as_deref().unwrap_or_default() {
            let marker = if *d == class.representative { "*" } else { " " };
            println!(
                "  {marker} {:<16} {}",
                d.to_string(),
                print(&d.to_tree(&params)?, Style::Grouped)
            );
        }
    }
    println!(
        "{} classes; closed formula gives {}",
        classes.len(),
        modular_fuss_catalan(&params, 6)?
    );
    Ok(())
}
