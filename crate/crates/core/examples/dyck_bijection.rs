//! One tree in every representation: expression, Dyck tuple, N/S word and
//! depth matrix.

use fusscat::expr::{parse, print, Style};
use fusscat::{DyckTuple, Params};

fn main() -> anyhow::Result<()> {
    let params = Params::new(3, 1)?;
    for text in ["(x1*(x2*x3*x4)*x5)*x6*x7", "x1*x2*(x3*x4*x5)", "x1"] {
        let t = parse(text, &params)?;
        let d = DyckTuple::from_tree(&t, &params)?;
        let depth = t.depth_matrix(&params)?;
        println!("{}", print(&t, Style::Grouped));
        println!("  tuple  {d}");
        println!("  word   {:?}", d.to_ns());
        for (i, row) in depth.rows().iter().enumerate() {
            println!("  l{}     {row:?}", i + 1);
        }
        assert_eq!(DyckTuple::from_depth(&depth, &params)?, d);
        assert_eq!(d.to_tree(&params)?, t);
    }

    // and back: every Dyck tuple of length 4 for m = 3
    for d in fusscat::dyck::DyckTuples::new(&params, 4)? {
        println!(
            "{:<10} {}",
            d.to_string(),
            print(&d.to_tree(&params)?, Style::Grouped)
        );
    }
    Ok(())
}
