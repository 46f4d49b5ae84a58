//! The evaluation `a_1 ∘ … ∘ a_m = ω^{m-1} a_1 + … + a_m` decides
//! k-equivalence: equal exponent vectors mod k(m-1), equal classes.

use fusscat::algebra::{equivalent_by_eval, eval_by_depth, eval_recursive};
use fusscat::expr::parse;
use fusscat::Params;

fn main() -> anyhow::Result<()> {
    let params = Params::new(3, 2)?;
    let exprs = [
        "((x1*x2*x3)*x4*x5)*x6*x7",
        "x1*((x2*x3*x4)*x5*x6)*x7",
        "(x1*(x2*x3*x4)*x5)*x6*x7",
    ];
    let trees = exprs
        .iter()
        .map(|e| parse(e, &params))
        .collect::<Result<Vec<_>, _>>()?;
    for (text, t) in exprs.iter().zip(&trees) {
        let e = eval_recursive(t, &params)?;
        assert_eq!(e, eval_by_depth(&t.depth_matrix(&params)?, &params)?);
        println!("{text:<26} {e}   {}", e.to_polynomial());
    }
    for i in 0..trees.len() {
        for j in i + 1..trees.len() {
            println!(
                "{} ~ {}: {}",
                exprs[i],
                exprs[j],
                equivalent_by_eval(&trees[i], &trees[j], &params)?
            );
        }
    }
    Ok(())
}
