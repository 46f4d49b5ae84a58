//! Evaluation of parenthesizations under `a_1 ∘ … ∘ a_m = ω^{m-1} a_1 + … + ω a_{m-1} + a_m`
//! with `ω` of order `K = k(m-1)`.
//!
//! Every evaluation is a sum `Σ_j ω^{e_j} u_j` over the operand variables,
//! so it is held as the exponent vector `(e_1, …, e_N)` reduced mod `K`.
//! Two evaluations are equal exactly when their reduced vectors are.

use std::fmt;

use crate::error::{Error, Result};
use crate::params::Params;
use crate::tree::{DepthMatrix, Tree};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExponentVector {
    modulus: usize,
    exponents: Vec<usize>,
}

impl ExponentVector {
    /// A single variable `u`, exponent 0.
    pub fn variable(params: &Params) -> Self {
        ExponentVector {
            modulus: params.modulus(),
            exponents: vec![0],
        }
    }

    pub fn exponents(&self) -> &[usize] {
        &self.exponents
    }

    pub fn modulus(&self) -> usize {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.exponents.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exponents.is_empty()
    }

    /// The `m`-ary operation `∘`: operand `i` (0-based) is scaled by
    /// `ω^{m-1-i}` and the variable blocks are concatenated.
    pub fn compose(params: &Params, operands: &[ExponentVector]) -> Result<Self> {
        let m = params.arity();
        if operands.len() != m {
            return Err(Error::arity(format!(
                "∘ takes {m} operands, got {}",
                operands.len()
            )));
        }
        let modulus = params.modulus();
        let mut exponents = Vec::with_capacity(operands.iter().map(|o| o.len()).sum());
        for (i, op) in operands.iter().enumerate() {
            if op.modulus != modulus {
                return Err(Error::Domain(format!(
                    "operand reduced mod {}, expected mod {modulus}",
                    op.modulus
                )));
            }
            let shift = (m - 1 - i) % modulus;
            exponents.extend(op.exponents.iter().map(|e| (e + shift) % modulus));
        }
        Ok(ExponentVector { modulus, exponents })
    }

    /// `∘` applied left-associatively to `P` operands.
    pub fn compose_left(params: &Params, operands: &[ExponentVector]) -> Result<Self> {
        let m = params.arity();
        let Some((first, rest)) = operands.split_first() else {
            return Err(Error::arity("no operands"));
        };
        if operands.len() > 1 && (operands.len() < m || rest.len() % (m - 1) != 0) {
            return Err(Error::arity(format!(
                "{} operands cannot be folded by a {m}-ary operation",
                operands.len()
            )));
        }
        let mut acc = first.clone();
        for group in rest.chunks(m - 1) {
            let mut args = Vec::with_capacity(m);
            args.push(acc);
            args.extend(group.iter().cloned());
            acc = ExponentVector::compose(params, &args)?;
        }
        Ok(acc)
    }

    /// Human-readable form such as `ω^2·u1 + ω·u2 + u3`.
    pub fn to_polynomial(&self) -> String {
        let terms: Vec<String> = self
            .exponents
            .iter()
            .enumerate()
            .map(|(j, &e)| match e {
                0 => format!("u{}", j + 1),
                1 => format!("ω·u{}", j + 1),
                _ => format!("ω^{e}·u{}", j + 1),
            })
            .collect();
        terms.join(" + ")
    }
}

impl fmt::Display for ExponentVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, e) in self.exponents.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

/// Evaluates the parenthesization of `t` under `∘`, bottom-up.
pub fn eval_recursive(t: &Tree, params: &Params) -> Result<ExponentVector> {
    t.check_params(params)?;
    fn go(t: &Tree, params: &Params) -> ExponentVector {
        if t.is_leaf() {
            return ExponentVector::variable(params);
        }
        let parts: Vec<ExponentVector> = t.children().iter().map(|c| go(c, params)).collect();
        ExponentVector::compose(params, &parts).expect("tree arity checked")
    }
    Ok(go(t, params))
}

/// Closed form `e_j = Σ_i (m - i) δ^{l_i}_j mod K`.
pub fn eval_by_depth(depth: &DepthMatrix, params: &Params) -> Result<ExponentVector> {
    if depth.labels() != params.arity() {
        return Err(Error::Format(format!(
            "depth matrix has {} rows, expected {}",
            depth.labels(),
            params.arity()
        )));
    }
    let modulus = params.modulus();
    Ok(ExponentVector {
        modulus,
        exponents: depth
            .weighted_sums()
            .into_iter()
            .map(|w| w % modulus)
            .collect(),
    })
}

/// k-equivalence decided by comparing evaluations.
pub fn equivalent_by_eval(a: &Tree, b: &Tree, params: &Params) -> Result<bool> {
    if a.leaf_count() != b.leaf_count() {
        return Err(Error::Size {
            left: a.leaf_count(),
            right: b.leaf_count(),
        });
    }
    Ok(eval_recursive(a, params)? == eval_recursive(b, params)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dyck;
    use crate::expr::parse;
    use crate::tree::enumerate_trees;

    fn p(m: usize, k: usize) -> Params {
        Params::new(m, k).unwrap()
    }

    #[test]
    fn worked_example_evaluations() {
        let params = p(3, 2);
        let t1 = parse("((x1*x2*x3)*x4*x5)*x6*x7", &params).unwrap();
        let t2 = parse("x1*((x2*x3*x4)*x5*x6)*x7", &params).unwrap();
        let e1 = eval_recursive(&t1, &params).unwrap();
        assert_eq!(e1.exponents(), &[2, 1, 0, 3, 2, 1, 0]);
        assert_eq!(eval_recursive(&t2, &params).unwrap(), e1);
        assert!(equivalent_by_eval(&t1, &t2, &params).unwrap());
        assert_eq!(
            e1.to_polynomial(),
            "ω^2·u1 + ω·u2 + u3 + ω^3·u4 + ω^2·u5 + ω·u6 + u7"
        );

        // unreduced the exponents are the weighted depth sums
        let w = t1.depth_matrix(&params).unwrap().weighted_sums();
        assert_eq!(w, vec![6, 5, 4, 3, 2, 1, 0]);
        let w2 = t2.depth_matrix(&params).unwrap().weighted_sums();
        assert_eq!(w2, vec![2, 5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn second_example_depth() {
        let params = p(3, 2);
        let t2 = parse("x1*((x2*x3*x4)*x5*x6)*x7", &params).unwrap();
        assert_eq!(
            t2.depth_matrix(&params).unwrap().rows(),
            vec![
                vec![1, 2, 1, 1, 0, 0, 0],
                vec![0, 1, 2, 1, 2, 1, 0],
                vec![0, 0, 0, 1, 0, 1, 1]
            ]
        );
    }

    #[test]
    fn leaf_evaluates_to_single_variable() {
        let params = p(3, 2);
        assert_eq!(
            eval_recursive(&Tree::leaf(), &params).unwrap().exponents(),
            &[0]
        );
        let d = Tree::leaf().depth_matrix(&params).unwrap();
        assert_eq!(eval_by_depth(&d, &params).unwrap().exponents(), &[0]);
    }

    #[test]
    fn closed_form_examples() {
        let params = p(3, 2);
        let comb = DepthMatrix::from_rows(vec![
            vec![3, 2, 2, 1, 1, 0, 0],
            vec![0, 1, 0, 1, 0, 1, 0],
            vec![0, 0, 1, 0, 1, 0, 1],
        ])
        .unwrap();
        assert_eq!(
            eval_by_depth(&comb, &params).unwrap().exponents(),
            &[2, 1, 0, 3, 2, 1, 0]
        );
        let nested = parse("(x1*(x2*x3*x4)*x5)*x6*x7", &params).unwrap();
        let by_depth = eval_by_depth(&nested.depth_matrix(&params).unwrap(), &params).unwrap();
        assert_eq!(by_depth.exponents(), &[0, 1, 0, 3, 2, 1, 0]);
        assert_eq!(eval_recursive(&nested, &params).unwrap(), by_depth);
    }

    #[test]
    fn distinct_classes_evaluate_differently() {
        let params = p(3, 2);
        let t1 = parse("((x1*x2*x3)*x4*x5)*x6*x7", &params).unwrap();
        let t4 = parse("(x1*(x2*x3*x4)*x5)*x6*x7", &params).unwrap();
        assert!(!equivalent_by_eval(&t1, &t4, &params).unwrap());
        assert!(equivalent_by_eval(&t4, &t4, &params).unwrap());
        let small = parse("x1*x2*x3", &params).unwrap();
        assert!(matches!(
            equivalent_by_eval(&t1, &small, &params),
            Err(Error::Size { .. })
        ));
    }

    #[test]
    fn closed_form_agreement_and_boundaries() {
        for m in 2..=4 {
            for k in 1..=3 {
                let params = p(m, k);
                let modulus = params.modulus();
                for n in (1..=10).filter(|n| (n - 1) % (m - 1) == 0) {
                    for t in enumerate_trees(&params, n).unwrap() {
                        let e = eval_recursive(&t, &params).unwrap();
                        let d = t.depth_matrix(&params).unwrap();
                        assert_eq!(eval_by_depth(&d, &params).unwrap(), e);
                        assert_eq!(e.exponents()[n - 1], 0);
                        if n >= m {
                            assert_eq!(e.exponents()[n - 2], 1 % modulus);
                        }
                    }
                }
            }
        }
    }

    /// Both sides of the k-associative law evaluate identically, for every
    /// window position and for operands that are themselves compound.
    #[test]
    fn composition_is_k_associative() {
        for (m, k) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 2)] {
            let params = p(m, k);
            let modulus = params.modulus();
            let pieces: Vec<ExponentVector> = [1, m]
                .into_iter()
                .flat_map(|n| enumerate_trees(&params, n).unwrap())
                .map(|t| eval_recursive(&t, &params).unwrap())
                .collect();
            let total = m + modulus;
            for j in 0..m - 1 {
                for offset in 0..pieces.len() {
                    let ops: Vec<ExponentVector> = (0..total)
                        .map(|i| pieces[(i + offset) % pieces.len()].clone())
                        .collect();
                    let lhs_inner =
                        ExponentVector::compose_left(&params, &ops[j..=j + modulus]).unwrap();
                    let mut lhs_args = ops[..j].to_vec();
                    lhs_args.push(lhs_inner);
                    lhs_args.extend_from_slice(&ops[j + modulus + 1..]);
                    let lhs = ExponentVector::compose(&params, &lhs_args).unwrap();

                    let rhs_inner =
                        ExponentVector::compose_left(&params, &ops[j + 1..=j + modulus + 1])
                            .unwrap();
                    let mut rhs_args = ops[..=j].to_vec();
                    rhs_args.push(rhs_inner);
                    rhs_args.extend_from_slice(&ops[j + modulus + 2..]);
                    let rhs = ExponentVector::compose(&params, &rhs_args).unwrap();
                    assert_eq!(lhs, rhs, "m={m} k={k} j={j}");
                }
            }
        }
    }

    #[test]
    fn evaluation_agrees_with_signatures() {
        for (m, k) in [(2, 2), (2, 3), (3, 2), (4, 2)] {
            let params = p(m, k);
            for n in (1..=8).filter(|n| (n - 1) % (m - 1) == 0) {
                let trees: Vec<Tree> = enumerate_trees(&params, n).unwrap().collect();
                for a in &trees {
                    for b in &trees {
                        assert_eq!(
                            equivalent_by_eval(a, b, &params).unwrap(),
                            dyck::equivalent(a, b, &params).unwrap()
                        );
                    }
                }
            }
        }
    }
}
