//! Acceptance criteria AC1..AC10. Runs without the libtest harness so that
//! one PASS/FAIL line per criterion is always printed.

use std::collections::{HashMap, HashSet};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use fusscat::algebra::{equivalent_by_eval, eval_by_depth, eval_recursive};
use fusscat::counting::{
    count_minimal_brute, enumerate_classes, enumerate_prefixed_words, fuss_catalan,
    modular_fuss_catalan, prefixed_word_count, rotation_components, BigCount, ClassOptions,
    DEFAULT_BUDGET,
};
use fusscat::dyck::{self, DyckTuple};
use fusscat::expr::{self, Style};
use fusscat::tree::enumerate_trees;
use fusscat::{Direction, Params, Tree};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

macro_rules! ensure {
    ($cond:expr, $($fmt:tt)+) => {
        if !$cond {
            return Err(format!($($fmt)+));
        }
    };
}

fn p(m: usize, k: usize) -> Params {
    Params::new(m, k).unwrap()
}

fn big(v: u64) -> BigCount {
    BigCount::from(v)
}

fn lengths(m: usize, max: usize) -> impl Iterator<Item = usize> {
    (m - 1..=max).step_by(m - 1)
}

fn ac1() -> Outcome {
    let c = modular_fuss_catalan(&p(3, 2), 6).map_err(|e| e.to_string())?;
    ensure!(c == big(10), "got {c}");
    Ok(format!("C(m=3,k=2,L=6) = {c}"))
}

fn ac2() -> Outcome {
    let params = p(3, 2);
    let options = ClassOptions {
        members: true,
        ..Default::default()
    };
    let classes = enumerate_classes(&params, 7, options).map_err(|e| e.to_string())?;
    ensure!(classes.len() == 10, "{} classes", classes.len());
    let mut sizes: Vec<usize> = classes.iter().map(|c| c.size).collect();
    sizes.sort();
    ensure!(sizes == [1, 1, 1, 1, 1, 1, 1, 1, 1, 3], "sizes {sizes:?}");
    let big_class = classes.iter().find(|c| c.size == 3).unwrap();
    let members: HashSet<String> = big_class
        .members
        .as_ref()
        .unwrap()
        .iter()
        .map(|d| expr::print(&d.to_tree(&params).unwrap(), Style::Grouped))
        .collect();
    let expected: HashSet<String> = [
        "((x1*x2*x3)*x4*x5)*x6*x7",
        "x1*((x2*x3*x4)*x5*x6)*x7",
        "x1*x2*((x3*x4*x5)*x6*x7)",
    ]
    .map(String::from)
    .into();
    ensure!(members == expected, "size-3 class is {members:?}");
    Ok("10 classes, sizes {3, 1x9}, the three left-spine trees together".into())
}

fn ac3() -> Outcome {
    let mut cells = 0;
    let mut bfs_cells = 0;
    for m in 2..=4 {
        for k in 1..=3 {
            let params = p(m, k);
            for length in lengths(m, 12) {
                let formula = modular_fuss_catalan(&params, length).map_err(|e| e.to_string())?;
                let brute = count_minimal_brute(&params, length).map_err(|e| e.to_string())?;
                ensure!(
                    formula == brute,
                    "m={m} k={k} L={length}: formula {formula} brute {brute}"
                );
                cells += 1;
                if fuss_catalan(m, length + 1).unwrap() <= big(50_000) {
                    let components = rotation_components(&params, length + 1, DEFAULT_BUDGET)
                        .map_err(|e| e.to_string())?;
                    ensure!(
                        big(components.len() as u64) == formula,
                        "m={m} k={k} L={length}: {} components, formula {formula}",
                        components.len()
                    );
                    bfs_cells += 1;
                }
            }
        }
    }
    Ok(format!(
        "{cells} cells formula = brute, {bfs_cells} also = BFS"
    ))
}

fn ac4() -> Outcome {
    let mut saturated = 0;
    for m in 2..=4 {
        for k in 1..=3 {
            let params = p(m, k);
            for length in lengths(m, 12) {
                let c = modular_fuss_catalan(&params, length).unwrap();
                if k == 1 {
                    ensure!(c == big(1), "m={m} L={length}: k=1 gives {c}");
                }
                if params.modulus() >= length {
                    let f = fuss_catalan(m, length + 1).unwrap();
                    ensure!(c == f, "m={m} k={k} L={length}: {c} vs {f}");
                    saturated += 1;
                }
            }
        }
    }
    Ok(format!(
        "k=1 rows all 1; {saturated} saturated cells equal fuss-catalan"
    ))
}

fn ac5() -> Outcome {
    let mut checked = 0;
    for m in 2..=4 {
        let params = p(m, 1);
        for leaves in (1..=10).filter(|&n| params.is_valid_leaf_count(n)) {
            let mut seen_tuples = HashSet::new();
            let mut seen_trees = HashSet::new();
            for t in enumerate_trees(&params, leaves).unwrap() {
                let d = DyckTuple::from_tree(&t, &params).map_err(|e| e.to_string())?;
                ensure!(d.to_tree(&params).unwrap() == t, "tuple roundtrip {d}");
                let ns = DyckTuple::parse_ns(&d.to_ns(), &params).unwrap();
                ensure!(ns == d, "ns roundtrip {d}");
                for style in [Style::Minimal, Style::Grouped, Style::Full] {
                    let text = expr::print(&t, style);
                    let back = expr::parse(&text, &params).map_err(|e| e.to_string())?;
                    ensure!(back == t, "print/parse roundtrip {text}");
                }
                let depth = t.depth_matrix(&params).unwrap();
                let from_depth =
                    DyckTuple::from_depth(&depth, &params).map_err(|e| e.to_string())?;
                ensure!(from_depth == d, "depth gives {from_depth}, sigma gives {d}");
                seen_tuples.insert(d);
                seen_trees.insert(t);
                checked += 1;
            }
            let total = fuss_catalan(m, leaves).unwrap();
            ensure!(
                big(seen_tuples.len() as u64) == total && big(seen_trees.len() as u64) == total,
                "m={m} N={leaves}: {} tuples, {} trees, expected {total}",
                seen_tuples.len(),
                seen_trees.len()
            );
        }
    }
    Ok(format!("{checked} trees, all roundtrips exact"))
}

fn ac6() -> Outcome {
    let mut trees_checked = 0;
    for m in 2..=4 {
        for k in 1..=3 {
            let params = p(m, k);
            for leaves in (1..=10).filter(|&n| params.is_valid_leaf_count(n)) {
                for t in enumerate_trees(&params, leaves).unwrap() {
                    let e = eval_recursive(&t, &params).unwrap();
                    let by_depth =
                        eval_by_depth(&t.depth_matrix(&params).unwrap(), &params).unwrap();
                    ensure!(e == by_depth, "{t}: {e} vs {by_depth}");
                    trees_checked += 1;
                }
            }
        }
    }
    let mut cases = vec![(3, 2, 7)];
    for k in 1..=3 {
        for leaves in 1..=6 {
            cases.push((2, k, leaves));
        }
    }
    let mut pairs = 0;
    for (m, k, leaves) in cases {
        let params = p(m, k);
        let components = rotation_components(&params, leaves, DEFAULT_BUDGET).unwrap();
        let component: HashMap<Tree, usize> = components
            .iter()
            .enumerate()
            .flat_map(|(i, c)| c.iter().map(move |t| (t.clone(), i)))
            .collect();
        let trees: Vec<Tree> = enumerate_trees(&params, leaves).unwrap().collect();
        for a in &trees {
            for b in &trees {
                let by_eval = equivalent_by_eval(a, b, &params).unwrap();
                let by_sig = dyck::equivalent(a, b, &params).unwrap();
                let by_bfs = component[a] == component[b];
                ensure!(
                    by_eval == by_sig && by_sig == by_bfs,
                    "m={m} k={k}: {a} vs {b}: eval {by_eval} signature {by_sig} bfs {by_bfs}"
                );
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "{trees_checked} evaluations agree; {pairs} pairs agree three ways"
    ))
}

/// Grows a tree by expanding uniformly chosen leaves.
fn random_tree(rng: &mut ChaCha8Rng, params: &Params, internal: usize) -> Tree {
    fn expand(t: &Tree, target: &mut Option<usize>, params: &Params) -> Tree {
        if t.is_leaf() {
            return match *target {
                Some(0) => {
                    *target = None;
                    Tree::meet(params, vec![Tree::leaf(); params.arity()]).unwrap()
                }
                Some(n) => {
                    *target = Some(n - 1);
                    Tree::leaf()
                }
                None => Tree::leaf(),
            };
        }
        let children = t
            .children()
            .iter()
            .map(|c| expand(c, target, params))
            .collect();
        Tree::meet(params, children).unwrap()
    }
    let mut t = Tree::leaf();
    for _ in 0..internal {
        let mut target = Some(rng.gen_range(0..t.leaf_count()));
        t = expand(&t, &mut target, params);
    }
    t
}

fn ac7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut samples = 0;
    let mut draws = 0;
    while samples < 10_000 {
        draws += 1;
        ensure!(draws < 1_000_000, "could not sample enough rotation sites");
        let m = rng.gen_range(2..=4);
        let k = rng.gen_range(1..=3);
        let params = p(m, k);
        let internal = rng.gen_range(1..=14);
        let t = random_tree(&mut rng, &params, internal);
        let sites = t.rotation_sites(&params, Direction::Right);
        let Some(site) = sites.choose(&mut rng) else {
            continue;
        };
        let before = DyckTuple::from_tree(&t, &params).unwrap();
        let rotated = t.rotate_right(&params, site).map_err(|e| e.to_string())?;
        let after = DyckTuple::from_tree(&rotated, &params).unwrap();
        let compressed = before
            .compress(&params, site, Direction::Right)
            .map_err(|e| e.to_string())?;
        ensure!(
            compressed == after,
            "compression disagrees with rotation at {site}"
        );

        let delta: Vec<(usize, i64)> = before
            .entries()
            .iter()
            .zip(after.entries())
            .enumerate()
            .filter(|(_, (a, b))| a != b)
            .map(|(i, (&a, &b))| (i, b as i64 - a as i64))
            .collect();
        let kk = params.modulus() as i64;
        ensure!(
            delta.len() == 2 && delta[0].1 == -kk && delta[1].1 == kk,
            "{before} -> {after}: deltas {delta:?}, K={kk}"
        );
        ensure!(
            after < before,
            "{before} -> {after} is not a lexicographic decrease"
        );

        let back = rotated
            .rotate_left(&params, site)
            .map_err(|e| e.to_string())?;
        ensure!(
            back == t,
            "left rotation does not undo right rotation at {site}"
        );
        let left_sites = rotated.rotation_sites(&params, Direction::Left);
        ensure!(left_sites.contains(site), "inverse site {site} not listed");
        samples += 1;
    }
    Ok(format!("{samples} random (tree, site) pairs"))
}

fn ac8() -> Outcome {
    let mut report = Vec::new();
    for (k, parts, k_small) in [(2, 2, 1), (4, 2, 2), (4, 4, 1), (6, 3, 2)] {
        let mut sites = 0;
        for m in 2..=3 {
            let params = p(m, k);
            let small = p(m, k_small);
            for leaves in (1..=9).filter(|&n| params.is_valid_leaf_count(n)) {
                for t in enumerate_trees(&params, leaves).unwrap() {
                    for site in t.rotation_sites(&params, Direction::Right) {
                        let target = t.rotate_right(&params, &site).unwrap();
                        let mut frontier: HashSet<Tree> = HashSet::from([t.clone()]);
                        for _ in 0..parts {
                            frontier = frontier
                                .iter()
                                .flat_map(|u| {
                                    u.rotation_sites(&small, Direction::Right)
                                        .into_iter()
                                        .map(|s| u.rotate_right(&small, &s).unwrap())
                                        .collect::<Vec<_>>()
                                })
                                .collect();
                        }
                        ensure!(
                            frontier.contains(&target),
                            "m={m} k={k}: {t} at {site} not reached by {parts} right {k_small}-rotations"
                        );
                        sites += 1;
                    }
                }
            }
        }
        ensure!(sites > 0, "no sites for k={k}");
        report.push(format!("k={k}={parts}x{k_small}: {sites} sites"));
    }
    Ok(report.join(", "))
}

fn ac9() -> Outcome {
    let params = p(3, 2);
    let length = 6;
    let mut sizes = Vec::new();
    for (lead, expected) in [(2, 15u64), (4, 6), (6, 1)] {
        let words: Vec<_> = enumerate_prefixed_words(&params, length, lead)
            .unwrap()
            .collect();
        ensure!(
            words.len() as u64 == expected,
            "l={lead}: {} words, expected {expected}",
            words.len()
        );
        ensure!(
            prefixed_word_count(&params, length, lead).unwrap() == big(expected),
            "l={lead}: multinomial sum disagrees"
        );
        for w in &words {
            ensure!(
                w.dyck_shift_count() == lead,
                "{w} has {} Dyck shifts",
                w.dyck_shift_count()
            );
        }
        let dyck = words.iter().filter(|w| w.is_dyck()).count() as u64;
        ensure!(
            dyck * length as u64 == lead as u64 * expected,
            "l={lead}: {dyck} Dyck words vs ({lead}/{length})*{expected}"
        );
        sizes.push(format!("l={lead}: {dyck}"));
    }
    Ok(format!("|C| per l: {}", sizes.join(", ")))
}

fn ac10() -> Outcome {
    const GOLDEN: [u64; 6] = [1, 2, 4, 8, 16, 32];
    let params = p(2, 2);
    for (i, &g) in GOLDEN.iter().enumerate() {
        let length = i + 1;
        let formula = modular_fuss_catalan(&params, length).unwrap();
        let brute = count_minimal_brute(&params, length).unwrap();
        ensure!(
            formula == big(g) && brute == big(g),
            "L={length}: formula {formula}, brute {brute}, golden {g}"
        );
    }
    Ok(format!("m=2 k=2 L=1..6 = {GOLDEN:?}"))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("AC1 worked example", ac1, Some(Duration::from_secs(1))),
        ("AC2 class structure", ac2, Some(Duration::from_secs(1))),
        ("AC3 triple agreement", ac3, Some(Duration::from_secs(60))),
        ("AC4 degenerate rows", ac4, None),
        ("AC5 bijection suite", ac5, None),
        (
            "AC6 evaluation equivalence",
            ac6,
            Some(Duration::from_secs(30)),
        ),
        ("AC7 rewrite laws", ac7, None),
        ("AC8 decomposition", ac8, None),
        ("AC9 cycle lemma", ac9, None),
        ("AC10 golden values", ac10, None),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS {name} ({elapsed:.2?}): {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({elapsed:.2?}): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
