//! Acceptance suite: one `[PASS]`/`[FAIL]` line per criterion.
//!
//! Criteria run sequentially inside a single test so that the wall-clock
//! budgets are not distorted by the test harness running them in parallel.
//! Run with `cargo test -p infolattice-cli --test acceptance`.

use std::io::Write;
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use infolattice::lattice::ChainPath;
use infolattice::measures::{self, ChainTerm, MeasureTable};
use infolattice::random::{random_binary_distribution, random_lattice_function};
use infolattice::sumrules::verify_path_independence;
use infolattice::transforms::{cancellation_table, naive, signed_transform};
use infolattice::{JointDistribution, PowerSetLattice, Role, SignConvention, SubsetMask, VariableSpec};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const EXACT: f64 = 1e-12;
const DIST: f64 = 1e-9;

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

/// Residual check plus optional time budget.
fn judged(worst: f64, tol: f64, elapsed: Duration, budget: Option<Duration>) -> Outcome {
    let in_time = budget.is_none_or(|b| elapsed < b);
    let time = match budget {
        Some(b) => format!(", {:.3}s of {:.0}s", elapsed.as_secs_f64(), b.as_secs_f64()),
        None => format!(", {:.3}s", elapsed.as_secs_f64()),
    };
    outcome(
        worst < tol && in_time,
        format!("max residual {worst:.3e} (tol {tol:.0e}){time}"),
    )
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn table(d: &JointDistribution) -> MeasureTable {
    MeasureTable::from_distribution(d).unwrap()
}

/// `count` pmfs cycling through `dims`.
fn pmfs(seed: u64, count: usize, dims: std::ops::RangeInclusive<usize>) -> Vec<JointDistribution> {
    let mut r = rng(seed);
    let dims: Vec<usize> = dims.collect();
    (0..count)
        .map(|k| random_binary_distribution(&mut r, dims[k % dims.len()]))
        .collect()
}

fn c1_h_i_duality() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in pmfs(1, 100, 2..=6) {
        let h = d.entropy_lattice().unwrap();
        let i = measures::interaction_lattice(&h).unwrap();
        let back = measures::entropy_from_interaction(&i).unwrap();
        worst = worst.max(back.max_abs_diff(&h).unwrap());
    }
    judged(worst, EXACT, start.elapsed(), Some(Duration::from_secs(5)))
}

fn c2_involution() -> Outcome {
    let start = Instant::now();
    let mut r = rng(2);
    let mut involution: f64 = 0.0;
    let mut oracle: f64 = 0.0;
    for n in 1..=12 {
        let lattice = Arc::new(PowerSetLattice::new(n).unwrap());
        for _ in 0..100 {
            let f = random_lattice_function(&mut r, lattice.clone(), Role::Generic);
            for conv in [SignConvention::Plain, SignConvention::PlusOne] {
                let once = signed_transform(&f, conv);
                let twice = signed_transform(&once, conv);
                involution = involution.max(twice.max_rel_diff(&f).unwrap());

                let slow = naive::signed(f.values(), conv);
                let scale = slow.iter().fold(0.0f64, |m, v| m.max(v.abs())).max(f64::MIN_POSITIVE);
                let diff = once
                    .values()
                    .iter()
                    .zip(&slow)
                    .fold(0.0f64, |m, (a, b)| m.max((a - b).abs()));
                oracle = oracle.max(diff / scale);
            }
        }
    }
    let elapsed = start.elapsed();
    let mut o = judged(involution.max(oracle), EXACT, elapsed, Some(Duration::from_secs(10)));
    o.detail = format!("involution {involution:.3e}, fast vs naive {oracle:.3e}; {}", o.detail);
    o
}

fn c3_cancellation() -> Outcome {
    let start = Instant::now();
    let mut bad = Vec::new();
    for n in 1..=6 {
        let t = cancellation_table(n).unwrap();
        let full = SubsetMask::full(n);
        for (&sigma, sum) in t.order().iter().zip(t.row_sums()) {
            let want = if sigma == full { 1 } else { 0 };
            if sum != want {
                bad.push(format!("n={n} row {sigma} sums to {sum}"));
            }
        }
    }
    let elapsed = start.elapsed();
    let ok = bad.is_empty() && elapsed < Duration::from_secs(1);
    outcome(
        ok,
        format!(
            "n=1..6, {} non-cancelling rows besides the full set, {:.3}s of 1s",
            bad.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn c4_multi_dualities() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in pmfs(4, 50, 2..=5) {
        let t = table(&d);
        for nu in t.lattice().nodes().filter(|nu| nu.len() >= 2) {
            let m = measures::multi_information(t.entropy(), nu);
            worst = worst.max((measures::multi_from_interaction(t.interaction(), nu) - m).abs());
            worst = worst.max((measures::interaction_from_multi(t.multi(), nu).unwrap() - t.interaction().get(nu)).abs());
        }
    }
    judged(worst, DIST, start.elapsed(), None)
}

fn c5_delta_consistency() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut three = 0;
    let mut tables: Vec<MeasureTable> = pmfs(5, 50, 2..=5).iter().map(table).collect();
    tables.extend(pmfs(55, 10, 3..=3).iter().map(table));
    for t in &tables {
        let n = t.dim();
        for base in t.lattice().nodes() {
            for x in (0..n).filter(|&x| !base.contains(x)) {
                let r = measures::delta_routes(t, base, x).unwrap();
                worst = worst.max(r.spread());
                if base.len() >= 2 {
                    let from_m = measures::delta_from_multi(t.multi(), base, x).unwrap();
                    worst = worst.max((from_m - r.difference).abs());
                }
            }
        }
        if n == 3 {
            for vars in [[0, 1, 2], [0, 2, 1], [1, 2, 0]] {
                for res in measures::three_variable_residuals(t, vars).unwrap() {
                    worst = worst.max(res);
                    three += 1;
                }
            }
        }
    }
    let mut o = judged(worst, DIST, start.elapsed(), None);
    o.passed &= three > 0;
    o.detail = format!("{three} three-variable residuals; {}", o.detail);
    o
}

fn c6_delta_h_duality() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for d in pmfs(6, 50, 1..=5) {
        let t = table(&d);
        for base in t.lattice().nodes() {
            for x in (0..t.dim()).filter(|&x| !base.contains(x)) {
                let res = if base.is_empty() {
                    // the duality is empty here: Δ(∅; x) is H(x)
                    (measures::delta(&t, base, x).unwrap().value - t.entropy().get(SubsetMask::singleton(x))).abs()
                } else {
                    measures::delta_duality_residual(&t, base, x).unwrap()
                };
                worst = worst.max(res);
            }
        }
    }
    judged(worst, DIST, start.elapsed(), None)
}

fn c7_conditionals() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut sizes = [0usize; 4];
    for d in pmfs(7, 20, 2..=5) {
        let t = table(&d);
        let full = t.lattice().full();
        for w in t.lattice().nodes().filter(|w| (1..=3).contains(&w.len())) {
            for v in full.difference(w).submasks().skip(1) {
                let lattice_route = measures::conditional_interaction(&t, v, w).unwrap();
                let oracle = measures::conditional_interaction_by_expectation(&d, v, w, t.base()).unwrap();
                worst = worst.max((lattice_route - oracle).abs());
                sizes[w.len()] += 1;
            }
        }
    }
    let mut o = judged(worst, DIST, start.elapsed(), None);
    o.passed &= sizes[1..].iter().all(|&c| c > 0);
    o.detail = format!("|W|=1,2,3 instances {:?}; {}", &sizes[1..], o.detail);
    o
}

fn maximal_chains(t: &MeasureTable) -> Vec<ChainPath> {
    let full = t.lattice().full();
    (0..t.dim())
        .flat_map(|s| t.lattice().enumerate_chains(SubsetMask::singleton(s), full).unwrap())
        .collect()
}

fn c8_chain_decomposition() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut counts_ok = true;
    for (n, want) in [(3usize, 6usize), (5, 120)] {
        for d in pmfs(80 + n as u64, 20, n..=n) {
            let t = table(&d);
            let chains = maximal_chains(&t);
            counts_ok &= chains.len() == want;
            let target = t.interaction().get(t.lattice().full());
            for c in &chains {
                let sum: f64 = measures::chain_decomposition(&t, c).unwrap().iter().map(ChainTerm::value).sum();
                worst = worst.max((sum - target).abs());
            }
        }
    }
    let mut o = judged(worst, DIST, start.elapsed(), None);
    o.passed &= counts_ok;
    o.detail = format!("6 chains at n=3, 120 at n=5, 20 pmfs each; {}", o.detail);
    o
}

fn c9_path_independence() -> Outcome {
    let start = Instant::now();
    let mut r = rng(9);
    let mut worst: f64 = 0.0;
    let mut top_chains = usize::MAX;
    let mut pairs = 0;
    for _ in 0..5 {
        let t = table(&random_binary_distribution(&mut r, 5));
        let random = random_lattice_function(&mut r, t.lattice().clone(), Role::Generic);
        for f in [t.entropy(), t.interaction(), t.multi(), &random] {
            for b in t.lattice().nodes() {
                for a in b.submasks() {
                    let p = verify_path_independence(f, a, b).unwrap();
                    worst = worst.max(p.spread());
                    pairs += 1;
                    if a.is_empty() && b == t.lattice().full() {
                        top_chains = top_chains.min(p.chains);
                    }
                }
            }
        }
    }
    let mut o = judged(worst, DIST, start.elapsed(), None);
    o.passed &= top_chains == 120;
    o.detail = format!("{pairs} endpoint pairs, ∅→full over {top_chains} chains; {}", o.detail);
    o
}

/// Joint entropy by direct counting over the listed equiprobable outcomes.
fn brute_entropy(outcomes: &[[usize; 3]], tau: SubsetMask) -> f64 {
    let mut counts = std::collections::BTreeMap::new();
    for o in outcomes {
        let key: Vec<usize> = tau.indices().map(|i| o[i]).collect();
        *counts.entry(key).or_insert(0usize) += 1;
    }
    let total = outcomes.len() as f64;
    counts.values().map(|&c| -(c as f64 / total) * (c as f64 / total).log2()).sum()
}

fn brute_interaction(outcomes: &[[usize; 3]], nu: SubsetMask) -> f64 {
    nu.submasks()
        .skip(1)
        .map(|tau| tau.sign_plus() as f64 * brute_entropy(outcomes, tau))
        .sum()
}

fn fixture(outcomes: &[[usize; 3]]) -> JointDistribution {
    let specs = (1..=3).map(|i| VariableSpec::new(format!("X{i}"), 2)).collect();
    let p = 1.0 / outcomes.len() as f64;
    JointDistribution::new(specs, outcomes.iter().map(|o| (o.to_vec(), p)).collect()).unwrap()
}

fn c10_fixtures() -> Outcome {
    let start = Instant::now();
    let cube: Vec<[usize; 3]> = (0..8).map(|k| [k & 1, (k >> 1) & 1, (k >> 2) & 1]).collect();
    let xor: Vec<[usize; 3]> = cube.iter().copied().filter(|o| o[2] == o[0] ^ o[1]).collect();
    let full = SubsetMask::full(3);
    let mut worst: f64 = 0.0;
    let mut check = |got: f64, want: f64| worst = worst.max((got - want).abs());

    let t = table(&fixture(&xor));
    check(t.interaction().get(full), -1.0);
    check(t.interaction().get(full), brute_interaction(&xor, full));
    check(t.multi().get(full), 1.0);
    for pair in t.lattice().nodes().filter(|m| m.len() == 2) {
        check(t.interaction().get(pair), 0.0);
        check(t.interaction().get(pair), brute_interaction(&xor, pair));
        let third = full.difference(pair).indices().next().unwrap();
        check(measures::delta(&t, pair, third).unwrap().value, -1.0);
    }
    let sym = measures::symmetrized_delta(&t, full).unwrap();
    check(sym.product, -1.0);
    let xor_dependent = sym.collectively_dependent;

    let t = table(&fixture(&cube));
    for nu in t.lattice().nodes().filter(|m| m.len() >= 2) {
        check(t.interaction().get(nu), 0.0);
        check(t.interaction().get(nu), brute_interaction(&cube, nu));
    }
    let sym = measures::symmetrized_delta(&t, full).unwrap();
    check(sym.product, 0.0);

    let mut o = judged(worst, DIST, start.elapsed(), None);
    o.passed &= xor_dependent && !sym.collectively_dependent;
    o.detail = format!("XOR and independent triple; {}", o.detail);
    o
}

fn c11_end_to_end() -> Outcome {
    let start = Instant::now();
    let bin = env!("CARGO_BIN_EXE_infolattice");
    let dir = tempfile::tempdir().unwrap();
    let samples = dir.path().join("xor.csv");
    let pmf = dir.path().join("xor.json");
    std::fs::write(&samples, "X1,X2,X3\n0,0,0\n0,1,1\n1,0,1\n1,1,0\n").unwrap();

    let ingest = Command::new(bin)
        .args(["ingest", "--input"])
        .arg(&samples)
        .arg("--out")
        .arg(&pmf)
        .output()
        .unwrap();
    let verify = Command::new(bin).args(["verify", "--input"]).arg(&pmf).output().unwrap();
    let verify_text = String::from_utf8_lossy(&verify.stdout).to_string();
    let families = verify_text.lines().filter(|l| l.ends_with("PASS") || l.ends_with("FAIL")).count();
    let failing = verify_text.lines().filter(|l| l.ends_with("FAIL")).count();

    let export = Command::new(bin).args(["export", "--n", "3"]).output().unwrap();
    let dot = String::from_utf8_lossy(&export.stdout).to_string();
    let nodes: Vec<&str> = dot.lines().filter(|l| l.contains("[label=") && !l.contains("->")).collect();
    let edges = dot.lines().filter(|l| l.contains("->")).count();
    let signs_ok = nodes.len() == 8
        && (0u32..8).all(|m| {
            // + on singletons and the triple, - on pairs and the empty set
            let want = if SubsetMask::from_bits(m).len() % 2 == 1 { "+" } else { "-" };
            nodes
                .iter()
                .any(|l| l.starts_with(&format!("  {m} ")) && l.contains(&format!("\\n{want}\"")))
        });
    let elapsed = start.elapsed();

    let ok = ingest.status.success()
        && verify.status.code() == Some(0)
        && families == 13
        && failing == 0
        && export.status.success()
        && nodes.len() == 8
        && edges == 12
        && signs_ok
        && elapsed < Duration::from_secs(2);
    outcome(
        ok,
        format!(
            "ingest {:?}, verify exit {:?} ({families} families, {failing} failing), export {} nodes / {edges} edges, signs {}, {:.3}s of 2s",
            ingest.status.code(),
            verify.status.code(),
            nodes.len(),
            if signs_ok { "ok" } else { "wrong" },
            elapsed.as_secs_f64()
        ),
    )
}

#[test]
fn acceptance() {
    type Criterion = (&'static str, fn() -> Outcome);
    let criteria: [Criterion; 11] = [
        ("H-I duality round trip", c1_h_i_duality),
        ("signed transform involution and naive agreement", c2_involution),
        ("cancellation table rows", c3_cancellation),
        ("multi-information dualities", c4_multi_dualities),
        ("delta routes, delta from M, three-variable identities", c5_delta_consistency),
        ("delta-entropy duality", c6_delta_h_duality),
        ("conditional interaction vs expectation", c7_conditionals),
        ("chain decomposition of the top interaction", c8_chain_decomposition),
        ("path independence", c9_path_independence),
        ("XOR and independent fixtures", c10_fixtures),
        ("end-to-end CLI", c11_end_to_end),
    ];
    let mut failed = Vec::new();
    for (k, (name, run)) in criteria.iter().enumerate() {
        let o = run();
        // written past the harness capture so the lines show in every run
        let _ = writeln!(
            std::io::stderr(),
            "[{}] criterion {}: {name} — {}",
            if o.passed { "PASS" } else { "FAIL" },
            k + 1,
            o.detail
        );
        if !o.passed {
            failed.push(k + 1);
        }
    }
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
