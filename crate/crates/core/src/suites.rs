//! Named verification suites: each bundles the checks behind one of the
//! headline claims into a serializable report. The CLI `verify` subcommand
//! and the acceptance tests are thin wrappers around these.

use crate::higman::{component_closure, lemma6_check, prop5_witness, Higman, Lemma6Outcome};
use crate::higman_hopf::{lemma_a_check, magnus_tilde, t_map, t_star, PhiMap, TPoly, TSymbol};
use crate::hopf::{exp_base, is_grouplike, log_base};
use crate::loops::{
    binomial, embed_prop3, embed_prop4, int_pair_grid, lemma_first_check, lmlt_apply,
    loop_axioms_hold, nested_commutator, pair, FreeAbelian, IntPair, IntPairCommLoop,
    IntPairLoop, LMltWord, LoopOps,
};
use crate::magnus::{dimension_degree, injectivity_scan, magnus, MagnusConfig};
use crate::series::{eval_univariate, LowDegree, Monomial, NSeries};
use crate::term::{self, LoopTerm};
use crate::{Error, Mode, Result};
use num::BigInt;
use serde::Serialize;
use std::collections::{BTreeMap, BTreeSet, HashMap};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Skipped,
}

/// One named check inside a suite, with a human-readable witness or
/// counterexample.
#[derive(Debug, Clone, Serialize)]
pub struct Check {
    pub id: String,
    pub status: CheckStatus,
    pub detail: String,
}

impl Check {
    fn new(id: &str, ok: bool, detail: impl Into<String>) -> Check {
        Check {
            id: id.to_string(),
            status: if ok { CheckStatus::Pass } else { CheckStatus::Fail },
            detail: detail.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub wall_time_ms: u128,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

/// Shared knobs; each suite has intrinsic parameters that `degree` and
/// `leaves` override where meaningful.
#[derive(Debug, Clone)]
pub struct SuiteConfig {
    /// Integer grid half-width for loop-element scans.
    pub grid: i64,
    pub degree: Option<usize>,
    pub leaves: Option<usize>,
    /// Cap on enumerated words.
    pub cap: usize,
}

impl Default for SuiteConfig {
    fn default() -> SuiteConfig {
        SuiteConfig { grid: 5, degree: None, leaves: None, cap: 1 << 22 }
    }
}

pub const SUITE_NAMES: &[&str] = &[
    "prop3",
    "prop4",
    "magnus-soundness",
    "injectivity",
    "lemma-first",
    "prop5",
    "lemma6",
    "hc1",
    "hopf-higman",
];

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport> {
    let start = std::time::Instant::now();
    let checks = match name {
        "prop3" => suite_prop3(cfg)?,
        "prop4" => suite_prop4(cfg)?,
        "magnus-soundness" => suite_magnus_soundness(cfg)?,
        "injectivity" => suite_injectivity(cfg)?,
        "lemma-first" => suite_lemma_first(cfg)?,
        "prop5" => suite_prop5(cfg)?,
        "lemma6" => suite_lemma6(cfg)?,
        "hc1" => suite_hc1(cfg)?,
        "hopf-higman" => suite_hopf_higman(cfg)?,
        other => {
            return Err(Error::ResourceCap(format!("unknown suite: {other}")));
        }
    };
    Ok(SuiteReport {
        suite: name.to_string(),
        checks,
        wall_time_ms: start.elapsed().as_millis(),
    })
}

// ---------------------------------------------------------------- prop3

fn suite_prop3(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let l = IntPairCommLoop;
    let grid = int_pair_grid(cfg.grid);
    let mut checks = Vec::new();

    checks.push(Check::new(
        "prop3-loop-axioms",
        loop_axioms_hold(&l, &grid),
        format!("grid [-{0},{0}]^2", cfg.grid),
    ));

    // Embedding multiplicative and injective on the grid.
    let images: Vec<NSeries> = grid.iter().map(embed_prop3).collect();
    let mut multiplicative = true;
    'mult: for (a, sa) in grid.iter().zip(&images) {
        for (b, sb) in grid.iter().zip(&images) {
            if sa.checked_mul(sb)? != embed_prop3(&l.mul(a, b)) {
                multiplicative = false;
                break 'mult;
            }
        }
    }
    checks.push(Check::new("prop3-embed-multiplicative", multiplicative, "grid^2 pairs"));
    let distinct: BTreeSet<String> = images.iter().map(|s| s.to_string()).collect();
    checks.push(Check::new(
        "prop3-embed-injective",
        distinct.len() == grid.len(),
        format!("{} images of {} elements", distinct.len(), grid.len()),
    ));

    // embed(0,1) = 1 - X^3 X + X^2 X^2.
    let mode = Mode::Commutative;
    let xg = Monomial::gen(1);
    let x2 = Monomial::mul(&xg, &xg, mode);
    let x3 = Monomial::mul(&x2, &xg, mode);
    let x3x = Monomial::mul(&x3, &xg, mode);
    let x2x2 = Monomial::mul(&x2, &x2, mode);
    let mut expected = NSeries::one(4, mode);
    expected.set_coeff(x3x.clone(), crate::q_int(-1));
    expected.set_coeff(x2x2.clone(), crate::q_one());
    checks.push(Check::new(
        "prop3-embed-basepoint",
        embed_prop3(&pair(0, 1)) == expected,
        "embed(0,1) = 1 - X^3X + X^2X^2",
    ));

    // (0,1) - 1 = (4,0) \ (X^2X^2 - X^3X), with the dividend of low degree 4.
    let mut s = NSeries::zero(4, mode);
    s.set_coeff(x2x2, crate::q_one());
    s.set_coeff(x3x, crate::q_int(-1));
    let lhs = embed_prop3(&pair(0, 1)).checked_sub(&NSeries::one(4, mode))?;
    let rhs = embed_prop3(&pair(4, 0)).left_divide(&s)?;
    let witness_ok = lhs == rhs && s.low_degree() == LowDegree::Exact(4);
    checks.push(Check::new(
        "prop3-d4-witness",
        witness_ok,
        format!("(0,1)-1 = (4,0)\\(X^2X^2 - X^3X); low degree {}", s.low_degree()),
    ));

    // LMlt structure: closed forms for weights 2 and 3, triviality at 4.
    let points: Vec<IntPair> = sample_points(cfg.grid);
    let half = |n: BigInt| -> Option<BigInt> {
        let (q, r) = num::Integer::div_rem(&n, &BigInt::from(2));
        if num::Zero::is_zero(&r) { Some(q) } else { None }
    };
    let mut weight2_ok = true;
    let mut weight2_nontrivial = false;
    'w2: for p in -cfg.grid..=cfg.grid {
        for q in -cfg.grid..=cfg.grid {
            for r in -cfg.grid..=cfg.grid {
                for s2 in [-cfg.grid, 0, cfg.grid] {
                    let c = LMltWord::commutator(
                        &LMltWord::translation(pair(p, q)),
                        &LMltWord::translation(pair(r, s2)),
                    );
                    for x in &points {
                        let got = lmlt_apply(&l, &c, x);
                        let shift = half(BigInt::from(p) * r * (p - r) * &x.0)
                            .expect("apr(p-r) is even");
                        let want = (x.0.clone(), &x.1 + shift);
                        if got != want {
                            weight2_ok = false;
                            break 'w2;
                        }
                        if got != *x {
                            weight2_nontrivial = true;
                        }
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "prop3-weight2-closed-form",
        weight2_ok,
        "[L_(p,q),L_(r,s)](a,b) = (a, b + apr(p-r)/2)",
    ));
    checks.push(Check::new(
        "prop3-weight2-nontrivial",
        weight2_nontrivial,
        "some weight-2 commutator moves a point",
    ));

    let mut weight3_ok = true;
    let mut weight3_nontrivial = false;
    'w3: for s3 in -cfg.grid..=cfg.grid {
        for p in -cfg.grid..=cfg.grid {
            for r in -cfg.grid..=cfg.grid {
                let inner = LMltWord::commutator(
                    &LMltWord::translation(pair(p, 0)),
                    &LMltWord::translation(pair(r, 0)),
                );
                let c = LMltWord::commutator(&LMltWord::translation(pair(s3, 0)), &inner);
                for x in &points {
                    let got = lmlt_apply(&l, &c, x);
                    let shift = half(BigInt::from(p) * r * s3 * (p - r))
                        .expect("prs(p-r) is even");
                    let want = (x.0.clone(), &x.1 - shift);
                    if got != want {
                        weight3_ok = false;
                        break 'w3;
                    }
                    if got != *x {
                        weight3_nontrivial = true;
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "prop3-weight3-closed-form",
        weight3_ok,
        "[L_s,[L_p,L_r]](a,b) = (a, b - prs(p-r)/2)",
    ));
    checks.push(Check::new(
        "prop3-weight3-nontrivial",
        weight3_nontrivial,
        "some weight-3 commutator moves a point",
    ));

    let small = cfg.grid.min(2);
    let mut weight4_trivial = true;
    'w4: for t in -small..=small {
        for s4 in -small..=small {
            for p in -small..=small {
                for r in -small..=small {
                    let w = nested_commutator(&[pair(t, 0), pair(s4, 0), pair(p, 0), pair(r, 0)]);
                    for x in &points {
                        if lmlt_apply(&l, &w, x) != *x {
                            weight4_trivial = false;
                            break 'w4;
                        }
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "prop3-weight4-trivial",
        weight4_trivial,
        format!("all sampled weight-4 commutators in [-{small},{small}] act as identity"),
    ));
    Ok(checks)
}

fn sample_points(grid: i64) -> Vec<IntPair> {
    let mut pts = Vec::new();
    for a in [-grid, -1, 0, 1, grid] {
        for b in [-grid, -1, 0, 1, grid] {
            let p = pair(a, b);
            if !pts.contains(&p) {
                pts.push(p);
            }
        }
    }
    pts
}

// ---------------------------------------------------------------- prop4

fn suite_prop4(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let l = IntPairLoop;
    let grid = int_pair_grid(cfg.grid);
    let mut checks = Vec::new();

    checks.push(Check::new(
        "prop4-loop-axioms",
        loop_axioms_hold(&l, &grid),
        format!("grid [-{0},{0}]^2", cfg.grid),
    ));

    // Weight-2 commutator closed form and centrality.
    let points = sample_points(cfg.grid);
    let mut weight2_ok = true;
    let mut central = true;
    let mut nontrivial = false;
    'w2: for p in -cfg.grid..=cfg.grid {
        for r in -cfg.grid..=cfg.grid {
            let c = LMltWord::commutator(
                &LMltWord::translation(pair(p, 0)),
                &LMltWord::translation(pair(r, 0)),
            );
            let shift = binomial(&BigInt::from(p), 2) * r - binomial(&BigInt::from(r), 2) * p;
            for x in &points {
                let got = lmlt_apply(&l, &c, x);
                let want = (x.0.clone(), &x.1 + &shift);
                if got != want {
                    weight2_ok = false;
                    break 'w2;
                }
                if got != *x {
                    nontrivial = true;
                }
            }
            for z in [-cfg.grid, 1, cfg.grid] {
                let outer = LMltWord::commutator(&c, &LMltWord::translation(pair(z, 0)));
                for x in &points {
                    if lmlt_apply(&l, &outer, x) != *x {
                        central = false;
                        break 'w2;
                    }
                }
            }
        }
    }
    checks.push(Check::new(
        "prop4-weight2-closed-form",
        weight2_ok,
        "[L_p,L_r](a,b) = (a, b + C(p,2)r - C(r,2)p)",
    ));
    checks.push(Check::new("prop4-weight2-central", central, "[[L_p,L_r],L_z] = id"));
    checks.push(Check::new(
        "prop4-weight2-nontrivial",
        nontrivial,
        "some weight-2 commutator moves a point",
    ));

    // Embedding multiplicative and injective.
    let images: Vec<NSeries> = grid.iter().map(embed_prop4).collect();
    let mut multiplicative = true;
    'mult: for (a, sa) in grid.iter().zip(&images) {
        for (b, sb) in grid.iter().zip(&images) {
            if sa.checked_mul(sb)? != embed_prop4(&l.mul(a, b)) {
                multiplicative = false;
                break 'mult;
            }
        }
    }
    checks.push(Check::new("prop4-embed-multiplicative", multiplicative, "grid^2 pairs"));
    let distinct: BTreeSet<String> = images.iter().map(|s| s.to_string()).collect();
    checks.push(Check::new(
        "prop4-embed-injective",
        distinct.len() == grid.len(),
        format!("{} images of {} elements", distinct.len(), grid.len()),
    ));

    // (3,1) - (3,0) lies in I^3: certifies (0,1) in D_3.
    let diff = embed_prop4(&pair(3, 1)).checked_sub(&embed_prop4(&pair(3, 0)))?;
    checks.push(Check::new(
        "prop4-d3-witness",
        diff.low_degree() == LowDegree::Exact(3),
        format!("(3,1)-(3,0) has low degree {}", diff.low_degree()),
    ));
    Ok(checks)
}

// --------------------------------------------------- magnus-soundness

/// All words (not only reduced ones) whose trees have at most `max_leaves`
/// leaves, each leaf drawn from `{e, x_1, ..., x_k}`; identity leaves are
/// included so that reduction is genuinely exercised.
fn enumerate_all_words(alphabet_size: u8, max_leaves: usize) -> Vec<LoopTerm> {
    let mut by_leaves: Vec<Vec<LoopTerm>> = vec![Vec::new()];
    for d in 1..=max_leaves {
        let mut level: Vec<LoopTerm> = Vec::new();
        if d == 1 {
            level.push(LoopTerm::Identity);
            for i in 1..=alphabet_size {
                level.push(LoopTerm::Gen(i));
            }
        }
        for left in 1..d {
            let right = d - left;
            for a in &by_leaves[left] {
                for b in &by_leaves[right] {
                    for op in [LoopTerm::mul, LoopTerm::ldiv, LoopTerm::rdiv] {
                        level.push(op(a.clone(), b.clone()));
                    }
                }
            }
        }
        by_leaves.push(level);
    }
    by_leaves.into_iter().flatten().collect()
}

fn suite_magnus_soundness(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let degree = cfg.degree.unwrap_or(8);
    let leaves = cfg.leaves.unwrap_or(4);
    let mut checks = Vec::new();
    for mode in [Mode::NonCommutative, Mode::Commutative] {
        let magnus_cfg = MagnusConfig::classical(2, degree, mode);
        let words = enumerate_all_words(2, leaves);
        let mut bad = None;
        for w in &words {
            let reduced = term::reduce(w, mode);
            if magnus(w, &magnus_cfg)? != magnus(&reduced, &magnus_cfg)? {
                bad = Some(w.clone());
                break;
            }
        }
        checks.push(Check::new(
            &format!("magnus-respects-reduction-{mode}"),
            bad.is_none(),
            match bad {
                Some(w) => format!("counterexample {w}"),
                None => format!("{} words, N={degree}", words.len()),
            },
        ));
    }

    // Modified-map images are group-like at N=4.
    let n4 = 4;
    for mode in [Mode::NonCommutative, Mode::Commutative] {
        let cfg4 = MagnusConfig::modified(2, n4, mode, exp_base(n4));
        let reduced = term::enumerate_reduced(2, leaves, mode, cfg.cap)?;
        let mut bad = None;
        for w in &reduced {
            if !is_grouplike(&magnus(w, &cfg4)?) {
                bad = Some(w.clone());
                break;
            }
        }
        checks.push(Check::new(
            &format!("modified-images-grouplike-{mode}"),
            bad.is_none(),
            match bad {
                Some(w) => format!("counterexample {w}"),
                None => format!("{} reduced words, N={n4}", reduced.len()),
            },
        ));
    }

    // Dimension degrees of the loop commutator and associator.
    let cfg6 = MagnusConfig::classical(3, 6, Mode::NonCommutative);
    let comm = term::parse("(x1*x2)/(x2*x1)", 3)?;
    let assoc = term::parse("((x1*x2)*x3)/(x1*(x2*x3))", 3)?;
    let dc = dimension_degree(&comm, &cfg6)?;
    let da = dimension_degree(&assoc, &cfg6)?;
    checks.push(Check::new(
        "commutator-dimension-degree",
        dc == LowDegree::Exact(2),
        format!("degree {dc}"),
    ));
    checks.push(Check::new(
        "associator-dimension-degree",
        da == LowDegree::Exact(3),
        format!("degree {da}"),
    ));
    Ok(checks)
}

// -------------------------------------------------------- injectivity

fn suite_injectivity(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let degree = cfg.degree.unwrap_or(8);
    let leaves = cfg.leaves.unwrap_or(4);
    let mut checks = Vec::new();
    for mode in [Mode::NonCommutative, Mode::Commutative] {
        let magnus_cfg = MagnusConfig::classical(2, degree, mode);
        let report = injectivity_scan(leaves, &magnus_cfg, cfg.cap)?;
        checks.push(Check::new(
            &format!("no-collisions-{mode}"),
            report.collisions.is_empty(),
            format!(
                "{} words scanned at N={degree}, {} collisions",
                report.words_scanned,
                report.collisions.len()
            ),
        ));
    }
    Ok(checks)
}

// -------------------------------------------------------- lemma-first

fn suite_lemma_first(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 2..=4 {
        let degree = cfg.degree.unwrap_or(n + 2);
        let r = lemma_first_check(n, degree)?;
        checks.push(Check::new(
            &format!("difference-degree-n{n}"),
            r.passes,
            format!("M(F(a)) - M(a) has low degree {} (need >= {n})", r.difference_degree),
        ));
        checks.push(Check::new(
            &format!("associative-bridge-n{n}"),
            r.associative_bridge,
            "drop_parens(M(F(a))) equals the associative Magnus series",
        ));
    }
    Ok(checks)
}

// -------------------------------------------------------------- prop5

fn suite_prop5(_cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    for n in 3..=6 {
        let c = prop5_witness(n);
        checks.push(Check::new(
            &format!("witness-coefficient-n{n}"),
            c == BigInt::from(1),
            format!("<x2,x1>-coefficient {c}, alpha(y) = x1 asserted"),
        ));
    }
    Ok(checks)
}

// -------------------------------------------------------------- lemma6

fn abelianized<'a>(
    words: &'a [LoopTerm],
    mode: Mode,
) -> (Higman<FreeAbelian>, Vec<Vec<BigInt>>, Vec<Vec<BigInt>>) {
    let fa = FreeAbelian { rank: 2 };
    let h = Higman::new(fa, mode);
    let assign: Vec<Vec<BigInt>> = (1..=2).map(|i| fa.basis(i)).collect();
    let images = words.iter().map(|w| h.alpha(w, &assign)).collect();
    (h, assign, images)
}

fn suite_lemma6(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let leaves = cfg.leaves.unwrap_or(4);
    let mut checks = Vec::new();
    for mode in [Mode::NonCommutative, Mode::Commutative] {
        let words = term::enumerate_reduced(2, leaves, mode, cfg.cap)?;
        let (h, assign, images) = abelianized(&words, mode);
        // group words by alpha image: pairs in different groups fail
        // hypothesis 2 outright.
        let mut groups: BTreeMap<&Vec<BigInt>, Vec<usize>> = BTreeMap::new();
        for (i, img) in images.iter().enumerate() {
            groups.entry(img).or_default().push(i);
        }
        let mut passing_pairs = 0usize;
        let mut failures = Vec::new();
        for members in groups.values() {
            for &i in members {
                for &j in members {
                    if i == j {
                        continue;
                    }
                    match lemma6_check(&h, &words[i], &words[j], &assign) {
                        Lemma6Outcome::Witness { .. } => passing_pairs += 1,
                        Lemma6Outcome::HypothesisFailed(_) => {}
                        Lemma6Outcome::NoWitness => {
                            failures.push((words[i].clone(), words[j].clone()));
                        }
                    }
                }
            }
        }
        checks.push(Check::new(
            &format!("all-passing-pairs-have-witness-{mode}"),
            failures.is_empty(),
            match failures.first() {
                Some((w, wp)) => format!("counterexample pair ({w}, {wp})"),
                None => format!("{} words, {passing_pairs} hypothesis-passing pairs", words.len()),
            },
        ));
        checks.push(Check::new(
            &format!("nonvacuous-{mode}"),
            passing_pairs > 0,
            format!("{passing_pairs} pairs pass all three hypotheses"),
        ));
    }
    Ok(checks)
}

// ----------------------------------------------------------------- hc1

fn suite_hc1(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let leaves = cfg.leaves.unwrap_or(4);
    let mut checks = Vec::new();
    for mode in [Mode::NonCommutative, Mode::Commutative] {
        let words = term::enumerate_reduced(2, leaves, mode, cfg.cap)?;
        let (h, assign, _) = abelianized(&words, mode);
        let index: HashMap<&LoopTerm, usize> = words.iter().enumerate().map(|(i, w)| (w, i)).collect();
        // Intern alpha and delta images as small ids.
        let mut alpha_ids = Vec::with_capacity(words.len());
        let mut delta_ids = Vec::with_capacity(words.len());
        let mut alpha_intern: HashMap<String, u32> = HashMap::new();
        let mut delta_intern: HashMap<String, u32> = HashMap::new();
        let mut comp_ids: Vec<Vec<u32>> = Vec::with_capacity(words.len());
        for w in &words {
            let a = format!("{:?}", h.alpha(w, &assign));
            let next = alpha_intern.len() as u32;
            alpha_ids.push(*alpha_intern.entry(a).or_insert(next));
            let d = format!("{:?}", h.delta(w, &assign));
            let next = delta_intern.len() as u32;
            delta_ids.push(*delta_intern.entry(d).or_insert(next));
            let mut ids: Vec<u32> = w
                .components()
                .iter()
                .map(|c| index[c] as u32)
                .collect();
            ids.sort_unstable();
            comp_ids.push(ids);
        }
        let mut sets_checked = 0usize;
        let mut noninjective_sets = 0usize;
        let mut failure = None;
        'pairs: for i in 0..words.len() {
            for j in i..words.len() {
                let mut set: Vec<u32> = comp_ids[i].clone();
                set.extend_from_slice(&comp_ids[j]);
                set.sort_unstable();
                set.dedup();
                sets_checked += 1;
                let mut alphas: Vec<u32> = set.iter().map(|&k| alpha_ids[k as usize]).collect();
                alphas.sort_unstable();
                alphas.dedup();
                if alphas.len() == set.len() {
                    continue; // alpha injective: nothing to certify
                }
                noninjective_sets += 1;
                let mut deltas: Vec<u32> = set.iter().map(|&k| delta_ids[k as usize]).collect();
                deltas.sort_unstable();
                deltas.dedup();
                if deltas.len() <= alphas.len() {
                    failure = Some((words[i].clone(), words[j].clone()));
                    break 'pairs;
                }
            }
        }
        checks.push(Check::new(
            &format!("delta-separates-{mode}"),
            failure.is_none(),
            match &failure {
                Some((a, b)) => format!("counterexample closure of ({a}, {b})"),
                None => format!(
                    "{sets_checked} component-closed sets, {noninjective_sets} with non-injective alpha"
                ),
            },
        ));
        checks.push(Check::new(
            &format!("nonvacuous-{mode}"),
            noninjective_sets > 0,
            format!("{noninjective_sets} sets exercise the implication"),
        ));
    }
    // The abelianizing example from the module contract.
    let (h, assign, _) = abelianized(&[], Mode::NonCommutative);
    let s = component_closure(&[
        term::parse("x1*x2", 2)?,
        term::parse("x2*x1", 2)?,
    ]);
    let r = crate::higman::corollary1_check(&h, &s, &assign)?;
    checks.push(Check::new(
        "abelianized-example",
        r.alpha_image_size == 4 && r.delta_image_size == 5 && r.holds,
        format!("|S|={} |alpha(S)|={} |delta(S)|={}", r.set_size, r.alpha_image_size, r.delta_image_size),
    ));
    Ok(checks)
}

// --------------------------------------------------------- hopf-higman

fn suite_hopf_higman(cfg: &SuiteConfig) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    // exp base group-like through N=6 and log inverts exp at N=6.
    let mut grouplike = true;
    for n in 1..=6 {
        grouplike &= is_grouplike(&exp_base(n));
    }
    checks.push(Check::new("exp-base-grouplike", grouplike, "N = 1..6"));
    let n6 = 6;
    let e = exp_base(n6);
    let log = log_base(&e, n6)?;
    let em1 = e.checked_sub(&NSeries::one(n6, Mode::NonCommutative))?;
    let back = eval_univariate(&log, &em1)?;
    checks.push(Check::new(
        "log-inverts-exp",
        back == NSeries::gen(1, n6, Mode::NonCommutative),
        "log_e(e(X)) = X at N=6",
    ));

    // t*(g (x) g') = exp(t(g (x) g')) for group-like inputs at N=4.
    let n4 = cfg.degree.unwrap_or(4);
    let mcfg = MagnusConfig::modified(2, n4, Mode::NonCommutative, exp_base(n4));
    let g1 = magnus(&LoopTerm::Gen(1), &mcfg)?;
    let g2 = magnus(&LoopTerm::Gen(2), &mcfg)?;
    let lhs = t_star(&g1, &g2, n4)?;
    let rhs = t_map(&g1, &g2, n4)?.exp()?;
    checks.push(Check::new("t-star-exp-on-grouplikes", lhs == rhs, "N=4, g = M'(x1), g' = M'(x2)"));

    // phi . M' = M~' exhaustively on small words, both modes; equal M'
    // truncations iff equal M~' truncations on the same set.
    let leaves = cfg.leaves.unwrap_or(3);
    for mode in [Mode::NonCommutative, Mode::Commutative] {
        let words = term::enumerate_reduced(2, leaves, mode, cfg.cap)?;
        let mcfg = MagnusConfig::modified(2, n4, mode, exp_base(n4));
        let mut phi = PhiMap::new(n4, mode)?;
        let mut bad = None;
        let mut m_images = Vec::new();
        let mut mt_images = Vec::new();
        for w in &words {
            let m = magnus(w, &mcfg)?;
            let mt = magnus_tilde(w, n4, mode)?;
            if phi.apply(&m)? != mt {
                bad = Some(w.clone());
                break;
            }
            m_images.push(m.to_string());
            mt_images.push(mt.to_string());
        }
        checks.push(Check::new(
            &format!("phi-intertwines-{mode}"),
            bad.is_none(),
            match &bad {
                Some(w) => format!("counterexample {w}"),
                None => format!("{} words at N={n4}", words.len()),
            },
        ));
        if bad.is_none() {
            let mut iff = true;
            for i in 0..words.len() {
                for j in (i + 1)..words.len() {
                    if (m_images[i] == m_images[j]) != (mt_images[i] == mt_images[j]) {
                        iff = false;
                    }
                }
            }
            checks.push(Check::new(
                &format!("equal-truncations-iff-{mode}"),
                iff,
                "M' collisions coincide with M~' collisions",
            ));
        }
    }

    // Lemma A: no relation in the exponent box.
    let bound = 2;
    let g3 = magnus(&term::parse("x1*x2", 2)?, &mcfg)?;
    let gens = vec![
        TPoly::symbol(TSymbol::Ti(1), n4).exp()?,
        TPoly::symbol(TSymbol::Ti(2), n4).exp()?,
        t_star(&g1, &g2, n4)?,
        t_star(&g2, &g3, n4)?,
    ];
    let report = lemma_a_check(&gens, bound, n4)?;
    checks.push(Check::new(
        "lemma-a-no-relation",
        report.relation.is_none(),
        format!(
            "{} exponent vectors in [-{bound},{bound}]^{} (no relation up to bound; not a proof)",
            report.vectors_checked, report.generators
        ),
    ));
    Ok(checks)
}
