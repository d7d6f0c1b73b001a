//! The Magnus map `x_i -> 1 + X_i`, its modified version `x_i -> e(X_i)`
//! for a chosen base for logarithms, dimension-filtration membership and
//! finite injectivity scans over enumerated reduced words.

use crate::hopf;
use crate::series::{eval_univariate, LowDegree, NSeries};
use crate::term::{self, LoopTerm};
use crate::{Mode, Result};
use std::collections::HashMap;

/// Parameters of a Magnus computation. `base = None` is the classical map;
/// `Some(e)` substitutes the group-like series `e(X_i)` for each generator.
#[derive(Debug, Clone)]
pub struct MagnusConfig {
    pub alphabet_size: u8,
    pub degree: usize,
    pub mode: Mode,
    pub base: Option<NSeries>,
}

impl MagnusConfig {
    pub fn classical(alphabet_size: u8, degree: usize, mode: Mode) -> MagnusConfig {
        MagnusConfig { alphabet_size, degree, mode, base: None }
    }

    pub fn modified(alphabet_size: u8, degree: usize, mode: Mode, base: NSeries) -> MagnusConfig {
        MagnusConfig { alphabet_size, degree, mode, base: Some(base) }
    }

    fn generator_image(&self, i: u8) -> Result<NSeries> {
        match &self.base {
            None => Ok(NSeries::one_plus_gen(i, self.degree, self.mode)),
            Some(e) => {
                hopf::check_base(e)?;
                let z = NSeries::gen(i, self.degree, self.mode);
                eval_univariate(e, &z)
            }
        }
    }
}

/// The homomorphic image of a word under the (modified) Magnus map.
pub fn magnus(w: &LoopTerm, cfg: &MagnusConfig) -> Result<NSeries> {
    let mut gen_cache: HashMap<u8, NSeries> = HashMap::new();
    magnus_memo(w, cfg, &mut gen_cache)
}

fn magnus_memo(
    w: &LoopTerm,
    cfg: &MagnusConfig,
    gen_cache: &mut HashMap<u8, NSeries>,
) -> Result<NSeries> {
    match w {
        LoopTerm::Identity => Ok(NSeries::one(cfg.degree, cfg.mode)),
        LoopTerm::Gen(i) => {
            if let Some(s) = gen_cache.get(i) {
                return Ok(s.clone());
            }
            let s = cfg.generator_image(*i)?;
            gen_cache.insert(*i, s.clone());
            Ok(s)
        }
        LoopTerm::Mul(a, b) => {
            let sa = magnus_memo(a, cfg, gen_cache)?;
            let sb = magnus_memo(b, cfg, gen_cache)?;
            sa.checked_mul(&sb)
        }
        LoopTerm::LDiv(a, b) => {
            let sa = magnus_memo(a, cfg, gen_cache)?;
            let sb = magnus_memo(b, cfg, gen_cache)?;
            sa.left_divide(&sb)
        }
        LoopTerm::RDiv(a, b) => {
            let sa = magnus_memo(a, cfg, gen_cache)?;
            let sb = magnus_memo(b, cfg, gen_cache)?;
            sa.right_divide(&sb)
        }
    }
}

/// Lowest degree of `M(w) - 1`; `w` lies in the n-th dimension subloop
/// exactly when this is at least n.
pub fn dimension_degree(w: &LoopTerm, cfg: &MagnusConfig) -> Result<LowDegree> {
    let mut s = magnus(w, cfg)?;
    let one = NSeries::one(cfg.degree, cfg.mode);
    s = s.checked_sub(&one)?;
    Ok(s.low_degree())
}

/// Verdict of a dimension-subloop membership query at a finite truncation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Membership {
    In,
    NotIn,
    /// The test saturated: raise the truncation degree to decide.
    Unknown,
}

impl std::fmt::Display for Membership {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Membership::In => write!(f, "in"),
            Membership::NotIn => write!(f, "not-in"),
            Membership::Unknown => write!(f, "unknown (raise N)"),
        }
    }
}

/// Membership of `w` in `D_n`. Saturated truncations are reported as
/// `Unknown` rather than as verdicts.
pub fn in_dimension_subloop(w: &LoopTerm, n: usize, cfg: &MagnusConfig) -> Result<Membership> {
    match dimension_degree(w, cfg)? {
        LowDegree::Exact(d) => Ok(if d >= n { Membership::In } else { Membership::NotIn }),
        LowDegree::AtLeast(bound) => {
            // all terms up to the truncation vanish
            if n < bound {
                Ok(Membership::In)
            } else {
                Ok(Membership::Unknown)
            }
        }
    }
}

/// A pair of distinct reduced words whose truncated Magnus images agree.
#[derive(Debug, Clone, serde::Serialize)]
pub struct Collision {
    pub left: String,
    pub right: String,
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct ScanReport {
    pub alphabet_size: u8,
    pub max_leaves: usize,
    pub degree: usize,
    pub mode: Mode,
    pub words_scanned: usize,
    /// Expected empty; any entry means "collision at truncation - raise N".
    pub collisions: Vec<Collision>,
}

/// Compute Magnus images of every reduced word with at most `max_leaves`
/// leaves and report all pairs with equal truncated series.
pub fn injectivity_scan(max_leaves: usize, cfg: &MagnusConfig, cap: usize) -> Result<ScanReport> {
    let words = term::enumerate_reduced(cfg.alphabet_size, max_leaves, cfg.mode, cap)?;
    let mut seen: HashMap<String, Vec<String>> = HashMap::new();
    let mut gen_cache = HashMap::new();
    for w in &words {
        let s = magnus_memo(w, cfg, &mut gen_cache)?;
        // canonical sorted rendering of the series is the collision key
        seen.entry(s.to_string()).or_default().push(w.to_string());
    }
    let mut collisions = Vec::new();
    for group in seen.values() {
        if group.len() > 1 {
            let mut group = group.clone();
            group.sort();
            for pair in group.windows(2) {
                collisions.push(Collision { left: pair[0].clone(), right: pair[1].clone() });
            }
        }
    }
    collisions.sort_by(|a, b| (&a.left, &a.right).cmp(&(&b.left, &b.right)));
    Ok(ScanReport {
        alphabet_size: cfg.alphabet_size,
        max_leaves,
        degree: cfg.degree,
        mode: cfg.mode,
        words_scanned: words.len(),
        collisions,
    })
}
