//! Command-line front end: term normalization, Magnus and dimension
//! queries, injectivity scans, concrete loop evaluation, Higman maps and
//! the named verification suites.
//!
//! Exit codes: 0 success / all checks pass, 1 a check failed, 2 usage
//! error, 3 resource cap exceeded. All stdout output is deterministic;
//! timings go to stderr.

use clap::{Args, Parser, Subcommand};
use loopmagnus_core::higman::{ASymbol, Higman};
use loopmagnus_core::loops::{lmlt_apply, IntPair, IntPairCommLoop, IntPairLoop, LMltWord, LoopOps};
use loopmagnus_core::magnus::{dimension_degree, injectivity_scan, magnus, MagnusConfig};
use loopmagnus_core::series::LowDegree;
use loopmagnus_core::suites::{run_suite, SuiteConfig, SuiteReport, SUITE_NAMES};
use loopmagnus_core::term::{self, LoopTerm};
use loopmagnus_core::{hopf, Error, Mode};

#[derive(Parser)]
#[command(name = "loopmagnus", version, about = "Free-loop normal forms, Magnus expansions and verification suites")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonFlags {
    /// Truncation degree N.
    #[arg(long, default_value_t = 6)]
    degree: usize,
    /// Work in the commutative variants throughout.
    #[arg(long)]
    commutative: bool,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced (normal-form) word.
    Reduce {
        #[arg(long)]
        commutative: bool,
        term: String,
    },
    /// Print the (modified) Magnus series of a word.
    Magnus {
        #[command(flatten)]
        common: CommonFlags,
        /// Use the modified map with the exponential base instead of 1+X.
        #[arg(long, value_parser = ["exp"])]
        base: Option<String>,
        term: String,
    },
    /// Report the dimension-filtration degree of a word.
    Dimension {
        #[command(flatten)]
        common: CommonFlags,
        /// Filtration index to test membership against.
        #[arg(long, default_value_t = 2)]
        n: usize,
        term: String,
    },
    /// Scan all reduced words up to a leaf bound for Magnus collisions.
    Scan {
        #[command(flatten)]
        common: CommonFlags,
        #[arg(long, default_value_t = 4)]
        leaves: usize,
    },
    /// Evaluate an expression in the concrete integer-pair loop.
    LoopEval {
        /// Use the commutative pair loop instead of the class-3 one.
        #[arg(long)]
        commutative: bool,
        /// Expression over pairs, e.g. "((1,2)*(3,4))" or "[L(2,0),L(1,0)]@(3,0)".
        expr: String,
    },
    /// Print delta(w) = (alpha(w), psi(w)) over a free abelian target.
    HigmanDelta {
        #[arg(long)]
        commutative: bool,
        /// Target loop, e.g. "abelian:3" for the free abelian group of rank 3.
        #[arg(long, default_value = "abelian:2")]
        target: String,
        term: String,
    },
    /// Run one named verification suite, or all of them.
    Verify {
        /// Suite name; see --all for the full list.
        #[arg(long, conflicts_with = "all")]
        suite: Option<String>,
        /// Run every suite.
        #[arg(long)]
        all: bool,
        #[arg(long)]
        degree: Option<usize>,
        #[arg(long)]
        leaves: Option<usize>,
        /// Integer grid half-width for loop-element scans.
        #[arg(long, default_value_t = 5)]
        grid: i64,
        #[arg(long)]
        json: bool,
        /// Seed for randomized checks; present for interface stability (all
        /// current checks are exhaustive and deterministic).
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn mode_of(commutative: bool) -> Mode {
    if commutative { Mode::Commutative } else { Mode::NonCommutative }
}

/// Cap on series/enumeration size, from LOOPMAGNUS_MAX_TERMS.
fn max_terms() -> usize {
    std::env::var("LOOPMAGNUS_MAX_TERMS")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(1 << 22)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::ResourceCap(_) => 3,
        _ => 1,
    }
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(exit_code_for(&e));
        }
    }
}

fn parse_term(text: &str) -> Result<(LoopTerm, u8), Error> {
    let t = term::parse(text, u8::MAX)?;
    let alphabet = t.max_generator().max(1);
    Ok((t, alphabet))
}

fn run(cli: Cli) -> Result<i32, Error> {
    match cli.command {
        Command::Reduce { commutative, term: text } => {
            let (t, _) = parse_term(&text)?;
            println!("{}", term::reduce(&t, mode_of(commutative)));
            Ok(0)
        }
        Command::Magnus { common, base, term: text } => {
            let (t, alphabet) = parse_term(&text)?;
            let mode = mode_of(common.commutative);
            let cfg = match base.as_deref() {
                Some("exp") => {
                    MagnusConfig::modified(alphabet, common.degree, mode, hopf::exp_base(common.degree))
                }
                _ => MagnusConfig::classical(alphabet, common.degree, mode),
            };
            let s = magnus(&t, &cfg)?;
            if s.term_count() > max_terms() {
                return Err(Error::ResourceCap(format!(
                    "series has {} terms, over LOOPMAGNUS_MAX_TERMS",
                    s.term_count()
                )));
            }
            if common.json {
                println!("{}", serde_json::to_string(&s.to_json_terms()).expect("serialize"));
            } else {
                println!("{s}");
            }
            Ok(0)
        }
        Command::Dimension { common, n, term: text } => {
            let (t, alphabet) = parse_term(&text)?;
            let cfg = MagnusConfig::classical(alphabet, common.degree, mode_of(common.commutative));
            let d = dimension_degree(&t, &cfg)?;
            match d {
                LowDegree::Exact(d) => {
                    if d >= n {
                        println!("degree {d}: in D_{n}, not in D_{}", d + 1);
                    } else {
                        println!("degree {d}: not in D_{n}");
                    }
                }
                LowDegree::AtLeast(b) => {
                    if b >= n {
                        println!("degree >={b}: in D_{n}, unknown beyond truncation (raise N)");
                    } else {
                        println!("degree >={b}: unknown (raise N)");
                    }
                }
            }
            Ok(0)
        }
        Command::Scan { common, leaves } => {
            let cfg = MagnusConfig::classical(2, common.degree, mode_of(common.commutative));
            let report = injectivity_scan(leaves, &cfg, max_terms())?;
            if common.json {
                println!("{}", serde_json::to_string(&report).expect("serialize"));
            } else {
                println!(
                    "{} words scanned at N={}, {} collisions",
                    report.words_scanned,
                    common.degree,
                    report.collisions.len()
                );
                for c in &report.collisions {
                    println!("collision: {} vs {}", c.left, c.right);
                }
            }
            Ok(if report.collisions.is_empty() { 0 } else { 1 })
        }
        Command::LoopEval { commutative, expr } => {
            let value = if commutative {
                eval_pair_expr(&expr, &IntPairCommLoop)?
            } else {
                eval_pair_expr(&expr, &IntPairLoop)?
            };
            println!("({},{})", value.0, value.1);
            Ok(0)
        }
        Command::HigmanDelta { commutative, target, term: text } => {
            let rank: usize = target
                .strip_prefix("abelian:")
                .and_then(|r| r.parse().ok())
                .ok_or_else(|| Error::Parse {
                    pos: 0,
                    msg: format!("target must be abelian:<rank>, got {target}"),
                })?;
            let (t, alphabet) = parse_term(&text)?;
            if alphabet as usize > rank {
                return Err(Error::GeneratorOutOfRange {
                    index: alphabet as u32,
                    alphabet: rank as u8,
                });
            }
            let fa = loopmagnus_core::loops::FreeAbelian { rank };
            let h = Higman::new(fa, mode_of(commutative));
            let assign: Vec<_> = (1..=rank).map(|i| fa.basis(i)).collect();
            let d = h.delta(&t, &assign);
            let psi: Vec<serde_json::Value> = d
                .a
                .0
                .iter()
                .map(|(s, k)| match s {
                    ASymbol::Gen(i) => serde_json::json!({
                        "symbol": {"kind": "gen", "index": i},
                        "coeff": k.to_string(),
                    }),
                    ASymbol::Pair(l, r) => serde_json::json!({
                        "symbol": {
                            "kind": "pair",
                            "left": l.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                            "right": r.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                        },
                        "coeff": k.to_string(),
                    }),
                })
                .collect();
            let out = serde_json::json!({
                "alpha": d.l.iter().map(|x| x.to_string()).collect::<Vec<_>>(),
                "psi": psi,
            });
            println!("{out}");
            Ok(0)
        }
        Command::Verify { suite, all, degree, leaves, grid, json, seed: _ } => {
            let cfg = SuiteConfig { grid, degree, leaves, cap: max_terms() };
            let names: Vec<&str> = if all {
                SUITE_NAMES.to_vec()
            } else {
                match &suite {
                    Some(s) => vec![s.as_str()],
                    None => {
                        eprintln!("error: pass --suite NAME or --all; suites: {}", SUITE_NAMES.join(", "));
                        return Ok(2);
                    }
                }
            };
            let mut reports = Vec::new();
            for name in names {
                if !SUITE_NAMES.contains(&name) {
                    eprintln!("error: unknown suite `{name}`; suites: {}", SUITE_NAMES.join(", "));
                    return Ok(2);
                }
                reports.push(run_suite(name, &cfg)?);
            }
            let ok = reports.iter().all(SuiteReport::passed);
            if json {
                // Deterministic stdout: the wall time goes to stderr only.
                let rendered: Vec<serde_json::Value> = reports
                    .iter()
                    .map(|r| {
                        serde_json::json!({
                            "suite": r.suite,
                            "passed": r.passed(),
                            "checks": r.checks,
                        })
                    })
                    .collect();
                println!("{}", serde_json::to_string(&rendered).expect("serialize"));
            } else {
                for r in &reports {
                    println!("suite {}: {}", r.suite, if r.passed() { "pass" } else { "FAIL" });
                    for c in &r.checks {
                        println!("  {:7} {}  {}", format!("[{:?}]", c.status).to_lowercase(), c.id, c.detail);
                    }
                }
            }
            for r in &reports {
                eprintln!("suite {} finished in {} ms", r.suite, r.wall_time_ms);
            }
            Ok(if ok { 0 } else { 1 })
        }
    }
}

// ------------------------------------------------------------ loop-eval

/// Expression grammar over integer pairs (fully parenthesized, like the
/// word syntax):
///   primary := '(' INT ',' INT ')' | '(' expr ('*'|'\\'|'/') expr ')'
///            | lword '@' primary
///   lword   := 'L' primary | '[' lword ',' lword ']'
struct PairParser<'a> {
    bytes: &'a [u8],
    pos: usize,
}

fn eval_pair_expr<L: LoopOps<Elem = IntPair>>(text: &str, l: &L) -> Result<IntPair, Error> {
    let mut p = PairParser { bytes: text.as_bytes(), pos: 0 };
    p.skip_ws();
    let v = p.expr(l)?;
    p.skip_ws();
    if p.pos != p.bytes.len() {
        return Err(p.error("trailing input"));
    }
    Ok(v)
}

impl<'a> PairParser<'a> {
    fn error(&self, msg: &str) -> Error {
        Error::Parse { pos: self.pos, msg: msg.to_string() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.bytes.get(self.pos).copied()
    }

    fn eat(&mut self, b: u8) -> Result<(), Error> {
        if self.peek() == Some(b) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("expected `{}`", b as char)))
        }
    }

    fn expr<L: LoopOps<Elem = IntPair>>(&mut self, l: &L) -> Result<IntPair, Error> {
        self.skip_ws();
        match self.peek() {
            Some(b'[') | Some(b'L') => {
                let word = self.lword()?;
                self.skip_ws();
                self.eat(b'@')?;
                let x = self.expr(l)?;
                Ok(lmlt_apply(l, &word, &x))
            }
            Some(b'(') => self.paren(l),
            _ => Err(self.error("expected `(`, `L` or `[`")),
        }
    }

    /// Either a literal pair `(p,q)` or a parenthesized binary operation.
    fn paren<L: LoopOps<Elem = IntPair>>(&mut self, l: &L) -> Result<IntPair, Error> {
        self.eat(b'(')?;
        self.skip_ws();
        if matches!(self.peek(), Some(b'-') | Some(b'0'..=b'9')) {
            let p = self.int()?;
            self.skip_ws();
            self.eat(b',')?;
            let q = self.int()?;
            self.skip_ws();
            self.eat(b')')?;
            return Ok((p.into(), q.into()));
        }
        let a = self.expr(l)?;
        self.skip_ws();
        let op = self.peek().ok_or_else(|| self.error("expected operator"))?;
        if !matches!(op, b'*' | b'\\' | b'/') {
            return Err(self.error("expected `*`, `\\` or `/`"));
        }
        self.pos += 1;
        let b = self.expr(l)?;
        self.skip_ws();
        self.eat(b')')?;
        Ok(match op {
            b'*' => l.mul(&a, &b),
            b'\\' => l.ldiv(&a, &b),
            _ => l.rdiv(&a, &b),
        })
    }

    fn int(&mut self) -> Result<i64, Error> {
        self.skip_ws();
        let start = self.pos;
        if self.peek() == Some(b'-') {
            self.pos += 1;
        }
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| self.error("expected integer"))
    }

    fn lword(&mut self) -> Result<LMltWord<IntPair>, Error> {
        self.skip_ws();
        match self.peek() {
            Some(b'L') => {
                self.pos += 1;
                let start = self.pos;
                // the translation's element is a literal pair
                self.eat(b'(')?;
                let p = self.int()?;
                self.skip_ws();
                self.eat(b',')?;
                let q = self.int()?;
                self.skip_ws();
                self.eat(b')')?;
                let _ = start;
                Ok(LMltWord::translation((p.into(), q.into())))
            }
            Some(b'[') => {
                self.pos += 1;
                let f = self.lword()?;
                self.skip_ws();
                self.eat(b',')?;
                let g = self.lword()?;
                self.skip_ws();
                self.eat(b']')?;
                Ok(LMltWord::commutator(&f, &g))
            }
            _ => Err(self.error("expected `L` or `[`")),
        }
    }
}
