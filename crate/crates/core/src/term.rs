//! Loop words: parsing, printing, components and reduction to Evans normal
//! form, in non-commutative and commutative flavours.
//!
//! A word is a tree over the identity `e`, generators `x1, x2, ...` and the
//! three binary operations `u*v`, `u\v` (left division) and `u/v` (right
//! division). Reduction repeatedly removes forbidden components until the
//! word is reduced; each free-loop element has a unique reduced
//! representative.

use crate::{Error, Mode, Result};
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

/// Syntax tree of a word on the alphabet `x1..xn`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum LoopTerm {
    Identity,
    /// Generator with 1-based index.
    Gen(u8),
    Mul(Box<LoopTerm>, Box<LoopTerm>),
    /// `LDiv(u, v)` is `u \ v`.
    LDiv(Box<LoopTerm>, Box<LoopTerm>),
    /// `RDiv(u, v)` is `u / v`.
    RDiv(Box<LoopTerm>, Box<LoopTerm>),
}

use LoopTerm::*;

impl LoopTerm {
    pub fn mul(a: LoopTerm, b: LoopTerm) -> LoopTerm {
        Mul(Box::new(a), Box::new(b))
    }

    pub fn ldiv(a: LoopTerm, b: LoopTerm) -> LoopTerm {
        LDiv(Box::new(a), Box::new(b))
    }

    pub fn rdiv(a: LoopTerm, b: LoopTerm) -> LoopTerm {
        RDiv(Box::new(a), Box::new(b))
    }

    /// Number of generator occurrences; the identity counts as zero.
    pub fn leaf_count(&self) -> usize {
        match self {
            Identity => 0,
            Gen(_) => 1,
            Mul(a, b) | LDiv(a, b) | RDiv(a, b) => a.leaf_count() + b.leaf_count(),
        }
    }

    /// Largest generator index occurring in the word, 0 for none.
    pub fn max_generator(&self) -> u8 {
        match self {
            Identity => 0,
            Gen(i) => *i,
            Mul(a, b) | LDiv(a, b) | RDiv(a, b) => a.max_generator().max(b.max_generator()),
        }
    }

    fn rank(&self) -> u8 {
        match self {
            Identity => 0,
            Gen(_) => 1,
            Mul(..) => 2,
            LDiv(..) => 3,
            RDiv(..) => 4,
        }
    }

    /// The set of components `Comp(w)`: the word itself, all subwords and `e`.
    pub fn components(&self) -> BTreeSet<LoopTerm> {
        let mut out = BTreeSet::new();
        self.collect_components(&mut out);
        out.insert(Identity);
        out
    }

    fn collect_components(&self, out: &mut BTreeSet<LoopTerm>) {
        match self {
            Identity => {}
            Gen(_) => {
                out.insert(self.clone());
            }
            Mul(a, b) | LDiv(a, b) | RDiv(a, b) => {
                a.collect_components(out);
                b.collect_components(out);
                out.insert(self.clone());
            }
        }
    }
}

/// The fixed total order on words: by leaf count, then constructor rank
/// (`e < x < * < \ < /`), then generator index, then children left-to-right.
/// This is the order `u < v` referenced by the commutative rewrite `uv = vu`.
impl Ord for LoopTerm {
    fn cmp(&self, other: &Self) -> Ordering {
        self.leaf_count()
            .cmp(&other.leaf_count())
            .then_with(|| self.rank().cmp(&other.rank()))
            .then_with(|| match (self, other) {
                (Gen(i), Gen(j)) => i.cmp(j),
                (Mul(a, b), Mul(c, d)) | (LDiv(a, b), LDiv(c, d)) | (RDiv(a, b), RDiv(c, d)) => {
                    a.cmp(c).then_with(|| b.cmp(d))
                }
                _ => Ordering::Equal,
            })
    }
}

impl PartialOrd for LoopTerm {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for LoopTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Identity => write!(f, "e"),
            Gen(i) => write!(f, "x{i}"),
            Mul(a, b) => write!(f, "({a}*{b})"),
            LDiv(a, b) => write!(f, "({a}\\{b})"),
            RDiv(a, b) => write!(f, "({a}/{b})"),
        }
    }
}

/// Parse a word. The three operators have equal precedence and no
/// associativity: nested binary operations must be parenthesized.
pub fn parse(text: &str, alphabet_size: u8) -> Result<LoopTerm> {
    let bytes: Vec<(usize, char)> = text.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let mut p = Parser { input: bytes, pos: 0, alphabet: alphabet_size };
    let t = p.parse_binary()?;
    if p.pos != p.input.len() {
        return Err(p.err("unexpected trailing input"));
    }
    Ok(t)
}

struct Parser {
    input: Vec<(usize, char)>,
    pos: usize,
    alphabet: u8,
}

impl Parser {
    fn err(&self, msg: &str) -> Error {
        let pos = self.input.get(self.pos).map(|(i, _)| *i).unwrap_or_else(|| {
            self.input.last().map(|(i, c)| i + c.len_utf8()).unwrap_or(0)
        });
        Error::Parse { pos, msg: msg.to_string() }
    }

    fn peek(&self) -> Option<char> {
        self.input.get(self.pos).map(|(_, c)| *c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    // atom (op atom)?
    fn parse_binary(&mut self) -> Result<LoopTerm> {
        let a = self.parse_atom()?;
        match self.peek() {
            Some(op @ ('*' | '\\' | '/')) => {
                self.bump();
                let b = self.parse_atom()?;
                Ok(match op {
                    '*' => LoopTerm::mul(a, b),
                    '\\' => LoopTerm::ldiv(a, b),
                    _ => LoopTerm::rdiv(a, b),
                })
            }
            _ => Ok(a),
        }
    }

    fn parse_atom(&mut self) -> Result<LoopTerm> {
        match self.peek() {
            Some('e') => {
                self.bump();
                Ok(Identity)
            }
            Some('x') => {
                self.bump();
                let mut digits = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_digit() {
                        digits.push(c);
                        self.bump();
                    } else {
                        break;
                    }
                }
                if digits.is_empty() {
                    return Err(self.err("expected generator index after 'x'"));
                }
                let index: u32 = digits.parse().map_err(|_| self.err("generator index too large"))?;
                if index == 0 || index > self.alphabet as u32 {
                    return Err(Error::GeneratorOutOfRange { index, alphabet: self.alphabet });
                }
                Ok(Gen(index as u8))
            }
            Some('(') => {
                self.bump();
                let t = self.parse_binary()?;
                if self.bump() != Some(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(t)
            }
            Some(_) => Err(self.err("expected 'e', generator or '('")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// One rewrite applied at the root, if the root is a forbidden component.
///
/// The patterns are exactly the forbidden-component lists: in the
/// non-commutative flavour the division laws plus their derived collapses,
/// in the commutative flavour the twelve-entry table (where every right
/// division rewrites to a left division).
pub fn rewrite_root(w: &LoopTerm, mode: Mode) -> Option<LoopTerm> {
    match mode {
        Mode::NonCommutative => rewrite_root_nc(w),
        Mode::Commutative => rewrite_root_comm(w),
    }
}

fn rewrite_root_nc(w: &LoopTerm) -> Option<LoopTerm> {
    match w {
        Mul(a, b) => {
            if **a == Identity {
                return Some((**b).clone()); // ev = v
            }
            if **b == Identity {
                return Some((**a).clone()); // ue = u
            }
            if let LDiv(c, d) = &**b {
                if a == c {
                    return Some((**d).clone()); // u(u\v) = v
                }
            }
            if let RDiv(c, d) = &**a {
                if d == b {
                    return Some((**c).clone()); // (u/v)v = u
                }
            }
            None
        }
        LDiv(a, b) => {
            if **a == Identity {
                return Some((**b).clone()); // e\v = v
            }
            if a == b {
                return Some(Identity); // v\v = e
            }
            if let Mul(c, d) = &**b {
                if a == c {
                    return Some((**d).clone()); // u\(uv) = v
                }
            }
            if let RDiv(c, d) = &**a {
                if c == b {
                    return Some((**d).clone()); // (u/v)\u = v
                }
            }
            None
        }
        RDiv(a, b) => {
            if **b == Identity {
                return Some((**a).clone()); // u/e = u
            }
            if a == b {
                return Some(Identity); // u/u = e
            }
            if let Mul(c, d) = &**a {
                if d == b {
                    return Some((**c).clone()); // (uv)/v = u
                }
            }
            if let LDiv(c, d) = &**b {
                if d == a {
                    return Some((**c).clone()); // u/(v\u) = v
                }
            }
            None
        }
        _ => None,
    }
}

fn rewrite_root_comm(w: &LoopTerm) -> Option<LoopTerm> {
    match w {
        // u/v = v\u: right division is eliminated entirely.
        RDiv(a, b) => Some(LoopTerm::ldiv((**b).clone(), (**a).clone())),
        Mul(a, b) => {
            if **a == Identity {
                return Some((**b).clone()); // ev = v
            }
            if **b == Identity {
                return Some((**a).clone()); // ue = u
            }
            if let LDiv(c, d) = &**b {
                if a == c {
                    return Some((**d).clone()); // u(u\v) = v
                }
            }
            if let LDiv(c, d) = &**a {
                if c == b {
                    return Some((**d).clone()); // (u\v)u = v
                }
            }
            if a < b {
                return Some(LoopTerm::mul((**b).clone(), (**a).clone())); // uv = vu (u < v)
            }
            None
        }
        LDiv(a, b) => {
            if **a == Identity {
                return Some((**b).clone()); // e\v = v
            }
            if a == b {
                return Some(Identity); // v\v = e
            }
            if let Mul(c, d) = &**b {
                if a == c {
                    return Some((**d).clone()); // u\(uv) = v
                }
                if a == d {
                    return Some((**c).clone()); // v\(uv) = u
                }
            }
            if let LDiv(c, d) = &**a {
                if d == b {
                    return Some((**c).clone()); // (v\u)\u = v
                }
            }
            None
        }
        _ => None,
    }
}

/// True iff no component of `w` is a forbidden pattern of the given mode.
pub fn is_reduced(w: &LoopTerm, mode: Mode) -> bool {
    w.components().iter().all(|c| rewrite_root(c, mode).is_none())
}

/// Reduce a word to its normal form by innermost rewriting.
///
/// The result is reduced, represents the same free-loop element and is
/// idempotent under further reduction.
pub fn reduce(w: &LoopTerm, mode: Mode) -> LoopTerm {
    match w {
        Identity | Gen(_) => w.clone(),
        Mul(a, b) => reduce_root(LoopTerm::mul(reduce(a, mode), reduce(b, mode)), mode),
        LDiv(a, b) => reduce_root(LoopTerm::ldiv(reduce(a, mode), reduce(b, mode)), mode),
        RDiv(a, b) => reduce_root(LoopTerm::rdiv(reduce(a, mode), reduce(b, mode)), mode),
    }
}

// Children are already reduced; drain root redexes.
fn reduce_root(mut w: LoopTerm, mode: Mode) -> LoopTerm {
    while let Some(next) = rewrite_root(&w, mode) {
        // A rule result is either a subterm of a reduced word (already in
        // normal form) or a swapped product whose root must be re-examined.
        w = match &next {
            Mul(..) | LDiv(..) | RDiv(..) => next,
            _ => return next,
        };
    }
    w
}

/// Equality in the free loop (or free commutative loop): compare normal forms.
pub fn equal_in_free_loop(a: &LoopTerm, b: &LoopTerm, mode: Mode) -> bool {
    reduce(a, mode) == reduce(b, mode)
}

/// All reduced words with at most `max_leaves` generator occurrences, in the
/// fixed total order. The identity appears only as the whole word `e`.
///
/// `cap` bounds the number of enumerated words; exceeding it is an error.
pub fn enumerate_reduced(
    alphabet_size: u8,
    max_leaves: usize,
    mode: Mode,
    cap: usize,
) -> Result<Vec<LoopTerm>> {
    // by_leaves[d] = reduced words with exactly d generator leaves (d >= 1).
    let mut by_leaves: Vec<Vec<LoopTerm>> = vec![Vec::new()];
    let mut total = 1usize; // the word `e`
    for d in 1..=max_leaves {
        let mut level = Vec::new();
        if d == 1 {
            for i in 1..=alphabet_size {
                level.push(Gen(i));
            }
        }
        for left in 1..d {
            let right = d - left;
            for a in &by_leaves[left] {
                for b in &by_leaves[right] {
                    for op in [LoopTerm::mul, LoopTerm::ldiv, LoopTerm::rdiv] {
                        let t = op(a.clone(), b.clone());
                        // Children are reduced, so reducedness is a root check.
                        if rewrite_root(&t, mode).is_none() {
                            level.push(t);
                        }
                    }
                }
            }
        }
        total += level.len();
        if total > cap {
            return Err(Error::ResourceCap(format!(
                "enumeration exceeds {cap} words at {d} leaves"
            )));
        }
        by_leaves.push(level);
    }
    let mut out = vec![Identity];
    for level in by_leaves.into_iter().skip(1) {
        out.extend(level);
    }
    out.sort();
    Ok(out)
}

/// Single-step innermost rewriting with an explicit child-visit order;
/// used to cross-check that different maximal strategies agree.
pub fn reduce_innermost(w: &LoopTerm, mode: Mode, left_first: bool) -> LoopTerm {
    let mut cur = w.clone();
    while let Some(next) = step_innermost(&cur, mode, left_first) {
        cur = next;
    }
    cur
}

fn step_innermost(w: &LoopTerm, mode: Mode, left_first: bool) -> Option<LoopTerm> {
    let (a, b, rebuild): (&LoopTerm, &LoopTerm, fn(LoopTerm, LoopTerm) -> LoopTerm) = match w {
        Identity | Gen(_) => return None,
        Mul(a, b) => (a, b, LoopTerm::mul),
        LDiv(a, b) => (a, b, LoopTerm::ldiv),
        RDiv(a, b) => (a, b, LoopTerm::rdiv),
    };
    let (first, second, flip) = if left_first { (a, b, false) } else { (b, a, true) };
    if let Some(t) = step_innermost(first, mode, left_first) {
        return Some(if flip { rebuild(a.clone(), t) } else { rebuild(t, b.clone()) });
    }
    if let Some(t) = step_innermost(second, mode, left_first) {
        return Some(if flip { rebuild(t, b.clone()) } else { rebuild(a.clone(), t) });
    }
    rewrite_root(w, mode)
}
