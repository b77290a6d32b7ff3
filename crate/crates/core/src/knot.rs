//! Signed Gauss codes of virtual knots and the counting invariant
//! `|Hom(B(K), T)|`.
//!
//! Semi-arc `i` runs from passage `i` to passage `i + 1` (cyclically), so a
//! code with `c` classical crossings has `2c` semi-arcs; virtual crossings
//! are not recorded and never cut a semi-arc. At a crossing the inbound
//! semi-arcs determine the outbound ones:
//!
//! ```text
//! positive:  under_out = under_in ^ over_in    over_out = over_in _ under_in
//! negative:  under_out = under_in ^̄ over_in    over_out = over_in _̄ under_in
//! ```

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::axioms::verify_biquandle;
use crate::table::{BiquandleTable, Op};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Passage {
    Over,
    Under,
}

impl Passage {
    fn other(self) -> Self {
        match self {
            Passage::Over => Passage::Under,
            Passage::Under => Passage::Over,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn flipped(self) -> Self {
        match self {
            Sign::Positive => Sign::Negative,
            Sign::Negative => Sign::Positive,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Token {
    pub passage: Passage,
    pub label: u32,
    pub sign: Sign,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = if self.passage == Passage::Over { 'O' } else { 'U' };
        let s = if self.sign == Sign::Positive { '+' } else { '-' };
        write!(f, "{p}{}{s}", self.label)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum KnotError {
    /// Token `position` (1-based) is not of the form `[OU]<label><sign>`.
    Malformed { position: usize, token: String },
    /// A label does not occur exactly twice.
    LabelCount { label: u32, count: usize },
    /// Both passages of a label are over, or both under.
    RepeatedPassage { label: u32 },
    SignMismatch { label: u32 },
    /// The target table fails the biquandle axioms.
    InvalidTarget,
    /// A braid generator outside `±1..±(strands-1)`.
    BraidGenerator { generator: i32 },
    /// The braid closure has more than one component.
    NotAKnot { components: usize },
}

impl fmt::Display for KnotError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KnotError::Malformed { position, token } => {
                write!(f, "token {position} ({token:?}) is not of the form [OU]<label><+|->")
            }
            KnotError::LabelCount { label, count } => {
                write!(f, "label {label} occurs {count} times, expected 2")
            }
            KnotError::RepeatedPassage { label } => {
                write!(f, "label {label} needs one over and one under passage")
            }
            KnotError::SignMismatch { label } => write!(f, "label {label} has inconsistent signs"),
            KnotError::InvalidTarget => f.write_str("target table is not a biquandle"),
            KnotError::BraidGenerator { generator } => write!(f, "invalid braid generator {generator}"),
            KnotError::NotAKnot { components } => {
                write!(f, "braid closure has {components} components")
            }
        }
    }
}

impl core::error::Error for KnotError {}

/// A validated signed Gauss code: every label occurs once over and once
/// under, with the same sign.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct GaussCode {
    tokens: Vec<Token>,
}

impl GaussCode {
    pub fn new(tokens: Vec<Token>) -> Result<Self, KnotError> {
        let mut labels: Vec<u32> = tokens.iter().map(|t| t.label).collect();
        labels.sort_unstable();
        labels.dedup();
        for label in labels {
            let occ: Vec<&Token> = tokens.iter().filter(|t| t.label == label).collect();
            if occ.len() != 2 {
                return Err(KnotError::LabelCount { label, count: occ.len() });
            }
            if occ[0].passage == occ[1].passage {
                return Err(KnotError::RepeatedPassage { label });
            }
            if occ[0].sign != occ[1].sign {
                return Err(KnotError::SignMismatch { label });
            }
        }
        Ok(GaussCode { tokens })
    }

    /// The zero-crossing unknot.
    pub fn unknot() -> Self {
        GaussCode::default()
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn crossing_count(&self) -> usize {
        self.tokens.len() / 2
    }

    fn fresh_label(&self) -> u32 {
        self.tokens.iter().map(|t| t.label).max().unwrap_or(0) + 1
    }

    /// The same knot traversed from token `k` on.
    pub fn rotated(&self, k: usize) -> Self {
        let mut tokens = self.tokens.clone();
        if !tokens.is_empty() {
            let len = tokens.len();
            tokens.rotate_left(k % len);
        }
        GaussCode { tokens }
    }

    /// Inserts a one-crossing kink before token `position`: passages
    /// `first` then the other one, both with `sign`.
    pub fn with_kink(&self, position: usize, first: Passage, sign: Sign) -> Self {
        let label = self.fresh_label();
        let mut tokens = self.tokens.clone();
        let p = position.min(tokens.len());
        tokens.insert(p, Token { passage: first.other(), label, sign });
        tokens.insert(p, Token { passage: first, label, sign });
        GaussCode { tokens }
    }

    /// Inserts a pair of crossings `a`, `b` of opposite signs: two over
    /// passages before token `over_at` and two under passages before token
    /// `under_at` (positions in the original code), the under strand
    /// meeting them in the same order when `same_direction`.
    pub fn with_bigon(&self, over_at: usize, under_at: usize, same_direction: bool, sign_a: Sign) -> Self {
        let a = self.fresh_label();
        let b = a + 1;
        let tok = |passage, label, sign| Token { passage, label, sign };
        let sign_b = sign_a.flipped();
        let overs = [tok(Passage::Over, a, sign_a), tok(Passage::Over, b, sign_b)];
        let unders = if same_direction {
            [tok(Passage::Under, a, sign_a), tok(Passage::Under, b, sign_b)]
        } else {
            [tok(Passage::Under, b, sign_b), tok(Passage::Under, a, sign_a)]
        };
        let len = self.tokens.len();
        let (p, q) = (over_at.min(len), under_at.min(len));
        let mut tokens = Vec::with_capacity(len + 4);
        for i in 0..=len {
            if i == p {
                tokens.extend_from_slice(&overs);
            }
            if i == q {
                tokens.extend_from_slice(&unders);
            }
            if i < len {
                tokens.push(self.tokens[i]);
            }
        }
        GaussCode { tokens }
    }

    /// Gauss code of the closure of a braid on `strands` strands. Generator
    /// `i > 0` crosses positions `i-1` and `i` with the strand moving right
    /// passing under (a positive crossing); `-i` is its inverse.
    pub fn from_braid(strands: usize, word: &[i32]) -> Result<Self, KnotError> {
        for &g in word {
            if g == 0 || g.unsigned_abs() as usize >= strands {
                return Err(KnotError::BraidGenerator { generator: g });
            }
        }
        let mut tokens = Vec::new();
        let mut pos = 0usize;
        let mut passes = 0;
        loop {
            for (c, &g) in word.iter().enumerate() {
                let i = g.unsigned_abs() as usize;
                let sign = if g > 0 { Sign::Positive } else { Sign::Negative };
                let moving_right = if pos + 1 == i {
                    true
                } else if pos == i {
                    false
                } else {
                    continue;
                };
                let under = moving_right == (sign == Sign::Positive);
                let passage = if under { Passage::Under } else { Passage::Over };
                tokens.push(Token { passage, label: c as u32 + 1, sign });
                pos = if moving_right { i } else { i - 1 };
            }
            passes += 1;
            if pos == 0 {
                break;
            }
        }
        if passes != strands {
            // each pass visits one strand position; a knot visits them all
            let mut seen = vec![false; strands];
            let mut components = 0;
            for start in 0..strands {
                if seen[start] {
                    continue;
                }
                components += 1;
                let mut p = start;
                loop {
                    seen[p] = true;
                    for &g in word {
                        let i = g.unsigned_abs() as usize;
                        if p + 1 == i {
                            p = i;
                        } else if p == i {
                            p = i - 1;
                        }
                    }
                    if p == start {
                        break;
                    }
                }
            }
            return Err(KnotError::NotAKnot { components });
        }
        GaussCode::new(tokens)
    }
}

impl fmt::Display for GaussCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tokens.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

fn parse_token(raw: &str, position: usize) -> Result<Token, KnotError> {
    let malformed = || KnotError::Malformed { position, token: raw.to_string() };
    let mut chars = raw.chars();
    let passage = match chars.next() {
        Some('O' | 'o') => Passage::Over,
        Some('U' | 'u') => Passage::Under,
        _ => return Err(malformed()),
    };
    let rest = chars.as_str();
    let sign = match rest.chars().last() {
        Some('+') => Sign::Positive,
        Some('-') => Sign::Negative,
        _ => return Err(malformed()),
    };
    let digits = &rest[..rest.len() - 1];
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(malformed());
    }
    let label: u32 = digits.parse().map_err(|_| malformed())?;
    if label == 0 {
        return Err(malformed());
    }
    Ok(Token { passage, label, sign })
}

impl FromStr for GaussCode {
    type Err = KnotError;

    /// Comma-separated `[OU]<label><+|->` tokens; the empty string is the
    /// zero-crossing unknot.
    fn from_str(s: &str) -> Result<Self, KnotError> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(GaussCode::unknot());
        }
        let tokens = s
            .split(',')
            .enumerate()
            .map(|(i, raw)| parse_token(raw.trim(), i + 1))
            .collect::<Result<Vec<_>, _>>()?;
        GaussCode::new(tokens)
    }
}

/// A classical crossing and the semi-arcs around it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Crossing {
    pub label: u32,
    pub sign: Sign,
    pub under_in: usize,
    pub over_in: usize,
    pub under_out: usize,
    pub over_out: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Diagram {
    /// In order of first appearance along the code.
    pub crossings: Vec<Crossing>,
    pub semi_arcs: usize,
}

/// Cuts the traversal at every classical passage.
pub fn build_diagram(code: &GaussCode) -> Diagram {
    let tokens = code.tokens();
    let len = tokens.len();
    if len == 0 {
        return Diagram { crossings: Vec::new(), semi_arcs: 1 };
    }
    let mut crossings: Vec<Crossing> = Vec::new();
    for (p, tok) in tokens.iter().enumerate() {
        let (inc, out) = ((p + len - 1) % len, p);
        let idx = match crossings.iter().position(|c| c.label == tok.label) {
            Some(i) => i,
            None => {
                crossings.push(Crossing {
                    label: tok.label,
                    sign: tok.sign,
                    under_in: 0,
                    over_in: 0,
                    under_out: 0,
                    over_out: 0,
                });
                crossings.len() - 1
            }
        };
        let c = &mut crossings[idx];
        match tok.passage {
            Passage::Over => (c.over_in, c.over_out) = (inc, out),
            Passage::Under => (c.under_in, c.under_out) = (inc, out),
        }
    }
    Diagram { crossings, semi_arcs: len }
}

/// Outbound values `(under_out, over_out)` at a crossing.
#[inline]
pub fn crossing_outputs(target: &BiquandleTable, sign: Sign, under_in: usize, over_in: usize) -> (usize, usize) {
    match sign {
        Sign::Positive => (target.get(Op::Up, under_in, over_in), target.get(Op::Down, over_in, under_in)),
        Sign::Negative => (target.get(Op::UpBar, under_in, over_in), target.get(Op::DownBar, over_in, under_in)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomCountReport {
    pub count: u64,
    /// Order of the target.
    pub order: usize,
    pub semi_arcs: usize,
    /// Every consistent labelling of the semi-arcs, when requested.
    pub assignments: Option<Vec<Vec<usize>>>,
}

const UNSET: usize = usize::MAX;

struct Counter<'a> {
    diagram: &'a Diagram,
    target: &'a BiquandleTable,
    /// For each sign, `(under_out, over_out) -> (under_in, over_in)`.
    inverse: [Vec<(usize, usize)>; 2],
    touching: Vec<Vec<usize>>,
    vals: Vec<usize>,
    trail: Vec<usize>,
    pending: Vec<(usize, usize)>,
    count: u64,
    keep: Option<Vec<Vec<usize>>>,
}

impl Counter<'_> {
    fn propagate(&mut self, arc: usize, v: usize) -> bool {
        self.pending.clear();
        self.pending.push((arc, v));
        while let Some((arc, v)) = self.pending.pop() {
            if self.vals[arc] != UNSET {
                if self.vals[arc] != v {
                    return false;
                }
                continue;
            }
            self.vals[arc] = v;
            self.trail.push(arc);
            for &ci in &self.touching[arc] {
                let c = self.diagram.crossings[ci];
                let (ui, oi, uo, oo) =
                    (self.vals[c.under_in], self.vals[c.over_in], self.vals[c.under_out], self.vals[c.over_out]);
                if ui != UNSET && oi != UNSET {
                    let (a, b) = crossing_outputs(self.target, c.sign, ui, oi);
                    self.pending.push((c.under_out, a));
                    self.pending.push((c.over_out, b));
                } else if uo != UNSET && oo != UNSET {
                    let n = self.target.order();
                    let (a, b) = self.inverse[(c.sign == Sign::Negative) as usize][uo * n + oo];
                    self.pending.push((c.under_in, a));
                    self.pending.push((c.over_in, b));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let arc = self.trail.pop().unwrap();
            self.vals[arc] = UNSET;
        }
    }

    fn run(&mut self, next: usize) {
        let Some(arc) = (next..self.vals.len()).find(|&a| self.vals[a] == UNSET) else {
            self.count += 1;
            if let Some(keep) = &mut self.keep {
                keep.push(self.vals.clone());
            }
            return;
        };
        for v in 0..self.target.order() {
            let mark = self.trail.len();
            if self.propagate(arc, v) {
                self.run(arc + 1);
            }
            self.undo(mark);
        }
    }
}

/// `|Hom(B(K), target)|` for the knot of `diagram`.
pub fn count_homs(diagram: &Diagram, target: &BiquandleTable) -> Result<HomCountReport, KnotError> {
    count_homs_with(diagram, target, false)
}

/// [`count_homs`], optionally keeping every labelling.
pub fn count_homs_with(
    diagram: &Diagram,
    target: &BiquandleTable,
    keep_assignments: bool,
) -> Result<HomCountReport, KnotError> {
    if !verify_biquandle(target).passed() {
        return Err(KnotError::InvalidTarget);
    }
    let n = target.order();
    let mut inverse = [vec![(0, 0); n * n], vec![(0, 0); n * n]];
    for (k, sign) in [Sign::Positive, Sign::Negative].into_iter().enumerate() {
        for ui in 0..n {
            for oi in 0..n {
                let (uo, oo) = crossing_outputs(target, sign, ui, oi);
                inverse[k][uo * n + oo] = (ui, oi);
            }
        }
    }
    let mut touching = vec![Vec::new(); diagram.semi_arcs];
    for (i, c) in diagram.crossings.iter().enumerate() {
        for arc in [c.under_in, c.over_in, c.under_out, c.over_out] {
            if !touching[arc].contains(&i) {
                touching[arc].push(i);
            }
        }
    }
    let mut counter = Counter {
        diagram,
        target,
        inverse,
        touching,
        vals: vec![UNSET; diagram.semi_arcs],
        trail: Vec::new(),
        pending: Vec::new(),
        count: 0,
        keep: keep_assignments.then(Vec::new),
    };
    counter.run(0);
    Ok(HomCountReport {
        count: counter.count,
        order: n,
        semi_arcs: diagram.semi_arcs,
        assignments: counter.keep,
    })
}

/// One pair of diagrams related by a Reidemeister move.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MoveCheck {
    pub name: &'static str,
    pub before: GaussCode,
    pub after: GaussCode,
    pub count_before: u64,
    pub count_after: u64,
}

impl MoveCheck {
    pub fn holds(&self) -> bool {
        self.count_before == self.count_after
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReidemeisterReport {
    pub checks: Vec<MoveCheck>,
}

impl ReidemeisterReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(MoveCheck::holds)
    }
}

/// The curated move-related pairs used by [`reidemeister_suite`].
pub fn curated_move_pairs() -> Vec<(&'static str, GaussCode, GaussCode)> {
    let code = |s: &str| s.parse::<GaussCode>().expect("curated code");
    let braid = |k, w: &[i32]| GaussCode::from_braid(k, w).expect("curated braid");
    let trefoil = braid(2, &[1, 1, 1]);
    vec![
        ("R1 positive kink, over first", GaussCode::unknot(), code("O1+,U1+")),
        ("R1 positive kink, under first", GaussCode::unknot(), code("U1+,O1+")),
        ("R1 negative kink, over first", GaussCode::unknot(), code("O1-,U1-")),
        ("R1 negative kink, under first", GaussCode::unknot(), code("U1-,O1-")),
        ("R2 parallel bigon", GaussCode::unknot(), code("O1+,O2-,U1+,U2-")),
        ("R2 antiparallel bigon", GaussCode::unknot(), code("O1+,O2-,U2-,U1+")),
        ("R2 on the trefoil", trefoil.clone(), trefoil.with_bigon(1, 4, true, Sign::Positive)),
        ("R1 stabilized trefoil", trefoil.clone(), braid(3, &[1, 1, 1, 2])),
        ("R3 positive triangle", braid(3, &[1, 1, 1, 2, 1, -1]), braid(3, &[1, 1, 2, 1, 2, -1])),
        ("R3 negative triangle", braid(3, &[-1, -1, -1, -2, -1, 1]), braid(3, &[-1, -1, -2, -1, -2, 1])),
        ("R3 mixed triangle", braid(3, &[1, 2, -1, 2]), braid(3, &[-2, 1, 2, 2])),
        ("rotation of the figure eight", braid(3, &[1, -2, 1, -2]), braid(3, &[1, -2, 1, -2]).rotated(3)),
    ]
}

/// Counts homomorphisms into `target` on both sides of every curated move.
pub fn reidemeister_suite(target: &BiquandleTable) -> Result<ReidemeisterReport, KnotError> {
    let mut checks = Vec::new();
    for (name, before, after) in curated_move_pairs() {
        let count_before = count_homs(&build_diagram(&before), target)?.count;
        let count_after = count_homs(&build_diagram(&after), target)?.count;
        checks.push(MoveCheck { name, before, after, count_before, count_after });
    }
    Ok(ReidemeisterReport { checks })
}
