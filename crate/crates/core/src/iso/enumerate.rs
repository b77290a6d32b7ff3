use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::brute::brute_force_iso_unchecked;
use super::SearchStats;
use crate::axioms::verify_biquandle;
use crate::modiso::next_permutation;
use crate::table::{BiquandleTable, Op};

const UNSET: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EnumerateError {
    OrderZero,
    /// Order above the search budget (3, or 4 when explicitly allowed).
    OverBudget(usize),
}

impl fmt::Display for EnumerateError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EnumerateError::OrderZero => f.write_str("order must be at least 1"),
            EnumerateError::OverBudget(n) => write!(f, "order {n} is outside the enumeration budget"),
        }
    }
}

impl core::error::Error for EnumerateError {}

/// All biquandles of one order and their isomorphism classes.
#[derive(Clone, Debug)]
pub struct Enumeration {
    pub tables: Vec<BiquandleTable>,
    /// Indices into `tables`; each class lists its members ascending and
    /// classes are ordered by first member.
    pub classes: Vec<Vec<usize>>,
    pub stats: SearchStats,
}

struct Partial {
    n: usize,
    up: Vec<usize>,
    down: Vec<usize>,
}

impl Partial {
    fn get(&self, op: Op, a: usize, b: usize) -> Option<usize> {
        let v = match op {
            Op::Up => self.up[a * self.n + b],
            Op::Down => self.down[a * self.n + b],
            _ => unreachable!(),
        };
        (v != UNSET).then_some(v)
    }

    /// Axioms 3.i-3.iii on every triple whose entries are all known.
    fn consistent(&self) -> bool {
        let up = |a, b| self.get(Op::Up, a, b);
        let dn = |a, b| self.get(Op::Down, a, b);
        let n = self.n;
        let clauses = |a: usize, b: usize, c: usize| -> [Option<bool>; 3] {
            [
                (|| Some(up(up(a, b)?, c)? == up(up(a, dn(c, b)?)?, up(b, c)?)?))(),
                (|| Some(dn(dn(c, b)?, a)? == dn(dn(c, up(a, b)?)?, dn(b, a)?)?))(),
                (|| Some(up(dn(b, a)?, dn(c, up(a, b)?)?)? == dn(up(b, c)?, up(a, dn(c, b)?)?)?))(),
            ]
        };
        (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| clauses(a, b, c).iter().all(|r| *r != Some(false)))))
    }

    /// Completes the barred operations by inverting the switch, if it is a
    /// bijection.
    fn complete(&self) -> Option<BiquandleTable> {
        let n = self.n;
        let mut upbar = vec![UNSET; n * n];
        let mut downbar = vec![UNSET; n * n];
        for a in 0..n {
            for b in 0..n {
                let (b2, a2) = (self.down[b * n + a], self.up[a * n + b]);
                if upbar[a2 * n + b2] != UNSET {
                    return None;
                }
                upbar[a2 * n + b2] = a;
                downbar[b2 * n + a2] = b;
            }
        }
        BiquandleTable::from_fn(n, |op, a, b| match op {
            Op::Up => self.up[a * n + b],
            Op::Down => self.down[a * n + b],
            Op::UpBar => upbar[a * n + b],
            Op::DownBar => downbar[a * n + b],
        })
        .ok()
    }
}

fn search(p: &mut Partial, step: usize, perms: &[Vec<usize>], out: &mut Vec<BiquandleTable>, stats: &mut SearchStats) {
    let n = p.n;
    if step == 2 * n {
        if let Some(t) = p.complete() {
            if verify_biquandle(&t).passed() {
                out.push(t);
                return;
            }
        }
        stats.rejected_complete += 1;
        return;
    }
    stats.nodes += 1;
    let col = step / 2;
    for perm in perms {
        stats.candidates += 1;
        let block = if step.is_multiple_of(2) { &mut p.up } else { &mut p.down };
        for a in 0..n {
            block[a * n + col] = perm[a];
        }
        if p.consistent() {
            search(p, step + 1, perms, out, stats);
        } else {
            stats.pruned_conflict += 1;
        }
    }
    let block = if step.is_multiple_of(2) { &mut p.up } else { &mut p.down };
    for a in 0..n {
        block[a * n + col] = UNSET;
    }
}

/// Every biquandle of order `n`, built column by column: each column of the
/// `a^b` and `a_b` blocks is a permutation, partial tables are pruned by
/// the Yang-Baxter clauses, and the barred blocks are recovered by
/// inverting the switch. Order 4 needs `allow_order_four`.
pub fn enumerate_biquandles(n: usize, allow_order_four: bool) -> Result<Enumeration, EnumerateError> {
    match n {
        0 => return Err(EnumerateError::OrderZero),
        1..=3 => {}
        4 if allow_order_four => {}
        _ => return Err(EnumerateError::OverBudget(n)),
    }
    let mut perm: Vec<usize> = (0..n).collect();
    let mut perms = vec![perm.clone()];
    while next_permutation(&mut perm) {
        perms.push(perm.clone());
    }
    let mut partial = Partial { n, up: vec![UNSET; n * n], down: vec![UNSET; n * n] };
    let mut tables = Vec::new();
    let mut stats = SearchStats::default();
    search(&mut partial, 0, &perms, &mut tables, &mut stats);

    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (i, t) in tables.iter().enumerate() {
        let class = classes
            .iter_mut()
            .find(|c| brute_force_iso_unchecked(&tables[c[0]], t).witness.is_some());
        match class {
            Some(c) => c.push(i),
            None => classes.push(vec![i]),
        }
    }
    Ok(Enumeration { tables, classes, stats })
}
