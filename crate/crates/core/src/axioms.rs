//! Exhaustive checks of the biquandle axioms and of the switch
//! `S(a, b) = (b_a, a^b)`.
//!
//! Composite exponents read left to right: `a^{bc}` is `(a^b)^c`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::table::{BiquandleTable, Element, Op};

/// A numbered clause, e.g. `3.iv`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AxiomId {
    pub axiom: u8,
    pub clause: u8,
}

impl AxiomId {
    pub const fn new(axiom: u8, clause: u8) -> Self {
        AxiomId { axiom, clause }
    }
}

impl fmt::Display for AxiomId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        const ROMAN: [&str; 7] = ["?", "i", "ii", "iii", "iv", "v", "vi"];
        let c = ROMAN.get(self.clause as usize).copied().unwrap_or("?");
        write!(f, "{}.{}", self.axiom, c)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ViolationKind {
    /// An identity fails; witness is the argument tuple.
    Equation,
    /// No element satisfies the clauses of an existence group up to and
    /// including this one; witness is the given elements.
    NoSolution,
    /// Several elements satisfy the whole group; witness is the given
    /// elements followed by the solutions.
    MultipleSolutions,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Violation {
    pub axiom: AxiomId,
    pub kind: ViolationKind,
    pub witness: Vec<Element>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            ViolationKind::Equation => "fails",
            ViolationKind::NoSolution => "has no solution",
            ViolationKind::MultipleSolutions => "has several solutions",
        };
        write!(f, "axiom {} {kind} at (", self.axiom)?;
        for (i, e) in self.witness.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{e}")?;
        }
        f.write_str(")")
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn fails(&self, id: AxiomId) -> bool {
        self.violations.iter().any(|v| v.axiom == id)
    }
}

fn els(xs: &[usize]) -> Vec<Element> {
    xs.iter().map(|&x| Element::from_index(x)).collect()
}

/// Runs the progressive filter of one existence-and-uniqueness group: each
/// clause narrows the candidate set in order; the clause at which it becomes
/// empty is reported.
fn solve_group<const N: usize>(
    n: usize,
    first_clause: u8,
    axiom: u8,
    clauses: [&dyn Fn(usize) -> bool; N],
    given: &[usize],
    out: &mut Vec<Violation>,
) {
    let mut candidates: Vec<usize> = (0..n).collect();
    for (i, clause) in clauses.iter().enumerate() {
        candidates.retain(|&x| clause(x));
        if candidates.is_empty() {
            out.push(Violation {
                axiom: AxiomId::new(axiom, first_clause + i as u8),
                kind: ViolationKind::NoSolution,
                witness: els(given),
            });
            return;
        }
    }
    if candidates.len() > 1 {
        let mut w = given.to_vec();
        w.extend_from_slice(&candidates);
        out.push(Violation {
            axiom: AxiomId::new(axiom, first_clause + N as u8 - 1),
            kind: ViolationKind::MultipleSolutions,
            witness: els(&w),
        });
    }
}

/// Checks every clause of axioms 1-4 by enumeration and reports all
/// violations.
pub fn verify_biquandle(table: &BiquandleTable) -> AxiomReport {
    let n = table.order();
    let up = |a, b| table.get(Op::Up, a, b);
    let dn = |a, b| table.get(Op::Down, a, b);
    let upb = |a, b| table.get(Op::UpBar, a, b);
    let dnb = |a, b| table.get(Op::DownBar, a, b);
    let mut out = Vec::new();
    let mut eq = |holds: bool, axiom: u8, clause: u8, w: &[usize]| {
        if !holds {
            out.push(Violation {
                axiom: AxiomId::new(axiom, clause),
                kind: ViolationKind::Equation,
                witness: els(w),
            });
        }
    };

    for a in 0..n {
        for b in 0..n {
            eq(upb(up(a, b), dn(b, a)) == a, 1, 1, &[a, b]);
            eq(dnb(dn(b, a), up(a, b)) == b, 1, 2, &[a, b]);
            eq(up(upb(a, b), dnb(b, a)) == a, 1, 3, &[a, b]);
            eq(dn(dnb(b, a), upb(a, b)) == b, 1, 4, &[a, b]);
        }
    }

    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let w = [a, b, c];
                eq(up(up(a, b), c) == up(up(a, dn(c, b)), up(b, c)), 3, 1, &w);
                eq(dn(dn(c, b), a) == dn(dn(c, up(a, b)), dn(b, a)), 3, 2, &w);
                eq(
                    up(dn(b, a), dn(c, up(a, b))) == dn(up(b, c), up(a, dn(c, b))),
                    3,
                    3,
                    &w,
                );
                eq(upb(upb(a, b), c) == upb(upb(a, dnb(c, b)), upb(b, c)), 3, 4, &w);
                eq(dnb(dnb(c, b), a) == dnb(dnb(c, upb(a, b)), dnb(b, a)), 3, 5, &w);
                eq(
                    upb(dnb(b, a), dnb(c, upb(a, b))) == dnb(upb(b, c), upb(a, dnb(c, b))),
                    3,
                    6,
                    &w,
                );
            }
        }
    }

    for a in 0..n {
        for b in 0..n {
            solve_group(
                n,
                1,
                2,
                [
                    &|x| x == up(a, dnb(b, x)),
                    &|x| a == upb(x, b),
                    &|x| b == dn(dnb(b, x), a),
                ],
                &[a, b],
                &mut out,
            );
            solve_group(
                n,
                4,
                2,
                [
                    &|y| y == upb(a, dn(b, y)),
                    &|y| a == up(y, b),
                    &|y| b == dnb(dn(b, y), a),
                ],
                &[a, b],
                &mut out,
            );
        }
    }

    for a in 0..n {
        solve_group(n, 1, 4, [&|x| x == dn(a, x), &|x| a == up(x, a)], &[a], &mut out);
        solve_group(n, 3, 4, [&|y| y == upb(a, y), &|y| a == dnb(y, a)], &[a], &mut out);
    }

    out.sort_by_key(|x| x.axiom);
    AxiomReport { violations: out }
}

/// `S(a, b) = (b_a, a^b)`.
#[inline]
fn switch(t: &BiquandleTable, a: usize, b: usize) -> (usize, usize) {
    (t.get(Op::Down, b, a), t.get(Op::Up, a, b))
}

/// True iff the switch is a bijection of pairs and satisfies the
/// set-theoretic Yang-Baxter equation on every triple.
pub fn yang_baxter_check(table: &BiquandleTable) -> bool {
    let n = table.order();
    let mut seen = vec![false; n * n];
    for a in 0..n {
        for b in 0..n {
            let (x, y) = switch(table, a, b);
            if core::mem::replace(&mut seen[x * n + y], true) {
                return false;
            }
        }
    }
    let s12 = |(a, b, c): (usize, usize, usize)| {
        let (x, y) = switch(table, a, b);
        (x, y, c)
    };
    let s23 = |(a, b, c): (usize, usize, usize)| {
        let (y, z) = switch(table, b, c);
        (a, y, z)
    };
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let t = (a, b, c);
                if s12(s23(s12(t))) != s23(s12(s23(t))) {
                    return false;
                }
            }
        }
    }
    true
}
