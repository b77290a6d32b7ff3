//! Isomorphism of Alexander biquandles through the `(1-st)`-submodule.
//!
//! Write `N = (1-st)M` and fix the transversal `A` of `M/N` from
//! [`FiniteModule::transversal`]. An isomorphism fixing 0 is determined by a
//! module isomorphism `h: N -> N'` and the images `k(α)` of the
//! representatives, via `f(α + ω) = k(α) + h(ω)`. Such a pair assembles to
//! an isomorphism exactly when
//!
//! * `k(0) = 0` and `k(A)` meets every coset of `N'` once,
//! * `(1-s't') k(α) = h((1-st) α)` for every `α ∈ A`,
//! * `s' k(α) = k(β) + h(ω)` where `s α = β + ω`, `β ∈ A`, `ω ∈ N`.
//!
//! The last condition is `f(sα) = s' f(α)`; the other operations follow from
//! it and the first two.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::{IsoError, SearchStats};
use crate::alexander::{alexander_table, normalize_iso};
use crate::modiso::{module_isomorphisms, ModuleIso};
use crate::module::{ElementOrder, FiniteModule, Transversal};
use crate::table::{is_bijection, is_homomorphism, BiquandleTable};

const UNSET: usize = usize::MAX;

/// Data of an Alexander biquandle isomorphism fixing 0. Elements are
/// module codes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoWitness {
    /// Module isomorphism `(1-st)M -> (1-s't')M'`.
    pub h: ModuleIso,
    /// The transversal `A`, ascending, `reps[0] = 0`.
    pub reps: Vec<usize>,
    /// `k[i]` is the image of `reps[i]`.
    pub k: Vec<usize>,
    /// `f` restricted to `O_s(A)`, as `(x, f(x))` pairs.
    pub g: Vec<(usize, usize)>,
    /// The full map, `f[x]` the image of `x`.
    pub f: Vec<usize>,
}

/// A violated `s`-closure condition `s' k(α) = k(β) + h(ω)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ClosureFailure {
    pub alpha: usize,
    pub beta: usize,
    pub omega: usize,
    /// `s' k(α)`
    pub via_action: usize,
    /// `k(β) + h(ω)`
    pub via_translation: usize,
}

/// Which property of an extracted witness failed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WitnessCondition {
    /// The restriction to `N` is not a module isomorphism onto `N'`.
    ModuleIso,
    /// `(1-s't') k(α) != h((1-st) α)`.
    Fiber { alpha: usize },
    /// `k(A)` is not a transversal of `M'/N'`.
    TransversalImage,
    /// `g(sα + ω) != s' g(α) + h(ω)` for an orbit element `sα + ω`.
    OrbitRelation { alpha: usize, omega: usize },
    Closure(ClosureFailure),
    /// Reassembling `f` from `(h, k)` does not reproduce it.
    Reassembly,
}

impl fmt::Display for WitnessCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WitnessCondition::ModuleIso => f.write_str("restriction to (1-st)M is not a module isomorphism"),
            WitnessCondition::Fiber { alpha } => write!(f, "(1-st) k({alpha}) != h((1-st) {alpha})"),
            WitnessCondition::TransversalImage => f.write_str("k(A) is not a transversal"),
            WitnessCondition::OrbitRelation { alpha, omega } => {
                write!(f, "g(s {alpha} + {omega}) != s g({alpha}) + h({omega})")
            }
            WitnessCondition::Closure(c) => write!(
                f,
                "s k({}) = {} but k({}) + h({}) = {}",
                c.alpha, c.via_action, c.beta, c.omega, c.via_translation
            ),
            WitnessCondition::Reassembly => f.write_str("f(α + ω) != k(α) + h(ω)"),
        }
    }
}

/// `{ y ∈ M' : (1-s't') y = h((1-st) α) }`.
pub fn k_candidates(src: &FiniteModule, dst: &FiniteModule, h: &ModuleIso, alpha: usize) -> Vec<usize> {
    let Some(target) = h.apply(src.one_minus_st(alpha)) else {
        return Vec::new();
    };
    (0..dst.size()).filter(|&y| dst.one_minus_st(y) == target).collect()
}

/// Checks `s' k(α) = k(β) + h(ω)` for every representative whose `k(α)`
/// and `k(β)` are both set (`UNSET` marks missing values).
fn closure_partial(
    src: &FiniteModule,
    dst: &FiniteModule,
    tr: &Transversal,
    h: &ModuleIso,
    k: &[usize],
) -> Result<(), ClosureFailure> {
    for (i, &alpha) in tr.reps.iter().enumerate() {
        if k[i] == UNSET {
            continue;
        }
        let sa = src.s(alpha);
        let j = tr.coset(sa);
        if k[j] == UNSET {
            continue;
        }
        let beta = tr.reps[j];
        let omega = src.sub(sa, beta);
        let via_action = dst.s(k[i]);
        let via_translation = dst.add(k[j], h.apply(omega).expect("ω lies in (1-st)M"));
        if via_action != via_translation {
            return Err(ClosureFailure { alpha, beta, omega, via_action, via_translation });
        }
    }
    Ok(())
}

/// Checks the `s`-closure condition for a complete assignment `k` on
/// `tr.reps`.
pub fn check_closure(
    src: &FiniteModule,
    dst: &FiniteModule,
    tr: &Transversal,
    h: &ModuleIso,
    k: &[usize],
) -> Result<(), ClosureFailure> {
    assert_eq!(k.len(), tr.reps.len(), "k must assign every representative");
    closure_partial(src, dst, tr, h, k)
}

/// `f(α + ω) = k(α) + h(ω)`.
pub fn assemble(src: &FiniteModule, dst: &FiniteModule, tr: &Transversal, h: &ModuleIso, k: &[usize]) -> Vec<usize> {
    (0..src.size())
        .map(|x| {
            let c = tr.coset(x);
            let omega = src.sub(x, tr.reps[c]);
            dst.add(k[c], h.apply(omega).expect("ω lies in (1-st)M"))
        })
        .collect()
}

fn orbit_restriction(tr: &Transversal, f: &[usize]) -> Vec<(usize, usize)> {
    tr.orbit.iter().map(|&x| (x, f[x])).collect()
}

fn is_iso(b1: &BiquandleTable, b2: &BiquandleTable, f: &[usize]) -> bool {
    is_bijection(f, b2.order()) && is_homomorphism(b1, b2, f).unwrap_or(false)
}

struct KSearch<'a> {
    src: &'a FiniteModule,
    dst: &'a FiniteModule,
    tr: &'a Transversal,
    tr2: &'a Transversal,
    h: &'a ModuleIso,
    fibers: Vec<Vec<usize>>,
    k: Vec<usize>,
    coset_used: Vec<bool>,
    tables: (&'a BiquandleTable, &'a BiquandleTable),
    stats: &'a mut SearchStats,
}

impl KSearch<'_> {
    fn run(&mut self, i: usize) -> Option<Vec<usize>> {
        if i == self.tr.reps.len() {
            let f = assemble(self.src, self.dst, self.tr, self.h, &self.k);
            if is_iso(self.tables.0, self.tables.1, &f) {
                return Some(f);
            }
            self.stats.rejected_complete += 1;
            return None;
        }
        self.stats.nodes += 1;
        for c in 0..self.fibers[i].len() {
            let y = self.fibers[i][c];
            self.stats.candidates += 1;
            let coset = self.tr2.coset(y);
            if self.coset_used[coset] {
                self.stats.pruned_collision += 1;
                continue;
            }
            self.k[i] = y;
            if closure_partial(self.src, self.dst, self.tr, self.h, &self.k).is_err() {
                self.stats.pruned_conflict += 1;
                self.k[i] = UNSET;
                continue;
            }
            self.coset_used[coset] = true;
            let found = self.run(i + 1);
            self.coset_used[coset] = false;
            self.k[i] = UNSET;
            if found.is_some() {
                return found;
            }
        }
        None
    }
}

/// Decides isomorphism of the Alexander biquandles of `src` and `dst` by
/// searching over `(h, k)` pairs; module isomorphisms and representative
/// images are tried in ascending order, so the witness is reproducible.
pub fn structural_iso(src: &FiniteModule, dst: &FiniteModule) -> (Option<IsoWitness>, SearchStats) {
    let mut stats = SearchStats::default();
    if src.size() != dst.size() {
        return (None, stats);
    }
    let (n, n2) = (src.one_minus_st_submodule(), dst.one_minus_st_submodule());
    if n.len() != n2.len() {
        return (None, stats);
    }
    let tr = src.transversal(&n);
    let tr2 = dst.transversal(&n2);
    let b1 = alexander_table(src, ElementOrder::Canonical);
    let b2 = alexander_table(dst, ElementOrder::Canonical);

    for h in module_isomorphisms(src, &n, dst, &n2) {
        let fibers: Vec<Vec<usize>> = tr.reps.iter().map(|&a| k_candidates(src, dst, &h, a)).collect();
        let mut k = vec![UNSET; tr.len()];
        k[0] = 0;
        let mut coset_used = vec![false; tr2.len()];
        coset_used[0] = true;
        let mut search = KSearch {
            src,
            dst,
            tr: &tr,
            tr2: &tr2,
            h: &h,
            fibers,
            k,
            coset_used,
            tables: (&b1, &b2),
            stats: &mut stats,
        };
        // k(0) = 0 is forced; its closure condition is s' 0 = 0 + h(0).
        if let Some(f) = search.run(1) {
            let k = tr.reps.iter().map(|&a| f[a]).collect();
            let g = orbit_restriction(&tr, &f);
            return (Some(IsoWitness { h, reps: tr.reps.clone(), k, g, f }), stats);
        }
    }
    (None, stats)
}

/// Normalizes a biquandle isomorphism `f` (canonical indices) to fix 0,
/// splits it into `(h, k)` and checks every condition a genuine isomorphism
/// must satisfy.
pub fn extract_witness(src: &FiniteModule, dst: &FiniteModule, f: &[usize]) -> Result<IsoWitness, IsoError> {
    let f = normalize_iso(src, dst, f)?;
    let fail = |c| Err(IsoError::Condition(c));
    let (n, n2) = (src.one_minus_st_submodule(), dst.one_minus_st_submodule());
    let h = ModuleIso::from_pairs(n.elements().iter().map(|&x| (x, f[x])).collect());
    if !h.is_valid(src, &n, dst, &n2) {
        return fail(WitnessCondition::ModuleIso);
    }
    let tr = src.transversal(&n);
    let tr2 = dst.transversal(&n2);
    let k: Vec<usize> = tr.reps.iter().map(|&a| f[a]).collect();
    for &alpha in &tr.reps {
        if dst.one_minus_st(f[alpha]) != h.apply(src.one_minus_st(alpha)).unwrap() {
            return fail(WitnessCondition::Fiber { alpha });
        }
    }
    let mut hit = vec![false; tr2.len()];
    for &y in &k {
        if core::mem::replace(&mut hit[tr2.coset(y)], true) {
            return fail(WitnessCondition::TransversalImage);
        }
    }
    let in_orbit = |x: usize| tr.orbit.binary_search(&x).is_ok();
    for &alpha in &tr.reps {
        for &omega in n.elements() {
            let x = src.add(src.s(alpha), omega);
            if in_orbit(x) && f[x] != dst.add(dst.s(f[alpha]), h.apply(omega).unwrap()) {
                return fail(WitnessCondition::OrbitRelation { alpha, omega });
            }
        }
    }
    if let Err(c) = check_closure(src, dst, &tr, &h, &k) {
        return fail(WitnessCondition::Closure(c));
    }
    if assemble(src, dst, &tr, &h, &k) != f {
        return fail(WitnessCondition::Reassembly);
    }
    let g = orbit_restriction(&tr, &f);
    Ok(IsoWitness { h, reps: tr.reps, k, g, f })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(m: u32, s: i64, t: i64) -> FiniteModule {
        FiniteModule::scalar(m, s, t).unwrap()
    }

    #[test]
    fn z8_closure_failures() {
        let (m, m2) = (z(8, 3, 5), z(8, 5, 3));
        let tr = m.transversal(&m.one_minus_st_submodule());
        assert_eq!(tr.reps, vec![0, 1]);
        let h = ModuleIso::from_pairs(vec![(0, 0), (2, 6), (4, 4), (6, 2)]);
        assert_eq!(k_candidates(&m, &m2, &h, 1), vec![3, 7]);
        let e3 = check_closure(&m, &m2, &tr, &h, &[0, 3]).unwrap_err();
        assert_eq!((e3.beta, e3.omega, e3.via_action, e3.via_translation), (1, 2, 7, 1));
        let e7 = check_closure(&m, &m2, &tr, &h, &[0, 7]).unwrap_err();
        assert_eq!((e7.via_action, e7.via_translation), (3, 5));
        assert!(structural_iso(&m, &m2).0.is_none());
    }

    #[test]
    fn self_pair_gives_identity() {
        let m = z(8, 3, 5);
        let (w, _) = structural_iso(&m, &m);
        let w = w.unwrap();
        assert_eq!(w.f, (0..8).collect::<Vec<_>>());
        assert!(w.h.pairs().iter().all(|&(x, y)| x == y));
        assert_eq!(w.k, w.reps);
    }

    #[test]
    fn extract_identity_on_z3() {
        let m = z(3, 2, 1);
        let w = extract_witness(&m, &m, &[0, 1, 2]).unwrap();
        assert_eq!(w.reps, vec![0]);
        assert_eq!(w.k, vec![0]);
        assert_eq!(w.h.pairs(), &[(0, 0), (1, 1), (2, 2)]);
    }

    #[test]
    fn extract_rejects_non_isomorphisms() {
        let m = z(5, 2, 3);
        assert_eq!(extract_witness(&m, &m, &[0, 0, 0, 0, 0]), Err(IsoError::NotAnIsomorphism));
    }
}
