use alloc::vec;
use alloc::vec::Vec;
use core::ops::ControlFlow;

use super::{IsoError, SearchStats};
use crate::axioms::verify_biquandle;
use crate::table::{preserves, BiquandleTable, Op};

const UNSET: usize = usize::MAX;

/// What a map found by [`for_each_homomorphism`] must satisfy.
#[derive(Clone, Debug)]
pub struct HomConstraints {
    /// Operations the map must preserve.
    pub ops: Vec<Op>,
    /// Require a bijection (tables must then have equal order).
    pub bijective: bool,
    /// Prescribed `(x, f(x))` values.
    pub fixed: Vec<(usize, usize)>,
}

impl Default for HomConstraints {
    fn default() -> Self {
        HomConstraints { ops: Op::ALL.to_vec(), bijective: false, fixed: Vec::new() }
    }
}

impl HomConstraints {
    pub fn isomorphisms() -> Self {
        HomConstraints { bijective: true, ..Self::default() }
    }
}

type Profiles = Vec<[u32; 12]>;

struct Search<'a> {
    src: &'a BiquandleTable,
    dst: &'a BiquandleTable,
    ops: &'a [Op],
    bijective: bool,
    profiles: Option<(Profiles, Profiles)>,
    f: Vec<usize>,
    used: Vec<bool>,
    trail: Vec<usize>,
    pending: Vec<(usize, usize)>,
    stats: SearchStats,
}

impl<'a> Search<'a> {
    fn profile_ok(&self, x: usize, y: usize) -> bool {
        match &self.profiles {
            Some((p, q)) => p[x] == q[y],
            None => true,
        }
    }

    /// Assigns `x -> y` and everything it forces. On failure the partial
    /// assignment is left for the caller to undo.
    fn propagate(&mut self, x: usize, y: usize) -> bool {
        self.pending.clear();
        self.pending.push((x, y));
        while let Some((x, y)) = self.pending.pop() {
            if self.f[x] != UNSET {
                if self.f[x] != y {
                    return false;
                }
                continue;
            }
            if (self.bijective && self.used[y]) || !self.profile_ok(x, y) {
                return false;
            }
            self.f[x] = y;
            if self.bijective {
                self.used[y] = true;
            }
            self.trail.push(x);
            for i in 0..self.trail.len() {
                let z = self.trail[i];
                let fz = self.f[z];
                for &op in self.ops {
                    self.pending.push((self.src.get(op, x, z), self.dst.get(op, y, fz)));
                    if z != x {
                        self.pending.push((self.src.get(op, z, x), self.dst.get(op, fz, y)));
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let x = self.trail.pop().unwrap();
            let y = self.f[x];
            self.f[x] = UNSET;
            if self.bijective {
                self.used[y] = false;
            }
        }
    }

    fn candidates(&self, x: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.dst.order())
            .filter(move |&y| !(self.bijective && self.used[y]) && self.profile_ok(x, y))
    }

    /// First-fail: the unassigned element with the fewest candidates,
    /// lowest index on ties.
    fn choose(&self) -> usize {
        let mut best = (usize::MAX, UNSET);
        for x in (0..self.src.order()).filter(|&x| self.f[x] == UNSET) {
            if !self.bijective && self.profiles.is_none() {
                return x;
            }
            let c = self.candidates(x).count();
            if c < best.0 {
                best = (c, x);
            }
        }
        best.1
    }

    fn run<V>(&mut self, visit: &mut V) -> ControlFlow<()>
    where
        V: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.trail.len() == self.src.order() {
            if preserves(self.src, self.dst, &self.f, self.ops) {
                return visit(&self.f);
            }
            self.stats.rejected_complete += 1;
            return ControlFlow::Continue(());
        }
        self.stats.nodes += 1;
        let x = self.choose();
        for y in 0..self.dst.order() {
            self.stats.candidates += 1;
            if self.bijective && self.used[y] {
                self.stats.pruned_collision += 1;
                continue;
            }
            if !self.profile_ok(x, y) {
                self.stats.pruned_profile += 1;
                continue;
            }
            let mark = self.trail.len();
            if self.propagate(x, y) {
                let flow = self.run(visit);
                self.undo(mark);
                flow?;
            } else {
                self.stats.pruned_conflict += 1;
                self.undo(mark);
            }
        }
        ControlFlow::Continue(())
    }
}

/// Visits every map `src -> dst` meeting `constraints`, in a deterministic
/// order, until `visit` breaks. Assignments propagate: once `f(a)` and
/// `f(b)` are known, `f(a op b)` is forced.
pub fn for_each_homomorphism<V>(
    src: &BiquandleTable,
    dst: &BiquandleTable,
    constraints: &HomConstraints,
    mut visit: V,
) -> SearchStats
where
    V: FnMut(&[usize]) -> ControlFlow<()>,
{
    let (n, n2) = (src.order(), dst.order());
    if constraints.bijective && n != n2 {
        return SearchStats::default();
    }
    let profiles = constraints
        .bijective
        .then(|| (src.element_profiles(), dst.element_profiles()))
        .filter(|_| constraints.ops.len() == 4);
    let mut s = Search {
        src,
        dst,
        ops: &constraints.ops,
        bijective: constraints.bijective,
        profiles,
        f: vec![UNSET; n],
        used: vec![false; n2],
        trail: Vec::new(),
        pending: Vec::new(),
        stats: SearchStats::default(),
    };
    for &(x, y) in &constraints.fixed {
        if x >= n || y >= n2 || !s.propagate(x, y) {
            return s.stats;
        }
    }
    let _ = s.run(&mut visit);
    s.stats
}

/// Outcome of [`brute_force_iso`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoSearch {
    /// `witness[x]` is the image of `x` (0-based).
    pub witness: Option<Vec<usize>>,
    pub stats: SearchStats,
}

fn check_inputs(b1: &BiquandleTable, b2: &BiquandleTable) -> Result<(), IsoError> {
    for (i, b) in [b1, b2].into_iter().enumerate() {
        if !verify_biquandle(b).passed() {
            return Err(IsoError::NotABiquandle(i));
        }
    }
    Ok(())
}

/// Backtracking search for a bijection preserving all four operations.
pub fn brute_force_iso(b1: &BiquandleTable, b2: &BiquandleTable) -> Result<IsoSearch, IsoError> {
    check_inputs(b1, b2)?;
    Ok(brute_force_iso_unchecked(b1, b2))
}

/// [`brute_force_iso`] without the axiom check on the inputs.
pub(crate) fn brute_force_iso_unchecked(b1: &BiquandleTable, b2: &BiquandleTable) -> IsoSearch {
    let mut witness = None;
    let stats = for_each_homomorphism(b1, b2, &HomConstraints::isomorphisms(), |f| {
        witness = Some(f.to_vec());
        ControlFlow::Break(())
    });
    IsoSearch { witness, stats }
}

/// Every isomorphism `b1 -> b2`, sorted lexicographically.
pub fn all_isomorphisms(b1: &BiquandleTable, b2: &BiquandleTable) -> Result<Vec<Vec<usize>>, IsoError> {
    check_inputs(b1, b2)?;
    let mut out = Vec::new();
    for_each_homomorphism(b1, b2, &HomConstraints::isomorphisms(), |f| {
        out.push(f.to_vec());
        ControlFlow::Continue(())
    });
    out.sort_unstable();
    Ok(out)
}
