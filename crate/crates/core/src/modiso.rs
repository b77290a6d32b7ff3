//! Isomorphisms of submodules that intertwine the `s` and `t` actions.

use alloc::vec;
use alloc::vec::Vec;

use crate::module::{FiniteModule, Submodule};

/// An additive bijection `h: N -> N'` with `h(s x) = s' h(x)` and
/// `h(t x) = t' h(x)`, stored as `(x, h(x))` pairs sorted by `x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleIso {
    pairs: Vec<(usize, usize)>,
}

impl ModuleIso {
    pub fn from_pairs(mut pairs: Vec<(usize, usize)>) -> Self {
        pairs.sort_unstable();
        ModuleIso { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn apply(&self, x: usize) -> Option<usize> {
        self.pairs.binary_search_by_key(&x, |p| p.0).ok().map(|i| self.pairs[i].1)
    }

    /// Re-checks every defining property against the two modules.
    pub fn is_valid(&self, src: &FiniteModule, n: &Submodule, dst: &FiniteModule, n2: &Submodule) -> bool {
        if self.pairs.len() != n.len() || n.len() != n2.len() {
            return false;
        }
        let mut hit = vec![false; dst.size()];
        for &(x, y) in &self.pairs {
            if !n.contains(x) || !n2.contains(y) || hit[y] {
                return false;
            }
            hit[y] = true;
        }
        let h = |x| self.apply(x);
        self.pairs.iter().all(|&(x, hx)| {
            h(src.s(x)) == Some(dst.s(hx))
                && h(src.t(x)) == Some(dst.t(hx))
                && self.pairs.iter().all(|&(y, hy)| h(src.add(x, y)) == Some(dst.add(hx, hy)))
        })
    }
}

/// How [`module_isomorphisms_with`] searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsoStrategy {
    /// Choose images of an additive generating set and extend.
    Generators,
    /// Scan every bijection `N -> N'`. Only sensible for small `N`.
    Exhaustive,
}

/// All module isomorphisms `N -> N'`, sorted.
pub fn module_isomorphisms(
    src: &FiniteModule,
    n: &Submodule,
    dst: &FiniteModule,
    n2: &Submodule,
) -> Vec<ModuleIso> {
    module_isomorphisms_with(src, n, dst, n2, IsoStrategy::Generators)
}

pub fn module_isomorphisms_with(
    src: &FiniteModule,
    n: &Submodule,
    dst: &FiniteModule,
    n2: &Submodule,
    strategy: IsoStrategy,
) -> Vec<ModuleIso> {
    if n.len() != n2.len() || n.is_empty() {
        return Vec::new();
    }
    let mut out = match strategy {
        IsoStrategy::Generators => by_generators(src, n, dst, n2),
        IsoStrategy::Exhaustive => exhaustive(src, n, dst, n2),
    };
    out.sort_unstable();
    out
}

fn intertwines(src: &FiniteModule, dst: &FiniteModule, n: &Submodule, h: &[usize]) -> bool {
    n.elements().iter().all(|&x| h[src.s(x)] == dst.s(h[x]) && h[src.t(x)] == dst.t(h[x]))
}

/// Greedy additive generating set: repeatedly take the element of largest
/// order outside the current span.
fn generating_set(m: &FiniteModule, n: &Submodule) -> Vec<usize> {
    let mut span = vec![false; m.size()];
    span[0] = true;
    let mut spanned = 1;
    let mut gens = Vec::new();
    let c = m.carrier();
    while spanned < n.len() {
        let g = n
            .elements()
            .iter()
            .copied()
            .filter(|&x| !span[x])
            .max_by_key(|&x| (c.order_of(x), core::cmp::Reverse(x)))
            .expect("span is a proper subset");
        let current: Vec<usize> = (0..m.size()).filter(|&x| span[x]).collect();
        let mut mult = g;
        while !span[mult] {
            for &s in &current {
                let y = m.add(s, mult);
                if !span[y] {
                    span[y] = true;
                    spanned += 1;
                }
            }
            mult = m.add(mult, g);
        }
        gens.push(g);
    }
    gens
}

fn by_generators(src: &FiniteModule, n: &Submodule, dst: &FiniteModule, n2: &Submodule) -> Vec<ModuleIso> {
    const UNSET: usize = usize::MAX;
    let gens = generating_set(src, n);
    let mut h = vec![UNSET; src.size()];
    let mut used = vec![false; dst.size()];
    h[0] = 0;
    used[0] = true;
    let mut out = Vec::new();

    // Extends h from span(gens[..i]) to span(gens[..=i]) with gens[i] -> y.
    // Returns the newly assigned elements, or None on a conflict (with h
    // restored).
    fn extend(
        src: &FiniteModule,
        dst: &FiniteModule,
        h: &mut [usize],
        used: &mut [bool],
        g: usize,
        y: usize,
    ) -> Option<Vec<usize>> {
        let base: Vec<usize> = (0..h.len()).filter(|&x| h[x] != usize::MAX).collect();
        let mut added = Vec::new();
        let (mut mg, mut my) = (g, y);
        let mut ok = true;
        'outer: while mg != 0 {
            for &s in &base {
                let x = src.add(s, mg);
                let v = dst.add(h[s], my);
                if h[x] == usize::MAX {
                    if used[v] {
                        ok = false;
                        break 'outer;
                    }
                    h[x] = v;
                    used[v] = true;
                    added.push(x);
                } else if h[x] != v {
                    ok = false;
                    break 'outer;
                }
            }
            mg = src.add(mg, g);
            my = dst.add(my, y);
        }
        // j * g == 0 must map to j * y == 0
        if ok && my != 0 {
            ok = false;
        }
        if ok {
            Some(added)
        } else {
            for x in added {
                used[h[x]] = false;
                h[x] = usize::MAX;
            }
            None
        }
    }

    fn recurse(
        i: usize,
        ctx: (&FiniteModule, &Submodule, &FiniteModule, &Submodule, &[usize]),
        h: &mut [usize],
        used: &mut [bool],
        out: &mut Vec<ModuleIso>,
    ) {
        let (src, n, dst, n2, gens) = ctx;
        if i == gens.len() {
            if intertwines(src, dst, n, h) {
                out.push(ModuleIso::from_pairs(n.elements().iter().map(|&x| (x, h[x])).collect()));
            }
            return;
        }
        let g = gens[i];
        let order = src.carrier().order_of(g);
        for &y in n2.elements() {
            if used[y] || dst.carrier().order_of(y) != order {
                continue;
            }
            if let Some(added) = extend(src, dst, h, used, g, y) {
                recurse(i + 1, ctx, h, used, out);
                for x in added {
                    used[h[x]] = false;
                    h[x] = usize::MAX;
                }
            }
        }
    }

    recurse(0, (src, n, dst, n2, &gens), &mut h, &mut used, &mut out);
    out
}

fn exhaustive(src: &FiniteModule, n: &Submodule, dst: &FiniteModule, n2: &Submodule) -> Vec<ModuleIso> {
    let dom = n.elements();
    let mut img: Vec<usize> = n2.elements().to_vec();
    let mut h = vec![usize::MAX; src.size()];
    let mut out = Vec::new();
    loop {
        for (&x, &y) in dom.iter().zip(&img) {
            h[x] = y;
        }
        let additive = dom
            .iter()
            .all(|&x| dom.iter().all(|&y| h[src.add(x, y)] == dst.add(h[x], h[y])));
        if additive && intertwines(src, dst, n, &h) {
            out.push(ModuleIso::from_pairs(dom.iter().copied().zip(img.iter().copied()).collect()));
        }
        if !next_permutation(&mut img) {
            break;
        }
    }
    out
}

/// Advances to the lexicographically next permutation; false after the last.
pub fn next_permutation<T: Ord>(xs: &mut [T]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z8_submodules_do_not_intertwine() {
        // on {0,2,4,6}, 3 acts as -1 and 5 acts as +1, so negation fails:
        // h(3 * 2) = 2 while 5 * h(2) = 6
        let m = FiniteModule::scalar(8, 3, 5).unwrap();
        let m2 = FiniteModule::scalar(8, 5, 3).unwrap();
        let (n, n2) = (m.one_minus_st_submodule(), m2.one_minus_st_submodule());
        let neg = ModuleIso::from_pairs(vec![(0, 0), (2, 6), (4, 4), (6, 2)]);
        assert!(!neg.is_valid(&m, &n, &m2, &n2));
        assert!(module_isomorphisms(&m, &n, &m2, &n2).is_empty());
        assert!(module_isomorphisms_with(&m, &n, &m2, &n2, IsoStrategy::Exhaustive).is_empty());
        let self_isos = module_isomorphisms(&m, &n, &m, &n);
        assert_eq!(self_isos.len(), 2);
        for h in &self_isos {
            assert!(h.is_valid(&m, &n, &m, &n));
        }
    }

    #[test]
    fn zero_submodule_has_the_empty_map_only() {
        let m = FiniteModule::scalar(5, 1, 1).unwrap();
        let n = m.one_minus_st_submodule();
        let isos = module_isomorphisms(&m, &n, &m, &n);
        assert_eq!(isos, vec![ModuleIso::from_pairs(vec![(0, 0)])]);
    }

    #[test]
    fn identity_is_found() {
        let m = FiniteModule::scalar(8, 3, 5).unwrap();
        let n = m.one_minus_st_submodule();
        let id = ModuleIso::from_pairs(n.elements().iter().map(|&x| (x, x)).collect());
        assert!(module_isomorphisms(&m, &n, &m, &n).contains(&id));
    }

    #[test]
    fn sizes_must_match() {
        let m = FiniteModule::scalar(8, 3, 5).unwrap();
        let n = m.one_minus_st_submodule();
        let k = m.kernel_one_minus_s();
        assert!(module_isomorphisms(&m, &n, &m, &k).is_empty());
    }

    #[test]
    fn permutations_in_order() {
        let mut v = [1, 2, 3];
        let mut count = 1;
        while next_permutation(&mut v) {
            count += 1;
        }
        assert_eq!(count, 6);
        assert_eq!(v, [3, 2, 1]);
    }

    #[test]
    fn strategies_agree_on_small_scalar_modules() {
        for m in 2..=8u32 {
            let mods: Vec<FiniteModule> = (1..m as i64)
                .flat_map(|s| (1..m as i64).map(move |t| (s, t)))
                .filter_map(|(s, t)| FiniteModule::scalar(m, s, t).ok())
                .collect();
            for a in &mods {
                for b in &mods {
                    let (n, n2) = (a.one_minus_st_submodule(), b.one_minus_st_submodule());
                    let g = module_isomorphisms_with(a, &n, b, &n2, IsoStrategy::Generators);
                    let e = module_isomorphisms_with(a, &n, b, &n2, IsoStrategy::Exhaustive);
                    assert_eq!(g, e, "{a:?} vs {b:?}");
                }
            }
        }
    }
}
