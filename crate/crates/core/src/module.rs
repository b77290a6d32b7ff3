//! Finite modules `Z_m^k` over `Z[s^{±1}, t^{±1}]`, their `(1-st)` and
//! `(1-s)` submodules, coset transversals and `s`-orbits.
//!
//! Elements are addressed by a code in `0..m^k`: the coordinate vector read
//! as a little-endian base-`m` number, so `0` is the zero vector.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::modular::Mat;

/// Largest supported element count.
pub const MAX_MODULE_SIZE: usize = 1 << 20;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ModuleError {
    BadModulus(u32),
    BadRank,
    /// `S` or `T` is not `k x k`, or uses a different modulus.
    ShapeMismatch,
    /// The named action has a determinant that is not a unit.
    NonUnitDeterminant { action: char, det: u32 },
    NonCommuting,
    TooLarge,
    /// A coordinate vector of the wrong length.
    BadElement,
}

impl fmt::Display for ModuleError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleError::BadModulus(m) => write!(f, "modulus {m} must be at least 2"),
            ModuleError::BadRank => f.write_str("rank must be at least 1"),
            ModuleError::ShapeMismatch => f.write_str("action matrices must be k x k over Z_m"),
            ModuleError::NonUnitDeterminant { action, det } => {
                write!(f, "det({action}) = {det} is not a unit")
            }
            ModuleError::NonCommuting => f.write_str("s and t actions do not commute"),
            ModuleError::TooLarge => write!(f, "module has more than {MAX_MODULE_SIZE} elements"),
            ModuleError::BadElement => f.write_str("element has the wrong number of coordinates"),
        }
    }
}

impl core::error::Error for ModuleError {}

/// Coordinates of an element of `Z_m^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ModuleElement {
    pub coords: Vec<u32>,
}

impl fmt::Display for ModuleElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let [x] = self.coords[..] {
            return write!(f, "{x}");
        }
        f.write_str("(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str(")")
    }
}

/// The additive group `Z_m^k` with code arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Carrier {
    pub modulus: u32,
    pub rank: usize,
}

impl Carrier {
    pub fn new(modulus: u32, rank: usize) -> Result<Self, ModuleError> {
        if modulus < 2 {
            return Err(ModuleError::BadModulus(modulus));
        }
        if rank == 0 {
            return Err(ModuleError::BadRank);
        }
        let mut size = 1usize;
        for _ in 0..rank {
            size = size.checked_mul(modulus as usize).ok_or(ModuleError::TooLarge)?;
            if size > MAX_MODULE_SIZE {
                return Err(ModuleError::TooLarge);
            }
        }
        Ok(Carrier { modulus, rank })
    }

    pub fn size(&self) -> usize {
        (self.modulus as usize).pow(self.rank as u32)
    }

    pub fn decode(&self, mut code: usize) -> ModuleElement {
        let m = self.modulus as usize;
        let coords = (0..self.rank)
            .map(|_| {
                let c = (code % m) as u32;
                code /= m;
                c
            })
            .collect();
        ModuleElement { coords }
    }

    pub fn encode(&self, x: &ModuleElement) -> Result<usize, ModuleError> {
        if x.coords.len() != self.rank {
            return Err(ModuleError::BadElement);
        }
        let m = self.modulus as usize;
        Ok(x.coords.iter().rev().fold(0, |acc, &c| acc * m + (c as usize % m)))
    }

    fn zip(&self, a: usize, b: usize, op: impl Fn(u32, u32) -> u32) -> usize {
        let m = self.modulus as usize;
        let (mut a, mut b, mut out, mut place) = (a, b, 0usize, 1usize);
        for _ in 0..self.rank {
            out += op((a % m) as u32, (b % m) as u32) as usize * place;
            a /= m;
            b /= m;
            place *= m;
        }
        out
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let m = self.modulus;
        self.zip(a, b, |x, y| (x + y) % m)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        let m = self.modulus;
        self.zip(a, b, |x, y| (x + m - y) % m)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.sub(0, a)
    }

    /// `j * a`.
    pub fn scale(&self, j: u32, a: usize) -> usize {
        let m = self.modulus as u64;
        self.zip(a, 0, |x, _| ((x as u64 * j as u64) % m) as u32)
    }

    /// The map `x -> M x` on codes.
    pub fn matrix_map(&self, mat: &Mat) -> Vec<usize> {
        (0..self.size())
            .map(|c| {
                let v = mat.apply(&self.decode(c).coords);
                self.encode(&ModuleElement { coords: v }).unwrap()
            })
            .collect()
    }

    /// Additive order of `a`.
    pub fn order_of(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.add(x, a);
            k += 1;
        }
        k
    }
}

/// `Z_m^k` with commuting invertible actions of `s` and `t`.
#[derive(Clone)]
pub struct FiniteModule {
    carrier: Carrier,
    s: Mat,
    t: Mat,
    maps: ActionMaps,
}

#[derive(Clone)]
struct ActionMaps {
    s: Vec<usize>,
    t: Vec<usize>,
    s_inv: Vec<usize>,
    t_inv: Vec<usize>,
    /// `1 - st`
    one_minus_st: Vec<usize>,
    /// `1 - s^{-1} t^{-1}`
    one_minus_st_inv: Vec<usize>,
    /// `1 - s`
    one_minus_s: Vec<usize>,
}

impl PartialEq for FiniteModule {
    fn eq(&self, other: &Self) -> bool {
        self.carrier == other.carrier && self.s == other.s && self.t == other.t
    }
}

impl Eq for FiniteModule {}

impl fmt::Debug for FiniteModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteModule")
            .field("modulus", &self.carrier.modulus)
            .field("rank", &self.carrier.rank)
            .field("s", &self.s.rows())
            .field("t", &self.t.rows())
            .finish()
    }
}

impl FiniteModule {
    /// Validates `S`, `T` over `Z_m^k`.
    pub fn new(modulus: u32, rank: usize, s: Mat, t: Mat) -> Result<Self, ModuleError> {
        let carrier = Carrier::new(modulus, rank)?;
        for a in [&s, &t] {
            if a.dim() != rank || a.modulus() != modulus {
                return Err(ModuleError::ShapeMismatch);
            }
        }
        let s_inv = s
            .inverse()
            .ok_or(ModuleError::NonUnitDeterminant { action: 's', det: s.det() })?;
        let t_inv = t
            .inverse()
            .ok_or(ModuleError::NonUnitDeterminant { action: 't', det: t.det() })?;
        if !s.commutes_with(&t) {
            return Err(ModuleError::NonCommuting);
        }
        let maps = ActionMaps {
            s: carrier.matrix_map(&s),
            t: carrier.matrix_map(&t),
            s_inv: carrier.matrix_map(&s_inv),
            t_inv: carrier.matrix_map(&t_inv),
            one_minus_st: carrier.matrix_map(&s.mul(&t).one_minus()),
            one_minus_st_inv: carrier.matrix_map(&s_inv.mul(&t_inv).one_minus()),
            one_minus_s: carrier.matrix_map(&s.one_minus()),
        };
        Ok(FiniteModule { carrier, s, t, maps })
    }

    /// `Z_m` with `s`, `t` acting as scalars.
    pub fn scalar(modulus: u32, s: i64, t: i64) -> Result<Self, ModuleError> {
        if modulus < 2 {
            return Err(ModuleError::BadModulus(modulus));
        }
        Self::new(modulus, 1, Mat::scalar(modulus, 1, s), Mat::scalar(modulus, 1, t))
    }

    pub fn carrier(&self) -> Carrier {
        self.carrier
    }

    pub fn modulus(&self) -> u32 {
        self.carrier.modulus
    }

    pub fn rank(&self) -> usize {
        self.carrier.rank
    }

    pub fn size(&self) -> usize {
        self.maps.s.len()
    }

    pub fn s_matrix(&self) -> &Mat {
        &self.s
    }

    pub fn t_matrix(&self) -> &Mat {
        &self.t
    }

    pub fn element(&self, code: usize) -> ModuleElement {
        self.carrier.decode(code)
    }

    pub fn code(&self, x: &ModuleElement) -> Result<usize, ModuleError> {
        self.carrier.encode(x)
    }

    /// Code of a scalar residue (rank 1 only; reduces mod `m`).
    pub fn scalar_code(&self, x: i64) -> usize {
        debug_assert_eq!(self.rank(), 1);
        x.rem_euclid(self.modulus() as i64) as usize
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.carrier.add(a, b)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.carrier.sub(a, b)
    }

    pub fn neg(&self, a: usize) -> usize {
        self.carrier.neg(a)
    }

    #[inline]
    pub fn s(&self, x: usize) -> usize {
        self.maps.s[x]
    }

    #[inline]
    pub fn t(&self, x: usize) -> usize {
        self.maps.t[x]
    }

    #[inline]
    pub fn s_inv(&self, x: usize) -> usize {
        self.maps.s_inv[x]
    }

    #[inline]
    pub fn t_inv(&self, x: usize) -> usize {
        self.maps.t_inv[x]
    }

    /// `(1 - st) x`
    #[inline]
    pub fn one_minus_st(&self, x: usize) -> usize {
        self.maps.one_minus_st[x]
    }

    /// `(1 - s^{-1} t^{-1}) x`
    #[inline]
    pub fn one_minus_st_inv(&self, x: usize) -> usize {
        self.maps.one_minus_st_inv[x]
    }

    /// `(1 - s) x`
    #[inline]
    pub fn one_minus_s(&self, x: usize) -> usize {
        self.maps.one_minus_s[x]
    }

    /// Image of `x -> (1 - st) x`.
    pub fn one_minus_st_submodule(&self) -> Submodule {
        Submodule::from_mask(self.maps.one_minus_st.iter().fold(
            vec![false; self.size()],
            |mut mask, &y| {
                mask[y] = true;
                mask
            },
        ))
    }

    /// Kernel of `x -> (1 - s) x`.
    pub fn kernel_one_minus_s(&self) -> Submodule {
        Submodule::from_mask(self.maps.one_minus_s.iter().map(|&y| y == 0).collect())
    }

    /// Closure of `xs` under multiplication by `s` and `s^{-1}`, sorted.
    pub fn s_orbit(&self, xs: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.size()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &x in xs {
            if !seen[x] {
                seen[x] = true;
                queue.push_back(x);
            }
        }
        while let Some(x) = queue.pop_front() {
            for y in [self.s(x), self.s_inv(x)] {
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.size()).filter(|&x| seen[x]).collect()
    }

    /// Coset representatives of `sub`, each the smallest code in its coset.
    pub fn transversal(&self, sub: &Submodule) -> Transversal {
        let size = self.size();
        let mut coset_of = vec![usize::MAX; size];
        let mut reps = Vec::new();
        for x in 0..size {
            if coset_of[x] != usize::MAX {
                continue;
            }
            let r = reps.len();
            reps.push(x);
            for &w in sub.elements() {
                coset_of[self.add(x, w)] = r;
            }
        }
        let orbit = self.s_orbit(&reps);
        Transversal { reps, orbit, coset_of }
    }

    /// Whether `set` contains 0 and is closed under `+`, `-`, `s`, `t`.
    pub fn is_submodule(&self, set: &Submodule) -> bool {
        let els = set.elements();
        set.contains(0)
            && els.iter().all(|&x| {
                set.contains(self.neg(x))
                    && set.contains(self.s(x))
                    && set.contains(self.t(x))
                    && els.iter().all(|&y| set.contains(self.add(x, y)))
            })
    }
}

/// A subset of a module given by codes, sorted ascending.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Submodule {
    elements: Vec<usize>,
    mask: Vec<bool>,
}

impl Submodule {
    pub fn from_mask(mask: Vec<bool>) -> Self {
        let elements = (0..mask.len()).filter(|&x| mask[x]).collect();
        Submodule { elements, mask }
    }

    /// Subset of a module of `size` elements.
    pub fn from_codes(size: usize, codes: &[usize]) -> Self {
        let mut mask = vec![false; size];
        for &c in codes {
            mask[c] = true;
        }
        Self::from_mask(mask)
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask.get(x).copied().unwrap_or(false)
    }
}

/// Coset representatives of a submodule `N`, with 0 representing `N`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    /// Ascending; `reps[0] == 0`.
    pub reps: Vec<usize>,
    /// `O_s(reps)`, ascending.
    pub orbit: Vec<usize>,
    coset_of: Vec<usize>,
}

impl Transversal {
    /// Index into `reps` of the coset containing `x`.
    #[inline]
    pub fn coset(&self, x: usize) -> usize {
        self.coset_of[x]
    }

    /// The representative `α` with `x ∈ α + N`.
    #[inline]
    pub fn rep_of(&self, x: usize) -> usize {
        self.reps[self.coset_of[x]]
    }

    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }
}

/// How table indices `0..n` are assigned to module elements.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum ElementOrder {
    /// Index `i` is the element with code `i`; 0 comes first.
    #[default]
    Canonical,
    /// Index `i` is the element with code `i + 1 mod |M|`, so label `x_k`
    /// is the residue `k` and the zero element is last. This is the
    /// labelling `Z_n = {1, ..., n}` used for displayed matrices.
    Residue,
}

impl ElementOrder {
    /// `codes[i]` is the module element at table index `i`.
    pub fn codes(self, size: usize) -> Vec<usize> {
        match self {
            ElementOrder::Canonical => (0..size).collect(),
            ElementOrder::Residue => (0..size).map(|i| (i + 1) % size).collect(),
        }
    }

    /// Inverse of [`codes`](Self::codes).
    pub fn index_of(self, code: usize, size: usize) -> usize {
        match self {
            ElementOrder::Canonical => code,
            ElementOrder::Residue => (code + size - 1) % size,
        }
    }
}
