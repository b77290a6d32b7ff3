use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// One of the four biquandle operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    /// `a^b`
    Up,
    /// `a_b`
    Down,
    /// `a^{\bar b}`
    UpBar,
    /// `a_{\bar b}`
    DownBar,
}

impl Op {
    /// Block order of the matrix presentation: upper-left, upper-right,
    /// lower-left, lower-right.
    pub const ALL: [Op; 4] = [Op::Up, Op::Down, Op::UpBar, Op::DownBar];

    #[inline]
    fn slot(self) -> usize {
        match self {
            Op::Up => 0,
            Op::Down => 1,
            Op::UpBar => 2,
            Op::DownBar => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::Up => "up",
            Op::Down => "down",
            Op::UpBar => "upbar",
            Op::DownBar => "downbar",
        }
    }
}

impl fmt::Display for Op {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A 1-based element label `x_k`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u32);

impl Element {
    /// Returns `None` for label 0.
    pub fn new(label: usize) -> Option<Self> {
        if label == 0 || label > u32::MAX as usize {
            None
        } else {
            Some(Element(label as u32))
        }
    }

    /// Element with 0-based table index `index`.
    pub fn from_index(index: usize) -> Self {
        Element(index as u32 + 1)
    }

    pub fn label(self) -> usize {
        self.0 as usize
    }

    pub fn index(self) -> usize {
        self.0 as usize - 1
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TableError {
    EmptyOrder,
    /// A table entry or map value is outside `1..=n`.
    EntryOutOfRange { op: Op, row: usize, col: usize, value: usize, n: usize },
    /// An argument index is outside the table.
    IndexOutOfRange { index: usize, n: usize },
    /// A map has the wrong number of entries.
    MapLength { expected: usize, found: usize },
}

impl fmt::Display for TableError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TableError::EmptyOrder => f.write_str("biquandle order must be at least 1"),
            TableError::EntryOutOfRange { op, row, col, value, n } => write!(
                f,
                "{op} entry at ({}, {}) is {value}, outside 1..={n}",
                row + 1,
                col + 1
            ),
            TableError::IndexOutOfRange { index, n } => {
                write!(f, "element {index} outside 1..={n}")
            }
            TableError::MapLength { expected, found } => {
                write!(f, "map has {found} entries, expected {expected}")
            }
        }
    }
}

impl core::error::Error for TableError {}

/// Operation tables of a finite set with four binary operations.
///
/// The tables are not required to satisfy the biquandle axioms; see
/// [`verify_biquandle`](crate::axioms::verify_biquandle).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BiquandleTable {
    n: usize,
    ops: [Vec<u32>; 4],
}

impl BiquandleTable {
    /// Builds a table from a 0-based entry function `entry(op, a, b)`.
    pub fn from_fn<F>(n: usize, mut entry: F) -> Result<Self, TableError>
    where
        F: FnMut(Op, usize, usize) -> usize,
    {
        if n == 0 {
            return Err(TableError::EmptyOrder);
        }
        let mut ops: [Vec<u32>; 4] = Default::default();
        for op in Op::ALL {
            let block = &mut ops[op.slot()];
            block.reserve_exact(n * n);
            for a in 0..n {
                for b in 0..n {
                    let value = entry(op, a, b);
                    if value >= n {
                        return Err(TableError::EntryOutOfRange {
                            op,
                            row: a,
                            col: b,
                            value: value.wrapping_add(1),
                            n,
                        });
                    }
                    block.push(value as u32);
                }
            }
        }
        Ok(BiquandleTable { n, ops })
    }

    /// The trivial biquandle: every operation returns its first argument.
    pub fn trivial(n: usize) -> Result<Self, TableError> {
        Self::from_fn(n, |_, a, _| a)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// 0-based entry `op(a, b)`.
    #[inline]
    pub fn get(&self, op: Op, a: usize, b: usize) -> usize {
        self.ops[op.slot()][a * self.n + b] as usize
    }

    /// 1-based lookup.
    pub fn lookup(&self, op: Op, a: Element, b: Element) -> Result<Element, TableError> {
        for x in [a, b] {
            if x.index() >= self.n {
                return Err(TableError::IndexOutOfRange { index: x.label(), n: self.n });
            }
        }
        Ok(Element::from_index(self.get(op, a.index(), b.index())))
    }

    /// Copy of the table with one 0-based entry replaced.
    pub fn with_entry(&self, op: Op, a: usize, b: usize, value: usize) -> Result<Self, TableError> {
        if a >= self.n || b >= self.n {
            return Err(TableError::IndexOutOfRange { index: a.max(b) + 1, n: self.n });
        }
        if value >= self.n {
            return Err(TableError::EntryOutOfRange { op, row: a, col: b, value: value + 1, n: self.n });
        }
        let mut out = self.clone();
        out.ops[op.slot()][a * self.n + b] = value as u32;
        Ok(out)
    }

    /// The isomorphic table obtained by renaming element `x` to `perm[x]`.
    pub fn relabeled(&self, perm: &[usize]) -> Result<Self, TableError> {
        check_map(perm, self.n, self.n)?;
        let mut inv = vec![0usize; self.n];
        for (x, &y) in perm.iter().enumerate() {
            inv[y] = x;
        }
        Self::from_fn(self.n, |op, a, b| perm[self.get(op, inv[a], inv[b])])
    }

    /// Row `a` of one operation, 0-based.
    pub fn row(&self, op: Op, a: usize) -> &[u32] {
        &self.ops[op.slot()][a * self.n..(a + 1) * self.n]
    }

    /// Per-element invariants preserved by every isomorphism: for each
    /// operation, the number of row and column fixed points and whether
    /// `a op a = a`.
    pub fn element_profiles(&self) -> Vec<[u32; 12]> {
        let n = self.n;
        (0..n)
            .map(|a| {
                let mut p = [0u32; 12];
                for (i, op) in Op::ALL.into_iter().enumerate() {
                    p[3 * i] = (0..n).filter(|&b| self.get(op, a, b) == a).count() as u32;
                    p[3 * i + 1] = (0..n).filter(|&b| self.get(op, b, a) == b).count() as u32;
                    p[3 * i + 2] = (self.get(op, a, a) == a) as u32;
                }
                p
            })
            .collect()
    }

    /// Sorted multiset of [`element_profiles`](Self::element_profiles).
    pub fn degree_profile(&self) -> Vec<[u32; 12]> {
        let mut p = self.element_profiles();
        p.sort_unstable();
        p
    }
}

impl fmt::Debug for BiquandleTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BiquandleTable(n = {})", self.n)?;
        for top in [true, false] {
            let (left, right) = if top { (Op::Up, Op::Down) } else { (Op::UpBar, Op::DownBar) };
            for a in 0..self.n {
                for op in [left, right] {
                    for b in 0..self.n {
                        write!(f, " {}", self.get(op, a, b) + 1)?;
                    }
                    if op == left {
                        f.write_str(" |")?;
                    }
                }
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

pub(crate) fn check_map(f: &[usize], domain: usize, codomain: usize) -> Result<(), TableError> {
    if f.len() != domain {
        return Err(TableError::MapLength { expected: domain, found: f.len() });
    }
    if let Some(&bad) = f.iter().find(|&&y| y >= codomain) {
        return Err(TableError::IndexOutOfRange { index: bad + 1, n: codomain });
    }
    Ok(())
}

/// Whether `f` (0-based, `f[x]` is the image of `x`) preserves all four
/// operations.
pub fn is_homomorphism(
    src: &BiquandleTable,
    dst: &BiquandleTable,
    f: &[usize],
) -> Result<bool, TableError> {
    check_map(f, src.n, dst.n)?;
    Ok(preserves(src, dst, f, &Op::ALL))
}

/// Whether `f` preserves the listed operations. `f` must already be checked.
pub(crate) fn preserves(src: &BiquandleTable, dst: &BiquandleTable, f: &[usize], ops: &[Op]) -> bool {
    let n = src.n;
    ops.iter().all(|&op| {
        (0..n).all(|a| (0..n).all(|b| f[src.get(op, a, b)] == dst.get(op, f[a], f[b])))
    })
}

/// Whether `f` is a bijection of `0..n`.
pub fn is_bijection(f: &[usize], n: usize) -> bool {
    if f.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &y in f {
        if y >= n || seen[y] {
            return false;
        }
        seen[y] = true;
    }
    true
}
