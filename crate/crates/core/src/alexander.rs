//! Alexander and switch biquandles on finite modules.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::axioms::{verify_biquandle, AxiomReport};
use crate::iso::IsoError;
use crate::modular::Mat;
use crate::module::{Carrier, ElementOrder, FiniteModule, ModuleElement, ModuleError};
use crate::table::{is_bijection, is_homomorphism, BiquandleTable, Op};

/// The Alexander biquandle of `module`:
///
/// ```text
/// x^y = t x + (1 - st) y            x_y = s x
/// x^ȳ = t⁻¹ x + (1 - s⁻¹t⁻¹) y       x_ȳ = s⁻¹ x
/// ```
///
/// with table index `i` standing for the element `order.codes()[i]`.
pub fn alexander_table(module: &FiniteModule, order: ElementOrder) -> BiquandleTable {
    let size = module.size();
    let codes = order.codes(size);
    let idx = |code: usize| order.index_of(code, size);
    BiquandleTable::from_fn(size, |op, a, b| {
        let (x, y) = (codes[a], codes[b]);
        idx(match op {
            Op::Up => module.add(module.t(x), module.one_minus_st(y)),
            Op::Down => module.s(x),
            Op::UpBar => module.add(module.t_inv(x), module.one_minus_st_inv(y)),
            Op::DownBar => module.s_inv(x),
        })
    })
    .expect("module size is at least 2")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SwitchError {
    Module(ModuleError),
    /// `A` or `B` has a non-unit determinant.
    NotInvertible(char),
    /// `(x, y) -> (y_x, x^y)` is not a bijection of pairs.
    NonInvertibleSwitch,
}

impl fmt::Display for SwitchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SwitchError::Module(e) => write!(f, "{e}"),
            SwitchError::NotInvertible(c) => write!(f, "matrix {c} is not invertible"),
            SwitchError::NonInvertibleSwitch => f.write_str("the switch is not invertible"),
        }
    }
}

impl core::error::Error for SwitchError {}

impl From<ModuleError> for SwitchError {
    fn from(e: ModuleError) -> Self {
        SwitchError::Module(e)
    }
}

/// Result of [`make_switch_biquandle`].
#[derive(Clone, Debug)]
pub struct SwitchBiquandle {
    pub table: BiquandleTable,
    /// `C = A⁻¹B⁻¹A(I - A)`
    pub c: Mat,
    /// `D = I - A⁻¹B⁻¹AB`
    pub d: Mat,
    /// Whether `[B, (A - I)(A, B)] = 0`, with `[X, Y] = XY - YX` and
    /// `(X, Y) = X⁻¹Y⁻¹XY`.
    pub switch_condition: bool,
    pub report: AxiomReport,
}

/// Builds `x^y = Cx + Dy + c`, `x_y = Ay + Bx + c` on `Z_m^k` and fills the
/// barred operations by inverting the switch `S(x, y) = (y_x, x^y)`:
/// `S(a, b) = (b', a')` sets `a'^{b̄'} = a` and `b'_{ā'} = b`.
pub fn make_switch_biquandle(
    modulus: u32,
    rank: usize,
    a: &Mat,
    b: &Mat,
    shift: &ModuleElement,
    order: ElementOrder,
) -> Result<SwitchBiquandle, SwitchError> {
    let carrier = Carrier::new(modulus, rank)?;
    for m in [a, b] {
        if m.dim() != rank || m.modulus() != modulus {
            return Err(ModuleError::ShapeMismatch.into());
        }
    }
    let shift = carrier.encode(shift)?;
    let a_inv = a.inverse().ok_or(SwitchError::NotInvertible('A'))?;
    let b_inv = b.inverse().ok_or(SwitchError::NotInvertible('B'))?;
    let aiba = a_inv.mul(&b_inv).mul(a);
    let c = aiba.mul(&a.one_minus());
    let d = aiba.mul(b).one_minus();

    let id = Mat::identity(modulus, rank);
    let group_comm = aiba.mul(b);
    let inner = a.sub(&id).mul(&group_comm);
    let switch_condition = b.mul(&inner) == inner.mul(b);

    let size = carrier.size();
    let (cm, dm, am, bm) = (
        carrier.matrix_map(&c),
        carrier.matrix_map(&d),
        carrier.matrix_map(a),
        carrier.matrix_map(b),
    );
    let up = |x: usize, y: usize| carrier.add(carrier.add(cm[x], dm[y]), shift);
    let down = |x: usize, y: usize| carrier.add(carrier.add(am[y], bm[x]), shift);

    const UNSET: usize = usize::MAX;
    let mut upbar = vec![UNSET; size * size];
    let mut downbar = vec![UNSET; size * size];
    for x in 0..size {
        for y in 0..size {
            let (y2, x2) = (down(y, x), up(x, y));
            let slot = x2 * size + y2;
            if upbar[slot] != UNSET {
                return Err(SwitchError::NonInvertibleSwitch);
            }
            upbar[slot] = x;
            downbar[y2 * size + x2] = y;
        }
    }

    let codes = order.codes(size);
    let idx = |code: usize| order.index_of(code, size);
    let table = BiquandleTable::from_fn(size, |op, i, j| {
        let (x, y) = (codes[i], codes[j]);
        idx(match op {
            Op::Up => up(x, y),
            Op::Down => down(x, y),
            Op::UpBar => upbar[x * size + y],
            Op::DownBar => downbar[x * size + y],
        })
    })
    .expect("carrier has at least 2 elements");
    let report = verify_biquandle(&table);
    Ok(SwitchBiquandle { table, c, d, switch_condition, report })
}

/// `g_z(x) = x + z` as a map on codes (canonical table indices).
pub fn translation_map(module: &FiniteModule, z: usize) -> Vec<usize> {
    (0..module.size()).map(|x| module.add(x, z)).collect()
}

/// Replaces a biquandle isomorphism `f: M -> M'` (on canonical indices) by
/// `g_{-f(0)} ∘ f`, which fixes 0.
pub fn normalize_iso(
    src: &FiniteModule,
    dst: &FiniteModule,
    f: &[usize],
) -> Result<Vec<usize>, IsoError> {
    let b1 = alexander_table(src, ElementOrder::Canonical);
    let b2 = alexander_table(dst, ElementOrder::Canonical);
    if !is_bijection(f, b2.order()) || !is_homomorphism(&b1, &b2, f)? {
        return Err(IsoError::NotAnIsomorphism);
    }
    let z = f[0];
    Ok(f.iter().map(|&y| dst.sub(y, z)).collect())
}
