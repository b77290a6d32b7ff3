//! Square matrices over `Z_m`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Extended gcd inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn inverse_mod(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut r0, mut r1) = (m as i128, (a % m) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(m as i128) as u64)
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A `k x k` matrix with entries reduced modulo `m`, row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    dim: usize,
    modulus: u32,
    data: Vec<u32>,
}

impl Mat {
    /// Entries are reduced mod `modulus` (negative values allowed).
    /// Returns `None` unless `rows` is square and nonempty.
    pub fn from_rows(modulus: u32, rows: &[Vec<i64>]) -> Option<Self> {
        let dim = rows.len();
        if dim == 0 || modulus == 0 || rows.iter().any(|r| r.len() != dim) {
            return None;
        }
        let m = modulus as i64;
        let data = rows.iter().flatten().map(|&x| x.rem_euclid(m) as u32).collect();
        Some(Mat { dim, modulus, data })
    }

    pub fn scalar(modulus: u32, dim: usize, c: i64) -> Self {
        let c = c.rem_euclid(modulus as i64) as u32;
        let mut data = vec![0; dim * dim];
        for i in 0..dim {
            data[i * dim + i] = c;
        }
        Mat { dim, modulus, data }
    }

    pub fn identity(modulus: u32, dim: usize) -> Self {
        Self::scalar(modulus, dim, 1)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.dim + j]
    }

    pub fn rows(&self) -> Vec<Vec<u32>> {
        self.data.chunks(self.dim).map(|r| r.to_vec()).collect()
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        let (k, m) = (self.dim, self.modulus as u64);
        let mut data = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                let mut acc = 0u64;
                for l in 0..k {
                    acc = (acc + self.get(i, l) as u64 * other.get(l, j) as u64) % m;
                }
                data[i * k + j] = acc as u32;
            }
        }
        Mat { dim: k, modulus: self.modulus, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        let m = self.modulus;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| ((a as u64 + m as u64 - b as u64) % m as u64) as u32)
            .collect();
        Mat { dim: self.dim, modulus: m, data }
    }

    /// `I - self`.
    pub fn one_minus(&self) -> Mat {
        Mat::identity(self.modulus, self.dim).sub(self)
    }

    pub fn commutes_with(&self, other: &Mat) -> bool {
        self.mul(other) == other.mul(self)
    }

    /// Determinant mod `m` by cofactor expansion; intended for small ranks.
    pub fn det(&self) -> u32 {
        let idx: Vec<usize> = (0..self.dim).collect();
        det_minor(self, 0, &idx)
    }

    pub fn is_invertible(&self) -> bool {
        gcd(self.det() as u64, self.modulus as u64) == 1
    }

    /// Inverse via the adjugate, if the determinant is a unit.
    pub fn inverse(&self) -> Option<Mat> {
        let (k, m) = (self.dim, self.modulus as u64);
        let dinv = inverse_mod(self.det() as u64, m)?;
        let mut data = vec![0u32; k * k];
        for i in 0..k {
            for j in 0..k {
                // adj[j][i] = (-1)^(i+j) * minor(i, j)
                let rows: Vec<usize> = (0..k).filter(|&r| r != i).collect();
                let cols: Vec<usize> = (0..k).filter(|&c| c != j).collect();
                let minor = if k == 1 { 1 } else { det_sub(self, &rows, &cols) as u64 };
                let cof = if (i + j) % 2 == 0 { minor % m } else { (m - minor % m) % m };
                data[j * k + i] = (cof * dinv % m) as u32;
            }
        }
        Some(Mat { dim: k, modulus: self.modulus, data })
    }

    /// `self * v` for a coordinate vector.
    pub fn apply(&self, v: &[u32]) -> Vec<u32> {
        let m = self.modulus as u64;
        (0..self.dim)
            .map(|i| {
                let mut acc = 0u64;
                for (j, &x) in v.iter().enumerate() {
                    acc = (acc + self.get(i, j) as u64 * x as u64) % m;
                }
                acc as u32
            })
            .collect()
    }
}

fn det_minor(a: &Mat, row: usize, cols: &[usize]) -> u32 {
    let rows: Vec<usize> = (row..a.dim).collect();
    det_sub(a, &rows, cols)
}

/// Determinant of the submatrix on `rows x cols` (equal lengths).
fn det_sub(a: &Mat, rows: &[usize], cols: &[usize]) -> u32 {
    let m = a.modulus as u64;
    match rows.len() {
        0 => 1 % a.modulus,
        1 => a.get(rows[0], cols[0]),
        _ => {
            let mut acc = 0u64;
            for (idx, &c) in cols.iter().enumerate() {
                let rest: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
                let term = a.get(rows[0], c) as u64 * det_sub(a, &rows[1..], &rest) as u64 % m;
                acc = if idx % 2 == 0 { (acc + term) % m } else { (acc + m - term) % m };
            }
            acc as u32
        }
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Mat<mod {}>{:?}", self.modulus, self.rows())
    }
}
