//! Small square matrices over a [`FiniteField`], acting on row vectors.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::FiniteField;

#[derive(Clone)]
pub struct Matrix {
    field: Arc<FiniteField>,
    n: usize,
    entries: Vec<u32>,
}

impl PartialEq for Matrix {
    fn eq(&self, other: &Self) -> bool {
        self.field.order() == other.field.order() && self.n == other.n && self.entries == other.entries
    }
}
impl Eq for Matrix {}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<&[u32]> = self.entries.chunks(self.n).collect();
        write!(f, "GF({}){:?}", self.field.order(), rows)
    }
}

impl Matrix {
    pub fn from_rows(field: &Arc<FiniteField>, rows: &[Vec<u32>]) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch(n, row.len()));
            }
            for &v in row {
                if v >= field.order() {
                    return Err(Error::NotInField {
                        value: v as u64,
                        q: field.order(),
                    });
                }
                entries.push(v);
            }
        }
        Ok(Matrix {
            field: field.clone(),
            n,
            entries,
        })
    }

    /// Rows given as integers reduced into the prime field.
    pub fn from_ints(field: &Arc<FiniteField>, rows: &[&[i64]]) -> Result<Self> {
        let rows: Vec<Vec<u32>> = rows
            .iter()
            .map(|r| r.iter().map(|&c| field.from_int(c)).collect())
            .collect();
        Self::from_rows(field, &rows)
    }

    pub fn identity(field: &Arc<FiniteField>, n: usize) -> Self {
        Self::scalar(field, n, 1)
    }

    pub fn scalar(field: &Arc<FiniteField>, n: usize, s: u32) -> Self {
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = s;
        }
        Matrix {
            field: field.clone(),
            n,
            entries,
        }
    }

    pub fn diagonal(field: &Arc<FiniteField>, diag: &[u32]) -> Self {
        let n = diag.len();
        let mut m = Self::scalar(field, n, 0);
        for (i, &d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d;
        }
        m
    }

    pub fn field(&self) -> &Arc<FiniteField> {
        &self.field
    }
    pub fn dim(&self) -> usize {
        self.n
    }
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.entries[i * self.n + j]
    }
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.entries[i * self.n + j] = v;
    }
    pub fn entries(&self) -> &[u32] {
        &self.entries
    }

    fn compatible(&self, other: &Matrix) -> Result<()> {
        if self.field.order() != other.field.order() {
            return Err(Error::MixedFields(self.field.order(), other.field.order()));
        }
        if self.n != other.n {
            return Err(Error::DimensionMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        self.compatible(other)?;
        let (n, f) = (self.n, &self.field);
        let mut entries = vec![0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0;
                for k in 0..n {
                    acc = f.add(acc, f.mul(self.get(i, k), other.get(k, j)));
                }
                entries[i * n + j] = acc;
            }
        }
        Ok(Matrix {
            field: f.clone(),
            n,
            entries,
        })
    }

    pub fn det(&self) -> u32 {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut det = 1;
        for col in 0..n {
            let Some(piv) = (col..n).find(|&r| a[r * n + col] != 0) else {
                return 0;
            };
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                }
                det = f.neg(det);
            }
            let pv = a[col * n + col];
            det = f.mul(det, pv);
            let pinv = f.inv(pv);
            for r in col + 1..n {
                let factor = f.mul(a[r * n + col], pinv);
                if factor == 0 {
                    continue;
                }
                for j in col..n {
                    let sub = f.mul(factor, a[col * n + j]);
                    a[r * n + j] = f.sub(a[r * n + j], sub);
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Result<Matrix> {
        let f = &self.field;
        let n = self.n;
        let mut a = self.entries.clone();
        let mut inv = Matrix::identity(f, n).entries;
        for col in 0..n {
            let piv = (col..n)
                .find(|&r| a[r * n + col] != 0)
                .ok_or(Error::SingularMatrix)?;
            if piv != col {
                for j in 0..n {
                    a.swap(piv * n + j, col * n + j);
                    inv.swap(piv * n + j, col * n + j);
                }
            }
            let pinv = f.inv(a[col * n + col]);
            for j in 0..n {
                a[col * n + j] = f.mul(a[col * n + j], pinv);
                inv[col * n + j] = f.mul(inv[col * n + j], pinv);
            }
            for r in 0..n {
                if r == col {
                    continue;
                }
                let factor = a[r * n + col];
                if factor == 0 {
                    continue;
                }
                for j in 0..n {
                    a[r * n + j] = f.sub(a[r * n + j], f.mul(factor, a[col * n + j]));
                    inv[r * n + j] = f.sub(inv[r * n + j], f.mul(factor, inv[col * n + j]));
                }
            }
        }
        Ok(Matrix {
            field: f.clone(),
            n,
            entries: inv,
        })
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.n;
        let mut m = self.clone();
        for i in 0..n {
            for j in 0..n {
                m.entries[j * n + i] = self.entries[i * n + j];
            }
        }
        m
    }

    /// Entrywise `a -> a^(p^power)`.
    pub fn frobenius(&self, power: u32) -> Matrix {
        let mut m = self.clone();
        let e = (self.field.characteristic() as u64).pow(power);
        for v in m.entries.iter_mut() {
            *v = self.field.pow(*v, e);
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        *self == Matrix::identity(&self.field, self.n)
    }

    /// Scales so the first nonzero entry in row-major order is 1; two
    /// matrices give the same result iff they differ by a nonzero scalar.
    pub fn projective_canonicalize(&self) -> Result<Matrix> {
        let lead = *self
            .entries
            .iter()
            .find(|&&v| v != 0)
            .ok_or(Error::ZeroMatrix)?;
        let s = self.field.inv(lead);
        let mut m = self.clone();
        for v in m.entries.iter_mut() {
            *v = self.field.mul(*v, s);
        }
        Ok(m)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[u32]) -> Vec<u32> {
        let (n, f) = (self.n, &self.field);
        (0..n)
            .map(|j| {
                (0..n).fold(0, |acc, i| f.add(acc, f.mul(v[i], self.get(i, j))))
            })
            .collect()
    }
}
