//! Small dense matrices with power-series entries.
//!
//! Edge maps of quiver representations are 1x1 or 2x2 matrices over the
//! truncated series ring; homomorphisms between rank-2 modules are 2x2.
//! Shapes and precisions must match for arithmetic; mismatches panic.

use crate::error::Result;
use crate::series::{PowerSeries, Scalar};
use std::fmt;
use std::ops::{Index, IndexMut};

#[derive(Clone, PartialEq, Eq)]
pub struct SeriesMatrix {
    rows: usize,
    cols: usize,
    data: Vec<PowerSeries>,
}

impl SeriesMatrix {
    pub fn zero(rows: usize, cols: usize, prec: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        SeriesMatrix {
            rows,
            cols,
            data: vec![PowerSeries::zero(prec); rows * cols],
        }
    }

    pub fn identity(n: usize, prec: usize) -> Self {
        let mut m = Self::zero(n, n, prec);
        for i in 0..n {
            m[(i, i)] = PowerSeries::one(prec);
        }
        m
    }

    /// `t` times the identity, the value of `x_i y_i` on every module here.
    pub fn t_identity(n: usize, prec: usize) -> Self {
        let mut m = Self::zero(n, n, prec);
        for i in 0..n {
            m[(i, i)] = PowerSeries::t(prec);
        }
        m
    }

    /// Builds a matrix from rows; all rows must share a length, all entries a precision.
    pub fn from_rows(rows: Vec<Vec<PowerSeries>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty());
        let cols = rows[0].len();
        let prec = rows[0][0].prec();
        assert!(rows.iter().all(|r| r.len() == cols));
        let data: Vec<PowerSeries> = rows.into_iter().flatten().collect();
        assert!(data.iter().all(|s| s.prec() == prec));
        SeriesMatrix {
            rows: data.len() / cols,
            cols,
            data,
        }
    }

    /// 1x1 wrapper, used when rank-1 modules enter the generic hom solver.
    pub fn from_scalar_series(s: PowerSeries) -> Self {
        SeriesMatrix {
            rows: 1,
            cols: 1,
            data: vec![s],
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn prec(&self) -> usize {
        self.data[0].prec()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(PowerSeries::is_zero)
    }

    pub fn entries(&self) -> &[PowerSeries] {
        &self.data
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(
            self.cols, rhs.rows,
            "matrix shape mismatch: {}x{} * {}x{}",
            self.rows, self.cols, rhs.rows, rhs.cols
        );
        let prec = self.prec();
        let mut out = Self::zero(self.rows, rhs.cols, prec);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] = &out[(i, j)] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn scalar_mul(&self, c: &Scalar) -> Self {
        self.map(|s| s.scalar_mul(c))
    }

    pub fn map(&self, f: impl Fn(&PowerSeries) -> PowerSeries) -> Self {
        SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    /// Entry-wise exact division by `t`; errors if any entry has a nonzero
    /// constant term.
    pub fn div_by_t(&self) -> Result<Self> {
        let data = self
            .data
            .iter()
            .map(|s| s.div_by_t())
            .collect::<Result<Vec<_>>>()?;
        Ok(SeriesMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn truncate(&self, new_prec: usize) -> Self {
        self.map(|s| s.truncate(new_prec))
    }

    pub fn lift(&self, new_prec: usize) -> Self {
        self.map(|s| s.lift(new_prec))
    }

    /// Determinant; implemented for the 1x1 and 2x2 shapes used in this crate.
    pub fn det(&self) -> PowerSeries {
        assert_eq!(self.rows, self.cols);
        match self.rows {
            1 => self[(0, 0)].clone(),
            2 => &(&self[(0, 0)] * &self[(1, 1)]) - &(&self[(0, 1)] * &self[(1, 0)]),
            n => panic!("determinant not implemented for {n}x{n}"),
        }
    }

    /// Adjugate of a 2x2 matrix: `M * adj(M) = det(M) * Id`. For the edge maps
    /// of rank-2 modules (determinant `t`) this is `t * M^{-1}`.
    pub fn adjugate2(&self) -> Self {
        assert_eq!((self.rows, self.cols), (2, 2));
        SeriesMatrix {
            rows: 2,
            cols: 2,
            data: vec![
                self[(1, 1)].clone(),
                -&self[(0, 1)],
                -&self[(1, 0)],
                self[(0, 0)].clone(),
            ],
        }
    }
}

impl Index<(usize, usize)> for SeriesMatrix {
    type Output = PowerSeries;
    fn index(&self, (r, c): (usize, usize)) -> &PowerSeries {
        assert!(r < self.rows && c < self.cols);
        &self.data[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for SeriesMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut PowerSeries {
        assert!(r < self.rows && c < self.cols);
        &mut self.data[r * self.cols + c]
    }
}

impl fmt::Debug for SeriesMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[")?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self[(r, c)])?;
            }
            writeln!(f, "]")?;
        }
        write!(f, "]")
    }
}
