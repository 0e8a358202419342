use super::{Echelon, Fp};
use std::fmt;

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    p: u32,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over F_{}", self.rows, self.cols, self.p)?;
        for r in 0..self.rows.min(16) {
            writeln!(f, "  {:?}", self.row(r))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(p: u32, rows: usize, cols: usize) -> Matrix {
        Matrix { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u32, n: usize) -> Matrix {
        let mut m = Matrix::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(p: u32, cols: usize, rows: &[Vec<u32>]) -> Matrix {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols);
            data.extend(r.iter().map(|&x| x % p));
        }
        Matrix { p, rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(p: u32, nrows: usize, cols: &[Vec<u32>]) -> Matrix {
        let mut m = Matrix::zeros(p, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x % p);
            }
        }
        m
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn nrows(&self) -> usize {
        self.rows
    }

    pub fn ncols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_at(&mut self, i: usize, j: usize, v: u32) {
        let x = &mut self.data[i * self.cols + j];
        *x = (*x + v) % self.p;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_mut(&mut self, i: usize) -> &mut [u32] {
        &mut self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn columns(&self) -> Vec<Vec<u32>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.p, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch");
        let f = Fp::new(self.p);
        let mut out = Matrix::zeros(self.p, self.rows, other.cols);
        for i in 0..self.rows {
            let (orow, _) = (i * other.cols, 0);
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a != 0 {
                    let src = other.row(k);
                    f.axpy(&mut out.data[orow..orow + other.cols], a, src);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        assert_eq!(v.len(), self.cols);
        let p = self.p as u64;
        (0..self.rows)
            .map(|i| {
                let mut acc: u64 = 0;
                for (a, b) in self.row(i).iter().zip(v) {
                    acc += (*a as u64) * (*b as u64);
                }
                (acc % p) as u32
            })
            .collect()
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = Fp::new(self.p);
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.sub(a, b)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = Fp::new(self.p);
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| f.add(a, b)).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn scaled(&self, a: u32) -> Matrix {
        let data = self.data.iter().map(|&x| x * a % self.p).collect();
        Matrix { p: self.p, rows: self.rows, cols: self.cols, data }
    }

    pub fn row_echelon(&self) -> Echelon {
        Echelon::from_rows(self.p, self.cols, (0..self.rows).map(|i| self.row(i)))
    }

    pub fn rank(&self) -> usize {
        self.row_echelon().rank()
    }

    /// Basis of `{x : A x = 0}`, unit vectors on the non-pivot coordinates.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        self.row_echelon().kernel()
    }

    pub fn is_invertible(&self) -> bool {
        self.rows == self.cols && self.rank() == self.rows
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let s = Solver::new(self);
        if s.rank() != self.rows {
            return None;
        }
        let cols: Vec<Vec<u32>> = (0..self.rows)
            .map(|j| {
                let mut e = vec![0; self.rows];
                e[j] = 1;
                s.solve(&e).expect("invertible")
            })
            .collect();
        Some(Matrix::from_columns(self.p, self.rows, &cols))
    }

    /// Block matrix stacking `self` on top of `other`.
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Matrix { p: self.p, rows: self.rows + other.rows, cols: self.cols, data }
    }
}

/// Solves `A x = y` for a fixed matrix and many right-hand sides.
///
/// Stores an invertible `E` with `E A = R` in reduced row-echelon form.
#[derive(Clone, Debug)]
pub struct Solver {
    field: Fp,
    nrows: usize,
    ncols: usize,
    pivots: Vec<usize>,
    /// `E` restricted to the first `rank` rows.
    top: Matrix,
    /// Remaining rows of `E`: `y` is in the image iff these vanish on it.
    bottom: Matrix,
}

impl Solver {
    pub fn new(a: &Matrix) -> Solver {
        let f = Fp::new(a.p);
        let m = a.rows;
        let n = a.cols;
        // Row-reduce [A | I].
        let w = n + m;
        let mut rows: Vec<Vec<u32>> = (0..m)
            .map(|i| {
                let mut r = vec![0u32; w];
                r[..n].copy_from_slice(a.row(i));
                r[n + i] = 1;
                r
            })
            .collect();
        let mut pivots = Vec::new();
        let mut rank = 0;
        for c in 0..n {
            let Some(pr) = (rank..m).find(|&r| rows[r][c] != 0) else {
                continue;
            };
            rows.swap(rank, pr);
            let inv = f.inv(rows[rank][c]);
            f.scale(&mut rows[rank], inv);
            let piv = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank {
                    let a = row[c];
                    if a != 0 {
                        f.axpy(&mut row[c..], f.neg(a), &piv[c..]);
                    }
                }
            }
            pivots.push(c);
            rank += 1;
            if rank == m {
                break;
            }
        }
        let e_rows: Vec<Vec<u32>> = rows.iter().map(|r| r[n..].to_vec()).collect();
        let top = Matrix::from_rows(a.p, m, &e_rows[..rank]);
        let bottom = Matrix::from_rows(a.p, m, &e_rows[rank..]);
        Solver { field: f, nrows: m, ncols: n, pivots, top, bottom }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn in_image(&self, y: &[u32]) -> bool {
        self.bottom.mul_vec(y).iter().all(|&x| x == 0)
    }

    /// A solution with all free variables zero, if one exists.
    pub fn solve(&self, y: &[u32]) -> Option<Vec<u32>> {
        assert_eq!(y.len(), self.nrows);
        if !self.in_image(y) {
            return None;
        }
        Some(self.solve_unchecked(y))
    }

    /// As [`Solver::solve`] but assumes `y` lies in the image.
    pub fn solve_unchecked(&self, y: &[u32]) -> Vec<u32> {
        let ey = self.top.mul_vec(y);
        let mut x = vec![0u32; self.ncols];
        for (i, &c) in self.pivots.iter().enumerate() {
            x[c] = ey[i] % self.field.p();
        }
        x
    }
}
