//! Exact linear algebra over the prime field `F_p`.

mod echelon;
mod matrix;
mod sparse;
mod subspace;

pub use echelon::Echelon;
pub use matrix::{Matrix, Solver};
pub use sparse::{sparse_cohomology, SparseMatrix};
pub use subspace::{QuotientBasis, Subspace};

/// Arithmetic in `F_p` for a prime `p < 2^16`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fp {
    p: u32,
    inverses: Vec<u32>,
}

impl Fp {
    pub fn new(p: u32) -> Fp {
        assert!((2..65536).contains(&p), "prime out of range");
        let mut inverses = vec![0; p as usize];
        for a in 1..p {
            inverses[a as usize] = pow_mod(a, p - 2, p);
        }
        Fp { p, inverses }
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        a * b % self.p
    }

    #[inline]
    pub fn inv(&self, a: u32) -> u32 {
        debug_assert!(a != 0);
        self.inverses[a as usize]
    }

    /// Reduces an arbitrary integer into `0..p`.
    pub fn from_i64(&self, a: i64) -> u32 {
        a.rem_euclid(self.p as i64) as u32
    }

    /// `dst += a·src`.
    #[inline]
    pub fn axpy(&self, dst: &mut [u32], a: u32, src: &[u32]) {
        if a == 0 {
            return;
        }
        let p = self.p;
        if p == 2 {
            for (d, &s) in dst.iter_mut().zip(src) {
                *d ^= s;
            }
            return;
        }
        for (d, &s) in dst.iter_mut().zip(src) {
            let t = *d + a * s % p;
            *d = if t >= p { t - p } else { t };
        }
    }

    pub fn scale(&self, v: &mut [u32], a: u32) {
        for x in v.iter_mut() {
            *x = *x * a % self.p;
        }
    }
}

fn pow_mod(a: u32, e: u32, p: u32) -> u32 {
    let mut r: u64 = 1;
    let mut b = a as u64 % p as u64;
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}
