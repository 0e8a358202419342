use super::Fp;

/// Incrementally maintained reduced row-echelon form.
///
/// Rows are kept fully reduced, so an incoming vector only needs one pass
/// over its own nonzero pivot coordinates. For `p = 2` rows are bit-packed.
#[derive(Clone, Debug)]
pub struct Echelon {
    field: Fp,
    ncols: usize,
    /// Pivot column of each stored row, increasing.
    pivots: Vec<usize>,
    /// Row index of each column's pivot, or `usize::MAX`.
    pivot_row: Vec<usize>,
    rows: Rows,
    scratch: Vec<u32>,
}

#[derive(Clone, Debug)]
enum Rows {
    Dense(Vec<Vec<u32>>),
    Bits(Vec<Vec<u64>>),
}

impl Echelon {
    pub fn new(p: u32, ncols: usize) -> Echelon {
        let field = Fp::new(p);
        let rows = if p == 2 { Rows::Bits(Vec::new()) } else { Rows::Dense(Vec::new()) };
        Echelon {
            field,
            ncols,
            pivots: Vec::new(),
            pivot_row: vec![usize::MAX; ncols],
            rows,
            scratch: vec![0; ncols],
        }
    }

    pub fn from_rows<'a>(p: u32, ncols: usize, rows: impl IntoIterator<Item = &'a [u32]>) -> Echelon {
        let mut e = Echelon::new(p, ncols);
        for r in rows {
            e.add_row(r);
        }
        e
    }

    pub fn p(&self) -> u32 {
        self.field.p()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn is_full(&self) -> bool {
        self.pivots.len() == self.ncols
    }

    /// Pivot columns in increasing order.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Adds a dense row; returns whether it increased the rank.
    pub fn add_row(&mut self, row: &[u32]) -> bool {
        debug_assert_eq!(row.len(), self.ncols);
        if self.is_full() {
            return false;
        }
        let nz: Vec<(usize, u32)> =
            row.iter().enumerate().filter(|(_, &v)| v != 0).map(|(i, &v)| (i, v)).collect();
        self.add_sparse(&nz)
    }

    /// Adds a sparse row given as `(column, value)` pairs with distinct columns.
    pub fn add_sparse(&mut self, row: &[(usize, u32)]) -> bool {
        if self.is_full() || row.is_empty() {
            return false;
        }
        let f = self.field.clone();
        match &mut self.rows {
            Rows::Dense(rows) => {
                let v = &mut self.scratch;
                for &(c, a) in row {
                    v[c] = f.add(v[c], a % f.p());
                }
                for &(c, _) in row {
                    let r = self.pivot_row[c];
                    if r != usize::MAX {
                        let a = v[c];
                        if a != 0 {
                            f.axpy(v, f.neg(a), &rows[r]);
                        }
                    }
                }
                let lead = v.iter().position(|&x| x != 0);
                let Some(c) = lead else {
                    return false;
                };
                let mut nv = std::mem::replace(v, vec![0; self.ncols]);
                let inv = f.inv(nv[c]);
                f.scale(&mut nv, inv);
                for r in rows.iter_mut() {
                    let a = r[c];
                    if a != 0 {
                        f.axpy(r, f.neg(a), &nv);
                    }
                }
                let pos = self.pivots.partition_point(|&q| q < c);
                self.pivots.insert(pos, c);
                rows.insert(pos, nv);
            }
            Rows::Bits(rows) => {
                let words = self.ncols.div_ceil(64);
                let mut v = vec![0u64; words];
                for &(c, a) in row {
                    if a % 2 == 1 {
                        v[c >> 6] ^= 1 << (c & 63);
                    }
                }
                for &(c, _) in row {
                    let r = self.pivot_row[c];
                    if r != usize::MAX && (v[c >> 6] >> (c & 63)) & 1 == 1 {
                        for (x, y) in v.iter_mut().zip(&rows[r]) {
                            *x ^= y;
                        }
                    }
                }
                let Some(c) = first_bit(&v) else {
                    return false;
                };
                for r in rows.iter_mut() {
                    if (r[c >> 6] >> (c & 63)) & 1 == 1 {
                        for (x, y) in r.iter_mut().zip(&v) {
                            *x ^= y;
                        }
                    }
                }
                let pos = self.pivots.partition_point(|&q| q < c);
                self.pivots.insert(pos, c);
                rows.insert(pos, v);
            }
        }
        for (i, &c) in self.pivots.iter().enumerate() {
            self.pivot_row[c] = i;
        }
        true
    }

    /// Row `i` of the reduced basis as a dense vector.
    pub fn row(&self, i: usize) -> Vec<u32> {
        match &self.rows {
            Rows::Dense(rows) => rows[i].clone(),
            Rows::Bits(rows) => (0..self.ncols).map(|c| ((rows[i][c >> 6] >> (c & 63)) & 1) as u32).collect(),
        }
    }

    /// The canonical basis of the row space.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        (0..self.rank()).map(|i| self.row(i)).collect()
    }

    /// Reduces `v` modulo the row space in place; the result is zero at
    /// every pivot column.
    pub fn reduce(&self, v: &mut [u32]) {
        let f = &self.field;
        for (i, &c) in self.pivots.iter().enumerate() {
            let a = v[c];
            if a != 0 {
                match &self.rows {
                    Rows::Dense(rows) => f.axpy(v, f.neg(a), &rows[i]),
                    Rows::Bits(rows) => {
                        for (k, x) in v.iter_mut().enumerate() {
                            *x ^= ((rows[i][k >> 6] >> (k & 63)) & 1) as u32;
                        }
                    }
                }
            }
        }
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        let mut w = v.to_vec();
        self.reduce(&mut w);
        w.iter().all(|&x| x == 0)
    }

    /// Coordinates of a vector of the row space in the reduced basis.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let c: Vec<u32> = self.pivots.iter().map(|&p| v[p]).collect();
        self.contains(v).then_some(c)
    }

    /// Basis of `{x : r·x = 0 for every row r}`: one vector per non-pivot
    /// column, equal to the unit vector on the non-pivot coordinates.
    pub fn kernel(&self) -> Vec<Vec<u32>> {
        let f = &self.field;
        let mut out = Vec::with_capacity(self.ncols - self.rank());
        for free in 0..self.ncols {
            if self.pivot_row[free] != usize::MAX {
                continue;
            }
            let mut x = vec![0u32; self.ncols];
            x[free] = 1;
            for (i, &c) in self.pivots.iter().enumerate() {
                let a = self.entry(i, free);
                if a != 0 {
                    x[c] = f.neg(a);
                }
            }
            out.push(x);
        }
        out
    }

    fn entry(&self, i: usize, c: usize) -> u32 {
        match &self.rows {
            Rows::Dense(rows) => rows[i][c],
            Rows::Bits(rows) => ((rows[i][c >> 6] >> (c & 63)) & 1) as u32,
        }
    }
}

fn first_bit(v: &[u64]) -> Option<usize> {
    v.iter().enumerate().find(|(_, &w)| w != 0).map(|(k, &w)| k * 64 + w.trailing_zeros() as usize)
}
