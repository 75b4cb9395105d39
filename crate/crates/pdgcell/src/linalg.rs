//! Dense exact linear algebra over F_p.

use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::coeff::PrimeConfig;

/// Row-major dense matrix with entries reduced modulo `p`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

/// Serialized row-major as a list of rows.
impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.rows))?;
        for i in 0..self.rows {
            seq.serialize_element(self.row(i))?;
        }
        seq.end()
    }
}

impl Mat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(rows: &[Vec<u32>], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend_from_slice(r);
        }
        Self { rows: rows.len(), cols, data }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols(cols: &[Vec<u32>], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, &x) in c.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: u32) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<u32> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<u32>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    pub fn mul(&self, rhs: &Mat, f: PrimeConfig) -> Mat {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let p = f.p() as u64;
        let mut out = vec![0u64; self.rows * rhs.cols];
        for i in 0..self.rows {
            let orow = &mut out[i * rhs.cols..(i + 1) * rhs.cols];
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k] as u64;
                if a == 0 {
                    continue;
                }
                let rrow = &rhs.data[k * rhs.cols..(k + 1) * rhs.cols];
                for (o, &b) in orow.iter_mut().zip(rrow) {
                    *o += a * b as u64;
                }
            }
            for o in orow.iter_mut() {
                *o %= p;
            }
        }
        Mat { rows: self.rows, cols: rhs.cols, data: out.into_iter().map(|x| x as u32).collect() }
    }

    pub fn mul_vec(&self, v: &[u32], f: PrimeConfig) -> Vec<u32> {
        assert_eq!(self.cols, v.len());
        let p = f.p() as u64;
        (0..self.rows)
            .map(|i| {
                let s: u64 = self.row(i).iter().zip(v).map(|(&a, &b)| a as u64 * b as u64).sum();
                (s % p) as u32
            })
            .collect()
    }

    pub fn add(&self, rhs: &Mat, f: PrimeConfig) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, rhs: &Mat, f: PrimeConfig) -> Mat {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&rhs.data).map(|(&a, &b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: u32, f: PrimeConfig) -> Mat {
        Mat {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|&a| f.mul(a, c)).collect(),
        }
    }

    /// `self += c * rhs`.
    pub fn axpy(&mut self, c: u32, rhs: &Mat, f: PrimeConfig) {
        if c == 0 {
            return;
        }
        for (a, &b) in self.data.iter_mut().zip(&rhs.data) {
            *a = f.add(*a, f.mul(c, b));
        }
    }

    pub fn pow(&self, e: u64, f: PrimeConfig) -> Mat {
        assert_eq!(self.rows, self.cols);
        let mut acc = Mat::identity(self.rows);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base, f);
            }
            base = base.mul(&base, f);
            e >>= 1;
        }
        acc
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Mat {
        let mut m = Mat::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                m.set(a, b, self.get(i, j));
            }
        }
        m
    }
}

/// Reduced row echelon form and pivot columns.
pub fn rref(m: &Mat, f: PrimeConfig) -> (Mat, Vec<usize>) {
    let mut a = m.clone();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..a.cols {
        if r == a.rows {
            break;
        }
        let Some(piv) = (r..a.rows).find(|&i| a.get(i, c) != 0) else {
            continue;
        };
        if piv != r {
            for j in 0..a.cols {
                a.data.swap(piv * a.cols + j, r * a.cols + j);
            }
        }
        let inv = f.inv(a.get(r, c));
        for j in c..a.cols {
            let x = a.get(r, j);
            a.set(r, j, f.mul(x, inv));
        }
        for i in 0..a.rows {
            if i == r {
                continue;
            }
            let factor = a.get(i, c);
            if factor == 0 {
                continue;
            }
            for j in c..a.cols {
                let x = f.sub(a.get(i, j), f.mul(factor, a.get(r, j)));
                a.set(i, j, x);
            }
        }
        pivots.push(c);
        r += 1;
    }
    (a, pivots)
}

pub fn rank(m: &Mat, f: PrimeConfig) -> usize {
    rref(m, f).1.len()
}

/// Basis of the right kernel `{x : m x = 0}`.
pub fn nullspace(m: &Mat, f: PrimeConfig) -> Vec<Vec<u32>> {
    let (r, pivots) = rref(m, f);
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut x = vec![0u32; m.cols];
            x[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                x[pc] = f.neg(r.get(i, fc));
            }
            x
        })
        .collect()
}

pub fn inverse(m: &Mat, f: PrimeConfig) -> Option<Mat> {
    let n = m.rows;
    if n != m.cols {
        return None;
    }
    let mut aug = Mat::zeros(n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            aug.set(i, j, m.get(i, j));
        }
        aug.set(i, n + i, 1);
    }
    let (r, pivots) = rref(&aug, f);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    let cols: Vec<usize> = (n..2 * n).collect();
    let rows: Vec<usize> = (0..n).collect();
    Some(r.select(&rows, &cols))
}

pub fn vec_is_zero(v: &[u32]) -> bool {
    v.iter().all(|&x| x == 0)
}

/// `acc += c * v`.
pub fn axpy(acc: &mut [u32], c: u32, v: &[u32], f: PrimeConfig) {
    if c == 0 {
        return;
    }
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = f.add(*a, f.mul(c, b));
    }
}

pub fn vec_sub(a: &[u32], b: &[u32], f: PrimeConfig) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

pub fn vec_add(a: &[u32], b: &[u32], f: PrimeConfig) -> Vec<u32> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

pub fn vec_scale(a: &[u32], c: u32, f: PrimeConfig) -> Vec<u32> {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// Linear combination `sum_i c_i v_i` of equal-length vectors.
pub fn combine(coeffs: &[u32], vecs: &[Vec<u32>], len: usize, f: PrimeConfig) -> Vec<u32> {
    let mut out = vec![0u32; len];
    for (&c, v) in coeffs.iter().zip(vecs) {
        axpy(&mut out, c, v, f);
    }
    out
}

/// Incrementally built subspace with a coordinate solver.
///
/// Vectors offered through [`Subspace::insert`] are kept only when independent of
/// those already present; coordinates are reported against the kept vectors in
/// insertion order.
#[derive(Debug, Clone)]
pub struct Subspace {
    f: PrimeConfig,
    len: usize,
    echelon: Vec<Vec<u32>>,
    pivots: Vec<usize>,
    // echelon[r] = sum_j transform[r][j] * kept[j]
    transform: Vec<Vec<u32>>,
    kept: Vec<Vec<u32>>,
    kept_labels: Vec<usize>,
}

impl Subspace {
    pub fn new(len: usize, f: PrimeConfig) -> Self {
        Self {
            f,
            len,
            echelon: Vec::new(),
            pivots: Vec::new(),
            transform: Vec::new(),
            kept: Vec::new(),
            kept_labels: Vec::new(),
        }
    }

    /// Span of `vecs`, keeping a maximal independent prefix-greedy subset.
    pub fn spanned_by(vecs: &[Vec<u32>], len: usize, f: PrimeConfig) -> Self {
        let mut s = Self::new(len, f);
        for (i, v) in vecs.iter().enumerate() {
            s.insert_labelled(v, i);
        }
        s
    }

    pub fn field(&self) -> PrimeConfig {
        self.f
    }

    pub fn ambient_len(&self) -> usize {
        self.len
    }

    pub fn dim(&self) -> usize {
        self.kept.len()
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.kept
    }

    /// Labels (input positions) of the kept vectors.
    pub fn labels(&self) -> &[usize] {
        &self.kept_labels
    }

    /// Reduce `v` against the echelon rows; returns residual and echelon coefficients.
    fn reduce(&self, v: &[u32]) -> (Vec<u32>, Vec<u32>) {
        let f = self.f;
        let mut res = v.to_vec();
        let mut coef = vec![0u32; self.echelon.len()];
        for (r, row) in self.echelon.iter().enumerate() {
            let c = res[self.pivots[r]];
            if c != 0 {
                coef[r] = c;
                axpy(&mut res, f.neg(c), row, f);
            }
        }
        (res, coef)
    }

    pub fn insert(&mut self, v: &[u32]) -> bool {
        let label = self.kept.len();
        self.insert_labelled(v, label)
    }

    /// Adds `v` if independent; returns whether it was kept.
    pub fn insert_labelled(&mut self, v: &[u32], label: usize) -> bool {
        assert_eq!(v.len(), self.len, "vector length mismatch");
        let f = self.f;
        let (res, coef) = self.reduce(v);
        let Some(pc) = res.iter().position(|&x| x != 0) else {
            return false;
        };
        let k = self.kept.len();
        // res = v - sum_r coef[r] * echelon[r]
        let mut t = vec![0u32; k + 1];
        t[k] = 1;
        for (r, &c) in coef.iter().enumerate() {
            if c != 0 {
                for j in 0..k {
                    t[j] = f.sub(t[j], f.mul(c, self.transform[r][j]));
                }
            }
        }
        let inv = f.inv(res[pc]);
        let row = vec_scale(&res, inv, f);
        let t = vec_scale(&t, inv, f);
        for tr in &mut self.transform {
            tr.push(0);
        }
        self.echelon.push(row);
        self.pivots.push(pc);
        self.transform.push(t);
        self.kept.push(v.to_vec());
        self.kept_labels.push(label);
        true
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        vec_is_zero(&self.reduce(v).0)
    }

    /// Coordinates of `v` against the kept vectors, or `None` when outside the span.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.f;
        let (res, coef) = self.reduce(v);
        if !vec_is_zero(&res) {
            return None;
        }
        let k = self.kept.len();
        let mut out = vec![0u32; k];
        for (r, &c) in coef.iter().enumerate() {
            if c != 0 {
                axpy(&mut out, c, &self.transform[r], f);
            }
        }
        Some(out)
    }

    /// Component of `v` outside the echelon span (zero iff contained).
    pub fn residual(&self, v: &[u32]) -> Vec<u32> {
        self.reduce(v).0
    }
}

/// Intersection of two subspaces of the same ambient space, as a list of vectors.
pub fn intersect(a: &Subspace, b: &Subspace, f: PrimeConfig) -> Vec<Vec<u32>> {
    // solve sum x_i a_i = sum y_j b_j
    let len = a.ambient_len();
    let mut cols: Vec<Vec<u32>> = a.basis().to_vec();
    cols.extend(b.basis().iter().map(|v| vec_scale(v, f.neg(1), f)));
    if cols.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_cols(&cols, len);
    let ker = nullspace(&m, f);
    let mut out = Subspace::new(len, f);
    for x in ker {
        let v = combine(&x[..a.dim()], a.basis(), len, f);
        out.insert(&v);
    }
    out.basis().to_vec()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f5() -> PrimeConfig {
        PrimeConfig::new(5).unwrap()
    }

    #[test]
    fn rank_and_kernel() {
        let f = PrimeConfig::new(7).unwrap();
        let m = Mat::from_rows(&[vec![1, 2, 3], vec![2, 4, 1], vec![3, 6, 4]], 3);
        // third row = first + second
        assert_eq!(rank(&m, f), 2);
        let ker = nullspace(&m, f);
        assert_eq!(ker.len(), 1);
        assert!(vec_is_zero(&m.mul_vec(&ker[0], f)));
    }

    #[test]
    fn inverse_roundtrip() {
        let f = f5();
        let m = Mat::from_rows(&[vec![1, 2], vec![3, 4]], 2);
        let inv = inverse(&m, f).unwrap();
        assert_eq!(m.mul(&inv, f), Mat::identity(2));
        let sing = Mat::from_rows(&[vec![1, 2], vec![2, 4]], 2);
        assert!(inverse(&sing, f).is_none());
    }

    #[test]
    fn subspace_coords() {
        let f = f5();
        let vecs = vec![vec![1, 1, 0, 0], vec![2, 2, 0, 0], vec![0, 1, 1, 0], vec![0, 0, 1, 3]];
        let s = Subspace::spanned_by(&vecs, 4, f);
        assert_eq!(s.dim(), 3);
        assert_eq!(s.labels(), &[0, 2, 3]);
        let target = vec![3, 4, 3, 1];
        let c = s.coords(&target).unwrap();
        assert_eq!(combine(&c, s.basis(), 4, f), target);
        assert!(s.coords(&[0, 0, 0, 1]).is_none());
    }

    #[test]
    fn intersection() {
        let f = f5();
        let a = Subspace::spanned_by(&[vec![1, 0, 0], vec![0, 1, 0]], 3, f);
        let b = Subspace::spanned_by(&[vec![0, 1, 1], vec![1, 1, 0]], 3, f);
        let i = intersect(&a, &b, f);
        assert_eq!(i.len(), 1);
        assert!(a.contains(&i[0]) && b.contains(&i[0]));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn rank_nullity(entries in proptest::collection::vec(0u32..7, 20)) {
                let f = PrimeConfig::new(7).unwrap();
                let m = Mat::from_rows(&entries.chunks(5).map(|c| c.to_vec()).collect::<Vec<_>>(), 5);
                prop_assert_eq!(rank(&m, f) + nullspace(&m, f).len(), 5);
                let t = m.transpose();
                prop_assert_eq!(rank(&m, f), rank(&t, f));
            }
        }
    }
}
