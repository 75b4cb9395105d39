//! The polynomial module `V = F_p[y_1..y_n] / I` on which `NH_n^l` acts faithfully.
//!
//! `I` is generated by `R_k = h_{l-k+1}(y_1..y_k)` for `k = 1..n`, obtained from
//! `R_1 = y_1^l` by `R_{k+1} = d_k(R_k)`. Leading terms `y_k^{l-k+1}` give a
//! normal form on the staircase monomials `y^r` with `r_k <= l - k`.

use std::collections::{BTreeMap, HashMap};

use crate::coeff::PrimeConfig;
use crate::error::{Error, Result};
use crate::linalg::Mat;

pub type Exponents = Vec<u16>;

/// Sparse polynomial over F_p in `n` variables.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Poly {
    terms: BTreeMap<Exponents, u32>,
}

impl Poly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(e: Exponents, c: u32) -> Self {
        let mut p = Self::zero();
        if c != 0 {
            p.terms.insert(e, c);
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponents, &u32)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, e: Exponents, c: u32, f: PrimeConfig) {
        if c == 0 {
            return;
        }
        let slot = self.terms.entry(e.clone()).or_insert(0);
        *slot = f.add(*slot, c);
        if *slot == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, other: &Poly, f: PrimeConfig) -> Poly {
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(e.clone(), c, f);
        }
        out
    }

    /// Multiply by `y_i` (1-based).
    pub fn mul_var(&self, i: usize) -> Poly {
        Poly {
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| {
                    let mut e = e.clone();
                    e[i - 1] += 1;
                    (e, c)
                })
                .collect(),
        }
    }

    /// Divided difference `(f - s_i f) / (y_i - y_{i+1})` in the free polynomial ring.
    pub fn divided_difference(&self, i: usize, f: PrimeConfig) -> Poly {
        let mut out = Poly::zero();
        for (e, &c) in &self.terms {
            let (a, b) = (e[i - 1], e[i]);
            if a > b {
                for t in 0..(a - b) {
                    let mut m = e.clone();
                    m[i - 1] = a - 1 - t;
                    m[i] = b + t;
                    out.add_term(m, c, f);
                }
            } else if b > a {
                for t in 0..(b - a) {
                    let mut m = e.clone();
                    m[i - 1] = a + t;
                    m[i] = b - 1 - t;
                    out.add_term(m, f.neg(c), f);
                }
            }
        }
        out
    }
}

/// Complete homogeneous symmetric polynomial `h_d(y_1..y_k)` padded to `n` variables.
pub fn complete_homogeneous(d: usize, k: usize, n: usize, f: PrimeConfig) -> Poly {
    let mut out = Poly::zero();
    fn rec(d: usize, k: usize, var: usize, cur: &mut Exponents, out: &mut Poly, f: PrimeConfig) {
        if var + 1 == k {
            cur[var] = d as u16;
            out.add_term(cur.clone(), 1, f);
            cur[var] = 0;
            return;
        }
        for a in 0..=d {
            cur[var] = a as u16;
            rec(d - a, k, var + 1, cur, out, f);
        }
        cur[var] = 0;
    }
    if k == 0 {
        if d == 0 {
            out.add_term(vec![0; n], 1, f);
        }
        return out;
    }
    rec(d, k, 0, &mut vec![0; n], &mut out, f);
    out
}

/// Staircase basis, reduction relations and generator actions on `V`.
#[derive(Debug, Clone)]
pub struct PolyModule {
    n: usize,
    l: usize,
    f: PrimeConfig,
    monomials: Vec<Exponents>,
    index: HashMap<Exponents, usize>,
    relations: Vec<Poly>,
    dots: Vec<Mat>,
    crossings: Vec<Mat>,
}

impl PolyModule {
    pub fn build(n: usize, l: usize, f: PrimeConfig) -> Result<Self> {
        if n > l {
            return Err(Error::InvalidParameters { n, l, reason: "need n <= l".into() });
        }
        let monomials = staircase(n, l);
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut relations = Vec::with_capacity(n);
        if n > 0 {
            let mut e = vec![0u16; n];
            e[0] = l as u16;
            relations.push(Poly::monomial(e, 1));
            for k in 1..n {
                let next = relations[k - 1].divided_difference(k, f);
                relations.push(next);
            }
        }
        let mut module = Self {
            n,
            l,
            f,
            monomials,
            index,
            relations,
            dots: Vec::new(),
            crossings: Vec::new(),
        };
        let d = module.dim();
        let mut cache = HashMap::new();
        for i in 1..=n {
            let mut m = Mat::zeros(d, d);
            for (j, mono) in module.monomials.clone().iter().enumerate() {
                let v = module.normal_form_cached(&Poly::monomial(mono.clone(), 1).mul_var(i), &mut cache);
                for (r, &c) in v.iter().enumerate() {
                    m.set(r, j, c);
                }
            }
            module.dots.push(m);
        }
        for i in 1..n {
            let mut m = Mat::zeros(d, d);
            for (j, mono) in module.monomials.clone().iter().enumerate() {
                let dd = Poly::monomial(mono.clone(), 1).divided_difference(i, f);
                let v = module.normal_form_cached(&dd, &mut cache);
                for (r, &c) in v.iter().enumerate() {
                    m.set(r, j, c);
                }
            }
            module.crossings.push(m);
        }
        Ok(module)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn field(&self) -> PrimeConfig {
        self.f
    }

    pub fn dim(&self) -> usize {
        self.monomials.len()
    }

    pub fn monomials(&self) -> &[Exponents] {
        &self.monomials
    }

    pub fn index_of(&self, e: &[u16]) -> Option<usize> {
        self.index.get(e).copied()
    }

    /// Defining relations `R_k`, leading term `y_k^{l-k+1}`.
    pub fn relations(&self) -> &[Poly] {
        &self.relations
    }

    /// Matrix of multiplication by `y_i` (1-based), acting on column vectors.
    pub fn dot_matrix(&self, i: usize) -> &Mat {
        &self.dots[i - 1]
    }

    /// Matrix of the divided difference `d_i` (1-based).
    pub fn crossing_matrix(&self, i: usize) -> &Mat {
        &self.crossings[i - 1]
    }

    fn check_index(&self, i: usize, max: usize) -> Result<()> {
        if i == 0 || i > max {
            return Err(Error::IndexOutOfRange { index: i, max });
        }
        Ok(())
    }

    pub fn act_dot(&self, i: usize, v: &[u32]) -> Result<Vec<u32>> {
        self.check_index(i, self.n)?;
        Ok(self.dots[i - 1].mul_vec(v, self.f))
    }

    pub fn act_crossing(&self, i: usize, v: &[u32]) -> Result<Vec<u32>> {
        self.check_index(i, self.n.saturating_sub(1))?;
        Ok(self.crossings[i - 1].mul_vec(v, self.f))
    }

    pub fn basis_vector(&self, e: &[u16]) -> Vec<u32> {
        let mut v = vec![0; self.dim()];
        v[self.index[e]] = 1;
        v
    }

    /// Coordinates of the class of `poly` in the staircase basis.
    pub fn normal_form(&self, poly: &Poly) -> Vec<u32> {
        self.normal_form_cached(poly, &mut HashMap::new())
    }

    fn normal_form_cached(&self, poly: &Poly, cache: &mut HashMap<Exponents, Vec<u32>>) -> Vec<u32> {
        let f = self.f;
        let mut out = vec![0u32; self.dim()];
        for (e, &c) in poly.terms() {
            let v = self.monomial_normal_form(e, cache);
            crate::linalg::axpy(&mut out, c, &v, f);
        }
        out
    }

    fn monomial_normal_form(&self, e: &Exponents, cache: &mut HashMap<Exponents, Vec<u32>>) -> Vec<u32> {
        if let Some(&i) = self.index.get(e) {
            let mut v = vec![0; self.dim()];
            v[i] = 1;
            return v;
        }
        if let Some(v) = cache.get(e) {
            return v.clone();
        }
        let f = self.f;
        // the highest violating variable is rewritten first
        let k = (1..=self.n).rev().find(|&k| e[k - 1] as usize > self.l - k).expect("violation");
        let lead = (self.l - k + 1) as u16;
        let mut rest = e.clone();
        rest[k - 1] -= lead;
        let mut out = vec![0u32; self.dim()];
        for (r, &c) in self.relations[k - 1].terms() {
            if r[k - 1] == lead && r.iter().enumerate().all(|(j, &x)| j == k - 1 || x == 0) {
                continue;
            }
            let m: Exponents = r.iter().zip(&rest).map(|(a, b)| a + b).collect();
            let v = self.monomial_normal_form(&m, cache);
            crate::linalg::axpy(&mut out, f.neg(c), &v, f);
        }
        cache.insert(e.clone(), out.clone());
        out
    }
}

/// Exponent tuples with `r_k <= l - k`, in lexicographic order.
pub fn staircase(n: usize, l: usize) -> Vec<Exponents> {
    let mut out = Vec::new();
    fn rec(n: usize, l: usize, cur: &mut Exponents, out: &mut Vec<Exponents>) {
        let k = cur.len();
        if k == n {
            out.push(cur.clone());
            return;
        }
        for r in 0..=(l - k - 1) {
            cur.push(r as u16);
            rec(n, l, cur, out);
            cur.pop();
        }
    }
    rec(n, l, &mut Vec::new(), &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32) -> PrimeConfig {
        PrimeConfig::new(p).unwrap()
    }

    fn falling(l: usize, n: usize) -> usize {
        (0..n).map(|i| l - i).product()
    }

    #[test]
    fn dimensions() {
        for l in 1..=6 {
            for n in 0..=l.min(4) {
                let m = PolyModule::build(n, l, f(5)).unwrap();
                assert_eq!(m.dim(), falling(l, n), "n={n} l={l}");
            }
        }
        assert_eq!(PolyModule::build(2, 4, f(5)).unwrap().dim(), 12);
        assert!(PolyModule::build(3, 2, f(5)).is_err());
    }

    #[test]
    fn recursion_gives_complete_homogeneous() {
        for l in 1..=6 {
            for n in 1..=l.min(4) {
                let pc = f(7);
                let m = PolyModule::build(n, l, pc).unwrap();
                for k in 1..=n {
                    assert_eq!(m.relations()[k - 1], complete_homogeneous(l - k + 1, k, n, pc));
                }
            }
        }
    }

    #[test]
    fn one_strand() {
        let m = PolyModule::build(1, 4, f(3)).unwrap();
        assert_eq!(m.monomials(), &[vec![0], vec![1], vec![2], vec![3]]);
        let top = m.basis_vector(&[3]);
        assert!(m.act_dot(1, &top).unwrap().iter().all(|&x| x == 0));
    }

    #[test]
    fn two_two() {
        // y1^2 = 0, y1 + y2 = 0: dimension 2
        let pc = f(3);
        let m = PolyModule::build(2, 2, pc).unwrap();
        assert_eq!(m.dim(), 2);
        let y2 = m.normal_form(&Poly::monomial(vec![0, 1], 1));
        assert_eq!(y2, vec![0, pc.neg(1)]);
        let y1y2 = m.normal_form(&Poly::monomial(vec![1, 1], 1));
        assert!(y1y2.iter().all(|&x| x == 0));
    }

    #[test]
    fn dot_and_crossing_examples() {
        let pc = f(5);
        let m = PolyModule::build(2, 4, pc).unwrap();
        let one = m.basis_vector(&[0, 0]);
        assert_eq!(m.act_dot(2, &one).unwrap(), m.basis_vector(&[0, 1]));
        assert!(m.act_crossing(1, &one).unwrap().iter().all(|&x| x == 0));
        let y1 = m.basis_vector(&[1, 0]);
        assert_eq!(m.act_crossing(1, &y1).unwrap(), one);
        let y1sq = m.basis_vector(&[2, 0]);
        let expected = crate::linalg::vec_add(&y1, &m.basis_vector(&[0, 1]), pc);
        assert_eq!(m.act_crossing(1, &y1sq).unwrap(), expected);
        // y2 * y2^2 = y2^3 rewritten by h_3(y1, y2) = 0
        let y2sq = m.basis_vector(&[0, 2]);
        let got = m.act_dot(2, &y2sq).unwrap();
        let mut oracle = Poly::monomial(vec![0, 3], 1);
        oracle = oracle.add(&complete_homogeneous(3, 2, 2, pc).scale_neg(pc), pc);
        assert_eq!(got, m.normal_form(&oracle));
        assert!(m.act_dot(3, &one).is_err());
        assert!(m.act_crossing(2, &one).is_err());
    }

    #[test]
    fn nilhecke_relations_on_module() {
        for (n, l) in [(2, 2), (2, 4), (3, 3), (3, 5)] {
            let pc = f(5);
            let m = PolyModule::build(n, l, pc).unwrap();
            let d = m.dim();
            let id = Mat::identity(d);
            for i in 1..n {
                let psi = m.crossing_matrix(i);
                assert!(psi.mul(psi, pc).is_zero());
                let yi = m.dot_matrix(i);
                let yj = m.dot_matrix(i + 1);
                assert_eq!(yi.mul(psi, pc).sub(&psi.mul(yj, pc), pc), id);
                assert_eq!(psi.mul(yi, pc).sub(&yj.mul(psi, pc), pc), id);
                if i + 1 < n {
                    let psj = m.crossing_matrix(i + 1);
                    assert_eq!(psi.mul(psj, pc).mul(psi, pc), psj.mul(psi, pc).mul(psj, pc));
                }
            }
            for i in 1..=n {
                for j in 1..=n {
                    let a = m.dot_matrix(i).mul(m.dot_matrix(j), pc);
                    let b = m.dot_matrix(j).mul(m.dot_matrix(i), pc);
                    assert_eq!(a, b);
                }
            }
            assert!(m.dot_matrix(1).pow(l as u64, pc).is_zero());
        }
    }

    #[test]
    fn divided_difference_descends_to_quotient() {
        let pc = f(5);
        let (n, l) = (3, 4);
        let m = PolyModule::build(n, l, pc).unwrap();
        for a in 0..=5u16 {
            for b in 0..=4u16 {
                for c in 0..=3u16 {
                    let poly = Poly::monomial(vec![a, b, c], 1);
                    let nf = m.normal_form(&poly);
                    for i in 1..n {
                        let before = m.normal_form(&poly.divided_difference(i, pc));
                        let after = m.act_crossing(i, &nf).unwrap();
                        assert_eq!(before, after, "{a} {b} {c} i={i}");
                    }
                }
            }
        }
    }

    impl Poly {
        fn scale_neg(&self, f: PrimeConfig) -> Poly {
            Poly { terms: self.terms.iter().map(|(e, &c)| (e.clone(), f.neg(c))).collect() }
        }
    }
}
