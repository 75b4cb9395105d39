//! The cyclotomic nilHecke algebra `NH_n^l` over `F_p`.
//!
//! Elements are coordinate vectors in the basis `psi_w y^r` (`w` in `S_n`, `r` a
//! staircase exponent). Products, the anti-involution and the differential are
//! evaluated on operator matrices acting on the polynomial module and pulled back
//! through a fixed set of pivot entries.

pub mod cellular;
pub mod cyclic;
pub mod induction;
pub mod stosic;

use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use serde::Serialize;

use crate::coeff::PrimeConfig;
use crate::combinat::{Multipartition, Perm, Tableau};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat};
use crate::polyrep::{staircase, Exponents, PolyModule};

/// An element of `NH_n^l`, stored as coordinates in the `psi_w y^r` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NHElement {
    coords: Vec<u32>,
}

impl NHElement {
    pub fn from_coords(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<u32> {
        self.coords
    }

    pub fn is_zero(&self) -> bool {
        linalg::vec_is_zero(&self.coords)
    }
}

/// A basis word `psi_{i_1} .. psi_{i_k} y_1^{r_1} .. y_n^{r_n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasisWord {
    pub perm: Perm,
    pub word: Vec<usize>,
    pub exps: Exponents,
}

impl BasisWord {
    /// `2|r| - 2 l(w)`.
    pub fn degree(&self) -> i64 {
        2 * self.exps.iter().map(|&e| e as i64).sum::<i64>() - 2 * self.word.len() as i64
    }
}

/// Which of the standard nilHecke idempotents to build.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdempotentSpec {
    /// `e_n = y_1^{n-1} .. y_n^0 psi_{w_0}`.
    Full,
    /// `e_{i_1} ⊗ .. ⊗ e_{i_r}` on consecutive blocks.
    Sequence(Vec<usize>),
    /// `e_n' = psi_{w_0} y_1^0 .. y_n^{n-1}`.
    Primed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Letter {
    Psi(usize),
    Y(usize),
}

#[derive(Debug)]
pub struct NHAlgebra {
    n: usize,
    l: usize,
    f: PrimeConfig,
    poly: PolyModule,
    words: Vec<BasisWord>,
    index: HashMap<(Perm, Exponents), usize>,
    ops: Vec<Mat>,
    pivots: Vec<(usize, usize)>,
    extract: Mat,
    diff: Mat,
    star: Mat,
    right_mult: Vec<OnceLock<Mat>>,
}

impl NHAlgebra {
    /// Builds `NH_n^l` over `F_p` and checks faithfulness on the polynomial module.
    pub fn build(n: usize, l: usize, p: u32) -> Result<Self> {
        let f = PrimeConfig::new(p)?;
        let poly = PolyModule::build(n, l, f)?;
        let d = poly.dim();
        let mut words = Vec::new();
        for perm in Perm::all(n) {
            let word = perm.reduced_word();
            for exps in staircase(n, l) {
                words.push(BasisWord { perm: perm.clone(), word: word.clone(), exps });
            }
        }
        let index = words
            .iter()
            .enumerate()
            .map(|(k, w)| ((w.perm.clone(), w.exps.clone()), k))
            .collect();
        let dim = words.len();
        let mut alg = Self {
            n,
            l,
            f,
            poly,
            words,
            index,
            ops: Vec::new(),
            pivots: Vec::new(),
            extract: Mat::zeros(0, 0),
            diff: Mat::zeros(0, 0),
            star: Mat::zeros(0, 0),
            right_mult: (0..dim).map(|_| OnceLock::new()).collect(),
        };
        alg.ops = alg.words.iter().map(|w| alg.word_operator(&letters_of(w))).collect();

        let flat: Vec<Vec<u32>> = alg.ops.iter().map(|m| m.data().to_vec()).collect();
        let x = Mat::from_rows(&flat, d * d);
        let (_, piv_cols) = linalg::rref(&x, f);
        if piv_cols.len() != dim {
            return Err(Error::Verification(format!(
                "operator span has rank {} but the basis has {dim} words",
                piv_cols.len()
            )));
        }
        alg.pivots = piv_cols.iter().map(|&c| (c / d, c % d)).collect();
        let xp = x.select(&(0..dim).collect::<Vec<_>>(), &piv_cols);
        alg.extract = linalg::inverse(&xp, f)
            .ok_or_else(|| Error::Verification("pivot block is singular".into()))?;

        let mut diff_cols = Vec::with_capacity(dim);
        let mut star_cols = Vec::with_capacity(dim);
        for w in &alg.words {
            let letters = letters_of(w);
            diff_cols.push(alg.operator_coords(&alg.word_differential(&letters)));
            let mut rev: Vec<Letter> = letters.iter().rev().copied().collect();
            // y's commute, so only the psi part needs reversing with them in front
            rev.sort_by_key(|x| matches!(x, Letter::Psi(_)));
            star_cols.push(alg.operator_coords(&alg.word_operator(&rev)));
        }
        alg.diff = Mat::from_cols(&diff_cols, dim);
        alg.star = Mat::from_cols(&star_cols, dim);
        Ok(alg)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn p(&self) -> u32 {
        self.f.p()
    }

    pub fn field(&self) -> PrimeConfig {
        self.f
    }

    pub fn dim(&self) -> usize {
        self.words.len()
    }

    pub fn poly_module(&self) -> &PolyModule {
        &self.poly
    }

    pub fn basis_words(&self) -> &[BasisWord] {
        &self.words
    }

    /// Operator of the `k`-th basis word on the polynomial module.
    pub fn operator(&self, k: usize) -> &Mat {
        &self.ops[k]
    }

    /// Rank of the span of all basis operators.
    pub fn faithfulness_rank(&self) -> usize {
        let d = self.poly.dim();
        let flat: Vec<Vec<u32>> = self.ops.iter().map(|m| m.data().to_vec()).collect();
        linalg::rank(&Mat::from_rows(&flat, d * d), self.f)
    }

    /// Matrix of `∂` in the basis (column `k` is `∂` of the `k`-th word).
    pub fn differential_matrix(&self) -> &Mat {
        &self.diff
    }

    /// Matrix of `*` in the basis.
    pub fn star_matrix(&self) -> &Mat {
        &self.star
    }

    pub fn degree_of_basis(&self, k: usize) -> i64 {
        self.words[k].degree()
    }

    pub fn index_of(&self, perm: &Perm, exps: &[u16]) -> Option<usize> {
        self.index.get(&(perm.clone(), exps.to_vec())).copied()
    }

    // ------------------------------------------------------------------
    // elements

    pub fn zero(&self) -> NHElement {
        NHElement::from_coords(vec![0; self.dim()])
    }

    pub fn basis_element(&self, k: usize) -> NHElement {
        let mut c = vec![0; self.dim()];
        c[k] = 1;
        NHElement::from_coords(c)
    }

    pub fn one(&self) -> NHElement {
        self.psi_y(&Perm::identity(self.n), &vec![0; self.n])
    }

    /// `psi_w y^r` for a staircase exponent; other exponents are reduced.
    pub fn psi_y(&self, perm: &Perm, exps: &[u16]) -> NHElement {
        if let Some(k) = self.index_of(perm, exps) {
            return self.basis_element(k);
        }
        let mut letters: Vec<Letter> = perm.reduced_word().into_iter().map(Letter::Psi).collect();
        letters.extend(y_letters(exps));
        NHElement::from_coords(self.operator_coords(&self.word_operator(&letters)))
    }

    pub fn psi_perm(&self, perm: &Perm) -> NHElement {
        self.psi_y(perm, &vec![0; self.n])
    }

    /// `y^r` for an arbitrary exponent vector.
    pub fn y_monomial(&self, exps: &[u16]) -> NHElement {
        self.psi_y(&Perm::identity(self.n), exps)
    }

    /// Generator `y_i` (1-based).
    pub fn y(&self, i: usize) -> Result<NHElement> {
        if i == 0 || i > self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n });
        }
        let mut e = vec![0u16; self.n];
        e[i - 1] = 1;
        Ok(self.y_monomial(&e))
    }

    /// Generator `psi_i` (1-based).
    pub fn psi(&self, i: usize) -> Result<NHElement> {
        if i == 0 || i >= self.n {
            return Err(Error::IndexOutOfRange { index: i, max: self.n.saturating_sub(1) });
        }
        Ok(self.psi_perm(&Perm::simple(self.n, i)))
    }

    /// Product of generators read left to right; `psi` indices in `word`, then `y`.
    pub fn word_element(&self, psis: &[usize], exps: &[u16]) -> NHElement {
        let mut letters: Vec<Letter> = psis.iter().map(|&i| Letter::Psi(i)).collect();
        letters.extend(y_letters(exps));
        NHElement::from_coords(self.operator_coords(&self.word_operator(&letters)))
    }

    pub fn add(&self, a: &NHElement, b: &NHElement) -> NHElement {
        NHElement::from_coords(linalg::vec_add(&a.coords, &b.coords, self.f))
    }

    pub fn sub(&self, a: &NHElement, b: &NHElement) -> NHElement {
        NHElement::from_coords(linalg::vec_sub(&a.coords, &b.coords, self.f))
    }

    pub fn scale(&self, a: &NHElement, c: i64) -> NHElement {
        NHElement::from_coords(linalg::vec_scale(&a.coords, self.f.from_i64(c), self.f))
    }

    pub fn neg(&self, a: &NHElement) -> NHElement {
        self.scale(a, -1)
    }

    pub fn sum<'a>(&self, items: impl IntoIterator<Item = &'a NHElement>) -> NHElement {
        let mut acc = vec![0; self.dim()];
        for x in items {
            linalg::axpy(&mut acc, 1, &x.coords, self.f);
        }
        NHElement::from_coords(acc)
    }

    /// Operator of an element on the polynomial module.
    pub fn element_operator(&self, a: &NHElement) -> Mat {
        let d = self.poly.dim();
        let mut m = Mat::zeros(d, d);
        for (k, &c) in a.coords.iter().enumerate() {
            if c != 0 {
                m.axpy(c, &self.ops[k], self.f);
            }
        }
        m
    }

    /// Coordinates of an operator known to lie in the image of `NH_n^l`.
    pub fn operator_coords(&self, m: &Mat) -> Vec<u32> {
        let vals: Vec<u32> = self.pivots.iter().map(|&(i, j)| m.get(i, j)).collect();
        self.coords_from_pivot_values(&vals)
    }

    /// Like [`Self::operator_coords`] but fails when `m` is outside the image.
    pub fn try_operator_coords(&self, m: &Mat) -> Result<NHElement> {
        let c = self.operator_coords(m);
        let back = self.element_operator(&NHElement::from_coords(c.clone()));
        if &back != m {
            return Err(Error::NotInSpan("operator is not in the image of NH".into()));
        }
        Ok(NHElement::from_coords(c))
    }

    fn coords_from_pivot_values(&self, vals: &[u32]) -> Vec<u32> {
        let p = self.f.p() as u64;
        let dim = self.dim();
        let mut out = vec![0u64; dim];
        for (m, &v) in vals.iter().enumerate() {
            if v == 0 {
                continue;
            }
            let row = self.extract.row(m);
            for (o, &x) in out.iter_mut().zip(row) {
                *o = (*o + v as u64 * x as u64) % p;
            }
        }
        out.into_iter().map(|x| x as u32).collect()
    }

    /// Coordinates of the operator product `a b`, evaluated at pivot entries only.
    fn product_coords(&self, a: &Mat, b: &Mat) -> Vec<u32> {
        let p = self.f.p() as u64;
        let d = a.rows();
        let vals: Vec<u32> = self
            .pivots
            .iter()
            .map(|&(i, j)| {
                let s: u64 = (0..d).map(|m| a.get(i, m) as u64 * b.get(m, j) as u64).sum();
                (s % p) as u32
            })
            .collect();
        self.coords_from_pivot_values(&vals)
    }

    pub fn mul(&self, a: &NHElement, b: &NHElement) -> NHElement {
        let oa = self.element_operator(a);
        let ob = self.element_operator(b);
        NHElement::from_coords(self.product_coords(&oa, &ob))
    }

    /// Product of a sequence of elements, left to right.
    pub fn product<'a>(&self, items: impl IntoIterator<Item = &'a NHElement>) -> NHElement {
        let d = self.poly.dim();
        let mut acc = Mat::identity(d);
        for x in items {
            acc = acc.mul(&self.element_operator(x), self.f);
        }
        NHElement::from_coords(self.operator_coords(&acc))
    }

    pub fn star(&self, a: &NHElement) -> NHElement {
        NHElement::from_coords(self.star.mul_vec(&a.coords, self.f))
    }

    pub fn differential(&self, a: &NHElement) -> NHElement {
        NHElement::from_coords(self.diff.mul_vec(&a.coords, self.f))
    }

    /// `∂^k(a)`.
    pub fn differential_power(&self, a: &NHElement, k: usize) -> NHElement {
        (0..k).fold(a.clone(), |x, _| self.differential(&x))
    }

    /// Matrix of `x ↦ x b` on coordinates (column `k` is `b_k b`).
    pub fn right_mult_matrix(&self, b: &NHElement) -> Mat {
        let ob = self.element_operator(b);
        let cols: Vec<Vec<u32>> = self.ops.iter().map(|o| self.product_coords(o, &ob)).collect();
        Mat::from_cols(&cols, self.dim())
    }

    /// Matrix of `x ↦ a x` on coordinates.
    pub fn left_mult_matrix(&self, a: &NHElement) -> Mat {
        let oa = self.element_operator(a);
        let cols: Vec<Vec<u32>> = self.ops.iter().map(|o| self.product_coords(&oa, o)).collect();
        Mat::from_cols(&cols, self.dim())
    }

    /// Cached right multiplication by the `j`-th basis word.
    pub fn right_mult_basis(&self, j: usize) -> &Mat {
        self.right_mult[j].get_or_init(|| self.right_mult_matrix(&self.basis_element(j)))
    }

    /// `x b` using the cached right-multiplication tables.
    pub fn mul_cached(&self, a: &NHElement, b: &NHElement) -> NHElement {
        let mut acc = vec![0; self.dim()];
        for (j, &c) in b.coords.iter().enumerate() {
            if c != 0 {
                let v = self.right_mult_basis(j).mul_vec(&a.coords, self.f);
                linalg::axpy(&mut acc, c, &v, self.f);
            }
        }
        NHElement::from_coords(acc)
    }

    /// Basis of `{x : a x = 0}`.
    pub fn right_annihilator(&self, a: &NHElement) -> Vec<NHElement> {
        linalg::nullspace(&self.left_mult_matrix(a), self.f)
            .into_iter()
            .map(NHElement::from_coords)
            .collect()
    }

    /// Homogeneous components keyed by degree.
    pub fn homogeneous_components(&self, a: &NHElement) -> BTreeMap<i64, NHElement> {
        let mut out: BTreeMap<i64, NHElement> = BTreeMap::new();
        for (k, &c) in a.coords.iter().enumerate() {
            if c != 0 {
                let e = out.entry(self.words[k].degree()).or_insert_with(|| self.zero());
                e.coords[k] = c;
            }
        }
        out
    }

    /// Degree of a nonzero homogeneous element.
    pub fn degree(&self, a: &NHElement) -> Option<i64> {
        let comps = self.homogeneous_components(a);
        if comps.len() == 1 {
            comps.keys().next().copied()
        } else {
            None
        }
    }

    // ------------------------------------------------------------------
    // distinguished elements

    /// `e_a` placed on strands `start+1 .. start+a`.
    pub fn block_idempotent(&self, start: usize, a: usize) -> NHElement {
        let mut exps = vec![0u16; self.n];
        for k in 0..a {
            exps[start + k] = (a - 1 - k) as u16;
        }
        let w0 = block_longest(self.n, start, a);
        let y = self.y_monomial(&exps);
        self.mul(&y, &self.psi_perm(&w0))
    }

    /// `e_a'` placed on strands `start+1 .. start+a`.
    pub fn block_idempotent_primed(&self, start: usize, a: usize) -> NHElement {
        let mut exps = vec![0u16; self.n];
        for k in 0..a {
            exps[start + k] = k as u16;
        }
        let w0 = block_longest(self.n, start, a);
        self.mul(&self.psi_perm(&w0), &self.y_monomial(&exps))
    }

    pub fn idempotent(&self, spec: &IdempotentSpec) -> Result<NHElement> {
        match spec {
            IdempotentSpec::Full => Ok(self.block_idempotent(0, self.n)),
            IdempotentSpec::Primed => Ok(self.block_idempotent_primed(0, self.n)),
            IdempotentSpec::Sequence(parts) => {
                if parts.iter().sum::<usize>() != self.n {
                    return Err(Error::Malformed(format!(
                        "idempotent sequence {parts:?} does not sum to {}",
                        self.n
                    )));
                }
                let mut start = 0;
                let mut blocks = Vec::new();
                for &a in parts {
                    blocks.push(self.block_idempotent(start, a));
                    start += a;
                }
                Ok(self.product(blocks.iter()))
            }
        }
    }

    /// `y^mu = y_1^{l-j_1} .. y_n^{l-j_n}`.
    pub fn y_mu(&self, mu: &Multipartition) -> NHElement {
        let e: Vec<u16> = mu.y_exponents().into_iter().map(|x| x as u16).collect();
        self.y_monomial(&e)
    }

    /// `psi^mu_{st} = psi_s^* y^mu psi_t`.
    pub fn cellular_element(&self, mu: &Multipartition, s: &Tableau, t: &Tableau) -> Result<NHElement> {
        if s.shape() != mu || t.shape() != mu || mu.n() != self.n || mu.l() != self.l {
            return Err(Error::ShapeMismatch(format!("tableaux {s}, {t} for shape {mu}")));
        }
        let ps = self.star(&self.psi_perm(s.word()));
        let pt = self.psi_perm(t.word());
        Ok(self.product([&ps, &self.y_mu(mu), &pt]))
    }

    // ------------------------------------------------------------------
    // operator-level helpers

    fn letter_operator(&self, x: Letter) -> &Mat {
        match x {
            Letter::Psi(i) => self.poly.crossing_matrix(i),
            Letter::Y(i) => self.poly.dot_matrix(i),
        }
    }

    fn word_operator(&self, letters: &[Letter]) -> Mat {
        let d = self.poly.dim();
        letters
            .iter()
            .fold(Mat::identity(d), |acc, &x| acc.mul(self.letter_operator(x), self.f))
    }

    fn letter_differential(&self, x: Letter) -> Mat {
        let f = self.f;
        match x {
            Letter::Y(i) => {
                let y = self.poly.dot_matrix(i);
                y.mul(y, f)
            }
            Letter::Psi(i) => {
                let y = self.poly.dot_matrix(i);
                let y1 = self.poly.dot_matrix(i + 1);
                let psi = self.poly.crossing_matrix(i);
                y.mul(psi, f).add(&psi.mul(y1, f), f).scale(f.neg(1), f)
            }
        }
    }

    /// Leibniz expansion of `∂` over a fixed spelling.
    fn word_differential(&self, letters: &[Letter]) -> Mat {
        let d = self.poly.dim();
        let f = self.f;
        let m = letters.len();
        let mut suffix = vec![Mat::identity(d); m + 1];
        for j in (0..m).rev() {
            suffix[j] = self.letter_operator(letters[j]).mul(&suffix[j + 1], f);
        }
        let mut prefix = Mat::identity(d);
        let mut out = Mat::zeros(d, d);
        for j in 0..m {
            let term = prefix.mul(&self.letter_differential(letters[j]), f).mul(&suffix[j + 1], f);
            out = out.add(&term, f);
            prefix = prefix.mul(self.letter_operator(letters[j]), f);
        }
        out
    }
}

/// Exhaustive check of the `p`-DG axioms on `NH_n^l`.
#[derive(Debug, Clone, Serialize)]
pub struct NHPdgReport {
    pub n: usize,
    pub l: usize,
    pub p: u32,
    pub dim: usize,
    pub products_checked: usize,
    pub leibniz: bool,
    pub nilpotent: bool,
    pub degree_two: bool,
}

impl NHPdgReport {
    pub fn passed(&self) -> bool {
        self.leibniz && self.nilpotent && self.degree_two
    }
}

impl NHAlgebra {
    /// `∂(b_i b_j) = ∂b_i b_j + b_i ∂b_j` for all basis pairs, read off as
    /// `D R_j = R_j D + R_{∂b_j}` on right-multiplication matrices.
    pub fn pdg_report(&self) -> NHPdgReport {
        let f = self.f;
        let dim = self.dim();
        let mut leibniz = true;
        for j in 0..dim {
            let rj = self.right_mult_basis(j);
            let lhs = self.diff.mul(rj, f);
            let rhs = rj.mul(&self.diff, f).add(&self.right_mult_matrix(&self.differential(&self.basis_element(j))), f);
            leibniz &= lhs == rhs;
        }
        let nilpotent = self.diff.pow(self.p() as u64, f).is_zero();
        let degree_two = (0..dim).all(|k| {
            let d = self.differential(&self.basis_element(k));
            d.is_zero() || self.degree(&d) == Some(self.degree_of_basis(k) + 2)
        });
        NHPdgReport {
            n: self.n,
            l: self.l(),
            p: self.p(),
            dim,
            products_checked: dim * dim,
            leibniz,
            nilpotent,
            degree_two,
        }
    }
}

fn y_letters(exps: &[u16]) -> Vec<Letter> {
    exps.iter()
        .enumerate()
        .flat_map(|(i, &e)| std::iter::repeat_n(Letter::Y(i + 1), e as usize))
        .collect()
}

fn letters_of(w: &BasisWord) -> Vec<Letter> {
    let mut v: Vec<Letter> = w.word.iter().map(|&i| Letter::Psi(i)).collect();
    v.extend(y_letters(&w.exps));
    v
}

/// Longest element of the parabolic block on positions `start .. start+a`.
pub fn block_longest(n: usize, start: usize, a: usize) -> Perm {
    let mut v: Vec<usize> = (0..n).collect();
    v[start..start + a].reverse();
    Perm::new(v).expect("block reversal is a permutation")
}

/// `C(l,n) (n!)^2`.
pub fn expected_dimension(n: usize, l: usize) -> usize {
    if n > l {
        return 0;
    }
    let mut binom: usize = 1;
    for i in 0..n {
        binom = binom * (l - i) / (i + 1);
    }
    let fact: usize = (1..=n).product();
    binom * fact * fact
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn nh(n: usize, l: usize, p: u32) -> NHAlgebra {
        NHAlgebra::build(n, l, p).unwrap()
    }

    #[test]
    fn dimensions() {
        assert_eq!(nh(2, 4, 5).dim(), 24);
        assert_eq!(nh(0, 3, 3).dim(), 1);
        let a = nh(2, 3, 3);
        assert_eq!(a.dim(), 12);
        assert_eq!(a.faithfulness_rank(), 12);
        for (n, l) in [(1, 3), (2, 2), (3, 3)] {
            assert_eq!(nh(n, l, 5).dim(), expected_dimension(n, l));
        }
    }

    #[test]
    fn pdg_axioms() {
        for p in [3, 5] {
            for (n, l) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
                let r = nh(n, l, p).pdg_report();
                assert!(r.passed(), "{r:?}");
            }
        }
    }

    #[test]
    fn defining_relations() {
        let a = nh(3, 4, 5);
        let one = a.one();
        for i in 1..3 {
            let psi = a.psi(i).unwrap();
            assert!(a.mul(&psi, &psi).is_zero());
            let lhs = a.sub(
                &a.mul(&a.y(i).unwrap(), &psi),
                &a.mul(&psi, &a.y(i + 1).unwrap()),
            );
            assert_eq!(lhs, one);
            let lhs = a.sub(
                &a.mul(&psi, &a.y(i).unwrap()),
                &a.mul(&a.y(i + 1).unwrap(), &psi),
            );
            assert_eq!(lhs, one);
        }
        let (p1, p2) = (a.psi(1).unwrap(), a.psi(2).unwrap());
        assert_eq!(a.product([&p1, &p2, &p1]), a.product([&p2, &p1, &p2]));
        let y1 = a.y(1).unwrap();
        assert!(a.product([&y1, &y1, &y1, &y1]).is_zero());
        assert!(!a.product([&y1, &y1, &y1]).is_zero());
    }

    #[test]
    fn idempotents() {
        let a = nh(2, 4, 5);
        let e2 = a.idempotent(&IdempotentSpec::Full).unwrap();
        assert_eq!(e2, a.mul(&a.y(1).unwrap(), &a.psi(1).unwrap()));
        assert_eq!(a.mul(&e2, &e2), e2);
        let de = a.differential(&e2);
        assert_eq!(de, a.neg(&a.mul(&e2, &a.y(2).unwrap())));
        assert_eq!(a.idempotent(&IdempotentSpec::Sequence(vec![1, 1])).unwrap(), a.one());
        assert!(a.idempotent(&IdempotentSpec::Sequence(vec![1])).is_err());

        let ep = a.idempotent(&IdempotentSpec::Primed).unwrap();
        // e_2' is quasi-idempotent with sign (-1)^{n(n-1)/2} = -1
        assert_eq!(a.mul(&ep, &ep), a.neg(&ep));
        let rhs = a.neg(&a.mul(&a.y(1).unwrap(), &ep));
        assert_eq!(a.differential(&ep), rhs);

        let b = nh(3, 3, 5);
        let e3 = b.idempotent(&IdempotentSpec::Full).unwrap();
        assert_eq!(b.mul(&e3, &e3), e3);
        let e21 = b.idempotent(&IdempotentSpec::Sequence(vec![2, 1])).unwrap();
        assert_eq!(b.mul(&e21, &e21), e21);
    }

    #[test]
    fn differential_examples() {
        let a = nh(2, 3, 3);
        let y1 = a.y(1).unwrap();
        assert_eq!(a.differential(&y1), a.mul(&y1, &y1));
        let psi = a.psi(1).unwrap();
        assert!(a.differential_power(&psi, 3).is_zero());
        let expected = a.neg(&a.add(
            &a.mul(&y1, &psi),
            &a.mul(&psi, &a.y(2).unwrap()),
        ));
        assert_eq!(a.differential(&psi), expected);
    }

    #[test]
    fn differential_respects_relations() {
        let a = nh(3, 4, 5);
        for i in 1..3 {
            let psi = a.psi(i).unwrap();
            let d = a.differential(&psi);
            let sq = a.add(&a.mul(&d, &psi), &a.mul(&psi, &d));
            assert!(sq.is_zero());
        }
        let y1 = a.y(1).unwrap();
        let d = a.differential(&y1);
        let y3 = a.product([&y1, &y1, &y1]);
        let leibniz = a.sum([&a.mul(&d, &y3), &a.product([&y1, &d, &y1, &y1]), &a.product([&y1, &y1, &d, &y1]), &a.mul(&y3, &d)]);
        assert!(leibniz.is_zero());
    }

    #[test]
    fn star_examples() {
        let a = nh(2, 3, 5);
        let y1 = a.y(1).unwrap();
        assert_eq!(a.star(&y1), y1);
        let psi = a.psi(1).unwrap();
        let y2 = a.y(2).unwrap();
        assert_eq!(a.star(&a.mul(&psi, &y2)), a.mul(&y2, &psi));
        for k in 0..a.dim() {
            let b = a.basis_element(k);
            assert_eq!(a.star(&a.star(&b)), b);
        }
    }

    #[test]
    fn cellular_elements_form_a_basis() {
        let a = nh(2, 4, 5);
        let mut span = linalg::Subspace::new(a.dim(), a.field());
        for mu in crate::combinat::enumerate_partitions(2, 4).unwrap() {
            let tabs = Tableau::all(&mu);
            for s in &tabs {
                for t in &tabs {
                    let x = a.cellular_element(&mu, s, t).unwrap();
                    assert_eq!(a.degree(&x), Some(s.degree() + t.degree()));
                    assert_eq!(a.star(&x), a.cellular_element(&mu, t, s).unwrap());
                    span.insert(x.coords());
                }
            }
            let e = Tableau::standard(&mu);
            assert_eq!(a.cellular_element(&mu, &e, &e).unwrap(), a.y_mu(&mu));
        }
        assert_eq!(span.dim(), 24);
        let l4: Multipartition = "0110".parse().unwrap();
        assert_eq!(a.y_mu(&l4), a.y_monomial(&[2, 1]));
    }

    #[test]
    fn right_annihilator_of_generator() {
        let a = nh(2, 2, 5);
        let lam: Multipartition = "11".parse().unwrap();
        let ann = a.right_annihilator(&a.y_mu(&lam));
        assert_eq!(a.dim() - ann.len(), 2);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn star_is_anti_multiplicative(i in 0usize..36, j in 0usize..36) {
            let a = nh3();
            let (x, y) = (a.basis_element(i), a.basis_element(j));
            prop_assert_eq!(a.star(&a.mul(&x, &y)), a.mul(&a.star(&y), &a.star(&x)));
        }

        #[test]
        fn differential_is_a_derivation(i in 0usize..36, j in 0usize..36) {
            let a = nh3();
            let (x, y) = (a.basis_element(i), a.basis_element(j));
            let lhs = a.differential(&a.mul(&x, &y));
            let rhs = a.add(&a.mul(&a.differential(&x), &y), &a.mul(&x, &a.differential(&y)));
            prop_assert_eq!(lhs, rhs);
        }

        #[test]
        fn product_matches_operator_product(i in 0usize..36, j in 0usize..36) {
            let a = nh3();
            let (x, y) = (a.basis_element(i), a.basis_element(j));
            let m = a.element_operator(&x).mul(&a.element_operator(&y), a.field());
            prop_assert_eq!(a.try_operator_coords(&m).unwrap(), a.mul(&x, &y));
            prop_assert_eq!(a.mul_cached(&x, &y), a.mul(&x, &y));
        }
    }

    fn nh3() -> &'static NHAlgebra {
        static A: OnceLock<NHAlgebra> = OnceLock::new();
        A.get_or_init(|| NHAlgebra::build(3, 3, 3).unwrap())
    }
}
