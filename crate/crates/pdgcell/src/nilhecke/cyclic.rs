//! Right submodules of `NH_n^l`, in particular the cyclic modules `G(lambda)` and
//! `G[b]`, with homogeneous bases and the restricted differential.

use std::fmt;

use serde::Serialize;

use crate::coeff::IntLaurent;
use crate::combinat::{Decomposition, Multipartition};
use crate::error::{Error, Result};
use crate::linalg::{Mat, Subspace};

use super::{NHAlgebra, NHElement};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModuleLabel {
    Partition(Multipartition),
    Decomposition(Decomposition),
    Other(String),
}

impl fmt::Display for ModuleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModuleLabel::Partition(l) => write!(f, "G({l})"),
            ModuleLabel::Decomposition(b) => write!(f, "G[{b}]"),
            ModuleLabel::Other(s) => f.write_str(s),
        }
    }
}

/// A graded right submodule of `NH_n^l` given by homogeneous generators.
#[derive(Debug, Clone)]
pub struct CyclicModule {
    label: ModuleLabel,
    generators: Vec<NHElement>,
    twist: Option<NHElement>,
    shift: i64,
    basis: Vec<NHElement>,
    degrees: Vec<i64>,
    span: Subspace,
    diff: Mat,
}

impl CyclicModule {
    /// `G(lambda) = y^lambda NH_n^l`, with `∂(y^lambda) = y^lambda * sum (l - j_k) y_k`.
    pub fn g_lambda(alg: &NHAlgebra, lambda: &Multipartition) -> Result<Self> {
        check_shape(alg, lambda.n(), lambda.l())?;
        let exps: Vec<u16> = lambda.y_exponents().into_iter().map(|x| x as u16).collect();
        Self::monomial(alg, ModuleLabel::Partition(lambda.clone()), &exps, lambda.shift())
    }

    /// `G[b] = y^b NH_n^l`.
    pub fn g_decomposition(alg: &NHAlgebra, b: &Decomposition) -> Result<Self> {
        check_shape(alg, b.n(), b.l())?;
        let exps: Vec<u16> = b.y_exponents().into_iter().map(|x| x as u16).collect();
        Self::monomial(alg, ModuleLabel::Decomposition(b.clone()), &exps, b.shift())
    }

    /// Cyclic module on the monomial `y^r`; its twist is `sum r_k y_k`.
    pub fn monomial(alg: &NHAlgebra, label: ModuleLabel, exps: &[u16], shift: i64) -> Result<Self> {
        let g = alg.y_monomial(exps);
        let mut twist = alg.zero();
        for (k, &r) in exps.iter().enumerate() {
            if r > 0 {
                twist = alg.add(&twist, &alg.scale(&alg.y(k + 1)?, r as i64));
            }
        }
        let mut m = Self::generated(alg, label, vec![g], shift)?;
        m.twist = Some(twist);
        Ok(m)
    }

    /// Right submodule generated by homogeneous elements.
    pub fn generated(
        alg: &NHAlgebra,
        label: ModuleLabel,
        generators: Vec<NHElement>,
        shift: i64,
    ) -> Result<Self> {
        let mut spanning = Vec::new();
        for g in &generators {
            if g.is_zero() {
                continue;
            }
            let dg = alg
                .degree(g)
                .ok_or_else(|| Error::Malformed(format!("generator of {label} is not homogeneous")))?;
            let lm = alg.left_mult_matrix(g);
            for j in 0..alg.dim() {
                spanning.push((dg + alg.degree_of_basis(j), lm.col(j)));
            }
        }
        Self::from_homogeneous(alg, label, generators, spanning, shift)
    }

    /// Span of given homogeneous vectors; the caller asserts right-closure.
    pub fn spanned(
        alg: &NHAlgebra,
        label: ModuleLabel,
        vectors: Vec<NHElement>,
        shift: i64,
    ) -> Result<Self> {
        let mut spanning = Vec::new();
        for v in &vectors {
            for (d, c) in alg.homogeneous_components(v) {
                spanning.push((d, c.into_coords()));
            }
        }
        let m = Self::from_homogeneous(alg, label, Vec::new(), spanning, shift)?;
        if !m.is_right_closed(alg) {
            return Err(Error::Verification(format!("{} is not a right submodule", m.label)));
        }
        Ok(m)
    }

    fn from_homogeneous(
        alg: &NHAlgebra,
        label: ModuleLabel,
        generators: Vec<NHElement>,
        mut spanning: Vec<(i64, Vec<u32>)>,
        shift: i64,
    ) -> Result<Self> {
        let f = alg.field();
        spanning.sort_by_key(|(d, _)| *d);
        let mut span = Subspace::new(alg.dim(), f);
        let mut degrees = Vec::new();
        for (d, v) in &spanning {
            if span.insert(v) {
                degrees.push(*d);
            }
        }
        let basis: Vec<NHElement> =
            span.basis().iter().cloned().map(NHElement::from_coords).collect();
        let mut cols = Vec::with_capacity(basis.len());
        for b in &basis {
            let db = alg.differential(b);
            let c = span
                .coords(db.coords())
                .ok_or_else(|| Error::Verification(format!("{label} is not ∂-stable")))?;
            cols.push(c);
        }
        let diff = Mat::from_cols(&cols, basis.len());
        Ok(Self { label, generators, twist: None, shift, basis, degrees, span, diff })
    }

    pub fn label(&self) -> &ModuleLabel {
        &self.label
    }

    pub fn generators(&self) -> &[NHElement] {
        &self.generators
    }

    pub fn generator(&self) -> Option<&NHElement> {
        self.generators.first()
    }

    /// `a` with `∂(g) = g a` for a cyclic monomial generator.
    pub fn twist(&self) -> Option<&NHElement> {
        self.twist.as_ref()
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[NHElement] {
        &self.basis
    }

    /// Unshifted degrees of the basis elements.
    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn span(&self) -> &Subspace {
        &self.span
    }

    /// Matrix of `∂` in the module basis.
    pub fn differential_matrix(&self) -> &Mat {
        &self.diff
    }

    pub fn contains(&self, v: &NHElement) -> bool {
        self.span.contains(v.coords())
    }

    pub fn coords(&self, v: &NHElement) -> Option<Vec<u32>> {
        self.span.coords(v.coords())
    }

    /// `sum_b q^{deg b}`.
    pub fn gdim_raw(&self) -> IntLaurent {
        IntLaurent::from_pairs(self.degrees.iter().map(|&d| (d, 1)))
    }

    /// `q^{shift} sum_b q^{deg b}`.
    pub fn gdim(&self) -> IntLaurent {
        self.gdim_raw().shift(self.shift)
    }

    /// Matrix of right multiplication by `x` in the module basis.
    pub fn action_matrix(&self, alg: &NHAlgebra, x: &NHElement) -> Result<Mat> {
        let rm = alg.right_mult_matrix(x);
        let mut cols = Vec::with_capacity(self.dim());
        for b in &self.basis {
            let v = rm.mul_vec(b.coords(), alg.field());
            cols.push(
                self.span
                    .coords(&v)
                    .ok_or_else(|| Error::NotInSpan(format!("{} not right-closed", self.label)))?,
            );
        }
        Ok(Mat::from_cols(&cols, self.dim()))
    }

    /// Right closure under the generators `y_i`, `psi_i`.
    pub fn is_right_closed(&self, alg: &NHAlgebra) -> bool {
        let gens = generator_list(alg);
        gens.iter().all(|g| self.action_matrix(alg, g).is_ok())
    }

    /// `∂^p = 0` on the module.
    pub fn differential_nilpotent(&self, p: u32) -> bool {
        self.dim() == 0 || self.diff.pow(p as u64, self.span.field()).is_zero()
    }

    /// Checks `∂(g x) = g (a x + ∂x)` on the spanning set `g b_j`.
    pub fn twist_formula_holds(&self, alg: &NHAlgebra) -> bool {
        let (Some(g), Some(a)) = (self.generator(), self.twist()) else {
            return true;
        };
        (0..alg.dim()).all(|j| {
            let x = alg.basis_element(j);
            let lhs = alg.differential(&alg.mul(g, &x));
            let inner = alg.add(&alg.mul(a, &x), &alg.differential(&x));
            lhs == alg.mul(g, &inner)
        })
    }

    /// Left multiplication by `e` applied to every basis element, as a new submodule.
    pub fn truncate(&self, alg: &NHAlgebra, e: &NHElement, label: ModuleLabel) -> Result<Self> {
        let lm = alg.left_mult_matrix(e);
        let mut spanning = Vec::new();
        let de = alg.degree(e).unwrap_or(0);
        for (b, &d) in self.basis.iter().zip(&self.degrees) {
            spanning.push((d + de, lm.mul_vec(b.coords(), alg.field())));
        }
        let mut m = Self::from_homogeneous(alg, label, Vec::new(), spanning, self.shift)?;
        m.twist = None;
        Ok(m)
    }
}

/// `p`-DG module axioms for a submodule of `NH_n^l`.
#[derive(Debug, Clone, Serialize)]
pub struct ModulePdgReport {
    pub label: String,
    pub dim: usize,
    pub leibniz: bool,
    pub nilpotent: bool,
    pub twist_formula: bool,
}

impl ModulePdgReport {
    pub fn passed(&self) -> bool {
        self.leibniz && self.nilpotent && self.twist_formula
    }
}

impl CyclicModule {
    /// `∂(m b) = ∂m b + m ∂b` on module and algebra bases, as `D A_b = A_b D + A_{∂b}`.
    pub fn pdg_report(&self, alg: &NHAlgebra) -> Result<ModulePdgReport> {
        let f = alg.field();
        let mut leibniz = true;
        if self.dim() > 0 {
            for j in 0..alg.dim() {
                let b = alg.basis_element(j);
                let ab = self.action_matrix(alg, &b)?;
                let adb = self.action_matrix(alg, &alg.differential(&b))?;
                leibniz &= self.diff.mul(&ab, f) == ab.mul(&self.diff, f).add(&adb, f);
            }
        }
        Ok(ModulePdgReport {
            label: self.label.to_string(),
            dim: self.dim(),
            leibniz,
            nilpotent: self.differential_nilpotent(alg.p()),
            twist_formula: self.twist_formula_holds(alg),
        })
    }
}

/// `y_1..y_n, psi_1..psi_{n-1}`.
pub fn generator_list(alg: &NHAlgebra) -> Vec<NHElement> {
    let n = alg.n();
    let mut v: Vec<NHElement> = (1..=n).map(|i| alg.y(i).expect("in range")).collect();
    v.extend((1..n).map(|i| alg.psi(i).expect("in range")));
    v
}

fn check_shape(alg: &NHAlgebra, n: usize, l: usize) -> Result<()> {
    if n != alg.n() || l != alg.l() {
        return Err(Error::InvalidParameters {
            n,
            l,
            reason: format!("label does not match NH_{}^{}", alg.n(), alg.l()),
        });
    }
    Ok(())
}

/// Whether the matrix `m` commutes with the differentials: `m ∂_src = ∂_dst m`.
pub fn intertwines_differential(m: &Mat, src: &CyclicModule, dst: &CyclicModule, alg: &NHAlgebra) -> bool {
    let f = alg.field();
    if m.cols() == 0 || m.rows() == 0 {
        return true;
    }
    m.mul(src.differential_matrix(), f) == dst.differential_matrix().mul(m, f)
}

/// Dimension of `span(vectors)`.
pub fn span_dim(vectors: &[Vec<u32>], len: usize, alg: &NHAlgebra) -> usize {
    Subspace::spanned_by(vectors, len, alg.field()).dim()
}
