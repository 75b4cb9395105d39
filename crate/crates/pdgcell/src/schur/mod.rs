//! The quiver Schur algebra `S_n^l = END(⊕ G(lambda))`, realized through hom spaces
//! between cyclic nilHecke modules, with its `Phi` cellular basis and induced
//! differential.

pub mod cells;
pub mod decomposition;
pub mod replay;

use serde::Serialize;

use crate::combinat::{enumerate_partitions, t_lower, Multipartition, Tableau};
use crate::coeff::IntLaurent;
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Subspace};
use crate::nilhecke::cyclic::CyclicModule;
use crate::nilhecke::{NHAlgebra, NHElement};

/// A homomorphism `G(source) -> G(target)` determined by the image `z` of `y^source`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchurHom {
    pub source: Multipartition,
    pub target: Multipartition,
    pub image: NHElement,
    pub degree: i64,
}

/// Greedy generators of the right ideal spanned by `elems`.
pub fn right_ideal_generators(alg: &NHAlgebra, elems: &[NHElement]) -> Vec<NHElement> {
    let mut span = Subspace::new(alg.dim(), alg.field());
    let mut gens = Vec::new();
    for a in elems {
        if span.contains(a.coords()) {
            continue;
        }
        let lm = alg.left_mult_matrix(a);
        for j in 0..alg.dim() {
            span.insert(&lm.col(j));
        }
        gens.push(a.clone());
    }
    gens
}

/// Homogeneous basis of `{z in target : z Ann = 0}` as `(z, raw degree of z)`, where
/// `ann_gens` generate the right annihilator of the source generator.
pub(crate) fn hom_basis(alg: &NHAlgebra, target: &CyclicModule, ann_gens: &[NHElement]) -> Vec<(NHElement, i64)> {
    let f = alg.field();
    let rms: Vec<Mat> = ann_gens.iter().map(|a| alg.right_mult_matrix(a)).collect();
    let mut out = Vec::new();
    let degs = target.degrees();
    let mut start = 0;
    while start < degs.len() {
        let d = degs[start];
        let end = start + degs[start..].iter().take_while(|&&x| x == d).count();
        let block = &target.basis()[start..end];
        let rows = alg.dim() * rms.len();
        let mut m = Mat::zeros(rows, block.len());
        for (c, v) in block.iter().enumerate() {
            for (g, rm) in rms.iter().enumerate() {
                for (r, x) in rm.mul_vec(v.coords(), f).into_iter().enumerate() {
                    m.set(g * alg.dim() + r, c, x);
                }
            }
        }
        let kernel = if rows == 0 {
            (0..block.len())
                .map(|i| {
                    let mut e = vec![0; block.len()];
                    e[i] = 1;
                    e
                })
                .collect()
        } else {
            linalg::nullspace(&m, f)
        };
        for coef in kernel {
            let vecs: Vec<Vec<u32>> = block.iter().map(|b| b.coords().to_vec()).collect();
            out.push((NHElement::from_coords(linalg::combine(&coef, &vecs, alg.dim(), f)), d));
        }
        start = end;
    }
    out
}

fn hom_degree(raw: i64, nu: &Multipartition, mu: &Multipartition) -> i64 {
    // deg y^nu = -2 shift(nu)
    raw + 2 * nu.shift() + mu.shift() - nu.shift()
}

/// Basis of `HOM(G(nu), G(mu))`, graded by `deg z - deg y^nu + shift(mu) - shift(nu)`.
pub fn hom_space(alg: &NHAlgebra, nu: &Multipartition, mu: &Multipartition) -> Result<Vec<SchurHom>> {
    let target = CyclicModule::g_lambda(alg, mu)?;
    let ann = alg.right_annihilator(&alg.y_mu(nu));
    let gens = right_ideal_generators(alg, &ann);
    Ok(hom_basis(alg, &target, &gens)
        .into_iter()
        .map(|(z, d)| SchurHom {
            source: nu.clone(),
            target: mu.clone(),
            image: z,
            degree: hom_degree(d, nu, mu),
        })
        .collect())
}

/// Label of a cellular basis element `Phi^lambda_{ts}: G(nu) -> G(mu)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiLabel {
    pub lambda: usize,
    pub t: usize,
    pub s: usize,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

#[derive(Debug, Clone)]
struct HomBlock {
    basis: Vec<NHElement>,
    degrees: Vec<i64>,
    phis: Vec<usize>,
    solver: Subspace,
}

/// An element of `S_n^l` in coordinates against the `Phi` basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SchurElement {
    coords: Vec<u32>,
}

impl SchurElement {
    pub fn from_coords(coords: Vec<u32>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        linalg::vec_is_zero(&self.coords)
    }

    /// Nonzero coordinates.
    pub fn support(&self) -> impl Iterator<Item = (usize, u32)> + '_ {
        self.coords.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| (i, c))
    }
}

/// `S_n^l` with structure constants, differential and anti-involution in the `Phi` basis.
#[derive(Debug)]
pub struct SchurAlgebra {
    nh: NHAlgebra,
    partitions: Vec<Multipartition>,
    modules: Vec<CyclicModule>,
    twists: Vec<NHElement>,
    preimages: Vec<Subspace>,
    tableaux: Vec<Vec<Tableau>>,
    blocks: Vec<Vec<HomBlock>>,
    phis: Vec<PhiLabel>,
    images: Vec<NHElement>,
    products: Vec<Option<Vec<(usize, u32)>>>,
    diff: Mat,
    star: Vec<usize>,
}

impl SchurAlgebra {
    pub fn build(n: usize, l: usize, p: u32) -> Result<Self> {
        Self::from_nilhecke(NHAlgebra::build(n, l, p)?)
    }

    pub fn from_nilhecke(nh: NHAlgebra) -> Result<Self> {
        let f = nh.field();
        let partitions = enumerate_partitions(nh.n(), nh.l())?;
        let k = partitions.len();
        let mut modules = Vec::with_capacity(k);
        let mut twists = Vec::with_capacity(k);
        let mut preimages = Vec::with_capacity(k);
        let mut ann_gens = Vec::with_capacity(k);
        for lam in &partitions {
            let m = CyclicModule::g_lambda(&nh, lam)?;
            twists.push(m.twist().cloned().unwrap_or_else(|| nh.zero()));
            let y = nh.y_mu(lam);
            let lm = nh.left_mult_matrix(&y);
            let mut sp = Subspace::new(nh.dim(), f);
            for j in 0..nh.dim() {
                sp.insert_labelled(&lm.col(j), j);
            }
            preimages.push(sp);
            ann_gens.push(right_ideal_generators(&nh, &nh.right_annihilator(&y)));
            modules.push(m);
        }

        let tableaux: Vec<Vec<Tableau>> = partitions.iter().map(t_lower).collect();
        let shape_index = |t: &Tableau| partitions.iter().position(|m| m == t.shape()).expect("shape");

        let mut blocks: Vec<Vec<HomBlock>> = (0..k)
            .map(|nu| {
                (0..k)
                    .map(|mu| {
                        let hb = hom_basis(&nh, &modules[mu], &ann_gens[nu]);
                        HomBlock {
                            degrees: hb.iter().map(|(_, d)| hom_degree(*d, &partitions[nu], &partitions[mu])).collect(),
                            basis: hb.into_iter().map(|(z, _)| z).collect(),
                            phis: Vec::new(),
                            solver: Subspace::new(nh.dim(), f),
                        }
                    })
                    .collect()
            })
            .collect();

        let mut phis = Vec::new();
        let mut images = Vec::new();
        for (li, lam) in partitions.iter().enumerate() {
            let y = nh.y_mu(lam);
            for (ti, t) in tableaux[li].iter().enumerate() {
                let left = nh.star(&nh.psi_perm(&t.entry_perm()));
                for (si, s) in tableaux[li].iter().enumerate() {
                    let z = nh.product([&left, &y, &nh.psi_perm(&s.entry_perm())]);
                    let (nu, mu) = (shape_index(s), shape_index(t));
                    let degree = partitions[mu].shift() + partitions[nu].shift() - 2 * lam.shift()
                        - 2 * (t.word().length() + s.word().length()) as i64;
                    let idx = phis.len();
                    let block = &mut blocks[nu][mu];
                    let in_target = modules[mu].contains(&z);
                    let kills = ann_gens[nu].iter().all(|a| nh.mul(&z, a).is_zero());
                    if !(in_target && kills) {
                        return Err(Error::Verification(format!(
                            "Phi^{lam}_({t},{s}) is not a homomorphism G({}) -> G({})",
                            partitions[nu], partitions[mu]
                        )));
                    }
                    if nh.degree(&z).map(|d| hom_degree(d, &partitions[nu], &partitions[mu])) != Some(degree) {
                        return Err(Error::Verification(format!("Phi^{lam}_({t},{s}) has the wrong degree")));
                    }
                    if !block.solver.insert_labelled(z.coords(), idx) {
                        return Err(Error::Verification(format!("Phi^{lam}_({t},{s}) is linearly dependent")));
                    }
                    block.phis.push(idx);
                    phis.push(PhiLabel { lambda: li, t: ti, s: si, source: nu, target: mu, degree });
                    images.push(z);
                }
            }
        }
        for nu in 0..k {
            for mu in 0..k {
                let b = &blocks[nu][mu];
                if b.phis.len() != b.basis.len() {
                    return Err(Error::Verification(format!(
                        "Phi elements span {} of {} dimensions of HOM(G({}), G({}))",
                        b.phis.len(),
                        b.basis.len(),
                        partitions[nu],
                        partitions[mu]
                    )));
                }
            }
        }

        let mut alg = Self {
            nh,
            partitions,
            modules,
            twists,
            preimages,
            tableaux,
            blocks,
            phis,
            images,
            products: Vec::new(),
            diff: Mat::zeros(0, 0),
            star: Vec::new(),
        };
        alg.fill_tables()?;
        Ok(alg)
    }

    fn fill_tables(&mut self) -> Result<()> {
        let dim = self.phis.len();
        let mut products = vec![None; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                if self.phis[i].source == self.phis[j].target {
                    let z = self.compose_images(i, &self.images[j], self.phis[j].target)?;
                    let c = self.block_coords(self.phis[j].source, self.phis[i].target, &z)?;
                    products[i * dim + j] = Some(c);
                }
            }
        }
        self.products = products;

        let mut cols = Vec::with_capacity(dim);
        let mut star = Vec::with_capacity(dim);
        for i in 0..dim {
            let lab = &self.phis[i];
            let dz = self.differential_image(&self.images[i], lab.source);
            let c = self.block_coords(lab.source, lab.target, &dz)?;
            let mut col = vec![0u32; dim];
            for (g, x) in c {
                col[g] = x;
            }
            cols.push(col);
            let sz = self.nh.star(&self.images[i]);
            let c = self.block_coords(lab.target, lab.source, &sz)?;
            match c.as_slice() {
                [(g, 1)] if self.phis[*g].t == lab.s && self.phis[*g].s == lab.t && self.phis[*g].lambda == lab.lambda => {
                    star.push(*g)
                }
                _ => return Err(Error::Verification(format!("star does not swap the indices of Phi #{i}"))),
            }
        }
        self.diff = Mat::from_cols(&cols, dim);
        self.star = star;
        Ok(())
    }

    /// `f(z)` where `f` is the `i`-th basis hom and `z` lies in `G(source of f)`.
    fn compose_images(&self, i: usize, z: &NHElement, via: usize) -> Result<NHElement> {
        let x = self.preimage(via, z)?;
        Ok(self.nh.mul(&self.images[i], &x))
    }

    /// Some `x` with `y^lambda x = z`.
    fn preimage(&self, lambda: usize, z: &NHElement) -> Result<NHElement> {
        let sp = &self.preimages[lambda];
        let c = sp
            .coords(z.coords())
            .ok_or_else(|| Error::NotInSpan(format!("element outside G({})", self.partitions[lambda])))?;
        let mut x = vec![0u32; self.nh.dim()];
        for (&lab, &v) in sp.labels().iter().zip(&c) {
            x[lab] = v;
        }
        Ok(NHElement::from_coords(x))
    }

    /// Image of `y^nu` under `∂f` for the hom `y^nu -> z`.
    fn differential_image(&self, z: &NHElement, nu: usize) -> NHElement {
        self.nh.sub(&self.nh.differential(z), &self.nh.mul(z, &self.twists[nu]))
    }

    /// Sparse `Phi` coordinates of a hom `G(nu) -> G(mu)` given by its image.
    fn block_coords(&self, nu: usize, mu: usize, z: &NHElement) -> Result<Vec<(usize, u32)>> {
        let b = &self.blocks[nu][mu];
        let c = b.solver.coords(z.coords()).ok_or_else(|| {
            Error::NotInSpan(format!(
                "element is not a hom G({}) -> G({})",
                self.partitions[nu], self.partitions[mu]
            ))
        })?;
        Ok(b.solver.labels().iter().zip(c).filter(|(_, x)| *x != 0).map(|(&g, x)| (g, x)).collect())
    }

    pub fn nilhecke(&self) -> &NHAlgebra {
        &self.nh
    }

    pub fn n(&self) -> usize {
        self.nh.n()
    }

    pub fn l(&self) -> usize {
        self.nh.l()
    }

    pub fn p(&self) -> u32 {
        self.nh.p()
    }

    pub fn dim(&self) -> usize {
        self.phis.len()
    }

    pub fn partitions(&self) -> &[Multipartition] {
        &self.partitions
    }

    pub fn partition_index(&self, lambda: &Multipartition) -> Option<usize> {
        self.partitions.iter().position(|m| m == lambda)
    }

    pub fn module(&self, lambda: usize) -> &CyclicModule {
        &self.modules[lambda]
    }

    /// `T_lambda` in the order used for indexing.
    pub fn tableaux(&self, lambda: usize) -> &[Tableau] {
        &self.tableaux[lambda]
    }

    pub fn labels(&self) -> &[PhiLabel] {
        &self.phis
    }

    pub fn phi_index(&self, lambda: usize, t: usize, s: usize) -> usize {
        let offset: usize = (0..lambda).map(|m| self.tableaux[m].len().pow(2)).sum();
        offset + t * self.tableaux[lambda].len() + s
    }

    /// `Phi^lambda_{ts}` as a hom.
    pub fn phi_basis(&self, lambda: usize, t: usize, s: usize) -> SchurHom {
        self.hom_of(self.phi_index(lambda, t, s))
    }

    pub fn hom_of(&self, i: usize) -> SchurHom {
        let lab = &self.phis[i];
        SchurHom {
            source: self.partitions[lab.source].clone(),
            target: self.partitions[lab.target].clone(),
            image: self.images[i].clone(),
            degree: lab.degree,
        }
    }

    /// Annihilator-computed basis of `HOM(G(nu), G(mu))` with degrees.
    pub fn hom_block(&self, nu: usize, mu: usize) -> (&[NHElement], &[i64]) {
        let b = &self.blocks[nu][mu];
        (&b.basis, &b.degrees)
    }

    /// Graded dimension of `HOM(G(nu), G(mu))`.
    pub fn hom_gdim(&self, nu: usize, mu: usize) -> IntLaurent {
        IntLaurent::from_pairs(self.blocks[nu][mu].degrees.iter().map(|&d| (d, 1)))
    }

    /// `Phi` indices of the block `HOM(G(nu), G(mu))`.
    pub fn block_indices(&self, nu: usize, mu: usize) -> &[usize] {
        &self.blocks[nu][mu].phis
    }

    /// `Phi` coordinates of a hom, or an error when it is not one.
    pub fn element_of(&self, h: &SchurHom) -> Result<SchurElement> {
        let nu = self.partition_index(&h.source).ok_or_else(|| Error::Malformed(h.source.to_string()))?;
        let mu = self.partition_index(&h.target).ok_or_else(|| Error::Malformed(h.target.to_string()))?;
        let mut v = vec![0u32; self.dim()];
        for (g, x) in self.block_coords(nu, mu, &h.image)? {
            v[g] = x;
        }
        Ok(SchurElement::from_coords(v))
    }

    /// `f ∘ g`.
    pub fn compose(&self, f: &SchurHom, g: &SchurHom) -> Result<SchurHom> {
        if f.source != g.target {
            return Err(Error::ShapeMismatch(format!("compose G({}) <- G({}) after G({}) <- G({})", f.target, f.source, g.target, g.source)));
        }
        let via = self.partition_index(&f.source).ok_or_else(|| Error::Malformed(f.source.to_string()))?;
        let x = self.preimage(via, &g.image)?;
        Ok(SchurHom {
            source: g.source.clone(),
            target: f.target.clone(),
            image: self.nh.mul(&f.image, &x),
            degree: f.degree + g.degree,
        })
    }

    /// `∂f = ∂ ∘ f - f ∘ ∂`.
    pub fn schur_differential(&self, f: &SchurHom) -> Result<SchurHom> {
        let nu = self.partition_index(&f.source).ok_or_else(|| Error::Malformed(f.source.to_string()))?;
        Ok(SchurHom {
            source: f.source.clone(),
            target: f.target.clone(),
            image: self.differential_image(&f.image, nu),
            degree: f.degree + 2,
        })
    }

    // ------------------------------------------------------------------
    // coordinate arithmetic

    pub fn zero(&self) -> SchurElement {
        SchurElement::from_coords(vec![0; self.dim()])
    }

    pub fn basis_element(&self, i: usize) -> SchurElement {
        let mut v = vec![0; self.dim()];
        v[i] = 1;
        SchurElement::from_coords(v)
    }

    /// `Phi^lambda_ee`, the identity of `G(lambda)`.
    pub fn idempotent(&self, lambda: usize) -> SchurElement {
        let e = self.tableaux[lambda].iter().position(|t| t.shape() == &self.partitions[lambda]).expect("standard tableau");
        self.basis_element(self.phi_index(lambda, e, e))
    }

    pub fn one(&self) -> SchurElement {
        (0..self.partitions.len()).fold(self.zero(), |acc, m| self.add(&acc, &self.idempotent(m)))
    }

    pub fn add(&self, a: &SchurElement, b: &SchurElement) -> SchurElement {
        SchurElement::from_coords(linalg::vec_add(&a.coords, &b.coords, self.nh.field()))
    }

    pub fn sub(&self, a: &SchurElement, b: &SchurElement) -> SchurElement {
        SchurElement::from_coords(linalg::vec_sub(&a.coords, &b.coords, self.nh.field()))
    }

    pub fn scale(&self, a: &SchurElement, c: i64) -> SchurElement {
        let f = self.nh.field();
        SchurElement::from_coords(linalg::vec_scale(&a.coords, f.from_i64(c), f))
    }

    /// Product `a b` (composition `a ∘ b`).
    pub fn mul(&self, a: &SchurElement, b: &SchurElement) -> SchurElement {
        let f = self.nh.field();
        let dim = self.dim();
        let mut out = vec![0u32; dim];
        for (i, x) in a.support() {
            for (j, y) in b.support() {
                if let Some(c) = &self.products[i * dim + j] {
                    let s = f.mul(x, y);
                    for &(g, v) in c {
                        out[g] = f.add(out[g], f.mul(s, v));
                    }
                }
            }
        }
        SchurElement::from_coords(out)
    }

    /// Sparse structure constants of `Phi_i Phi_j`, `None` when not composable.
    pub fn structure_constants(&self, i: usize, j: usize) -> Option<&[(usize, u32)]> {
        self.products[i * self.dim() + j].as_deref()
    }

    pub fn differential(&self, a: &SchurElement) -> SchurElement {
        SchurElement::from_coords(self.diff.mul_vec(&a.coords, self.nh.field()))
    }

    pub fn differential_matrix(&self) -> &Mat {
        &self.diff
    }

    /// `Phi_{ts} -> Phi_{st}`.
    pub fn star(&self, a: &SchurElement) -> SchurElement {
        let mut out = vec![0u32; self.dim()];
        for (i, x) in a.support() {
            out[self.star[i]] = x;
        }
        SchurElement::from_coords(out)
    }

    pub fn degree_of_basis(&self, i: usize) -> i64 {
        self.phis[i].degree
    }

    /// `sum_i q^{deg Phi_i}`.
    pub fn gdim(&self) -> IntLaurent {
        IntLaurent::from_pairs(self.phis.iter().map(|p| (p.degree, 1)))
    }

    /// Human-readable name of a basis element.
    pub fn describe(&self, i: usize) -> String {
        let lab = &self.phis[i];
        format!(
            "Phi^{}_({},{})",
            self.partitions[lab.lambda], self.tableaux[lab.lambda][lab.t], self.tableaux[lab.lambda][lab.s]
        )
    }

    /// Checks the `p`-DG axioms exhaustively on basis elements.
    pub fn pdg_report(&self) -> SchurPdgReport {
        let dim = self.dim();
        let f = self.nh.field();
        let p = self.p() as u64;
        let nilpotent = dim == 0 || self.diff.pow(p, f).is_zero();
        let mut leibniz = true;
        let mut checked = 0;
        for i in 0..dim {
            for j in 0..dim {
                if self.products[i * dim + j].is_none() {
                    continue;
                }
                checked += 1;
                let (a, b) = (self.basis_element(i), self.basis_element(j));
                let lhs = self.differential(&self.mul(&a, &b));
                let rhs = self.add(&self.mul(&self.differential(&a), &b), &self.mul(&a, &self.differential(&b)));
                if lhs != rhs {
                    leibniz = false;
                }
            }
        }
        let idempotents_closed = (0..self.partitions.len()).all(|m| self.differential(&self.idempotent(m)).is_zero());
        let degree_two = (0..dim).all(|i| {
            let d = self.differential(&self.basis_element(i));
            let ok = d.support().all(|(g, _)| self.phis[g].degree == self.phis[i].degree + 2);
            ok
        });
        SchurPdgReport { dim, products_checked: checked, leibniz, nilpotent, idempotents_closed, degree_two }
    }

    /// Orthogonality, completeness and associativity of the tables on basis triples.
    pub fn algebra_report(&self) -> SchurAlgebraReport {
        let k = self.partitions.len();
        let mut orthogonal = true;
        for a in 0..k {
            for b in 0..k {
                let prod = self.mul(&self.idempotent(a), &self.idempotent(b));
                let expected = if a == b { self.idempotent(a) } else { self.zero() };
                orthogonal &= prod == expected;
            }
        }
        let one = self.one();
        let unit = (0..self.dim()).all(|i| {
            let x = self.basis_element(i);
            self.mul(&one, &x) == x && self.mul(&x, &one) == x
        });
        let mut associative = true;
        let dim = self.dim();
        // triples (i, j, k) with composable endpoints
        for i in 0..dim {
            for j in 0..dim {
                if self.products[i * dim + j].is_none() {
                    continue;
                }
                let ij = self.mul(&self.basis_element(i), &self.basis_element(j));
                for kk in (0..dim).filter(|&kk| self.phis[kk].target == self.phis[j].source).step_by(3) {
                    let c = self.basis_element(kk);
                    let lhs = self.mul(&ij, &c);
                    let rhs = self.mul(&self.basis_element(i), &self.mul(&self.basis_element(j), &c));
                    associative &= lhs == rhs;
                }
            }
        }
        let expected_dim = self.tableaux.iter().map(|t| t.len() * t.len()).sum();
        SchurAlgebraReport {
            dim: self.dim(),
            expected_dim,
            per_shape: self.tableaux.iter().map(|t| t.len() * t.len()).collect(),
            orthogonal_idempotents: orthogonal,
            unit,
            associative,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SchurPdgReport {
    pub dim: usize,
    pub products_checked: usize,
    pub leibniz: bool,
    pub nilpotent: bool,
    pub idempotents_closed: bool,
    pub degree_two: bool,
}

impl SchurPdgReport {
    pub fn passed(&self) -> bool {
        self.leibniz && self.nilpotent && self.idempotents_closed && self.degree_two
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SchurAlgebraReport {
    pub dim: usize,
    pub expected_dim: usize,
    pub per_shape: Vec<usize>,
    pub orthogonal_idempotents: bool,
    pub unit: bool,
    pub associative: bool,
}

impl SchurAlgebraReport {
    pub fn passed(&self) -> bool {
        self.dim == self.expected_dim && self.orthogonal_idempotents && self.unit && self.associative
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dimensions() {
        let s = SchurAlgebra::build(2, 3, 5).unwrap();
        assert_eq!(s.dim(), 21);
        let r = s.algebra_report();
        assert_eq!(r.per_shape, vec![16, 4, 1]);
        assert!(r.passed(), "{r:?}");
        let s = SchurAlgebra::build(2, 4, 5).unwrap();
        assert_eq!(s.dim(), 147);
        assert_eq!(s.algebra_report().per_shape, vec![81, 36, 9, 16, 4, 1]);
    }

    #[test]
    fn hom_space_matches_intersection() {
        // the annihilator criterion agrees with G(mu) ∩ NH y^nu
        let s = SchurAlgebra::build(2, 3, 5).unwrap();
        let nh = s.nilhecke();
        let f = nh.field();
        for nu in 0..3 {
            let rm = nh.right_mult_matrix(&nh.y_mu(&s.partitions()[nu]));
            let left = Subspace::spanned_by(&(0..nh.dim()).map(|j| rm.col(j)).collect::<Vec<_>>(), nh.dim(), f);
            for mu in 0..3 {
                let gm = s.module(mu).span();
                let inter = linalg::intersect(gm, &left, f);
                assert_eq!(inter.len(), s.hom_block(nu, mu).0.len());
            }
        }
    }

    #[test]
    fn identity_and_composition() {
        let s = SchurAlgebra::build(2, 3, 5).unwrap();
        for m in 0..3 {
            let e = s.idempotent(m);
            let i = e.support().next().unwrap().0;
            let h = s.hom_of(i);
            assert_eq!(h.image, s.nilhecke().y_mu(&s.partitions()[m]));
            assert_eq!(h.degree, 0);
        }
        let f = s.phi_basis(0, 1, 0);
        let g = s.phi_basis(0, 0, 2);
        let fg = s.compose(&f, &g).unwrap();
        let via = s.mul(&s.element_of(&f).unwrap(), &s.element_of(&g).unwrap());
        assert_eq!(s.element_of(&fg).unwrap(), via);
        assert!(s.compose(&g, &f).is_err() || f.source == g.target);
    }

    #[test]
    fn differential_axioms() {
        for p in [3, 5] {
            let s = SchurAlgebra::build(2, 3, p).unwrap();
            let r = s.pdg_report();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn one_strand() {
        let s = SchurAlgebra::build(1, 4, 5).unwrap();
        assert_eq!(s.dim(), 16 + 9 + 4 + 1);
        assert!(s.algebra_report().passed());
    }

    #[test]
    fn three_strands() {
        let s = SchurAlgebra::build(3, 4, 5).unwrap();
        assert!(s.algebra_report().passed());
        assert!(s.pdg_report().passed());
    }
}
