//! The graded cellular basis `psi^mu_{st}` of `NH_n^l`, its chain of ideals, cell
//! modules, Specht modules and the trace form.

use serde::Serialize;

use crate::coeff::IntLaurent;
use crate::combinat::{enumerate_partitions, strictly_dominates, tab_upper, Multipartition, Tableau};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Subspace};

use super::cyclic::{generator_list, CyclicModule};
use super::{NHAlgebra, NHElement};

/// Index `(mu, s, t)` of a cellular basis element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CellIndex {
    pub shape: usize,
    pub s: Tableau,
    pub t: Tableau,
}

/// The full cellular basis together with a solver for its coordinates.
#[derive(Debug, Clone)]
pub struct NHCellularBasis {
    shapes: Vec<Multipartition>,
    indices: Vec<CellIndex>,
    elements: Vec<NHElement>,
    solver: Subspace,
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct TriangularityReport {
    pub products_checked: usize,
    pub failures: Vec<String>,
}

impl TriangularityReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IdealStability {
    pub shape: String,
    pub strict: bool,
    pub dim: usize,
    pub two_sided: bool,
    pub differential_stable: bool,
    pub star_stable: bool,
}

impl NHCellularBasis {
    pub fn build(alg: &NHAlgebra) -> Result<Self> {
        let shapes = enumerate_partitions(alg.n(), alg.l())?;
        let mut indices = Vec::new();
        let mut elements = Vec::new();
        for (k, mu) in shapes.iter().enumerate() {
            let tabs = Tableau::all(mu);
            for s in &tabs {
                for t in &tabs {
                    elements.push(alg.cellular_element(mu, s, t)?);
                    indices.push(CellIndex { shape: k, s: s.clone(), t: t.clone() });
                }
            }
        }
        let vecs: Vec<Vec<u32>> = elements.iter().map(|e| e.coords().to_vec()).collect();
        let solver = Subspace::spanned_by(&vecs, alg.dim(), alg.field());
        if solver.dim() != alg.dim() || elements.len() != alg.dim() {
            return Err(Error::Verification(format!(
                "cellular elements span {} of {}",
                solver.dim(),
                alg.dim()
            )));
        }
        Ok(Self { shapes, indices, elements, solver })
    }

    pub fn shapes(&self) -> &[Multipartition] {
        &self.shapes
    }

    pub fn indices(&self) -> &[CellIndex] {
        &self.indices
    }

    pub fn elements(&self) -> &[NHElement] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// Coordinates of `x` in the cellular basis.
    pub fn coordinates(&self, x: &NHElement) -> Vec<u32> {
        self.solver.coords(x.coords()).expect("cellular basis spans NH")
    }

    fn above(&self, mu: usize, strict: bool) -> impl Fn(usize) -> bool + '_ {
        move |k| (!strict && k == mu) || strictly_dominates(&self.shapes[k], &self.shapes[mu])
    }

    /// Span of `psi^lambda` with `lambda > mu` (or `>=` when not strict) in dominance.
    pub fn ideal(&self, alg: &NHAlgebra, mu: usize, strict: bool) -> Subspace {
        let keep = self.above(mu, strict);
        let vecs: Vec<Vec<u32>> = self
            .indices
            .iter()
            .zip(&self.elements)
            .filter(|(i, _)| keep(i.shape))
            .map(|(_, e)| e.coords().to_vec())
            .collect();
        Subspace::spanned_by(&vecs, alg.dim(), alg.field())
    }

    /// Checks that `psi_{st} x` lies in the span of `psi_{sv}` plus `NH^{>mu}`, and
    /// `x psi_{st}` in the span of `psi_{vt}` plus `NH^{>mu}`, for every basis word `x`.
    pub fn triangularity(&self, alg: &NHAlgebra) -> TriangularityReport {
        let mut report = TriangularityReport::default();
        let fact = self.shapes.first().map_or(1, |mu| Tableau::all(mu).len());
        for x in 0..alg.dim() {
            let xe = alg.basis_element(x);
            let rm = alg.right_mult_basis(x);
            let lm = alg.left_mult_matrix(&xe);
            for (side, mat) in [("right", rm), ("left", &lm)] {
                for (mu, _) in self.shapes.iter().enumerate() {
                    let block: Vec<usize> =
                        (0..self.len()).filter(|&k| self.indices[k].shape == mu).collect();
                    for (pos, &k) in block.iter().enumerate() {
                        let v = mat.mul_vec(self.elements[k].coords(), alg.field());
                        let c = self.solver.coords(&v).expect("basis");
                        report.products_checked += 1;
                        let (s_pos, t_pos) = (pos / fact, pos % fact);
                        let fixed = if side == "right" { s_pos } else { t_pos };
                        for (j, &cj) in c.iter().enumerate() {
                            if cj == 0 {
                                continue;
                            }
                            let idx = &self.indices[j];
                            if idx.shape == mu {
                                let jpos = block.iter().position(|&b| b == j).expect("in block");
                                let (js, jt) = (jpos / fact, jpos % fact);
                                let jf = if side == "right" { js } else { jt };
                                if jf != fixed {
                                    report.failures.push(format!(
                                        "{side} product by word {x} on shape {} leaves the cell",
                                        self.shapes[mu]
                                    ));
                                }
                            } else if !strictly_dominates(&self.shapes[idx.shape], &self.shapes[mu]) {
                                report.failures.push(format!(
                                    "{side} product by word {x} on shape {} has a component at {}",
                                    self.shapes[mu], self.shapes[idx.shape]
                                ));
                            }
                        }
                    }
                }
            }
        }
        report
    }

    /// Stability of each chain ideal under two-sided multiplication, `∂` and `*`.
    pub fn chain_stability(&self, alg: &NHAlgebra) -> Vec<IdealStability> {
        let f = alg.field();
        let gens = generator_list(alg);
        let rms: Vec<Mat> = gens.iter().map(|g| alg.right_mult_matrix(g)).collect();
        let lms: Vec<Mat> = gens.iter().map(|g| alg.left_mult_matrix(g)).collect();
        let mut out = Vec::new();
        for mu in 0..self.shapes.len() {
            for strict in [true, false] {
                let ideal = self.ideal(alg, mu, strict);
                let basis = ideal.basis();
                let closed = |m: &Mat| basis.iter().all(|v| ideal.contains(&m.mul_vec(v, f)));
                out.push(IdealStability {
                    shape: self.shapes[mu].to_string(),
                    strict,
                    dim: ideal.dim(),
                    two_sided: rms.iter().chain(&lms).all(closed),
                    differential_stable: closed(alg.differential_matrix()),
                    star_stable: closed(alg.star_matrix()),
                });
            }
        }
        out
    }
}

impl NHCellularBasis {
    /// Verifies independence of the right-side coefficients from the fixed index.
    pub fn coefficients_independent(&self, alg: &NHAlgebra) -> TriangularityReport {
        let mut report = TriangularityReport::default();
        let f = alg.field();
        for (mu, shape) in self.shapes.iter().enumerate() {
            let tabs = Tableau::all(shape);
            let pos_of = |k: usize| {
                let i = &self.indices[k];
                (
                    tabs.iter().position(|t| *t == i.s).expect("tableau"),
                    tabs.iter().position(|t| *t == i.t).expect("tableau"),
                )
            };
            let block: Vec<usize> = (0..self.len()).filter(|&k| self.indices[k].shape == mu).collect();
            for x in 0..alg.dim() {
                let xe = alg.basis_element(x);
                let right = alg.right_mult_basis(x).clone();
                let left = alg.left_mult_matrix(&xe);
                for (side, mat) in [(0usize, &right), (1, &left)] {
                    // coefficient table indexed by (fixed, source moving, target moving)
                    let m = tabs.len();
                    let mut table = vec![vec![vec![0u32; m]; m]; m];
                    for &k in &block {
                        let (s, t) = pos_of(k);
                        let v = mat.mul_vec(self.elements[k].coords(), f);
                        let c = self.solver.coords(&v).expect("basis");
                        report.products_checked += 1;
                        for &j in &block {
                            let (js, jt) = pos_of(j);
                            if side == 0 && js == s {
                                table[s][t][jt] = c[j];
                            } else if side == 1 && jt == t {
                                table[t][s][js] = c[j];
                            }
                        }
                    }
                    for fixed in 1..m {
                        if table[fixed] != table[0] {
                            report.failures.push(format!(
                                "coefficients depend on the fixed tableau for word {x} on {shape}"
                            ));
                        }
                    }
                }
            }
        }
        report
    }
}

/// A cell module `C^mu` of `NH_n^l` with its bilinear form and differential.
#[derive(Debug, Clone, Serialize)]
pub struct NHCellModule {
    pub shape: String,
    pub dim: usize,
    /// `<psi_{es}, psi_{te}>`: coefficient of `psi_{ee}` in `psi_{es} psi_{te}` mod `NH^{>mu}`.
    pub gram: Vec<Vec<u32>>,
    pub gram_rank: usize,
    /// `∂` on the right module spanned by `psi_{et}`.
    pub right_differential: Vec<Vec<u32>>,
    /// `∂` on the left module spanned by `psi_{se}`.
    pub left_differential: Vec<Vec<u32>>,
    pub form_is_differential_invariant: bool,
}

pub fn nh_cell_module(alg: &NHAlgebra, cells: &NHCellularBasis, mu: usize) -> Result<NHCellModule> {
    let f = alg.field();
    let shape = &cells.shapes()[mu];
    let tabs = Tableau::all(shape);
    let e = Tableau::standard(shape);
    let lower = cells.ideal(alg, mu, true);
    let right: Vec<NHElement> =
        tabs.iter().map(|t| alg.cellular_element(shape, &e, t)).collect::<Result<_>>()?;
    let left: Vec<NHElement> =
        tabs.iter().map(|s| alg.cellular_element(shape, s, &e)).collect::<Result<_>>()?;
    let quotient_coords = |reps: &[NHElement], v: &NHElement| -> Result<Vec<u32>> {
        let mut sp = lower.clone();
        let base = sp.dim();
        for r in reps {
            sp.insert(r.coords());
        }
        let c = sp
            .coords(v.coords())
            .ok_or_else(|| Error::NotInSpan(format!("cell module of {shape} not ∂-stable")))?;
        Ok(c[base..].to_vec())
    };
    let ee = alg.y_mu(shape);
    let gram: Vec<Vec<u32>> = right
        .iter()
        .map(|x| {
            left.iter()
                .map(|y| {
                    let prod = alg.mul(x, y);
                    let c = quotient_coords(std::slice::from_ref(&ee), &prod)?;
                    Ok(c[0])
                })
                .collect::<Result<Vec<u32>>>()
        })
        .collect::<Result<_>>()?;
    let rd: Vec<Vec<u32>> =
        right.iter().map(|x| quotient_coords(&right, &alg.differential(x))).collect::<Result<_>>()?;
    let ld: Vec<Vec<u32>> =
        left.iter().map(|x| quotient_coords(&left, &alg.differential(x))).collect::<Result<_>>()?;
    // columns of rd/ld are images of basis vectors
    let g = Mat::from_rows(&gram, tabs.len());
    let dr = Mat::from_cols(&rd, tabs.len());
    let dl = Mat::from_cols(&ld, tabs.len());
    let invariant = dr.transpose().mul(&g, f).add(&g.mul(&dl, f), f).is_zero();
    Ok(NHCellModule {
        shape: shape.to_string(),
        dim: tabs.len(),
        gram_rank: linalg::rank(&g, f),
        gram,
        right_differential: dr.row_vecs(),
        left_differential: dl.row_vecs(),
        form_is_differential_invariant: invariant,
    })
}

/// The Specht module `S^mu = (y^mu NH + NH^{>mu}) / NH^{>mu}` with basis `psi_{es}`.
#[derive(Debug, Clone)]
pub struct SpechtModule {
    shape: Multipartition,
    reps: Vec<NHElement>,
    degrees: Vec<i64>,
    lower_dim: usize,
    solver: Subspace,
    diff: Mat,
}

impl SpechtModule {
    pub fn build(alg: &NHAlgebra, cells: &NHCellularBasis, mu: &Multipartition) -> Result<Self> {
        let k = cells
            .shapes()
            .iter()
            .position(|s| s == mu)
            .ok_or_else(|| Error::ShapeMismatch(format!("{mu} is not a shape of NH")))?;
        let e = Tableau::standard(mu);
        let mut solver = cells.ideal(alg, k, true);
        let lower_dim = solver.dim();
        let mut reps = Vec::new();
        let mut degrees = Vec::new();
        for s in Tableau::all(mu) {
            let x = alg.cellular_element(mu, &e, &s)?;
            degrees.push(e.degree() + s.degree());
            if !solver.insert(x.coords()) {
                return Err(Error::Verification(format!("psi_(e,{s}) is dependent modulo NH^>{mu}")));
            }
            reps.push(x);
        }
        let mut m = Self { shape: mu.clone(), reps, degrees, lower_dim, solver, diff: Mat::zeros(0, 0) };
        let cols: Vec<Vec<u32>> = m
            .reps
            .iter()
            .map(|x| m.reduce(&alg.differential(x)))
            .collect::<Result<_>>()?;
        m.diff = Mat::from_cols(&cols, m.dim());
        Ok(m)
    }

    pub fn shape(&self) -> &Multipartition {
        &self.shape
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn representatives(&self) -> &[NHElement] {
        &self.reps
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn gdim_raw(&self) -> IntLaurent {
        IntLaurent::from_pairs(self.degrees.iter().map(|&d| (d, 1)))
    }

    pub fn differential_matrix(&self) -> &Mat {
        &self.diff
    }

    /// Coordinates of `v` in the quotient, failing if `v` is outside the numerator.
    pub fn reduce(&self, v: &NHElement) -> Result<Vec<u32>> {
        let c = self
            .solver
            .coords(v.coords())
            .ok_or_else(|| Error::NotInSpan(format!("element outside the Specht numerator of {}", self.shape)))?;
        Ok(c[self.lower_dim..].to_vec())
    }

    /// Matrix of right multiplication by `x`.
    pub fn action_matrix(&self, alg: &NHAlgebra, x: &NHElement) -> Result<Mat> {
        let cols: Vec<Vec<u32>> =
            self.reps.iter().map(|r| self.reduce(&alg.mul(r, x))).collect::<Result<_>>()?;
        Ok(Mat::from_cols(&cols, self.dim()))
    }

    /// `v^mu y_i = 0` for every `i`.
    pub fn dots_kill_generator(&self, alg: &NHAlgebra) -> Result<bool> {
        for i in 1..=alg.n() {
            let c = self.reduce(&alg.mul(&self.reps[0], &alg.y(i)?))?;
            if !linalg::vec_is_zero(&c) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `∂(v^mu) = 0`.
    pub fn generator_is_closed(&self) -> bool {
        linalg::vec_is_zero(&self.diff.col(0))
    }
}

/// One layer `G_i / G_{i-1}` of the Specht filtration of `G(lambda)`.
#[derive(Debug, Clone, Serialize)]
pub struct FiltrationLayer {
    pub shape: String,
    pub tableau: String,
    pub length: usize,
    pub dim: usize,
    /// Degree of the layer generator minus the degree of `v^nu`, i.e. `-2 l(w_i)`.
    pub raw_offset: i64,
    pub generator_killed_by_dots: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct FiltrationReport {
    pub lambda: String,
    pub layers: Vec<FiltrationLayer>,
    pub submodule_chain: bool,
    pub gdim_matches: bool,
    pub gdim_raw: IntLaurent,
}

impl FiltrationReport {
    pub fn passed(&self) -> bool {
        self.submodule_chain
            && self.gdim_matches
            && self.layers.iter().all(|l| l.generator_killed_by_dots)
    }
}

/// Builds the filtration of `G(lambda)` by the spans of `psi_{ts}`, `t` in `Tab^lambda(mu)`,
/// layered from the highest shape down, and checks each layer is a Specht quotient.
pub fn specht_filtration(alg: &NHAlgebra, cells: &NHCellularBasis, lambda: &Multipartition) -> Result<FiltrationReport> {
    let f = alg.field();
    let g = CyclicModule::g_lambda(alg, lambda)?;
    let gens = generator_list(alg);
    let rms: Vec<Mat> = gens.iter().map(|x| alg.right_mult_matrix(x)).collect();
    let mut chain = Subspace::new(alg.dim(), f);
    let mut layers = Vec::new();
    let mut submodule_chain = true;
    let mut expected = IntLaurent::zero();
    for mu in cells.shapes() {
        let specht = SpechtModule::build(alg, cells, mu)?;
        for t in tab_upper(lambda, mu) {
            let prev = chain.clone();
            let gen = alg.cellular_element(mu, &t, &Tableau::standard(mu))?;
            for s in Tableau::all(mu) {
                let x = alg.cellular_element(mu, &t, &s)?;
                if !g.contains(&x) {
                    submodule_chain = false;
                }
                chain.insert(x.coords());
            }
            let dim = chain.dim() - prev.dim();
            let closed = chain
                .basis()
                .iter()
                .all(|v| rms.iter().all(|m| chain.contains(&m.mul_vec(v, f))));
            submodule_chain &= closed;
            let killed = (1..=alg.n()).all(|i| {
                let v = alg.mul(&gen, &alg.y(i).expect("in range"));
                prev.contains(v.coords())
            });
            let offset = -2 * t.word().length() as i64;
            expected = &expected + &specht.gdim_raw().shift(offset);
            layers.push(FiltrationLayer {
                shape: mu.to_string(),
                tableau: t.to_string(),
                length: t.word().length(),
                dim,
                raw_offset: offset,
                generator_killed_by_dots: killed,
            });
        }
    }
    submodule_chain &= chain.dim() == g.dim();
    let raw = g.gdim_raw();
    Ok(FiltrationReport {
        lambda: lambda.to_string(),
        layers,
        submodule_chain,
        gdim_matches: raw == expected,
        gdim_raw: raw,
    })
}

/// Data of the symmetrizing trace in degree `2n(l-n)`.
#[derive(Debug, Clone, Serialize)]
pub struct TraceReport {
    pub degree: i64,
    pub cocommutator_dim: usize,
    pub gram_rank: usize,
    pub dim: usize,
}

impl TraceReport {
    pub fn passed(&self) -> bool {
        self.cocommutator_dim == 1 && self.gram_rank == self.dim
    }
}

pub fn trace_check(alg: &NHAlgebra) -> TraceReport {
    let f = alg.field();
    let n = alg.n() as i64;
    let top = 2 * n * (alg.l() as i64 - n);
    let dim = alg.dim();
    let top_words: Vec<usize> = (0..dim).filter(|&k| alg.degree_of_basis(k) == top).collect();
    let mut comm = Subspace::new(dim, f);
    let mut products = vec![vec![None; dim]; dim];
    for i in 0..dim {
        for j in 0..dim {
            if alg.degree_of_basis(i) + alg.degree_of_basis(j) == top {
                products[i][j] = Some(alg.mul_cached(&alg.basis_element(i), &alg.basis_element(j)));
            }
        }
    }
    for i in 0..dim {
        for j in 0..dim {
            if let (Some(a), Some(b)) = (&products[i][j], &products[j][i]) {
                comm.insert(&linalg::vec_sub(a.coords(), b.coords(), f));
            }
        }
    }
    let cocomm = top_words.len() - comm.dim();
    // a functional on degree `top` vanishing on commutators
    let restricted: Vec<Vec<u32>> =
        comm.basis().iter().map(|v| top_words.iter().map(|&k| v[k]).collect()).collect();
    let tau_top = if restricted.is_empty() {
        let mut v = vec![0; top_words.len()];
        if !v.is_empty() {
            v[0] = 1;
        }
        Some(v)
    } else {
        linalg::nullspace(&Mat::from_rows(&restricted, top_words.len()), f).into_iter().next()
    };
    let mut gram_rank = 0;
    if let Some(tau) = tau_top {
        let mut gram = Mat::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..dim {
                if let Some(x) = &products[i][j] {
                    let mut acc = 0;
                    for (pos, &k) in top_words.iter().enumerate() {
                        acc = f.add(acc, f.mul(tau[pos], x.coords()[k]));
                    }
                    gram.set(i, j, acc);
                }
            }
        }
        gram_rank = linalg::rank(&gram, f);
    }
    TraceReport { degree: top, cocommutator_dim: cocomm, gram_rank, dim }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize, l: usize, p: u32) -> (NHAlgebra, NHCellularBasis) {
        let a = NHAlgebra::build(n, l, p).unwrap();
        let c = NHCellularBasis::build(&a).unwrap();
        (a, c)
    }

    #[test]
    fn triangularity_small() {
        for (n, l) in [(2, 3), (2, 4)] {
            let (a, c) = setup(n, l, 5);
            let r = c.triangularity(&a);
            assert!(r.passed(), "{:?}", r.failures.first());
            let r = c.coefficients_independent(&a);
            assert!(r.passed(), "{:?}", r.failures.first());
        }
    }

    #[test]
    fn chain_ideals_are_stable() {
        let (a, c) = setup(2, 4, 5);
        for s in c.chain_stability(&a) {
            assert!(s.two_sided && s.differential_stable && s.star_stable, "{s:?}");
        }
    }

    #[test]
    fn cell_modules() {
        let (a, c) = setup(2, 3, 5);
        for mu in 0..c.shapes().len() {
            let m = nh_cell_module(&a, &c, mu).unwrap();
            assert_eq!(m.dim, 2);
            assert!(m.form_is_differential_invariant, "{m:?}");
        }
    }

    #[test]
    fn specht_modules() {
        let (a, c) = setup(2, 3, 5);
        for mu in c.shapes().to_vec() {
            let s = SpechtModule::build(&a, &c, &mu).unwrap();
            assert_eq!(s.dim(), 2);
            assert!(s.dots_kill_generator(&a).unwrap());
            assert!(s.generator_is_closed());
        }
        let (a, c) = setup(2, 2, 5);
        let mu: Multipartition = "11".parse().unwrap();
        let s = SpechtModule::build(&a, &c, &mu).unwrap();
        let g = CyclicModule::g_lambda(&a, &mu).unwrap();
        assert_eq!(s.gdim_raw(), g.gdim_raw());
    }

    #[test]
    fn filtrations() {
        let (a, c) = setup(2, 4, 5);
        for lam in c.shapes().to_vec() {
            let r = specht_filtration(&a, &c, &lam).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let top = specht_filtration(&a, &c, &"1100".parse().unwrap()).unwrap();
        assert_eq!(top.layers.len(), 1);
        let l4 = specht_filtration(&a, &c, &"0110".parse().unwrap()).unwrap();
        assert_eq!(l4.layers.len(), 4);
        let (a, c) = setup(2, 3, 5);
        let nu = specht_filtration(&a, &c, &"011".parse().unwrap()).unwrap();
        assert_eq!(nu.layers.len(), 4);
    }

    #[test]
    fn trace_is_nondegenerate() {
        for (n, l) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
            let a = NHAlgebra::build(n, l, 5).unwrap();
            let r = trace_check(&a);
            assert!(r.passed(), "{r:?}");
        }
    }
}
