//! The Webster algebra `W_n^l`, modeled as `END(⊕_b G[b])` over the nonzero
//! decompositions `b`, with its Stroppel-Webster cellular basis.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::coeff::IntLaurent;
use crate::combinat::{dominates, enumerate_partitions, multistandard, nonzero_decompositions, Decomposition, MultiTableau, Multipartition, Perm};
use crate::error::{Error, Result};
use crate::linalg::{self, Mat, Subspace};
use crate::nilhecke::cyclic::CyclicModule;
use crate::nilhecke::{NHAlgebra, NHElement};
use crate::schur::{hom_basis, right_ideal_generators, SchurAlgebra, SchurElement};

/// Black-strand permutation of `B_lambda^t` read from the top: top black position `i`
/// goes to the bottom box carrying the same label.
pub fn sweep_perm(t: &MultiTableau) -> Perm {
    t.strand_perm().inverse()
}

#[derive(Debug, Clone)]
struct Block {
    basis: Vec<NHElement>,
    degrees: Vec<i64>,
    offset: usize,
    solver: Subspace,
}

/// An element of the model in coordinates against the concatenated hom bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WebsterElement {
    coords: Vec<u32>,
}

impl WebsterElement {
    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        linalg::vec_is_zero(&self.coords)
    }
}

/// One element of the Stroppel-Webster basis.
#[derive(Debug, Clone, Serialize)]
pub struct SWBasisElement {
    pub shape: String,
    pub s: String,
    pub t: String,
    /// Index of the source decomposition `b_t`.
    pub source: usize,
    /// Index of the target decomposition `b_s`.
    pub target: usize,
    pub degree: i64,
    #[serde(skip)]
    pub image: NHElement,
}

#[derive(Debug)]
pub struct WebsterModel {
    nh: NHAlgebra,
    decomps: Vec<Decomposition>,
    modules: Vec<CyclicModule>,
    twists: Vec<NHElement>,
    preimages: Vec<Subspace>,
    ann_gens: Vec<Vec<NHElement>>,
    blocks: Vec<Vec<Block>>,
    /// `(source, target)` of each global coordinate.
    slots: Vec<(usize, usize)>,
    partitions: Vec<Multipartition>,
}

impl WebsterModel {
    pub fn build(n: usize, l: usize, p: u32) -> Result<Self> {
        Self::from_nilhecke(NHAlgebra::build(n, l, p)?)
    }

    pub fn from_nilhecke(nh: NHAlgebra) -> Result<Self> {
        let f = nh.field();
        let decomps = nonzero_decompositions(nh.n(), nh.l());
        let partitions = enumerate_partitions(nh.n(), nh.l())?;
        let mut modules = Vec::with_capacity(decomps.len());
        let mut twists = Vec::new();
        let mut preimages = Vec::new();
        let mut ann_gens = Vec::new();
        for b in &decomps {
            let m = CyclicModule::g_decomposition(&nh, b)?;
            let y = m.generator().cloned().ok_or_else(|| Error::Verification(format!("G[{b}] has no generator")))?;
            twists.push(m.twist().cloned().unwrap_or_else(|| nh.zero()));
            let lm = nh.left_mult_matrix(&y);
            let mut sp = Subspace::new(nh.dim(), f);
            for j in 0..nh.dim() {
                sp.insert_labelled(&lm.col(j), j);
            }
            preimages.push(sp);
            ann_gens.push(right_ideal_generators(&nh, &nh.right_annihilator(&y)));
            modules.push(m);
        }
        let k = decomps.len();
        let mut offset = 0;
        let mut slots = Vec::new();
        let mut blocks = Vec::with_capacity(k);
        for src in 0..k {
            let mut row = Vec::with_capacity(k);
            for tgt in 0..k {
                let hb = hom_basis(&nh, &modules[tgt], &ann_gens[src]);
                let mut solver = Subspace::new(nh.dim(), f);
                for (i, (z, _)) in hb.iter().enumerate() {
                    solver.insert_labelled(z.coords(), offset + i);
                }
                let degrees = hb
                    .iter()
                    .map(|(_, d)| d + 2 * decomps[src].shift() + decomps[tgt].shift() - decomps[src].shift())
                    .collect();
                slots.extend(std::iter::repeat_n((src, tgt), hb.len()));
                row.push(Block { basis: hb.into_iter().map(|(z, _)| z).collect(), degrees, offset, solver });
                offset += row.last().expect("pushed").basis.len();
            }
            blocks.push(row);
        }
        Ok(Self { nh, decomps, modules, twists, preimages, ann_gens, blocks, slots, partitions })
    }

    pub fn nilhecke(&self) -> &NHAlgebra {
        &self.nh
    }

    pub fn decompositions(&self) -> &[Decomposition] {
        &self.decomps
    }

    pub fn decomposition_index(&self, b: &Decomposition) -> Option<usize> {
        self.decomps.iter().position(|x| x == b)
    }

    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    pub fn hom_dim(&self, src: usize, tgt: usize) -> usize {
        self.blocks[src][tgt].basis.len()
    }

    pub fn gdim(&self) -> IntLaurent {
        IntLaurent::from_pairs(self.blocks.iter().flatten().flat_map(|b| b.degrees.iter().map(|&d| (d, 1))))
    }

    /// Graded dimension table `HOM(G[b], G[b'])`.
    pub fn gdim_table(&self) -> Vec<Vec<IntLaurent>> {
        self.blocks
            .iter()
            .map(|row| row.iter().map(|b| IntLaurent::from_pairs(b.degrees.iter().map(|&d| (d, 1)))).collect())
            .collect()
    }

    fn basis_image(&self, g: usize) -> &NHElement {
        let (s, t) = self.slots[g];
        let b = &self.blocks[s][t];
        &b.basis[g - b.offset]
    }

    pub fn basis_element(&self, g: usize) -> WebsterElement {
        let mut v = vec![0; self.dim()];
        v[g] = 1;
        WebsterElement { coords: v }
    }

    /// Coordinates of the hom `G[src] -> G[tgt]` with image `z`.
    pub fn element_of(&self, src: usize, tgt: usize, z: &NHElement) -> Result<WebsterElement> {
        let b = &self.blocks[src][tgt];
        let c = b.solver.coords(z.coords()).ok_or_else(|| {
            Error::NotInSpan(format!("not a hom G[{}] -> G[{}]", self.decomps[src], self.decomps[tgt]))
        })?;
        let mut v = vec![0u32; self.dim()];
        for (&lab, x) in b.solver.labels().iter().zip(c) {
            v[lab] = x;
        }
        Ok(WebsterElement { coords: v })
    }

    /// Whether `z` defines a hom `G[src] -> G[tgt]`.
    pub fn is_hom(&self, src: usize, tgt: usize, z: &NHElement) -> bool {
        self.modules[tgt].contains(z) && self.ann_gens[src].iter().all(|a| self.nh.mul(z, a).is_zero())
    }

    fn preimage(&self, b: usize, z: &NHElement) -> Result<NHElement> {
        let sp = &self.preimages[b];
        let c = sp.coords(z.coords()).ok_or_else(|| Error::NotInSpan(format!("element outside G[{}]", self.decomps[b])))?;
        let mut x = vec![0u32; self.nh.dim()];
        for (&lab, &v) in sp.labels().iter().zip(&c) {
            x[lab] = v;
        }
        Ok(NHElement::from_coords(x))
    }

    /// Image `f(z)` of `z` in `G[source of f]`.
    fn apply(&self, zf: &NHElement, src: usize, z: &NHElement) -> Result<NHElement> {
        Ok(self.nh.mul(zf, &self.preimage(src, z)?))
    }

    /// `a ∘ b`.
    pub fn mul(&self, a: &WebsterElement, b: &WebsterElement) -> Result<WebsterElement> {
        let f = self.nh.field();
        let mut acc = vec![0u32; self.dim()];
        // group the coordinates by block to compose whole blocks at once
        let group = |x: &WebsterElement| -> BTreeMap<(usize, usize), NHElement> {
            let mut m: BTreeMap<(usize, usize), NHElement> = BTreeMap::new();
            for (g, &c) in x.coords.iter().enumerate() {
                if c != 0 {
                    let e = m.entry(self.slots[g]).or_insert_with(|| self.nh.zero());
                    *e = self.nh.add(e, &self.nh.scale(self.basis_image(g), c as i64));
                }
            }
            m
        };
        let (ga, gb) = (group(a), group(b));
        for (&(sa, ta), za) in &ga {
            for (&(sb, tb), zb) in &gb {
                if tb != sa {
                    continue;
                }
                let z = self.apply(za, sa, zb)?;
                let c = self.element_of(sb, ta, &z)?;
                linalg::axpy(&mut acc, 1, &c.coords, f);
            }
        }
        Ok(WebsterElement { coords: acc })
    }

    pub fn add(&self, a: &WebsterElement, b: &WebsterElement) -> WebsterElement {
        WebsterElement { coords: linalg::vec_add(&a.coords, &b.coords, self.nh.field()) }
    }

    pub fn scale(&self, a: &WebsterElement, c: u32) -> WebsterElement {
        WebsterElement { coords: linalg::vec_scale(&a.coords, c, self.nh.field()) }
    }

    /// Columns `∂` of the basis elements: `∂f` sends `y^b` to `∂z - z a_b`.
    pub fn differential_matrix(&self) -> Result<Mat> {
        let cols: Vec<Vec<u32>> = (0..self.dim())
            .map(|g| {
                let (s, t) = self.slots[g];
                let z = self.basis_image(g);
                let dz = self.nh.sub(&self.nh.differential(z), &self.nh.mul(z, &self.twists[s]));
                self.element_of(s, t, &dz).map(|e| e.coords)
            })
            .collect::<Result<_>>()?;
        Ok(Mat::from_cols(&cols, self.dim()))
    }

    /// `b_i ∘ b_j` in sparse coordinates, `None` unless composable.
    fn basis_product(&self, i: usize, j: usize, pre_j: &NHElement) -> Result<Option<Vec<(usize, u32)>>> {
        let ((si, ti), (sj, tj)) = (self.slots[i], self.slots[j]);
        if si != tj {
            return Ok(None);
        }
        let z = self.nh.mul_cached(self.basis_image(i), pre_j);
        let b = &self.blocks[sj][ti];
        let c = b.solver.coords(z.coords()).ok_or_else(|| {
            Error::NotInSpan(format!("not a hom G[{}] -> G[{}]", self.decomps[sj], self.decomps[ti]))
        })?;
        Ok(Some(b.solver.labels().iter().copied().zip(c).filter(|&(_, x)| x != 0).collect()))
    }

    /// Derivation rule on all composable basis pairs (every `step`-th pair) and `∂^p = 0`.
    ///
    /// Products of basis elements are tabulated once; `∂(ab)`, `∂a b` and `a ∂b`
    /// are then linear combinations of table entries.
    pub fn pdg_report(&self, step: usize) -> Result<WebsterPdgReport> {
        let f = self.nh.field();
        let dim = self.dim();
        let d = self.differential_matrix()?;
        let dcols: Vec<Vec<(usize, u32)>> =
            (0..dim).map(|k| d.col(k).into_iter().enumerate().filter(|&(_, x)| x != 0).collect()).collect();
        let pre: Vec<NHElement> =
            (0..dim).map(|j| self.preimage(self.slots[j].1, self.basis_image(j))).collect::<Result<_>>()?;
        let mut table: Vec<Option<Vec<(usize, u32)>>> = vec![None; dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                table[i * dim + j] = self.basis_product(i, j, &pre[j])?;
            }
        }
        let prod = |i: usize, j: usize| table[i * dim + j].as_deref().unwrap_or(&[]);
        let mut checked = 0;
        let mut leibniz = true;
        let mut count = 0usize;
        let mut lhs = vec![0u32; dim];
        let mut rhs = vec![0u32; dim];
        for i in 0..dim {
            for j in 0..dim {
                if table[i * dim + j].is_none() {
                    continue;
                }
                count += 1;
                if !count.is_multiple_of(step.max(1)) {
                    continue;
                }
                lhs.iter_mut().for_each(|x| *x = 0);
                rhs.iter_mut().for_each(|x| *x = 0);
                for &(k, c) in prod(i, j) {
                    for &(r, x) in &dcols[k] {
                        lhs[r] = f.add(lhs[r], f.mul(c, x));
                    }
                }
                for &(k, c) in &dcols[i] {
                    for &(r, x) in prod(k, j) {
                        rhs[r] = f.add(rhs[r], f.mul(c, x));
                    }
                }
                for &(k, c) in &dcols[j] {
                    for &(r, x) in prod(i, k) {
                        rhs[r] = f.add(rhs[r], f.mul(c, x));
                    }
                }
                leibniz &= lhs == rhs;
                checked += 1;
            }
        }
        let nilpotent = d.pow(f.p() as u64, f).is_zero();
        Ok(WebsterPdgReport { dim, products_checked: checked, leibniz, nilpotent })
    }

    /// Stroppel-Webster elements `B^lambda_{st}`: `G[b_t] -> G[b_s]`, `y^{b_t} -> psi_{w_s}^* y^lambda psi_{w_t}`.
    pub fn sw_basis(&self, lambda: &Multipartition) -> Result<Vec<SWBasisElement>> {
        let tabs = multistandard(lambda, false);
        let y = self.nh.y_mu(lambda);
        let mut out = Vec::with_capacity(tabs.len() * tabs.len());
        for s in &tabs {
            let left = self.nh.star(&self.nh.psi_perm(&sweep_perm(s)));
            let tgt = self.slot_of(s)?;
            for t in &tabs {
                let src = self.slot_of(t)?;
                let z = self.nh.product([&left, &y, &self.nh.psi_perm(&sweep_perm(t))]);
                if !self.is_hom(src, tgt, &z) {
                    return Err(Error::Verification(format!(
                        "B^{lambda}_({s},{t}) is not a hom G[{}] -> G[{}]",
                        self.decomps[src], self.decomps[tgt]
                    )));
                }
                let raw = self.nh.degree(&z).ok_or_else(|| Error::Verification(format!("B^{lambda}_({s},{t}) is not homogeneous")))?;
                let (bs, bt) = (&self.decomps[src], &self.decomps[tgt]);
                out.push(SWBasisElement {
                    shape: lambda.to_string(),
                    s: s.to_string(),
                    t: t.to_string(),
                    source: src,
                    target: tgt,
                    degree: raw + 2 * bs.shift() + bt.shift() - bs.shift(),
                    image: z,
                });
            }
        }
        Ok(out)
    }

    fn slot_of(&self, t: &MultiTableau) -> Result<usize> {
        let b = t.decomposition();
        self.decomposition_index(&b).ok_or_else(|| Error::Verification(format!("G[{b}] of {t} is zero")))
    }

    /// The census: SW elements are a basis of every block, with the expected gdim.
    pub fn census(&self) -> Result<SWCensus> {
        let f = self.nh.field();
        let mut per_shape = Vec::new();
        let mut spans: BTreeMap<(usize, usize), Subspace> = BTreeMap::new();
        let mut gdim = IntLaurent::zero();
        let mut factorized = IntLaurent::zero();
        let mut independent = true;
        let mut star_closed = true;
        for lam in &self.partitions {
            let elems = self.sw_basis(lam)?;
            let m = multistandard(lam, false).len();
            per_shape.push((lam.to_string(), m));
            // sum over t of q^{deg B^t}, with deg B^lambda_{st} = deg B_s + deg B_t
            let half: Vec<i64> = (0..m).map(|t| elems[t * m + t].degree / 2).collect();
            let h = IntLaurent::from_pairs(half.iter().map(|&d| (d, 1)));
            factorized = &factorized + &(&h * &h);
            for (i, e) in elems.iter().enumerate() {
                let (s, t) = (i / m, i % m);
                independent &= e.degree == half[s] + half[t];
                gdim.add_term(e.degree, 1.into());
                let sp = spans.entry((e.source, e.target)).or_insert_with(|| Subspace::new(self.nh.dim(), f));
                independent &= sp.insert(e.image.coords());
                let swapped = &elems[t * m + s];
                star_closed &= self.nh.star(&e.image) == swapped.image;
            }
        }
        let spans_blocks = (0..self.decomps.len()).all(|s| {
            (0..self.decomps.len()).all(|t| spans.get(&(s, t)).map_or(0, |x| x.dim()) == self.hom_dim(s, t))
        });
        Ok(SWCensus {
            per_shape,
            total: spans.values().map(|s| s.dim()).sum(),
            model_dim: self.dim(),
            independent,
            spans_blocks,
            gdim_matches: gdim == self.gdim(),
            factorized_matches: factorized == self.gdim(),
            star_closed,
        })
    }

    /// The chain `(W)^{>=lambda}` spanned by SW elements of shapes `mu >= lambda`.
    pub fn sw_chain(&self) -> Result<Vec<SWChainLayer>> {
        let f = self.nh.field();
        let d = self.differential_matrix()?;
        let mut all = Vec::new();
        for lam in &self.partitions {
            for e in self.sw_basis(lam)? {
                all.push((lam.clone(), self.element_of(e.source, e.target, &e.image)?));
            }
        }
        let mut out = Vec::new();
        for lam in &self.partitions {
            let members: Vec<&WebsterElement> = all.iter().filter(|(m, _)| dominates(m, lam)).map(|(_, e)| e).collect();
            let sp = Subspace::spanned_by(&members.iter().map(|e| e.coords.clone()).collect::<Vec<_>>(), self.dim(), f);
            let differential_stable = members.iter().all(|e| sp.contains(&d.mul_vec(&e.coords, f)));
            let star_stable = members.iter().all(|e| {
                let z = self.components(e);
                z.iter().all(|((s, t), img)| {
                    self.element_of(*t, *s, &self.nh.star(img)).map(|c| sp.contains(&c.coords)).unwrap_or(false)
                })
            });
            out.push(SWChainLayer { shape: lam.to_string(), dim: sp.dim(), differential_stable, star_stable });
        }
        Ok(out)
    }

    fn components(&self, x: &WebsterElement) -> BTreeMap<(usize, usize), NHElement> {
        let mut m: BTreeMap<(usize, usize), NHElement> = BTreeMap::new();
        for (g, &c) in x.coords.iter().enumerate() {
            if c != 0 {
                let e = m.entry(self.slots[g]).or_insert_with(|| self.nh.zero());
                *e = self.nh.add(e, &self.nh.scale(self.basis_image(g), c as i64));
            }
        }
        m
    }

    /// The corner on partition-type decompositions against `S_n^l`.
    pub fn corner_check(&self, s: &SchurAlgebra) -> Result<CornerReport> {
        let f = self.nh.field();
        let parts = s.partitions();
        let slot: Vec<usize> = parts
            .iter()
            .map(|p| {
                self.decomposition_index(&p.to_decomposition())
                    .ok_or_else(|| Error::Verification(format!("no summand for {p}")))
            })
            .collect::<Result<_>>()?;
        let corner_dim: usize = slot.iter().map(|&a| slot.iter().map(|&b| self.hom_dim(a, b)).sum::<usize>()).sum();
        // Phi basis in model coordinates
        let mut phi = Vec::with_capacity(s.dim());
        for lab in s.labels() {
            let h = s.phi_basis(lab.lambda, lab.t, lab.s);
            phi.push(self.element_of(slot[lab.source], slot[lab.target], &h.image)?);
        }
        let to_model = |x: &SchurElement| -> WebsterElement {
            let mut acc = vec![0u32; self.dim()];
            for (g, c) in x.support() {
                linalg::axpy(&mut acc, c, &phi[g].coords, f);
            }
            WebsterElement { coords: acc }
        };
        let mut mismatch = None;
        let mut checked = 0;
        'outer: for i in 0..s.dim() {
            for j in 0..s.dim() {
                if s.labels()[i].source != s.labels()[j].target {
                    continue;
                }
                checked += 1;
                let want = to_model(&s.mul(&s.basis_element(i), &s.basis_element(j)));
                if self.mul(&phi[i], &phi[j])? != want {
                    mismatch = Some(format!("Phi #{i} * Phi #{j}"));
                    break 'outer;
                }
            }
        }
        let d = self.differential_matrix()?;
        let differential_equal = mismatch.is_none()
            && (0..s.dim()).all(|i| {
                WebsterElement { coords: d.mul_vec(&phi[i].coords, f) } == to_model(&s.differential(&s.basis_element(i)))
            });
        let unit = (0..parts.len()).fold(self.zero(), |acc, m| self.add(&acc, &to_model(&s.idempotent(m))));
        let unit_ok = slot.iter().all(|&a| {
            let one = self.element_of(a, a, self.modules[a].generator().expect("cyclic")).expect("identity");
            let mut proj = vec![0u32; self.dim()];
            for (g, &c) in unit.coords.iter().enumerate() {
                if self.slots[g] == (a, a) {
                    proj[g] = c;
                }
            }
            proj == one.coords
        });
        Ok(CornerReport {
            corner_dim,
            schur_dim: s.dim(),
            products_checked: checked,
            first_mismatch: mismatch,
            differential_equal,
            unit: unit_ok,
        })
    }

    pub fn zero(&self) -> WebsterElement {
        WebsterElement { coords: vec![0; self.dim()] }
    }

    /// `B^lambda_{st}` on restricted tableaux against `Phi^lambda_{ts}` for every pair.
    pub fn d_equals_phi(&self, s: &SchurAlgebra) -> Result<DPhiReport> {
        let mut pairs = 0;
        let mut failures = Vec::new();
        for (li, lam) in s.partitions().iter().enumerate() {
            let restricted = multistandard(lam, true);
            let y = self.nh.y_mu(lam);
            let tabs = s.tableaux(li);
            for a in &restricted {
                for b in &restricted {
                    let (ta, tb) = match (a.to_tableau(), b.to_tableau()) {
                        (Some(x), Some(y)) => (x, y),
                        _ => return Err(Error::Verification(format!("{a} is not restricted"))),
                    };
                    let (Some(ti), Some(si)) = (tabs.iter().position(|x| *x == ta), tabs.iter().position(|x| *x == tb)) else {
                        failures.push(format!("{a} or {b} outside T_{lam}"));
                        continue;
                    };
                    pairs += 1;
                    let left = self.nh.star(&self.nh.psi_perm(&sweep_perm(a)));
                    let d = self.nh.product([&left, &y, &self.nh.psi_perm(&sweep_perm(b))]);
                    if d != s.phi_basis(li, ti, si).image {
                        failures.push(format!("D^{lam}_({a},{b})"));
                    }
                }
            }
        }
        Ok(DPhiReport { pairs, expected: s.dim(), failures })
    }

    /// `END(G[(0,..,0,n)])` against `NH_n^l`: dimension, multiplication and `∂`.
    pub fn big_block_check(&self) -> Result<BigBlockReport> {
        let n = self.nh.n();
        let mut parts = vec![0; self.nh.l()];
        parts[self.nh.l() - 1] = n;
        let b0 = Decomposition::new(parts);
        let a = self.decomposition_index(&b0).ok_or_else(|| Error::Verification(format!("G[{b0}] is zero")))?;
        let dim = self.hom_dim(a, a);
        let gen_is_one = self.modules[a].generator() == Some(&self.nh.one());
        let twist_zero = self.twists[a].is_zero();
        let mut multiplicative = gen_is_one;
        let mut differential = gen_is_one && twist_zero;
        if gen_is_one {
            let d = self.differential_matrix()?;
            let f = self.nh.field();
            for i in 0..self.nh.dim() {
                let x = self.nh.basis_element(i);
                let ex = self.element_of(a, a, &x)?;
                let dx = self.element_of(a, a, &self.nh.differential(&x))?;
                differential &= WebsterElement { coords: d.mul_vec(&ex.coords, f) } == dx;
                for j in (0..self.nh.dim()).step_by(3) {
                    let y = self.nh.basis_element(j);
                    let prod = self.mul(&ex, &self.element_of(a, a, &y)?)?;
                    multiplicative &= prod == self.element_of(a, a, &self.nh.mul(&x, &y))?;
                }
            }
        }
        Ok(BigBlockReport { decomposition: b0.to_string(), dim, nh_dim: self.nh.dim(), multiplicative, differential })
    }
}

/// One black strand crossing one red strand: `b` to `b'` moves the first strand of
/// group `i+1` into group `i`.
#[derive(Debug, Clone, Serialize)]
pub struct CrossingCheck {
    pub from: String,
    pub to: String,
    pub strand: usize,
    /// `y^b -> y^{b'}` and `y^{b'} -> y^{b'}` are homs.
    pub homs: bool,
    /// Both double crossings equal a dot on the moving strand.
    pub double_crossing: bool,
    /// `∂` kills the crossing into `G[b]` and sends the other to its dotted version.
    pub differential: bool,
}

impl CrossingCheck {
    pub fn passed(&self) -> bool {
        self.homs && self.double_crossing && self.differential
    }
}

impl WebsterModel {
    /// Red-black crossing relations on every adjacent pair of nonzero decompositions.
    pub fn crossing_checks(&self) -> Result<Vec<CrossingCheck>> {
        let f = self.nh.field();
        let d = self.differential_matrix()?;
        let dv = |x: &WebsterElement| WebsterElement { coords: d.mul_vec(&x.coords, f) };
        let mut out = Vec::new();
        for (a, b) in self.decomps.iter().enumerate() {
            for i in 0..b.l() - 1 {
                if b.parts()[i + 1] == 0 {
                    continue;
                }
                let mut parts = b.parts().to_vec();
                parts[i] += 1;
                parts[i + 1] -= 1;
                let Some(c) = self.decomposition_index(&Decomposition::new(parts)) else { continue };
                let strand = b.parts()[..=i].iter().sum::<usize>() + 1;
                let (ya, yc) = (self.modules[a].generator().expect("cyclic"), self.modules[c].generator().expect("cyclic"));
                let homs = self.is_hom(a, c, yc) && self.is_hom(c, a, yc);
                if !homs {
                    out.push(CrossingCheck { from: b.to_string(), to: self.decomps[c].to_string(), strand, homs, double_crossing: false, differential: false });
                    continue;
                }
                let up = self.element_of(a, c, yc)?;
                let down = self.element_of(c, a, yc)?;
                let yk = self.nh.y(strand)?;
                let dot_a = self.element_of(a, a, &self.nh.mul(&yk, ya))?;
                let dot_c = self.element_of(c, c, &self.nh.mul(&yk, yc))?;
                let double_crossing = self.mul(&down, &up)? == dot_a && self.mul(&up, &down)? == dot_c;
                let differential = dv(&down).is_zero() && dv(&up) == self.mul(&up, &dot_a)?;
                out.push(CrossingCheck {
                    from: b.to_string(),
                    to: self.decomps[c].to_string(),
                    strand,
                    homs,
                    double_crossing,
                    differential,
                });
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WebsterPdgReport {
    pub dim: usize,
    pub products_checked: usize,
    pub leibniz: bool,
    pub nilpotent: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SWCensus {
    pub per_shape: Vec<(String, usize)>,
    pub total: usize,
    pub model_dim: usize,
    pub independent: bool,
    pub spans_blocks: bool,
    pub gdim_matches: bool,
    pub factorized_matches: bool,
    pub star_closed: bool,
}

impl SWCensus {
    pub fn passed(&self) -> bool {
        self.total == self.model_dim
            && self.total == self.per_shape.iter().map(|(_, m)| m * m).sum::<usize>()
            && self.independent
            && self.spans_blocks
            && self.gdim_matches
            && self.factorized_matches
            && self.star_closed
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SWChainLayer {
    pub shape: String,
    pub dim: usize,
    pub differential_stable: bool,
    pub star_stable: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CornerReport {
    pub corner_dim: usize,
    pub schur_dim: usize,
    pub products_checked: usize,
    pub first_mismatch: Option<String>,
    pub differential_equal: bool,
    pub unit: bool,
}

impl CornerReport {
    pub fn passed(&self) -> bool {
        self.corner_dim == self.schur_dim && self.first_mismatch.is_none() && self.differential_equal && self.unit
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DPhiReport {
    pub pairs: usize,
    pub expected: usize,
    pub failures: Vec<String>,
}

impl DPhiReport {
    pub fn passed(&self) -> bool {
        self.pairs == self.expected && self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct BigBlockReport {
    pub decomposition: String,
    pub dim: usize,
    pub nh_dim: usize,
    pub multiplicative: bool,
    pub differential: bool,
}

impl BigBlockReport {
    pub fn passed(&self) -> bool {
        self.dim == self.nh_dim && self.multiplicative && self.differential
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct DotReduction {
    pub shape: String,
    /// Strand index (1-based) and whether `y_k y^lambda` lies in `(S)^{>lambda}`.
    pub positions: Vec<(usize, bool)>,
    pub vanishing: Vec<usize>,
}

impl DotReduction {
    pub fn passed(&self) -> bool {
        self.positions.iter().all(|(_, ok)| *ok)
    }
}

/// Dots on the identity of `G(lambda)` lie above `lambda` in the cell chain.
pub fn dot_reduction_check(s: &SchurAlgebra, lambda: usize) -> Result<DotReduction> {
    let nh = s.nilhecke();
    let lam = &s.partitions()[lambda];
    let y = nh.y_mu(lam);
    let above = s.ideal_indices(lambda, true);
    let mut positions = Vec::new();
    let mut vanishing = Vec::new();
    for k in 1..=nh.n() {
        let z = nh.mul(&nh.y(k)?, &y);
        let h = crate::schur::SchurHom { source: lam.clone(), target: lam.clone(), image: z.clone(), degree: 0 };
        let x = s.element_of(&h)?;
        if z.is_zero() {
            vanishing.push(k);
        }
        let inside = x.support().all(|(g, _)| above.contains(&g));
        positions.push((k, inside));
    }
    Ok(DotReduction { shape: lam.to_string(), positions, vanishing })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_three_census() {
        let w = WebsterModel::build(2, 3, 5).unwrap();
        assert_eq!(w.decompositions().len(), 5);
        assert_eq!(w.dim(), 89);
        let c = w.census().unwrap();
        assert_eq!(c.per_shape.iter().map(|(_, m)| *m).collect::<Vec<_>>(), vec![8, 4, 3]);
        assert!(c.passed(), "{c:?}");
    }

    #[test]
    fn corner_is_schur() {
        for (n, l) in [(2, 3), (2, 4)] {
            let w = WebsterModel::build(n, l, 5).unwrap();
            let s = SchurAlgebra::build(n, l, 5).unwrap();
            let c = w.corner_check(&s).unwrap();
            assert!(c.passed(), "{c:?}");
            let d = w.d_equals_phi(&s).unwrap();
            assert!(d.passed(), "{d:?}");
            assert!(w.census().unwrap().passed());
            assert!(w.sw_chain().unwrap().iter().all(|x| x.differential_stable && x.star_stable));
        }
    }

    #[test]
    fn crossings() {
        for (n, l) in [(2, 3), (2, 4), (3, 3)] {
            let w = WebsterModel::build(n, l, 5).unwrap();
            let c = w.crossing_checks().unwrap();
            assert!(!c.is_empty());
            assert!(c.iter().all(|x| x.passed()), "{c:?}");
        }
    }

    #[test]
    fn big_block() {
        for (n, l) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
            let w = WebsterModel::build(n, l, 3).unwrap();
            let r = w.big_block_check().unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }

    #[test]
    fn three_strands() {
        let w = WebsterModel::build(3, 3, 5).unwrap();
        assert!(w.census().unwrap().passed());
    }

    #[test]
    fn pdg_axioms() {
        for p in [3, 5] {
            let w = WebsterModel::build(2, 3, p).unwrap();
            let r = w.pdg_report(1).unwrap();
            assert!(r.leibniz && r.nilpotent, "{r:?}");
        }
        let w = WebsterModel::build(2, 4, 3).unwrap();
        let r = w.pdg_report(1).unwrap();
        assert!(r.leibniz && r.nilpotent, "{r:?}");
    }

    #[test]
    fn dots() {
        for (n, l) in [(2, 3), (2, 4)] {
            let s = SchurAlgebra::build(n, l, 5).unwrap();
            for lam in 0..s.partitions().len() {
                assert!(dot_reduction_check(&s, lam).unwrap().passed());
            }
            // the maximal shape: a dot on its leftmost box vanishes
            assert!(dot_reduction_check(&s, 0).unwrap().vanishing.contains(&1));
        }
        // one strand: the dot moves Phi^k_kk one layer up
        let s = SchurAlgebra::build(1, 4, 5).unwrap();
        for k in 1..4 {
            let lam = s.partitions()[k].clone();
            let nh = s.nilhecke();
            let z = nh.mul(&nh.y(1).unwrap(), &nh.y_mu(&lam));
            let h = crate::schur::SchurHom { source: lam.clone(), target: lam, image: z, degree: 0 };
            let x = s.element_of(&h).unwrap();
            assert!(x.support().all(|(g, _)| s.labels()[g].lambda == k - 1));
            assert!(!x.is_zero());
        }
    }
}
