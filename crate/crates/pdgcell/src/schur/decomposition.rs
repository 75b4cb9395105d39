//! Cell multiplicities of the projectives `Z(lambda)`, their splitting into
//! indecomposables by Fitting idempotents, and the graded decomposition matrix.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::coeff::{IntLaurent, PrimeConfig};
use crate::combinat::{dominates, strictly_dominates, tab_lower};
use crate::error::{Error, Result};
use crate::linalg::{self, Subspace};

use super::{SchurAlgebra, SchurElement};

/// Attempts per split before giving up on a corner algebra.
pub const FITTING_CAP: usize = 200;

impl SchurAlgebra {
    /// Graded dimension of the span of `vectors` restricted to the coordinates of shape
    /// `lambda`, with the given degrees.
    fn layer_gdim(&self, lambda: usize, vectors: &[(SchurElement, i64)]) -> IntLaurent {
        let f = self.nh.field();
        let mut by_degree: std::collections::BTreeMap<i64, Subspace> = Default::default();
        for (v, d) in vectors {
            let mut proj = vec![0u32; self.dim()];
            for (g, c) in v.support() {
                if self.phis[g].lambda == lambda {
                    proj[g] = c;
                }
            }
            by_degree.entry(*d).or_insert_with(|| Subspace::new(self.dim(), f)).insert(&proj);
        }
        IntLaurent::from_pairs(by_degree.iter().map(|(&d, s)| (d, s.dim() as i64)))
    }

    /// `[Z(lambda) : Delta(mu)]_q` from `HOM(G(lambda), G(mu))` modulo `(S)^{>mu}`.
    pub fn z_multiplicity(&self, lambda: usize, mu: usize) -> IntLaurent {
        let f = self.nh.field();
        let block = self.block_indices(lambda, mu);
        let ideal = self.generated_ideal(mu, true);
        let mut total = IntLaurent::zero();
        let mut degrees: Vec<i64> = block.iter().map(|&i| self.phis[i].degree).collect();
        degrees.sort();
        degrees.dedup();
        for d in degrees {
            let members: Vec<usize> = block.iter().copied().filter(|&i| self.phis[i].degree == d).collect();
            // dimension of the homogeneous piece modulo the ideal
            let mut sp = Subspace::new(self.dim(), f);
            for v in ideal.basis() {
                let inside = SchurElement::from_coords(v.clone());
                if inside.support().all(|(g, _)| members.contains(&g)) {
                    sp.insert(v);
                }
            }
            let below = sp.dim();
            for &i in &members {
                sp.insert(self.basis_element(i).coords());
            }
            total.add_term(d, ((sp.dim() - below) as i64).into());
        }
        total
    }

    /// `(mu, [Z(lambda) : Delta(mu)]_q)` for every nonzero multiplicity.
    pub fn z_multiplicities(&self, lambda: usize) -> Vec<(usize, IntLaurent)> {
        (0..self.partitions.len())
            .map(|mu| (mu, self.z_multiplicity(lambda, mu)))
            .filter(|(_, m)| !m.is_zero())
            .collect()
    }

    /// `sum_{t in Tab_mu(lambda)} q^{shift(lambda) - shift(mu) - 2 l(w_t)}`.
    pub fn tableau_multiplicity(&self, lambda: usize, mu: usize) -> IntLaurent {
        let (lam, m) = (&self.partitions[lambda], &self.partitions[mu]);
        IntLaurent::from_pairs(
            tab_lower(m, lam)
                .iter()
                .map(|t| (lam.shift() - m.shift() - 2 * t.word().length() as i64, 1)),
        )
    }

    /// Degree-0 part of `END(G(lambda))`.
    fn degree_zero_endomorphisms(&self, lambda: usize) -> Vec<SchurElement> {
        self.block_indices(lambda, lambda)
            .iter()
            .filter(|&&i| self.phis[i].degree == 0)
            .map(|&i| self.basis_element(i))
            .collect()
    }

    fn corner(&self, e: &SchurElement, basis: &[SchurElement]) -> Vec<SchurElement> {
        let mut sp = Subspace::new(self.dim(), self.nh.field());
        let mut out = Vec::new();
        for b in basis {
            let x = self.mul(&self.mul(e, b), e);
            if sp.insert(x.coords()) {
                out.push(x);
            }
        }
        out
    }

    fn power(&self, x: &SchurElement, unit: &SchurElement, k: usize) -> SchurElement {
        (0..k).fold(unit.clone(), |acc, _| self.mul(&acc, x))
    }

    /// Whether `e B e` is local: `B = F_p e ⊕ J` with `J` a nilpotent ideal.
    fn is_local(&self, e: &SchurElement, corner: &[SchurElement]) -> bool {
        let f = self.nh.field();
        let n = corner.len();
        let mut j = Subspace::new(self.dim(), f);
        for b in corner {
            let found = (0..f.p()).find(|&c| {
                let shifted = self.sub(b, &self.scale(e, c as i64));
                self.power(&shifted, e, n.max(1)).is_zero()
            });
            let Some(c) = found else { return false };
            j.insert(self.sub(b, &self.scale(e, c as i64)).coords());
        }
        if j.dim() + 1 != n {
            return false;
        }
        // J^k shrinks to 0 and J J ⊆ J
        let jb: Vec<SchurElement> = j.basis().iter().cloned().map(SchurElement::from_coords).collect();
        let mut current = jb.clone();
        for _ in 0..=n {
            if current.is_empty() {
                return true;
            }
            let mut next = Subspace::new(self.dim(), f);
            for a in &current {
                for b in &jb {
                    let ab = self.mul(a, b);
                    if !j.contains(ab.coords()) {
                        return false;
                    }
                    next.insert(ab.coords());
                }
            }
            current = next.basis().iter().cloned().map(SchurElement::from_coords).collect();
        }
        current.is_empty()
    }

    /// A nontrivial idempotent polynomial in `x` inside `e B e`, if one exists.
    fn fitting_idempotent(&self, x: &SchurElement, e: &SchurElement) -> Option<SchurElement> {
        let f = self.nh.field();
        let mut sp = Subspace::new(self.dim(), f);
        let mut pw = e.clone();
        let min_poly = loop {
            match sp.coords(pw.coords()) {
                Some(c) => {
                    let mut m: Vec<u32> = c.iter().map(|&v| f.neg(v)).collect();
                    m.push(1);
                    break m;
                }
                None => {
                    sp.insert(pw.coords());
                    pw = self.mul(&pw, x);
                }
            }
        };
        for c in 0..f.p() {
            let (k, g) = split_root(&min_poly, c, f);
            if k == 0 || g.len() <= 1 {
                continue;
            }
            // eps = 1 mod (x-c)^k and 0 mod g
            let lin = vec![f.neg(c), 1];
            let h = (0..k).fold(vec![1u32], |acc, _| poly_mul(&acc, &lin, f));
            let (_, _, v) = poly_gcdext(&h, &g, f);
            let eps_poly = poly_mul(&v, &g, f);
            let eps = self.evaluate(&eps_poly, x, e);
            if !eps.is_zero() && &eps != e {
                return Some(eps);
            }
        }
        None
    }

    fn evaluate(&self, poly: &[u32], x: &SchurElement, unit: &SchurElement) -> SchurElement {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            acc = self.add(&self.mul(&acc, x), &self.scale(unit, c as i64));
        }
        acc
    }

    /// Primitive orthogonal idempotents refining `e` inside `basis`.
    fn split_idempotent(
        &self,
        e: &SchurElement,
        basis: &[SchurElement],
        rng: &mut ChaCha8Rng,
    ) -> Result<Vec<SchurElement>> {
        let corner = self.corner(e, basis);
        if self.is_local(e, &corner) {
            return Ok(vec![e.clone()]);
        }
        let p = self.nh.field().p();
        for _ in 0..FITTING_CAP {
            let mut x = self.zero();
            for b in &corner {
                x = self.add(&x, &self.scale(b, rng.gen_range(0..p) as i64));
            }
            if let Some(eps) = self.fitting_idempotent(&x, e) {
                let rest = self.sub(e, &eps);
                let mut out = self.split_idempotent(&eps, &corner, rng)?;
                out.extend(self.split_idempotent(&rest, &corner, rng)?);
                return Ok(out);
            }
        }
        Err(Error::Verification(format!("idempotent lifting did not terminate after {FITTING_CAP} attempts")))
    }

    /// Multiplicities of `Delta(nu)` in `S x`, for `x` in `END(G(lambda))`.
    fn delta_multiplicities(&self, lambda: usize, x: &SchurElement) -> Vec<IntLaurent> {
        (0..self.partitions.len())
            .map(|nu| {
                let vecs: Vec<(SchurElement, i64)> = self
                    .block_indices(lambda, nu)
                    .iter()
                    .map(|&i| (self.mul(&self.basis_element(i), x), self.phis[i].degree))
                    .collect();
                self.layer_gdim(nu, &vecs)
            })
            .collect()
    }

    /// `gdim e Delta(lambda)` for an idempotent `e` in `END(G(nu))`.
    fn hom_into_cell(&self, e: &SchurElement, nu: usize, lambda: usize) -> IntLaurent {
        let std = self.standard_index(lambda);
        let vecs: Vec<(SchurElement, i64)> = (0..self.tableaux[lambda].len())
            .map(|t| self.phi_index(lambda, t, std))
            .filter(|&i| self.phis[i].target == nu)
            .map(|i| (self.mul(e, &self.basis_element(i)), self.phis[i].degree))
            .collect();
        self.layer_gdim(lambda, &vecs)
    }

    pub fn decomposition_matrix(&self) -> Result<DecompositionData> {
        self.decomposition_matrix_seeded(0)
    }

    pub fn decomposition_matrix_seeded(&self, seed: u64) -> Result<DecompositionData> {
        let k = self.partitions.len();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut summands = Vec::new();
        let mut projective: Vec<Option<(usize, SchurElement, i64)>> = vec![None; k];
        for lambda in 0..k {
            let basis = self.degree_zero_endomorphisms(lambda);
            let prims = self.split_idempotent(&self.idempotent(lambda), &basis, &mut rng)?;
            let mut labels = Vec::new();
            for eps in prims {
                let mult = self.delta_multiplicities(lambda, &eps);
                let nonzero: Vec<usize> = (0..k).filter(|&nu| !mult[nu].is_zero()).collect();
                let minimal: Vec<usize> = nonzero
                    .iter()
                    .copied()
                    .filter(|&nu| !nonzero.iter().any(|&o| o != nu && strictly_dominates(&self.partitions[nu], &self.partitions[o])))
                    .collect();
                let [mu] = minimal.as_slice() else {
                    return Err(Error::Verification(format!("summand of Z({}) has no unique lowest cell", self.partitions[lambda])));
                };
                let top = &mult[*mu];
                let shift = match top.to_pairs().as_slice() {
                    [(d, 1)] => *d,
                    _ => return Err(Error::Verification(format!("top multiplicity {top} is not a monomial"))),
                };
                labels.push(SummandLabel {
                    shape: self.partitions[*mu].to_string(),
                    shift,
                    delta_multiplicities: mult.iter().map(|m| m.shift(-shift)).collect(),
                });
                if projective[*mu].is_none() {
                    projective[*mu] = Some((lambda, eps.clone(), shift));
                }
            }
            summands.push(ZSummands { lambda: self.partitions[lambda].to_string(), summands: labels });
        }
        let projective: Vec<(usize, SchurElement, i64)> = projective
            .into_iter()
            .enumerate()
            .map(|(mu, p)| p.ok_or_else(|| Error::Verification(format!("no summand P({})", self.partitions[mu]))))
            .collect::<Result<_>>()?;

        // d_{lambda mu} = gdim HOM(P(mu), Delta(lambda)), normalized by d_{mu mu}
        let mut d = vec![vec![IntLaurent::zero(); k]; k];
        let mut norms = vec![0i64; k];
        for (mu, (nu, eps, _)) in projective.iter().enumerate() {
            let diag = self.hom_into_cell(eps, *nu, mu);
            let norm = match diag.to_pairs().as_slice() {
                [(e, 1)] => *e,
                _ => return Err(Error::Verification(format!("d_mumu = {diag} is not a monomial"))),
            };
            norms[mu] = norm;
            for lambda in 0..k {
                d[lambda][mu] = self.hom_into_cell(eps, *nu, lambda).shift(-norm);
            }
        }
        // C_{mu nu} = gdim HOM(P(mu), P(nu)) = gdim eps_mu S eps_nu, with the same normalization
        let mut c = vec![vec![IntLaurent::zero(); k]; k];
        for mu in 0..k {
            for nu in 0..k {
                let (a, ea, _) = &projective[mu];
                let (b, eb, _) = &projective[nu];
                let vecs: Vec<(SchurElement, i64)> = self
                    .block_indices(*b, *a)
                    .iter()
                    .map(|&i| (self.mul(&self.mul(ea, &self.basis_element(i)), eb), self.phis[i].degree))
                    .collect();
                let f = self.nh.field();
                let mut by_degree: std::collections::BTreeMap<i64, Subspace> = Default::default();
                for (v, deg) in &vecs {
                    by_degree.entry(*deg).or_insert_with(|| Subspace::new(self.dim(), f)).insert(v.coords());
                }
                c[mu][nu] = IntLaurent::from_pairs(by_degree.iter().map(|(&deg, s)| (deg, s.dim() as i64)))
                    .shift(-norms[mu] - norms[nu]);
            }
        }
        let z = (0..k).map(|l| (0..k).map(|m| self.z_multiplicity(l, m)).collect()).collect();
        let z_gdims = (0..k)
            .map(|l| (0..k).fold(IntLaurent::zero(), |acc, m| &acc + &self.hom_gdim(l, m)))
            .collect();
        Ok(DecompositionData {
            shapes: self.partitions.iter().map(|p| p.to_string()).collect(),
            d,
            cartan: c,
            z,
            z_gdims,
            summands,
            seed,
        })
    }
}

/// The `(x - c)`-adic multiplicity of `m` and the cofactor.
fn split_root(m: &[u32], c: u32, f: PrimeConfig) -> (usize, Vec<u32>) {
    let mut g = m.to_vec();
    let mut k = 0;
    loop {
        // synthetic division by (x - c)
        let deg = g.len() - 1;
        if deg == 0 {
            return (k, g);
        }
        let mut q = vec![0u32; deg];
        let mut acc = 0u32;
        for i in (0..=deg).rev() {
            acc = f.add(f.mul(acc, c), g[i]);
            if i > 0 {
                q[i - 1] = acc;
            }
        }
        if acc != 0 {
            return (k, g);
        }
        g = q;
        k += 1;
    }
}

fn poly_trim(mut a: Vec<u32>) -> Vec<u32> {
    while a.len() > 1 && *a.last().expect("nonempty") == 0 {
        a.pop();
    }
    if a.is_empty() {
        a.push(0);
    }
    a
}

fn poly_mul(a: &[u32], b: &[u32], f: PrimeConfig) -> Vec<u32> {
    let mut out = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = f.add(out[i + j], f.mul(x, y));
        }
    }
    poly_trim(out)
}

fn poly_sub(a: &[u32], b: &[u32], f: PrimeConfig) -> Vec<u32> {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| f.sub(a.get(i).copied().unwrap_or(0), b.get(i).copied().unwrap_or(0)))
        .collect();
    poly_trim(out)
}

fn poly_divmod(a: &[u32], b: &[u32], f: PrimeConfig) -> (Vec<u32>, Vec<u32>) {
    let b = poly_trim(b.to_vec());
    let mut r = poly_trim(a.to_vec());
    let db = b.len() - 1;
    let lead = f.inv(b[db]);
    let mut q = vec![0u32; r.len().max(b.len())];
    while r.len() > db && !(r.len() == 1 && r[0] == 0) {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], lead);
        q[dr - db] = c;
        for (i, &x) in b.iter().enumerate() {
            r[dr - db + i] = f.sub(r[dr - db + i], f.mul(c, x));
        }
        r = poly_trim(r);
        if dr == 0 {
            break;
        }
    }
    (poly_trim(q), r)
}

/// `(g, u, v)` with `u a + v b = g = 1` for coprime inputs (normalized to a monic gcd).
fn poly_gcdext(a: &[u32], b: &[u32], f: PrimeConfig) -> (Vec<u32>, Vec<u32>, Vec<u32>) {
    let (mut r0, mut r1) = (poly_trim(a.to_vec()), poly_trim(b.to_vec()));
    let (mut u0, mut u1) = (vec![1u32], vec![0u32]);
    let (mut v0, mut v1) = (vec![0u32], vec![1u32]);
    while !(r1.len() == 1 && r1[0] == 0) {
        let (q, r) = poly_divmod(&r0, &r1, f);
        let u2 = poly_sub(&u0, &poly_mul(&q, &u1, f), f);
        let v2 = poly_sub(&v0, &poly_mul(&q, &v1, f), f);
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u2);
        v0 = std::mem::replace(&mut v1, v2);
    }
    let inv = f.inv(*r0.last().expect("nonempty"));
    let scale = |p: &[u32]| poly_trim(linalg::vec_scale(p, inv, f));
    (scale(&r0), scale(&u0), scale(&v0))
}

#[derive(Debug, Clone, Serialize)]
pub struct SummandLabel {
    pub shape: String,
    /// Degree of the top cell, so that the summand is `P(shape)` shifted by this.
    pub shift: i64,
    pub delta_multiplicities: Vec<IntLaurent>,
}

#[derive(Debug, Clone, Serialize)]
pub struct ZSummands {
    pub lambda: String,
    pub summands: Vec<SummandLabel>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DecompositionData {
    pub shapes: Vec<String>,
    /// `d[lambda][mu] = [Delta(lambda) : L(mu)]_q`.
    pub d: Vec<Vec<IntLaurent>>,
    pub cartan: Vec<Vec<IntLaurent>>,
    /// `z[lambda][mu] = [Z(lambda) : Delta(mu)]_q`.
    pub z: Vec<Vec<IntLaurent>>,
    pub z_gdims: Vec<IntLaurent>,
    pub summands: Vec<ZSummands>,
    pub seed: u64,
}

impl DecompositionData {
    /// `d_mumu = 1` and `d_{lambda mu} != 0` only for `lambda >= mu`, with nonnegative entries.
    pub fn unitriangular(&self, shapes: &[crate::combinat::Multipartition]) -> bool {
        let k = self.d.len();
        (0..k).all(|l| {
            (0..k).all(|m| {
                let x = &self.d[l][m];
                if l == m {
                    *x == IntLaurent::one()
                } else {
                    x.is_nonnegative() && (x.is_zero() || dominates(&shapes[l], &shapes[m]))
                }
            })
        })
    }

    /// `C = D^T D`.
    pub fn cartan_matches(&self) -> bool {
        let k = self.d.len();
        (0..k).all(|m| {
            (0..k).all(|n| {
                let s = (0..k).fold(IntLaurent::zero(), |acc, l| &acc + &(&self.d[l][m] * &self.d[l][n]));
                s == self.cartan[m][n]
            })
        })
    }

    /// Labels of the summands of `Z(lambda)`.
    pub fn summand_shapes(&self, lambda: usize) -> Vec<String> {
        self.summands[lambda].summands.iter().map(|s| s.shape.clone()).collect()
    }
}
