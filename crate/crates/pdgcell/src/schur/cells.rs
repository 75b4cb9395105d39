//! Cellular chain, triangularity, cell modules `Delta(lambda)`, `Delta°(lambda)` and
//! their Gram forms.

use serde::Serialize;

use crate::coeff::IntLaurent;
use crate::combinat::{dominates, strictly_dominates};
use crate::error::Result;
use crate::linalg::{self, Mat, Subspace};

use super::{SchurAlgebra, SchurElement};

#[derive(Debug, Clone, Default, Serialize)]
pub struct SchurTriangularity {
    pub products_checked: usize,
    pub failures: Vec<String>,
}

impl SchurTriangularity {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ChainLayer {
    pub shape: String,
    /// `dim (S)^{>=lambda}` in the dominance order.
    pub ideal_dim: usize,
    /// Same, for the ideal generated by `Phi^mu_ee`, `mu >= lambda`.
    pub generated_dim: usize,
    pub strict_dim: usize,
    pub strict_generated_dim: usize,
    pub layer_dim: usize,
    pub expected_layer_dim: usize,
    pub two_sided: bool,
    pub differential_stable: bool,
    pub star_stable: bool,
    /// Stability of the prefix of the total order ending at this shape.
    pub total_order_prefix_stable: bool,
}

impl ChainLayer {
    pub fn passed(&self) -> bool {
        self.ideal_dim == self.generated_dim
            && self.strict_dim == self.strict_generated_dim
            && self.layer_dim == self.expected_layer_dim
            && self.two_sided
            && self.differential_stable
            && self.star_stable
            && self.total_order_prefix_stable
    }
}

impl SchurAlgebra {
    /// `Phi` indices spanning `(S)^{>=lambda}` (or `(S)^{>lambda}` when `strict`).
    pub fn ideal_indices(&self, lambda: usize, strict: bool) -> Vec<usize> {
        let lam = &self.partitions[lambda];
        (0..self.dim())
            .filter(|&i| {
                let g = &self.partitions[self.phis[i].lambda];
                if strict {
                    strictly_dominates(g, lam)
                } else {
                    dominates(g, lam)
                }
            })
            .collect()
    }

    /// `sum_{mu >= lambda} S Phi^mu_ee S`, computed from compositions through `G(mu)`.
    pub fn generated_ideal(&self, lambda: usize, strict: bool) -> Subspace {
        let lam = &self.partitions[lambda];
        let f = self.nh.field();
        let dim = self.dim();
        let mut sp = Subspace::new(dim, f);
        for (m, mu) in self.partitions.iter().enumerate() {
            let above = if strict { strictly_dominates(mu, lam) } else { dominates(mu, lam) };
            if !above {
                continue;
            }
            for i in (0..dim).filter(|&i| self.phis[i].source == m) {
                for j in (0..dim).filter(|&j| self.phis[j].target == m) {
                    sp.insert(self.mul(&self.basis_element(i), &self.basis_element(j)).coords());
                }
            }
        }
        sp
    }

    fn in_span(&self, x: &SchurElement, allowed: &[bool]) -> bool {
        x.support().all(|(g, _)| allowed[g])
    }

    pub fn cell_chain(&self) -> Vec<ChainLayer> {
        let dim = self.dim();
        let mut out = Vec::new();
        for (li, lam) in self.partitions.iter().enumerate() {
            let idx = self.ideal_indices(li, false);
            let strict = self.ideal_indices(li, true);
            let mut allowed = vec![false; dim];
            for &i in &idx {
                allowed[i] = true;
            }
            let two_sided = idx.iter().all(|&i| {
                (0..dim).all(|j| {
                    let (x, y) = (self.basis_element(i), self.basis_element(j));
                    self.in_span(&self.mul(&x, &y), &allowed) && self.in_span(&self.mul(&y, &x), &allowed)
                })
            });
            let differential_stable = idx.iter().all(|&i| self.in_span(&self.differential(&self.basis_element(i)), &allowed));
            let star_stable = idx.iter().all(|&i| allowed[self.star[i]]);
            let mut prefix = vec![false; dim];
            for i in 0..dim {
                prefix[i] = self.phis[i].lambda <= li;
            }
            let total_order_prefix_stable = (0..dim).filter(|&i| prefix[i]).all(|i| {
                self.in_span(&self.differential(&self.basis_element(i)), &prefix)
                    && prefix[self.star[i]]
                    && (0..dim).all(|j| {
                        let (x, y) = (self.basis_element(i), self.basis_element(j));
                        self.in_span(&self.mul(&x, &y), &prefix) && self.in_span(&self.mul(&y, &x), &prefix)
                    })
            });
            out.push(ChainLayer {
                shape: lam.to_string(),
                ideal_dim: idx.len(),
                generated_dim: self.generated_ideal(li, false).dim(),
                strict_dim: strict.len(),
                strict_generated_dim: self.generated_ideal(li, true).dim(),
                layer_dim: idx.len() - strict.len(),
                expected_layer_dim: self.tableaux[li].len().pow(2),
                two_sided,
                differential_stable,
                star_stable,
                total_order_prefix_stable,
            });
        }
        out
    }

    /// Left and right triangularity of the `Phi` basis with `s`-independent coefficients.
    pub fn triangularity(&self) -> SchurTriangularity {
        let dim = self.dim();
        let mut rep = SchurTriangularity::default();
        for j in 0..dim {
            let lab = self.phis[j].clone();
            let lam = &self.partitions[lab.lambda];
            for i in 0..dim {
                for left in [true, false] {
                    let (a, b) = if left { (i, j) } else { (j, i) };
                    let Some(c) = self.structure_constants(a, b) else { continue };
                    rep.products_checked += 1;
                    for &(g, _) in c {
                        let gl = &self.phis[g];
                        let ok = if gl.lambda == lab.lambda {
                            if left { gl.s == lab.s } else { gl.t == lab.t }
                        } else {
                            strictly_dominates(&self.partitions[gl.lambda], lam)
                        };
                        if !ok {
                            rep.failures.push(format!(
                                "{} * {} has component {}",
                                self.describe(a),
                                self.describe(b),
                                self.describe(g)
                            ));
                        }
                    }
                }
                // coefficient independence of the fixed index
                if self.structure_constants(i, j).is_some() && lab.s == 0 {
                    let reference = self.layer_coefficients(i, j, true);
                    for s in 1..self.tableaux[lab.lambda].len() {
                        let other = self.phi_index(lab.lambda, lab.t, s);
                        if self.layer_coefficients(i, other, true) != reference {
                            rep.failures.push(format!("left coefficients of {} depend on s", self.describe(i)));
                        }
                    }
                }
            }
        }
        rep
    }

    /// Coefficients in the layer of `Phi_j` of `Phi_i Phi_j` (or `Phi_j Phi_i`), keyed
    /// by the moving index.
    fn layer_coefficients(&self, i: usize, j: usize, left: bool) -> Vec<u32> {
        let lab = &self.phis[j];
        let mut out = vec![0u32; self.tableaux[lab.lambda].len()];
        let c = if left { self.structure_constants(i, j) } else { self.structure_constants(j, i) };
        for &(g, v) in c.unwrap_or(&[]) {
            let gl = &self.phis[g];
            if gl.lambda == lab.lambda {
                out[if left { gl.t } else { gl.s }] = v;
            }
        }
        out
    }

    /// Position of the standard tableau `t^lambda` in `T_lambda`.
    pub fn standard_index(&self, lambda: usize) -> usize {
        self.tableaux[lambda].iter().position(|t| t.shape() == &self.partitions[lambda]).expect("t^lambda")
    }

    pub fn cell_module(&self, lambda: usize) -> Result<CellModuleData> {
        let f = self.nh.field();
        let tabs = &self.tableaux[lambda];
        let m = tabs.len();
        let e = self.standard_index(lambda);
        let left_basis: Vec<usize> = (0..m).map(|t| self.phi_index(lambda, t, e)).collect();
        let right_basis: Vec<usize> = (0..m).map(|s| self.phi_index(lambda, e, s)).collect();
        let degrees: Vec<i64> = left_basis.iter().map(|&i| self.phis[i].degree).collect();

        let mut stray = Vec::new();
        let mut dl = Mat::zeros(m, m);
        for (t, &i) in left_basis.iter().enumerate() {
            for (g, v) in self.differential(&self.basis_element(i)).support() {
                let gl = &self.phis[g];
                if gl.lambda == lambda {
                    if gl.s != e {
                        stray.push(self.describe(g));
                    }
                    dl.set(gl.t, t, v);
                }
            }
        }
        let mut dr = Mat::zeros(m, m);
        for (s, &i) in right_basis.iter().enumerate() {
            for (g, v) in self.differential(&self.basis_element(i)).support() {
                let gl = &self.phis[g];
                if gl.lambda == lambda {
                    if gl.t != e {
                        stray.push(self.describe(g));
                    }
                    dr.set(gl.s, s, v);
                }
            }
        }
        let ee = self.phi_index(lambda, e, e);
        let mut gram = Mat::zeros(m, m);
        for s in 0..m {
            for t in 0..m {
                if let Some(c) = self.structure_constants(right_basis[s], left_basis[t]) {
                    if let Some(&(_, v)) = c.iter().find(|(g, _)| *g == ee) {
                        gram.set(s, t, v);
                    }
                }
            }
        }

        let symmetric = gram == gram.transpose();
        let invariant = dr.transpose().mul(&gram, f).add(&gram.mul(&dl, f), f).is_zero();

        // radical, degree by degree
        let mut radical: Vec<Vec<u32>> = Vec::new();
        let mut rad_gdim = IntLaurent::zero();
        let mut distinct: Vec<i64> = degrees.clone();
        distinct.sort();
        distinct.dedup();
        for &d in &distinct {
            let cols: Vec<usize> = (0..m).filter(|&t| degrees[t] == d).collect();
            let sub = gram.select(&(0..m).collect::<Vec<_>>(), &cols);
            for v in linalg::nullspace(&sub, f) {
                let mut full = vec![0u32; m];
                for (k, &c) in cols.iter().enumerate() {
                    full[c] = v[k];
                }
                radical.push(full);
                rad_gdim.add_term(d, 1.into());
            }
        }
        let radical_stable = radical.iter().all(|v| {
            let dv = dl.mul_vec(v, f);
            linalg::vec_is_zero(&gram.mul_vec(&dv, f))
        });
        let gdim = IntLaurent::from_pairs(degrees.iter().map(|&d| (d, 1)));
        let simple_gdim = &gdim - &rad_gdim;
        let generator_closed = dl.col(e).iter().all(|&x| x == 0);
        let generator_exact = {
            let mut sp = Subspace::new(m, f);
            for t in 0..m {
                sp.insert(&dl.col(t));
            }
            let mut unit = vec![0u32; m];
            unit[e] = 1;
            sp.contains(&unit)
        };
        Ok(CellModuleData {
            shape: self.partitions[lambda].to_string(),
            basis: tabs.iter().map(|t| t.to_string()).collect(),
            degrees,
            differential: dl,
            right_differential: dr,
            gram,
            radical_dim: radical.len(),
            gdim,
            simple_gdim,
            symmetric,
            invariant,
            radical_stable,
            generator_closed,
            generator_exact,
            stray_components: stray,
        })
    }
}

/// `Delta(lambda)` on the basis `Phi_{t e}`, `Delta°(lambda)` on `Phi_{e s}`.
#[derive(Debug, Clone, Serialize)]
pub struct CellModuleData {
    pub shape: String,
    pub basis: Vec<String>,
    pub degrees: Vec<i64>,
    /// Column `t` is `∂ Phi_{te}` modulo the higher ideal.
    pub differential: Mat,
    pub right_differential: Mat,
    pub gram: Mat,
    pub radical_dim: usize,
    pub gdim: IntLaurent,
    pub simple_gdim: IntLaurent,
    pub symmetric: bool,
    pub invariant: bool,
    pub radical_stable: bool,
    pub generator_closed: bool,
    pub generator_exact: bool,
    pub stray_components: Vec<String>,
}

impl CellModuleData {
    pub fn passed(&self) -> bool {
        self.symmetric
            && self.invariant
            && self.radical_stable
            && self.generator_closed
            && !self.generator_exact
            && !self.simple_gdim.is_zero()
            && self.stray_components.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn chain_and_triangularity() {
        for l in [3, 4] {
            let s = SchurAlgebra::build(2, l, 5).unwrap();
            for layer in s.cell_chain() {
                assert!(layer.passed(), "{layer:?}");
            }
            let t = s.triangularity();
            assert!(t.passed(), "{:?}", &t.failures[..t.failures.len().min(5)]);
        }
    }

    #[test]
    fn cell_modules_two_three() {
        let s = SchurAlgebra::build(2, 3, 5).unwrap();
        for li in 0..s.partitions().len() {
            let c = s.cell_module(li).unwrap();
            assert!(c.passed(), "{c:?}");
        }
        let top = s.cell_module(0).unwrap();
        assert_eq!(top.basis.len(), 4);
        assert!(top.right_differential.is_zero());
        assert!(!top.differential.is_zero());
    }

    #[test]
    fn cell_modules_two_four() {
        let s = SchurAlgebra::build(2, 4, 5).unwrap();
        let dims: Vec<usize> = (0..6).map(|i| s.cell_module(i).unwrap().basis.len()).collect();
        assert_eq!(dims, vec![9, 6, 3, 4, 2, 1]);
        for li in 0..6 {
            assert!(s.cell_module(li).unwrap().passed());
        }
    }
}
