//! Induction, restriction and the shift functor on cyclic nilHecke modules, checked
//! at the level of modules and graded dimensions.

use serde::Serialize;

use crate::coeff::IntLaurent;
use crate::combinat::{Decomposition, Multipartition, Perm};
use crate::error::{Error, Result};
use crate::linalg::Subspace;

use super::cyclic::{CyclicModule, ModuleLabel};
use super::{NHAlgebra, NHElement};

/// The embedding `NH_n^l -> NH_{n+a}^l` on the first `n` strands.
pub fn embed(small: &NHAlgebra, big: &NHAlgebra, x: &NHElement) -> Result<NHElement> {
    if small.l() != big.l() || small.n() > big.n() || small.p() != big.p() {
        return Err(Error::ShapeMismatch("embedding needs the same l, p and n <= n'".into()));
    }
    let mut out = big.zero().into_coords();
    for (k, &c) in x.coords().iter().enumerate() {
        if c == 0 {
            continue;
        }
        let w = &small.basis_words()[k];
        let mut images = w.perm.images().to_vec();
        images.extend(small.n()..big.n());
        let mut exps = w.exps.clone();
        exps.resize(big.n(), 0);
        let j = big
            .index_of(&Perm::new(images)?, &exps)
            .ok_or_else(|| Error::Verification("embedded word is not a basis word".into()))?;
        out[j] = c;
    }
    Ok(NHElement::from_coords(out))
}

#[derive(Debug, Clone, Serialize)]
pub struct InductionReport {
    pub lambda: String,
    pub d: usize,
    pub target: String,
    pub tensor_dim: usize,
    pub target_dim: usize,
    pub image_dim: usize,
    pub isomorphic: bool,
    pub tensor_gdim: IntLaurent,
    pub target_gdim: IntLaurent,
}

/// `G(lambda) ⊗_{NH_n} e_{(1^n,d)} NH_{n+d}` against `e_{(1^n,d)} G[lambda_1, .., lambda_l + d]`.
pub fn induction_check(small: &NHAlgebra, big: &NHAlgebra, lambda: &Multipartition, d: usize) -> Result<InductionReport> {
    let f = big.field();
    let n = small.n();
    if big.n() != n + d {
        return Err(Error::InvalidParameters { n, l: small.l(), reason: format!("need NH on {} strands", n + d) });
    }
    let m = CyclicModule::g_lambda(small, lambda)?;
    let e = big.block_idempotent(n, d);
    let whole = CyclicModule::generated(big, ModuleLabel::Other("NH".into()), vec![big.one()], 0)?;
    let nmod = whole.truncate(big, &e, ModuleLabel::Other(format!("e_(1^{n},{d}) NH")))?;
    let (dm, dn) = (m.dim(), nmod.dim());

    // relations m a ⊗ x - m ⊗ a x for algebra generators a
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push(small.y(i)?);
    }
    for i in 1..n {
        gens.push(small.psi(i)?);
    }
    let mut rel = Subspace::new(dm * dn, f);
    for a in &gens {
        let right = m.action_matrix(small, a)?;
        let ia = embed(small, big, a)?;
        let lm = big.left_mult_matrix(&ia);
        let left: Vec<Vec<u32>> = nmod
            .basis()
            .iter()
            .map(|x| {
                nmod.span()
                    .coords(&lm.mul_vec(x.coords(), f))
                    .ok_or_else(|| Error::NotInSpan("embedded generator leaves e NH".into()))
            })
            .collect::<Result<_>>()?;
        for i in 0..dm {
            for j in 0..dn {
                let mut v = vec![0u32; dm * dn];
                for i2 in 0..dm {
                    let c = right.get(i2, i);
                    if c != 0 {
                        v[i2 * dn + j] = f.add(v[i2 * dn + j], c);
                    }
                }
                for (j2, &c) in left[j].iter().enumerate() {
                    if c != 0 {
                        v[i * dn + j2] = f.sub(v[i * dn + j2], c);
                    }
                }
                rel.insert(&v);
            }
        }
    }
    let tensor_dim = dm * dn - rel.dim();

    // graded dimension of the quotient, from a homogeneous complement
    let mut tensor_gdim = IntLaurent::zero();
    let mut sp = rel.clone();
    for i in 0..dm {
        for j in 0..dn {
            let mut v = vec![0u32; dm * dn];
            v[i * dn + j] = 1;
            if sp.insert(&v) {
                let deg = m.degrees()[i] + nmod.degrees()[j] + m.shift();
                tensor_gdim.add_term(deg, 1.into());
            }
        }
    }

    let mut parts = lambda.entries().iter().map(|&x| x as usize).collect::<Vec<_>>();
    *parts.last_mut().expect("l >= 1") += d;
    let b = Decomposition::new(parts);
    let g = CyclicModule::g_decomposition(big, &b)?;
    let target = g.truncate(big, &e, ModuleLabel::Other(format!("e G[{b}]")))?;
    // image of the multiplication map m ⊗ x -> iota(m) x
    let mut image = Subspace::new(big.dim(), f);
    for mv in m.basis() {
        let im = embed(small, big, mv)?;
        let lm = big.left_mult_matrix(&im);
        for x in nmod.basis() {
            let v = lm.mul_vec(x.coords(), f);
            if !target.span().contains(&v) {
                return Err(Error::Verification("multiplication map leaves e G[b]".into()));
            }
            image.insert(&v);
        }
    }
    let target_gdim = target.gdim_raw().shift(m.shift());
    Ok(InductionReport {
        lambda: lambda.to_string(),
        d,
        target: b.to_string(),
        tensor_dim,
        target_dim: target.dim(),
        image_dim: image.dim(),
        isomorphic: tensor_dim == target.dim() && image.dim() == target.dim(),
        tensor_gdim,
        target_gdim,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct RestrictionReport {
    pub n: usize,
    pub l: usize,
    pub summands: usize,
    pub expected_summands: usize,
    pub rank: usize,
    pub dim: usize,
}

impl RestrictionReport {
    pub fn passed(&self) -> bool {
        self.summands == self.expected_summands && self.rank == self.dim
    }
}

/// `NH_n` is free over `NH_{n-1}` on `psi_i .. psi_{n-1} y_n^r`, `1 <= i <= n`, `r <= l-n`.
pub fn restriction_rank(small: &NHAlgebra, big: &NHAlgebra) -> Result<RestrictionReport> {
    let n = big.n();
    if small.n() + 1 != n || small.l() != big.l() {
        return Err(Error::ShapeMismatch("restriction needs NH_{n-1} and NH_n".into()));
    }
    let l = big.l();
    let embedded: Vec<NHElement> =
        (0..small.dim()).map(|k| embed(small, big, &small.basis_element(k))).collect::<Result<_>>()?;
    let mut span = Subspace::new(big.dim(), big.field());
    let mut summands = 0;
    for i in 1..=n {
        for r in 0..=(l - n) {
            let mut exps = vec![0u16; n];
            exps[n - 1] = r as u16;
            let word: Vec<usize> = (i..n).collect();
            let lead = big.word_element(&word, &exps);
            summands += 1;
            for x in &embedded {
                span.insert(big.mul(&lead, x).coords());
            }
        }
    }
    Ok(RestrictionReport {
        n,
        l,
        summands,
        expected_summands: n * (l - n + 1),
        rank: span.dim(),
        dim: big.dim(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct ShiftFunctorReport {
    pub lambda_prime: String,
    pub lambda: String,
    pub delta: usize,
    pub dim_prime: usize,
    pub dim: usize,
    /// `k` with `gdim_raw G(lambda) = q^k gdim_raw G(lambda')`.
    pub raw_offset: Option<i64>,
    /// Same comparison after the module shifts `-nl + Σ j`.
    pub shifted_offset: Option<i64>,
}

impl ShiftFunctorReport {
    pub fn passed(&self) -> bool {
        self.dim == self.dim_prime && self.raw_offset.is_some()
    }
}

/// Compares `G(lambda')` over `NH_n^{l-delta}` with `G(lambda', 0^delta)` over `NH_n^l`.
pub fn shift_functor_check(small_l: &NHAlgebra, alg: &NHAlgebra, lambda_prime: &Multipartition) -> Result<ShiftFunctorReport> {
    if small_l.n() != alg.n() || small_l.l() > alg.l() {
        return Err(Error::ShapeMismatch("shift functor needs the same n and l' <= l".into()));
    }
    let delta = alg.l() - small_l.l();
    let mut entries = lambda_prime.entries().to_vec();
    entries.extend(std::iter::repeat_n(0, delta));
    let lambda = Multipartition::new(entries)?;
    let g1 = CyclicModule::g_lambda(small_l, lambda_prime)?;
    let g2 = CyclicModule::g_lambda(alg, &lambda)?;
    Ok(ShiftFunctorReport {
        lambda_prime: lambda_prime.to_string(),
        lambda: lambda.to_string(),
        delta,
        dim_prime: g1.dim(),
        dim: g2.dim(),
        raw_offset: laurent_offset(&g1.gdim_raw(), &g2.gdim_raw()),
        shifted_offset: laurent_offset(&g1.gdim(), &g2.gdim()),
    })
}

/// `k` with `b = q^k a`, if any.
pub fn laurent_offset(a: &IntLaurent, b: &IntLaurent) -> Option<i64> {
    let k = b.min_degree()? - a.min_degree()?;
    (a.shift(k) == *b).then_some(k)
}

#[derive(Debug, Clone, Serialize)]
pub struct InductionRestrictionReport {
    pub induction: InductionReport,
    pub restriction: RestrictionReport,
    pub shift_functor: Option<ShiftFunctorReport>,
}

/// Runs the three checks for `lambda` in `P_n^l` and `d` new strands.
pub fn induction_restriction_data(lambda: &Multipartition, d: usize, p: u32) -> Result<InductionRestrictionReport> {
    let (n, l) = (lambda.n(), lambda.l());
    let small = NHAlgebra::build(n, l, p)?;
    let big = NHAlgebra::build(n + d, l, p)?;
    let induction = induction_check(&small, &big, lambda, d)?;
    let restriction = if n >= 1 {
        restriction_rank(&NHAlgebra::build(n - 1, l, p)?, &small)?
    } else {
        RestrictionReport { n, l, summands: 0, expected_summands: 0, rank: 1, dim: 1 }
    };
    // drop trailing empty columns for the shift functor
    let trailing = lambda.entries().iter().rev().take_while(|&&e| e == 0).count();
    let shift_functor = if trailing > 0 && n > 0 {
        let prime = Multipartition::new(lambda.entries()[..l - trailing].to_vec())?;
        let small_l = NHAlgebra::build(n, l - trailing, p)?;
        Some(shift_functor_check(&small_l, &small, &prime)?)
    } else {
        None
    };
    Ok(InductionRestrictionReport { induction, restriction, shift_functor })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn induction_small_cases() {
        for (n, l, d) in [(1, 2, 1), (1, 3, 1), (1, 3, 2), (2, 3, 1)] {
            let small = NHAlgebra::build(n, l, 5).unwrap();
            let big = NHAlgebra::build(n + d, l, 5).unwrap();
            for lam in crate::combinat::enumerate_partitions(n, l).unwrap() {
                let r = induction_check(&small, &big, &lam, d).unwrap();
                assert!(r.isomorphic, "{r:?}");
                assert_eq!(r.tensor_gdim, r.target_gdim, "{r:?}");
            }
        }
    }

    #[test]
    fn induction_by_zero_is_identity() {
        let a = NHAlgebra::build(2, 3, 5).unwrap();
        let lam: Multipartition = "101".parse().unwrap();
        let r = induction_check(&a, &a, &lam, 0).unwrap();
        assert!(r.isomorphic);
        assert_eq!(r.target_dim, CyclicModule::g_lambda(&a, &lam).unwrap().dim());
    }

    #[test]
    fn restriction_is_free() {
        for (n, l) in [(1, 3), (2, 3), (2, 4), (3, 3)] {
            let r = restriction_rank(&NHAlgebra::build(n - 1, l, 5).unwrap(), &NHAlgebra::build(n, l, 5).unwrap()).unwrap();
            assert!(r.passed(), "{r:?}");
        }
        let r = restriction_rank(&NHAlgebra::build(1, 4, 5).unwrap(), &NHAlgebra::build(2, 4, 5).unwrap()).unwrap();
        assert_eq!(r.summands, 6);
    }

    #[test]
    fn shift_functor() {
        let small = NHAlgebra::build(2, 3, 5).unwrap();
        let big = NHAlgebra::build(2, 4, 5).unwrap();
        for lp in crate::combinat::enumerate_partitions(2, 3).unwrap() {
            let r = shift_functor_check(&small, &big, &lp).unwrap();
            assert!(r.passed(), "{r:?}");
        }
    }
}
