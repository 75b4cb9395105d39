use std::sync::OnceLock;

use proptest::prelude::*;

use pdgcell::coeff::{quantum_integer, IntLaurent, OpScalar, PrimeConfig};
use pdgcell::combinat::{dominates, enumerate_partitions, tab_lower, tab_upper, Perm};
use pdgcell::nilhecke::{NHAlgebra, NHElement};
use pdgcell::quantum::{build_tensor_rep, serre_like_sum, TensorRep};
use pdgcell::schur::{SchurAlgebra, SchurElement};

fn nh24() -> &'static NHAlgebra {
    static A: OnceLock<NHAlgebra> = OnceLock::new();
    A.get_or_init(|| NHAlgebra::build(2, 4, 5).unwrap())
}

fn s23() -> &'static SchurAlgebra {
    static S: OnceLock<SchurAlgebra> = OnceLock::new();
    S.get_or_init(|| SchurAlgebra::build(2, 3, 3).unwrap())
}

fn tensor4() -> &'static TensorRep {
    static T: OnceLock<TensorRep> = OnceLock::new();
    T.get_or_init(|| build_tensor_rep(4, 3).unwrap())
}

fn sparse(dim: usize, p: u32) -> impl Strategy<Value = Vec<u32>> {
    prop::collection::vec((0..dim, 1..p), 1..6).prop_map(move |terms| {
        let mut v = vec![0; dim];
        for (i, c) in terms {
            v[i] = (v[i] + c) % p;
        }
        v
    })
}

fn laurent() -> impl Strategy<Value = IntLaurent> {
    prop::collection::vec((-6i64..7, -4i64..5), 0..5).prop_map(IntLaurent::from_pairs)
}

fn op(p: PrimeConfig) -> impl Strategy<Value = OpScalar> {
    laurent().prop_map(move |x| pdgcell::coeff::reduce_cyclotomic(&x, p))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn op_scalars_form_a_commutative_ring(
        (a, b, c) in (op(PrimeConfig::new(5).unwrap()), op(PrimeConfig::new(5).unwrap()), op(PrimeConfig::new(5).unwrap()))
    ) {
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert!(a.sub(&a).is_zero());
    }

    #[test]
    fn quantum_integers_are_odd(m in -12i64..13, p in prop::sample::select(vec![3u32, 5, 7])) {
        let f = PrimeConfig::new(p).unwrap();
        prop_assert_eq!(quantum_integer(m, f), quantum_integer(-m, f).neg());
    }

    #[test]
    fn permutation_group_laws(images in Just((0..5).collect::<Vec<usize>>()).prop_shuffle(), word in prop::collection::vec(1usize..5, 0..8)) {
        let w = Perm::new(images).unwrap();
        prop_assert!(w.compose(&w.inverse()).is_identity());
        prop_assert_eq!(w.inverse().length(), w.length());
        prop_assert_eq!(Perm::from_word(5, &w.reduced_word()), w.clone());
        prop_assert_eq!(w.reduced_word().len(), w.length());
        let v = Perm::from_word(5, &word);
        prop_assert!(v.length() <= word.len());
        prop_assert_eq!(v.length() % 2, word.len() % 2);
    }

    #[test]
    fn dominance_is_transitive_and_antisymmetric(n in 1usize..4, extra in 0usize..3, idx in prop::collection::vec(0usize..1000, 3)) {
        let shapes = enumerate_partitions(n, n + extra).unwrap();
        let pick = |i: usize| &shapes[i % shapes.len()];
        let (a, b, c) = (pick(idx[0]), pick(idx[1]), pick(idx[2]));
        if dominates(a, b) && dominates(b, c) {
            prop_assert!(dominates(a, c));
        }
        if dominates(a, b) && dominates(b, a) {
            prop_assert_eq!(a, b);
        }
    }

    #[test]
    fn tableau_sets_are_equinumerous(n in 1usize..4, extra in 0usize..3, i in 0usize..1000, j in 0usize..1000) {
        let shapes = enumerate_partitions(n, n + extra).unwrap();
        let alpha = &shapes[i % shapes.len()];
        let beta = &shapes[j % shapes.len()];
        prop_assert_eq!(tab_upper(alpha, beta).len(), tab_lower(beta, alpha).len());
    }

    #[test]
    fn nilhecke_differential_is_a_nilpotent_derivation(x in sparse(24, 5), y in sparse(24, 5)) {
        let alg = nh24();
        let (a, b) = (NHElement::from_coords(x), NHElement::from_coords(y));
        let lhs = alg.differential(&alg.mul(&a, &b));
        let rhs = alg.add(&alg.mul(&alg.differential(&a), &b), &alg.mul(&a, &alg.differential(&b)));
        prop_assert_eq!(lhs, rhs);
        prop_assert!(alg.differential_power(&a, 5).is_zero());
        prop_assert_eq!(alg.star(&alg.mul(&a, &b)), alg.mul(&alg.star(&b), &alg.star(&a)));
        prop_assert_eq!(alg.star(&alg.star(&a)), a);
    }

    #[test]
    fn schur_algebra_is_an_associative_pdg_algebra(x in sparse(21, 3), y in sparse(21, 3), z in sparse(21, 3)) {
        let s = s23();
        let (a, b, c) = (SchurElement::from_coords(x), SchurElement::from_coords(y), SchurElement::from_coords(z));
        prop_assert_eq!(s.mul(&s.mul(&a, &b), &c), s.mul(&a, &s.mul(&b, &c)));
        prop_assert_eq!(s.mul(&s.one(), &a), a.clone());
        let lhs = s.differential(&s.mul(&a, &b));
        let rhs = s.add(&s.mul(&s.differential(&a), &b), &s.mul(&a, &s.differential(&b)));
        prop_assert_eq!(lhs, rhs);
        let d3 = s.differential(&s.differential(&s.differential(&a)));
        prop_assert!(d3.is_zero());
    }

    #[test]
    fn commutator_acts_by_quantum_integer(k in 0usize..5, coeffs in prop::collection::vec(laurent(), 6)) {
        let rep = tensor4();
        let f = rep.prime();
        let space = rep.weight_space(k).unwrap();
        let mut v = vec![OpScalar::zero(f); rep.dim()];
        for (w, c) in rep.words(k).iter().zip(&coeffs) {
            v[*w] = pdgcell::coeff::reduce_cyclotomic(c, f);
        }
        let ef = rep.e(1).mul(&rep.f(1));
        let fe = rep.f(1).mul(&rep.e(1));
        let got = ef.sub(&fe).mul_vec(&v);
        let m = quantum_integer(space.weight, f);
        let want: Vec<OpScalar> = v.iter().map(|x| x.mul(&m)).collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn serre_like_sum_vanishes_on_weight_vectors(a in 2usize..4, ones in 0u32..4, coeffs in prop::collection::vec(laurent(), 8)) {
        let rep = tensor4();
        let f = rep.prime();
        let len = 1usize << (rep.l() - 1);
        let mut v = vec![OpScalar::zero(f); len];
        let support = (0..len).filter(|w| w.count_ones() == ones);
        for (w, c) in support.zip(&coeffs) {
            v[w] = pdgcell::coeff::reduce_cyclotomic(c, f);
        }
        prop_assert!(serre_like_sum(rep, a, &v).unwrap().iter().all(OpScalar::is_zero));
    }
}
