use serde_json::json;

use pdgcell::combinat::{enumerate_decompositions, enumerate_partitions};
use pdgcell::nilhecke::cellular::{trace_check, NHCellularBasis};
use pdgcell::nilhecke::cyclic::CyclicModule;
use pdgcell::nilhecke::induction::restriction_rank;
use pdgcell::nilhecke::stosic::all_splitter_complexes;
use pdgcell::nilhecke::{expected_dimension, NHAlgebra};
use pdgcell::quantum::{build_tensor_rep, k0_comparison, serre_like_sum, verify_quantum_relations};
use pdgcell::schur::replay::{s1l_check, s24_replay};
use pdgcell::schur::SchurAlgebra;
use pdgcell::webster::WebsterModel;
use pdgcell::coeff::OpScalar;
use pdgcell::Result;

use crate::report::Report;

fn params(n: usize, l: usize, p: u32) -> serde_json::Value {
    json!({ "n": n, "l": l, "p": p })
}

pub fn nilhecke(n: usize, l: usize, p: u32) -> Result<Report> {
    let mut r = Report::new("nilhecke", params(n, l, p));
    let alg = NHAlgebra::build(n, l, p)?;
    r.compare("dimension", expected_dimension(n, l), alg.dim());
    r.compare("faithfulness_rank", alg.dim(), alg.faithfulness_rank());
    let pdg = alg.pdg_report();
    r.holds("pdg/NH", pdg.passed());
    let mut modules = Vec::new();
    for lam in enumerate_partitions(n, l)? {
        let m = CyclicModule::g_lambda(&alg, &lam)?.pdg_report(&alg)?;
        r.holds(format!("pdg/{}", m.label), m.passed());
        modules.push(m);
    }
    for b in enumerate_decompositions(n, l) {
        let m = CyclicModule::g_decomposition(&alg, &b)?.pdg_report(&alg)?;
        r.holds(format!("pdg/{}", m.label), m.passed());
        modules.push(m);
    }
    let trace = (n >= 1).then(|| trace_check(&alg));
    if let Some(t) = &trace {
        r.holds("trace_pairing", t.passed());
    }
    let restriction = if n >= 1 { Some(restriction_rank(&NHAlgebra::build(n - 1, l, p)?, &alg)?) } else { None };
    if let Some(x) = &restriction {
        r.holds("restriction_free", x.passed());
    }
    r.set_details(json!({
        "dim": alg.dim(),
        "pdg": pdg,
        "modules": modules,
        "trace": trace,
        "restriction": restriction,
    }));
    Ok(r)
}

pub fn schur(n: usize, l: usize, p: u32) -> Result<Report> {
    let mut r = Report::new("schur", params(n, l, p));
    let s = SchurAlgebra::build(n, l, p)?;
    let alg = s.algebra_report();
    r.compare("dimension", alg.expected_dim, alg.dim);
    r.holds("algebra_tables", alg.passed());
    let pdg = s.pdg_report();
    r.holds("pdg/S", pdg.passed());
    let k = s.partitions().len();
    let oracle = (0..k).all(|a| (0..k).all(|b| s.z_multiplicity(a, b) == s.tableau_multiplicity(a, b)));
    r.holds("z_multiplicities_tableau_formula", oracle);
    let dd = s.decomposition_matrix()?;
    r.holds("decomposition_unitriangular", dd.unitriangular(s.partitions()));
    r.holds("cartan_equals_dtd", dd.cartan_matches());
    let z: Vec<Vec<String>> = dd.z.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    let d: Vec<Vec<String>> = dd.d.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    let c: Vec<Vec<String>> = dd.cartan.iter().map(|row| row.iter().map(|x| x.to_string()).collect()).collect();
    r.set_details(json!({
        "algebra": alg,
        "pdg": pdg,
        "shapes": dd.shapes,
        "z": z,
        "d": d,
        "cartan": c,
        "summands": dd.summands,
    }));
    Ok(r)
}

pub fn webster(n: usize, l: usize, p: u32) -> Result<Report> {
    let mut r = Report::new("webster", params(n, l, p));
    let w = WebsterModel::build(n, l, p)?;
    let s = SchurAlgebra::build(n, l, p)?;
    let census = w.census()?;
    r.compare("dimension_census", census.total, w.dim());
    r.holds("sw_basis", census.passed());
    let corner = w.corner_check(&s)?;
    r.holds("corner_is_schur", corner.passed());
    let dphi = w.d_equals_phi(&s)?;
    r.holds("d_basis_equals_phi_basis", dphi.passed());
    let chain = w.sw_chain()?;
    r.holds("chain_stable", chain.iter().all(|x| x.differential_stable && x.star_stable));
    let big = w.big_block_check()?;
    r.holds("big_block_is_nilhecke", big.passed());
    let crossings = w.crossing_checks()?;
    r.holds("crossings", crossings.iter().all(|c| c.passed()));
    let pdg = w.pdg_report(1)?;
    r.holds("pdg/W", pdg.leibniz && pdg.nilpotent);
    r.set_details(json!({
        "dim": w.dim(),
        "gdim": w.gdim().to_string(),
        "census": census,
        "corner": corner,
        "d_equals_phi": dphi,
        "chain": chain,
        "big_block": big,
        "crossings": crossings,
        "pdg": pdg,
    }));
    Ok(r)
}

pub fn k0(n: usize, l: usize, p: u32) -> Result<Report> {
    let mut r = Report::new("k0", params(n, l, p));
    let rep = build_tensor_rep(l, p)?;
    let relations = verify_quantum_relations(&rep);
    for c in &relations.checks {
        r.compare(format!("relation/{}", c.name), 0, c.failures);
    }
    let f = rep.prime();
    let lower_dim = 1usize << (l - 1);
    let mut serre = Vec::new();
    for a in 0..=3usize {
        let mut vanishing = true;
        for w in 0..lower_dim {
            let mut v = vec![OpScalar::zero(f); lower_dim];
            v[w] = OpScalar::one(f);
            vanishing &= serre_like_sum(&rep, a, &v)?.iter().all(OpScalar::is_zero);
        }
        serre.push((a, vanishing));
        if a >= 2 {
            r.holds(format!("serre_like/a={a}"), vanishing);
        } else {
            r.known_conflict(
                format!("serre_like/a={a}"),
                vanishing,
                "for a < 2 the sum has the nonzero term v (x) v_a and cannot vanish",
            );
        }
    }
    let cmp = k0_comparison(n, l, p)?;
    r.compare("rank", cmp.expected_rank, cmp.rank);
    r.holds("transition_determinant_unit", cmp.determinant_is_unit);
    r.holds("standard_classes_to_tensor_basis", cmp.standard_to_tensor_basis);
    r.holds("f_action_on_classes", cmp.f_action_matches);
    r.set_details(json!({ "relations": relations, "serre_like": serre, "comparison": cmp }));
    Ok(r)
}

pub fn cellular(n: usize, l: usize, p: u32) -> Result<Report> {
    let mut r = Report::new("verify-cellular", params(n, l, p));
    let alg = NHAlgebra::build(n, l, p)?;
    let nh_pdg = alg.pdg_report();
    r.holds("pdg/NH", nh_pdg.passed());
    let mut module_failures = Vec::new();
    for lam in enumerate_partitions(n, l)? {
        let m = CyclicModule::g_lambda(&alg, &lam)?.pdg_report(&alg)?;
        if !m.passed() {
            module_failures.push(m.label.clone());
        }
    }
    for b in enumerate_decompositions(n, l) {
        let m = CyclicModule::g_decomposition(&alg, &b)?.pdg_report(&alg)?;
        if !m.passed() {
            module_failures.push(m.label.clone());
        }
    }
    r.compare("pdg/modules", Vec::<String>::new(), &module_failures);

    let cells = NHCellularBasis::build(&alg)?;
    let tri = cells.triangularity(&alg);
    r.holds("nh/triangularity", tri.passed());
    let indep = cells.coefficients_independent(&alg);
    r.holds("nh/coefficients_independent", indep.passed());
    let chain = cells.chain_stability(&alg);
    r.holds("nh/chain_stable", chain.iter().all(|c| c.two_sided && c.differential_stable && c.star_stable));

    let s = SchurAlgebra::build(n, l, p)?;
    let s_pdg = s.pdg_report();
    r.holds("pdg/S", s_pdg.passed());
    let s_tri = s.triangularity();
    r.holds("schur/triangularity", s_tri.passed());
    let s_chain = s.cell_chain();
    r.holds("schur/chain_stable", s_chain.iter().all(|c| c.passed()));
    let mut cell_modules = Vec::new();
    for lam in 0..s.partitions().len() {
        let c = s.cell_module(lam)?;
        r.holds(format!("schur/cell_module/{}", s.partitions()[lam]), c.passed());
        cell_modules.push(c);
    }

    let w_pdg = if n <= 3 {
        let w = WebsterModel::build(n, l, p)?;
        let rep = w.pdg_report(1)?;
        r.holds("pdg/W", rep.leibniz && rep.nilpotent);
        Some(rep)
    } else {
        None
    };
    r.set_details(json!({
        "nh_pdg": nh_pdg,
        "nh_triangularity": tri,
        "nh_chain": chain,
        "schur_pdg": s_pdg,
        "schur_triangularity": s_tri,
        "schur_chain": s_chain,
        "cell_modules": cell_modules,
        "webster_pdg": w_pdg,
    }));
    Ok(r)
}

pub fn stosic(n: usize, l: usize, p: u32) -> Result<Report> {
    let mut r = Report::new("verify-stosic", params(n, l, p));
    let alg = NHAlgebra::build(n, l, p)?;
    let reports = all_splitter_complexes(&alg)?;
    for x in &reports {
        let id = format!("{}@{}", x.b, x.position);
        if x.size == 1 && !x.passed() {
            r.known_conflict(id, false, "a part of size 1 gives G[b^1] of smaller dimension than G[b]; no contractible two-term complex");
        } else {
            r.holds(id, x.passed());
        }
    }
    r.set_details(&reports);
    Ok(r)
}

pub fn s24(p: u32) -> Result<Report> {
    let mut r = Report::new("verify-appendix-s24", json!({ "n": 2, "l": 4, "p": p }));
    let x = s24_replay(p)?;
    r.holds("z_expansions", x.z_match);
    r.holds("z_tableau_formula", x.z_tableau_formula);
    for c in &x.cell_differentials {
        r.compare(format!("cell_differentials/{}", c.shape), Vec::<String>::new(), &c.mismatches);
    }
    for f in &x.filtrations {
        r.holds(format!("filtration/{}", f.module), f.passed());
    }
    r.holds("summand_pattern", x.summand_pattern);
    r.holds("quiver", x.quiver.passed());
    r.set_details(&x);
    Ok(r)
}

pub fn s1l(l: usize, p: u32) -> Result<Report> {
    let mut r = Report::new("verify-appendix-s1l", json!({ "n": 1, "l": l, "p": p }));
    let x = s1l_check(l, p)?;
    r.compare("dimension", x.expected_dim, x.dim);
    r.holds("images_are_powers", x.images_are_powers);
    r.holds("composition_law", x.composition_law);
    r.holds("quiver_relations", x.quiver_relations);
    r.holds("paths_match", x.paths_match);
    r.holds("differential_rule", x.differential_rule);
    r.holds("arrow_differentials", x.arrow_differentials);
    r.set_details(&x);
    Ok(r)
}
