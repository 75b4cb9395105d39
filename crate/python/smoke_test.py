"""Smoke test for the pdgcell_py extension module.

Build and install first:
    pip install --no-build-isolation -e crates/pdgcell-py
"""

import pdgcell_py as pc


def main() -> None:
    assert pc.nilhecke_dimension(2, 4) == 24

    nh = pc.nilhecke(2, 3, p=3)
    assert nh["dim"] == 12 and nh["faithfulness_rank"] == 12
    assert nh["pdg"]["leibniz"] and nh["pdg"]["nilpotent"]

    s = pc.schur_decomposition(2, 4)
    assert s["shapes"][5] == "0011"
    assert s["z"][5][0] == "q^2 + q^4"
    assert s["unitriangular"] and s["cartan_equals_dtd"]
    assert sorted(s["summands"][3]) == ["0110", "1100"]

    census = pc.webster_census(2, 3)
    assert census["total"] == 89

    complexes = pc.splitting_complexes(2, 3)
    assert all(r["d_squared_zero"] for r in complexes if r["size"] >= 2)

    rel = pc.quantum_relations(3, 5)
    assert all(c["failures"] == 0 for c in rel["checks"])

    k = pc.k0(2, 4)
    assert k["passed"] and k["determinant_is_unit"]

    try:
        pc.nilhecke(3, 2)
    except ValueError:
        pass
    else:
        raise AssertionError("n > l must be rejected")

    print("python smoke test: ok")


if __name__ == "__main__":
    main()
