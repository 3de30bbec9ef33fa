import json

import numpy as np
import pytest

from chevalley import StructureTable, c_sign
from chevalley.oracle import (
    OracleError,
    commutator,
    exp_nilpotent,
    frame,
    frame_for,
    invariant_basis_matrices,
    k_basis_by_orbit,
    k_basis_matrices,
    k_rel_frame,
    sigma_inverse,
    sigma_matrix,
    theta_failures,
    verify_against_oracle,
)

from helpers import root, system, table

ORACLE_TYPES = [("A", n) for n in range(1, 8)] + [("C", n) for n in range(2, 5)]


def E(dim, i, j):
    m = np.zeros((dim, dim), dtype=np.int64)
    m[i, j] = 1
    return m


def test_sl2_sigma():
    e = np.array([[0, 1], [0, 0]])
    f = np.array([[0, 0], [-1, 0]])
    s = sigma_matrix(e, f)
    assert s.tolist() == [[0, 1], [-1, 0]]
    assert (s @ s).tolist() == [[-1, 0], [0, -1]]
    assert np.array_equal(s @ sigma_inverse(e, f), np.eye(2, dtype=int))
    assert np.array_equal(exp_nilpotent(f) @ exp_nilpotent(e) @ exp_nilpotent(f), s)


def test_exp_rejects_non_nilpotent():
    with pytest.raises(OracleError):
        exp_nilpotent(np.eye(2, dtype=np.int64))


@pytest.mark.parametrize("tag,n", ORACLE_TYPES)
def test_frames(tag, n):
    fr = frame(tag, n)
    assert frame_for(system(f"{tag}{n}")).type_tag == tag
    for e, f, h, s, si in zip(fr.e_pos, fr.e_neg, fr.h, fr.sigma, fr.sigma_inv):
        assert np.array_equal(commutator(h, e), 2 * e)
        assert np.array_equal(commutator(f, e), h)
        assert np.trace(e) == np.trace(f) == np.trace(h) == 0
        assert round(np.linalg.det(s)) == 1
        assert np.array_equal(s @ si, np.eye(fr.dim, dtype=int))
        # exp(e) exp(f) exp(e) = exp(f) exp(e) exp(f)
        assert np.array_equal(s, exp_nilpotent(f) @ exp_nilpotent(e) @ exp_nilpotent(f))
        if fr.form is not None:
            for x in (e, f, h):
                assert not (x.T @ fr.form + fr.form @ x).any()


def test_frame_examples():
    a2 = frame("A", 2)
    assert np.array_equal(a2.e_pos[0], E(3, 0, 1)) and np.array_equal(a2.e_pos[1], E(3, 1, 2))
    a1 = frame("A", 1)
    assert a1.h[0].tolist() == [[1, 0], [0, -1]]
    c2 = frame("C", 2)
    assert np.array_equal(c2.e_pos[0], E(4, 0, 1) - E(4, 2, 3))
    assert np.array_equal(c2.e_pos[1], E(4, 1, 2))
    # s_beta^bullet for Sp(4)
    expected = np.array([[1, 0, 0, 0], [0, 0, 1, 0], [0, -1, 0, 0], [0, 0, 0, 1]])
    assert np.array_equal(c2.sigma[1], expected)
    with pytest.raises(ValueError):
        frame("B", 3)
    with pytest.raises(ValueError):
        frame("A", 8)
    assert frame_for(system("G2")) is None


def test_sl3_kottwitz_basis():
    sys = system("A2")
    k = k_basis_matrices(frame("A", 2), sys)
    assert np.array_equal(k[0], E(3, 0, 1))
    assert np.array_equal(k[1], -E(3, 1, 2))
    assert np.array_equal(k[root(sys, 1, 1)], -E(3, 0, 2))


def test_sp4_kottwitz_basis():
    sys = system("C2")
    k = k_basis_matrices(frame("C", 2), sys)
    g = root(sys, 1, 1)
    assert np.array_equal(k[g], -E(4, 0, 2) - E(4, 1, 3))


@pytest.mark.parametrize("n", range(1, 8))
def test_sl_n_sign_law(n):
    sys = system(f"A{n}")
    k = k_basis_matrices(frame("A", n), sys)
    for lam, x in k.items():
        (i, j), = np.argwhere(x)
        assert x[i, j] == (-1) ** (j + 1)  # 1-based column index


@pytest.mark.parametrize("tag,n", ORACLE_TYPES)
def test_chain_and_orbit_constructions_agree(tag, n):
    sys = system(f"{tag}{n}")
    fr = frame(tag, n)
    k = k_basis_matrices(fr, sys)
    orbit, conflicts = k_basis_by_orbit(fr, sys)
    assert conflicts == []
    # the special roots get e_alpha and every simple root then carries c_alpha
    for lam in range(sys.nroots):
        assert np.array_equal(k[lam], orbit[lam])
    for i in range(n):
        assert np.array_equal(k[i], sys.c[i] * fr.e_pos[i])


@pytest.mark.parametrize("tag,n", ORACLE_TYPES)
def test_root_spaces_and_new_lift(tag, n):
    sys = system(f"{tag}{n}")
    fr = frame(tag, n)
    e = invariant_basis_matrices(fr, sys)
    for lam, x in e.items():
        for i in range(n):
            assert np.array_equal(commutator(fr.h[i], x), sys.pair[lam, i] * x)
    for i in range(n):
        s = sigma_matrix(e[i], e[sys.neg(i)])
        si = sigma_inverse(e[i], e[sys.neg(i)])
        for lam in range(sys.nroots):
            assert np.array_equal(s @ e[lam] @ si, c_sign(sys, i, lam) * e[sys._refl[i][lam]])


@pytest.mark.parametrize("n", range(1, 8))
def test_theta_parity(n):
    assert theta_failures(frame("A", n), system(f"A{n}")) == []
    with pytest.raises(ValueError):
        theta_failures(frame("C", 2), system("C2"))


def test_k_rel_frame():
    sys = system("A2")
    assert k_rel_frame(frame("A", 2), sys) == {0: 1, 1: -1, 2: -1, 3: -1, 4: 1, 5: -1}


@pytest.mark.parametrize("tag,n", ORACLE_TYPES)
def test_oracle_agrees(tag, n):
    sys = system(f"{tag}{n}")
    rep = verify_against_oracle(sys, None, table(f"{tag}{n}"), frame(tag, n))
    assert rep.ok, rep.to_text()
    assert rep.checked > 0


def test_sp4_bracket():
    sys = system("C2")
    e = invariant_basis_matrices(frame("C", 2), sys)
    g = root(sys, 1, 1)
    assert np.array_equal(commutator(e[0], e[1]), -e[g])


@pytest.mark.parametrize("name,tag,n", [("A2", "A", 2), ("C2", "C", 2), ("A4", "A", 4), ("C3", "C", 3)])
def test_corrupted_entry_reported_once(name, tag, n):
    sys = system(name)
    t = table(name)
    for key in list(t.entries)[:5]:
        bad = StructureTable(t.cartan, dict(t.entries))
        bad.entries[key] = -bad.entries[key]
        rep = verify_against_oracle(sys, None, bad, frame(tag, n))
        assert len(rep.mismatches) == 1
        assert rep.mismatches[0]["kind"] == "constant"


def test_missing_entry_reported():
    sys = system("A3")
    t = table("A3")
    key = next(iter(t.entries))
    bad = StructureTable(t.cartan, {k: v for k, v in t.entries.items() if k != key})
    rep = verify_against_oracle(sys, None, bad, frame("A", 3))
    assert [m["kind"] for m in rep.mismatches] == ["missing"]


def test_report_rendering():
    sys = system("A2")
    rep = verify_against_oracle(sys, None, table("A2"), frame("A", 2))
    data = json.loads(rep.to_json())
    assert data == {"checked": rep.checked, "mismatches": []}
    assert rep.to_text().startswith(f"oracle: checked {rep.checked} brackets, 0 mismatches")


def test_frame_type_mismatch():
    with pytest.raises(ValueError):
        k_basis_matrices(frame("A", 2), system("C2"))
