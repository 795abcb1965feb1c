import json
from fractions import Fraction

import pytest
from sympy import Matrix

from parahoric.models.qseries import NewformCounts, PrecisionError, QExpansion
from parahoric.services import modforms_service
from parahoric.services.modforms_service import (
    MethodDisagreementError,
    UnsupportedWeightError,
    al_split_oracle,
    al_split_trace,
    cusp_basis,
    dim_cusp,
    euler_product,
    fixture_mismatches,
    hecke_matrix,
    load_fixtures,
    newform_counts,
    standard_series,
    trace_difference,
    write_fixtures,
)
from parahoric.utils.validation import ArgumentError


def test_qexpansion_arithmetic():
    f = QExpansion((0, 1, 2))
    assert (f * f).as_strings() == ["0", "0", "1"]
    assert (f ** 0).coefficients == (1, 0, 0)
    assert f.shift(1).precision == 3
    assert f.at_power(2).as_strings() == ["0", "0", "1", "0", "2", "0"]
    assert f.valuation == 1
    assert QExpansion((0, 0)).valuation == 2
    assert f.scale(Fraction(1, 2)).coefficient(1) == Fraction(1, 2)
    assert not f.scale(Fraction(1, 2)).is_integral
    with pytest.raises(PrecisionError):
        f.coefficient(3)
    with pytest.raises(PrecisionError):
        f.truncate(5)


def test_qexpansion_worked_examples():
    one_plus_q = QExpansion.from_coefficients([1, 1], 2)
    one_minus_q = QExpansion.from_coefficients([1, -1], 2)
    assert (one_plus_q * one_minus_q).as_strings() == ["1", "0", "-1"]
    geometric = QExpansion.from_coefficients([1] * 10, 9)
    assert geometric.truncate(3).as_strings() == ["1", "1", "1", "1"]
    assert (one_minus_q**8).coefficient(2) == 28
    assert (one_plus_q + QExpansion.one(5)).precision == 2


def test_euler_product():
    assert euler_product(8).as_strings() == ["1", "-1", "-1", "0", "0", "1", "0", "1", "0"]


@pytest.mark.parametrize(
    "name,expected",
    [
        ("E2", [1, -24, -72]),
        ("E4", [1, 240, 2160]),
        ("E6", [1, -504, -16632]),
        ("Delta", [0, 1, -24, 252, -1472]),
        ("Delta2", [0, 1, -8]),
        ("A", [1, 24, 24]),
    ],
)
def test_standard_series(name, expected):
    series = standard_series(name, 12)
    assert [series.coefficient(n) for n in range(len(expected))] == expected
    assert series.is_integral


def test_standard_series_unknown():
    with pytest.raises(ArgumentError):
        standard_series("E8", 10)


@pytest.mark.parametrize(
    "level,k,dim",
    [(1, 12, 1), (1, 14, 0), (1, 24, 2), (2, 8, 1), (2, 14, 2), (4, 6, 1), (4, 14, 5), (1, 2, 0)],
)
def test_dim_cusp(level, k, dim):
    assert dim_cusp(level, k) == dim


def test_dim_cusp_errors():
    with pytest.raises(ArgumentError):
        dim_cusp(3, 12)
    with pytest.raises(UnsupportedWeightError):
        dim_cusp(1, 13)


def test_cusp_basis_is_echelon():
    basis = cusp_basis(1, 24)
    assert len(basis) == 2
    assert [basis[0].coefficient(1), basis[0].coefficient(2)] == [1, 0]
    assert [basis[1].coefficient(1), basis[1].coefficient(2)] == [0, 1]
    with pytest.raises(PrecisionError):
        cusp_basis(1, 12, precision=5)
    with pytest.raises(ArgumentError):
        cusp_basis(4, 12)


def test_hecke_eigenvalues():
    assert hecke_matrix("T2_level1", 12) == Matrix([[-24]])
    assert hecke_matrix("U2_level2", 8) == Matrix([[-8]])
    assert hecke_matrix("T2_level1", 24).trace() == 1080
    with pytest.raises(ArgumentError):
        hecke_matrix("T3_level1", 12)


def test_trace_difference_divisibility():
    assert trace_difference(8) == -8
    for r in range(8, 31, 2):
        assert trace_difference(r) % 2 ** (r // 2 - 1) == 0


@pytest.mark.parametrize(
    "r,expected",
    [
        (8, (0, 1, 0, 1, 0)),
        (12, (1, 0, 1, 0, 0)),
        (14, (0, 2, 1, 1, 1)),
    ],
)
def test_newform_counts(r, expected):
    counts = newform_counts(r)
    assert (counts.tau1, counts.tau2, counts.tau4, counts.tau_plus, counts.tau_minus) == expected
    assert counts.dim_s_gamma0_4 == dim_cusp(4, r)


@pytest.mark.parametrize("r", [10, 16, 20, 26, 40])
def test_al_split_methods_agree(r):
    assert al_split_trace(r) == al_split_oracle(r)


def test_newform_counts_rejects_odd_weight():
    with pytest.raises(UnsupportedWeightError):
        newform_counts(11)


def test_method_disagreement_raises(mocker):
    newform_counts.cache_clear()
    mocker.patch.object(modforms_service, "al_split_oracle", return_value=(0, 1))
    try:
        with pytest.raises(MethodDisagreementError) as exc:
            newform_counts(8)
        assert exc.value.trace_split == (1, 0)
    finally:
        newform_counts.cache_clear()


def test_newform_counts_validation():
    with pytest.raises(ArgumentError):
        NewformCounts(r=8, tau1=0, tau2=1, tau4=0, tau_plus=1, tau_minus=1, dim_s_gamma0_4=2)
    assert NewformCounts.zero(4).to_dict()["tau2"] == 0


def test_fixtures_roundtrip(tmp_path, fixtures_file):
    pinned = load_fixtures(str(fixtures_file))
    assert sorted(pinned) == [12, 14]
    assert fixture_mismatches(pinned) == []

    out = tmp_path / "written.json"
    assert write_fixtures(str(out), [14, 12, 12]) == 2
    assert load_fixtures(str(out)) == pinned


def test_fixture_mismatch_reported(tmp_path):
    path = tmp_path / "wrong.json"
    path.write_text(
        json.dumps([{"r": 12, "tau1": 1, "tau2": 0, "tau4": 0, "tauPlus": 0, "tauMinus": 0}]),
        encoding="utf-8",
    )
    mismatches = fixture_mismatches(load_fixtures(str(path)))
    assert [m["r"] for m in mismatches] == [12]
    assert mismatches[0]["computed"]["tau4"] == 1


def test_fixture_errors(tmp_path):
    with pytest.raises(ArgumentError):
        load_fixtures(str(tmp_path / "missing.json"))
    path = tmp_path / "partial.json"
    path.write_text(json.dumps([{"r": 12}]), encoding="utf-8")
    with pytest.raises(ArgumentError):
        load_fixtures(str(path))
