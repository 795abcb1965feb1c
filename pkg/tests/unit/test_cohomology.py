import pytest

from parahoric.models.cohomology import CohomologyPiece, EndoPrimeEntry, SKPrimeEntry, Weight
from parahoric.models.local_types import Cuspidal, PrincipalSeries, SteinbergTwist
from parahoric.models.symgroup import MultiplicityVector
from parahoric.services.cohomology_service import (
    STEINBERG,
    UNRAMIFIED_PS,
    XI_U_STEINBERG,
    HypothesisViolatedError,
    classical_sk_divisors,
    level2_components,
    level2_endo_entries,
    level2_sk_entries,
    vanishing_flags,
    yoshida_level,
)
from parahoric.services.modforms_service import UnsupportedWeightError, newform_counts
from parahoric.utils.validation import ArgumentError


def test_weight_derived_quantities():
    w = Weight(7, 1)
    assert (w.r1, w.r2, w.k1, w.k2) == (12, 8, 10, 4)
    assert Weight(5, 5).k == 8
    assert Weight(5, 5).r == 14
    with pytest.raises(ArgumentError):
        Weight(1, 2)
    with pytest.raises(ArgumentError):
        Weight(3, 1).k


def test_endo_level2_worked_example(cohomology):
    h30, h21 = cohomology.endo_level2(Weight(7, 1))
    assert h30.is_zero
    assert h21.total_dim == 40
    assert {str(label): m for label, m in h21.labels} == {"chi12(1)": 1, "chi10(0)": 1}
    assert h21.mult == MultiplicityVector.of(**{"theta1": 1, "theta3": 1, "theta4": 1, "chi12(1)": 1})


@pytest.mark.parametrize("weight", [(7, 1), (9, 3), (12, 2), (15, 5), (10, 0), (6, 6)])
def test_endo_identity_holds(cohomology, weight):
    check = cohomology.endo_identity(Weight(*weight))
    assert check.holds, check.to_dict()


def test_endo_hodge_symmetry(cohomology):
    pieces = cohomology.endo_hodge_pieces(Weight(9, 3))
    assert pieces["H12"].total_dim == pieces["H21"].total_dim
    assert pieces["H03"].mult == pieces["H30"].mult
    assert pieces["H03"].to_dict()["piece"] == "H03"


def test_inner_difference(cohomology):
    assert cohomology.inner_difference(Weight(7, 1)) == 40
    with pytest.raises(HypothesisViolatedError):
        cohomology.inner_difference(Weight(4, 4))
    with pytest.raises(HypothesisViolatedError):
        cohomology.inner_difference(Weight(6, 0))


def test_vanishing_flags():
    assert vanishing_flags(Weight(7, 1)) == {
        "inner_e_vanishes": True,
        "endo_h3_vanishes_at_level2": False,
    }
    assert vanishing_flags(Weight(2, 2))["endo_h3_vanishes_at_level2"]


@pytest.mark.parametrize(
    "lam,h30,h11",
    [
        (5, 14, 11),
        (2, 1, 9),
        (9, 29, 16),
    ],
)
def test_sk_level2(cohomology, lam, h30, h11):
    first, second = cohomology.sk_level2(Weight(lam, lam))
    assert (first.total_dim, second.total_dim) == (h30, h11)
    check = cohomology.sk_identity(Weight(lam, lam))
    assert check.holds, check.to_dict()


def test_sk_level2_requires_parallel_weight(cohomology):
    with pytest.raises(UnsupportedWeightError):
        cohomology.sk_level2(Weight(5, 3))


def test_sk_hodge_pieces(cohomology):
    pieces = cohomology.sk_hodge_pieces(Weight(5, 5))
    assert sorted(pieces) == ["H03", "H11", "H22", "H30"]
    assert pieces["H22"].total_dim == 11


def test_level2_components():
    counts = newform_counts(14)
    assert [(str(s), n) for s, n in level2_components(counts)] == [
        (str(UNRAMIFIED_PS), 0),
        (str(STEINBERG), 1),
        (str(XI_U_STEINBERG), 1),
        (str(Cuspidal(l=1)), 1),
    ]


def test_prime_level_matches_level2_formula(cohomology):
    h30, h21 = cohomology.endo_prime(2, level2_endo_entries(12, 8))
    ref30, ref21 = cohomology.endo_level2(Weight(7, 1))
    assert h30.total_dim == ref30.total_dim
    assert h21.mult == ref21.mult

    h30, h11 = cohomology.sk_prime(2, 8, level2_sk_entries(14))
    ref30, ref11 = cohomology.sk_level2(Weight(5, 5))
    assert h30.mult == ref30.mult
    assert h11.mult == ref11.mult


def test_endo_prime_odd_q(cohomology):
    st = SteinbergTwist()
    h30, h21 = cohomology.endo_prime(3, [EndoPrimeEntry(st, st, 2)])
    assert h30.total_dim == 30
    assert h21.total_dim == 210
    assert h30.mult is None
    # Paired difference: count * (q^2+1) * q * q.
    assert h21.total_dim - h30.total_dim == 2 * 10 * 3 * 3


def test_endo_prime_rejects_negative_count(cohomology):
    with pytest.raises(ArgumentError):
        cohomology.endo_prime(3, [EndoPrimeEntry(PrincipalSeries(), PrincipalSeries(), -1)])


def test_sk_prime_parity(cohomology):
    st = SteinbergTwist()
    h30, h11 = cohomology.sk_prime(3, 4, [SKPrimeEntry(st, 1)])
    assert [str(label) for label, _ in h30.labels] == ["theta3(1)"]
    assert [str(label) for label, _ in h11.labels] == ["theta4(1)"]
    assert h30.total_dim + h11.total_dim == 10 * 3

    h30, h11 = cohomology.sk_prime(3, 4, [SKPrimeEntry(PrincipalSeries(), 1)])
    assert h30.total_dim == 40
    assert h11.is_zero


def test_sk_prime_epsilon_override(cohomology):
    st = SteinbergTwist()
    h30, h11 = cohomology.sk_prime(3, 4, [SKPrimeEntry(st, 1, epsilon=1)])
    assert [str(label) for label, _ in h30.labels] == ["theta4(1)"]
    with pytest.raises(ArgumentError):
        cohomology.sk_prime(3, 4, [SKPrimeEntry(st, 1, epsilon=0)])
    with pytest.raises(ArgumentError):
        cohomology.sk_prime(3, 2, [SKPrimeEntry(st, 1)])


def test_yoshida_level():
    assert yoshida_level(6, 10).to_dict() == {"level": 30, "levels": [6, 10]}
    typed = yoshida_level(2, 6, r1=12, r2=8)
    assert (typed.sym_power, typed.det_power) == (6, 4)
    with pytest.raises(HypothesisViolatedError):
        yoshida_level(2, 3)
    with pytest.raises(ArgumentError):
        yoshida_level(4, 2)
    with pytest.raises(ArgumentError):
        yoshida_level(2, 6, r1=12)


def test_classical_sk_divisors():
    assert classical_sk_divisors(6, 3, {2: -1, 3: -1}) == [2, 3]
    assert classical_sk_divisors(6, 4, {2: -1, 3: -1}) == [1, 6]
    assert classical_sk_divisors(1, 4, {}) == [1]
    assert classical_sk_divisors(1, 3, {}) == []
    with pytest.raises(ArgumentError):
        classical_sk_divisors(6, 4, {2: 1})
    with pytest.raises(ArgumentError):
        classical_sk_divisors(6, 2, {2: 1, 3: 1})


def test_cohomology_piece_validation():
    with pytest.raises(ArgumentError):
        CohomologyPiece("H40", 0)
    with pytest.raises(ArgumentError):
        CohomologyPiece("H30", 3, MultiplicityVector.unit("theta0"))
