import pytest

from parahoric.models.representations import EVEN_SERIES, ODD_SERIES, IntPolynomial, RepLabel
from parahoric.models.symgroup import MultiplicityVector
from parahoric.services.repdims_service import (
    ENDOSCOPIC_TABLE,
    SK_TABLE,
    CatalogueError,
    NotInImageError,
    canonical_cuspidal_index,
    k1_invariant_dimension,
    k_tilde,
    kappa,
    kappa_inverse,
    table3_parameters,
)
from parahoric.utils.validation import ArgumentError, RangeError


def test_int_polynomial_evaluation():
    poly = IntPolynomial.parse("q*(q+1)**2/2")
    assert poly.evaluate(2) == 9
    assert poly.evaluate(3) == 24
    with pytest.raises(ArgumentError):
        IntPolynomial.parse("q/2").evaluate(3)
    assert IntPolynomial.parse("q**2+1").coefficients() == ["1", "0", "1"]


@pytest.mark.parametrize(
    "family,q,expected",
    [
        ("chi1", 2, 45),
        ("chi2", 2, 15),
        ("chi10", 2, 30),
        ("theta4", 3, 81),
        ("chi9", 4, 51),
    ],
)
def test_evaluate_dim(repdims, family, q, expected):
    assert repdims.evaluate_dim(RepLabel(EVEN_SERIES, family), q) == expected


def test_evaluate_dim_rejects_small_q(repdims):
    with pytest.raises(RangeError):
        repdims.evaluate_dim(RepLabel(EVEN_SERIES, "theta1"), 1)


@pytest.mark.parametrize("name", ["chi1(0,0)", "chi2(1)", "chi10(0)", "chi6(0)", "theta1+theta4"])
def test_q2_decompositions_match_dimension(repdims, name):
    label = repdims.parse_label(name, EVEN_SERIES, q=2)
    vector = repdims.decompose_at_q2(label)
    assert vector.total_dimension == repdims.evaluate_dim(label, 2)


def test_q2_decomposition_values(repdims):
    chi2 = repdims.parse_label("chi2(1)", EVEN_SERIES, q=2)
    assert repdims.decompose_at_q2(chi2) == MultiplicityVector.of(**{"chi8(1)": 1, "chi12(1)": 1})
    composite = repdims.parse_label("theta3+theta4", EVEN_SERIES)
    assert repdims.decompose_at_q2(composite) == MultiplicityVector.of(theta3=1, theta4=1)


def test_q2_decomposition_unavailable(repdims):
    with pytest.raises(CatalogueError):
        repdims.decompose_at_q2(repdims.make_label(EVEN_SERIES, "chi4", (0, 0), q=2))
    with pytest.raises(CatalogueError):
        repdims.decompose_at_q2(RepLabel(ODD_SERIES, "theta1"))


def test_make_and_parse_label(repdims):
    label = repdims.make_label(EVEN_SERIES, "chi12", (4,), q=2)
    assert label.params == ((1, 3),)
    assert str(label) == "chi12(1)"
    assert repdims.parse_label("chi12(1)", EVEN_SERIES, q=2) == label
    assert repdims.parse_label("tau2(1)", ODD_SERIES) == RepLabel(ODD_SERIES, "tau2(1)")


def test_label_errors(repdims):
    with pytest.raises(CatalogueError):
        repdims.parse_label("bogus", EVEN_SERIES)
    with pytest.raises(ArgumentError):
        repdims.make_label(EVEN_SERIES, "chi12", (1,))
    with pytest.raises(ArgumentError):
        repdims.make_label(EVEN_SERIES, "chi1", (1,), q=2)
    with pytest.raises(ArgumentError):
        RepLabel("lusztig", "theta1")


def test_kappa_maps():
    assert kappa(1, 4) == 3
    assert kappa_inverse(3, 4) == 1
    with pytest.raises(NotInImageError):
        kappa_inverse(2, 4)
    assert k_tilde(1, 2, 4) == (4, 2)
    with pytest.raises(ArgumentError):
        k_tilde(1, 2, 3)


def test_table3_parameters():
    params = table3_parameters(3, 1, 4)
    assert params["kappa_inv_l1"] == 1
    assert params["kappa_inv_l2"] is None
    assert params["kappa_star_sum"] == 4


def test_canonical_cuspidal_index():
    assert canonical_cuspidal_index(2, 2) == 1
    assert canonical_cuspidal_index(13, 4) == 7
    with pytest.raises(ArgumentError):
        canonical_cuspidal_index(3, 2)


def test_k1_invariant_dimension():
    assert k1_invariant_dimension("cusp-iso") == IntPolynomial.parse("q-1")
    assert k1_invariant_dimension("xt-st") == IntPolynomial.parse("q")
    with pytest.raises(CatalogueError):
        k1_invariant_dimension("supercuspidal")


def test_paired_differences_hold(repdims):
    keys = repdims.endoscopic_pair_keys()
    assert "cusp|cusp-noniso" in keys
    for key in keys:
        check = repdims.paired_difference(key)
        assert check.holds, check.to_dict()


def test_sk_sums_hold(repdims):
    for key in repdims.sk_keys():
        check = repdims.sk_sum(key)
        assert check.holds, check.to_dict()


def test_rows_and_families(repdims):
    row = repdims.row(ENDOSCOPIC_TABLE, "ps|ps", "+")
    assert repdims.row_family(row, 2) == "chi1"
    assert repdims.row_family(row, 3) == "X1"
    assert repdims.row(SK_TABLE, "st", "St").dim_poly.evaluate(2) == 5
    assert repdims.find_row(ENDOSCOPIC_TABLE, "ps|ps", "-") is None
    with pytest.raises(CatalogueError):
        repdims.row(ENDOSCOPIC_TABLE, "ps|ps", "-")
