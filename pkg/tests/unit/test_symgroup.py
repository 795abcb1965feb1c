from fractions import Fraction

import pytest

from parahoric.models.symgroup import SP4F2_LABELS, MultiplicityVector, Partition
from parahoric.services.symgroup_service import (
    NotACharacterError,
    character_table,
    character_value,
    class_size,
    decompose,
    hook_lengths,
    inner_product,
    irreducible_character,
    irrep_dimension,
    label_of_partition,
    partition_of_label,
    partitions_of,
    regular_character,
    sign_character,
    sp4f2_dictionary,
    synthesize,
)
from parahoric.utils.validation import ArgumentError, RangeError


def test_partition_canonical_form():
    assert Partition.of([1, 0, 2]).parts == (2, 1)
    assert str(Partition((4, 2))) == "[4,2]"
    with pytest.raises(ArgumentError):
        Partition((1, 2))
    with pytest.raises(ArgumentError):
        Partition((2, 0))


def test_conjugate():
    assert Partition((4, 2)).conjugate() == Partition((2, 2, 1, 1))
    assert Partition((3, 2, 1)).conjugate() == Partition((3, 2, 1))


@pytest.mark.parametrize("n,count", [(1, 1), (4, 5), (5, 7), (6, 11), (10, 42)])
def test_partition_counts(n, count):
    assert len(partitions_of(n)) == count


def test_partitions_reverse_lex_order():
    parts = partitions_of(6)
    assert parts[0] == Partition((6,))
    assert parts[-1] == Partition((1,) * 6)
    assert parts == sorted(parts, reverse=True)


@pytest.mark.parametrize("n", [0, 21])
def test_partitions_out_of_range(n):
    with pytest.raises(RangeError):
        partitions_of(n)


def test_hook_lengths():
    assert hook_lengths(Partition((3, 2, 1))) == [5, 3, 1, 3, 1, 1]
    assert irrep_dimension(Partition((3, 2, 1))) == 16


def test_class_sizes_sum_to_order():
    assert class_size(Partition((2, 1, 1, 1, 1))) == 15
    assert class_size(Partition((6,))) == 120
    assert sum(class_size(mu) for mu in partitions_of(6)) == 720


def test_character_values():
    standard = Partition((5, 1))
    assert character_value(standard, Partition((2, 1, 1, 1, 1))) == 3
    assert character_value(standard, Partition((6,))) == -1
    sign = Partition((1,) * 6)
    assert character_value(sign, Partition((2, 1, 1, 1, 1))) == -1
    with pytest.raises(ArgumentError):
        character_value(Partition((3,)), Partition((2, 2)))


def test_character_table_identity_column_and_trivial_row():
    table = character_table(6)
    identity_column = [row[-1] for row in table]
    assert identity_column == [irrep_dimension(lam) for lam in partitions_of(6)]
    assert table[0] == [1] * 11


@pytest.mark.parametrize("n", [4, 5, 6])
def test_row_orthogonality(n):
    chars = [irreducible_character(lam) for lam in partitions_of(n)]
    for i, a in enumerate(chars):
        for j, b in enumerate(chars):
            assert inner_product(a, b) == (1 if i == j else 0)


def test_dictionary_dimensions():
    rows = sp4f2_dictionary()
    assert [label for label, _, _ in rows] == list(SP4F2_LABELS)
    assert sum(dim**2 for _, _, dim in rows) == 720
    assert label_of_partition(Partition((3, 2, 1))) == "theta4"
    assert partition_of_label("chi5(1)") == Partition((2, 2, 1, 1))
    with pytest.raises(ArgumentError):
        partition_of_label("chi4")


def test_decompose_regular_and_sign():
    regular = decompose(regular_character(6))
    assert regular["theta4"] == 16
    assert regular["chi12(1)"] == 10
    assert regular.total_dimension == 720
    assert decompose(sign_character(6)) == MultiplicityVector.unit("theta5")


def test_decompose_rejects_virtual_character():
    virtual = irreducible_character(Partition((6,))).scale(-1)
    with pytest.raises(NotACharacterError) as exc:
        decompose(virtual)
    assert exc.value.inner_products["theta0"] == Fraction(-1)


def test_synthesize_inverts_decompose():
    vector = MultiplicityVector.of(theta1=2, theta4=1)
    assert decompose(synthesize(vector)) == vector
    assert synthesize(MultiplicityVector.unit("theta1")) == irreducible_character(Partition((4, 2)))


def test_multiplicity_vector_validation():
    with pytest.raises(ArgumentError):
        MultiplicityVector.of(theta1=-1)
    with pytest.raises(ArgumentError):
        MultiplicityVector.from_mapping({"chi4": 1})
    vector = MultiplicityVector.unit("chi12(1)") + MultiplicityVector.unit("theta0")
    assert vector.total_dimension == 11
    assert vector.nonzero() == {"theta0": 1, "chi12(1)": 1}
    assert str(vector) == "theta0 + chi12(1)"
    assert MultiplicityVector().is_zero
