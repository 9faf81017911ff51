from fractions import Fraction

import pytest

from hurwitzkit.core.exceptions import DomainException
from hurwitzkit.core.models import Partition
from hurwitzkit.services.characters import (
    central_character, character, complete_symmetric, elementary_symmetric, evaluate_power_sums,
    orthogonality_defect, power_sum, schur_in_p, schur_in_t
)
from hurwitzkit.services.partitions import content_multiset, dimension, partitions_of


def test_character_values():
    assert character(Partition.of(2, 1), Partition.of(3)) == -1
    assert character(Partition.of(2, 1), Partition.of(2, 1)) == 0
    assert character(Partition.of(2, 1), Partition.of(1, 1, 1)) == 2
    assert character(Partition(), Partition()) == 1


def test_character_size_mismatch():
    with pytest.raises(DomainException):
        character(Partition.of(2), Partition.of(1))


@pytest.mark.parametrize("n", range(1, 7))
def test_row_orthogonality(n):
    assert orthogonality_defect(n) == []


def test_identity_class_gives_dimension():
    for shape in partitions_of(6):
        assert character(shape, Partition.one(6)) == dimension(shape)


def test_central_character_of_transpositions_is_content_sum():
    transpositions = Partition.of(2, 1, 1, 1)
    for shape in partitions_of(5):
        assert central_character(transpositions, shape) == sum(content_multiset(shape))
    assert central_character(Partition.of(2, 1), Partition.of(1, 1, 1)) == -3


def test_symmetric_polynomials():
    assert elementary_symmetric([1, 2, 3], 2) == 11
    assert elementary_symmetric([1, 2], 3) == 0
    assert complete_symmetric([1, 2], 2) == 7
    assert power_sum([1, 2], 0) == 2
    assert power_sum([Fraction(1, 2), 2], 2) == Fraction(17, 4)


def test_schur_expansions():
    assert schur_in_p(Partition.of(2)) == {Partition.of(2): Fraction(1, 2), Partition.of(1, 1): Fraction(1, 2)}
    assert schur_in_p(Partition.of(1, 1)) == {Partition.of(2): Fraction(-1, 2), Partition.of(1, 1): Fraction(1, 2)}
    assert schur_in_t(Partition.of(2)) == {Partition.of(2): Fraction(1), Partition.of(1, 1): Fraction(1, 2)}


def test_single_variable_specialization():
    # p_k = 1 is the one-variable evaluation x = 1: only one-row shapes survive
    ones = {k: Fraction(1) for k in range(1, 5)}
    for shape in partitions_of(4):
        expected = 1 if shape.length == 1 else 0
        assert evaluate_power_sums(schur_in_p(shape), ones) == expected
