from math import factorial

import pytest

from hurwitzkit.core.exceptions import DomainException
from hurwitzkit.core.models import Partition
from hurwitzkit.services.partitions import (
    automorphism_count, centralizer_size, class_size, content_multiset, dimension, jucys_contents,
    orbifold_profile, partitions_of, partitions_of_length, sign
)


def test_partition_counts():
    assert partitions_of(0) == [Partition()]
    assert len(partitions_of(4)) == 5
    assert len(partitions_of(8)) == 22


def test_reverse_lexicographic_order():
    assert partitions_of(3) == [Partition.of(3), Partition.of(2, 1), Partition.of(1, 1, 1)]
    assert partitions_of(4)[1] == Partition.of(3, 1)


def test_partitions_of_negative():
    with pytest.raises(DomainException):
        partitions_of(-1)


def test_partitions_of_length():
    assert partitions_of_length(5, 2) == [Partition.of(4, 1), Partition.of(3, 2)]


def test_partition_invariants():
    with pytest.raises(DomainException):
        Partition((1, 2))
    with pytest.raises(DomainException):
        Partition((2, 0))
    assert Partition.of(1, 3, 2).parts == (3, 2, 1)
    assert Partition.parse("[3, 1]") == Partition.of(3, 1)
    assert Partition.parse("") == Partition()
    assert Partition.of(3, 1).conjugate() == Partition.of(2, 1, 1)


def test_content_multiset():
    assert content_multiset(Partition.of(3, 1)) == [-1, 0, 1, 2]
    assert content_multiset(Partition.of(1)) == [0]
    assert content_multiset(Partition.of(2, 2)) == [-1, 0, 0, 1]
    assert jucys_contents(Partition.of(2, 2)) == [-1, 0, 1]
    assert jucys_contents(Partition()) == []


def test_centralizer_and_class_sizes():
    mu = Partition.of(2, 2, 1)
    assert automorphism_count(mu) == 2
    assert centralizer_size(mu) == 8
    assert class_size(mu) == 15
    for n in range(1, 7):
        assert sum(class_size(mu) for mu in partitions_of(n)) == factorial(n)


def test_dimensions():
    assert dimension(Partition.of(2, 1)) == 2
    assert dimension(Partition.of(3, 2)) == 5
    for n in range(1, 7):
        assert sum(dimension(shape) ** 2 for shape in partitions_of(n)) == factorial(n)


def test_sign():
    assert sign(Partition.of(2, 1)) == -1
    assert sign(Partition.of(3)) == 1


def test_orbifold_profile():
    assert orbifold_profile(6, 2) == Partition.of(2, 2, 2)
    assert orbifold_profile(3, 1) == Partition.one(3)
    with pytest.raises(DomainException):
        orbifold_profile(5, 2)


@pytest.mark.parametrize("n", range(1, 9))
def test_conjugate_negates_contents(n):
    for shape in partitions_of(n):
        assert sorted(content_multiset(shape.conjugate())) == sorted(-c for c in content_multiset(shape))
