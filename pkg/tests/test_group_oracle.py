from fractions import Fraction

import pytest

from hurwitzkit.core.exceptions import DomainException, PoleException, ResourceException
from hurwitzkit.core.models import AutomorphismMode, BlockSpec, Partition
from hurwitzkit.services.group_oracle import (
    ClassAlgebraElement, GroupOracle, cycle_type, permutations_by_class, representative
)
from hurwitzkit.services.partitions import class_size, partitions_of


def C(*parts):
    return ClassAlgebraElement.class_sum(Partition.of(*parts))


def test_enumeration_buckets():
    buckets = permutations_by_class(4)
    assert sum(len(perms) for perms in buckets.values()) == 24
    for kappa, perms in buckets.items():
        assert len(perms) == class_size(kappa)


def test_representative_has_its_cycle_type():
    for kappa in partitions_of(5):
        assert cycle_type(representative(kappa)) == kappa


def test_class_products():
    assert C(2) * C(2) == C(1, 1)
    assert C(2, 1) * C(2, 1) == C(1, 1, 1).scale(3) + C(3).scale(3)
    with pytest.raises(DomainException):
        C(2) * C(2, 1)


def test_class_element_json():
    element = C(3) + C(1, 1, 1).scale(Fraction(1, 2))
    assert element.to_json() == {"3": "1", "1,1,1": "1/2"}
    assert ClassAlgebraElement.zero(3).to_json() == {}


def test_monotone_jucys_expansion_n5():
    oracle = GroupOracle()
    expected = C(3, 1, 1).scale(2) + C(2, 2, 1) + C(1, 1, 1, 1, 1).scale(10)
    assert oracle.jucys_symmetric(5, "h", 2) == expected


@pytest.mark.parametrize("n", range(2, 5))
def test_elementary_jucys_is_free_single(n):
    oracle = GroupOracle()
    for b in range(n):
        assert oracle.jucys_symmetric(n, "sigma", b) == oracle.free_single(n, b)


def test_jucys_rejects_bad_input():
    oracle = GroupOracle()
    with pytest.raises(DomainException):
        oracle.jucys_symmetric(3, "sigma", 3)
    with pytest.raises(DomainException):
        oracle.jucys_symmetric(3, "e", 1)


def test_enumeration_limit():
    oracle = GroupOracle(enumeration_limit=3)
    assert not oracle.allows(4)
    with pytest.raises(ResourceException):
        oracle.brute_hurwitz(Partition.of(4), Partition.of(4), ())
    assert GroupOracle(enumeration_limit=3, force=True).allows(4)


def test_from_config():
    oracle = GroupOracle.from_config({"oracle": {"enumeration_limit": 5, "force": False}})
    assert oracle.enumeration_limit == 5
    assert GroupOracle.from_config({}, force=True).force


def test_brute_hurwitz_values():
    oracle = GroupOracle()
    assert oracle.brute_hurwitz(Partition.of(2), Partition.of(1, 1), (BlockSpec.monotone(1),)) == Fraction(1, 2)
    assert oracle.brute_hurwitz(Partition.of(2, 1), Partition.of(2, 1), ()) == Fraction(1, 2)
    assert oracle.brute_hurwitz(Partition.of(1, 1), Partition.of(1, 1), ()) == Fraction(1, 2)
    assert oracle.brute_hurwitz(Partition.of(1, 1), Partition.of(1, 1), (),
                                AutomorphismMode.POINTWISE) == 2


def test_brute_hurwitz_size_mismatch():
    with pytest.raises(DomainException):
        GroupOracle().brute_hurwitz(Partition.of(2), Partition.of(1), ())


def test_completed_two_cycle_is_transposition_class():
    oracle = GroupOracle()
    assert oracle.completed_cycle(4, 2) == C(2, 1, 1)


def test_hyper_factors_are_inverse():
    oracle = GroupOracle()
    z = Fraction(1, 5)
    assert oracle.hyper_z(3, z) * oracle.hyper_w(3, -z) == ClassAlgebraElement.identity(3)


def test_hyper_z_pole():
    # shape (3) carries the Jucys eigenvalue 2, and 1 - 2 * 1/2 = 0
    with pytest.raises(PoleException):
        GroupOracle().hyper_z(3, Fraction(1, 2))


def test_free_group_degree_zero_is_identity():
    oracle = GroupOracle()
    assert oracle.free_group(4, 0) == ClassAlgebraElement.identity(4)
    assert oracle.free_group_fixed(4, 1, 1) == oracle.free_single(4, 1)


def test_block_element_is_memoized():
    oracle = GroupOracle()
    block = BlockSpec.monotone(2)
    assert oracle.block_element(block, 4) is oracle.block_element(block, 4)
