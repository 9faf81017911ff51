from fractions import Fraction

import pytest

from hurwitzkit.core.exceptions import DomainException, PoleException
from hurwitzkit.core.models import BlockFlavor, BlockSpec, CurveFlavor, Partition
from hurwitzkit.services.characters import central_character
from hurwitzkit.services.partitions import partitions_of
from hurwitzkit.strategies import (
    CompletedCycleStrategy, HyperZStrategy, MonotoneStrategy, StrictMonotoneCurveStrategy,
    default_block_strategies, default_curve_strategies
)

BLOCKS = [
    BlockSpec.strict_monotone(2),
    BlockSpec.monotone(2),
    BlockSpec.atlantes(2),
    BlockSpec.free_single(2),
    BlockSpec.free_group(2),
    BlockSpec.free_group_fixed(2, 2),
    BlockSpec.class_sum(Partition.of(2, 2)),
    BlockSpec.completed_cycle(3),
    BlockSpec.hyper_w(Fraction(2, 3)),
    BlockSpec.hyper_z(Fraction(1, 7)),
]


def test_registries_cover_every_flavor():
    assert set(default_block_strategies()) == set(BlockFlavor)
    assert set(default_curve_strategies()) == set(CurveFlavor)


@pytest.mark.parametrize("block", BLOCKS, ids=lambda block: block.flavor.value)
def test_eigenvalue_matches_class_expansion(oracle, block):
    strategy = default_block_strategies()[block.flavor]
    element = strategy.oracle_element(block, 4, oracle)
    for shape in partitions_of(4):
        expected = sum((c * central_character(alpha, shape) for alpha, c in element.sorted_items()), Fraction(0))
        assert strategy.eigenvalue(block, shape) == expected


def test_wrong_flavor_is_rejected():
    with pytest.raises(DomainException):
        MonotoneStrategy().eigenvalue(BlockSpec.atlantes(1), Partition.of(2))


def test_completed_cycle_eigenvalue():
    assert CompletedCycleStrategy().eigenvalue(BlockSpec.completed_cycle(3), Partition.of(2)) == Fraction(7, 12)


def test_hyper_z_pole():
    with pytest.raises(PoleException):
        HyperZStrategy().eigenvalue(BlockSpec.hyper_z(Fraction(1, 2)), Partition.of(3))


def test_orbifold_order_must_be_positive():
    with pytest.raises(DomainException):
        StrictMonotoneCurveStrategy.orbifold_order({"r": 0})
    assert StrictMonotoneCurveStrategy.orbifold_order({}) == 1
