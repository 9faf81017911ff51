from fractions import Fraction

import pytest

from hurwitzkit.core.exceptions import DomainException, PoleException
from hurwitzkit.core.models import AutomorphismMode, BlockSpec, HurwitzProblem, Partition
from hurwitzkit.services.hurwitz_engine import (
    HurwitzEngine, elsv_k_coefficients, elsv_reexponentiate, lascoux_thibon_check, newton_check
)
from hurwitzkit.services.partitions import orbifold_profile, partitions_of


def test_hurwitz_values(engine):
    assert engine.hurwitz(Partition.of(2), Partition.of(1, 1), (BlockSpec.monotone(1),)) == Fraction(1, 2)
    assert engine.hurwitz(Partition.of(2, 1), Partition.of(2, 1)) == Fraction(1, 2)


def test_pointwise_mode(engine):
    problem = HurwitzProblem(Partition.of(1, 1), Partition.of(1, 1), (), AutomorphismMode.POINTWISE)
    assert engine.hurwitz_number(problem) == 2


def test_problem_genus():
    problem = HurwitzProblem(Partition.of(2, 1), Partition.of(1, 1, 1), (BlockSpec.monotone(3),))
    assert problem.genus == 0
    with pytest.raises(DomainException):
        HurwitzProblem(Partition.of(2), Partition.of(1), ())


def test_pole_in_eigenvalue(engine):
    with pytest.raises(PoleException):
        engine.hurwitz(Partition.of(3), Partition.of(3), (BlockSpec.hyper_z(Fraction(1, 2)),))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_character_formula_matches_oracle(engine, oracle, n):
    blocks_list = [
        (BlockSpec.strict_monotone(2),),
        (BlockSpec.monotone(3),),
        (BlockSpec.atlantes(2),),
        (BlockSpec.free_group(2),),
        (BlockSpec.free_group_fixed(3, 2),),
        (BlockSpec.completed_cycle(3),),
        (BlockSpec.monotone(1), BlockSpec.strict_monotone(1)),
        (BlockSpec.hyper_w(Fraction(2, 3)), BlockSpec.hyper_z(Fraction(1, 7))),
    ]
    for blocks in blocks_list:
        for mu in partitions_of(n):
            for nu in partitions_of(n):
                assert engine.hurwitz(mu, nu, blocks) == oracle.brute_hurwitz(mu, nu, blocks)


@pytest.mark.parametrize("wpows,zpows", [((1,), (1,)), ((2,), ()), ((), (1, 2))])
def test_hypergeometric_coefficient_matches_blocks(engine, oracle, wpows, zpows):
    n = 3
    blocks = tuple(BlockSpec.strict_monotone(c) for c in wpows) + tuple(BlockSpec.monotone(d) for d in zpows)
    for mu in partitions_of(n):
        for nu in partitions_of(n):
            assert engine.hypergeometric_coefficient(n, wpows, zpows, mu, nu) == \
                oracle.brute_hurwitz(mu, nu, blocks)


def test_hypergeometric_coefficient_checks_sizes(engine):
    with pytest.raises(DomainException):
        engine.hypergeometric_coefficient(3, (1,), (), Partition.of(2), Partition.of(2, 1))


def test_block_count():
    assert HurwitzEngine.block_count("simple", 0, Partition.of(2)) == 1
    assert HurwitzEngine.block_count("atlantes", 0, Partition.of(2), power=2) is None
    assert HurwitzEngine.block_count("monotone", 0, Partition.of(3), orbifold=2) is None
    with pytest.raises(DomainException):
        HurwitzEngine.block_count("bogus", 0, Partition.of(2))


def test_connected_simple_number(engine):
    assert engine.connected_number("simple", 0, Partition.of(2)) == Fraction(1, 2)


def test_connected_numbers_from_logarithm(engine):
    table = engine.connected_numbers("monotone", 3, 4)
    # disconnected and connected agree on a one-part profile of degree 2
    assert table.value(0, Partition.of(2)) == engine.hurwitz(
        Partition.of(2), Partition.of(1, 1), (BlockSpec.monotone(1),))
    # (1 2)(1 2) with trivial profiles is a connected genus-zero cover
    assert table.value(0, Partition.of(1, 1)) == Fraction(1, 2)
    with pytest.raises(DomainException):
        table.value(0, Partition.of(2, 2))


def test_hurwitz_table(engine):
    rows = engine.hurwitz_table("monotone", [0], [2])
    assert rows[0] == {"flavor": "monotone", "g": 0, "mu": [2], "b": 1, "value": "1/2"}
    assert len(rows) == 2
    with pytest.raises(DomainException):
        engine.hurwitz_table("class_sum", [0], [2])


def test_hypermaps_are_strictly_monotone(engine):
    for mu in partitions_of(4):
        nu = orbifold_profile(4, 2)
        for b in range(4):
            assert engine.hypermap_count(mu, 2, b) == engine.hurwitz(mu, nu, (BlockSpec.strict_monotone(b),))


def test_elsv_coefficients():
    coefficients = elsv_k_coefficients(6)
    assert coefficients[:2] == [Fraction(-3), Fraction(-21, 2)]
    assert elsv_reexponentiate(coefficients, 6)
    assert not elsv_reexponentiate([Fraction(-3), Fraction(-10)], 2)
    with pytest.raises(DomainException):
        elsv_k_coefficients(0)


@pytest.mark.parametrize("n", range(1, 5))
def test_lascoux_thibon_and_newton(n):
    for shape in partitions_of(n):
        assert lascoux_thibon_check(shape, 8)
        assert newton_check(shape, 8)


@pytest.mark.parametrize("g,ell,max_part", [(0, 1, 6), (0, 2, 3), (1, 1, 5)])
def test_quasipolynomiality(engine, g, ell, max_part):
    report = engine.quasipolynomiality_check(g, ell, max_part=max_part)
    assert report.ok, report.first_failure
    assert report.checked > 0
    assert report.details["unstable_correction"] == (2 * g - 2 + ell <= 0)


def test_quasipolynomiality_needs_enough_points(engine):
    with pytest.raises(DomainException):
        engine.quasipolynomiality_check(1, 1, degree=3, max_part=4)


def test_partition_function(engine):
    z = engine.partition_function("simple", 2, 1)
    assert z.constant_term() == 1
    assert z.coefficient({"p1": 1}) == 1
    assert z.coefficient({"p1": 2}) == Fraction(1, 2)
    assert z.coefficient({"p2": 1, "beta": 1}) == Fraction(1, 2)
    assert z.coefficient({"p2": 1}) == 0
    with pytest.raises(DomainException):
        engine.partition_function("bogus", 2, 1)


def test_block_eigenvalue_on_contents(engine):
    assert engine.block_eigenvalue(BlockSpec.monotone(1), Partition.of(2)) == 1
    assert engine.block_eigenvalue(BlockSpec.monotone(1), Partition.of(1, 1)) == -1
    assert engine.block_eigenvalue(BlockSpec.monotone(2), Partition.of(3)) == 7
