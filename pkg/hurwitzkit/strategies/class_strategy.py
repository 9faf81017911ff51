"""
Class and Deformed Block Strategies - 类和块与变形块
类和 C_α、完全 r-轮换，以及超几何因子 ∏(1 + c·w) 与 ∏ 1/(1 - c·z)。
"""

from fractions import Fraction
from math import factorial

from ..core.exceptions import DomainException, PoleException
from ..core.models import BlockFlavor, BlockSpec, Partition
from ..services.characters import central_character
from ..services.group_oracle import ClassAlgebraElement, GroupOracle
from ..services.partitions import content_multiset
from .base import IBlockStrategy

HALF = Fraction(1, 2)


class ClassSumStrategy(IBlockStrategy):
    """C_α，特征值 |C_α|χ_λ(α)/dim λ"""

    flavor = BlockFlavor.CLASS_SUM

    def _alpha(self, block: BlockSpec, n: int) -> Partition:
        if block.alpha.size != n:
            raise DomainException(f"class_sum({block.alpha.label}) does not live in S_{n}")
        return block.alpha

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        return central_character(self._alpha(block, shape.size), shape)

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return ClassAlgebraElement.class_sum(self._alpha(block, n))


class CompletedCycleStrategy(IBlockStrategy):
    """
    完全 r-轮换：(1/r!)Σ_i[(λ_i - i + 1/2)^r - (-i + 1/2)^r]，
    按行展开即 (1/r!)Σ_盒子[(c + 1/2)^r - (c - 1/2)^r]。
    """

    flavor = BlockFlavor.COMPLETED_CYCLE

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        r = block.b
        total = sum(((c + HALF) ** r - (c - HALF) ** r for c in content_multiset(shape)), Fraction(0))
        return total / factorial(r)

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return oracle.completed_cycle(n, block.b)


class HyperWStrategy(IBlockStrategy):
    """∏_盒子 (1 + c·w) = Σ_b w^b σ_b(J)"""

    flavor = BlockFlavor.HYPER_W

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        value = Fraction(1)
        for c in content_multiset(shape):
            value *= 1 + c * block.parameter
        return value

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return oracle.hyper_w(n, block.parameter)


class HyperZStrategy(IBlockStrategy):
    """∏_盒子 1/(1 - c·z)；某个因子为零时抛出 PoleException"""

    flavor = BlockFlavor.HYPER_Z

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        value = Fraction(1)
        for c in content_multiset(shape):
            factor = 1 - c * block.parameter
            if factor == 0:
                raise PoleException(f"1 - ({c})*({block.parameter}) vanishes for shape {shape}")
            value /= factor
        return value

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return oracle.hyper_z(n, block.parameter)
