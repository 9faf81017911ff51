"""
Jucys Block Strategies - Jucys 元素对称多项式块
严格单调（σ_b）、单调（h_b）与 atlantes（p_b）三种块都是 J_2..J_n 的对称多项式，
其特征值由去掉一个 0 之后的内容多重集给出。
"""

from abc import abstractmethod
from fractions import Fraction

from ..core.models import BlockFlavor, BlockSpec, Partition
from ..services.characters import complete_symmetric, elementary_symmetric, power_sum
from ..services.group_oracle import ClassAlgebraElement, GroupOracle
from ..services.partitions import jucys_contents
from .base import IBlockStrategy


class JucysBlockStrategy(IBlockStrategy):
    """J_2..J_n 的对称多项式块"""

    basis: str = "sigma"

    @abstractmethod
    def _evaluate(self, contents, b: int) -> Fraction:
        pass

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        return self._evaluate(jucys_contents(shape), block.b)

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return oracle.jucys_symmetric(n, self.basis, block.b)


class StrictMonotoneStrategy(JucysBlockStrategy):
    """B^<_b = σ_b(J)：第二个腿严格递增的 b 个对换"""

    flavor = BlockFlavor.STRICT_MONOTONE
    basis = "sigma"

    def _evaluate(self, contents, b: int) -> Fraction:
        return elementary_symmetric(contents, b)

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        if block.b > n - 1:
            return ClassAlgebraElement.zero(n)
        return oracle.jucys_symmetric(n, self.basis, block.b)


class MonotoneStrategy(JucysBlockStrategy):
    """B^≤_b = h_b(J)：第二个腿弱递增"""

    flavor = BlockFlavor.MONOTONE
    basis = "h"

    def _evaluate(self, contents, b: int) -> Fraction:
        return complete_symmetric(contents, b)


class AtlantesStrategy(JucysBlockStrategy):
    """B^×_b = p_b(J)：b 个对换共享同一个第二腿 y"""

    flavor = BlockFlavor.ATLANTES
    basis = "p"

    def _evaluate(self, contents, b: int) -> Fraction:
        return power_sum(contents, b)
