"""
Free Block Strategies - 自由块
自由单块 Σ_{ℓ(α)=n-b} C_α、带符号的自由群块与固定因子数 k 的自由群块。
"""

from fractions import Fraction
from typing import Dict

from ..core.models import BlockFlavor, BlockSpec, Partition
from ..services.characters import central_character
from ..services.group_oracle import ClassAlgebraElement, GroupOracle
from ..services.partitions import partitions_of_length
from .base import IBlockStrategy


def free_single_eigenvalue(shape: Partition, b: int) -> Fraction:
    n = shape.size
    if b > n - 1:
        return Fraction(0)
    return sum((central_character(alpha, shape) for alpha in partitions_of_length(n, n - b)), Fraction(0))


def free_products_eigenvalue(shape: Partition, b: int, k: int) -> Fraction:
    """k 个非平凡自由单块、总权重 b 的所有乘积之和在 v_λ 上的特征值。"""
    singles = {j: free_single_eigenvalue(shape, j) for j in range(1, b + 1)}
    layer: Dict[int, Fraction] = {0: Fraction(1)}
    for _ in range(k):
        following: Dict[int, Fraction] = {}
        for weight, value in layer.items():
            for step in range(1, b - weight + 1):
                following[weight + step] = following.get(weight + step, Fraction(0)) + value * singles[step]
        layer = following
    return layer.get(b, Fraction(0))


class FreeSingleStrategy(IBlockStrategy):
    """B^|_b：一个 ℓ = n - b 的任意置换"""

    flavor = BlockFlavor.FREE_SINGLE

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        return free_single_eigenvalue(shape, block.b)

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return oracle.free_single(n, block.b)


class FreeGroupStrategy(IBlockStrategy):
    """B^||_b = Σ_k (-1)^{k+b} Σ ∏ C_{α_i}，α_i 非平凡"""

    flavor = BlockFlavor.FREE_GROUP

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        if block.b == 0:
            return Fraction(1)
        return sum((free_products_eigenvalue(shape, block.b, k) * (-1) ** (k + block.b)
                    for k in range(1, block.b + 1)), Fraction(0))

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return oracle.free_group(n, block.b)


class FreeGroupFixedStrategy(IBlockStrategy):
    """固定 k 个非平凡因子、不带符号"""

    flavor = BlockFlavor.FREE_GROUP_FIXED

    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        self._check(block)
        return free_products_eigenvalue(shape, block.b, block.groups)

    def oracle_element(self, block: BlockSpec, n: int, oracle: GroupOracle) -> ClassAlgebraElement:
        self._check(block)
        return oracle.free_group_fixed(n, block.b, block.groups)
