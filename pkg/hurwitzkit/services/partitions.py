"""
Partitions service
分拆、杨图、内容（content）、中心化子与类大小、维数：其余模块的索引骨架
"""

from functools import lru_cache
from math import factorial, prod
from typing import Dict, Iterator, List, Tuple

from ..core.exceptions import DomainException
from ..core.models import Partition


def _generate(n: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if n == 0:
        yield ()
        return
    for first in range(min(n, largest), 0, -1):
        for rest in _generate(n - first, first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _partitions_tuple(n: int) -> Tuple[Partition, ...]:
    return tuple(Partition(parts) for parts in _generate(n, n))


def partitions_of(n: int) -> List[Partition]:
    """
    n 的全部分拆，按反字典序排列：(n), (n-1,1), ..., (1^n)。

    :param n: 非负整数
    :return: Partition 列表，n = 0 时为 [∅]
    """
    if n < 0:
        raise DomainException(f"cannot partition a negative integer: {n}")
    return list(_partitions_tuple(n))


def partitions_of_length(n: int, length: int) -> List[Partition]:
    return [p for p in partitions_of(n) if p.length == length]


def content_multiset(shape: Partition) -> List[int]:
    """盒子 (i, j) 的内容为 j - i；返回排序后的多重集。"""
    return sorted(j - i for i, j in shape.boxes())


def jucys_contents(shape: Partition) -> List[int]:
    """
    Jucys 元素 J_2..J_n 在 v_λ 上的特征值：去掉盒子 (1,1) 的那个 0。
    空分拆返回空列表。
    """
    contents = content_multiset(shape)
    if contents:
        contents.remove(0)
    return contents


def automorphism_count(mu: Partition) -> int:
    """|Aut μ| = ∏_k (m_k)!"""
    return prod(factorial(m) for m in mu.multiplicities().values())


def centralizer_size(mu: Partition) -> int:
    """Z_μ = ∏ μ_i · ∏_k (m_k)!"""
    return prod(mu.parts) * automorphism_count(mu)


def class_size(mu: Partition) -> int:
    return factorial(mu.size) // centralizer_size(mu)


def hook_lengths(shape: Partition) -> Dict[Tuple[int, int], int]:
    conjugate = shape.conjugate().parts
    return {
        (i, j): (shape.parts[i - 1] - j) + (conjugate[j - 1] - i) + 1
        for i, j in shape.boxes()
    }


def dimension(shape: Partition) -> int:
    """Hook-length formula: n! / ∏ hooks."""
    return factorial(shape.size) // prod(hook_lengths(shape).values())


def sign(mu: Partition) -> int:
    return -1 if (mu.size - mu.length) % 2 else 1


def orbifold_profile(n: int, r: int) -> Partition:
    """(r^{n/r})；r 不整除 n 时抛出 DomainException。"""
    if r < 1 or n % r:
        raise DomainException(f"orbifold profile needs r | n, got r={r}, n={n}")
    return Partition((r,) * (n // r))
