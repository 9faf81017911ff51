"""
Characters service
对称群不可约特征标（Murnaghan-Nakayama 规则）与幂和变量下的 Schur 多项式
"""

from fractions import Fraction
from functools import lru_cache
from math import prod
from typing import Dict, Iterator, List, Sequence, Tuple, Union

from ..core.exceptions import DomainException
from ..core.models import Partition
from .partitions import centralizer_size, class_size, dimension, partitions_of

Scalar = Union[int, Fraction]


def _remove_rim_hooks(parts: Tuple[int, ...], k: int) -> Iterator[Tuple[int, Tuple[int, ...]]]:
    """
    枚举从 parts 中去掉长度为 k 的边带（border strip）的所有方式。
    使用 beta 数：去掉一个 k-边带等价于把某个 beta 数减 k（目标位置未被占用）；
    符号为两者之间其它 beta 数个数的奇偶性。
    """
    length = len(parts)
    beta = [parts[i] + (length - 1 - i) for i in range(length)]
    occupied = set(beta)
    for position, value in enumerate(beta):
        target = value - k
        if target < 0 or target in occupied:
            continue
        height = sum(1 for other in beta if target < other < value)
        new_beta = sorted(beta[:position] + [target] + beta[position + 1:], reverse=True)
        new_parts = tuple(b - (length - 1 - i) for i, b in enumerate(new_beta))
        yield (-1 if height % 2 else 1), tuple(p for p in new_parts if p > 0)


@lru_cache(maxsize=None)
def _character(shape: Tuple[int, ...], cycle_type: Tuple[int, ...]) -> int:
    if not cycle_type:
        return 1 if not shape else 0
    first, rest = cycle_type[0], cycle_type[1:]
    return sum(sign * _character(smaller, rest) for sign, smaller in _remove_rim_hooks(shape, first))


def character(shape: Partition, cycle_type: Partition) -> int:
    """
    χ_λ(μ)：按 μ 的部件从大到小递归去掉边带。

    :param shape: 不可约表示 λ
    :param cycle_type: 共轭类 μ
    :return: 整数特征标值
    """
    if shape.size != cycle_type.size:
        raise DomainException(f"character needs |lambda| = |mu|, got {shape.size} and {cycle_type.size}")
    return _character(shape.parts, cycle_type.parts)


def character_table(n: int) -> Dict[Partition, Dict[Partition, int]]:
    classes = partitions_of(n)
    return {shape: {mu: character(shape, mu) for mu in classes} for shape in partitions_of(n)}


def schur_in_p(shape: Partition) -> Dict[Partition, Fraction]:
    """
    s_λ = Σ_μ χ_λ(μ) p_μ / Z_μ，以 {μ: 系数} 的形式返回（零系数省略）。
    """
    result: Dict[Partition, Fraction] = {}
    for mu in partitions_of(shape.size):
        value = character(shape, mu)
        if value:
            result[mu] = Fraction(value, centralizer_size(mu))
    return result


def schur_in_t(shape: Partition) -> Dict[Partition, Fraction]:
    """同一多项式在 t 坐标下（p_k = k t_k）：t_μ 的系数为 χ_λ(μ)∏μ_i / Z_μ。"""
    return {mu: coeff * prod(mu.parts) for mu, coeff in schur_in_p(shape).items()}


def evaluate_power_sums(polynomial: Dict[Partition, Fraction], values: Dict[int, Fraction]) -> Fraction:
    """把 p_k 替换为给定的有理数（缺省为 0）并求值。"""
    total = Fraction(0)
    for mu, coeff in polynomial.items():
        total += coeff * prod((Fraction(values.get(part, 0)) for part in mu.parts), start=Fraction(1))
    return total


def orthogonality_defect(n: int) -> List[Tuple[Partition, Partition, Fraction]]:
    """行正交关系 Σ_μ χ_λ(μ)χ_λ'(μ)/Z_μ = δ 的所有违例；正确时为空列表。"""
    classes = partitions_of(n)
    defects = []
    for first in classes:
        for second in classes:
            total = sum(Fraction(character(first, mu) * character(second, mu), centralizer_size(mu))
                        for mu in classes)
            expected = 1 if first == second else 0
            if total != expected:
                defects.append((first, second, total))
    return defects


def central_character(alpha: Partition, shape: Partition) -> Fraction:
    """类和 C_α 在 v_λ 上的特征值 |C_α|χ_λ(α)/dim λ。"""
    return Fraction(class_size(alpha) * character(shape, alpha), dimension(shape))


def elementary_symmetric(values: Sequence[Scalar], b: int) -> Fraction:
    """σ_b(values)，b 超出变量个数时为 0。"""
    table = [Fraction(1)] + [Fraction(0)] * b
    for value in values:
        for j in range(b, 0, -1):
            table[j] += table[j - 1] * value
    return table[b]


def complete_symmetric(values: Sequence[Scalar], b: int) -> Fraction:
    """h_b(values)"""
    table = [Fraction(1)] + [Fraction(0)] * b
    for value in values:
        for j in range(1, b + 1):
            table[j] += table[j - 1] * value
    return table[b]


def power_sum(values: Sequence[Scalar], b: int) -> Fraction:
    """p_b(values)；p_0 等于变量个数。"""
    return sum((Fraction(value) ** b for value in values), Fraction(0))
