"""
Group Oracle Service
暴力基准：显式置换、类代数元素、Jucys-Murphy 展开，以及对每种块直接计数受约束分解
"""

from collections import defaultdict
from fractions import Fraction
from functools import lru_cache
from itertools import permutations
from math import comb, factorial
from typing import Any, Dict, Iterable, List, Optional, Tuple, Union

from sympy import Matrix, Rational

from ..core.exceptions import DomainException, PoleException, ResourceException
from ..core.models import AutomorphismMode, BlockFlavor, BlockSpec, Partition
from ..utils.logger import logger
from .partitions import automorphism_count, partitions_of, partitions_of_length

Permutation = Tuple[int, ...]
Number = Union[int, Fraction]


# ---------------------------------------------------------------------------
# 置换
# ---------------------------------------------------------------------------

def identity_permutation(n: int) -> Permutation:
    return tuple(range(n))


def compose(g: Permutation, h: Permutation) -> Permutation:
    """(g∘h)(i) = g(h(i))"""
    return tuple(g[i] for i in h)


def inverse(g: Permutation) -> Permutation:
    result = [0] * len(g)
    for i, image in enumerate(g):
        result[image] = i
    return tuple(result)


def cycle_type(g: Permutation) -> Partition:
    seen = [False] * len(g)
    lengths = []
    for start in range(len(g)):
        if seen[start]:
            continue
        length, i = 0, start
        while not seen[i]:
            seen[i] = True
            i = g[i]
            length += 1
        lengths.append(length)
    return Partition.of(*lengths)


def representative(kappa: Partition) -> Permutation:
    """由连续区间上的轮换组成的代表元。"""
    images = []
    start = 0
    for part in kappa.parts:
        images.extend(start + (i + 1) % part for i in range(part))
        start += part
    return tuple(images)


def _transpose_left(g: Permutation, x: int, y: int) -> Permutation:
    """(x y)∘g，x、y 为 0 起始的下标。"""
    return tuple(y if v == x else x if v == y else v for v in g)


@lru_cache(maxsize=None)
def permutations_by_class(n: int) -> Dict[Partition, Tuple[Permutation, ...]]:
    buckets: Dict[Partition, List[Permutation]] = defaultdict(list)
    for g in permutations(range(n)):
        buckets[cycle_type(g)].append(g)
    logger.debug(f"enumerated S_{n}: {sum(len(v) for v in buckets.values())} permutations")
    return {kappa: tuple(perms) for kappa, perms in buckets.items()}


@lru_cache(maxsize=None)
def structure_constants(alpha: Partition, beta: Partition) -> Dict[Partition, int]:
    """
    C_α C_β = Σ_κ c^κ C_κ；c^κ = #{g ∈ C_α : g^{-1}σ_κ ∈ C_β}，σ_κ 为固定代表元。
    """
    n = alpha.size
    classes = permutations_by_class(n)
    result: Dict[Partition, int] = {}
    for kappa in partitions_of(n):
        target = representative(kappa)
        count = sum(1 for g in classes[alpha] if cycle_type(compose(inverse(g), target)) == beta)
        if count:
            result[kappa] = count
    return result


# ---------------------------------------------------------------------------
# 类代数
# ---------------------------------------------------------------------------

class ClassAlgebraElement:
    """
    群代数中心元素：共轭类和 C_α 的有理线性组合。
    所有键都是同一个 n 的分拆；零系数不存储。
    """

    def __init__(self, n: int, coefficients: Optional[Dict[Partition, Number]] = None):
        self.n = n
        self.coefficients: Dict[Partition, Fraction] = {}
        for alpha, value in (coefficients or {}).items():
            if alpha.size != n:
                raise DomainException(f"class {alpha} does not belong to S_{n}")
            if value:
                self.coefficients[alpha] = Fraction(value)

    @classmethod
    def zero(cls, n: int) -> "ClassAlgebraElement":
        return cls(n)

    @classmethod
    def identity(cls, n: int) -> "ClassAlgebraElement":
        return cls(n, {Partition.one(n): 1})

    @classmethod
    def class_sum(cls, alpha: Partition) -> "ClassAlgebraElement":
        return cls(alpha.size, {alpha: 1})

    def coefficient(self, alpha: Partition) -> Fraction:
        return self.coefficients.get(alpha, Fraction(0))

    def identity_coefficient(self) -> Fraction:
        return self.coefficient(Partition.one(self.n))

    def _check(self, other: "ClassAlgebraElement"):
        if self.n != other.n:
            raise DomainException(f"class algebra elements live in S_{self.n} and S_{other.n}")

    def __add__(self, other: "ClassAlgebraElement") -> "ClassAlgebraElement":
        self._check(other)
        merged = dict(self.coefficients)
        for alpha, value in other.coefficients.items():
            merged[alpha] = merged.get(alpha, 0) + value
        return ClassAlgebraElement(self.n, merged)

    def __neg__(self) -> "ClassAlgebraElement":
        return self.scale(-1)

    def __sub__(self, other: "ClassAlgebraElement") -> "ClassAlgebraElement":
        return self + (-other)

    def scale(self, factor: Number) -> "ClassAlgebraElement":
        return ClassAlgebraElement(self.n, {a: v * factor for a, v in self.coefficients.items()})

    def __mul__(self, other: Any) -> "ClassAlgebraElement":
        if isinstance(other, ClassAlgebraElement):
            return class_product(self, other)
        return self.scale(other)

    def __rmul__(self, other: Number) -> "ClassAlgebraElement":
        return self.scale(other)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, ClassAlgebraElement):
            return NotImplemented
        return self.n == other.n and self.coefficients == other.coefficients

    def __repr__(self) -> str:
        terms = " + ".join(f"{v}*C{alpha}" for alpha, v in self.sorted_items())
        return f"ClassAlgebraElement(S_{self.n}: {terms or '0'})"

    def sorted_items(self) -> List[Tuple[Partition, Fraction]]:
        order = {alpha: i for i, alpha in enumerate(partitions_of(self.n))}
        return sorted(self.coefficients.items(), key=lambda item: order[item[0]])

    def to_json(self) -> Dict[str, str]:
        return {alpha.label: str(value) for alpha, value in self.sorted_items()}


def class_product(a: ClassAlgebraElement, b: ClassAlgebraElement) -> ClassAlgebraElement:
    """类代数中的卷积乘积，使用按 n 缓存的结构常数。"""
    a._check(b)
    result: Dict[Partition, Fraction] = defaultdict(Fraction)
    for alpha, x in a.coefficients.items():
        for beta, y in b.coefficients.items():
            for kappa, c in structure_constants(alpha, beta).items():
                result[kappa] += x * y * c
    return ClassAlgebraElement(a.n, result)


GroupAlgebraElement = Dict[Permutation, Number]


def is_central(n: int, element: GroupAlgebraElement) -> bool:
    """群代数元素是否在每个共轭类上取常值。"""
    for kappa, perms in permutations_by_class(n).items():
        values = {element.get(g, 0) for g in perms}
        if len(values) > 1:
            return False
    return True


def project_to_classes(n: int, element: GroupAlgebraElement) -> ClassAlgebraElement:
    """
    把中心的群代数元素写成类和的组合；非中心元素抛出 DomainException。
    """
    if not is_central(n, element):
        raise DomainException("group algebra element is not central")
    return ClassAlgebraElement(n, {
        kappa: element.get(representative(kappa), 0) for kappa in partitions_of(n)
    })


def multiply_by_jucys(element: GroupAlgebraElement, y: int) -> GroupAlgebraElement:
    """左乘 J_y = (1 y) + ... + (y-1 y)，y 为 1 起始。"""
    result: Dict[Permutation, Number] = defaultdict(int)
    for g, value in element.items():
        for x in range(y - 1):
            result[_transpose_left(g, x, y - 1)] += value
    return {g: v for g, v in result.items() if v}


def _add_into(target: Dict[Permutation, Number], source: GroupAlgebraElement, factor: Number = 1):
    for g, value in source.items():
        target[g] = target.get(g, 0) + factor * value


# ---------------------------------------------------------------------------
# Oracle
# ---------------------------------------------------------------------------

class GroupOracle:
    """
    暴力枚举基准
    - jucys_symmetric: 在群代数中直接展开 σ_b / h_b / p_b(J_2..J_n)
    - class_product: 类代数卷积
    - brute_hurwitz: 单位元系数 [id](C_μ C_ν ∏ 块) / n!
    块元素由注入的块策略构造（策略模式）。
    """

    BASES = ("sigma", "h", "p")

    def __init__(self, strategies: Optional[Dict[BlockFlavor, Any]] = None,
                 enumeration_limit: int = 7, force: bool = False):
        if strategies is None:
            from ..strategies import default_block_strategies
            strategies = default_block_strategies()
        self.strategies = strategies
        self.enumeration_limit = enumeration_limit
        self.force = force
        self._block_cache: Dict[Tuple[BlockSpec, int], ClassAlgebraElement] = {}

    @classmethod
    def from_config(cls, config: Dict[str, Any], strategies: Optional[Dict[BlockFlavor, Any]] = None,
                    force: Optional[bool] = None) -> "GroupOracle":
        oracle_config = config.get("oracle", {})
        return cls(
            strategies=strategies,
            enumeration_limit=oracle_config.get("enumeration_limit", 7),
            force=oracle_config.get("force", False) if force is None else force,
        )

    def allows(self, n: int) -> bool:
        return self.force or n <= self.enumeration_limit

    def guard(self, n: int):
        if not self.allows(n):
            raise ResourceException(
                f"n = {n} exceeds the enumeration limit {self.enumeration_limit}; pass --force to override")

    # -- Jucys 展开 ---------------------------------------------------------

    def jucys_group_element(self, n: int, basis: str, b: int) -> GroupAlgebraElement:
        """
        σ_b、h_b 或 p_b 在 J_2..J_n 上的群代数展开。
        按最后一个变量 J_y 组织单项式：σ 与 h 用标准的逐变量递推，p 直接求 Σ_y J_y^b。
        """
        self.guard(n)
        if basis not in self.BASES:
            raise DomainException(f"unknown symmetric basis {basis!r}; expected one of {self.BASES}")
        if b < 0:
            raise DomainException(f"degree must be non-negative, got {b}")
        identity = {identity_permutation(n): 1}

        if basis == "p":
            total: Dict[Permutation, Number] = {}
            for y in range(2, n + 1):
                power: GroupAlgebraElement = dict(identity)
                for _ in range(b):
                    power = multiply_by_jucys(power, y)
                _add_into(total, power)
            return {g: v for g, v in total.items() if v}

        # tables[j] = e_j 或 h_j 在已处理变量上的展开
        tables: List[GroupAlgebraElement] = [dict(identity)] + [{} for _ in range(b)]
        for y in range(2, n + 1):
            if basis == "sigma":
                for j in range(b, 0, -1):
                    updated = dict(tables[j])
                    _add_into(updated, multiply_by_jucys(tables[j - 1], y))
                    tables[j] = updated
            else:
                for j in range(1, b + 1):
                    updated = dict(tables[j])
                    _add_into(updated, multiply_by_jucys(tables[j - 1], y))
                    tables[j] = updated
        return {g: v for g, v in tables[b].items() if v}

    def jucys_symmetric(self, n: int, basis: str, b: int) -> ClassAlgebraElement:
        if basis == "sigma" and b > n - 1:
            raise DomainException(f"sigma_{b} of {n - 1} Jucys elements needs b <= {n - 1}")
        element = self.jucys_group_element(n, basis, b)
        result = project_to_classes(n, element)
        logger.debug(f"jucys_symmetric(n={n}, {basis}, b={b}) -> {len(result.coefficients)} classes")
        return result

    # -- 自由块 -------------------------------------------------------------

    @staticmethod
    def free_single(n: int, b: int) -> ClassAlgebraElement:
        """Σ_{ℓ(α)=n-b} C_α"""
        if b > n - 1:
            return ClassAlgebraElement.zero(n)
        return ClassAlgebraElement(n, {alpha: 1 for alpha in partitions_of_length(n, n - b)})

    def free_group_fixed(self, n: int, b: int, k: int) -> ClassAlgebraElement:
        """
        Σ ∏_{i=1..k} C_{α_i}，α_i 非平凡且 Σ(n - ℓ(α_i)) = b（不带符号）。
        """
        self.guard(n)
        # layer[d] = 所有 j 个非平凡因子、总权重 d 的乘积之和
        layer = {0: ClassAlgebraElement.identity(n)}
        for _ in range(k):
            following: Dict[int, ClassAlgebraElement] = {}
            for weight, element in layer.items():
                for step in range(1, b - weight + 1):
                    factor = self.free_single(n, step)
                    if not factor.coefficients:
                        continue
                    product = element * factor
                    following[weight + step] = following.get(weight + step, ClassAlgebraElement.zero(n)) + product
            layer = following
        return layer.get(b, ClassAlgebraElement.zero(n))

    def free_group(self, n: int, b: int) -> ClassAlgebraElement:
        """Σ_k (-1)^{k+b} free_group_fixed(b, k)；k = 0 只在 b = 0 时出现。"""
        if b == 0:
            return ClassAlgebraElement.identity(n)
        total = ClassAlgebraElement.zero(n)
        for k in range(1, b + 1):
            total = total + self.free_group_fixed(n, b, k).scale((-1) ** (k + b))
        return total

    # -- 变形块 -------------------------------------------------------------

    def completed_cycle(self, n: int, r: int) -> ClassAlgebraElement:
        """
        (1/r!)[f(0)·1 + Σ_y f(J_y)]，f(c) = (c+1/2)^r - (c-1/2)^r。
        """
        coefficients = completed_cycle_polynomial(r)
        total = ClassAlgebraElement.identity(n).scale(coefficients[0])
        for j, value in enumerate(coefficients):
            if value:
                total = total + self.jucys_symmetric(n, "p", j).scale(value)
        return total.scale(Fraction(1, factorial(r)))

    def hyper_w(self, n: int, w: Fraction) -> ClassAlgebraElement:
        """∏_y (1 + w J_y) = Σ_b w^b σ_b(J)"""
        total = ClassAlgebraElement.zero(n)
        for b in range(n):
            total = total + self.jucys_symmetric(n, "sigma", b).scale(Fraction(w) ** b)
        return total

    def hyper_z(self, n: int, z: Fraction) -> ClassAlgebraElement:
        """
        ∏_y (1 - z J_y)^{-1}：在类代数中求解 X·Y = 1。
        X 不可逆（某个 1 - c·z = 0）时抛出 PoleException。
        """
        product = self.hyper_w(n, -Fraction(z))
        return self.invert(product)

    def invert(self, element: ClassAlgebraElement) -> ClassAlgebraElement:
        n = element.n
        classes = partitions_of(n)
        index = {kappa: i for i, kappa in enumerate(classes)}
        rows = [[Rational(0)] * len(classes) for _ in classes]
        for beta in classes:
            for alpha, x in element.coefficients.items():
                for kappa, c in structure_constants(alpha, beta).items():
                    rows[index[kappa]][index[beta]] += Rational(x.numerator, x.denominator) * c
        matrix = Matrix(rows)
        if matrix.rank() < len(classes):
            raise PoleException("class algebra element is not invertible: some factor 1 - c*z vanishes")
        rhs = Matrix([1 if kappa == Partition.one(n) else 0 for kappa in classes])
        solution = matrix.LUsolve(rhs)
        return ClassAlgebraElement(n, {
            kappa: Fraction(int(solution[index[kappa]].p), int(solution[index[kappa]].q)) for kappa in classes
        })

    # -- Hurwitz 计数 -------------------------------------------------------

    def block_element(self, block: BlockSpec, n: int) -> ClassAlgebraElement:
        key = (block, n)
        if key not in self._block_cache:
            strategy = self.strategies.get(block.flavor)
            if strategy is None:
                raise DomainException(f"no oracle strategy for block flavor {block.flavor.value}")
            self._block_cache[key] = strategy.oracle_element(block, n, self)
        return self._block_cache[key]

    def brute_hurwitz(self, mu: Partition, nu: Partition, blocks: Iterable[BlockSpec],
                      mode: AutomorphismMode = AutomorphismMode.FULL) -> Fraction:
        """
        (1/n!)·#{(g ∈ C_μ, h ∈ C_ν, 块因子) : 乘积为单位元}。

        :param mu: 0 上方的分歧型
        :param nu: ∞ 上方的分歧型
        :param blocks: 块向量
        :param mode: 自同构计数模式
        :return: 精确有理数
        """
        if mu.size != nu.size:
            raise DomainException(f"|mu| = {mu.size} differs from |nu| = {nu.size}")
        n = mu.size
        self.guard(n)
        if n == 0:
            return Fraction(1)
        product = ClassAlgebraElement.class_sum(mu) * ClassAlgebraElement.class_sum(nu)
        for block in blocks:
            if not product.coefficients:
                break
            product = product * self.block_element(block, n)
        value = product.identity_coefficient() / factorial(n)
        if mode == AutomorphismMode.POINTWISE:
            value *= automorphism_count(mu) * automorphism_count(nu)
        return value


def completed_cycle_polynomial(r: int) -> List[Fraction]:
    """f(c) = (c+1/2)^r - (c-1/2)^r 的系数 [f_0, ..., f_{r-1}]。"""
    half = Fraction(1, 2)
    coefficients = []
    for j in range(r):
        if (r - j) % 2:
            coefficients.append(2 * comb(r, j) * half ** (r - j))
        else:
            coefficients.append(Fraction(0))
    return coefficients
