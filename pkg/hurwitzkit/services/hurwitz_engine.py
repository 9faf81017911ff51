"""
Hurwitz Engine Service
特征标 / 特征值路径：块特征值、Hurwitz 数、超几何 tau 系数、连通数、
拟多项式性检查、ELSV 型公式中的 K_l 系数，以及 Lascoux-Thibon 与 Newton 恒等式检查
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb, factorial, prod
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from ..core.exceptions import DomainException
from ..core.models import (
    AutomorphismMode, BlockFlavor, BlockSpec, HurwitzProblem, Partition, VerificationReport
)
from ..utils.logger import logger
from .characters import character, complete_symmetric, elementary_symmetric, power_sum
from .partitions import (
    automorphism_count, centralizer_size, content_multiset, jucys_contents, orbifold_profile,
    partitions_of, partitions_of_length
)
from .series_ring import RationalRing, TruncatedSeries, univariate

FAMILIES = ("simple", "monotone", "strictly_monotone", "atlantes")


@dataclass
class ConnectedTable:
    """
    连通 Hurwitz 数表
    键为 (g, μ)；截断范围之外的查询抛出 DomainException。
    """
    family: str
    orbifold: int
    power: int
    max_degree: int
    max_count: int
    entries: Dict[Tuple[int, Partition], Fraction] = field(default_factory=dict)

    def value(self, g: int, mu: Partition) -> Fraction:
        if mu.size > self.max_degree:
            raise DomainException(f"|mu| = {mu.size} exceeds the series truncation {self.max_degree}")
        count = HurwitzEngine.block_count(self.family, g, mu, self.orbifold, self.power)
        if count is None:
            return Fraction(0)
        if count > self.max_count:
            raise DomainException(
                f"(g={g}, mu={mu}) needs {count} blocks but the series keeps only {self.max_count}")
        return self.entries.get((g, mu), Fraction(0))

    def rows(self) -> List[Dict[str, Any]]:
        ordered = sorted(self.entries.items(), key=lambda item: (item[0][0], item[0][1].size, item[0][1].parts))
        return [
            {"family": self.family, "g": g, "mu": mu.to_json(), "value": str(value)}
            for (g, mu), value in ordered
        ]


class HurwitzEngine:
    """
    特征标公式引擎
    h = (1/(Z_μ Z_ν)) Σ_λ χ_λ(μ) χ_λ(ν) ∏_i egv_λ(block_i)
    块特征值由注入的块策略计算。
    """

    def __init__(self, strategies: Optional[Dict[BlockFlavor, Any]] = None):
        if strategies is None:
            from ..strategies import default_block_strategies
            strategies = default_block_strategies()
        self.strategies = strategies

    # -- 特征值与 Hurwitz 数 ------------------------------------------------

    def block_eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        strategy = self.strategies.get(block.flavor)
        if strategy is None:
            raise DomainException(f"no eigenvalue strategy for block flavor {block.flavor.value}")
        return strategy.eigenvalue(block, shape)

    def hurwitz_number(self, problem: HurwitzProblem) -> Fraction:
        """
        非连通 Hurwitz 数。

        :param problem: (μ, ν, 块向量, 自同构模式)
        :return: 精确有理数；任何特征值有极点时抛出 PoleException
        """
        mu, nu = problem.mu, problem.nu
        total = Fraction(0)
        for shape in partitions_of(problem.n):
            chi = character(shape, mu) * character(shape, nu)
            if not chi:
                continue
            weight = Fraction(chi)
            for block in problem.blocks:
                weight *= self.block_eigenvalue(block, shape)
                if not weight:
                    break
            total += weight
        if problem.mode == AutomorphismMode.POINTWISE:
            return total / (prod(mu.parts) * prod(nu.parts))
        return total / (centralizer_size(mu) * centralizer_size(nu))

    def hurwitz(self, mu: Partition, nu: Partition, blocks: Iterable[BlockSpec] = (),
                mode: AutomorphismMode = AutomorphismMode.FULL) -> Fraction:
        return self.hurwitz_number(HurwitzProblem(mu, nu, tuple(blocks), mode))

    # -- 超几何 tau 函数 ----------------------------------------------------

    def hypergeometric_coefficient(self, n: int, wpows: Sequence[int], zpows: Sequence[int],
                                   mu: Partition, nu: Partition) -> Fraction:
        """
        τ = Σ_λ q^{|λ|} s_λ(t) s_λ(t̃) ∏_盒子 ∏_a(1 + c·w_a) / ∏_b(1 - c·z_b) 中
        q^n ∏w_a^{c_a} ∏z_b^{d_b} p_μ(t) p_ν(t̃) 的系数。
        每个 λ 的内容乘积作为 w、z 的截断级数展开后读取系数。
        """
        if mu.size != n or nu.size != n:
            raise DomainException(f"hypergeometric coefficient needs |mu| = |nu| = {n}")
        wpows, zpows = list(wpows), list(zpows)
        if any(c < 0 for c in wpows + zpows):
            raise DomainException("w and z exponents must be non-negative")
        variables = [f"w{a + 1}" for a in range(len(wpows))] + [f"z{b + 1}" for b in range(len(zpows))]
        targets = wpows + zpows
        width = len(variables)
        bounds = [(tuple(1 if j == i else 0 for j in range(width)), targets[i]) for i in range(width)]
        ring = RationalRing()
        base = TruncatedSeries(ring, variables, (1,) * width, sum(targets), bounds=bounds)
        target = tuple(targets)

        total = Fraction(0)
        for shape in partitions_of(n):
            chi = character(shape, mu) * character(shape, nu)
            if not chi:
                continue
            factor = base.one()
            for c in content_multiset(shape):
                for a in range(len(wpows)):
                    factor = factor * (base.one() + base.variable(variables[a], c))
                for b in range(len(zpows)):
                    name = variables[len(wpows) + b]
                    geometric = base.like({
                        tuple(k if j == len(wpows) + b else 0 for j in range(width)): Fraction(c) ** k
                        for k in range(zpows[b] + 1)
                    })
                    factor = factor * geometric
            total += chi * factor.coefficient(target)
        return total / (centralizer_size(mu) * centralizer_size(nu))

    # -- 生成函数与连通数 ---------------------------------------------------

    @staticmethod
    def family_block(family: str, power: int = 2) -> BlockSpec:
        if family == "simple":
            return BlockSpec.completed_cycle(2)
        if family == "atlantes":
            return BlockSpec.atlantes(power)
        raise DomainException(f"family {family!r} has no single repeated block")

    @staticmethod
    def exponential_family(family: str) -> bool:
        """simple 与 atlantes 的 tau 函数是 exp(β·块)，β^m 带 1/m!。"""
        return family in ("simple", "atlantes")

    @staticmethod
    def block_count(family: str, g: int, mu: Partition, orbifold: int = 1, power: int = 2) -> Optional[int]:
        """由 Riemann-Hurwitz 关系反推块数；不可能时返回 None。"""
        if family not in FAMILIES:
            raise DomainException(f"unknown family {family!r}; expected one of {FAMILIES}")
        if mu.size % orbifold:
            return None
        weight = 2 * g - 2 + mu.length + mu.size // orbifold
        if weight < 0:
            return None
        unit = power if family == "atlantes" else 1
        if weight % unit:
            return None
        return weight // unit

    def _family_blocks(self, family: str, count: int, power: int) -> Tuple[BlockSpec, ...]:
        if family == "monotone":
            return (BlockSpec.monotone(count),)
        if family == "strictly_monotone":
            return (BlockSpec.strict_monotone(count),)
        return (self.family_block(family, power),) * count

    def partition_function(self, family: str, max_degree: int, max_count: int,
                           orbifold: int = 1, power: int = 2) -> TruncatedSeries:
        """
        非连通生成函数 Z = 1 + Σ h•_{μ,(r^{n/r}),B_m} p_μ β^m（指数族带 1/m!），
        p_k 的权重为 k，β 的次数不超过 max_count。
        """
        if family not in FAMILIES:
            raise DomainException(f"unknown family {family!r}; expected one of {FAMILIES}")
        variables = [f"p{k}" for k in range(1, max_degree + 1)] + ["beta"]
        weights = list(range(1, max_degree + 1)) + [0]
        beta_only = tuple([0] * max_degree + [1])
        ring = RationalRing()
        terms: Dict[Tuple[int, ...], Fraction] = {tuple([0] * (max_degree + 1)): Fraction(1)}

        for n in range(1, max_degree + 1):
            if n % orbifold:
                continue
            nu = orbifold_profile(n, orbifold)
            for mu in partitions_of(n):
                exponents = [0] * (max_degree + 1)
                for part in mu.parts:
                    exponents[part - 1] += 1
                for count in range(max_count + 1):
                    value = self.hurwitz(mu, nu, self._family_blocks(family, count, power))
                    if not value:
                        continue
                    if self.exponential_family(family):
                        value /= factorial(count)
                    exponents[-1] = count
                    terms[tuple(exponents)] = value
        logger.debug(f"partition_function({family}, N={max_degree}, B={max_count}): {len(terms)} terms")
        return TruncatedSeries(ring, variables, weights, max_degree, terms, bounds=[(beta_only, max_count)])

    def connected_numbers(self, family: str, max_degree: int, max_count: int,
                          orbifold: int = 1, power: int = 2) -> ConnectedTable:
        """对 partition_function 取形式对数并按亏格读出连通数。"""
        free_energy = self.partition_function(family, max_degree, max_count, orbifold, power).log()
        table = ConnectedTable(family, orbifold, power, max_degree, max_count)
        for monomial, value in free_energy.items():
            count = monomial[-1]
            parts = []
            for k, multiplicity in enumerate(monomial[:-1], start=1):
                parts.extend([k] * multiplicity)
            mu = Partition.of(*parts)
            unit = power if family == "atlantes" else 1
            twice_genus = count * unit + 2 - mu.length - mu.size // orbifold
            if twice_genus < 0 or twice_genus % 2:
                continue
            if self.exponential_family(family):
                value = value * factorial(count)
            table.entries[(twice_genus // 2, mu)] = value
        return table

    def connected_number(self, family: str, g: int, mu: Partition, orbifold: int = 1, power: int = 2) -> Fraction:
        count = self.block_count(family, g, mu, orbifold, power)
        if count is None:
            return Fraction(0)
        return self.connected_numbers(family, mu.size, count, orbifold, power).value(g, mu)

    def hurwitz_table(self, flavor: str, genera: Iterable[int], degrees: Iterable[int],
                      orbifold: int = 1) -> List[Dict[str, Any]]:
        """
        非连通数表，键为 (flavor, g, μ)，ν = (r^{n/r})；块参数 b 由亏格决定。
        """
        builders = {
            "strict_monotone": BlockSpec.strict_monotone,
            "monotone": BlockSpec.monotone,
            "atlantes": BlockSpec.atlantes,
            "free_single": BlockSpec.free_single,
            "free_group": BlockSpec.free_group,
            "simple": None,
        }
        if flavor not in builders:
            raise DomainException(f"tables support the flavors {sorted(builders)}, got {flavor!r}")
        rows = []
        for g in genera:
            for n in degrees:
                if n % orbifold:
                    continue
                nu = orbifold_profile(n, orbifold)
                for mu in partitions_of(n):
                    b = 2 * g - 2 + mu.length + nu.length
                    if b < 0:
                        continue
                    if builders[flavor] is None:
                        blocks = (BlockSpec.completed_cycle(2),) * b
                    else:
                        blocks = (builders[flavor](b),)
                    value = self.hurwitz(mu, nu, blocks)
                    rows.append({"flavor": flavor, "g": g, "mu": mu.to_json(), "b": b, "value": str(value)})
        return rows

    def hypermap_count(self, mu: Partition, r: int, b: int) -> Fraction:
        """
        三点覆盖计数：ν = (r^{n/r})，第三个分歧点的型 κ 满足 ℓ(κ) = n - b。
        """
        n = mu.size
        nu = orbifold_profile(n, r)
        if b > n - 1:
            return Fraction(0)
        return sum((self.hurwitz(mu, nu, (BlockSpec.class_sum(kappa),))
                    for kappa in partitions_of_length(n, n - b)), Fraction(0))

    # -- 拟多项式性 ---------------------------------------------------------

    def quasipolynomiality_check(self, g: int, ell: int, degree: Optional[int] = None,
                                 max_part: int = 5) -> VerificationReport:
        """
        在网格 {1..max_part}^ℓ 上计算 |Aut μ|·h^≤_{g,μ}/∏binom(2μ_i, μ_i)，
        检查每个变量方向上的 (D+1) 阶有限差分为零。
        不稳定情形 (2g-2+ℓ ≤ 0) 额外乘以 (2n)(2n-1)（ℓ=1）或 2n（ℓ=2），次数为 0。
        """
        if g < 0 or ell < 1:
            raise DomainException(f"need g >= 0 and l >= 1, got g={g}, l={ell}")
        unstable = 2 * g - 2 + ell <= 0
        if degree is None:
            degree = 0 if unstable else 3 * g - 3 + ell
        if max_part < degree + 2:
            raise DomainException(
                f"degree bound {degree} needs at least {degree + 2} sample points per variable, got {max_part}")

        max_degree = ell * max_part
        max_count = 2 * g - 2 + ell + max_degree
        table = self.connected_numbers("monotone", max_degree, max_count)

        def quantity(vector: Tuple[int, ...]) -> Fraction:
            mu = Partition.of(*vector)
            value = table.value(g, mu) * automorphism_count(mu)
            value /= prod(comb(2 * m, m) for m in vector)
            if unstable:
                n = mu.size
                value *= (2 * n) * (2 * n - 1) if ell == 1 else 2 * n
            return value

        grid = list(product(range(1, max_part + 1), repeat=ell))
        values = {vector: quantity(vector) for vector in grid}
        report = VerificationReport(
            subject="quasipoly",
            params={"g": g, "l": ell, "degree": degree, "max_part": max_part},
            order=max_degree,
            details={
                "unstable_correction": unstable,
                "values": {",".join(map(str, v)): str(values[v]) for v in grid},
            },
        )
        for axis in range(ell):
            for vector in grid:
                if vector[axis] != 1:
                    continue
                line = [values[vector[:axis] + (k,) + vector[axis + 1:]] for k in range(1, max_part + 1)]
                differences = line
                for _ in range(degree + 1):
                    differences = [b - a for a, b in zip(differences, differences[1:])]
                for offset, difference in enumerate(differences):
                    report.checked += 1
                    if difference:
                        report.fail({"axis": axis, "start": list(vector), "offset": offset,
                                     "difference": str(difference)})
        return report


# ---------------------------------------------------------------------------
# 级数恒等式
# ---------------------------------------------------------------------------

def double_factorial_series(order: int) -> TruncatedSeries:
    """Σ_{k ≤ order} (2k+1)!! U^k"""
    coefficients = {}
    value = 1
    for k in range(order + 1):
        coefficients[k] = value
        value *= 2 * k + 3
    return univariate(RationalRing(), "U", order, coefficients)


def elsv_k_coefficients(order: int) -> List[Fraction]:
    """
    exp(-Σ K_l U^l) = Σ (2k+1)!! U^k 中的 K_1..K_L。
    """
    if order < 1:
        raise DomainException(f"need L >= 1, got {order}")
    logarithm = double_factorial_series(order).log()
    return [-logarithm.coefficient((l,)) for l in range(1, order + 1)]


def elsv_reexponentiate(coefficients: Sequence[Fraction], order: int) -> bool:
    """检查 exp(-Σ K_l U^l) 截断到 U^order 是否还原 (2k+1)!!。"""
    exponent = univariate(RationalRing(), "U", order,
                          {l: -Fraction(k) for l, k in enumerate(coefficients[:order], start=1)})
    return exponent.exp() == double_factorial_series(order)


def _z_series(order: int, coefficients: Dict[int, Fraction]) -> TruncatedSeries:
    return univariate(RationalRing(), "z", order, coefficients)


def lascoux_thibon_sides(shape: Partition, order: int) -> Tuple[TruncatedSeries, TruncatedSeries]:
    """
    左边：Σ_{k≥1} z^k p_k(cr_2..cr_n)/k!
    右边：Ẽ_0(z)/ζ(z) - |λ|，Ẽ_0(z) = Σ_r z^r/r! Σ_i[(λ_i-i+1/2)^r - (-i+1/2)^r]，ζ(z) = e^{z/2} - e^{-z/2}
    """
    if order < 1:
        raise DomainException(f"order must be >= 1, got {order}")
    contents = jucys_contents(shape)
    left = _z_series(order, {k: power_sum(contents, k) / factorial(k) for k in range(1, order + 1)})

    half = Fraction(1, 2)
    # Ẽ_0(z)/z 与 ζ(z)/z 的系数
    energy = {}
    for r in range(1, order + 2):
        total = sum(((part - i + half) ** r - (-i + half) ** r
                     for i, part in enumerate(shape.parts, start=1)), Fraction(0))
        energy[r - 1] = total / factorial(r)
    zeta = {2 * j: Fraction(1, 4 ** j * factorial(2 * j + 1)) for j in range(order // 2 + 1)}
    zeta_inverse = (-_z_series(order, zeta).log()).exp()
    right = _z_series(order, energy) * zeta_inverse - shape.size
    return left, right


def lascoux_thibon_check(shape: Partition, order: int) -> bool:
    left, right = lascoux_thibon_sides(shape, order)
    return left == right


def newton_check(shape: Partition, order: int) -> bool:
    """Σ_b z^b h_b(cr) · Σ_b (-z)^b σ_b(cr) = 1，截断到 z^order。"""
    contents = jucys_contents(shape)
    complete = _z_series(order, {b: complete_symmetric(contents, b) for b in range(order + 1)})
    elementary = _z_series(order, {b: (-1) ** b * elementary_symmetric(contents, b) for b in range(order + 1)})
    return (complete * elementary) == complete.one()
