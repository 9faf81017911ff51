"""
Boson Constraints Service
t 变量上的玻色算子：流模 Ĵ_n、二次 / 三次算子 L̂_m 与 M̂_m、Ŷ 构造器、
约束算子 R̂_n、割接算子，以及对截断 τ_mm 的验证。

约定：Ĵ_n = ∂/∂t_n (n > 0)，Ĵ_{-n} = n·t_n (n > 0)，Ĵ_0 = 0；[Ĵ_n, Ĵ_{-n}] = n。
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import comb
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

from sympy import Matrix, Rational
from sympy.functions.combinatorial.numbers import stirling

from ..core.exceptions import DomainException, PoleException
from ..core.models import Partition, VerificationReport
from ..utils.logger import logger
from .characters import evaluate_power_sums, schur_in_p, schur_in_t
from .partitions import content_multiset, partitions_of
from .series_ring import ICoeffRing, RationalRing, TruncatedSeries, to_fraction

Modes = Tuple[int, ...]

MAX_Y_DEGREE = 3


def _canonical(modes: Iterable[int]) -> Optional[Modes]:
    """正规序：负模在前；同号的模彼此交换，排序得到唯一代表。含零模返回 None。"""
    modes = list(modes)
    if 0 in modes:
        return None
    return tuple(sorted(m for m in modes if m < 0)) + tuple(sorted(m for m in modes if m > 0))


def normal_order(word: Sequence[int]) -> Dict[Modes, int]:
    """
    把任意顺序的乘积 Ĵ_{k_1}⋯Ĵ_{k_s} 展开为正规序单项式之和，
    每次交换相邻的 (正, 负) 对：Ĵ_aĴ_b = Ĵ_bĴ_a + a·δ_{a+b,0}。
    """
    return dict(_normal_order(tuple(word)))


@lru_cache(maxsize=None)
def _normal_order(word: Modes) -> Tuple[Tuple[Modes, int], ...]:
    if 0 in word:
        return ()
    for i in range(len(word) - 1):
        a, b = word[i], word[i + 1]
        if a > 0 > b:
            result = normal_order(word[:i] + (b, a) + word[i + 2:])
            if a + b == 0:
                for modes, value in normal_order(word[:i] + word[i + 2:]).items():
                    result[modes] = result.get(modes, 0) + a * value
            return tuple((m, v) for m, v in result.items() if v)
    return ((_canonical(word), 1),)


def _rational(value: Any) -> Rational:
    value = to_fraction(value)
    return Rational(value.numerator, value.denominator)


class BosonOperator:
    """
    正规序单项式之和 Σ c·Ĵ_{k_1}⋯Ĵ_{k_s}，系数属于给定的系数环。
    每个单项式的模和决定其加权次数平移：次数 d 的单项式被映到 d - Σk_i。
    """

    def __init__(self, ring: ICoeffRing, terms: Optional[Dict[Modes, Any]] = None):
        self.ring = ring
        self.terms: Dict[Modes, Any] = {}
        for modes, value in (terms or {}).items():
            canonical = _canonical(modes)
            if canonical is None:
                continue
            value = ring.coerce(value)
            if canonical in self.terms:
                value = self.terms[canonical] + value
            self.terms[canonical] = value
        self.terms = {m: v for m, v in self.terms.items() if not ring.is_zero(v)}

    @classmethod
    def zero(cls, ring: ICoeffRing) -> "BosonOperator":
        return cls(ring)

    @classmethod
    def current(cls, ring: ICoeffRing, n: int) -> "BosonOperator":
        return cls(ring, {(n,): 1})

    def __add__(self, other: "BosonOperator") -> "BosonOperator":
        merged = dict(self.terms)
        for modes, value in other.terms.items():
            merged[modes] = merged[modes] + value if modes in merged else value
        return BosonOperator(self.ring, merged)

    def __neg__(self) -> "BosonOperator":
        return BosonOperator(self.ring, {m: -v for m, v in self.terms.items()})

    def __sub__(self, other: "BosonOperator") -> "BosonOperator":
        return self + (-other)

    def scale(self, factor: Any) -> "BosonOperator":
        factor = self.ring.coerce(factor)
        return BosonOperator(self.ring, {m: factor * v for m, v in self.terms.items()})

    def __mul__(self, other: Any) -> "BosonOperator":
        """复合后重新正规序"""
        if not isinstance(other, BosonOperator):
            return self.scale(other)
        result: Dict[Modes, Any] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                for modes, count in normal_order(m1 + m2).items():
                    value = c1 * c2 * self.ring.coerce(count)
                    result[modes] = result[modes] + value if modes in result else value
        return BosonOperator(self.ring, result)

    def __rmul__(self, factor: Any) -> "BosonOperator":
        return self.scale(factor)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BosonOperator):
            return NotImplemented
        return not (self - other).terms

    def is_zero(self) -> bool:
        return not self.terms

    def mode_sums(self) -> List[int]:
        return [sum(modes) for modes in self.terms] or [0]

    def to_text(self) -> str:
        """正规序的文本形式，调试用"""
        if not self.terms:
            return "0"
        parts = []
        for modes, value in sorted(self.terms.items(), key=lambda item: (len(item[0]), item[0])):
            coefficient = self.ring.to_json(value)
            if isinstance(coefficient, dict):
                coefficient = f"({coefficient['num']})/({coefficient['den']})"
            parts.append(f"{coefficient}*" + "".join(f"J({k})" for k in modes))
        return " + ".join(parts)

    def __repr__(self) -> str:
        return f"BosonOperator({self.to_text()})"


def commutator(a: BosonOperator, b: BosonOperator) -> BosonOperator:
    return a * b - b * a


@dataclass
class TauMM:
    """截断的双单调 tau 函数"""
    order: int
    beta: Fraction
    times: Dict[int, Fraction]
    series: TruncatedSeries

    def __post_init__(self):
        if self.series.constant_term() != 1:
            raise DomainException("tau_mm must have constant term 1")


def _polynomial_add(p: List[Fraction], q: List[Fraction], factor: Fraction = Fraction(1)) -> List[Fraction]:
    size = max(len(p), len(q))
    p = p + [Fraction(0)] * (size - len(p))
    for i, c in enumerate(q):
        p[i] += factor * c
    return p


def _polynomial_mul(p: List[Fraction], q: List[Fraction]) -> List[Fraction]:
    result = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            result[i + j] += a * b
    return result


def _trim(p: List[Fraction]) -> List[Fraction]:
    p = list(p)
    while len(p) > 1 and p[-1] == 0:
        p.pop()
    return p


def _shift_argument(p: List[Fraction]) -> List[Fraction]:
    """P(D) ↦ P(D+1)"""
    shifted = [Fraction(0)] * len(p)
    for j, c in enumerate(p):
        for i in range(j + 1):
            shifted[i] += c * comb(j, i)
    return shifted


def _falling_coefficients(p: List[Fraction]) -> List[Fraction]:
    """单项式基 D^j 换到降阶乘基 D(D-1)⋯(D-m+1)：D^j = Σ_m S(j, m)·D^(m)"""
    falling = [Fraction(0)] * len(p)
    for j, c in enumerate(p):
        for m in range(j + 1):
            falling[m] += c * int(stirling(j, m))
    return falling


@lru_cache(maxsize=None)
def current_field(m: int) -> Tuple[Tuple[Tuple[int, ...], int], ...]:
    """
    (Ĵ(x)+∂_x)^m Ĵ(x) 在正规序内的展开。
    每一项是 ∏_i Ĵ^{(d_i)}(x)，键为求导阶数 (d_1, ..., d_s) 的升序元组。
    """
    field: Dict[Tuple[int, ...], int] = {(0,): 1}
    for _ in range(m):
        step: Dict[Tuple[int, ...], int] = {}
        for orders, c in field.items():
            grown = tuple(sorted(orders + (0,)))
            step[grown] = step.get(grown, 0) + c
            for i in range(len(orders)):
                derived = tuple(sorted(orders[:i] + (orders[i] + 1,) + orders[i + 1:]))
                step[derived] = step.get(derived, 0) + c
        field = step
    return tuple(sorted(field.items()))


def _falling_factorial(a: int, d: int) -> int:
    """Ĵ^{(d)}(x) 中 Ĵ_a 的系数 (a-1)(a-2)⋯(a-d)"""
    value = 1
    for i in range(1, d + 1):
        value *= a - i
    return value


class BosonConstraints:
    """
    玻色约束服务
    所有算子都在 t_1..t_N 的截断多项式环上作用，模的绝对值不超过 N。
    """

    def __init__(self, truncation: int, ring: Optional[ICoeffRing] = None):
        if truncation < 1:
            raise DomainException(f"truncation must be >= 1, got {truncation}")
        self.truncation = truncation
        self.ring = ring or RationalRing()
        self.variables = [f"t{k}" for k in range(1, truncation + 1)]
        self._residues: Dict[Tuple[int, int], BosonOperator] = {}

    @classmethod
    def from_config(cls, config: Dict[str, Any], truncation: Optional[int] = None,
                    ring: Optional[ICoeffRing] = None) -> "BosonConstraints":
        default = config.get("constraints", {}).get("default_truncation", 6)
        return cls(truncation or default, ring)

    # -- 多项式 -------------------------------------------------------------

    def polynomial(self, terms: Optional[Dict[Tuple[int, ...], Any]] = None) -> TruncatedSeries:
        return TruncatedSeries(self.ring, self.variables, range(1, self.truncation + 1), self.truncation, terms)

    def monomial(self, mu: Partition) -> Tuple[int, ...]:
        exponents = [0] * self.truncation
        for part in mu.parts:
            exponents[part - 1] += 1
        return tuple(exponents)

    def basis(self, degree: int) -> List[Partition]:
        return [mu for d in range(degree + 1) for mu in partitions_of(d)]

    def apply(self, op: BosonOperator, f: TruncatedSeries) -> Tuple[TruncatedSeries, int]:
        """
        逐单项式作用：先求导（正模），再乘以 n·t_n（负模）。
        返回结果及其可信的最高加权次数 N - max(模和)。
        """
        n = self.truncation
        valid = n - max(op.mode_sums())
        terms: Dict[Tuple[int, ...], Any] = {}
        for modes, coefficient in op.terms.items():
            for exponents, value in f.terms.items():
                exponents = list(exponents)
                factor = 1
                for k in reversed(modes):
                    if k > 0:
                        if k > n or exponents[k - 1] == 0:
                            factor = 0
                            break
                        factor *= exponents[k - 1]
                        exponents[k - 1] -= 1
                    else:
                        if -k > n:
                            factor = 0
                            break
                        factor *= -k
                        exponents[-k - 1] += 1
                if not factor:
                    continue
                monomial = tuple(exponents)
                if f.degree(monomial) > valid:
                    continue
                contribution = coefficient * value * self.ring.coerce(factor)
                terms[monomial] = terms[monomial] + contribution if monomial in terms else contribution
        return self.polynomial(terms), valid

    # -- 算子 ---------------------------------------------------------------

    def current(self, n: int) -> BosonOperator:
        return BosonOperator.current(self.ring, n)

    def _mode_range(self):
        return [k for k in range(-self.truncation, self.truncation + 1) if k]

    def build_L(self, m: int) -> BosonOperator:
        """L̂_m = (1/2)Σ_{a+b=m} :Ĵ_aĴ_b:"""
        terms: Dict[Modes, Any] = {}
        for a in self._mode_range():
            b = m - a
            if b and abs(b) <= self.truncation:
                modes = _canonical((a, b))
                terms[modes] = terms.get(modes, 0) + Fraction(1, 2)
        return BosonOperator(self.ring, terms)

    def build_M(self, m: int) -> BosonOperator:
        """M̂_m = (1/3)Σ_{a+b+c=m} :Ĵ_aĴ_bĴ_c:"""
        terms: Dict[Modes, Any] = {}
        modes_range = self._mode_range()
        for a in modes_range:
            for b in modes_range:
                c = m - a - b
                if c and abs(c) <= self.truncation:
                    modes = _canonical((a, b, c))
                    terms[modes] = terms.get(modes, 0) + Fraction(1, 3)
        return BosonOperator(self.ring, terms)

    def build_LM(self, m: int) -> Tuple[BosonOperator, BosonOperator]:
        return self.build_L(m), self.build_M(m)

    @staticmethod
    def linear_basis(n: int) -> List[Fraction]:
        """D - (n+1)/2，对应 L̂_n"""
        return [Fraction(-(n + 1), 2), Fraction(1)]

    @staticmethod
    def quadratic_basis(n: int) -> List[Fraction]:
        """D² - (n+1)D + (n+1)(n+2)/6，对应 M̂_n"""
        return [Fraction((n + 1) * (n + 2), 6), Fraction(-(n + 1)), Fraction(1)]

    @classmethod
    def cubic_basis(cls, n: int) -> List[Fraction]:
        """(2D - n - 1)·g_n(D)，g_n 为 M̂_n 的二次多项式"""
        return _polynomial_mul([Fraction(-(n + 1)), Fraction(2)], cls.quadratic_basis(n))

    def _coefficients(self, n: int, polynomial: Sequence[Any]) -> List[Fraction]:
        if n < 0:
            raise DomainException(f"shift must be non-negative, got {n}")
        coefficients = _trim([to_fraction(c) for c in polynomial] or [Fraction(0)])
        if len(coefficients) > MAX_Y_DEGREE + 1:
            raise DomainException(
                f"build_Y supports polynomials of degree <= {MAX_Y_DEGREE}, got degree {len(coefficients) - 1}")
        return coefficients

    def residue(self, m: int, n: int) -> BosonOperator:
        """
        Res_{x=0} x^{m-n} :(Ĵ(x)+∂_x)^m Ĵ(x): dx / (m+1)，Ĵ(x) = Σ_a Ĵ_a x^{a-1}。
        x 的幂次要求各模之和为 n；模限制在 1 ≤ |a| ≤ N。
        """
        key = (m, n)
        if key not in self._residues:
            terms: Dict[Modes, Any] = {}
            modes = self._mode_range()
            for orders, c in current_field(m):
                for head in product(modes, repeat=len(orders) - 1):
                    last = n - sum(head)
                    if not last or abs(last) > self.truncation:
                        continue
                    word = head + (last,)
                    weight = c
                    for a, d in zip(word, orders):
                        weight *= _falling_factorial(a, d)
                    if weight:
                        canonical = _canonical(word)
                        terms[canonical] = terms.get(canonical, Fraction(0)) + Fraction(weight, m + 1)
            self._residues[key] = BosonOperator(self.ring, terms)
        return self._residues[key]

    def build_Y(self, n: int, polynomial: Sequence[Any]) -> BosonOperator:
        """
        Ŷ_{x^{-n}P(D)}，P 以升幂系数列表给出，次数不超过 3。
        先把 P(D+1) 展开为降阶乘 D^(m)，再用 x^{-n}D^(m) = x^{m-n}∂_x^m 取留数 residue(m, n)。
        展开 Ĵ(x) = Σ Ĵ_a x^{a-1} 与平移 D ↦ D+1 由标定 L̂_n、M̂_n 固定；
        n = 0 的常数落在 Ĵ_0 = 0 上，被丢弃。
        """
        coefficients = self._coefficients(n, polynomial)
        result = BosonOperator.zero(self.ring)
        for m, value in enumerate(_falling_coefficients(_shift_argument(coefficients))):
            if value:
                result = result + self.residue(m, n).scale(value)
        return result

    def build_Y_by_basis(self, n: int, polynomial: Sequence[Any]) -> BosonOperator:
        """
        交叉验证用：P 在 {1, D-(n+1)/2, g_n(D), (2D-n-1)g_n(D)} 中分解，
        分别对应 Ĵ_n、L̂_n、M̂_n 与 -(1/n)[M̂_0, M̂_n]。
        截断下三次部分只在加权次数 ≤ N 的多项式上与 build_Y 一致。
        """
        remainder = self._coefficients(n, polynomial)
        result = BosonOperator.zero(self.ring)
        if len(remainder) == 4 and remainder[3]:
            if n == 0:
                raise DomainException("cubic polynomials need a positive shift")
            coefficient = remainder[3] / 2
            cubic = commutator(self.build_M(0), self.build_M(n)).scale(Fraction(-1, n))
            result = result + cubic.scale(coefficient)
            remainder = _polynomial_add(remainder, self.cubic_basis(n), -coefficient)
        remainder = _trim(remainder)
        if len(remainder) == 3 and remainder[2]:
            coefficient = remainder[2]
            result = result + self.build_M(n).scale(coefficient)
            remainder = _polynomial_add(remainder, self.quadratic_basis(n), -coefficient)
        remainder = _trim(remainder)
        if len(remainder) == 2 and remainder[1]:
            coefficient = remainder[1]
            result = result + self.build_L(n).scale(coefficient)
            remainder = _polynomial_add(remainder, self.linear_basis(n), -coefficient)
        if remainder[0] and n > 0:
            result = result + self.current(n).scale(remainder[0])
        return result

    def calibration_failures(self, shifts: Iterable[int] = range(4)) -> List[str]:
        """Ŷ 的标定：x^{-m}(D-(m+1)/2) ↦ L̂_m，x^{-m}g_m(D) ↦ M̂_m；返回不一致的算子名"""
        failures = []
        for m in shifts:
            if self.build_Y(m, self.linear_basis(m)) != self.build_L(m):
                failures.append(f"L{m}")
            if self.build_Y(m, self.quadratic_basis(m)) != self.build_M(m):
                failures.append(f"M{m}")
        if failures:
            logger.warning(f"Y calibration failed for {', '.join(failures)}")
        return failures

    def build_R(self, n: int, beta: Any) -> BosonOperator:
        """R̂_n = Σ_{k=0}^{n} (-β)^k Σ_{i_1<⋯<i_k≤n} Ŷ_{x^{-n}(D-i_1)⋯(D-i_k)}"""
        if n < 1 or n > 3:
            raise DomainException(f"R_n is supported for n = 1, 2, 3, got {n}")
        beta = self.ring.coerce(beta)
        result = BosonOperator.zero(self.ring)
        weight = self.ring.one()
        for k in range(n + 1):
            polynomial = [Fraction(0)]
            for subset in combinations(range(1, n + 1), k):
                roots = [Fraction(1)]
                for i in subset:
                    roots = _polynomial_mul(roots, [Fraction(-i), Fraction(1)])
                polynomial = _polynomial_add(polynomial, roots)
            result = result + self.build_Y(n, polynomial).scale(weight)
            weight = weight * (-beta)
        return result

    def cut_and_join(self, hbar: Any) -> BosonOperator:
        """ħ²M̂_0 - ħL̂_0 + t_1"""
        hbar = self.ring.coerce(hbar)
        return self.build_M(0).scale(hbar * hbar) - self.build_L(0).scale(hbar) + self.current(-1)

    # -- τ_mm ---------------------------------------------------------------

    def build_tau_mm(self, beta: Any, times: Dict[int, Any]) -> TauMM:
        """
        Σ_{|λ|≤N} s_λ(t)·s_λ(t̃)·∏_盒子 (1 - β·c)^{-1}，p_k = k·t_k。
        """
        beta = to_fraction(beta)
        times = {int(k): to_fraction(v) for k, v in times.items()}
        p_values = {k: k * times.get(k, Fraction(0)) for k in range(1, self.truncation + 1)}
        terms: Dict[Tuple[int, ...], Fraction] = {}
        for n in range(self.truncation + 1):
            for shape in partitions_of(n):
                weight = Fraction(1)
                for c in content_multiset(shape):
                    factor = 1 - beta * c
                    if factor == 0:
                        raise PoleException(f"1 - beta*({c}) vanishes for beta = {beta}, shape {shape}")
                    weight /= factor
                weight *= evaluate_power_sums(schur_in_p(shape), p_values)
                if not weight:
                    continue
                for mu, coefficient in schur_in_t(shape).items():
                    monomial = self.monomial(mu)
                    terms[monomial] = terms.get(monomial, Fraction(0)) + weight * coefficient
        logger.debug(f"tau_mm: N={self.truncation}, beta={beta}, {len(terms)} monomials")
        return TauMM(self.truncation, beta, times, self.polynomial(terms))

    # -- 验证 ---------------------------------------------------------------

    def _residual_report(self, subject: str, params: Dict[str, Any], residual: TruncatedSeries,
                         valid: int) -> VerificationReport:
        report = VerificationReport(subject=subject, params=params, order=self.truncation, window=(0, valid))
        for mu in self.basis(valid):
            report.checked += 1
            value = residual.coefficient(self.monomial(mu))
            if not self.ring.is_zero(value):
                report.fail({"monomial": residual.monomial_label(self.monomial(mu)),
                             "residual": self.ring.to_json(value)})
                break
        return report

    def verify_constraints(self, tau: TauMM, n: int) -> VerificationReport:
        """(R̂_n - n·t̃_n)τ 在加权次数 ≤ N - n 的所有系数为零"""
        image, valid = self.apply(self.build_R(n, tau.beta), tau.series)
        residual = image - tau.series.scale(n * tau.times.get(n, Fraction(0)))
        params = {"n": n, "beta": str(tau.beta),
                  "times": {str(k): str(v) for k, v in sorted(tau.times.items())}}
        return self._residual_report(f"constraint R{n}", params, residual, valid)

    def verify_cut_and_join(self, hbar: Any) -> VerificationReport:
        """(ħ²M̂_0 - ħL̂_0 + t_1)τ = 0，τ 取 β = ħ、t̃_k = δ_{k,1}/ħ"""
        hbar = to_fraction(hbar)
        if hbar == 0:
            raise PoleException("cut-and-join specialization needs hbar != 0")
        tau = self.build_tau_mm(hbar, {1: 1 / hbar})
        image, _ = self.apply(self.cut_and_join(hbar), tau.series)
        return self._residual_report("cut_and_join", {"hbar": str(hbar)}, image, self.truncation)

    def verify_commutator(self, first: int, second: int, beta: Any = None) -> VerificationReport:
        """
        [R̂_first, R̂_second] 在截断多项式环的所有基单项式上作用为零。
        beta 为 None 时使用本服务的 ring.hbar() 作为符号 β。
        """
        beta = self.ring.hbar() if beta is None else beta
        operator = commutator(self.build_R(first, beta), self.build_R(second, beta))
        report = VerificationReport(
            subject=f"commutator R{first} R{second}",
            params={"first": first, "second": second, "ring": self.ring.describe()},
            order=self.truncation,
            details={"formally_zero": operator.is_zero()},
        )
        for mu in self.basis(self.truncation):
            image, valid = self.apply(operator, self.polynomial({self.monomial(mu): 1}))
            for monomial, value in image.terms.items():
                report.checked += 1
                if not self.ring.is_zero(value):
                    report.fail({"input": mu.label or "1", "monomial": image.monomial_label(monomial),
                                 "residual": self.ring.to_json(value)})
                    return report
        return report

    def constraint_solution_space(self, indices: Sequence[int], degree: int, beta: Any,
                                  times: Dict[int, Any]) -> Dict[str, Any]:
        """
        在次数 ≤ degree 的级数中求解 {(R̂_n - n·t̃_n)f = 0，n ∈ indices}（截断到次数 degree - n），
        返回解空间维数以及 τ_mm 的截断是否在其中。
        """
        if degree > self.truncation:
            raise DomainException(f"degree {degree} exceeds the truncation {self.truncation}")
        beta = to_fraction(beta)
        times = {int(k): to_fraction(v) for k, v in times.items()}
        unknowns = self.basis(degree)
        rows: List[List[Fraction]] = []
        for n in indices:
            operator = self.build_R(n, beta)
            images = []
            for mu in unknowns:
                basis_element = self.polynomial({self.monomial(mu): 1})
                image, _ = self.apply(operator, basis_element)
                images.append(image - basis_element.scale(n * times.get(n, Fraction(0))))
            for target in self.basis(degree - n):
                monomial = self.monomial(target)
                rows.append([to_fraction(image.coefficient(monomial)) for image in images])

        matrix = Matrix([[_rational(c) for c in row] for row in rows])
        dimension = len(unknowns) - matrix.rank()

        tau = self.build_tau_mm(beta, times)
        vector = Matrix([[_rational(tau.series.coefficient(self.monomial(mu)))] for mu in unknowns])
        contains_tau = all(entry == 0 for entry in matrix * vector)
        logger.debug(f"solution space for R{list(indices)} to degree {degree}: dimension {dimension}")
        return {"indices": list(indices), "degree": degree, "unknowns": len(unknowns),
                "dimension": dimension, "contains_tau": contains_tau}
