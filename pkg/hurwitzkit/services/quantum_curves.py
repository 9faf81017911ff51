"""
Quantum Curves Service
波函数与量子谱曲线
- 原语算子 MulX / Diff / Euler / Diag / Shift 在单项式 x^m 上精确作用
- OperatorExpr：带系数的原语复合之和
- apply / verify_annihilation：逐单项式作用并跟踪可信窗口
- QuantumCurveService：按曲线类型调度波函数与算子（策略模式），并做交叉验证
"""

from abc import ABC, abstractmethod
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

from ..core.exceptions import DomainException
from ..core.models import CrossCheck, CurveFlavor, VerificationReport
from ..utils.logger import logger
from .characters import schur_in_p
from .partitions import content_multiset, partitions_of
from .series_ring import ICoeffRing, RationalRing, TruncatedSeries, univariate

SCHUR_CHECK_ORDER = 8


def ring_power(ring: ICoeffRing, value: Any, exponent: int) -> Any:
    """value^exponent，负指数通过 ring.inv。"""
    base = ring.coerce(value)
    if exponent < 0:
        base = ring.inv(base)
        exponent = -exponent
    result = ring.one()
    for _ in range(exponent):
        result = result * base
    return result


# ---------------------------------------------------------------------------
# 原语算子
# ---------------------------------------------------------------------------

class IPrimitive(ABC):
    """作用在 x^m 上的原语：x^m ↦ factor(m)·x^{m + shift}"""

    shift: int = 0

    @abstractmethod
    def factor(self, ring: ICoeffRing, m: int) -> Any:
        pass

    @property
    @abstractmethod
    def label(self) -> str:
        pass


@dataclass(frozen=True)
class MulX(IPrimitive):
    k: int

    @property
    def shift(self) -> int:
        return self.k

    def factor(self, ring: ICoeffRing, m: int) -> Any:
        return ring.one()

    @property
    def label(self) -> str:
        return f"x^{self.k}"


@dataclass(frozen=True)
class Diff(IPrimitive):
    """d/dx"""

    shift = -1

    def factor(self, ring: ICoeffRing, m: int) -> Any:
        return ring.coerce(m)

    @property
    def label(self) -> str:
        return "d"


@dataclass(frozen=True)
class Euler(IPrimitive):
    """D = x d/dx"""

    def factor(self, ring: ICoeffRing, m: int) -> Any:
        return ring.coerce(m)

    @property
    def label(self) -> str:
        return "D"


@dataclass(frozen=True)
class Diag(IPrimitive):
    """f(D)：fn(ring, m) 给出在 x^m 上的特征值，可能抛出 PoleException"""

    fn: Callable[[ICoeffRing, int], Any] = field(compare=False)
    name: str = "f"

    def factor(self, ring: ICoeffRing, m: int) -> Any:
        return ring.coerce(self.fn(ring, m))

    @property
    def label(self) -> str:
        return f"{self.name}(D)"


@dataclass(frozen=True)
class Shift(IPrimitive):
    """e^{cħD}：x^m ↦ q^{cm} x^m"""

    c: int

    def factor(self, ring: ICoeffRing, m: int) -> Any:
        return ring_power(ring, ring.q(), self.c * m)

    @property
    def label(self) -> str:
        return f"exp({self.c}hD)"


# ---------------------------------------------------------------------------
# 算子表达式
# ---------------------------------------------------------------------------

Word = Tuple[IPrimitive, ...]


class OperatorExpr:
    """
    Σ coefficient·(p_1 ∘ p_2 ∘ ... ∘ p_k)，从右向左作用。
    系数是 int 或系数环元素，与 x、D 交换。
    """

    def __init__(self, terms: Sequence[Tuple[Any, Word]] = ()):
        self.terms: List[Tuple[Any, Word]] = [(c, tuple(w)) for c, w in terms]

    @classmethod
    def identity(cls) -> "OperatorExpr":
        return cls([(1, ())])

    @classmethod
    def of(cls, primitive: IPrimitive, coefficient: Any = 1) -> "OperatorExpr":
        return cls([(coefficient, (primitive,))])

    @classmethod
    def x(cls, k: int = 1) -> "OperatorExpr":
        return cls.of(MulX(k))

    @classmethod
    def diff(cls) -> "OperatorExpr":
        return cls.of(Diff())

    @classmethod
    def euler(cls) -> "OperatorExpr":
        return cls.of(Euler())

    @classmethod
    def diag(cls, fn: Callable[[ICoeffRing, int], Any], name: str = "f") -> "OperatorExpr":
        return cls.of(Diag(fn, name))

    @classmethod
    def shift(cls, c: int) -> "OperatorExpr":
        return cls.of(Shift(c))

    def __add__(self, other: "OperatorExpr") -> "OperatorExpr":
        return OperatorExpr(self.terms + other.terms)

    def __neg__(self) -> "OperatorExpr":
        return OperatorExpr([(-c, w) for c, w in self.terms])

    def __sub__(self, other: "OperatorExpr") -> "OperatorExpr":
        return self + (-other)

    def scale(self, factor: Any) -> "OperatorExpr":
        return OperatorExpr([(factor * c, w) for c, w in self.terms])

    def __mul__(self, other: Any) -> "OperatorExpr":
        """复合：(A * B) f = A(B f)"""
        if not isinstance(other, OperatorExpr):
            return self.scale(other)
        return OperatorExpr([(c1 * c2, w1 + w2) for c1, w1 in self.terms for c2, w2 in other.terms])

    def __rmul__(self, factor: Any) -> "OperatorExpr":
        return self.scale(factor)

    def __pow__(self, exponent: int) -> "OperatorExpr":
        if exponent < 0:
            raise DomainException("operators have no negative powers")
        result = OperatorExpr.identity()
        for _ in range(exponent):
            result = result * self
        return result

    def shifts(self) -> List[int]:
        return [sum(p.shift for p in word) for _, word in self.terms] or [0]

    def to_json(self, ring: ICoeffRing) -> List[Dict[str, Any]]:
        return [
            {"coefficient": ring.to_json(ring.coerce(c)), "word": " ".join(p.label for p in w) or "1"}
            for c, w in self.terms
        ]


# ---------------------------------------------------------------------------
# 作用与验证
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Window:
    """可信指数区间 [lo, hi]；None 表示该方向精确（没有截断）"""
    lo: Optional[int] = None
    hi: Optional[int] = None

    def after(self, shifts: Sequence[int]) -> "Window":
        return Window(
            None if self.lo is None else self.lo + max(shifts),
            None if self.hi is None else self.hi + min(shifts),
        )

    def contains(self, exponent: int) -> bool:
        return (self.lo is None or exponent >= self.lo) and (self.hi is None or exponent <= self.hi)

    def to_tuple(self) -> Tuple[Optional[int], Optional[int]]:
        return (self.lo, self.hi)


@dataclass
class Application:
    """apply 的结果：只保留可信窗口内的系数"""
    series: TruncatedSeries
    window: Window


def default_window(series: TruncatedSeries) -> Window:
    if series.low is not None and series.low < 0 and series.cap <= 0:
        return Window(series.low, None)
    return Window(None, series.cap)


def apply(op: OperatorExpr, series: TruncatedSeries, window: Optional[Window] = None) -> Application:
    """
    逐单项式精确作用。结果窗口按算子的最大负/正平移收缩。

    :param op: 算子表达式
    :param series: x 的单变量（Laurent）截断级数
    :param window: series 的可信窗口，默认由 cap / low 推出
    """
    ring = series.ring
    window = window or default_window(series)
    result_window = window.after(op.shifts())
    cache: Dict[Tuple[int, int], Any] = {}
    terms: Dict[int, Any] = {}
    for coefficient, word in op.terms:
        coefficient = ring.coerce(coefficient)
        for (m,), value in series.terms.items():
            exponent = m
            value = coefficient * value
            for primitive in reversed(word):
                key = (id(primitive), exponent)
                if key not in cache:
                    cache[key] = primitive.factor(ring, exponent)
                value = value * cache[key]
                exponent += primitive.shift
                if ring.is_zero(value):
                    break
            if ring.is_zero(value) or not result_window.contains(exponent):
                continue
            terms[exponent] = terms[exponent] + value if exponent in terms else value
    exponents = list(terms) or [0]
    cap = result_window.hi if result_window.hi is not None else max(exponents)
    low = result_window.lo if result_window.lo is not None else min(min(exponents), 0)
    result = univariate(ring, series.variables[0], cap, terms, low=low)
    return Application(result, result_window)


@dataclass
class WaveFunction:
    """截断波函数：常数项为 1"""
    flavor: CurveFlavor
    params: Dict[str, Any]
    order: int
    ring: ICoeffRing
    series: TruncatedSeries
    window: Window

    def __post_init__(self):
        if not self.ring.is_zero(self.series.constant_term() - self.ring.one()):
            raise DomainException(f"{self.flavor.value} wave function must have constant term 1")

    def coefficient(self, exponent: int) -> Any:
        return self.series.coefficient((exponent,))

    def to_json(self) -> Dict[str, Any]:
        return {
            "flavor": self.flavor.value,
            "params": self.params,
            "N": self.order,
            "ring": self.ring.describe(),
            "window": list(self.window.to_tuple()),
            "series": self.series.to_json(),
        }


def verify_annihilation(op: OperatorExpr, wave: WaveFunction, order: int,
                        operator_name: str = "curve") -> VerificationReport:
    """
    检查 op·wave 在可信窗口内的每个系数都精确为零；失败时记录第一个非零残差。
    """
    application = apply(op, wave.series, wave.window)
    window = application.window
    if window.hi is not None and window.hi < order:
        raise DomainException(f"wave known to x^{wave.window.hi} cannot certify order {order} after shifts")
    if window.lo is not None and window.lo > -order:
        raise DomainException(f"wave known from x^{wave.window.lo} cannot certify order {order} after shifts")

    exponents = [m for (m,) in wave.series.terms] or [0]
    shifts = op.shifts()
    lo = window.lo if window.lo is not None else min(exponents) + min(shifts)
    hi = window.hi if window.hi is not None else max(exponents) + max(shifts)

    report = VerificationReport(subject=wave.flavor.value, params=wave.params, order=order,
                                window=(lo, hi), details={"ring": wave.ring.describe()})
    for exponent in range(lo, hi + 1):
        report.checked += 1
        residual = application.series.coefficient((exponent,))
        if not wave.ring.is_zero(residual):
            report.fail({"operator": operator_name, "exponent": exponent,
                         "residual": wave.ring.to_json(residual)})
            break
    return report


# ---------------------------------------------------------------------------
# 波函数构造的公共部分
# ---------------------------------------------------------------------------

def parse_times(times: Any) -> Dict[int, Fraction]:
    """t̃ 的有限支撑：{k: t̃_k}，k ≥ 1"""
    if isinstance(times, dict):
        parsed = {int(k): Fraction(v) for k, v in times.items()}
    else:
        parsed = {k: Fraction(v) for k, v in enumerate(times, start=1)}
    parsed = {k: v for k, v in parsed.items() if v}
    if any(k < 1 for k in parsed):
        raise DomainException("time indices must be positive")
    return parsed


def times_to_json(times: Dict[int, Fraction]) -> Dict[str, str]:
    return {str(k): str(v) for k, v in sorted(times.items())}


def exponential_coefficients(ring: ICoeffRing, times: Dict[int, Fraction], order: int) -> List[Any]:
    """h_j(t̃/ħ)：exp(Σ t̃_k x^k / ħ) 中 x^j 的系数，j ≤ order"""
    inverse_hbar = ring.inv(ring.hbar())
    exponent = univariate(ring, "x", order, {k: ring.coerce(v) * inverse_hbar for k, v in times.items()})
    series = exponent.exp()
    return [series.coefficient((j,)) for j in range(order + 1)]


def monotone_wave_coefficients(ring: ICoeffRing, times: Dict[int, Fraction], order: int) -> List[Any]:
    """Ψ^{mm} 的系数 h_j(t̃/ħ)·∏_{l=0}^{j-1}(1 - ħl)^{-1}"""
    hbar = ring.hbar()
    coefficients = []
    denominator = ring.one()
    for j, h in enumerate(exponential_coefficients(ring, times, order)):
        if j > 1:
            denominator = denominator * (ring.one() - hbar * (j - 1))
        coefficients.append(h * ring.inv(denominator))
    return coefficients


def schur_wave_coefficients(ring: ICoeffRing, times: Dict[int, Fraction], order: int) -> List[Any]:
    """
    双单调 Schur 和 Σ_λ s_λ(p) s_λ(t̃/ħ) ∏_盒子 1/(1 - ħc) 在主特化 p_k = x^k 下的系数，
    s_λ 通过特征标展开为幂和。
    """
    hbar = ring.hbar()
    inverse_hbar = ring.inv(hbar)
    # p_k(t̃/ħ) = k·t̃_k/ħ
    p_values = {k: ring.coerce(k * v) * inverse_hbar for k, v in times.items()}
    coefficients = [ring.one()]
    for n in range(1, order + 1):
        total = ring.zero()
        for shape in partitions_of(n):
            expansion = schur_in_p(shape)
            principal = sum(expansion.values(), Fraction(0))
            if not principal:
                continue
            value = ring.zero()
            for mu, weight in expansion.items():
                term = ring.coerce(weight)
                for part in mu.parts:
                    term = term * p_values.get(part, ring.zero())
                value = value + term
            for c in content_multiset(shape):
                value = value * ring.inv(ring.one() - hbar * c)
            total = total + ring.coerce(principal) * value
        coefficients.append(total)
    return coefficients


# ---------------------------------------------------------------------------
# 服务
# ---------------------------------------------------------------------------

class QuantumCurveService:
    """
    量子曲线服务
    按 CurveFlavor 调度注入的曲线策略，构造波函数、曲线算子并验证消灭关系。
    """

    def __init__(self, strategies: Optional[Dict[CurveFlavor, Any]] = None,
                 config: Optional[Dict[str, Any]] = None):
        if strategies is None:
            from ..strategies import default_curve_strategies
            strategies = default_curve_strategies()
        self.strategies = strategies
        self.config = config or {}
        self.extra_samples = self.config.get("verification", {}).get("extra_samples", 2)

    def strategy(self, flavor: CurveFlavor):
        if flavor not in self.strategies:
            raise DomainException(f"unsupported curve flavor {flavor}")
        return self.strategies[flavor]

    def default_ring(self, flavor: CurveFlavor, params: Dict[str, Any], order: int) -> ICoeffRing:
        return self.strategy(flavor).default_ring(params, order, self.config)

    def build_wave(self, flavor: CurveFlavor, params: Dict[str, Any], order: int,
                   ring: Optional[ICoeffRing] = None) -> WaveFunction:
        if order < 1:
            raise DomainException(f"N must be >= 1, got {order}")
        ring = ring or self.default_ring(flavor, params, order)
        return self.strategy(flavor).build_wave(params, order, ring)

    def curve_operator(self, flavor: CurveFlavor, params: Dict[str, Any], ring: ICoeffRing) -> OperatorExpr:
        return self.strategy(flavor).curve_operator(params, ring)

    def verify(self, flavor: CurveFlavor, params: Dict[str, Any], order: int,
               mode: str = "exact") -> Tuple[VerificationReport, List[CrossCheck]]:
        """
        在默认系数环中验证曲线算子（以及所有替代表示）消灭波函数。
        mode 为 "sampled" 时另在 d+1 个有理 ħ 值上重复验证作为交叉检查。
        """
        strategy = self.strategy(flavor)
        ring = strategy.default_ring(params, order, self.config)
        wave = strategy.build_wave(params, order + strategy.margin(params), ring)
        logger.debug(f"qcurve {flavor.value}: wave to order {wave.order} in {ring.name}")

        report = verify_annihilation(strategy.curve_operator(params, ring), wave, order)
        crosschecks: List[CrossCheck] = []
        for name, operator in strategy.alternative_operators(params, ring).items():
            alternative = verify_annihilation(operator, wave, order, operator_name=name)
            report.checked += alternative.checked
            if not alternative.ok:
                report.fail(alternative.first_failure)
            crosschecks.append(CrossCheck(f"operator:{name}", alternative.ok))

        if strategy.schur_comparable(params) and order <= SCHUR_CHECK_ORDER:
            crosschecks.append(self._schur_crosscheck(strategy, params, wave))

        if mode == "sampled":
            crosschecks.append(self._sampled_crosscheck(strategy, params, order))
        return report, crosschecks

    def _schur_crosscheck(self, strategy, params: Dict[str, Any], wave: WaveFunction) -> CrossCheck:
        times = strategy.times(params)
        expected = schur_wave_coefficients(wave.ring, times, wave.order)
        agrees = all(wave.ring.is_zero(wave.coefficient(j) - value) for j, value in enumerate(expected))
        return CrossCheck("schur_principal_specialization", agrees)

    def sample_points(self, strategy, params: Dict[str, Any], order: int) -> List[Fraction]:
        bound = strategy.hbar_degree_bound(params, order)
        if bound is None:
            return []
        # 负的 ħ 避开单调型的极点 ħ = 1/l
        return [Fraction(-1, i + 2) for i in range(bound + self.extra_samples + 1)]

    def _sampled_crosscheck(self, strategy, params: Dict[str, Any], order: int) -> CrossCheck:
        points = self.sample_points(strategy, params, order)
        if not points:
            return CrossCheck("sampled_hbar", True, "unsupported for this flavor")
        for point in points:
            ring = RationalRing(hbar_value=point)
            wave = strategy.build_wave(params, order + strategy.margin(params), ring)
            sample = verify_annihilation(strategy.curve_operator(params, ring), wave, order)
            if not sample.ok:
                logger.debug(f"sampled verification failed at hbar={point}")
                return CrossCheck("sampled_hbar", False, str(point))
        return CrossCheck("sampled_hbar", True, f"{len(points)} points")
