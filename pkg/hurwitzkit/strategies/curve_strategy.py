"""
Curve Strategies - 量子曲线策略
每种波函数一个策略：默认系数环、截断波函数与消灭它的算子。
"""

from fractions import Fraction
from math import factorial
from typing import Any, Dict, Optional

from ..core.exceptions import DomainException
from ..core.models import CurveFlavor
from ..services.quantum_curves import (
    OperatorExpr, WaveFunction, Window, exponential_coefficients, monotone_wave_coefficients,
    parse_times, ring_power, times_to_json
)
from ..services.series_ring import ICoeffRing, LaurentQRing, RatFuncHbarRing, TruncHbarRing, univariate
from .base import ICurveStrategy


def _positive_wave(flavor: CurveFlavor, params: Dict[str, Any], order: int, ring: ICoeffRing,
                   coefficients) -> WaveFunction:
    series = univariate(ring, "x", order, dict(enumerate(coefficients)), low=0)
    return WaveFunction(flavor, params, order, ring, series, Window(None, order))


def general_monotone_operator(ring: ICoeffRing, times: Dict[int, Fraction]) -> OperatorExpr:
    """A_mm = Σ_k k·t̃_k·x^k·∏_{j=0}^{k-1} 1/(1 - ħ(D+j)) - ħD"""
    hbar = ring.hbar()

    def denominators(k: int):
        def fn(ring: ICoeffRing, m: int):
            value = ring.one()
            for j in range(k):
                value = value * ring.inv(ring.one() - hbar * (m + j))
            return value
        return fn

    operator = OperatorExpr.euler().scale(-hbar)
    for k, t in sorted(times.items()):
        term = OperatorExpr.x(k) * OperatorExpr.diag(denominators(k), f"inv{k}")
        operator = operator + term.scale(ring.coerce(k * t))
    return operator


def polynomial_monotone_operator(ring: ICoeffRing, times: Dict[int, Fraction]) -> OperatorExpr:
    """
    Ã_mm = Σ_k k·t̃_k·x^k·∏_{j=1}^{l-k}(1 - ħ(D-j)) - ħD·∏_{j=1}^{l}(1 - ħ(D-j))，l = max supp t̃。
    Ã_mm = P(D)·A_mm，P(D) = ∏_{j=1}^{l}(1 - ħ(D-j)) 在 QQ(ħ) 中逐单项式可逆。
    """
    hbar = ring.hbar()
    top = max(times)

    def falling(count: int):
        def fn(ring: ICoeffRing, m: int):
            value = ring.one()
            for j in range(1, count + 1):
                value = value * (ring.one() - hbar * (m - j))
            return value
        return fn

    operator = (OperatorExpr.euler() * OperatorExpr.diag(falling(top), f"P{top}")).scale(-hbar)
    for k, t in sorted(times.items()):
        term = OperatorExpr.x(k) * OperatorExpr.diag(falling(top - k), f"P{top - k}")
        operator = operator + term.scale(ring.coerce(k * t))
    return operator


class MonotoneCurveStrategy(ICurveStrategy):
    """一般有限支撑 t̃ 的单调波函数 Ψ^{mm}"""

    flavor = CurveFlavor.MONOTONE

    def times(self, params: Dict[str, Any]) -> Dict[int, Fraction]:
        times = parse_times(params.get("times", ()))
        if not times:
            raise DomainException("monotone waves need at least one nonzero time")
        return times

    def describe(self, params: Dict[str, Any]) -> Dict[str, Any]:
        return {"times": times_to_json(self.times(params))}

    def default_ring(self, params, order, config=None) -> ICoeffRing:
        return RatFuncHbarRing()

    def build_wave(self, params, order, ring) -> WaveFunction:
        coefficients = monotone_wave_coefficients(ring, self.times(params), order)
        return _positive_wave(self.flavor, self.describe(params), order, ring, coefficients)

    def curve_operator(self, params, ring) -> OperatorExpr:
        return general_monotone_operator(ring, self.times(params))

    def alternative_operators(self, params, ring) -> Dict[str, OperatorExpr]:
        return {"polynomial": polynomial_monotone_operator(ring, self.times(params))}

    def hbar_degree_bound(self, params, order) -> Optional[int]:
        return order * max(self.times(params))

    def schur_comparable(self, params) -> bool:
        return True


class MonotoneOrbifoldCurveStrategy(MonotoneCurveStrategy):
    """
    t̃_k = δ_{k,r}/r：x^{rn} 的系数为 1/(n!ħ^n r^n)·∏_{l=1}^{rn-1}(1 - lħ)^{-1}
    """

    flavor = CurveFlavor.MONOTONE_ORBIFOLD

    def times(self, params: Dict[str, Any]) -> Dict[int, Fraction]:
        r = self.orbifold_order(params)
        return {r: Fraction(1, r)}

    def describe(self, params: Dict[str, Any]) -> Dict[str, Any]:
        return {"r": self.orbifold_order(params)}

    def curve_operator(self, params, ring) -> OperatorExpr:
        """x̂(x̂^{r-1} + ∏_{j=1}^{r}(1 + x̂ŷ + ħ(j-1))·ŷ)，ŷ = -ħ∂"""
        r = self.orbifold_order(params)
        hbar = ring.hbar()
        x = OperatorExpr.x(1)
        y = OperatorExpr.diff().scale(-hbar)
        chain = OperatorExpr.identity()
        for j in range(1, r + 1):
            chain = chain * (OperatorExpr.identity() + x * y + OperatorExpr.identity().scale(hbar * (j - 1)))
        return x * (x ** (r - 1) + chain * y)

    def alternative_operators(self, params, ring) -> Dict[str, OperatorExpr]:
        times = self.times(params)
        return {
            "general": general_monotone_operator(ring, times),
            "polynomial": polynomial_monotone_operator(ring, times),
        }


class StrictMonotoneCurveStrategy(ICurveStrategy):
    """
    严格单调 r-轨形：Ψ = Σ_n a_n x^{-rn}，a_n = ∏_{j=1}^{rn-1}(1 + jħ)/(n!ħ^n r^n)
    """

    flavor = CurveFlavor.STRICT_MONOTONE

    def default_ring(self, params, order, config=None) -> ICoeffRing:
        return RatFuncHbarRing()

    def build_wave(self, params, order, ring) -> WaveFunction:
        r = self.orbifold_order(params)
        hbar = ring.hbar()
        terms = {}
        for n in range(order // r + 1):
            numerator = ring.one()
            for j in range(1, r * n):
                numerator = numerator * (ring.one() + hbar * j)
            denominator = ring_power(ring, hbar, n) * ring.coerce(factorial(n) * r ** n)
            terms[-r * n] = numerator * ring.inv(denominator)
        series = univariate(ring, "x", 0, terms, low=-order)
        return WaveFunction(self.flavor, {"r": r}, order, ring, series, Window(-order, None))

    def curve_operator(self, params, ring) -> OperatorExpr:
        """
        (-ħ∂ + x^{-1})^r + ħx∂。
        这是共轭形式 x^{1/ħ}·(…)·x^{-1/ħ} 化简后的结果：x^{1/ħ}(-ħ∂)x^{-1/ħ} = -ħ∂ + x^{-1}，
        因而非整数次幂的 x 不会出现，算子在 Laurent 级数上封闭。
        """
        r = self.orbifold_order(params)
        hbar = ring.hbar()
        z = OperatorExpr.diff().scale(-hbar) + OperatorExpr.x(-1)
        return z ** r + (OperatorExpr.x(1) * OperatorExpr.diff()).scale(hbar)

    def hbar_degree_bound(self, params, order) -> Optional[int]:
        return order * self.orbifold_order(params)


class AtlantesCurveStrategy(ICurveStrategy):
    """
    atlantes：a_n = exp(ħ^r Σ_{j=1}^{n-1} j^r)/(n!ħ^n)，在截断 ħ 级数中展开，
    曲线 ħD - x·exp(ħ^r D^r)
    """

    flavor = CurveFlavor.ATLANTES

    def default_ring(self, params, order, config=None) -> ICoeffRing:
        extra = (config or {}).get("series", {}).get("atlantes_extra_order", 2)
        return TruncHbarRing(order * self.orbifold_order(params) + extra)

    def build_wave(self, params, order, ring) -> WaveFunction:
        r = self.orbifold_order(params)
        hbar = ring.hbar()
        hbar_r = ring_power(ring, hbar, r)
        coefficients = []
        exponent_sum = 0
        for n in range(order + 1):
            if n > 1:
                exponent_sum += (n - 1) ** r
            value = ring.exp(hbar_r * ring.coerce(exponent_sum))
            value = value * ring_power(ring, hbar, -n) * ring.coerce(Fraction(1, factorial(n)))
            coefficients.append(value)
        return _positive_wave(self.flavor, {"r": r}, order, ring, coefficients)

    def curve_operator(self, params, ring) -> OperatorExpr:
        r = self.orbifold_order(params)
        hbar = ring.hbar()
        hbar_r = ring_power(ring, hbar, r)

        def weight(ring: ICoeffRing, m: int):
            return ring.exp(hbar_r * ring.coerce(m ** r))

        return OperatorExpr.euler().scale(hbar) - OperatorExpr.x(1) * OperatorExpr.diag(weight, f"exp(h^{r}D^{r})")


def double_hurwitz_operator(ring: ICoeffRing, times: Dict[int, Fraction]) -> OperatorExpr:
    """Σ_k k·t̃_k·q^{k(k-1)/2}·x^k·e^{kħD} - ħD"""
    q = ring.q()
    operator = OperatorExpr.euler().scale(-ring.hbar())
    for k, t in sorted(times.items()):
        coefficient = ring.coerce(k * t) * ring_power(ring, q, k * (k - 1) // 2)
        operator = operator + (OperatorExpr.x(k) * OperatorExpr.shift(k)).scale(coefficient)
    return operator


def double_hurwitz_wave_coefficients(ring: ICoeffRing, times: Dict[int, Fraction], order: int):
    """x^m 的系数 q^{m(m-1)/2}·h_m(t̃/ħ)"""
    q = ring.q()
    return [ring_power(ring, q, m * (m - 1) // 2) * h
            for m, h in enumerate(exponential_coefficients(ring, times, order))]


class DoubleHurwitzCurveStrategy(ICurveStrategy):
    """双 Hurwitz 波函数，q = e^ħ 与 ħ 作为独立符号"""

    flavor = CurveFlavor.DOUBLE_HURWITZ

    def times(self, params: Dict[str, Any]) -> Dict[int, Fraction]:
        times = parse_times(params.get("times", ()))
        if not times:
            raise DomainException("double Hurwitz waves need at least one nonzero time")
        return times

    def default_ring(self, params, order, config=None) -> ICoeffRing:
        return LaurentQRing()

    def build_wave(self, params, order, ring) -> WaveFunction:
        times = self.times(params)
        coefficients = double_hurwitz_wave_coefficients(ring, times, order)
        return _positive_wave(self.flavor, {"times": times_to_json(times)}, order, ring, coefficients)

    def curve_operator(self, params, ring) -> OperatorExpr:
        return double_hurwitz_operator(ring, self.times(params))


class OneParameterCurveStrategy(ICurveStrategy):
    """
    t̃_k = c^{k-1} 的单参数形变（截断到 x^N），曲线
    1 - (e^{-ŷ}x̂^{-1} - 2c + c²x̂e^{ŷ})ŷ，ŷ = ħD；c = 0 时退化为简单 Hurwitz 曲线。
    """

    flavor = CurveFlavor.ONE_PARAMETER

    @staticmethod
    def deformation(params: Dict[str, Any]) -> Fraction:
        return Fraction(params.get("c", 0))

    def default_ring(self, params, order, config=None) -> ICoeffRing:
        return LaurentQRing()

    def build_wave(self, params, order, ring) -> WaveFunction:
        c = self.deformation(params)
        times = {k: c ** (k - 1) for k in range(1, order + 1)}
        coefficients = double_hurwitz_wave_coefficients(ring, times, order)
        return _positive_wave(self.flavor, {"c": str(c)}, order, ring, coefficients)

    def curve_operator(self, params, ring) -> OperatorExpr:
        c = ring.coerce(self.deformation(params))
        y = OperatorExpr.euler().scale(ring.hbar())
        inner = (OperatorExpr.shift(-1) * OperatorExpr.x(-1)
                 - OperatorExpr.identity().scale(2 * c)
                 + (OperatorExpr.x(1) * OperatorExpr.shift(1)).scale(c * c))
        return OperatorExpr.identity() - inner * y

    def margin(self, params) -> int:
        return 1
