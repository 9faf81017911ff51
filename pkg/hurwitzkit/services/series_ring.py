"""
Series Ring Service
精确截断级数运算
- 系数环：有理数、ħ 的有理函数、截断 ħ 级数、q 与 ħ 的有理函数（q = e^ħ 视为独立符号）
- 多元截断级数：加权次数截断（或 Laurent 窗口），支持 exp / log
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from math import inf
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple, Union

from sympy import QQ, Rational
from sympy.polys.fields import field

from ..core.exceptions import DomainException, PoleException

Monomial = Tuple[int, ...]
Scalar = Union[int, Fraction]
EXACT = inf


def to_fraction(value: Any) -> Fraction:
    """int、Fraction、sympy Rational 或 QQ 域元素转为 Fraction。"""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if hasattr(value, "p") and hasattr(value, "q"):
        return Fraction(int(value.p), int(value.q))
    if hasattr(value, "numerator") and hasattr(value, "denominator"):
        return Fraction(int(value.numerator), int(value.denominator))
    raise DomainException(f"not an exact rational: {value!r}")


def rational_to_json(value: Scalar) -> str:
    return str(Fraction(value))


# ---------------------------------------------------------------------------
# 截断 ħ 级数
# ---------------------------------------------------------------------------

class TruncHbar:
    """
    带绝对精度的 Laurent ħ 级数：已知 ħ^e（e < prec）的系数，其余为 O(ħ^prec)。
    精确元素（例如有限多项式）的 prec 为无穷。
    """

    __slots__ = ("coeffs", "prec")

    def __init__(self, coeffs: Optional[Dict[int, Scalar]] = None, prec: float = EXACT):
        self.prec = prec
        self.coeffs: Dict[int, Fraction] = {
            e: Fraction(c) for e, c in (coeffs or {}).items() if c and e < prec
        }

    @classmethod
    def hbar_power(cls, e: int, coefficient: Scalar = 1) -> "TruncHbar":
        return cls({e: coefficient})

    @property
    def valuation(self) -> float:
        return min(self.coeffs) if self.coeffs else self.prec

    @staticmethod
    def _lift(value: Any) -> "TruncHbar":
        if isinstance(value, TruncHbar):
            return value
        return TruncHbar({0: to_fraction(value)})

    def __add__(self, other: Any) -> "TruncHbar":
        other = self._lift(other)
        merged = dict(self.coeffs)
        for e, c in other.coeffs.items():
            merged[e] = merged.get(e, 0) + c
        return TruncHbar(merged, min(self.prec, other.prec))

    __radd__ = __add__

    def __neg__(self) -> "TruncHbar":
        return TruncHbar({e: -c for e, c in self.coeffs.items()}, self.prec)

    def __sub__(self, other: Any) -> "TruncHbar":
        return self + (-self._lift(other))

    def __rsub__(self, other: Any) -> "TruncHbar":
        return self._lift(other) - self

    def __mul__(self, other: Any) -> "TruncHbar":
        other = self._lift(other)
        prec = min(self.prec + other.valuation, other.prec + self.valuation)
        product: Dict[int, Fraction] = {}
        for e1, c1 in self.coeffs.items():
            for e2, c2 in other.coeffs.items():
                if e1 + e2 < prec:
                    product[e1 + e2] = product.get(e1 + e2, 0) + c1 * c2
        return TruncHbar(product, prec)

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "TruncHbar":
        if isinstance(other, TruncHbar):
            raise DomainException("divide truncated hbar-series through TruncHbarRing.inv")
        value = to_fraction(other)
        if value == 0:
            raise PoleException("division by zero")
        return TruncHbar({e: c / value for e, c in self.coeffs.items()}, self.prec)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other: object) -> bool:
        try:
            return not (self - other)
        except DomainException:
            return False

    def __repr__(self) -> str:
        terms = " + ".join(f"{c}*h^{e}" for e, c in sorted(self.coeffs.items()))
        tail = "" if self.prec == EXACT else f" + O(h^{self.prec})"
        return f"TruncHbar({terms or '0'}{tail})"

    def inverse(self, order: int) -> "TruncHbar":
        """1/self，结果精度不超过 order。"""
        if not self.coeffs:
            raise PoleException("inverse of a series with no known nonzero coefficient")
        v = self.valuation
        lead = self.coeffs[v]
        # self = lead·ħ^v·(1 + u)，u 的赋值至少为 1
        u = TruncHbar({e - v: c / lead for e, c in self.coeffs.items() if e != v}, self.prec - v)
        if not u.coeffs and u.prec == EXACT:
            return TruncHbar({-v: 1 / lead})
        target = min(self.prec - v, order + v)
        unit = TruncHbar({0: 1}, target)
        power = TruncHbar({0: 1})
        while True:
            power = power * (-u)
            power = TruncHbar(power.coeffs, min(power.prec, target))
            if not power.coeffs:
                break
            unit = unit + power
        return TruncHbar({e - v: c / lead for e, c in unit.coeffs.items()}, unit.prec - v)

    def exp(self, order: int) -> "TruncHbar":
        """exp(self)，要求 ħ-赋值至少为 1。"""
        if self.coeffs and self.valuation < 1:
            raise DomainException("exp of a hbar-series needs positive valuation")
        prec = min(self.prec, order)
        result = TruncHbar({0: 1}, prec)
        term = TruncHbar({0: 1})
        k = 0
        while True:
            k += 1
            term = term * self * Fraction(1, k)
            term = TruncHbar(term.coeffs, min(term.prec, prec))
            if not term.coeffs:
                break
            result = result + term
        return result

    def evaluate_polynomial(self, value: Fraction) -> Fraction:
        if self.prec != EXACT:
            raise DomainException("cannot evaluate a truncated hbar-series")
        return sum((c * Fraction(value) ** e for e, c in self.coeffs.items()), Fraction(0))


# ---------------------------------------------------------------------------
# 系数环
# ---------------------------------------------------------------------------

class ICoeffRing(ABC):
    """系数环接口"""

    name: str = "abstract"
    exact: bool = True

    @abstractmethod
    def coerce(self, value: Any) -> Any:
        """把 int / Fraction / 本环元素转为本环元素"""
        pass

    @abstractmethod
    def hbar(self) -> Any:
        pass

    def q(self) -> Any:
        raise DomainException(f"ring {self.name} has no q = exp(hbar)")

    def zero(self) -> Any:
        return self.coerce(0)

    def one(self) -> Any:
        return self.coerce(1)

    def is_zero(self, value: Any) -> bool:
        return not value

    def inv(self, value: Any) -> Any:
        if self.is_zero(value):
            raise PoleException(f"division by zero in ring {self.name}")
        return self.one() / value

    def exp(self, value: Any) -> Any:
        if self.is_zero(value):
            return self.one()
        raise DomainException(f"ring {self.name} cannot exponentiate {value}")

    @abstractmethod
    def to_json(self, value: Any) -> Any:
        pass

    def describe(self) -> Dict[str, Any]:
        return {"ring": self.name}

    def signature(self) -> Tuple:
        return (self.name,)


class RationalRing(ICoeffRing):
    """
    有理数环。hbar_value 不为 None 时，ħ 被特化为该有理数（采样验证模式）。
    """

    name = "rational"

    def __init__(self, hbar_value: Optional[Scalar] = None):
        self.hbar_value = None if hbar_value is None else Fraction(hbar_value)
        self.exact = hbar_value is None

    def coerce(self, value: Any) -> Fraction:
        return to_fraction(value)

    def hbar(self) -> Fraction:
        if self.hbar_value is None:
            raise DomainException("rational ring has no hbar; construct it with hbar_value")
        return self.hbar_value

    def to_json(self, value: Fraction) -> str:
        return rational_to_json(value)

    def describe(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"ring": self.name}
        if self.hbar_value is not None:
            data["hbar"] = str(self.hbar_value)
        return data

    def signature(self) -> Tuple:
        return (self.name, self.hbar_value)


class _SympyFieldRing(ICoeffRing):
    """sympy 有理函数域上的系数环公共实现。"""

    symbols: Tuple[str, ...] = ()

    def __init__(self):
        self.field, *self.gens = field(",".join(self.symbols), QQ)

    def coerce(self, value: Any) -> Any:
        if hasattr(value, "field") and value.field == self.field:
            return value
        fraction = to_fraction(value)
        return self.field(Rational(fraction.numerator, fraction.denominator))

    def inv(self, value: Any) -> Any:
        if self.is_zero(value):
            raise PoleException(f"division by zero in ring {self.name}")
        return 1 / value

    def to_json(self, value: Any) -> Dict[str, str]:
        """分母首一化后的 {"num", "den"}。"""
        value = self.coerce(value)
        lead = value.denom.LC
        numer = value.numer.quo_ground(lead)
        denom = value.denom.quo_ground(lead)
        return {"num": str(numer.as_expr()), "den": str(denom.as_expr())}

    def evaluate(self, value: Any, **assignments: Scalar) -> Any:
        """把若干生成元替换为有理数；全部替换时返回 Fraction。"""
        value = self.coerce(value)
        numer = self._evaluate_poly(value.numer, assignments)
        denom = self._evaluate_poly(value.denom, assignments)
        if denom == 0:
            raise PoleException(f"denominator vanishes at {assignments}")
        return numer / denom

    def _evaluate_poly(self, poly, assignments: Dict[str, Scalar]) -> Fraction:
        missing = [s for s in self.symbols if s not in assignments]
        if missing:
            raise DomainException(f"evaluation needs values for {missing}")
        total = Fraction(0)
        for monom, coeff in poly.terms():
            term = to_fraction(coeff)
            for symbol, e in zip(self.symbols, monom):
                term *= Fraction(assignments[symbol]) ** e
            total += term
        return total


class RatFuncHbarRing(_SympyFieldRing):
    """QQ(ħ)：单调曲线的分母 1 - jħ 在这里精确出现。"""

    name = "ratfunc_hbar"
    symbols = ("hbar",)

    def hbar(self) -> Any:
        return self.gens[0]


class LaurentQRing(_SympyFieldRing):
    """QQ(q, ħ)：q 与 ħ 代数无关，实现 e^{cħD} 平移；ħ 的负幂自然存在。"""

    name = "laurent_q"
    symbols = ("q", "hbar")

    def hbar(self) -> Any:
        return self.gens[1]

    def q(self) -> Any:
        return self.gens[0]


class TruncHbarRing(ICoeffRing):
    """截断 ħ 级数环，exp 与求逆的精度上限为 order。"""

    name = "trunc_hbar"

    def __init__(self, order: int):
        if order < 1:
            raise DomainException(f"hbar truncation order must be positive, got {order}")
        self.order = order

    def coerce(self, value: Any) -> TruncHbar:
        if isinstance(value, TruncHbar):
            return value
        return TruncHbar({0: to_fraction(value)})

    def hbar(self) -> TruncHbar:
        return TruncHbar.hbar_power(1)

    def q(self) -> TruncHbar:
        return self.exp(self.hbar())

    def inv(self, value: Any) -> TruncHbar:
        return self.coerce(value).inverse(self.order)

    def exp(self, value: Any) -> TruncHbar:
        return self.coerce(value).exp(self.order)

    def from_ratfunc(self, ring: RatFuncHbarRing, value: Any) -> TruncHbar:
        """用几何级数把 QQ(ħ) 的元素展开成截断 ħ 级数。"""
        value = ring.coerce(value)
        numer = TruncHbar({monom[0]: to_fraction(c) for monom, c in value.numer.terms()})
        denom = TruncHbar({monom[0]: to_fraction(c) for monom, c in value.denom.terms()})
        return numer * denom.inverse(self.order)

    def to_json(self, value: TruncHbar) -> Dict[str, Any]:
        value = self.coerce(value)
        return {
            "terms": {str(e): str(c) for e, c in sorted(value.coeffs.items())},
            "prec": None if value.prec == EXACT else int(value.prec),
        }

    def describe(self) -> Dict[str, Any]:
        return {"ring": self.name, "M": self.order}

    def signature(self) -> Tuple:
        return (self.name, self.order)


# ---------------------------------------------------------------------------
# 多元截断级数
# ---------------------------------------------------------------------------

Bound = Tuple[Tuple[int, ...], int]


class TruncatedSeries:
    """
    多元截断级数
    - variables / weights: 变量名与主加权次数（deg p_k = k, deg x = 1, deg x^{-1} = -1）
    - cap / low: 主加权次数窗口 [low, cap]，low 为 None 表示不限下界
    - bounds: 额外的线性分次上界，例如辅助标记变量的次数
    所有存储的单项式都满足上述约束；乘法截断到窗口内。
    """

    def __init__(self, ring: ICoeffRing, variables: Sequence[str], weights: Sequence[int], cap: int,
                 terms: Optional[Dict[Monomial, Any]] = None, low: Optional[int] = None,
                 bounds: Sequence[Bound] = ()):
        if len(variables) != len(weights):
            raise DomainException("every series variable needs a weight")
        self.ring = ring
        self.variables = tuple(variables)
        self.weights = tuple(weights)
        self.cap = cap
        self.low = low
        self.bounds: Tuple[Bound, ...] = tuple((tuple(w), c) for w, c in bounds)
        self.terms: Dict[Monomial, Any] = {}
        for monomial, value in (terms or {}).items():
            monomial = tuple(monomial)
            if len(monomial) != len(self.variables):
                raise DomainException(f"monomial {monomial} does not match variables {self.variables}")
            if not self.admissible(monomial):
                continue
            value = ring.coerce(value)
            if not ring.is_zero(value):
                self.terms[monomial] = value

    # -- 构造 ---------------------------------------------------------------

    def like(self, terms: Optional[Dict[Monomial, Any]] = None) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.variables, self.weights, self.cap, terms, self.low, self.bounds)

    def zero(self) -> "TruncatedSeries":
        return self.like()

    def constant(self, value: Any) -> "TruncatedSeries":
        return self.like({self.unit_monomial(): value})

    def one(self) -> "TruncatedSeries":
        return self.constant(1)

    def unit_monomial(self) -> Monomial:
        return (0,) * len(self.variables)

    def monomial(self, exponents: Dict[str, int], value: Any = 1) -> "TruncatedSeries":
        mono = [0] * len(self.variables)
        for name, e in exponents.items():
            mono[self.index(name)] = e
        return self.like({tuple(mono): value})

    def variable(self, name: str, value: Any = 1) -> "TruncatedSeries":
        return self.monomial({name: 1}, value)

    def index(self, name: str) -> int:
        try:
            return self.variables.index(name)
        except ValueError:
            raise DomainException(f"unknown series variable {name!r}")

    # -- 次数与约束 ---------------------------------------------------------

    def degree(self, monomial: Monomial) -> int:
        return sum(w * e for w, e in zip(self.weights, monomial))

    def admissible(self, monomial: Monomial) -> bool:
        degree = self.degree(monomial)
        if degree > self.cap or (self.low is not None and degree < self.low):
            return False
        return all(sum(w * e for w, e in zip(weights, monomial)) <= cap for weights, cap in self.bounds)

    def signature(self) -> Tuple:
        return (self.ring.signature(), self.variables, self.weights, self.cap, self.low, self.bounds)

    def _check(self, other: "TruncatedSeries"):
        if not isinstance(other, TruncatedSeries) or self.signature() != other.signature():
            raise DomainException("series signatures differ (ring, variables, weights or truncation)")

    # -- 环运算 -------------------------------------------------------------

    def __add__(self, other: Any) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = self.constant(other)
        self._check(other)
        merged = dict(self.terms)
        for monomial, value in other.terms.items():
            merged[monomial] = merged[monomial] + value if monomial in merged else value
        return self.like(merged)

    __radd__ = __add__

    def __neg__(self) -> "TruncatedSeries":
        minus_one = self.ring.coerce(-1)
        return self.like({m: minus_one * v for m, v in self.terms.items()})

    def __sub__(self, other: Any) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            other = self.constant(other)
        return self + (-other)

    def __rsub__(self, other: Any) -> "TruncatedSeries":
        return self.constant(other) - self

    def scale(self, factor: Any) -> "TruncatedSeries":
        factor = self.ring.coerce(factor)
        return self.like({m: factor * v for m, v in self.terms.items()})

    def _product_terms(self, left: Dict[Monomial, Any], right: Dict[Monomial, Any]) -> Dict[Monomial, Any]:
        product: Dict[Monomial, Any] = {}
        for m1, c1 in left.items():
            for m2, c2 in right.items():
                monomial = tuple(a + b for a, b in zip(m1, m2))
                if not self.admissible(monomial):
                    continue
                value = c1 * c2
                product[monomial] = product[monomial] + value if monomial in product else value
        return product

    def __mul__(self, other: Any) -> "TruncatedSeries":
        if not isinstance(other, TruncatedSeries):
            return self.scale(other)
        self._check(other)
        return self.like(self._product_terms(self.terms, other.terms))

    def __rmul__(self, other: Any) -> "TruncatedSeries":
        return self.scale(other)

    def __pow__(self, exponent: int) -> "TruncatedSeries":
        if exponent < 0:
            raise DomainException("negative powers of truncated series are not supported")
        result = self.one()
        for _ in range(exponent):
            result = result * self
        return result

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        try:
            return (self - other).is_zero()
        except DomainException:
            return False

    def __repr__(self) -> str:
        return f"TruncatedSeries({self.variables}, cap={self.cap}, terms={len(self.terms)})"

    # -- 访问 ---------------------------------------------------------------

    def coefficient(self, monomial: Union[Monomial, Dict[str, int]]) -> Any:
        if isinstance(monomial, dict):
            mono = [0] * len(self.variables)
            for name, e in monomial.items():
                mono[self.index(name)] = e
            monomial = tuple(mono)
        return self.terms.get(tuple(monomial), self.ring.zero())

    def constant_term(self) -> Any:
        return self.coefficient(self.unit_monomial())

    def items(self) -> List[Tuple[Monomial, Any]]:
        return sorted(self.terms.items(), key=lambda item: (self.degree(item[0]), item[0]))

    def homogeneous_components(self) -> Dict[int, Dict[Monomial, Any]]:
        components: Dict[int, Dict[Monomial, Any]] = {}
        for monomial, value in self.terms.items():
            components.setdefault(self.degree(monomial), {})[monomial] = value
        return components

    def truncate(self, cap: int) -> "TruncatedSeries":
        return TruncatedSeries(self.ring, self.variables, self.weights, min(cap, self.cap),
                               self.terms, self.low, self.bounds)

    def map_coefficients(self, ring: ICoeffRing, fn: Callable[[Any], Any]) -> "TruncatedSeries":
        return TruncatedSeries(ring, self.variables, self.weights, self.cap,
                               {m: fn(v) for m, v in self.terms.items()}, self.low, self.bounds)

    # -- exp / log ----------------------------------------------------------

    def _require_positive_grading(self, operation: str):
        for monomial in self.terms:
            if monomial != self.unit_monomial() and self.degree(monomial) <= 0:
                raise DomainException(f"{operation} needs every non-constant monomial to have positive degree")

    def exp(self) -> "TruncatedSeries":
        """
        exp(g)，要求常数项为零。用 Euler 算子递推：d·f_d = Σ_{k=1..d} k·g_k·f_{d-k}。
        """
        if not self.ring.is_zero(self.constant_term()):
            raise DomainException("exp requires a zero constant term")
        self._require_positive_grading("exp")
        g = self.homogeneous_components()
        f: Dict[int, Dict[Monomial, Any]] = {0: {self.unit_monomial(): self.ring.one()}}
        for d in range(1, self.cap + 1):
            accumulated = self.like()
            for k in range(1, d + 1):
                if k in g and (d - k) in f:
                    accumulated = accumulated + self.like(self._product_terms(g[k], f[d - k])).scale(k)
            component = accumulated.scale(Fraction(1, d))
            if component.terms:
                f[d] = component.terms
        merged: Dict[Monomial, Any] = {}
        for component in f.values():
            merged.update(component)
        return self.like(merged)

    def log(self) -> "TruncatedSeries":
        """
        log(f)，要求常数项为 1：g_d = f_d - (1/d)·Σ_{k=1..d-1} k·g_k·f_{d-k}。
        """
        if not self.ring.is_zero(self.constant_term() - self.ring.one()):
            raise DomainException("log requires constant term 1")
        self._require_positive_grading("log")
        f = self.homogeneous_components()
        g: Dict[int, Dict[Monomial, Any]] = {}
        for d in range(1, self.cap + 1):
            correction = self.like()
            for k in range(1, d):
                if k in g and (d - k) in f:
                    correction = correction + self.like(self._product_terms(g[k], f[d - k])).scale(k)
            component = self.like(f.get(d, {})) - correction.scale(Fraction(1, d))
            if component.terms:
                g[d] = component.terms
        merged: Dict[Monomial, Any] = {}
        for component in g.values():
            merged.update(component)
        return self.like(merged)

    # -- 序列化 -------------------------------------------------------------

    def monomial_label(self, monomial: Monomial) -> str:
        factors = []
        for name, e in zip(self.variables, monomial):
            if e == 1:
                factors.append(name)
            elif e:
                factors.append(f"{name}^{e}")
        return "*".join(factors) or "1"

    def to_json(self) -> List[Dict[str, Any]]:
        return [
            {"monomial": self.monomial_label(m), "coefficient": self.ring.to_json(v)}
            for m, v in self.items()
        ]


def series_add(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a + b


def series_mul(a: TruncatedSeries, b: TruncatedSeries) -> TruncatedSeries:
    return a * b


def series_exp(a: TruncatedSeries) -> TruncatedSeries:
    return a.exp()


def series_log(a: TruncatedSeries) -> TruncatedSeries:
    return a.log()


def univariate(ring: ICoeffRing, name: str, cap: int, coefficients: Dict[int, Any],
               low: Optional[int] = None, weight: int = 1) -> TruncatedSeries:
    """单变量级数的便捷构造：{指数: 系数}。"""
    return TruncatedSeries(ring, (name,), (weight,), cap, {(e,): c for e, c in coefficients.items()}, low)

