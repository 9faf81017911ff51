"""
Acceptance Suite
selftest 子命令运行的验收检查表：每个检查返回一个 CrossCheck，第一个不一致写入 value
"""

from fractions import Fraction
from math import comb
from typing import Any, Callable, Dict, Iterable, List, Optional, Sequence

from ..core.exceptions import DomainException
from ..core.models import BlockSpec, CrossCheck, CurveFlavor, Partition
from ..utils.logger import logger
from .boson_constraints import BosonConstraints
from .group_oracle import ClassAlgebraElement, GroupOracle
from .hurwitz_engine import (
    HurwitzEngine, elsv_k_coefficients, elsv_reexponentiate, lascoux_thibon_check, newton_check
)
from .partitions import partitions_of
from .quantum_curves import QuantumCurveService
from .series_ring import RatFuncHbarRing

Runner = Callable[[], CrossCheck]

ORACLE_FLAVORS = ("strict_monotone", "monotone", "atlantes", "free_single", "free_group",
                  "class_sum", "completed_cycle")
CONSTRAINT_BETAS = (Fraction(1, 7), Fraction(-2, 9), Fraction(3, 11))
CONSTRAINT_TIMES = ({1: Fraction(1), 2: Fraction(1, 2)}, {1: Fraction(2, 3), 3: Fraction(-1, 5)})
CUT_AND_JOIN_HBARS = (Fraction(1, 7), Fraction(-2, 9))


def catalan(m: int) -> int:
    return comb(2 * m, m) // (m + 1)


def w_table(n: int, b: int) -> ClassAlgebraElement:
    """h_b(J_2..J_n) 的前几项闭式（b ≤ 3），只保留 n 允许的轮换型"""
    def cycle(*parts: int) -> Optional[Partition]:
        rest = n - sum(parts)
        if rest < 0:
            return None
        return Partition.of(*parts, *([1] * rest))

    if b == 0:
        terms = {cycle(): 1}
    elif b == 1:
        terms = {cycle(2): catalan(1)}
    elif b == 2:
        terms = {cycle(3): catalan(2), cycle(2, 2): catalan(1) ** 2, cycle(): n * (n - 1) // 2}
    elif b == 3:
        terms = {cycle(4): catalan(3), cycle(3, 2): catalan(2) * catalan(1),
                 cycle(2, 2, 2): catalan(1) ** 3, cycle(2): Fraction((n + 1) * (n + 2), 2) - 5}
    else:
        raise DomainException(f"closed forms are tabulated for b <= 3, got {b}")
    return ClassAlgebraElement(n, {kappa: value for kappa, value in terms.items() if kappa is not None})


class AcceptanceSuite:
    """
    验收检查集合
    quick 为 True 时缩小穷举范围（用于测试与快速冒烟）。
    """

    def __init__(self, engine: Optional[HurwitzEngine] = None, oracle: Optional[GroupOracle] = None,
                 curves: Optional[QuantumCurveService] = None, config: Optional[Dict[str, Any]] = None,
                 quick: bool = False):
        self.config = config or {}
        self.engine = engine or HurwitzEngine()
        # 验收范围固定在 n ≤ 7，不受用户配置的枚举上限影响
        self.oracle = oracle or GroupOracle(enumeration_limit=7)
        self.curves = curves or QuantumCurveService(config=self.config)
        self.quick = quick

    def runners(self) -> Dict[str, Runner]:
        return {
            "jucys_correspondence": self.check_jucys_correspondence,
            "w_table": self.check_w_table,
            "oracle_character": self.check_oracle_character,
            "block_identities": self.check_block_identities,
            "hypergeometric": self.check_hypergeometric,
            "quantum_curves": self.check_quantum_curves,
            "constraints": self.check_constraints,
            "cut_and_join": self.check_cut_and_join,
            "elsv": self.check_elsv,
            "lascoux_thibon": self.check_lascoux_thibon,
        }

    def run(self, names: Optional[Sequence[str]] = None) -> List[CrossCheck]:
        runners = self.runners()
        selected = list(names) if names else list(runners)
        unknown = [name for name in selected if name not in runners]
        if unknown:
            raise DomainException(f"unknown selftest checks {unknown}; available: {sorted(runners)}")
        results = []
        for name in selected:
            logger.debug(f"selftest: running {name}")
            results.append(runners[name]())
        return results

    # -- 类代数 -------------------------------------------------------------

    def check_jucys_correspondence(self) -> CrossCheck:
        top = 5 if self.quick else 6
        for n in range(2, top + 1):
            for b in range(n):
                if self.oracle.jucys_symmetric(n, "sigma", b) != self.oracle.free_single(n, b):
                    return CrossCheck("jucys_correspondence", False, f"n={n}, b={b}")
        return CrossCheck("jucys_correspondence", True)

    def check_w_table(self) -> CrossCheck:
        degrees = (5,) if self.quick else (6, 7)
        for n in degrees:
            for b in range(4):
                if self.oracle.jucys_symmetric(n, "h", b) != w_table(n, b):
                    return CrossCheck("w_table", False, f"n={n}, b={b}")
        return CrossCheck("w_table", True)

    # -- Hurwitz 数 ---------------------------------------------------------

    @staticmethod
    def oracle_problems(n: int, max_b: int, flavors: Iterable[str] = ORACLE_FLAVORS):
        """(μ, ν, 块向量) 的穷举列表"""
        shapes = partitions_of(n)
        for flavor in flavors:
            if flavor == "class_sum":
                vectors = [(BlockSpec.class_sum(alpha),) for alpha in shapes if alpha.size - alpha.length <= max_b]
            elif flavor == "completed_cycle":
                vectors = [(BlockSpec.completed_cycle(2),) * b for b in range(max_b + 1)]
            else:
                builder = getattr(BlockSpec, flavor)
                vectors = [(builder(b),) for b in range(max_b + 1)]
            for blocks in vectors:
                for mu in shapes:
                    for nu in shapes:
                        yield mu, nu, blocks

    def _compare(self, mu: Partition, nu: Partition, blocks) -> Optional[str]:
        expected = self.oracle.brute_hurwitz(mu, nu, blocks)
        actual = self.engine.hurwitz(mu, nu, blocks)
        if expected != actual:
            labels = ",".join(block.label for block in blocks)
            return f"mu={mu}, nu={nu}, blocks=[{labels}]: oracle {expected} vs characters {actual}"
        return None

    def check_oracle_character(self) -> CrossCheck:
        top = 4 if self.quick else 5
        for n in range(1, top + 1):
            for mu, nu, blocks in self.oracle_problems(n, 4):
                mismatch = self._compare(mu, nu, blocks)
                if mismatch:
                    return CrossCheck("oracle_character", False, mismatch)
        if not self.quick:
            spot = [
                (Partition.of(3, 2, 1), Partition.of(2, 2, 2), (BlockSpec.monotone(3),)),
                (Partition.of(4, 2), Partition.of(3, 3), (BlockSpec.strict_monotone(2),)),
                (Partition.of(6), Partition.one(6), (BlockSpec.atlantes(5),)),
                (Partition.of(2, 2, 2), Partition.of(3, 3), (BlockSpec.free_group(2),)),
                (Partition.of(5, 1), Partition.of(4, 1, 1), (BlockSpec.completed_cycle(2),) * 2),
            ]
            for mu, nu, blocks in spot:
                mismatch = self._compare(mu, nu, blocks)
                if mismatch:
                    return CrossCheck("oracle_character", False, mismatch)
        return CrossCheck("oracle_character", True)

    def check_block_identities(self) -> CrossCheck:
        top = 6 if self.quick else 8
        for n in range(1, top + 1):
            for shape in partitions_of(n):
                for b in range(n):
                    strict = self.engine.block_eigenvalue(BlockSpec.strict_monotone(b), shape)
                    single = self.engine.block_eigenvalue(BlockSpec.free_single(b), shape)
                    if strict != single:
                        return CrossCheck("block_identities", False, f"strict vs free single: {shape}, b={b}")
                for b in range(min(n, 5)):
                    monotone = self.engine.block_eigenvalue(BlockSpec.monotone(b), shape)
                    group = self.engine.block_eigenvalue(BlockSpec.free_group(b), shape)
                    if monotone != group:
                        return CrossCheck("block_identities", False, f"monotone vs free group: {shape}, b={b}")
        for n in range(2, 6):
            for b in range(min(n, 4)):
                if self.oracle.jucys_symmetric(n, "h", b) != self.oracle.free_group(n, b):
                    return CrossCheck("block_identities", False, f"oracle h vs free group: n={n}, b={b}")
        return CrossCheck("block_identities", True)

    def check_hypergeometric(self) -> CrossCheck:
        top = 4 if self.quick else 5
        exponent_vectors = [((1,), ()), ((), (1,)), ((1,), (2,)), ((2, 1), ()), ((), (1, 2)), ((1, 1), (1, 1))]
        for n in range(1, top + 1):
            shapes = partitions_of(n)
            for wpows, zpows in exponent_vectors:
                blocks = tuple(BlockSpec.strict_monotone(c) for c in wpows) + \
                    tuple(BlockSpec.monotone(d) for d in zpows)
                for mu in shapes:
                    for nu in shapes:
                        coefficient = self.engine.hypergeometric_coefficient(n, wpows, zpows, mu, nu)
                        if coefficient != self.oracle.brute_hurwitz(mu, nu, blocks):
                            return CrossCheck("hypergeometric", False,
                                              f"n={n}, w={list(wpows)}, z={list(zpows)}, mu={mu}, nu={nu}")
        return CrossCheck("hypergeometric", True)

    # -- 量子曲线 -----------------------------------------------------------

    def curve_cases(self) -> List[tuple]:
        if self.quick:
            return [
                (CurveFlavor.MONOTONE_ORBIFOLD, {"r": 2}, 6),
                (CurveFlavor.STRICT_MONOTONE, {"r": 1}, 6),
                (CurveFlavor.ATLANTES, {"r": 2}, 4),
                (CurveFlavor.DOUBLE_HURWITZ, {"times": {1: 1, 2: Fraction(1, 2)}}, 5),
                (CurveFlavor.ONE_PARAMETER, {"c": 0}, 5),
            ]
        return [
            (CurveFlavor.MONOTONE_ORBIFOLD, {"r": 1}, 12),
            (CurveFlavor.MONOTONE_ORBIFOLD, {"r": 2}, 12),
            (CurveFlavor.MONOTONE_ORBIFOLD, {"r": 3}, 12),
            (CurveFlavor.STRICT_MONOTONE, {"r": 1}, 12),
            (CurveFlavor.STRICT_MONOTONE, {"r": 2}, 12),
            (CurveFlavor.ATLANTES, {"r": 1}, 10),
            (CurveFlavor.ATLANTES, {"r": 2}, 10),
            (CurveFlavor.DOUBLE_HURWITZ, {"times": {1: 1, 2: Fraction(1, 2)}}, 10),
            (CurveFlavor.ONE_PARAMETER, {"c": Fraction(1, 2)}, 8),
            (CurveFlavor.ONE_PARAMETER, {"c": Fraction(-2, 3)}, 8),
            (CurveFlavor.ONE_PARAMETER, {"c": 0}, 8),
        ]

    def check_quantum_curves(self) -> CrossCheck:
        for flavor, params, order in self.curve_cases():
            report, crosschecks = self.curves.verify(flavor, params, order)
            if not report.ok:
                return CrossCheck("quantum_curves", False, f"{flavor.value} {params}: {report.first_failure}")
            for check in crosschecks:
                if not check.agrees:
                    return CrossCheck("quantum_curves", False, f"{flavor.value} {params}: {check.method}")
        return CrossCheck("quantum_curves", True)

    # -- 线性约束 -----------------------------------------------------------

    def check_constraints(self) -> CrossCheck:
        constraints = BosonConstraints.from_config(self.config, truncation=4 if self.quick else 6)
        failures = constraints.calibration_failures()
        if failures:
            return CrossCheck("constraints", False, f"Y calibration: {', '.join(failures)}")
        betas = CONSTRAINT_BETAS[:1] if self.quick else CONSTRAINT_BETAS
        for beta in betas + (Fraction(0),):
            for times in CONSTRAINT_TIMES:
                tau = constraints.build_tau_mm(beta, times)
                for n in (1, 2):
                    report = constraints.verify_constraints(tau, n)
                    if not report.ok:
                        return CrossCheck("constraints", False, f"R{n}, beta={beta}: {report.first_failure}")
        symbolic = BosonConstraints(constraints.truncation, ring=RatFuncHbarRing())
        commutator = symbolic.verify_commutator(1, 2)
        if not commutator.ok:
            return CrossCheck("constraints", False, f"[R1, R2]: {commutator.first_failure}")
        return CrossCheck("constraints", True)

    def check_cut_and_join(self) -> CrossCheck:
        constraints = BosonConstraints.from_config(self.config, truncation=4 if self.quick else 6)
        for hbar in CUT_AND_JOIN_HBARS:
            report = constraints.verify_cut_and_join(hbar)
            if not report.ok:
                return CrossCheck("cut_and_join", False, f"hbar={hbar}: {report.first_failure}")
        return CrossCheck("cut_and_join", True)

    # -- ELSV 相邻与级数恒等式 ----------------------------------------------

    def check_elsv(self) -> CrossCheck:
        coefficients = elsv_k_coefficients(6)
        if coefficients[:2] != [Fraction(-3), Fraction(-21, 2)]:
            return CrossCheck("elsv", False, f"K = {[str(k) for k in coefficients[:2]]}")
        if not elsv_reexponentiate(coefficients, 6):
            return CrossCheck("elsv", False, "re-exponentiation")
        grids = [(0, 1, 6), (0, 2, 3), (1, 1, 5)] if self.quick else [(0, 1, 8), (0, 2, 4), (1, 1, 8)]
        for g, ell, max_part in grids:
            report = self.engine.quasipolynomiality_check(g, ell, max_part=max_part)
            if not report.ok:
                return CrossCheck("elsv", False, f"quasipolynomiality g={g}, l={ell}: {report.first_failure}")
        return CrossCheck("elsv", True)

    def check_lascoux_thibon(self) -> CrossCheck:
        top = 4 if self.quick else 6
        for n in range(1, top + 1):
            for shape in partitions_of(n):
                if not lascoux_thibon_check(shape, 8):
                    return CrossCheck("lascoux_thibon", False, str(shape))
                if not newton_check(shape, 8):
                    return CrossCheck("lascoux_thibon", False, f"newton {shape}")
        return CrossCheck("lascoux_thibon", True)
