"""
Command Handlers - 命令处理器
本模块采用命令模式（Command Pattern）和工厂模式（Factory Pattern）。
- ICommandHandler: 所有子命令处理器的统一接口：声明参数、在计算前校验参数、执行并返回 CommandResult。
- 每个具体处理器（如 HurwitzCommandHandler、QCurveCommandHandler）封装一个 CLI 子命令的全部逻辑。
- CommandFactory（在 command_factory.py 中）按子命令名称登记处理器，cli 只与工厂交互。
"""

import argparse
from abc import ABC, abstractmethod
from fractions import Fraction
from typing import Any, Callable, Dict, List, Tuple

from ..core.exceptions import CommandException
from ..core.models import (
    AutomorphismMode, BlockFlavor, BlockSpec, CommandResult, CrossCheck, CurveFlavor, HurwitzProblem
)
from ..services.acceptance import w_table
from ..services.boson_constraints import BosonConstraints
from ..services.characters import central_character
from ..services.group_oracle import ClassAlgebraElement
from ..services.hurwitz_engine import FAMILIES, elsv_k_coefficients, elsv_reexponentiate
from ..services.partitions import orbifold_profile, partitions_of
from ..services.quantum_curves import times_to_json
from ..services.series_ring import RatFuncHbarRing
from ..utils.logger import logger
from .arguments import block_arg, int_list_arg, partition_arg, rational_arg, times_arg

TABLE_FLAVORS = ("strict_monotone", "monotone", "atlantes", "free_single", "free_group", "simple")


class ICommandHandler(ABC):
    """
    命令处理器接口（Command Interface）
    """

    name: str = ""
    help: str = ""

    def __init__(self, app):
        self.app = app

    @abstractmethod
    def add_arguments(self, parser: argparse.ArgumentParser):
        """向子命令解析器登记参数"""
        pass

    def validate(self, args: argparse.Namespace):
        """
        在任何计算开始之前校验参数组合。

        :param args: 解析后的参数
        :raises CommandException: 参数组合不合法
        """
        if args.format == "csv" and not self.tabular(args):
            raise CommandException(f"{self.name}: csv output is only available for tables")

    def tabular(self, args: argparse.Namespace) -> bool:
        return False

    @abstractmethod
    def handle(self, args: argparse.Namespace) -> CommandResult:
        """
        执行命令。

        :param args: 解析后的参数
        :return: 查询、结果与交叉验证
        """
        pass

    def add_oracle_crosscheck(self, result: CommandResult, n: int, compute: Callable[[], Tuple[bool, str]]):
        """n 在枚举上限内时运行暴力交叉验证，否则记录跳过消息。"""
        oracle = self.app.oracle
        if not oracle.allows(n):
            logger.debug(f"oracle cross-check skipped for n={n}")
            message = self.app.response_manager.oracle_skipped(n, oracle.enumeration_limit)
            if message:
                result.messages.append(message)
            return
        agrees, value = compute()
        result.crosschecks.append(CrossCheck("oracle", agrees, value))


def _blocks_from_args(args: argparse.Namespace) -> Tuple[BlockSpec, ...]:
    """--flavor/--b 简写与重复的 --block 合并成块向量"""
    blocks: List[BlockSpec] = list(args.block or [])
    if args.flavor:
        if args.b is None:
            raise CommandException(f"--flavor {args.flavor} needs --b")
        if args.flavor == "simple":
            blocks.extend([BlockSpec.completed_cycle(2)] * args.b)
        elif args.flavor == BlockFlavor.FREE_GROUP_FIXED.value:
            if args.k is None:
                raise CommandException("--flavor free_group_fixed needs --k")
            blocks.append(BlockSpec.free_group_fixed(args.b, args.k))
        elif args.flavor in (BlockFlavor.CLASS_SUM.value, BlockFlavor.HYPER_W.value, BlockFlavor.HYPER_Z.value,
                             BlockFlavor.COMPLETED_CYCLE.value):
            raise CommandException(f"--flavor {args.flavor} takes its parameter through --block")
        else:
            blocks.append(BlockSpec(BlockFlavor(args.flavor), args.b))
    return tuple(blocks)


def _add_problem_arguments(parser: argparse.ArgumentParser):
    parser.add_argument("--mu", type=partition_arg, help="ramification over 0, e.g. 2,1")
    parser.add_argument("--nu", type=partition_arg, help="ramification over infinity, e.g. 1,1,1")
    flavors = [f.value for f in BlockFlavor] + ["simple"]
    parser.add_argument("--flavor", choices=flavors, help="single block flavor (shorthand for --block)")
    parser.add_argument("--b", type=int, help="block degree for --flavor")
    parser.add_argument("--k", type=int, help="number of factors for free_group_fixed")
    parser.add_argument("--block", type=block_arg, action="append",
                        help="block spec flavor:param, repeatable (monotone:2, class_sum:2,1, hyper_z:1/3)")
    parser.add_argument("--mode", choices=[m.value for m in AutomorphismMode], default="full",
                        help="automorphism normalization")


def _problem_query(problem: HurwitzProblem, command: str) -> Dict[str, Any]:
    return {"command": command, **problem.to_json()}


class HurwitzCommandHandler(ICommandHandler):
    """'hurwitz' 子命令：特征标公式求值，附带暴力交叉验证"""

    name = "hurwitz"
    help = "compute Hurwitz numbers by the character formula"

    def add_arguments(self, parser):
        _add_problem_arguments(parser)
        parser.add_argument("--w", type=int_list_arg, help="w exponents of the hypergeometric coefficient")
        parser.add_argument("--z", type=int_list_arg, help="z exponents of the hypergeometric coefficient")
        parser.add_argument("--table", action="store_true", help="tabulate disconnected numbers keyed by (g, mu)")
        parser.add_argument("--connected", choices=FAMILIES, help="connected number of a block family")
        parser.add_argument("--hypermap", action="store_true", help="three-point cover count with nu = (r^{n/r})")
        parser.add_argument("--genus", type=int_list_arg, default=[0], help="genera for --table / --connected")
        parser.add_argument("--degrees", type=int_list_arg, default=[1, 2, 3, 4], help="degrees n for --table")
        parser.add_argument("--r", type=int, default=1, help="orbifold order (nu = (r^{n/r}))")
        parser.add_argument("--power", type=int, default=2, help="atlantes block power for --connected")

    def tabular(self, args) -> bool:
        return args.table

    def validate(self, args):
        super().validate(args)
        if args.r < 1:
            raise CommandException("--r must be >= 1")
        modes = [args.table, bool(args.connected), args.hypermap, bool(args.w or args.z)]
        if sum(modes) > 1:
            raise CommandException("--table, --connected, --hypermap and --w/--z are mutually exclusive")
        if args.table:
            if args.flavor not in TABLE_FLAVORS:
                raise CommandException(f"--table needs --flavor in {TABLE_FLAVORS}")
            return
        if args.mu is None:
            raise CommandException("--mu is required")
        if args.connected:
            if len(args.genus) != 1:
                raise CommandException("--connected takes a single --genus")
            return
        if args.hypermap:
            if args.b is None:
                raise CommandException("--hypermap needs --b")
            if args.mu.size % args.r:
                raise CommandException(f"r = {args.r} does not divide |mu| = {args.mu.size}")
            return
        if args.nu is None:
            raise CommandException("--nu is required")
        if args.mu.size != args.nu.size:
            raise CommandException(f"|mu| = {args.mu.size} differs from |nu| = {args.nu.size}")
        if args.w or args.z:
            if args.flavor or args.block:
                raise CommandException("--w/--z replace the block vector")
            return
        _blocks_from_args(args)

    def handle(self, args) -> CommandResult:
        if args.table:
            return self._table(args)
        if args.connected:
            return self._connected(args)
        if args.hypermap:
            return self._hypermap(args)
        if args.w or args.z:
            return self._hypergeometric(args)

        problem = HurwitzProblem(args.mu, args.nu, _blocks_from_args(args), AutomorphismMode(args.mode))
        value = self.app.engine.hurwitz_number(problem)
        result = CommandResult(_problem_query(problem, self.name), str(value))

        def brute():
            expected = self.app.oracle.brute_hurwitz(problem.mu, problem.nu, problem.blocks, problem.mode)
            return expected == value, str(expected)
        self.add_oracle_crosscheck(result, problem.n, brute)
        return result

    def _hypergeometric(self, args) -> CommandResult:
        wpows, zpows = args.w or [], args.z or []
        n = args.mu.size
        value = self.app.engine.hypergeometric_coefficient(n, wpows, zpows, args.mu, args.nu)
        query = {"command": self.name, "mu": args.mu.to_json(), "nu": args.nu.to_json(), "w": wpows, "z": zpows}
        result = CommandResult(query, str(value))

        def brute():
            blocks = [BlockSpec.strict_monotone(c) for c in wpows] + [BlockSpec.monotone(d) for d in zpows]
            expected = self.app.oracle.brute_hurwitz(args.mu, args.nu, blocks)
            return expected == value, str(expected)
        self.add_oracle_crosscheck(result, n, brute)
        return result

    def _table(self, args) -> CommandResult:
        rows = self.app.engine.hurwitz_table(args.flavor, args.genus, args.degrees, args.r)
        query = {"command": self.name, "table": args.flavor, "genus": args.genus, "degrees": args.degrees,
                 "r": args.r}
        return CommandResult(query, rows, columns=["flavor", "g", "mu", "b", "value"])

    def _connected(self, args) -> CommandResult:
        g = args.genus[0]
        value = self.app.engine.connected_number(args.connected, g, args.mu, args.r, args.power)
        query = {"command": self.name, "connected": args.connected, "g": g, "mu": args.mu.to_json(),
                 "r": args.r, "power": args.power}
        return CommandResult(query, str(value))

    def _hypermap(self, args) -> CommandResult:
        value = self.app.engine.hypermap_count(args.mu, args.r, args.b)
        query = {"command": self.name, "hypermap": True, "mu": args.mu.to_json(), "r": args.r, "b": args.b}
        nu = orbifold_profile(args.mu.size, args.r)
        strict = self.app.engine.hurwitz(args.mu, nu, (BlockSpec.strict_monotone(args.b),))
        return CommandResult(query, str(value), [CrossCheck("strict_monotone_orbifold", strict == value, str(strict))])


class OracleCommandHandler(ICommandHandler):
    """'oracle' 子命令：暴力计数与类代数乘积"""

    name = "oracle"
    help = "brute-force factorization counts and class products"

    def add_arguments(self, parser):
        _add_problem_arguments(parser)
        parser.add_argument("--product", type=partition_arg, nargs=2, metavar=("ALPHA", "BETA"),
                            help="expand C_alpha * C_beta in the class algebra")

    def validate(self, args):
        super().validate(args)
        if args.product:
            alpha, beta = args.product
            if alpha.size != beta.size:
                raise CommandException(f"classes of S_{alpha.size} and S_{beta.size} cannot be multiplied")
            self.app.oracle.guard(alpha.size)
            return
        if args.mu is None or args.nu is None:
            raise CommandException("--mu and --nu are required unless --product is given")
        if args.mu.size != args.nu.size:
            raise CommandException(f"|mu| = {args.mu.size} differs from |nu| = {args.nu.size}")
        self.app.oracle.guard(args.mu.size)
        _blocks_from_args(args)

    def handle(self, args) -> CommandResult:
        if args.product:
            alpha, beta = args.product
            product = ClassAlgebraElement.class_sum(alpha) * ClassAlgebraElement.class_sum(beta)
            query = {"command": self.name, "product": [alpha.to_json(), beta.to_json()]}
            return CommandResult(query, product.to_json())

        problem = HurwitzProblem(args.mu, args.nu, _blocks_from_args(args), AutomorphismMode(args.mode))
        value = self.app.oracle.brute_hurwitz(problem.mu, problem.nu, problem.blocks, problem.mode)
        expected = self.app.engine.hurwitz_number(problem)
        return CommandResult(_problem_query(problem, self.name), str(value),
                             [CrossCheck("characters", expected == value, str(expected))])


class JucysCommandHandler(ICommandHandler):
    """'jucys' 子命令：σ_b / h_b / p_b(J_2..J_n) 的类展开"""

    name = "jucys"
    help = "class expansion of symmetric polynomials in Jucys-Murphy elements"

    BLOCKS = {"sigma": BlockSpec.strict_monotone, "h": BlockSpec.monotone, "p": BlockSpec.atlantes}

    def add_arguments(self, parser):
        parser.add_argument("--n", type=int, required=True, help="symmetric group S_n")
        parser.add_argument("--basis", choices=sorted(self.BLOCKS), required=True, help="symmetric basis")
        parser.add_argument("--b", type=int, required=True, help="polynomial degree")

    def validate(self, args):
        super().validate(args)
        if args.n < 1 or args.b < 0:
            raise CommandException("need n >= 1 and b >= 0")
        if args.basis == "sigma" and args.b > args.n - 1:
            raise CommandException(f"sigma_b needs b <= n - 1 = {args.n - 1}")
        self.app.oracle.guard(args.n)

    def handle(self, args) -> CommandResult:
        n, b = args.n, args.b
        element = self.app.oracle.jucys_symmetric(n, args.basis, b)
        query = {"command": self.name, "n": n, "basis": args.basis, "b": b}
        result = CommandResult(query, element.to_json())

        block = self.BLOCKS[args.basis](b)
        agrees = all(
            sum((value * central_character(alpha, shape) for alpha, value in element.coefficients.items()),
                Fraction(0)) == self.app.engine.block_eigenvalue(block, shape)
            for shape in partitions_of(n)
        )
        result.crosschecks.append(CrossCheck("content_eigenvalues", agrees))
        if args.basis == "sigma":
            result.crosschecks.append(CrossCheck("free_single", element == self.app.oracle.free_single(n, b)))
        elif args.basis == "h":
            result.crosschecks.append(CrossCheck("free_group", element == self.app.oracle.free_group(n, b)))
            if b <= 3:
                result.crosschecks.append(CrossCheck("w_table", element == w_table(n, b)))
        return result


class QCurveCommandHandler(ICommandHandler):
    """'qcurve' 子命令：构造波函数并验证量子曲线"""

    name = "qcurve"
    help = "verify that a quantum curve annihilates its wave function"

    def add_arguments(self, parser):
        parser.add_argument("--flavor", choices=[f.value for f in CurveFlavor], required=True, help="wave flavor")
        parser.add_argument("--r", type=int, help="orbifold order (monotone_orbifold, strict_monotone, atlantes)")
        parser.add_argument("--times", type=times_arg, help="finite support of t~: 1,0,1/2 or 1:1,3:-1/5")
        parser.add_argument("--c", type=rational_arg, help="deformation parameter (one_parameter)")
        parser.add_argument("--order", type=int, help="truncation order N (default series.default_order)")
        parser.add_argument("--verify-mode", dest="verify_mode", choices=["exact", "sampled"],
                            help="exact ring or sampled hbar values (default verification.mode)")
        parser.add_argument("--show-wave", action="store_true", help="include the truncated wave function")

    def _params(self, args) -> Dict[str, Any]:
        params: Dict[str, Any] = {}
        if args.r is not None:
            params["r"] = args.r
        if args.times is not None:
            params["times"] = args.times
        if args.c is not None:
            params["c"] = args.c
        return params

    def _order(self, args) -> int:
        if args.order is not None:
            return args.order
        return self.app.config.get("series", {}).get("default_order", 12)

    def validate(self, args):
        super().validate(args)
        flavor = CurveFlavor(args.flavor)
        if self._order(args) < 1:
            raise CommandException("--order must be >= 1")
        if flavor in (CurveFlavor.MONOTONE, CurveFlavor.DOUBLE_HURWITZ) and not args.times:
            raise CommandException(f"{flavor.value} needs --times")
        if flavor == CurveFlavor.ONE_PARAMETER and args.c is None:
            raise CommandException("one_parameter needs --c")
        if args.r is not None and args.r < 1:
            raise CommandException("--r must be >= 1")

    def handle(self, args) -> CommandResult:
        flavor = CurveFlavor(args.flavor)
        params = self._params(args)
        order = self._order(args)
        mode = args.verify_mode or self.app.config.get("verification", {}).get("mode", "exact")
        report, crosschecks = self.app.curves.verify(flavor, params, order, mode)

        query_params = dict(params)
        if "times" in query_params:
            query_params["times"] = times_to_json(query_params["times"])
        if "c" in query_params:
            query_params["c"] = str(query_params["c"])
        query = {"command": self.name, "flavor": flavor.value, "params": query_params, "N": order, "mode": mode}
        body = report.to_json()
        if args.show_wave:
            body["wave"] = self.app.curves.build_wave(flavor, params, order).to_json()
        return CommandResult(query, body, crosschecks, [report])


class ConstraintsCommandHandler(ICommandHandler):
    """'constraints' 子命令：R̂_n 约束、对易子、cut-and-join 与解空间"""

    name = "constraints"
    help = "verify linear constraints on the double monotone tau function"

    CHECKS = ("R", "commutator", "cut-and-join", "solution-space")

    def add_arguments(self, parser):
        parser.add_argument("--check", choices=self.CHECKS, default="R", help="which constraint check to run")
        parser.add_argument("--n", type=int_list_arg, default=[1, 2], help="constraint indices, e.g. 1,2")
        parser.add_argument("--beta", type=rational_arg, help="rational beta (symbolic for commutator if omitted)")
        parser.add_argument("--times", type=times_arg, help="finite support of t~")
        parser.add_argument("--hbar", type=rational_arg, help="hbar for cut-and-join")
        parser.add_argument("--truncation", type=int, help="weighted degree N (default constraints.default_truncation)")
        parser.add_argument("--degree", type=int, help="degree bound for solution-space")

    def validate(self, args):
        super().validate(args)
        if any(n < 1 or n > 3 for n in args.n):
            raise CommandException("constraint indices must lie in 1..3")
        if args.truncation is not None and args.truncation < 1:
            raise CommandException("--truncation must be >= 1")
        if args.check in ("R", "solution-space") and (args.beta is None or args.times is None):
            raise CommandException(f"--check {args.check} needs --beta and --times")
        if args.check == "cut-and-join" and args.hbar is None:
            raise CommandException("--check cut-and-join needs --hbar")
        if args.check == "commutator" and len(args.n) != 2:
            raise CommandException("--check commutator needs exactly two indices in --n")

    def handle(self, args) -> CommandResult:
        config = self.app.config
        query: Dict[str, Any] = {"command": self.name, "check": args.check}
        if args.check == "commutator":
            ring = RatFuncHbarRing() if args.beta is None else None
            service = BosonConstraints.from_config(config, args.truncation, ring)
            first, second = args.n
            report = service.verify_commutator(first, second, args.beta)
            query.update({"n": args.n, "beta": None if args.beta is None else str(args.beta),
                          "N": service.truncation})
            return CommandResult(query, report.to_json(), reports=[report])

        service = BosonConstraints.from_config(config, args.truncation)
        query["N"] = service.truncation
        if args.check == "cut-and-join":
            report = service.verify_cut_and_join(args.hbar)
            query["hbar"] = str(args.hbar)
            return CommandResult(query, report.to_json(), reports=[report])

        query.update({"n": args.n, "beta": str(args.beta), "times": times_to_json(args.times)})
        if args.check == "solution-space":
            degree = args.degree if args.degree is not None else service.truncation
            space = service.constraint_solution_space(args.n, degree, args.beta, args.times)
            return CommandResult(query, space, [CrossCheck("contains_tau", space["contains_tau"])])

        tau = service.build_tau_mm(args.beta, args.times)
        reports = [service.verify_constraints(tau, n) for n in args.n]
        return CommandResult(query, [report.to_json() for report in reports], reports=reports)


class ElsvKCommandHandler(ICommandHandler):
    """'elsv-k' 子命令：exp(-Σ K_l U^l) = Σ (2k+1)!! U^k 的系数"""

    name = "elsv-k"
    help = "coefficients K_l of the double factorial series logarithm"

    def add_arguments(self, parser):
        parser.add_argument("--order", type=int, default=6, help="number of coefficients L")

    def validate(self, args):
        super().validate(args)
        if args.order < 1:
            raise CommandException("--order must be >= 1")

    def handle(self, args) -> CommandResult:
        coefficients = elsv_k_coefficients(args.order)
        query = {"command": self.name, "L": args.order}
        return CommandResult(query, {"K": [str(k) for k in coefficients]},
                             [CrossCheck("reexponentiate", elsv_reexponentiate(coefficients, args.order))])


class QuasipolyCommandHandler(ICommandHandler):
    """'quasipoly' 子命令：单调连通数的拟多项式性"""

    name = "quasipoly"
    help = "finite-difference check of monotone quasi-polynomiality"

    def add_arguments(self, parser):
        parser.add_argument("--g", type=int, required=True, help="genus")
        parser.add_argument("--l", type=int, required=True, help="number of parts")
        parser.add_argument("--degree", type=int, help="polynomial degree bound (default 3g-3+l)")
        parser.add_argument("--max-part", dest="max_part", type=int, default=5, help="grid size per variable")

    def validate(self, args):
        super().validate(args)
        if args.g < 0 or args.l < 1 or args.max_part < 1:
            raise CommandException("need g >= 0, l >= 1 and max-part >= 1")

    def handle(self, args) -> CommandResult:
        report = self.app.engine.quasipolynomiality_check(args.g, args.l, args.degree, args.max_part)
        query = {"command": self.name, "g": args.g, "l": args.l, "degree": args.degree, "max_part": args.max_part}
        return CommandResult(query, report.to_json(), reports=[report])


class SelfTestCommandHandler(ICommandHandler):
    """'selftest' 子命令：运行验收检查并汇总"""

    name = "selftest"
    help = "run the acceptance checks and aggregate pass/fail"

    def add_arguments(self, parser):
        parser.add_argument("--only", action="append", help="run a single check, repeatable")
        parser.add_argument("--quick", action="store_true", help="smaller exhaustive ranges")

    def handle(self, args) -> CommandResult:
        suite = self.app.acceptance_suite(quick=args.quick)
        checks = suite.run(args.only)
        passed = sum(1 for check in checks if check.agrees)
        query = {"command": self.name, "only": args.only, "quick": args.quick}
        result = CommandResult(query, {"passed": passed, "total": len(checks)}, checks)
        summary = self.app.response_manager.selftest_summary(passed, len(checks))
        if summary:
            result.messages.append(summary)
        return result
