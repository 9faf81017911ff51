"""
Core Domain Models and Enums - 核心领域模型与枚举
本模块定义了 Hurwitz 计算中使用的核心数据结构。
使用 dataclasses 创建不可变、可哈希、结构相等的值对象。
"""

from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Any, Dict, List, Optional, Tuple

from .exceptions import DomainException


@dataclass(frozen=True)
class Partition:
    """
    整数分拆（杨图）
    部件按弱递减顺序存储；空分拆（大小为 0）是合法的。
    同时用作共轭类、不可约表示与分歧型的索引。
    """
    parts: Tuple[int, ...] = ()

    def __post_init__(self):
        parts = tuple(int(p) for p in self.parts)
        if any(p < 1 for p in parts):
            raise DomainException(f"partition parts must be positive: {list(parts)}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise DomainException(f"partition parts must be weakly decreasing: {list(parts)}")
        object.__setattr__(self, "parts", parts)

    @classmethod
    def of(cls, *parts: int) -> "Partition":
        """Build from unsorted parts."""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def one(cls, n: int) -> "Partition":
        """The identity cycle type (1^n)."""
        return cls((1,) * n)

    @classmethod
    def hook(cls, first: int, n: int) -> "Partition":
        """Cycle type (first, 1^{n-first}); empty when first > n."""
        if first > n:
            raise DomainException(f"cycle type ({first},1^{n - first}) does not exist in S_{n}")
        return cls((first,) + (1,) * (n - first))

    @classmethod
    def parse(cls, text: str) -> "Partition":
        """
        解析形如 "3,1" 或 "[3, 1]" 的字符串。

        :param text: 逗号分隔的部件列表，空串表示空分拆。
        :return: 对应的 Partition。
        """
        cleaned = text.strip().strip("[]()").replace(" ", "")
        if not cleaned:
            return cls()
        try:
            values = [int(token) for token in cleaned.split(",") if token]
        except ValueError:
            raise DomainException(f"cannot parse partition: {text!r}")
        return cls.of(*values)

    @property
    def size(self) -> int:
        return sum(self.parts)

    @property
    def length(self) -> int:
        return len(self.parts)

    def multiplicities(self) -> Dict[int, int]:
        counts: Dict[int, int] = {}
        for part in self.parts:
            counts[part] = counts.get(part, 0) + 1
        return counts

    def conjugate(self) -> "Partition":
        if not self.parts:
            return self
        return Partition(tuple(sum(1 for p in self.parts if p > j) for j in range(self.parts[0])))

    def boxes(self) -> List[Tuple[int, int]]:
        """Boxes (row, column), 1-based, read row by row from left to right."""
        return [(i + 1, j + 1) for i, part in enumerate(self.parts) for j in range(part)]

    @property
    def label(self) -> str:
        return ",".join(str(p) for p in self.parts)

    def to_json(self) -> List[int]:
        return list(self.parts)

    def __iter__(self):
        return iter(self.parts)

    def __str__(self) -> str:
        return f"({self.label})"


class BlockFlavor(Enum):
    """
    块（block）类型枚举
    每种块都是群代数中心中的一个元素，对应一类受约束的分歧。
    """
    STRICT_MONOTONE = "strict_monotone"    # σ_b(J_2..J_n)
    MONOTONE = "monotone"                  # h_b(J_2..J_n)
    ATLANTES = "atlantes"                  # p_b(J_2..J_n)
    FREE_SINGLE = "free_single"            # Σ_{ℓ(α)=n-b} C_α
    FREE_GROUP = "free_group"              # signed k-fold products of class sums
    FREE_GROUP_FIXED = "free_group_fixed"  # unsigned, k fixed
    CLASS_SUM = "class_sum"                # C_α
    COMPLETED_CYCLE = "completed_cycle"    # completed r-cycle
    HYPER_W = "hyper_w"                    # ∏ (1 + c·w)
    HYPER_Z = "hyper_z"                    # ∏ 1/(1 - c·z)


JUCYS_FLAVORS = (BlockFlavor.STRICT_MONOTONE, BlockFlavor.MONOTONE, BlockFlavor.ATLANTES)


@dataclass(frozen=True)
class BlockSpec:
    """
    块规格
    flavor 决定哪些参数有意义：b（次数/数目）、alpha（类型）、parameter（w 或 z）、groups（固定的 k）。
    """
    flavor: BlockFlavor
    b: int = 0
    alpha: Optional[Partition] = None
    parameter: Optional[Fraction] = None
    groups: Optional[int] = None

    def __post_init__(self):
        if self.b < 0:
            raise DomainException(f"block degree must be non-negative, got {self.b}")
        if self.flavor == BlockFlavor.CLASS_SUM and self.alpha is None:
            raise DomainException("class_sum block needs a cycle type")
        if self.flavor == BlockFlavor.COMPLETED_CYCLE and self.b < 1:
            raise DomainException("completed cycle needs r >= 1")
        if self.flavor in (BlockFlavor.HYPER_W, BlockFlavor.HYPER_Z):
            if self.parameter is None:
                raise DomainException(f"{self.flavor.value} block needs a rational parameter")
            object.__setattr__(self, "parameter", Fraction(self.parameter))
        if self.flavor == BlockFlavor.FREE_GROUP_FIXED and (self.groups is None or self.groups < 1):
            raise DomainException("free_group_fixed block needs k >= 1")

    @classmethod
    def strict_monotone(cls, b: int) -> "BlockSpec":
        return cls(BlockFlavor.STRICT_MONOTONE, b)

    @classmethod
    def monotone(cls, b: int) -> "BlockSpec":
        return cls(BlockFlavor.MONOTONE, b)

    @classmethod
    def atlantes(cls, b: int) -> "BlockSpec":
        return cls(BlockFlavor.ATLANTES, b)

    @classmethod
    def free_single(cls, b: int) -> "BlockSpec":
        return cls(BlockFlavor.FREE_SINGLE, b)

    @classmethod
    def free_group(cls, b: int) -> "BlockSpec":
        return cls(BlockFlavor.FREE_GROUP, b)

    @classmethod
    def free_group_fixed(cls, b: int, k: int) -> "BlockSpec":
        return cls(BlockFlavor.FREE_GROUP_FIXED, b, groups=k)

    @classmethod
    def class_sum(cls, alpha: Partition) -> "BlockSpec":
        return cls(BlockFlavor.CLASS_SUM, alpha.size - alpha.length, alpha=alpha)

    @classmethod
    def completed_cycle(cls, r: int) -> "BlockSpec":
        return cls(BlockFlavor.COMPLETED_CYCLE, r)

    @classmethod
    def hyper_w(cls, w) -> "BlockSpec":
        return cls(BlockFlavor.HYPER_W, parameter=Fraction(w))

    @classmethod
    def hyper_z(cls, z) -> "BlockSpec":
        return cls(BlockFlavor.HYPER_Z, parameter=Fraction(z))

    @property
    def weight(self) -> Optional[int]:
        """
        该块对 Riemann-Hurwitz 方程的贡献 b_i。
        完全 r-轮换贡献 r-1；超几何因子没有确定的权重，返回 None。
        """
        if self.flavor == BlockFlavor.COMPLETED_CYCLE:
            return self.b - 1
        if self.flavor in (BlockFlavor.HYPER_W, BlockFlavor.HYPER_Z):
            return None
        return self.b

    @property
    def label(self) -> str:
        if self.flavor == BlockFlavor.CLASS_SUM:
            return f"class_sum({self.alpha.label})"
        if self.flavor == BlockFlavor.COMPLETED_CYCLE:
            return f"completed_cycle({self.b})"
        if self.flavor in (BlockFlavor.HYPER_W, BlockFlavor.HYPER_Z):
            return f"{self.flavor.value}({self.parameter})"
        if self.flavor == BlockFlavor.FREE_GROUP_FIXED:
            return f"free_group_fixed({self.b},{self.groups})"
        return f"{self.flavor.value}({self.b})"

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"flavor": self.flavor.value, "b": self.b}
        if self.alpha is not None:
            data["alpha"] = self.alpha.to_json()
        if self.parameter is not None:
            data["parameter"] = str(self.parameter)
        if self.groups is not None:
            data["k"] = self.groups
        return data


class AutomorphismMode(Enum):
    """自同构计数模式"""
    FULL = "full"                  # 1/(Z_μ Z_ν)
    POINTWISE = "pointwise"        # 1/(∏μ_i ∏ν_i)，固定 0 与 ∞ 上的原像


@dataclass(frozen=True)
class HurwitzProblem:
    """
    非连通双 Hurwitz 问题
    由 (μ, ν, 块向量) 构成；亏格不存储，而是由 Riemann-Hurwitz 关系推出。
    """
    mu: Partition
    nu: Partition
    blocks: Tuple[BlockSpec, ...] = ()
    mode: AutomorphismMode = AutomorphismMode.FULL

    def __post_init__(self):
        if self.mu.size != self.nu.size:
            raise DomainException(f"|mu| = {self.mu.size} differs from |nu| = {self.nu.size}")
        object.__setattr__(self, "blocks", tuple(self.blocks))

    @property
    def n(self) -> int:
        return self.mu.size

    @property
    def genus(self) -> Optional[int]:
        """b = 2g - 2 + ℓ(μ) + ℓ(ν)；非整数或负亏格返回 None。"""
        weights = [block.weight for block in self.blocks]
        if any(w is None for w in weights):
            return None
        twice = sum(weights) + 2 - self.mu.length - self.nu.length
        if twice < 0 or twice % 2:
            return None
        return twice // 2

    def to_json(self) -> Dict[str, Any]:
        return {
            "mu": self.mu.to_json(),
            "nu": self.nu.to_json(),
            "blocks": [block.to_json() for block in self.blocks],
            "mode": self.mode.value,
            "genus": self.genus,
        }


class CurveFlavor(Enum):
    """量子谱曲线（波函数）类型枚举"""
    MONOTONE = "monotone"                # general t̃ with finite support
    MONOTONE_ORBIFOLD = "monotone_orbifold"
    STRICT_MONOTONE = "strict_monotone"
    ATLANTES = "atlantes"
    DOUBLE_HURWITZ = "double_hurwitz"
    ONE_PARAMETER = "one_parameter"      # t̃_k = c^{k-1}


@dataclass
class CrossCheck:
    """一次交叉验证的结果"""
    method: str
    agrees: bool
    value: Optional[str] = None

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {"method": self.method, "agrees": self.agrees}
        if self.value is not None:
            data["value"] = self.value
        return data


@dataclass
class VerificationReport:
    """
    验证报告
    失败是数据而不是异常：status 为 "failed" 时 first_failure 给出第一个非零残差。
    """
    subject: str                                  # 被验证的对象，例如 "qcurve" 或 "constraint R2"
    params: Dict[str, Any]
    order: int                                    # 截断阶数 N
    status: str = "verified"
    checked: int = 0                              # 实际检查的系数个数
    window: Optional[Tuple[Any, Any]] = None      # 可信窗口
    first_failure: Optional[Dict[str, Any]] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return self.status == "verified"

    def fail(self, failure: Dict[str, Any]):
        if self.first_failure is None:
            self.first_failure = failure
        self.status = "failed"

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "subject": self.subject,
            "params": self.params,
            "N": self.order,
            "status": self.status,
            "checked": self.checked,
        }
        if self.window is not None:
            data["window"] = [None if w is None else str(w) for w in self.window]
        if self.first_failure is not None:
            data["first_failure"] = self.first_failure
        if self.details:
            data["details"] = self.details
        return data


@dataclass
class CommandResult:
    """
    命令执行结果
    result 为单个值、类展开或表格行；columns 非空时按表格输出。
    """
    query: Dict[str, Any]
    result: Any
    crosschecks: List[CrossCheck] = field(default_factory=list)
    reports: List[VerificationReport] = field(default_factory=list)
    columns: Optional[List[str]] = None
    messages: List[str] = field(default_factory=list)     # 写到 stderr 的状态消息

    @property
    def first_failure(self) -> Optional[Dict[str, Any]]:
        for report in self.reports:
            if not report.ok:
                return {"subject": report.subject, **(report.first_failure or {})}
        for check in self.crosschecks:
            if not check.agrees:
                return {"crosscheck": check.method, "value": check.value}
        return None

    @property
    def ok(self) -> bool:
        return self.first_failure is None

    def to_json(self) -> Dict[str, Any]:
        data: Dict[str, Any] = {
            "query": self.query,
            "result": self.result,
            "crosschecks": [check.to_json() for check in self.crosschecks],
        }
        failure = self.first_failure
        if failure is not None:
            data["first_failure"] = failure
        return data
