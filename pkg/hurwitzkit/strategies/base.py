"""
Base Strategies - 策略基类
本模块定义块策略 IBlockStrategy 与曲线策略 ICurveStrategy 两个抽象基类。
"""

from abc import ABC, abstractmethod
from fractions import Fraction
from typing import TYPE_CHECKING, Any, Dict, Optional

from ..core.exceptions import DomainException
from ..core.models import BlockFlavor, BlockSpec, CurveFlavor, Partition

if TYPE_CHECKING:
    from ..services.group_oracle import ClassAlgebraElement, GroupOracle
    from ..services.quantum_curves import OperatorExpr, WaveFunction
    from ..services.series_ring import ICoeffRing


class IBlockStrategy(ABC):
    """
    块策略接口
    每种块都有两条独立的计算路径：
    - eigenvalue: 在不可约表示 v_λ 上的特征值（内容向量路径）
    - oracle_element: 在类代数中的显式展开（暴力路径）
    """

    flavor: BlockFlavor

    def _check(self, block: BlockSpec):
        if block.flavor != self.flavor:
            raise DomainException(f"{self.__class__.__name__} cannot handle {block.flavor.value} blocks")

    @abstractmethod
    def eigenvalue(self, block: BlockSpec, shape: Partition) -> Fraction:
        """
        块在 v_λ 上的特征值。

        :param block: 块规格
        :param shape: 不可约表示 λ
        :return: 精确有理数
        """
        pass

    @abstractmethod
    def oracle_element(self, block: BlockSpec, n: int, oracle: "GroupOracle") -> "ClassAlgebraElement":
        """
        块在 S_n 类代数中的展开。

        :param block: 块规格
        :param n: 对称群的阶数
        :param oracle: 提供群代数原语的 GroupOracle
        :return: 中心元素
        """
        pass


class ICurveStrategy(ABC):
    """
    曲线策略接口
    每种波函数都配有默认的系数环、截断波函数与消灭它的量子曲线算子。
    """

    flavor: CurveFlavor

    @abstractmethod
    def default_ring(self, params: Dict[str, Any], order: int, config: Optional[Dict[str, Any]] = None) -> "ICoeffRing":
        """验证所用的默认系数环"""
        pass

    @abstractmethod
    def build_wave(self, params: Dict[str, Any], order: int, ring: "ICoeffRing") -> "WaveFunction":
        """构造截断到 order 的波函数"""
        pass

    @abstractmethod
    def curve_operator(self, params: Dict[str, Any], ring: "ICoeffRing") -> "OperatorExpr":
        """量子曲线算子"""
        pass

    def alternative_operators(self, params: Dict[str, Any], ring: "ICoeffRing") -> Dict[str, "OperatorExpr"]:
        """同一波函数的其它曲线表示，默认没有。"""
        return {}

    def margin(self, params: Dict[str, Any]) -> int:
        """算子的最大负平移，决定波函数需要多构造的阶数。"""
        return 0

    def hbar_degree_bound(self, params: Dict[str, Any], order: int) -> Optional[int]:
        """
        残差中 ħ 次数的上界（采样模式使用）；None 表示该类型不支持采样。
        """
        return None

    def schur_comparable(self, params: Dict[str, Any]) -> bool:
        """波函数是否可与双单调 Schur 和的主特化比较"""
        return False

    def times(self, params: Dict[str, Any]) -> Dict[int, Fraction]:
        raise DomainException(f"{self.flavor.value} waves are not parametrized by times")

    @staticmethod
    def orbifold_order(params: Dict[str, Any]) -> int:
        r = int(params.get("r", 1))
        if r < 1:
            raise DomainException(f"r must be >= 1, got {r}")
        return r
