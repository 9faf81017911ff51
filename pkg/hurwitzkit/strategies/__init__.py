"""
Strategies Package - 策略模块
"""

from typing import Dict

from ..core.models import BlockFlavor, CurveFlavor
from .base import IBlockStrategy, ICurveStrategy
from .class_strategy import ClassSumStrategy, CompletedCycleStrategy, HyperWStrategy, HyperZStrategy
from .free_strategy import FreeGroupFixedStrategy, FreeGroupStrategy, FreeSingleStrategy
from .curve_strategy import (
    AtlantesCurveStrategy, DoubleHurwitzCurveStrategy, MonotoneCurveStrategy, MonotoneOrbifoldCurveStrategy,
    OneParameterCurveStrategy, StrictMonotoneCurveStrategy
)
from .jucys_strategy import AtlantesStrategy, MonotoneStrategy, StrictMonotoneStrategy


def default_block_strategies() -> Dict[BlockFlavor, IBlockStrategy]:
    """按块类型注册所有块策略"""
    strategies = [
        StrictMonotoneStrategy(),
        MonotoneStrategy(),
        AtlantesStrategy(),
        FreeSingleStrategy(),
        FreeGroupStrategy(),
        FreeGroupFixedStrategy(),
        ClassSumStrategy(),
        CompletedCycleStrategy(),
        HyperWStrategy(),
        HyperZStrategy(),
    ]
    return {strategy.flavor: strategy for strategy in strategies}


def default_curve_strategies() -> Dict[CurveFlavor, ICurveStrategy]:
    """按曲线类型注册所有曲线策略"""
    strategies = [
        MonotoneCurveStrategy(),
        MonotoneOrbifoldCurveStrategy(),
        StrictMonotoneCurveStrategy(),
        AtlantesCurveStrategy(),
        DoubleHurwitzCurveStrategy(),
        OneParameterCurveStrategy(),
    ]
    return {strategy.flavor: strategy for strategy in strategies}


__all__ = [
    'IBlockStrategy',
    'ICurveStrategy',
    'StrictMonotoneStrategy',
    'MonotoneStrategy',
    'AtlantesStrategy',
    'FreeSingleStrategy',
    'FreeGroupStrategy',
    'FreeGroupFixedStrategy',
    'ClassSumStrategy',
    'CompletedCycleStrategy',
    'HyperWStrategy',
    'HyperZStrategy',
    'MonotoneCurveStrategy',
    'MonotoneOrbifoldCurveStrategy',
    'StrictMonotoneCurveStrategy',
    'AtlantesCurveStrategy',
    'DoubleHurwitzCurveStrategy',
    'OneParameterCurveStrategy',
    'default_block_strategies',
    'default_curve_strategies',
]
