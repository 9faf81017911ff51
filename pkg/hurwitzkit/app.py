"""
HurwitzKit Application - 应用装配
本文件是计算组件的装配中心，核心职责是：
1. 按配置创建块策略与曲线策略。
2. 初始化并装配引擎、暴力基准、量子曲线服务与输出组件。
3. 为 cli 提供命令工厂。
"""

from typing import Any, Dict, Optional

from .handlers.command_factory import CommandFactory
from .services.acceptance import AcceptanceSuite
from .services.group_oracle import GroupOracle
from .services.hurwitz_engine import HurwitzEngine
from .services.quantum_curves import QuantumCurveService
from .strategies import default_block_strategies, default_curve_strategies
from .utils.logger import logger
from .utils.response_manager import ResponseManager
from .utils.template_renderer import Jinja2TemplateRenderer


class HurwitzKitApp:
    """
    HurwitzKit 主应用类
    采用依赖注入的方式将各个模块组合在一起。
    - 使用策略模式（IBlockStrategy / ICurveStrategy）处理不同类型的块与波函数。
    - 使用工厂模式（CommandFactory）创建子命令处理器。
    """

    def __init__(self, config: Optional[Dict[str, Any]] = None):
        self.config = config or {}
        self._init_components()

    def _init_components(self):
        """初始化并装配所有核心组件。"""
        # 策略（策略模式）
        self.block_strategies = default_block_strategies()
        self.curve_strategies = default_curve_strategies()

        # 计算服务
        self.engine = HurwitzEngine(self.block_strategies)
        self.oracle = GroupOracle.from_config(self.config, self.block_strategies)
        self.curves = QuantumCurveService(self.curve_strategies, self.config)

        # 输出
        self.template_renderer = Jinja2TemplateRenderer(self.config)
        self.response_manager = ResponseManager(self.config, self.template_renderer)

        # 命令工厂（工厂模式）
        self.command_factory = CommandFactory(self)
        logger.debug(f"registered commands: {self.command_factory.list_commands()}")

    def acceptance_suite(self, quick: bool = False) -> AcceptanceSuite:
        return AcceptanceSuite(engine=self.engine, curves=self.curves, config=self.config, quick=quick)
