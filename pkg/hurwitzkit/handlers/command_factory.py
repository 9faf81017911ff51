"""
Command factory using Factory pattern
命令工厂，采用工厂模式
"""

from typing import Dict, List, Optional

from .command_handlers import (
    ICommandHandler, HurwitzCommandHandler, OracleCommandHandler, JucysCommandHandler,
    QCurveCommandHandler, ConstraintsCommandHandler, ElsvKCommandHandler,
    QuasipolyCommandHandler, SelfTestCommandHandler
)


class CommandFactory:
    """子命令处理器工厂"""

    def __init__(self, app):
        self.app = app
        self._handlers: Dict[str, ICommandHandler] = {}
        self._register_handlers()

    def _register_handlers(self):
        """注册所有子命令处理器"""
        for handler_class in (
            HurwitzCommandHandler,
            OracleCommandHandler,
            JucysCommandHandler,
            QCurveCommandHandler,
            ConstraintsCommandHandler,
            ElsvKCommandHandler,
            QuasipolyCommandHandler,
            SelfTestCommandHandler,
        ):
            handler = handler_class(self.app)
            self._handlers[handler.name] = handler

    def get_handler(self, command: str) -> Optional[ICommandHandler]:
        """获取子命令处理器"""
        return self._handlers.get(command.lower())

    def register_handler(self, command: str, handler: ICommandHandler):
        """注册新的子命令处理器"""
        self._handlers[command.lower()] = handler

    def unregister_handler(self, command: str):
        """注销子命令处理器"""
        if command.lower() in self._handlers:
            del self._handlers[command.lower()]

    def list_commands(self) -> List[str]:
        """获取所有已注册的子命令"""
        return list(self._handlers.keys())
