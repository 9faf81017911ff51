"""
Shared logger
共享日志对象：所有模块通过 `from ..utils.logger import logger` 使用同一个 logger
"""

import logging
import sys
from typing import Any, Dict, Optional

logger = logging.getLogger("hurwitzkit")

_FORMAT = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"


def configure_logging(config: Optional[Dict[str, Any]] = None) -> logging.Logger:
    """
    安装唯一的 stderr 处理器；stdout 保留给计算结果。

    :param config: 已解析的配置字典
    :return: 配置好的 logger
    """
    config = config or {}
    debug = config.get("advanced_settings", {}).get("enable_debug_mode", False)

    for handler in list(logger.handlers):
        logger.removeHandler(handler)
    handler = logging.StreamHandler(sys.stderr)
    handler.setFormatter(logging.Formatter(_FORMAT))
    logger.addHandler(handler)
    logger.setLevel(logging.DEBUG if debug else logging.WARNING)
    logger.propagate = False
    return logger
