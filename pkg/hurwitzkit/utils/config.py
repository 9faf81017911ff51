"""
Configuration loader
配置加载：把 _conf_schema.json 展平成默认值字典，再深度合并用户配置文件
"""

import json
import os
from copy import deepcopy
from typing import Any, Dict, Optional

from ..core.exceptions import CommandException
from .logger import logger

SCHEMA_PATH = os.path.join(os.path.dirname(os.path.dirname(os.path.dirname(os.path.abspath(__file__)))),
                           "_conf_schema.json")


def schema_defaults(schema: Dict[str, Any]) -> Dict[str, Any]:
    """递归读取 schema 中每个键的 default；object 类型读取其 items。"""
    defaults: Dict[str, Any] = {}
    for key, entry in schema.items():
        if entry.get("type") == "object":
            defaults[key] = schema_defaults(entry.get("items", {}))
        else:
            defaults[key] = entry.get("default")
    return defaults


def deep_merge(base: Dict[str, Any], override: Dict[str, Any]) -> Dict[str, Any]:
    merged = deepcopy(base)
    for key, value in override.items():
        if isinstance(value, dict) and isinstance(merged.get(key), dict):
            merged[key] = deep_merge(merged[key], value)
        else:
            merged[key] = value
    return merged


def load_config(path: Optional[str] = None, schema_path: str = SCHEMA_PATH) -> Dict[str, Any]:
    """
    加载配置

    :param path: 用户 JSON 配置文件路径，None 表示只用默认值
    :param schema_path: 配置 schema 路径
    :return: 合并后的嵌套字典
    """
    try:
        with open(schema_path, "r", encoding="utf-8") as f:
            defaults = schema_defaults(json.load(f))
    except (OSError, json.JSONDecodeError) as e:
        logger.error(f"读取配置 schema 失败: {e}")
        defaults = {}

    if not path:
        return defaults

    try:
        with open(path, "r", encoding="utf-8") as f:
            user_config = json.load(f)
    except (OSError, json.JSONDecodeError) as e:
        raise CommandException(f"cannot read config file {path}: {e}")
    if not isinstance(user_config, dict):
        raise CommandException(f"config file {path} must contain a JSON object")
    return deep_merge(defaults, user_config)
