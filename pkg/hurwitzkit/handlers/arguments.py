"""
Argument types
argparse 的 type= 转换函数；解析失败抛出 ArgumentTypeError，由 argparse 转为用法错误（退出码 2）
"""

import argparse
from fractions import Fraction
from typing import Dict, List

from ..core.exceptions import DomainException
from ..core.models import BlockFlavor, BlockSpec, Partition


def partition_arg(text: str) -> Partition:
    try:
        return Partition.parse(text)
    except DomainException as e:
        raise argparse.ArgumentTypeError(str(e))


def rational_arg(text: str) -> Fraction:
    try:
        return Fraction(text.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}")


def int_list_arg(text: str) -> List[int]:
    """逗号分隔的整数 1,2,3，或闭区间 1-5"""
    text = text.strip()
    try:
        if "-" in text and "," not in text:
            lo, hi = text.split("-", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(token) for token in text.split(",") if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer list or range: {text!r}")


def times_arg(text: str) -> Dict[int, Fraction]:
    """
    t̃ 的有限支撑："1,0,1/2" 按位置给出 t̃_1, t̃_2, ...；"1:1,3:-1/5" 显式给出下标。
    """
    times: Dict[int, Fraction] = {}
    try:
        for position, token in enumerate((t for t in text.split(",") if t.strip()), start=1):
            if ":" in token:
                index, value = token.split(":", 1)
                times[int(index)] = Fraction(value.strip())
            else:
                times[position] = Fraction(token.strip())
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"cannot parse times: {text!r}")
    if any(k < 1 for k in times):
        raise argparse.ArgumentTypeError("time indices must be positive")
    return {k: v for k, v in times.items() if v}


def block_arg(text: str) -> BlockSpec:
    """
    块规格 "flavor:参数"，例如 monotone:2、class_sum:2,1、completed_cycle:3、
    hyper_w:1/2、free_group_fixed:3:2（b = 3，k = 2）。
    """
    name, _, rest = text.strip().partition(":")
    try:
        flavor = BlockFlavor(name)
    except ValueError:
        choices = ", ".join(f.value for f in BlockFlavor)
        raise argparse.ArgumentTypeError(f"unknown block flavor {name!r}; expected one of {choices}")
    try:
        if flavor == BlockFlavor.CLASS_SUM:
            return BlockSpec.class_sum(Partition.parse(rest))
        if flavor in (BlockFlavor.HYPER_W, BlockFlavor.HYPER_Z):
            return BlockSpec(flavor, parameter=Fraction(rest))
        if flavor == BlockFlavor.FREE_GROUP_FIXED:
            b, _, k = rest.partition(":")
            return BlockSpec.free_group_fixed(int(b), int(k))
        return BlockSpec(flavor, int(rest))
    except (ValueError, ZeroDivisionError, DomainException) as e:
        raise argparse.ArgumentTypeError(f"invalid block {text!r}: {e}")
