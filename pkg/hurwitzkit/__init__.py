"""
HurwitzKit Package
精确算术的 Hurwitz 数计算与量子谱曲线验证工具包
"""

__version__ = "1.0.0"
__author__ = "HurwitzKit Team"
