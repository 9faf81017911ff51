"""
Core exceptions
核心异常定义
"""


class HurwitzKitException(Exception):
    """HurwitzKit 基础异常"""
    pass


class DomainException(HurwitzKitException):
    """参数域异常：尺寸不匹配、参数越界、级数前置条件不满足"""
    pass


class ResourceException(HurwitzKitException):
    """资源限制异常：枚举规模超过上限"""
    pass


class PoleException(HurwitzKitException):
    """极点异常：特征值、内容权重或对角算子的分母为零"""
    pass


class CommandException(HurwitzKitException):
    """命令处理异常（用法错误）"""
    pass
