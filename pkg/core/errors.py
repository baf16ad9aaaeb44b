"""异常定义"""


class RlIndexError(Exception):
    """所有索引相关错误的基类"""


class TextInputError(RlIndexError):
    """输入文本非法：空输入、字母表溢出、文件格式错误等"""


class ParameterError(RlIndexError, ValueError):
    """参数越界：τ、k、分组宽度、后端名称等"""


class PositionError(RlIndexError, IndexError):
    """位置、秩或计数越界"""


class FormatError(RlIndexError):
    """序列化文件损坏或魔数不符"""


class ConstructionError(RlIndexError):
    """内部不一致，说明构建过程存在缺陷"""


class VerificationError(RlIndexError):
    """与暴力参考实现的结果不一致"""
