"""
パッケージ共通の例外。

「データとして返す」判定結果 (Infeasible / NotInSpan / NotPoppy / validate の違反リスト) は
例外にせず None やリストで返す。ここにあるのは呼び出し側の前提違反と予算超過だけ。
"""

from __future__ import annotations

from typing import Any, List, Optional


class BasisNumberError(RuntimeError):
    pass


class InvalidGraphError(BasisNumberError):
    pass


class ForeignEdgeError(BasisNumberError):
    pass


class DisconnectedGraphError(BasisNumberError):
    pass


class PreconditionError(BasisNumberError):
    pass


class InvalidScheduleError(BasisNumberError):
    pass


class UnknownEntryError(BasisNumberError):
    pass


class PackingInfeasibleError(BasisNumberError):
    pass


class PathCountMismatch(BasisNumberError):
    pass


class CutoffExceeded(BasisNumberError):
    pass


class CapExceeded(BasisNumberError):
    def __init__(self, size: int, cap: int):
        super().__init__(f"cycle space has {size} elements, cap is {cap}")
        self.size = size
        self.cap = cap


class BudgetExceeded(BasisNumberError):
    """探索予算切れ。それまでに得られた下界/上界を保持する。"""

    def __init__(self, message: str, lower: Optional[int] = None, upper: Optional[int] = None,
                 witness: Optional[List[Any]] = None):
        super().__init__(message)
        self.lower = lower
        self.upper = upper
        self.witness = witness


class EmbeddingError(BasisNumberError):
    def __init__(self, violations: List[str]):
        super().__init__("invalid embedding: " + "; ".join(violations))
        self.violations = list(violations)


class InvalidBasisError(BasisNumberError):
    def __init__(self, message: str, report: Any = None):
        super().__init__(message)
        self.report = report
