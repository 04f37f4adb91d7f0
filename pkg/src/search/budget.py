"""
探索予算。既定値は .env (BASIS_BUDGET_SECONDS / BASIS_CAP_DIM / BASIS_MAX_NODES / BASIS_WORKERS) から読む。
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from typing import Optional

from src.config import load_config
from src.errors import BudgetExceeded, PreconditionError


@dataclass(frozen=True)
class SearchBudget:
    """
    Args:
        cap_dim: サイクル空間の次元の上限 (列挙する要素数は 2 ** cap_dim まで)
        seconds: 経過時間の上限
        max_nodes: 分枝限定法で展開するノード数の上限
        workers: 並列探索のプロセス数。None なら逐次
    """

    cap_dim: int = 16
    seconds: float = 60.0
    max_nodes: int = 5_000_000
    workers: Optional[int] = None

    def __post_init__(self):
        if self.cap_dim <= 0 or self.seconds <= 0 or self.max_nodes <= 0:
            raise PreconditionError(f"search budget limits must be positive: {self}")
        if self.workers is not None and self.workers <= 0:
            raise PreconditionError(f"workers must be positive, got {self.workers}")

    @property
    def cap(self) -> int:
        return 1 << self.cap_dim

    @classmethod
    def from_env(cls, **overrides) -> "SearchBudget":
        cfg = load_config()
        values = {
            "cap_dim": cfg["cap_dim"],
            "seconds": cfg["budget_seconds"],
            "max_nodes": cfg["max_nodes"],
            "workers": cfg["workers"],
        }
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)


class Clock:
    """ノード数と経過時間の見張り。上限を超えたら BudgetExceeded。"""

    def __init__(self, max_nodes: int, seconds: float):
        self.max_nodes = max_nodes
        self.deadline = time.monotonic() + seconds
        self.nodes = 0

    def tick(self) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node limit {self.max_nodes} reached")
        if self.nodes & 1023 == 0 and time.monotonic() > self.deadline:
            raise BudgetExceeded(f"time limit reached after {self.nodes} nodes")

    def seconds_left(self) -> float:
        return max(0.0, self.deadline - time.monotonic())
