from dotenv import load_dotenv
import logging
import os

# .envファイルを読み込む
load_dotenv()

logger = logging.getLogger(__name__)

_DEFAULTS = {
    "budget_seconds": 60.0,
    "cap_dim": 16,
    "max_nodes": 5_000_000,
}


def _env_number(name: str, default, cast):
    raw = os.getenv(name)
    if raw is None or raw == "":
        return default
    try:
        value = cast(raw)
    except ValueError:
        logger.warning(f"{name}={raw!r} is not a number, using default {default}")
        return default
    if value <= 0:
        logger.warning(f"{name}={raw!r} must be positive, using default {default}")
        return default
    return value


def load_config():
    """
    環境設定をロードして検証する。

    探索予算 (BASIS_BUDGET_SECONDS / BASIS_CAP_DIM / BASIS_MAX_NODES) は
    CLI の既定値として使われる。不正値は警告を出して既定値に戻す。
    """
    workers = os.getenv("BASIS_WORKERS")
    if workers:
        workers = _env_number("BASIS_WORKERS", None, int)

    return {
        "db_path": os.getenv("DB_PATH", os.path.join("data", "basis_certificates.db")),
        "budget_seconds": _env_number("BASIS_BUDGET_SECONDS", _DEFAULTS["budget_seconds"], float),
        "cap_dim": _env_number("BASIS_CAP_DIM", _DEFAULTS["cap_dim"], int),
        "max_nodes": _env_number("BASIS_MAX_NODES", _DEFAULTS["max_nodes"], int),
        "workers": workers or None,
    }
