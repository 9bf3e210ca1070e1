"""
Конфигурация тропической библиотеки.

Значения читаются из Django settings, если они сконфигурированы, иначе из
переменных окружения. Некорректные значения логируются и заменяются
значениями по умолчанию.
"""
import logging
import os
from typing import Any, Callable, TypeVar

logger = logging.getLogger(__name__)

T = TypeVar('T')

# ===== TROPDET =====

# Матрицы размера n <= порога считаются перебором перестановок
DEFAULT_PERMUTATION_THRESHOLD = 8
MAX_PERMUTATION_THRESHOLD = 10  # 10! перестановок уже на грани разумного

# ===== SVG =====

DEFAULT_SVG_CANVAS = 480  # px, большая сторона рисунка
DEFAULT_SVG_MARGIN = 0.1  # доля от габарита по каждой оси
SVG_POINT_RADIUS = 4
SVG_PSEUDOVERTEX_RADIUS = 3
SVG_COORD_PRECISION = 3

# ===== HULL2D =====

# Расписание Чана: m_t = 2^(2^t), начиная с t = 1
CHAN_FIRST_ROUND = 1

# ===== BENCHMARK =====

DEFAULT_BENCHMARK_WORKERS = 1
DEFAULT_BENCHMARK_POINTS = 100_000
DEFAULT_BENCHMARK_TRIALS = 3
DEFAULT_BENCHMARK_SEED = 20240601


def _read_setting(name: str) -> Any:
    """Читает значение из Django settings, при недоступности Django - из окружения."""
    try:
        from django.conf import settings
        if settings.configured:
            value = getattr(settings, name, None)
            if value is not None:
                return value
    except Exception:
        pass
    return os.getenv(name)


def _get_value(name: str, default: T, cast: Callable[[Any], T], check: Callable[[T], bool]) -> T:
    raw = _read_setting(name)
    if raw is None or raw == '':
        return default
    try:
        value = cast(raw)
    except (TypeError, ValueError):
        logger.warning("Invalid %s=%r, using default %r", name, raw, default)
        return default
    if not check(value):
        logger.warning("Out of range %s=%r, using default %r", name, raw, default)
        return default
    return value


def get_permutation_threshold() -> int:
    """
    Порог перебора перестановок для tropdet.

    Returns:
        int: наибольший размер матрицы, для которого используется перебор

    Example:
        >>> os.environ['TROPICAL_PERMUTATION_THRESHOLD'] = '6'
        >>> get_permutation_threshold()
        6
    """
    return _get_value(
        'TROPICAL_PERMUTATION_THRESHOLD', DEFAULT_PERMUTATION_THRESHOLD, int,
        lambda v: 1 <= v <= MAX_PERMUTATION_THRESHOLD,
    )


def get_svg_canvas() -> int:
    return _get_value('TROPICAL_SVG_CANVAS', DEFAULT_SVG_CANVAS, int, lambda v: 16 <= v <= 10_000)


def get_svg_margin() -> float:
    return _get_value('TROPICAL_SVG_MARGIN', DEFAULT_SVG_MARGIN, float, lambda v: 0 <= v <= 1)


def get_benchmark_workers() -> int:
    return _get_value('TROPICAL_BENCHMARK_WORKERS', DEFAULT_BENCHMARK_WORKERS, int, lambda v: 1 <= v <= 64)
