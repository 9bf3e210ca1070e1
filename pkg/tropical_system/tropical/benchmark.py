"""
Прогоны производительности для двумерной оболочки.

Режимы:
  float       - сортировка тремя способами на numpy (float64, без точной арифметики)
  bucket      - тот же алгоритм с карманной сортировкой, ожидаемо O(n)
  orientation - число вычислений τ̄ у Чана и Джарвиса на многоугольнике с облаком

Входы детерминированы по seed; в stdout попадают только результаты испытаний,
время пишется в лог.
"""
from __future__ import annotations

import logging
import math
import random
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from .config import DEFAULT_BENCHMARK_SEED, get_benchmark_workers
from .exceptions import DimensionError, PreconditionError
from .hull2d import AffinePoint2, HullStats, hull_chan, hull_jarvis

logger = logging.getLogger(__name__)

BENCHMARK_MODES = ('float', 'bucket', 'orientation')

CLOUD_RADIUS = 10 ** 6


@dataclass(frozen=True)
class TrialResult:
    trial: int
    points: int
    vertices: int
    details: dict = field(default_factory=dict)

    def describe(self) -> str:
        parts = [f'trial {self.trial}', f'n {self.points}', f'vertices {self.vertices}']
        parts.extend(f'{key} {value}' for key, value in self.details.items())
        return ' '.join(parts)


# ---------------------------------------------------------------------------
# Генераторы входа
# ---------------------------------------------------------------------------

def uniform_points(n: int, seed: int = DEFAULT_BENCHMARK_SEED) -> np.ndarray:
    """n равномерных точек единичного квадрата, массив (n, 2)."""
    rng = np.random.default_rng(seed)
    return rng.random((n, 2))


def polygon_with_cloud(n: int, hull_size: int = 24, seed: int = DEFAULT_BENCHMARK_SEED,
                       radius: int = CLOUD_RADIUS) -> list[AffinePoint2]:
    """
    Целочисленный вход с заданным числом вершин оболочки.

    hull_size точек лежат на окружности на трёх дугах, где обычная выпуклость
    совпадает с тропическими "лестницами": (−90°, −45°), (0°, 90°), (135°, 180°).
    Остальные n − hull_size точек - облако в квадрате со стороной radius/5
    вокруг нуля, оно целиком внутри оболочки. Порядок перемешан.
    """
    if hull_size < 3 or n < hull_size:
        raise PreconditionError(f'need 3 <= hull_size <= n, got hull_size={hull_size}, n={n}')
    rng = random.Random(seed)
    side = hull_size // 4
    arcs = ((-90, -45, side), (0, 90, hull_size - 2 * side), (135, 180, side))
    points = []
    for start, stop, count in arcs:
        for i in range(count):
            angle = math.radians(start + (stop - start) * (i + 0.5) / count)
            points.append(AffinePoint2(round(radius * math.cos(angle)), round(radius * math.sin(angle))))
    inner = radius // 10
    points.extend(
        AffinePoint2(rng.randint(-inner, inner), rng.randint(-inner, inner)) for _ in range(n - hull_size)
    )
    rng.shuffle(points)
    return points


# ---------------------------------------------------------------------------
# Плавающая точка: numpy
# ---------------------------------------------------------------------------

def _first_records(values: np.ndarray) -> np.ndarray:
    """Маска строгих рекордов минимума при проходе слева направо."""
    mask = np.ones(len(values), dtype=bool)
    if len(values) > 1:
        running = np.minimum.accumulate(values)
        mask[1:] = values[1:] < running[:-1]
    return mask


def _assemble(x, y, s, lr, rh, hl, lh, front_a, front_b, front_c) -> np.ndarray:
    front_a = front_a[y[front_a] < y[rh]]
    front_b = front_b[x[front_b] > x[hl]]
    front_c = front_c[(x[front_c] < x[hl]) & (s[front_c] > s[lh])]
    cycle = np.concatenate(([lr], front_a, [rh], front_b, [hl], front_c, [lh])).astype(np.int64)
    keep = np.ones(len(cycle), dtype=bool)
    keep[1:] = cycle[1:] != cycle[:-1]
    cycle = cycle[keep]
    if len(cycle) > 1 and cycle[-1] == cycle[0]:
        cycle = cycle[:-1]
    return cycle


def triple_sort_float(points) -> np.ndarray:
    """
    Сортировка тремя способами на float64.

    Args:
        points: массив (n, 2) координат карты

    Returns:
        np.ndarray: индексы вершин во входе (первые вхождения) против часовой стрелки от lr
    """
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DimensionError(f'expected an (n, 2) array, got shape {pts.shape}')
    if len(pts) == 0:
        raise PreconditionError('hull of an empty point set')
    unique, first = np.unique(pts, axis=0, return_index=True)
    x, y = unique[:, 0], unique[:, 1]
    s = y - x

    by_y = np.lexsort((-x, y))
    by_x = np.lexsort((-y, -x))
    by_skew = np.lexsort((x, -s))
    lr, rh = by_y[0], by_x[0]
    hl = np.lexsort((-x, -y))[0]
    lh = np.lexsort((-y, x))[0]

    front_a = by_y[_first_records(s[by_y])]
    front_b = by_x[_first_records(-y[by_x])]
    front_c = by_skew[_first_records(x[by_skew])]
    return first[_assemble(x, y, s, lr, rh, hl, lh, front_a, front_b, front_c)]


def _bucket_order(keys: list, ties: list) -> list[int]:
    """Порядок индексов по (key, tie) карманной сортировкой с n карманами."""
    n = len(keys)
    low, high = min(keys), max(keys)
    if high == low:
        return sorted(range(n), key=lambda i: ties[i])
    scale = n / (high - low)
    buckets: list[list[int]] = [[] for _ in range(n)]
    for i, k in enumerate(keys):
        buckets[min(int((k - low) * scale), n - 1)].append(i)
    order = []
    for bucket in buckets:
        if len(bucket) > 1:
            bucket.sort(key=lambda i: (keys[i], ties[i]))
        order.extend(bucket)
    return order


def triple_sort_bucket(points) -> np.ndarray:
    """Тот же алгоритм, но три сортировки - карманные по равномерному входу."""
    pts = np.asarray(points, dtype=np.float64)
    if pts.ndim != 2 or pts.shape[1] != 2:
        raise DimensionError(f'expected an (n, 2) array, got shape {pts.shape}')
    if len(pts) == 0:
        raise PreconditionError('hull of an empty point set')
    unique, first = np.unique(pts, axis=0, return_index=True)
    xs = unique[:, 0].tolist()
    ys = unique[:, 1].tolist()
    ss = [b - a for a, b in zip(xs, ys)]
    neg_x = [-a for a in xs]

    by_y = np.array(_bucket_order(ys, neg_x), dtype=np.int64)
    by_x = np.array(_bucket_order(neg_x, [-b for b in ys]), dtype=np.int64)
    by_skew = np.array(_bucket_order([-c for c in ss], xs), dtype=np.int64)

    x, y, s = unique[:, 0], unique[:, 1], np.array(ss)
    hl = np.lexsort((-x, -y))[0]
    lh = np.lexsort((-y, x))[0]
    front_a = by_y[_first_records(s[by_y])]
    front_b = by_x[_first_records(-y[by_x])]
    front_c = by_skew[_first_records(x[by_skew])]
    return first[_assemble(x, y, s, by_y[0], by_x[0], hl, lh, front_a, front_b, front_c)]


# ---------------------------------------------------------------------------
# Прогоны
# ---------------------------------------------------------------------------

def _float_trial(sorter: Callable) -> Callable[..., TrialResult]:
    def run(trial: int, n: int, seed: int, hull_size: int) -> TrialResult:
        points = uniform_points(n, seed + trial)
        started = time.perf_counter()
        vertices = sorter(points)
        logger.info("benchmark trial %d: %d points, %d vertices in %.3f s",
                    trial, n, len(vertices), time.perf_counter() - started)
        return TrialResult(trial, n, len(vertices))
    return run


def _orientation_trial(trial: int, n: int, seed: int, hull_size: int) -> TrialResult:
    points = polygon_with_cloud(n, hull_size, seed + trial)
    jarvis_stats = HullStats(track_comparisons=False)
    chan_stats = HullStats(track_comparisons=False)
    started = time.perf_counter()
    jarvis = hull_jarvis(points, jarvis_stats)
    middle = time.perf_counter()
    chan = hull_chan(points, chan_stats)
    logger.info("benchmark trial %d: jarvis %.3f s, chan %.3f s",
                trial, middle - started, time.perf_counter() - middle)
    if chan.vertices != jarvis.vertices:
        logger.error("Chan and Jarvis disagree on trial %d", trial)
    ratio = chan_stats.orientation_tests / jarvis_stats.orientation_tests if jarvis_stats.orientation_tests else 0
    return TrialResult(trial, n, len(chan.vertices), {
        'jarvis_tests': jarvis_stats.orientation_tests,
        'chan_tests': chan_stats.orientation_tests,
        'chan_rounds': chan_stats.rounds,
        'ratio': f'{ratio:.4f}',
    })


_RUNNERS = {
    'float': _float_trial(triple_sort_float),
    'bucket': _float_trial(triple_sort_bucket),
    'orientation': _orientation_trial,
}


def run_benchmark(mode: str, n: int, trials: int, seed: int = DEFAULT_BENCHMARK_SEED,
                  workers: Optional[int] = None, hull_size: int = 24) -> list[TrialResult]:
    """
    Выполняет испытания режима mode; результаты в порядке номеров испытаний.

    Args:
        mode: float, bucket или orientation
        n: Число точек
        trials: Число испытаний; испытание i использует seed + i
        workers: Размер пула потоков (по умолчанию TROPICAL_BENCHMARK_WORKERS)
        hull_size: Число вершин оболочки для orientation
    """
    if mode not in _RUNNERS:
        raise PreconditionError(f'unknown benchmark mode {mode!r}')
    if n < 1 or trials < 1:
        raise PreconditionError('benchmark needs n >= 1 and trials >= 1')
    runner = _RUNNERS[mode]
    workers = workers or get_benchmark_workers()
    logger.info("benchmark %s: n=%d trials=%d workers=%d", mode, n, trials, workers)
    if workers <= 1 or trials == 1:
        return [runner(t, n, seed, hull_size) for t in range(trials)]
    with ThreadPoolExecutor(max_workers=workers) as executor:
        return list(executor.map(lambda t: runner(t, n, seed, hull_size), range(trials)))
