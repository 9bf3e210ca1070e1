"""
Двумерный конвейер: экстремальные маркеры, три алгоритма тропической
выпуклой оболочки, псевдовершины, грани n-угольника и минимальные
полупространства в TP².

Точки берутся в аффинной карте (ξ_1 − ξ_0, ξ_2 − ξ_0) = (x, y); s = y − x.

Вершины оболочки лежат на трёх "лестницах":
  A - Парето-минимум по (y, s), обход снизу вверх (от lr к rh);
  B - Парето-максимум по (x, y), обход справа налево (от rh к hl);
  C - Парето-минимум по (x, −s), обход по убыванию s (от hl к lh).
Цикл против часовой стрелки: lr, A, rh, B, hl, C, lh.
"""
from __future__ import annotations

import logging
from bisect import bisect_left, bisect_right
from collections import namedtuple
from dataclasses import dataclass
from functools import cmp_to_key
from numbers import Rational
from typing import Callable, Iterable, Optional, Sequence

from . import metrics
from .config import CHAN_FIRST_ROUND
from .core import (
    Halfspace, TropPoint, affine_chart, from_affine, halfspace_boundary_contains,
    halfspace_contains, halfspace_includes, segment_breakpoints,
)
from .exceptions import DimensionError, PreconditionError, TropicalError
from .membership import contains

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class AffinePoint2:
    """Точка TP² в аффинной карте. Координаты - int или Fraction, без float."""

    x: Rational
    y: Rational

    def __post_init__(self):
        for value in (self.x, self.y):
            if isinstance(value, bool) or not isinstance(value, Rational):
                raise TypeError(f'expected an exact rational coordinate, got {value!r}')

    @property
    def s(self):
        return self.y - self.x

    @classmethod
    def from_trop(cls, p: TropPoint) -> 'AffinePoint2':
        if p.dim != 2:
            raise DimensionError(f'2D operation got a point of TP^{p.dim}')
        x, y = affine_chart(p)
        return cls(x, y)

    def to_trop(self) -> TropPoint:
        return from_affine((self.x, self.y))

    def __str__(self) -> str:
        return f'{self.x} {self.y}'


Markers = namedtuple('Markers', ['lr', 'rh', 'hl', 'lh'])


@dataclass
class HullStats:
    """Счётчики одного запуска: сравнения сортировок, вычисления τ̄, раунды Чана."""

    comparisons: int = 0
    orientation_tests: int = 0
    rounds: int = 0
    track_comparisons: bool = True


@dataclass(frozen=True)
class HullResult:
    """Вершины против часовой стрелки, начиная с lr, и их индексы во входе."""

    vertices: tuple
    vertex_indices: tuple
    algorithm: str = 'triple'


@dataclass(frozen=True)
class FaceLattice:
    """Решётка граней тропического n-угольника (как у обычного n-угольника)."""

    vertices: tuple
    facets: tuple

    def faces(self) -> list[tuple]:
        """Грани по рангу: ∅, вершины, рёбра, сам многоугольник."""
        result: list[tuple] = [()]
        if len(self.vertices) > 1:
            result.extend((v,) for v in self.vertices)
        if len(self.vertices) > 2:
            result.extend(self.facets)
        result.append(tuple(self.vertices))
        return result


@dataclass(frozen=True)
class MinimalHalfspaceSet:
    halfspaces: tuple
    full: bool = True

    def __iter__(self):
        return iter(self.halfspaces)

    def __len__(self) -> int:
        return len(self.halfspaces)


# ---------------------------------------------------------------------------
# Входные данные и маркеры
# ---------------------------------------------------------------------------

def as_affine_point(p) -> AffinePoint2:
    if isinstance(p, AffinePoint2):
        return p
    if isinstance(p, TropPoint):
        return AffinePoint2.from_trop(p)
    values = tuple(p)
    if len(values) != 2:
        raise DimensionError(f'expected 2 affine coordinates, got {len(values)}')
    return AffinePoint2(*values)


def as_affine_points(points: Iterable) -> list[AffinePoint2]:
    return [as_affine_point(p) for p in points]


def _dedupe(points: Sequence[AffinePoint2]) -> tuple[list[AffinePoint2], dict]:
    first_index: dict = {}
    unique = []
    for i, p in enumerate(points):
        if p not in first_index:
            first_index[p] = i
            unique.append(p)
    return unique, first_index


def _lr_key(p):
    return (p.y, -p.x)


def _rh_key(p):
    return (-p.x, -p.y)


def _hl_key(p):
    return (-p.y, -p.x)


def _lh_key(p):
    return (p.x, -p.y)


def _skew_key(p):
    return (-p.s, p.x)


def extreme_markers(points: Iterable) -> Markers:
    """
    Маркеры lr, rh, hl, lh.

    lr: min y, затем max x; rh: max x, затем max y;
    hl: max y, затем max x; lh: min x, затем max y.
    """
    pts = as_affine_points(points)
    if not pts:
        raise PreconditionError('extreme markers of an empty set')
    return Markers(
        min(pts, key=_lr_key), min(pts, key=_rh_key), min(pts, key=_hl_key), min(pts, key=_lh_key),
    )


# ---------------------------------------------------------------------------
# Сортировка тройкой списков
# ---------------------------------------------------------------------------

def _sorted(points: Sequence[AffinePoint2], key: Callable, stats: Optional[HullStats]) -> list:
    if stats is None or not stats.track_comparisons:
        return sorted(points, key=key)

    def compare(a, b):
        stats.comparisons += 1
        ka, kb = key(a), key(b)
        return (ka > kb) - (ka < kb)

    return sorted(points, key=cmp_to_key(compare))


def _records(ordered: Sequence[AffinePoint2], value: Callable, stats: Optional[HullStats]) -> list:
    """Строгие рекорды минимума value вдоль упорядоченного списка."""
    front = []
    best = None
    for p in ordered:
        current = value(p)
        if best is None or current < best:
            front.append(p)
            best = current
    if stats is not None and stats.track_comparisons:
        stats.comparisons += len(ordered)
    return front


def _fronts(points: Sequence[AffinePoint2], stats: Optional[HullStats]):
    by_y = _sorted(points, _lr_key, stats)
    by_x = _sorted(points, _rh_key, stats)
    by_skew = _sorted(points, _skew_key, stats)
    front_a = _records(by_y, lambda p: p.s, stats)
    front_b = _records(by_x, lambda p: -p.y, stats)
    front_c = _records(by_skew, lambda p: p.x, stats)
    return by_y, by_x, front_a, front_b, front_c


def _assemble_cycle(markers: Markers, front_a, front_b, front_c) -> list[AffinePoint2]:
    lr, rh, hl, lh = markers
    sequence = [lr]
    sequence.extend(p for p in front_a if p.y < rh.y)
    sequence.append(rh)
    sequence.extend(p for p in front_b if p.x > hl.x)
    sequence.append(hl)
    sequence.extend(p for p in front_c if p.x < hl.x and p.s > lh.s)
    sequence.append(lh)

    cycle: list[AffinePoint2] = []
    for p in sequence:
        if not cycle or cycle[-1] != p:
            cycle.append(p)
    if len(cycle) > 1 and cycle[-1] == cycle[0]:
        cycle.pop()
    return cycle


def _finish(algorithm: str, cycle: list, first_index: dict, stats: HullStats) -> HullResult:
    metrics.tropical_hull_computations_total.labels(algorithm=algorithm).inc()
    if stats.orientation_tests:
        metrics.tropical_orientation_tests_total.labels(algorithm=algorithm).inc(stats.orientation_tests)
    metrics.tropical_last_hull_size.set(len(cycle))
    logger.debug("hull_%s: %d vertices, %d comparisons, %d orientation tests",
                 algorithm, len(cycle), stats.comparisons, stats.orientation_tests)
    return HullResult(tuple(cycle), tuple(first_index[p] for p in cycle), algorithm)


def _prepare(points: Iterable) -> tuple[list, dict]:
    pts = as_affine_points(points)
    if not pts:
        raise PreconditionError('hull of an empty point set')
    return _dedupe(pts)


def hull_triple_sort(points: Iterable, stats: Optional[HullStats] = None) -> HullResult:
    """
    Оболочка сортировкой тремя способами за O(n log n).

    Списки: Y (по y, затем x по убыванию), L (справа налево), B (по y − x
    сверху вниз). Три фазы собирают лестницы A, B, C между маркерами.
    """
    unique, first_index = _prepare(points)
    run_stats = stats if stats is not None else HullStats(track_comparisons=False)
    by_y, by_x, front_a, front_b, front_c = _fronts(unique, run_stats)
    markers = Markers(by_y[0], by_x[0], min(unique, key=_hl_key), min(unique, key=_lh_key))
    if run_stats.track_comparisons:
        run_stats.comparisons += 2 * len(unique)
    cycle = _assemble_cycle(markers, front_a, front_b, front_c)
    return _finish('triple', cycle, first_index, run_stats)


# ---------------------------------------------------------------------------
# Тропический Джарвис
# ---------------------------------------------------------------------------

def tau_bar_2d(v: AffinePoint2, w: AffinePoint2, p: AffinePoint2) -> int:
    """
    τ̄_{v,w}(p) для строк (p, v, w) с нулевой первой координатой.

    Сравнивается минимум по чётным перестановкам с минимумом по нечётным:
    +1, если строго меньше чётный, −1, если нечётный, 0 при равенстве.
    """
    even = min(v.x + w.y, p.x + v.y, p.y + w.x)
    odd = min(v.y + w.x, p.x + w.y, p.y + v.x)
    return (odd > even) - (odd < even)


def _norm_from(p: AffinePoint2, v: AffinePoint2):
    dx, dy = p.x - v.x, p.y - v.y
    return max(0, dx, dy) - min(0, dx, dy)


def jarvis_step(v: AffinePoint2, candidates: Iterable[AffinePoint2],
                stats: Optional[HullStats] = None) -> Optional[AffinePoint2]:
    """
    Один шаг заворачивания: кандидат w заменяется на p, если τ̄_{v,w}(p) = −1
    или τ̄_{v,w}(p) = 0 и p дальше от v.
    """
    w = None
    tests = 0
    for p in candidates:
        if p == v:
            continue
        if w is None:
            w = p
            continue
        tests += 1
        turn = tau_bar_2d(v, w, p)
        if turn == -1 or (turn == 0 and _norm_from(p, v) > _norm_from(w, v)):
            w = p
    if stats is not None:
        stats.orientation_tests += tests
    return w


def hull_jarvis(points: Iterable, stats: Optional[HullStats] = None) -> HullResult:
    """Тропический Джарвис за O(nh), старт в lr(S)."""
    unique, first_index = _prepare(points)
    run_stats = stats if stats is not None else HullStats(track_comparisons=False)
    start = min(unique, key=_lr_key)
    cycle = [start]
    if len(unique) > 1:
        v = start
        for _ in range(len(unique)):
            w = jarvis_step(v, unique, run_stats)
            if w == start:
                break
            cycle.append(w)
            v = w
        else:
            logger.error("Jarvis march did not close after %d steps", len(unique))
            raise TropicalError('gift wrapping did not return to the start vertex')
    return _finish('jarvis', cycle, first_index, run_stats)


# ---------------------------------------------------------------------------
# Чан: группы + бинарный поиск касательных
# ---------------------------------------------------------------------------

class _GroupHull:
    """
    Оболочка группы точек с индексами для бинарного поиска по лестницам.

    next_vertex(v) - следующая после v вершина оболочки группы ∪ {v}
    против часовой стрелки, за O(log m) при v вне группы.
    """

    def __init__(self, points: Sequence[AffinePoint2], stats: Optional[HullStats] = None):
        self.members = set(points)
        by_y, by_x, self.front_a, self.front_b, self.front_c = _fronts(points, stats)
        self.markers = Markers(by_y[0], by_x[0], min(points, key=_hl_key), min(points, key=_lh_key))
        self.cycle = _assemble_cycle(self.markers, self.front_a, self.front_b, self.front_c)
        self.successor = {}
        if len(self.cycle) > 1:
            for i, p in enumerate(self.cycle):
                self.successor[p] = self.cycle[(i + 1) % len(self.cycle)]
        # ключи лестниц по возрастанию
        self.a_neg_s = [-p.s for p in self.front_a]
        self.b_neg_x = [-p.x for p in self.front_b]
        self.b_y = [p.y for p in self.front_b]
        self.c_neg_s = [-p.s for p in self.front_c]
        self.c_neg_x = [-p.x for p in self.front_c]

    def _on_a(self, v) -> bool:
        i = bisect_left(self.a_neg_s, -v.s)
        return not (i < len(self.front_a) and self.front_a[i].y <= v.y)

    def _on_b(self, v) -> bool:
        count = bisect_right(self.b_neg_x, -v.x)
        return not (count > 0 and self.front_b[count - 1].y >= v.y)

    def _on_c(self, v) -> bool:
        count = bisect_right(self.c_neg_s, -v.s)
        return not (count > 0 and self.front_c[count - 1].x <= v.x)

    def _next_a(self, v):
        i = bisect_right(self.a_neg_s, -v.s)
        return self.front_a[i] if i < len(self.front_a) else None

    def _next_b(self, v):
        i = bisect_right(self.b_y, v.y)
        return self.front_b[i] if i < len(self.front_b) else None

    def _next_c(self, v):
        i = bisect_right(self.c_neg_x, -v.x)
        return self.front_c[i] if i < len(self.front_c) else None

    def next_vertex(self, v: AffinePoint2) -> Optional[AffinePoint2]:
        if v in self.members:
            return self.successor.get(v)
        g = self.markers
        lr = min(g.lr, v, key=_lr_key)
        rh = min(g.rh, v, key=_rh_key)
        hl = min(g.hl, v, key=_hl_key)
        lh = min(g.lh, v, key=_lh_key)

        if v == lr or (v.y < rh.y and self._on_a(v)):
            nxt = self._next_a(v)
            if nxt is None or nxt.y >= rh.y:
                nxt = rh
            if nxt != v:
                return nxt
        if v == rh or (v.x > hl.x and self._on_b(v)):
            nxt = self._next_b(v)
            if nxt is None or nxt.x <= hl.x:
                nxt = hl
            if nxt != v:
                return nxt
        if v == hl or (v.s > lh.s and self._on_c(v)):
            nxt = self._next_c(v)
            if nxt is None or nxt.s <= lh.s:
                nxt = lh
            if nxt != v:
                return nxt
        return lr if lr != v else None


def tangent_binary_search(polygon: HullResult, v) -> AffinePoint2:
    """
    Следующая вершина оболочки polygon ∪ {v} после v: лучший кандидат
    шага Джарвиса внутри многоугольника.

    Вызовов τ̄ нет. Граница многоугольника хранится как три лестницы,
    отсортированные по ключам (−s, −x и y, −s и −x). По маркерам polygon ∪ {v}
    выбирается лестница, на дугу которой попадает v, и преемник находится
    бинарным поиском (bisect) по её ключу: O(log m) сравнений рациональных
    чисел. Результат совпадает с линейным шагом Джарвиса по вершинам.

    Raises:
        PreconditionError: v лежит в многоугольнике
    """
    v = as_affine_point(v)
    vertices = list(polygon.vertices)
    if contains([p.to_trop() for p in vertices], v.to_trop()).member:
        raise PreconditionError(f'point {v} lies inside the polygon')
    return _GroupHull(vertices).next_vertex(v)


def hull_chan(points: Iterable, stats: Optional[HullStats] = None) -> HullResult:
    """
    Оболочка за O(n log h): группы по m точек, оболочка каждой группы
    сортировкой, касательные бинарным поиском, выбор среди касательных
    шагом Джарвиса. m_t = 2^(2^t); раунд прерывается, как только в
    оболочке больше m_t вершин, найденные вершины сохраняются.
    """
    unique, first_index = _prepare(points)
    run_stats = stats if stats is not None else HullStats(track_comparisons=False)
    n = len(unique)
    start = min(unique, key=_lr_key)
    cycle = [start]
    t = CHAN_FIRST_ROUND
    while n > 1:
        m = min(2 ** (2 ** t), n)
        run_stats.rounds += 1
        groups = [_GroupHull(unique[i:i + m], run_stats) for i in range(0, n, m)]
        closed = False
        while len(cycle) <= m:
            v = cycle[-1]
            candidates = [c for c in (g.next_vertex(v) for g in groups) if c is not None]
            w = jarvis_step(v, candidates, run_stats)
            if w is None or w == start:
                closed = True
                break
            cycle.append(w)
        if closed:
            break
        if m == n:
            logger.error("Chan round with a single group did not close")
            raise TropicalError('hull walk did not return to the start vertex')
        logger.debug("Chan round t=%d (m=%d) aborted with %d vertices", t, m, len(cycle))
        t += 1
    return _finish('chan', cycle, first_index, run_stats)


HULL_ALGORITHMS = {
    'triple': hull_triple_sort,
    'jarvis': hull_jarvis,
    'chan': hull_chan,
}


# ---------------------------------------------------------------------------
# Граница, псевдовершины, грани, полупространства
# ---------------------------------------------------------------------------

def _ensure_hull(data) -> HullResult:
    return data if isinstance(data, HullResult) else hull_triple_sort(data)


def boundary_polyline(data) -> list[tuple[AffinePoint2, AffinePoint2]]:
    """
    Граница многоугольника как список обычных отрезков против часовой стрелки:
    ломаные segment_breakpoints между соседними вершинами.
    """
    hull = _ensure_hull(data)
    vertices = hull.vertices
    if len(vertices) == 1:
        return []
    pairs = [(vertices[0], vertices[1])] if len(vertices) == 2 else [
        (vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))
    ]
    pieces = []
    for a, b in pairs:
        chain = [AffinePoint2.from_trop(p) for p in segment_breakpoints(a.to_trop(), b.to_trop())]
        pieces.extend(zip(chain, chain[1:]))
    return pieces


def _on_piece(p: AffinePoint2, a: AffinePoint2, b: AffinePoint2) -> bool:
    cross = (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
    if cross != 0:
        return False
    return min(a.x, b.x) <= p.x <= max(a.x, b.x) and min(a.y, b.y) <= p.y <= max(a.y, b.y)


def pseudovertices(data) -> list[AffinePoint2]:
    """
    Вершины аффинного разбиения прямыми x = c, y = c, y − x = c через вершины
    оболочки, лежащие на её граничной ломаной. Порядок - вдоль границы от lr.
    """
    hull = _ensure_hull(data)
    vertices = hull.vertices
    if len(vertices) == 1:
        return [vertices[0]]
    xs = {v.x for v in vertices}
    ys = {v.y for v in vertices}
    ss = {v.s for v in vertices}
    candidates = {AffinePoint2(a, b) for a in xs for b in ys}
    candidates.update(AffinePoint2(a, a + c) for a in xs for c in ss)
    candidates.update(AffinePoint2(b - c, b) for b in ys for c in ss)

    result = []
    seen = set()
    for a, b in boundary_polyline(hull):
        on_piece = [p for p in candidates if p not in seen and _on_piece(p, a, b)]
        on_piece.sort(key=lambda p: _norm_from(p, a))
        for p in on_piece:
            seen.add(p)
            result.append(p)
    return result


def facets2d(data) -> FaceLattice:
    """
    Грани n-угольника: отрезки между соседними вершинами при n >= 3,
    два конца при n = 2, пустой список при n = 1.
    """
    hull = _ensure_hull(data)
    vertices = hull.vertices
    n = len(vertices)
    if n == 1:
        facets = ()
    elif n == 2:
        facets = ((vertices[0],), (vertices[1],))
    else:
        facets = tuple((vertices[i], vertices[(i + 1) % n]) for i in range(n))
    return FaceLattice(tuple(vertices), facets)


def face_lattice(data) -> list[tuple]:
    """Грани по рангу: ∅, вершины, рёбра, многоугольник."""
    return facets2d(data).faces()


INDEX_SETS_2D = tuple(frozenset(s) for s in ({0}, {1}, {2}, {0, 1}, {0, 2}, {1, 2}))


def minimal_halfspaces2d(data) -> MinimalHalfspaceSet:
    """
    Минимальные замкнутые полупространства, содержащие tconv(S).

    Кандидаты - пары (псевдовершина, K) для шести собственных K. Остаются
    кандидаты, содержащие все вершины и не содержащие строго другого такого
    кандидата. Если многоугольник лежит на границе какого-нибудь кандидата,
    он не полный: пишется предупреждение, результат тот же, но без гарантии
    единственности.
    """
    hull = _ensure_hull(data)
    vertices = [v.to_trop() for v in hull.vertices]
    containing = []
    full = True
    for a in pseudovertices(hull):
        apex = a.to_trop()
        for indices in INDEX_SETS_2D:
            h = Halfspace(apex, indices)
            if all(halfspace_contains(h, v) for v in vertices):
                containing.append(h)
                if all(halfspace_boundary_contains(h, v) for v in vertices):
                    full = False

    minimal: list[Halfspace] = []
    for h in containing:
        if any(
            other is not h and halfspace_includes(other, h) and not halfspace_includes(h, other)
            for other in containing
        ):
            continue
        if any(halfspace_includes(h, m) and halfspace_includes(m, h) for m in minimal):
            continue
        minimal.append(h)

    if not full:
        logger.warning(
            "Polytope is not full, minimal halfspaces are not unique",
            extra={'vertices': len(vertices), 'halfspaces': len(minimal)},
        )
    return MinimalHalfspaceSet(tuple(minimal), full)
