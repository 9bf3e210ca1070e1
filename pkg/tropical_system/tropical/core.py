"""
Базовые объекты тропической (min-plus) геометрии в TP^d.

Все координаты - точные рациональные числа (fractions.Fraction), точки хранятся
в канонических координатах (минимум равен нулю). Любые сравнения точные,
допусков нет.
"""
from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from numbers import Rational
from typing import Iterable, Iterator, Optional, Sequence

from .exceptions import DimensionError, PreconditionError

logger = logging.getLogger(__name__)


def as_rational(value) -> Fraction:
    """
    Приводит значение к точному рациональному числу.

    Принимает int, Fraction, любые numbers.Rational и строки вида '1/2' или '0.25'.
    float отклоняется: двоичная арифметика ломает сравнения на равенство.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError('bool is not a coordinate')
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, Rational):
        return Fraction(value.numerator, value.denominator)
    if isinstance(value, str):
        return Fraction(value)
    raise TypeError(f'expected an exact rational, got {type(value).__name__}')


def trop_add(lam, mu) -> Fraction:
    """Тропическое сложение: λ ⊕ μ = min(λ, μ)."""
    return min(as_rational(lam), as_rational(mu))


def trop_mul(lam, mu) -> Fraction:
    """Тропическое умножение: λ ⊙ μ = λ + μ."""
    return as_rational(lam) + as_rational(mu)


@dataclass(frozen=True)
class TropPoint:
    """
    Точка TP^d в канонических координатах.

    Конструктор принимает любого представителя и сдвигает его так, чтобы
    минимальная координата стала нулём, поэтому TropPoint((5, 7, 6)) == TropPoint((0, 2, 1)).
    """

    coords: tuple

    def __post_init__(self):
        raw = tuple(as_rational(c) for c in self.coords)
        if len(raw) < 2:
            raise DimensionError(f'a point of TP^d needs at least 2 coordinates, got {len(raw)}')
        shift = min(raw)
        object.__setattr__(self, 'coords', tuple(c - shift for c in raw))

    @property
    def dim(self) -> int:
        return len(self.coords) - 1

    def __len__(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.coords)

    def __getitem__(self, index: int) -> Fraction:
        return self.coords[index]

    def __str__(self) -> str:
        return ' '.join(str(c) for c in self.coords)


def canonicalize(raw: Iterable) -> TropPoint:
    """
    Канонический представитель вектора: вычитает минимум.

    Example:
        >>> canonicalize((5, 7, 6)).coords
        (Fraction(0, 1), Fraction(2, 1), Fraction(1, 1))
    """
    return TropPoint(tuple(raw))


def affine_chart(x: TropPoint) -> tuple:
    """(ξ_0, …, ξ_d) -> (ξ_1 − ξ_0, …, ξ_d − ξ_0)."""
    return tuple(c - x[0] for c in x.coords[1:])


def from_affine(v: Iterable) -> TropPoint:
    """Обратное к affine_chart: дописывает 0 спереди и канонизирует."""
    return TropPoint((0, *v))


def check_same_dim(*points: TropPoint) -> int:
    """Возвращает общую размерность точек или бросает DimensionError."""
    dims = {p.dim for p in points}
    if len(dims) > 1:
        raise DimensionError(f'dimension mismatch: {sorted(dims)}')
    return dims.pop()


def trop_norm(x) -> Fraction:
    """Тропическая норма: max − min координат (для канонической точки - максимум)."""
    coords = [as_rational(c) for c in x]
    return max(coords) - min(coords)


def trop_dist(x: TropPoint, y: TropPoint) -> Fraction:
    check_same_dim(x, y)
    return trop_norm([a - b for a, b in zip(x, y)])


def trop_combination(coefficients: Sequence, points: Sequence[TropPoint]) -> TropPoint:
    """
    Тропическая линейная комбинация ⊕ λ_i ⊙ x_i.

    Args:
        coefficients: Коэффициенты λ_i
        points: Точки x_i одной размерности

    Returns:
        TropPoint: покомпонентный минимум λ_i + x_i в канонической форме
    """
    if not points or len(coefficients) != len(points):
        raise PreconditionError('need one coefficient per point and at least one point')
    check_same_dim(*points)
    lams = [as_rational(c) for c in coefficients]
    return TropPoint(tuple(
        min(lam + p[k] for lam, p in zip(lams, points))
        for k in range(len(points[0]))
    ))


def segment_eval(x: TropPoint, y: TropPoint, lam, mu) -> TropPoint:
    """Точка λ⊙x ⊕ μ⊙y тропического отрезка [x, y]."""
    check_same_dim(x, y)
    lam, mu = as_rational(lam), as_rational(mu)
    return TropPoint(tuple(min(lam + a, mu + b) for a, b in zip(x, y)))


def segment_breakpoints(x: TropPoint, y: TropPoint) -> list[TropPoint]:
    """
    Ломаная тропического отрезка [x, y]: x, внутренние изломы, y.

    Точка p(t) = min(x_i, y_i + t) вычисляется в различных значениях x_i − y_i,
    отсортированных по убыванию; подряд идущие совпадения схлопываются.

    Example:
        >>> [str(p) for p in segment_breakpoints(TropPoint((0, 0, 0)), TropPoint((0, 2, 1)))]
        ['0 0 0', '0 1 1', '0 2 1']
    """
    check_same_dim(x, y)
    shifts = sorted({a - b for a, b in zip(x, y)}, reverse=True)
    result: list[TropPoint] = []
    for t in shifts:
        point = TropPoint(tuple(min(a, b + t) for a, b in zip(x, y)))
        if not result or result[-1] != point:
            result.append(point)
    return result


@dataclass(frozen=True)
class Hyperplane:
    """Тропическая гиперплоскость с вершиной apex (линейная форма a = −apex)."""

    apex: TropPoint

    @classmethod
    def from_linear_form(cls, form: Iterable) -> 'Hyperplane':
        return cls(canonicalize(-as_rational(c) for c in form))


def hyperplane_contains(h: Hyperplane, x: TropPoint) -> bool:
    """Минимум x_j − apex_j достигается не менее двух раз."""
    check_same_dim(h.apex, x)
    diffs = [a - b for a, b in zip(x, h.apex)]
    low = min(diffs)
    return sum(1 for d in diffs if d == low) >= 2


@dataclass(frozen=True)
class Sector:
    """Сектор apex + S_k (открытый) или apex + S̄_k (замкнутый)."""

    apex: TropPoint
    index: int
    closed: bool = True

    def __post_init__(self):
        if not 0 <= self.index <= self.apex.dim:
            raise DimensionError(f'sector index {self.index} out of range 0..{self.apex.dim}')


def sector_contains(s: Sector, x: TropPoint) -> bool:
    check_same_dim(s.apex, x)
    diffs = [a - b for a, b in zip(x, s.apex)]
    dk = diffs[s.index]
    if s.closed:
        return all(dk <= dj for dj in diffs)
    return all(dk < dj for j, dj in enumerate(diffs) if j != s.index)


@dataclass(frozen=True)
class Halfspace:
    """
    Тропическое полупространство: объединение секторов apex + S̄_k, k ∈ K.

    Открытое полупространство - дополнение замкнутого противоположного.
    """

    apex: TropPoint
    indices: frozenset
    closed: bool = True

    def __post_init__(self):
        indices = frozenset(int(k) for k in self.indices)
        d = self.apex.dim
        if any(not 0 <= k <= d for k in indices):
            raise DimensionError(f'halfspace indices {sorted(indices)} out of range 0..{d}')
        if not 1 <= len(indices) <= d:
            raise PreconditionError('halfspace index set must be nonempty and proper')
        object.__setattr__(self, 'indices', indices)

    @property
    def dim(self) -> int:
        return self.apex.dim

    def opposite(self) -> 'Halfspace':
        complement = frozenset(range(self.dim + 1)) - self.indices
        return Halfspace(self.apex, complement, self.closed)

    def sectors(self) -> list[Sector]:
        return [Sector(self.apex, k, self.closed) for k in sorted(self.indices)]


def halfspace_contains(h: Halfspace, x: TropPoint) -> bool:
    if h.closed:
        return any(sector_contains(Sector(h.apex, k), x) for k in h.indices)
    outside = frozenset(range(h.dim + 1)) - h.indices
    return not any(sector_contains(Sector(h.apex, k), x) for k in outside)


def halfspace_boundary_contains(h: Halfspace, x: TropPoint) -> bool:
    """x лежит на границе: в H и в противоположном замкнутом полупространстве."""
    closed = Halfspace(h.apex, h.indices)
    return halfspace_contains(closed, x) and halfspace_contains(closed.opposite(), x)


def _difference_system_feasible(size: int, constraints: Iterable[tuple]) -> bool:
    """
    Совместность системы x_u − x_v ≤ c (или < c).

    Ограничение даёт ребро v -> u веса (c, −1) для строгого и (c, 0) для
    нестрогого неравенства; система несовместна ровно тогда, когда есть
    лексикографически отрицательный цикл (Флойд-Уоршелл).
    """
    dist: list[list[Optional[tuple]]] = [[None] * size for _ in range(size)]
    for i in range(size):
        dist[i][i] = (Fraction(0), 0)
    for u, v, c, strict in constraints:
        weight = (c, -1 if strict else 0)
        if dist[v][u] is None or weight < dist[v][u]:
            dist[v][u] = weight
    for k in range(size):
        row_k = dist[k]
        for i in range(size):
            d_ik = dist[i][k]
            if d_ik is None:
                continue
            row_i = dist[i]
            for j in range(size):
                d_kj = row_k[j]
                if d_kj is None:
                    continue
                cand = (d_ik[0] + d_kj[0], d_ik[1] + d_kj[1])
                if row_i[j] is None or cand < row_i[j]:
                    row_i[j] = cand
    zero = (Fraction(0), 0)
    return all(dist[i][i] >= zero for i in range(size))


def halfspace_includes(inner: Halfspace, outer: Halfspace) -> bool:
    """
    Точная проверка включения замкнутых полупространств inner ⊆ outer.

    Для каждого k ∈ K(inner) и j ∉ K(outer) проверяется, что замкнутый сектор
    inner.apex + S̄_k не пересекает множество точек, у которых минимум
    x − outer.apex достигается в j и только на индексах вне K(outer).
    """
    if not (inner.closed and outer.closed):
        raise PreconditionError('inclusion is decided for closed halfspaces only')
    d = check_same_dim(inner.apex, outer.apex)
    a, b = inner.apex, outer.apex
    outside = [j for j in range(d + 1) if j not in outer.indices]
    for k in inner.indices:
        base = [(k, i, a[k] - a[i], False) for i in range(d + 1) if i != k]
        for j in outside:
            system = list(base)
            for i in range(d + 1):
                if i == j:
                    continue
                system.append((j, i, b[j] - b[i], i not in outside))
            if _difference_system_feasible(d + 1, system):
                return False
    return True


def sector_includes(inner: Sector, outer: Sector) -> bool:
    """Символьная проверка вложенности замкнутых секторов inner ⊆ outer."""
    return halfspace_includes(
        Halfspace(inner.apex, frozenset({inner.index})),
        Halfspace(outer.apex, frozenset({outer.index})),
    )


def hypersimplex(d: int, k: int) -> list[TropPoint]:
    """
    Вершины тропического гиперсимплекса Δ_k^d: Σ_{i∈J} −e_i по k-подмножествам J.

    Подмножества перечисляются в лексикографическом порядке.
    """
    if d < 1:
        raise DimensionError(f'hypersimplex needs d >= 1, got {d}')
    if not 1 <= k <= d:
        raise PreconditionError(f'hypersimplex needs 1 <= k <= d, got k={k}, d={d}')
    points = []
    for subset in itertools.combinations(range(d + 1), k):
        points.append(canonicalize(-1 if i in subset else 0 for i in range(d + 1)))
    return points


def standard_simplex(d: int) -> list[TropPoint]:
    return hypersimplex(d, 1)


def cube_generators(d: int) -> list[TropPoint]:
    """Образующие ±1-куба C^d: −e_0 − 2e_i (i = 1..d) и e_1 + … + e_d."""
    if d < 1:
        raise DimensionError(f'cube needs d >= 1, got {d}')
    points = []
    for i in range(1, d + 1):
        raw = [0] * (d + 1)
        raw[0] = -1
        raw[i] = -2
        points.append(canonicalize(raw))
    points.append(canonicalize([0] + [1] * d))
    return points


@dataclass(frozen=True)
class Polytope:
    """Тропический многогранник tconv(generators); вершины считаются лениво."""

    generators: tuple

    def __post_init__(self):
        gens = tuple(p if isinstance(p, TropPoint) else canonicalize(p) for p in self.generators)
        if not gens:
            raise PreconditionError('a polytope needs at least one generator')
        check_same_dim(*gens)
        object.__setattr__(self, 'generators', gens)

    @property
    def dim(self) -> int:
        return self.generators[0].dim

    @cached_property
    def vertices(self) -> tuple:
        from .membership import vertex_set
        return tuple(vertex_set(self))
