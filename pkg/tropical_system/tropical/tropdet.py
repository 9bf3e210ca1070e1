"""
Тропический определитель, тропическая сингулярность, tsgn и предикаты τ / τ̄.

tdet M = min по перестановкам σ суммы m_{i,σ(i)}. Для матриц размера
n <= TROPICAL_PERMUTATION_THRESHOLD используется полный перебор перестановок,
для больших - точный венгерский алгоритм на Fraction с двойственными
потенциалами (u, v).
"""
from __future__ import annotations

import itertools
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

from . import metrics
from .config import get_permutation_threshold
from .core import TropPoint, as_rational, canonicalize, check_same_dim
from .exceptions import DimensionError, PreconditionError

logger = logging.getLogger(__name__)

EVEN = 1
ODD = -1


@dataclass(frozen=True)
class TropMatrix:
    """Квадратная матрица точных рациональных чисел."""

    rows: tuple

    def __post_init__(self):
        rows = tuple(tuple(as_rational(v) for v in row) for row in self.rows)
        n = len(rows)
        if n == 0 or any(len(row) != n for row in rows):
            raise DimensionError(f'tropical determinant needs a non-empty square matrix, got {n} rows '
                                 f'of lengths {sorted({len(r) for r in rows})}')
        object.__setattr__(self, 'rows', rows)

    @classmethod
    def from_points(cls, points: Iterable[TropPoint]) -> 'TropMatrix':
        return cls(tuple(p.coords for p in points))

    @property
    def size(self) -> int:
        return len(self.rows)

    def transpose(self) -> 'TropMatrix':
        return TropMatrix(tuple(zip(*self.rows)))

    def swap_rows(self, i: int, j: int) -> 'TropMatrix':
        rows = list(self.rows)
        rows[i], rows[j] = rows[j], rows[i]
        return TropMatrix(tuple(rows))

    def swap_columns(self, i: int, j: int) -> 'TropMatrix':
        return self.transpose().swap_rows(i, j).transpose()

    def shift_rows(self, shifts: Sequence) -> 'TropMatrix':
        return TropMatrix(tuple(
            tuple(v + as_rational(c) for v in row) for row, c in zip(self.rows, shifts)
        ))


@dataclass(frozen=True)
class TdetResult:
    """
    Результат вычисления тропического определителя.

    value: минимум по перестановкам; optimal_parities: множество знаков
    оптимальных перестановок; witness: одна оптимальная перестановка;
    singular: оптимум достигается не менее чем двумя перестановками.
    """

    value: Fraction
    optimal_parities: frozenset
    witness: tuple
    singular: bool
    method: str

    @property
    def sign(self) -> int:
        if self.singular:
            return 0
        return permutation_sign(self.witness)

    @property
    def closure_sign(self) -> int:
        if self.optimal_parities == frozenset({EVEN}):
            return 1
        if self.optimal_parities == frozenset({ODD}):
            return -1
        return 0


def permutation_sign(perm: Sequence[int]) -> int:
    """Знак перестановки по чётности циклов."""
    seen = [False] * len(perm)
    transpositions = 0
    for start in range(len(perm)):
        if seen[start]:
            continue
        length = 0
        j = start
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        transpositions += length - 1
    return EVEN if transpositions % 2 == 0 else ODD


def _as_matrix(m) -> TropMatrix:
    return m if isinstance(m, TropMatrix) else TropMatrix(tuple(m))


def _enumerate(matrix: TropMatrix) -> TdetResult:
    rows = matrix.rows
    n = matrix.size
    best: Optional[Fraction] = None
    witness: tuple = ()
    count = 0
    parities: set[int] = set()
    for perm in itertools.permutations(range(n)):
        total = sum(rows[i][perm[i]] for i in range(n))
        if best is None or total < best:
            best, witness, count = total, perm, 1
            parities = {permutation_sign(perm)}
        elif total == best:
            count += 1
            parities.add(permutation_sign(perm))
    return TdetResult(best, frozenset(parities), witness, count > 1, 'enumeration')


def _hungarian(rows: Sequence[Sequence[Fraction]]) -> tuple[Fraction, tuple, list, list]:
    """
    Венгерский алгоритм (минимизация) на точных рациональных числах.

    Returns:
        (value, assignment, u, v): оптимум, assignment[i] = столбец строки i,
        потенциалы с u_i + v_j <= m_ij и равенством на оптимальном назначении.
    """
    n = len(rows)
    inf = math.inf
    u = [Fraction(0)] * (n + 1)
    v = [Fraction(0)] * (n + 1)
    p = [0] * (n + 1)  # p[j] - строка, назначенная столбцу j
    way = [0] * (n + 1)

    for i in range(1, n + 1):
        p[0] = i
        j0 = 0
        minv = [inf] * (n + 1)
        used = [False] * (n + 1)
        while True:
            used[j0] = True
            i0 = p[j0]
            delta = inf
            j1 = 0
            for j in range(1, n + 1):
                if not used[j]:
                    cur = rows[i0 - 1][j - 1] - u[i0] - v[j]
                    if cur < minv[j]:
                        minv[j] = cur
                        way[j] = j0
                    if minv[j] < delta:
                        delta = minv[j]
                        j1 = j
            for j in range(n + 1):
                if used[j]:
                    u[p[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if p[j0] == 0:
                break
        while True:
            j1 = way[j0]
            p[j0] = p[j1]
            j0 = j1
            if j0 == 0:
                break

    assignment = [-1] * n
    for j in range(1, n + 1):
        assignment[p[j] - 1] = j - 1
    value = sum(rows[i][assignment[i]] for i in range(n))
    return value, tuple(assignment), u[1:], v[1:]


def _forbidden_resolve_singular(rows: Sequence[Sequence[Fraction]], value: Fraction, assignment: tuple) -> bool:
    """
    Сингулярность через запрет рёбер: по очереди штрафуем каждое ребро
    (i, σ(i)) оптимального назначения и решаем заново. Если оптимум не
    изменился - есть вторая оптимальная перестановка.
    """
    n = len(rows)
    spread = max(abs(x) for row in rows for x in row)
    penalty = 2 * n * spread + 1
    for i, j in enumerate(assignment):
        patched = [list(row) for row in rows]
        patched[i][j] = patched[i][j] + penalty
        other, _, _, _ = _hungarian(patched)
        if other == value:
            return True
    return False


def _tight_parities(rows: Sequence[Sequence[Fraction]], u: list, v: list) -> frozenset:
    """
    Чётности совершенных паросочетаний графа жёстких рёбер u_i + v_j = m_ij.

    Каждое такое паросочетание - оптимальная перестановка и наоборот.
    Перебор останавливается, как только встречены обе чётности.
    """
    n = len(rows)
    tight = [[j for j in range(n) if u[i] + v[j] == rows[i][j]] for i in range(n)]
    found: set[int] = set()
    perm = [-1] * n
    taken = [False] * n

    def extend(i: int) -> bool:
        if i == n:
            found.add(permutation_sign(perm))
            return len(found) == 2
        for j in tight[i]:
            if not taken[j]:
                taken[j] = True
                perm[i] = j
                if extend(i + 1):
                    return True
                taken[j] = False
        return False

    extend(0)
    return frozenset(found)


def _assignment(matrix: TropMatrix, with_parities: bool) -> TdetResult:
    rows = matrix.rows
    value, assignment, u, v = _hungarian(rows)
    singular = _forbidden_resolve_singular(rows, value, assignment)
    if with_parities:
        parities = _tight_parities(rows, u, v)
    else:
        # без перечисления известна только чётность найденного назначения
        parities = frozenset({permutation_sign(assignment)})
    return TdetResult(value, parities, assignment, singular, 'assignment')


def tdet_result(m, *, with_parities: bool = True) -> TdetResult:
    """
    Полный результат тропического определителя.

    Args:
        m: TropMatrix или последовательность строк
        with_parities: для больших матриц перечислять чётности оптимальных
            перестановок (нужно только для τ̄)

    Returns:
        TdetResult
    """
    matrix = _as_matrix(m)
    threshold = get_permutation_threshold()
    if matrix.size <= threshold:
        result = _enumerate(matrix)
    else:
        logger.debug("tdet via assignment solver for %dx%d matrix", matrix.size, matrix.size)
        result = _assignment(matrix, with_parities)
    metrics.tropical_determinant_evaluations_total.labels(method=result.method).inc()
    return result


def tdet(m) -> Fraction:
    return tdet_result(m, with_parities=False).value


def is_singular(m) -> bool:
    return tdet_result(m, with_parities=False).singular


def tsgn(m) -> int:
    """0 для сингулярной матрицы, иначе знак единственной оптимальной перестановки."""
    return tdet_result(m, with_parities=False).sign


def _orientation_matrix(points: Sequence[TropPoint], x: TropPoint) -> TropMatrix:
    points = list(points)
    check_same_dim(x, *points)
    if len(points) != x.dim:
        raise DimensionError(f'tau in TP^{x.dim} needs {x.dim} points, got {len(points)}')
    return TropMatrix.from_points([x, *points])


def tau(points: Sequence[TropPoint], x: TropPoint) -> int:
    """τ(x) = tsgn(x, p_1, …, p_d)."""
    return tsgn(_orientation_matrix(points, x))


def tau_closure(points: Sequence[TropPoint], x: TropPoint) -> int:
    """
    τ̄(x): +1, если все оптимальные перестановки (x, p_1, …, p_d) чётные,
    −1, если все нечётные, 0, если встречаются обе чётности.
    """
    return tdet_result(_orientation_matrix(points, x)).closure_sign


def has_singular_minor(rows: Sequence[Sequence]) -> bool:
    """
    Есть ли у матрицы d × (d+1) тропически сингулярный максимальный минор.

    Используется как булева проверка общего положения.
    """
    rows = [tuple(as_rational(v) for v in row) for row in rows]
    d = len(rows)
    if d == 0 or any(len(row) != d + 1 for row in rows):
        raise DimensionError('expected a d x (d+1) matrix')
    for dropped in range(d + 1):
        minor = [tuple(v for j, v in enumerate(row) if j != dropped) for row in rows]
        if is_singular(minor):
            return True
    return False


def _staircase_pairs(d: int, half: int) -> list[tuple[int, int]]:
    """
    Пары нулевых координат строк −e_i − e_j канонической конструкции.

    Блок на координатах 0..2·half−1: q_i = −e_i − e_{i+1} (i < 2·half−1) и
    q_{2·half−1} = −e_0 − e_{2·half−1}; дальше q'_j = −e_0 − e_j. Положительны
    секторы с чётными номерами 0, 2, …, 2·half−2.
    """
    top = 2 * half - 1
    pairs = [(i, i + 1) for i in range(1, top)]
    pairs.append((0, top))
    pairs.extend((0, j) for j in range(top + 1, d + 1))
    return pairs


def sector_indicator_points(d: int, indices: Iterable[int]) -> list[TropPoint]:
    """
    Точки u_1, …, u_d с {x : τ(u, x) = +1} = ∪_{k∈K} S_k (открытые секторы в нуле).

    Строки - вершины Δ_2^d. Для |K| <= (d+1)/2 берётся каноническая
    конструкция с |K| положительными секторами и перестановка координат,
    переводящая её положительные секторы в K. Для больших K строится
    дополнение. Знак τ исправляется перестановкой первых двух точек, если
    нужно дополнение или перестановка координат нечётная.

    Raises:
        DimensionError: d < 2 или индекс вне диапазона
        PreconditionError: K пусто или совпадает с {0..d}
    """
    if d < 2:
        raise DimensionError(f'sector indicator points need d >= 2, got {d}')
    wanted = sorted(set(int(k) for k in indices))
    if any(not 0 <= k <= d for k in wanted):
        raise DimensionError(f'sector indices {wanted} out of range 0..{d}')
    if not 1 <= len(wanted) <= d:
        raise PreconditionError('sector index set must be nonempty and proper')

    flip = 2 * len(wanted) > d + 1
    target = [k for k in range(d + 1) if k not in wanted] if flip else wanted
    rest = [k for k in range(d + 1) if k not in target]
    half = len(target)
    canonical_positive = list(range(0, 2 * half, 2))
    canonical_negative = [k for k in range(d + 1) if k not in canonical_positive]
    mapping = dict(zip(canonical_positive, target)) | dict(zip(canonical_negative, rest))

    points = []
    for i, j in _staircase_pairs(d, half):
        zeros = (mapping[i], mapping[j])
        points.append(canonicalize(-1 if c in zeros else 0 for c in range(d + 1)))
    # перестановка столбцов умножает τ на свой знак
    odd = permutation_sign([mapping[c] for c in range(d + 1)]) == ODD
    if flip != odd:
        points[0], points[1] = points[1], points[0]
    return points
