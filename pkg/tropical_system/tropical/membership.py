"""
Сертификаты в произвольной размерности: принадлежность точки тропическому
многограннику, минимальное множество вершин и разделяющее полупространство.

Критерий принадлежности: x ∈ tconv(G) тогда и только тогда, когда каждый
замкнутый сектор x + S̄_k содержит хотя бы одну образующую.
"""
from __future__ import annotations

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .core import Halfspace, Polytope, TropPoint, check_same_dim, trop_combination
from .exceptions import CertificateError, PreconditionError

logger = logging.getLogger(__name__)

PolytopeLike = Union[Polytope, Sequence[TropPoint]]


@dataclass(frozen=True)
class MembershipCertificate:
    """
    Сертификат принадлежности.

    member=True: coefficients (λ_i) воспроизводят x, witnesses[k] - индекс
    образующей в секторе x + S̄_k. member=False: missing_sector - наименьший
    индекс сектора без образующих.
    """

    member: bool
    coefficients: Optional[tuple] = None
    witnesses: Optional[tuple] = None
    missing_sector: Optional[int] = None


def _generators(polytope: PolytopeLike) -> tuple:
    if isinstance(polytope, Polytope):
        return polytope.generators
    return Polytope(tuple(polytope)).generators


def contains(polytope: PolytopeLike, x: TropPoint) -> MembershipCertificate:
    """
    Проверяет x ∈ tconv(generators) за O(n·d) сравнений.

    Args:
        polytope: Polytope или список образующих
        x: Проверяемая точка

    Returns:
        MembershipCertificate

    Example:
        >>> cert = contains(hypersimplex(2, 2), TropPoint((0, 2, 2)))
        >>> cert.member, cert.missing_sector
        (False, 0)
    """
    gens = _generators(polytope)
    check_same_dim(x, *gens)
    size = len(x)
    witnesses: list[Optional[int]] = [None] * size
    for i, g in enumerate(gens):
        diffs = [a - b for a, b in zip(g, x)]
        low = min(diffs)
        for k, value in enumerate(diffs):
            if value == low and witnesses[k] is None:
                witnesses[k] = i

    missing = [k for k, w in enumerate(witnesses) if w is None]
    if missing:
        return MembershipCertificate(member=False, missing_sector=missing[0])

    # остаточный коэффициент: наименьший λ_i с λ_i + g_i >= x покомпонентно
    coefficients = tuple(max(x[k] - g[k] for k in range(size)) for g in gens)
    if trop_combination(coefficients, gens) != x:
        logger.error("Membership certificate for %s does not reproduce the point", x)
        raise CertificateError(f'coefficients do not reproduce {x}')
    return MembershipCertificate(member=True, coefficients=coefficients, witnesses=tuple(witnesses))


def contains_many(polytope: PolytopeLike, points: Iterable[TropPoint],
                  max_workers: Optional[int] = None) -> list[MembershipCertificate]:
    """Пакетная проверка; результат в порядке входа и совпадает с последовательным."""
    gens = _generators(polytope)
    points = list(points)
    if not max_workers or max_workers <= 1 or len(points) < 2:
        return [contains(gens, p) for p in points]
    with ThreadPoolExecutor(max_workers=max_workers) as executor:
        return list(executor.map(lambda p: contains(gens, p), points))


def _dedupe(points: Iterable[TropPoint]) -> list[TropPoint]:
    seen = set()
    result = []
    for p in points:
        if p not in seen:
            seen.add(p)
            result.append(p)
    return result


def vertex_set(polytope: PolytopeLike) -> list[TropPoint]:
    """
    Единственное минимальное порождающее множество Vert(P).

    Порядок - порядок первого появления во входе.
    """
    gens = _dedupe(_generators(polytope))
    if len(gens) == 1:
        return gens
    vertices = []
    for i, g in enumerate(gens):
        others = gens[:i] + gens[i + 1:]
        if not contains(others, g).member:
            vertices.append(g)
    logger.debug("vertex_set: %d generators -> %d vertices", len(gens), len(vertices))
    return vertices


def separate(polytope: PolytopeLike, x: TropPoint) -> Halfspace:
    """
    Замкнутое полупространство, содержащее P и не содержащее x.

    Берётся пустой сектор x + S̄_k из сертификата. Образующая g попадает в
    сектор (x + ε e_k) + S̄_k при ε >= δ_g = (g_k − x_k) − min_{j≠k}(g_j − x_j),
    все δ_g > 0. Вершина полупространства - x + (ε*/2) e_k, где ε* = min δ_g.

    Raises:
        PreconditionError: x ∈ P
    """
    gens = _generators(polytope)
    cert = contains(gens, x)
    if cert.member:
        raise PreconditionError(f'point {x} lies in the polytope, nothing to separate')
    k = cert.missing_sector
    slacks = []
    for g in gens:
        diffs = [a - b for a, b in zip(g, x)]
        slacks.append(diffs[k] - min(v for j, v in enumerate(diffs) if j != k))
    epsilon = min(slacks) / 2
    apex = TropPoint(tuple(c + epsilon if j == k else c for j, c in enumerate(x)))
    return Halfspace(apex, frozenset(range(x.dim + 1)) - {k})
