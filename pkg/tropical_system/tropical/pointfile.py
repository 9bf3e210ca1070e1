"""
Формат файлов точек.

UTF-8, одна точка на строку, координаты через пробел, комментарии с '#'.
Необязательный заголовок 'dim <d>' до первой строки с точкой. Числа - целые,
дроби 'p/q' или десятичные литералы; всё читается точно как Fraction.
"""
from __future__ import annotations

import logging
import re
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Optional, TextIO

from .core import TropPoint, affine_chart, canonicalize, from_affine
from .exceptions import DimensionError, ParseError
from .tropdet import TropMatrix

logger = logging.getLogger(__name__)

PROJECTIVE = 'projective'
AFFINE = 'affine'
MODES = (PROJECTIVE, AFFINE)

STDIN = '-'


@dataclass(frozen=True)
class PointFile:
    """Разобранный файл: заявленная размерность, строки чисел и их номера строк."""

    dimension: Optional[int]
    rows: tuple
    lines: tuple
    source: str = '<stdin>'


def parse_number(token: str, line: Optional[int] = None, source: Optional[str] = None) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f'cannot parse number {token!r}', line, source) from None


def read_rows(text: str, source: str = '<stdin>') -> PointFile:
    """
    Разбирает текст в строки чисел одинаковой длины.

    Raises:
        ParseError: неразбираемое число, строки разной длины, пустой файл
    """
    dimension = None
    rows = []
    lines = []
    line_no = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        content = raw.split('#', 1)[0].strip()
        if not content:
            continue
        tokens = content.split()
        if tokens[0].lower() == 'dim':
            if rows or dimension is not None:
                raise ParseError('dimension header must come once, before the points', line_no, source)
            if len(tokens) != 2 or not tokens[1].isdigit():
                raise ParseError(f'malformed dimension header {content!r}', line_no, source)
            dimension = int(tokens[1])
            continue
        row = tuple(parse_number(t, line_no, source) for t in tokens)
        if rows and len(row) != len(rows[0]):
            raise ParseError(
                f'ragged row: expected {len(rows[0])} entries, got {len(row)}', line_no, source,
            )
        rows.append(row)
        lines.append(line_no)
    if not rows:
        raise ParseError('no points in input', max(line_no, 1), source)
    return PointFile(dimension, tuple(rows), tuple(lines), source)


def _points_from_file(parsed: PointFile, mode: str) -> list[TropPoint]:
    if mode not in MODES:
        raise ValueError(f'unknown mode {mode!r}')
    arity = len(parsed.rows[0])
    expected = None
    if parsed.dimension is not None:
        expected = parsed.dimension + 1 if mode == PROJECTIVE else parsed.dimension
        if arity != expected:
            raise ParseError(
                f'header declares dim {parsed.dimension}, rows have {arity} entries',
                parsed.lines[0], parsed.source,
            )
    minimum = 2 if mode == PROJECTIVE else 1
    if arity < minimum:
        raise ParseError(f'{mode} rows need at least {minimum} entries', parsed.lines[0], parsed.source)
    if mode == PROJECTIVE:
        return [canonicalize(row) for row in parsed.rows]
    return [from_affine(row) for row in parsed.rows]


def parse_points_text(text: str, mode: str = PROJECTIVE, source: str = '<stdin>') -> list[TropPoint]:
    """
    Точки из текста. projective: d+1 координат, канонизация; affine: d координат, 0 спереди.

    Example:
        >>> parse_points_text('1/2 3', AFFINE)[0].coords
        (Fraction(0, 1), Fraction(1, 2), Fraction(3, 1))
    """
    return _points_from_file(read_rows(text, source), mode)


def read_source(path, stdin: Optional[TextIO] = None) -> tuple[str, str]:
    """Текст и имя источника; '-' означает stdin."""
    if str(path) == STDIN:
        stream = stdin if stdin is not None else sys.stdin
        try:
            return stream.read(), '<stdin>'
        except UnicodeDecodeError:
            raise ParseError('input is not valid UTF-8', source='<stdin>') from None
    try:
        return Path(path).read_text(encoding='utf-8'), str(path)
    except OSError as exc:
        raise ParseError(f'cannot read input: {exc.strerror or exc}', source=str(path)) from None
    except UnicodeDecodeError:
        raise ParseError('input is not valid UTF-8', source=str(path)) from None


def parse_points(path, mode: str = PROJECTIVE, stdin: Optional[TextIO] = None) -> list[TropPoint]:
    text, source = read_source(path, stdin)
    points = parse_points_text(text, mode, source)
    logger.debug("Parsed %d points from %s", len(points), source)
    return points


def parse_matrix_text(text: str, source: str = '<stdin>') -> TropMatrix:
    """Квадратная матрица: строки без канонизации."""
    parsed = read_rows(text, source)
    return TropMatrix(parsed.rows)


def parse_matrix(path, stdin: Optional[TextIO] = None) -> TropMatrix:
    text, source = read_source(path, stdin)
    return parse_matrix_text(text, source)


_SEPARATORS = re.compile(r'[,\s]+')


def parse_point_argument(value: str, mode: str = PROJECTIVE, dimension: Optional[int] = None) -> TropPoint:
    """Точка из аргумента командной строки: '0,2,2' или '0 2 2'."""
    tokens = [t for t in _SEPARATORS.split(value.strip()) if t]
    if not tokens:
        raise ParseError('empty point argument', source='<argument>')
    coords = [parse_number(t, source='<argument>') for t in tokens]
    point = canonicalize(coords) if mode == PROJECTIVE else from_affine(coords)
    if dimension is not None and point.dim != dimension:
        raise DimensionError(f'point has dimension {point.dim}, input has dimension {dimension}')
    return point


def format_rational(value) -> str:
    return str(Fraction(value))


def point_values(point: TropPoint, mode: str = PROJECTIVE) -> list[str]:
    coords = point.coords if mode == PROJECTIVE else affine_chart(point)
    return [format_rational(c) for c in coords]


def format_point(point: TropPoint, mode: str = PROJECTIVE) -> str:
    return ' '.join(point_values(point, mode))


def format_points(points: Iterable[TropPoint], mode: str = PROJECTIVE, header: bool = False) -> str:
    points = list(points)
    lines = []
    if header and points:
        lines.append(f'dim {points[0].dim}')
    lines.extend(format_point(p, mode) for p in points)
    return '\n'.join(lines) + '\n'
