"""
Командная строка: разбор аргументов, вызов библиотеки, вывод текстом или JSON.

Точки входа: консольный скрипт `trop` (main) и `python manage.py trop`.
Коды выхода: 0 успех, 1 ошибка использования, 2 разбор, 3 размерность,
4 нарушено предусловие, 5 отрицательный ответ (точка не в многограннике).
"""
from __future__ import annotations

import argparse
import contextlib
import io
import json
import logging
import os
import sys
from typing import Optional, Sequence, TextIO

from . import metrics
from .benchmark import BENCHMARK_MODES, run_benchmark
from .config import DEFAULT_BENCHMARK_POINTS, DEFAULT_BENCHMARK_SEED, DEFAULT_BENCHMARK_TRIALS
from .core import Halfspace, cube_generators, hypersimplex
from .exceptions import DimensionError, ParseError, TropicalError
from .hull2d import (
    HULL_ALGORITHMS, AffinePoint2, facets2d, minimal_halfspaces2d, pseudovertices,
)
from .membership import contains, separate, vertex_set
from .pointfile import (
    AFFINE, PROJECTIVE, format_points, format_rational, parse_matrix,
    parse_point_argument, parse_points, point_values,
)
from .svg import RenderOptions, render_svg
from .tropdet import EVEN, tau, tau_closure, tdet_result

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_NEGATIVE = 5


class UsageError(TropicalError):
    exit_code = EXIT_USAGE


class _Parser(argparse.ArgumentParser):
    """argparse без sys.exit: ошибки использования становятся UsageError."""

    def error(self, message):
        raise UsageError(message)


class _Output:
    """Буфер результата: текстовые строки либо один JSON-документ."""

    def __init__(self, as_json: bool, mode: str):
        self.as_json = as_json
        self.mode = mode
        self.buffer = io.StringIO()

    def line(self, text: str = '') -> None:
        self.buffer.write(text + '\n')

    def document(self, payload: dict) -> None:
        self.buffer.write(json.dumps(payload, ensure_ascii=False, indent=2) + '\n')

    def point(self, p) -> list[str]:
        if isinstance(p, AffinePoint2):
            p = p.to_trop()
        return point_values(p, self.mode)

    def text_point(self, p) -> str:
        return ' '.join(self.point(p))


# ---------------------------------------------------------------------------
# Общие помощники команд
# ---------------------------------------------------------------------------

def _mode(args) -> str:
    return AFFINE if args.affine else PROJECTIVE


def _load_points(args, stdin):
    return parse_points(args.input, _mode(args), stdin)


def _load_planar(args, stdin) -> list[AffinePoint2]:
    points = _load_points(args, stdin)
    if points[0].dim != 2:
        raise DimensionError(f'{args.command} works in TP^2, input is in TP^{points[0].dim}')
    return [AffinePoint2.from_trop(p) for p in points]


def _hull(args, stdin, algorithm: str = 'triple'):
    points = _load_planar(args, stdin)
    return points, HULL_ALGORITHMS[algorithm](points)


def _halfspace_payload(out: _Output, h: Halfspace) -> dict:
    return {'apex': out.point(h.apex), 'indices': sorted(h.indices)}


def _halfspace_text(out: _Output, h: Halfspace) -> str:
    return f"{out.text_point(h.apex)} | {' '.join(str(k) for k in sorted(h.indices))}"


# ---------------------------------------------------------------------------
# Команды
# ---------------------------------------------------------------------------

def cmd_hull(args, out: _Output, stdin) -> int:
    _, hull = _hull(args, stdin, args.algo)
    if out.as_json:
        out.document({
            'command': 'hull',
            'algorithm': hull.algorithm,
            'vertices': [out.point(v) for v in hull.vertices],
            'vertex_indices': list(hull.vertex_indices),
        })
    else:
        for v in hull.vertices:
            out.line(out.text_point(v))
    return EXIT_OK


def cmd_vertices(args, out: _Output, stdin) -> int:
    points = _load_points(args, stdin)
    vertices = vertex_set(points)
    if out.as_json:
        first = {}
        for i, p in enumerate(points):
            first.setdefault(p, i)
        out.document({
            'command': 'vertices',
            'dimension': points[0].dim,
            'vertices': [out.point(v) for v in vertices],
            'vertex_indices': [first[v] for v in vertices],
        })
    else:
        for v in vertices:
            out.line(out.text_point(v))
    return EXIT_OK


def cmd_contains(args, out: _Output, stdin) -> int:
    points = _load_points(args, stdin)
    x = parse_point_argument(args.point, _mode(args), points[0].dim)
    cert = contains(points, x)
    if out.as_json:
        out.document({
            'command': 'contains',
            'point': out.point(x),
            'member': cert.member,
            'coefficients': [format_rational(c) for c in cert.coefficients] if cert.member else None,
            'witnesses': list(cert.witnesses) if cert.member else None,
            'missing_sector': cert.missing_sector,
        })
    elif cert.member:
        out.line('member true')
        out.line('coefficients ' + ' '.join(format_rational(c) for c in cert.coefficients))
        out.line('witnesses ' + ' '.join(str(w) for w in cert.witnesses))
    else:
        out.line('member false')
        out.line(f'missing_sector {cert.missing_sector}')
    return EXIT_OK if cert.member else EXIT_NEGATIVE


def cmd_separate(args, out: _Output, stdin) -> int:
    points = _load_points(args, stdin)
    x = parse_point_argument(args.point, _mode(args), points[0].dim)
    h = separate(points, x)
    if out.as_json:
        out.document({'command': 'separate', 'point': out.point(x), **_halfspace_payload(out, h)})
    else:
        out.line('apex ' + out.text_point(h.apex))
        out.line('indices ' + ' '.join(str(k) for k in sorted(h.indices)))
    return EXIT_OK


def _determinant(args, out: _Output, stdin, command: str) -> int:
    matrix = parse_matrix(args.input, stdin)
    result = tdet_result(matrix)
    if out.as_json:
        out.document({
            'command': command,
            'size': matrix.size,
            'value': format_rational(result.value),
            'sign': result.sign,
            'singular': result.singular,
            'optimal_parities': sorted('even' if p == EVEN else 'odd' for p in result.optimal_parities),
            'witness': list(result.witness),
            'method': result.method,
        })
    else:
        out.line(f'tdet {format_rational(result.value)}')
        if command == 'tsgn':
            out.line(f'tsgn {result.sign}')
        else:
            out.line(f"singular {'true' if result.singular else 'false'}")
            out.line('witness ' + ' '.join(str(j) for j in result.witness))
    return EXIT_OK


def cmd_tdet(args, out: _Output, stdin) -> int:
    return _determinant(args, out, stdin, 'tdet')


def cmd_tsgn(args, out: _Output, stdin) -> int:
    return _determinant(args, out, stdin, 'tsgn')


def cmd_tau(args, out: _Output, stdin) -> int:
    points = _load_points(args, stdin)
    x = parse_point_argument(args.point, _mode(args), points[0].dim)
    value, closure = tau(points, x), tau_closure(points, x)
    if out.as_json:
        out.document({'command': 'tau', 'point': out.point(x), 'tau': value, 'tau_closure': closure})
    else:
        out.line(f'tau {value}')
        out.line(f'tau_closure {closure}')
    return EXIT_OK


def cmd_halfspaces(args, out: _Output, stdin) -> int:
    _, hull = _hull(args, stdin)
    result = minimal_halfspaces2d(hull)
    if out.as_json:
        out.document({
            'command': 'halfspaces',
            'full': result.full,
            'halfspaces': [_halfspace_payload(out, h) for h in result],
        })
    else:
        for h in result:
            out.line(_halfspace_text(out, h))
    return EXIT_OK


def cmd_pseudovertices(args, out: _Output, stdin) -> int:
    _, hull = _hull(args, stdin)
    points = pseudovertices(hull)
    if out.as_json:
        out.document({'command': 'pseudovertices', 'pseudovertices': [out.point(p) for p in points]})
    else:
        for p in points:
            out.line(out.text_point(p))
    return EXIT_OK


def cmd_facets(args, out: _Output, stdin) -> int:
    _, hull = _hull(args, stdin)
    lattice = facets2d(hull)
    if out.as_json:
        out.document({
            'command': 'facets',
            'vertices': [out.point(v) for v in lattice.vertices],
            'facets': [[out.point(v) for v in facet] for facet in lattice.facets],
            'face_counts': _face_counts(lattice.faces()),
        })
    else:
        for facet in lattice.facets:
            out.line(' | '.join(out.text_point(v) for v in facet))
    return EXIT_OK


def _face_counts(faces: list[tuple]) -> list[int]:
    counts: dict[int, int] = {}
    for face in faces:
        counts[len(face)] = counts.get(len(face), 0) + 1
    return [counts[size] for size in sorted(counts)]


def cmd_gen(args, out: _Output, stdin) -> int:
    if args.family == 'hypersimplex':
        if args.k is None:
            raise UsageError('gen hypersimplex needs <d> <k>')
        points = hypersimplex(args.d, args.k)
    else:
        if args.k is not None:
            raise UsageError('gen cube takes only <d>')
        points = cube_generators(args.d)
    if out.as_json:
        out.document({
            'command': 'gen',
            'family': args.family,
            'dimension': args.d,
            'points': [out.point(p) for p in points],
        })
    else:
        out.buffer.write(format_points(points, out.mode, header=True))
    return EXIT_OK


def _parse_halfspace_option(value: str, mode: str) -> Halfspace:
    apex, sep, indices = value.rpartition(':')
    if not sep or not apex or not indices:
        raise UsageError(f'--halfspace expects APEX:K, got {value!r}')
    try:
        index_set = frozenset(int(k) for k in indices.replace(',', ' ').split())
    except ValueError:
        raise ParseError(f'bad index list {indices!r}', source='--halfspace') from None
    return Halfspace(parse_point_argument(apex, mode, 2), index_set)


def cmd_render(args, out: _Output, stdin) -> int:
    points, hull = _hull(args, stdin, args.algo)
    halfspaces = [_parse_halfspace_option(v, out.mode) for v in args.halfspace]
    if args.minimal_halfspaces:
        halfspaces.extend(minimal_halfspaces2d(hull))
    document = render_svg(hull, points, RenderOptions(
        arrangement=args.arrangement,
        pseudovertices=args.pseudovertices,
        halfspaces=tuple(halfspaces),
    ))
    if args.out == '-':
        out.buffer.write(document)
        return EXIT_OK
    try:
        with open(args.out, 'w', encoding='utf-8', newline='\n') as fh:
            fh.write(document)
    except OSError as exc:
        raise TropicalError(f'cannot write {args.out}: {exc.strerror or exc}') from None
    if out.as_json:
        out.document({'command': 'render', 'out': args.out, 'vertices': len(hull.vertices)})
    else:
        out.line(f'wrote {args.out}')
    return EXIT_OK


def cmd_benchmark(args, out: _Output, stdin) -> int:
    results = run_benchmark(args.mode, args.points, args.trials, args.seed, args.workers, args.hull_size)
    if out.as_json:
        out.document({
            'command': 'benchmark',
            'mode': args.mode,
            'trials': [
                {'trial': r.trial, 'points': r.points, 'vertices': r.vertices, **r.details} for r in results
            ],
        })
    else:
        for r in results:
            out.line(r.describe())
    return EXIT_OK


COMMANDS = {
    'hull': cmd_hull,
    'vertices': cmd_vertices,
    'contains': cmd_contains,
    'separate': cmd_separate,
    'tdet': cmd_tdet,
    'tsgn': cmd_tsgn,
    'tau': cmd_tau,
    'halfspaces': cmd_halfspaces,
    'pseudovertices': cmd_pseudovertices,
    'facets': cmd_facets,
    'gen': cmd_gen,
    'render': cmd_render,
    'benchmark': cmd_benchmark,
}


# ---------------------------------------------------------------------------
# Разбор аргументов
# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument('--json', action='store_true', help='stable JSON output')
    common.add_argument('--affine', action='store_true', help='points in the affine chart (d entries per row)')

    parser = _Parser(prog='trop', description='Tropical convexity toolkit')
    sub = parser.add_subparsers(dest='command', metavar='COMMAND', parser_class=_Parser)
    sub.required = True

    def with_input(name: str, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument('input', nargs='?', default='-', help="point file, '-' for stdin")
        return p

    hull = with_input('hull', 'tropical convex hull of 2D points, CCW from lr')
    hull.add_argument('--algo', choices=sorted(HULL_ALGORITHMS), default='triple')
    with_input('vertices', 'minimal generating set, any dimension')
    for name, help_text in (('contains', 'membership certificate'),
                            ('separate', 'separating closed halfspace'),
                            ('tau', 'tau and tau-bar of d points at a query point')):
        p = sub.add_parser(name, help=help_text, parents=[common])
        p.add_argument('point', help="query point, e.g. '0,2,2'")
        p.add_argument('input', nargs='?', default='-')
    with_input('tdet', 'tropical determinant of a square matrix')
    with_input('tsgn', 'tropical sign of a square matrix')
    with_input('halfspaces', 'minimal closed halfspaces of a 2D polytope')
    with_input('pseudovertices', 'pseudovertices of a 2D polytope')
    with_input('facets', 'facets of a 2D polytope')

    gen = sub.add_parser('gen', help='generate example polytopes', parents=[common])
    gen.add_argument('family', choices=['hypersimplex', 'cube'])
    gen.add_argument('d', type=int)
    gen.add_argument('k', type=int, nargs='?')

    render = with_input('render', 'SVG picture of a 2D hull')
    render.add_argument('--out', required=True, help="SVG path, '-' for stdout")
    render.add_argument('--algo', choices=sorted(HULL_ALGORITHMS), default='triple')
    render.add_argument('--arrangement', action='store_true')
    render.add_argument('--pseudovertices', action='store_true')
    render.add_argument('--halfspace', action='append', default=[], metavar='APEX:K')
    render.add_argument('--minimal-halfspaces', action='store_true')

    bench = sub.add_parser('benchmark', help='hull performance trials', parents=[common])
    bench.add_argument('--mode', choices=BENCHMARK_MODES, default='float')
    bench.add_argument('--points', type=int, default=DEFAULT_BENCHMARK_POINTS)
    bench.add_argument('--trials', type=int, default=DEFAULT_BENCHMARK_TRIALS)
    bench.add_argument('--seed', type=int, default=DEFAULT_BENCHMARK_SEED)
    bench.add_argument('--workers', type=int, default=None)
    bench.add_argument('--hull-size', type=int, default=24)
    return parser


def run_command(argv: Sequence[str], stdout: Optional[TextIO] = None, stdin: Optional[TextIO] = None,
                stderr: Optional[TextIO] = None) -> int:
    """
    Выполняет одну команду.

    Args:
        argv: Аргументы без имени программы
        stdout, stdin, stderr: Потоки; по умолчанию системные

    Returns:
        int: код выхода
    """
    stdout = stdout if stdout is not None else sys.stdout
    stderr = stderr if stderr is not None else sys.stderr
    command = 'unknown'
    try:
        # --help печатается в переданный stdout
        with contextlib.redirect_stdout(stdout):
            args = build_parser().parse_args(list(argv))
        command = args.command
        out = _Output(args.json, _mode(args))
        code = COMMANDS[command](args, out, stdin)
        stdout.write(out.buffer.getvalue())
    except SystemExit as exc:
        # --help
        code = exc.code if isinstance(exc.code, int) else EXIT_OK
    except TropicalError as exc:
        code = exc.exit_code
        if code == EXIT_USAGE:
            logger.warning("Usage error in %s: %s", command, exc)
        else:
            logger.warning("Command %s failed with exit code %d: %s", command, code, exc)
        stderr.write(f'error: {exc}\n')
    metrics.tropical_cli_commands_total.labels(command=command, status=str(code)).inc()
    return code


def main(argv: Optional[Sequence[str]] = None) -> None:
    """Консольный скрипт `trop`."""
    os.environ.setdefault('DJANGO_SETTINGS_MODULE', 'tropical_system.conf.dev')
    try:
        import django
        django.setup()
    except Exception as exc:
        logging.basicConfig(level=logging.WARNING)
        logger.debug("Django settings unavailable, running with environment configuration: %s", exc)
    sys.exit(run_command(sys.argv[1:] if argv is None else argv))
