import io
import json
import os
import tempfile
from fractions import Fraction

from django.core.management import CommandError, call_command
from django.test import SimpleTestCase

from tropical.cli import run_command
from tropical.core import TropPoint
from tropical.exceptions import DimensionError, ParseError
from tropical.pointfile import (
    AFFINE, format_points, format_rational, parse_matrix_text, parse_point_argument, parse_points_text, read_rows,
)

SECOND_HYPERSIMPLEX = 'dim 2\n0 0 1\n0 1 0\n1 0 0\n'
STANDARD_SIMPLEX = '0 1 1\n1 0 1\n1 1 0\n'


def run(argv, stdin_text=''):
    stdout, stderr = io.StringIO(), io.StringIO()
    code = run_command(argv, stdout=stdout, stdin=io.StringIO(stdin_text), stderr=stderr)
    return code, stdout.getvalue(), stderr.getvalue()


class PointFileTest(SimpleTestCase):
    """Тест формата файлов точек"""

    def test_comments_header_and_fractions(self):
        text = '# треугольник\ndim 2\n0 1/2 0.25  # комментарий\n\n1 1 0\n'
        points = parse_points_text(text)
        self.assertEqual(points[0], TropPoint((0, Fraction(1, 2), Fraction(1, 4))))
        self.assertEqual(len(points), 2)

    def test_affine_rows(self):
        self.assertEqual(parse_points_text('1/2 3', AFFINE)[0], TropPoint((0, Fraction(1, 2), 3)))

    def test_ragged_row(self):
        with self.assertRaises(ParseError) as ctx:
            read_rows('0 0 0\n1 2\n', 'points.txt')
        self.assertEqual(ctx.exception.line, 2)
        self.assertTrue(str(ctx.exception).startswith('points.txt:2: '))

    def test_bad_token(self):
        with self.assertRaises(ParseError) as ctx:
            read_rows('0 x 1\n')
        self.assertEqual(ctx.exception.line, 1)

    def test_empty_input(self):
        with self.assertRaisesMessage(ParseError, 'no points in input'):
            read_rows('# пусто\n\n')

    def test_header_mismatch(self):
        with self.assertRaises(ParseError):
            parse_points_text('dim 3\n0 0 0\n')
        with self.assertRaises(ParseError):
            parse_points_text('0 0\n1 1\ndim 1\n')

    def test_matrix_rows_are_not_canonicalized(self):
        matrix = parse_matrix_text('5 7\n6 8\n')
        self.assertEqual(matrix.rows[0], (5, 7))

    def test_point_argument(self):
        self.assertEqual(parse_point_argument('0,2,2'), TropPoint((0, 2, 2)))
        self.assertEqual(parse_point_argument('1 1 3'), TropPoint((0, 0, 2)))
        self.assertEqual(parse_point_argument('2,2', AFFINE), TropPoint((0, 2, 2)))
        with self.assertRaises(DimensionError):
            parse_point_argument('0,0,0,0', dimension=2)
        with self.assertRaises(ParseError):
            parse_point_argument(' ')

    def test_formatting(self):
        self.assertEqual(format_rational(Fraction(-1, 2)), '-1/2')
        self.assertEqual(format_rational(3), '3')
        self.assertEqual(format_points([TropPoint((0, 1, 1))], header=True), 'dim 2\n0 1 1\n')
        self.assertEqual(format_points([TropPoint((0, 1, 2))], AFFINE), '1 2\n')


class RunCommandTest(SimpleTestCase):
    """Тест команд trop"""

    def test_gen_then_hull(self):
        code, generated, _ = run(['gen', 'hypersimplex', '2', '2'])
        self.assertEqual(code, 0)
        self.assertEqual(generated, SECOND_HYPERSIMPLEX)
        code, out, _ = run(['hull'], generated)
        self.assertEqual(code, 0)
        self.assertEqual(out, '1 0 0\n0 1 0\n0 0 1\n')

    def test_hull_algorithms_agree(self):
        outputs = {run(['hull', '--algo', algo], SECOND_HYPERSIMPLEX)[1] for algo in ('triple', 'jarvis', 'chan')}
        self.assertEqual(len(outputs), 1)

    def test_hull_json(self):
        code, out, _ = run(['hull', '--json'], SECOND_HYPERSIMPLEX)
        self.assertEqual(code, 0)
        payload = json.loads(out)
        self.assertEqual(list(payload), ['command', 'algorithm', 'vertices', 'vertex_indices'])
        self.assertEqual(payload['vertices'], [['1', '0', '0'], ['0', '1', '0'], ['0', '0', '1']])
        self.assertEqual(payload['vertex_indices'], [2, 1, 0])

    def test_hull_affine_output(self):
        self.assertEqual(run(['hull', '--affine'], SECOND_HYPERSIMPLEX.replace('dim 2\n', ''))[0], 3)
        code, out, _ = run(['hull', '--affine'], '0 1\n1 0\n-1 -1\n0 0\n')
        self.assertEqual(code, 0)
        self.assertEqual(out, '-1 -1\n1 0\n0 1\n')

    def test_output_is_deterministic(self):
        first = run(['facets', '--json'], STANDARD_SIMPLEX)
        self.assertEqual(run(['facets', '--json'], STANDARD_SIMPLEX), first)
        self.assertEqual(json.loads(first[1])['face_counts'], [1, 3, 3, 1])

    def test_vertices(self):
        code, out, _ = run(['vertices'], '0 0 1\n0 0 0\n0 1 0\n1 0 0\n')
        self.assertEqual(code, 0)
        self.assertEqual(out, '0 0 1\n0 1 0\n1 0 0\n')

    def test_contains(self):
        code, out, _ = run(['contains', '0,0,0'], SECOND_HYPERSIMPLEX)
        self.assertEqual(code, 0)
        self.assertEqual(out, 'member true\ncoefficients 0 0 0\nwitnesses 0 0 1\n')

        code, out, _ = run(['contains', '0,2,2'], SECOND_HYPERSIMPLEX)
        self.assertEqual(code, 5)
        self.assertEqual(out, 'member false\nmissing_sector 0\n')

    def test_separate(self):
        code, out, _ = run(['separate', '0,3,3'], STANDARD_SIMPLEX)
        self.assertEqual(code, 0)
        self.assertEqual(out, 'apex 0 2 2\nindices 1 2\n')
        code, out, err = run(['separate', '0,0,0'], STANDARD_SIMPLEX)
        self.assertEqual(code, 4)
        self.assertEqual(out, '')
        self.assertTrue(err.startswith('error: '))

    def test_determinant(self):
        matrix = '0 1 1 1 1\n0 -1 0 0 0\n0 0 -1 0 0\n0 0 0 -1 0\n0 0 0 0 -1\n'
        self.assertEqual(run(['tsgn'], matrix)[1], 'tdet -4\ntsgn 1\n')
        code, out, _ = run(['tdet'], '0 0\n0 0\n')
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('tdet 0\nsingular true\nwitness '))
        payload = json.loads(run(['tdet', '--json'], '0 1\n1 0\n')[1])
        self.assertEqual(payload['value'], '0')
        self.assertEqual(payload['sign'], 1)
        self.assertEqual(payload['optimal_parities'], ['even'])

    def test_tau(self):
        code, out, _ = run(['tau', '0,2,3'], '1 0 0\n0 1 0\n')
        self.assertEqual(code, 0)
        self.assertEqual(out, 'tau 1\ntau_closure 1\n')

    def test_halfspaces(self):
        code, out, _ = run(['halfspaces'], STANDARD_SIMPLEX)
        self.assertEqual(code, 0)
        self.assertEqual(sorted(out.splitlines()), ['0 0 1 | 2', '0 1 0 | 1', '1 0 0 | 0'])

    def test_pseudovertices(self):
        code, out, _ = run(['pseudovertices', '--affine'], '0 -1\n1 1\n-1 0\n')
        self.assertEqual(code, 0)
        self.assertEqual(out, '0 -1\n1 0\n1 1\n0 1\n-1 0\n-1 -1\n')

    def test_parse_error(self):
        code, out, err = run(['hull'], '0 x 1\n')
        self.assertEqual(code, 2)
        self.assertEqual(out, '')
        self.assertTrue(err.startswith('error: <stdin>:1: '))

    def test_missing_file(self):
        code, _, err = run(['hull', os.path.join(tempfile.gettempdir(), 'no-such-points.txt')])
        self.assertEqual(code, 2)
        self.assertIn('cannot read input', err)

    def test_invalid_utf8_on_stdin(self):
        stdin = io.TextIOWrapper(io.BytesIO(b'0 0 1\n0 \xff 0\n'), encoding='utf-8')
        stdout, stderr = io.StringIO(), io.StringIO()
        code = run_command(['hull', '-'], stdout=stdout, stdin=stdin, stderr=stderr)
        self.assertEqual(code, 2)
        self.assertEqual(stdout.getvalue(), '')
        self.assertIn('UTF-8', stderr.getvalue())

    def test_help_goes_to_given_stdout(self):
        code, out, err = run(['--help'])
        self.assertEqual(code, 0)
        self.assertIn('usage:', out)
        self.assertIn('hull', out)
        self.assertEqual(err, '')
        code, out, _ = run(['hull', '--help'])
        self.assertEqual(code, 0)
        self.assertIn('--algo', out)

    def test_dimension_error(self):
        self.assertEqual(run(['hull'], '0 0 0 0\n1 0 0 0\n')[0], 3)
        self.assertEqual(run(['contains', '0,0'], SECOND_HYPERSIMPLEX)[0], 3)

    def test_usage_errors(self):
        self.assertEqual(run(['frobnicate'])[0], 1)
        self.assertEqual(run([])[0], 1)
        self.assertEqual(run(['gen', 'cube', '2', '3'])[0], 1)
        self.assertEqual(run(['hull', '--algo', 'quick'], SECOND_HYPERSIMPLEX)[0], 1)

    def test_render_to_stdout(self):
        code, out, _ = run(
            ['render', '--out', '-', '--arrangement', '--pseudovertices', '--halfspace', '0,0,0:1,2'],
            STANDARD_SIMPLEX,
        )
        self.assertEqual(code, 0)
        self.assertTrue(out.startswith('<?xml version="1.0"'))
        for css_class in ('halfspace-sector', 'hull-region', 'arrangement-line', 'facet', 'input-point',
                          'pseudovertex'):
            self.assertIn(f'class="{css_class}"', out)
        self.assertEqual(run(['render', '--out', '-'], STANDARD_SIMPLEX)[1],
                         run(['render', '--out', '-'], STANDARD_SIMPLEX)[1])

    def test_render_to_file(self):
        with tempfile.TemporaryDirectory() as directory:
            path = os.path.join(directory, 'hull.svg')
            code, out, _ = run(['render', '--out', path], STANDARD_SIMPLEX)
            self.assertEqual(code, 0)
            self.assertEqual(out, f'wrote {path}\n')
            with open(path, encoding='utf-8') as fh:
                self.assertIn('<svg', fh.read())

    def test_bad_halfspace_option(self):
        self.assertEqual(run(['render', '--out', '-', '--halfspace', '0,0,0'], STANDARD_SIMPLEX)[0], 1)

    def test_benchmark(self):
        code, out, _ = run(['benchmark', '--mode', 'float', '--points', '500', '--trials', '2', '--seed', '3'])
        self.assertEqual(code, 0)
        lines = out.splitlines()
        self.assertEqual(len(lines), 2)
        self.assertTrue(lines[0].startswith('trial 0 n 500 vertices '))


class ManagementCommandTest(SimpleTestCase):
    """Тест manage.py trop"""

    def test_gen_cube(self):
        out = io.StringIO()
        call_command('trop', 'gen', 'cube', '2', stdout=out)
        self.assertEqual(out.getvalue(), 'dim 2\n1 0 2\n1 2 0\n0 1 1\n')

    def test_failure_raises_command_error(self):
        missing = os.path.join(tempfile.gettempdir(), 'no-such-points.txt')
        with self.assertRaises(CommandError):
            call_command('trop', 'hull', missing, stdout=io.StringIO(), stderr=io.StringIO())
