"""
Детерминированный SVG 1.1 для двумерных результатов.

Слои (классы элементов): halfspace-sector, hull-region, arrangement-line,
facet, input-point, pseudovertex. Ось y направлена вверх.
"""
from __future__ import annotations

import xml.etree.ElementTree as ET
from dataclasses import dataclass
from typing import Iterable, Optional

from .config import SVG_COORD_PRECISION, SVG_POINT_RADIUS, SVG_PSEUDOVERTEX_RADIUS, get_svg_canvas, get_svg_margin
from .core import Halfspace, segment_breakpoints
from .exceptions import DimensionError
from .hull2d import AffinePoint2, HullResult, as_affine_point, as_affine_points, boundary_polyline, pseudovertices

SVG_HEADER = (
    '<?xml version="1.0" encoding="UTF-8" standalone="no"?>\n'
    '<!DOCTYPE svg PUBLIC "-//W3C//DTD SVG 1.1//EN" '
    '"http://www.w3.org/Graphics/SVG/1.1/DTD/svg11.dtd">\n'
)

# направления лучей, ограничивающих секторы S̄_0, S̄_1, S̄_2 в карте
SECTOR_RAYS = {
    0: ((1, 0), (1, 1), (0, 1)),
    1: ((0, 1), (-1, 1), (-1, -1)),
    2: ((-1, -1), (1, -1), (1, 0)),
}


@dataclass(frozen=True)
class RenderOptions:
    arrangement: bool = False
    pseudovertices: bool = False
    halfspaces: tuple = ()
    canvas: Optional[int] = None
    margin: Optional[float] = None


class _Viewport:
    """Габарит с полями и перевод координат карты в пиксели."""

    def __init__(self, points: list[AffinePoint2], canvas: int, margin: float):
        xs = [float(p.x) for p in points]
        ys = [float(p.y) for p in points]
        width = max(xs) - min(xs)
        height = max(ys) - min(ys)
        span = max(width, height) or 1.0
        pad_x = (width or span) * margin
        pad_y = (height or span) * margin
        self.xmin = min(xs) - pad_x
        self.xmax = max(xs) + pad_x
        self.ymin = min(ys) - pad_y
        self.ymax = max(ys) + pad_y
        self.scale = canvas / max(self.xmax - self.xmin, self.ymax - self.ymin)
        self.width = (self.xmax - self.xmin) * self.scale
        self.height = (self.ymax - self.ymin) * self.scale
        self.reach = 2 * max(self.xmax - self.xmin, self.ymax - self.ymin)

    def fmt(self, value: float) -> str:
        return f'{value:.{SVG_COORD_PRECISION}f}'

    def px(self, x, y) -> tuple[str, str]:
        return (self.fmt((float(x) - self.xmin) * self.scale),
                self.fmt((self.ymax - float(y)) * self.scale))

    def path(self, coords: Iterable[tuple]) -> str:
        return ' '.join(','.join(self.px(x, y)) for x, y in coords)


def _group(parent: ET.Element, css_class: str) -> ET.Element:
    return ET.SubElement(parent, 'g', {'class': css_class})


def _halfspace_layer(root: ET.Element, view: _Viewport, halfspaces: tuple) -> None:
    layer = _group(root, 'halfspaces')
    for h in halfspaces:
        if h.dim != 2:
            raise DimensionError(f'render needs 2D halfspaces, got TP^{h.dim}')
        apex = AffinePoint2.from_trop(h.apex)
        ax, ay = float(apex.x), float(apex.y)
        for k in sorted(h.indices):
            corners = [(ax, ay)] + [(ax + dx * view.reach, ay + dy * view.reach) for dx, dy in SECTOR_RAYS[k]]
            ET.SubElement(layer, 'polygon', {
                'class': 'halfspace-sector', 'points': view.path(corners),
                'fill': '#4a90d9', 'fill-opacity': '0.15', 'stroke': 'none',
            })


def _arrangement_layer(root: ET.Element, view: _Viewport, vertices: tuple) -> None:
    layer = _group(root, 'arrangement')
    lines = set()
    for v in vertices:
        lines.add(('x', v.x))
        lines.add(('y', v.y))
        lines.add(('s', v.s))
    for kind, value in sorted(lines, key=lambda item: (item[0], item[1])):
        c = float(value)
        if kind == 'x':
            ends = [(c, view.ymin), (c, view.ymax)]
        elif kind == 'y':
            ends = [(view.xmin, c), (view.xmax, c)]
        else:
            ends = [(view.xmin, view.xmin + c), (view.xmax, view.xmax + c)]
        (x1, y1), (x2, y2) = (view.px(*e) for e in ends)
        ET.SubElement(layer, 'line', {
            'class': 'arrangement-line', 'x1': x1, 'y1': y1, 'x2': x2, 'y2': y2,
            'stroke': '#999999', 'stroke-dasharray': '4,3', 'stroke-width': '0.5',
        })


def _facet_pairs(vertices: tuple) -> list[tuple]:
    if len(vertices) < 2:
        return []
    if len(vertices) == 2:
        return [(vertices[0], vertices[1])]
    return [(vertices[i], vertices[(i + 1) % len(vertices)]) for i in range(len(vertices))]


def render_svg(hull: HullResult, points: Iterable, options: Optional[RenderOptions] = None) -> str:
    """
    SVG-документ с оболочкой, входными точками и выбранными слоями.

    Args:
        hull: Результат алгоритма оболочки
        points: Входные точки (AffinePoint2 или TropPoint размерности 2)
        options: Слои и размеры

    Returns:
        str: документ; одинаковый вход даёт одинаковые байты
    """
    options = options or RenderOptions()
    points = as_affine_points(points)
    vertices = tuple(as_affine_point(v) for v in hull.vertices)
    pvs = pseudovertices(hull) if options.pseudovertices else []
    halfspaces = tuple(h for h in options.halfspaces if isinstance(h, Halfspace))

    extent = list(points) + list(vertices) + list(pvs)
    extent.extend(AffinePoint2.from_trop(h.apex) for h in halfspaces)
    canvas = options.canvas or get_svg_canvas()
    margin = get_svg_margin() if options.margin is None else options.margin
    view = _Viewport(extent, canvas, margin)

    root = ET.Element('svg', {
        'xmlns': 'http://www.w3.org/2000/svg',
        'version': '1.1',
        'width': view.fmt(view.width),
        'height': view.fmt(view.height),
        'viewBox': f'0 0 {view.fmt(view.width)} {view.fmt(view.height)}',
    })

    if halfspaces:
        _halfspace_layer(root, view, halfspaces)

    pieces = boundary_polyline(hull)
    if len(vertices) > 2:
        region = _group(root, 'hull')
        ET.SubElement(region, 'polygon', {
            'class': 'hull-region', 'points': view.path((a.x, a.y) for a, _ in pieces),
            'fill': '#d9d9d9', 'stroke': 'none',
        })

    if options.arrangement:
        _arrangement_layer(root, view, vertices)

    facets = _group(root, 'facets')
    for a, b in _facet_pairs(vertices):
        chain = [AffinePoint2.from_trop(p) for p in segment_breakpoints(a.to_trop(), b.to_trop())]
        ET.SubElement(facets, 'polyline', {
            'class': 'facet', 'points': view.path((p.x, p.y) for p in chain),
            'fill': 'none', 'stroke': '#000000', 'stroke-width': '1.5',
        })

    inputs = _group(root, 'points')
    for p in points:
        cx, cy = view.px(p.x, p.y)
        ET.SubElement(inputs, 'circle', {
            'class': 'input-point', 'cx': cx, 'cy': cy, 'r': str(SVG_POINT_RADIUS), 'fill': '#000000',
        })

    if pvs:
        layer = _group(root, 'pseudovertices')
        for p in pvs:
            cx, cy = view.px(p.x, p.y)
            ET.SubElement(layer, 'circle', {
                'class': 'pseudovertex', 'cx': cx, 'cy': cy, 'r': str(SVG_PSEUDOVERTEX_RADIUS),
                'fill': '#ffffff', 'stroke': '#000000',
            })

    return SVG_HEADER + ET.tostring(root, encoding='unicode') + '\n'
