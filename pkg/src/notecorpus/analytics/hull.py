"""Planar geometry: convex hulls, point containment, and concave hulls.

The concave hull follows the edge-digging strategy: start from the convex
hull and repeatedly flex the longest-offending edges inward toward nearby
interior points, as long as the dig keeps the polygon simple and never
strands a point outside.
"""

from __future__ import annotations

import math

Point = tuple[float, float]


def _cross(o: Point, a: Point, b: Point) -> float:
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _sq_dist(a: Point, b: Point) -> float:
    return (a[0] - b[0]) ** 2 + (a[1] - b[1]) ** 2


def sq_segment_distance(p: Point, a: Point, b: Point) -> float:
    """Squared distance from point ``p`` to segment ``a``-``b``."""
    x, y = a
    dx = b[0] - x
    dy = b[1] - y
    if dx != 0 or dy != 0:
        t = ((p[0] - x) * dx + (p[1] - y) * dy) / (dx * dx + dy * dy)
        if t > 1:
            x, y = b
        elif t > 0:
            x += dx * t
            y += dy * t
    return (p[0] - x) ** 2 + (p[1] - y) ** 2


def convex_hull(points: list[Point]) -> list[Point]:
    """Convex hull in counterclockwise order (monotone chain).

    Collinear boundary points are not kept as vertices. Degenerate inputs
    return what is left: a single point or the two extreme points.
    """
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts
    lower: list[Point] = []
    for p in pts:
        while len(lower) >= 2 and _cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper: list[Point] = []
    for p in reversed(pts):
        while len(upper) >= 2 and _cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    hull = lower[:-1] + upper[:-1]
    if len(hull) < 3:
        return [pts[0], pts[-1]]
    return hull


def polygon_area(polygon: list[Point]) -> float:
    """Unsigned area by the shoelace formula; degenerate polygons have 0."""
    if len(polygon) < 3:
        return 0.0
    total = 0.0
    for i, (x1, y1) in enumerate(polygon):
        x2, y2 = polygon[(i + 1) % len(polygon)]
        total += x1 * y2 - x2 * y1
    return abs(total) / 2.0


def polygon_contains(polygon: list[Point], p: Point, tol: float = 1e-9) -> bool:
    """True if ``p`` is inside the polygon or within ``tol`` of its boundary."""
    n = len(polygon)
    if n == 0:
        return False
    if n == 1:
        return _sq_dist(polygon[0], p) <= tol * tol
    for i in range(n):
        a = polygon[i]
        b = polygon[(i + 1) % n]
        if sq_segment_distance(p, a, b) <= tol * tol:
            return True
    if n < 3:
        return False
    inside = False
    j = n - 1
    for i in range(n):
        xi, yi = polygon[i]
        xj, yj = polygon[j]
        if (yi > p[1]) != (yj > p[1]) and p[0] < (xj - xi) * (p[1] - yi) / (yj - yi) + xi:
            inside = not inside
        j = i
    return inside


def _segments_cross(p1: Point, q1: Point, p2: Point, q2: Point) -> bool:
    """Proper crossing test; segments sharing an endpoint never cross."""
    if p1 == q2 or q1 == p2 or p1 == p2 or q1 == q2:
        return False
    return (_cross(p1, q1, p2) > 0) != (_cross(p1, q1, q2) > 0) and (
        _cross(p2, q2, p1) > 0
    ) != (_cross(p2, q2, q1) > 0)


class _Node:
    __slots__ = ("p", "prev", "next")

    def __init__(self, p: Point):
        self.p = p
        self.prev: "_Node" = self
        self.next: "_Node" = self


def concave_hull(
    points: list[Point],
    concavity: float = 2.0,
    length_threshold: float = 0.0,
) -> list[Point]:
    """Concave hull of a point set by inward edge digging.

    An edge of the current hull is dug toward the nearest remaining interior
    point when the point is close relative to the edge length (edge length
    divided by the local distance exceeds ``concavity``), the two new edges
    cross no existing edge, and no other point would be left outside. Edges
    shorter than ``length_threshold`` are never dug. As ``concavity`` grows
    the result approaches the convex hull.

    Degenerate inputs (fewer than three distinct points, or all collinear)
    return the single point or the extreme segment endpoints.
    """
    unique = sorted({(float(x), float(y)) for x, y in points})
    if not unique:
        return []
    if len(unique) <= 2:
        return list(unique)

    hull = convex_hull(unique)
    if len(hull) < 3:
        return hull

    hull_set = set(hull)
    interior = [p for p in unique if p not in hull_set]

    nodes: list[_Node] = [_Node(p) for p in hull]
    for i, node in enumerate(nodes):
        node.next = nodes[(i + 1) % len(nodes)]
        node.prev = nodes[(i - 1) % len(nodes)]

    sq_concavity = max(concavity, 1.0) ** 2
    sq_threshold = length_threshold**2
    queue = list(nodes)
    head = 0
    while head < len(queue) and interior:
        node = queue[head]
        head += 1
        a = node.p
        b = node.next.p
        sq_len = _sq_dist(a, b)
        if sq_len < sq_threshold:
            continue
        max_sq_len = sq_len / sq_concavity
        candidate = _find_candidate(interior, nodes, node, max_sq_len)
        if candidate is None:
            continue
        if min(_sq_dist(candidate, a), _sq_dist(candidate, b)) > max_sq_len:
            continue
        inserted = _Node(candidate)
        inserted.prev = node
        inserted.next = node.next
        node.next.prev = inserted
        node.next = inserted
        nodes.append(inserted)
        interior.remove(candidate)
        queue.append(node)
        queue.append(inserted)

    result = []
    start = nodes[0]
    cursor = start
    while True:
        result.append(cursor.p)
        cursor = cursor.next
        if cursor is start:
            break
    return result


def _find_candidate(
    interior: list[Point],
    nodes: list[_Node],
    node: _Node,
    max_sq_len: float,
) -> Point | None:
    """Nearest diggable interior point for the edge starting at ``node``."""
    a = node.prev.p
    b = node.p
    c = node.next.p
    d = node.next.next.p

    ranked = sorted(
        ((sq_segment_distance(p, b, c), p) for p in interior), key=lambda t: t[0]
    )
    for dist, p in ranked:
        if dist > max_sq_len:
            break
        # Points at least as close to an adjacent edge are left for that edge.
        if dist >= sq_segment_distance(p, a, b) or dist >= sq_segment_distance(p, c, d):
            continue
        if not _visible(p, b, nodes) or not _visible(p, c, nodes):
            continue
        if _would_strand(p, b, c, interior):
            continue
        return p
    return None


def _visible(p: Point, endpoint: Point, nodes: list[_Node]) -> bool:
    for node in nodes:
        if _segments_cross(node.p, node.next.p, endpoint, p):
            return False
    return True


def _would_strand(p: Point, b: Point, c: Point, interior: list[Point]) -> bool:
    """True if digging edge b-c to p would leave another point outside.

    A point is stranded when it sits strictly inside the dig triangle, or on
    the open base edge of a positive-area dig (the boundary moves past it).
    """
    area2 = _cross(b, c, p)
    for q in interior:
        if q == p:
            continue
        s1 = _cross(b, c, q)
        s2 = _cross(c, p, q)
        s3 = _cross(p, b, q)
        if (s1 > 0 and s2 > 0 and s3 > 0) or (s1 < 0 and s2 < 0 and s3 < 0):
            return True
        if area2 != 0 and s1 == 0:
            t = _project_parameter(q, b, c)
            if 0 < t < 1:
                return True
    return False


def _project_parameter(p: Point, a: Point, b: Point) -> float:
    dx = b[0] - a[0]
    dy = b[1] - a[1]
    denom = dx * dx + dy * dy
    if denom == 0:
        return math.inf
    return ((p[0] - a[0]) * dx + (p[1] - a[1]) * dy) / denom
