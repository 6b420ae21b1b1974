"""Polygon regions and exact derivation of RCC8 scenarios.

Regions are simple polygons with integer vertices (one counterclockwise
exterior ring, no holes).  All predicates are exact: integer orientation
tests plus rational arithmetic for split points, so the eight basic
relations are decided without tolerances and are JEPD by construction.

The decision table for a pair of regions:

    EQ     mutual containment
    NTPP   one-way containment, boundaries disjoint      (NTPPi converse)
    TPP    one-way containment, boundaries touching      (TPPi converse)
    PO     interiors overlap, no containment
    EC     interiors disjoint, boundaries touching
    DC     otherwise

Containment and interior overlap are decided by classifying boundary
sub-segments (each polygon's edges split at every crossing with the
other's boundary) plus one guaranteed interior sample point per polygon.
Axis-aligned rectangles take an interval-arithmetic fast path that agrees
with the general predicates.
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .calculus import RCC8, Relation
from .errors import GeometryError, InconsistentNetworkError
from .network import Network

__all__ = [
    "Region",
    "BoundingBox",
    "rcc8_relation",
    "scenario_from_regions",
    "hybrid_reconstitute",
    "generate_regions",
    "regions_to_json",
    "regions_from_json",
]


def _orient(a, b, c):
    return (b[0] - a[0]) * (c[1] - a[1]) - (b[1] - a[1]) * (c[0] - a[0])


def _on_segment(p, a, b) -> bool:
    """Is p on the closed segment ab?  Assumes nothing about collinearity."""
    if _orient(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_touch(p, q, a, b) -> bool:
    """Do closed segments pq and ab share any point?"""
    d1 = _orient(a, b, p)
    d2 = _orient(a, b, q)
    d3 = _orient(p, q, a)
    d4 = _orient(p, q, b)
    if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) \
            and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
        return True
    return (_on_segment(p, a, b) or _on_segment(q, a, b)
            or _on_segment(a, p, q) or _on_segment(b, p, q))


def _param_on(p, q, r) -> Fraction:
    """Parameter of collinear point r along segment pq."""
    if q[0] != p[0]:
        return Fraction(r[0] - p[0], q[0] - p[0])
    return Fraction(r[1] - p[1], q[1] - p[1])


def _split_params(p, q, ring) -> list[Fraction]:
    """Parameters in (0,1) where segment pq meets the ring's boundary."""
    ts = set()
    m = len(ring)
    for i in range(m):
        a, b = ring[i], ring[(i + 1) % m]
        d1 = _orient(a, b, p)
        d2 = _orient(a, b, q)
        d3 = _orient(p, q, a)
        d4 = _orient(p, q, b)
        if d1 == 0 and d2 == 0:
            # collinear: clamp the overlap of ab onto pq
            for r in (a, b):
                t = _param_on(p, q, r)
                if 0 < t < 1:
                    ts.add(t)
            continue
        if ((d1 > 0) != (d2 > 0)) and ((d3 > 0) != (d4 > 0)) \
                and d1 != 0 and d2 != 0 and d3 != 0 and d4 != 0:
            ts.add(Fraction(d1, d1 - d2))
            continue
        for r in (a, b):
            if _on_segment(r, p, q):
                t = _param_on(p, q, r)
                if 0 < t < 1:
                    ts.add(t)
    return sorted(ts)


def _point_side(pt, ring) -> int:
    """1 strictly inside, 0 on the boundary, -1 strictly outside."""
    x, y = pt
    m = len(ring)
    for i in range(m):
        a, b = ring[i], ring[(i + 1) % m]
        if _on_segment(pt, a, b):
            return 0
    crossings = 0
    for i in range(m):
        a, b = ring[i], ring[(i + 1) % m]
        if (a[1] > y) == (b[1] > y):
            continue
        x_cross = a[0] + Fraction(y - a[1], b[1] - a[1]) * (b[0] - a[0])
        if x < x_cross:
            crossings += 1
    return 1 if crossings % 2 else -1


def _interior_point(ring) -> tuple[Fraction, Fraction]:
    """An exact point strictly inside the polygon.

    Uses a horizontal scanline through the gap just above the lowest
    vertices, where no vertex can interfere."""
    ys = sorted({p[1] for p in ring})
    y = Fraction(ys[0] + ys[1], 2)
    xs = []
    m = len(ring)
    for i in range(m):
        a, b = ring[i], ring[(i + 1) % m]
        if (a[1] > y) == (b[1] > y):
            continue
        xs.append(a[0] + Fraction(y - a[1], b[1] - a[1]) * (b[0] - a[0]))
    xs.sort()
    return (Fraction(xs[0] + xs[1], 2), y)


@dataclass(frozen=True)
class BoundingBox:
    xmin: int
    ymin: int
    xmax: int
    ymax: int

    @classmethod
    def of_ring(cls, ring) -> "BoundingBox":
        xs = [p[0] for p in ring]
        ys = [p[1] for p in ring]
        return cls(min(xs), min(ys), max(xs), max(ys))

    def disjoint(self, other: "BoundingBox") -> bool:
        """Strictly apart on some axis; touching boxes do not count."""
        return (self.xmax < other.xmin or other.xmax < self.xmin
                or self.ymax < other.ymin or other.ymax < self.ymin)


class Region:
    """A simple polygon with an id, integer vertices, positive area."""

    def __init__(self, id: str, ring: Sequence[Sequence[int]]):
        self.id = str(id)
        ring = [(int(x), int(y)) for x, y in ring]
        if len(ring) < 3:
            raise GeometryError(f"region {id!r}: fewer than 3 vertices")
        if len(set(ring)) != len(ring):
            raise GeometryError(f"region {id!r}: repeated vertex")
        area2 = sum(ring[i][0] * ring[(i + 1) % len(ring)][1]
                    - ring[(i + 1) % len(ring)][0] * ring[i][1]
                    for i in range(len(ring)))
        if area2 == 0:
            raise GeometryError(f"region {id!r}: zero area")
        if area2 < 0:
            ring.reverse()
        self.ring = tuple(ring)
        self._check_simple()
        self.bbox = BoundingBox.of_ring(self.ring)
        # axis-aligned rectangle detection for the fast path
        self.rect = None
        if len(self.ring) == 4:
            xs = sorted({p[0] for p in self.ring})
            ys = sorted({p[1] for p in self.ring})
            if (len(xs) == 2 and len(ys) == 2
                    and set(self.ring) == {(x, y) for x in xs for y in ys}):
                self.rect = (xs[0], ys[0], xs[1], ys[1])
        self._interior = None

    def _check_simple(self) -> None:
        ring = self.ring
        m = len(ring)
        for i in range(m):
            a, b = ring[i], ring[(i + 1) % m]
            if a == b:
                raise GeometryError(f"region {self.id!r}: zero-length edge")
            for j in range(i + 1, m):
                c, d = ring[j], ring[(j + 1) % m]
                adjacent = (j == i + 1) or (i == 0 and j == m - 1)
                if adjacent:
                    continue
                if _segments_touch(a, b, c, d):
                    raise GeometryError(
                        f"region {self.id!r}: self-intersecting boundary")
        for i in range(m):
            prev, v, nxt = ring[i - 1], ring[i], ring[(i + 1) % m]
            if _orient(prev, v, nxt) == 0:
                dx1, dy1 = prev[0] - v[0], prev[1] - v[1]
                dx2, dy2 = nxt[0] - v[0], nxt[1] - v[1]
                if dx1 * dx2 + dy1 * dy2 > 0:
                    raise GeometryError(
                        f"region {self.id!r}: boundary spike at {v}")

    def interior_point(self):
        if self._interior is None:
            self._interior = _interior_point(self.ring)
        return self._interior

    def __repr__(self) -> str:
        return f"Region({self.id!r}, {len(self.ring)} vertices)"


def _boundary_probe(ring_a, ring_b):
    """Classify the boundary of a against region b.

    Returns (any piece strictly inside b, any piece strictly outside b)."""
    some_in = False
    some_out = False
    for i in range(len(ring_a)):
        p, q = ring_a[i], ring_a[(i + 1) % len(ring_a)]
        ts = [Fraction(0)] + _split_params(p, q, ring_b) + [Fraction(1)]
        for k in range(len(ts) - 1):
            t = (ts[k] + ts[k + 1]) / 2
            mid = (p[0] + t * (q[0] - p[0]), p[1] + t * (q[1] - p[1]))
            side = _point_side(mid, ring_b)
            if side > 0:
                some_in = True
            elif side < 0:
                some_out = True
            if some_in and some_out:
                return True, True
    return some_in, some_out


def _rect_relation(a, b) -> str:
    ax1, ay1, ax2, ay2 = a
    bx1, by1, bx2, by2 = b
    if ax2 < bx1 or bx2 < ax1 or ay2 < by1 or by2 < ay1:
        return "DC"
    overlap = (max(ax1, bx1) < min(ax2, bx2)
               and max(ay1, by1) < min(ay2, by2))
    if not overlap:
        return "EC"
    a_in_b = ax1 >= bx1 and ax2 <= bx2 and ay1 >= by1 and ay2 <= by2
    b_in_a = bx1 >= ax1 and bx2 <= ax2 and by1 >= ay1 and by2 <= ay2
    if a_in_b and b_in_a:
        return "EQ"
    touch = (ax1 == bx1 or ax2 == bx2 or ay1 == by1 or ay2 == by2)
    if a_in_b:
        return "TPP" if touch else "NTPP"
    if b_in_a:
        return "TPPi" if touch else "NTPPi"
    return "PO"


def _general_relation(a: Region, b: Region) -> str:
    ra, rb = a.ring, b.ring
    touch = False
    for i in range(len(ra)):
        p, q = ra[i], ra[(i + 1) % len(ra)]
        for j in range(len(rb)):
            if _segments_touch(p, q, rb[j], rb[(j + 1) % len(rb)]):
                touch = True
                break
        if touch:
            break
    a_mid_in, a_mid_out = _boundary_probe(ra, rb)
    b_mid_in, b_mid_out = _boundary_probe(rb, ra)
    ip_a = _point_side(a.interior_point(), rb)
    ip_b = _point_side(b.interior_point(), ra)
    a_in_b = not a_mid_out and not b_mid_in and ip_a >= 0
    b_in_a = not b_mid_out and not a_mid_in and ip_b >= 0
    if a_in_b and b_in_a:
        return "EQ"
    if a_in_b:
        return "TPP" if touch else "NTPP"
    if b_in_a:
        return "TPPi" if touch else "NTPPi"
    if a_mid_in or b_mid_in or ip_a > 0 or ip_b > 0:
        return "PO"
    if touch:
        return "EC"
    return "DC"


def rcc8_relation(a: Region, b: Region) -> Relation:
    """The unique RCC8 basic relation holding between two regions."""
    if a.rect is not None and b.rect is not None:
        name = _rect_relation(a.rect, b.rect)
    else:
        name = _general_relation(a, b)
    return Relation(RCC8, RCC8.parse(name))


def scenario_from_regions(regions: Sequence[Region],
                          verify_prefilter: bool = False) -> Network:
    """Complete basic RCC8 network of a region list.

    Pairs with disjoint bounding boxes are set to DC without running the
    exact predicates; ``verify_prefilter`` re-runs them and asserts
    agreement (used by the test suite).
    """
    if len(regions) < 2:
        raise GeometryError("a scenario needs at least two regions")
    ids = [r.id for r in regions]
    if len(set(ids)) != len(ids):
        raise GeometryError("duplicate region ids")
    net = Network(RCC8, len(regions), ids)
    dc = RCC8.parse("DC")
    for i in range(len(regions)):
        for j in range(i + 1, len(regions)):
            if regions[i].bbox.disjoint(regions[j].bbox):
                if verify_prefilter:
                    exact = rcc8_relation(regions[i], regions[j]).mask
                    if exact != dc:
                        raise GeometryError(
                            f"prefilter unsound for {ids[i]}, {ids[j]}")
                net.set_mask(i, j, dc)
            else:
                net.set_mask(i, j, rcc8_relation(regions[i], regions[j]).mask)
    return net


def hybrid_reconstitute(prime: Network, regions: Sequence[Region]) -> Network:
    """Rebuild the full network from a prime subnetwork plus geometry.

    Universal edges whose regions have disjoint bounding boxes are seeded
    with DC, then the a-closure completes the rest.  An inconsistency
    signals a corrupted prime network (or mismatched geometry).
    """
    from .reasoning import a_closure

    by_id = {r.id: r for r in regions}
    if set(prime.labels) != set(by_id) or len(by_id) != len(regions):
        raise GeometryError("region ids do not match the network labels")
    seeded = prime.copy()
    dc = RCC8.parse("DC")
    star = RCC8.universal
    for i in range(prime.n):
        bi = by_id[prime.labels[i]].bbox
        for j in range(i + 1, prime.n):
            if seeded.mask(i, j) == star \
                    and bi.disjoint(by_id[prime.labels[j]].bbox):
                seeded.set_mask(i, j, dc)
    res = a_closure(seeded)
    if not res.consistent:
        raise InconsistentNetworkError(
            "reconstitution hit an inconsistency; the prime network or "
            "geometry is corrupted")
    return res.network


# -- region generator -----------------------------------------------------


def _shrink(rect, rng, tight_side=None):
    """Random integer sub-rectangle; ``tight_side`` pins one edge so the
    child touches the parent's boundary there."""
    x1, y1, x2, y2 = rect
    w, h = x2 - x1, y2 - y1
    nw = rng.randint(max(2, w // 4), max(2, w - 2))
    nh = rng.randint(max(2, h // 4), max(2, h - 2))
    nw, nh = min(nw, w - 2), min(nh, h - 2)
    ox = rng.randint(1, w - nw - 1) if w - nw - 1 >= 1 else 1
    oy = rng.randint(1, h - nh - 1) if h - nh - 1 >= 1 else 1
    if tight_side == "left":
        ox = 0
    elif tight_side == "bottom":
        oy = 0
    return (x1 + ox, y1 + oy, x1 + ox + nw, y1 + oy + nh)


def _rect_ring(rect):
    x1, y1, x2, y2 = rect
    return [(x1, y1), (x2, y1), (x2, y2), (x1, y2)]


def _diamond_ring(rect):
    x1, y1, x2, y2 = rect
    cx2, cy2 = x1 + x2, y1 + y2  # doubled midpoints stay integral
    if cx2 % 2 or cy2 % 2:
        x2, y2 = x2 + (cx2 % 2), y2 + (cy2 % 2)
    cx, cy = (x1 + x2) // 2, (y1 + y2) // 2
    return [(cx, y1), (x2, cy), (cx, y2), (x1, cy)]


def _octagon_ring(rect, cut):
    x1, y1, x2, y2 = rect
    c = max(1, min(cut, (x2 - x1) // 3, (y2 - y1) // 3))
    return [(x1 + c, y1), (x2 - c, y1), (x2, y1 + c), (x2, y2 - c),
            (x2 - c, y2), (x1 + c, y2), (x1, y2 - c), (x1, y1 + c)]


def _spawn(rect, rng, odd: bool):
    """A region ring inside ``rect``; occasionally a non-rectangle."""
    if not odd:
        return _rect_ring(rect)
    x1, y1, x2, y2 = rect
    if x2 - x1 >= 6 and y2 - y1 >= 6 and rng.random() < 0.5:
        return _octagon_ring(rect, rng.randint(1, 3))
    if x2 - x1 >= 4 and y2 - y1 >= 4:
        return _diamond_ring(rect)
    return _rect_ring(rect)


def generate_regions(n: int, seed: int, profile: str = "mixed") -> list[Region]:
    """Deterministic synthetic regions for a given seed.

    ``scattered`` yields mostly DC/EC/PO pairs, ``nested`` containment
    trees (NTPP/TPP chains with DC/EC siblings), ``mixed`` blends both.
    """
    if n < 1:
        raise GeometryError("need at least one region")
    if profile not in ("scattered", "nested", "mixed"):
        raise GeometryError(f"unknown profile {profile!r}")
    rng = random.Random(seed)
    regions: list[Region] = []
    seen: set = set()
    counter = 0

    def add(ring) -> bool:
        # identical point sets would put EQ pairs into every scenario
        nonlocal counter
        key = frozenset(ring)
        if key in seen:
            return False
        seen.add(key)
        counter += 1
        regions.append(Region(f"r{counter}", ring))
        return True

    def scattered(count, origin, span):
        made = 0
        guard = 0
        placed = []
        while made < count:
            guard += 1
            if guard > 50 * count + 200:
                # deterministic fallback: a fresh grid far from everything
                size = 4
                gx = origin + span + 10 * made
                if add(_rect_ring((gx, origin - 20, gx + size,
                                   origin - 20 + size))):
                    made += 1
                continue
            size = rng.randint(4, max(5, span // 6))
            x = origin + rng.randint(0, span - size)
            y = origin + rng.randint(0, span - size)
            rect = (x, y, x + size, y + size)
            if rng.random() < 0.25 and placed:
                # snap next to a previous rectangle to manufacture EC
                px1, py1, px2, py2 = placed[rng.randrange(len(placed))]
                rect = (px2, py1, px2 + size, py1 + size)
            if add(_spawn(rect, rng, odd=rng.random() < 0.2)):
                placed.append(rect)
                made += 1

    def nested(count, rect):
        # containment tree with pairwise disjoint siblings, so the
        # pairwise relations stay in {DC, EC, TPP(i), NTPP(i)}
        nodes = [(rect, [])]
        made = 0
        stuck = 0
        while made < count:
            parent, siblings = nodes[rng.randrange(len(nodes))]
            if parent[2] - parent[0] < 6 or parent[3] - parent[1] < 6:
                parent, siblings = nodes[0]
            if stuck > 200:
                # fresh disjoint area below everything placed so far
                gx = rect[0] + 12 * made
                child = (gx, rect[1] - 20, gx + 8, rect[1] - 12)
                parent, siblings = None, None
                tight = False
            else:
                tight = rng.random() < 0.3
                side = rng.choice(["left", "bottom"]) if tight else None
                child = _shrink(parent, rng, tight_side=side)
                if any(child[0] < s[2] and s[0] < child[2]
                       and child[1] < s[3] and s[1] < child[3]
                       for s in siblings):
                    stuck += 1
                    continue
            odd = (not tight) and rng.random() < 0.2 \
                and child[2] - child[0] > 2 and child[3] - child[1] > 2
            if odd:
                # keep clear of the parent boundary so the shape stays NTPP
                child = (child[0] + 1, child[1] + 1,
                         max(child[0] + 3, child[2] - 1),
                         max(child[1] + 3, child[3] - 1))
            if add(_spawn(child, rng, odd=odd)):
                made += 1
                stuck = 0
                if siblings is not None:
                    siblings.append(child)
                nodes.append((child, []))
            else:
                stuck += 1

    span = 40 * max(4, int(n ** 0.5) + 2)
    if profile == "scattered":
        scattered(n, 0, span)
    elif profile == "nested":
        root = span * 4
        nested(n, (0, 0, root, root))
    else:
        half = n // 2
        if half:
            nested(half, (0, 0, span * 2, span * 2))
        scattered(n - half, span * 2 + 10, span)
    return regions


def regions_to_json(regions: Iterable[Region]) -> str:
    doc = {"regions": [{"id": r.id, "ring": [list(p) for p in r.ring]}
                       for r in regions]}
    return json.dumps(doc, indent=1)


def regions_from_json(text: str) -> list[Region]:
    try:
        doc = json.loads(text)
        return [Region(r["id"], r["ring"]) for r in doc["regions"]]
    except (KeyError, TypeError, ValueError) as e:
        raise GeometryError(f"bad region document: {e}")
