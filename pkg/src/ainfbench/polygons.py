"""Combinatorial disc counts on the marked torus, in the universal cover.

Three straight curves on R^2/Z^2 pairwise crossing once -- horizontal
(gamma0: y = 0, oriented +x), vertical (gamma1: x = 0, +y) and diagonal
(gamma2: x - y = 1/2, oriented along (-1,-1)) -- have pairwise homology
pairing +1, and the basepoint z = (3/4, 3/4) sits in the hexagonal face
of their complement.  Products of the intersection generators count
convex-cornered immersed polygons; each immersed polygon lifts to an
embedded convex-cornered polygon in R^2 bounded by single lifts of the
curves, so enumeration reduces to iterating over lift offsets.

A polygon through m lifts of z counts with weight U^m, and with sign
(-1)^(q+r+s): s boundary stars, while q and r add the Maslov indices of
corners whose following arc runs against the curve orientation (q for
the last arc, r for the middle ones).  Self-products of the vertical
curve use a piecewise-linear pushoff crossing it twice; only the
degree-0 crossing represents the identity.

All coordinates are exact rationals; star offsets are calibrated (and
frozen here) so the triangle count reproduces a vanishing product and
the quadrilateral count reproduces minus the theta series.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction as Fr

from .useries import TruncatedUSeries, series_mul, partition_series

# pushoff profile: PL bump with these breakpoints, period 1
CROSS_LOW = Fr(1, 8)    # degree-0 crossing of the pushoff with gamma1
CROSS_HIGH = Fr(5, 8)   # degree-1 crossing
BUMP = Fr(1, 100)
_W_KNOTS = (
    (Fr(1, 8), Fr(0)),
    (Fr(3, 8), BUMP),
    (Fr(5, 8), Fr(0)),
    (Fr(7, 8), -BUMP),
    (Fr(9, 8), Fr(0)),
)


def _w(t: Fr) -> Fr:
    """Pushoff displacement at height t (periodic PL interpolation)."""
    base = (t - CROSS_LOW) % 1 + CROSS_LOW
    for (t0, v0), (t1, v1) in zip(_W_KNOTS, _W_KNOTS[1:]):
        if t0 <= base <= t1:
            return v0 + (v1 - v0) * (base - t0) / (t1 - t0)
    raise AssertionError("unreachable")


def _w_slope(t: Fr, side: int) -> Fr:
    """One-sided slope of the pushoff profile at t (side=+1: just above)."""
    eps = Fr(1, 10**6)
    probe = t + eps * side
    base = (probe - CROSS_LOW) % 1 + CROSS_LOW
    for (t0, v0), (t1, v1) in zip(_W_KNOTS, _W_KNOTS[1:]):
        if t0 <= base <= t1:
            return (v1 - v0) / (t1 - t0)
    raise AssertionError("unreachable")


@dataclass(frozen=True)
class CurveLift:
    """One lift of a scene curve to the universal cover.

    kind 'h': y = offset, parametrized by x
    kind 'v': x = offset, parametrized by y
    kind 'd': x - y = offset, parametrized by y
    kind 'p': x = offset + w(y), parametrized by y (pushoff of 'v')
    """

    kind: str
    offset: Fr

    def point(self, t: Fr):
        if self.kind == "h":
            return (t, self.offset)
        if self.kind == "v":
            return (self.offset, t)
        if self.kind == "d":
            return (t + self.offset, t)
        return (self.offset + _w(t), t)

    def direction(self, t: Fr, travel: int, end: bool = False):
        """Unit-free travel direction; travel=+1 means increasing param.

        For the PL pushoff the one-sided piece is chosen from the side the
        arc actually occupies (ahead of the point when starting an arc,
        behind it when ending one)."""
        if self.kind == "h":
            return (Fr(travel), Fr(0))
        if self.kind == "v":
            return (Fr(0), Fr(travel))
        if self.kind == "d":
            return (Fr(travel), Fr(travel))
        side = travel if not end else -travel
        slope = _w_slope(t, 1 if side > 0 else -1)
        return (travel * slope, Fr(travel))

    def segments(self, t0: Fr, t1: Fr):
        """PL segments tracing the arc from param t0 to t1."""
        if self.kind != "p":
            return [(self.point(t0), self.point(t1))]
        lo, hi = (t0, t1) if t0 <= t1 else (t1, t0)
        knots = [lo]
        k = Fr(int(lo) - 1)
        while k < hi + 1:
            for brk, _ in _W_KNOTS[:-1]:
                tk = brk + k
                if lo < tk < hi:
                    knots.append(tk)
            k += 1
        knots.append(hi)
        knots = sorted(set(knots))
        if t0 > t1:
            knots.reverse()
        pts = [self.point(t) for t in knots]
        return list(zip(pts, pts[1:]))


@dataclass(frozen=True)
class SceneCurve:
    name: str
    kind: str            # 'h', 'v' or 'd'
    orientation: int     # +1: orientation = increasing parameter
    star: Fr             # parameter of the star (mod 1)

    def lift(self, offset) -> CurveLift:
        return CurveLift(self.kind, Fr(offset))


@dataclass
class PolygonScene:
    """Three oriented marked curves, the basepoint, the pushoff data and
    integer Maslov offsets for every intersection generator."""

    curves: dict
    z: tuple
    maslov: dict
    pushoff_star: Fr

    def homology_pairings(self):
        vectors = {"h": (1, 0), "v": (0, 1), "d": (1, 1)}

        def cls(c):
            vx, vy = vectors[c.kind]
            return (vx * c.orientation, vy * c.orientation)

        g0, g1, g2 = (self.curves[n] for n in ("gamma0", "gamma1", "gamma2"))
        def det(a, b):
            return a[0] * b[1] - a[1] * b[0]
        return (det(cls(g0), cls(g1)), det(cls(g1), cls(g2)),
                det(cls(g2), cls(g0)))

    def z_in_hexagon(self) -> bool:
        """The complement of the three curves has two triangular faces and
        one hexagonal face; within the fundamental square the triangles are
        x - y > 1/2 and x - y < -1/2, so z is hexagonal when |x - y| < 1/2
        after reduction (and off all three curves)."""
        x, y = self.z
        xf, yf = x % 1, y % 1
        if xf == 0 or yf == 0 or (xf - yf) % 1 == Fr(1, 2):
            return False
        return -Fr(1, 2) < xf - yf < Fr(1, 2)


def preset_scene() -> PolygonScene:
    """The frozen concrete scene (coordinates and star calibration)."""
    curves = {
        "gamma0": SceneCurve("gamma0", "h", +1, Fr(2, 3)),
        "gamma1": SceneCurve("gamma1", "v", +1, Fr(1, 4)),
        "gamma2": SceneCurve("gamma2", "d", -1, Fr(1, 3)),
    }
    maslov = {
        "e01": 0,   # gamma0 ^ gamma1 at (0, 0)
        "e12": 1,   # gamma1 ^ gamma2 at (0, 1/2)
        "e20": 0,   # gamma2 ^ gamma0 at (1/2, 0)
        "e21": 0,   # output of the triangle product, same point as e12
        "x_id": 0,  # pushoff ^ gamma1 at height 1/8: the identity
        "x_top": 1,  # pushoff ^ gamma1 at height 5/8
    }
    scene = PolygonScene(curves, (Fr(3, 4), Fr(3, 4)), maslov, Fr(1, 4))
    assert scene.homology_pairings() == (1, 1, 1)
    return scene


@dataclass
class PolygonWitness:
    """One deck-class of embedded convex-cornered lift."""

    corners: list         # corner names, y_0 first
    points: list          # exact corner coordinates (same order)
    arcs: list            # (curve name, t_from, t_to, travel, positive)
    z_count: int
    star_count: int
    q: int
    r: int
    wraps: list

    @property
    def sign(self) -> int:
        return -1 if (self.q + self.r + self.star_count) % 2 else 1


# ---------------------------------------------------------------------------
# exact plane geometry helpers
# ---------------------------------------------------------------------------

def _cross(o, a, b):
    return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])


def _on_segment(p, a, b) -> bool:
    if _cross(a, b, p) != 0:
        return False
    return (min(a[0], b[0]) <= p[0] <= max(a[0], b[0])
            and min(a[1], b[1]) <= p[1] <= max(a[1], b[1]))


def _segments_intersect(a, b, c, d) -> bool:
    d1 = _cross(c, d, a)
    d2 = _cross(c, d, b)
    d3 = _cross(a, b, c)
    d4 = _cross(a, b, d)
    if ((d1 > 0) != (d2 > 0) and d1 != 0 and d2 != 0
            and (d3 > 0) != (d4 > 0) and d3 != 0 and d4 != 0):
        return True
    for p, (s0, s1) in ((a, (c, d)), (b, (c, d)), (c, (a, b)), (d, (a, b))):
        if _on_segment(p, s0, s1):
            return True
    return False


def _point_in_polygon(p, segments) -> bool:
    """Strict interior test by horizontal ray casting; the caller must have
    excluded boundary points."""
    x, y = p
    inside = False
    for (x0, y0), (x1, y1) in segments:
        if (y0 > y) != (y1 > y):
            xi = x0 + (x1 - x0) * (y - y0) / (y1 - y0)
            if xi > x:
                inside = not inside
    return inside


def _count_lattice_points(pt, segments, bbox):
    """Lattice translates of pt strictly inside the PL polygon."""
    (xmin, xmax), (ymin, ymax) = bbox
    px, py = pt
    count = 0
    i = int(xmin - px) - 1
    while px + i <= xmax:
        j = int(ymin - py) - 1
        while py + j <= ymax:
            cand = (px + i, py + j)
            if xmin < cand[0] < xmax and ymin < cand[1] < ymax:
                for s0, s1 in segments:
                    if _on_segment(cand, s0, s1):
                        raise AssertionError(f"marked point {cand} on boundary")
                if _point_in_polygon(cand, segments):
                    count += 1
            j += 1
        i += 1
    return count


# ---------------------------------------------------------------------------
# witness assembly and validation
# ---------------------------------------------------------------------------

def _build_witness(scene, names, lifts, params, corner_names):
    """Assemble and validate one candidate polygon.

    names[k] is the scene curve of arc k (from corner k to corner k+1);
    params[k] = (t_from, t_to) on lifts[k].  Returns a PolygonWitness or
    None when any convexity/embeddedness/degeneracy test fails."""
    d1 = len(names)
    arcs = []
    all_segments = []
    seg_by_arc = []
    for k in range(d1):
        t_from, t_to = params[k]
        if t_from == t_to:
            return None
        travel = 1 if t_to > t_from else -1
        segs = lifts[k].segments(t_from, t_to)
        curve = scene.curves.get(names[k])
        if lifts[k].kind == "p":
            positive = travel == 1  # pushoff inherits the +y orientation
        else:
            positive = travel == curve.orientation
        arcs.append((names[k], t_from, t_to, travel, positive))
        seg_by_arc.append(segs)
        all_segments.extend(segs)

    # convex corners: strict left turns between incoming and outgoing arcs
    for k in range(d1):
        prev = (k - 1) % d1
        t_in = params[prev][1]
        t_out = params[k][0]
        d_in = lifts[prev].direction(t_in, 1 if params[prev][1] > params[prev][0] else -1,
                                     end=True)
        d_out = lifts[k].direction(t_out, 1 if params[k][1] > params[k][0] else -1)
        turn = d_in[0] * d_out[1] - d_in[1] * d_out[0]
        if turn <= 0:
            return None

    # embedded boundary: non-adjacent arcs disjoint, adjacent share a corner
    for i in range(d1):
        for j in range(i + 1, d1):
            adjacent = (j == i + 1) or (i == 0 and j == d1 - 1)
            for si in seg_by_arc[i]:
                for sj in seg_by_arc[j]:
                    if not _segments_intersect(*si, *sj):
                        continue
                    if not adjacent:
                        return None
                    # the only allowed touching point is the shared corner
                    corner = seg_by_arc[j][0][0] if j == i + 1 else seg_by_arc[i][0][0]
                    ends = {si[0], si[1]} & {sj[0], sj[1]}
                    if ends != {corner}:
                        return None

    # counterclockwise: positive shoelace area
    area2 = sum((x0 * y1 - x1 * y0) for (x0, y0), (x1, y1) in all_segments)
    if area2 <= 0:
        return None

    # degree bookkeeping: i(y_0) = sum of input indices + 2 - d
    idx = [scene.maslov[c] for c in corner_names]
    d = d1 - 1
    if idx[0] != sum(idx[1:]) + 2 - d:
        raise AssertionError(f"degree relation fails for {corner_names}")

    # sign data: stars per arc, q and r from negative traversals
    star_total = 0
    wraps = []
    for k in range(d1):
        t_from, t_to = params[k]
        lo, hi = (t_from, t_to) if t_from < t_to else (t_to, t_from)
        if names[k] == "pushoff":
            star = scene.pushoff_star
        else:
            star = scene.curves[names[k]].star
        n = 0
        base = star + int(lo - star) - 1
        while base < hi:
            if lo < base < hi:
                n += 1
            if base == lo or base == hi:
                raise AssertionError("star sits on an arc endpoint")
            base += 1
        star_total += n
        span = hi - lo
        if span == int(span):
            raise AssertionError("arc length ambiguous for wrap count")
        wraps.append(int(span))

    q = 0
    if not arcs[-1][4]:  # arc from y_d back to y_0
        q = idx[0] + idx[d]
    r = sum(idx[k] for k in range(1, d) if not arcs[k][4])

    xs = [x for seg in all_segments for (x, _) in seg]
    ys = [y for seg in all_segments for (_, y) in seg]
    bbox = ((min(xs), max(xs)), (min(ys), max(ys)))
    z_count = _count_lattice_points(scene.z, all_segments, bbox)
    points = [lifts[k].point(params[k][0]) for k in range(d1)]
    return PolygonWitness(list(corner_names), points, arcs, z_count,
                          star_total, q, r, wraps)


def triangle_witnesses(scene: PolygonScene, wrap_bound: int):
    """All deck-classes of triangles computing the composition of the
    gamma0^gamma1 and gamma2^gamma0 generators, sides wrapping at most
    wrap_bound times.  Normalization fixes the vertical and horizontal
    lifts; the diagonal offset is the surviving modulus."""
    out = []
    g1 = scene.curves["gamma1"].lift(0)
    g0 = scene.curves["gamma0"].lift(0)
    c = Fr(1, 2) - (wrap_bound + 2)
    while c <= wrap_bound + 2:
        g2 = scene.curves["gamma2"].lift(c)
        # corners: y0 = (0,-c) on gamma1^gamma2, y1 = (c,0) on gamma2^gamma0,
        # y2 = (0,0) on gamma0^gamma1
        params = [(-c, Fr(0)), (c, Fr(0)), (Fr(0), -c)]
        w = _build_witness(
            scene,
            ["gamma2", "gamma0", "gamma1"],
            [g2, g0, g1],
            params,
            ["e21", "e20", "e01"],
        )
        if w is not None and max(w.wraps) <= wrap_bound:
            out.append(w)
        c += 1
    return out


def quad_witnesses(scene: PolygonScene, wrap_bound: int):
    """All deck-classes of quadrilaterals computing the triple product
    whose output lies on the pushoff crossings; both crossings are
    enumerated, convexity keeps only the degree-0 one."""
    out = []
    g1 = scene.curves["gamma1"].lift(0)
    push = CurveLift("p", Fr(0))
    bound = wrap_bound + 2
    for cross_name, cross_t in (("x_id", CROSS_LOW), ("x_top", CROSS_HIGH)):
        c = Fr(1, 2) - bound
        while c <= bound:
            for m in range(-bound, bound + 1):
                g2 = scene.curves["gamma2"].lift(c)
                g0 = scene.curves["gamma0"].lift(m)
                # corners: y0 = crossing, y1 = (0,-c), y2 = (m+c, m),
                # y3 = (w(m), m); arcs gamma1, gamma2, gamma0, pushoff
                params = [
                    (cross_t, -c),        # on gamma1 (x = 0)
                    (-c, Fr(m)),          # on gamma2, param y
                    (Fr(m) + c, _w(Fr(m))),  # on gamma0, param x
                    (Fr(m), cross_t),     # on pushoff, param y
                ]
                w = _build_witness(
                    scene,
                    ["gamma1", "gamma2", "gamma0", "pushoff"],
                    [g1, g2, g0, push],
                    params,
                    [cross_name, "e12", "e20", "e01"],
                )
                if w is not None and max(w.wraps) <= wrap_bound:
                    out.append(w)
            c += 1
    return out


def enumerate_polygons(scene: PolygonScene, inputs, wrap_bound: int):
    """Witnesses for a named product; inputs are the mu-arguments
    (a_d, ..., a_1) in composition order."""
    inputs = tuple(inputs)
    if inputs == ("e01", "e20"):
        return triangle_witnesses(scene, wrap_bound)
    if inputs == ("e01", "e20", "e12"):
        return quad_witnesses(scene, wrap_bound)
    raise ValueError(f"no enumerator for input tuple {inputs}")


def polygon_sign(w: PolygonWitness) -> int:
    return w.sign


def mu2_series(scene: PolygonScene, wrap_bound: int) -> TruncatedUSeries:
    """Signed U-weighted triangle count: coefficient series of the output
    generator of the double product."""
    order = wrap_bound * (wrap_bound + 1) // 2
    coeffs = [0] * (order + 1)
    for w in triangle_witnesses(scene, wrap_bound):
        if w.z_count <= order:
            coeffs[w.z_count] += w.sign
    return TruncatedUSeries(coeffs, order)


def mu3_series(scene: PolygonScene, wrap_bound: int) -> TruncatedUSeries:
    """Signed U-weighted quadrilateral count at the identity output."""
    order = wrap_bound * (wrap_bound + 1) // 2
    coeffs = [0] * (order + 1)
    for w in quad_witnesses(scene, wrap_bound):
        if w.corners[0] == "x_id" and w.z_count <= order:
            coeffs[w.z_count] += w.sign
    return TruncatedUSeries(coeffs, order)


def triangle_criterion(scene: PolygonScene, wrap_bound: int):
    """(mu2 series, mu3 series, -u^3 * mu3): the product identities behind
    the exact triangle; passes when the first vanishes and the last is 1."""
    m2 = mu2_series(scene, wrap_bound)
    m3 = mu3_series(scene, wrap_bound)
    u = partition_series(m3.order)
    u3 = series_mul(series_mul(u, u), u)
    check = -(series_mul(u3, m3))
    return m2, m3, check


# ---------------------------------------------------------------------------
# scene files
# ---------------------------------------------------------------------------

def scene_dump(scene: PolygonScene) -> str:
    """Line-oriented scene file: curves with kind/orientation/star offset,
    the basepoint, pushoff star and Maslov offsets, all exact rationals."""
    lines = ["SCENE"]
    for name in sorted(scene.curves):
        c = scene.curves[name]
        sign = "+1" if c.orientation > 0 else "-1"
        lines.append(f"curve {name} {c.kind} {sign} star {c.star}")
    lines.append(f"z {scene.z[0]} {scene.z[1]}")
    lines.append(f"pushoff_star {scene.pushoff_star}")
    for point in sorted(scene.maslov):
        lines.append(f"maslov {point} {scene.maslov[point]}")
    return "\n".join(lines) + "\n"


def scene_load(text: str) -> PolygonScene:
    curves = {}
    z = None
    pushoff_star = None
    maslov = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line or line == "SCENE":
            continue
        parts = line.split()
        try:
            if parts[0] == "curve":
                _, name, kind, sign, star_kw, star = parts
                if star_kw != "star" or kind not in ("h", "v", "d"):
                    raise ValueError("malformed curve row")
                curves[name] = SceneCurve(name, kind, int(sign), Fr(star))
            elif parts[0] == "z":
                z = (Fr(parts[1]), Fr(parts[2]))
            elif parts[0] == "pushoff_star":
                pushoff_star = Fr(parts[1])
            elif parts[0] == "maslov":
                maslov[parts[1]] = int(parts[2])
            else:
                raise ValueError(f"unknown directive {parts[0]!r}")
        except (ValueError, IndexError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from None
    if z is None or pushoff_star is None or len(curves) != 3:
        raise ValueError("scene file incomplete")
    return PolygonScene(curves, z, maslov, pushoff_star)


# ---------------------------------------------------------------------------
# SVG emission (static figures of lifted witnesses)
# ---------------------------------------------------------------------------

def witness_svg(scene: PolygonScene, w: PolygonWitness, size: int = 420) -> str:
    """Standalone SVG of one lifted witness with the lattice and curves."""
    segs = []
    # rebuild the boundary polyline from stored arcs
    for (name, t0, t1, _, _), corner in zip(w.arcs, w.points):
        if name == "pushoff":
            lift = CurveLift("p", Fr(0))
        else:
            curve = scene.curves[name]
            off = _arc_offset(curve, corner)
            lift = curve.lift(off)
        segs.extend(lift.segments(t0, t1))
    xs = [float(p[0]) for s in segs for p in s]
    ys = [float(p[1]) for s in segs for p in s]
    pad = 0.7
    xmin, xmax = min(xs) - pad, max(xs) + pad
    ymin, ymax = min(ys) - pad, max(ys) + pad
    span = max(xmax - xmin, ymax - ymin)
    scale = size / span

    def sx(x):
        return (float(x) - xmin) * scale

    def sy(y):
        return size - (float(y) - ymin) * scale

    rows = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    i = int(xmin) - 1
    while i <= xmax + 1:
        rows.append(f'<line x1="{sx(i)}" y1="0" x2="{sx(i)}" y2="{size}" '
                    'stroke="#ddd" stroke-width="1"/>')
        i += 1
    j = int(ymin) - 1
    while j <= ymax + 1:
        rows.append(f'<line x1="0" y1="{sy(j)}" x2="{size}" y2="{sy(j)}" '
                    'stroke="#ddd" stroke-width="1"/>')
        j += 1
    path = []
    for (p0, p1) in segs:
        if not path:
            path.append(f"M {sx(p0[0])} {sy(p0[1])}")
        path.append(f"L {sx(p1[0])} {sy(p1[1])}")
    path.append("Z")
    rows.append(f'<path d="{" ".join(path)}" fill="#cfe8ff" '
                'stroke="#0055aa" stroke-width="2" fill-opacity="0.7"/>')
    zx, zy = scene.z
    i = int(xmin) - 1
    while i <= xmax + 1:
        j = int(ymin) - 1
        while j <= ymax + 1:
            rows.append(f'<circle cx="{sx(zx + i)}" cy="{sy(zy + j)}" r="3" '
                        'fill="#cc3300"/>')
            j += 1
        i += 1
    for p in w.points:
        rows.append(f'<circle cx="{sx(p[0])}" cy="{sy(p[1])}" r="4" '
                    'fill="#222"/>')
    rows.append("</svg>")
    return "\n".join(rows)


def _arc_offset(curve: SceneCurve, corner) -> Fr:
    x, y = corner
    if curve.kind == "h":
        return y
    if curve.kind == "v":
        return x
    return x - y
