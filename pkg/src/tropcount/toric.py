"""Moment polytopes, normal fans, and small-resolution certificates.

Polytopes are given by integer facet normals with rational constants,
inequalities reading <normal, u> + constant >= 0, so normals point
inward.  Vertices come from exhaustive facet-subset intersection, which
is plenty for the handful of facets used here.  A tiny exact simplex
method (Bland's rule, Fraction arithmetic) supplies the cone tests.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import combinations

from .lattice import bareiss_det, int_matrix_inverse, is_zero, primitive


def _pivot(tab, basis, row, col):
    piv = tab[row][col]
    tab[row] = [x / piv for x in tab[row]]
    for i in range(len(tab)):
        if i != row and tab[i][col]:
            f = tab[i][col]
            tab[i] = [a - f * b for a, b in zip(tab[i], tab[row])]
    basis[row] = col


def _run_phase(tab, basis, ncols):
    # bottom row holds z_j - c_j; entering while any is negative
    m = len(tab) - 1
    while True:
        col = -1
        for j in range(ncols):
            if tab[m][j] < 0:
                col = j
                break
        if col < 0:
            return "optimal"
        row = -1
        best = None
        for i in range(m):
            if tab[i][col] > 0:
                ratio = tab[i][-1] / tab[i][col]
                if best is None or ratio < best or (
                        ratio == best and basis[i] < basis[row]):
                    best = ratio
                    row = i
        if row < 0:
            return "unbounded"
        _pivot(tab, basis, row, col)


def _eq_lp(aeq, beq, obj):
    """Maximize obj . x subject to aeq x = beq, x >= 0, exactly.

    Returns (status, value, x) with status optimal, unbounded, or
    infeasible.
    """
    m = len(aeq)
    nv = len(obj)
    rows = []
    rhs = []
    for a, b in zip(aeq, beq):
        a = [Fraction(x) for x in a]
        b = Fraction(b)
        if b < 0:
            a = [-x for x in a]
            b = -b
        rows.append(a)
        rhs.append(b)
    # phase 1: artificial basis, maximize minus their sum
    tab = [rows[i] + [Fraction(int(i == k)) for k in range(m)] + [rhs[i]]
           for i in range(m)]
    basis = [nv + i for i in range(m)]
    bottom = [-sum(tab[i][j] for i in range(m)) for j in range(nv)]
    bottom += [Fraction(0)] * m
    bottom.append(-sum(rhs))
    tab.append(bottom)
    if _run_phase(tab, basis, nv + m) != "optimal" or tab[m][-1] != 0:
        return "infeasible", None, None
    for i in range(m - 1, -1, -1):
        if basis[i] < nv:
            continue
        col = next((j for j in range(nv) if tab[i][j] != 0), -1)
        if col < 0:
            del tab[i]
            del basis[i]
            m -= 1
        else:
            _pivot(tab, basis, i, col)
    tab = [row[:nv] + [row[-1]] for row in tab[:m]]
    cb = [Fraction(obj[basis[i]]) for i in range(m)]
    bottom = [sum(cb[i] * tab[i][j] for i in range(m)) - Fraction(obj[j])
              for j in range(nv)]
    bottom.append(sum(cb[i] * tab[i][-1] for i in range(m)))
    tab.append(bottom)
    if _run_phase(tab, basis, nv) == "unbounded":
        return "unbounded", None, None
    x = [Fraction(0)] * nv
    for i in range(m):
        x[basis[i]] = tab[i][-1]
    return "optimal", tab[m][-1], x


def linprog_max(obj, rows, rhs):
    """Maximize obj . x over rows . x <= rhs with x free."""
    d = len(obj)
    aeq = []
    for a in rows:
        aeq.append(list(a) + [-x for x in a])
    m = len(aeq)
    for i, a in enumerate(aeq):
        a.extend(Fraction(int(i == k)) for k in range(m))
    c = list(obj) + [-x for x in obj] + [0] * m
    status, val, x = _eq_lp(aeq, rhs, c)
    if status != "optimal":
        return status, None, None
    return status, val, [x[j] - x[d + j] for j in range(d)]


def in_cone(rays, v):
    """Whether v is a nonnegative combination of the given rays."""
    rays = [tuple(r) for r in rays]
    if not rays:
        return is_zero(v)
    n = len(rays[0])
    aeq = [[r[i] for r in rays] for i in range(n)]
    status, _, _ = _eq_lp(aeq, list(v), [0] * len(rays))
    return status == "optimal"


def positive_functional(rays):
    """An f with <f, r> >= 1 for all rays, or None if the cone is unpointed."""
    rays = [tuple(r) for r in rays]
    n = len(rays[0])
    rows = [[-x for x in r] for r in rays]
    status, _, f = linprog_max([0] * n, rows, [-1] * len(rays))
    return f if status == "optimal" else None


def _frac_solve(a, b):
    # square Gaussian elimination; None if singular
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(y)]
         for row, y in zip(a, b)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), -1)
        if p < 0:
            return None
        m[c], m[p] = m[p], m[c]
        for r in range(n):
            if r != c and m[r][c]:
                f = m[r][c] / m[c][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [m[r][-1] / m[r][r] for r in range(n)]


def _affine_rank(points):
    if not points:
        return -1
    base = points[0]
    rows = [[p[i] - base[i] for i in range(len(base))] for p in points[1:]]
    rank = 0
    ncols = len(base)
    col = 0
    for col in range(ncols):
        p = next((r for r in range(rank, len(rows)) if rows[r][col] != 0), -1)
        if p < 0:
            continue
        rows[rank], rows[p] = rows[p], rows[rank]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col] / rows[rank][col]
                rows[r] = [x - f * y for x, y in zip(rows[r], rows[rank])]
        rank += 1
    return rank


@dataclass(frozen=True)
class Polytope:
    """Bounded full-dimensional rational polytope, inward facet normals."""

    inequalities: tuple

    def __post_init__(self):
        for a, c in self.inequalities:
            if is_zero(a) or any(int(x) != x for x in a):
                raise ValueError("normals must be nonzero integer vectors")
        if len(set(len(a) for a, _ in self.inequalities)) != 1:
            raise ValueError("mixed ambient ranks in inequalities")
        if len(self.vertices) < self.n + 1 or \
                _affine_rank(self.vertices) != self.n:
            raise ValueError("polytope is not full-dimensional")
        rows = [[-x for x in a] for a, _ in self.inequalities]
        n = self.n
        for j in range(n):
            for s in (1, -1):
                obj = [0] * n
                obj[j] = s
                status, val, _ = linprog_max(obj, rows + [obj], [0] * len(rows) + [1])
                if status != "optimal" or val > 0:
                    raise ValueError("polytope is unbounded")

    @property
    def n(self):
        return len(self.inequalities[0][0])

    def contains(self, u):
        return all(sum(a[i] * u[i] for i in range(self.n)) + c >= 0
                   for a, c in self.inequalities)

    @cached_property
    def vertices(self):
        """All vertices, from n-subsets of tight inequalities, sorted."""
        n = self.n
        seen = set()
        out = []
        for subset in combinations(range(len(self.inequalities)), n):
            a = [self.inequalities[i][0] for i in subset]
            b = [-self.inequalities[i][1] for i in subset]
            u = _frac_solve(a, b)
            if u is None:
                continue
            u = tuple(u)
            if u not in seen and self.contains(u):
                seen.add(u)
                out.append(u)
        return tuple(sorted(out))

    @cached_property
    def facet_indices(self):
        """Indices of inequalities tight on a codimension-one face."""
        out = []
        for i, (a, c) in enumerate(self.inequalities):
            tight = [v for v in self.vertices
                     if sum(a[k] * v[k] for k in range(self.n)) + c == 0]
            if _affine_rank(tight) == self.n - 1:
                out.append(i)
        return tuple(out)


def make_polytope(ineqs):
    """Build a Polytope from (normal, constant) pairs."""
    norm = tuple((tuple(int(x) for x in a), Fraction(c)) for a, c in ineqs)
    return Polytope(norm)


@dataclass(frozen=True)
class Fan:
    """Fan given by primitive rays and maximal cones as ray-index sets."""

    rays: tuple
    cones: tuple

    def __post_init__(self):
        if len(set(self.rays)) != len(self.rays):
            raise ValueError("fan rays must be distinct")
        for r in self.rays:
            if is_zero(r) or primitive(r)[0] != tuple(r):
                raise ValueError("fan rays must be primitive")
        for cone in self.cones:
            if tuple(sorted(set(cone))) != cone or not cone:
                raise ValueError("cones must be sorted nonempty index sets")
            if cone[-1] >= len(self.rays) or cone[0] < 0:
                raise ValueError("cone indexes a missing ray")
            if positive_functional([self.rays[i] for i in cone]) is None:
                raise ValueError("cone rays are not positively independent")

    @property
    def n(self):
        return len(self.rays[0])

    def cone_rays(self, cone):
        return tuple(self.rays[i] for i in cone)


def normal_fan(p):
    """Inward-normal fan of a polytope: one maximal cone per vertex."""
    rays = []
    ray_of = {}
    for i in p.facet_indices:
        u = primitive(p.inequalities[i][0])[0]
        if u not in ray_of:
            ray_of[u] = len(rays)
            rays.append(u)
    cones = []
    for v in p.vertices:
        tight = []
        for i in p.facet_indices:
            a, c = p.inequalities[i]
            if sum(a[k] * v[k] for k in range(p.n)) + c == 0:
                tight.append(ray_of[primitive(a)[0]])
        cones.append(tuple(sorted(set(tight))))
    return Fan(tuple(rays), tuple(sorted(set(cones))))


@dataclass(frozen=True)
class RefinementCertificate:
    """Claimed simplicial refinement, cones as ray indices or ray vectors."""

    simplicial_cones: tuple

    def __post_init__(self):
        for cone in self.simplicial_cones:
            if not cone:
                raise ValueError("certificate cones must be nonempty")
            for entry in cone:
                if not isinstance(entry, (int, tuple)):
                    raise ValueError("cone entries are indices or ray tuples")


def make_certificate(cones):
    out = []
    for cone in cones:
        entries = []
        for entry in cone:
            if isinstance(entry, int):
                entries.append(entry)
            else:
                entries.append(tuple(int(x) for x in entry))
        out.append(tuple(entries))
    return RefinementCertificate(tuple(out))


def _chart(f):
    k = next(i for i, x in enumerate(f) if x != 0)
    return [i for i in range(len(f)) if i != k]


def _section(ray, f, chart):
    s = sum(a * b for a, b in zip(f, ray))
    return tuple(Fraction(ray[i], 1) / s for i in chart)


def _hull2(points):
    # monotone chain; exact; returns ccw hull without repeated endpoint
    pts = sorted(set(points))
    if len(pts) <= 2:
        return pts

    def cross(o, a, b):
        return (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])

    lower = []
    for p in pts:
        while len(lower) > 1 and cross(lower[-2], lower[-1], p) <= 0:
            lower.pop()
        lower.append(p)
    upper = []
    for p in reversed(pts):
        while len(upper) > 1 and cross(upper[-2], upper[-1], p) <= 0:
            upper.pop()
        upper.append(p)
    return lower[:-1] + upper[:-1]


def _measure(points, dim):
    if dim == 1:
        xs = [p[0] for p in points]
        return max(xs) - min(xs)
    hull = _hull2(points)
    if len(hull) < 3:
        return Fraction(0)
    area = Fraction(0)
    for i in range(len(hull)):
        x0, y0 = hull[i]
        x1, y1 = hull[(i + 1) % len(hull)]
        area += x0 * y1 - x1 * y0
    return abs(area) / 2


def _extreme_rays(mrows, n):
    # extreme rays of {x : each row . x >= 0} for n in {2, 3}
    out = set()

    def feasible(v):
        return all(sum(r[i] * v[i] for i in range(n)) >= 0 for r in mrows)

    if n == 2:
        cands = [(r[1], -r[0]) for r in mrows]
    else:
        cands = []
        for a, b in combinations(mrows, 2):
            v = (a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                 a[0] * b[1] - a[1] * b[0])
            cands.append(v)
    for v in cands:
        if is_zero(v):
            continue
        for s in (1, -1):
            w = tuple(s * x for x in v)
            if feasible(w):
                out.add(primitive(w)[0])
    return out


def verify_small_resolution(fan, cert):
    """Check a claimed unimodular refinement of a fan.

    Returns (ok, report).  Verifies: (a) only existing rays are used,
    (b) every certificate cone sits inside some fan cone, (c) every
    certificate cone is simplicial and unimodular, (d) the pieces tile
    each fan cone exactly and meet pairwise in common faces.  The tiling
    check is exact for ambient rank <= 3 and skipped above that.
    """
    report = []
    n = fan.n
    resolved = []
    for cone in cert.simplicial_cones:
        idx = []
        ok = True
        for entry in cone:
            if isinstance(entry, int):
                if 0 <= entry < len(fan.rays):
                    idx.append(entry)
                else:
                    report.append("(a) cone %r indexes a missing ray" %
                                  (cone,))
                    ok = False
            else:
                if entry in fan.rays:
                    idx.append(fan.rays.index(entry))
                else:
                    report.append("(a) cone %r introduces a new ray %r" %
                                  (cone, entry))
                    ok = False
        if ok:
            resolved.append(tuple(sorted(idx)))

    unimodular = []
    for cone in resolved:
        rays = [list(fan.rays[i]) for i in cone]
        if len(cone) != n or len(set(cone)) != n:
            report.append("(c) cone %r is not a full-dimensional simplex" %
                          (cone,))
            continue
        det = bareiss_det(rays)
        if abs(det) != 1:
            report.append("(c) cone %r is not unimodular, |det| = %d" %
                          (cone, abs(det)))
            continue
        unimodular.append(cone)

    homes = {}
    for cone in resolved:
        homes[cone] = [big for big in fan.cones
                       if all(in_cone(fan.cone_rays(big), fan.rays[i])
                              for i in cone)]
        if not homes[cone]:
            report.append("(b) cone %r lies in no fan cone" % (cone,))

    if n > 3:
        report.append("note: tiling check skipped for ambient rank > 3")
    elif len(unimodular) == len(resolved) == len(cert.simplicial_cones):
        for big in fan.cones:
            rays = fan.cone_rays(big)
            f = positive_functional(rays)
            chart = _chart(f)
            base = [_section(r, f, chart) for r in rays]
            total = _measure(base, n - 1)
            covered = Fraction(0)
            for cone in resolved:
                if big not in homes[cone]:
                    continue
                pts = [_section(fan.rays[i], f, chart) for i in cone]
                covered += _measure(pts, n - 1)
            if covered != total:
                report.append("(d) fan cone %r not exactly covered: "
                              "%s of %s" % (big, covered, total))
        for ca, cb in combinations(unimodular, 2):
            ma = [list(r) for r in
                  zip(*int_matrix_inverse([list(fan.rays[i]) for i in ca]))]
            mb = [list(r) for r in
                  zip(*int_matrix_inverse([list(fan.rays[i]) for i in cb]))]
            shared = [fan.rays[i] for i in set(ca) & set(cb)]
            for v in _extreme_rays(ma + mb, n):
                if not in_cone(shared, v):
                    report.append("(d) cones %r and %r do not meet in a "
                                  "common face" % (ca, cb))
                    break
    else:
        report.append("note: tiling check skipped, earlier violations")

    ok = not any(line.startswith("(") for line in report)
    return ok, report


def builtin_gc3(lam):
    """Degree-three Gelfand-Cetlin polytope, spacing parameter lam."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("need lam > 0")
    return make_polytope([
        ((0, -1, 0), 2 * lam),
        ((0, 1, 0), -lam),
        ((-1, 0, 0), lam),
        ((1, 0, 0), 0),
        ((0, 1, -1), 0),
        ((-1, 0, 1), 0),
    ])


def builtin_octahedron(lam):
    """Octahedral moment polytope of the quadric threefold degeneration."""
    lam = Fraction(lam)
    if lam <= 0:
        raise ValueError("need lam > 0")
    return make_polytope([
        ((0, 1, 1), 0),
        ((-1, 0, 0), lam),
        ((0, -1, 0), lam),
        ((1, 0, 1), 0),
        ((0, 1, 0), 0),
        ((-1, 0, -1), lam),
        ((0, -1, -1), lam),
        ((1, 0, 0), 0),
    ])


def polytope_to_json(p):
    return {"inequalities": [{"normal": list(a), "constant": str(c)}
                             for a, c in p.inequalities]}


def polytope_from_json(data):
    return make_polytope([(item["normal"], Fraction(item["constant"]))
                          for item in data["inequalities"]])


def fan_to_json(fan):
    return {"rays": [list(r) for r in fan.rays],
            "cones": [list(c) for c in fan.cones]}


def fan_from_json(data):
    return Fan(tuple(tuple(r) for r in data["rays"]),
               tuple(tuple(c) for c in data["cones"]))


def certificate_to_json(cert):
    out = []
    for cone in cert.simplicial_cones:
        out.append([entry if isinstance(entry, int) else list(entry)
                    for entry in cone])
    return {"cones": out}


def certificate_from_json(data):
    return make_certificate([
        [entry if isinstance(entry, int) else tuple(entry)
         for entry in cone] for cone in data["cones"]])
