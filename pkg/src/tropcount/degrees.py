"""Coarse degrees and their enumeration under linear constraints.

A coarse degree records, per primitive direction, the total weight of all
ends pointing that way.  Curve classes enter as integer linear constraints
on these ray totals; two ready-made families cover the flag threefold and
the octahedron quadric.
"""

from dataclasses import dataclass

from .curves import Degree, make_degree
from .lattice import is_zero, primitive


@dataclass(frozen=True)
class CoarseDegree:
    """Finite-support map from primitive directions to positive totals.

    values is canonically sorted ((direction, total), ...) with every
    total >= 1; the weighted direction sum must vanish.
    """

    n: int
    values: tuple

    def __post_init__(self):
        acc = [0] * self.n
        seen = set()
        for v, c in self.values:
            if len(v) != self.n:
                raise ValueError("mixed ambient ranks in coarse degree")
            if v in seen:
                raise ValueError("duplicate direction in coarse degree")
            seen.add(v)
            if is_zero(v) or primitive(v)[0] != tuple(v):
                raise ValueError("directions must be primitive")
            if c < 1:
                raise ValueError("support totals must be positive")
            for i in range(self.n):
                acc[i] += c * v[i]
        if any(acc):
            raise ValueError("coarse degree does not balance to zero")
        if self.values != tuple(sorted(self.values)):
            raise ValueError("coarse degree values must be sorted")

    def value(self, v):
        for u, c in self.values:
            if u == tuple(v):
                return c
        return 0

    @property
    def mass(self):
        return sum(c for _, c in self.values)


def make_coarse(n, entries):
    """Build a CoarseDegree from (direction, total) pairs, dropping zeros."""
    vals = tuple(sorted((tuple(v), int(c)) for v, c in entries if c))
    return CoarseDegree(n, vals)


@dataclass(frozen=True)
class DegreeSet:
    """Deduplicated sorted set of coarse degrees of one ambient rank."""

    coarse_degrees: tuple

    def __post_init__(self):
        vals = tuple(cd.values for cd in self.coarse_degrees)
        if len(set(vals)) != len(vals):
            raise ValueError("degree set has duplicates")
        if vals != tuple(sorted(vals)):
            raise ValueError("degree set must be sorted")
        if len(set(cd.n for cd in self.coarse_degrees)) > 1:
            raise ValueError("mixed ambient ranks in degree set")


def make_degree_set(members):
    uniq = {cd.values: cd for cd in members}
    return DegreeSet(tuple(uniq[k] for k in sorted(uniq)))


def coarse_of(deg):
    """Collapse a degree to its coarse degree: total weight per direction."""
    totals = {}
    for u, w in deg.entries:
        totals[u] = totals.get(u, 0) + w
    return make_coarse(deg.n, totals.items())


def _partitions(total, max_part):
    # non-increasing positive parts
    if total == 0:
        yield ()
        return
    for head in range(min(total, max_part), 0, -1):
        for rest in _partitions(total - head, head):
            yield (head,) + rest


def refine_coarse(coarse, max_weight=None):
    """All degrees whose coarse degree is the given one.

    Each ray total splits into end weights; parts are capped by
    max_weight (default: the full mass, so no effective cap).
    """
    if not coarse.values:
        return ()
    if max_weight is None:
        max_weight = coarse.mass
    per_ray = []
    for v, c in coarse.values:
        per_ray.append([(v, p) for p in _partitions(c, max_weight)])
    out = []

    def walk(i, acc):
        if i == len(per_ray):
            entries = []
            for v, parts in acc:
                entries.extend((v, w) for w in parts)
            out.append(make_degree(entries))
            return
        for v, parts in per_ray[i]:
            walk(i + 1, acc + [(v, parts)])

    walk(0, [])
    return tuple(sorted(out, key=lambda d: d.entries))


def enumerate_coarse_degrees(rays, linear_constraints, cap):
    """Balanced nonneg ray multiplicities meeting every linear constraint.

    linear_constraints is a list of (coefficients per ray, target); the
    search is exhaustive over total mass <= cap.
    """
    rays = [tuple(r) for r in rays]
    if len(set(rays)) != len(rays):
        raise ValueError("rays must be pairwise distinct")
    n = len(rays[0]) if rays else 0
    for r in rays:
        if is_zero(r) or primitive(r)[0] != r:
            raise ValueError("rays must be primitive")
    found = []
    counts = [0] * len(rays)

    def walk(i, used):
        if i == len(rays):
            acc = [0] * n
            for c, r in zip(counts, rays):
                for j in range(n):
                    acc[j] += c * r[j]
            if any(acc):
                return
            for coeffs, target in linear_constraints:
                if sum(c * a for c, a in zip(counts, coeffs)) != target:
                    return
            found.append(make_coarse(n, zip(rays, counts)))
            return
        for c in range(cap - used + 1):
            counts[i] = c
            walk(i + 1, used + c)
        counts[i] = 0

    walk(0, 0)
    return make_degree_set(found)


FLAG3_RAYS = ((-1, 0, 0), (0, 1, 0), (1, 0, 0), (1, 0, -1), (0, -1, 0),
              (0, -1, 1))

OCTAHEDRON_PAIRS = ((0, 1, 1), (1, 0, 0), (0, 1, 0), (1, 0, 1))


def preset_flag3(s, t):
    """Degree set for the class (s, t) on the flag threefold.

    Rays carry totals s, t, s - k, k, t - k, k for k = 0..min(s, t).
    """
    if s < 0 or t < 0 or (s, t) == (0, 0):
        raise ValueError("need s, t >= 0 and not both zero")
    members = []
    r = FLAG3_RAYS
    for k in range(min(s, t) + 1):
        members.append(make_coarse(3, [
            (r[0], s), (r[1], t), (r[2], s - k), (r[3], k), (r[4], t - k),
            (r[5], k)]))
    return make_degree_set(members)


def preset_octahedron(a):
    """Degree set for class a on the quadric with octahedral polytope.

    Each member assigns a composition a1 + a2 + a3 + a4 = a to the four
    opposite-direction ray pairs.
    """
    if a < 1:
        raise ValueError("need a >= 1")
    members = []
    for a1 in range(a + 1):
        for a2 in range(a - a1 + 1):
            for a3 in range(a - a1 - a2 + 1):
                a4 = a - a1 - a2 - a3
                entries = []
                for ai, u in zip((a1, a2, a3, a4), OCTAHEDRON_PAIRS):
                    entries.append((u, ai))
                    entries.append((tuple(-c for c in u), ai))
                members.append(make_coarse(3, entries))
    return make_degree_set(members)


def octahedron_class_set(a):
    """Every coarse degree of ruling class a on the octahedron rays.

    The class of a curve is its total end multiplicity on the four rays
    carrying the nonzero facet offsets of the degree-one moment
    polytope, and the end count 2a follows from balancing.  The set
    contains preset_octahedron(a); from a = 2 on it also has balanced
    members mixing rays from different opposite pairs, and dropping
    those breaks the invariance of mixed point and line counts under
    redistributing line directions.
    """
    if a < 1:
        raise ValueError("need a >= 1")
    rays = []
    for u in OCTAHEDRON_PAIRS:
        rays.append(u)
        rays.append(tuple(-c for c in u))
    offset = tuple(1 if any(c < 0 for c in r) else 0 for r in rays)
    return enumerate_coarse_degrees(tuple(rays), [(offset, a)], cap=2 * a)


def plane_degree(d):
    """Plane curves of degree d: ends (-1,0), (0,-1), (1,1), d of each."""
    if d < 1:
        raise ValueError("need d >= 1")
    return make_degree([((-1, 0), 1)] * d + [((0, -1), 1)] * d +
                       [((1, 1), 1)] * d)


def degree_set_degrees(ds, max_weight=None):
    """All refined degrees of a degree set, deduplicated and sorted."""
    out = {}
    for cd in ds.coarse_degrees:
        for deg in refine_coarse(cd, max_weight):
            out[deg.entries] = deg
    return tuple(out[k] for k in sorted(out))


def coarse_to_json(cd):
    return [{"ray": list(v), "count": c} for v, c in cd.values]


def coarse_from_json(data, n=None):
    entries = [(tuple(item["ray"]), int(item["count"])) for item in data]
    if n is None:
        if not entries:
            raise ValueError("cannot infer ambient rank from empty support")
        n = len(entries[0][0])
    return make_coarse(n, entries)


def degree_set_to_json(ds):
    return [coarse_to_json(cd) for cd in ds.coarse_degrees]


def degree_set_from_json(data, n=None):
    return make_degree_set([coarse_from_json(item, n) for item in data])
