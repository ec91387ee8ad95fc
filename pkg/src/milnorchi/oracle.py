"""Geometric local-degree oracle for germs in two and three variables.

Independent of the algebraic machinery: n = 2 sums the turning angle of H
along a polygon inscribed in a small circle, n = 3 counts signed preimages of
a generic direction under the piecewise linear map induced on a subdivided
icosahedron.  Both evaluate H exactly at rational sample points; floats are
only used for angles and to pre-screen orientation tests, and any
near-degenerate test is redone in exact integer arithmetic.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import DegenerateTarget, Unstable, ZeroOnMesh
from .polynomial import MapGerm

__all__ = ["OracleConfig", "SphereMesh", "winding_degree", "pl_sphere_degree", "icosphere"]

_FIXED_BITS = 40  # sample points are integers over 2^40
_PHASE = 0.38196601125  # circle phase offset so refinements never repeat points


@dataclass(frozen=True)
class OracleConfig:
    radius: Fraction = Fraction(1, 4)
    resolution: int = 1024
    depth: int = 5
    max_refinements: int = 4
    seed: int = 0

    def __post_init__(self):
        object.__setattr__(self, "radius", Fraction(self.radius))
        if self.radius <= 0:
            raise ValueError("radius must be positive")
        if self.resolution < 3 or self.depth < 0 or self.max_refinements < 1:
            raise ValueError("invalid mesh parameters")


def _integer_evaluator(H, denom):
    """Return f(X) -> integer vector proportional (by a fixed positive factor) to H(X/denom)."""
    comps = list(H)
    lcm = 1
    for p in comps:
        for c in p.terms.values():
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
    top = max(p.degree() for p in comps)
    prepared = []
    for p in comps:
        prepared.append([
            (int(c * lcm) * denom ** (top - sum(m)), m) for m, c in p.terms.items()])

    def ev(X):
        out = []
        for terms in prepared:
            acc = 0
            for c, m in terms:
                v = c
                for x, e in zip(X, m):
                    if e:
                        v *= x ** e
                acc += v
            out.append(acc)
        return out

    return ev


def _to_unit_float(v):
    """Direction of an integer vector as a float unit vector."""
    bits = max(abs(x).bit_length() for x in v)
    shift = max(bits - 60, 0)
    f = [float(x >> shift) if x >= 0 else -float((-x) >> shift) for x in v]
    n = math.sqrt(sum(x * x for x in f))
    return [x / n for x in f]


# -- n = 2 ---------------------------------------------------------------------

_BISECT_DEPTH = 40  # arcs with a large angle jump are halved at most this often


def _wrap(d):
    return (d + math.pi) % (2 * math.pi) - math.pi


def _winding_once(ev, radius, N):
    scale = 1 << _FIXED_BITS
    r = float(radius)

    def angle(th):
        X = (round(r * math.cos(th) * scale), round(r * math.sin(th) * scale))
        v = ev(X)
        if v[0] == 0 and v[1] == 0:
            raise ZeroOnMesh(f"H vanishes at sample point {X} / 2^{_FIXED_BITS}")
        u = _to_unit_float(v)
        return math.atan2(u[1], u[0])

    def arc(t0, a0, t1, a1, depth):
        # turning angle over [t0, t1], halving the arc while the jump is large
        d = _wrap(a1 - a0)
        if abs(d) < math.pi / 4:
            return d, True
        if depth == 0:
            return d, abs(d) < math.pi / 2
        tm = (t0 + t1) / 2
        am = angle(tm)
        d1, ok1 = arc(t0, a0, tm, am, depth - 1)
        d2, ok2 = arc(tm, am, t1, a1, depth - 1)
        return d1 + d2, ok1 and ok2

    ts = [2 * math.pi * (k + _PHASE) / N for k in range(N + 1)]
    angles = [angle(t) for t in ts[:N]]
    angles.append(angles[0])
    total = 0.0
    resolved = True
    for k in range(N):
        d, ok = arc(ts[k], angles[k], ts[k + 1], angles[k + 1], _BISECT_DEPTH)
        resolved = resolved and ok
        total += d
    return round(total / (2 * math.pi)), resolved


def winding_degree(H: MapGerm, cfg: OracleConfig = OracleConfig()) -> int:
    """Winding number of H around 0 along the circle of radius ``cfg.radius``."""
    H = H if isinstance(H, MapGerm) else MapGerm(tuple(H))
    if H.n != 2:
        raise ValueError("winding_degree needs a germ in two variables")
    ev = _integer_evaluator(H, 1 << _FIXED_BITS)
    N = cfg.resolution
    prev = None
    for _ in range(cfg.max_refinements + 1):
        w, ok = _winding_once(ev, cfg.radius, N)
        if ok and prev == w:
            return w
        prev = w if ok else None
        N *= 2
    raise Unstable(f"winding number not stable up to {N // 2} samples")


# -- n = 3 ---------------------------------------------------------------------

@dataclass(frozen=True)
class SphereMesh:
    """Integer vertices (points are ``vertices / denom``) and outward-oriented faces."""

    vertices: tuple
    faces: tuple
    denom: int


def _icosahedron():
    phi = 1618034  # golden ratio scaled by 10^6, rounded
    one = 1000000
    verts = []
    for a in (-one, one):
        for b in (-phi, phi):
            verts += [(0, a, b), (a, b, 0), (b, 0, a)]
    # edges have squared length about (2*one)^2; pick the 30 shortest pairs
    def d2(p, q):
        return sum((x - y) ** 2 for x, y in zip(p, q))
    edge = min(d2(p, q) for i, p in enumerate(verts) for q in verts[i + 1:])
    adj = {i: set() for i in range(12)}
    for i in range(12):
        for j in range(i + 1, 12):
            if d2(verts[i], verts[j]) <= edge * 1.01:
                adj[i].add(j)
                adj[j].add(i)
    faces = []
    for i in range(12):
        for j in adj[i]:
            for k in adj[i] & adj[j]:
                if i < j < k:
                    a, b, c = verts[i], verts[j], verts[k]
                    if _det3(a, b, c) > 0:
                        faces.append((i, j, k))
                    else:
                        faces.append((i, k, j))
    assert len(faces) == 20
    return verts, faces


def icosphere(depth: int, radius: Fraction = Fraction(1, 4)) -> SphereMesh:
    """Subdivided icosahedron; vertices are not projected to the sphere.

    The surface is star shaped about 0, which is all the degree needs.
    """
    verts, faces = _icosahedron()
    for _ in range(depth):
        verts = [tuple(2 * x for x in v) for v in verts]
        mid = {}
        new_faces = []

        def midpoint(i, j):
            key = (i, j) if i < j else (j, i)
            if key not in mid:
                a, b = verts[i], verts[j]
                verts.append(tuple((x + y) // 2 for x, y in zip(a, b)))
                mid[key] = len(verts) - 1
            return mid[key]

        for a, b, c in faces:
            ab, bc, ca = midpoint(a, b), midpoint(b, c), midpoint(c, a)
            new_faces += [(a, ab, ca), (b, bc, ab), (c, ca, bc), (ab, bc, ca)]
        faces = new_faces
    norm = math.sqrt(sum(x * x for x in verts[0]))
    denom = max(1, round(norm / float(radius)))
    return SphereMesh(tuple(verts), tuple(faces), denom)


def _det3(a, b, c):
    return (a[0] * (b[1] * c[2] - b[2] * c[1])
            - a[1] * (b[0] * c[2] - b[2] * c[0])
            + a[2] * (b[0] * c[1] - b[1] * c[0]))


def _sign(x):
    return (x > 0) - (x < 0)


def _pl_count(images, units, faces, target):
    """Signed number of faces whose image cone contains ``target``.

    Returns (degree, resolved).  Raises DegenerateTarget if the target lies
    on the boundary of some image cone.
    """
    F = np.asarray(faces)
    U = np.asarray(units)
    A, B, C = U[F[:, 0]], U[F[:, 1]], U[F[:, 2]]
    t = np.asarray(_to_unit_float(target))
    T = np.broadcast_to(t, A.shape)

    def det(p, q, r):
        return np.einsum("ij,ij->i", p, np.cross(q, r))

    d0 = det(A, B, C)
    d1 = det(T, B, C)
    d2 = det(A, T, C)
    d3 = det(A, B, T)
    tol = 1e-9
    exact = (np.abs(d0) < tol) | (np.abs(d1) < tol) | (np.abs(d2) < tol) | (np.abs(d3) < tol)
    s0 = np.sign(d0)
    inside = (~exact) & (np.sign(d1) == s0) & (np.sign(d2) == s0) & (np.sign(d3) == s0)
    total = int(s0[inside].sum())
    for f in np.nonzero(exact)[0]:
        a, b, c = (images[i] for i in faces[f])
        e0 = _sign(_det3(a, b, c))
        e1 = _sign(_det3(target, b, c))
        e2 = _sign(_det3(a, target, c))
        e3 = _sign(_det3(a, b, target))
        if e0 == 0:
            if e1 == e2 == e3 == 0:
                raise DegenerateTarget("target lies in a flat image face")
            continue
        signs = (e1, e2, e3)
        if all(s == e0 or s == 0 for s in signs):
            if 0 in signs:
                raise DegenerateTarget("target lies on an image edge")
            total += e0
    # mesh is resolved when every image edge subtends less than a right angle
    cos_ab = np.einsum("ij,ij->i", A, B)
    cos_bc = np.einsum("ij,ij->i", B, C)
    cos_ca = np.einsum("ij,ij->i", C, A)
    resolved = bool(min(cos_ab.min(), cos_bc.min(), cos_ca.min()) > 0)
    return total, resolved


def _pl_once(H, cfg, depth, rng):
    mesh = icosphere(depth, cfg.radius)
    ev = _integer_evaluator(H, mesh.denom)
    images = []
    for X in mesh.vertices:
        v = ev(X)
        if not any(v):
            raise ZeroOnMesh(f"H vanishes at mesh vertex {X} / {mesh.denom}")
        images.append(v)
    units = [_to_unit_float(v) for v in images]
    for _ in range(16):
        target = [rng.randint(-10**9, 10**9) for _ in range(3)]
        if not any(target):
            continue
        try:
            return _pl_count(images, units, mesh.faces, target)
        except DegenerateTarget:
            continue
    raise DegenerateTarget("no generic target direction found")


def pl_sphere_degree(H: MapGerm, cfg: OracleConfig = OracleConfig()) -> int:
    """Degree of H/|H| on a small polyhedral sphere, for germs in three variables."""
    H = H if isinstance(H, MapGerm) else MapGerm(tuple(H))
    if H.n != 3:
        raise ValueError("pl_sphere_degree needs a germ in three variables")
    rng = random.Random(cfg.seed)
    depth = cfg.depth
    prev = None
    for _ in range(cfg.max_refinements + 1):
        d, ok = _pl_once(H, cfg, depth, rng)
        if ok and prev == d:
            return d
        prev = d if ok else None
        depth += 1
    raise Unstable(f"PL degree not stable up to subdivision depth {depth - 1}")
