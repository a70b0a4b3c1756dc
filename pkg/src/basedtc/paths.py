"""Paths, evaluation fibrations and the explicit reparametrization formulas.

Model spaces are Euclidean spaces, the circle R/Z and finite products.
A :class:`PathMap` is a map from the unit cube [0,1]^a (a = 1, 2 or 3)
into a model space.  Parameters may be ``Fraction`` instances; every
reparametrization below keeps them exact, so seam and waypoint
parameters such as i/n are hit exactly rather than to within rounding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, List, Optional, Sequence, Tuple

import numpy as np

BOUNDARY_TOL = 1e-12
COMPAT_TOL = 1e-9


class PathError(ValueError):
    pass


# -- model spaces ------------------------------------------------------

class Space:
    dim: int

    def distance(self, a, b) -> np.ndarray:
        raise NotImplementedError


@dataclass(frozen=True)
class Euclidean(Space):
    dim: int = 1

    def distance(self, a, b):
        return np.linalg.norm(np.asarray(a, float) - np.asarray(b, float), axis=-1)


@dataclass(frozen=True)
class Circle(Space):
    """R/Z with arc-length distance; coordinates are any real lift."""

    dim: int = 1

    def distance(self, a, b):
        d = np.abs(np.asarray(a, float) - np.asarray(b, float))[..., 0] % 1.0
        return np.minimum(d, 1.0 - d)


@dataclass(frozen=True)
class Product(Space):
    factors: Tuple[Space, ...]

    @property
    def dim(self):
        return sum(f.dim for f in self.factors)

    def distance(self, a, b):
        a = np.asarray(a, float)
        b = np.asarray(b, float)
        total = 0.0
        k = 0
        for f in self.factors:
            dk = f.distance(a[..., k:k + f.dim], b[..., k:k + f.dim])
            total = total + dk ** 2
            k += f.dim
        return np.sqrt(total)


def as_point(x, space: Space) -> np.ndarray:
    p = np.atleast_1d(np.asarray(x, dtype=float))
    if p.shape != (space.dim,):
        raise PathError(f"point {x!r} does not have dimension {space.dim}")
    return p


# -- path maps --------------------------------------------------------

FREE, BASED, LOOP = "free", "based", "loop"


class PathMap:
    """A map [0,1]^arity -> space.

    ``kind`` is ``free``, ``based`` (f(0) = x0) or ``loop`` (also f(1) = x0);
    for arity-1 maps the boundary conditions are checked on construction.
    ``vfunc``, when given, evaluates float arrays of parameters at once and
    returns an array of shape ``params.shape + (dim,)``.
    """

    def __init__(self, func: Callable, space: Space, arity: int = 1, kind: str = FREE, x0=None,
                 check: bool = True, vfunc: Optional[Callable] = None):
        if arity not in (1, 2, 3):
            raise PathError("arity must be 1, 2 or 3")
        if kind not in (FREE, BASED, LOOP):
            raise PathError(f"unknown path kind {kind!r}")
        if kind != FREE and x0 is None:
            raise PathError(f"a {kind} path needs a base point")
        self.func = func
        self.vfunc = vfunc
        self.space = space
        self.arity = arity
        self.kind = kind
        self.x0 = None if x0 is None else as_point(x0, space)
        if check and arity == 1 and kind != FREE:
            self._check_boundary()

    def _check_boundary(self):
        ends = [0] if self.kind == BASED else [0, 1]
        for t in ends:
            err = float(self.space.distance(self(t), self.x0))
            if err > BOUNDARY_TOL:
                raise PathError(f"{self.kind} path has f({t}) at distance {err:.3g} from x0")

    def __call__(self, *params) -> np.ndarray:
        if len(params) != self.arity:
            raise PathError(f"expected {self.arity} parameter(s), got {len(params)}")
        return np.asarray(self.func(*params), dtype=float).reshape(self.space.dim)

    def grid(self, *params: np.ndarray) -> np.ndarray:
        """Evaluate on broadcast float arrays, vectorized when possible."""
        arrs = np.broadcast_arrays(*[np.asarray(p, float) for p in params])
        if self.vfunc is not None:
            return np.asarray(self.vfunc(*arrs), float)
        out = np.empty(arrs[0].shape + (self.space.dim,))
        for idx in np.ndindex(*arrs[0].shape):
            out[idx] = self(*(float(a[idx]) for a in arrs))
        return out

    def __repr__(self):
        return f"PathMap(arity={self.arity}, kind={self.kind}, dim={self.space.dim})"


def constant_path(point, space: Space, kind: str = BASED) -> PathMap:
    p = as_point(point, space)
    return PathMap(lambda t: p, space, 1, kind, p if kind != FREE else None)


def linear_path(points: Sequence, space: Space, kind: str = FREE, x0=None) -> PathMap:
    """Piecewise-linear path through ``points`` at equally spaced parameters."""
    pts = np.array([as_point(p, space) for p in points])
    knots = [Fraction(i, len(pts) - 1) for i in range(len(pts))]
    return piecewise_linear(knots, pts, space, kind, x0)


def piecewise_linear(knots: Sequence, values, space: Space, kind: str = FREE, x0=None) -> PathMap:
    """Piecewise-linear interpolation; exact at knots given as Fractions."""
    knots = list(knots)
    vals = np.asarray(values, dtype=float)
    if len(knots) != len(vals) or knots[0] != 0 or knots[-1] != 1:
        raise PathError("knots must run from 0 to 1 and match the values")

    def f(t):
        if t <= 0:
            return vals[0]
        if t >= 1:
            return vals[-1]
        lo, hi = 0, len(knots) - 1
        while hi - lo > 1:
            mid = (lo + hi) // 2
            if knots[mid] <= t:
                lo = mid
            else:
                hi = mid
        if t == knots[lo]:
            return vals[lo]
        w = float((t - knots[lo]) / (knots[hi] - knots[lo]))
        return (1 - w) * vals[lo] + w * vals[hi]

    if kind != FREE and x0 is None:
        x0 = vals[0]
    return PathMap(f, space, 1, kind, x0)


def random_pl_path(rng: np.random.Generator, space: Space, kind: str = BASED, x0=None,
                   pieces: int = 6) -> PathMap:
    """Random piecewise-linear path with Fraction knots."""
    dim = space.dim
    x0 = np.zeros(dim) if x0 is None else as_point(x0, space)
    inner = sorted({Fraction(int(v), 1 << 20) for v in rng.integers(1, 1 << 20, size=pieces - 1)})
    knots = [Fraction(0)] + inner + [Fraction(1)]
    vals = rng.normal(size=(len(knots), dim))
    if kind != FREE:
        vals[0] = x0
    if kind == LOOP:
        vals[-1] = x0
    return piecewise_linear(knots, vals, space, kind, x0 if kind != FREE else None)


# -- evaluation fibrations ---------------------------------------------

def fibration_parameters(kind: str, n: int) -> List[Fraction]:
    if kind == "p":
        if n < 1:
            raise PathError("p_n needs n >= 1")
        return [Fraction(i, n) for i in range(1, n + 1)]
    if kind == "q":
        if n < 1:
            raise PathError("q_n needs n >= 1")
        return [Fraction(i, n + 1) for i in range(1, n + 1)]
    if kind == "P":
        if n < 2:
            raise PathError("P_n needs n >= 2")
        return [Fraction(i, n - 1) for i in range(n)]
    if kind == "Q":
        if n < 2:
            raise PathError("Q_n needs n >= 2")
        return [Fraction(i, n) for i in range(n)]
    raise PathError(f"unknown fibration {kind!r}")


def evaluate_fibration(f: PathMap, kind: str, n: int) -> np.ndarray:
    """Waypoint tuple (as an ``(n, dim)`` array) of ``f`` under p_n, q_n, P_n or Q_n."""
    if f.arity != 1:
        raise PathError("fibrations evaluate arity-1 paths")
    if kind == "p" and f.kind not in (BASED, LOOP):
        raise PathError("p_n is defined on based paths")
    if kind == "q" and f.kind != LOOP:
        raise PathError("q_n is defined on based loops")
    if kind == "Q" and f.kind != LOOP:
        # free loops: only the closing condition matters
        if float(f.space.distance(f(0), f(1))) > BOUNDARY_TOL:
            raise PathError("Q_n is defined on loops")
    return np.array([f(t) for t in fibration_parameters(kind, n)])


# -- comparison maps -----------------------------------------------------

def prefix_scale(f: PathMap, c) -> PathMap:
    """t -> f(c t) for 0 < c <= 1."""
    c = Fraction(c) if not isinstance(c, float) else c
    if not 0 < c <= 1:
        raise PathError(f"scale {c} outside (0, 1]")
    if f.arity != 1:
        raise PathError("prefix_scale needs an arity-1 path")
    kind = BASED if f.kind != FREE else FREE
    return PathMap(lambda t: f(c * t), f.space, 1, kind, f.x0)


def loop_fold(f: PathMap, n: int) -> PathMap:
    """Run a based path at speed (n+1)/n, then back to x0 along its first 1/n."""
    if f.arity != 1 or f.kind == FREE:
        raise PathError("loop_fold needs a based path")
    if n < 1:
        raise PathError("loop_fold needs n >= 1")
    knee = Fraction(n, n + 1)

    def g(t):
        if t <= knee:
            return f(Fraction(n + 1, n) * t if not isinstance(t, float) else (n + 1) * t / n)
        return f((n + 1) * (1 - t))

    return PathMap(g, f.space, 1, LOOP, f.x0)


def shift_embed(f: PathMap, n: int) -> PathMap:
    """Free path t -> f((n-1) t / n + 1/n)."""
    if f.arity != 1 or f.kind == FREE:
        raise PathError("shift_embed needs a based path")
    if n < 2:
        raise PathError("shift_embed needs n >= 2")
    a, b = Fraction(n - 1, n), Fraction(1, n)
    return PathMap(lambda t: f(a * t + b), f.space, 1, FREE)


# -- homotopy lifting extension -----------------------------------------

def _sqrt(x):
    # radicands are (u+t)^2 + 4(1-t) >= 0; clip rounding noise only
    return math.sqrt(max(float(x), 0.0))


def lift_branch(n: int, t, s) -> Tuple[str, int]:
    """Which piece of the extension covers (t, s): ``(branch, j)``.

    Comparisons are exact when ``t`` and ``s`` are Fractions (or ints).
    At t = 0 the collars have zero width and the middle piece is used.
    """
    j = min(math.floor(n * s), n - 1)
    if t == 0:
        return "middle", j
    v = 5 * n * s - 5 * j
    if v <= 2 * t:
        return "bottom", j
    if v >= 5 - 2 * t:
        return "top", j
    return "middle", j


def lift_parameter_top(n: int, j: int, t, s) -> float:
    w = float(5 * n * s - 5 * (j + 1) + 2) + float(t)
    return (w - _sqrt(w * w - 4 * float(5 * n * s - 5 * (j + 1) + 2 * t))) / 2


def lift_parameter_bottom(n: int, j: int, t, s) -> float:
    a = float(5 * n * s - 5 * j - 2) - float(t)
    return (-a - _sqrt(a * a + 4 * float(5 * n * s - 5 * j - 2 * t))) / 2


def check_compatibility(G: PathMap, hs: Sequence[PathMap], n: int, x0, samples: int = 65):
    """Verify G(y,0) = x0 and G(y,i/n) = h_i(y,0) on ``samples`` values of y."""
    worst = (0.0, None)
    for k in range(samples):
        y = Fraction(k, samples - 1)
        errs = [(float(G.space.distance(G(y, 0), x0)), f"G(y,0) vs x0 at y={y}")]
        for i in range(1, n + 1):
            e = float(G.space.distance(G(y, Fraction(i, n)), hs[i - 1](y, 0)))
            errs.append((e, f"G(y,{i}/{n}) vs h_{i}(y,0) at y={y}"))
        worst = max([worst] + errs, key=lambda e: e[0])
    if worst[0] > COMPAT_TOL:
        raise PathError(f"compatibility violated: {worst[1]} off by {worst[0]:.3g}")
    return worst[0]


def lift_extend(G: PathMap, hs: Sequence[PathMap], n: int, x0=None, check: bool = True) -> PathMap:
    """Extension H(y, t, s) of the lifting data to Y x I x I, with Y = I.

    ``G`` is the initial family of based paths G(y, s); ``hs[i-1]`` is the
    homotopy h_i(y, t) of the i-th waypoint.  The result satisfies
    H(y,0,s) = G(y,s), H(y,t,0) = x0 and H(y,t,i/n) = h_i(y,t).
    """
    if n < 1 or len(hs) != n:
        raise PathError(f"need exactly n = {n} waypoint homotopies")
    if G.arity != 2 or any(h.arity != 2 for h in hs):
        raise PathError("G and h_i must have arity 2")
    space = G.space
    x0 = G(0, 0) if x0 is None else as_point(x0, space)
    if check:
        check_compatibility(G, hs, n, x0)

    def h(j, y, t):
        return x0 if j == 0 else hs[j - 1](y, t)

    def H(y, t, s):
        branch, j = lift_branch(n, t, s)
        if branch == "top":
            return h(j + 1, y, lift_parameter_top(n, j, t, s))
        if branch == "bottom":
            return h(j, y, lift_parameter_bottom(n, j, t, s))
        tf, sf = float(t), float(s)
        return G(y, (5 * sf - (4 * j + 2) * tf / n) / (5 - 4 * tf))

    vH = None
    if G.vfunc is not None and all(h.vfunc is not None for h in hs):
        def vH(Y, T, S):
            J = np.minimum(np.floor(n * S), n - 1)
            V = 5 * n * S - 5 * J
            live = T != 0
            bottom = live & (V <= 2 * T)
            top = live & ~bottom & (V >= 5 - 2 * T)
            middle = ~(bottom | top)
            out = np.empty(Y.shape + (space.dim,))
            m = middle
            out[m] = G.vfunc(Y[m], (5 * S[m] - (4 * J[m] + 2) * T[m] / n) / (5 - 4 * T[m]))
            U = V - 5
            W = U + 2 + T
            tstar = (W - np.sqrt(np.maximum(W * W - 4 * (U + 2 * T), 0.0))) / 2
            A = V - 2 - T
            tss = (-A - np.sqrt(np.maximum(A * A + 4 * (V - 2 * T), 0.0))) / 2
            for j in range(n):
                mt = top & (J == j)
                if mt.any():
                    out[mt] = hs[j].vfunc(Y[mt], tstar[mt])
                mb = bottom & (J == j)
                if mb.any():
                    out[mb] = x0 if j == 0 else hs[j - 1].vfunc(Y[mb], tss[mb])
            return out

    return PathMap(H, space, 3, FREE, vfunc=vH)


# -- section transport along a homotopy equivalence ---------------------

def transport_section(s: Callable, fwd: Callable, bwd: Callable, H: Callable, phi: PathMap, n: int,
                      x0, y0, space_x: Space) -> Callable:
    """Turn a local section ``s`` of p_n over Y^n into one over X^n.

    ``fwd``: X -> Y and ``bwd``: Y -> X are the homotopy equivalence,
    ``H(x, t)`` a homotopy from the identity (t = 0) to bwd o fwd (t = 1),
    and ``phi`` a path in Y from fwd(x0) to y0.  Returns a function taking
    an n-tuple of points of X to a based path at x0.
    """
    if n < 1:
        raise PathError("n must be >= 1")
    x0 = as_point(x0, space_x)
    y0 = np.asarray(y0, float)
    ys = phi.space
    if float(ys.distance(phi(0), fwd(x0))) > COMPAT_TOL:
        raise PathError("phi(0) must equal fwd(x0)")
    if float(ys.distance(phi(1), y0)) > COMPAT_TOL:
        raise PathError("phi(1) must equal y0")

    def section(xs) -> PathMap:
        xs = [as_point(x, space_x) for x in xs]
        if len(xs) != n:
            raise PathError(f"expected {n} waypoints, got {len(xs)}")
        for x in [x0] + xs:
            if float(space_x.distance(np.asarray(H(x, 0), float), x)) > COMPAT_TOL:
                raise PathError("H(x, 0) must equal x")
        S = s([np.asarray(fwd(x), float) for x in xs])

        def path(t):
            if t <= Fraction(1, n):
                if t <= Fraction(1, 4 * n):
                    return H(x0, 4 * n * t)
                if t <= Fraction(1, 2 * n):
                    return bwd(phi(4 * n * t - 1))
                if t <= Fraction(3, 4 * n):
                    return bwd(S(4 * t - Fraction(2, n)))
                return H(xs[0], 4 - 4 * n * t)
            i = min(math.ceil(n * t) - 1, n - 1)
            if t <= Fraction(3 * i + 1, 3 * n):
                return H(xs[i - 1], 3 * n * t - 3 * i)
            if t <= Fraction(3 * i + 2, 3 * n):
                return bwd(S(3 * t - Fraction(2 * i + 1, n)))
            return H(xs[i], 3 + 3 * i - 3 * n * t)

        return PathMap(path, space_x, 1, BASED, x0)

    return section


# -- continuity checker ---------------------------------------------------

@dataclass(frozen=True)
class ContinuityReport:
    max_gaps: Tuple[float, ...]
    flagged: bool

    @property
    def strictly_decreasing(self) -> bool:
        return all(b < a for a, b in zip(self.max_gaps, self.max_gaps[1:]))


def check_continuity(f: PathMap, levels: int = 5, floor: float = 1e-14,
                     start_level: int = 1) -> ContinuityReport:
    """Max distance between grid neighbours on dyadic grids.

    Grids have 2^L + 1 ticks per axis for L = start_level .. start_level +
    levels - 1.  A gap sequence that fails to decrease (ignoring gaps
    below ``floor``) is flagged as a suspected discontinuity.  Maps with
    features narrower than the coarsest grid spacing can show rising gaps
    at coarse levels; ``start_level`` skips those.
    """
    if levels < 2:
        raise PathError("levels must be >= 2")
    gaps = []
    for level in range(start_level, start_level + levels):
        N = 1 << level
        ticks = np.arange(N + 1) / N
        mesh = np.meshgrid(*([ticks] * f.arity), indexing="ij")
        vals = f.grid(*mesh)
        g = 0.0
        for ax in range(f.arity):
            a = np.take(vals, range(N), axis=ax)
            b = np.take(vals, range(1, N + 1), axis=ax)
            g = max(g, float(np.max(f.space.distance(a, b))))
        gaps.append(g)
    flagged = any(b >= a and b > floor for a, b in zip(gaps, gaps[1:]))
    return ContinuityReport(tuple(gaps), flagged)
