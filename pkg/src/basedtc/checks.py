"""Seeded numeric suites for the path formulas (used by ``check-paths``)."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import List

import numpy as np

from .paths import (
    BASED,
    COMPAT_TOL,
    LOOP,
    Euclidean,
    PathMap,
    check_continuity,
    evaluate_fibration,
    fibration_parameters,
    lift_extend,
    linear_path,
    loop_fold,
    prefix_scale,
    random_pl_path,
    shift_embed,
    transport_section,
)

REPARAM_TOL = 1e-12
LIFT_TOL = 1e-9
SECTION_TOL = 1e-12


@dataclass
class Check:
    name: str
    worst: float
    tol: float
    detail: str = ""

    @property
    def ok(self) -> bool:
        return self.worst <= self.tol


@dataclass
class SuiteReport:
    suite: str
    seed: int
    checks: List[Check] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(c.ok for c in self.checks)

    def as_dict(self) -> dict:
        return {
            "suite": self.suite,
            "seed": self.seed,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "worst": c.worst, "tol": c.tol, "ok": c.ok, "detail": c.detail}
                for c in self.checks
            ],
        }


def _worst(a, b, space) -> float:
    return float(np.max(space.distance(a, b)))


def reparam_suite(seed: int = 0, paths: int = 100, n_values=range(1, 6), dim: int = 2) -> SuiteReport:
    """q_n o loop_fold = p_n, p_n o prefix_scale(n/(n+1)) = q_n, P_n o shift_embed = p_n."""
    rng = np.random.default_rng(seed)
    space = Euclidean(dim)
    rep = SuiteReport("reparam", seed)
    for n in n_values:
        w_fold = w_scale = w_shift = 0.0
        for _ in range(paths):
            phi = random_pl_path(rng, space, BASED)
            loop = random_pl_path(rng, space, LOOP)
            pn = evaluate_fibration(phi, "p", n)
            w_fold = max(w_fold, _worst(evaluate_fibration(loop_fold(phi, n), "q", n), pn, space))
            w_scale = max(w_scale, _worst(
                evaluate_fibration(prefix_scale(loop, Fraction(n, n + 1)), "p", n),
                evaluate_fibration(loop, "q", n), space))
            if n >= 2:
                w_shift = max(w_shift, _worst(evaluate_fibration(shift_embed(phi, n), "P", n), pn, space))
        rep.checks.append(Check(f"q_{n} o loop_fold = p_{n}", w_fold, REPARAM_TOL))
        rep.checks.append(Check(f"p_{n} o prefix_scale = q_{n}", w_scale, REPARAM_TOL))
        if n >= 2:
            rep.checks.append(Check(f"P_{n} o shift_embed = p_{n}", w_shift, REPARAM_TOL))
    return rep


def smooth_lifting_data(rng: np.random.Generator, n: int, dim: int = 2):
    """Random smooth G(y,s), h_i(y,t) on I x I satisfying the compatibility condition."""
    space = Euclidean(dim)
    x0 = np.zeros(dim)
    a = rng.normal(size=(3, dim))
    fr = rng.uniform(0.5, 3.0, size=3)
    b = rng.normal(size=(n, 2, dim))

    def vG(y, s):
        y = np.asarray(y, float)[..., None]
        s = np.asarray(s, float)[..., None]
        return x0 + s * (a[0] + a[1] * np.sin(fr[0] * y + fr[1] * s) + a[2] * np.cos(fr[2] * y * s))

    def make_h(i):
        def vh(y, t):
            yy = np.asarray(y, float)
            tt = np.asarray(t, float)[..., None]
            return vG(yy, np.full_like(yy, i / n)) + tt * (b[i - 1, 0] + b[i - 1, 1] * np.sin(2 * yy[..., None] + tt))
        return vh

    Gp = PathMap(lambda y, s: vG(float(y), float(s)), space, 2, vfunc=vG)
    hs = []
    for i in range(1, n + 1):
        vh = make_h(i)
        hs.append(PathMap((lambda vh: lambda y, t: vh(float(y), float(t)))(vh), space, 2, vfunc=vh))
    return Gp, hs, x0


def collar_level(n: int) -> int:
    """Coarsest dyadic level whose spacing is below the collar scale 1/(5n)."""
    level = 1
    while (1 << level) < 5 * n:
        level += 1
    return level


def lift_suite(seed: int = 0, n_values=(2, 3), levels: int = 5, y_ticks: int = 65,
               t_ticks: int = 65, s_per_segment: int = 16) -> SuiteReport:
    """Boundary identities of the lifting extension on a y x t x s grid, plus continuity."""
    rng = np.random.default_rng(seed)
    rep = SuiteReport("lift", seed)
    for n in n_values:
        G, hs, x0 = smooth_lifting_data(rng, n)
        H = lift_extend(G, hs, n, x0)
        sp = G.space
        ys = [Fraction(k, y_ticks - 1) for k in range(y_ticks)]
        ts = [Fraction(k, t_ticks - 1) for k in range(t_ticks)]
        ss = [Fraction(k, s_per_segment * n) for k in range(s_per_segment * n + 1)]
        w0 = max(_worst(H(y, 0, s), G(y, s), sp) for y in ys for s in ss)
        wb = max(_worst(H(y, t, 0), x0, sp) for y in ys for t in ts)
        wi = max(
            _worst(H(y, t, Fraction(i, n)), hs[i - 1](y, t), sp)
            for y in ys for t in ts for i in range(1, n + 1)
        )
        rep.checks.append(Check(f"n={n}: H(y,0,s) = G(y,s)", w0, LIFT_TOL))
        rep.checks.append(Check(f"n={n}: H(y,t,0) = x0", wb, LIFT_TOL))
        rep.checks.append(Check(f"n={n}: H(y,t,i/n) = h_i(y,t)", wi, LIFT_TOL))
        start = collar_level(n)
        cont = check_continuity(H, levels, start_level=start)
        gaps = ", ".join(f"{g:.3g}" for g in cont.max_gaps)
        # encode pass/fail as 0/1 against tolerance 0
        rep.checks.append(Check(
            f"n={n}: continuity gaps strictly decrease", 0.0 if cont.strictly_decreasing else 1.0, 0.0,
            f"max gaps at levels {start}..{start + levels - 1}: {gaps}",
        ))
    return rep


def section_suite(seed: int = 0, tuples: int = 100, n_values=(2, 3, 4), dim: int = 3) -> SuiteReport:
    """p_n o s' = id for the transported straight-line section under the identity homotopy."""
    rng = np.random.default_rng(seed)
    space = Euclidean(dim)
    x0 = np.zeros(dim)
    ident = lambda x: np.asarray(x, float)  # noqa: E731
    H = lambda x, t: np.asarray(x, float)  # noqa: E731
    phi = PathMap(lambda t: x0, space, 1, BASED, x0)
    rep = SuiteReport("section", seed)
    for n in n_values:
        s = lambda ys: linear_path([x0, *ys], space, BASED, x0)  # noqa: E731
        s_prime = transport_section(s, ident, ident, H, phi, n, x0, x0, space)
        worst = 0.0
        for _ in range(tuples):
            xs = rng.normal(size=(n, dim))
            path = s_prime(xs)
            worst = max(worst, _worst(evaluate_fibration(path, "p", n), xs, space),
                        _worst(path(0), x0, space))
        rep.checks.append(Check(f"n={n}: p_n o s' = id", worst, SECTION_TOL,
                                f"parameters {[str(t) for t in fibration_parameters('p', n)]}"))
    return rep


SUITES = {"reparam": reparam_suite, "lift": lift_suite, "section": section_suite}


def run_suite(name: str, seed: int = 0, levels: int = 5) -> SuiteReport:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; choose from {sorted(SUITES)}")
    if name == "lift":
        return lift_suite(seed, levels=levels)
    return SUITES[name](seed)


# re-exported for callers that only need the tolerance
__all__ = ["Check", "SuiteReport", "run_suite", "reparam_suite", "lift_suite", "section_suite",
           "smooth_lifting_data", "COMPAT_TOL"]
