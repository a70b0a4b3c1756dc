"""End-to-end acceptance criteria, one test per criterion.

Each test prints a single ``criterion N: PASS|FAIL`` line (collected again
in the terminal summary) and then asserts at the stated tolerance.
Run standalone with ``python tests/test_acceptance.py``.
"""

import itertools
import random
import time

from basedtc.algebra import Element
from basedtc.bounds import default_grid, space_table, tc_table
from basedtc.catalog import parse_designator, space
from basedtc.checks import lift_suite, reparam_suite, section_suite
from basedtc.cuplength import DIRECT, FACTORIZED, cup_length_power
from basedtc.quotient import _enumerate, is_zero_in_quotient


def test_criterion_1_table(acceptance_line):
    start = time.perf_counter()
    cells = tc_table(default_grid(), 4)
    elapsed = time.perf_counter() - start
    bad = [f"{c.space} n={c.n}: [{c.lower},{c.upper}] want {c.expected}" for c in cells if not c.matches]
    ok = not bad and len(cells) == 184 and elapsed < 120
    acceptance_line(1, ok, f"{len(cells) - len(bad)}/{len(cells)} tc_n cells resolved and exact, {elapsed:.2f}s"
                    + (f"; mismatches: {bad[:5]}" if bad else ""))
    assert ok


ORACLE_CASES = (
    [(f"sphere:{m}", n) for m in (1, 2, 3) for n in (1, 2, 3)]
    + [(f"rp:{m}", 2) for m in (1, 2, 3)]
    + [("torus-sum:1", 2), ("proj-sum:2", 2), ("conf:2:3", 2), ("conf:3:3", 2)]
)


def test_criterion_2_direct_equals_factorized(acceptance_line):
    failures = []
    slowest = 0.0
    for designator, n in ORACLE_CASES:
        p = parse_designator(designator).presentation
        start = time.perf_counter()
        direct = cup_length_power(p, n, DIRECT).cup_length
        took = time.perf_counter() - start
        slowest = max(slowest, took)
        fact = cup_length_power(p, n, FACTORIZED).cup_length
        if direct != fact or took >= 60:
            failures.append(f"{designator} n={n}: direct {direct}, factorized {fact}, {took:.1f}s")
    ok = not failures
    acceptance_line(2, ok, f"{len(ORACLE_CASES) - len(failures)}/{len(ORACLE_CASES)} cases agree, "
                    f"slowest direct search {slowest:.2f}s" + (f"; {failures}" if failures else ""))
    assert ok


def test_criterion_3_arnold(acceptance_line):
    checks = []
    for m in (2, 3):
        p = space("conf", m, 3).presentation
        z = lambda text, trunc=True: is_zero_in_quotient(p.parse(text), p, truncate=trunc)  # noqa: E731
        checks += [
            (f"F(R^{m},3) a12*a23 != 0", not z("a12*a23")),
            (f"F(R^{m},3) a12*a13 != 0", not z("a12*a13")),
            (f"F(R^{m},3) a12*a23*a13 = 0", z("a12*a23*a13")),
            # above the top degree the truncation alone kills it; check the ideal does too
            (f"F(R^{m},3) a12*a23*a13 in ideal", z("a12*a23*a13", False)),
        ]
        q = space("conf", m, 4).presentation
        checks.append((f"F(R^{m},4) a12*a23*a34 != 0", not is_zero_in_quotient(q.parse("a12*a23*a34"), q)))
        A = q.algebra
        k = len(q.generators)
        fourfold_zero = fourfold_ideal = True
        for combo in itertools.combinations_with_replacement(range(k), 4):
            x = A.untruncated().one()
            for i in combo:
                x = x * A.untruncated().gen(i)
            fourfold_zero &= is_zero_in_quotient(x.in_algebra(A), q)
            fourfold_ideal &= is_zero_in_quotient(x, q, truncate=False)
        checks.append((f"F(R^{m},4) every 4-fold product = 0", fourfold_zero))
        checks.append((f"F(R^{m},4) every 4-fold product in ideal", fourfold_ideal))
    bad = [name for name, good in checks if not good]
    acceptance_line(3, not bad, f"{len(checks) - len(bad)}/{len(checks)} Arnold checks" + (f"; failed {bad}" if bad else ""))
    assert not bad


def test_criterion_4_sandwich(acceptance_line):
    bad = []
    for m in range(1, 5):
        t = space_table(space("sphere", m), 4)
        for n in (2, 3, 4):
            if t.interval("TC", n) != (n, n + 1):
                bad.append(f"sphere:{m} TC_{n} = {t.interval('TC', n)}")
    grid = default_grid()
    for d in grid:
        t = space_table(parse_designator(d), 4)
        for n in range(1, 5):
            if t.interval("ltc", n) != t.interval("tc", n):
                bad.append(f"{d} ltc_{n} != tc_{n}")
            if n >= 2 and t.interval("LTC", n) != t.interval("TC", n):
                bad.append(f"{d} LTC_{n} != TC_{n}")
    acceptance_line(4, not bad, f"sphere TC_n = [n,n+1] for n=2..4, ltc/LTC = tc/TC on {len(grid)} spaces"
                    + (f"; {bad[:5]}" if bad else ""))
    assert not bad


def _sampler(p, rng):
    A = p.algebra
    bydeg = {d: _enumerate(A.degrees, d, A.exterior) for d in range(p.top_degree + 1)}
    degs = [d for d, ms in bydeg.items() if ms]
    # prefer degree triples whose products stay within the top degree
    triples = [t for t in itertools.product(degs, repeat=3) if sum(t) <= p.top_degree] or \
        list(itertools.product(degs, repeat=3))

    def element(d):
        ms = bydeg[d]
        chosen = rng.sample(ms, min(len(ms), rng.randint(1, 3)))
        return Element.from_dict(A, {m: rng.randint(-5, 5) or 1 for m in chosen})

    def triple():
        ds = rng.choice(triples)
        return [(element(d), d) for d in ds]

    return triple


def test_criterion_5_algebra_laws(acceptance_line):
    rng = random.Random(2024)
    grid = default_grid()
    failures = []
    samples = nonzero = 0
    for d in grid:
        p = parse_designator(d).presentation
        triple = _sampler(p, rng)
        for _ in range(1000):
            (x, a), (y, b), (z, _c) = triple()
            samples += 1
            xy = x * y
            nonzero += not xy.is_zero()
            if xy != (y * x).scale((-1) ** (a * b)):
                failures.append(f"{d}: commutativity")
            if xy * z != x * (y * z):
                failures.append(f"{d}: associativity")
            if x * (y + z) != xy + x * z or (y + z) * x != y * x + z * x:
                failures.append(f"{d}: distributivity")
    acceptance_line(5, not failures, f"{samples} triples over {len(grid)} presentations "
                    f"({nonzero} with nonzero x*y), exact canonical forms" + (f"; {failures[:5]}" if failures else ""))
    assert not failures


def _suite_line(num, rep, acceptance_line, summary):
    worst = {c.name: c.worst for c in rep.checks}
    failed = [f"{c.name}: {c.worst:.3g} > {c.tol:g} {c.detail}" for c in rep.checks if not c.ok]
    acceptance_line(num, rep.passed, summary(worst) + (f"; {failed}" if failed else ""))
    assert rep.passed, failed


def test_criterion_6_reparametrizations(acceptance_line):
    rep = reparam_suite(seed=0, paths=100, n_values=range(1, 6))
    _suite_line(6, rep, acceptance_line,
                lambda w: f"{len(w)} identities on 100 random paths each, worst error {max(w.values()):.3g} (tol 1e-12)")


def test_criterion_7_lifting_extension(acceptance_line):
    rep = lift_suite(seed=0, n_values=(2, 3), levels=5)
    boundary = max(c.worst for c in rep.checks if "continuity" not in c.name)
    gaps = "; ".join(f"{c.name.split(':')[0]} {c.detail}" for c in rep.checks if "continuity" in c.name)
    _suite_line(7, rep, acceptance_line,
                lambda w: f"boundary identities worst {boundary:.3g} (tol 1e-9); continuity {gaps}")


def test_criterion_8_section_transport(acceptance_line):
    rep = section_suite(seed=0, tuples=100, n_values=(2, 3, 4))
    _suite_line(8, rep, acceptance_line,
                lambda w: f"p_n o s' = id on 100 tuples for n=2,3,4, worst error {max(w.values()):.3g} (tol 1e-12)")


if __name__ == "__main__":
    import sys

    import pytest

    sys.exit(pytest.main([__file__, "-q"]))
