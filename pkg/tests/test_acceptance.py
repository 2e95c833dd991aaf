"""Acceptance criteria, one test per criterion, each printing a verdict line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Every comparison is exact (integer/rational equality); the stated
wall-clock budgets are asserted where the criterion pins one.
"""

import itertools
import random
import time

from coulombhs import rootdata
from coulombhs.abelian import AbelianData, RingElement, ring_hilbert, ring_mul
from coulombhs.monopole import hilbert_series, plan_enumeration
from coulombhs.motivic import term_check
from coulombhs.series import FugacityGroup, TruncatedSeries
from coulombhs.symprod import pe_identity_gap, sym_power_series
from coulombhs.theory import (
    BAD,
    GOOD,
    UGLY,
    GaugeTheory,
    MatterWeights,
    build_abelian,
    build_quiver,
    classify,
    quiver_balance,
)

import oracles


def report(number, ok, detail):
    print(f"acceptance criterion {number}: {'PASS' if ok else 'FAIL'} ({detail})")
    assert ok, f"criterion {number}: {detail}"


def sqcd_u1(num_flavors):
    matter = MatterWeights(
        1, 0, [((1,), (), num_flavors), ((-1,), (), num_flavors)]
    )
    return GaugeTheory(rootdata.torus(1), matter, label=f"u1-{num_flavors}f")


def jordan(rank, num_flavors):
    return build_quiver(["v"], [("v", "v")], {"v": rank}, {"v": num_flavors})


def series_ints(series):
    return [
        series.coefficient(k).sum_of_coefficients()
        for k in range(series.cutoff + 1)
    ]


def test_criterion_1_sqcd_closed_forms():
    start = time.perf_counter()
    cutoff = 24
    for n in range(1, 7):
        numerator = [0] * (2 * n + 1)
        numerator[0], numerator[2 * n] = 1, -1
        expected = oracles.expand_rational(numerator, [2, n, n], cutoff)
        got = series_ints(hilbert_series(sqcd_u1(n), cutoff))
        assert got == expected, f"N={n}"
    elapsed = time.perf_counter() - start
    report(1, elapsed < 1.0, f"N=1..6 exact to t^24 in {elapsed:.3f}s")


def test_criterion_2_taub_nut():
    got = series_ints(hilbert_series(sqcd_u1(1), 24))
    plain_ok = got == [k + 1 for k in range(25)]

    cutoff = 20
    refined = hilbert_series(sqcd_u1(1), cutoff, refine_pi1=True)
    # independent oracle: coefficient of t^k in 1/((1-tz)(1-t/z)) counts
    # pairs (a, b) with a + b = k weighted by z^{a-b}
    expected_dicts = [dict() for _ in range(cutoff + 1)]
    for a in range(cutoff + 1):
        for b in range(cutoff + 1 - a):
            row = expected_dicts[a + b]
            key = (a - b,)
            row[key] = row.get(key, 0) + 1
    expected = TruncatedSeries.from_dicts(
        cutoff, FugacityGroup(free_rank=1), expected_dicts
    )
    refined_ok = refined == expected
    report(2, plain_ok and refined_ok,
           "1/(1-t)^2 to t^24 and refined double-geometric to t^20")


def test_criterion_3_symmetric_products():
    start = time.perf_counter()
    max_rank = 4
    for n in (1, 2, 3):
        gap = pe_identity_gap(n, 16, max_rank)
        assert gap == 0, f"N={n} plethystic gap {gap}"
        for k in range(1, max_rank + 1):
            direct = sym_power_series(n, k, 16)
            engine = hilbert_series(jordan(k, n), 16, refine_pi1=True)
            assert direct == engine, f"N={n} k={k}"
    elapsed = time.perf_counter() - start
    report(3, elapsed < 60.0,
           f"generating identity and engine match, N<=3 k<=4, {elapsed:.1f}s")


def test_criterion_4_abelian_ring():
    for n in range(1, 6):
        data = AbelianData([(1,)] * n)
        product = ring_mul(
            data, RingElement.basis(1, (1,)), RingElement.basis(1, (-1,))
        )
        assert product == RingElement.eta_monomial(1, (n,)), f"xy=z^{n}"

    rng = random.Random(20250811)
    triples = 0
    while triples < 300:
        d = rng.randrange(2, 5)
        g = rng.randrange(1, 3)
        if g >= d:
            continue
        alpha = [tuple(rng.randrange(-2, 3) for _ in range(g)) for _ in range(d)]
        try:
            data = AbelianData(alpha)
        except Exception:
            continue
        lam, mu, nu = (
            tuple(rng.randrange(-3, 4) for _ in range(g)) for _ in range(3)
        )
        a, b, c = (RingElement.basis(g, v) for v in (lam, mu, nu))
        ab = ring_mul(data, a, b)
        assert ab == ring_mul(data, b, a)
        assert ring_mul(data, ab, c) == ring_mul(data, a, ring_mul(data, b, c))
        triples += 1

    for alpha in [[(1,)] * 2, [(1, 0), (0, 1), (1, 1)],
                  [(1, 0), (0, 1), (1, -1), (1, 2)]]:
        data = AbelianData(alpha)
        th, _ = build_abelian(alpha)
        assert ring_hilbert(data, 20) == hilbert_series(th, 20, refine_pi1=True)
    report(4, True, "xy=z^N for N<=5, 300 random triples, ring==engine to t^20")


def test_criterion_5_motivic_oracle():
    start = time.perf_counter()
    cases = 0
    for k in (1, 2, 3):
        datum = rootdata.u(k)
        for lam in itertools.product(range(-3, 4), repeat=k):
            dom = datum.to_dominant(lam)
            assert term_check(datum, dom, route="auto"), (k, lam)
            cases += 1
    elapsed = time.perf_counter() - start
    ok = cases >= 343 + 49 + 7 and elapsed < 10.0
    report(5, ok, f"{cases} charge boxes checked exactly in {elapsed:.2f}s")


def test_criterion_6_stabilizer_degrees():
    data = [
        rootdata.u(1), rootdata.u(2), rootdata.u(3), rootdata.u(4),
        rootdata.su(2), rootdata.su(3), rootdata.su(4), rootdata.su(5),
        rootdata.sp(1), rootdata.sp(2), rootdata.sp(3), rootdata.sp(4),
        rootdata.so_odd(1), rootdata.so_odd(2), rootdata.so_odd(3), rootdata.so_odd(4),
        rootdata.so_even(2), rootdata.so_even(3), rootdata.so_even(4),
        rootdata.torus(1), rootdata.torus(2), rootdata.torus(3), rootdata.torus(4),
    ]
    cases = 0
    for datum in data:
        for lam in itertools.product((0, 1, 2), repeat=datum.rank):
            if not datum.is_dominant(lam):
                continue
            degrees = datum.stabilizer_degrees(lam)
            assert len(degrees) == datum.rank, (datum.label, lam)
            lhs = [1]
            for d in degrees:
                lhs = oracles.poly_mul(lhs, [1] * d)
            assert lhs == oracles.levi_weyl_poincare(datum, lam), (datum.label, lam)
            cases += 1
    report(6, True, f"Weyl Poincare identity on {cases} (type, charge) pairs")


def test_criterion_7_fundamental_groups():
    expectations = [
        (rootdata.u, range(1, 5), (1, ())),
        (rootdata.su, range(2, 6), (0, ())),
        (rootdata.sp, range(1, 5), (0, ())),
        (rootdata.so_odd, range(1, 5), (0, (2,))),
        (rootdata.so_even, range(2, 5), (0, (2,))),
    ]
    for builder, span, (free, torsion) in expectations:
        for n in span:
            datum = builder(n)
            pi1 = datum.fundamental_group()
            assert pi1.group.free_rank == free, datum.label
            assert pi1.group.torsion_orders == torsion, datum.label
            # independent minor-gcd oracle
            s = len(datum.simple_coroots)
            matrix = [
                [datum.simple_coroots[j][i] for j in range(s)]
                for i in range(datum.rank)
            ]
            factors = oracles.invariant_factors_by_minors(matrix) if s else []
            assert tuple(f for f in factors if f >= 2) == pi1.group.torsion_orders
            assert datum.rank - len(factors) == pi1.group.free_rank
    for n in range(1, 5):
        pi1 = rootdata.u(n).fundamental_group()
        for lam in itertools.product(range(-2, 3), repeat=n):
            assert pi1.project(lam) == (sum(lam),)

    samples = [
        sqcd_u1(1), sqcd_u1(2), sqcd_u1(4),
        jordan(2, 1), jordan(2, 2), jordan(3, 1),
        build_quiver(["a", "b"], [("a", "b")], {"a": 1, "b": 1}, {"a": 2}),
        build_quiver(["a", "b"], [("a", "b")], {"a": 2, "b": 1}, {"a": 3}),
        build_abelian([(1, 0), (0, 1), (1, 1)])[0],
        GaugeTheory(
            rootdata.sp(1),
            MatterWeights(1, 0, [((1,), (), 5), ((-1,), (), 5)]),
        ),
    ]
    for th in samples:
        refined = hilbert_series(th, 8, refine_pi1=True)
        assert refined.specialize_fugacities() == hilbert_series(th, 8), th.label
    report(7, True, "SNF oracle, u(n) charge sums, z=1 on 10 sample theories")


def test_criterion_8_classification():
    cls = classify(sqcd_u1(1))
    assert cls.verdict == UGLY and cls.min_dim2 == 1
    for n in (2, 3, 4, 5, 6):
        cls = classify(sqcd_u1(n))
        assert cls.verdict == GOOD and cls.min_dim2 == n
    pure_su2 = GaugeTheory(rootdata.su(2), MatterWeights(1, 0, []))
    assert classify(pure_su2).verdict == BAD

    samples = [
        (["a"], [], {"a": 1}, {"a": 1}),
        (["a"], [], {"a": 1}, {"a": 3}),
        (["a"], [], {"a": 2}, {"a": 4}),
        (["a"], [], {"a": 2}, {"a": 1}),
        (["a", "b"], [("a", "b")], {"a": 1, "b": 1}, {"a": 2}),
        (["a", "b"], [("a", "b")], {"a": 1, "b": 1}, {"a": 1, "b": 1}),
        (["a", "b"], [("a", "b")], {"a": 2, "b": 1}, {"a": 4}),
        (["a", "b"], [("a", "b")], {"a": 2, "b": 2}, {"a": 1}),
        (["a", "b", "c"], [("a", "b"), ("b", "c")],
         {"a": 1, "b": 2, "c": 1}, {"b": 2}),
        (["a", "b", "c"], [("a", "b"), ("b", "c")],
         {"a": 1, "b": 1, "c": 1}, {"a": 1, "c": 1}),
    ]
    agree = 0
    for vertices, edges, dims, framing in samples:
        _balances, predicted = quiver_balance(vertices, edges, dims, framing)
        actual = classify(build_quiver(vertices, edges, dims, framing)).verdict
        agree += predicted == (actual in (GOOD, UGLY))
    # the balance test is conjectural: agreement is reported, not asserted
    report(8, True,
           f"pinned verdicts hold; balance conjecture agrees on {agree}/10 samples")


def test_criterion_9_enumeration_soundness():
    theories = [sqcd_u1(n) for n in range(1, 7)]
    cutoffs = [24] * 6
    for n in (1, 2, 3):
        for k in range(1, 5):
            theories.append(jordan(k, n))
            cutoffs.append(16)
    for alpha in [[(1,)] * n for n in range(1, 6)]:
        theories.append(build_abelian(alpha)[0])
        cutoffs.append(20)
    for th, cutoff in zip(theories, cutoffs):
        plan = plan_enumeration(th, cutoff)
        fast = hilbert_series(th, cutoff)
        slow = hilbert_series(th, cutoff, radius_override=plan.radius + 2)
        assert fast == slow, th.label
    report(9, True, f"radius R+2 brute force matches on {len(theories)} theories")
