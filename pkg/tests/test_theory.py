import random

import pytest

from coulombhs import rootdata
from coulombhs.theory import (
    BAD,
    GOOD,
    UGLY,
    GaugeTheory,
    MatterWeights,
    TheoryError,
    build_abelian,
    build_quiver,
    build_so_instanton,
    classify,
    fiber_product,
    monopole_dimension,
    quiver_balance,
)


def sqcd_u1(num_flavors):
    matter = MatterWeights(1, 0, [((1,), (), num_flavors), ((-1,), (), num_flavors)])
    return GaugeTheory(rootdata.torus(1), matter, label=f"u1-{num_flavors}f")


def pure(datum):
    return GaugeTheory(datum, MatterWeights(datum.rank, 0, []))


def test_dimension_u1_one_flavor():
    th = sqcd_u1(1)
    for m in range(-5, 6):
        assert monopole_dimension(th, (m,)) == abs(m)


def test_dimension_u1_n_flavors():
    for n in (2, 3, 7):
        th = sqcd_u1(n)
        for m in range(-4, 5):
            assert monopole_dimension(th, (m,)) == n * abs(m)


def jordan(rank, num_flavors):
    return build_quiver(["v"], [("v", "v")], {"v": rank}, {"v": num_flavors})


def test_dimension_adjoint_plus_fundamentals():
    # the adjoint cancels the vector multiplet; fundamentals give N sum |lam_i|
    rng = random.Random(5)
    for rank, flavors in [(2, 1), (2, 3), (3, 2)]:
        th = jordan(rank, flavors)
        for _ in range(20):
            lam = tuple(rng.randrange(-3, 4) for _ in range(rank))
            assert monopole_dimension(th, lam) == flavors * sum(abs(x) for x in lam)


def test_dimension_pure_su2():
    th = pure(rootdata.su(2))
    for a in range(0, 5):
        assert monopole_dimension(th, (a,)) == -4 * a


def test_dimension_is_weyl_invariant_and_homogeneous():
    rng = random.Random(99)
    th = build_quiver(["a", "b"], [("a", "b")], {"a": 2, "b": 1}, {"a": 2})
    datum = th.gauge
    for _ in range(30):
        lam = tuple(rng.randrange(-3, 4) for _ in range(datum.rank))
        value = monopole_dimension(th, lam)
        assert monopole_dimension(th, datum.to_dominant(lam)) == value
        for c in (0, 1, 2, 5):
            scaled = tuple(c * x for x in lam)
            assert monopole_dimension(th, scaled) == c * value


def test_zero_weight_pair_is_invisible():
    base = MatterWeights(1, 0, [((1,), (), 2), ((-1,), (), 2)])
    padded = MatterWeights(1, 0, [((1,), (), 2), ((-1,), (), 2), ((0,), (), 2)])
    th1 = GaugeTheory(rootdata.torus(1), base)
    th2 = GaugeTheory(rootdata.torus(1), padded)
    for m in range(-4, 5):
        assert monopole_dimension(th1, (m,)) == monopole_dimension(th2, (m,))


def test_half_hypermultiplets_rejected():
    with pytest.raises(TheoryError):
        MatterWeights(1, 0, [((1,), (), 1)])  # missing the negation partner
    with pytest.raises(TheoryError):
        MatterWeights(1, 0, [((0,), (), 3)])  # odd zero multiplicity
    with pytest.raises(TheoryError):
        MatterWeights(1, 0, [((1,), (), 2), ((-1,), (), 1)])


def test_flavor_background_requirements():
    matter = MatterWeights(1, 1, [((1,), (1,), 1), ((-1,), (-1,), 1)])
    th = GaugeTheory(rootdata.torus(1), matter, flavor=rootdata.torus(1))
    with pytest.raises(TheoryError):
        monopole_dimension(th, (1,))
    assert monopole_dimension(th, (1,), (0,)) == 1
    assert monopole_dimension(th, (0,), (2,)) == 2
    with pytest.raises(TheoryError):
        GaugeTheory(rootdata.torus(1), matter)  # flavor charges, no flavor datum


# -- builders ----------------------------------------------------------------


def test_build_quiver_jordan():
    th = jordan(3, 2)
    assert th.gauge.rank == 3
    assert th.gauge.positive_roots == rootdata.u(3).positive_roots
    # adjoint: two copies of all e_p - e_q; fundamentals: +-e_p with mult 2
    assert th.matter.multiplicity((1, -1, 0)) == 2
    assert th.matter.multiplicity((0, 0, 0)) == 6
    assert th.matter.multiplicity((1, 0, 0)) == 2
    assert len(th.matter) == 2 * 9 + 2 * 3 * 2


def test_build_quiver_a1_framed():
    th = build_quiver(["v"], [], {"v": 1}, {"v": 2})
    assert th.gauge.rank == 1
    assert th.matter.multiplicity((1,)) == 2
    assert th.matter.multiplicity((-1,)) == 2


def test_build_quiver_affine_with_central_framing():
    # affine A_3 cycle with one framed node
    n = 4
    vertices = [f"n{i}" for i in range(n)]
    edges = [(vertices[i], vertices[(i + 1) % n]) for i in range(n)]
    th = build_quiver(vertices, edges, {v: 1 for v in vertices}, {vertices[0]: 2})
    assert th.gauge.rank == n
    balances, ok = quiver_balance(
        vertices, edges, {v: 1 for v in vertices}, {vertices[0]: 2}
    )
    # every vertex has two neighbors: 2*1 - (2*1 - 2) = 0 framing, +2 at node 0
    assert balances == [2, 0, 0, 0]
    assert ok


def test_build_quiver_flavored_framing():
    th = build_quiver(["v"], [], {"v": 1}, {"v": 3}, flavored=True)
    assert th.flavor is not None and th.flavor.rank == 3
    assert th.matter.has_flavor_charges
    assert th.matter.multiplicity((1,), (0, -1, 0)) == 1
    # zero background reproduces the unflavored dimensions
    plain = build_quiver(["v"], [], {"v": 1}, {"v": 3})
    for m in range(-3, 4):
        assert monopole_dimension(th, (m,), (0, 0, 0)) == monopole_dimension(
            plain, (m,)
        )


def test_quiver_balance_examples():
    balances, ok = quiver_balance(["v"], [("v", "v")], {"v": 5}, {"v": 3})
    assert balances == [3] and ok
    balances, ok = quiver_balance(
        ["a", "b"], [("a", "b")], {"a": 1, "b": 1}, {"a": 2}
    )
    assert balances == [1, -1] and ok
    balances, ok = quiver_balance(["a"], [], {"a": 2}, {"a": 1})
    assert balances == [-3] and not ok


def test_build_abelian_examples():
    th, data = build_abelian([(1,)] * 5)
    assert th.gauge.rank == 1
    for m in range(-3, 4):
        assert monopole_dimension(th, (m,)) == 5 * abs(m)

    th, _ = build_abelian([(1, 0), (0, 1)])
    assert monopole_dimension(th, (2, -3)) == 5

    # a zero row is a free hyper and contributes nothing
    th_free, _ = build_abelian([(1,), (0,)])
    for m in range(-3, 4):
        assert monopole_dimension(th_free, (m,)) == abs(m)


def test_build_abelian_rejections():
    from coulombhs.abelian import AbelianError

    with pytest.raises(AbelianError):
        build_abelian([(0,)])  # not injective
    with pytest.raises(AbelianError):
        build_abelian([(2,)])  # torsion cokernel Z/2
    with pytest.raises(AbelianError):
        build_abelian([(1, 1)])  # more gauge directions than hypers


def test_so_instanton_weight_counts():
    th = build_so_instanton(3, 1)
    assert th.gauge.label == "sp(1)"
    assert th.matter.multiplicity((0,)) == 2
    assert th.matter.multiplicity((1,)) == 3
    assert len(th.matter) == 2 + 6
    # quaternionic dimension count: dim_H M - dim Sp(k) = k (N - 2)
    N, k = 3, 1
    assert len(th.matter) // 2 - k * (2 * k + 1) == k * (N - 2)

    th = build_so_instanton(4, 2)
    assert len(th.matter) == 28

    for N in range(3, 9):
        for k in range(1, 5):
            th = build_so_instanton(N, k)  # construction validates closure
            assert len(th.matter) // 2 - k * (2 * k + 1) == k * (N - 2)


# -- classification ----------------------------------------------------------


def test_classify_examples():
    cls = classify(sqcd_u1(1))
    assert cls.verdict == UGLY and cls.min_dim2 == 1
    assert abs(cls.witness[0]) == 1

    for n in (2, 3, 5):
        cls = classify(sqcd_u1(n))
        assert cls.verdict == GOOD and cls.min_dim2 == n

    cls = classify(pure(rootdata.su(2)))
    assert cls.verdict == BAD
    assert cls.witness == (1,) and cls.min_dim2 == -4


def test_classify_no_matter_quiver_is_bad():
    th = build_quiver(["a", "b"], [], {"a": 2, "b": 1})
    assert classify(th).verdict == BAD


def test_classify_rank_zero_is_good():
    th = GaugeTheory(rootdata.torus(0), MatterWeights(0, 0, []))
    cls = classify(th)
    assert cls.verdict == GOOD and cls.witness is None


def test_classify_bounded_search():
    cls = classify(sqcd_u1(2), search_radius=3)
    assert cls.verdict == GOOD and cls.bounded_search


def test_classify_slope_is_exact_fraction():
    from fractions import Fraction

    th = jordan(2, 3)
    cls = classify(th)
    assert cls.verdict == GOOD
    assert cls.slope == Fraction(3)
    assert cls.min_dim2 == 3


def test_balance_conjecture_against_classify():
    # agreement check on framed finite-type quivers (with no framing at all
    # a diagonal circle decouples and the balance test does not apply)
    samples = [
        (["a"], [], {"a": 1}, {"a": 1}),
        (["a"], [], {"a": 1}, {"a": 2}),
        (["a"], [], {"a": 1}, {"a": 5}),
        (["a", "b"], [("a", "b")], {"a": 1, "b": 1}, {"a": 2}),
        (["a", "b"], [("a", "b")], {"a": 1, "b": 1}, {"a": 2, "b": 1}),
        (["a", "b"], [("a", "b")], {"a": 2, "b": 1}, {"a": 4}),
        (["a", "b", "c"], [("a", "b"), ("b", "c")], {"a": 1, "b": 2, "c": 1},
         {"b": 2}),
        (["a", "b"], [("a", "b")], {"a": 1, "b": 2}, {"b": 3}),
        (["a"], [], {"a": 2}, {"a": 4}),
        (["a", "b"], [("a", "b")], {"a": 2, "b": 2}, {"a": 1}),
    ]
    agreements = 0
    for vertices, edges, dims, framing in samples:
        th = build_quiver(vertices, edges, dims, framing)
        _balances, predicted_ok = quiver_balance(vertices, edges, dims, framing)
        actual_ok = classify(th).verdict in (GOOD, UGLY)
        agreements += predicted_ok == actual_ok
    assert agreements == len(samples)


def test_fiber_product_shares_flavor():
    matter = MatterWeights(1, 1, [((1,), (1,), 1), ((-1,), (-1,), 1)])
    th = GaugeTheory(rootdata.torus(1), matter, flavor=rootdata.torus(1))
    other = GaugeTheory(
        rootdata.torus(1),
        MatterWeights(1, 1, [((1,), (0,), 1), ((-1,), (0,), 1)]),
        flavor=rootdata.torus(1),
    )
    combined = fiber_product([th, other])
    assert combined.gauge.rank == 3
    assert combined.flavor is None
    with pytest.raises(TheoryError):
        fiber_product([th, GaugeTheory(rootdata.torus(1), MatterWeights(1, 0, []))])
