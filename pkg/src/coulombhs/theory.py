"""Gauge theory descriptions and the monopole dimension function.

A theory is a gauge root datum, a negation-closed multiset of matter
weights (optionally carrying charges under a flavor root datum), and the
optional flavor datum itself.  The central quantity is twice the scaling
dimension of the monopole operator of a magnetic charge ``lam``::

    dim2(lam) = -2 sum_{alpha > 0} |<alpha, lam>|
                + 1/2 sum_{weights w} |<w_gauge, lam> + <w_flavor, lam_F>|

where the matter sum runs over the full negation-closed complex weight
multiset (equivalently, twice the sum over a quaternionic basis).  The
value is always an integer for a genuine quaternionic representation;
half-integer results are rejected rather than silently halved.

Classification into good / ugly / bad theories is exact: the minimal slope
of ``dim2`` over nonzero dominant real directions is computed by vertex
enumeration of the matter hyperplane arrangement inside the unit sup-norm
box, and the minimum over nonzero lattice charges is then pinned down by a
finite scan whose radius the slope certifies.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

from . import rootdata
from .rootdata import RootDatum, dot, sup_norm


GOOD = "Good"
UGLY = "Ugly"
BAD = "Bad"


class TheoryError(ValueError):
    """Inconsistent theory data or an invalid query against it."""


class BadTheoryError(TheoryError):
    """The monopole formula diverges: some nonzero charge has dim2 <= 0."""

    def __init__(self, classification):
        self.classification = classification
        witness = classification.witness
        dim2 = classification.min_dim2
        super().__init__(
            f"bad theory: witness charge {witness} has twice-dimension {dim2}"
        )


class MatterWeights:
    """A negation-closed multiset of (gauge weight, flavor weight) pairs.

    The closure requirement is the quaternionic structure: a basis vector
    and its j-image carry opposite weights, so weights must come in +/-
    pairs, and the zero weight must appear an even number of times.
    """

    def __init__(self, gauge_rank, flavor_rank, entries):
        self.gauge_rank = int(gauge_rank)
        self.flavor_rank = int(flavor_rank)
        table = {}
        for gauge_w, flavor_w, mult in entries:
            gauge_w = tuple(int(x) for x in gauge_w)
            flavor_w = tuple(int(x) for x in flavor_w)
            if len(gauge_w) != self.gauge_rank:
                raise TheoryError("gauge weight length does not match the gauge rank")
            if len(flavor_w) != self.flavor_rank:
                raise TheoryError("flavor weight length does not match the flavor rank")
            mult = int(mult)
            if mult <= 0:
                raise TheoryError("weight multiplicities must be positive")
            key = (gauge_w, flavor_w)
            table[key] = table.get(key, 0) + mult
        self._table = table
        self._validate_closure()

    def _validate_closure(self):
        zero = ((0,) * self.gauge_rank, (0,) * self.flavor_rank)
        for (gw, fw), mult in self._table.items():
            neg = (tuple(-x for x in gw), tuple(-x for x in fw))
            if (gw, fw) == zero:
                if mult % 2:
                    raise TheoryError(
                        "zero weight with odd multiplicity: half-hypermultiplets "
                        "are not supported"
                    )
            elif self._table.get(neg, 0) != mult:
                raise TheoryError(
                    f"weight multiset is not closed under negation at {gw}|{fw}"
                )

    def items(self):
        return sorted(self._table.items())

    def __len__(self):
        return sum(self._table.values())

    def __eq__(self, other):
        return (
            isinstance(other, MatterWeights)
            and self.gauge_rank == other.gauge_rank
            and self.flavor_rank == other.flavor_rank
            and self._table == other._table
        )

    def multiplicity(self, gauge_w, flavor_w=None):
        flavor_w = flavor_w if flavor_w is not None else (0,) * self.flavor_rank
        return self._table.get((tuple(gauge_w), tuple(flavor_w)), 0)

    @property
    def has_flavor_charges(self):
        return any(any(fw) for (_gw, fw) in self._table)

    def quaternionic_basis(self):
        """One representative per +/- pair, ``(gauge_w, flavor_w, mult)``.

        The lexicographically positive member of each pair is kept; the zero
        weight contributes half its multiplicity.
        """
        zero = ((0,) * self.gauge_rank, (0,) * self.flavor_rank)
        reps = []
        for (gw, fw), mult in self.items():
            if (gw, fw) == zero:
                if mult:
                    reps.append((gw, fw, mult // 2))
            else:
                neg = (tuple(-x for x in gw), tuple(-x for x in fw))
                if (gw, fw) < neg:
                    continue
                reps.append((gw, fw, mult))
        return reps

    def without_free_hypers(self):
        """Drop weights whose gauge and flavor parts are both zero."""
        zero = ((0,) * self.gauge_rank, (0,) * self.flavor_rank)
        entries = [
            (gw, fw, mult) for (gw, fw), mult in self.items() if (gw, fw) != zero
        ]
        return MatterWeights(self.gauge_rank, self.flavor_rank, entries)


class GaugeTheory:
    """A gauge root datum with quaternionic matter and optional flavor datum."""

    def __init__(self, gauge, matter, flavor=None, label=""):
        if not isinstance(gauge, RootDatum):
            raise TheoryError("gauge must be a RootDatum")
        if flavor is not None and not isinstance(flavor, RootDatum):
            raise TheoryError("flavor must be a RootDatum or None")
        flavor_rank = flavor.rank if flavor is not None else 0
        if matter.gauge_rank != gauge.rank or matter.flavor_rank != flavor_rank:
            raise TheoryError("matter weight lengths do not match the group ranks")
        if flavor is None and matter.has_flavor_charges:
            raise TheoryError("matter carries flavor charges but no flavor datum is given")
        self.gauge = gauge
        self.matter = matter
        self.flavor = flavor
        self.label = label or gauge.label
        self._classification = None

    def __eq__(self, other):
        return (
            isinstance(other, GaugeTheory)
            and self.gauge == other.gauge
            and self.matter == other.matter
            and self.flavor == other.flavor
        )

    def __repr__(self):
        return f"<GaugeTheory {self.label}: {len(self.matter)} weights>"

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_classification"] = None
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)


def monopole_dimension(th, charge, background=None):
    """Twice the scaling dimension of the monopole operator of ``charge``.

    ``background`` is a coweight of the flavor datum; it is required exactly
    when the matter carries flavor charges.  The result is always an integer
    (returned doubled so no rationals are needed).
    """
    charge = th.gauge.check_coweight(charge)
    if th.matter.has_flavor_charges:
        if background is None:
            raise TheoryError("matter carries flavor charges: a background flux is required")
        background = th.flavor.check_coweight(background)
    elif background is not None and th.flavor is not None:
        background = th.flavor.check_coweight(background)

    vector = sum(abs(dot(alpha, charge)) for alpha in th.gauge.positive_roots)
    matter = 0
    for (gw, fw), mult in th.matter.items():
        pairing = dot(gw, charge)
        if background is not None:
            pairing += dot(fw, background)
        matter += mult * abs(pairing)
    if matter % 2:
        raise TheoryError(
            "matter contribution is half-integral: weight list is not quaternionic"
        )
    return matter // 2 - 2 * vector


# ---------------------------------------------------------------------------
# Builders


def build_quiver(vertices, edges, dims, framing=None, flavored=False):
    """Gauge theory of a quiver with dimension vector ``dims`` and framing.

    ``vertices`` fixes the coordinate order; ``edges`` is a list of
    ``(tail, head)`` pairs, loops allowed.  Each edge contributes the
    bifundamental and its conjugate; each framed vertex contributes
    fundamentals.  With ``flavored=True`` the framing group ``prod u(w_i)``
    is attached as a flavor datum and the fundamentals are charged under it.
    """
    vertices = list(vertices)
    if len(set(vertices)) != len(vertices):
        raise TheoryError("duplicate quiver vertices")
    dims = dict(dims)
    framing = dict(framing or {})
    for v in itertools.chain(dims, framing):
        if v not in vertices:
            raise TheoryError(f"unknown vertex {v!r} in quiver data")
    for a, b in edges:
        if a not in vertices or b not in vertices:
            raise TheoryError(f"edge ({a!r}, {b!r}) mentions an unknown vertex")

    ranks = [int(dims.get(v, 0)) for v in vertices]
    if any(r < 1 for r in ranks):
        raise TheoryError("every quiver vertex needs dimension >= 1")
    w_dims = [int(framing.get(v, 0)) for v in vertices]
    if any(w < 0 for w in w_dims):
        raise TheoryError("framing dimensions must be nonnegative")

    gauge = rootdata.product([rootdata.u(r) for r in ranks])
    offsets = [sum(ranks[:i]) for i in range(len(ranks))]
    total = sum(ranks)

    framed = [i for i, w in enumerate(w_dims) if w > 0]
    if flavored:
        flavor = rootdata.product([rootdata.u(w_dims[i]) for i in framed])
        f_offsets = {}
        pos = 0
        for i in framed:
            f_offsets[i] = pos
            pos += w_dims[i]
        f_rank = pos
    else:
        flavor = None
        f_rank = 0

    def gauge_unit(vertex, p):
        return tuple(
            int(c == offsets[vertex] + p) for c in range(total)
        )

    entries = []
    index = {v: i for i, v in enumerate(vertices)}
    for a, b in edges:
        ia, ib = index[a], index[b]
        for p in range(ranks[ib]):
            for q in range(ranks[ia]):
                weight = tuple(
                    x - y for x, y in zip(gauge_unit(ib, p), gauge_unit(ia, q))
                )
                zero_f = (0,) * f_rank
                entries.append((weight, zero_f, 1))
                entries.append((tuple(-x for x in weight), zero_f, 1))
    for i in framed:
        for p in range(ranks[i]):
            if flavored:
                for q in range(w_dims[i]):
                    fw = tuple(int(c == f_offsets[i] + q) for c in range(f_rank))
                    entries.append((gauge_unit(i, p), tuple(-x for x in fw), 1))
                    entries.append((tuple(-x for x in gauge_unit(i, p)), fw, 1))
            else:
                entries.append((gauge_unit(i, p), (), w_dims[i]))
                entries.append((tuple(-x for x in gauge_unit(i, p)), (), w_dims[i]))

    matter = MatterWeights(total, f_rank, entries)
    name = "quiver(" + ",".join(f"{v}:{r}" for v, r in zip(vertices, ranks)) + ")"
    return GaugeTheory(gauge, matter, flavor, label=name)


def quiver_balance(vertices, edges, dims, framing=None):
    """Per-vertex balance ``w_i - sum_j (2 delta_ij - a_ij) v_j`` and verdict.

    ``a_ij`` counts edges between i and j regardless of orientation, twice
    for loops.  The verdict is whether every balance is >= -1, which is the
    conjectural good-or-ugly test for finite-type quivers.
    """
    vertices = list(vertices)
    index = {v: i for i, v in enumerate(vertices)}
    dims = dict(dims)
    framing = dict(framing or {})
    n = len(vertices)
    adjacency = [[0] * n for _ in range(n)]
    for a, b in edges:
        ia, ib = index[a], index[b]
        adjacency[ia][ib] += 1
        if ia != ib:
            adjacency[ib][ia] += 1
        else:
            adjacency[ia][ia] += 1
    balances = []
    for i, v in enumerate(vertices):
        total = int(framing.get(v, 0))
        for j, w in enumerate(vertices):
            cartan = 2 * int(i == j) - adjacency[i][j]
            total -= cartan * int(dims.get(w, 0))
        balances.append(total)
    return balances, all(b >= -1 for b in balances)


def build_abelian(alpha, background=None):
    """Torus gauge theory of an injective charge matrix with free cokernel.

    ``alpha`` is a ``d x (d - n)`` integer matrix; each row is the gauge
    charge of one hypermultiplet.  Returns the gauge theory together with
    the abelian charge data used by the explicit Coulomb-branch ring.
    """
    from .abelian import AbelianData  # deferred: abelian builds theories too

    data = AbelianData(alpha, background=background)
    gauge = rootdata.torus(data.gauge_rank)
    entries = []
    for row in data.alpha:
        entries.append((row, (), 1))
        entries.append((tuple(-x for x in row), (), 1))
    matter = MatterWeights(data.gauge_rank, 0, entries)
    th = GaugeTheory(gauge, matter, label=f"abelian(d={data.num_hypers})")
    return th, data


def build_so_instanton(N, k):
    """ADHM matter for ``k`` instantons of SO(N): gauge Sp(k).

    The symmetric endomorphism pair contributes two copies of the second
    exterior power of the vector representation; the bifundamental half
    contributes the vector representation with multiplicity N.
    """
    if N < 3 or k < 1:
        raise TheoryError("so-instanton data needs N >= 3 and k >= 1")
    gauge = rootdata.sp(k)
    entries = []
    for copy in range(2):
        for i in range(k):
            for j in range(i + 1, k):
                for si, sj in ((1, 1), (1, -1), (-1, 1), (-1, -1)):
                    weight = tuple(
                        si * int(c == i) + sj * int(c == j) for c in range(k)
                    )
                    entries.append((weight, (), 1))
        entries.append(((0,) * k, (), k))
    for i in range(k):
        entries.append((tuple(int(c == i) for c in range(k)), (), N))
        entries.append((tuple(-int(c == i) for c in range(k)), (), N))
    matter = MatterWeights(k, 0, entries)
    return GaugeTheory(gauge, matter, label=f"so({N})-instantons(k={k})")


def fiber_product(theories):
    """The combined theory whose monopole sum factors through gluing.

    Gauges the shared flavor group: the result has gauge
    ``G_1 x ... x G_r x G_F`` with every constituent weight extended by its
    flavor components, and no flavor datum left over.
    """
    theories = list(theories)
    if not theories:
        raise TheoryError("fiber product needs at least one theory")
    flavor = theories[0].flavor
    if flavor is None:
        raise TheoryError("fiber product needs a common flavor datum")
    for th in theories:
        if th.flavor != flavor:
            raise TheoryError("theories do not share one flavor datum")

    gauge = rootdata.product([th.gauge for th in theories] + [flavor])
    offsets = []
    pos = 0
    for th in theories:
        offsets.append(pos)
        pos += th.gauge.rank
    flavor_offset = pos
    total = pos + flavor.rank

    entries = []
    for th, off in zip(theories, offsets):
        for (gw, fw), mult in th.matter.items():
            combined = [0] * total
            combined[off:off + len(gw)] = gw
            combined[flavor_offset:] = fw
            entries.append((tuple(combined), (), mult))
    matter = MatterWeights(total, 0, entries)
    label = " * ".join(th.label for th in theories)
    return GaugeTheory(gauge, matter, label=f"glued({label})")


# ---------------------------------------------------------------------------
# Classification


@dataclass(frozen=True)
class Classification:
    """Good/ugly/bad verdict with the exact slope and a witness charge.

    ``slope`` is the minimum of dim2 over real dominant directions of unit
    sup-norm; ``min_dim2`` the minimum over nonzero lattice charges (for bad
    theories, the value at the witness).  ``bounded_search`` marks verdicts
    obtained from a user-capped lattice scan instead of the exact slope.
    """

    verdict: str
    min_dim2: object
    witness: object
    slope: object = None
    bounded_search: bool = False

    def describe(self):
        if self.verdict == GOOD and self.witness is None:
            return "Good (no nonzero charges)"
        tag = " (bounded search)" if self.bounded_search else ""
        return (
            f"{self.verdict}{tag}, witness charge {self.witness}, "
            f"twice-dimension {self.min_dim2}"
        )


MAX_VERTEX_SYSTEMS = 2 ** 20


def _dim2_zero_background(th, lam):
    """Dimension with any flavor background switched off (classification view)."""
    zero = (0,) * th.flavor.rank if th.flavor is not None else None
    return monopole_dimension(th, lam, zero)


def _solve_fraction(rows, rhs):
    """Exact solve of a square system; None if singular."""
    n = len(rows)
    aug = [[Fraction(x) for x in row] + [Fraction(b)] for row, b in zip(rows, rhs)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if aug[r][col] != 0), None)
        if pivot is None:
            return None
        aug[col], aug[pivot] = aug[pivot], aug[col]
        inv = 1 / aug[col][col]
        aug[col] = [x * inv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                factor = aug[r][col]
                aug[r] = [x - factor * y for x, y in zip(aug[r], aug[col])]
    return [aug[r][n] for r in range(n)]


def _dimension_gradient_terms(th):
    """Matter functionals grouped by primitive direction, plus the root term."""
    directions = {}
    for (gw, _fw), mult in th.matter.items():
        if not any(gw):
            continue
        g = math.gcd(*(abs(x) for x in gw))
        prim = tuple(x // g for x in gw)
        if prim < tuple(-x for x in prim):
            prim = tuple(-x for x in prim)
        directions[prim] = directions.get(prim, 0) + Fraction(mult * g, 2)
    return directions


def _dim2_real(th, point, directions):
    value = Fraction(0)
    for alpha in th.gauge.positive_roots:
        value -= 2 * abs(sum(a * x for a, x in zip(alpha, point)))
    for prim, coeff in directions.items():
        value += coeff * abs(sum(a * x for a, x in zip(prim, point)))
    return value


def _slope_by_vertices(th):
    """Exact minimal slope of dim2 over nonzero dominant directions.

    Enumerates the vertices of the polyhedral complex cut out on the unit
    sup-norm box of the dominant cone by the matter hyperplanes; the
    piecewise-linear dim2 attains its directional minimum at one of them.
    Returns ``(slope, witness_direction)`` or None when the rank is zero.
    """
    r = th.gauge.rank
    if r == 0:
        return None
    directions = _dimension_gradient_terms(th)
    hyperplanes = [(alpha, 0) for alpha in th.gauge.simple_roots]
    hyperplanes += [(prim, 0) for prim in sorted(directions)]
    for c in range(r):
        unit = tuple(int(i == c) for i in range(r))
        hyperplanes.append((unit, 1))
        hyperplanes.append((unit, -1))

    n_systems = math.comb(len(hyperplanes), r)
    if n_systems > MAX_VERTEX_SYSTEMS:
        raise TheoryError(
            f"slope computation needs {n_systems} vertex systems (> {MAX_VERTEX_SYSTEMS}); "
            "pass search_radius to classify with a bounded scan"
        )

    best = None
    seen = set()
    for subset in itertools.combinations(hyperplanes, r):
        point = _solve_fraction([h[0] for h in subset], [h[1] for h in subset])
        if point is None or all(x == 0 for x in point):
            continue
        key = tuple(point)
        if key in seen:
            continue
        seen.add(key)
        if any(abs(x) > 1 for x in point):
            continue
        if any(
            sum(a * x for a, x in zip(alpha, point)) < 0
            for alpha in th.gauge.simple_roots
        ):
            continue
        value = _dim2_real(th, point, directions)
        if best is None or value < best[0]:
            best = (value, point)
    if best is None:  # pragma: no cover - the box always has nonzero vertices
        raise TheoryError("vertex enumeration found no directions")
    return best


def _integer_direction(point):
    denominators = [Fraction(x).denominator for x in point]
    scale = math.lcm(*denominators)
    vec = [int(x * scale) for x in point]
    g = math.gcd(*(abs(v) for v in vec))
    return tuple(v // g for v in vec)


def classify(th, search_radius=None):
    """Exact good/ugly/bad classification of a gauge theory.

    With ``search_radius`` the verdict comes from a lattice scan of that
    sup-norm radius only (marked ``bounded_search``); otherwise the exact
    chamber slope certifies both the verdict and the scan radius.
    """
    if th._classification is not None and search_radius is None:
        return th._classification

    if th.gauge.rank == 0:
        result = Classification(GOOD, None, None, slope=None)
        th._classification = result
        return result

    if search_radius is not None:
        best = None
        for lam in rootdata.dominant_box_points(th.gauge, search_radius):
            if not any(lam):
                continue
            value = _dim2_zero_background(th, lam)
            if best is None or value < best[0]:
                best = (value, lam)
        if best is None:
            raise TheoryError("no nonzero dominant charges in the search box")
        verdict = GOOD if best[0] > 1 else (UGLY if best[0] == 1 else BAD)
        return Classification(verdict, best[0], best[1], bounded_search=True)

    slope, direction = _slope_by_vertices(th)
    if slope <= 0:
        witness = _integer_direction(direction)
        witness = th.gauge.to_dominant(witness)
        result = Classification(BAD, _dim2_zero_background(th, witness), witness, slope=slope)
        th._classification = result
        return result

    # slope > 0: the lattice minimum is certified once the next shell
    # cannot go below the best value found so far
    best = None
    radius = 0
    while True:
        radius += 1
        if radius > 10_000:  # pragma: no cover - the slope bound terminates first
            raise TheoryError("lattice scan failed to terminate")
        for lam in rootdata.dominant_box_points(th.gauge, radius):
            if not any(lam) or sup_norm(lam) < radius:
                continue
            value = _dim2_zero_background(th, lam)
            if best is None or value < best[0]:
                best = (value, lam)
        if best is not None and slope * (radius + 1) >= best[0]:
            break
    verdict = GOOD if best[0] > 1 else UGLY
    result = Classification(verdict, best[0], best[1], slope=slope)
    th._classification = result
    return result
