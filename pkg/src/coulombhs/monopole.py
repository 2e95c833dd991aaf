"""The monopole-formula engine.

Sums ``z^{J(lam)} t^{dim2(lam)} P(t; lam)`` over dominant magnetic charges,
where ``J`` is the projection to the fundamental group of the gauge group
and ``P`` the dressing factor of the charge's stabilizer.  Enumeration
iterates sup-norm shells of the dominant cone; the shell bound comes from
the exact classification slope (homogeneity of the dimension function makes
the bound sound), and the engine additionally verifies that the first shell
beyond the bound contributes nothing.

Gluing along a common flavor group sums flavored series against the flavor
group's own (negative) vector-multiplet weight and dressing factor; the
intermediate negative powers of ``t`` live in an explicit Laurent window
and must cancel for a convergent glue.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass
from fractions import Fraction

from . import theory
from .rootdata import dominant_box_points, dot, sup_norm
from .series import TRIVIAL_GROUP, TruncatedSeries
from .theory import BAD, BadTheoryError, GaugeTheory, monopole_dimension


class EnumerationError(RuntimeError):
    """Internal soundness check failed or enumeration preconditions unmet."""


@dataclass(frozen=True)
class EnumerationPlan:
    """A certified finite search box for one monopole sum.

    Every dominant charge with ``dim2 <= cutoff`` has sup-norm at most
    ``radius``; ``slope`` is the certificate (None when the radius was
    forced by the caller).
    """

    theory: GaugeTheory
    cutoff: int
    background: object
    slope: object
    radius: int


def _background_shift(th, background):
    """Upper bound on how much a background flux can lower the dimension."""
    if background is None:
        return 0
    total = 0
    for (_gw, fw), mult in th.matter.items():
        total += mult * abs(dot(fw, background))
    return Fraction(total, 2)


def plan_enumeration(th, cutoff, background=None, radius_override=None):
    """Build the search box, classifying the theory unless a radius is forced."""
    if cutoff < 0:
        raise EnumerationError("cutoff must be nonnegative")
    if background is not None:
        if th.flavor is None:
            raise EnumerationError("background flux given but the theory has no flavor datum")
        background = th.flavor.check_coweight(background)
        if not th.flavor.is_dominant(background):
            raise EnumerationError(f"background flux {background} is not dominant")
    if radius_override is not None:
        return EnumerationPlan(th, cutoff, background, None, int(radius_override))
    cls = theory.classify(th)
    if cls.verdict == BAD:
        raise BadTheoryError(cls)
    if th.gauge.rank == 0:
        return EnumerationPlan(th, cutoff, background, None, 0)
    bound = Fraction(cutoff + _background_shift(th, background)) / cls.slope
    return EnumerationPlan(th, cutoff, background, cls.slope, max(0, math.ceil(bound)))


def enumerate_dominant(plan):
    """Yield every dominant charge with ``dim2 <= cutoff`` exactly once.

    When the radius is slope-certified, one extra shell is scanned: any
    contributing charge there disproves the bound and raises.  With a
    forced radius the box itself is the (unchecked) search bound.
    """
    th, cutoff = plan.theory, plan.cutoff
    background = plan.background
    certified = plan.slope is not None or th.gauge.rank == 0
    scan = plan.radius + 1 if certified else plan.radius
    for lam in dominant_box_points(th.gauge, scan):
        dim2 = monopole_dimension(th, lam, background)
        if dim2 > cutoff:
            continue
        if sup_norm(lam) > plan.radius:
            raise EnumerationError(
                f"shell bound violated: charge {lam} beyond radius {plan.radius} "
                f"has twice-dimension {dim2} <= {cutoff}"
            )
        yield lam, dim2


def _accumulate_terms(th, cutoff, background, refine_pi1, charges):
    """Partial monopole sum over an explicit charge list, as raw dicts."""
    pi1 = th.gauge.fundamental_group() if refine_pi1 else None
    dicts = [dict() for _ in range(cutoff + 1)]
    for lam in charges:
        dim2 = monopole_dimension(th, lam, background)
        if dim2 < 0:
            raise EnumerationError(
                f"negative exponent at charge {lam}: twice-dimension {dim2}"
            )
        key = pi1.project(lam) if pi1 else ()
        dressing = th.gauge.dressing_coefficients(lam, cutoff - dim2)
        for k, c in enumerate(dressing):
            if c:
                row = dicts[dim2 + k]
                row[key] = row.get(key, 0) + c
    return dicts


def _merge_dicts(target, source):
    for row, extra in zip(target, source):
        for key, val in extra.items():
            row[key] = row.get(key, 0) + val
    return target


def _hilbert_chunk(args):
    th, cutoff, background, refine_pi1, charges = args
    return _accumulate_terms(th, cutoff, background, refine_pi1, charges)


def hilbert_series(th, cutoff, refine_pi1=False, background=None,
                   radius_override=None, workers=1):
    """The monopole-formula Hilbert series to ``t^cutoff``.

    With ``refine_pi1`` the coefficients remember the topological charge as
    a fugacity monomial.  A dominant ``background`` flux of the flavor
    datum shifts the dimension of every charged hypermultiplet.  Charges
    whose dimension comes out negative abort the sum: the series only exists
    for good or ugly input.
    """
    plan = plan_enumeration(th, cutoff, background, radius_override)
    charges = [lam for lam, _dim2 in enumerate_dominant(plan)]
    group = th.gauge.fundamental_group().group if refine_pi1 else TRIVIAL_GROUP

    if workers > 1 and len(charges) > 4 * workers:
        chunk = (len(charges) + workers - 1) // workers
        jobs = [
            (th, cutoff, background, refine_pi1, charges[i:i + chunk])
            for i in range(0, len(charges), chunk)
        ]
        with multiprocessing.Pool(workers) as pool:
            partials = pool.map(_hilbert_chunk, jobs)
        dicts = partials[0]
        for extra in partials[1:]:
            _merge_dicts(dicts, extra)
    else:
        dicts = _accumulate_terms(th, cutoff, background, refine_pi1, charges)

    series = TruncatedSeries.from_dicts(cutoff, group, dicts)
    if background is None:
        constant = series.coefficient(0).sum_of_coefficients()
        if constant != 1:
            raise EnumerationError(
                f"constant term is {constant}, not 1: enumeration is inconsistent"
            )
    return series


# ---------------------------------------------------------------------------
# Laurent windows and gluing


class LaurentWindow:
    """A series with t-exponents in ``[lo, hi]``; ``lo`` may be negative.

    Gluing intermediates need a window because each flavor flux contributes
    ``t^{-s}`` against series known to order ``cutoff + s``; exponents
    outside the window are never materialized.
    """

    __slots__ = ("lo", "group", "coeffs")

    def __init__(self, lo, group, coeffs):
        self.lo = lo
        self.group = group
        self.coeffs = tuple(coeffs)

    @property
    def hi(self):
        return self.lo + len(self.coeffs) - 1

    @classmethod
    def from_series(cls, series, shift=0):
        """View a truncated series as a window starting at ``shift``."""
        return cls(shift, series.group, series.coeffs)

    def shifted(self, offset):
        return LaurentWindow(self.lo + offset, self.group, self.coeffs)

    def to_series(self, cutoff):
        """Project onto ``t^0 .. t^cutoff``; nonzero negative part is an error."""
        for k, poly in enumerate(self.coeffs):
            if self.lo + k < 0 and not poly.is_zero():
                raise EnumerationError(
                    f"window has a nonzero coefficient at t^{self.lo + k}"
                )
        if self.hi < cutoff:
            raise EnumerationError("window is too short for the requested cutoff")
        dicts = [dict() for _ in range(cutoff + 1)]
        for k, poly in enumerate(self.coeffs):
            e = self.lo + k
            if 0 <= e <= cutoff:
                dicts[e] = dict(poly.terms)
        return TruncatedSeries.from_dicts(cutoff, self.group, dicts)


def _glue_term(theories, flavor, cutoff, flux):
    """One flavor-flux summand of the glued series, as a Laurent window."""
    s = 2 * sum(abs(dot(alpha, flux)) for alpha in flavor.positive_roots)
    inner = cutoff + s
    product = TruncatedSeries.one(inner)
    for th in theories:
        product = product * hilbert_series(th, inner, background=flux)
    dressing = flavor.dressing_coefficients(flux, inner)
    dicts = [dict() for _ in range(inner + 1)]
    for k, c in enumerate(dressing):
        if c:
            dicts[k][()] = c
    product = product * TruncatedSeries.from_dicts(inner, TRIVIAL_GROUP, dicts)
    return LaurentWindow.from_series(product, shift=-s)


def _glue_chunk(args):
    theories, flavor, cutoff, fluxes = args
    dicts = [dict() for _ in range(cutoff + 1)]
    for flux in fluxes:
        window = _glue_term(theories, flavor, cutoff, flux)
        term = window.to_series(cutoff)
        _merge_dicts(dicts, [dict(p.terms) for p in term.coeffs])
    return dicts


def glue_series(theories, cutoff, workers=1):
    """Hilbert series of the theory glued along a shared flavor group.

    Sums ``t^{-2 sum |<alpha_F, flux>|} P_F(t; flux) prod_i H_i(t; flux)``
    over dominant flavor fluxes.  The flux search is capped by the exact
    slope of the fiber-product theory (gauge the flavor group and combine
    all matter); a bad fiber product means the glue diverges and raises.
    """
    theories = list(theories)
    combined = theory.fiber_product(theories)
    cls = theory.classify(combined)
    if cls.verdict == BAD:
        raise BadTheoryError(cls)
    flavor = theories[0].flavor
    if flavor.rank == 0:
        radius = 0
    else:
        radius = max(0, math.ceil(Fraction(cutoff) / cls.slope))

    fluxes = list(dominant_box_points(flavor, radius))
    if workers > 1 and len(fluxes) >= 2 * workers:
        chunk = (len(fluxes) + workers - 1) // workers
        jobs = [
            (theories, flavor, cutoff, fluxes[i:i + chunk])
            for i in range(0, len(fluxes), chunk)
        ]
        with multiprocessing.Pool(workers) as pool:
            partials = pool.map(_glue_chunk, jobs)
        dicts = partials[0]
        for extra in partials[1:]:
            _merge_dicts(dicts, extra)
    else:
        dicts = _glue_chunk((theories, flavor, cutoff, fluxes))
    return TruncatedSeries.from_dicts(cutoff, TRIVIAL_GROUP, dicts)
