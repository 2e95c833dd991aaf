"""The abelian Coulomb branch as an explicit graded ring.

For a torus gauge theory cut out by an injective charge matrix with free
cokernel, the coordinate ring is known explicitly: it is the direct sum of
a polynomial ring (in the torus coordinates ``eta_1 .. eta_g``) over all
lattice charges, with the product of two charge generators picking up a
moment-map polynomial governed by a five-case sign table.  This module
implements that ring and its graded character, which serves as an
independent consistency oracle for the monopole-formula engine.
"""

from __future__ import annotations

import math
from fractions import Fraction

from . import rootdata
from .rootdata import dot, smith_normal_form
from .series import FugacityGroup, TruncatedSeries


class AbelianError(ValueError):
    """Invalid abelian charge data or ring input."""


class AbelianData:
    """Charge data: an injective ``d x g`` integer matrix with free cokernel.

    Rows are the gauge charges of the hypermultiplets; ``g = d - n`` is the
    gauge rank.  An optional integral lift of a flavor background shifts the
    dimension grading without touching the ring data.
    """

    def __init__(self, alpha, background=None):
        rows = [tuple(int(x) for x in row) for row in alpha]
        if not rows:
            raise AbelianError("charge matrix must have at least one row")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise AbelianError("ragged charge matrix")
        if width < 1:
            raise AbelianError("charge matrix must have at least one column")
        self.alpha = tuple(rows)
        self.num_hypers = len(rows)
        self.gauge_rank = width
        if self.num_hypers < width:
            raise AbelianError("charge matrix cannot be injective: too few rows")

        diag, _u, _v = smith_normal_form([list(r) for r in rows], self.num_hypers, width)
        factors = [diag[i][i] for i in range(width)]
        if any(f == 0 for f in factors):
            raise AbelianError("charge matrix is not injective")
        if any(abs(f) != 1 for f in factors):
            raise AbelianError(
                "cokernel of the charge matrix has torsion; invariant factors "
                f"are {factors}"
            )
        if background is None:
            background = (0,) * self.num_hypers
        background = tuple(int(x) for x in background)
        if len(background) != self.num_hypers:
            raise AbelianError("background lift length must equal the number of hypers")
        self.background = background

    @property
    def flavor_rank(self):
        return self.num_hypers - self.gauge_rank

    def charge(self, lam):
        """The image ``alpha(lam)`` in Z^d."""
        lam = self._check(lam)
        return tuple(dot(row, lam) for row in self.alpha)

    def _check(self, lam):
        lam = tuple(int(x) for x in lam)
        if len(lam) != self.gauge_rank:
            raise AbelianError(
                f"charge length {len(lam)} does not match gauge rank {self.gauge_rank}"
            )
        return lam

    def __eq__(self, other):
        return (
            isinstance(other, AbelianData)
            and self.alpha == other.alpha
            and self.background == other.background
        )

    def __repr__(self):
        return f"<AbelianData {self.num_hypers} hypers, gauge rank {self.gauge_rank}>"


def monopole_dimension(data, lam):
    """Twice the dimension: the total magnitude of the shifted hyper charges."""
    image = data.charge(lam)
    return sum(abs(b + c) for b, c in zip(data.background, image))


# ---------------------------------------------------------------------------
# Ring elements: finite sums  p_lam(eta) z^lam


def _poly_mul(a, b):
    out = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            key = tuple(x + y for x, y in zip(e1, e2))
            val = out.get(key, 0) + c1 * c2
            if val:
                out[key] = val
            else:
                out.pop(key, None)
    return out


def _poly_add(a, b):
    out = dict(a)
    for e, c in b.items():
        val = out.get(e, 0) + c
        if val:
            out[e] = val
        else:
            out.pop(e, None)
    return out


class RingElement:
    """An element ``sum_lam p_lam(eta) z^lam`` of the abelian Coulomb ring.

    ``terms`` maps lattice charges to eta-polynomials, themselves maps from
    exponent tuples to integer coefficients; zero polynomials are dropped.
    """

    __slots__ = ("gauge_rank", "terms")

    def __init__(self, gauge_rank, terms=None):
        self.gauge_rank = gauge_rank
        clean = {}
        for lam, poly in (terms or {}).items():
            poly = {tuple(e): int(c) for e, c in poly.items() if c}
            if poly:
                clean[tuple(lam)] = poly
        self.terms = clean

    @classmethod
    def zero(cls, gauge_rank):
        return cls(gauge_rank)

    @classmethod
    def basis(cls, gauge_rank, lam):
        """The generator ``z^lam``."""
        unit = {(0,) * gauge_rank: 1}
        return cls(gauge_rank, {tuple(lam): unit})

    @classmethod
    def eta_monomial(cls, gauge_rank, exponents, coeff=1):
        zero = (0,) * gauge_rank
        return cls(gauge_rank, {zero: {tuple(exponents): coeff}})

    def __add__(self, other):
        if self.gauge_rank != other.gauge_rank:
            raise AbelianError("rank mismatch")
        merged = dict(self.terms)
        for lam, poly in other.terms.items():
            merged[lam] = _poly_add(merged.get(lam, {}), poly)
            if not merged[lam]:
                del merged[lam]
        out = RingElement.__new__(RingElement)
        out.gauge_rank = self.gauge_rank
        out.terms = merged
        return out

    def __neg__(self):
        out = RingElement.__new__(RingElement)
        out.gauge_rank = self.gauge_rank
        out.terms = {
            lam: {e: -c for e, c in poly.items()} for lam, poly in self.terms.items()
        }
        return out

    def __sub__(self, other):
        return self + (-other)

    def __eq__(self, other):
        return (
            isinstance(other, RingElement)
            and self.gauge_rank == other.gauge_rank
            and self.terms == other.terms
        )

    def is_zero(self):
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for lam in sorted(self.terms):
            bits.append(f"({_format_eta(self.terms[lam])})*z^{lam}")
        return " + ".join(bits)


def _format_eta(poly):
    bits = []
    for exp in sorted(poly):
        coeff = poly[exp]
        if not any(exp):
            bits.append(str(coeff))
            continue
        mono = "*".join(
            f"eta{i + 1}" + (f"^{e}" if e > 1 else "")
            for i, e in enumerate(exp) if e
        )
        bits.append(mono if coeff == 1 else f"{coeff}*{mono}")
    return " + ".join(bits)


def _sign_table_exponent(a, b, c):
    """The eta-exponent picked up at one hyper when multiplying generators.

    ``a``, ``b``, ``c = a + b`` are the hyper's pairings with the two
    charges and their sum; the five sign cases follow the moment-map
    bookkeeping of which coordinate function represents each generator.
    """
    if a * b >= 0:
        return 0
    if a >= 0 and b <= 0:
        return -b if c >= 0 else a
    return -a if c >= 0 else b


def ring_mul(data, x, y):
    """Product in the abelian Coulomb ring, extended bilinearly from the rule

    ``z^lam z^mu = z^{lam+mu} * prod_i pi(xi_i)^{d_i(lam, mu)}``

    where ``pi`` restricts the i-th hyper coordinate ``xi_i`` to the gauge
    directions: ``pi(xi_i) = sum_p alpha_{ip} eta_p``.
    """
    g = data.gauge_rank
    if x.gauge_rank != g or y.gauge_rank != g:
        raise AbelianError("ring elements do not match the charge data")
    result = RingElement.zero(g)
    for lam, p_lam in x.terms.items():
        alam = data.charge(lam)
        for mu, p_mu in y.terms.items():
            amu = data.charge(mu)
            structure = {(0,) * g: 1}
            for i, row in enumerate(data.alpha):
                e = _sign_table_exponent(alam[i], amu[i], alam[i] + amu[i])
                if e == 0:
                    continue
                restricted = {}
                for p, entry in enumerate(row):
                    if entry:
                        key = tuple(int(q == p) for q in range(g))
                        restricted[key] = entry
                for _ in range(e):
                    structure = _poly_mul(structure, restricted)
            total = tuple(l + m for l, m in zip(lam, mu))
            poly = _poly_mul(_poly_mul(p_lam, p_mu), structure)
            result = result + RingElement(g, {total: poly})
    return result


def term_degrees(data, element):
    """The set of t-degrees of the terms (eta has degree 2, z^lam degree dim2)."""
    degrees = set()
    for lam, poly in element.terms.items():
        base = monopole_dimension(data, lam)
        for exp in poly:
            degrees.add(base + 2 * sum(exp))
    return degrees


def ring_hilbert(data, cutoff):
    """Graded character of the ring, refined by the full lattice of charges.

    Sums ``z^lam t^{dim2(lam)} / (1 - t^2)^g`` over all lattice charges; the
    result must agree with the monopole-formula series of the corresponding
    torus gauge theory.  Degenerate data (a direction of charges invisible
    to every hyper) is rejected because the sum would diverge.
    """
    from . import theory  # local import: theory.build_abelian returns us

    g = data.gauge_rank
    th, _ = theory.build_abelian(data.alpha)
    cls = theory.classify(th)
    if cls.verdict == theory.BAD:  # pragma: no cover - injectivity forbids this
        raise AbelianError("divergent abelian series")
    shift = sum(abs(b) for b in data.background)
    radius = math.ceil(Fraction(cutoff + shift) / cls.slope) if g else 0

    group = FugacityGroup(free_rank=g)
    dressing = [0] * (cutoff + 1)
    for k in range(0, cutoff + 1, 2):
        dressing[k] = 1
    for _ in range(1, g):
        for k in range(2, cutoff + 1):
            if k % 2 == 0:
                dressing[k] += dressing[k - 2]
    # dressing now holds 1/(1-t^2)^g

    dicts = [dict() for _ in range(cutoff + 1)]
    for lam in rootdata.dominant_box_points(rootdata.torus(g), radius):
        dim2 = monopole_dimension(data, lam)
        if dim2 > cutoff:
            continue
        for k in range(dim2, cutoff + 1):
            c = dressing[k - dim2]
            if c:
                dicts[k][lam] = dicts[k].get(lam, 0) + c
    return TruncatedSeries.from_dicts(cutoff, group, dicts)
