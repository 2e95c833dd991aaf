"""Truncated power series in ``t`` with exact group-algebra coefficients.

Coefficients live in the rational group algebra of a finitely generated
abelian *fugacity group* ``Z^a x prod_j Z/m_j``.  The free generators are
printed as ``z1, ..., za`` and the torsion ones as ``w1, ..., wb`` by the
command line layer; internally an element of the group is just an integer
exponent tuple (free coordinates first, then torsion coordinates reduced to
``[0, m_j)``).

All arithmetic is exact: scalars are Python ints or ``fractions.Fraction``,
nothing is ever rounded, and only nonnegative powers of ``t`` up to a fixed
cutoff are stored.  Series values are immutable after construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction


class SeriesError(ValueError):
    """Malformed series arithmetic: mismatched rings, non-unit leading term."""


def _norm_scalar(value):
    """Keep integral coefficients as plain ints, everything else as Fraction."""
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return value
    if isinstance(value, int):
        return value
    raise SeriesError(f"coefficients must be exact rationals, got {type(value).__name__}")


@dataclass(frozen=True)
class FugacityGroup:
    """The grading group ``Z^free_rank x prod Z/m_j`` for series coefficients."""

    free_rank: int = 0
    torsion_orders: tuple = ()

    def __post_init__(self):
        if self.free_rank < 0:
            raise SeriesError("free rank must be nonnegative")
        orders = tuple(int(m) for m in self.torsion_orders)
        if any(m < 2 for m in orders):
            raise SeriesError("torsion orders must be >= 2")
        object.__setattr__(self, "torsion_orders", orders)

    def __len__(self):
        return self.free_rank + len(self.torsion_orders)

    @property
    def is_trivial(self):
        return len(self) == 0

    def identity(self):
        return (0,) * len(self)

    def reduce(self, exponent):
        """Canonical form of an exponent tuple: torsion parts mod m_j."""
        exponent = tuple(int(e) for e in exponent)
        if len(exponent) != len(self):
            raise SeriesError(
                f"exponent length {len(exponent)} does not match group rank {len(self)}"
            )
        a = self.free_rank
        return exponent[:a] + tuple(
            e % m for e, m in zip(exponent[a:], self.torsion_orders)
        )

    def add_exponents(self, e1, e2):
        return self.reduce(tuple(x + y for x, y in zip(e1, e2)))

    def scale_exponent(self, e, d):
        return self.reduce(tuple(d * x for x in e))


TRIVIAL_GROUP = FugacityGroup()


class FugacityPoly:
    """A finitely supported map from fugacity-group elements to rationals.

    Stored zero coefficients are dropped and torsion exponents are reduced
    eagerly, so equal elements always have equal term dictionaries.
    """

    __slots__ = ("group", "terms")

    def __init__(self, group, terms=None):
        self.group = group
        clean = {}
        if terms:
            for exp, coeff in terms.items() if isinstance(terms, dict) else terms:
                coeff = _norm_scalar(coeff)
                if coeff == 0:
                    continue
                key = group.reduce(exp)
                acc = clean.get(key, 0) + coeff
                if acc == 0:
                    clean.pop(key, None)
                else:
                    clean[key] = _norm_scalar(Fraction(acc)) if isinstance(acc, Fraction) else acc
        self.terms = clean

    @classmethod
    def scalar(cls, group, value):
        return cls(group, {group.identity(): value})

    @classmethod
    def monomial(cls, group, exponent, value=1):
        return cls(group, {tuple(exponent): value})

    def is_zero(self):
        return not self.terms

    def constant_rational(self):
        """The coefficient as a plain rational; errors if fugacities appear."""
        if not self.terms:
            return 0
        if len(self.terms) == 1:
            (exp, coeff), = self.terms.items()
            if exp == self.group.identity():
                return coeff
        raise SeriesError("coefficient has a nontrivial fugacity part")

    def sum_of_coefficients(self):
        """Specialize every fugacity variable to 1."""
        total = 0
        for coeff in self.terms.values():
            total += coeff
        return _norm_scalar(Fraction(total)) if isinstance(total, Fraction) else total

    def adams(self, d):
        """Raise every fugacity variable to the d-th power."""
        return FugacityPoly(
            self.group,
            {self.group.scale_exponent(e, d): c for e, c in self.terms.items()},
        )

    def __add__(self, other):
        if isinstance(other, FugacityPoly):
            if other.group != self.group:
                raise SeriesError("fugacity group mismatch")
            merged = dict(self.terms)
            for exp, coeff in other.terms.items():
                acc = merged.get(exp, 0) + coeff
                if acc == 0:
                    merged.pop(exp, None)
                else:
                    merged[exp] = acc
            out = FugacityPoly.__new__(FugacityPoly)
            out.group = self.group
            out.terms = merged
            return out
        return NotImplemented

    def __neg__(self):
        out = FugacityPoly.__new__(FugacityPoly)
        out.group = self.group
        out.terms = {e: -c for e, c in self.terms.items()}
        return out

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, FugacityPoly):
            if other.group != self.group:
                raise SeriesError("fugacity group mismatch")
            acc = {}
            add = self.group.add_exponents
            for e1, c1 in self.terms.items():
                for e2, c2 in other.terms.items():
                    key = add(e1, e2)
                    val = acc.get(key, 0) + c1 * c2
                    if val == 0:
                        acc.pop(key, None)
                    else:
                        acc[key] = val
            out = FugacityPoly.__new__(FugacityPoly)
            out.group = self.group
            out.terms = acc
            return out
        if isinstance(other, (int, Fraction)):
            if other == 0:
                return FugacityPoly(self.group)
            out = FugacityPoly.__new__(FugacityPoly)
            out.group = self.group
            out.terms = {e: _norm_scalar(Fraction(c) * other) for e, c in self.terms.items()}
            return out
        return NotImplemented

    __rmul__ = __mul__

    def __eq__(self, other):
        return (
            isinstance(other, FugacityPoly)
            and self.group == other.group
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.group, tuple(sorted(self.terms.items()))))

    def __repr__(self):
        if not self.terms:
            return "0"
        bits = []
        for exp in sorted(self.terms):
            coeff = self.terms[exp]
            if exp == self.group.identity():
                bits.append(str(coeff))
            else:
                bits.append(f"{coeff}*z^{exp}")
        return " + ".join(bits)


class TruncatedSeries:
    """A power series in ``t`` truncated at ``t^cutoff``, coefficients in Q[A].

    Binary operations require operands from the same coefficient group and
    with the same cutoff; there is deliberately no implicit coercion.
    """

    __slots__ = ("cutoff", "group", "coeffs")

    def __init__(self, cutoff, group, coeffs=None):
        if cutoff < 0:
            raise SeriesError("cutoff must be nonnegative")
        self.cutoff = cutoff
        self.group = group
        if coeffs is None:
            self.coeffs = tuple(FugacityPoly(group) for _ in range(cutoff + 1))
        else:
            if len(coeffs) != cutoff + 1:
                raise SeriesError("coefficient list does not match cutoff")
            self.coeffs = tuple(coeffs)

    # -- constructors -----------------------------------------------------

    @classmethod
    def zero(cls, cutoff, group=TRIVIAL_GROUP):
        return cls(cutoff, group)

    @classmethod
    def one(cls, cutoff, group=TRIVIAL_GROUP):
        return cls.monomial(cutoff, group, 0)

    @classmethod
    def monomial(cls, cutoff, group, t_exp, coeff=1, fugacity=None):
        """The single term ``coeff * z^fugacity * t^t_exp`` (dropped if beyond cutoff)."""
        coeffs = [FugacityPoly(group) for _ in range(cutoff + 1)]
        if 0 <= t_exp <= cutoff:
            exp = group.identity() if fugacity is None else fugacity
            coeffs[t_exp] = FugacityPoly(group, {tuple(exp): coeff})
        return cls(cutoff, group, coeffs)

    @classmethod
    def from_dicts(cls, cutoff, group, dicts):
        """Build from a list of {exponent tuple: coefficient} dictionaries."""
        coeffs = [FugacityPoly(group, d) for d in dicts]
        coeffs += [FugacityPoly(group) for _ in range(cutoff + 1 - len(coeffs))]
        return cls(cutoff, group, coeffs)

    # -- structure --------------------------------------------------------

    def coefficient(self, k):
        return self.coeffs[k]

    def is_zero(self):
        return all(c.is_zero() for c in self.coeffs)

    def _check_compatible(self, other):
        if self.group != other.group:
            raise SeriesError("fugacity group mismatch")
        if self.cutoff != other.cutoff:
            raise SeriesError("cutoff mismatch")

    # -- ring operations ---------------------------------------------------

    def __add__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        return TruncatedSeries(
            self.cutoff, self.group,
            [a + b for a, b in zip(self.coeffs, other.coeffs)],
        )

    def __neg__(self):
        return TruncatedSeries(self.cutoff, self.group, [-c for c in self.coeffs])

    def __sub__(self, other):
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return TruncatedSeries(
                self.cutoff, self.group, [c * other for c in self.coeffs]
            )
        if not isinstance(other, TruncatedSeries):
            return NotImplemented
        self._check_compatible(other)
        n = self.cutoff
        acc = [FugacityPoly(self.group) for _ in range(n + 1)]
        for i, ci in enumerate(self.coeffs):
            if ci.is_zero():
                continue
            for j in range(n + 1 - i):
                cj = other.coeffs[j]
                if cj.is_zero():
                    continue
                acc[i + j] = acc[i + j] + ci * cj
        return TruncatedSeries(n, self.group, acc)

    __rmul__ = __mul__

    def recip(self):
        """Multiplicative inverse to the cutoff.

        Requires the constant term to be a nonzero plain rational (no
        fugacity part); the higher coefficients may involve fugacities.
        """
        a0 = self.coeffs[0].constant_rational()
        if a0 == 0:
            raise SeriesError("series with vanishing constant term is not invertible")
        r0 = Fraction(1, 1) / Fraction(a0)
        inv = [FugacityPoly.scalar(self.group, r0)]
        for n in range(1, self.cutoff + 1):
            s = FugacityPoly(self.group)
            for k in range(1, n + 1):
                ak = self.coeffs[k]
                if ak.is_zero():
                    continue
                s = s + ak * inv[n - k]
            inv.append(s * (-r0))
        return TruncatedSeries(self.cutoff, self.group, inv)

    def adams(self, d):
        """Substitute ``t -> t^d`` and every fugacity ``z -> z^d`` exactly."""
        if d < 1:
            raise SeriesError("substitution degree must be >= 1")
        dicts = [dict() for _ in range(self.cutoff + 1)]
        for k, poly in enumerate(self.coeffs):
            if d * k > self.cutoff:
                break
            if not poly.is_zero():
                dicts[d * k] = poly.adams(d).terms
        return TruncatedSeries.from_dicts(self.cutoff, self.group, dicts)

    def specialize_fugacities(self):
        """Set every fugacity variable to 1, landing in the trivial group."""
        return TruncatedSeries.from_dicts(
            self.cutoff, TRIVIAL_GROUP,
            [{(): c.sum_of_coefficients()} for c in self.coeffs],
        )

    def truncate(self, cutoff):
        """Shorten (never extend) the retained order."""
        if cutoff > self.cutoff:
            raise SeriesError("cannot extend a truncated series")
        return TruncatedSeries(cutoff, self.group, self.coeffs[: cutoff + 1])

    def __eq__(self, other):
        return (
            isinstance(other, TruncatedSeries)
            and self.group == other.group
            and self.cutoff == other.cutoff
            and all(a == b for a, b in zip(self.coeffs, other.coeffs))
        )

    def __hash__(self):
        return hash((self.cutoff, self.group, self.coeffs))

    def __repr__(self):
        bits = []
        for k, poly in enumerate(self.coeffs):
            if poly.is_zero():
                continue
            if len(poly.terms) == 1 and next(iter(poly.terms)) == self.group.identity():
                head = str(poly.constant_rational())
            else:
                head = f"({poly!r})"
            bits.append(head if k == 0 else f"{head}*t^{k}")
        body = " + ".join(bits) if bits else "0"
        return f"<series {body} + O(t^{self.cutoff + 1})>"


def geometric_series(d, cutoff, group=TRIVIAL_GROUP):
    """The expansion of ``1/(1 - t^d)`` to the cutoff."""
    if d < 1:
        raise SeriesError("geometric step must be a positive integer")
    dicts = [dict() for _ in range(cutoff + 1)]
    ident = group.identity()
    for k in range(0, cutoff + 1, d):
        dicts[k][ident] = 1
    return TruncatedSeries.from_dicts(cutoff, group, dicts)


# -- series in a counting variable Lambda --------------------------------
#
# A "family" is a list indexed by the Lambda-exponent whose entries are
# TruncatedSeries sharing one cutoff and one fugacity group.  These helpers
# implement the graded (Cauchy) ring structure and the plethystic
# exponential exp(sum_d Lambda^d/d f(t^d, z^d)).


def family_zero(order_t, order_lam, group=TRIVIAL_GROUP):
    return [TruncatedSeries.zero(order_t, group) for _ in range(order_lam + 1)]


def family_one(order_t, order_lam, group=TRIVIAL_GROUP):
    fam = family_zero(order_t, order_lam, group)
    fam[0] = TruncatedSeries.one(order_t, group)
    return fam


def _family_checked(f, order_lam):
    fam = list(f)
    if not fam:
        raise SeriesError("empty series family")
    group, cutoff = fam[0].group, fam[0].cutoff
    for s in fam:
        if s.group != group or s.cutoff != cutoff:
            raise SeriesError("family entries disagree on group or cutoff")
    while len(fam) <= order_lam:
        fam.append(TruncatedSeries.zero(cutoff, group))
    return fam[: order_lam + 1]


def family_mul(a, b, order_lam=None):
    if order_lam is None:
        order_lam = max(len(a), len(b)) - 1
    a = _family_checked(a, order_lam)
    b = _family_checked(b, order_lam)
    out = family_zero(a[0].cutoff, order_lam, a[0].group)
    for i, ai in enumerate(a):
        if ai.is_zero():
            continue
        for j in range(order_lam + 1 - i):
            if b[j].is_zero():
                continue
            out[i + j] = out[i + j] + ai * b[j]
    return out


def family_add(a, b, order_lam=None):
    if order_lam is None:
        order_lam = max(len(a), len(b)) - 1
    a = _family_checked(a, order_lam)
    b = _family_checked(b, order_lam)
    return [x + y for x, y in zip(a, b)]


def family_scale(a, scalar):
    return [s * scalar for s in a]


def family_max_gap(a, b):
    """Largest absolute coefficient difference between two families."""
    order_lam = max(len(a), len(b)) - 1
    a = _family_checked(a, order_lam)
    b = _family_checked(b, order_lam)
    gap = Fraction(0)
    for sa, sb in zip(a, b):
        diff = sa - sb
        for poly in diff.coeffs:
            for coeff in poly.terms.values():
                gap = max(gap, abs(Fraction(coeff)))
    return gap


def plethystic_exp(f, order_t, order_lam):
    """Plethystic exponential of a family with no Lambda^0 part.

    Computes ``exp(sum_{d>=1} psi_d(f)/d)`` where ``psi_d`` raises ``t``,
    every fugacity variable and the counting variable Lambda to the d-th
    power.  The Lambda^k coefficient of the result is the k-th symmetric
    power of whatever f counts.
    """
    fam = _family_checked(f, order_lam)
    group = fam[0].group
    if fam[0].cutoff != order_t:
        fam = [s.truncate(order_t) if s.cutoff >= order_t else s for s in fam]
        if fam[0].cutoff != order_t:
            raise SeriesError("family cutoff is below the requested t-order")
    if not fam[0].is_zero():
        raise SeriesError("plethystic exponential needs a vanishing Lambda^0 term")

    log_part = family_zero(order_t, order_lam, group)
    for d in range(1, order_lam + 1):
        inv_d = Fraction(1, d)
        for k in range(1, order_lam // d + 1):
            if fam[k].is_zero():
                continue
            log_part[d * k] = log_part[d * k] + fam[k].adams(d) * inv_d

    result = family_one(order_t, order_lam, group)
    power = family_one(order_t, order_lam, group)
    for n in range(1, order_lam + 1):
        power = family_scale(family_mul(power, log_part, order_lam), Fraction(1, n))
        result = family_add(result, power)
    return result
