"""Independent re-derivation of monopole-formula terms from bundle counting.

Every term of the monopole sum has a second life: it is the (normalized)
motivic class of the automorphism groupoid of the corresponding holomorphic
principal bundle on the projective line, divided into the class of the
gauge complexification.  Both sides are rational functions in a single
variable ``s`` with ``L = s^2`` (the affine-line class; the monopole
grading variable ``t`` matches ``-L^{1/2} = s``), and they can be compared
exactly by cross-multiplication, including the sign bookkeeping of
half-integer powers of ``L``.

Two routes compute the automorphism class: a general one through the Levi
and parabolic attached to the charge (sections of the unipotent bundle
against the partial flag variety), and, for unitary groups, a direct one
through the block decomposition of the vector bundle.  Agreement of either
route with the monopole term is a sharp per-charge consistency oracle for
the dressing factors and the vector-multiplet weight.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .rootdata import dot


class MotivicError(ValueError):
    """Invalid motivic computation input."""


# ---------------------------------------------------------------------------
# Dense integer polynomials in s


def _trim(p):
    while p and p[-1] == 0:
        p.pop()
    return p


def p_add(a, b):
    n = max(len(a), len(b))
    return _trim([
        (a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)
    ])


def p_neg(a):
    return [-x for x in a]


def p_mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] += x * y
    return _trim(out)


def p_eq(a, b):
    return _trim(list(a)) == _trim(list(b))


def _p_content(a):
    return math.gcd(*(abs(x) for x in a)) if a else 0


def _p_gcd(a, b):
    """Primitive gcd over Z, via monic Euclid over Q."""
    fa = [Fraction(x) for x in a]
    fb = [Fraction(x) for x in b]
    while fb:
        # remainder of fa by fb
        r = list(fa)
        while len(r) >= len(fb) and any(r):
            if r[-1] == 0:
                r.pop()
                continue
            factor = r[-1] / fb[-1]
            shift = len(r) - len(fb)
            for i, y in enumerate(fb):
                r[shift + i] -= factor * y
            while r and r[-1] == 0:
                r.pop()
        while r and r[-1] == 0:
            r.pop()
        fa, fb = fb, r
    if not fa:
        return []
    denom = math.lcm(*(x.denominator for x in fa))
    ints = [int(x * denom) for x in fa]
    content = _p_content(ints)
    ints = [x // content for x in ints]
    if ints[-1] < 0:
        ints = [-x for x in ints]
    return ints


def _p_divexact(a, b):
    """Exact polynomial division (raises if the remainder is nonzero)."""
    fa = [Fraction(x) for x in a]
    out = [Fraction(0)] * (len(fa) - len(b) + 1)
    while len(fa) >= len(b) and any(fa):
        if fa[-1] == 0:
            fa.pop()
            continue
        factor = fa[-1] / b[-1]
        shift = len(fa) - len(b)
        out[shift] = factor
        for i, y in enumerate(b):
            fa[shift + i] -= factor * y
        while fa and fa[-1] == 0:
            fa.pop()
    if any(fa):
        raise MotivicError("inexact polynomial division")
    if any(x.denominator != 1 for x in out):
        raise MotivicError("inexact polynomial division")
    return _trim([int(x) for x in out])


class MotivicExpr:
    """A rational function in ``s`` with integer coefficients, gcd-reduced."""

    __slots__ = ("num", "den")

    def __init__(self, num, den=(1,)):
        num = _trim([int(x) for x in num])
        den = _trim([int(x) for x in den])
        if not den:
            raise MotivicError("zero denominator")
        if num:
            g = _p_gcd(num, den)
            if len(g) > 1 or g[:1] not in ([], [1]):
                num = _p_divexact(num, g)
                den = _p_divexact(den, g)
            c = math.gcd(_p_content(num), _p_content(den))
            if c > 1:
                num = [x // c for x in num]
                den = [x // c for x in den]
        else:
            den = [1]
        if den[-1] < 0:
            num = p_neg(num)
            den = p_neg(den)
        self.num = tuple(num)
        self.den = tuple(den)

    @classmethod
    def one(cls):
        return cls([1])

    @classmethod
    def integer(cls, n):
        return cls([n])

    @classmethod
    def s_power(cls, k):
        """``s^k`` for any integer ``k``; negative powers go to the denominator."""
        if k >= 0:
            return cls([0] * k + [1])
        return cls([1], [0] * (-k) + [1])

    @classmethod
    def L_power(cls, k):
        """``L^k = s^{2k}`` for any integer ``k``."""
        return cls.s_power(2 * k)

    @classmethod
    def one_minus_L_power(cls, k):
        """``1 - L^k`` as a polynomial in ``s``."""
        if k < 1:
            raise MotivicError("need a positive power of L")
        return cls([1] + [0] * (2 * k - 1) + [-1])

    def __mul__(self, other):
        if isinstance(other, int):
            other = MotivicExpr.integer(other)
        return MotivicExpr(p_mul(list(self.num), list(other.num)),
                           p_mul(list(self.den), list(other.den)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = MotivicExpr.integer(other)
        if not other.num:
            raise MotivicError("division by zero")
        return MotivicExpr(p_mul(list(self.num), list(other.den)),
                           p_mul(list(self.den), list(other.num)))

    def __neg__(self):
        return MotivicExpr(p_neg(list(self.num)), list(self.den))

    def __eq__(self, other):
        if not isinstance(other, MotivicExpr):
            return NotImplemented
        return p_eq(
            p_mul(list(self.num), list(other.den)),
            p_mul(list(other.num), list(self.den)),
        )

    def __hash__(self):
        return hash((self.num, self.den))

    def __repr__(self):
        def fmt(p):
            if not p:
                return "0"
            bits = []
            for i, c in enumerate(p):
                if not c:
                    continue
                if i == 0:
                    bits.append(str(c))
                elif i == 1:
                    bits.append(f"{c}*s" if c != 1 else "s")
                else:
                    bits.append(f"{c}*s^{i}" if c != 1 else f"s^{i}")
            return " + ".join(bits)

        if self.den == (1,):
            return fmt(self.num)
        return f"({fmt(self.num)})/({fmt(self.den)})"


# ---------------------------------------------------------------------------
# Classes of groups and of monopole terms


def group_class(datum):
    """Motivic class of the complexified group: ``L^{#pos} prod (L^{d_i}-1)``."""
    result = MotivicExpr.L_power(datum.num_positive_roots)
    for d in datum.stabilizer_degrees((0,) * datum.rank):
        result = result * (MotivicExpr.one_minus_L_power(d) * -1)
    return result


def dressing_class(datum, charge):
    """The dressing factor ``prod 1/(1 - t^{2 d_i})`` at ``t = s``."""
    result = MotivicExpr.one()
    for d in datum.stabilizer_degrees(charge):
        result = result / MotivicExpr.one_minus_L_power(d)
    return result


def normalization_class(datum):
    """The overall factor ``(-1)^rank (-L^{1/2})^rank`` the bundle side carries."""
    sign = -1 if datum.rank % 2 else 1
    return MotivicExpr.s_power(datum.rank) * sign


def monopole_term_class(datum, charge):
    """One monopole summand at ``t = s``, times the unavoidable normalization."""
    charge = datum.check_coweight(charge)
    if not datum.is_dominant(charge):
        raise MotivicError(f"{charge} is not dominant")
    pairing_sum = sum(dot(alpha, charge) for alpha in datum.positive_roots)
    return (
        normalization_class(datum)
        * MotivicExpr.s_power(-2 * pairing_sum)
        * dressing_class(datum, charge)
    )


# ---------------------------------------------------------------------------
# The automorphism class of the bundle attached to a dominant charge


def automorphism_class_general(datum, charge):
    """``[Aut]`` through the Levi: sections of the unipotent bundle times
    the parabolic class ``[G] / [G/P]``."""
    charge = datum.check_coweight(charge)
    if not datum.is_dominant(charge):
        raise MotivicError(f"{charge} is not dominant")
    h0 = 0
    unipotent_dim = 0
    for alpha in datum.positive_roots:
        pairing = dot(alpha, charge)
        if pairing > 0:
            h0 += pairing + 1
            unipotent_dim += 1
    sections_over_unipotent = MotivicExpr.L_power(h0 - unipotent_dim)
    flag_class = dressing_class(datum, charge) / dressing_class(datum, (0,) * datum.rank)
    parabolic = group_class(datum) / flag_class
    return sections_over_unipotent * parabolic


def bundle_side_general(datum, charge):
    """``s^{dim G} / [Aut]``: the bundle-counting value of one term."""
    return MotivicExpr.s_power(datum.dimension) / automorphism_class_general(datum, charge)


@dataclass(frozen=True)
class BundleClass:
    """Block data of a rank-N bundle: degrees with multiplicities."""

    charge: tuple
    blocks: tuple  # ((degree, multiplicity), ...) with degrees decreasing

    @classmethod
    def from_charge(cls, charge):
        charge = tuple(int(x) for x in charge)
        if any(a < b for a, b in zip(charge, charge[1:])):
            raise MotivicError(f"{charge} is not dominant for a unitary group")
        blocks = []
        for value in charge:
            if blocks and blocks[-1][0] == value:
                blocks[-1] = (value, blocks[-1][1] + 1)
            else:
                blocks.append((value, 1))
        return cls(charge, tuple(blocks))

    @property
    def rank(self):
        return sum(k for _v, k in self.blocks)


def _gl_ratio(k):
    """``[GL(k)] / [End(C^k)] = (-1)^k (1-L) ... (1-L^k) L^{-k(k+1)/2}``."""
    result = MotivicExpr.L_power(0) * (-1 if k % 2 else 1)
    for i in range(1, k + 1):
        result = result * MotivicExpr.one_minus_L_power(i)
    return result * MotivicExpr.s_power(-k * (k + 1))


def automorphism_class_gl(bundle):
    """``[Aut] = [End] prod_a [GL(k_a)]/[End(C^{k_a})]`` from the block data."""
    end_dim = 0
    for deg_a, k_a in bundle.blocks:
        for deg_b, k_b in bundle.blocks:
            if deg_b >= deg_a:
                end_dim += k_a * k_b * (deg_b - deg_a + 1)
    result = MotivicExpr.L_power(end_dim)
    for _deg, k in bundle.blocks:
        result = result * _gl_ratio(k)
    return result


def gl_shift_exponent(bundle):
    """The net power of ``-L^{1/2}`` of the block computation:
    ``-2 sum_{b>=a} k_a k_b (b - a) + sum k_a``."""
    shift = sum(k for _v, k in bundle.blocks)
    for deg_a, k_a in bundle.blocks:
        for deg_b, k_b in bundle.blocks:
            if deg_b >= deg_a:
                shift -= 2 * k_a * k_b * (deg_b - deg_a)
    return shift


def bundle_side_gl(bundle):
    n = bundle.rank
    return MotivicExpr.s_power(n * n) / automorphism_class_gl(bundle)


def _is_unitary_datum(datum):
    return datum.blocks is not None and len(datum.blocks) == 1 and datum.blocks[0][0] == "u"


def term_check(datum, charge, route="auto"):
    """Whether the bundle-side class equals the monopole term, exactly.

    ``route`` is ``"general"``, ``"gl"`` (unitary data only) or ``"auto"``
    (general always, plus the block route when available).  A ``False``
    return is a finding, not an error.
    """
    target = monopole_term_class(datum, charge)
    routes = []
    if route in ("auto", "general"):
        routes.append(bundle_side_general(datum, charge))
    if route == "gl" or (route == "auto" and _is_unitary_datum(datum)):
        if not _is_unitary_datum(datum):
            raise MotivicError("the block route needs a unitary root datum")
        routes.append(bundle_side_gl(BundleClass.from_charge(charge)))
    if not routes:
        raise MotivicError(f"unknown route {route!r}")
    return all(side == target for side in routes)


# ---------------------------------------------------------------------------
# Matter contribution on the projective line


def matter_exponent(th, charge, twist_degree=-1):
    """Section count ``sum_b |<wt(b), charge> + twist_degree + 1|`` over a
    quaternionic basis of the matter.

    With the standard twist ``-1`` this is exactly the matter term of the
    monopole dimension.  Flavor components are paired with zero.
    """
    charge = th.gauge.check_coweight(charge)
    total = 0
    for gw, _fw, mult in th.matter.quaternionic_basis():
        total += mult * abs(dot(gw, charge) + twist_degree + 1)
    return total
