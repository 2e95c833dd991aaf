"""Root data for connected compact groups.

A :class:`RootDatum` packages the rank, the positive roots (as integer
functionals on the coweight lattice ``Y = Z^rank``), the simple roots and
their coroots.  Everything downstream needs only four queries: the Weyl
action on coweights (dominance, orbits), the Casimir degrees of coweight
stabilizers, the fundamental group ``Y / (coroot lattice)`` with its
projection, and lattice-point enumeration of the dominant cone.

Weights and coweights are plain integer tuples; the pairing between them is
the standard dot product.  For ``su(n)`` the coweight lattice is presented
in the basis of simple coroots (so coweights are coordinate vectors of
length ``n - 1``) and weights are written in fundamental-weight coordinates;
in particular the j-th simple root is the j-th row of the Cartan matrix.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .series import TRIVIAL_GROUP, FugacityGroup, TruncatedSeries


class RootDataError(ValueError):
    """Malformed root datum or an invalid query against one."""


def dot(a, b):
    return sum(x * y for x, y in zip(a, b))


# ---------------------------------------------------------------------------
# Dynkin classification
#
# Finite-type components are recognized by matching the Cartan matrix of a
# candidate simple system against reference matrices, by backtracking vertex
# assignment.  Exponent tables cover the exceptional series as well, so that
# custom root data with E-type stabilizers still get correct degrees.

_EXCEPTIONAL_EXPONENTS = {
    ("E", 6): (1, 4, 5, 7, 8, 11),
    ("E", 7): (1, 5, 7, 9, 11, 13, 17),
    ("E", 8): (1, 7, 11, 13, 17, 19, 23, 29),
    ("F", 4): (1, 5, 7, 11),
    ("G", 2): (1, 5),
}


def type_exponents(letter, n):
    if letter == "A":
        return tuple(range(1, n + 1))
    if letter in ("B", "C"):
        return tuple(range(1, 2 * n, 2))
    if letter == "D":
        return tuple(range(1, 2 * n - 2, 2)) + (n - 1,)
    return _EXCEPTIONAL_EXPONENTS[(letter, n)]


def _chain(n, a, b):
    """Cartan matrix of a simple chain with one marked bond (a, b) at the end."""
    m = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i in range(n - 1):
        m[i][i + 1] = -1
        m[i + 1][i] = -1
    if n >= 2:
        m[n - 2][n - 1] = a
        m[n - 1][n - 2] = b
    return m


def _reference_cartan(letter, n):
    if letter == "A":
        return _chain(n, -1, -1)
    if letter == "B":
        return _chain(n, -2, -1)
    if letter == "C":
        return _chain(n, -1, -2)
    if letter == "D":
        m = _chain(n - 1, -1, -1)
        for row in m:
            row.append(0)
        m.append([0] * n)
        m[n - 1][n - 1] = 2
        m[n - 3][n - 1] = -1
        m[n - 1][n - 3] = -1
        return m
    if letter == "E":
        # branch node is vertex 3 (0-indexed) on the A_{n-1} chain 0-1-2-4-5-..
        m = _chain(n - 1, -1, -1)
        for row in m:
            row.append(0)
        m.append([0] * n)
        m[n - 1][n - 1] = 2
        m[2][n - 1] = -1
        m[n - 1][2] = -1
        return m
    if letter == "F":
        m = _chain(4, -1, -1)
        m[1][2] = -2
        m[2][1] = -1
        m[2][3] = -1
        m[3][2] = -1
        return m
    if letter == "G":
        return [[2, -3], [-1, 2]]
    raise RootDataError(f"unknown type {letter}{n}")


def _isomorphic_cartan(cartan, reference):
    """Backtracking search for a vertex bijection matching two Cartan matrices."""
    n = len(cartan)
    if len(reference) != n:
        return False

    def neighbor_profile(m, i):
        return sorted(
            (m[i][j], m[j][i]) for j in range(n) if j != i and m[i][j] != 0
        )

    prof_c = [neighbor_profile(cartan, i) for i in range(n)]
    prof_r = [neighbor_profile(reference, i) for i in range(n)]
    if sorted(map(tuple, prof_c)) != sorted(map(tuple, prof_r)):
        return False

    assignment = [None] * n
    used = [False] * n

    def extend(i):
        if i == n:
            return True
        for j in range(n):
            if used[j] or prof_c[i] != prof_r[j]:
                continue
            ok = True
            for k in range(i):
                if cartan[i][k] != reference[j][assignment[k]] or \
                   cartan[k][i] != reference[assignment[k]][j]:
                    ok = False
                    break
            if ok:
                assignment[i] = j
                used[j] = True
                if extend(i + 1):
                    return True
                used[j] = False
        return False

    return extend(0)


def classify_component(cartan):
    """Cartan type ``(letter, rank)`` of one connected finite-type component."""
    n = len(cartan)
    candidates = [("A", n)]
    if n >= 2:
        candidates += [("B", n), ("C", n)]
    if n == 2:
        candidates.append(("G", 2))
    if n == 4:
        candidates.append(("F", 4))
    if n >= 4:
        candidates.append(("D", n))
    if n in (6, 7, 8):
        candidates.append(("E", n))
    for letter, rank in candidates:
        if _isomorphic_cartan(cartan, _reference_cartan(letter, rank)):
            return letter, rank
    raise RootDataError("component is not of finite Dynkin type")


# ---------------------------------------------------------------------------
# Smith normal form over Z, with unimodular transforms


def smith_normal_form(matrix, rows, cols):
    """Return ``(diag, U, V)`` with ``U @ matrix @ V`` diagonal.

    ``U`` (rows x rows) and ``V`` (cols x cols) are unimodular; the diagonal
    entries are nonnegative and satisfy the divisibility chain.
    """
    m = [list(r) for r in matrix]
    u = [[int(i == j) for j in range(rows)] for i in range(rows)]
    v = [[int(i == j) for j in range(cols)] for i in range(cols)]

    def row_op(i, j, q):  # row_i -= q * row_j
        m[i] = [a - q * b for a, b in zip(m[i], m[j])]
        u[i] = [a - q * b for a, b in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for r in m:
            r[i] -= q * r[j]
        for r in v:
            r[i] -= q * r[j]

    def swap_rows(i, j):
        m[i], m[j] = m[j], m[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in m:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    t = 0
    while t < min(rows, cols):
        pivot = None
        for i in range(t, rows):
            for j in range(t, cols):
                if m[i][j] != 0 and (pivot is None or abs(m[i][j]) < abs(m[pivot[0]][pivot[1]])):
                    pivot = (i, j)
        if pivot is None:
            break
        swap_rows(t, pivot[0])
        swap_cols(t, pivot[1])
        while True:
            done = True
            for i in range(t + 1, rows):
                if m[i][t]:
                    q = m[i][t] // m[t][t]
                    row_op(i, t, q)
                    if m[i][t]:
                        swap_rows(t, i)
                        done = False
            for j in range(t + 1, cols):
                if m[t][j]:
                    q = m[t][j] // m[t][t]
                    col_op(j, t, q)
                    if m[t][j]:
                        swap_cols(t, j)
                        done = False
            if done:
                # pivot must divide the remaining block
                offender = None
                for i in range(t + 1, rows):
                    for j in range(t + 1, cols):
                        if m[i][j] % m[t][t]:
                            offender = i
                            break
                    if offender is not None:
                        break
                if offender is None:
                    break
                row_op(t, offender, -1)
        if m[t][t] < 0:
            m[t] = [-a for a in m[t]]
            u[t] = [-a for a in u[t]]
        t += 1

    return m, u, v


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Pi1Data:
    """The quotient ``Y / coroot lattice`` with its projection matrix.

    ``free_rows`` give the free coordinates of the projection and
    ``torsion_rows`` the finite ones (each paired with its order).  Exponent
    tuples follow the :class:`~coulombhs.series.FugacityGroup` convention:
    free coordinates first, then torsion coordinates.
    """

    group: FugacityGroup
    free_rows: tuple
    torsion_rows: tuple  # tuples (row, order)

    def project(self, coweight):
        free = tuple(dot(r, coweight) for r in self.free_rows)
        tors = tuple(dot(r, coweight) % m for r, m in self.torsion_rows)
        return free + tors


class RootDatum:
    """Rank, positive roots, simple roots and simple coroots of a compact group.

    Construction validates the data: every positive root must be reachable
    from the simple ones, simple reflections must permute the other positive
    roots, and the Cartan matrix must be of finite Dynkin type on every
    component.  Queries are pure; instances are immutable and shareable.
    """

    def __init__(self, rank, positive_roots, simple_roots, simple_coroots,
                 label="", blocks=None):
        self.rank = int(rank)
        self.positive_roots = tuple(tuple(int(x) for x in r) for r in positive_roots)
        self.simple_roots = tuple(tuple(int(x) for x in r) for r in simple_roots)
        self.simple_coroots = tuple(tuple(int(x) for x in r) for r in simple_coroots)
        self.label = label or "custom"
        self.blocks = blocks  # ((kind, n), ...) for built-in products, else None
        self._coroot_of = {}
        self._levi_cache = {}
        self._dressing_cache = {}
        self._pi1_cache = None
        self._validate()

    # -- validation ---------------------------------------------------------

    def _validate(self):
        if self.rank < 0:
            raise RootDataError("rank must be nonnegative")
        for r in self.positive_roots + self.simple_coroots:
            if len(r) != self.rank:
                raise RootDataError("root/coroot length does not match the rank")
        if len(self.simple_roots) != len(self.simple_coroots):
            raise RootDataError("simple roots and coroots must be paired")
        pos = set(self.positive_roots)
        if len(pos) != len(self.positive_roots):
            raise RootDataError("duplicate positive roots")
        for s in self.simple_roots:
            if s not in pos:
                raise RootDataError("simple roots must be positive roots")

        cartan = self.cartan_matrix()
        for i in range(len(cartan)):
            if cartan[i][i] != 2:
                raise RootDataError("Cartan diagonal must be 2")
            for j in range(len(cartan)):
                if i != j and cartan[i][j] > 0:
                    raise RootDataError("off-diagonal Cartan entries must be <= 0")
                if i != j and (cartan[i][j] == 0) != (cartan[j][i] == 0):
                    raise RootDataError("Cartan matrix zero pattern must be symmetric")

        # reject non-finite type at construction, not at query time
        for component in _components_of(cartan):
            classify_component(_submatrix(cartan, component))

        # every positive root is a nonnegative combination of simple ones:
        # in finite type each non-simple positive root drops to a positive
        # root after subtracting some simple root
        simple = set(self.simple_roots)
        for beta in self.positive_roots:
            if beta in simple:
                continue
            if not any(
                tuple(b - a for b, a in zip(beta, alpha)) in pos
                for alpha in self.simple_roots
            ):
                raise RootDataError(f"positive root {beta} is not generated by simple roots")

        # simple reflections permute the other positive roots
        for i, alpha in enumerate(self.simple_roots):
            for beta in self.positive_roots:
                if beta == alpha:
                    continue
                if self._reflect_root(i, beta) not in pos:
                    raise RootDataError(
                        f"reflection through simple root {alpha} does not permute "
                        f"the positive roots (fails on {beta})"
                    )

        self._compute_coroots()

    def _reflect_root(self, i, beta):
        coeff = dot(beta, self.simple_coroots[i])
        alpha = self.simple_roots[i]
        return tuple(b - coeff * a for b, a in zip(beta, alpha))

    def _compute_coroots(self):
        """Propagate coroots from the simple ones by simultaneous reflections."""
        pos = set(self.positive_roots)
        coroot = dict(zip(self.simple_roots, self.simple_coroots))
        queue = list(zip(self.simple_roots, self.simple_coroots))
        while queue:
            beta, beta_v = queue.pop()
            for i in range(len(self.simple_roots)):
                image = self._reflect_root(i, beta)
                if image not in pos or image in coroot:
                    continue
                coeff = dot(self.simple_roots[i], beta_v)
                alpha_v = self.simple_coroots[i]
                image_v = tuple(b - coeff * a for b, a in zip(beta_v, alpha_v))
                coroot[image] = image_v
                queue.append((image, image_v))
        if len(coroot) != len(self.positive_roots):
            raise RootDataError("positive roots are not a single Weyl closure of the simple ones")
        self._coroot_of = coroot

    # -- basic structure -----------------------------------------------------

    def cartan_matrix(self):
        return [
            [dot(alpha, coroot) for alpha in self.simple_roots]
            for coroot in self.simple_coroots
        ]

    def coroot(self, beta):
        try:
            return self._coroot_of[tuple(beta)]
        except KeyError:
            raise RootDataError(f"{beta} is not a positive root") from None

    @property
    def num_positive_roots(self):
        return len(self.positive_roots)

    @property
    def dimension(self):
        """Complex dimension of the complexified group."""
        return self.rank + 2 * len(self.positive_roots)

    def __eq__(self, other):
        return (
            isinstance(other, RootDatum)
            and self.rank == other.rank
            and self.positive_roots == other.positive_roots
            and self.simple_roots == other.simple_roots
            and self.simple_coroots == other.simple_coroots
        )

    def __hash__(self):
        return hash((self.rank, self.positive_roots, self.simple_roots, self.simple_coroots))

    def __repr__(self):
        return f"<RootDatum {self.label} rank={self.rank} pos_roots={len(self.positive_roots)}>"

    # -- Weyl action on coweights ---------------------------------------------

    def check_coweight(self, coweight):
        if len(coweight) != self.rank:
            raise RootDataError(
                f"coweight length {len(coweight)} does not match rank {self.rank}"
            )
        return tuple(int(x) for x in coweight)

    def reflect_coweight(self, i, coweight):
        coeff = dot(self.simple_roots[i], coweight)
        alpha_v = self.simple_coroots[i]
        return tuple(x - coeff * a for x, a in zip(coweight, alpha_v))

    def is_dominant(self, coweight):
        coweight = self.check_coweight(coweight)
        return all(dot(alpha, coweight) >= 0 for alpha in self.simple_roots)

    def to_dominant(self, coweight):
        """The unique dominant representative of the Weyl orbit."""
        lam = self.check_coweight(coweight)
        max_steps = 4 ** max(1, len(self.positive_roots))
        for _ in range(max_steps):
            for i, alpha in enumerate(self.simple_roots):
                if dot(alpha, lam) < 0:
                    lam = self.reflect_coweight(i, lam)
                    break
            else:
                return lam
        raise RootDataError("dominance iteration did not terminate")  # pragma: no cover

    def weyl_orbit(self, coweight, limit=1_000_000):
        """The full Weyl orbit, closed under simple reflections, no duplicates."""
        start = self.check_coweight(coweight)
        seen = {start}
        queue = [start]
        while queue:
            lam = queue.pop()
            for i in range(len(self.simple_roots)):
                image = self.reflect_coweight(i, lam)
                if image not in seen:
                    if len(seen) >= limit:
                        raise RootDataError(f"Weyl orbit exceeds the limit {limit}")
                    seen.add(image)
                    queue.append(image)
        return sorted(seen)

    # -- stabilizer degrees and the dressing factor ---------------------------

    def stabilizer_degrees(self, coweight):
        """Casimir degrees of the stabilizer of a dominant coweight.

        The stabilizer is the Levi whose roots pair to zero with the
        coweight; its degrees are the component exponents plus one, padded
        with 1 for every central torus direction.  The result is a sorted
        tuple of length ``rank``.
        """
        lam = self.check_coweight(coweight)
        if not self.is_dominant(lam):
            raise RootDataError(f"{lam} is not dominant")
        key = tuple(dot(beta, lam) == 0 for beta in self.positive_roots)
        cached = self._levi_cache.get(key)
        if cached is not None:
            return cached

        levi = [beta for flag, beta in zip(key, self.positive_roots) if flag]
        levi_set = set(levi)
        simple = [
            beta for beta in levi
            if not any(
                tuple(b - g for b, g in zip(beta, gamma)) in levi_set
                for gamma in levi
            )
        ]
        cartan = [
            [dot(b, self.coroot(a)) for b in simple]
            for a in simple
        ]
        degrees = []
        for component in _components_of(cartan):
            letter, n = classify_component(_submatrix(cartan, component))
            degrees.extend(e + 1 for e in type_exponents(letter, n))
        degrees.extend([1] * (self.rank - len(simple)))
        result = tuple(sorted(degrees))
        self._levi_cache[key] = result
        return result

    def dressing_coefficients(self, coweight, cutoff):
        """Coefficients of ``prod_i 1/(1 - t^{2 d_i})`` as a plain int list."""
        degrees = self.stabilizer_degrees(coweight)
        key = (degrees, cutoff)
        cached = self._dressing_cache.get(key)
        if cached is None:
            coeffs = [1] + [0] * cutoff
            for d in degrees:
                step = 2 * d
                # multiply by the geometric series 1/(1 - t^step) in place
                for k in range(step, cutoff + 1):
                    coeffs[k] += coeffs[k - step]
            cached = coeffs
            self._dressing_cache[key] = cached
        return cached

    def dressing_factor(self, coweight, cutoff, group=None):
        """``prod_i 1/(1 - t^{2 d_i})`` over the stabilizer degrees, as a series."""
        group = group if group is not None else TRIVIAL_GROUP
        ident = group.identity()
        dicts = [
            {ident: c} if c else {}
            for c in self.dressing_coefficients(coweight, cutoff)
        ]
        return TruncatedSeries.from_dicts(cutoff, group, dicts)

    # -- fundamental group ----------------------------------------------------

    def fundamental_group(self):
        """``Y / (coroot lattice)`` as a fugacity group with its projection.

        Computed from the Smith normal form of the matrix whose columns are
        the simple coroots.  Free rows are sign-normalized so the projection
        of the first coweight hitting them is positive (for ``u(n)`` this
        makes the topological charge the coordinate sum).
        """
        if self._pi1_cache is not None:
            return self._pi1_cache
        r, s = self.rank, len(self.simple_coroots)
        matrix = [[self.simple_coroots[j][i] for j in range(s)] for i in range(r)]
        diag, u, _v = smith_normal_form(matrix, r, s)
        free_rows, torsion_rows, orders = [], [], []
        for i in range(r):
            d = diag[i][i] if i < min(r, s) else 0
            if d == 0:
                row = tuple(u[i])
                lead = next((x for x in row if x != 0), 1)
                if lead < 0:
                    row = tuple(-x for x in row)
                free_rows.append(row)
            elif d >= 2:
                torsion_rows.append((tuple(u[i]), d))
                orders.append(d)
        pi1 = Pi1Data(
            group=FugacityGroup(free_rank=len(free_rows), torsion_orders=tuple(orders)),
            free_rows=tuple(free_rows),
            torsion_rows=tuple(torsion_rows),
        )
        self._pi1_cache = pi1
        return pi1

    def __getstate__(self):
        state = self.__dict__.copy()
        state["_levi_cache"] = {}
        state["_dressing_cache"] = {}
        state["_pi1_cache"] = None
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)


def _components_of(cartan):
    """Connected components of the Dynkin graph of a Cartan matrix."""
    n = len(cartan)
    unseen = set(range(n))
    components = []
    while unseen:
        seed = min(unseen)
        comp, queue = {seed}, [seed]
        while queue:
            i = queue.pop()
            for j in range(n):
                if j not in comp and cartan[i][j] != 0:
                    comp.add(j)
                    queue.append(j)
        unseen -= comp
        components.append(sorted(comp))
    return components


def _submatrix(cartan, indices):
    return [[cartan[i][j] for j in indices] for i in indices]


# ---------------------------------------------------------------------------
# Builders in standard coordinates


def _unit(n, i):
    return tuple(int(j == i) for j in range(n))


def _diff(n, i, j):
    return tuple(int(k == i) - int(k == j) for k in range(n))


def _sum2(n, i, j):
    return tuple(int(k == i) + int(k == j) for k in range(n))


def u(n):
    """Unitary group: ``Y = Z^n``, positive roots ``e_i - e_j`` for ``i < j``."""
    if n < 1:
        raise RootDataError("u(n) needs n >= 1")
    pos = [_diff(n, i, j) for i in range(n) for j in range(i + 1, n)]
    simple = [_diff(n, i, i + 1) for i in range(n - 1)]
    return RootDatum(n, pos, simple, simple, label=f"u({n})", blocks=(("u", n),))


def su(n):
    """Special unitary group in the rank ``n - 1`` simple-coroot basis.

    Coweights are coordinate vectors with respect to the simple coroots, so
    the simple coroots are the standard basis and the j-th simple root is
    the j-th row of the type-A Cartan matrix.  Matter weights must be given
    in the dual (fundamental-weight) coordinates.
    """
    if n < 2:
        raise RootDataError("su(n) needs n >= 2")
    r = n - 1
    cartan_row = lambda i: tuple(
        2 if j == i else (-1 if abs(j - i) == 1 else 0) for j in range(r)
    )
    simple = [cartan_row(i) for i in range(r)]
    pos = []
    for i in range(r):
        for j in range(i, r):
            root = tuple(sum(simple[k][c] for k in range(i, j + 1)) for c in range(r))
            pos.append(root)
    coroots = [_unit(r, i) for i in range(r)]
    return RootDatum(r, pos, simple, coroots, label=f"su({n})", blocks=(("su", n),))


def sp(n):
    """Compact symplectic group Sp(n): type C_n with long roots ``2 e_i``."""
    if n < 1:
        raise RootDataError("sp(n) needs n >= 1")
    pos = []
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(_diff(n, i, j))
            pos.append(_sum2(n, i, j))
    for i in range(n):
        pos.append(tuple(2 * int(k == i) for k in range(n)))
    simple = [_diff(n, i, i + 1) for i in range(n - 1)]
    simple.append(tuple(2 * int(k == n - 1) for k in range(n)))
    coroots = [_diff(n, i, i + 1) for i in range(n - 1)]
    coroots.append(_unit(n, n - 1))
    return RootDatum(n, pos, simple, coroots, label=f"sp({n})", blocks=(("sp", n),))


def so_odd(n):
    """SO(2n+1): type B_n with short roots ``e_i`` (coroots ``2 e_i``)."""
    if n < 1:
        raise RootDataError("so(2n+1) needs n >= 1")
    pos = []
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(_diff(n, i, j))
            pos.append(_sum2(n, i, j))
    for i in range(n):
        pos.append(_unit(n, i))
    simple = [_diff(n, i, i + 1) for i in range(n - 1)] + [_unit(n, n - 1)]
    coroots = [_diff(n, i, i + 1) for i in range(n - 1)]
    coroots.append(tuple(2 * int(k == n - 1) for k in range(n)))
    return RootDatum(n, pos, simple, coroots, label=f"so({2 * n + 1})", blocks=(("so_odd", n),))


def so_even(n):
    """SO(2n): type D_n; for ``n = 1`` this degenerates to a circle."""
    if n < 1:
        raise RootDataError("so(2n) needs n >= 1")
    if n == 1:
        return RootDatum(1, (), (), (), label="so(2)", blocks=(("t", 1),))
    pos, simple = [], []
    for i in range(n):
        for j in range(i + 1, n):
            pos.append(_diff(n, i, j))
            pos.append(_sum2(n, i, j))
    simple = [_diff(n, i, i + 1) for i in range(n - 1)] + [_sum2(n, n - 2, n - 1)]
    return RootDatum(n, pos, simple, simple, label=f"so({2 * n})", blocks=(("so_even", n),))


def torus(r):
    """A compact torus of rank ``r`` (``r = 0`` gives the trivial group)."""
    if r < 0:
        raise RootDataError("torus rank must be nonnegative")
    return RootDatum(r, (), (), (), label=f"torus({r})", blocks=(("t", r),) if r else ())


_BUILDERS = {
    "u": u,
    "su": su,
    "sp": sp,
    "so_odd": so_odd,
    "so_even": so_even,
    "torus": torus,
}


def builtin(kind, n):
    try:
        builder = _BUILDERS[kind]
    except KeyError:
        raise RootDataError(f"unknown group kind {kind!r}") from None
    return builder(n)


def product(data):
    """Direct product of root data, coordinates concatenated in order."""
    data = list(data)
    rank = sum(d.rank for d in data)
    pos, simple, coroots, blocks = [], [], [], []
    offset = 0
    simple_set = []
    for d in data:
        pad = lambda v: (0,) * offset + tuple(v) + (0,) * (rank - offset - d.rank)
        for beta in d.positive_roots:
            pos.append(pad(beta))
        for alpha, alpha_v in zip(d.simple_roots, d.simple_coroots):
            simple.append(pad(alpha))
            coroots.append(pad(alpha_v))
        if d.blocks is None:
            blocks = None
        elif blocks is not None:
            blocks.extend(d.blocks)
        offset += d.rank
    label = " x ".join(d.label for d in data) if data else "trivial"
    return RootDatum(rank, pos, simple, coroots, label=label,
                     blocks=tuple(blocks) if blocks is not None else None)


# ---------------------------------------------------------------------------
# Lattice enumeration of the dominant cone


def _box_nonincreasing(lo, hi, n):
    return itertools.combinations_with_replacement(range(hi, lo - 1, -1), n)


def _block_points(kind, n, radius):
    if kind == "t":
        return itertools.product(range(-radius, radius + 1), repeat=n)
    if kind == "u":
        return _box_nonincreasing(-radius, radius, n)
    if kind in ("sp", "so_odd"):
        return _box_nonincreasing(0, radius, n)
    if kind == "so_even":
        def gen():
            for mu in _box_nonincreasing(0, radius, n):
                yield mu
                if mu[-1] != 0:
                    yield mu[:-1] + (-mu[-1],)
        return gen()
    if kind == "su":
        cartan = _reference_cartan("A", n - 1)
        def gen():
            for c in itertools.product(range(0, radius + 1), repeat=n - 1):
                if all(dot(row, c) >= 0 for row in cartan):
                    yield c
        return gen()
    raise RootDataError(f"unknown block kind {kind!r}")  # pragma: no cover


def dominant_box_points(datum, radius):
    """All dominant lattice coweights with sup-norm at most ``radius``.

    Built-in (products of) root data are enumerated block by block; custom
    data fall back to scanning the full box and filtering by dominance.
    """
    if radius < 0:
        return
    if datum.rank == 0:
        yield ()
        return
    if datum.blocks is not None:
        iters = [_block_points(kind, n, radius) for kind, n in datum.blocks]
        for parts in itertools.product(*iters):
            yield tuple(itertools.chain.from_iterable(parts))
        return
    for point in itertools.product(range(-radius, radius + 1), repeat=datum.rank):
        if datum.is_dominant(point):
            yield point


def sup_norm(vector):
    return max((abs(x) for x in vector), default=0)
