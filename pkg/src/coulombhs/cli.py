"""Command-line surface: parse theory files, run computations, emit series.

Theory files are JSON documents (``schema_version`` 1) validated strictly:
unknown fields are rejected.  Option precedence is command-line flag, then
``COULOMBHS_*`` environment variable, then the file's ``options`` block,
then the built-in default.  Exit status: 0 on success, 1 on schema or
usage errors, 2 when a bad theory is refused (the message carries the
witness charge).

Fugacity naming: free generators print as ``z1, z2, ...`` and torsion
generators as ``w1, w2, ...`` (each with its stated order).
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction

from . import abelian, monopole, motivic, rootdata, symprod, theory
from .abelian import RingElement
from .rootdata import RootDataError
from .series import FugacityGroup, SeriesError, TruncatedSeries
from .theory import BadTheoryError, GaugeTheory, TheoryError


SCHEMA_VERSION = 1
DEFAULT_CUTOFF = 20
ENV_PREFIX = "COULOMBHS_"


class SchemaError(ValueError):
    """A theory file violates the documented schema."""


# ---------------------------------------------------------------------------
# Theory file schema


def _require(doc, field, kind, where):
    if field not in doc:
        raise SchemaError(f"{where}: missing required field {field!r}")
    value = doc[field]
    if kind is not None and not isinstance(value, kind):
        raise SchemaError(f"{where}: field {field!r} has the wrong type")
    return value


def _reject_unknown(doc, allowed, where):
    unknown = set(doc) - set(allowed)
    if unknown:
        raise SchemaError(f"{where}: unknown fields {sorted(unknown)}")


def _parse_group_list(spec, where):
    if not isinstance(spec, list):
        raise SchemaError(f"{where}: expected a list of {{type, n}} entries")
    data = []
    for i, entry in enumerate(spec):
        if not isinstance(entry, dict):
            raise SchemaError(f"{where}[{i}]: expected an object")
        _reject_unknown(entry, {"type", "n"}, f"{where}[{i}]")
        kind = _require(entry, "type", str, f"{where}[{i}]")
        n = _require(entry, "n", int, f"{where}[{i}]")
        try:
            data.append(rootdata.builtin(kind, n))
        except RootDataError as exc:
            raise SchemaError(f"{where}[{i}]: {exc}") from exc
    return rootdata.product(data)


def _int_list(value, where):
    if not isinstance(value, list) or not all(isinstance(x, int) for x in value):
        raise SchemaError(f"{where}: expected a list of integers")
    return tuple(value)


_TOP_FIELDS = {"schema_version", "name", "gauge", "flavor", "matter", "options"}
_OPTION_FIELDS = {"cutoff", "refine", "lambda_F", "radius_override"}
_REFINE_VALUES = ("none", "pi1", "flavor", "both")


def load_theory_file(path):
    """Parse and validate one theory file; returns ``(theory, doc)``."""
    try:
        with open(path, "r", encoding="utf-8") as handle:
            doc = json.load(handle)
    except OSError as exc:
        raise SchemaError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path} is not valid JSON: {exc}") from exc
    th = build_theory(doc, where=path)
    return th, doc


def build_theory(doc, where="theory"):
    if not isinstance(doc, dict):
        raise SchemaError(f"{where}: expected a JSON object")
    _reject_unknown(doc, _TOP_FIELDS, where)
    version = _require(doc, "schema_version", int, where)
    if version != SCHEMA_VERSION:
        raise SchemaError(f"{where}: unsupported schema_version {version}")
    if "name" in doc and not isinstance(doc["name"], str):
        raise SchemaError(f"{where}: name must be a string")
    options = doc.get("options", {})
    if not isinstance(options, dict):
        raise SchemaError(f"{where}: options must be an object")
    _reject_unknown(options, _OPTION_FIELDS, f"{where}.options")
    if "refine" in options and options["refine"] not in _REFINE_VALUES:
        raise SchemaError(f"{where}.options: refine must be one of {_REFINE_VALUES}")

    matter = _require(doc, "matter", dict, where)
    builder = _require(matter, "builder", str, f"{where}.matter")

    try:
        if builder == "custom":
            th = _build_custom(doc, matter, where)
        elif builder == "quiver":
            th = _build_quiver(doc, matter, where)
        elif builder == "abelian":
            th, _data = _build_abelian(doc, matter, where)
        elif builder == "so_instanton":
            th = _build_so_instanton(doc, matter, where)
        else:
            raise SchemaError(f"{where}.matter: unknown builder {builder!r}")
    except (TheoryError, RootDataError, abelian.AbelianError) as exc:
        raise SchemaError(f"{where}: {exc}") from exc
    th.label = doc.get("name", th.label)
    return th


def _forbid_groups(doc, where, builder):
    for field in ("gauge", "flavor"):
        if field in doc:
            raise SchemaError(
                f"{where}: the {builder} builder determines {field!r}; drop the field"
            )


def _build_custom(doc, matter, where):
    _reject_unknown(matter, {"builder", "weights"}, f"{where}.matter")
    gauge = _parse_group_list(_require(doc, "gauge", list, where), f"{where}.gauge")
    flavor = None
    if "flavor" in doc:
        flavor = _parse_group_list(doc["flavor"], f"{where}.flavor")
    f_rank = flavor.rank if flavor is not None else 0
    weights = _require(matter, "weights", list, f"{where}.matter")
    entries = []
    for i, item in enumerate(weights):
        spot = f"{where}.matter.weights[{i}]"
        if not isinstance(item, dict):
            raise SchemaError(f"{spot}: expected an object")
        _reject_unknown(item, {"gauge", "flavor", "multiplicity"}, spot)
        gw = _int_list(_require(item, "gauge", list, spot), f"{spot}.gauge")
        fw = _int_list(item.get("flavor", [0] * f_rank), f"{spot}.flavor")
        mult = item.get("multiplicity", 1)
        if not isinstance(mult, int) or mult < 1:
            raise SchemaError(f"{spot}: multiplicity must be a positive integer")
        entries.append((gw, fw, mult))
    matter_set = theory.MatterWeights(gauge.rank, f_rank, entries)
    return GaugeTheory(gauge, matter_set, flavor)


def _build_quiver(doc, matter, where):
    _forbid_groups(doc, where, "quiver")
    allowed = {"builder", "vertices", "edges", "dims", "framing", "flavored"}
    _reject_unknown(matter, allowed, f"{where}.matter")
    vertices = _require(matter, "vertices", list, f"{where}.matter")
    if not all(isinstance(v, str) for v in vertices):
        raise SchemaError(f"{where}.matter: vertices must be strings")
    edges_raw = _require(matter, "edges", list, f"{where}.matter")
    edges = []
    for i, e in enumerate(edges_raw):
        if not (isinstance(e, list) and len(e) == 2):
            raise SchemaError(f"{where}.matter.edges[{i}]: expected a pair")
        edges.append((e[0], e[1]))
    dims = _require(matter, "dims", dict, f"{where}.matter")
    framing = matter.get("framing", {})
    flavored = matter.get("flavored", False)
    if not isinstance(flavored, bool):
        raise SchemaError(f"{where}.matter: flavored must be a boolean")
    return theory.build_quiver(vertices, edges, dims, framing, flavored=flavored)


def _build_abelian(doc, matter, where):
    _forbid_groups(doc, where, "abelian")
    _reject_unknown(matter, {"builder", "alpha", "background"}, f"{where}.matter")
    alpha = _require(matter, "alpha", list, f"{where}.matter")
    rows = [_int_list(r, f"{where}.matter.alpha") for r in alpha]
    background = None
    if "background" in matter:
        background = _int_list(matter["background"], f"{where}.matter.background")
    return theory.build_abelian(rows, background=background)


def _build_so_instanton(doc, matter, where):
    _forbid_groups(doc, where, "so_instanton")
    _reject_unknown(matter, {"builder", "N", "k"}, f"{where}.matter")
    return theory.build_so_instanton(
        _require(matter, "N", int, f"{where}.matter"),
        _require(matter, "k", int, f"{where}.matter"),
    )


# ---------------------------------------------------------------------------
# Series output


def variable_names(group):
    free = [f"z{i + 1}" for i in range(group.free_rank)]
    torsion = [f"w{i + 1}" for i in range(len(group.torsion_orders))]
    return free, torsion


def monomial_name(group, exponent):
    free, torsion = variable_names(group)
    names = free + torsion
    bits = [
        name + (f"^{e}" if e != 1 else "")
        for name, e in zip(names, exponent)
        if e != 0
    ]
    return "*".join(bits) if bits else "1"


def parse_monomial(group, text):
    free, torsion = variable_names(group)
    index = {name: i for i, name in enumerate(free + torsion)}
    exponent = [0] * len(group)
    if text.strip() != "1":
        for bit in text.split("*"):
            name, _, power = bit.partition("^")
            if name not in index:
                raise SchemaError(f"unknown fugacity variable {name!r}")
            exponent[index[name]] = int(power) if power else 1
    return group.reduce(tuple(exponent))


def _coeff_out(value):
    if isinstance(value, Fraction):
        if value.denominator == 1:
            return int(value)
        return f"{value.numerator}/{value.denominator}"
    return value


def _coeff_in(value):
    if isinstance(value, str):
        num, _, den = value.partition("/")
        return Fraction(int(num), int(den) if den else 1)
    if isinstance(value, int):
        return value
    raise SchemaError(f"bad coefficient {value!r}")


def series_to_payload(series):
    free, torsion = variable_names(series.group)
    coeffs = {}
    for k, poly in enumerate(series.coeffs):
        if poly.is_zero():
            continue
        row = {}
        for exp in sorted(poly.terms):
            row[monomial_name(series.group, exp)] = _coeff_out(poly.terms[exp])
        coeffs[str(k)] = row
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "series",
        "cutoff": series.cutoff,
        "fugacity_group": {
            "free_rank": series.group.free_rank,
            "torsion_orders": list(series.group.torsion_orders),
        },
        "variables": {
            "free": free,
            "torsion": [
                {"name": name, "order": order}
                for name, order in zip(torsion, series.group.torsion_orders)
            ],
        },
        "coefficients": coeffs,
    }


def series_from_payload(payload):
    group = FugacityGroup(
        free_rank=payload["fugacity_group"]["free_rank"],
        torsion_orders=tuple(payload["fugacity_group"]["torsion_orders"]),
    )
    cutoff = payload["cutoff"]
    dicts = [dict() for _ in range(cutoff + 1)]
    for key, row in payload["coefficients"].items():
        k = int(key)
        for mono, value in row.items():
            dicts[k][parse_monomial(group, mono)] = _coeff_in(value)
    return TruncatedSeries.from_dicts(cutoff, group, dicts)


def format_series_human(series):
    lines = []
    free, torsion = variable_names(series.group)
    if torsion:
        orders = ", ".join(
            f"{name} of order {order}"
            for name, order in zip(torsion, series.group.torsion_orders)
        )
        lines.append(f"# torsion fugacities: {orders}")
    bits = []
    for k, poly in enumerate(series.coeffs):
        if poly.is_zero():
            continue
        parts = []
        for exp in sorted(poly.terms):
            coeff = poly.terms[exp]
            mono = monomial_name(series.group, exp)
            if mono == "1":
                parts.append(str(_coeff_out(coeff)))
            elif coeff == 1:
                parts.append(mono)
            else:
                parts.append(f"{_coeff_out(coeff)}*{mono}")
        body = " + ".join(parts)
        if len(poly.terms) > 1:
            body = f"({body})"
        if k == 0:
            bits.append(body)
        else:
            bits.append(f"{body}*t^{k}" if k > 1 else f"{body}*t")
    lines.append(" + ".join(bits) if bits else "0")
    lines.append(f"# truncated after t^{series.cutoff}")
    return "\n".join(lines)


def format_series_csv(series):
    lines = ["t_exponent,fugacity_monomial,coefficient"]
    for k, poly in enumerate(series.coeffs):
        for exp in sorted(poly.terms):
            mono = monomial_name(series.group, exp)
            lines.append(f"{k},{mono},{_coeff_out(poly.terms[exp])}")
    return "\n".join(lines)


def emit_series(series, args):
    if args.format == "json":
        text = json.dumps(series_to_payload(series), indent=2, sort_keys=True)
    elif args.format == "csv":
        text = format_series_csv(series)
    else:
        text = format_series_human(series)
    _write_output(text, args)


def _write_output(text, args):
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8") as handle:
            handle.write(text + "\n")
    else:
        print(text)


# ---------------------------------------------------------------------------
# Option resolution


def _env(name, cast):
    raw = os.environ.get(ENV_PREFIX + name)
    if raw is None:
        return None
    try:
        return cast(raw)
    except ValueError as exc:
        raise SchemaError(f"bad environment value for {ENV_PREFIX}{name}: {raw!r}") from exc


def _cast_charge(text):
    text = text.strip().strip("[]()")
    if not text:
        return ()
    return tuple(int(x) for x in text.replace(" ", "").split(","))


def _resolve(flag_value, file_value, default):
    if flag_value is not None:
        return flag_value
    if file_value is not None:
        return file_value
    return default


def _series_options(args, doc):
    options = doc.get("options", {})
    cutoff = _resolve(args.cutoff, options.get("cutoff"), DEFAULT_CUTOFF)
    refine = _resolve(args.refine, options.get("refine"), "none")
    if refine not in _REFINE_VALUES:
        raise SchemaError(f"refine must be one of {_REFINE_VALUES}")
    flux = args.lambda_f
    if flux is None and "lambda_F" in options:
        flux = tuple(_int_list(options["lambda_F"], "options.lambda_F"))
    radius = _resolve(args.radius_override, options.get("radius_override"), None)
    if refine in ("flavor", "both") and flux is None:
        raise SchemaError("refine mode needs a background flux (lambda_F)")
    if refine in ("none", "pi1"):
        flux = None
    return cutoff, refine in ("pi1", "both"), flux, radius


# ---------------------------------------------------------------------------
# Commands


def cmd_hilbert(args):
    th, doc = load_theory_file(args.theory)
    cutoff, refine_pi1, flux, radius = _series_options(args, doc)
    series = monopole.hilbert_series(
        th, cutoff, refine_pi1=refine_pi1, background=flux,
        radius_override=radius, workers=args.workers,
    )
    emit_series(series, args)
    return 0


def cmd_classify(args):
    th, _doc = load_theory_file(args.theory)
    cls = theory.classify(th, search_radius=args.search_radius)
    if args.format == "json":
        payload = {
            "verdict": cls.verdict,
            "min_twice_dimension": cls.min_dim2,
            "witness": list(cls.witness) if cls.witness is not None else None,
            "slope": str(cls.slope) if cls.slope is not None else None,
            "bounded_search": cls.bounded_search,
        }
        _write_output(json.dumps(payload, indent=2, sort_keys=True), args)
    else:
        _write_output(cls.describe(), args)
    return 2 if cls.verdict == theory.BAD else 0


def cmd_glue(args):
    theories = []
    for path in args.theories:
        th, _doc = load_theory_file(path)
        if th.flavor is None:
            raise SchemaError(f"{path}: gluing needs a theory with a flavor datum")
        theories.append(th)
    cutoff = args.cutoff if args.cutoff is not None else DEFAULT_CUTOFF
    series = monopole.glue_series(theories, cutoff, workers=args.workers)
    emit_series(series, args)
    return 0


def cmd_abelian_ring(args):
    th, doc = load_theory_file(args.theory)
    if doc["matter"].get("builder") != "abelian":
        raise SchemaError("abelian-ring needs a theory file with the abelian builder")
    _th, data = _build_abelian(doc, doc["matter"], args.theory)
    cutoff = _resolve(args.cutoff, doc.get("options", {}).get("cutoff"), DEFAULT_CUTOFF)
    bound = args.max_degree if args.max_degree is not None else cutoff

    g = data.gauge_rank
    lines = [f"charge matrix: {data.num_hypers} hypers, gauge rank {g}"]
    lines.append("generators:")
    for p in range(g):
        lines.append(f"  eta{p + 1}  (degree 2)")
    units = []
    for p in range(g):
        for sign in (1, -1):
            lam = tuple(sign * int(q == p) for q in range(g))
            units.append(lam)
            lines.append(
                f"  z^{_fmt_charge(lam)}  (degree {abelian.monopole_dimension(data, lam)})"
            )
    lines.append(f"relations among charge generators (degree <= {bound}):")
    for i, lam in enumerate(units):
        for mu in units[i:]:
            degree = abelian.monopole_dimension(data, lam) + abelian.monopole_dimension(data, mu)
            if degree > bound:
                continue
            product = abelian.ring_mul(
                data, RingElement.basis(g, lam), RingElement.basis(g, mu)
            )
            lines.append(
                f"  z^{_fmt_charge(lam)} * z^{_fmt_charge(mu)} = {_fmt_element(product)}"
            )
    series = abelian.ring_hilbert(data, cutoff)
    dims = [
        series.coefficient(k).sum_of_coefficients() for k in range(cutoff + 1)
    ]
    lines.append("graded dimensions (t^0 ..):")
    lines.append("  " + ", ".join(str(d) for d in dims))
    _write_output("\n".join(lines), args)
    return 0


def _fmt_charge(lam):
    return "(" + ",".join(str(x) for x in lam) + ")"


def _fmt_element(element):
    if element.is_zero():
        return "0"
    bits = []
    for lam in sorted(element.terms):
        poly = element.terms[lam]
        eta = abelian._format_eta(poly)
        charge = _fmt_charge(lam)
        if any(lam):
            bits.append(f"({eta}) * z^{charge}" if eta != "1" else f"z^{charge}")
        else:
            bits.append(eta)
    return " + ".join(bits)


def cmd_motivic_check(args):
    datum = rootdata.builtin(args.group, args.n)
    box = args.box
    checked = failures = 0
    for charge in rootdata.dominant_box_points(datum, box):
        checked += 1
        if not motivic.term_check(datum, charge, route=args.route):
            failures += 1
            print(f"FAIL charge {charge}")
    norm = motivic.normalization_class(datum)
    lines = [
        f"checked {checked} dominant charges with sup-norm <= {box} for {datum.label}",
        f"route: {args.route}; identities hold: {checked - failures}/{checked}",
    ]
    if args.normalize:
        lines.append("bundle-side normalization divided out for display: " f"{norm!r}")
    else:
        lines.append(f"bundle side carries the normalization factor {norm!r}")
    _write_output("\n".join(lines), args)
    return 0 if failures == 0 else 1


def cmd_symprod_check(args):
    gap = symprod.pe_identity_gap(args.flavors, args.order_t, args.order_lambda)
    lines = [
        f"flavors {args.flavors}, orders t^{args.order_t} Lambda^{args.order_lambda}",
        f"largest coefficient gap: {gap}",
    ]
    if args.qbinomial:
        qgap = symprod.qbinomial_gap(args.flavors, args.order_t, args.order_lambda)
        lines.append(f"q-binomial resummation gap: {qgap}")
    _write_output("\n".join(lines), args)
    return 0


# ---------------------------------------------------------------------------


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # align usage errors with schema errors
        self.print_usage(sys.stderr)
        self.exit(1, f"{self.prog}: error: {message}\n")


def _add_output_flags(sub):
    sub.add_argument("--format", choices=("human", "json", "csv"),
                     default=_env("FORMAT", str) or "human")
    sub.add_argument("--output", default=None, help="write to a file instead of stdout")


def build_parser():
    parser = _Parser(
        prog="coulombhs",
        description="Exact Coulomb-branch Hilbert series via the monopole formula.",
        epilog=(
            "Fugacities print as z1.. (free) and w1.. (torsion, with stated order). "
            "Flags fall back to COULOMBHS_* environment variables, then to the "
            "theory file's options block, then to defaults "
            f"(cutoff {DEFAULT_CUTOFF}, refine none). "
            "Exit codes: 0 success, 1 schema/usage error, 2 bad-theory refusal."
        ),
    )
    commands = parser.add_subparsers(dest="command", required=True)

    hil = commands.add_parser("hilbert", help="monopole-formula Hilbert series")
    hil.add_argument("theory")
    hil.add_argument("--cutoff", type=int, default=_env("CUTOFF", int))
    hil.add_argument("--refine", choices=_REFINE_VALUES, default=_env("REFINE", str))
    hil.add_argument("--lambda-f", dest="lambda_f", type=_cast_charge,
                     default=_env("LAMBDA_F", _cast_charge),
                     help="background flavor flux, e.g. 1,0")
    hil.add_argument("--radius-override", type=int,
                     default=_env("RADIUS_OVERRIDE", int))
    hil.add_argument("--workers", type=int, default=_env("WORKERS", int) or 1)
    _add_output_flags(hil)
    hil.set_defaults(func=cmd_hilbert)

    cla = commands.add_parser("classify", help="good / ugly / bad verdict")
    cla.add_argument("theory")
    cla.add_argument("--search-radius", type=int, default=None,
                     help="bounded lattice scan instead of the exact slope")
    _add_output_flags(cla)
    cla.set_defaults(func=cmd_classify)

    glu = commands.add_parser("glue", help="glue flavored theories along G_F")
    glu.add_argument("theories", nargs="+")
    glu.add_argument("--cutoff", type=int, default=_env("CUTOFF", int))
    glu.add_argument("--workers", type=int, default=_env("WORKERS", int) or 1)
    _add_output_flags(glu)
    glu.set_defaults(func=cmd_glue)

    abe = commands.add_parser("abelian-ring",
                              help="generators, relations and graded dimensions")
    abe.add_argument("theory")
    abe.add_argument("--cutoff", type=int, default=_env("CUTOFF", int))
    abe.add_argument("--max-degree", type=int, default=None)
    _add_output_flags(abe)
    abe.set_defaults(func=cmd_abelian_ring)

    mot = commands.add_parser("motivic-check",
                              help="bundle-counting identity over a charge box")
    mot.add_argument("--group", choices=sorted(rootdata._BUILDERS), default="u")
    mot.add_argument("--n", type=int, required=True)
    mot.add_argument("--box", type=int, default=2)
    mot.add_argument("--route", choices=("auto", "general", "gl"), default="auto")
    mot.add_argument("--normalize", action="store_true",
                     help="divide out the overall normalization in the report")
    _add_output_flags(mot)
    mot.set_defaults(func=cmd_motivic_check)

    sym = commands.add_parser("symprod-check",
                              help="symmetric-product generating identity")
    sym.add_argument("--flavors", "--N", dest="flavors", type=int, required=True)
    sym.add_argument("--order-t", type=int, default=12)
    sym.add_argument("--order-lambda", type=int, default=3)
    sym.add_argument("--qbinomial", action="store_true",
                     help="also replay the q-binomial resummation")
    _add_output_flags(sym)
    sym.set_defaults(func=cmd_symprod_check)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except BadTheoryError as exc:
        print(f"refused: {exc}", file=sys.stderr)
        return 2
    except (SchemaError, TheoryError, RootDataError, SeriesError,
            abelian.AbelianError, motivic.MotivicError, symprod.SymProdError,
            monopole.EnumerationError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
