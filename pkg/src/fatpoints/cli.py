"""Command line interface.

Schemes come in as whitespace grid text (rows top to bottom, columns left
to right) or as a JSON document {"grid": [[...]], "row_points": [...],
"col_points": [...], "row_labels": [...], "col_labels": [...]}.
Coordinates are exact: integers, "p/q" strings or [p, q] pairs.

Exit codes: 0 success/verified, 1 mathematical negative (non-ACM, failed
verification, violated bounds), 2 input error.
"""

from __future__ import annotations

import argparse
import itertools
import json
import sys
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction

from .degrees import (
    hilbert_update,
    separator_degrees,
    separator_form_factors,
    separator_forms,
    truncated_sums,
)
from .errors import (
    FatPointsError,
    InvalidGridError,
    InvalidSchemeError,
    NotACMError,
    PointNotInSupportError,
    WindowError,
    WindowInsufficiencyError,
)
from .grid import (
    MultiplicityGrid,
    build_sz,
    canonicalize,
    check_multiplicity_bounds,
    find_incomparable,
    is_acm,
)
from .oracle import SchemeOracle
from .scheme import FatPointScheme

EXIT_OK = 0
EXIT_NEGATIVE = 1
EXIT_INPUT = 2


@dataclass(frozen=True)
class SchemeDocument:
    """Parsed scheme input: the grid plus optional coordinates and labels."""

    grid: MultiplicityGrid
    row_points: tuple | None = None
    col_points: tuple | None = None
    row_labels: tuple | None = None
    col_labels: tuple | None = None

    def scheme(self):
        return FatPointScheme.from_grid(self.grid, self.row_points, self.col_points)

    def label(self, axis, k):
        labels = self.row_labels if axis == "row" else self.col_labels
        if labels is not None:
            return labels[k]
        return ("P%d" if axis == "row" else "Q%d") % (k + 1)


# -- parsing -------------------------------------------------------------------


def _parse_rational(x, where):
    if isinstance(x, bool) or isinstance(x, float):
        raise InvalidSchemeError(
            '%s: floating point is not allowed; write exact values like "3/4"' % where
        )
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x)
        except (ValueError, ZeroDivisionError) as exc:
            raise InvalidSchemeError("%s: %s" % (where, exc)) from None
    if isinstance(x, list) and len(x) == 2 and all(isinstance(v, int) for v in x):
        if x[1] == 0:
            raise InvalidSchemeError("%s: zero denominator" % where)
        return Fraction(x[0], x[1])
    raise InvalidSchemeError("%s: cannot read %r as an exact rational" % (where, x))


def _parse_points(raw, count, field):
    if not isinstance(raw, list) or len(raw) != count:
        raise InvalidSchemeError("%s must be a list of %d coordinate pairs" % (field, count))
    pts = []
    for k, pair in enumerate(raw):
        where = "%s[%d]" % (field, k)
        if not isinstance(pair, list) or len(pair) != 2:
            raise InvalidSchemeError("%s must be a [c0, c1] pair" % where)
        pts.append((_parse_rational(pair[0], where), _parse_rational(pair[1], where)))
    return tuple(pts)


def _parse_grid_text(text):
    rows = []
    width = None
    for lineno, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        entries = []
        for tok in line.split():
            try:
                v = int(tok)
            except ValueError:
                raise InvalidGridError("line %d: %r is not an integer" % (lineno, tok)) from None
            if v < 0:
                raise InvalidGridError("line %d: negative multiplicity %d" % (lineno, v))
            entries.append(v)
        if width is None:
            width = len(entries)
        elif len(entries) != width:
            raise InvalidGridError(
                "line %d: row has %d entries, expected %d" % (lineno, len(entries), width)
            )
        rows.append(tuple(entries))
    if not rows:
        raise InvalidGridError("no grid rows found in the input")
    return SchemeDocument(grid=MultiplicityGrid(tuple(rows)))


def _parse_json(text):
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InvalidGridError("invalid JSON: %s" % exc) from None
    if not isinstance(doc, dict) or "grid" not in doc:
        raise InvalidGridError('JSON document needs a "grid" field')
    raw = doc["grid"]
    if not isinstance(raw, list) or not all(isinstance(r, list) for r in raw):
        raise InvalidGridError('"grid" must be a list of rows')
    for i, row in enumerate(raw):
        for j, x in enumerate(row):
            if isinstance(x, bool) or not isinstance(x, int):
                raise InvalidGridError(
                    "grid[%d][%d]: %r is not an integer" % (i, j, x)
                )
    grid = MultiplicityGrid(tuple(tuple(row) for row in raw))
    row_points = col_points = None
    if doc.get("row_points") is not None:
        row_points = _parse_points(doc["row_points"], grid.a, "row_points")
    if doc.get("col_points") is not None:
        col_points = _parse_points(doc["col_points"], grid.b, "col_points")
    row_labels = col_labels = None
    if doc.get("row_labels") is not None:
        row_labels = tuple(str(x) for x in doc["row_labels"])
        if len(row_labels) != grid.a:
            raise InvalidSchemeError("row_labels must have %d entries" % grid.a)
    if doc.get("col_labels") is not None:
        col_labels = tuple(str(x) for x in doc["col_labels"])
        if len(col_labels) != grid.b:
            raise InvalidSchemeError("col_labels must have %d entries" % grid.b)
    if row_points is not None:
        from .forms import normalize_projective

        row_points = tuple(normalize_projective(p) for p in row_points)
    if col_points is not None:
        from .forms import normalize_projective

        col_points = tuple(normalize_projective(p) for p in col_points)
    return SchemeDocument(grid, row_points, col_points, row_labels, col_labels)


def parse_scheme(text):
    """Parse the whitespace grid format or the JSON document format."""
    if text.lstrip().startswith("{"):
        return _parse_json(text)
    return _parse_grid_text(text)


def _emit_rational(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else "%d/%d" % (x.numerator, x.denominator)


def format_scheme(doc, fmt="json"):
    """Serialize a SchemeDocument; the JSON form round-trips exactly."""
    if fmt == "text":
        return str(doc.grid) + "\n"
    body = {"grid": [list(row) for row in doc.grid.m]}
    if doc.row_points is not None:
        body["row_points"] = [[_emit_rational(c) for c in pt] for pt in doc.row_points]
    if doc.col_points is not None:
        body["col_points"] = [[_emit_rational(c) for c in pt] for pt in doc.col_points]
    if doc.row_labels is not None:
        body["row_labels"] = list(doc.row_labels)
    if doc.col_labels is not None:
        body["col_labels"] = list(doc.col_labels)
    return json.dumps(body, indent=2) + "\n"


# -- shared option handling ------------------------------------------------


def _read_document(args):
    source = getattr(args, "scheme", None)
    if source is None or source == "-":
        text = sys.stdin.read()
    else:
        try:
            with open(source, "r", encoding="utf-8") as fh:
                text = fh.read()
        except OSError as exc:
            raise InvalidGridError("cannot read %s: %s" % (source, exc)) from None
    doc = parse_scheme(text)
    coords = getattr(args, "coords", None)
    if coords:
        try:
            with open(coords, "r", encoding="utf-8") as fh:
                raw = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise InvalidSchemeError("cannot read coordinates file: %s" % exc) from None
        row_points = doc.row_points
        col_points = doc.col_points
        if raw.get("row_points") is not None:
            row_points = _parse_points(raw["row_points"], doc.grid.a, "row_points")
        if raw.get("col_points") is not None:
            col_points = _parse_points(raw["col_points"], doc.grid.b, "col_points")
        doc = SchemeDocument(doc.grid, row_points, col_points, doc.row_labels, doc.col_labels)
    return doc


def _parse_pair(text, flag):
    parts = text.split(",")
    if len(parts) != 2:
        raise InvalidGridError("%s expects i,j (got %r)" % (flag, text))
    try:
        i, j = int(parts[0]), int(parts[1])
    except ValueError:
        raise InvalidGridError("%s expects integers i,j (got %r)" % (flag, text)) from None
    return i, j


def _point_arg(args, grid):
    i, j = _parse_pair(args.point, "--point")
    if not (1 <= i <= grid.a and 1 <= j <= grid.b):
        raise InvalidGridError(
            "--point %d,%d outside the %d x %d grid (indices are 1-based)"
            % (i, j, grid.a, grid.b)
        )
    return i - 1, j - 1


def _fmt_degrees(degrees):
    return " ".join("(%d,%d)" % d for d in degrees)


def _fmt_tuple(t):
    return "(" + ",".join(str(x) for x in t) + ")"


def _emit(args, out, text_lines, payload):
    if args.format == "json":
        out.write(json.dumps(payload) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")


# -- subcommands -------------------------------------------------------------


def _cmd_check_acm(args, out):
    doc = _read_document(args)
    witness = find_incomparable(doc.grid)
    if witness is None:
        _emit(args, out, ["ACM: yes"], {"command": "check-acm", "acm": True})
        return EXIT_OK
    _emit(
        args,
        out,
        ["ACM: no", "witness: %s vs %s" % (_fmt_tuple(witness[0]), _fmt_tuple(witness[1]))],
        {"command": "check-acm", "acm": False, "witness": [list(witness[0]), list(witness[1])]},
    )
    return EXIT_NEGATIVE


def _cmd_sz(args, out):
    doc = _read_document(args)
    tuples = build_sz(doc.grid)
    lines = ["%d tuples:" % len(tuples)] + [_fmt_tuple(t) for t in tuples]
    _emit(args, out, lines, {"command": "sz", "tuples": [list(t) for t in tuples]})
    return EXIT_OK


def _cmd_canonical(args, out):
    doc = _read_document(args)
    result = canonicalize(doc.grid)
    lines = [str(result.grid)]
    lines.append("row order: " + " ".join(str(k + 1) for k in result.row_order))
    lines.append("column order: " + " ".join(str(k + 1) for k in result.col_order))
    _emit(
        args,
        out,
        lines,
        {
            "command": "canonical",
            "grid": [list(r) for r in result.grid.m],
            "row_order": [k + 1 for k in result.row_order],
            "col_order": [k + 1 for k in result.col_order],
        },
    )
    return EXIT_OK


def _cmd_bounds(args, out):
    doc = _read_document(args)
    violations = check_multiplicity_bounds(doc.grid)
    if not violations:
        _emit(args, out, ["no violations"], {"command": "bounds", "violations": []})
        return EXIT_OK
    lines = []
    payload = []
    for v in violations:
        lines.append(
            "case %d at rows (%d,%d), columns (%d,%d): %d > %d"
            % (v.case, v.rows[0] + 1, v.rows[1] + 1, v.cols[0] + 1, v.cols[1] + 1, v.value, v.bound)
        )
        payload.append(
            {
                "case": v.case,
                "rows": [v.rows[0] + 1, v.rows[1] + 1],
                "cols": [v.cols[0] + 1, v.cols[1] + 1],
                "value": v.value,
                "bound": v.bound,
            }
        )
    _emit(args, out, lines, {"command": "bounds", "violations": payload})
    return EXIT_NEGATIVE


def _degree_payload(degset):
    return {
        "point": [degset.point[0] + 1, degset.point[1] + 1],
        "multiplicity": degset.multiplicity,
        "degrees": [list(d) for d in degset.degrees],
    }


def _cmd_degrees(args, out):
    doc = _read_document(args)
    grid = doc.grid
    if args.all:
        results = [separator_degrees(grid, i, j) for (i, j) in grid.support()]
        lines = [
            "%s x %s: %s" % (doc.label("row", d.point[0]), doc.label("col", d.point[1]), _fmt_degrees(d.degrees))
            for d in results
        ]
        _emit(args, out, lines, {"command": "degrees", "points": [_degree_payload(d) for d in results]})
        return EXIT_OK
    if not args.point:
        raise InvalidGridError("degrees needs --point i,j or --all")
    i, j = _point_arg(args, grid)
    degset = separator_degrees(grid, i, j)
    _emit(args, out, [_fmt_degrees(degset.degrees)], {"command": "degrees", **_degree_payload(degset)})
    return EXIT_OK


def _factored_text(doc, factors):
    parts = []
    for s, e in enumerate(factors[0]):
        if e:
            name = "L_%s" % doc.label("row", s)
            parts.append(name if e == 1 else "%s^%d" % (name, e))
    for p, e in enumerate(factors[1]):
        if e:
            name = "L_%s" % doc.label("col", p)
            parts.append(name if e == 1 else "%s^%d" % (name, e))
    return " ".join(parts) if parts else "1"


def _cmd_forms(args, out):
    doc = _read_document(args)
    grid = doc.grid
    targets = grid.support() if args.all else None
    if targets is None:
        if not args.point:
            raise InvalidGridError("forms needs --point i,j or --all")
        targets = [_point_arg(args, grid)]
    scheme = doc.scheme()
    lines = []
    payload = []
    for (i, j) in targets:
        degset = separator_degrees(grid, i, j)
        factors = separator_form_factors(grid, i, j)
        forms = separator_forms(scheme, i, j)
        entry = {
            "point": [i + 1, j + 1],
            "multiplicity": degset.multiplicity,
            "separators": [],
        }
        lines.append("point %s x %s:" % (doc.label("row", i), doc.label("col", j)))
        for l, (fac, form, deg) in enumerate(zip(factors, forms, degset.degrees)):
            lines.append(
                "  F_%d = %s   degree (%d,%d)" % (l + 1, _factored_text(doc, fac), deg[0], deg[1])
            )
            entry["separators"].append(
                {
                    "degree": list(deg),
                    "row_exponents": list(fac[0]),
                    "col_exponents": list(fac[1]),
                    "expanded": str(form),
                }
            )
        payload.append(entry)
    _emit(args, out, lines, {"command": "forms", "points": payload})
    return EXIT_OK


def _default_window(grid):
    return (
        sum(max(row) for row in grid.m),
        sum(max(col) for col in zip(*grid.m)),
    )


def _cmd_hilbert(args, out):
    doc = _read_document(args)
    grid = doc.grid
    window = _parse_pair(args.window, "--window") if args.window else _default_window(grid)
    if window[0] < 0 or window[1] < 0:
        raise InvalidGridError("--window expects nonnegative bounds")
    scheme = doc.scheme()
    oracle = SchemeOracle(scheme)
    table = oracle.hilbert_function(window)
    lines = ["H on 0..%d x 0..%d:" % window, str(table)]
    payload = {"command": "hilbert", "window": list(window), "values": [list(r) for r in table.values]}
    if args.drop:
        i, j = _parse_pair(args.drop, "--drop")
        if not (1 <= i <= grid.a and 1 <= j <= grid.b):
            raise InvalidGridError("--drop %d,%d outside the grid (1-based)" % (i, j))
        degset = separator_degrees(grid, i - 1, j - 1)
        updated = hilbert_update(table, degset)
        lines.append("after dropping %s x %s:" % (doc.label("row", i - 1), doc.label("col", j - 1)))
        lines.append(str(updated))
        payload["dropped_point"] = [i, j]
        payload["dropped_values"] = [list(r) for r in updated.values]
    _emit(args, out, lines, payload)
    return EXIT_OK


def _verify_point(scheme, grid, oracle, i, j, lines):
    degset = separator_degrees(grid, i, j)
    brute = oracle.minimal_generator_degrees(i, j)
    ok = Counter(degset.degrees) == brute
    lines.append(
        "point (%d,%d): formula %s vs oracle %s -> %s"
        % (
            i + 1,
            j + 1,
            _fmt_degrees(degset.degrees),
            _fmt_degrees(sorted(brute.elements())),
            "ok" if ok else "MISMATCH",
        )
    )
    if not ok:
        return False
    for l, form in enumerate(separator_forms(scheme, i, j)):
        if not oracle.is_separator(i, j, form):
            lines.append("point (%d,%d): form %d REJECTED by the separator test" % (i + 1, j + 1, l + 1))
            return False
    lines.append("point (%d,%d): all %d explicit forms verified" % (i + 1, j + 1, degset.multiplicity))
    return True


def _verify_hilbert_update(scheme, grid, oracle, i, j, lines):
    degset = separator_degrees(grid, i, j)
    window = (
        max(c for c, _ in degset.degrees) + 1,
        max(d for _, d in degset.degrees) + 1,
    )
    table = oracle.hilbert_function(window)
    updated = hilbert_update(table, degset)
    direct = SchemeOracle(scheme.drop(i, j)).hilbert_function(window)
    ok = updated == direct
    lines.append(
        "point (%d,%d): Hilbert update on 0..%d x 0..%d -> %s"
        % (i + 1, j + 1, window[0], window[1], "ok" if ok else "MISMATCH")
    )
    return ok


def _iter_small_grids(max_dim, max_mult):
    for a in range(1, max_dim + 1):
        for b in range(1, max_dim + 1):
            for entries in itertools.product(range(max_mult + 1), repeat=a * b):
                rows = tuple(entries[k * b:(k + 1) * b] for k in range(a))
                if any(not any(r) for r in rows):
                    continue
                if any(not any(r[j] for r in rows) for j in range(b)):
                    continue
                yield MultiplicityGrid(rows)


def _cmd_verify(args, out):
    lines = []
    if args.level == "exhaustive-small":
        checked = 0
        failed = 0
        for grid in _iter_small_grids(2, 2):
            if not is_acm(grid):
                continue
            scheme = FatPointScheme.from_grid(grid)
            oracle = SchemeOracle(scheme)
            for (i, j) in grid.support():
                degset = separator_degrees(grid, i, j)
                brute = oracle.minimal_generator_degrees(i, j)
                checked += 1
                if Counter(degset.degrees) != brute:
                    failed += 1
                    lines.append("MISMATCH on grid %r at point (%d,%d)" % (grid.m, i + 1, j + 1))
        lines.append("exhaustive-small: %d point checks, %d mismatches" % (checked, failed))
        ok = failed == 0
    else:
        doc = _read_document(args)
        grid = doc.grid
        scheme = doc.scheme()
        oracle = SchemeOracle(scheme)
        if args.level == "point":
            if not args.point:
                raise InvalidGridError("verify --level point needs --point i,j")
            i, j = _point_arg(args, grid)
            ok = _verify_point(scheme, grid, oracle, i, j, lines)
            if ok:
                ok = _verify_hilbert_update(scheme, grid, oracle, i, j, lines)
        else:
            ok = True
            for (i, j) in grid.support():
                if not _verify_point(scheme, grid, oracle, i, j, lines):
                    ok = False
                    break
            if ok and grid.support():
                i, j = grid.support()[0]
                ok = _verify_hilbert_update(scheme, grid, oracle, i, j, lines)
    lines.append("verified: %s" % ("OK" if ok else "FAILED"))
    _emit(args, out, lines, {"command": "verify", "ok": ok, "report": lines[:-1]})
    return EXIT_OK if ok else EXIT_NEGATIVE


# -- entry point ---------------------------------------------------------------


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="fatpoints",
        description="ACM fat point schemes on P1 x P1: classification, separator "
        "degrees and forms, Hilbert functions, and oracle verification.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_, point=False, allflag=False, window=False, drop=False, level=False):
        p = sub.add_parser(name, help=help_)
        p.add_argument("scheme", nargs="?", default="-", help="grid file, JSON file, or - for stdin")
        p.add_argument("--format", choices=("text", "json"), default="text")
        p.add_argument("--coords", metavar="FILE", help="JSON file with row_points/col_points")
        if point:
            p.add_argument("--point", metavar="i,j", help="1-based point indices")
        if allflag:
            p.add_argument("--all", action="store_true", help="act on every supported point")
        if window:
            p.add_argument("--window", metavar="R,S", help="table window bounds (inclusive)")
        if drop:
            p.add_argument("--drop", metavar="i,j", help="also show the table after dropping the point")
        if level:
            p.add_argument(
                "--level",
                choices=("point", "scheme", "exhaustive-small"),
                default="scheme",
                help="what to cross-check against the oracle",
            )
        p.set_defaults(func=func)
        return p

    add("check-acm", _cmd_check_acm, "decide the ACM property, with a witness when it fails")
    add("sz", _cmd_sz, "print the truncation tuple multiset of the grid")
    add("canonical", _cmd_canonical, "sort rows and columns into dominance order")
    add("bounds", _cmd_bounds, "check the relative multiplicity bounds")
    add("degrees", _cmd_degrees, "separator degrees of one or all points", point=True, allflag=True)
    add("forms", _cmd_forms, "explicit separators as products of lines", point=True, allflag=True)
    add("hilbert", _cmd_hilbert, "Hilbert function table (oracle), optionally after a drop",
        window=True, drop=True)
    add("verify", _cmd_verify, "cross-check the formulas against the oracle",
        point=True, window=True, level=True)
    return parser


def main(argv=None, stdout=None):
    out = stdout if stdout is not None else sys.stdout
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if not exc.code else EXIT_INPUT
    try:
        return args.func(args, out)
    except NotACMError as exc:
        print("not ACM: %s" % exc, file=sys.stderr)
        return EXIT_NEGATIVE
    except WindowInsufficiencyError as exc:
        print("oracle window insufficiency: %s" % exc, file=sys.stderr)
        return EXIT_NEGATIVE
    except (InvalidGridError, InvalidSchemeError, PointNotInSupportError, WindowError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except FatPointsError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
