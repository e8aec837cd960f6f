"""Command-line interface.

Exit codes: 0 when every check passes, 1 on a mathematical failure, 2 on an
I/O or format error.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from typing import Sequence

from . import families
from .errors import FormatError, KNetError, NotANet, RankViolation
from .field import NumberField, make_cyclotomic_field, make_quadratic_field
from .jsonio import (
    coords_to_json,
    dumps,
    field_from_json,
    latin_list_from_json,
    lines_from_json,
    load_path,
    net_from_json,
    net_to_json,
    points_from_json,
    scalar_to_json,
)
from .latin import canonical_form, classify_isotopy_classes, is_group_isotopic, is_orthogonal_set
from .net import derive_latin_squares, discover_parallel_classes, perspectivity_search, verify_net
from .pencil import net_pencil_certificate
from .plane import build_projective_plane
from .render import render_svg

EXIT_OK, EXIT_FAIL, EXIT_FORMAT = 0, 1, 2


class _Out:
    """Collects a JSON payload or plain text lines, printed once at the end."""

    def __init__(self, as_json: bool):
        self.as_json = as_json
        self.data: dict = {}
        self.text: list[str] = []

    def say(self, line: str = ""):
        self.text.append(line)

    def flush(self):
        if self.as_json:
            sys.stdout.write(dumps(self.data))
        elif self.text:
            print("\n".join(self.text))


# -- argument parsing helpers -------------------------------------------------

def parse_field(text: str | None) -> NumberField | None:
    """``--field``: a JSON object {"poly": [...]}, ``cyclotomic:n`` or ``sqrt:D``."""
    if text is None:
        return None
    text = text.strip()
    try:
        if text.startswith("{"):
            return field_from_json(json.loads(text))
        kind, _, arg = text.partition(":")
        if kind == "cyclotomic":
            return make_cyclotomic_field(int(arg))
        if kind == "sqrt":
            return make_quadratic_field(Fraction(arg))
        if kind in ("Q", "QQ", "rational"):
            return field_from_json(None)
    except (ValueError, json.JSONDecodeError) as exc:
        raise FormatError(f"bad --field {text!r}: {exc}") from exc
    raise FormatError(f"bad --field {text!r}; use a JSON object, cyclotomic:n or sqrt:D")


def parse_proj(text: str, size: int) -> list[Fraction]:
    """'a:b[:c]' as homogeneous coordinates, or a single rational q as [q : 1]."""
    try:
        parts = [Fraction(p) for p in text.split(":")]
    except (ValueError, ZeroDivisionError) as exc:
        raise FormatError(f"bad parameter {text!r}") from exc
    if len(parts) == 1 and size == 2:
        parts = [parts[0], Fraction(1)]
    if len(parts) != size:
        raise FormatError(f"parameter {text!r} needs {size} coordinates")
    return parts


def _sigma_str(sigma: Sequence[int]) -> str:
    return "(" + " ".join(str(x) for x in sigma) + ")"


# -- commands -------------------------------------------------------------------

def _orthogonality_phrase(n_squares: int, d: int, k: int) -> str:
    if n_squares == 0:
        return f"no Latin squares, d={d}, k={k}"
    if n_squares == 1:
        return f"single Latin square, d={d}, k={k}"
    if n_squares == 2:
        return f"orthogonal pair, d={d}, k={k}"
    return f"orthogonal set of {n_squares}, d={d}, k={k}"


def cmd_verify(args, out: _Out) -> int:
    config = net_from_json(load_path(args.file), args.field)
    report = verify_net(config)
    out.data["report"] = report.to_json()
    out.say(report.summary())
    if not report.passed:
        return EXIT_FAIL
    squares = derive_latin_squares(config)
    groups = [is_group_isotopic(M) if M.order <= 5 else None for M in squares]
    ortho = is_orthogonal_set(squares)
    out.data["latin_squares"] = [
        {"square": M.to_json(), "group": g} for M, g in zip(squares, groups)
    ]
    out.data["orthogonal"] = ortho
    for m, (M, g) in enumerate(zip(squares, groups), 3):
        out.say(f"M{m}:")
        out.say("  " + str(M).replace("\n", "\n  "))
        out.say(f"  isotopic to {g}" if g else "  not isotopic to a group table")
    status = EXIT_OK
    if len(squares) >= 2:
        if ortho:
            out.say(_orthogonality_phrase(len(squares), report.d, report.k))
        else:
            out.say("derived squares are NOT mutually orthogonal")
            status = EXIT_FAIL
    else:
        out.say(_orthogonality_phrase(len(squares), report.d, report.k))
    try:
        cert = net_pencil_certificate(config)
    except RankViolation as exc:
        out.say(str(exc))
        out.data["pencil"] = {"rank": exc.rank}
        return EXIT_FAIL
    out.data["pencil"] = cert.to_json()
    coords = ", ".join(f"[{a} : {b}]" for a, b in cert.coords)
    out.say(f"pencil rank {cert.rank}; class coordinates {coords}; base points {'ok' if cert.base_points_ok else 'FAILED'}")
    if not cert.base_points_ok:
        status = EXIT_FAIL
    return status


def _family_config(args):
    name = args.name
    meta: dict = {"family": name}
    if name == "conic":
        return families.conic_net(), meta
    if name == "hesse":
        return families.hesse_net(), meta
    if name == "fermat":
        meta["d"] = args.d
        return families.fermat_net(args.d), meta
    if name == "cubic":
        s, t = _need(args, "s", 2), _need(args, "t", 2)
        meta.update(s=[str(x) for x in s], t=[str(x) for x in t])
        return families.cubic_net(s, t), meta
    if name in ("quartic-cyclic", "quartic-klein"):
        s, t, u = _need(args, "s", 2), _need(args, "t", 2), _need(args, "u", 2)
        meta.update(s=[str(x) for x in s], t=[str(x) for x in t], u=[str(x) for x in u])
        build = families.quartic_net_cyclic if name == "quartic-cyclic" else families.quartic_net_klein
        return build(s, t, u), meta
    if name in ("quintic-cyclic", "quintic-nongroup"):
        which = "cyclic5" if name == "quintic-cyclic" else "nongroup5"
        if args.auto_sample:
            p = families.sample_hypersurface(which, args.bound)
        else:
            s, t = _need(args, "s", 3), _need(args, "t", 3)
            try:
                p = families.HypersurfacePoint(which, tuple(s), tuple(t))
            except ValueError as exc:
                raise families.DegenerateParameters(str(exc)) from exc
        result = families.quintic_build(which, p)
        M = result.square
        meta.update(
            s=[scalar_to_json(x) for x in p.s],
            t=[scalar_to_json(x) for x in p.t],
            latin_square=M.to_json(),
            canonical_form=canonical_form(M).to_json(),
            group=is_group_isotopic(M),
            derived={k: coords_to_json(v) for k, v in result.derived.items()},
            notes=result.notes,
        )
        return result.config, meta
    raise FormatError(f"unknown family {name!r}")


def _need(args, key: str, size: int) -> list[Fraction]:
    val = getattr(args, key)
    if val is None:
        raise FormatError(f"family {args.name} needs --{key}")
    return parse_proj(val, size)


def cmd_family(args, out: _Out) -> int:
    config, meta = _family_config(args)
    doc = net_to_json(config)
    doc["meta"] = meta
    if args.verify:
        again = net_from_json(json.loads(dumps(doc)))
        report = verify_net(again)
        if not report.passed:
            sys.stderr.write(report.summary() + "\n")
            return EXIT_FAIL
    text = dumps(doc)
    if args.output:
        try:
            with open(args.output, "w") as fh:
                fh.write(text)
        except OSError as exc:
            raise FormatError(f"cannot write {args.output}: {exc}") from exc
        lines = sum(len(c) for c in config.classes)
        summary = f"wrote {args.output}: {args.name}, {lines} lines, {len(config.points)} points over {config.field.name}"
        if "group" in meta:
            summary += "; group: " + (meta["group"] or "none (not a group)")
        print(summary, file=sys.stderr)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_latin(args, out: _Out) -> int:
    if args.latin_cmd == "classify":
        reps = classify_isotopy_classes(args.d)
        out.data = {"order": args.d, "classes": len(reps),
                    "representatives": [
                        {"square": M.to_json(), "group": is_group_isotopic(M)} for M in reps
                    ]}
        out.say(f"order {args.d}: {len(reps)} isotopy classes")
        for i, M in enumerate(reps, 1):
            g = is_group_isotopic(M)
            out.say(f"class {i} ({g or 'not a group'}):")
            out.say("  " + str(M).replace("\n", "\n  "))
        return EXIT_OK
    squares = [M for f in args.files for M in latin_list_from_json(load_path(f))]
    if args.latin_cmd == "check-orthogonal":
        ok = is_orthogonal_set(squares)
        out.data = {"squares": len(squares), "orthogonal": ok}
        out.say(f"{len(squares)} squares: {'mutually orthogonal' if ok else 'NOT mutually orthogonal'}")
        return EXIT_OK if ok else EXIT_FAIL
    # group-test
    status = EXIT_OK
    results = []
    for M in squares:
        g = is_group_isotopic(M)
        results.append({"square": M.to_json(), "group": g})
        out.say(f"isotopic to {g}" if g else "not a group")
        if g is None:
            status = EXIT_FAIL
    out.data = {"results": results}
    return status


def cmd_persp(args, out: _Out) -> int:
    A = lines_from_json(load_path(args.A), args.field)
    B = lines_from_json(load_path(args.B), args.field)
    res = perspectivity_search(A, B)
    out.data = {
        "count": len(res.perspectivities),
        "perspectivities": [{"sigma": list(p.sigma), "axis": p.axis} for p in res.perspectivities],
        "degenerate": [{"sigma": list(s), "point": x} for s, x in res.degenerate],
    }
    out.say(f"{len(res.perspectivities)} perspectivities")
    for p in res.perspectivities:
        out.say(f"  sigma={_sigma_str(p.sigma)} axis={p.axis}")
    for s, x in res.degenerate:
        out.say(f"  degenerate sigma={_sigma_str(s)}: all meets at {x}")
    return EXIT_OK


def cmd_pencil(args, out: _Out) -> int:
    config = net_from_json(load_path(args.file), args.field)
    report = verify_net(config)
    if not report.passed:
        out.say(report.summary())
        out.data = {"report": report.to_json()}
        return EXIT_FAIL
    try:
        cert = net_pencil_certificate(config)
    except RankViolation as exc:
        out.say(str(exc))
        out.data = {"rank": exc.rank}
        return EXIT_FAIL
    out.data = cert.to_json()
    out.say(f"rank {cert.rank}")
    out.say(f"C1 = {cert.pencil.F}")
    out.say(f"C2 = {cert.pencil.G}")
    for i, (a, b) in enumerate(cert.coords, 1):
        out.say(f"class {i}: [{a} : {b}]")
    out.say(f"base points {'ok' if cert.base_points_ok else 'FAILED'}")
    return EXIT_OK if cert.base_points_ok else EXIT_FAIL


def cmd_discover(args, out: _Out) -> int:
    pts = points_from_json(load_path(args.file), args.field)
    classes = discover_parallel_classes(pts, args.d)
    out.data = {"d": args.d, "k": len(classes), "classes": [{"lines": list(c)} for c in classes]}
    out.say(f"{len(classes)} parallel classes of {args.d} lines (maximal k = {len(classes)})")
    for i, c in enumerate(classes, 1):
        out.say(f"  class {i}: " + ", ".join(str(l) for l in c))
    return EXIT_OK


def cmd_plane(args, out: _Out) -> int:
    squares = [M for f in args.squares for M in latin_list_from_json(load_path(f))]
    P = build_projective_plane(squares)
    fails = P.axiom_failures()
    sizes = sorted({len(l) for l in P.lines})
    out.data = {"order": P.order, "points": len(P.points), "lines": len(P.lines),
                "points_per_line": sizes, "axioms": not fails, "failures": fails}
    out.say(f"projective plane of order {P.order}: {len(P.points)} points, {len(P.lines)} lines, "
            f"{sizes[0]} points per line")
    out.say("all incidence axioms hold" if not fails else "axiom failures:\n  " + "\n  ".join(fails))
    return EXIT_OK if not fails else EXIT_FAIL


def cmd_render(args, out: _Out) -> int:
    config = net_from_json(load_path(args.file), args.field)
    svg = render_svg(config, viewbox=args.viewbox)
    try:
        with open(args.output, "w") as fh:
            fh.write(svg)
    except OSError as exc:
        raise FormatError(f"cannot write {args.output}: {exc}") from exc
    out.data = {"output": args.output, "lines": svg.count('class="net-line"'),
                "points": svg.count('class="net-point"')}
    out.say(f"wrote {args.output}")
    return EXIT_OK


def cmd_sample(args, out: _Out) -> int:
    p = families.sample_hypersurface(args.which, args.bound)
    out.data = {"which": args.which, "field": {"poly": [str(c) for c in p.field.poly]},
                "s": [scalar_to_json(x) for x in p.s], "t": [scalar_to_json(x) for x in p.t]}
    out.say(f"{args.which}: s = [{' : '.join(map(str, p.s))}], t = [{' : '.join(map(str, p.t))}] over {p.field.name}")
    return EXIT_OK


# -- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    def options(default):
        # subcommands use SUPPRESS so they do not clobber flags given before the command
        g = argparse.ArgumentParser(add_help=False)
        g.add_argument("--json", action="store_true", default=default, help="machine-readable output")
        g.add_argument("--field", default=None if default is False else default,
                       help='override the ambient field: JSON {"poly": [...]}, cyclotomic:n or sqrt:D')
        return g

    common = options(argparse.SUPPRESS)
    p = argparse.ArgumentParser(prog="knets", description="Exact computations with k-nets of lines in P^2.",
                                parents=[options(False)])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("verify", parents=[common], help="verify a net JSON file")
    s.add_argument("file")
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("family", parents=[common], help="generate a named family as net JSON")
    s.add_argument("name", choices=families.FAMILY_NAMES)
    s.add_argument("--s")
    s.add_argument("--t")
    s.add_argument("--u")
    s.add_argument("-d", type=int, default=3, help="degree for the Fermat family")
    s.add_argument("--auto-sample", action="store_true", help="sample quintic parameters")
    s.add_argument("--bound", type=int, default=5)
    s.add_argument("--verify", action="store_true", help="re-verify the output before writing")
    s.add_argument("-o", "--output")
    s.set_defaults(func=cmd_family)

    s = sub.add_parser("latin", parents=[common], help="Latin square tools")
    lsub = s.add_subparsers(dest="latin_cmd", required=True)
    c = lsub.add_parser("classify", parents=[common])
    c.add_argument("-d", type=int, required=True, choices=(1, 2, 3, 4, 5))
    c.set_defaults(func=cmd_latin)
    c = lsub.add_parser("check-orthogonal", parents=[common])
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_latin)
    c = lsub.add_parser("group-test", parents=[common])
    c.add_argument("files", nargs="+")
    c.set_defaults(func=cmd_latin)

    s = sub.add_parser("persp", parents=[common], help="perspectivities between two polygons")
    s.add_argument("A")
    s.add_argument("B")
    s.set_defaults(func=cmd_persp)

    s = sub.add_parser("pencil", parents=[common], help="pencil certificate of a net")
    s.add_argument("file")
    s.set_defaults(func=cmd_pencil)

    s = sub.add_parser("discover", parents=[common], help="parallel classes of a point set")
    s.add_argument("file")
    s.add_argument("-d", type=int, required=True)
    s.set_defaults(func=cmd_discover)

    s = sub.add_parser("plane", parents=[common], help="projective plane from orthogonal squares")
    s.add_argument("squares", nargs="+")
    s.set_defaults(func=cmd_plane)

    s = sub.add_parser("render", parents=[common], help="SVG of a rational net")
    s.add_argument("file")
    s.add_argument("-o", "--output", required=True)
    s.add_argument("--viewbox", nargs=4, type=Fraction, metavar=("XMIN", "XMAX", "YMIN", "YMAX"))
    s.set_defaults(func=cmd_render)

    s = sub.add_parser("sample-params", parents=[common], help="sample a quintic parameter point")
    s.add_argument("which", choices=("cyclic5", "nongroup5"))
    s.add_argument("--bound", type=int, default=5)
    s.set_defaults(func=cmd_sample)
    return p


def _join_negative_values(argv: list[str]) -> list[str]:
    """Turn ``--s -3:4`` into ``--s=-3:4`` so argparse accepts the value."""
    out, i = [], 0
    while i < len(argv):
        a = argv[i]
        if a in ("--s", "--t", "--u") and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{a}={argv[i + 1]}")
            i += 2
            continue
        out.append(a)
        i += 1
    return out


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    argv = _join_negative_values(list(sys.argv[1:] if argv is None else argv))
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_FORMAT if exc.code else EXIT_OK
    out = _Out(args.json)
    try:
        args.field = parse_field(args.field)
        status = args.func(args, out)
    except FormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except NotANet as exc:
        if exc.report is not None:
            print(exc.report.summary(), file=sys.stderr)
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (KNetError, ValueError) as exc:
        out.flush()
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAIL
    out.flush()
    return status


if __name__ == "__main__":
    sys.exit(main())
