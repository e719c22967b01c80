"""Command-line front end.

Exit codes: 0 all asserted checks pass, 1 an asserted check failed,
2 usage or parse error, 3 numeric or enumeration-budget failure.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import platform
import re
import sys
from fractions import Fraction

from . import __version__, conjectures, inequalities as ineq, specfun
from .errors import BudgetError, NumericError, ParameterError
from .exact import to_rational
from .spectra import DomainSpec, Kind, Problem, spectrum_for

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class DomainParseError(ParameterError):
    def __init__(self, text: str, pos: int, msg: str):
        self.text, self.pos = text, pos
        super().__init__(f"{msg} at position {pos} in {text!r}")


class _UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# domain strings

_NAMED = {"n", "R", "D", "d"}
_PARAM_RE = re.compile(r"\s*(?:([A-Za-z]\w*)\s*=\s*)?([^,]*)")


def _number(text: str, pos: int, whole: str):
    """Decimal/ratio literal, optionally times ``pi`` (``2pi``, ``pi/2``, ``pi``)."""
    t = text.strip()
    if not t:
        raise DomainParseError(whole, pos, "empty parameter")
    m = re.fullmatch(r"(.*?)\*?pi(?:/(.+))?", t)
    if m:
        head, den = m.group(1) or "1", m.group(2) or "1"
        a, b = to_rational(head), to_rational(den)
        if a is None or b is None or b == 0:
            raise DomainParseError(whole, pos, f"bad number {t!r}")
        return float(a / b) * math.pi
    q = to_rational(t)
    if q is None:
        raise DomainParseError(whole, pos, f"bad number {t!r}")
    return q


def parse_domain(s: str) -> DomainSpec:
    """Parse ``kind(:param(,param)*)?``; named params are n=, R=, D=, d=."""
    if not isinstance(s, str) or not s.strip():
        raise DomainParseError(str(s), 0, "empty domain string")
    kind_txt, sep, rest = s.partition(":")
    kind_txt = kind_txt.strip()
    try:
        kind = Kind(kind_txt)
    except ValueError:
        raise DomainParseError(s, 0, f"unknown domain kind {kind_txt!r}") from None
    positional, named = [], {}
    if sep:
        offset = len(s) - len(rest)
        pos = offset
        for piece in rest.split(","):
            m = _PARAM_RE.fullmatch(piece)
            name, value = m.group(1), m.group(2)
            if name is not None:
                if name not in _NAMED:
                    raise DomainParseError(s, pos, f"unknown parameter name {name!r}")
                if name in named:
                    raise DomainParseError(s, pos, f"duplicate parameter {name!r}")
                named[name] = (_number(value, pos, s), pos)
            else:
                if named:
                    raise DomainParseError(s, pos, "positional parameter after named one")
                positional.append((_number(value, pos, s), pos))
            pos += len(piece) + 1
    return _build(kind, positional, named, s)


def _int_param(item, s: str, what: str) -> int:
    v, pos = item
    if not isinstance(v, Fraction) or v.denominator != 1 or v < 1:
        raise DomainParseError(s, pos, f"{what} must be a positive integer")
    return int(v)


def _build(kind: Kind, pos_args: list, named: dict, s: str) -> DomainSpec:
    def arity(lo, hi, end=len(s)):
        if not lo <= len(pos_args) <= hi:
            where = pos_args[hi][1] if len(pos_args) > hi else end
            raise DomainParseError(s, where, f"{kind.value} takes {lo}..{hi} positional parameters")

    def only(*allowed):
        for name, (_, p) in named.items():
            if name not in allowed:
                raise DomainParseError(s, p, f"parameter {name!r} not accepted by {kind.value}")

    try:
        if kind in (Kind.BOX, Kind.FLAT_TORUS):
            only()
            if not pos_args:
                raise DomainParseError(s, len(s), f"{kind.value} needs at least one side length")
            sides = [v for v, _ in pos_args]
            return DomainSpec.box(sides) if kind is Kind.BOX else DomainSpec.flat_torus(sides)
        if kind is Kind.INTERVAL:
            only()
            arity(0, 1)
            return DomainSpec.interval(pos_args[0][0] if pos_args else 1)
        if kind is Kind.EQUILATERAL_TRIANGLE:
            only("D")
            arity(0, 0 if "D" in named else 1)
            D = named["D"][0] if "D" in named else (pos_args[0][0] if pos_args else 1)
            return DomainSpec.equilateral_triangle(D)
        if kind is Kind.RIGHT_ISOSCELES_TRIANGLE:
            only("d")
            arity(0, 0 if "d" in named else 1)
            d = named["d"][0] if "d" in named else (pos_args[0][0] if pos_args else 1)
            return DomainSpec.right_isosceles_triangle(d)
        if kind is Kind.BALL:
            only("n", "R")
            arity(0, 0)
            n = _int_param(named["n"], s, "n") if "n" in named else 2
            if n not in (2, 3):
                where = named["n"][1] if "n" in named else len(s)
                raise DomainParseError(s, where, f"unsupported ball dimension n={n} (need 2 or 3)")
            return DomainSpec.ball(n, named["R"][0] if "R" in named else 1)
        if kind in (Kind.SPHERE, Kind.COMPLEX_PROJECTIVE):
            only("n")
            arity(0, 0)
            if "n" not in named:
                raise DomainParseError(s, len(s), f"{kind.value} needs n=")
            n = _int_param(named["n"], s, "n")
            return DomainSpec.sphere(n) if kind is Kind.SPHERE else DomainSpec.cpn(n)
        only()
        arity(0, 0)
        return DomainSpec.hemisphere() if kind is Kind.HEMISPHERE else DomainSpec.clifford_torus()
    except DomainParseError:
        raise
    except ParameterError as e:
        raise DomainParseError(s, len(s.partition(":")[0]) + 1, str(e)) from None


# ---------------------------------------------------------------------------
# output helpers


def _dumps(obj) -> str:
    return json.dumps(obj, indent=1, sort_keys=True, allow_nan=True) + "\n"


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _table(spec, count: int) -> str:
    first = spec.first_index
    vals = spec.values(count)
    labels = spec.labels(count) if spec.unit is not None else [None] * count
    lines = [f"{'index':>6}  {'value':>24}  {'label':>8}"]
    for i, (v, lab) in enumerate(zip(vals, labels)):
        lines.append(f"{i + first:>6}  {v!r:>24}  {'' if lab is None else lab:>8}")
    unit = "none" if spec.unit is None else str(spec.unit)
    return f"# {spec.domain}  unit={unit}  certified={spec.guaranteed_count}\n" + "\n".join(lines) + "\n"


def _default_n(dom: DomainSpec) -> int:
    return dom.complex_dim if dom.kind is Kind.COMPLEX_PROJECTIVE else dom.dim


# ---------------------------------------------------------------------------
# subcommands


def cmd_spectrum(a) -> int:
    dom = parse_domain(a.domain)
    if a.count < (0 if dom.problem is Problem.CLOSED else 1):
        raise ParameterError("count must be >= 1")
    spec = spectrum_for(dom, a.count)
    if a.format == "json":
        text = spec.dumps() + "\n"
    elif a.format == "csv":
        text = spec.to_csv(a.count)
    else:
        text = _table(spec, a.count)
    _emit(text, a.output)
    return EXIT_OK


_BOUND_IDS = ("czy", "sphere_domain", "hm2", "li", "yang_yau", "cy_bracket", "cpn_closed")


def _check_reports(dom: DomainSpec, ident: str, kmax: int, n: int, h2):
    closed = dom.problem is Problem.CLOSED
    if kmax < (0 if closed else 1):
        raise ParameterError(f"kmax must be >= {0 if closed else 1}, got {kmax}")
    k0 = 0 if ident == "cy_universal_2" else 1
    need = kmax + 2 if closed else kmax + 1
    spec = spectrum_for(dom, need)
    out = []
    for k in range(k0, kmax + 1):
        if ident == "hm2":
            out.append(ineq.closed_homogeneous_check(spec, k))
        elif ident == "cc1":
            out.append(ineq.extrinsic_cc_check(spec, n, k, h2))
        elif ident in ineq.INEQUALITIES:
            out.append(ineq.INEQUALITIES[ident](spec, n, k))
        elif ident in _BOUND_IDS:
            out.append(ineq.bound_check(spec, ident, n, k))
        else:
            raise _UsageError(f"unknown inequality {ident!r}")
    return out


def cmd_check(a) -> int:
    dom = parse_domain(a.domain)
    n = a.n if a.n is not None else _default_n(dom)
    h2 = to_rational(a.H2) if to_rational(a.H2) is not None else float(a.H2)
    reps = _check_reports(dom, a.inequality, a.kmax, n, h2)
    data = {
        "inequality": a.inequality,
        "domain": str(dom),
        "n": n,
        "C0_mode": ineq.C0_MODE,
        "reports": [r.to_json() for r in reps],
        "all_hold": all(r.holds for r in reps),
    }
    _emit(_dumps(data), a.output)
    bad = [r.k for r in reps if not r.holds]
    if bad:
        print(f"{a.inequality} fails at k = {bad[:10]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_bounds(a) -> int:
    dom = parse_domain(a.domain)
    closed = dom.problem is Problem.CLOSED
    if a.kmax < (0 if closed else 1):
        raise ParameterError(f"kmax must be >= {0 if closed else 1}, got {a.kmax}")
    spec = spectrum_for(dom, a.kmax + (2 if closed else 1))
    rows = ineq.gap_bound_table(spec, a.n, a.kmax)
    data = {"domain": str(dom), "C0_mode": ineq.C0_MODE, "rows": [r.to_json() for r in rows]}
    _emit(_dumps(data), a.output)
    bad = [r.k for r in rows if not r.ok]
    if bad:
        print(f"gap bound violated at k = {bad[:10]}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


def cmd_verify_prop(a) -> int:
    if a.id == "prop1":
        v = conjectures.prop1_verify(a.n if a.n is not None else 2, a.kmax)
    else:
        v = conjectures.prop2_verify(a.kmax)
    _emit(_dumps(v.to_json()), a.output)
    return EXIT_OK if v.holds else EXIT_FAIL


def cmd_conjecture(a) -> int:
    cid = a.id
    if cid in ("Prop1", "Prop2"):
        v = conjectures.prop1_verify(a.n or 2, a.kmax) if cid == "Prop1" else conjectures.prop2_verify(a.kmax)
        _emit(_dumps(v.to_json()), a.output)
        return EXIT_OK if v.holds else EXIT_FAIL
    if a.domain is None:
        raise _UsageError("--domain is required for this conjecture")
    dom = parse_domain(a.domain)
    if cid in ("ConZ1", "ConZ1_S1", "ConZ1prime_S2"):
        mode = a.coeff or ("s2" if cid == "ConZ1prime_S2" else "s1")
        v = conjectures.gap_conjecture_check(dom, a.n, a.kmax, mode)
    elif cid == "ConZ1_cuboid":
        v = conjectures.cuboid_conjecture_check(dom, a.n, a.kmax)
    elif cid == "ConZ5_triangle":
        v = conjectures.triangle_conjecture_check(dom, a.kmax)
    elif cid == "PPW_gap":
        v = conjectures.ppw_gap_form_check(dom, a.n, a.kmax)
    else:
        raise _UsageError(f"unknown conjecture {cid!r}")
    # conjectures are reported, not asserted
    _emit(_dumps(v.to_json()), a.output)
    return EXIT_OK


def cmd_scan(a) -> int:
    res = conjectures.counterexample_scan(a.family, a.range, a.conjecture, a.kmax, a.workers)
    _emit(res.dumps(), a.output)
    return EXIT_OK


def cmd_report(a) -> int:
    from .suite import run_suite

    results = run_suite(perturb=a.perturb)
    for r in results:
        print(f"criterion {r.number}: {'PASS' if r.passed else 'FAIL'}  {r.name}", file=sys.stderr)
    manifest = {
        "tool": "eigengap",
        "version": __version__,
        "suite": a.suite,
        "timestamp": _dt.datetime.now(_dt.timezone.utc).isoformat(timespec="seconds"),
        "python": platform.python_version(),
        "config": {"suite": a.suite, "C0_mode": ineq.C0_MODE},
        "criteria": [r.to_json() for r in results],
        "passed": all(r.passed for r in results),
    }
    _emit(_dumps(manifest), a.output)
    return EXIT_OK if manifest["passed"] else EXIT_FAIL


def cmd_specfun(a) -> int:
    if a.what == "zero":
        data = {"order": a.order, "k": a.k, "zero": specfun.bessel_zero(a.order, a.k)}
    elif a.what == "j":
        data = {"order": a.order, "x": a.x, "value": specfun.bessel_j(a.order, a.x)}
    else:
        data = {"n": a.n, "ppw_ratio": specfun.ppw_ratio(a.n)}
    _emit(_dumps(data), a.output)
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="eigengap", description="Model Laplace spectra and eigenvalue-gap checks.")
    p.add_argument("--version", action="version", version=f"eigengap {__version__}")
    p.add_argument("--config", help="JSON file with a command and its options; command-line flags win")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)

    def common(sp, domain=True, kmax=None):
        if domain:
            sp.add_argument("--domain", required=domain == "required", help="e.g. box:1,1  cpn:n=2  ball:n=2,R=1")
        if kmax is not None:
            sp.add_argument("--kmax", type=int, default=kmax)
        sp.add_argument("--output", "-o", help="write data here instead of standard output")

    s = sub.add_parser("spectrum", help="emit the first eigenvalues of a domain")
    common(s, "required")
    s.add_argument("--count", type=int, required=True, help="number of eigenvalues (closed: includes index 0)")
    s.add_argument("--format", choices=("json", "csv", "table"), default="json")
    s.set_defaults(func=cmd_spectrum)

    s = sub.add_parser("check", help="evaluate one inequality for k <= kmax")
    common(s, "required", 100)
    s.add_argument("--inequality", required=True,
                   help="ppw hp yang1 yang2 cheng_yang_upper cc1 hm1 hm2 cy_universal_1 cy_universal_2 "
                        + " ".join(b for b in _BOUND_IDS if b != "hm2"))
    s.add_argument("--n", type=int, help="dimension used in the inequality (default: the domain's)")
    s.add_argument("--H2", default="0", help="sup of squared mean curvature for cc1")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("bounds", help="gap bound table")
    common(s, "required", 100)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_bounds)

    s = sub.add_parser("verify-prop", help="exact check of a gap proposition")
    common(s, False, 100)
    s.add_argument("--id", choices=("prop1", "prop2"), required=True)
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_verify_prop)

    s = sub.add_parser("conjecture", help="report a gap conjecture verdict")
    common(s, True, 100)
    s.add_argument("--id", required=True, choices=("ConZ1", *conjectures.CONJECTURE_IDS))
    s.add_argument("--coeff", choices=("s1", "s2"))
    s.add_argument("--n", type=int)
    s.set_defaults(func=cmd_conjecture)

    s = sub.add_parser("scan", help="conjecture margins over a domain family")
    common(s, False, 100)
    s.add_argument("--family", choices=conjectures.FAMILIES, default="rectangles")
    s.add_argument("--range", default="1:10:0.1", help="start:stop:step of the family parameter")
    s.add_argument("--conjecture", default="ConZ1prime_S2", choices=("ConZ1_S1", "ConZ1prime_S2", "ConZ1_cuboid"))
    s.add_argument("--workers", type=int, default=1)
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("report", help="run the self-check suite and write a manifest")
    common(s, False)
    s.add_argument("--suite", choices=("paper",), default="paper")
    s.add_argument("--perturb", type=int, default=None, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_report)

    s = sub.add_parser("specfun", help="Bessel function utilities")
    s.add_argument("what", choices=("zero", "j", "ratio"))
    s.add_argument("--order", type=float, default=0.0)
    s.add_argument("--k", type=int, default=1)
    s.add_argument("--x", type=float, default=1.0)
    s.add_argument("--n", type=int, default=2)
    s.add_argument("--output", "-o")
    s.set_defaults(func=cmd_specfun)
    return p


def _config_argv(path: str, argv: list[str]) -> list[str]:
    with open(path, encoding="utf-8") as fh:
        cfg = json.load(fh)
    if not isinstance(cfg, dict) or "command" not in cfg:
        raise _UsageError("config file must be a JSON object with a 'command' key")
    out = [str(cfg.pop("command"))]
    for key, val in cfg.items():
        flag = "--" + key.replace("_", "-") if key not in ("H2",) else "--H2"
        if isinstance(val, bool):
            if val:
                out.append(flag)
        else:
            out += [flag, str(val)]
    if argv and argv[0] == out[0]:
        argv = argv[1:]
    return out + argv


def main(argv: list[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    try:
        parser = build_parser()
        pre = argparse.ArgumentParser(add_help=False)
        pre.add_argument("--config")
        known, rest = pre.parse_known_args(argv)
        if known.config:
            argv = _config_argv(known.config, rest)
        args = parser.parse_args(argv)
        if not getattr(args, "command", None):
            parser.print_help(sys.stderr)
            return EXIT_USAGE
        return args.func(args)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (NumericError, BudgetError) as e:
        print(f"numeric failure: {e}", file=sys.stderr)
        return EXIT_NUMERIC
    except ParameterError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as e:
        print(f"error: config file is not valid JSON: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
