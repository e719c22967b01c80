"""Gap conjectures of the form ``lambda_{k+1} - lambda_k <= C k^(1/root)``.

Shape coefficients, exact verification of the cube and equilateral-triangle
gap propositions for k <= 100, reference fundamental-gap constants, and
deterministic margin scans over domain families.

Exact mode (labeled spectra with a rational coefficient) compares
``g**root <= C**root * k`` in rational arithmetic.  Float mode evaluates the
right side in 40-digit decimal arithmetic and accepts with relative
tolerance 1e-12.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Sequence

from . import specfun
from .errors import ParameterError
from .exact import PiRational, to_rational
from .spectra import (
    DomainSpec,
    Kind,
    Problem,
    Spectrum,
    box_spectrum,
    equilateral_triangle_spectrum,
    right_isosceles_triangle_spectrum,
    spectrum_for,
)

FLOAT_RTOL = 1e-12
CONJECTURE_IDS = ("ConZ1_S1", "ConZ1prime_S2", "ConZ1_cuboid", "ConZ5_triangle", "Prop1", "Prop2", "PPW_gap")


@dataclass(frozen=True)
class ShapeCoefficients:
    """Squared inscribed/circumscribed size ratios.

    ``s1`` uses axis-aligned cubes, ``s2`` balls.  Values are Fractions when
    rational, floats otherwise, and None when unsupported.
    """

    s1: Fraction | float | None
    s2: Fraction | float | None
    method: str  # closed_form | unsupported

    def get(self, mode: str):
        mode = mode.lower()
        if mode not in ("s1", "s2"):
            raise ParameterError(f"coefficient mode must be s1 or s2, got {mode!r}")
        return self.s1 if mode == "s1" else self.s2


def shape_coefficients(domain: DomainSpec) -> ShapeCoefficients:
    """Closed-form shape coefficients of the supported Euclidean domains.

    Reading: (largest inscribed size)**2 / (smallest circumscribed size)**2.
    """
    k = domain.kind
    if k is Kind.INTERVAL:
        return ShapeCoefficients(Fraction(1), Fraction(1), "closed_form")
    if k is Kind.BOX:
        sides = domain.params
        lo, hi = min(sides), max(sides)
        if all(isinstance(a, Fraction) for a in sides):
            return ShapeCoefficients(lo * lo / (hi * hi), lo * lo / sum(a * a for a in sides), "closed_form")
        lo, hi = float(lo), float(hi)
        return ShapeCoefficients(lo * lo / (hi * hi), lo * lo / sum(float(a) ** 2 for a in sides), "closed_form")
    if k is Kind.BALL:
        # inscribed cube has side 2R/sqrt(n), circumscribed cube side 2R
        return ShapeCoefficients(Fraction(1, domain.dim), Fraction(1), "closed_form")
    if k is Kind.EQUILATERAL_TRIANGLE:
        # base on an axis: inscribed square side D(2 sqrt3 - 3), bounding square side D;
        # inradius D/(2 sqrt3), circumradius D/sqrt3
        return ShapeCoefficients((2.0 * math.sqrt(3.0) - 3.0) ** 2, Fraction(1, 4), "closed_form")
    if k is Kind.RIGHT_ISOSCELES_TRIANGLE:
        # legs on the axes: inscribed square d/2, bounding square d;
        # inradius d(2 - sqrt2)/2, circumradius d/sqrt2
        return ShapeCoefficients(Fraction(1, 4), (math.sqrt(2.0) - 1.0) ** 2, "closed_form")
    return ShapeCoefficients(None, None, "unsupported")


# ---------------------------------------------------------------------------
# verdicts


@dataclass(frozen=True)
class ConjectureVerdict:
    conjecture_id: str
    k_range: tuple[int, int]
    holds: bool
    worst_k: int
    worst_margin: float  # min over k of 1 - gap/bound
    arithmetic: str  # exact | float
    violations: tuple[int, ...] = ()
    equality_ks: tuple[int, ...] = ()
    coefficient: float = math.nan  # absolute value of C

    def to_json(self) -> dict:
        return {
            "conjecture_id": self.conjecture_id,
            "k_range": list(self.k_range),
            "holds": self.holds,
            "worst_k": self.worst_k,
            "worst_margin": self.worst_margin,
            "arithmetic": self.arithmetic,
            "violations": list(self.violations),
            "equality_ks": list(self.equality_ks),
            "coefficient": self.coefficient,
        }


def _check_kmax(kmax) -> int:
    if isinstance(kmax, bool) or int(kmax) != kmax or kmax < 1:
        raise ParameterError(f"kmax must be a positive integer, got {kmax!r}")
    return int(kmax)


def _working(spec: Spectrum, count: int):
    """(values, exact, scale): values in units of ``scale``, 1-based list."""
    if spec.problem is not Problem.DIRICHLET:
        raise ParameterError("gap conjectures concern Dirichlet spectra")
    if count > spec.guaranteed_count:
        raise ParameterError(f"need {count} eigenvalues, spectrum certifies {spec.guaranteed_count}")
    if spec.unit is not None:
        vals = [spec.unit.coef * lab for lab in spec.labels(count)]
        return [None] + vals, True, math.pi**spec.unit.pi_exp
    return [None] + spec.values(count), False, 1.0


def _kth_root(k: int, root: int) -> Decimal:
    with localcontext() as ctx:
        ctx.prec = 40
        return Decimal(k) ** (Decimal(1) / Decimal(root))


def _gap_verdict(cid: str, vals: list, exact: bool, scale: float, coef, root: int, kmax: int) -> ConjectureVerdict:
    """Check ``vals[k+1] - vals[k] <= coef * k**(1/root)`` for k = 1..kmax."""
    if exact and not isinstance(coef, Fraction):
        exact = False
    worst_k, worst = 0, math.inf
    bad, eq = [], []
    for k in range(1, kmax + 1):
        g = vals[k + 1] - vals[k]
        if exact:
            rhs_pow = coef**root * k
            lhs_pow = g**root if g > 0 else Fraction(0)
            ok = g <= 0 or lhs_pow <= rhs_pow
            if lhs_pow == rhs_pow:
                eq.append(k)
            margin = 1.0 - float(g) / (float(coef) * k ** (1.0 / root))
            if lhs_pow == rhs_pow:
                margin = 0.0
        else:
            with localcontext() as ctx:
                ctx.prec = 40
                rhs = Decimal(float(coef)) * _kth_root(k, root)
                gd = Decimal(float(g))
                ok = gd <= rhs + Decimal(FLOAT_RTOL) * abs(rhs)
                margin = float(1 - gd / rhs)
            if abs(margin) <= FLOAT_RTOL:
                eq.append(k)
        if not ok:
            bad.append(k)
        if margin < worst:
            worst, worst_k = margin, k
    return ConjectureVerdict(
        cid, (1, kmax), not bad, worst_k, worst, "exact" if exact else "float", tuple(bad), tuple(eq),
        float(coef) * scale,
    )


def _spectrum_or_domain(spec, kmax: int) -> Spectrum:
    if isinstance(spec, DomainSpec):
        return spectrum_for(spec, kmax + 1)
    return spec


def gap_conjecture_check(spec, n=None, kmax: int = 100, coeff_mode: str = "s2") -> ConjectureVerdict:
    """``gap_k <= S (lambda_2 - lambda_1) k^(1/n)`` with S the s1 or s2 shape coefficient."""
    kmax = _check_kmax(kmax)
    spec = _spectrum_or_domain(spec, kmax)
    n = spec.domain.dim if n is None else int(n)
    s = shape_coefficients(spec.domain).get(coeff_mode)
    if s is None:
        raise ParameterError(f"no shape coefficient for {spec.domain.kind.value}")
    vals, exact, scale = _working(spec, kmax + 1)
    coef = s * (vals[2] - vals[1]) if exact and isinstance(s, Fraction) else float(s) * float(vals[2] - vals[1])
    cid = "ConZ1_S1" if coeff_mode.lower() == "s1" else "ConZ1prime_S2"
    return _gap_verdict(cid, vals, exact, scale, coef, n, kmax)


def cuboid_gap_coefficient(domain: DomainSpec):
    """Fundamental gap of the largest inscribed axis-aligned cube, in absolute units.

    Returned as a PiRational when the domain's lengths are rational.
    """
    if domain.kind is Kind.INTERVAL:
        a = domain.params[0]
    elif domain.kind is Kind.BOX:
        a = min(domain.params)
    else:
        raise ParameterError(f"inscribed-cube coefficient only supported for boxes, got {domain.kind.value}")
    # the cube of side a has lambda_2 - lambda_1 = 3 pi^2 / a^2 in every dimension
    if isinstance(a, Fraction):
        return PiRational(Fraction(3) / (a * a), 2)
    return 3.0 * math.pi**2 / float(a) ** 2


def cuboid_conjecture_check(spec, n=None, kmax: int = 100) -> ConjectureVerdict:
    """``gap_k <= (lambda_2 - lambda_1)(inscribed cube) k^(1/n)`` for boxes."""
    kmax = _check_kmax(kmax)
    spec = _spectrum_or_domain(spec, kmax)
    n = spec.domain.dim if n is None else int(n)
    c = cuboid_gap_coefficient(spec.domain)
    vals, exact, scale = _working(spec, kmax + 1)
    if exact and isinstance(c, PiRational) and c.pi_exp == spec.unit.pi_exp:
        coef = c.coef
    else:
        coef = float(c) / scale
    return _gap_verdict("ConZ1_cuboid", vals, exact, scale, coef, n, kmax)


def triangle_conjecture_check(spec, kmax: int = 100) -> ConjectureVerdict:
    """``gap_k <= (lambda_2 - lambda_1)(largest inscribed equilateral) sqrt(k)``.

    Only the equilateral triangle itself is supported.
    """
    kmax = _check_kmax(kmax)
    spec = _spectrum_or_domain(spec, kmax)
    if spec.domain.kind is not Kind.EQUILATERAL_TRIANGLE:
        raise ParameterError("the inscribed-triangle coefficient is only supported for equilateral triangles")
    vals, exact, scale = _working(spec, kmax + 1)
    return _gap_verdict("ConZ5_triangle", vals, exact, scale, vals[2] - vals[1], 2, kmax)


def prop1_verify(n: int = 2, kmax: int = 100) -> ConjectureVerdict:
    """Unit cube in R^n: label gaps satisfy ``g**n <= 3**n * k``."""
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ParameterError(f"dimension must be a positive integer, got {n!r}")
    kmax = _check_kmax(kmax)
    spec = box_spectrum((1,) * int(n), kmax + 1)
    labels = [None] + spec.labels(kmax + 1)
    v = _gap_verdict("Prop1", labels, True, 1.0, Fraction(3), int(n), kmax)
    return replace(v, coefficient=3.0 * math.pi**2)


def prop2_verify(kmax: int = 100) -> ConjectureVerdict:
    """Equilateral triangle: label gaps of m^2+mn+n^2 satisfy ``g**2 <= 16 k``."""
    kmax = _check_kmax(kmax)
    spec = equilateral_triangle_spectrum(1, kmax + 1)
    labels = [None] + spec.labels(kmax + 1)
    v = _gap_verdict("Prop2", labels, True, 1.0, Fraction(4), 2, kmax)
    return replace(v, coefficient=64.0 * math.pi**2 / 9.0)


def ppw_gap_form_check(spec, n=None, kmax: int = 100) -> ConjectureVerdict:
    """``gap_k <= lambda_1 (j_{n/2,1}^2 / j_{n/2-1,1}^2 - 1) k^(1/n)`` in float mode."""
    kmax = _check_kmax(kmax)
    spec = _spectrum_or_domain(spec, kmax)
    n = spec.domain.dim if n is None else int(n)
    vals = [None] + spec.values(kmax + 1)
    coef = vals[1] * (specfun.ppw_ratio(n) - 1.0)
    return _gap_verdict("PPW_gap", vals, False, 1.0, coef, n, kmax)


# ---------------------------------------------------------------------------
# reference constants


@dataclass(frozen=True)
class ReferenceGaps:
    domain: str
    gap: PiRational | float
    constants: dict
    checks: dict

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def to_json(self) -> dict:
        def enc(x):
            return x.to_json() | {"value": float(x)} if isinstance(x, PiRational) else {"value": float(x)}

        return {
            "domain": self.domain,
            "gap": enc(self.gap),
            "constants": {k: enc(v) for k, v in sorted(self.constants.items())},
            "checks": dict(sorted(self.checks.items())),
        }


def _pi2(c) -> PiRational | float:
    return PiRational(c, 2) if isinstance(c, Fraction) else float(c) * math.pi**2


def _le(a, b) -> bool:
    if isinstance(a, PiRational) and isinstance(b, PiRational) and a.pi_exp == b.pi_exp:
        return a.coef <= b.coef
    return float(a) <= float(b) * (1 + 1e-12)


def _eq(a, b) -> bool:
    if isinstance(a, PiRational) and isinstance(b, PiRational):
        return a == b
    return math.isclose(float(a), float(b), rel_tol=1e-12)


def reference_gap_constants(domain: DomainSpec) -> ReferenceGaps:
    """Known fundamental-gap constants for ``domain`` and their consistency with its spectrum.

    * ``cube_gap`` = 3 n pi^2 / D^2 (cubes, exact identity);
    * ``triangle_lower`` = 64 pi^2 / (9 D^2) (triangles, equality for equilateral);
    * ``swyy_upper`` = n pi^2 / R0^2 with R0 the inradius;
    * ``convex_lower`` = 3 pi^2 / D^2 (convex domains).
    """
    spec = spectrum_for(domain, 2)
    if spec.unit is not None:
        u = spec.unit
        gap = PiRational(u.coef * (spec.label(2) - spec.label(1)), u.pi_exp)
    else:
        v = spec.values(2)
        gap = v[1] - v[0]
    k, n, p = domain.kind, domain.dim, domain.params
    consts, checks = {}, {}

    def sq(x):
        return x * x if isinstance(x, Fraction) else float(x) ** 2

    if k in (Kind.INTERVAL, Kind.BOX):
        diam2 = sum(sq(a) for a in p) if all(isinstance(a, Fraction) for a in p) else sum(float(a) ** 2 for a in p)
        r0sq = sq(min(p)) / 4
        if len(set(p)) == 1:
            consts["cube_gap"] = _pi2(3 * n / diam2 if isinstance(diam2, Fraction) else 3.0 * n / diam2)
            checks["cube_gap_identity"] = _eq(gap, consts["cube_gap"])
    elif k is Kind.EQUILATERAL_TRIANGLE:
        diam2 = sq(p[0])
        r0sq = diam2 / 12
        consts["triangle_lower"] = _pi2(Fraction(64, 9) / diam2 if isinstance(diam2, Fraction) else 64.0 / 9.0 / diam2)
        checks["triangle_lower_equality"] = _eq(gap, consts["triangle_lower"])
    elif k is Kind.RIGHT_ISOSCELES_TRIANGLE:
        diam2 = 2 * sq(p[0])
        r0sq = float(p[0]) ** 2 * (2.0 - math.sqrt(2.0)) ** 2 / 4.0
        consts["triangle_lower"] = _pi2(Fraction(64, 9) / diam2 if isinstance(diam2, Fraction) else 64.0 / 9.0 / diam2)
        checks["triangle_lower"] = _le(consts["triangle_lower"], gap)
    elif k is Kind.BALL:
        diam2 = 4 * sq(p[0])
        r0sq = sq(p[0])
    else:
        raise ParameterError(f"no reference gap constants for {k.value}")

    exact_r0 = isinstance(r0sq, Fraction)
    consts["swyy_upper"] = _pi2(n / r0sq if exact_r0 else n / float(r0sq))
    checks["swyy_upper"] = _le(gap, consts["swyy_upper"])
    consts["convex_lower"] = _pi2(3 / diam2 if isinstance(diam2, Fraction) else 3.0 / float(diam2))
    checks["convex_lower"] = _le(consts["convex_lower"], gap)
    return ReferenceGaps(str(domain), gap, consts, checks)


def siudeja_comparison(leg=1) -> dict:
    """Normalised fundamental gaps ``(lambda_2 - lambda_1) R0^2`` of a right isosceles
    triangle and of the equilateral triangle with the same area."""
    r = to_rational(leg)
    leg = r if r is not None else float(leg)
    spec = right_isosceles_triangle_spectrum(leg, 2)
    v = spec.values(2)
    d = float(leg)
    r0sq = d * d * (2.0 - math.sqrt(2.0)) ** 2 / 4.0
    lhs = (v[1] - v[0]) * r0sq
    # equal-area equilateral: side^2 = 2 d^2 / sqrt3, inradius^2 = side^2 / 12,
    # gap = 64 pi^2 / (9 side^2); the product is 16 pi^2 / 27 for every size.
    rhs = 16.0 * math.pi**2 / 27.0
    return {"leg": d, "lhs": lhs, "rhs": rhs, "holds": lhs <= rhs * (1 + 1e-12), "inradius_sq": r0sq}


# ---------------------------------------------------------------------------
# family scans

FAMILIES = ("rectangles", "boxes", "triangle_pair")


@dataclass(frozen=True)
class ScanResult:
    family: str
    conjecture_id: str
    kmax: int
    grid: tuple[float, ...]
    results: tuple[dict, ...]
    violations: tuple[dict, ...]

    @property
    def min_margin(self) -> float:
        return min(r["min_margin"] for r in self.results) if self.results else math.inf

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "conjecture": self.conjecture_id,
            "kmax": self.kmax,
            "grid": list(self.grid),
            "results": list(self.results),
            "min_margin": self.min_margin,
            "violations": list(self.violations),
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=1) + "\n"


def parse_range(text: str) -> list[Fraction]:
    """``start:stop:step`` (inclusive, exact decimal) or a single value."""
    parts = text.split(":")
    if len(parts) == 1:
        parts = [parts[0], parts[0], "1"]
    if len(parts) != 3:
        raise ParameterError(f"range must be start:stop:step, got {text!r}")
    a, b, h = (to_rational(x) for x in parts)
    if a is None or b is None or h is None:
        raise ParameterError(f"range values must be decimals or ratios, got {text!r}")
    if h <= 0:
        raise ParameterError("range step must be positive")
    if a < 1 or b < a:
        raise ParameterError("aspect range must satisfy 1 <= start <= stop")
    count = int((b - a) / h) + 1
    return [a + i * h for i in range(count)]


def _member_domain(family: str, a: Fraction) -> DomainSpec:
    if family == "rectangles":
        return DomainSpec.box((1, a))
    if family == "boxes":
        return DomainSpec.box((1, 1, a))
    if family == "triangle_pair":
        return DomainSpec.right_isosceles_triangle(a)
    raise ParameterError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")


def _triangle_transfer_check(spec: Spectrum, kmax: int) -> ConjectureVerdict:
    """Right isosceles triangle against the equilateral bound transferred by inradius."""
    d = float(spec.domain.params[0])
    r0sq = d * d * (2.0 - math.sqrt(2.0)) ** 2 / 4.0
    coef = 16.0 * math.pi**2 / 27.0 / r0sq
    vals = [None] + spec.values(kmax + 1)
    return _gap_verdict("ConZ5_triangle", vals, False, 1.0, coef, 2, kmax)


def _scan_member(family: str, conjecture_id: str, a: Fraction, kmax: int) -> ConjectureVerdict:
    dom = _member_domain(family, a)
    spec = spectrum_for(dom, kmax + 1)
    if family == "triangle_pair":
        return _triangle_transfer_check(spec, kmax)
    if conjecture_id == "ConZ1_S1":
        return gap_conjecture_check(spec, None, kmax, "s1")
    if conjecture_id == "ConZ1prime_S2":
        return gap_conjecture_check(spec, None, kmax, "s2")
    if conjecture_id == "ConZ1_cuboid":
        return cuboid_conjecture_check(spec, None, kmax)
    raise ParameterError(f"conjecture {conjecture_id!r} cannot be scanned over {family}")


def counterexample_scan(family: str, grid: Sequence | str, conjecture_id: str = "ConZ1prime_S2",
                        kmax: int = 100, workers: int = 1) -> ScanResult:
    """Evaluate a gap conjecture over a parameter family and collect margins.

    Family parameters: ``rectangles`` -> (1, a); ``boxes`` -> (1, 1, a);
    ``triangle_pair`` -> right isosceles triangle with leg a, checked against
    the equilateral bound transferred through the inradius comparison.
    Output is ordered by grid index, so it does not depend on ``workers``.
    """
    kmax = _check_kmax(kmax)
    if family not in FAMILIES:
        raise ParameterError(f"unknown family {family!r}; expected one of {', '.join(FAMILIES)}")
    if isinstance(grid, str):
        grid = parse_range(grid)
    grid = [to_rational(a) if to_rational(a) is not None else float(a) for a in grid]
    if family == "triangle_pair":
        conjecture_id = "ConZ5_triangle"

    def job(a):
        return _scan_member(family, conjecture_id, a, kmax)

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=int(workers)) as pool:
            verdicts = list(pool.map(job, grid))
    else:
        verdicts = [job(a) for a in grid]

    results, violations = [], []
    for a, v in zip(grid, verdicts):
        results.append({"param": float(a), "holds": v.holds, "min_margin": v.worst_margin, "worst_k": v.worst_k})
        if v.violations:
            violations.append({"param": float(a), "first_k": v.violations[0], "count": len(v.violations)})
    return ScanResult(family, conjecture_id, kmax, tuple(float(a) for a in grid), tuple(results),
                      tuple(violations))
