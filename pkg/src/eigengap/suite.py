"""Self-check suite run by ``eigengap report --suite paper``.

Each criterion returns a :class:`CriterionResult`.  ``perturb`` deliberately
breaks the assertion of one criterion (used to prove that a failure
propagates to the exit code); it never changes any computed quantity.
"""
from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import specfun
from .conjectures import prop1_verify, prop2_verify
from .exact import PiRational
from .inequalities import (
    cheng_yang_recursion_check,
    cpn_universal_check,
    gap_bound_table,
    implication_chain,
    recursion_constant,
)
from .spectra import (
    DomainSpec,
    ball_spectrum,
    box_spectrum,
    clifford_torus_spectrum,
    cpn_spectrum,
    equilateral_triangle_spectrum,
    flat_torus_spectrum,
    hemisphere_spectrum,
    right_isosceles_triangle_spectrum,
    sphere_spectrum,
    weyl_prediction,
)

# Amount by which a perturbed assertion is shifted.
_EPS = Fraction(1, 10**6)


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float = 0.0
    detail: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "criterion": self.number,
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 4),
            "detail": self.detail,
        }


def _prop1(perturb: bool) -> tuple[bool, dict]:
    coef = 3 - _EPS if perturb else Fraction(3)
    out, ok = {}, True
    for n in (2, 3):
        spec = box_spectrum((1,) * n, 101)
        labels = spec.labels(101)
        bad = [k for k in range(1, 101) if (labels[k] - labels[k - 1]) ** n > coef**n * k]
        g1 = labels[1] - labels[0]
        equality = g1**n == 3**n
        ok &= not bad and (equality or n != 2)
        out[f"n={n}"] = {"violations": bad, "equality_at_1": equality}
    # the library verdict must agree with the direct label check
    ok &= prop1_verify(2).holds and prop1_verify(3).holds
    return ok, out


def _prop2(perturb: bool) -> tuple[bool, dict]:
    coef = 4 - _EPS if perturb else Fraction(4)
    labels = equilateral_triangle_spectrum(1, 101).labels(101)
    bad = [k for k in range(1, 101) if (labels[k] - labels[k - 1]) ** 2 > coef**2 * k]
    equality = (labels[1] - labels[0]) ** 2 == 16
    ok = not bad and equality and prop2_verify().holds
    return ok, {"violations": bad, "equality_at_1": equality}


def _gap(spec) -> PiRational:
    u = spec.unit
    return PiRational(u.coef * (spec.label(2) - spec.label(1)), u.pi_exp)


def _identities(perturb: bool) -> tuple[bool, dict]:
    shift = _EPS if perturb else 0
    out, ok = {}, True
    for n, d in ((1, Fraction(1)), (2, Fraction(1)), (2, Fraction(3, 2)), (3, Fraction(1)), (3, Fraction(2, 7))):
        gap = _gap(box_spectrum((d,) * n, 2))
        diam2 = n * d * d
        want = PiRational((3 * n + shift) / diam2, 2)
        out[f"cube n={n} d={d}"] = {"gap": str(gap), "expected": str(want)}
        ok &= gap == want
    for D in (Fraction(1), Fraction(3), Fraction(5, 2)):
        gap = _gap(equilateral_triangle_spectrum(D, 2))
        want = PiRational((Fraction(64, 9) + shift) / (D * D), 2)
        out[f"equilateral D={D}"] = {"gap": str(gap), "lower_bound": str(want)}
        ok &= gap == want
    return ok, out


def _chain(perturb: bool) -> tuple[bool, dict]:
    models = {
        "box:1,1": (box_spectrum((1, 1), 201), 2),
        "box:1,1,1": (box_spectrum((1, 1, 1), 201), 3),
        "tri-eq:1": (equilateral_triangle_spectrum(1, 201), 2),
        "tri-ri:1": (right_isosceles_triangle_spectrum(1, 201), 2),
        "ball:n=2,R=1": (ball_spectrum(2, 1, 201), 2),
        "hemisphere": (hemisphere_spectrum(201), 2),
    }
    expected = 1 if perturb else 0
    out, total = {}, 0
    for name, (spec, n) in models.items():
        rep = implication_chain(spec, n, 200)
        total += len(rep.violations)
        out[name] = {"yang1_k": len(rep.yang1_holds), "violations": rep.violations}
    return total == expected, out


def _conformance(perturb: bool) -> tuple[bool, dict]:
    K = 101
    models = [
        ("box:1,1", box_spectrum((1, 1), K)),
        ("box:1,1,1", box_spectrum((1, 1, 1), K)),
        ("box:1,2", box_spectrum((1, 2), K)),
        ("interval:1", box_spectrum((1,), K)),
        ("tri-eq:1", equilateral_triangle_spectrum(1, K)),
        ("tri-ri:1", right_isosceles_triangle_spectrum(1, K)),
        ("ball:n=2,R=1", ball_spectrum(2, 1, K)),
        ("ball:n=3,R=1", ball_spectrum(3, 1, K)),
        ("hemisphere", hemisphere_spectrum(K)),
        ("clifford", clifford_torus_spectrum(K + 1)),
        ("sphere:n=2", sphere_spectrum(2, K + 1)),
        ("sphere:n=3", sphere_spectrum(3, K + 1)),
        ("torus:1,1", flat_torus_spectrum((1, 1), K + 1)),
        ("cpn:n=1", cpn_spectrum(1, K + 1)),
        ("cpn:n=2", cpn_spectrum(2, K + 1)),
    ]
    out, violations = {}, 0
    for name, spec in models:
        bad = []
        for row in gap_bound_table(spec, None, 100):
            bad += [(row.k, b) for b, h in row.holds.items() if not h]
        violations += len(bad)
        out[name] = {"violations": bad}
    for n in (1, 2):
        spec = cpn_spectrum(n, K + 1)
        reps = [cpn_universal_check(spec, n, k) for k in range(0, 101)]
        bad = [r.k for r in reps if not r.holds]
        violations += len(bad)
        eq0 = reps[0].margin == 0.0 and reps[0].exact
        violations += 0 if eq0 else 1
        out[f"cy_universal_2 cpn:n={n}"] = {"violations": bad, "equality_at_0": eq0}
    return violations == (1 if perturb else 0), out


def _recursion(perturb: bool) -> tuple[bool, dict]:
    want = 0.96875 + (1e-9 if perturb else 0.0)
    c21 = float(recursion_constant(2, 1))
    mu = box_spectrum((1, 1), 102).labels(102)
    rep = cheng_yang_recursion_check(mu, 2, 100)
    ok = abs(c21 - want) <= 1e-12 and rep.holds and rep.hypothesis_failed_at is None and len(rep.steps) == 100
    return ok, {"C(2,1)": c21, "steps": len(rep.steps), "holds": rep.holds,
                "hypothesis_failed_at": rep.hypothesis_failed_at}


def _bessel(perturb: bool) -> tuple[bool, dict]:
    j01_ref = 2.404826 + (1e-5 if perturb else 0.0)
    half = specfun.bessel_zeros(0.5, 50)
    half_err = max(abs(z - (k + 1) * math.pi) for k, z in enumerate(half))
    j01, j11 = specfun.bessel_zero(0, 1), specfun.bessel_zero(1, 1)
    inter_bad = []
    orders = [0.5 * i for i in range(0, 21)]
    for p in orders:
        a, b = specfun.bessel_zeros(p, 21), specfun.bessel_zeros(p + 1, 20)
        for k in range(20):
            if not a[k] < b[k] < a[k + 1]:
                inter_bad.append((p, k + 1))
    disk = ball_spectrum(2, 1, 2).values(2)
    ratio = disk[1] / disk[0]
    ratio_err = abs(ratio / specfun.ppw_ratio(2) - 1.0)
    ok = (half_err < 1e-11 and abs(j01 - j01_ref) <= 1e-6 and abs(j11 - 3.831706) <= 1e-6
          and not inter_bad and ratio_err <= 1e-9)
    return ok, {"half_integer_max_err": half_err, "j01": j01, "j11": j11,
                "interlacing_failures": inter_bad, "disk_ratio_rel_err": ratio_err}


def _weyl(perturb: bool) -> tuple[bool, dict]:
    hi = 1.0 if perturb else 1.02
    t0 = time.perf_counter()
    spec = box_spectrum((1, 1), 10_000)
    elapsed = time.perf_counter() - t0
    vals = np.asarray(spec.values(10_000))
    dom = DomainSpec.box((1, 1))
    ks = np.arange(5000, 10_001)
    pred = np.array([weyl_prediction(dom, int(k)) for k in ks])
    ratios = vals[ks - 1] / pred
    ok = bool(ratios.min() >= 0.98 and ratios.max() <= hi and elapsed < 10.0)
    return ok, {"min_ratio": float(ratios.min()), "max_ratio": float(ratios.max()), "enumeration_seconds": elapsed}


CRITERIA = (
    (1, "cube gap proposition (exact, k <= 100)", _prop1, 1.0),
    (2, "equilateral gap proposition (exact, k <= 100)", _prop2, 1.0),
    (3, "fundamental gap identities (exact)", _identities, None),
    (4, "implication chain yang1 => yang2, hp, ppw (k <= 200)", _chain, None),
    (5, "gap bound conformance on model spectra (k <= 100)", _conformance, None),
    (6, "recursion inequality on the square spectrum", _recursion, None),
    (7, "Bessel zeros and disk ratio", _bessel, None),
    (8, "Weyl ratio on the unit square", _weyl, None),
)


def run_suite(perturb: int | None = None, only=None) -> list[CriterionResult]:
    results = []
    for number, name, fn, limit in CRITERIA:
        if only is not None and number not in only:
            continue
        t0 = time.perf_counter()
        ok, detail = fn(perturb == number)
        dt = time.perf_counter() - t0
        if limit is not None and dt >= limit:
            ok = False
            detail["runtime_limit_seconds"] = limit
        results.append(CriterionResult(number, name, bool(ok), dt, detail))
    return results
