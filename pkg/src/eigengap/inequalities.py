"""Universal eigenvalue inequalities and consecutive-gap bounds.

Every evaluator accepts either a :class:`~eigengap.spectra.Spectrum` or a
plain sequence of eigenvalues.  Dirichlet evaluators read a sequence as
``lambda_1, lambda_2, ...``; closed evaluators read it as
``lambda_bar_0, lambda_bar_1, ...``.

Labeled spectra and sequences of ints/Fractions are evaluated in exact
rational arithmetic.  Inequalities homogeneous in the eigenvalues are
compared in units of the spectrum's ``unit`` (so a ``pi**2`` factor cancels);
inhomogeneous ones are exact only when the unit carries no power of pi.
Everything else falls back to floats with tolerance
``1e-9 * max(1, |rhs|)``.

The constant ``C_0(n)`` is taken at its upper value ``1 + 4/n``.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass, field
from fractions import Fraction
from numbers import Rational
from typing import Sequence

from .errors import InsufficientEigenvalues, ParameterError
from .spectra import Kind, Problem, Spectrum

FLOAT_RTOL = 1e-9
C0_MODE = "upper"


def c0(n) -> Fraction:
    """Upper value 1 + 4/n of the Cheng-Yang constant."""
    return 1 + Fraction(4, n)


@dataclass(frozen=True)
class InequalityReport:
    inequality: str
    k: int
    lhs: float
    rhs: float
    margin: float
    holds: bool
    status: str = "ok"  # ok | inapplicable | infinite_rhs
    exact: bool = False

    def _replace_name(self, name: str) -> "InequalityReport":
        return dataclasses.replace(self, inequality=name)

    def to_json(self) -> dict:
        return {
            "inequality": self.inequality,
            "k": self.k,
            "lhs": self.lhs,
            "rhs": self.rhs,
            "margin": self.margin,
            "holds": self.holds,
            "status": self.status,
        }


# ---------------------------------------------------------------------------
# eigenvalue access


class _Vals:
    """Eigenvalues by mathematical index in working units.

    ``scale`` converts a degree-1 working quantity to absolute units.
    """

    def __init__(self, source, first: int, top: int, homogeneous: bool):
        self.first = first
        if isinstance(source, Spectrum):
            if source.first_index != first:
                want = "closed" if first == 0 else "Dirichlet"
                raise ParameterError(f"this evaluator needs a {want} spectrum, got {source.problem.value}")
            count = top - first + 1
            if count > source.guaranteed_count:
                raise InsufficientEigenvalues(
                    f"need index {top} but only {source.guaranteed_count} eigenvalues are certified"
                )
            unit = source.unit
            if unit is not None and (homogeneous or unit.pi_exp == 0):
                self.vals = [unit.coef * lab for lab in source.labels(count)]
                self.scale = math.pi**unit.pi_exp if homogeneous else 1.0
                self.exact = True
            else:
                self.vals = source.values(count)
                self.scale = 1.0
                self.exact = False
        else:
            count = top - first + 1
            seq = list(source)
            if count > len(seq):
                raise InsufficientEigenvalues(f"need index {top} but sequence has {len(seq)} values")
            seq = seq[:count]
            if all(isinstance(v, Rational) and not isinstance(v, bool) for v in seq):
                self.vals = [Fraction(v) for v in seq]
                self.exact = True
            else:
                self.vals = [float(v) for v in seq]
                self.exact = False
            self.scale = 1.0

    def __getitem__(self, i: int):
        return self.vals[i - self.first]

    def range(self, lo: int, hi: int) -> list:
        """Values with mathematical indices lo..hi inclusive."""
        return self.vals[lo - self.first: hi - self.first + 1]

    def const(self, c):
        """A constant in working units (exact when possible)."""
        if self.exact:
            return Fraction(c)
        return float(c)


def _num(exact: bool):
    """Constructor for constants ``F(a)`` / ``F(a, b) = a/b`` in the working arithmetic."""
    if exact:
        return Fraction
    return lambda a, b=1: a / b


def _check_k(k, lo: int = 1) -> int:
    if isinstance(k, bool) or int(k) != k or k < lo:
        raise ParameterError(f"k must be an integer >= {lo}, got {k!r}")
    return int(k)


def _check_n(n) -> int:
    if isinstance(n, bool) or int(n) != n or n < 1:
        raise ParameterError(f"dimension must be a positive integer, got {n!r}")
    return int(n)


def _le(lhs, rhs, exact: bool) -> bool:
    if exact:
        return lhs <= rhs
    return float(lhs) <= float(rhs) + FLOAT_RTOL * max(1.0, abs(float(rhs)))


def _report(name, k, lhs, rhs, v: _Vals, degree: int, status: str = "ok", holds=None) -> InequalityReport:
    s = v.scale**degree
    L, R = float(lhs) * s, float(rhs) * s
    if holds is None:
        holds = _le(lhs, rhs, v.exact)
    return InequalityReport(name, k, L, R, R - L, bool(holds), status, v.exact)


# ---------------------------------------------------------------------------
# exact bound form  a + b * r**(1/root)


@dataclass(frozen=True)
class _Bound:
    a: object
    b: object
    r: object
    root: int = 2

    @property
    def applicable(self) -> bool:
        return self.r >= 0

    def value(self) -> float:
        if not self.applicable:
            return math.nan
        return float(self.a) + float(self.b) * float(self.r) ** (1.0 / self.root)

    def dominates(self, x, exact: bool) -> bool:
        """Whether ``x <= bound``."""
        if exact:
            d = x - self.a
            if d <= 0:
                return True
            return d**self.root <= self.b**self.root * self.r
        return _le(x, self.value(), False)


# ---------------------------------------------------------------------------
# Dirichlet universal inequalities


def ppw_check(spec, n, k) -> InequalityReport:
    """``lambda_{k+1} - lambda_k <= 4/(n k) sum_{i<=k} lambda_i``."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, k + 1, True)
    lhs = v[k + 1] - v[k]
    rhs = Fraction(4, n * k) * sum(v.range(1, k)) if v.exact else 4.0 / (n * k) * sum(v.range(1, k))
    return _report("ppw", k, lhs, rhs, v, 1)


def hp_check(spec, n, k) -> InequalityReport:
    """Hile-Protter: ``sum lambda_i / (lambda_{k+1} - lambda_i) >= n k / 4``.

    Reported with lhs = nk/4 and rhs = the sum.  If lambda_{k+1} equals some
    lambda_i (i <= k) the sum is +inf and the inequality holds.
    """
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, k + 1, True)
    top = v[k + 1]
    lhs = Fraction(n * k, 4) if v.exact else n * k / 4.0
    lams = v.range(1, k)
    if any(top == lam if v.exact else _tie(top, lam) for lam in lams):
        return InequalityReport("hp", k, float(lhs), math.inf, math.inf, True, "infinite_rhs", v.exact)
    rhs = sum(lam / (top - lam) for lam in lams)
    return _report("hp", k, lhs, rhs, v, 0)


def _tie(a: float, b: float) -> bool:
    return abs(a - b) <= FLOAT_RTOL * max(1.0, abs(a))


def yang1_check(spec, n, k) -> InequalityReport:
    """Yang's first inequality."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, k + 1, True)
    top = v[k + 1]
    lams = v.range(1, k)
    lhs = sum((top - lam) ** 2 for lam in lams)
    s = sum((top - lam) * lam for lam in lams)
    rhs = Fraction(4, n) * s if v.exact else 4.0 / n * s
    return _report("yang1", k, lhs, rhs, v, 2)


def yang2_check(spec, n, k) -> InequalityReport:
    """Yang's second inequality ``lambda_{k+1} <= (1 + 4/n) mean(lambda_1..k)``."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, k + 1, True)
    s = sum(v.range(1, k))
    rhs = c0(n) * s / k if v.exact else (1 + 4.0 / n) * s / k
    return _report("yang2", k, v[k + 1], rhs, v, 1)


def extrinsic_cc_check(spec, n, k, H2) -> InequalityReport:
    """Chen-Cheng extrinsic inequality with ``H2 = sup |H|^2``."""
    n, k = _check_n(n), _check_k(k)
    if H2 == 0:
        return yang1_check(spec, n, k)._replace_name("cc1")
    v = _Vals(spec, 1, k + 1, False)
    if v.exact and isinstance(H2, Rational):
        shift = Fraction(n * n, 4) * Fraction(H2)
    else:
        v.vals, v.exact = [float(x) for x in v.vals], False
        shift = n * n * float(H2) / 4.0
    top = v[k + 1]
    lams = v.range(1, k)
    lhs = sum((top - lam) ** 2 for lam in lams)
    s = sum((top - lam) * (lam + shift) for lam in lams)
    rhs = Fraction(4, n) * s if v.exact else 4.0 / n * s
    return _report("cc1", k, lhs, rhs, v, 2)


def chen_cheng_upper(spec, n, k, H2) -> float:
    """Bound on lambda_{k+1} from ``lambda_{k+1} + c <= C_0 k^(2/n) (lambda_1 + c)``, c = n^2 H2 / 4."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, 1, True)
    c = n * n * float(H2) / 4.0
    lam1 = float(v[1]) * v.scale
    return float(c0(n)) * k ** (2.0 / n) * (lam1 + c) - c


@dataclass
class ChainReport:
    kmax: int
    yang1_holds: list[int] = field(default_factory=list)
    violations: list[tuple[int, str]] = field(default_factory=list)

    @property
    def first_violation(self) -> tuple[int, str] | None:
        return self.violations[0] if self.violations else None

    @property
    def ok(self) -> bool:
        return not self.violations


def implication_chain(spec, n, kmax) -> ChainReport:
    """Check yang1 => yang2, hp, ppw for every k <= kmax where yang1 holds."""
    kmax = _check_k(kmax, 0)
    rep = ChainReport(kmax)
    for k in range(1, kmax + 1):
        if not yang1_check(spec, n, k).holds:
            continue
        rep.yang1_holds.append(k)
        for name, fn in (("yang2", yang2_check), ("hp", hp_check), ("ppw", ppw_check)):
            if not fn(spec, n, k).holds:
                rep.violations.append((k, name))
    return rep


# ---------------------------------------------------------------------------
# Cheng-Yang recursion


def recursion_constant(n, k):
    """``C(n,k) = 1 - (k/(k+1))^(4/n) (1+2/n)(1+4/n) / (3n (k+1)^3)``.

    Exact Fraction when 4/n is an integer, float otherwise.
    """
    n, k = _check_n(n), _check_k(k)
    if 4 % n == 0:
        e = 4 // n
        return 1 - Fraction(k, k + 1) ** e * (1 + Fraction(2, n)) * (1 + Fraction(4, n)) / (3 * n * (k + 1) ** 3)
    return 1 - (k / (k + 1)) ** (4.0 / n) * (1 + 2.0 / n) * (1 + 4.0 / n) / (3.0 * n * (k + 1) ** 3)


@dataclass(frozen=True)
class RecursionState:
    k: int
    gamma: object
    e: object
    h: object
    n: int


@dataclass(frozen=True)
class RecursionStep:
    k: int
    c: object
    h_next: float
    bound: float
    holds: bool


@dataclass
class RecursionReport:
    n: int
    kmax: int
    exact: bool
    states: list[RecursionState] = field(default_factory=list)
    steps: list[RecursionStep] = field(default_factory=list)
    hypothesis_failed_at: int | None = None

    @property
    def holds(self) -> bool:
        return all(s.holds for s in self.steps)

    @property
    def nonpositive_h(self) -> list[int]:
        return [s.k for s in self.states if s.h <= 0]


def cheng_yang_recursion_check(mu: Sequence, n, kmax) -> RecursionReport:
    """Verify ``H_{k+1} <= C(n,k) ((k+1)/k)^(4/n) H_k`` for k = 1..kmax.

    ``mu`` is a positive nondecreasing sequence mu_1, mu_2, ... with at least
    kmax + 1 terms.  The Yang-type hypothesis at each k is checked first;
    at the first failure the recursion is no longer asserted.
    """
    n, kmax = _check_n(n), _check_k(kmax, 0)
    v = _Vals(mu, 1, kmax + 1, True)
    exact = v.exact and 4 % n == 0
    vals = v.vals if exact else [float(x) for x in v.vals]
    if any(x <= 0 for x in vals) or any(b < a for a, b in zip(vals, vals[1:])):
        raise ParameterError("mu must be positive and nondecreasing")
    rep = RecursionReport(n, kmax, exact)
    two_n = Fraction(2, n) if exact else 2.0 / n

    s1 = s2 = 0
    for k in range(1, kmax + 2):
        s1 += vals[k - 1]
        s2 += vals[k - 1] ** 2
        g, e = s1 / k, s2 / k
        rep.states.append(RecursionState(k, g, e, (1 + two_n) * g * g - e, n))

    for k in range(1, kmax + 1):
        top = vals[k]
        lams = vals[:k]
        lhs = sum((top - m) ** 2 for m in lams)
        rhs = (Fraction(4, n) if exact else 4.0 / n) * sum(m * (top - m) for m in lams)
        if not _le(lhs, rhs, exact):
            rep.hypothesis_failed_at = k
            break
        c = recursion_constant(n, k)
        factor = Fraction(k + 1, k) ** (4 // n) if exact else ((k + 1) / k) ** (4.0 / n)
        h_k, h_next = rep.states[k - 1].h, rep.states[k].h
        bound = c * factor * h_k
        rep.steps.append(RecursionStep(k, c, float(h_next), float(bound), _le(h_next, bound, exact)))
    return rep


def cheng_yang_upper(spec, n, k) -> float:
    """``(1 + 4/n) k^(2/n) lambda_1``, an upper bound for lambda_{k+1}."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, 1, True)
    return _cy_upper_bound(v, n, k).value() * v.scale


def _cy_upper_bound(v: _Vals, n: int, k: int) -> _Bound:
    if v.exact:
        return _Bound(Fraction(0), c0(n) * v[1], Fraction(k * k), n)
    return _Bound(0.0, float(c0(n)) * v[1], float(k * k), n)


def cheng_yang_upper_check(spec, n, k) -> InequalityReport:
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, k + 1, True)
    b = _cy_upper_bound(v, n, k)
    return _report("cheng_yang_upper", k, v[k + 1], b.value(), v, 1, holds=b.dominates(v[k + 1], v.exact))


def shifted_upper_bound(lam1, n, k, closed: bool = False) -> float:
    """``C_0(n) (lambda_1 + 2n(n+1)) k^(1/n) - 2n(n+1)``.

    With ``closed=True`` the factor is ``(k+1)^(1/n)`` and ``lam1`` is the
    first nonzero closed eigenvalue; n is the complex dimension.
    """
    n, k = _check_n(n), _check_k(k)
    rho = 2 * n * (n + 1)
    t = (k + 1) if closed else k
    return float(c0(n)) * (float(lam1) + rho) * t ** (1.0 / n) - rho


# ---------------------------------------------------------------------------
# gap bounds


def _czy_bound(v: _Vals, n: int, k: int) -> _Bound:
    # 4 lambda_1 sqrt(C0/n) k^(1/n) = b * r^(1/(2n)),  r = (C0/n)^n k^2
    if v.exact:
        return _Bound(Fraction(0), 4 * v[1], (c0(n) / n) ** n * k * k, 2 * n)
    return _Bound(0.0, 4.0 * v[1], (float(c0(n)) / n) ** n * k * k, 2 * n)


def czy_gap_bound(spec, n, k) -> float:
    """``4 lambda_1 sqrt(C_0(n)/n) k^(1/n)``."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, 1, True)
    return _czy_bound(v, n, k).value() * v.scale


def _mean_var(lams, divisor, center_divisor=None):
    s = sum(lams)
    mean = s / (center_divisor if center_divisor is not None else divisor)
    var = sum((x - mean) ** 2 for x in lams) / divisor
    return s, mean, var


def _sphere_domain_bound(v: _Vals, n: int, k: int) -> _Bound:
    lams = v.range(1, k)
    F = _num(v.exact)
    _, mean, var = _mean_var(lams, k)
    r = (F(2, n) * mean + F(n, 2)) ** 2 - (1 + F(4, n)) * var
    return _Bound(F(0), F(2), r, 2)


def sphere_domain_gap_bound(spec, n, k) -> float | None:
    """Cheng-Yang gap bound for domains in the unit sphere; None if the radicand is negative."""
    n, k = _check_n(n), _check_k(k)
    b = _sphere_domain_bound(_Vals(spec, 1, k, False), n, k)
    return b.value() if b.applicable else None


def _cpn_domain_bound(v: _Vals, n: int, k: int) -> _Bound:
    lams = v.range(1, k)
    F = _num(v.exact)
    _, mean, var = _mean_var(lams, k)
    r = (mean / n + 2 * (n + 1)) ** 2 - (1 + F(2, n)) * var
    return _Bound(F(0), F(2), r, 2)


def cpn_domain_gap_bound(spec, n, k) -> float | None:
    """Gap bound for Dirichlet domains in CP^n(4) (n = complex dimension)."""
    n, k = _check_n(n), _check_k(k)
    b = _cpn_domain_bound(_Vals(spec, 1, k, False), n, k)
    return b.value() if b.applicable else None


def cpn_domain_universal_check(spec, n, k) -> InequalityReport:
    """Universal inequality for Dirichlet domains in CP^n(4)."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 1, k + 1, False)
    rho = v.const(2 * n * (n + 1))
    top = v[k + 1]
    lams = v.range(1, k)
    lhs = sum((top - x) ** 2 for x in lams)
    rhs = (Fraction(2, n) if v.exact else 2.0 / n) * sum((top - x) * (x + rho) for x in lams)
    return _report("cy_universal_1", k, lhs, rhs, v, 2)


# closed problems ----------------------------------------------------------


def closed_minimal_check(spec, n, k) -> InequalityReport:
    """``gap_k <= n + 4/(n(k+1)) sum_{i=1..k} lambda_bar_i`` (minimal in a unit sphere)."""
    n, k = _check_n(n), _check_k(k)
    v = _Vals(spec, 0, k + 1, False)
    s = sum(v.range(1, k))
    rhs = (n + Fraction(4, n * (k + 1)) * s) if v.exact else n + 4.0 / (n * (k + 1)) * s
    return _report("hm1", k, v[k + 1] - v[k], rhs, v, 1)


def closed_homogeneous_check(spec, k) -> InequalityReport:
    """``gap_k <= 4/(k+1) sum_{i=1..k} lambda_bar_i + lambda_bar_1`` (homogeneous)."""
    k = _check_k(k)
    v = _Vals(spec, 0, k + 1, True)
    s = sum(v.range(1, k))
    rhs = (Fraction(4, k + 1) * s if v.exact else 4.0 / (k + 1) * s) + v[1]
    return _report("hm2", k, v[k + 1] - v[k], rhs, v, 1)


def _yang_yau_bound(v: _Vals, n: int, k: int) -> _Bound:
    F = _num(v.exact)
    s = sum(v.range(1, k))
    c = F(2, n * (k + 1))
    return _Bound(n + c * s, c, s * s + n * n * (k + 1) * s * v[1], 2)


def yang_yau_minimal_bound(spec, n, k) -> float:
    n, k = _check_n(n), _check_k(k)
    return _yang_yau_bound(_Vals(spec, 0, k, False), n, k).value()


def _li_bound(v: _Vals, k: int) -> _Bound:
    F = _num(v.exact)
    s = sum(v.range(1, k))
    c = F(2, k + 1)
    return _Bound(c * s + v[1], c, s * s + (k + 1) * s * v[1], 2)


def li_homogeneous_bound(spec, k) -> float:
    k = _check_k(k)
    v = _Vals(spec, 0, k, True)
    return _li_bound(v, k).value() * v.scale


def _cy_bracket_bound(v: _Vals, k: int) -> _Bound:
    F = _num(v.exact)
    lams = v.range(1, k)
    s, _, var_k = _mean_var(lams, k)
    top = F(4, k + 1) * s + v[1]
    # sum of squared deviations from the mean of lambda_bar_1..k
    r = top * top - F(20, k + 1) * (var_k * k)
    return _Bound(F(0), F(1), r, 2)


def cheng_yang_homogeneous_bracket(spec, k) -> float | None:
    k = _check_k(k)
    v = _Vals(spec, 0, k, True)
    b = _cy_bracket_bound(v, k)
    return b.value() * v.scale if b.applicable else None


def _cpn_closed_bound(v: _Vals, n: int, k: int) -> _Bound:
    F = _num(v.exact)
    lams = v.range(1, k)
    s = sum(lams)
    m = s / (k + 1)
    dev = sum((x - m) ** 2 for x in lams) / (k + 1)
    r = (m / n + 2 * (n + 1)) ** 2 - (1 + F(2, n)) * dev
    return _Bound(F(0), F(2), r, 2)


def cpn_closed_gap_bound(spec, n, k) -> float | None:
    """Closed-problem gap bound on complex hypersurfaces of CP^n(4)."""
    n, k = _check_n(n), _check_k(k)
    b = _cpn_closed_bound(_Vals(spec, 0, k, False), n, k)
    return b.value() if b.applicable else None


def cpn_universal_check(spec, n, k) -> InequalityReport:
    """``sum_{i=0..k} (lb_{k+1} - lb_i)^2 <= 2/n sum_{i=0..k} (lb_{k+1} - lb_i)(lb_i + 2n(n+1))``."""
    n, k = _check_n(n), _check_k(k, 0)
    v = _Vals(spec, 0, k + 1, False)
    rho = v.const(2 * n * (n + 1))
    top = v[k + 1]
    lams = v.range(0, k)
    lhs = sum((top - x) ** 2 for x in lams)
    rhs = (Fraction(2, n) if v.exact else 2.0 / n) * sum((top - x) * (x + rho) for x in lams)
    return _report("cy_universal_2", k, lhs, rhs, v, 2)


# ---------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class GapBoundReport:
    k: int
    actual_gap: float
    bounds: dict[str, float]
    tightness: dict[str, float]
    holds: dict[str, bool]
    inapplicable: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(self.holds.values())

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "actual_gap": self.actual_gap,
            "bounds": self.bounds,
            "tightness": {b: (None if math.isinf(t) else t) for b, t in self.tightness.items()},
            "holds": self.holds,
            "inapplicable": list(self.inapplicable),
        }


def _ppw_gap_bound(v: _Vals, n: int, k: int) -> _Bound:
    F = _num(v.exact)
    return _Bound(F(4, n * k) * sum(v.range(1, k)), F(0), F(0), 2)


def _yang2_gap_bound(v: _Vals, n: int, k: int) -> _Bound:
    F = _num(v.exact)
    return _Bound((1 + F(4, n)) * sum(v.range(1, k)) / k - v[k], F(0), F(0), 2)


def _hm1_bound(v: _Vals, n: int, k: int) -> _Bound:
    F = _num(v.exact)
    return _Bound(n + F(4, n * (k + 1)) * sum(v.range(1, k)), F(0), F(0), 2)


def _hm2_bound(v: _Vals, k: int) -> _Bound:
    F = _num(v.exact)
    return _Bound(F(4, k + 1) * sum(v.range(1, k)) + v[1], F(0), F(0), 2)


def applicable_bounds(spec: Spectrum) -> tuple[str, ...]:
    """Gap bounds whose hypotheses hold for the spectrum's model domain."""
    kind = spec.domain.kind
    if spec.domain.is_euclidean:
        return ("czy", "ppw", "yang2")
    if kind is Kind.HEMISPHERE:
        return ("sphere_domain",)
    homogeneous = ("cy_bracket", "hm2", "li")
    if kind in (Kind.CLIFFORD_TORUS, Kind.SPHERE):
        return tuple(sorted(homogeneous + ("hm1", "yang_yau")))
    if kind is Kind.FLAT_TORUS:
        return homogeneous
    if kind is Kind.COMPLEX_PROJECTIVE:
        return tuple(sorted(homogeneous + ("cpn_closed",)))
    return ()


_INHOMOGENEOUS = {"sphere_domain", "hm1", "yang_yau", "cpn_closed"}


def _make_bound(bid: str, v: _Vals, n: int, k: int) -> _Bound:
    if bid == "czy":
        return _czy_bound(v, n, k)
    if bid == "ppw":
        return _ppw_gap_bound(v, n, k)
    if bid == "yang2":
        return _yang2_gap_bound(v, n, k)
    if bid == "sphere_domain":
        return _sphere_domain_bound(v, n, k)
    if bid == "hm1":
        return _hm1_bound(v, n, k)
    if bid == "yang_yau":
        return _yang_yau_bound(v, n, k)
    if bid == "hm2":
        return _hm2_bound(v, k)
    if bid == "li":
        return _li_bound(v, k)
    if bid == "cy_bracket":
        return _cy_bracket_bound(v, k)
    if bid == "cpn_closed":
        return _cpn_closed_bound(v, n, k)
    raise ParameterError(f"unknown bound {bid!r}")


def gap_bound_row(spec: Spectrum, n, k, bound_ids=None) -> GapBoundReport:
    """Actual gap lambda_{k+1} - lambda_k against each applicable bound."""
    k = _check_k(k)
    if spec.problem is Problem.CLOSED and spec.domain.kind is Kind.COMPLEX_PROJECTIVE:
        n = spec.domain.complex_dim if n is None else n
    n = spec.domain.dim if n is None else _check_n(n)
    first = spec.first_index
    ids = tuple(sorted(bound_ids if bound_ids is not None else applicable_bounds(spec)))
    bounds, tight, holds, inapp = {}, {}, {}, []
    gap_abs = None
    for bid in ids:
        v = _Vals(spec, first, k + 1, bid not in _INHOMOGENEOUS)
        gap = v[k + 1] - v[k]
        if gap_abs is None or v.exact:
            gap_abs = float(gap) * v.scale
        b = _make_bound(bid, v, n, k)
        if not b.applicable:
            inapp.append(bid)
            continue
        val = b.value() * v.scale
        bounds[bid] = val
        g = float(gap) * v.scale
        tight[bid] = math.inf if g == 0 else val / g
        holds[bid] = b.dominates(gap, v.exact)
    if gap_abs is None:
        vals = spec.values(k + 1 - first + 1)
        gap_abs = vals[-1] - vals[-2]
    return GapBoundReport(k, gap_abs, bounds, tight, holds, tuple(inapp))


def bound_check(spec: Spectrum, bound_id: str, n, k) -> InequalityReport:
    """Single gap bound as an InequalityReport (lhs = actual gap)."""
    row = gap_bound_row(spec, n, k, (bound_id,))
    if bound_id in row.inapplicable:
        return InequalityReport(bound_id, k, row.actual_gap, math.nan, math.nan, True, "inapplicable")
    b = row.bounds[bound_id]
    return InequalityReport(bound_id, k, row.actual_gap, b, b - row.actual_gap, row.holds[bound_id], "ok",
                            spec.exact)


def gap_bound_table(spec: Spectrum, n=None, kmax: int = 100) -> list[GapBoundReport]:
    """Per-k table of gaps and all applicable bounds, ordered by k."""
    kmax = _check_k(kmax, 0)
    return [gap_bound_row(spec, n, k) for k in range(1, kmax + 1)]


def czy_conjecture_constant(spec, n, kmax) -> tuple[float, int]:
    """Empirical gap coefficient ``max_k (lambda_{k+1} - lambda_k) / k^(1/n)`` and its argmax."""
    n, kmax = _check_n(n), _check_k(kmax)
    first = spec.first_index if isinstance(spec, Spectrum) else 1
    v = _Vals(spec, first, kmax + 1, True)
    best, arg = -math.inf, 0
    for k in range(1, kmax + 1):
        c = float(v[k + 1] - v[k]) * v.scale / k ** (1.0 / n)
        if c > best:
            best, arg = c, k
    return best, arg


INEQUALITIES = {
    "ppw": ppw_check,
    "hp": hp_check,
    "yang1": yang1_check,
    "yang2": yang2_check,
    "cheng_yang_upper": cheng_yang_upper_check,
    "hm1": closed_minimal_check,
    "cy_universal_2": cpn_universal_check,
    "cy_universal_1": cpn_domain_universal_check,
}
