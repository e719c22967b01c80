"""Explicit Laplace spectra of model domains and manifolds.

Dirichlet spectra are indexed from 1 and closed spectra from 0, so
``lambda_1`` is the first Dirichlet eigenvalue and ``lambda_bar_0 = 0``.
Where the spectrum is a scaled integer quadratic form the generators keep
the integer ``label`` of every eigenvalue and an exact ``unit`` with
``value == unit * label``; all comparisons downstream can then be done in
integer arithmetic.

Lattice spectra are certified complete: every index tuple whose label is at
most the current cutoff is enumerated (each coordinate is bounded by the
cutoff), and the cutoff is doubled until at least the requested number of
eigenvalues lies below it.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from . import specfun
from .errors import BudgetError, ParameterError
from .exact import PiRational, as_positive, lcm

FLOAT_MERGE_RTOL = 1e-9


class Kind(str, Enum):
    INTERVAL = "interval"
    BOX = "box"
    EQUILATERAL_TRIANGLE = "tri-eq"
    RIGHT_ISOSCELES_TRIANGLE = "tri-ri"
    BALL = "ball"
    HEMISPHERE = "hemisphere"
    SPHERE = "sphere"
    FLAT_TORUS = "torus"
    CLIFFORD_TORUS = "clifford"
    COMPLEX_PROJECTIVE = "cpn"


class Problem(str, Enum):
    DIRICHLET = "dirichlet"
    CLOSED = "closed"


_CLOSED_KINDS = {Kind.SPHERE, Kind.FLAT_TORUS, Kind.CLIFFORD_TORUS, Kind.COMPLEX_PROJECTIVE}
_EUCLIDEAN_KINDS = {
    Kind.INTERVAL,
    Kind.BOX,
    Kind.EQUILATERAL_TRIANGLE,
    Kind.RIGHT_ISOSCELES_TRIANGLE,
    Kind.BALL,
}


def _param_to_json(p):
    if isinstance(p, Fraction):
        return p.numerator if p.denominator == 1 else f"{p.numerator}/{p.denominator}"
    return p


def _param_from_json(p):
    if isinstance(p, (int, str)):
        return Fraction(p)
    return float(p)


@dataclass(frozen=True)
class DomainSpec:
    """A model domain or manifold.

    ``params`` holds the geometric lengths (sides, radius, diameter or leg);
    ``dim`` is the real dimension.  For ``cpn`` the complex dimension is
    ``dim // 2``.  Rational lengths are stored as Fraction, others as float.
    """

    kind: Kind
    params: tuple = ()
    dim: int = 1

    def __post_init__(self):
        object.__setattr__(self, "kind", Kind(self.kind))
        if int(self.dim) != self.dim or self.dim < 1:
            raise ParameterError(f"dimension must be a positive integer, got {self.dim}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(
            self, "params", tuple(as_positive(p, f"{self.kind.value} parameter") for p in self.params)
        )

    @property
    def problem(self) -> Problem:
        return Problem.CLOSED if self.kind in _CLOSED_KINDS else Problem.DIRICHLET

    @property
    def is_euclidean(self) -> bool:
        return self.kind in _EUCLIDEAN_KINDS

    @property
    def complex_dim(self) -> int:
        if self.kind is not Kind.COMPLEX_PROJECTIVE:
            raise ParameterError("complex dimension only defined for cpn")
        return self.dim // 2

    # constructors -------------------------------------------------------
    @classmethod
    def interval(cls, length=1) -> "DomainSpec":
        return cls(Kind.INTERVAL, (length,), 1)

    @classmethod
    def box(cls, sides: Sequence) -> "DomainSpec":
        sides = tuple(sides)
        if not sides:
            raise ParameterError("box needs at least one side")
        return cls(Kind.BOX, sides, len(sides))

    @classmethod
    def equilateral_triangle(cls, diameter=1) -> "DomainSpec":
        return cls(Kind.EQUILATERAL_TRIANGLE, (diameter,), 2)

    @classmethod
    def right_isosceles_triangle(cls, leg=1) -> "DomainSpec":
        return cls(Kind.RIGHT_ISOSCELES_TRIANGLE, (leg,), 2)

    @classmethod
    def ball(cls, n: int, radius=1) -> "DomainSpec":
        if n not in (2, 3):
            raise ParameterError(f"ball spectra are supported for n in {{2, 3}}, got n={n}")
        return cls(Kind.BALL, (radius,), n)

    @classmethod
    def hemisphere(cls) -> "DomainSpec":
        return cls(Kind.HEMISPHERE, (), 2)

    @classmethod
    def sphere(cls, n: int) -> "DomainSpec":
        return cls(Kind.SPHERE, (), n)

    @classmethod
    def flat_torus(cls, sides: Sequence) -> "DomainSpec":
        sides = tuple(sides)
        if not sides:
            raise ParameterError("torus needs at least one side")
        return cls(Kind.FLAT_TORUS, sides, len(sides))

    @classmethod
    def clifford_torus(cls) -> "DomainSpec":
        return cls(Kind.CLIFFORD_TORUS, (), 2)

    @classmethod
    def cpn(cls, n: int) -> "DomainSpec":
        if int(n) != n or n < 1:
            raise ParameterError(f"complex dimension must be >= 1, got {n}")
        return cls(Kind.COMPLEX_PROJECTIVE, (), 2 * int(n))

    def volume(self) -> float:
        """Riemannian volume; only for kinds where it is elementary."""
        k, p = self.kind, [float(x) for x in self.params]
        if k is Kind.INTERVAL:
            return p[0]
        if k in (Kind.BOX, Kind.FLAT_TORUS):
            return math.prod(p)
        if k is Kind.EQUILATERAL_TRIANGLE:
            return math.sqrt(3.0) / 4.0 * p[0] ** 2
        if k is Kind.RIGHT_ISOSCELES_TRIANGLE:
            return 0.5 * p[0] ** 2
        if k is Kind.BALL:
            return unit_ball_volume(self.dim) * p[0] ** self.dim
        if k is Kind.CLIFFORD_TORUS:
            return 2.0 * math.pi**2
        raise ParameterError(f"no volume formula for {k.value}")

    def to_json(self) -> dict:
        return {
            "kind": self.kind.value,
            "params": [_param_to_json(p) for p in self.params],
            "dim": self.dim,
            "problem": self.problem.value,
        }

    @classmethod
    def from_json(cls, d: dict) -> "DomainSpec":
        return cls(Kind(d["kind"]), tuple(_param_from_json(p) for p in d["params"]), int(d["dim"]))

    def __str__(self) -> str:
        if self.kind is Kind.COMPLEX_PROJECTIVE:
            return f"cpn:n={self.complex_dim}"
        if self.kind in (Kind.SPHERE,):
            return f"sphere:n={self.dim}"
        if self.kind is Kind.BALL:
            return f"ball:n={self.dim},R={_param_to_json(self.params[0])}"
        if not self.params:
            return self.kind.value
        return self.kind.value + ":" + ",".join(str(_param_to_json(p)) for p in self.params)


def unit_ball_volume(n: int) -> float:
    return math.pi ** (n / 2.0) / math.gamma(n / 2.0 + 1.0)


@dataclass(frozen=True)
class Entry:
    index: int
    value: float
    mult: int
    label: int | None = None


@dataclass(frozen=True)
class EnumerationBudget:
    """Initial cutoff policy for certified enumeration.

    The first cutoff is ``safety_factor`` times the Weyl prediction of the
    K-th eigenvalue (or ``cutoff`` when given); it is doubled at most
    ``max_doublings`` times.
    """

    cutoff: float | None = None
    safety_factor: float = 2.0
    max_doublings: int = 40
    max_candidates: int = 50_000_000

    def __post_init__(self):
        if self.cutoff is not None and not self.cutoff > 0:
            raise ParameterError("cutoff must be positive")
        if not self.safety_factor >= 1:
            raise ParameterError("safety_factor must be >= 1")


DEFAULT_BUDGET = EnumerationBudget()


@dataclass(frozen=True)
class Spectrum:
    """Sorted eigenvalues with multiplicities.

    The first ``guaranteed_count`` eigenvalues (with multiplicity, counting
    ``lambda_bar_0`` for closed problems) are certified complete; the last
    entry always carries its full multiplicity.
    """

    domain: DomainSpec
    unit: PiRational | None
    entries: tuple[Entry, ...]
    guaranteed_count: int
    _expanded: tuple = field(default=None, repr=False, compare=False)

    @property
    def problem(self) -> Problem:
        return self.domain.problem

    @property
    def first_index(self) -> int:
        return 0 if self.problem is Problem.CLOSED else 1

    @property
    def exact(self) -> bool:
        return self.unit is not None

    @property
    def total(self) -> int:
        """Eigenvalues carried, counted with multiplicity."""
        return sum(e.mult for e in self.entries)

    def _expand(self) -> tuple[tuple[float, ...], tuple]:
        if self._expanded is None:
            vals, labs = [], []
            for e in self.entries:
                vals.extend([e.value] * e.mult)
                labs.extend([e.label] * e.mult)
            object.__setattr__(self, "_expanded", (tuple(vals), tuple(labs)))
        return self._expanded

    def values(self, count: int | None = None) -> list[float]:
        """Eigenvalues repeated by multiplicity, in index order.

        Defaults to the ``guaranteed_count`` certified ones.
        """
        vals = self._expand()[0]
        return list(vals[: self.guaranteed_count if count is None else count])

    def labels(self, count: int | None = None) -> list[int]:
        if not self.exact:
            raise ParameterError(f"spectrum of {self.domain} has no integer labels")
        labs = self._expand()[1]
        return list(labs[: self.guaranteed_count if count is None else count])

    def value(self, i: int) -> float:
        """Eigenvalue with mathematical index ``i`` (1-based Dirichlet, 0-based closed)."""
        return self.values()[self._pos(i)]

    def label(self, i: int) -> int:
        return self.labels()[self._pos(i)]

    def _pos(self, i: int) -> int:
        pos = i - self.first_index
        if pos < 0:
            raise ParameterError(f"index {i} below first index {self.first_index}")
        if pos >= self.guaranteed_count:
            raise ParameterError(
                f"index {i} beyond certified range ({self.guaranteed_count} eigenvalues)"
            )
        return pos

    def to_json(self) -> dict:
        return {
            "domain": self.domain.to_json(),
            "problem": self.problem.value,
            "unit": None if self.unit is None else self.unit.to_json(),
            "entries": [{"value": e.value, "label": e.label, "mult": e.mult} for e in self.entries],
            "guaranteed_count": self.guaranteed_count,
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def from_json(cls, d: dict) -> "Spectrum":
        domain = DomainSpec.from_json(d["domain"])
        if d.get("problem") not in (None, domain.problem.value):
            raise ParameterError("problem field disagrees with domain kind")
        unit = None if d["unit"] is None else PiRational.from_json(d["unit"])
        entries, idx = [], 0 if domain.problem is Problem.CLOSED else 1
        for e in d["entries"]:
            entries.append(Entry(idx, float(e["value"]), int(e["mult"]), e["label"]))
            idx += int(e["mult"])
        return cls(domain, unit, tuple(entries), int(d["guaranteed_count"]))

    @classmethod
    def loads(cls, s: str) -> "Spectrum":
        return cls.from_json(json.loads(s))

    def to_csv(self, count: int | None = None) -> str:
        """One row per eigenvalue (index, value, label, mult)."""
        count = self.guaranteed_count if count is None else min(count, self.guaranteed_count)
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["index", "value", "label", "mult"])
        rows = 0
        for e in self.entries:
            for j in range(e.mult):
                if rows >= count:
                    break
                w.writerow([e.index + j, repr(e.value), "" if e.label is None else e.label, e.mult])
                rows += 1
        return buf.getvalue()


# ---------------------------------------------------------------------------
# assembly helpers


def _check_count(K, closed: bool) -> int:
    if isinstance(K, bool) or int(K) != K:
        raise ParameterError(f"count must be an integer, got {K!r}")
    K = int(K)
    if K < (0 if closed else 1):
        raise ParameterError(f"count must be >= {0 if closed else 1}, got {K}")
    if K > DEFAULT_BUDGET.max_candidates:
        raise BudgetError(f"count {K} exceeds the enumeration budget of {DEFAULT_BUDGET.max_candidates}")
    return K


def _from_labels(domain: DomainSpec, unit: PiRational, labels: np.ndarray, need: int) -> Spectrum:
    """Build a Spectrum from a complete multiset of labels below some cutoff.

    ``need`` is the number of eigenvalues (with multiplicity) to certify.
    """
    uniq, counts = np.unique(labels, return_counts=True)
    cum = np.cumsum(counts)
    last = int(np.searchsorted(cum, need))  # first entry reaching `need`
    first = 0 if domain.problem is Problem.CLOSED else 1
    entries, idx = [], first
    for lab, c in zip(uniq[: last + 1].tolist(), counts[: last + 1].tolist()):
        lab = int(lab)
        entries.append(Entry(idx, float(unit * lab), int(c), lab))
        idx += int(c)
    return Spectrum(domain, unit, tuple(entries), need)


def _from_floats(domain: DomainSpec, values: np.ndarray, mults: np.ndarray, need: int) -> Spectrum:
    order = np.argsort(values, kind="stable")
    values, mults = values[order], mults[order]
    merged_v: list[float] = []
    merged_m: list[int] = []
    for v, m in zip(values.tolist(), mults.tolist()):
        if merged_v and abs(v - merged_v[-1]) < FLOAT_MERGE_RTOL * max(abs(v), 1e-300):
            merged_m[-1] += int(m)
        else:
            merged_v.append(v)
            merged_m.append(int(m))
    first = 0 if domain.problem is Problem.CLOSED else 1
    entries, idx, total = [], first, 0
    for v, m in zip(merged_v, merged_m):
        entries.append(Entry(idx, v, m, None))
        idx += m
        total += m
        if total >= need:
            break
    return Spectrum(domain, None, tuple(entries), need)


def _certify(enumerate_below: Callable[[float], np.ndarray], start: float, need: int,
             budget: EnumerationBudget, count: Callable = len):
    """Double the cutoff until at least ``need`` eigenvalues lie below it.

    ``enumerate_below(cutoff)`` must return every eigenvalue <= cutoff;
    ``count`` maps its result to the number found (with multiplicity).
    """
    cutoff = budget.cutoff if budget.cutoff is not None else start
    for _ in range(budget.max_doublings + 1):
        found = enumerate_below(cutoff)
        c = count(found)
        if c >= need:
            return found, cutoff
        if c > budget.max_candidates:
            break
        cutoff *= 2.0
    raise BudgetError(f"could not certify {need} eigenvalues (last cutoff {cutoff:g})")


def _quadratic_sum(weights: Sequence, lmax, lower: int, dtype) -> np.ndarray:
    """All sums ``sum_j w_j k_j**2 <= lmax`` with k_j >= lower (lower in {0, 1}).

    For ``lower == 0`` the coordinates range over all integers, so each
    nonzero k_j appears twice (sign); the returned array has one element per
    integer tuple.
    """
    sums = np.zeros(1, dtype=dtype)
    rest = [w * lower for w in weights]
    for j, w in enumerate(weights):
        tail = sum(rest[j + 1:])
        room = lmax - tail
        if room < w * lower:
            return np.zeros(0, dtype=dtype)
        if isinstance(w, int):
            kmax = math.isqrt(int(room) // w)
        else:
            kmax = int(math.sqrt(room / w))
            while w * (kmax + 1) ** 2 <= room:
                kmax += 1
        if lower == 0:
            ks = np.arange(-kmax, kmax + 1)
        else:
            ks = np.arange(1, kmax + 1)
        if len(sums) * len(ks) > 4 * DEFAULT_BUDGET.max_candidates:
            raise BudgetError("lattice enumeration exceeds candidate budget")
        sq = (ks.astype(dtype) ** 2) * w
        sums = (sums[:, None] + sq[None, :]).ravel()
        sums = sums[sums + tail <= lmax]
        if len(sums) > DEFAULT_BUDGET.max_candidates:
            raise BudgetError("lattice enumeration exceeds candidate budget")
    return sums


def _rational_weights(coeffs: Sequence[Fraction]) -> tuple[list[int], Fraction]:
    """Scale positive rationals to integers: coeffs = weights * base."""
    m = lcm(*(c.denominator for c in coeffs))
    ints = [int(c * m) for c in coeffs]
    g = 0
    for v in ints:
        g = math.gcd(g, v)
    return [v // g for v in ints], Fraction(g, m)


def _label_dtype(weights: Sequence[int], lmax: float):
    return np.int64 if max(weights) * max(lmax, 1.0) < 2**60 else object


# ---------------------------------------------------------------------------
# Weyl law


def weyl_prediction(domain: DomainSpec, k) -> float:
    """Leading Weyl term ``4 pi^2 k^(2/n) / (omega_n V)^(2/n)``."""
    if domain.problem is not Problem.DIRICHLET or not domain.is_euclidean:
        raise ParameterError(f"Weyl prediction needs a Euclidean Dirichlet domain, got {domain.kind.value}")
    return _weyl(domain, k)


def _weyl(domain: DomainSpec, k) -> float:
    n = domain.dim
    return 4.0 * math.pi**2 * float(k) ** (2.0 / n) / (unit_ball_volume(n) * domain.volume()) ** (2.0 / n)


# ---------------------------------------------------------------------------
# generators


def interval_spectrum(length, K: int) -> Spectrum:
    """Dirichlet spectrum of (0, L): ``(k pi / L)**2``."""
    dom = DomainSpec.interval(length)
    K = _check_count(K, False)
    L = dom.params[0]
    ks = np.arange(1, K + 1, dtype=np.int64)
    if isinstance(L, Fraction):
        return _from_labels(dom, PiRational(1 / L**2, 2), ks**2, K)
    vals = (ks.astype(float) * math.pi / L) ** 2
    return _from_floats(dom, vals, np.ones(K, dtype=np.int64), K)


def box_spectrum(sides: Sequence, K: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Spectrum:
    """Dirichlet spectrum of the box prod (0, a_j): ``pi^2 sum k_j^2 / a_j^2``."""
    dom = DomainSpec.box(sides)
    K = _check_count(K, False)
    start = budget.safety_factor * _weyl(dom, K)
    if all(isinstance(a, Fraction) for a in dom.params):
        weights, base = _rational_weights([1 / a**2 for a in dom.params])
        unit = PiRational(base, 2)
        u = float(unit)

        def below(cut):
            lmax = int(cut / u)
            return _quadratic_sum(weights, lmax, 1, _label_dtype(weights, lmax))

        labels, _ = _certify(below, start, K, budget)
        return _from_labels(dom, unit, labels, K)
    inv = [1.0 / float(a) ** 2 for a in dom.params]

    def below_f(cut):
        return _quadratic_sum(inv, cut / math.pi**2, 1, float) * math.pi**2

    vals, _ = _certify(below_f, start, K, budget)
    return _from_floats(dom, vals, np.ones(len(vals), dtype=np.int64), K)


def _triangle_labels(lmax: int, form: str) -> np.ndarray:
    mmax = math.isqrt(max(lmax, 0)) + 1
    if mmax * mmax > 4 * DEFAULT_BUDGET.max_candidates:
        raise BudgetError("lattice enumeration exceeds candidate budget")
    m = np.arange(1, mmax + 1, dtype=np.int64)
    M, N = np.meshgrid(m, m, indexing="ij")
    if form == "eq":
        lab = M * M + M * N + N * N
        keep = lab <= lmax
    else:
        lab = M * M + N * N
        keep = (lab <= lmax) & (M > N)
    return lab[keep]


def equilateral_triangle_spectrum(diameter, K: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Spectrum:
    """Dirichlet spectrum of the equilateral triangle with side (= diameter) D.

    Eigenvalues ``16 pi^2 (m^2 + m n + n^2) / (9 D^2)`` over m, n >= 1.
    """
    dom = DomainSpec.equilateral_triangle(diameter)
    K = _check_count(K, False)
    D = dom.params[0]
    start = budget.safety_factor * _weyl(dom, K)
    if isinstance(D, Fraction):
        unit = PiRational(Fraction(16, 9) / D**2, 2)
        labels, _ = _certify(lambda c: _triangle_labels(int(c / float(unit)), "eq"), start, K, budget)
        return _from_labels(dom, unit, labels, K)
    u = 16.0 * math.pi**2 / (9.0 * D * D)
    vals, _ = _certify(lambda c: _triangle_labels(int(c / u), "eq").astype(float) * u, start, K, budget)
    return _from_floats(dom, vals, np.ones(len(vals), dtype=np.int64), K)


def right_isosceles_triangle_spectrum(leg, K: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Spectrum:
    """Dirichlet spectrum of the right isosceles triangle with legs d.

    Antisymmetric square modes: ``pi^2 (m^2 + n^2) / d^2`` over m > n >= 1.
    """
    dom = DomainSpec.right_isosceles_triangle(leg)
    K = _check_count(K, False)
    d = dom.params[0]
    start = budget.safety_factor * _weyl(dom, K)
    if isinstance(d, Fraction):
        unit = PiRational(1 / d**2, 2)
        labels, _ = _certify(lambda c: _triangle_labels(int(c / float(unit)), "ri"), start, K, budget)
        return _from_labels(dom, unit, labels, K)
    u = math.pi**2 / (d * d)
    vals, _ = _certify(lambda c: _triangle_labels(int(c / u), "ri").astype(float) * u, start, K, budget)
    return _from_floats(dom, vals, np.ones(len(vals), dtype=np.int64), K)


def _ball_harmonic_mult(n: int, ell: int) -> int:
    if n == 2:
        return 1 if ell == 0 else 2
    return 2 * ell + 1


def ball_spectrum(n: int, radius, K: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Spectrum:
    """Dirichlet spectrum of the n-ball (n = 2, 3): ``(j_{l+n/2-1,m} / R)**2``.

    Values carry the accuracy of the Bessel zeros (about 1e-14 relative).
    """
    dom = DomainSpec.ball(n, radius)
    K = _check_count(K, False)
    R = float(dom.params[0])
    start = budget.safety_factor * _weyl(dom, K)

    def below(cut):
        xmax = R * math.sqrt(cut)
        vals, mults = [], []
        ell = 0
        # j_{p,1} > p, so orders p >= xmax have no zero below xmax
        while ell + n / 2.0 - 1.0 < xmax:
            m = _ball_harmonic_mult(n, ell)
            for z in specfun.bessel_zeros_below(ell + n / 2.0 - 1.0, xmax):
                vals.append((z / R) ** 2)
                mults.append(m)
            ell += 1
        return vals, mults

    (vals, mults), _ = _certify(below, start, K, budget, count=lambda f: sum(f[1]))
    return _from_floats(dom, np.array(vals), np.array(mults, dtype=np.int64), K)


def hemisphere_spectrum(K: int) -> Spectrum:
    """Dirichlet spectrum of the upper unit hemisphere of S^2.

    Only harmonics odd under the equatorial reflection vanish on the
    boundary: degree l contributes l(l+1) with multiplicity l.
    """
    dom = DomainSpec.hemisphere()
    K = _check_count(K, False)
    labels, total, ell = [], 0, 0
    while total < K:
        ell += 1
        labels.extend([ell * (ell + 1)] * ell)
        total += ell
    return _from_labels(dom, PiRational(1, 0), np.array(labels, dtype=np.int64), K)


def sphere_multiplicity(n: int, ell: int) -> int:
    """Dimension of degree-l spherical harmonics on S^n."""
    a = math.comb(n + ell, ell)
    b = math.comb(n + ell - 2, ell - 2) if ell >= 2 else 0
    return a - b


def sphere_spectrum(n: int, K: int) -> Spectrum:
    """Closed spectrum of the unit sphere S^n: l(l+n-1), l >= 0."""
    dom = DomainSpec.sphere(n)
    K = _check_count(K, True)
    labels, ell = [], 0
    while len(labels) < K + 1:
        labels.extend([ell * (ell + n - 1)] * sphere_multiplicity(n, ell))
        ell += 1
    return _from_labels(dom, PiRational(1, 0), np.array(labels, dtype=np.int64), K + 1)


def flat_torus_spectrum(sides: Sequence, K: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Spectrum:
    """Closed spectrum of R^n / prod(L_j Z): ``4 pi^2 sum (k_j / L_j)^2``, k in Z^n."""
    dom = DomainSpec.flat_torus(sides)
    K = _check_count(K, True)
    start = budget.safety_factor * _weyl(dom, max(K, 1)) + 1e-300
    if all(isinstance(a, Fraction) for a in dom.params):
        weights, base = _rational_weights([1 / a**2 for a in dom.params])
        unit = PiRational(4 * base, 2)
        u = float(unit)

        def below(cut):
            lmax = int(cut / u)
            return _quadratic_sum(weights, lmax, 0, _label_dtype(weights, lmax))

        labels, _ = _certify(below, start, K + 1, budget)
        return _from_labels(dom, unit, labels, K + 1)
    inv = [1.0 / float(a) ** 2 for a in dom.params]
    c = 4.0 * math.pi**2

    def below_f(cut):
        return _quadratic_sum(inv, cut / c, 0, float) * c

    vals, _ = _certify(below_f, start, K + 1, budget)
    return _from_floats(dom, vals, np.ones(len(vals), dtype=np.int64), K + 1)


def clifford_torus_spectrum(K: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Spectrum:
    """Closed spectrum of S^1(1/sqrt2) x S^1(1/sqrt2): 2(p^2 + q^2), (p, q) in Z^2."""
    dom = DomainSpec.clifford_torus()
    K = _check_count(K, True)
    start = budget.safety_factor * _weyl(dom, max(K, 1))
    labels, _ = _certify(lambda c: _quadratic_sum([1, 1], int(c / 2), 0, np.int64), start, K + 1, budget)
    return _from_labels(dom, PiRational(2, 0), labels, K + 1)


def cpn_multiplicity(n: int, k: int) -> int:
    num = (n + 2 * k) * math.factorial(k + n - 1) ** 2
    den = math.factorial(n) * math.factorial(n - 1) * math.factorial(k) ** 2
    q, r = divmod(num, den)
    assert r == 0
    return q


def cpn_spectrum(n: int, K: int) -> Spectrum:
    """Closed spectrum of CP^n(4): 4k(k+n), k >= 0."""
    dom = DomainSpec.cpn(n)
    K = _check_count(K, True)
    labels, k = [], 0
    while len(labels) < K + 1:
        labels.extend([k * (k + n)] * cpn_multiplicity(n, k))
        k += 1
    return _from_labels(dom, PiRational(4, 0), np.array(labels, dtype=np.int64), K + 1)


def spectrum_for(domain: DomainSpec, count: int, budget: EnumerationBudget = DEFAULT_BUDGET) -> Spectrum:
    """Generate a spectrum certifying ``count`` eigenvalues with multiplicity.

    For closed problems ``count`` includes ``lambda_bar_0``.
    """
    k, p = domain.kind, domain.params
    closed = domain.problem is Problem.CLOSED
    if closed and count < 1:
        raise ParameterError("closed spectra need count >= 1")
    K = count - 1 if closed else count
    if k is Kind.INTERVAL:
        return interval_spectrum(p[0], K)
    if k is Kind.BOX:
        return box_spectrum(p, K, budget)
    if k is Kind.EQUILATERAL_TRIANGLE:
        return equilateral_triangle_spectrum(p[0], K, budget)
    if k is Kind.RIGHT_ISOSCELES_TRIANGLE:
        return right_isosceles_triangle_spectrum(p[0], K, budget)
    if k is Kind.BALL:
        return ball_spectrum(domain.dim, p[0], K, budget)
    if k is Kind.HEMISPHERE:
        return hemisphere_spectrum(K)
    if k is Kind.SPHERE:
        return sphere_spectrum(domain.dim, K)
    if k is Kind.FLAT_TORUS:
        return flat_torus_spectrum(p, K, budget)
    if k is Kind.CLIFFORD_TORUS:
        return clifford_torus_spectrum(K, budget)
    if k is Kind.COMPLEX_PROJECTIVE:
        return cpn_spectrum(domain.complex_dim, K)
    raise ParameterError(f"unsupported kind {k}")
