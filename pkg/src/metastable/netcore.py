"""Sequences with declared tail structure: oscillation and metastability rates.

A sequence is a finite prefix plus a declared tail mode (constant, or
periodic repetition of the last p prefix values).  That declaration is the
exactness boundary: total oscillation and eta-oscillation are limit
quantities, and only tail-structured sequences make them finite
computations.  Everything else returns explicitly flagged upper bounds.

Values are exact rationals (scalars, or tuples under the sup metric) by
default.  A float mode exists for ingesting measured data; in that mode all
metastability comparisons use <= eps + tol.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Optional, Sequence, Union

from .directed import Sampling
from .errors import EmptyRate, NonpositiveEpsilon, UnsupportedSampling
from .rationals import format_rational, parse_rational

Scalar = Union[Fraction, float]
Value = Union[Scalar, tuple]


@dataclass(frozen=True)
class Constant:
    """Tail mode: the last prefix value repeats forever."""

    @property
    def period(self) -> int:
        return 1


@dataclass(frozen=True)
class Periodic:
    """Tail mode: the last `period` prefix values repeat verbatim."""

    period: int

    def __post_init__(self):
        if self.period < 1:
            raise ValueError("period must be >= 1")


Tail = Union[Constant, Periodic]


def distance(x: Value, y: Value) -> Scalar:
    """Metric on values: |x - y| for scalars, sup metric on tuples."""
    if isinstance(x, tuple) or isinstance(y, tuple):
        if not (isinstance(x, tuple) and isinstance(y, tuple) and len(x) == len(y)):
            raise ValueError("points have mismatched dimensions")
        return max(abs(a - b) for a, b in zip(x, y))
    return abs(x - y)


def _coerce_value(v, mode: str) -> Value:
    if isinstance(v, (list, tuple)):
        return tuple(_coerce_value(c, mode) for c in v)
    if mode == "rational":
        return parse_rational(v)
    return float(v)


@dataclass(frozen=True)
class SequenceSpec:
    """A net over ℕ given as a prefix plus a tail declaration.

    The tail applies from index T = len(prefix) - p, where p is the tail
    window length (1 for a constant tail).  `bound` is the declared C with
    all points within C/2 of some anchor, i.e. diameter <= C.
    """

    prefix: tuple
    tail: Tail = Constant()
    bound: Optional[Scalar] = None
    mode: str = "rational"
    tol: float = 1e-12

    def __post_init__(self):
        if self.mode not in ("rational", "float"):
            raise ValueError(f"unknown mode {self.mode!r}")
        prefix = tuple(_coerce_value(v, self.mode) for v in self.prefix)
        object.__setattr__(self, "prefix", prefix)
        p = self.tail.period
        if len(prefix) < p or len(prefix) < 1:
            raise ValueError("prefix must cover at least one tail window")
        dims = {len(v) if isinstance(v, tuple) else 0 for v in prefix}
        if len(dims) > 1:
            raise ValueError("mixed scalar/tuple values")
        diam = self.diameter()
        if self.bound is None:
            object.__setattr__(self, "bound", diam)
        else:
            bound = (parse_rational(self.bound) if self.mode == "rational"
                     else float(self.bound))
            object.__setattr__(self, "bound", bound)
            if diam > bound + (self.tol if self.mode == "float" else 0):
                raise ValueError(
                    f"declared bound {bound} smaller than diameter {diam}"
                )

    @property
    def period(self) -> int:
        return self.tail.period

    @property
    def tail_start(self) -> int:
        """First index T from which the periodic window repeats."""
        return len(self.prefix) - self.period

    def value(self, n: int) -> Value:
        if n < 0:
            raise IndexError("negative index")
        if n < len(self.prefix):
            return self.prefix[n]
        T, p = self.tail_start, self.period
        return self.prefix[T + (n - T) % p]

    def period_values(self) -> tuple:
        """The values repeated by the tail (the last p prefix entries)."""
        return self.prefix[self.tail_start:]

    def diameter(self) -> Scalar:
        """Max pairwise distance among all values the sequence ever takes."""
        return osc_points(self.prefix)

    def is_constant_tail(self) -> bool:
        return len(set(self.period_values())) == 1


def osc_points(points: Sequence[Value]) -> Scalar:
    """Max pairwise distance of a finite set, in O(n) per coordinate."""
    pts = list(points)
    if not pts:
        raise ValueError("empty point set")
    if isinstance(pts[0], tuple):
        return max(
            max(p[c] for p in pts) - min(p[c] for p in pts)
            for c in range(len(pts[0]))
        )
    return max(pts) - min(pts)


def osc_segment(seq, S: Iterable[int]) -> Scalar:
    """sup of pairwise distances of the sequence over a finite index set."""
    indices = list(S)
    if not indices:
        raise ValueError("osc_segment needs a nonempty index set")
    return osc_points([seq.value(i) for i in indices])


def _slack(seq) -> Scalar:
    return seq.tol if seq.mode == "float" else 0


class _CappedSeq:
    """Evaluation guard asserting the finitarity of rate checks.

    check_rate must never look past max_{i in E} max(eta_i); exceeding the
    cap is an internal error, not a data error.
    """

    def __init__(self, seq: SequenceSpec, cap: int):
        self._seq = seq
        self.cap = cap
        self.mode = seq.mode
        self.tol = seq.tol

    def value(self, n: int) -> Value:
        if n > self.cap:
            raise RuntimeError(
                f"finitarity violation: index {n} beyond cap {self.cap}"
            )
        return self._seq.value(n)


def metastable_witness(seq: SequenceSpec, eps, eta: Sampling,
                       search_bound: int) -> Optional[int]:
    """Smallest i <= search_bound whose window has oscillation <= eps.

    Absence is a value, not an error: metastability itself is infinitary
    and only this bounded search is finitary.
    """
    eps = _as_eps(seq, eps)
    if eps < 0:
        raise ValueError(f"epsilon must be >= 0, got {eps}")
    for i in range(search_bound + 1):
        if osc_segment(seq, eta.eta(i)) <= eps + _slack(seq):
            return i
    return None


def _as_eps(seq, eps) -> Scalar:
    if seq.mode == "float":
        return float(parse_rational(eps)) if isinstance(eps, str) else float(eps)
    return parse_rational(eps)


def check_rate(seq: SequenceSpec, eps, eta: Sampling, E: Iterable[int]) -> bool:
    """Does some i in E witness [eps, eta]-metastability?

    Evaluates the sequence only up to max_{i in E} max(eta_i); that
    finiteness is the point of the construction and is asserted.
    """
    E = sorted(set(E))
    if not E:
        raise EmptyRate("no sequence has an empty rate")
    eps = _as_eps(seq, eps)
    cap = max(eta.max_index(i) for i in E)
    guarded = _CappedSeq(seq, cap)
    slack = _slack(seq)
    return any(osc_segment(guarded, eta.eta(i)) <= eps + slack for i in E)


def rate_witness(seq: SequenceSpec, eps, eta: Sampling,
                 E: Iterable[int]) -> Optional[int]:
    """First witness in E, or None; same finitarity contract as check_rate."""
    E = sorted(set(E))
    if not E:
        raise EmptyRate("no sequence has an empty rate")
    eps = _as_eps(seq, eps)
    guarded = _CappedSeq(seq, max(eta.max_index(i) for i in E))
    slack = _slack(seq)
    for i in E:
        if osc_segment(guarded, eta.eta(i)) <= eps + slack:
            return i
    return None


def _sampling_callable(F) -> Callable[[int], int]:
    if isinstance(F, Sampling):
        if not F.is_from_function:
            raise UnsupportedSampling("iterating F needs a function sampling")
        return F.f
    return F


def monotone_uniform_rate(eps, F) -> frozenset:
    """The uniform rate {0, ..., F^(k)(0)} with k = ceil(1/eps).

    Valid for every monotone nondecreasing sequence in [0, 1]: at least one
    of the k chained window differences cannot exceed eps.
    """
    eps = parse_rational(eps)
    if eps <= 0:
        raise NonpositiveEpsilon(f"epsilon must be > 0, got {eps}")
    f = _sampling_callable(F)
    k = math.ceil(1 / eps)
    top = 0
    for _ in range(k):
        top = f(top)
    return frozenset(range(top + 1))


def periodicity_bound(seq: SequenceSpec, eta: Sampling) -> int:
    """Index horizon past which i -> osc over eta_i repeats.

    Requires eta's affine tail; the map is eventually periodic with the
    sequence's period once windows sit inside the periodic region.
    """
    if not (eta.is_from_function and eta.affine is not None):
        raise UnsupportedSampling(
            "exact eta-oscillation needs an affine-tail sampling; "
            "use osc_eta_upper for general samplings"
        )
    T = max(seq.tail_start, eta.affine.start)
    return T + seq.period * (eta.affine.w + 1)


def osc_eta_exact(seq: SequenceSpec, eta: Sampling) -> Scalar:
    """Exact inf over all i of the window oscillation osc over eta_i.

    Tail structure makes the infimum a minimum over [0, periodicity bound].
    """
    B = periodicity_bound(seq, eta)
    return min(osc_segment(seq, eta.eta(i)) for i in range(B + 1))


@dataclass(frozen=True)
class OscBound:
    """A budgeted oscillation estimate; only ever an upper bound."""

    value: Scalar
    upper_bound_only: bool = True


def osc_eta_upper(seq: SequenceSpec, eta: Sampling, budget: int) -> OscBound:
    """min over i <= budget of the window oscillation, flagged as an upper bound."""
    if budget < 0:
        raise ValueError("budget must be >= 0")
    best = min(osc_segment(seq, eta.eta(i)) for i in range(budget + 1))
    return OscBound(best)


def osc_total_exact(seq: SequenceSpec) -> Scalar:
    """Exact total oscillation: the diameter of the tail-period values.

    The prefix is irrelevant (the defining quantifier discards every finite
    initial segment); a constant tail gives 0.
    """
    return osc_points(seq.period_values())


def eps_cauchy_exact(seq: SequenceSpec, eps) -> bool:
    """Is the sequence eps-Cauchy?  Equivalent to osc_total_exact <= eps."""
    eps = _as_eps(seq, eps)
    return osc_total_exact(seq) <= eps + _slack(seq)


@dataclass(frozen=True)
class AuditResult:
    """Outcome of a uniform-rate audit over a family of sequences."""

    passed: bool
    counterexample: Optional[SequenceSpec] = None
    index: Optional[int] = None

    def __bool__(self) -> bool:
        return self.passed


def uniform_rate_audit(family: Iterable[SequenceSpec], eps, eta: Sampling,
                       E: Iterable[int]) -> AuditResult:
    """Check a candidate uniform rate against every member of a finite family.

    Returns AllPass (passed=True) or the first counterexample in family
    order; an empty family passes vacuously.
    """
    E = frozenset(E)
    for idx, seq in enumerate(family):
        if not check_rate(seq, eps, eta, E):
            return AuditResult(False, seq, idx)
    return AuditResult(True)


def brute_min_uniform_rate(family: Sequence[SequenceSpec], eps, eta: Sampling,
                           horizon: int) -> Optional[frozenset]:
    """Smallest prefix rate {0..m}, m <= horizon, valid for the whole family.

    Returns None when no prefix within the horizon works (infeasible).
    """
    family = list(family)
    for m in range(horizon + 1):
        E = frozenset(range(m + 1))
        if uniform_rate_audit(family, eps, eta, E):
            return E
    return None


# -- rate collections ---------------------------------------------------------


@dataclass(frozen=True)
class RateSpec:
    """A metastability rate: one finite set, or sets indexed by epsilon
    (and sampling key), all above a threshold r.

    A classical Cauchy modulus M_eps is encoded as the singleton rates
    E_{eps, eta} = {M_eps}.
    """

    r: Fraction = Fraction(0)
    single: Optional[frozenset] = None
    per_epsilon: Optional[Mapping[Fraction, frozenset]] = None
    per_epsilon_eta: Optional[Mapping[tuple, frozenset]] = None

    def __post_init__(self):
        object.__setattr__(self, "r", parse_rational(self.r))
        populated = [x for x in (self.single, self.per_epsilon,
                                 self.per_epsilon_eta) if x is not None]
        if len(populated) != 1:
            raise ValueError("exactly one rate payload must be given")
        if self.r < 0:
            raise ValueError("threshold r must be >= 0")
        if self.single is not None:
            object.__setattr__(self, "single", frozenset(self.single))
            if not self.single:
                raise EmptyRate("rate set is empty")
        if self.per_epsilon is not None:
            norm = {}
            for eps, E in self.per_epsilon.items():
                eps = parse_rational(eps)
                self._check_eps(eps)
                norm[eps] = self._check_set(E)
            object.__setattr__(self, "per_epsilon", norm)
        if self.per_epsilon_eta is not None:
            norm = {}
            for (eps, key), E in self.per_epsilon_eta.items():
                eps = parse_rational(eps)
                self._check_eps(eps)
                norm[(eps, key)] = self._check_set(E)
            object.__setattr__(self, "per_epsilon_eta", norm)

    def _check_eps(self, eps):
        if eps <= self.r:
            raise ValueError(f"epsilon key {eps} must exceed the threshold {self.r}")

    @staticmethod
    def _check_set(E) -> frozenset:
        E = frozenset(E)
        if not E:
            raise EmptyRate("rate set is empty")
        return E

    def epsilons(self) -> tuple:
        if self.per_epsilon is not None:
            return tuple(sorted(self.per_epsilon))
        if self.per_epsilon_eta is not None:
            return tuple(sorted({eps for eps, _ in self.per_epsilon_eta}))
        return ()

    def rate_for(self, eps=None, eta_key: Optional[str] = None) -> frozenset:
        if self.single is not None:
            return self.single
        if self.per_epsilon is not None:
            return self.per_epsilon[parse_rational(eps)]
        return self.per_epsilon_eta[(parse_rational(eps), eta_key)]

    @classmethod
    def from_cauchy_modulus(cls, modulus: Mapping, eta_keys: Iterable[str],
                            r=0) -> "RateSpec":
        table = {
            (parse_rational(eps), key): frozenset({M})
            for eps, M in modulus.items()
            for key in eta_keys
        }
        return cls(r=r, per_epsilon_eta=table)


# -- serialization -------------------------------------------------------------


def _value_to_json(v: Value, mode: str):
    if isinstance(v, tuple):
        return [_value_to_json(c, mode) for c in v]
    return format_rational(v) if mode == "rational" else float(v)


def sequence_to_json(seq: SequenceSpec) -> dict:
    tail = {"constant": True} if isinstance(seq.tail, Constant) \
        else {"period": seq.tail.period}
    return {
        "prefix": [_value_to_json(v, seq.mode) for v in seq.prefix],
        "tail": tail,
        "bound": _value_to_json(seq.bound, seq.mode),
        "mode": seq.mode,
    }


def sequence_from_json(data: dict) -> SequenceSpec:
    tail_spec = data.get("tail", {"constant": True})
    if tail_spec.get("constant"):
        tail: Tail = Constant()
    else:
        tail = Periodic(int(tail_spec["period"]))
    return SequenceSpec(
        prefix=tuple(data["prefix"]),
        tail=tail,
        bound=data.get("bound"),
        mode=data.get("mode", "rational"),
    )


def sequence_from_csv(text: str, *, tail: Tail = Constant(),
                      mode: str = "rational") -> SequenceSpec:
    """One value per line becomes the prefix; the tail mode is declared aside."""
    rows = [row for row in csv.reader(io.StringIO(text)) if row]
    values = [row[0].strip() for row in rows]
    return SequenceSpec(prefix=tuple(values), tail=tail, mode=mode)
