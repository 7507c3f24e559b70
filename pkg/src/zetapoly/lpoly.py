"""L-polynomials of function fields over finite fields, exactly.

The numerator L(t) = sum a_i t^i of the zeta function of a genus-g function
field over F_q is determined by the point counts N_1..N_g of the first g
constant-field extensions.  With S_r = N_r - (q^r + 1), the first half of
the coefficients satisfies the recurrence i*a_i = sum_{j<=i} S_j a_{i-j};
the same numbers arise as parapermanents of an order-i triangular table
whose factorial products are S_{i+1-j}/i, either by the last-row recurrence
or directly as a sum over compositions.  All three evaluators are kept
separate so they can arbitrate each other.  The second half of the
coefficients follows from the functional equation a_{2g-i} = q^{g-i} a_i,
and the class number is h = L(1).

Everything is exact integer and Fraction arithmetic.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence, Union

from .errors import ConsistencyError
from .parapermanent import TriangularMatrix, pper_composition_sum, pper_prefixes

COMPOSITION_CAP = 30


@dataclass(frozen=True)
class SSequence:
    """The numbers S_1..S_g for a field with q elements; g = len(s)."""

    q: int
    s: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "s", tuple(self.s))
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"q must be an integer >= 2, got {self.q!r}")
        for r, value in enumerate(self.s, start=1):
            if not isinstance(value, int) or isinstance(value, bool):
                raise ValueError(f"S_{r} must be an integer, got {value!r}")

    @property
    def g(self) -> int:
        return len(self.s)

    def weil_violations(self) -> tuple[int, ...]:
        """Indices r where |S_r| exceeds the Weil bound 2g sqrt(q)^r."""
        g = self.g
        return tuple(
            r
            for r, value in enumerate(self.s, start=1)
            if value * value > 4 * g * g * self.q**r
        )


@dataclass(frozen=True)
class TraceData:
    """Reciprocal-root pair traces t_1..t_g, each with t^2 <= 4q."""

    q: int
    traces: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "traces", tuple(self.traces))
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"q must be an integer >= 2, got {self.q!r}")
        for i, t in enumerate(self.traces, start=1):
            if not isinstance(t, int) or isinstance(t, bool):
                raise ValueError(f"trace {i} must be an integer, got {t!r}")
            if t * t > 4 * self.q:
                raise ValueError(
                    f"trace {i} violates t^2 <= 4q: t={t}, q={self.q}"
                )

    @property
    def g(self) -> int:
        return len(self.traces)


@dataclass(frozen=True)
class LPolynomial:
    """Coefficients a_0..a_2g of L(t), validated against the functional equation."""

    q: int
    g: int
    coeffs: tuple[int, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "coeffs", tuple(self.coeffs))
        if not isinstance(self.q, int) or self.q < 2:
            raise ValueError(f"q must be an integer >= 2, got {self.q!r}")
        if not isinstance(self.g, int) or self.g < 0:
            raise ValueError(f"g must be a nonnegative integer, got {self.g!r}")
        if len(self.coeffs) != 2 * self.g + 1:
            raise ValueError(
                f"need {2 * self.g + 1} coefficients for genus {self.g}, "
                f"got {len(self.coeffs)}"
            )
        for i, a in enumerate(self.coeffs):
            if not isinstance(a, int) or isinstance(a, bool):
                raise ValueError(f"a_{i} must be an integer, got {a!r}")
        if self.coeffs[0] != 1:
            raise ValueError(f"a_0 must be 1, got {self.coeffs[0]}")
        for i in range(self.g):
            expected = self.q ** (self.g - i) * self.coeffs[i]
            actual = self.coeffs[2 * self.g - i]
            if actual != expected:
                raise ValueError(
                    f"functional equation broken at i={i}: "
                    f"a_{2 * self.g - i}={actual}, q^(g-i)*a_{i}={expected}"
                )

    def evaluate(self, t: Union[int, Fraction]) -> Union[int, Fraction]:
        value: Union[int, Fraction] = 0
        for a in reversed(self.coeffs):
            value = value * t + a
        return value


def s_from_counts(q: int, counts: Sequence[int]) -> SSequence:
    """S_r = N_r - (q^r + 1) from the point counts N_1..N_g.

    Warns (does not fail) when a value lands outside the Weil bound, since
    arbitrary count vectors need not come from an actual function field.
    """
    if not isinstance(q, int) or q < 2:
        raise ValueError(f"q must be an integer >= 2, got {q!r}")
    counts = list(counts)
    if not counts:
        raise ValueError("need at least one point count")
    for r, n_r in enumerate(counts, start=1):
        if not isinstance(n_r, int) or isinstance(n_r, bool) or n_r < 0:
            raise ValueError(f"N_{r} must be a nonnegative integer, got {n_r!r}")
    s = SSequence(q, tuple(n_r - (q**r + 1) for r, n_r in enumerate(counts, start=1)))
    bad = s.weil_violations()
    if bad:
        warnings.warn(
            f"S_r outside the Weil bound at r={list(bad)}; "
            "the counts cannot all come from a genus-" + str(s.g) + " field",
            stacklevel=2,
        )
    return s


def _pair_power_sum(t: int, q: int, r: int) -> int:
    # p_r = alpha^r + conj(alpha)^r for the root pair with trace t: the
    # two-term linear recurrence p_r = t p_{r-1} - q p_{r-2}
    previous, current = 2, t
    if r == 0:
        return previous
    for _ in range(r - 1):
        previous, current = current, t * current - q * previous
    return current


def n_from_traces(data: TraceData, r: int) -> int:
    """Point count N_r of the degree-r constant-field extension."""
    if r < 1:
        raise ValueError(f"r must be >= 1, got {r}")
    return data.q**r + 1 - sum(_pair_power_sum(t, data.q, r) for t in data.traces)


def s_from_traces(data: TraceData) -> SSequence:
    """S_1..S_g from trace data: S_r = -sum_i p_r(t_i)."""
    g = data.g
    totals = [0] * (g + 1)
    for t in data.traces:
        previous, current = 2, t
        for r in range(1, g + 1):
            totals[r] += current
            previous, current = current, t * current - data.q * previous
    return SSequence(data.q, tuple(-totals[r] for r in range(1, g + 1)))


def _telescoped_fp(s: SSequence):
    values = s.s
    return lambda i, j: Fraction(values[i - j], i)


def coeffs_by_recurrence_exact(s: SSequence) -> list[Fraction]:
    """a_0..a_g as Fractions via i*a_i = sum_{j<=i} S_j a_{i-j}."""
    coeffs: list[Fraction] = [Fraction(1)]
    for i in range(1, s.g + 1):
        total = Fraction(0)
        for j in range(1, i + 1):
            total += s.s[j - 1] * coeffs[i - j]
        coeffs.append(total / i)
    return coeffs


def coeffs_by_parapermanent_exact(s: SSequence) -> list[Fraction]:
    """a_0..a_g as Fractions via the last-row parapermanent recurrence."""
    return pper_prefixes(s.g, _telescoped_fp(s), Fraction(1))


def coeffs_by_compositions_exact(s: SSequence) -> list[Fraction]:
    """a_0..a_g as Fractions via full composition sums; g <= COMPOSITION_CAP."""
    if s.g > COMPOSITION_CAP:
        raise ValueError(
            f"composition enumeration capped at g <= {COMPOSITION_CAP}, got g={s.g}"
        )
    fp = _telescoped_fp(s)
    return [pper_composition_sum(n, fp, Fraction(1)) for n in range(s.g + 1)]


def _as_integers(values: Sequence[Fraction], s: SSequence, method: str) -> list[int]:
    result = []
    for i, value in enumerate(values):
        if value.denominator != 1:
            raise ConsistencyError(
                f"a_{i} is not an integer ({value}) for q={s.q}, S={list(s.s)} "
                f"[method: {method}]"
            )
        result.append(int(value))
    return result


def coeffs_by_recurrence(s: SSequence) -> list[int]:
    """a_0..a_g via the power-sum recurrence; fails if any a_i is fractional."""
    return _as_integers(coeffs_by_recurrence_exact(s), s, "recurrence")


def coeffs_by_parapermanent(s: SSequence) -> list[int]:
    """a_0..a_g via the last-row parapermanent; fails if fractional."""
    return _as_integers(coeffs_by_parapermanent_exact(s), s, "parapermanent")


def coeffs_by_compositions(s: SSequence) -> list[int]:
    """a_0..a_g via composition sums; fails if fractional; g <= COMPOSITION_CAP."""
    return _as_integers(coeffs_by_compositions_exact(s), s, "compositions")


def literal_matrix(s: SSequence, n: int) -> TriangularMatrix:
    """The order-n triangular table whose parapermanent is a_n.

    Entries are S_{i-j+1}/S_{i-j} off the diagonal and S_1/i on it, so the
    factorial products telescope to S_{i+1-j}/i.  Requires S_1..S_{n-1}
    nonzero; use the telescoped evaluators when they are not.
    """
    if not 0 <= n <= s.g:
        raise ValueError(f"order must be in [0, {s.g}], got {n}")
    for r in range(1, n):
        if s.s[r - 1] == 0:
            raise ValueError(
                f"literal table needs S_1..S_{n - 1} nonzero, but S_{r} = 0"
            )
    rows = []
    for i in range(1, n + 1):
        row = [
            Fraction(s.s[i - j], s.s[i - j - 1]) for j in range(1, i)
        ]
        row.append(Fraction(s.s[0], i))
        rows.append(tuple(row))
    return TriangularMatrix(tuple(rows))


def complete(coeffs: Sequence[int], q: int, g: int | None = None) -> LPolynomial:
    """Extend a_0..a_g to the full L-polynomial via a_{2g-i} = q^(g-i) a_i."""
    half = list(coeffs)
    if g is None:
        g = len(half) - 1
    if len(half) != g + 1:
        raise ValueError(f"need a_0..a_{g} ({g + 1} values), got {len(half)}")
    full = half + [q ** (g - i) * half[i] for i in range(g - 1, -1, -1)]
    return LPolynomial(q, g, tuple(full))


def class_number(lpoly: LPolynomial) -> int:
    """The class number h = L(1); positive for any actual function field."""
    h = sum(lpoly.coeffs)
    if h <= 0:
        raise ConsistencyError(
            f"class number must be positive, got L(1) = {h} for "
            f"coeffs={list(lpoly.coeffs)}"
        )
    return h


def class_number_formula(data: Union[SSequence, TraceData]) -> int:
    """h = 1 + q^g + sum_{i<g} (1 + q^(g-i)) a_i + a_g, from half coefficients."""
    s = s_from_traces(data) if isinstance(data, TraceData) else data
    if s.g < 1:
        raise ValueError("need g >= 1")
    a = coeffs_by_recurrence(s)
    q, g = s.q, s.g
    return 1 + q**g + sum((1 + q ** (g - i)) * a[i] for i in range(1, g)) + a[g]


def coeffs_from_traces(data: TraceData) -> LPolynomial:
    """The full L-polynomial from trace data via S-values and the recurrence."""
    return complete(coeffs_by_recurrence(s_from_traces(data)), data.q)


def oracle_expand(data: TraceData) -> LPolynomial:
    """The L-polynomial as the expanded product of (1 - t_i x + q x^2).

    Independent of the S-value routes; used to arbitrate them.
    """
    q = data.q
    coeffs = [1]
    for t in data.traces:
        expanded = [0] * (len(coeffs) + 2)
        for i, c in enumerate(coeffs):
            expanded[i] += c
            expanded[i + 1] -= c * t
            expanded[i + 2] += c * q
        coeffs = expanded
    return LPolynomial(q, data.g, tuple(coeffs))
