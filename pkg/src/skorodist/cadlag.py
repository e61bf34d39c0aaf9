"""Step functions on [0, 1]: construction, evaluation, and the split-interval view.

A step function is stored as jump times ``t_0 = 0 < t_1 < ... < t_{n-1} < 1``
together with one value per piece: piece ``k`` holds ``values[k]`` on
``[t_k, t_{k+1})``, and the final piece is closed at 1.  Right-continuity and
existence of left limits hold by construction, so evaluation, left limits and
the range closure are exact finite computations rather than limit procedures.

Values are either real vectors of a fixed dimension (float tuples) or labels
from a finite alphabet (strings); a single function never mixes the two.
Scalars are stored as 1-vectors.

The split interval consists of the symbols ``t+`` (``t`` in [0, 1]) and ``t-``
(``t`` in (0, 1]); there is no ``0-``.  A step function extends to it by
evaluating ``t+`` right-continuously and ``t-`` as the left limit, with the
convention that the left limit at 0 is the value at 0.
"""

from __future__ import annotations

import json
import math
from bisect import bisect_right
from dataclasses import dataclass
from typing import TYPE_CHECKING, Iterable

if TYPE_CHECKING:
    from .distance import TimeChange

Value = tuple[float, ...] | str


class TraceParseError(ValueError):
    """Malformed step-function document or raw value."""


class ValueSpaceMismatch(ValueError):
    """Two values (or functions) do not live in the same value space."""


def coerce_value(raw) -> Value:
    """Normalize a raw value: numbers become 1-vectors, sequences become float
    tuples, strings are labels.  Non-finite coordinates are rejected."""
    if isinstance(raw, str):
        return raw
    if isinstance(raw, bool):
        raise TraceParseError("boolean is not a valid value")
    if isinstance(raw, (int, float)):
        raw = (raw,)
    try:
        coords = tuple(float(c) for c in raw)
    except (TypeError, ValueError) as exc:
        raise TraceParseError(f"cannot interpret value {raw!r}") from exc
    if not coords:
        raise TraceParseError("empty coordinate vector")
    for c in coords:
        if not math.isfinite(c):
            raise TraceParseError(f"non-finite coordinate in {raw!r}")
    return coords


def space_of(value: Value) -> tuple:
    """Value-space descriptor: ``("vector", dim)`` or ``("label",)``."""
    if isinstance(value, str):
        return ("label",)
    return ("vector", len(value))


def require_same_space(a: Value, b: Value) -> None:
    sa, sb = space_of(a), space_of(b)
    if sa != sb:
        raise ValueSpaceMismatch(f"value spaces differ: {sa} vs {sb}")


@dataclass(frozen=True)
class SplitPoint:
    """A point ``t+`` or ``t-`` of the split interval.

    ``0-`` is not a split-interval point, so ``side == "-"`` requires
    ``t > 0``; the left limit at 0 is still reachable through
    :meth:`StepFunction.left_limit`, which applies the convention
    ``f(0-) = f(0)``.
    """

    t: float
    side: str

    def __post_init__(self):
        object.__setattr__(self, "t", float(self.t))
        if self.side not in ("+", "-"):
            raise ValueError(f"side must be '+' or '-', got {self.side!r}")
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"split point time {self.t} outside [0, 1]")
        if self.side == "-" and self.t == 0.0:
            raise ValueError("0- is not a split-interval point")


def plus(t: float) -> SplitPoint:
    return SplitPoint(t, "+")


def minus(t: float) -> SplitPoint:
    return SplitPoint(t, "-")


@dataclass(frozen=True)
class StepFunction:
    """Piecewise-constant cadlag function on [0, 1].

    Construct through :func:`make_step`, which validates the representation.
    Instances are immutable; all methods are pure.
    """

    times: tuple[float, ...]
    values: tuple[Value, ...]

    def __call__(self, t: float) -> Value:
        """Value at ``t``: right-continuous, last piece closed at 1."""
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t={t} outside [0, 1]")
        return self.values[bisect_right(self.times, t) - 1]

    def left_limit(self, t: float) -> Value:
        """Left limit at ``t``, with the convention f(0-) = f(0)."""
        if not 0.0 <= t <= 1.0:
            raise ValueError(f"t={t} outside [0, 1]")
        k = bisect_right(self.times, t) - 1
        if k >= 1 and self.times[k] == t:
            return self.values[k - 1]
        return self.values[k]

    def at_split(self, p: SplitPoint) -> Value:
        """Evaluate the continuous split-interval extension at ``t+`` / ``t-``."""
        if p.side == "+":
            return self(p.t)
        return self.left_limit(p.t)

    def range_closure(self) -> set:
        """All values attained on the split interval.

        For a step function this is just the set of piece values; it contains
        every evaluation and every left limit, and being finite it is compact
        in any topology on the value space.
        """
        return set(self.values)

    def normalize(self) -> StepFunction:
        """Merge adjacent pieces with exactly equal values.

        Idempotent, preserves evaluation everywhere, and yields the minimal
        representation of the same function.  Equality is exact (bitwise per
        coordinate); no approximate merging happens here.
        """
        ts = [self.times[0]]
        vs = [self.values[0]]
        for t, v in zip(self.times[1:], self.values[1:]):
            if v != vs[-1]:
                ts.append(t)
                vs.append(v)
        if len(ts) == len(self.times):
            return self
        return StepFunction(tuple(ts), tuple(vs))

    def interior_jumps(self) -> tuple[float, ...]:
        """Jump times in (0, 1); excludes the leading 0."""
        return self.times[1:]

    def space(self) -> tuple:
        return space_of(self.values[0])

    def to_json_obj(self) -> dict:
        vals = [v if isinstance(v, str) else list(v) for v in self.values]
        return {"times": list(self.times), "values": vals}


def make_step(times: Iterable[float], values: Iterable) -> StepFunction:
    """Validated constructor.

    Requires equal lengths, ``times[0] == 0``, strictly increasing times in
    [0, 1), and values from a single value space.  Does *not* merge equal
    adjacent values; see :meth:`StepFunction.normalize`.
    """
    ts = tuple(float(t) for t in times)
    vs = tuple(coerce_value(v) for v in values)
    if not ts:
        raise ValueError("a step function needs at least one piece")
    if len(ts) != len(vs):
        raise ValueError(f"{len(ts)} times vs {len(vs)} values")
    if ts[0] != 0.0:
        raise ValueError(f"first jump time must be 0, got {ts[0]}")
    for prev, cur in zip(ts, ts[1:]):
        if not cur > prev:
            raise ValueError(f"jump times not strictly increasing at {cur}")
    if ts[-1] >= 1.0 or not math.isfinite(ts[-1]):
        raise ValueError(f"jump times must lie in [0, 1), got {ts[-1]}")
    space = space_of(vs[0])
    for v in vs[1:]:
        if space_of(v) != space:
            raise ValueSpaceMismatch("mixed value spaces within one function")
    return StepFunction(ts, vs)


def compose_time_change(f: StepFunction, lam: "TimeChange") -> StepFunction:
    """The step function ``t -> f(lam(t))``.

    Composing with a time change moves each interior jump time ``t_k`` of
    ``f`` to ``lam^{-1}(t_k)`` and leaves the piece values untouched, in
    order.  The result is not normalized.
    """
    new_times = [0.0]
    for t in f.times[1:]:
        new_times.append(lam.inverse_at(t))
    for prev, cur in zip(new_times, new_times[1:]):
        if not cur > prev:
            raise ValueError("time change collapsed two jump times")
    return StepFunction(tuple(new_times), f.values)


def step_to_json(f: StepFunction) -> str:
    return json.dumps(f.to_json_obj(), sort_keys=True)


def step_from_json_obj(obj) -> StepFunction:
    if not isinstance(obj, dict) or "times" not in obj or "values" not in obj:
        raise TraceParseError('expected an object with "times" and "values"')
    times, values = obj["times"], obj["values"]
    if not isinstance(times, list) or not isinstance(values, list):
        raise TraceParseError('"times" and "values" must be arrays')
    for t in times:
        if isinstance(t, bool) or not isinstance(t, (int, float)):
            raise TraceParseError(f"bad time entry {t!r}")
    try:
        return make_step(times, values)
    except ValueSpaceMismatch:
        raise
    except ValueError as exc:
        raise TraceParseError(str(exc)) from exc


def step_from_json(text: str) -> StepFunction:
    """Parse the JSON form ``{"times": [...], "values": [...]}``.

    Values must be arrays (vectors) or strings (labels); NaN/Infinity tokens
    are rejected.
    """

    def _reject(token):
        raise TraceParseError(f"non-finite token {token!r} in input")

    try:
        obj = json.loads(text, parse_constant=_reject)
    except json.JSONDecodeError as exc:
        raise TraceParseError(f"invalid JSON: {exc}") from exc
    return step_from_json_obj(obj)
