"""Exact Skorohod distance between step functions.

The distance between x and y under a value pseudometric d is the infimum over
strictly increasing continuous bijections lam of [0, 1] of

    max( sup_t |lam(t) - t| ,  sup_t d(x(lam(t)), y(t)) ).

For step functions this is computed exactly.  Composing x with lam only moves
x's interior jump times: writing a_1 < ... < a_m for x's jumps and
u_i = lam^{-1}(a_i), the composed function has jump times u and the same piece
values, and the piecewise-linear lam through the knots (u_i, a_i) attains time
deviation max_i |u_i - a_i|.  A candidate alignment is therefore an ordered
placement of the u_i against y's fixed jump times b_1 < ... < b_p.

The infimum need not be attained, so ``feasible`` decides the *closed*
relaxation of "distance <= eps": placements may tie (u_i = u_{i+1}) and touch
the endpoints, and a piece collapsed to a single point still has to match the
y-piece it would dwell against in nearby strict time changes -- at a y-jump it
may match either neighbouring piece, subject to the ordering of the collapsed
run.  Closed feasibility at eps coincides with strict feasibility at every
eps' > eps, so the decided predicate is exactly "infimum <= eps".

Feasibility is monotone in eps and can change truth value only where a value
constraint or a window/order/endpoint constraint activates; all such
thresholds lie in the finite candidate set of ``candidate_thresholds``, which
is why ``skorohod_distance`` returns the smallest feasible candidate rather
than bisecting.  Plain bisection is kept (``bisect_distance``) as a
cross-check, and ``oracle_distance`` recomputes everything by brute force over
weak orderings, independent of the dynamic program.

Certificates witness the value only up to ``CERT_TOL`` (the infimum may be
unattained); they are concrete time changes whose recomputed time and value
suprema are reported alongside the distance.
"""

from __future__ import annotations

import json
from bisect import bisect_right
from dataclasses import dataclass
from itertools import combinations_with_replacement

from .cadlag import StepFunction, compose_time_change, require_same_space

FEAS_TOL = 1e-12
CERT_TOL = 1e-9


class CertificateError(ValueError):
    """Malformed time-change certificate (bad endpoints or non-monotone knots)."""


class OracleTooLarge(ValueError):
    """Instance exceeds the brute-force oracle's size bound."""


def _interp(xs, ys, x):
    if not xs[0] <= x <= xs[-1]:
        raise ValueError(f"{x} outside [{xs[0]}, {xs[-1]}]")
    k = bisect_right(xs, x) - 1
    if k == len(xs) - 1:
        return ys[-1]
    if xs[k] == x:
        return ys[k]
    t0, t1 = xs[k], xs[k + 1]
    return ys[k] + (ys[k + 1] - ys[k]) * ((x - t0) / (t1 - t0))


@dataclass(frozen=True)
class TimeChange:
    """Piecewise-linear strictly increasing bijection of [0, 1].

    Stored as knots (t, lam(t)) running from (0, 0) to (1, 1), strictly
    increasing in both coordinates.  Since lam(t) - t is linear between
    knots, the warp deviation sup |lam(t) - t| is attained at a knot.
    """

    knots: tuple[tuple[float, float], ...]

    def __post_init__(self):
        try:
            ks = tuple((float(t), float(lt)) for t, lt in self.knots)
        except (TypeError, ValueError) as exc:
            raise CertificateError(f"bad knots: {exc}") from exc
        object.__setattr__(self, "knots", ks)
        if len(ks) < 2 or ks[0] != (0.0, 0.0) or ks[-1] != (1.0, 1.0):
            raise CertificateError("knots must run from (0,0) to (1,1)")
        for (t0, l0), (t1, l1) in zip(ks, ks[1:]):
            if not (t1 > t0 and l1 > l0):
                raise CertificateError(
                    "knots must be strictly increasing in both coordinates"
                )
        object.__setattr__(self, "_ts", tuple(t for t, _ in ks))
        object.__setattr__(self, "_ls", tuple(lt for _, lt in ks))

    @classmethod
    def identity(cls) -> "TimeChange":
        return cls(((0.0, 0.0), (1.0, 1.0)))

    def __call__(self, t: float) -> float:
        return _interp(self._ts, self._ls, t)

    def inverse_at(self, s: float) -> float:
        return _interp(self._ls, self._ts, s)

    def inverse(self) -> "TimeChange":
        return TimeChange(tuple((lt, t) for t, lt in self.knots))

    def compose(self, other: "TimeChange") -> "TimeChange":
        """self after other: t -> self(other(t))."""
        grid = {t for t, _ in other.knots}
        grid.update(other.inverse_at(t) for t, _ in self.knots)
        return TimeChange(tuple((t, self(other(t))) for t in sorted(grid)))

    def warp_deviation(self) -> float:
        """sup_t |lam(t) - t|, attained at a knot."""
        return max(abs(lt - t) for t, lt in self.knots)

    def to_json_obj(self) -> dict:
        return {"knots": [[t, lt] for t, lt in self.knots]}

    @classmethod
    def from_json_obj(cls, obj) -> "TimeChange":
        if not isinstance(obj, dict) or "knots" not in obj:
            raise CertificateError('expected an object with "knots"')
        knots = obj["knots"]
        if not isinstance(knots, list):
            raise CertificateError('"knots" must be an array of [t, lam_t] pairs')
        try:
            pairs = tuple((float(t), float(lt)) for t, lt in knots)
        except (TypeError, ValueError) as exc:
            raise CertificateError(f"bad knot entry: {exc}") from exc
        return cls(pairs)


def warp_deviation(lam: TimeChange) -> float:
    return lam.warp_deviation()


@dataclass(frozen=True)
class DistanceResult:
    """Distance value with a witnessing time change.

    ``time_sup`` and ``value_sup`` are recomputed from the certificate; the
    certificate witnesses the infimum only up to ``CERT_TOL``, so
    ``max(time_sup, value_sup) <= value + CERT_TOL``.
    """

    value: float
    certificate: TimeChange
    time_sup: float
    value_sup: float

    def to_json_obj(self) -> dict:
        return {
            "distance": self.value,
            "time_sup": self.time_sup,
            "value_sup": self.value_sup,
            "certificate": self.certificate.to_json_obj(),
        }


def uniform_distance(x: StepFunction, y: StepFunction, d) -> float:
    """sup_t d(x(t), y(t)), i.e. the identity-time-change bound.

    Exact over the merged jump partition; always an upper bound for the
    Skorohod distance.
    """
    require_same_space(x.values[0], y.values[0])
    cuts = sorted(set(x.times) | set(y.times) | {1.0})
    return max(d(x(t), y(t)) for t in cuts)


# ---------------------------------------------------------------------------
# Feasibility dynamic program
# ---------------------------------------------------------------------------
#
# States (i, j) mean "x-piece i currently dwells against y-piece j"; the DP
# stores the earliest time at which the state can be entered.  Transitions:
# place the next warped x-jump inside its window (advance i), advance y past
# its next jump at that fixed time (advance j), or both simultaneously when
# the window admits the y-jump time (the diagonal, which is what lets a jump
# of x land exactly on a jump of y without matching the corner pieces).
# Every state entered carries the value constraint of its piece pair --
# including zero-width dwells, which is exactly the closed-relaxation rule.


class _AlignmentDP:
    """Earliest-feasible-time table with back-pointers for one (x, y, eps)."""

    __slots__ = ("a", "b", "eps", "time", "move", "feasible")

    def __init__(self, a, b, dmat, eps, tol):
        m, p = len(a), len(b)
        limit = eps + tol
        ok = [[dmat[i][j] <= limit for j in range(p + 1)] for i in range(m + 1)]
        time = [[None] * (p + 1) for _ in range(m + 1)]
        move = [[None] * (p + 1) for _ in range(m + 1)]
        if ok[0][0]:
            time[0][0] = 0.0
            for i in range(m + 1):
                for j in range(p + 1):
                    if (i == 0 and j == 0) or not ok[i][j]:
                        continue
                    # earliest entry time; diagonal preferred on ties so that
                    # aligned jumps give clean certificates (x vs x yields the
                    # identity)
                    best = None
                    bestmove = None
                    if i >= 1 and j >= 1 and time[i - 1][j - 1] is not None:
                        aa, bb = a[i - 1], b[j - 1]
                        if time[i - 1][j - 1] <= bb + tol and abs(bb - aa) <= limit:
                            best, bestmove = bb, "xy"
                    if j >= 1 and time[i][j - 1] is not None:
                        bb = b[j - 1]
                        if time[i][j - 1] <= bb + tol and (best is None or bb < best):
                            best, bestmove = bb, "y"
                    if i >= 1 and time[i - 1][j] is not None:
                        aa = a[i - 1]
                        if time[i - 1][j] <= min(aa + eps, 1.0) + tol:
                            u = min(max(time[i - 1][j], aa - eps, 0.0), 1.0)
                            if best is None or u < best:
                                best, bestmove = u, "x"
                    time[i][j] = best
                    move[i][j] = bestmove
        self.a, self.b, self.eps = a, b, eps
        self.time, self.move = time, move
        self.feasible = time[m][p] is not None

    def events(self):
        """Path events in forward order: ("x"|"y"|"xy", time, warped x-jump)."""
        a, b, eps = self.a, self.b, self.eps
        out = []
        i, j = len(a), len(b)
        while i or j:
            mv = self.move[i][j]
            if mv == "x":
                u = min(max(self.time[i - 1][j], a[i - 1] - eps, 0.0), 1.0)
                out.append(["x", u, a[i - 1]])
                i -= 1
            elif mv == "y":
                out.append(["y", b[j - 1], None])
                j -= 1
            else:
                out.append(["xy", b[j - 1], a[i - 1]])
                i -= 1
                j -= 1
        out.reverse()
        # Comparison tolerance lets a placement overshoot the next pinned
        # y-jump by roundoff; snap such times down onto the pin so the event
        # sequence is exactly nondecreasing (pins themselves never move).
        for k in range(len(out) - 2, -1, -1):
            if out[k][1] > out[k + 1][1]:
                out[k][1] = out[k + 1][1]
        return out


def _strictify(events, cert_tol=CERT_TOL, merge_tol=1e-11):
    """Make event times strictly increasing inside (0, 1).

    Times within ``merge_tol`` of each other (comparison-tolerance drift of
    window bounds around a pinned y-jump) are first merged onto a canonical
    time -- the pin's when present.  Runs of equal times are then spread by
    less than half the smallest gap (and less than cert_tol): movable
    placements left of a pinned y-jump shift left, the ones after it shift
    right, ties at the endpoints move inward.  This realises the dwell
    structure of the closed solution with a strict time change, so the value
    supremum is unchanged.
    """
    if not events:
        return
    idx = 0
    while idx < len(events):
        end = idx
        while end + 1 < len(events) and events[end + 1][1] - events[end][1] <= merge_tol:
            end += 1
        if end > idx:
            pins = [k for k in range(idx, end + 1) if events[k][0] != "x"]
            if len(pins) > 1:
                raise RuntimeError(
                    "internal: two y-jumps closer than the merge tolerance"
                )
            canon = events[pins[0]][1] if pins else events[idx][1]
            for k in range(idx, end + 1):
                events[k][1] = canon
        idx = end + 1
    marks = sorted({0.0, 1.0, *(e[1] for e in events)})
    min_gap = min(t1 - t0 for t0, t1 in zip(marks, marks[1:]))
    base = min(cert_tol, min_gap) / 2.0
    idx = 0
    while idx < len(events):
        end = idx
        while end + 1 < len(events) and events[end + 1][1] == events[idx][1]:
            end += 1
        size = end - idx + 1
        tstar = events[idx][1]
        h = base / (size + 1)
        pinned = [k for k in range(idx, end + 1) if events[k][0] != "x"]
        if tstar == 0.0:
            for off, k in enumerate(range(idx, end + 1), start=1):
                events[k][1] = off * h
        elif tstar == 1.0:
            for off, k in enumerate(range(idx, end + 1), start=1):
                events[k][1] = 1.0 - (size - off + 1) * h
        elif pinned:
            q = pinned[0]
            for k in range(idx, q):
                events[k][1] = tstar - (q - k) * h
            for k in range(q + 1, end + 1):
                events[k][1] = tstar + (k - q) * h
        elif size > 1:
            center = (size - 1) / 2.0
            for rel, k in enumerate(range(idx, end + 1)):
                events[k][1] = tstar + (rel - center) * h
        idx = end + 1
    prev = 0.0
    for _, t, _ in events:
        if not prev < t < 1.0:
            raise RuntimeError("internal: event times not strictly inside (0, 1)")
        prev = t


def _certificate_from_events(events) -> TimeChange:
    knots = [(0.0, 0.0)]
    for kind, t, ajump in events:
        if kind != "y":
            knots.append((t, ajump))
    knots.append((1.0, 1.0))
    return TimeChange(tuple(knots))


def _dmat(x: StepFunction, y: StepFunction, d):
    return [[d(xv, yv) for yv in y.values] for xv in x.values]


def feasible(x: StepFunction, y: StepFunction, eps: float, d, tol: float = FEAS_TOL):
    """Decide "Skorohod distance <= eps" (closed relaxation), with witness.

    Returns ``(True, lam)`` where ``lam`` is a strict time change realising
    time deviation <= eps + CERT_TOL and value supremum <= eps + tol, or
    ``(False, None)``.  Feasibility is monotone in eps, and closed feasibility
    at eps equals strict feasibility at every eps' > eps, so the predicate is
    exactly "infimum <= eps".
    """
    require_same_space(x.values[0], y.values[0])
    if eps < 0:
        raise ValueError(f"eps must be nonnegative, got {eps}")
    dp = _AlignmentDP(x.interior_jumps(), y.interior_jumps(), _dmat(x, y, d), eps, tol)
    if not dp.feasible:
        return False, None
    events = dp.events()
    _strictify(events)
    return True, _certificate_from_events(events)


def candidate_thresholds(x: StepFunction, y: StepFunction, d) -> list[float]:
    """Finite set containing every eps at which feasibility can change.

    Value constraints activate at the pairwise piece distances; window, order
    and endpoint constraints activate at |a_i - b_j|, a_i and 1 - a_i.  In
    between these points the feasibility predicate is constant, so the
    distance is the smallest feasible element of this set.
    """
    a, b = x.interior_jumps(), y.interior_jumps()
    out = {0.0}
    for xv in x.values:
        for yv in y.values:
            out.add(d(xv, yv))
    for ai in a:
        out.add(ai)
        out.add(1.0 - ai)
        for bj in b:
            out.add(abs(ai - bj))
    return sorted(out)


def skorohod_distance(x: StepFunction, y: StepFunction, d) -> DistanceResult:
    """Exact Skorohod distance with a witnessing time change.

    Binary-searches the sorted candidate thresholds with the feasibility DP
    (feasibility is monotone in eps).  The certificate's recomputed time and
    value suprema satisfy ``max(time_sup, value_sup) <= value + CERT_TOL``.
    """
    require_same_space(x.values[0], y.values[0])
    dmat = _dmat(x, y, d)
    a, b = x.interior_jumps(), y.interior_jumps()
    cands = candidate_thresholds(x, y, d)
    certs = {}

    def probe(k):
        dp = _AlignmentDP(a, b, dmat, cands[k], FEAS_TOL)
        if dp.feasible:
            certs[k] = dp
            return True
        return False

    lo, hi = 0, len(cands) - 1
    while lo < hi:
        mid = (lo + hi) // 2
        if probe(mid):
            hi = mid
        else:
            lo = mid + 1
    if lo not in certs:
        if not probe(lo):
            raise RuntimeError("internal: largest candidate threshold infeasible")
    events = certs[lo].events()
    _strictify(events)
    cert = _certificate_from_events(events)
    value = cands[lo]
    time_sup = cert.warp_deviation()
    value_sup = uniform_distance(compose_time_change(x, cert), y, d)
    if max(time_sup, value_sup) > value + CERT_TOL:
        raise RuntimeError("internal: certificate fails its own bound")
    return DistanceResult(value, cert, time_sup, value_sup)


def bisect_distance(x: StepFunction, y: StepFunction, d, tol: float = 1e-12) -> float:
    """Distance by plain bisection on feasibility; cross-check for the
    candidate-set computation."""
    a, b = x.interior_jumps(), y.interior_jumps()
    dmat = _dmat(x, y, d)

    def feas(eps):
        return _AlignmentDP(a, b, dmat, eps, FEAS_TOL).feasible

    lo = 0.0
    if feas(lo):
        return 0.0
    hi = max(candidate_thresholds(x, y, d))
    if not feas(hi):
        raise RuntimeError("internal: largest candidate threshold infeasible")
    while hi - lo > tol:
        mid = 0.5 * (lo + hi)
        if feas(mid):
            hi = mid
        else:
            lo = mid
    return hi


def check_certificate(
    x: StepFunction,
    y: StepFunction,
    d,
    claimed: float,
    cert: TimeChange,
    tol: float = CERT_TOL,
):
    """Recompute the certified bound max(warp deviation, value supremum).

    Returns ``(ok, bound)`` with ``ok`` true iff ``bound <= claimed + tol``.
    The value supremum is recomputed from scratch via composition with the
    certificate, so this audits the certificate without trusting the distance
    computation.
    """
    bound = max(
        cert.warp_deviation(), uniform_distance(compose_time_change(x, cert), y, d)
    )
    return bound <= claimed + tol, bound


# ---------------------------------------------------------------------------
# Brute-force oracle
# ---------------------------------------------------------------------------
#
# Enumerates every weak ordering of the warped x-jumps u_1 <= ... <= u_m
# against y's jump times: each u is assigned a zone (pinned at 0, inside an
# open span between consecutive y-jumps, pinned at a y-jump, or pinned at 1),
# assignments are nondecreasing, and a run of pieces collapsed onto a y-jump
# additionally chooses where it splits between the left and right neighbouring
# y-pieces.  Per ordering the minimal feasible eps is found by bisection over
# the ordering's window/order constraints plus its per-cell value constraints.
# None of this shares code with the dynamic program above.

_PIN, _OPEN = 0, 1


class OracleInstance:
    """Reusable brute-force reference for one (x, y, d) instance."""

    def __init__(self, x: StepFunction, y: StepFunction, d, tol: float = FEAS_TOL):
        require_same_space(x.values[0], y.values[0])
        a, b = x.interior_jumps(), y.interior_jumps()
        if len(a) + len(b) > 10:
            raise OracleTooLarge(
                f"{len(a)} + {len(b)} interior jumps exceeds the oracle bound of 10"
            )
        self.a, self.b = a, b
        self.tol = tol
        self.dmat = _dmat(x, y, d)
        self.zones = self._build_zones(b)
        self.assignments = self._build_assignments()
        self.assignments.sort(key=lambda asg: asg[0])

    @staticmethod
    def _build_zones(b):
        # (kind, lo, hi, left piece, right piece); open zones dwell in piece
        # "right", pins at an interior b_j separate pieces j-1 and j.
        p = len(b)
        zones = [(_PIN, 0.0, 0.0, None, 0)]
        for j in range(p + 1):
            lo = b[j - 1] if j else 0.0
            hi = b[j] if j < p else 1.0
            zones.append((_OPEN, lo, hi, j, j))
            if j < p:
                zones.append((_PIN, b[j], b[j], j, j + 1))
        zones.append((_PIN, 1.0, 1.0, p, None))
        return zones

    def _piece_costs(self, combo):
        """Value requirement of one zone assignment: the fixed part plus the
        best split choice for every run of pieces collapsed onto a y-jump."""
        a, dmat, zones = self.a, self.dmat, self.zones
        m = len(a)
        p = len(self.b)
        ev_zone = [0, *combo, len(zones) - 1]
        vfixed = 0.0
        runs = []  # [zone id, left y-piece, right y-piece, [piece indices]]
        for piece in range(m + 1):
            zl, zr = ev_zone[piece], ev_zone[piece + 1]
            if zl == zr:
                kind, _lo, _hi, left, right = zones[zl]
                if kind == _OPEN:
                    vfixed = max(vfixed, dmat[piece][right])
                elif right is None:  # collapsed at 1: only the last y-piece
                    vfixed = max(vfixed, dmat[piece][p])
                elif left is None:  # collapsed at 0: only the first y-piece
                    vfixed = max(vfixed, dmat[piece][0])
                else:  # collapsed onto an interior y-jump: side chosen per run
                    if runs and runs[-1][0] == zl and runs[-1][3][-1] == piece - 1:
                        runs[-1][3].append(piece)
                    else:
                        runs.append([zl, left, right, [piece]])
            else:
                # positive extent: meets every y-piece from just right of its
                # left boundary to just left of its right boundary
                start = zones[zl][4]
                end = zones[zr][3]
                for jj in range(start, end + 1):
                    vfixed = max(vfixed, dmat[piece][jj])
        vruns = 0.0
        for _z, left, right, pieces in runs:
            lcost = [dmat[i][left] for i in pieces]
            rcost = [dmat[i][right] for i in pieces]
            best = min(
                max(max(lcost[:s], default=0.0), max(rcost[s:], default=0.0))
                for s in range(len(pieces) + 1)
            )
            vruns = max(vruns, best)
        return max(vfixed, vruns)

    def _build_assignments(self):
        a, zones = self.a, self.zones
        m = len(a)
        out = []
        for combo in combinations_with_replacement(range(len(zones)), m):
            pin_need = 0.0
            plan = []
            for i, z in enumerate(combo):
                kind, lo, hi, _, _ = zones[z]
                if kind == _PIN:
                    pin_need = max(pin_need, abs(a[i] - lo))
                plan.append((kind, lo, hi, a[i]))
            vmin = self._piece_costs(combo)
            lower = max(vmin, pin_need)
            out.append((lower, tuple(plan)))
        return out

    def _windows_sat(self, plan, eps):
        tol = self.tol
        prev = 0.0
        for kind, lo, hi, aa in plan:
            if kind == _PIN:
                if abs(aa - lo) > eps + tol or lo < prev - tol:
                    return False
                if lo > prev:
                    prev = lo
            else:
                u = max(prev, aa - eps, lo)
                if u > min(aa + eps, hi) + tol:
                    return False
                prev = u
        return True

    def feasible_at(self, eps: float) -> bool:
        tol = self.tol
        for lower, plan in self.assignments:
            if lower > eps + tol:
                return False  # assignments are sorted by their lower bound
            if self._windows_sat(plan, eps):
                return True
        return False

    def _min_eps(self, lower, plan):
        if self._windows_sat(plan, lower):
            return lower
        lo, hi = lower, max(lower, 1.0) + 1.0
        if not self._windows_sat(plan, hi):
            return float("inf")
        for _ in range(80):
            mid = 0.5 * (lo + hi)
            if self._windows_sat(plan, mid):
                hi = mid
            else:
                lo = mid
        return hi

    def distance(self) -> float:
        best = float("inf")
        for lower, plan in self.assignments:
            if lower >= best:
                break  # sorted by lower bound: nothing better remains
            best = min(best, self._min_eps(lower, plan))
        return best


def oracle_distance(x: StepFunction, y: StepFunction, d) -> float:
    """Brute-force Skorohod distance; requires at most 10 interior jumps in
    total.  Independent of the dynamic-programming code path."""
    return OracleInstance(x, y, d).distance()


def oracle_feasible(x: StepFunction, y: StepFunction, eps: float, d) -> bool:
    """Brute-force counterpart of :func:`feasible` (no witness)."""
    return OracleInstance(x, y, d).feasible_at(eps)


def result_from_json(text: str):
    """Parse a distance result document: {"distance": v, "certificate": {...}}."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise CertificateError(f"invalid JSON: {exc}") from exc
    if not isinstance(obj, dict) or "certificate" not in obj or "distance" not in obj:
        raise CertificateError('expected {"distance": ..., "certificate": ...}')
    claimed = obj["distance"]
    if isinstance(claimed, bool) or not isinstance(claimed, (int, float)):
        raise CertificateError(f"bad distance value {claimed!r}")
    return float(claimed), TimeChange.from_json_obj(obj["certificate"])
