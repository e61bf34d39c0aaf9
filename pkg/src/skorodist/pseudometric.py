"""Pseudometric families on a value space.

A family is a finite list of generator pseudometrics, max-closed by
construction: every nonempty subset of generator positions is an index, and
the index metric is the pointwise maximum of the chosen generators.  With
subset indices the domination axiom holds definitionally (the index ``i | j``
dominates ``max(d_i, d_j)`` with equality), and a subset ball is a finite
intersection of generator balls, so the enlarged family generates the same
topology as the generators alone.

Point separation is a property of the generators and the value space and is
checked on demand (:meth:`PseudometricFamily.separates_points`), not assumed.
For the full coordinate family on a d-dimensional vector space it holds
analytically: distinct vectors differ in some coordinate k, and the k-th
coordinate metric is positive on that pair.

Only max-closed families are ever exposed, so the distinction between the
generator balls forming a base versus merely a subbase of the topology never
arises at runtime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations

from .cadlag import Value, ValueSpaceMismatch
from .maps import map_from_config


class Pseudometric:
    """Base class; concrete kinds are frozen dataclasses implementing __call__."""

    def __call__(self, a: Value, b: Value) -> float:
        raise NotImplementedError

    def to_config(self) -> dict:
        raise NotImplementedError


def _vector_pair(a: Value, b: Value):
    if isinstance(a, str) or isinstance(b, str):
        raise ValueSpaceMismatch("vector pseudometric applied to a label value")
    if len(a) != len(b):
        raise ValueSpaceMismatch(f"dimension mismatch: {len(a)} vs {len(b)}")
    return a, b


@dataclass(frozen=True)
class Coordinate(Pseudometric):
    """|a_k - b_k| for a fixed 1-based coordinate k."""

    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ValueError("coordinate index is 1-based")

    def __call__(self, a, b):
        a, b = _vector_pair(a, b)
        if self.k > len(a):
            raise ValueSpaceMismatch(
                f"coordinate {self.k} on a {len(a)}-dimensional value"
            )
        return abs(a[self.k - 1] - b[self.k - 1])

    def to_config(self):
        return {"kind": "coordinate", "k": self.k}


@dataclass(frozen=True)
class Euclidean(Pseudometric):
    def __call__(self, a, b):
        a, b = _vector_pair(a, b)
        return math.dist(a, b)

    def to_config(self):
        return {"kind": "euclidean"}


@dataclass(frozen=True)
class Discrete(Pseudometric):
    """0/1 metric; works on vectors and labels alike."""

    def __call__(self, a, b):
        if isinstance(a, str) != isinstance(b, str):
            raise ValueSpaceMismatch("label value compared with a vector value")
        if not isinstance(a, str):
            _vector_pair(a, b)
        return 0.0 if a == b else 1.0

    def to_config(self):
        return {"kind": "discrete"}


@dataclass(frozen=True)
class Scaled(Pseudometric):
    """factor * inner.  A pseudometric only for factor >= 0; negative factors
    are accepted so that axiom checking has something to catch."""

    factor: float
    inner: Pseudometric

    def __call__(self, a, b):
        return self.factor * self.inner(a, b)

    def to_config(self):
        return {
            "kind": "scaled",
            "factor": self.factor,
            "inner": self.inner.to_config(),
        }


@dataclass(frozen=True)
class PulledBack(Pseudometric):
    """zeta(psi(a), psi(b)) for a value map psi; a pseudometric whenever zeta is."""

    value_map: object
    inner: Pseudometric

    def __call__(self, a, b):
        return self.inner(self.value_map(a), self.value_map(b))

    def to_config(self):
        to_cfg = getattr(self.value_map, "to_config", None)
        if to_cfg is None:
            raise ValueError("value map is not serializable")
        return {"kind": "pulled_back", "map": to_cfg(), "inner": self.inner.to_config()}


@dataclass(frozen=True)
class MaxOf(Pseudometric):
    parts: tuple[Pseudometric, ...]

    def __post_init__(self):
        object.__setattr__(self, "parts", tuple(self.parts))
        if not self.parts:
            raise ValueError("empty maximum")

    def __call__(self, a, b):
        return max(p(a, b) for p in self.parts)

    def to_config(self):
        return {"kind": "max_of", "parts": [p.to_config() for p in self.parts]}


def metric_from_config(obj: dict) -> Pseudometric:
    if not isinstance(obj, dict) or "kind" not in obj:
        raise ValueError(f"bad pseudometric config: {obj!r}")
    kind = obj["kind"]
    if kind == "coordinate":
        return Coordinate(int(obj["k"]))
    if kind == "euclidean":
        return Euclidean()
    if kind == "discrete":
        return Discrete()
    if kind == "scaled":
        return Scaled(float(obj["factor"]), metric_from_config(obj["inner"]))
    if kind == "pulled_back":
        return PulledBack(map_from_config(obj["map"]), metric_from_config(obj["inner"]))
    if kind == "max_of":
        return MaxOf(tuple(metric_from_config(p) for p in obj["parts"]))
    raise ValueError(f"unknown pseudometric kind {kind!r}")


@dataclass(frozen=True)
class AxiomViolation:
    kind: str  # "identity" | "negativity" | "symmetry" | "triangle"
    points: tuple
    detail: float


@dataclass
class AxiomReport:
    checked: int
    violations: list

    @property
    def ok(self) -> bool:
        return not self.violations

    def to_json_obj(self) -> dict:
        return {
            "checked": self.checked,
            "pass": self.ok,
            "violations": [
                {"kind": v.kind, "detail": v.detail} for v in self.violations
            ],
        }


def check_axioms(d, samples, tol: float = 1e-12) -> AxiomReport:
    """Check d(a, a) = 0, nonnegativity, symmetry, and the triangle inequality
    on explicit sample triples.

    Identity, nonnegativity and symmetry are exact; the triangle inequality
    allows a roundoff guard of ``tol`` (1e-12 by default, far below any
    distance scale used here).
    """
    violations = []
    for a, b, c in samples:
        for point in (a, b, c):
            v = d(point, point)
            if v != 0.0:
                violations.append(AxiomViolation("identity", (point,), v))
        for u, w in ((a, b), (a, c), (b, c)):
            duw = d(u, w)
            dwu = d(w, u)
            if duw < 0.0 or dwu < 0.0:
                violations.append(AxiomViolation("negativity", (u, w), min(duw, dwu)))
            if duw != dwu:
                violations.append(AxiomViolation("symmetry", (u, w), abs(duw - dwu)))
        excess = d(a, c) - (d(a, b) + d(b, c))
        if excess > tol:
            violations.append(AxiomViolation("triangle", (a, b, c), excess))
    return AxiomReport(len(samples), violations)


@dataclass(frozen=True)
class PseudometricFamily:
    """Finitely generated, max-closed pseudometric family.

    Indices are nonempty frozensets of 1-based generator positions; the index
    metric is the pointwise maximum over the chosen generators, so index
    monotonicity and the domination axiom hold by construction.
    """

    generators: tuple[Pseudometric, ...]

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if not self.generators:
            raise ValueError("a family needs at least one generator")

    def positions(self) -> range:
        return range(1, len(self.generators) + 1)

    def indices(self) -> list[frozenset]:
        """All nonempty generator subsets, smallest first, deterministic order."""
        pos = list(self.positions())
        out = []
        for r in range(1, len(pos) + 1):
            out.extend(frozenset(c) for c in combinations(pos, r))
        return out

    def full_index(self) -> frozenset:
        return frozenset(self.positions())

    def metric(self, index) -> Pseudometric:
        idx = frozenset(index)
        if not idx or not idx <= frozenset(self.positions()):
            raise ValueError(f"invalid family index {sorted(idx)}")
        chosen = tuple(self.generators[i - 1] for i in sorted(idx))
        if len(chosen) == 1:
            return chosen[0]
        return MaxOf(chosen)

    def evaluate(self, index, a: Value, b: Value) -> float:
        return self.metric(index)(a, b)

    def separates_points(self, a: Value, b: Value):
        """An index whose metric is positive on (a, b), or None.

        A ``None`` for ``a != b`` witnesses that the generators fail to
        separate points, i.e. the family does not define a Hausdorff topology.
        """
        for i in self.positions():
            if self.generators[i - 1](a, b) > 0.0:
                return frozenset({i})
        return None

    def to_config(self) -> dict:
        return {"generators": [g.to_config() for g in self.generators]}


def max_close(generators) -> PseudometricFamily:
    """Family whose index set is all nonempty subsets of the generators,
    each index evaluating to the maximum of its members."""
    gens = tuple(generators)
    if not gens:
        raise ValueError("max_close needs at least one generator")
    return PseudometricFamily(gens)


def family_from_config(obj: dict) -> PseudometricFamily:
    """Parse ``{"space": {...}, "generators": [...]}``; "space" is optional
    metadata and is not interpreted."""
    if not isinstance(obj, dict) or "generators" not in obj:
        raise ValueError('family config needs a "generators" array')
    gens = obj["generators"]
    if not isinstance(gens, list) or not gens:
        raise ValueError("family config needs at least one generator")
    return max_close(metric_from_config(g) for g in gens)


def coordinate_family(dim: int) -> PseudometricFamily:
    """Max-closure of the d coordinate pseudometrics on R^d."""
    if dim < 1:
        raise ValueError("dimension must be at least 1")
    return max_close(Coordinate(k) for k in range(1, dim + 1))


def euclidean_family() -> PseudometricFamily:
    return max_close([Euclidean()])
