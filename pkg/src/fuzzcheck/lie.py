"""Finite-dimensional Lie brackets via structure constants, plus the fuzzy
subalgebra / ideal predicates over finite sample sets.

All vectors and scalars are exact rationals: the membership classifiers
decide sign/zero conditions on coordinates, which float sampling would
misclassify on measure-zero sets such as an axis.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .sets import Verdict, as_grade, format_grade


def _vec(values) -> tuple:
    return tuple(Fraction(v) for v in values)


@dataclass(frozen=True)
class StructureConstants:
    """Coefficients c[i][j][k] with [e_i, e_j] = sum_k c[i][j][k] e_k."""

    dim: int
    c: tuple  # c[i][j][k], rank-3, Fraction entries

    def __post_init__(self):
        c = tuple(
            tuple(tuple(Fraction(v) for v in row) for row in plane) for plane in self.c
        )
        n = self.dim
        if len(c) != n or any(len(p) != n or any(len(r) != n for r in p) for p in c):
            raise ValueError("structure constants must be dim^3")
        object.__setattr__(self, "c", c)

    @classmethod
    def from_entries(cls, dim: int, entries: dict) -> "StructureConstants":
        """entries maps (i, j, k) zero-based index triples to rationals;
        unlisted entries are zero.  No antisymmetry is inferred."""
        c = [[[Fraction(0)] * dim for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), v in entries.items():
            for idx in (i, j, k):
                if not 0 <= idx < dim:
                    raise ValueError(f"index {idx} out of range for dim {dim}")
            c[i][j][k] = Fraction(v)
        return cls(dim, tuple(tuple(tuple(r) for r in p) for p in c))

    def basis(self, i: int) -> tuple:
        return tuple(Fraction(1 if k == i else 0) for k in range(self.dim))


def cross_product_constants() -> StructureConstants:
    """The bracket [x, y] = x cross y on rational 3-space."""
    return StructureConstants.from_entries(
        3,
        {
            (0, 1, 2): 1, (1, 0, 2): -1,
            (1, 2, 0): 1, (2, 1, 0): -1,
            (2, 0, 1): 1, (0, 2, 1): -1,
        },
    )


def bracket(sc: StructureConstants, x, y) -> tuple:
    """Bilinear expansion through the structure constants, exact."""
    x, y = _vec(x), _vec(y)
    if len(x) != sc.dim or len(y) != sc.dim:
        raise ValueError("vector dimension mismatch")
    out = [Fraction(0)] * sc.dim
    for i, xi in enumerate(x):
        if xi == 0:
            continue
        for j, yj in enumerate(y):
            if yj == 0:
                continue
            row = sc.c[i][j]
            for k in range(sc.dim):
                if row[k]:
                    out[k] += xi * yj * row[k]
    return tuple(out)


def vec_add(x, y) -> tuple:
    return tuple(a + b for a, b in zip(_vec(x), _vec(y)))


def vec_scale(alpha, x) -> tuple:
    alpha = Fraction(alpha)
    return tuple(alpha * a for a in _vec(x))


def validate_lie(sc: StructureConstants) -> Verdict:
    """Antisymmetry of the constants and the Jacobi identity on all basis
    triples; bilinearity is structural in this representation."""
    n = sc.dim
    for i in range(n):
        for j in range(n):
            for k in range(n):
                if sc.c[i][j][k] != -sc.c[j][i][k]:
                    return Verdict.failed(
                        f"antisymmetry fails at c[{i}][{j}][{k}]", witness=(i, j, k)
                    )
    for i in range(n):
        for j in range(n):
            for k in range(n):
                ei, ej, ek = sc.basis(i), sc.basis(j), sc.basis(k)
                total = vec_add(
                    vec_add(
                        bracket(sc, ei, bracket(sc, ej, ek)),
                        bracket(sc, ej, bracket(sc, ek, ei)),
                    ),
                    bracket(sc, ek, bracket(sc, ei, ej)),
                )
                if any(v != 0 for v in total):
                    return Verdict.failed(
                        f"Jacobi identity fails on basis triple ({i},{j},{k})",
                        witness=(i, j, k),
                    )
    return Verdict.passed()


# Condition operators over a single coordinate of a rational vector.
_OPS = {
    "eq0": lambda v: v == 0,
    "ne0": lambda v: v != 0,
    "gt0": lambda v: v > 0,
    "lt0": lambda v: v < 0,
}


@dataclass(frozen=True)
class Condition:
    coord: int  # zero-based
    op: str

    def __post_init__(self):
        if self.op not in _OPS:
            raise ValueError(f"unknown condition operator {self.op!r}")

    def holds(self, vector) -> bool:
        return _OPS[self.op](vector[self.coord])


@dataclass(frozen=True)
class ClassifierCase:
    conditions: tuple  # of Condition, conjunction
    grade: Fraction

    def __post_init__(self):
        object.__setattr__(self, "conditions", tuple(self.conditions))
        object.__setattr__(self, "grade", as_grade(self.grade))

    def matches(self, vector) -> bool:
        return all(c.holds(vector) for c in self.conditions)


@dataclass(frozen=True)
class MembershipClassifier:
    """First-match list of (conjunctive condition, grade) cases plus default."""

    dim: int
    cases: tuple  # of ClassifierCase
    default: Fraction

    def __post_init__(self):
        object.__setattr__(self, "cases", tuple(self.cases))
        object.__setattr__(self, "default", as_grade(self.default))
        for case in self.cases:
            for cond in case.conditions:
                if not 0 <= cond.coord < self.dim:
                    raise ValueError(f"coordinate {cond.coord} out of range")

    def grade(self, vector) -> Fraction:
        v = _vec(vector)
        if len(v) != self.dim:
            raise ValueError("vector dimension mismatch")
        for case in self.cases:
            if case.matches(v):
                return case.grade
        return self.default


@dataclass(frozen=True)
class SampleSet:
    """Finite witness domain for the universally quantified conditions."""

    vectors: tuple  # of rational vectors
    scalars: tuple  # of rationals

    def __post_init__(self):
        vectors = tuple(_vec(v) for v in self.vectors)
        scalars = tuple(Fraction(s) for s in self.scalars)
        if not vectors:
            raise ValueError("sample set needs at least one vector")
        dim = len(vectors[0])
        if any(len(v) != dim for v in vectors):
            raise ValueError("sample vectors of mixed dimension")
        if tuple(Fraction(0) for _ in range(dim)) not in vectors:
            raise ValueError("sample set must contain the zero vector")
        object.__setattr__(self, "vectors", vectors)
        object.__setattr__(self, "scalars", scalars)


def _check_conditions(mu, sc, samples, bracket_bound) -> Verdict:
    """Shared scan: additivity, scalar stability, then the bracket condition
    with the supplied lower bound (min for subalgebras, max for ideals).

    Scans are in sample order so the reported witness is the first one.
    A pass means "no violation on this sample set", not a universal proof.
    """
    if len(samples.vectors[0]) != sc.dim:
        raise ValueError("sample dimension differs from the algebra's")
    for x in samples.vectors:
        for y in samples.vectors:
            gx, gy = mu.grade(x), mu.grade(y)
            gsum = mu.grade(vec_add(x, y))
            if gsum < min(gx, gy):
                return Verdict.failed(
                    f"mu(x+y)={format_grade(gsum)} < min grade "
                    f"{format_grade(min(gx, gy))} at x={x}, y={y}",
                    witness=("sum", x, y),
                )
    for alpha in samples.scalars:
        for x in samples.vectors:
            gx = mu.grade(x)
            gs = mu.grade(vec_scale(alpha, x))
            if gs < gx:
                return Verdict.failed(
                    f"mu(alpha*x)={format_grade(gs)} < mu(x)={format_grade(gx)} "
                    f"at alpha={alpha}, x={x}",
                    witness=("scale", alpha, x),
                )
    for x in samples.vectors:
        for y in samples.vectors:
            gx, gy = mu.grade(x), mu.grade(y)
            bound = bracket_bound(gx, gy)
            gb = mu.grade(bracket(sc, x, y))
            if gb < bound:
                return Verdict.failed(
                    f"mu([x,y])={format_grade(gb)} < {format_grade(bound)} "
                    f"at x={x}, y={y}",
                    witness=("bracket", x, y, gb, bound),
                )
    return Verdict.passed()


def is_fuzzy_lie_subalgebra(mu: MembershipClassifier, sc: StructureConstants,
                            samples: SampleSet) -> Verdict:
    """Bracket grades bounded below by the min of the argument grades."""
    return _check_conditions(mu, sc, samples, min)


def is_fuzzy_lie_ideal(mu: MembershipClassifier, sc: StructureConstants,
                       samples: SampleSet) -> Verdict:
    """Bracket grades bounded below by the max of the argument grades."""
    return _check_conditions(mu, sc, samples, max)


def z_axis_classifier() -> MembershipClassifier:
    """Grade 1 at the origin, 1/4 on the rest of the z-axis, 0 elsewhere."""
    return MembershipClassifier(
        3,
        (
            ClassifierCase(
                (Condition(0, "eq0"), Condition(1, "eq0"), Condition(2, "eq0")),
                Fraction(1),
            ),
            ClassifierCase(
                (Condition(0, "eq0"), Condition(1, "eq0"), Condition(2, "ne0")),
                Fraction(1, 4),
            ),
        ),
        Fraction(0),
    )


def cross_product_fixture():
    """Cross-product bracket, the z-axis classifier, and the default sample
    set: the two refuting vectors and their bracket first, then the integer
    grid [-2,2]^3; scalars {-2,-1,0,1/2,1,2}.

    The refuting vectors come first so the first reported ideal witness is
    the canonical one.
    """
    sc = cross_product_constants()
    mu = z_axis_classifier()
    head = [(0, 0, 1), (1, 1, 1), (-1, 1, 0)]
    grid = [v for v in itertools.product(range(-2, 3), repeat=3) if v not in head]
    samples = SampleSet(
        tuple(head + grid),
        (Fraction(-2), Fraction(-1), Fraction(0), Fraction(1, 2), Fraction(1), Fraction(2)),
    )
    return sc, mu, samples
