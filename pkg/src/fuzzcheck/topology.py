"""Fuzzy topologies on a fuzzy set, with a finite grade lattice.

The constant-cut axiom quantifies over every t in [0,1]; restricting t to
the finite lattice {k/q} makes it decidable.  All families here are finite,
so arbitrary unions reduce to pairwise ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import CarrierMismatchError, DominationError, ResourceCapError
from .maps import ProperFunction, classify, image, preimage
from .sets import (
    FuzzySet,
    Verdict,
    complement_in,
    format_grade,
    intersection,
    is_subset,
    union,
)

DEFAULT_LATTICE_Q = 100
DEFAULT_CLOSURE_CAP = 10**6


@dataclass(frozen=True)
class GradeLattice:
    """The grades {k/q : 0 <= k <= q}; closed under min/max."""

    q: int

    def __post_init__(self):
        if self.q < 1:
            raise ValueError("lattice resolution must be a positive integer")

    def members(self) -> tuple:
        return tuple(Fraction(k, self.q) for k in range(self.q + 1))

    def contains(self, g: Fraction) -> bool:
        return 0 <= g <= 1 and (g * self.q).denominator == 1

    def contains_set(self, s: FuzzySet) -> bool:
        return all(self.contains(g) for g in s.grades)


def _canon_key(s: FuzzySet):
    return s.grades


@dataclass(frozen=True)
class FuzzyTopology:
    ambient: FuzzySet
    opens: frozenset  # of FuzzySet, each <= ambient
    lattice: GradeLattice

    def sorted_opens(self) -> list:
        """Opens in a canonical order (by grade tuple); used for determinism."""
        return sorted(self.opens, key=_canon_key)


def cut(ambient: FuzzySet, t: Fraction) -> FuzzySet:
    """The constant t intersected with the ambient set."""
    return FuzzySet(ambient.carrier, tuple(min(t, g) for g in ambient.grades))


def generate(
    ambient: FuzzySet,
    generators,
    lattice: GradeLattice,
    cap: int = DEFAULT_CLOSURE_CAP,
) -> FuzzyTopology:
    """Smallest family containing the generators and every constant cut,
    closed under pairwise union and intersection.

    The closure lives inside lattice^carrier, hence terminates; exceeding
    `cap` raises ResourceCapError rather than truncating.
    """
    if not lattice.contains_set(ambient):
        raise ValueError("ambient grades must lie in the lattice")
    for g in generators:
        v = is_subset(g, ambient)
        if not v:
            raise DominationError(f"generator exceeds ambient: {v.reason}", witness=v.witness)
        if not lattice.contains_set(g):
            raise ValueError("generator grade outside the lattice")

    family = {cut(ambient, t) for t in lattice.members()}
    family.update(generators)
    if len(family) > cap:
        raise ResourceCapError(f"topology closure exceeded cap of {cap} opens")
    frontier = list(family)
    while frontier:
        new = []
        members = sorted(family, key=_canon_key)
        for a in frontier:
            for b in members:
                for c in (union([a, b]), intersection([a, b])):
                    if c not in family:
                        family.add(c)
                        new.append(c)
                        if len(family) > cap:
                            raise ResourceCapError(
                                f"topology closure exceeded cap of {cap} opens"
                            )
        frontier = new
    return FuzzyTopology(ambient, frozenset(family), lattice)


def verify_axioms(tau: FuzzyTopology) -> Verdict:
    """Constant cuts present, closed under pairwise union and intersection."""
    opens = tau.sorted_opens()
    open_set = tau.opens
    for t in tau.lattice.members():
        if cut(tau.ambient, t) not in open_set:
            return Verdict.failed(
                f"constant cut t={format_grade(t)} missing", witness=("cut", t)
            )
    for i, a in enumerate(opens):
        for b in opens[i:]:
            if union([a, b]) not in open_set:
                return Verdict.failed("union of two opens missing", witness=("union", a, b))
            if intersection([a, b]) not in open_set:
                return Verdict.failed(
                    "intersection of two opens missing", witness=("intersection", a, b)
                )
    return Verdict.passed()


def is_open_base(base, tau: FuzzyTopology) -> Verdict:
    """Every open must be the union of the base members lying under it."""
    base = list(base)
    for b in base:
        if b not in tau.opens:
            raise ValueError("base member is not an open of the topology")
    zero = FuzzySet.zero(tau.ambient.carrier)
    for nu in tau.sorted_opens():
        under = [b for b in base if is_subset(b, nu)]
        rebuilt = union(under) if under else zero
        if rebuilt != nu:
            return Verdict.failed("open is not a union of base members", witness=nu)
    return Verdict.passed()


def product_topology(tau1: FuzzyTopology, tau2: FuzzyTopology) -> FuzzyTopology:
    """Generated by products of opens, over the product ambient."""
    from .sets import product as set_product

    if tau1.lattice != tau2.lattice:
        raise ValueError("product topology requires matching grade lattices")
    ambient = set_product(tau1.ambient, tau2.ambient)
    base = [
        set_product(g1, g2)
        for g1 in tau1.sorted_opens()
        for g2 in tau2.sorted_opens()
    ]
    return generate(ambient, base, tau1.lattice)


def _lattice_heights(tau: FuzzyTopology, top: Fraction):
    return [t for t in tau.lattice.members() if 0 < t <= top]


def is_T1(tau: FuzzyTopology) -> Verdict:
    """Every fuzzy point (lattice heights up to the ambient grade) is closed,
    i.e. its complement within the ambient set is open."""
    mu = tau.ambient
    for x in mu.carrier:
        for p in _lattice_heights(tau, mu(x)):
            pt = FuzzySet.point(mu.carrier, x, p)
            if complement_in(mu, pt) not in tau.opens:
                return Verdict.failed(
                    f"point {x!r} at height {format_grade(p)} is not closed",
                    witness=(x, p),
                )
    return Verdict.passed()


def is_hausdorff(tau: FuzzyTopology) -> Verdict:
    """Distinct fuzzy points separated by disjoint opens containing them."""
    mu = tau.ambient
    opens = tau.sorted_opens()
    zero_grades = (Fraction(0),) * len(mu.carrier)
    # Opens containing each (x, p): p <= u(x).
    for xi, x in enumerate(mu.carrier):
        for p in _lattice_heights(tau, mu(x)):
            us = [u for u in opens if u.grades[xi] >= p]
            for yi, y in enumerate(mu.carrier):
                if y == x:
                    continue
                for q in _lattice_heights(tau, mu(y)):
                    vs = [v for v in opens if v.grades[yi] >= q]
                    if not any(
                        intersection([u, v]).grades == zero_grades
                        for u in us
                        for v in vs
                    ):
                        return Verdict.failed(
                            f"points {x!r}@{format_grade(p)} and {y!r}@{format_grade(q)} "
                            "admit no disjoint opens",
                            witness=((x, p), (y, q)),
                        )
    return Verdict.passed()


@dataclass(frozen=True)
class TopoMapFlags:
    continuous: bool
    open: bool
    homeomorphism: bool
    witness: object = None


def check_map(f: ProperFunction, tau_src: FuzzyTopology, tau_tgt: FuzzyTopology) -> TopoMapFlags:
    """Continuity (preimages of opens are open), openness (images of opens
    are open), homeomorphism (bijective + both)."""
    if f.source != tau_src.ambient:
        raise CarrierMismatchError("map source must be the source topology's ambient set")
    if f.target != tau_tgt.ambient:
        raise CarrierMismatchError("map target must be the target topology's ambient set")
    witness = None
    continuous = True
    for nu in tau_tgt.sorted_opens():
        if preimage(f, nu) not in tau_src.opens:
            continuous, witness = False, ("preimage", nu)
            break
    is_open = True
    for delta in tau_src.sorted_opens():
        if image(f, delta) not in tau_tgt.opens:
            is_open = False
            if witness is None:
                witness = ("image", delta)
            break
    bijective = classify(f).bijective
    return TopoMapFlags(continuous, is_open, bijective and continuous and is_open, witness)
