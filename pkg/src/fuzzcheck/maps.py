"""Fuzzy proper functions: crisp map + source/target fuzzy sets.

The induced relation F(x,y) equals the source grade on the graph of the
crisp map and 0 elsewhere, so image/preimage reduce to sup-min over the
crisp fibers.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import CarrierMismatchError, DominationError
from .sets import FuzzySet, Verdict, ZERO, format_grade, is_subset


@dataclass(frozen=True)
class ProperFunction:
    """Crisp total map between the carriers of two fuzzy sets."""

    source: FuzzySet
    target: FuzzySet
    images: tuple  # images[i] = value at source.carrier.elements[i]

    def __post_init__(self):
        object.__setattr__(self, "images", tuple(self.images))
        if len(self.images) != len(self.source.carrier):
            raise ValueError("map must be total on the source carrier")
        for y in self.images:
            if y not in self.target.carrier:
                raise ValueError(f"map value {y!r} not in target carrier")

    @classmethod
    def from_dict(cls, source: FuzzySet, target: FuzzySet, mapping: dict) -> "ProperFunction":
        try:
            images = tuple(mapping[x] for x in source.carrier)
        except KeyError as exc:
            raise ValueError(f"map not defined at {exc.args[0]!r}") from None
        return cls(source, target, images)

    def of(self, x):
        return self.images[self.source.carrier.index(x)]

    def relation(self, x, y):
        """Graph relation: source grade on the graph, 0 off it."""
        return self.source(x) if self.of(x) == y else ZERO


@dataclass(frozen=True)
class MapFlags:
    injective: bool
    surjective: bool
    bijective: bool
    witness: object = None


def _require_below(a: FuzzySet, bound: FuzzySet, what: str):
    v = is_subset(a, bound)
    if not v:
        raise DominationError(f"{what} exceeds its bound: {v.reason}", witness=v.witness)


def image(f: ProperFunction, a: FuzzySet) -> FuzzySet:
    """Sup-min image: (F(A))(y) = max over the fiber of min(source grade, A(x))."""
    if a.carrier != f.source.carrier:
        raise CarrierMismatchError("A must live on the source carrier")
    _require_below(a, f.source, "A")
    out = {y: ZERO for y in f.target.carrier}
    for x, gx in a.items():
        y = f.of(x)
        g = min(f.source(x), gx)
        if g > out[y]:
            out[y] = g
    return FuzzySet.from_map(f.target.carrier, out)


def preimage(f: ProperFunction, b: FuzzySet) -> FuzzySet:
    """(F^{-1}(B))(x) = min(source grade at x, B(f(x)))."""
    if b.carrier != f.target.carrier:
        raise CarrierMismatchError("B must live on the target carrier")
    _require_below(b, f.target, "B")
    grades = tuple(min(gx, b(y)) for gx, y in zip(f.source.grades, f.images))
    return FuzzySet(f.source.carrier, grades)


def classify(f: ProperFunction) -> MapFlags:
    """Injective iff the crisp map is; surjective iff every positively graded
    target element has a preimage; bijective iff both."""
    injective = len(set(f.images)) == len(f.images)
    hit = set(f.images)
    surjective, witness = True, None
    for y, gy in f.target.items():
        if gy > 0 and y not in hit:
            surjective, witness = False, y
            break
    return MapFlags(injective, surjective, injective and surjective, witness)


def compose(f: ProperFunction, g: ProperFunction) -> ProperFunction:
    """g after f; requires f's target to be g's source."""
    if f.target != g.source:
        raise CarrierMismatchError("target of first map must equal source of second")
    return ProperFunction(f.source, g.target, tuple(g.of(y) for y in f.images))


def is_fuzzy_homomorphism(f: ProperFunction, group_src, group_tgt) -> Verdict:
    """Grade-carrying group compatibility: f(x*z) = f(x)*f(z) for all pairs.

    Witness is the first failing pair (x, z) in carrier order.
    """
    if f.source.carrier != group_src.carrier:
        raise CarrierMismatchError("source carrier is not the source group")
    if f.target.carrier != group_tgt.carrier:
        raise CarrierMismatchError("target carrier is not the target group")
    for x in group_src.carrier:
        for z in group_src.carrier:
            left = f.of(group_src.op(x, z))
            right = group_tgt.op(f.of(x), f.of(z))
            if left != right:
                return Verdict.failed(
                    f"f({x!r}*{z!r})={left!r} but f({x!r})*f({z!r})={right!r}",
                    witness=(x, z),
                )
    return Verdict.passed()
