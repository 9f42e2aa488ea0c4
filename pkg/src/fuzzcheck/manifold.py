"""Sampled numeric charts and atlases: cover diagnostics, transition maps,
C1 smoothness checks, product atlases, Jacobian ranks, and the invertible-
matrix demo.

Unlike the exact modules, membership grades here are floats and every
verdict is tolerance-based.  All tolerances are named fields with defaults
on Tolerances.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field, replace
from typing import Callable, Optional, Sequence

import numpy as np


@dataclass(frozen=True)
class Tolerances:
    eps_inv: float = 1e-9        # coord o coord_inverse round-trip error
    eps_deriv: float = 1e-6      # finite-difference stability, relative, at h = h_min
    h0: float = 1e-3             # initial central-difference step (two halvings follow)
    h_min: float = 1e-5          # reference step for scaling the stability tolerance
    cover_eps: float = 0.0       # allowed cover deficiency
    rank_rtol: float = 1e-6      # singular values below rtol * smax do not count
    lipschitz_cap: float = 1e3   # max |dD/ds| between adjacent derivative samples
    edge_margin_frac: float = 0.05  # fraction of a component span skipped at its edges
    seam_margin_factor: float = 8.0  # skip radius around declared seams, in units of h0


@dataclass(frozen=True)
class SampledChart:
    """Fuzzy chart realized numerically: membership and a coordinate
    bijection defined on the membership's support."""

    label: str
    membership: Callable[[object], float]
    coord: Callable[[object], float]
    coord_inverse: Callable[[float], object]


@dataclass(frozen=True)
class Atlas:
    charts: tuple
    samples: tuple           # shared manifold sample points
    tolerances: Tolerances = Tolerances()
    seam_points: tuple = ()  # manifold points where chart formulas break

    def __post_init__(self):
        object.__setattr__(self, "charts", tuple(self.charts))
        object.__setattr__(self, "samples", tuple(self.samples))
        object.__setattr__(self, "seam_points", tuple(self.seam_points))


@dataclass(frozen=True)
class CoverReport:
    ok: bool
    max_deficiency: float
    worst_point: object
    normalized: bool = False


def check_cover_condition(atlas: Atlas, normalize: bool = False) -> CoverReport:
    """Per sample, 1 - sup of chart memberships.  Never repairs an atlas:
    with normalize=True each positive sup is rescaled to 1 (the intended
    reading), otherwise the raw supremum is reported."""
    worst, worst_point = 0.0, None
    for p in atlas.samples:
        sup = max(chart.membership(p) for chart in atlas.charts)
        if normalize and sup > 0.0:
            sup = 1.0
        deficiency = 1.0 - sup
        if deficiency > worst:
            worst, worst_point = deficiency, p
    ok = worst <= atlas.tolerances.cover_eps
    return CoverReport(ok, worst, worst_point, normalize)


def cover_deficiency_at(atlas: Atlas, point, normalize: bool = False) -> float:
    sup = max(chart.membership(point) for chart in atlas.charts)
    if normalize and sup > 0.0:
        sup = 1.0
    return 1.0 - sup


class EmptyOverlapError(ValueError):
    pass


@dataclass(frozen=True)
class TransitionMap:
    """phi_l o phi_j^{-1}, tabulated over the sampled overlap and callable
    anywhere the chart formulas are defined."""

    source: SampledChart
    target: SampledChart
    coords: np.ndarray   # sorted source-chart coordinates of overlap samples
    values: np.ndarray   # target-chart coordinates at the same samples
    seams: tuple         # source-coordinate seam locations
    inverse_seams: tuple

    def __call__(self, s: float) -> float:
        return self.target.coord(self.source.coord_inverse(s))

    def inverse(self, s: float) -> float:
        return self.source.coord(self.target.coord_inverse(s))


def transition_map(atlas: Atlas, j: int, l: int, atlas2: Optional[Atlas] = None) -> TransitionMap:
    """Transition from chart j to chart l (of atlas2 when given), tabulated
    over the shared samples lying in both supports."""
    src = atlas.charts[j]
    other = atlas2 if atlas2 is not None else atlas
    tgt = other.charts[l]
    tol = atlas.tolerances
    pts = [p for p in atlas.samples if src.membership(p) > 0.0 and tgt.membership(p) > 0.0]
    if not pts:
        raise EmptyOverlapError(f"charts {src.label} and {tgt.label} do not overlap on the samples")
    coords = np.array([src.coord(p) for p in pts], dtype=float)
    values = np.array([tgt.coord(p) for p in pts], dtype=float)
    order = np.argsort(coords)
    coords, values = coords[order], values[order]
    # coord_inverse consistency on the sampled coordinates.
    for s in coords[:: max(1, len(coords) // 32)]:
        if abs(src.coord(src.coord_inverse(float(s))) - s) > tol.eps_inv:
            raise ValueError(f"chart {src.label}: coord o coord_inverse deviates at {s}")
    seam_pts = atlas.seam_points + (atlas2.seam_points if atlas2 is not None else ())
    seams = tuple(sorted({src.coord(p) for p in seam_pts if src.membership(p) > 0.0}))
    inverse_seams = tuple(sorted({tgt.coord(p) for p in seam_pts if tgt.membership(p) > 0.0}))
    return TransitionMap(src, tgt, coords, values, seams, inverse_seams)


def _central(fn, x: float, h: float) -> float:
    return (fn(x + h) - fn(x - h)) / (2.0 * h)


@dataclass
class C1Report:
    ok: bool
    reason: str = ""
    witness: object = None
    max_stability_error: float = 0.0   # max relative |D_{h/2} - D_{h/4}|
    max_derivative_jump: float = 0.0   # max |dD/ds| between adjacent samples
    checked_points: int = 0
    derivatives: Optional[np.ndarray] = None
    grid: Optional[np.ndarray] = None


def _split_components(grid: np.ndarray, seams: Sequence[float]) -> list:
    """Split a sorted grid into connected pieces at declared seams and at
    gaps much larger than the local spacing."""
    if len(grid) == 0:
        return []
    pieces, start = [], 0
    diffs = np.diff(grid)
    median = float(np.median(diffs)) if len(diffs) else 0.0
    for i, d in enumerate(diffs):
        crosses = any(grid[i] <= seam <= grid[i + 1] for seam in seams)
        if crosses or (median > 0 and d > 10.0 * median):
            pieces.append(grid[start:i + 1])
            start = i + 1
    pieces.append(grid[start:])
    return [p for p in pieces if len(p) > 0]


def check_c1_diffeo(
    fn: Callable[[float], float],
    grid,
    tol: Tolerances = Tolerances(),
    seams: Sequence[float] = (),
    inverse_fn: Optional[Callable[[float], float]] = None,
    inverse_seams: Sequence[float] = (),
    _depth: int = 0,
) -> C1Report:
    """Injectivity on the grid, finite-difference derivative stability under
    step halving, derivative continuity along the grid, and the same for the
    inverse when supplied.

    Grid cells touching a declared seam or a component edge are skipped: the
    piecewise chart formulas end there and central differences would straddle
    the break.  The stability tolerance is eps_deriv scaled by (h/h_min)^2,
    matching the h^2 truncation error of central differences.
    """
    grid = np.sort(np.asarray(grid, dtype=float))
    if len(grid) < 3:
        return C1Report(False, "grid too small", witness=len(grid))
    values = np.array([fn(s) for s in grid])
    order = np.argsort(values)
    v_sorted = values[order]
    collisions = np.where(np.diff(v_sorted) <= 1e-12)[0]
    if len(collisions):
        i = collisions[0]
        return C1Report(
            False,
            "not injective on the grid",
            witness=(float(grid[order[i]]), float(grid[order[i + 1]])),
        )

    report = C1Report(True)
    seam_margin = tol.seam_margin_factor * tol.h0
    checked_any = False
    all_d, all_s = [], []
    for comp in _split_components(grid, seams):
        span = float(comp[-1] - comp[0])
        margin = max(seam_margin, tol.edge_margin_frac * span)
        lo, hi = comp[0] + margin, comp[-1] - margin
        pts = [float(s) for s in comp if lo <= s <= hi
               and all(abs(s - seam) >= seam_margin for seam in seams)]
        if len(pts) < 3:
            continue
        checked_any = True
        h = tol.h0
        scale = tol.eps_deriv * (h / tol.h_min) ** 2
        derivs = []
        for s in pts:
            d2 = _central(fn, s, h / 2.0)
            d4 = _central(fn, s, h / 4.0)
            err = abs(d2 - d4) / max(1.0, abs(d4))
            report.max_stability_error = max(report.max_stability_error, err)
            if err > scale:
                return replace(
                    report,
                    ok=False,
                    reason="derivative not stable under step halving",
                    witness=float(s),
                )
            derivs.append(d4)
        for i in range(len(pts) - 1):
            ds = pts[i + 1] - pts[i]
            jump = abs(derivs[i + 1] - derivs[i]) / ds if ds > 0 else 0.0
            report.max_derivative_jump = max(report.max_derivative_jump, jump)
            if jump > tol.lipschitz_cap:
                return replace(
                    report,
                    ok=False,
                    reason="derivative jumps between adjacent samples",
                    witness=(pts[i], pts[i + 1]),
                )
        report.checked_points += len(pts)
        all_d.extend(derivs)
        all_s.extend(pts)
    if not checked_any:
        return C1Report(False, "grid too small", witness=len(grid))
    report.derivatives = np.array(all_d)
    report.grid = np.array(all_s)

    if inverse_fn is not None and _depth == 0:
        inv_grid = np.sort(values)
        inv = check_c1_diffeo(
            inverse_fn, inv_grid, tol, seams=inverse_seams, _depth=1
        )
        report.max_stability_error = max(report.max_stability_error, inv.max_stability_error)
        report.max_derivative_jump = max(report.max_derivative_jump, inv.max_derivative_jump)
        if not inv.ok:
            return replace(
                report, ok=False, reason=f"inverse: {inv.reason}", witness=inv.witness
            )
    return report


@dataclass
class PairCheck:
    source_label: str
    target_label: str
    report: C1Report


@dataclass
class AtlasReport:
    cover: CoverReport
    pairs: list
    transitions_ok: bool

    @property
    def ok(self) -> bool:
        return self.transitions_ok and self.cover.ok


def _factor_pairs(atlas: Atlas, atlas2: Optional[Atlas]):
    """(source atlas index spaces) ordered chart pairs with which atlas the
    target chart comes from."""
    if atlas2 is None:
        n = len(atlas.charts)
        return [(j, l, None) for j in range(n) for l in range(n) if j != l]
    out = [(j, l, None) for j in range(len(atlas.charts))
           for l in range(len(atlas.charts)) if j != l]
    out += [(j, l, "second") for j in range(len(atlas2.charts))
            for l in range(len(atlas2.charts)) if j != l]
    out += [(j, l, "cross") for j in range(len(atlas.charts))
            for l in range(len(atlas2.charts))]
    out += [(j, l, "cross_back") for j in range(len(atlas2.charts))
            for l in range(len(atlas.charts))]
    return out


def check_atlas(atlas: Atlas, atlas2: Optional[Atlas] = None,
                normalize_cover: bool = False) -> AtlasReport:
    """Cover diagnostics plus every pairwise (and, with a second atlas,
    cross) transition C1 check."""
    if atlas2 is not None and atlas.samples != atlas2.samples:
        raise ValueError("compatibility checks require a shared sample list")
    cover = check_cover_condition(atlas, normalize=normalize_cover)
    pairs = []
    ok = True
    for j, l, kind in _factor_pairs(atlas, atlas2):
        if kind is None:
            src_atlas, cross = atlas, None
        elif kind == "second":
            src_atlas, cross = atlas2, None
        elif kind == "cross":
            src_atlas, cross = atlas, atlas2
        else:
            src_atlas, cross = atlas2, atlas
        try:
            tr = transition_map(src_atlas, j, l, atlas2=cross)
        except EmptyOverlapError:
            continue
        rep = check_c1_diffeo(
            tr,
            tr.coords,
            src_atlas.tolerances,
            seams=tr.seams,
            inverse_fn=tr.inverse,
            inverse_seams=tr.inverse_seams,
        )
        pairs.append(PairCheck(tr.source.label, tr.target.label, rep))
        ok = ok and rep.ok
    return AtlasReport(cover, pairs, ok)


# ---------------------------------------------------------------------------
# Circle fixtures.  Sample points are canonical parameters t in [0,1) with
# the manifold point (sin 2 pi t, cos 2 pi t).

def _circle_samples(n: int) -> tuple:
    return tuple(k / n for k in range(n))


def circle_phi_atlas(n_samples: int = 1024, tol: Tolerances = Tolerances()) -> Atlas:
    """Two angle charts: full-circle chart missing t=0 with membership 1,
    and a half-shifted chart missing t=1/2 with membership 1/2."""
    u = SampledChart(
        "phi1",
        membership=lambda t: 1.0 if t % 1.0 != 0.0 else 0.0,
        coord=lambda t: t % 1.0,
        coord_inverse=lambda s: s % 1.0,
    )
    v = SampledChart(
        "phi2",
        membership=lambda t: 0.5 if t % 1.0 != 0.5 else 0.0,
        coord=lambda t: (t % 1.0) if (t % 1.0) < 0.5 else (t % 1.0) - 1.0,
        coord_inverse=lambda s: s % 1.0,
    )
    return Atlas((u, v), _circle_samples(n_samples), tol, seam_points=(0.0, 0.5))


def circle_psi_atlas(n_samples: int = 1024, tol: Tolerances = Tolerances()) -> Atlas:
    """Four half-circle projection charts, each with membership 1/4:
    right (x>0, coord y), top (y>0, coord x), left (x<0, coord y),
    bottom (y<0, coord x)."""

    def x_of(t):
        return math.sin(2.0 * math.pi * t)

    def y_of(t):
        return math.cos(2.0 * math.pi * t)

    right = SampledChart(
        "psi1",
        membership=lambda t: 0.25 if x_of(t) > 0.0 else 0.0,
        coord=y_of,
        coord_inverse=lambda s: math.acos(s) / (2.0 * math.pi),
    )
    top = SampledChart(
        "psi2",
        membership=lambda t: 0.25 if y_of(t) > 0.0 else 0.0,
        coord=x_of,
        coord_inverse=lambda s: (math.asin(s) / (2.0 * math.pi)) % 1.0,
    )
    left = SampledChart(
        "psi3",
        membership=lambda t: 0.25 if x_of(t) < 0.0 else 0.0,
        coord=y_of,
        coord_inverse=lambda s: 1.0 - math.acos(s) / (2.0 * math.pi),
    )
    bottom = SampledChart(
        "psi4",
        membership=lambda t: 0.25 if y_of(t) < 0.0 else 0.0,
        coord=x_of,
        coord_inverse=lambda s: 0.5 - math.asin(s) / (2.0 * math.pi),
    )
    return Atlas((right, top, left, bottom), _circle_samples(n_samples), tol,
                 seam_points=())


# ---------------------------------------------------------------------------
# Product atlases (factor-wise charts; transitions are componentwise).

@dataclass(frozen=True)
class ProductChart:
    label: str
    first: SampledChart
    second: SampledChart

    def membership(self, point) -> float:
        return min(self.first.membership(point[0]), self.second.membership(point[1]))

    def coord(self, point):
        return (self.first.coord(point[0]), self.second.coord(point[1]))


@dataclass(frozen=True)
class ProductAtlas:
    first: Atlas
    second: Atlas
    charts: tuple
    samples: tuple
    tolerances: Tolerances


def product_atlas(a: Atlas, b: Atlas) -> ProductAtlas:
    charts = tuple(
        ProductChart(f"{ca.label}*{cb.label}", ca, cb)
        for ca in a.charts
        for cb in b.charts
    )
    samples = tuple((p, q) for p in a.samples for q in b.samples)
    return ProductAtlas(a, b, charts, samples, a.tolerances)


def check_product_cover(pa: ProductAtlas, normalize: bool = False) -> CoverReport:
    worst, worst_point = 0.0, None
    for p in pa.samples:
        sup = max(chart.membership(p) for chart in pa.charts)
        if normalize and sup > 0.0:
            sup = 1.0
        if 1.0 - sup > worst:
            worst, worst_point = 1.0 - sup, p
    return CoverReport(worst <= pa.tolerances.cover_eps, worst, worst_point, normalize)


def check_product_atlas(pa: ProductAtlas, normalize_cover: bool = False) -> AtlasReport:
    """Cover on the product grid; transitions checked factor-wise, which is
    exactly what the componentwise coordinate maps decompose into."""
    cover = check_product_cover(pa, normalize=normalize_cover)
    first = check_atlas(pa.first)
    second = check_atlas(pa.second)
    pairs = first.pairs + second.pairs
    return AtlasReport(cover, pairs, first.transitions_ok and second.transitions_ok)


# ---------------------------------------------------------------------------
# Tabulated user charts: no callable formulas, so derivative checks are
# coarse difference quotients over the table itself.

def check_c1_tabulated(coords, values, tol: Tolerances = Tolerances()) -> C1Report:
    """Injectivity plus difference-quotient continuity for a transition
    known only through a table."""
    coords = np.asarray(coords, dtype=float)
    values = np.asarray(values, dtype=float)
    order = np.argsort(coords)
    coords, values = coords[order], values[order]
    if len(coords) < 3:
        return C1Report(False, "grid too small", witness=len(coords))
    v_sorted = np.sort(values)
    if np.any(np.diff(v_sorted) <= 1e-12):
        i = int(np.where(np.diff(v_sorted) <= 1e-12)[0][0])
        return C1Report(False, "not injective on the table", witness=float(v_sorted[i]))
    report = C1Report(True)
    for comp in _split_components(coords, ()):
        if len(comp) < 3:
            continue
        idx = np.searchsorted(coords, comp)
        d = np.diff(values[idx]) / np.diff(coords[idx])
        report.checked_points += len(comp)
        for i in range(len(d) - 1):
            ds = coords[idx[i + 1]] - coords[idx[i]]
            jump = abs(d[i + 1] - d[i]) / ds if ds > 0 else 0.0
            report.max_derivative_jump = max(report.max_derivative_jump, jump)
            if jump > tol.lipschitz_cap:
                return replace(
                    report,
                    ok=False,
                    reason="difference quotient jumps between adjacent rows",
                    witness=(float(coords[idx[i]]), float(coords[idx[i + 1]])),
                )
    if report.checked_points == 0:
        return C1Report(False, "grid too small", witness=len(coords))
    return report


def check_tabulated_atlas(tables, tol: Tolerances = Tolerances(),
                          normalize_cover: bool = False) -> AtlasReport:
    """Atlas checks over charts given as (params, points, memberships)
    tables.  Rows are matched across charts by identical point tuples."""
    charts = []
    sample_order = []
    seen = set()
    for params, points, memberships in tables:
        coord = dict(zip(points, params))
        member = dict(zip(points, memberships))
        charts.append((coord, member))
        for p in points:
            if p not in seen:
                seen.add(p)
                sample_order.append(p)
    worst, worst_point = 0.0, None
    for p in sample_order:
        sup = max(member.get(p, 0.0) for _, member in charts)
        if normalize_cover and sup > 0.0:
            sup = 1.0
        if 1.0 - sup > worst:
            worst, worst_point = 1.0 - sup, p
    cover = CoverReport(worst <= tol.cover_eps, worst, worst_point, normalize_cover)
    pairs = []
    ok = True
    for j, (coord_j, member_j) in enumerate(charts):
        for l, (coord_l, member_l) in enumerate(charts):
            if j == l:
                continue
            shared = [p for p in sample_order
                      if member_j.get(p, 0.0) > 0.0 and member_l.get(p, 0.0) > 0.0]
            if not shared:
                continue
            rep = check_c1_tabulated(
                [coord_j[p] for p in shared], [coord_l[p] for p in shared], tol
            )
            pairs.append(PairCheck(f"chart{j}", f"chart{l}", rep))
            ok = ok and rep.ok
    return AtlasReport(cover, pairs, ok)


# ---------------------------------------------------------------------------
# Jacobian ranks and the invertible-matrix demo.

def numeric_rank(fn: Callable, point, h: float = 1e-5,
                 rtol: float = Tolerances.rank_rtol) -> int:
    """Rank of the central finite-difference Jacobian at an interior point."""
    if h <= 0:
        raise ValueError("step size must be positive")
    point = np.asarray(point, dtype=float)
    cols = []
    for j in range(point.size):
        e = np.zeros_like(point)
        e[j] = h
        cols.append((np.asarray(fn(point + e), dtype=float).ravel()
                     - np.asarray(fn(point - e), dtype=float).ravel()) / (2.0 * h))
    jac = np.stack(cols, axis=1)
    svals = np.linalg.svd(jac, compute_uv=False)
    if svals.size == 0 or svals[0] == 0.0:
        return 0
    return int(np.sum(svals > rtol * svals[0]))


@dataclass
class GLDemoReport:
    n: int
    samples: int
    max_det_gradient_error: float      # finite differences vs adjugate formula
    max_mult_instability: float        # step-halving residual for products
    max_inv_instability: float         # step-halving residual for inversion
    max_orthogonality_error: float     # O(n) closure under product/inverse
    inclusion_rank: int                # Jacobian rank of the natural inclusion
    ok: bool


def _random_invertible(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        a = rng.uniform(-1.0, 1.0, size=(n, n))
        if abs(np.linalg.det(a)) >= 0.1:
            return a


def gl_demo(n: int, sample_count: int = 50, seed: int = 0,
            grad_tol: float = 1e-4) -> GLDemoReport:
    """Numeric demo on invertible matrices: the determinant's finite-
    difference gradient against the adjugate formula, smoothness of
    multiplication and inversion, closure of orthogonal samples, and the
    Jacobian rank of the inclusion into the full matrix space."""
    if not 1 <= n <= 4:
        raise ValueError("demo is desk-scale: n must be between 1 and 4")
    rng = np.random.default_rng(seed)
    h = 1e-5
    max_grad_err = 0.0
    max_mult = 0.0
    max_inv = 0.0
    max_orth = 0.0
    for _ in range(sample_count):
        a = _random_invertible(rng, n)
        # Gradient of det vs the adjugate (cofactor) formula.
        exact = np.linalg.det(a) * np.linalg.inv(a).T
        fd = np.zeros_like(a)
        for i in range(n):
            for j in range(n):
                e = np.zeros_like(a)
                e[i, j] = h
                fd[i, j] = (np.linalg.det(a + e) - np.linalg.det(a - e)) / (2.0 * h)
        denom = max(1.0, float(np.max(np.abs(exact))))
        max_grad_err = max(max_grad_err, float(np.max(np.abs(fd - exact))) / denom)

        # Directional-derivative stability for multiplication and inversion.
        b = _random_invertible(rng, n)
        e = rng.uniform(-1.0, 1.0, size=(n, n))

        def dirderiv(f, h_):
            return (f(h_) - f(-h_)) / (2.0 * h_)

        for f, sink in (
            (lambda s: (a + s * e) @ b, "mult"),
            (lambda s: np.linalg.inv(a + s * e), "inv"),
        ):
            d1 = dirderiv(f, h)
            d2 = dirderiv(f, h / 2.0)
            resid = float(np.max(np.abs(d1 - d2))) / max(1.0, float(np.max(np.abs(d2))))
            if sink == "mult":
                max_mult = max(max_mult, resid)
            else:
                max_inv = max(max_inv, resid)

        # Orthogonal samples: QR factor, then closure under product/inverse.
        q1, _ = np.linalg.qr(_random_invertible(rng, n))
        q2, _ = np.linalg.qr(_random_invertible(rng, n))
        eye = np.eye(n)
        for m in (q1, q2, q1 @ q2, q1.T):
            max_orth = max(max_orth, float(np.max(np.abs(m @ m.T - eye))))

    inclusion_rank = numeric_rank(lambda v: v, _random_invertible(rng, n).ravel())
    ok = (
        max_grad_err < grad_tol
        and max_mult < 1e-6
        and max_inv < 1e-4
        and max_orth < 1e-9
        and inclusion_rank == n * n
    )
    return GLDemoReport(n, sample_count, max_grad_err, max_mult, max_inv,
                        max_orth, inclusion_rank, ok)
