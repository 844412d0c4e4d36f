"""Growth series, ball volumes, entropy slopes, and the extension-entropy check.

Volumes are counting-based: vertex counts for trees and length-weighted cell
counts q^{l(w)} for the affine Weyl group, which agree with stabilizer-
normalized Haar mass up to a constant and therefore give the same growth
entropy.  Entropy is estimated as a least-squares slope of log volume over a
trailing window of radii.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .affine import (
    DEFAULT_BUDGET,
    ApartmentPoint,
    MetricNormalization,
    apartment_distance_sq,
    band_from_census,
    enumerate_affine_weyl,
)
from .errors import DomainError, InsufficientSamples, NonpositiveVolume
from .rootsystems import RootSystem, weyl_poincare_polynomial
from .series import IntSeries, series_inverse_one_minus, series_mul
from .trees import ExtensionParams, alpha

__all__ = [
    "ExtensionParams",
    "EntropyReport",
    "TheoremReport",
    "affine_poincare_coeffs",
    "s_sequence",
    "s_of_q_r",
    "metric_ball_volume",
    "entropy_estimate",
    "verify_theorem1",
]


def affine_poincare_coeffs(rs: RootSystem, lmax: int) -> IntSeries:
    """Coefficients of W(q) * prod_i 1/(1 - q^{m_i}) up to degree lmax."""
    finite = IntSeries.from_polynomial(weyl_poincare_polynomial(rs), lmax)
    return series_mul(finite, series_inverse_one_minus(rs.exponents, lmax))


def s_sequence(rs: RootSystem, q: int, rmax: int) -> tuple[int, ...]:
    """Exact values S(q, R) for R = 0..rmax (partial sums a_l q^l)."""
    if q < 2:
        raise DomainError("residue cardinality must be >= 2")
    if rmax < 0:
        raise DomainError("rmax must be >= 0")
    coeffs = affine_poincare_coeffs(rs, rmax).coeffs
    out = []
    total = 0
    power = 1
    for a in coeffs:
        total += a * power
        power *= q
        out.append(total)
    return tuple(out)


def s_of_q_r(rs: RootSystem, q: int, radius: int) -> int:
    """Exact S(q, R) = sum over elements of length <= R of q^length."""
    return s_sequence(rs, q, radius)[radius]


def metric_ball_volume(
    rs: RootSystem,
    q: int,
    radius,
    norm: MetricNormalization = MetricNormalization.ALCOVE_DIAMETER_ONE,
    *,
    budget: int = DEFAULT_BUDGET,
) -> int:
    """Sum of q^{l(w)} over elements with d(w·0, 0) <= radius.

    The enumeration depth is chosen from the fitted distance/length band so
    that no element beyond the enumerated range can satisfy the distance
    bound; the membership test itself compares exact squared distances.
    """
    if q < 2:
        raise DomainError("residue cardinality must be >= 2")
    rad = Fraction(radius)
    if rad < 0:
        raise DomainError("radius must be >= 0")
    lmax = len(rs.positive_roots) + 2
    census = enumerate_affine_weyl(rs, lmax, budget=budget)
    for _ in range(8):
        band = band_from_census(rs, census, norm)
        needed = math.ceil((float(rad) + band.slack) / band.lower)
        if needed <= census.max_length:
            break
        census = enumerate_affine_weyl(rs, needed, budget=budget)
    rad_sq = rad * rad
    origin = ApartmentPoint.origin(rs.rank)
    total = 0
    for l, layer in enumerate(census.elements):
        weight = q**l
        for w in layer:
            point = ApartmentPoint.of(w.translation)
            if apartment_distance_sq(rs, point, origin, norm) <= rad_sq:
                total += weight
    return total


@dataclass(frozen=True)
class EntropyReport:
    """Fitted exponential growth rate of a volume sequence.

    samples holds (radius, log volume) for the full input; the slope is the
    least-squares fit over the stated trailing window.
    """

    samples: tuple[tuple[float, float], ...]
    slope: float
    window: tuple[float, float]
    method: str
    residual_rms: float

    @classmethod
    def closed_form(cls, slope: float) -> "EntropyReport":
        return cls((), slope, (math.inf, math.inf), "closed_form", 0.0)


def entropy_estimate(samples, *, window_fraction: float = 0.5) -> EntropyReport:
    """Least-squares slope of log volume against radius on a trailing window.

    The window is the trailing window_fraction of the samples, at least five
    of them; radii must be strictly increasing and volumes positive.
    """
    data = [(float(r), v) for r, v in samples]
    if len(data) < 5:
        raise InsufficientSamples(f"need at least 5 samples, got {len(data)}")
    for (r0, _), (r1, _) in zip(data, data[1:]):
        if r1 <= r0:
            raise DomainError("radii must be strictly increasing")
    for _, v in data:
        if v <= 0:
            raise NonpositiveVolume(f"volume {v} is not positive")
    if not 0 < window_fraction <= 1:
        raise DomainError("window_fraction must be in (0, 1]")
    logs = [(r, math.log(v)) for r, v in data]
    k = max(5, math.ceil(len(logs) * window_fraction))
    window = logs[len(logs) - k :]
    xs = [r for r, _ in window]
    ys = [y for _, y in window]
    xbar = sum(xs) / len(xs)
    ybar = sum(ys) / len(ys)
    sxx = sum((x - xbar) ** 2 for x in xs)
    sxy = sum((x - xbar) * (y - ybar) for x, y in zip(xs, ys))
    slope = sxy / sxx
    intercept = ybar - slope * xbar
    rms = math.sqrt(
        sum((y - (slope * x + intercept)) ** 2 for x, y in zip(xs, ys)) / len(xs)
    )
    return EntropyReport(tuple(logs), slope, (window[0][0], window[-1][0]), "regression", rms)


@dataclass(frozen=True)
class TheoremReport:
    """Three entropy estimates for an extension and their two ratio defects.

    h_ff: base tree/building with its own metric and residue parameter q.
    h_fe: the same volumes reindexed by the extension metric (radius e·R).
    h_ee: extension volumes with residue parameter q^f.
    The relation under test is n·h_fe = f·h_ff = h_ee (n = e·f), so
    defect1 = |n·h_fe - f·h_ff| and defect2 = |f·h_ff - h_ee|.
    """

    target: str
    params: ExtensionParams
    base_samples: tuple[tuple[int, int], ...]
    ext_samples: tuple[tuple[int, int], ...]
    h_ff: float
    h_fe: float
    h_ee: float
    defect1: float
    defect2: float
    ff_report: EntropyReport
    fe_report: EntropyReport
    ee_report: EntropyReport

    def to_json_dict(self) -> dict:
        return {
            "target": self.target,
            "q": self.params.q,
            "e": self.params.e,
            "f": self.params.f,
            "n": self.params.n,
            "samples": [
                {"R": r, "volume_digits": str(v)} for r, v in self.base_samples
            ],
            "h_FF": self.h_ff,
            "h_FE": self.h_fe,
            "h_EE": self.h_ee,
            "defect1": self.defect1,
            "defect2": self.defect2,
        }


def verify_theorem1(
    target, params: ExtensionParams, rmax: int, *, window_fraction: float = 0.5
) -> TheoremReport:
    """Estimate the three entropies for an extension and report the defects.

    target is either the string "tree" (rank-one, closed-form sphere counts)
    or a RootSystem (volumes S(q, R) from the affine growth series).  The
    reindexed d_E samples live on the grid R = e·R_F, matching how the base
    object sits inside the extension ball.
    """
    if isinstance(target, RootSystem):
        if rmax < 10:
            raise InsufficientSamples("need rmax >= 10 for the regression windows")
        seq_base = s_sequence(target, params.q, rmax)
        seq_ext = s_sequence(target, params.q_ext, rmax)
        base = tuple((r, seq_base[r]) for r in range(1, rmax + 1))
        ext = tuple((r, seq_ext[r]) for r in range(1, rmax + 1))
        label = f"weyl:{target.name}"
    elif target == "tree":
        base_rmax = rmax // params.e
        if base_rmax < 10:
            raise InsufficientSamples(
                f"need rmax >= {10 * params.e} for ramification degree {params.e}"
            )
        base = tuple((r, alpha(params.q, r)) for r in range(1, base_rmax + 1))
        ext = tuple((r, alpha(params.q_ext, r)) for r in range(1, rmax + 1))
        label = "tree"
    else:
        raise DomainError(f"unknown verification target {target!r}")

    reindexed = tuple((params.e * r, v) for r, v in base)
    ff = entropy_estimate(base, window_fraction=window_fraction)
    fe = entropy_estimate(reindexed, window_fraction=window_fraction)
    ee = entropy_estimate(ext, window_fraction=window_fraction)
    defect1 = abs(params.n * fe.slope - params.f * ff.slope)
    defect2 = abs(params.f * ff.slope - ee.slope)
    return TheoremReport(
        label, params, base, ext, ff.slope, fe.slope, ee.slope, defect1, defect2, ff, fe, ee
    )
