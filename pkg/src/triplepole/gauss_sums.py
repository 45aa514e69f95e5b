"""Truncated ideal-character sums over the Gaussian lattice.

Every nonzero ideal of Z[i] has a unique generator in the closed quadrant
(a >= 1, b >= 0), so summing a character over ideals of norm up to X is a
lattice walk.  The walk is reduced to integer residue counts per norm band;
only the final conversion to a complex number touches floating point, which
makes the result bit-identical for any worker count.

A truncated sum of a principal character grows linearly with density
pi/4 * |units|/norm, while a non-principal one cancels; the ratio |S|/X
therefore separates poles from non-poles at modest X, with an explicit
indeterminate verdict in between.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .errors import IndeterminatePoleError, PreconditionError
from .gauss import GaussianHeckeChar, GaussianModulus, HeckeGaussianModel, ideal_density
from .models import CuspidalLabelK

BANDS = 32
NO_POLE_CEILING = 0.01
DEFAULT_TAU = 0.05

_counts_cache: dict = {}
_COUNTS_CACHE_LIMIT = 8


def _chunk_counts(modulus: GaussianModulus, X: int, a_lo: int, a_hi: int) -> np.ndarray:
    """Integer counts[band, unit] of ideals with generator real part in
    [a_lo, a_hi), norm <= X, coprime to the modulus."""
    g, span, v0 = modulus.g, modulus.x_span, modulus.v[0]
    n_units = len(modulus.units)
    unit_code = np.full(span * g, -1, dtype=np.int64)
    for idx, u in enumerate(modulus.units):
        unit_code[u[1] * span + u[0]] = idx
    codes = []
    for a in range(a_lo, a_hi):
        bmax = isqrt(X - a * a)
        b = np.arange(0, bmax + 1, dtype=np.int64)
        norm = a * a + b * b
        c = b // g
        x = (a - c * v0) % span
        y = b - c * g
        res = y * span + x
        code = unit_code[res]
        keep = code >= 0
        band = (BANDS * (norm[keep] - 1)) // X
        codes.append(band * n_units + code[keep])
    counts = np.zeros(BANDS * n_units, dtype=np.int64)
    if codes:
        flat = np.concatenate(codes)
        counts = np.bincount(flat, minlength=BANDS * n_units).astype(np.int64)
    return counts.reshape(BANDS, n_units)


def _band_counts(modulus: GaussianModulus, X: int, workers: int | None = None) -> np.ndarray:
    """Counts[band, unit] over all ideals of norm <= X, cached per
    (modulus, X).  The worker split is over generator real parts; integer
    accumulation makes the result independent of the split."""
    key = (modulus.generator, X)
    cached = _counts_cache.get(key)
    if cached is not None:
        return cached
    a_max = isqrt(X)
    workers = max(1, workers or 1)
    if workers == 1 or a_max < 2 * workers:
        counts = _chunk_counts(modulus, X, 1, a_max + 1)
    else:
        bounds = np.linspace(1, a_max + 1, workers + 1, dtype=np.int64)
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(
                pool.map(
                    lambda se: _chunk_counts(modulus, X, int(se[0]), int(se[1])),
                    zip(bounds[:-1], bounds[1:]),
                )
            )
        counts = np.zeros((BANDS, len(modulus.units)), dtype=np.int64)
        for part in parts:
            counts += part
    if len(_counts_cache) >= _COUNTS_CACHE_LIMIT:
        _counts_cache.pop(next(iter(_counts_cache)))
    _counts_cache[key] = counts
    return counts


def character_sum(psi: GaussianHeckeChar, X: int, workers: int | None = None) -> complex:
    """Sum of psi over all nonzero ideals of norm at most X.

    Ideals sharing a prime with the modulus contribute zero.  Counts are
    exact integers per norm band; bands are converted and added in fixed
    order, so the value does not depend on `workers`.
    """
    if X < 1:
        raise PreconditionError("summation bound X must be at least 1")
    modulus = psi.modulus
    counts = _band_counts(modulus, X, workers)
    L = modulus.unit_exponent
    expo = np.array([psi.value_exponent(u) for u in modulus.units], dtype=np.int64)
    expo_counts = np.zeros((BANDS, L), dtype=np.int64)
    for band in range(BANDS):
        expo_counts[band] = np.bincount(expo, weights=counts[band], minlength=L)
    angles = 2.0 * math.pi * np.arange(L) / L
    roots = np.cos(angles) + 1j * np.sin(angles)
    total = 0.0 + 0.0j
    for band in range(BANDS):
        total += complex(expo_counts[band] @ roots)
    return total


def ideal_count(X: int) -> int:
    """Number of nonzero ideals of norm at most X."""
    if X < 1:
        raise PreconditionError("summation bound X must be at least 1")
    modulus = GaussianModulus((1, 0))
    return int(_band_counts(modulus, X).sum())


# ---------------------------------------------------------------------------
# pole probing


@dataclass(frozen=True)
class PoleProbe:
    """One character's truncated-sum evidence at bound X."""

    ratio: float
    value: complex
    X: int
    tau: float
    verdict: str  # "pole" | "no-pole" | "indeterminate"
    density: float

    def to_dict(self) -> dict:
        return {
            "ratio": self.ratio,
            "value": [self.value.real, self.value.imag],
            "X": self.X,
            "tau": self.tau,
            "verdict": self.verdict,
            "density": self.density,
        }


def probe_pole(
    psi: GaussianHeckeChar,
    X: int,
    tau: float = DEFAULT_TAU,
    workers: int | None = None,
) -> PoleProbe:
    """Probe whether the L-series of psi has a pole at the edge: principal
    characters drive |S(X)|/X toward the ideal density, non-principal ones
    toward zero."""
    if not 0 < tau < 1:
        raise PreconditionError("tau must be strictly between 0 and 1")
    value = character_sum(psi, X, workers)
    ratio = abs(value) / X
    if ratio > tau:
        verdict = "pole"
    elif ratio <= NO_POLE_CEILING:
        verdict = "no-pole"
    else:
        verdict = "indeterminate"
    return PoleProbe(
        ratio=ratio,
        value=value,
        X=X,
        tau=tau,
        verdict=verdict,
        density=ideal_density(psi.modulus),
    )


def classify_pole(
    psi: GaussianHeckeChar,
    X: int,
    tau: float = DEFAULT_TAU,
    workers: int | None = None,
) -> int:
    """1 if the truncated sum says pole, 0 if it says none; a ratio between
    the two thresholds raises instead of guessing."""
    probe = probe_pole(psi, X, tau, workers)
    if probe.verdict == "pole":
        return 1
    if probe.verdict == "no-pole":
        return 0
    raise IndeterminatePoleError(
        f"truncated-sum ratio {probe.ratio:.6f} lies between the no-pole "
        f"ceiling {NO_POLE_CEILING} and tau {tau}; raise X or adjust tau",
        ratio=probe.ratio,
    )


# ---------------------------------------------------------------------------
# full triple estimate


@dataclass(frozen=True)
class TripleEstimate:
    """Numeric and symbolic pole orders for one Gaussian triple."""

    ell_hat: int
    ell_symbolic: int
    agree: bool
    X: int
    tau: float
    cells: list = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "ell_hat": self.ell_hat,
            "ell_symbolic": self.ell_symbolic,
            "agree": self.agree,
            "X": self.X,
            "tau": self.tau,
            "cells": self.cells,
        }


def numeric_triple_estimate(
    theta1: CuspidalLabelK,
    theta2: CuspidalLabelK,
    chi: CuspidalLabelK,
    X: int,
    tau: float = DEFAULT_TAU,
    workers: int | None = None,
) -> TripleEstimate:
    """Estimate the triple pole order by probing all four matching cells
    numerically, and compare with the symbolic count.

    Cell (j, k) contributes the probe of conj^j(theta2) * conj^k(theta1)
    * chi; the estimate is the number of cells whose product character has a
    pole.  An indeterminate cell raises, carrying the cell coordinates.
    """
    from .calculus import matching_matrix

    model = theta1.model
    if not isinstance(model, HeckeGaussianModel):
        raise PreconditionError("numeric estimates need Gaussian character labels")
    symbolic = matching_matrix(theta1, theta2, chi).ell
    ell_hat = 0
    cells = []
    for j in range(2):
        for k in range(2):
            product = (
                model._shifted(theta2, j)
                .mul(model._shifted(theta1, k))
                .mul(chi.payload)
            )
            probe = probe_pole(product, X, tau, workers)
            if probe.verdict == "indeterminate":
                raise IndeterminatePoleError(
                    f"cell ({j}, {k}) is numerically indeterminate at X={X}: "
                    f"ratio {probe.ratio:.6f}",
                    ratio=probe.ratio,
                    pair=(j, k),
                )
            contribution = 1 if probe.verdict == "pole" else 0
            ell_hat += contribution
            record = {"j": j, "k": k, "pole": contribution}
            record.update(probe.to_dict())
            cells.append(record)
    return TripleEstimate(
        ell_hat=ell_hat,
        ell_symbolic=symbolic,
        agree=(ell_hat == symbolic),
        X=X,
        tau=tau,
        cells=cells,
    )
