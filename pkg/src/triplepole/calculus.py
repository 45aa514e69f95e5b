"""Pole-order calculus for triple products with an induced character factor.

The objects of interest are L-functions of triples (pi1, pi2, AI(chi)) where
pi1, pi2 are cuspidal data over the base field, chi is a character label over
the cyclic prime-degree extension, and AI denotes automorphic induction.
After base change, each pi_i either stays cuspidal or splits into the p
Galois shifts of an inducing character; the order of the pole at the edge is
the number of constituent pairings that contract to a pole, and when both
sides are induced this count is the number of on-cells of a p x p matching
matrix that is always a partial permutation.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Iterator

from .errors import (
    InvariantViolationError,
    ModelMismatchError,
    PreconditionError,
)
from .models import CuspidalLabelK, CyclicData


# ---------------------------------------------------------------------------
# Label-level operations (thin wrappers adding cross-model checks)


def _model_of(*labels: CuspidalLabelK):
    model = labels[0].model
    for lab in labels[1:]:
        if lab.model is not model:
            raise ModelMismatchError("labels come from different models")
    return model


def galois_shift(label: CuspidalLabelK, t: int) -> CuspidalLabelK:
    """Apply the t-th power of the distinguished Galois generator."""
    return label.model.shift(label, t)


def dual(label: CuspidalLabelK) -> CuspidalLabelK:
    return label.model.dual(label)


def twist(label: CuspidalLabelK, chi: CuspidalLabelK) -> CuspidalLabelK:
    if chi.degree != 1:
        raise PreconditionError("twisting label must have degree 1")
    _model_of(label, chi)
    return label.model.twist(label, chi)


def is_isomorphic(a: CuspidalLabelK, b: CuspidalLabelK) -> bool:
    model = _model_of(a, b)
    return a.degree == b.degree and model.is_isomorphic(a, b)


def rs_pole_order(a: CuspidalLabelK, b: CuspidalLabelK) -> int:
    """Pole order at the edge of the Rankin-Selberg pairing of two cuspidal
    labels: 1 exactly when one is the dual of the other, else 0."""
    model = _model_of(a, b)
    if a.degree != b.degree:
        return 0
    return 1 if model.is_isomorphic(a, model.dual(b)) else 0


# ---------------------------------------------------------------------------
# Cuspidal data over the base field


@dataclass(frozen=True)
class StaysCuspidal:
    """Base change remains cuspidal; `label` is its image over the extension."""

    label: CuspidalLabelK


@dataclass(frozen=True)
class InducedFrom:
    """The datum is automorphically induced from `theta` over the extension."""

    theta: CuspidalLabelK


@dataclass(frozen=True)
class CuspidalDatumF:
    """An automorphic datum over the base field, tagged with its base-change
    behavior.

    `cuspidal` records cuspidality over the base field.  An induced datum is
    cuspidal exactly when its inducing label is moved by the Galois shift; a
    stays-cuspidal datum must carry a shift-invariant label of matching
    degree.  Violations raise PreconditionError at construction.
    """

    degree: int
    behavior: StaysCuspidal | InducedFrom
    cuspidal: bool = True

    def __post_init__(self):
        b = self.behavior
        if isinstance(b, InducedFrom):
            model = b.theta.model
            if self.degree != model.p * b.theta.degree:
                raise PreconditionError(
                    "induced datum degree must be p times the inducing degree"
                )
            invariant = model.is_invariant(b.theta)
            if self.cuspidal and invariant:
                raise PreconditionError(
                    "induction from a shift-invariant label is not cuspidal"
                )
            if not self.cuspidal and not invariant:
                raise PreconditionError(
                    "induction from a non-invariant label is cuspidal; "
                    "datum wrongly marked non-cuspidal"
                )
        elif isinstance(b, StaysCuspidal):
            if self.degree != b.label.degree:
                raise PreconditionError(
                    "stays-cuspidal datum degree must match its label degree"
                )
            if not self.cuspidal:
                raise PreconditionError("stays-cuspidal datum must be cuspidal")
            if not b.label.model.is_invariant(b.label):
                raise PreconditionError(
                    "stays-cuspidal base change must be shift-invariant"
                )
        else:
            raise PreconditionError("behavior must be StaysCuspidal or InducedFrom")

    @classmethod
    def stays_cuspidal(cls, label: CuspidalLabelK) -> "CuspidalDatumF":
        return cls(label.degree, StaysCuspidal(label), cuspidal=True)

    @classmethod
    def induced_from(cls, theta: CuspidalLabelK) -> "CuspidalDatumF":
        model = theta.model
        return cls(
            model.p * theta.degree,
            InducedFrom(theta),
            cuspidal=not model.is_invariant(theta),
        )

    @property
    def model(self):
        b = self.behavior
        return b.theta.model if isinstance(b, InducedFrom) else b.label.model

    @property
    def is_induced(self) -> bool:
        return isinstance(self.behavior, InducedFrom)


def automorphic_induction(chi: CuspidalLabelK, cyclic: CyclicData | None = None) -> CuspidalDatumF:
    """The induced datum AI(chi) over the base field."""
    if cyclic is not None and cyclic.p != chi.model.p:
        raise PreconditionError("cyclic data does not match the label model")
    return CuspidalDatumF.induced_from(chi)


@dataclass(frozen=True, eq=False)
class IsobaricRep:
    """An unordered sum of cuspidal constituents over the extension field.

    Equality is multiset equality of the constituents.
    """

    constituents: tuple[CuspidalLabelK, ...]

    @property
    def degree(self) -> int:
        return sum(c.degree for c in self.constituents)

    def __eq__(self, other) -> bool:
        if not isinstance(other, IsobaricRep):
            return NotImplemented
        return Counter(self.constituents) == Counter(other.constituents)

    __hash__ = None


def base_change(pi: CuspidalDatumF, cyclic: CyclicData | None = None) -> IsobaricRep:
    """Base change to the extension: a stays-cuspidal datum keeps its single
    label; an induced datum splits into the p Galois shifts of its inducing
    label."""
    model = pi.model
    if cyclic is not None and cyclic.p != model.p:
        raise PreconditionError("cyclic data does not match the label model")
    b = pi.behavior
    if isinstance(b, StaysCuspidal):
        return IsobaricRep((b.label,))
    theta = b.theta
    return IsobaricRep(tuple(model.shift(theta, j) for j in range(model.p)))


# ---------------------------------------------------------------------------
# Matching matrix


@dataclass(frozen=True)
class MatchingMatrix:
    """p x p boolean matrix of contracting constituent pairs.

    Cell (j, k) pairs the j-th shift on the second side with the k-th shift
    on the first.  The on-cells always form a partial permutation; the pole
    order is their count.
    """

    p: int
    cells: frozenset

    def __post_init__(self):
        cells = frozenset((j % self.p, k % self.p) for j, k in self.cells)
        object.__setattr__(self, "cells", cells)
        rows = [j for j, _ in cells]
        cols = [k for _, k in cells]
        if len(set(rows)) != len(rows) or len(set(cols)) != len(cols):
            raise InvariantViolationError(
                "matching cells do not form a partial permutation"
            )

    @property
    def ell(self) -> int:
        return len(self.cells)

    @property
    def true_cells(self) -> list[tuple[int, int]]:
        return sorted(self.cells)

    def as_rows(self) -> list[list[bool]]:
        return [[(j, k) in self.cells for k in range(self.p)] for j in range(self.p)]


def matching_matrix(
    theta1: CuspidalLabelK,
    theta2: CuspidalLabelK,
    chi: CuspidalLabelK,
    cyclic: CyclicData | None = None,
) -> MatchingMatrix:
    """Matching matrix for the pair of induced data AI(theta1), AI(theta2)
    against the twisting character chi.

    A degree mismatch between the inducing labels yields the all-off matrix.
    Models that can decide invariance require both inducing labels to be
    non-invariant (the induced data must be cuspidal).
    """
    model = _model_of(theta1, theta2, chi)
    if chi.degree != 1:
        raise PreconditionError("twisting label must have degree 1")
    p = model.p
    if cyclic is not None and cyclic.p != p:
        raise PreconditionError("cyclic data does not match the label model")
    if theta1.degree != theta2.degree:
        return MatchingMatrix(p, frozenset())
    if model.enforces_noninvariance:
        if model.is_invariant(theta1) or model.is_invariant(theta2):
            raise PreconditionError(
                "inducing labels must be non-invariant for cuspidal induction"
            )
    cells = frozenset(
        (j, k)
        for j in range(p)
        for k in range(p)
        if model.matching_cell(theta1, theta2, chi, j, k)
    )
    return MatchingMatrix(p, cells)


# ---------------------------------------------------------------------------
# Triple products


@dataclass(frozen=True)
class RSFactor:
    """One Rankin-Selberg factor of the triple product after base change.

    `j` indexes the constituent of the second datum, `k` of the first.  When
    the model supports twisting, `right` already carries the twisting
    character, so `pole_order` equals rs_pole_order(left, right).
    """

    j: int
    k: int
    left: CuspidalLabelK
    right: CuspidalLabelK
    pole_order: int


def _constituent_poles(
    pi1: CuspidalDatumF, pi2: CuspidalDatumF, chi: CuspidalLabelK
) -> Iterator[RSFactor]:
    model = _model_of(chi)
    if pi1.model is not model or pi2.model is not model:
        raise ModelMismatchError("data and twisting label come from different models")
    cons1 = base_change(pi1).constituents
    cons2 = base_change(pi2).constituents
    for j, c2 in enumerate(cons2):
        for k, c1 in enumerate(cons1):
            if model.supports_twist:
                right = model.twist(c2, chi)
                pole = rs_pole_order(c1, right)
            else:
                right = c2
                pole = model.pair_pole(c1, c2, chi)
            yield RSFactor(j=j, k=k, left=c1, right=right, pole_order=pole)


def _check_triple_inputs(pi1: CuspidalDatumF, pi2: CuspidalDatumF, chi: CuspidalLabelK):
    if not pi1.cuspidal or not pi2.cuspidal:
        raise PreconditionError("both data must be cuspidal over the base field")
    if chi.degree != 1:
        raise PreconditionError("twisting label must have degree 1")


def triple_pole_order(
    pi1: CuspidalDatumF, pi2: CuspidalDatumF, chi: CuspidalLabelK
) -> int:
    """Order of the edge pole of the triple product of pi1, pi2 and the
    datum induced from chi.

    Both sides induced: the count of on-cells of the matching matrix (at
    most p, and 0 outright on a degree mismatch).  At most one side induced:
    the sum of the constituent pairings, which is 0 or 1.
    """
    _check_triple_inputs(pi1, pi2, chi)
    if pi1.is_induced and pi2.is_induced:
        t1 = pi1.behavior.theta
        t2 = pi2.behavior.theta
        if t1.degree != t2.degree:
            return 0
        return matching_matrix(t1, t2, chi).ell
    total = sum(f.pole_order for f in _constituent_poles(pi1, pi2, chi))
    if total > 1:
        raise InvariantViolationError(
            "a pairing with a cuspidal-stable side cannot contract twice"
        )
    return total


def factorize(
    pi1: CuspidalDatumF, pi2: CuspidalDatumF, chi: CuspidalLabelK
) -> list[RSFactor]:
    """Full list of Rankin-Selberg factors of the triple product, one per
    constituent pair after base change.

    The factor pole orders always sum to triple_pole_order; a mismatch is an
    internal error.
    """
    _check_triple_inputs(pi1, pi2, chi)
    factors = list(_constituent_poles(pi1, pi2, chi))
    total = sum(f.pole_order for f in factors)
    expected = triple_pole_order(pi1, pi2, chi)
    if total != expected:
        raise InvariantViolationError(
            f"factor poles sum to {total} but the triple pole order is {expected}"
        )
    return factors
