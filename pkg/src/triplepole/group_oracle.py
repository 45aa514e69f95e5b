"""Exact character-theory oracle on semidirect products A x| C_p.

The pole calculus predicts a count; this module independently reproduces it
as the multiplicity of the trivial representation in a tensor product of
induced characters, computed by honest full summation in exact cyclotomic
arithmetic.  The bridge between an abelian label model and the oracle is a
duality pairing: model elements index characters of a base group with the
same factors, carrying the dual (scaled-transpose) automorphism.

All values live in Z[zeta_n] for n the exponent of the base group; nothing
here uses floating point except the explicitly flagged fallback path.
"""

from __future__ import annotations

import cmath
import itertools
from dataclasses import dataclass
from functools import cached_property
from math import lcm

import numpy as np

from .cyclotomic import CyclotomicInt, _poly_rem_monic, cyclotomic_polynomial
from .errors import InvariantViolationError, ModelMismatchError, PreconditionError
from .models import AbelianModel, CuspidalLabelK, _mat_apply, _mat_identity, _mat_mul

PAIRING_NOTE = (
    "model elements index base-group characters via the coordinate-wise "
    "root-of-unity pairing; the base group carries the scaled-transpose "
    "(dual) of the model automorphism"
)


def dual_sigma(factors, sigma):
    """The automorphism dual to `sigma` under the coordinate pairing.

    Entry (i, j) is sigma[j][i] * d_i / d_j; the quotient is exact whenever
    `sigma` itself is well defined on the factors, and the result is the
    unique matrix S with pairing(sigma(a), b) = pairing(a, S(b)) for all a, b.
    """
    r = len(factors)
    out = []
    for i in range(r):
        row = []
        for j in range(r):
            num = sigma[j][i] * factors[i]
            if num % factors[j] != 0:
                raise PreconditionError(
                    "sigma is not well defined on the factors; no dual exists"
                )
            row.append((num // factors[j]) % factors[i])
        out.append(tuple(row))
    return tuple(out)


class FiniteGroupModel:
    """The semidirect product of an abelian base by a cyclic p-group.

    Elements are pairs (a, t) with a in the base and t in Z/p, multiplying as
    (a, t)(a', t') = (a + sigma^t a', t + t').  The base is prod Z/d_i and
    sigma's order must divide p.
    """

    def __init__(self, factors, sigma, p: int):
        factors = tuple(int(d) for d in factors)
        if not factors or any(d < 1 for d in factors):
            raise PreconditionError("factors must be positive integers")
        if p < 1:
            raise PreconditionError("p must be a positive integer")
        r = len(factors)
        if len(sigma) != r or any(len(row) != r for row in sigma):
            raise PreconditionError("sigma must be a square matrix over the factors")
        sigma = tuple(
            tuple(int(sigma[i][j]) % factors[i] for j in range(r)) for i in range(r)
        )
        for i in range(r):
            for j in range(r):
                if (factors[j] * sigma[i][j]) % factors[i] != 0:
                    raise PreconditionError(
                        f"sigma entry ({i},{j}) does not define a map on the factors"
                    )
        power = sigma
        for _ in range(p - 1):
            power = _mat_mul(power, sigma, factors)
        if power != _mat_identity(factors):
            raise PreconditionError("sigma order does not divide p")
        self.factors = factors
        self.sigma = sigma
        self.p = p
        self.nexp = lcm(*factors)
        self.base_order = 1
        for d in factors:
            self.base_order *= d
        self.order = p * self.base_order
        self._base = list(itertools.product(*(range(d) for d in factors)))
        self._base_index = {a: i for i, a in enumerate(self._base)}
        powers = [_mat_identity(factors)]
        for _ in range(p - 1):
            powers.append(_mat_mul(powers[-1], sigma, factors))
        self._sigma_powers = powers
        # sigma_index[t][i]: base index of sigma^t applied to base element i
        self.sigma_index = [
            [self._base_index[_mat_apply(m, factors, a)] for a in self._base]
            for m in powers
        ]

    @property
    def identity(self):
        return ((0,) * len(self.factors), 0)

    def base_elements(self):
        return list(self._base)

    def elements(self):
        return [(a, t) for t in range(self.p) for a in self._base]

    def sigma_apply(self, a, t: int = 1):
        return _mat_apply(self._sigma_powers[t % self.p], self.factors, a)

    def mul(self, g, h):
        (a, t), (b, s) = g, h
        shifted = self.sigma_apply(b, t)
        summed = tuple((x + y) % d for x, y, d in zip(a, shifted, self.factors))
        return (summed, (t + s) % self.p)

    def inv(self, g):
        a, t = g
        neg = tuple((-x) % d for x, d in zip(a, self.factors))
        return (self.sigma_apply(neg, -t), (-t) % self.p)

    @cached_property
    def conjugacy_classes(self) -> list[frozenset]:
        seen = set()
        classes = []
        all_elements = self.elements()
        for g in all_elements:
            if g in seen:
                continue
            cls = {self.mul(self.mul(x, g), self.inv(x)) for x in all_elements}
            seen |= cls
            classes.append(frozenset(cls))
        return classes


def build_semidirect(factors, sigma, p: int) -> FiniteGroupModel:
    """Construct the semidirect product, validating that sigma's order
    divides p (the identity automorphism gives the direct product)."""
    return FiniteGroupModel(factors, sigma, p)


class CharacterOfA:
    """A character of the abelian base, given by an exponent vector.

    The value at a is zeta_n ^ (sum_i e_i a_i (n / d_i)) for n the base
    exponent: the coordinate-wise root-of-unity pairing.
    """

    def __init__(self, group: FiniteGroupModel, exponents):
        if len(exponents) != len(group.factors):
            raise PreconditionError("exponent arity does not match the base factors")
        exponents = tuple(int(e) % d for e, d in zip(exponents, group.factors))
        self.group = group
        self.exponents = exponents
        n = group.nexp
        weights = [n // d for d in group.factors]
        self._exp_by_index = [
            sum(e * a * w for e, a, w in zip(exponents, a_coords, weights)) % n
            for a_coords in group.base_elements()
        ]

    def value_exponent(self, a) -> int:
        return self._exp_by_index[self.group._base_index[a]]

    def value(self, a) -> CyclotomicInt:
        return CyclotomicInt.root(self.group.nexp, self.value_exponent(a))

    @cached_property
    def order(self) -> int:
        k = 1
        acc = self.exponents
        zero = (0,) * len(acc)
        while acc != zero:
            acc = tuple((e + f) % d for e, f, d in zip(acc, self.exponents, self.group.factors))
            k += 1
        return k


def characters_of_base(group: FiniteGroupModel) -> list[CharacterOfA]:
    return [
        CharacterOfA(group, exps)
        for exps in itertools.product(*(range(d) for d in group.factors))
    ]


class ClassFunction:
    """A map G -> Z[zeta_n], stored on every element, constant on classes."""

    def __init__(self, group: FiniteGroupModel, values: dict, check: bool = True):
        self.group = group
        self.values = values
        if len(values) != group.order:
            raise PreconditionError("class function must be defined on all of G")
        if check:
            for cls in group.conjugacy_classes:
                rep = next(iter(cls))
                for g in cls:
                    if values[g] != values[rep]:
                        raise InvariantViolationError(
                            "values are not constant on a conjugacy class"
                        )

    def __call__(self, g) -> CyclotomicInt:
        return self.values[g]


def trivial_class_function(group: FiniteGroupModel) -> ClassFunction:
    one = CyclotomicInt.one(group.nexp)
    return ClassFunction(group, {g: one for g in group.elements()}, check=False)


def induced_character(lam: CharacterOfA, group: FiniteGroupModel) -> ClassFunction:
    """Character of the representation induced from the base: zero off the
    base, and the sum of `lam` over the sigma-orbit on it."""
    if lam.group is not group:
        raise ModelMismatchError("character belongs to a different group")
    n = group.nexp
    zero = CyclotomicInt.zero(n)
    values = {}
    for a in group.base_elements():
        val = CyclotomicInt.from_monomials(
            n, [(lam.value_exponent(group.sigma_apply(a, t)), 1) for t in range(group.p)]
        )
        values[(a, 0)] = val
        for t in range(1, group.p):
            values[(a, t)] = zero
    return ClassFunction(group, values, check=False)


def inner_product(f: ClassFunction, g: ClassFunction) -> int:
    """The character inner product (1/|G|) sum f * conj(g); certified exact
    integer (a genuine multiplicity for genuine characters)."""
    if f.group is not g.group:
        raise ModelMismatchError("class functions live on different groups")
    G = f.group
    total = CyclotomicInt.zero(G.nexp)
    for x in G.elements():
        total = total + f(x) * g(x).conjugate()
    value = total.as_integer()
    if value % G.order != 0:
        raise InvariantViolationError(
            f"inner product sum {value} is not divisible by |G| = {G.order}"
        )
    return value // G.order


def trivial_multiplicity(
    lambda1: CharacterOfA,
    lambda2: CharacterOfA,
    chi: CharacterOfA,
    group: FiniteGroupModel,
    exact: bool = True,
) -> int:
    """Multiplicity of the trivial representation in the tensor product of
    the three induced characters: (1/|G|) sum over G of their value product.

    The exact path accumulates the full sum in cyclotomic coefficient form
    (the induced characters vanish off the base, so those terms contribute
    nothing) and certifies the result as an integer divisible by |G|.  The
    float path is a performance experiment only.
    """
    for lam in (lambda1, lambda2, chi):
        if lam.group is not group:
            raise ModelMismatchError("character belongs to a different group")
    p, n = group.p, group.nexp
    nbase = group.base_order
    sig = group.sigma_index
    tabs = []
    for lam in (lambda1, lambda2, chi):
        raw = lam._exp_by_index
        tabs.append([[raw[sig[t][i]] for i in range(nbase)] for t in range(p)])
    e1, e2, e3 = tabs

    if not exact:
        roots = [cmath.exp(2j * cmath.pi * e / n) for e in range(n)]
        total = 0.0 + 0.0j
        for i in range(nbase):
            v1 = sum(roots[e1[t][i]] for t in range(p))
            v2 = sum(roots[e2[t][i]] for t in range(p))
            v3 = sum(roots[e3[t][i]] for t in range(p))
            total += v1 * v2 * v3
        approx = total / group.order
        nearest = round(approx.real)
        if abs(approx - nearest) > 1e-6:
            raise InvariantViolationError(
                f"float multiplicity {approx} is not near an integer"
            )
        return int(nearest)

    coeffs = [0] * n
    for i in range(nbase):
        row1 = [e1[t][i] for t in range(p)]
        row2 = [e2[t][i] for t in range(p)]
        row3 = [e3[t][i] for t in range(p)]
        for x in row1:
            for y in row2:
                xy = x + y
                for z in row3:
                    coeffs[(xy + z) % n] += 1
    value = CyclotomicInt(n, tuple(coeffs)).as_integer()
    if value % group.order != 0:
        raise InvariantViolationError(
            f"summation {value} is not divisible by |G| = {group.order}"
        )
    return value // group.order


# ---------------------------------------------------------------------------
# Projection formula


def projection_formula_check(
    V: ClassFunction, W: CharacterOfA, group: FiniteGroupModel
) -> bool:
    """Verify Ind(Res(V) * W) = V * Ind(W) value-by-value, exactly.

    Both sides are computed independently: the left by inducing the product
    of V's restriction with W, the right by pointwise multiplication with the
    induced character of W.
    """
    if V.group is not group or W.group is not group:
        raise ModelMismatchError("inputs belong to a different group")
    ind_w = induced_character(W, group)
    n = group.nexp
    zero = CyclotomicInt.zero(n)
    for g in group.elements():
        a, t = g
        if t != 0:
            lhs = zero
        else:
            lhs = zero
            for s in range(group.p):
                sa = group.sigma_apply(a, s)
                lhs = lhs + V((sa, 0)) * W.value(sa)
        rhs = V(g) * ind_w(g)
        if lhs != rhs:
            return False
    return True


def projection_formula_sweep(group: FiniteGroupModel) -> dict:
    """Run the projection-formula identity over every pair (V = induced
    character, W = base character) of the group.

    Both sides are monomial sums; the sweep compares their sorted exponent
    multisets, which is a sufficient condition for equality in the
    cyclotomic ring.  Any pair failing the multiset test is re-verified by
    the exact value-by-value check before being reported as a failure.
    """
    nbase, p, n = group.base_order, group.p, group.nexp
    coords = np.array(group.base_elements(), dtype=np.int64)
    weights = np.array([n // d for d in group.factors], dtype=np.int64)
    # E[lam, a]: exponent of character lam at base element a
    E = (coords * weights) @ coords.T % n
    sig = np.array(group.sigma_index, dtype=np.int64)  # (p, nbase)
    sig2 = sig[:, sig]  # sig2[s, t, a] = sigma^s(sigma^t(a))
    failures = []
    checked = 0
    chars = None
    for v_idx in range(nbase):
        # LHS at a: exponents E[v, sigma^s sigma^t a] + E[w, sigma^t a]
        lhs_v = E[v_idx][sig2]  # (p, p, nbase)
        rhs_v = E[v_idx][sig]  # (s, nbase)
        w_part = E[:, sig]  # (nbase_w, t, nbase)
        lhs = (lhs_v[None, :, :, :] + w_part[:, None, :, :]) % n
        rhs = (rhs_v[None, :, None, :] + w_part[:, None, :, :]) % n
        lhs_sorted = np.sort(lhs.reshape(nbase, p * p, nbase), axis=1)
        rhs_sorted = np.sort(rhs.reshape(nbase, p * p, nbase), axis=1)
        agree = np.all(lhs_sorted == rhs_sorted, axis=(1, 2))
        checked += nbase
        for w_idx in np.nonzero(~agree)[0]:
            if chars is None:
                chars = characters_of_base(group)
            V = induced_character(chars[v_idx], group)
            if not projection_formula_check(V, chars[int(w_idx)], group):
                failures.append({"v": v_idx, "w": int(w_idx)})
    return {"checked": checked, "failures": failures}


# ---------------------------------------------------------------------------
# Calculus-vs-oracle comparison


@dataclass(frozen=True)
class OracleComparison:
    ell: int | None
    multiplicity: int
    equal: bool | None
    precondition_violated: bool
    pairing: str
    p: int
    group_order: int

    def to_dict(self) -> dict:
        return {
            "ell": self.ell,
            "multiplicity": self.multiplicity,
            "equal": self.equal,
            "precondition_violated": self.precondition_violated,
            "pairing": self.pairing,
            "p": self.p,
            "group_order": self.group_order,
        }


def oracle_group(model: AbelianModel) -> FiniteGroupModel:
    """The semidirect product the oracle pairs with an abelian model: same
    factors, dual automorphism."""
    return build_semidirect(model.factors, dual_sigma(model.factors, model.sigma), model.p)


def oracle_compare(
    model: AbelianModel,
    theta1: CuspidalLabelK,
    theta2: CuspidalLabelK,
    chi: CuspidalLabelK,
) -> OracleComparison:
    """Compare the calculus pole count against the oracle multiplicity.

    When an inducing label is shift-invariant the calculus refuses the
    input; the oracle still computes its multiplicity and the report says
    the precondition was violated instead of carrying a verdict.
    """
    from .calculus import matching_matrix

    for lab in (theta1, theta2, chi):
        if lab.model is not model:
            raise ModelMismatchError("label does not belong to the model under test")
    G = oracle_group(model)
    lam1 = CharacterOfA(G, theta1.payload)
    lam2 = CharacterOfA(G, theta2.payload)
    lam3 = CharacterOfA(G, chi.payload)
    multiplicity = trivial_multiplicity(lam1, lam2, lam3, G)
    violated = model.is_invariant(theta1) or model.is_invariant(theta2)
    if violated:
        return OracleComparison(
            ell=None,
            multiplicity=multiplicity,
            equal=None,
            precondition_violated=True,
            pairing=PAIRING_NOTE,
            p=model.p,
            group_order=G.order,
        )
    ell = matching_matrix(theta1, theta2, chi).ell
    return OracleComparison(
        ell=ell,
        multiplicity=multiplicity,
        equal=(ell == multiplicity),
        precondition_violated=False,
        pairing=PAIRING_NOTE,
        p=model.p,
        group_order=G.order,
    )


def _remainder_matrix(n: int) -> np.ndarray:
    """Row e: coefficients of x^e reduced modulo the n-th cyclotomic
    polynomial.  Reduction is linear, so a monomial-count vector times this
    matrix is the reduced form of the corresponding cyclotomic sum."""
    phi = list(cyclotomic_polynomial(n))
    deg = len(phi) - 1
    rows = []
    for e in range(n):
        mono = [0] * (e + 1)
        mono[e] = 1
        rem = _poly_rem_monic(mono, phi)
        rem = rem + [0] * (deg - len(rem))
        rows.append(rem)
    return np.array(rows, dtype=np.int64)


def oracle_agreement_sweep(model: AbelianModel) -> dict:
    """Criterion-level agreement check: for every valid triple of the model,
    the oracle's trivial multiplicity must equal the matching-matrix count.

    This is the same full summation trivial_multiplicity performs, run for
    all twisting characters of a pair at once: monomial exponents are
    accumulated into count vectors, reduced by the exact cyclotomic
    remainder matrix, certified integer, and divided by |G|.
    """
    from .sweep import _FastTables, _pair_buckets

    G = oracle_group(model)
    p, n, nbase = G.p, G.nexp, G.base_order
    coords = np.array(G.base_elements(), dtype=np.int64)
    weights = np.array([n // d for d in G.factors], dtype=np.int64)
    sig = np.array(G.sigma_index, dtype=np.int64)
    # E[a, t, b]: exponent of the character indexed by model element a at
    # sigma^t of base element b
    pair_exp = (coords * weights) @ coords.T % n  # (char, base)
    E = pair_exp[:, sig]  # (char, p, base)
    R = _remainder_matrix(n)
    deg = R.shape[1]

    tables = _FastTables(model)
    mismatches = []
    triples = 0
    for i1 in tables.noninv:
        E1 = E[i1]  # (p, base)
        for i2 in tables.noninv:
            E2 = E[i2]
            d12 = (E1[:, None, :] + E2[None, :, :]).reshape(p * p, nbase)
            # combined[c, t1t2, t3, b] exponent sums for every chi at once
            combined = (d12[None, :, None, :] + E[:, None, :, :]) % n
            flat = combined.reshape(nbase, -1)
            counts = np.zeros((nbase, n), dtype=np.int64)
            for c in range(nbase):
                counts[c] = np.bincount(flat[c], minlength=n)
            reduced = counts @ R
            if deg > 1 and np.any(reduced[:, 1:]):
                raise InvariantViolationError("oracle sum is not a rational integer")
            sums = reduced[:, 0]
            if np.any(sums % G.order):
                raise InvariantViolationError("oracle sum is not divisible by |G|")
            mult = sums // G.order

            buckets = _pair_buckets(tables, i1, i2)
            ells = np.zeros(nbase, dtype=np.int64)
            for ic, cells in buckets.items():
                ells[ic] = len(cells)
            triples += nbase
            bad = np.nonzero(mult != ells)[0]
            for c in bad:
                mismatches.append(
                    {
                        "theta1": list(model.decode(i1)),
                        "theta2": list(model.decode(i2)),
                        "chi": list(model.decode(int(c))),
                        "ell": int(ells[c]),
                        "multiplicity": int(mult[c]),
                    }
                )
    return {
        "model": model.describe(),
        "group_order": G.order,
        "triples": triples,
        "mismatches": mismatches,
        "pairing": PAIRING_NOTE,
    }
