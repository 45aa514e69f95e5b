"""Hecke characters of the Gaussian field and their pole calculus model.

Gaussian integers are plain tuples (a, b) meaning a + bi.  A nonzero ideal
has exactly one generator with a >= 1 and b >= 0, which is the normal form
used throughout.  Finite-order ideal characters modulo m are the characters
of the unit group of Z[i]/(m) that are trivial on the image of i; they form
the numeric side of the cross-verification, with complex conjugation as the
order-2 Galois action.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, lru_cache

from .char_group import abelian_basis
from .errors import (
    InvalidTwistError,
    PreconditionError,
    UnsupportedModulusError,
)
from .models import CuspidalLabelK


# ---------------------------------------------------------------------------
# Gaussian integer arithmetic on (a, b) tuples


def gmul(z, w):
    return (z[0] * w[0] - z[1] * w[1], z[0] * w[1] + z[1] * w[0])


def gconj(z):
    return (z[0], -z[1])


def gnorm(z) -> int:
    return z[0] * z[0] + z[1] * z[1]


def _round_half_up(num: int, den: int) -> int:
    # nearest integer to num/den, ties toward +infinity; den > 0
    return (2 * num + den) // (2 * den)


def gdivmod(z, w):
    """Nearest-integer quotient and remainder; the remainder has norm at
    most half the divisor's, which is what makes the Euclidean walk finite."""
    n = gnorm(w)
    if n == 0:
        raise ZeroDivisionError("division by the zero Gaussian integer")
    num = gmul(z, gconj(w))
    q = (_round_half_up(num[0], n), _round_half_up(num[1], n))
    r = (z[0] - (q[0] * w[0] - q[1] * w[1]), z[1] - (q[0] * w[1] + q[1] * w[0]))
    return q, r


def gmod(z, w):
    return gdivmod(z, w)[1]


def ggcd(z, w):
    while gnorm(w):
        z, w = w, gmod(z, w)
    return z


def gnormalize(z):
    """The unique associate with a >= 1 and b >= 0 (zero stays zero)."""
    if z == (0, 0):
        return z
    for _ in range(4):
        if z[0] >= 1 and z[1] >= 0:
            return z
        z = (-z[1], z[0])  # multiply by i
    raise AssertionError("unreachable: some associate is in the closed quadrant")


def is_coprime(z, w) -> bool:
    return gnorm(ggcd(z, w)) == 1


# ---------------------------------------------------------------------------
# residue systems


class GaussianModulus:
    """The quotient ring Z[i]/(m) with a canonical residue box.

    The ideal lattice has a triangular basis u = (N/g, 0), v = (w, g) with
    g = gcd(a, b), so representatives are the pairs (x, y) with
    0 <= x < N/g and 0 <= y < g.  Even-norm moduli are rejected (the
    ramified prime divides them), except the unit ideal itself.
    """

    def __init__(self, generator):
        gen = gnormalize((int(generator[0]), int(generator[1])))
        if gen == (0, 0):
            raise UnsupportedModulusError("modulus must be a nonzero ideal")
        n = gnorm(gen)
        if n % 2 == 0:
            raise UnsupportedModulusError(
                "even-norm moduli are not supported; the ramified prime is excluded"
            )
        self.generator = gen
        self.norm = n
        a, b = gen
        g = math.gcd(a, b)
        self.g = g
        self.x_span = n // g
        # v = alpha*m + beta*i*m with y-component g; then x-component is w
        alpha, beta = _bezout(b, a)
        self.v = (alpha * a - beta * b, g)

    def __repr__(self):
        return f"GaussianModulus({self.generator})"

    def __eq__(self, other):
        return isinstance(other, GaussianModulus) and other.generator == self.generator

    def __hash__(self):
        return hash(("GaussianModulus", self.generator))

    @property
    def is_conjugation_stable(self) -> bool:
        return gnormalize(gconj(self.generator)) == self.generator

    def reduce(self, z):
        """Canonical representative of z modulo the ideal."""
        x, y = int(z[0]), int(z[1])
        c = y // self.g
        x -= c * self.v[0]
        y -= c * self.g
        return (x % self.x_span, y)

    def residues(self):
        return [(x, y) for y in range(self.g) for x in range(self.x_span)]

    @cached_property
    def units(self) -> list:
        gen = self.generator
        return [r for r in self.residues() if is_coprime(r, gen)]

    @cached_property
    def _unit_index(self) -> dict:
        return {u: i for i, u in enumerate(self.units)}

    def unit_mul(self, a, b):
        return self.reduce(gmul(a, b))

    @cached_property
    def unit_structure(self):
        """(basis, invariant factor orders, log table) of the unit group."""
        one = self.reduce((1, 0))
        return abelian_basis(self.units, self.unit_mul, one)

    @property
    def unit_exponent(self) -> int:
        orders = self.unit_structure[1]
        return orders[0] if orders else 1

    @cached_property
    def i_image(self):
        return self.reduce((0, 1))


def _bezout(x: int, y: int) -> tuple[int, int]:
    # alpha*x + beta*y == gcd(x, y)
    old_r, r = x, y
    old_s, s = 1, 0
    old_t, t = 0, 1
    while r:
        q = old_r // r
        old_r, r = r, old_r - q * r
        old_s, s = s, old_s - q * s
        old_t, t = t, old_t - q * t
    return old_s, old_t


# ---------------------------------------------------------------------------
# ideal characters


class GaussianHeckeChar:
    """A finite-order ideal character modulo m.

    Stored as an exponent vector over the invariant-factor basis of the unit
    group; the character must kill the image of i, which is exactly the
    condition for chi(generator) to be independent of the generator choice,
    so values are well defined on ideals.
    """

    def __init__(self, modulus: GaussianModulus, exps, check: bool = True):
        basis, orders, log = modulus.unit_structure
        if len(exps) != len(orders):
            raise PreconditionError("exponent arity does not match the unit basis")
        self.modulus = modulus
        self.exps = tuple(int(e) % t for e, t in zip(exps, orders))
        self._orders = orders
        self._L = modulus.unit_exponent
        self._log = log
        if check and self.value_exponent(modulus.i_image) != 0:
            raise PreconditionError(
                "character does not kill the image of i; it is not an ideal character"
            )

    def __repr__(self):
        return f"GaussianHeckeChar({self.modulus.generator}, {self.exps})"

    def __eq__(self, other):
        return (
            isinstance(other, GaussianHeckeChar)
            and other.modulus == self.modulus
            and other.exps == self.exps
        )

    def __hash__(self):
        return hash((self.modulus.generator, self.exps))

    @property
    def is_trivial(self) -> bool:
        return all(e == 0 for e in self.exps)

    def value_exponent(self, unit) -> int:
        """Exponent e with value zeta_L^e at a unit residue."""
        coords = self._log.get(unit)
        if coords is None:
            raise PreconditionError(f"{unit} is not a unit modulo the ideal")
        L = self._L
        return sum(e * c * (L // t) for e, c, t in zip(self.exps, coords, self._orders)) % L

    def value(self, z) -> complex:
        """Value at any Gaussian integer coprime to the modulus."""
        e = self.value_exponent(self.modulus.reduce(z))
        return complex(
            math.cos(2 * math.pi * e / self._L), math.sin(2 * math.pi * e / self._L)
        )

    @cached_property
    def order(self) -> int:
        out = 1
        for e, t in zip(self.exps, self._orders):
            out = math.lcm(out, t // math.gcd(e, t))
        return out

    def mul(self, other: "GaussianHeckeChar") -> "GaussianHeckeChar":
        if other.modulus != self.modulus:
            raise PreconditionError("characters live on different moduli")
        exps = tuple((a + b) % t for a, b, t in zip(self.exps, other.exps, self._orders))
        return GaussianHeckeChar(self.modulus, exps, check=False)

    def inverse(self) -> "GaussianHeckeChar":
        exps = tuple((-a) % t for a, t in zip(self.exps, self._orders))
        return GaussianHeckeChar(self.modulus, exps, check=False)

    def pow(self, k: int) -> "GaussianHeckeChar":
        exps = tuple((a * k) % t for a, t in zip(self.exps, self._orders))
        return GaussianHeckeChar(self.modulus, exps, check=False)


def unit_trivial_characters(modulus: GaussianModulus) -> list[GaussianHeckeChar]:
    """All ideal characters modulo m, in ascending exponent order (the
    trivial character first).  There are |units| / ord(i mod m) of them."""
    import itertools

    _, orders, _ = modulus.unit_structure
    out = []
    for exps in itertools.product(*(range(t) for t in orders)):
        cand = GaussianHeckeChar(modulus, exps, check=False)
        if cand.value_exponent(modulus.i_image) == 0:
            out.append(cand)
    return out


def _solve_exponents(modulus: GaussianModulus, value_exp_of_basis) -> tuple[int, ...]:
    """Exponent vector of the character of the unit group whose value at
    basis generator j is zeta_L^{value_exp_of_basis[j]}."""
    _, orders, _ = modulus.unit_structure
    L = modulus.unit_exponent
    exps = []
    for v, t in zip(value_exp_of_basis, orders):
        step = L // t
        if v % step != 0:
            raise PreconditionError(
                "values do not define a character of the stated orders"
            )
        exps.append((v // step) % t)
    return tuple(exps)


def conjugate_char(psi: GaussianHeckeChar) -> GaussianHeckeChar:
    """The character z -> psi(conj z), living on the conjugate modulus.

    For a conjugation-stable modulus this is the Galois action on ideal
    characters; it is always an involution.
    """
    src = psi.modulus
    dst = src if src.is_conjugation_stable else GaussianModulus(gconj(src.generator))
    basis, _, _ = dst.unit_structure
    vals = [psi.value_exponent(src.reduce(gconj(g))) for g in basis]
    exps = _solve_exponents(dst, vals)
    return GaussianHeckeChar(dst, exps, check=False)


# ---------------------------------------------------------------------------
# Dirichlet characters through the norm


@dataclass(frozen=True)
class DirichletChar:
    """A character of (Z/m)^* as an exponent vector over the invariant-factor
    basis of the unit group, for odd m."""

    m: int
    exps: tuple

    def __post_init__(self):
        if self.m < 1 or self.m % 2 == 0:
            raise UnsupportedModulusError("only odd moduli are supported")
        _, orders, _ = _rational_unit_structure(self.m)
        if len(self.exps) != len(orders):
            raise PreconditionError("exponent arity does not match the unit basis")
        object.__setattr__(
            self, "exps", tuple(int(e) % t for e, t in zip(self.exps, orders))
        )

    def value_exponent(self, n: int) -> int:
        _, orders, log = _rational_unit_structure(self.m)
        coords = log.get(n % self.m)
        if coords is None:
            raise PreconditionError(f"{n} is not a unit modulo {self.m}")
        L = orders[0] if orders else 1
        return sum(e * c * (L // t) for e, c, t in zip(self.exps, coords, orders)) % L


@lru_cache(maxsize=None)
def _rational_unit_structure(m: int):
    if m == 1:
        return abelian_basis([0], lambda a, b: 0, 0)
    elements = [x for x in range(1, m) if math.gcd(x, m) == 1]
    return abelian_basis(elements, lambda a, b: (a * b) % m, 1)


def dirichlet_via_norm(chi: DirichletChar) -> GaussianHeckeChar:
    """Pull a Dirichlet character back through the norm map: the ideal
    character psi(z) = chi(N(z) mod m) on the modulus (m).

    The norm is surjective onto (Z/m)^* for odd m, so the rational exponent
    L_m divides the Gaussian one and the value rescale below is exact.
    """
    modulus = GaussianModulus((chi.m, 0))
    basis, _, _ = modulus.unit_structure
    _, r_orders, _ = _rational_unit_structure(chi.m)
    L_m = r_orders[0] if r_orders else 1
    L = modulus.unit_exponent
    if L % L_m != 0:
        raise PreconditionError("norm map does not carry the rational exponent")
    scale = L // L_m
    vals = [chi.value_exponent(gnorm(g) % chi.m) * scale for g in basis]
    exps = _solve_exponents(modulus, vals)
    return GaussianHeckeChar(modulus, exps, check=False)


# ---------------------------------------------------------------------------
# density


def ideal_density(modulus: GaussianModulus) -> float:
    """Limit of (ideals of norm <= X coprime to m) / X: pi/4 scaled by the
    coprime fraction of the residue ring."""
    return (math.pi / 4.0) * len(modulus.units) / modulus.norm


# ---------------------------------------------------------------------------
# calculus adapter


class HeckeGaussianModel:
    """Label model whose elements are ideal characters modulo a fixed
    conjugation-stable ideal, with conjugation as the degree-2 Galois action.

    Matching cells multiply characters instead of adding exponents; the
    trivial character plays the role of zero.
    """

    p = 2
    supports_twist = True
    enforces_noninvariance = True

    def __init__(self, modulus: GaussianModulus):
        if not modulus.is_conjugation_stable:
            raise UnsupportedModulusError(
                "the Galois action needs a conjugation-stable modulus"
            )
        self.modulus = modulus

    def __repr__(self):
        return f"HeckeGaussianModel({self.modulus.generator})"

    @cached_property
    def characters(self) -> list[GaussianHeckeChar]:
        return unit_trivial_characters(self.modulus)

    def label(self, psi: GaussianHeckeChar) -> CuspidalLabelK:
        if psi.modulus != self.modulus:
            raise PreconditionError("character modulus does not match the model")
        return CuspidalLabelK(model=self, degree=1, payload=psi)

    def character_label(self, index: int) -> CuspidalLabelK:
        return self.label(self.characters[index])

    def _payload(self, lab: CuspidalLabelK) -> GaussianHeckeChar:
        return lab.payload

    def shift(self, lab: CuspidalLabelK, t: int) -> CuspidalLabelK:
        psi = lab.payload
        return self.label(conjugate_char(psi) if t % 2 else psi)

    def dual(self, lab: CuspidalLabelK) -> CuspidalLabelK:
        return self.label(lab.payload.inverse())

    def twist(self, lab: CuspidalLabelK, chi: CuspidalLabelK) -> CuspidalLabelK:
        if chi.degree != 1:
            raise InvalidTwistError("twisting label must have degree 1")
        return self.label(lab.payload.mul(chi.payload))

    def is_isomorphic(self, a: CuspidalLabelK, b: CuspidalLabelK) -> bool:
        return a.payload == b.payload

    def is_invariant(self, lab: CuspidalLabelK) -> bool:
        return conjugate_char(lab.payload) == lab.payload

    def matching_cell(self, theta1, theta2, chi, j: int, k: int) -> bool:
        psi = self._shifted(theta2, j).mul(self._shifted(theta1, k)).mul(chi.payload)
        return psi.is_trivial

    def _shifted(self, lab: CuspidalLabelK, t: int) -> GaussianHeckeChar:
        return conjugate_char(lab.payload) if t % 2 else lab.payload

    def describe(self) -> dict:
        return {
            "kind": "gaussian",
            "modulus": list(self.modulus.generator),
            "norm": self.modulus.norm,
            "p": 2,
            "characters": len(self.characters),
        }
