"""Gaussian integer arithmetic, residue systems, ideal characters, and the
conjugation calculus model."""

import cmath
import math

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triplepole.calculus import automorphic_induction, matching_matrix, triple_pole_order
from triplepole.errors import PreconditionError, UnsupportedModulusError
from triplepole.gauss import (
    DirichletChar,
    GaussianHeckeChar,
    GaussianModulus,
    HeckeGaussianModel,
    conjugate_char,
    dirichlet_via_norm,
    gconj,
    gdivmod,
    ggcd,
    gmod,
    gmul,
    gnorm,
    gnormalize,
    ideal_density,
    is_coprime,
    unit_trivial_characters,
)

gaussian = st.tuples(st.integers(-40, 40), st.integers(-40, 40))
nonzero = gaussian.filter(lambda z: z != (0, 0))


# ---------------------------------------------------------------------------
# arithmetic


def test_gmul_and_conj():
    assert gmul((2, 1), (1, 3)) == (-1, 7)
    assert gmul((0, 1), (0, 1)) == (-1, 0)
    assert gconj((3, -4)) == (3, 4)
    assert gnorm((3, 4)) == 25


@settings(max_examples=80, deadline=None)
@given(z=gaussian, w=nonzero)
def test_gdivmod_remainder_is_small(z, w):
    q, r = gdivmod(z, w)
    assert tuple(a + b for a, b in zip(gmul(q, w), r)) == z
    assert 2 * gnorm(r) <= gnorm(w)
    assert gmod(z, w) == r


@settings(max_examples=60, deadline=None)
@given(z=nonzero, w=nonzero)
def test_ggcd_divides_both(z, w):
    d = ggcd(z, w)
    assert gmod(z, d) == (0, 0)
    assert gmod(w, d) == (0, 0)


def test_gnormalize_picks_the_quadrant_associate():
    assert gnormalize((0, 1)) == (1, 0)
    assert gnormalize((-3, 4)) == (4, 3)
    assert gnormalize((0, -7)) == (7, 0)
    assert gnormalize((0, 0)) == (0, 0)


@settings(max_examples=80, deadline=None)
@given(z=nonzero)
def test_gnormalize_identifies_associates(z):
    i_z = (-z[1], z[0])
    forms = {gnormalize(z), gnormalize(i_z), gnormalize(gmul(i_z, (0, 1)))}
    assert len(forms) == 1
    a, b = forms.pop()
    assert a >= 1 and b >= 0


def test_is_coprime():
    assert is_coprime((2, 1), (2, -1))
    assert not is_coprime((5, 0), (2, 1))  # 2+i divides 5


# ---------------------------------------------------------------------------
# residue systems


MODULI = [(1, 0), (3, 0), (7, 0), (2, 1), (3, 2), (5, 0), (9, 0)]


@pytest.mark.parametrize("gen", MODULI)
def test_residue_box_is_complete(gen):
    m = GaussianModulus(gen)
    res = m.residues()
    assert len(res) == m.norm
    assert len(set(res)) == m.norm
    for r in res:
        assert m.reduce(r) == r


@pytest.mark.parametrize("gen", MODULI)
@settings(max_examples=30, deadline=None)
@given(z=gaussian)
def test_reduce_is_congruent(gen, z):
    m = GaussianModulus(gen)
    r = m.reduce(z)
    diff = (z[0] - r[0], z[1] - r[1])
    assert gmod(diff, m.generator) == (0, 0)


def test_even_norm_rejected():
    with pytest.raises(UnsupportedModulusError):
        GaussianModulus((1, 1))
    with pytest.raises(UnsupportedModulusError):
        GaussianModulus((4, 2))
    with pytest.raises(UnsupportedModulusError):
        GaussianModulus((0, 0))


def test_modulus_normalizes_generator():
    assert GaussianModulus((0, 7)).generator == (7, 0)
    assert GaussianModulus((-3, 0)).generator == (3, 0)
    assert GaussianModulus((3, 2)) != GaussianModulus((2, 3))


@pytest.mark.parametrize(
    "gen,count",
    [((1, 0), 1), ((3, 0), 8), ((7, 0), 48), ((2, 1), 4), ((3, 2), 12), ((5, 0), 16), ((9, 0), 72)],
)
def test_unit_counts(gen, count):
    assert len(GaussianModulus(gen).units) == count


def test_unit_structure_shapes():
    assert GaussianModulus((7, 0)).unit_structure[1] == [48]
    assert GaussianModulus((3, 0)).unit_structure[1] == [8]
    assert GaussianModulus((5, 0)).unit_structure[1] == [4, 4]
    assert GaussianModulus((1, 0)).unit_structure[1] == []


def test_conjugation_stability():
    assert GaussianModulus((7, 0)).is_conjugation_stable
    assert GaussianModulus((1, 0)).is_conjugation_stable
    assert not GaussianModulus((2, 1)).is_conjugation_stable
    assert not GaussianModulus((3, 2)).is_conjugation_stable


# ---------------------------------------------------------------------------
# ideal characters


def test_unit_trivial_character_counts():
    # |units| / ord(i mod m) characters survive the i-triviality condition
    assert len(unit_trivial_characters(GaussianModulus((7, 0)))) == 12
    assert len(unit_trivial_characters(GaussianModulus((3, 0)))) == 2
    assert len(unit_trivial_characters(GaussianModulus((2, 1)))) == 1
    assert len(unit_trivial_characters(GaussianModulus((5, 0)))) == 4
    assert len(unit_trivial_characters(GaussianModulus((1, 0)))) == 1


def test_characters_sorted_trivial_first():
    chars = unit_trivial_characters(GaussianModulus((7, 0)))
    assert chars[0].is_trivial
    exps = [c.exps for c in chars]
    assert exps == sorted(exps)
    assert exps == [(4 * k,) for k in range(12)]


def test_character_rejects_i_visible():
    m = GaussianModulus((7, 0))
    with pytest.raises(PreconditionError):
        GaussianHeckeChar(m, (1,))  # exponent 1 does not kill i


def test_character_is_multiplicative():
    m = GaussianModulus((7, 0))
    psi = unit_trivial_characters(m)[2]
    L = m.unit_exponent
    for a in m.units[::5]:
        for b in m.units[::5]:
            lhs = psi.value_exponent(m.unit_mul(a, b))
            rhs = (psi.value_exponent(a) + psi.value_exponent(b)) % L
            assert lhs == rhs


def test_character_value_on_nonunit_raises():
    m = GaussianModulus((7, 0))
    psi = unit_trivial_characters(m)[1]
    with pytest.raises(PreconditionError):
        psi.value((7, 0))


def test_character_group_operations():
    m = GaussianModulus((7, 0))
    chars = unit_trivial_characters(m)
    a, b = chars[1], chars[3]
    assert a.mul(b) == chars[4]
    assert a.mul(a.inverse()).is_trivial
    assert a.pow(3) == chars[3]
    assert a.pow(0).is_trivial
    assert chars[0].order == 1
    assert chars[1].order == 12
    assert chars[6].order == 2
    assert chars[4].order == 3


def test_character_well_defined_on_ideals():
    # the same value at every generator of the same ideal
    m = GaussianModulus((7, 0))
    psi = unit_trivial_characters(m)[1]
    z = (3, 2)
    for assoc in [z, (-z[1], z[0]), (-z[0], -z[1]), (z[1], -z[0])]:
        assert cmath.isclose(psi.value(assoc), psi.value(z))


# ---------------------------------------------------------------------------
# conjugation


def test_conjugate_char_is_frobenius_on_prime_field():
    m = GaussianModulus((7, 0))
    for psi in unit_trivial_characters(m):
        assert conjugate_char(psi) == psi.pow(7)


def test_conjugate_char_involution_stable_modulus():
    for psi in unit_trivial_characters(GaussianModulus((7, 0))):
        assert conjugate_char(conjugate_char(psi)) == psi


def test_conjugate_char_crosses_moduli():
    m = GaussianModulus((3, 2))
    psi = unit_trivial_characters(m)[0]
    moved = conjugate_char(psi)
    assert moved.modulus.generator == (2, 3)
    assert conjugate_char(moved) == psi


def test_conjugate_char_pointwise():
    m = GaussianModulus((7, 0))
    psi = unit_trivial_characters(m)[5]
    bar = conjugate_char(psi)
    for u in m.units[::7]:
        assert bar.value_exponent(m.reduce(gconj(u))) == psi.value_exponent(u)


def test_conjugate_respects_multiplication():
    m = GaussianModulus((7, 0))
    chars = unit_trivial_characters(m)
    for a in chars[:4]:
        for b in chars[:4]:
            assert conjugate_char(a.mul(b)) == conjugate_char(a).mul(conjugate_char(b))


# ---------------------------------------------------------------------------
# Dirichlet characters through the norm


def test_dirichlet_via_norm_quadratic_mod3():
    chi = DirichletChar(3, (1,))
    psi = dirichlet_via_norm(chi)
    assert psi.modulus.generator == (3, 0)
    assert psi.order == 2
    assert cmath.isclose(psi.value((1, 1)), -1)  # norm 2 is not a square mod 3


@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_dirichlet_via_norm_pointwise(m):
    from triplepole.gauss import _rational_unit_structure

    _, orders, _ = _rational_unit_structure(m)
    chi = DirichletChar(m, tuple([1] + [0] * (len(orders) - 1)))
    psi = dirichlet_via_norm(chi)
    mod = psi.modulus
    L_m = orders[0]
    L = mod.unit_exponent
    for u in mod.units:
        expected = chi.value_exponent(gnorm(u) % m)
        got = psi.value_exponent(u)
        # zeta_L^got == zeta_{L_m}^expected, compared exactly as fractions
        assert got * L_m == expected * L


def test_dirichlet_rejects_even_modulus():
    with pytest.raises(UnsupportedModulusError):
        DirichletChar(6, (0,))


def test_dirichlet_trivial_modulus():
    chi = DirichletChar(1, ())
    psi = dirichlet_via_norm(chi)
    assert psi.is_trivial
    assert psi.modulus.norm == 1


# ---------------------------------------------------------------------------
# density


def test_ideal_density_values():
    assert math.isclose(
        ideal_density(GaussianModulus((7, 0))), (math.pi / 4) * 48 / 49
    )
    assert math.isclose(ideal_density(GaussianModulus((1, 0))), math.pi / 4)
    assert math.isclose(ideal_density(GaussianModulus((2, 1))), (math.pi / 4) * 4 / 5)


# ---------------------------------------------------------------------------
# calculus adapter


@pytest.fixture
def model7():
    return HeckeGaussianModel(GaussianModulus((7, 0)))


def test_adapter_requires_stable_modulus():
    with pytest.raises(UnsupportedModulusError):
        HeckeGaussianModel(GaussianModulus((2, 1)))


def test_adapter_demo_matrix(model7):
    t1 = model7.character_label(1)
    chi = model7.character_label(10)
    mat = matching_matrix(t1, t1, chi)
    assert mat.true_cells == [(0, 0), (1, 1)]
    assert mat.ell == 2


def test_adapter_invariant_chi_antidiagonal(model7):
    t1 = model7.character_label(1)
    chi4 = model7.character_label(4)
    assert model7.is_invariant(chi4)
    mat = matching_matrix(t1, t1, chi4)
    assert mat.true_cells == [(0, 1), (1, 0)]


def test_adapter_empty_matrix(model7):
    mat = matching_matrix(
        model7.character_label(1),
        model7.character_label(5),
        model7.character_label(3),
    )
    assert mat.ell == 0


def test_adapter_rejects_invariant_inducer(model7):
    inv = model7.character_label(4)
    with pytest.raises(PreconditionError):
        matching_matrix(inv, model7.character_label(1), model7.character_label(0))


def test_adapter_label_operations(model7):
    lab = model7.character_label(3)
    assert model7.shift(lab, 2) == lab  # conjugation is an involution
    assert model7.shift(model7.shift(lab, 1), 1) == lab
    assert model7.dual(lab).payload == lab.payload.inverse()
    twisted = model7.twist(lab, model7.character_label(2))
    assert twisted.payload == lab.payload.mul(model7.characters[2])
    assert model7.is_isomorphic(lab, model7.character_label(3))
    assert not model7.is_isomorphic(lab, model7.character_label(2))


def test_adapter_full_triple(model7):
    pi1 = automorphic_induction(model7.character_label(1))
    pi2 = automorphic_induction(model7.character_label(1))
    assert triple_pole_order(pi1, pi2, model7.character_label(10)) == 2
    assert triple_pole_order(pi1, pi2, model7.character_label(3)) == 0


def test_adapter_wrong_modulus_label(model7):
    other = GaussianModulus((3, 0))
    psi = unit_trivial_characters(other)[0]
    with pytest.raises(PreconditionError):
        model7.label(psi)


def test_adapter_describe(model7):
    d = model7.describe()
    assert d == {
        "kind": "gaussian",
        "modulus": [7, 0],
        "norm": 49,
        "p": 2,
        "characters": 12,
    }
