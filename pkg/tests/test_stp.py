import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from dfmat.errors import ModeMismatch, MuMismatch
from dfmat.matrix_core import FLOAT, Matrix, inverse, kron, transpose
from dfmat.multipliers import BUILTIN, Identity, MeanOnes
from dfmat.sampling import random_matrix, random_nonsingular
from dfmat.stp import CLASSICAL, LEFT, RIGHT, StpVariant, stp, stp_add, stp_mul, stp_sub, variant

from oracles import stp_obj

M = Matrix.from_rows
VARIANTS = [StpVariant(side, fam) for side in (LEFT, RIGHT) for fam in BUILTIN]
IDS = [f"{v.side}-{v.family.name}" for v in VARIANTS]


def test_classical_example():
    got = stp_mul(CLASSICAL, M([[1, 2]]), M([[1, 2, 3, 4]]))
    assert got == M([[1, 2, 2, 4, 3, 6, 4, 8]])


def test_add_example():
    assert stp_add(CLASSICAL, M([[1]]), Matrix.identity(2)) == M([[2, 0], [0, 2]])


def test_matching_dimensions_is_ordinary_product():
    a, b = M([[1, 2], [3, 4]]), M([[0, 1], [1, 0]])
    for v in VARIANTS:
        assert stp_mul(v, a, b) == a @ b


def test_add_rejects_different_slices():
    with pytest.raises(MuMismatch):
        stp_add(CLASSICAL, M([[1, 2]]), Matrix.identity(2))


def test_mode_mismatch():
    with pytest.raises(ModeMismatch):
        stp(M([[1]]), M([[1]], FLOAT))


def test_variant_from_short_names():
    assert variant("r", "mean") == StpVariant(RIGHT, MeanOnes)
    assert variant() == CLASSICAL
    with pytest.raises(ValueError):
        variant("x")
    with pytest.raises(ValueError):
        StpVariant("up", Identity)


@pytest.mark.parametrize("v", VARIANTS, ids=IDS)
def test_against_object_array_oracle(v):
    rng = random.Random(11)
    for _ in range(40):
        a = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        b = random_matrix(rng, rng.randint(1, 4), rng.randint(1, 4))
        assert stp_mul(v, a, b) == stp_obj(a, b, v.side, v.family.kind)


@pytest.mark.parametrize("v", VARIANTS, ids=IDS)
def test_laws(v):
    rng = random.Random(5)
    for _ in range(30):
        d = [rng.randint(1, 4) for _ in range(6)]
        a, b, c = random_matrix(rng, d[0], d[1]), random_matrix(rng, d[2], d[3]), random_matrix(rng, d[4], d[5])
        assert stp_mul(v, stp_mul(v, a, b), c) == stp_mul(v, a, stp_mul(v, b, c))
        assert transpose(stp_mul(v, a, b)) == stp_mul(v, transpose(b), transpose(a))
        b2 = random_matrix(rng, d[2], d[3])
        assert stp_mul(v, a, b + b2) == stp_mul(v, a, b) + stp_mul(v, a, b2)
        a2 = random_matrix(rng, d[0], d[1])
        assert stp_mul(v, a + a2, b) == stp_mul(v, a, b) + stp_mul(v, a2, b)


@pytest.mark.parametrize("side", [LEFT, RIGHT])
def test_inverse_law_identity_family(side):
    v = StpVariant(side, Identity)
    rng = random.Random(3)
    for _ in range(30):
        a, b = random_nonsingular(rng, rng.randint(1, 3)), random_nonsingular(rng, rng.randint(1, 3))
        assert inverse(stp_mul(v, a, b)) == stp_mul(v, inverse(b), inverse(a))


def test_add_sub_round_trip():
    rng = random.Random(9)
    for v in VARIANTS:
        a, b = random_matrix(rng, 2, 2), random_matrix(rng, 4, 4)
        s = stp_add(v, a, b)
        assert s.shape == (4, 4)
        assert stp_sub(v, s, b) == stp_add(v, a, Matrix.zeros(4, 4))


def test_zero_is_not_unique():
    z1, z2 = Matrix.zeros(1, 1), Matrix.zeros(2, 2)
    a = M([[1, 2], [3, 4]])
    assert stp_add(CLASSICAL, a, z1) == a and stp_add(CLASSICAL, a, z2) == a
    assert z1 != z2


@given(st.integers(1, 3), st.integers(1, 3), st.integers(1, 4))
def test_vector_times_lift(m, n, k):
    rng = random.Random(m * 100 + n * 10 + k)
    a = random_matrix(rng, m, n)
    # a ⋉ I_k is a ⊗ I_{k/gcd} up to the lcm padding.
    from math import lcm
    t = lcm(n, k)
    assert stp(a, Matrix.identity(k)) == kron(a, Matrix.identity(t // n))
