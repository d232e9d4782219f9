"""Seeded random matrices for property checks."""

from __future__ import annotations

import random

from dfmat.equivalence import minimal_representative
from dfmat.matrix_core import EXACT, Matrix, determinant
from dfmat.quotient import MatrixClass, class_of


def random_matrix(rng: random.Random, m: int, n: int, lo: int = -3, hi: int = 3, mode: str = EXACT) -> Matrix:
    return Matrix(m, n, [rng.randint(lo, hi) for _ in range(m * n)], mode)


def random_shape(rng: random.Random, max_dim: int = 4) -> tuple[int, int]:
    return rng.randint(1, max_dim), rng.randint(1, max_dim)


def random_nonsingular(rng: random.Random, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    while True:
        a = random_matrix(rng, n, n, lo, hi)
        if determinant(a) != 0:
            return a


def random_irreducible(rng: random.Random, m: int, n: int, lo: int = -3, hi: int = 3) -> Matrix:
    """A random matrix that is its own minimal representative."""
    while True:
        a = random_matrix(rng, m, n, lo, hi)
        if minimal_representative(a)[1] == 1:
            return a


def random_square_class(rng: random.Random, max_size: int = 3, lo: int = -3, hi: int = 3) -> MatrixClass:
    n = rng.randint(1, max_size)
    return class_of(random_matrix(rng, n, n, lo, hi))


def random_nonsingular_class(rng: random.Random, max_size: int = 3) -> MatrixClass:
    return class_of(random_nonsingular(rng, rng.randint(1, max_size)))
