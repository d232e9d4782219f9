from fractions import Fraction

import pytest

from dfmat import lie
from dfmat.errors import NotSquareClass, ShapeError
from dfmat.matrix_core import Matrix, lift, mat_mul, mat_sub, unvec_columns, vec_columns
from dfmat.multipliers import MeanOnes, TopLeft
from dfmat.quotient import class_add, class_mul, class_of, class_scale, class_transpose, zero_class
from dfmat.sampling import random_matrix, random_nonsingular, random_square_class
from dfmat.selfcheck import CHECKS, FAIL, PASS, run_selfcheck

from oracles import ad_obj, killing_at_common_lift, to_obj

M = Matrix.from_rows
H = M([[1, 0], [0, -1]])
E12 = M([[0, 1], [0, 0]])
E21 = M([[0, 0], [1, 0]])


def test_sl2_brackets():
    h, e, f = class_of(H), class_of(E12), class_of(E21)
    assert lie.bracket(e, f) == h
    assert lie.bracket(h, e) == class_scale(2, e)
    assert lie.bracket(h, f) == class_scale(-2, f)


def test_bracket_of_mixed_sizes_has_zero_trace(rng):
    for _ in range(30):
        x, y = random_square_class(rng), random_square_class(rng)
        assert lie.class_trace(lie.bracket(x, y)) == 0


def test_lie_axioms(rng):
    for _ in range(40):
        x, y, z = (random_square_class(rng) for _ in range(3))
        assert lie.bracket(x, x) == zero_class()
        assert lie.bracket(x, y) == class_scale(-1, lie.bracket(y, x))
        jacobi = class_add(
            class_add(lie.bracket(x, lie.bracket(y, z)), lie.bracket(y, lie.bracket(z, x))),
            lie.bracket(z, lie.bracket(x, y)),
        )
        assert jacobi == zero_class()


def test_bracket_needs_square():
    with pytest.raises(NotSquareClass):
        lie.bracket(class_of(M([[1, 2]])), class_of(H))


# -- trace ------------------------------------------------------------------------------


def test_df_trace():
    assert lie.df_trace(Matrix.diag([1, 2, 3])) == 2
    for k in range(1, 9):
        assert lie.df_trace(Matrix.identity(k)) == 1
    a = M([[1, 2], [3, 5]])
    for k in range(1, 5):
        assert lie.df_trace(lift(a, k)) == lie.df_trace(a) == 3
    with pytest.raises(ShapeError):
        lie.df_trace(M([[1, 2]]))


def test_df_trace_other_families():
    a = Matrix.diag([1, 2, 3])
    # trace(J_n) = trace(U_n) = 1.
    assert lie.df_trace(a, MeanOnes) == 6
    assert lie.df_trace(a, TopLeft) == 6


def test_class_trace():
    assert lie.class_trace(class_of(Matrix.diag([2, 2, 2]))) == 2
    assert lie.class_trace(class_of(M([[1, 2], [3, 5]]))) == 3


# -- ad ------------------------------------------------------------------------------------


def test_ad_example():
    assert lie.ad_matrix(H) == Matrix.diag([0, -2, 2, 0])


def test_ad_acts_as_commutator(rng):
    for _ in range(50):
        a, x = random_matrix(rng, 3, 3), random_matrix(rng, 3, 3)
        got = unvec_columns(mat_mul(lie.ad_matrix(a), vec_columns(x)), 3)
        assert got == mat_sub(mat_mul(a, x), mat_mul(x, a))


def test_ad_against_oracle(rng):
    for _ in range(10):
        a = random_matrix(rng, 3, 3)
        assert (to_obj(lie.ad_matrix(a)) == ad_obj(to_obj(a))).all()


def test_ad_of_same_size_brackets_is_homomorphic(rng):
    for _ in range(20):
        a, b = random_matrix(rng, 2, 2), random_matrix(rng, 2, 2)
        ab = mat_sub(mat_mul(a, b), mat_mul(b, a))
        ad_a, ad_b = lie.ad_matrix(a), lie.ad_matrix(b)
        assert lie.ad_matrix(ab) == mat_sub(mat_mul(ad_a, ad_b), mat_mul(ad_b, ad_a))


def test_ad_of_lift_is_not_lift_of_ad():
    # ad_{A ⊗ I_2} and ad_A ⊗ I_4 differ by a permutation of tensor factors.
    a = M([[0, 1], [0, 0]])
    assert lie.ad_matrix(lift(a, 2)) != lift(lie.ad_matrix(a), 4)
    assert lie.class_ad(class_of(lift(a, 2))) == lie.class_ad(class_of(a))
    assert class_of(lie.ad_matrix(lift(a, 2))) != lie.class_ad(class_of(a))


# -- Killing form --------------------------------------------------------------------------


def test_killing_anchor():
    ad_h = ad_obj(to_obj(H))
    assert sum(ad_h.dot(ad_h)[i, i] for i in range(4)) == 8
    h = class_of(H)
    assert lie.killing_form(h, h) == 2
    assert lie.killing_form_direct(h, h) == 2
    assert lie.killing_form_stp(h, h) == 2


def test_killing_against_oracle(rng):
    for _ in range(40):
        x, y = random_square_class(rng), random_square_class(rng)
        assert lie.killing_form(x, y) == killing_at_common_lift(x.rep, y.rep)


def test_killing_stp_route_agrees_for_equal_sizes(rng):
    for _ in range(30):
        n = rng.randint(1, 3)
        x, y = class_of(random_matrix(rng, n, n)), class_of(random_matrix(rng, n, n))
        if x.rep.rows == y.rep.rows:
            assert lie.killing_form_stp(x, y) == lie.killing_form(x, y)


def test_killing_stp_route_differs_for_coprime_sizes():
    x, y = class_of(M([[1, 0], [0, 0]])), class_of(Matrix.diag([1, 0, 0]))
    assert lie.killing_form(x, y) == killing_at_common_lift(x.rep, y.rep)
    assert lie.killing_form_stp(x, y) != lie.killing_form(x, y)


def test_killing_lift_invariance(rng):
    for _ in range(30):
        x, y = random_square_class(rng), random_square_class(rng)
        p, q = rng.randint(1, 3), rng.randint(1, 3)
        assert lie.killing_form(class_of(lift(x.rep, p)), class_of(lift(y.rep, q))) == lie.killing_form(x, y)


def test_killing_properties(rng):
    for _ in range(30):
        a, x, y, z = (random_square_class(rng) for _ in range(4))
        r, s = Fraction(rng.randint(-3, 3)), Fraction(rng.randint(-3, 3), 2)
        assert lie.killing_form(x, y) == lie.killing_form(y, x)
        combo = class_add(class_scale(r, x), class_scale(s, z))
        assert lie.killing_form(combo, y) == r * lie.killing_form(x, y) + s * lie.killing_form(z, y)
        assert lie.killing_form(lie.bracket(a, x), y) + lie.killing_form(x, lie.bracket(a, y)) == 0


def test_killing_float_mode():
    h = class_of(H.to_float())
    assert abs(lie.killing_form(h, h, check=True) - 2.0) < 1e-12


def test_cross_check_detects_broken_closed_form(monkeypatch):
    monkeypatch.setattr(lie, "killing_closed_form", lambda a, b: Fraction(0))
    with pytest.raises(lie.KillingMismatch):
        lie.killing_form(class_of(H), class_of(H), check=True)
    assert lie.killing_form(class_of(H), class_of(H), check=False) == 0


def test_sign_error_in_ad_breaks_killing_suites(monkeypatch):
    suites = [c for c in CHECKS if c.name.startswith("Killing") and not c.known]
    assert all(r.status == PASS for r in run_selfcheck(checks=suites))
    eye = Matrix.identity

    def wrong_ad(a):
        from dfmat.matrix_core import kron, mat_add, transpose

        return mat_add(kron(eye(a.rows), a), kron(transpose(a), eye(a.rows)))

    monkeypatch.setattr(lie, "ad_matrix", wrong_ad)
    results = {r.name: r.status for r in run_selfcheck(checks=suites)}
    assert results["Killing closed form vs adjoint"] == FAIL
    assert results["Killing symmetry/bilinearity/invariance"] == FAIL


# -- subalgebras -----------------------------------------------------------------------


def test_trace_zero_contains_brackets(rng):
    for _ in range(20):
        x, y = random_square_class(rng), random_square_class(rng)
        assert lie.subalgebra_contains(lie.SL, lie.bracket(x, y))
    assert not lie.subalgebra_contains(lie.SL, class_of(Matrix.identity(2)))


def test_orthogonal_stabilizer():
    stab = lie.stabilizer(class_of(M([[0, 1], [1, 0]])))
    assert lie.subalgebra_contains(stab, class_of(H))
    # X M + M X^T = diag(2, -2) for this skew X, so it is not a member.
    assert not lie.subalgebra_contains(stab, class_of(M([[0, 1], [-1, 0]])))
    ortho = lie.stabilizer(class_of(Matrix.identity(2)))
    assert lie.subalgebra_contains(ortho, class_of(M([[0, 1], [-1, 0]])))


def test_symplectic_stabilizer():
    stab = lie.stabilizer(class_of(M([[0, 1], [-1, 0]])))
    assert lie.subalgebra_contains(stab, class_of(H))
    assert lie.subalgebra_contains(stab, class_of(E12))
    assert not lie.subalgebra_contains(stab, class_of(Matrix.identity(2)))


def test_stabilizer_requires_square():
    with pytest.raises(NotSquareClass):
        lie.stabilizer(class_of(M([[1, 2]])))
    with pytest.raises(ValueError):
        lie.SubalgebraSpec("nope")


def test_stabilizer_transport(rng):
    m = class_of(M([[0, 1], [-1, 0]]))
    for _ in range(10):
        p = class_of(random_nonsingular(rng, 2))
        n = class_mul(class_mul(class_transpose(p), m), p)
        move = lie.stabilizer_transport(p)
        src, dst = lie.stabilizer(m), lie.stabilizer(n)
        s = random_matrix(rng, 2, 2)
        w = s + s.T
        x = class_of(mat_mul(w, Matrix.from_rows([[0, -1], [1, 0]])))
        y = class_of(random_matrix(rng, 2, 2) @ Matrix.identity(2))
        assert lie.subalgebra_contains(src, x)
        assert lie.subalgebra_contains(dst, move(x))
        # The transport respects brackets.
        assert move(lie.bracket(x, y)) == lie.bracket(move(x), move(y))
