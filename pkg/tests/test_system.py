import random

import pytest

from oracles import feedback_image, reachability, smith_d_oracle
from regsys.matrix import DimensionError, Mat, identity, invert, is_invertible, zero
from regsys.ring import RingContext, idempotent_part
from regsys.system import (
    FeedbackTransform,
    LinSys,
    apply_feedback,
    combine_transforms,
    is_reachable,
    nk_invariant_factors,
    random_feedback,
    random_system,
    reachability_matrix,
    reduce_form,
)


def chain(n, ctx):
    A = [[1 if i == j + 1 else 0 for j in range(n)] for i in range(n)]
    return LinSys.from_lists(A, [[1]] + [[0]] * (n - 1), ctx, 1)


def test_system_validates_shapes(Z6):
    with pytest.raises(DimensionError):
        LinSys(identity(2, Z6), zero(3, 1, Z6))


def test_identity_transform(Z30, rng):
    s = random_system(Z30, 3, 2, rng)
    assert apply_feedback(s, FeedbackTransform.identity(Z30, 3, 2)) == s


def test_zero_input_gives_similarity(Z30, rng):
    A = Mat([[rng.randrange(30) for _ in range(3)] for _ in range(3)], Z30)
    s = LinSys(A, zero(3, 2, Z30))
    t = random_feedback(Z30, 3, 2, 7)
    out = apply_feedback(s, t)
    assert out.B.is_zero()
    assert out.A == t.P @ A @ invert(t.P)


def test_feedback_example(Z6):
    s = LinSys.from_lists([[1, 1], [1, 1]], [[4], [0]], Z6)
    t = FeedbackTransform(identity(2, Z6), identity(1, Z6), Mat([[-1, -1]], Z6))
    assert apply_feedback(s, t).A.tolist() == [[3, 3], [1, 1]]


def test_feedback_matches_definition(Z6):
    rng = random.Random(3)
    for seed in range(20):
        s = random_system(Z6, 2, 2, rng)
        t = random_feedback(Z6, 2, 2, seed)
        A, B = feedback_image(s.A.tolist(), s.B.tolist(), t.P.tolist(), t.Q.tolist(), t.K.tolist(), 6)
        out = apply_feedback(s, t)
        assert (out.A.tolist(), out.B.tolist()) == (A, B)


def test_group_laws(Z210):
    rng = random.Random(5)
    s = random_system(Z210, 3, 2, rng)
    t1, t2 = random_feedback(Z210, 3, 2, 1), random_feedback(Z210, 3, 2, 2)
    assert apply_feedback(s, t1.then(t2)) == apply_feedback(apply_feedback(s, t1), t2)
    assert apply_feedback(apply_feedback(s, t1), t1.inverse()) == s


def test_combine_transforms_on_orthogonal_pieces(Z30):
    rng = random.Random(11)
    s = random_system(Z30, 3, 2, rng)
    es = [6, 10, 15]  # orthogonal, sum to 1 mod 30
    ts = [random_feedback(Z30, 3, 2, k) for k in range(3)]
    whole = combine_transforms(list(zip(es, ts)))
    out = apply_feedback(s, whole)
    for e, t in zip(es, ts):
        assert out.scaled(e) == apply_feedback(s.scaled(e), t).scaled(e)


def test_random_feedback_deterministic(Z210):
    assert random_feedback(Z210, 4, 4, 9) == random_feedback(Z210, 4, 4, 9)
    assert random_feedback(Z210, 4, 4, 9) != random_feedback(Z210, 4, 4, 10)
    t = random_feedback(Z210, 4, 4, 9)
    assert is_invertible(t.P) and is_invertible(t.Q)


def test_apply_rejects_singular(Z6):
    s = LinSys.from_lists([[0]], [[1]], Z6)
    bad = FeedbackTransform(Mat([[2]], Z6), Mat([[1]], Z6), Mat([[0]], Z6))
    with pytest.raises(ValueError):
        apply_feedback(s, bad)


def test_reachability_matrix_examples(Z6, Z210, z210):
    s = chain(3, Z6)
    assert reachability_matrix(s, 1) == s.B
    assert reachability_matrix(s, 3) == identity(3, Z6)
    with pytest.raises(ValueError):
        reachability_matrix(s, 4)
    big = reachability_matrix(z210, 4)
    assert big.shape == (4, 16)
    d1 = smith_d_oracle(big.tolist(), 210)[0]
    assert 105 % ((1 - idempotent_part(Z210(d1)).value) % 210) == 0


def test_nk_examples(Z6):
    s = LinSys(zero(2, 2, Z6), identity(2, Z6))
    assert nk_invariant_factors(s) == [(1, 1), (1, 1)]
    assert nk_invariant_factors(chain(2, Z6)) == [(1,), (1, 1)]


def test_nk_matches_oracle(Z30):
    rng = random.Random(8)
    for _ in range(15):
        s = random_system(Z30, 3, 1, rng)
        for k, got in enumerate(nk_invariant_factors(s), start=1):
            assert got == smith_d_oracle(reachability(s.A.tolist(), s.B.tolist(), 30, k), 30)


def test_reachability_predicate(Z6, Z210, z210):
    assert is_reachable(LinSys(zero(2, 2, Z6), identity(2, Z6)))
    assert not is_reachable(LinSys(identity(2, Z6), zero(2, 1, Z6)))
    assert not is_reachable(z210)
    # the 36-component of the example is reachable over 36R
    from regsys.canonical import algorithm_output
    e, A, B = next(x for x in algorithm_output(z210) if x[0] == 36)
    assert is_reachable(LinSys(A, B), e)


def test_reduce_form_examples(Z6):
    s = LinSys.from_lists([[1, 2], [3, 4]], [[1], [0]], Z6)
    red = reduce_form(s)
    assert red.sys.B.tolist() == [[1], [0]]
    assert red.sys.A.row(0) == (0, 0)

    s = LinSys.from_lists([[1, 1], [1, 1]], [[2], [0]], Z6)
    red = reduce_form(s)
    assert red.d == (4,)
    assert red.sys.B.tolist() == [[4], [0]]
    assert red.sys.A.tolist() == [[3, 3], [1, 1]]
    assert all(x * 4 % 6 == 0 for x in red.sys.A.row(0))

    A = Mat([[1, 5], [2, 3]], Z6)
    red = reduce_form(LinSys(A, zero(2, 1, Z6)))
    assert red.d == () and red.sys.A == A


@pytest.mark.parametrize("mod", [6, 30, 210])
def test_reduce_form_properties(mod):
    ctx = RingContext(mod)
    rng = random.Random(mod + 1)
    for _ in range(20):
        n, m = rng.randint(1, 4), rng.randint(1, 3)
        s = random_system(ctx, n, m, rng)
        red = reduce_form(s)
        assert apply_feedback(s, red.transform) == red.sys
        for i, di in enumerate(red.d):
            assert all(x * di % mod == 0 for x in red.sys.A.row(i))
            assert red.sys.B[i, i] == di
