import pytest
from hypothesis import given, strategies as st

from oracles import crt_by_search, idempotents_by_search, primes_of
from regsys.ring import (
    ContextMismatchError,
    NotSquarefreeError,
    RingContext,
    crt_join,
    crt_split,
    idempotent_part,
    is_idempotent,
    is_unit,
    unit_idempotent_factor,
)

SQUAREFREE = [2, 3, 6, 10, 15, 30, 42, 105, 210, 2310]


def test_split_examples(Z6, Z30, Z210):
    assert crt_split(Z210(105)) == (1, 0, 0, 0)
    assert crt_split(Z6(0)) == (0, 0)
    assert crt_split(Z30(1)) == (1, 1, 1)


def test_join_examples(Z6, Z210):
    assert crt_join((1, 0, 0, 0), Z210).value == 105
    assert crt_join((0, 1, 0, 0), Z210).value == 70
    assert crt_join((1, 1), Z6).value == 1


def test_join_rejects_bad_residues(Z6):
    with pytest.raises(ValueError):
        crt_join((1,), Z6)
    with pytest.raises(ValueError):
        crt_join((2, 0), Z6)


def test_idempotent_part_examples(Z6, Z210):
    assert idempotent_part(Z6(2)).value == 4
    assert idempotent_part(Z6(0)).value == 0
    assert idempotent_part(Z210(36)).value == 36


def test_unit_idempotent_examples(Z6):
    u, e = unit_idempotent_factor(Z6(2))
    assert (u.value, e.value) == (5, 4)
    assert tuple(x.value for x in unit_idempotent_factor(Z6(1))) == (1, 1)
    assert tuple(x.value for x in unit_idempotent_factor(Z6(0))) == (1, 0)


def test_predicates(Z6, Z210):
    assert is_idempotent(Z210(105))
    assert is_unit(Z6(5))
    assert not is_idempotent(Z6(2))
    assert not is_unit(Z6(3))


@pytest.mark.parametrize("n", [4, 12, 18, 50, 9 * 7])
def test_not_squarefree_names_prime(n):
    with pytest.raises(NotSquarefreeError) as info:
        RingContext(n)
    p = info.value.prime
    assert n % (p * p) == 0
    assert str(p) in str(info.value)


@pytest.mark.parametrize("n", [0, 1, -6])
def test_small_moduli_rejected(n):
    with pytest.raises(ValueError):
        RingContext(n)


def test_mixing_contexts_fails(Z6, Z30):
    with pytest.raises(ContextMismatchError):
        Z6(1) + Z30(1)


@pytest.mark.parametrize("n", SQUAREFREE)
def test_idempotents_match_search(n):
    assert RingContext(n).idempotents() == idempotents_by_search(n)


@pytest.mark.parametrize("n", SQUAREFREE[:8])
def test_split_join_match_search(n):
    ctx = RingContext(n)
    primes = primes_of(n)
    assert list(ctx.primes) == primes
    for x in range(n):
        assert ctx.split(x) == tuple(x % p for p in primes)
        assert crt_by_search(ctx.split(x), primes) == x


@given(st.sampled_from(SQUAREFREE), st.integers(min_value=-10**6, max_value=10**6))
def test_unit_times_idempotent(n, a):
    ctx = RingContext(n)
    x = ctx(a)
    u, e = unit_idempotent_factor(x)
    assert is_unit(u) and is_idempotent(e)
    assert u * e == x
    assert e == idempotent_part(x)
    # e generates the same ideal as x
    assert (x * u.inverse()) == e


@given(st.sampled_from(SQUAREFREE), st.integers(), st.integers())
def test_arithmetic_matches_integers(n, a, b):
    ctx = RingContext(n)
    assert (ctx(a) + ctx(b)).value == (a + b) % n
    assert (ctx(a) * ctx(b)).value == (a * b) % n
    assert (ctx(a) - ctx(b)).value == (a - b) % n
    assert (-ctx(a)).value == (-a) % n


def test_large_modulus_exact():
    # product of the primes below 100: far beyond 64 bits
    primes = [p for p in range(2, 100) if all(p % q for q in range(2, p))]
    n = 1
    for p in primes:
        n *= p
    ctx = RingContext(n)
    assert n > 2**64
    x = ctx(n // 2 + 12345)
    assert ctx.join(ctx.split(x.value)) == x.value
    e = idempotent_part(x)
    assert e * e == e
