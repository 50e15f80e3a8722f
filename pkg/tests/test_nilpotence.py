import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from htcmap.hom import diagonal_evaluation_map, identity_map, make_map, power_map, zero_map
from htcmap.nilpotence import (
    ORACLE_GUARD,
    GradedSubspace,
    OracleGuardError,
    brute_force_nil_oracle,
    cup_length,
    ideal_power_step,
    kernel_ideal,
    nil_index,
    nil_of_ideal,
    nil_report,
    positive_ideal,
)
from htcmap.ring import POINT_RING, make_presentation, tensor

from helpers import random_map


def S(n):
    return make_presentation([("iota", n, 2)])


def RP(n):
    return make_presentation([("alpha", 1, n + 1)])


def p_star(n):
    return make_map(RP(n), S(n), ["0"])


def oracle(m):
    return brute_force_nil_oracle(m, m.source.top_degree + 1)


WORKED = [
    ("p1 r=2 s=1", diagonal_evaluation_map(p_star(1), 2, 1), 2),
    ("p1 r=3 s=1", diagonal_evaluation_map(p_star(1), 3, 1), 3),
    ("p1 r=2 s=2", diagonal_evaluation_map(p_star(1), 2, 2), 3),
    ("RP2 zero-divisors", diagonal_evaluation_map(identity_map(RP(2)), 2, 1), 4),
    ("S2 zero-divisors", diagonal_evaluation_map(identity_map(S(2)), 2, 1), 2),
    ("RP4 constant map", zero_map(RP(4), POINT_RING), 5),
    ("identity", identity_map(RP(3)), 1),
]


@pytest.mark.parametrize("name,m,want", WORKED, ids=[w[0] for w in WORKED])
def test_worked_examples_agree_with_oracle(name, m, want):
    assert nil_index(m) == want
    assert oracle(m) == want


def test_kernel_ideal_examples():
    assert not kernel_ideal(identity_map(RP(3)))
    I = kernel_ideal(p_star(3))
    assert [str(e) for e in I.basis()] == ["alpha", "alpha^2", "alpha^3"]
    I = kernel_ideal(diagonal_evaluation_map(p_star(1), 3, 1))
    R = I.ring
    assert I.dims()[1] == 2
    assert I.contains(R.element("iota_1 + iota_2")) and I.contains(R.element("alpha_3"))
    assert I.basis(3) == [R.element("iota_1*iota_2*alpha_3")]
    assert not I.contains(R.element("iota_1"))


def test_ideal_power_step_examples():
    R = RP(3)
    P = positive_ideal(R)
    assert not ideal_power_step(P, GradedSubspace(R))
    step = ideal_power_step(P, P)
    assert [str(e) for e in step.basis()] == ["alpha^2", "alpha^3"]


def test_nil_result_witness():
    res = nil_report(diagonal_evaluation_map(p_star(1), 3, 1))
    assert res.nil == 3 and res.witness_length == 2
    assert str(res.witness) == "iota_1*iota_2*alpha_3"
    assert nil_report(identity_map(RP(2))).witness is None


@pytest.mark.parametrize("n", [1, 2, 3])
@pytest.mark.parametrize("r", [2, 3])
def test_diagonal_case_is_rn_plus_one(n, r):
    assert nil_index(diagonal_evaluation_map(p_star(n), r, r)) == r * n + 1


@pytest.mark.parametrize("n", [1, 2, 4])
@pytest.mark.parametrize("r", [2, 3, 4])
def test_off_diagonal_value(n, r):
    for s in range(1, r):
        assert nil_index(diagonal_evaluation_map(p_star(n), r, s)) == s * n + r - s


def test_fast_and_span_paths_agree():
    for n, r in [(1, 3), (2, 3), (3, 2)]:
        for s in range(1, r + 1):
            m = diagonal_evaluation_map(p_star(n), r, s)
            I = kernel_ideal(m)
            a = nil_of_ideal(I)
            b = nil_of_ideal(I, fast=False)
            assert a.nil == b.nil
            assert a.witness is not None and b.witness is not None


def test_cup_length_examples():
    assert cup_length(S(5)) == 1
    assert cup_length(RP(3)) == 3
    for n in (1, 2, 3):
        for r in (1, 2, 3):
            R = tensor([RP(n)] * r)
            assert cup_length(R) == r * n
            # the cup length is the nil of the positive ideal minus one
            if R.total_dim <= 64:
                assert nil_of_ideal(positive_ideal(R)).nil == r * n + 1


def test_cup_length_of_tensor_is_at_least_the_sum():
    for a, b in [(RP(2), S(3)), (S(1), S(1)), (RP(3), RP(1))]:
        assert cup_length(tensor([a, b])) >= cup_length(a) + cup_length(b)


def test_oracle_guard():
    big = identity_map(tensor([RP(4)] * 3))
    assert big.source.total_dim > ORACLE_GUARD
    with pytest.raises(OracleGuardError):
        brute_force_nil_oracle(big, 3)


def test_power_map_nil():
    # secat lower bound for p_n^s: nil of Ker (p_n^s)* is sn+1
    for n, s in [(1, 2), (2, 2), (1, 3)]:
        assert nil_index(power_map(p_star(n), s)) == s * n + 1


def test_randomized_presentations_match_oracle():
    rng = random.Random(20261015)
    checked = 0
    for _ in range(40):
        m = random_map(rng, max_dim=32)
        assert m.source.total_dim <= 32
        assert nil_index(m) == oracle(m)
        checked += 1
    # diagonal-evaluation maps built from random f
    while checked < 60:
        f = random_map(rng, max_dim=8)
        r = rng.randint(2, 3)
        s_ = rng.randint(1, r)
        m = diagonal_evaluation_map(f, r, s_)
        if m.source.total_dim > 32:
            continue
        assert nil_index(m) == oracle(m)
        checked += 1
    assert checked >= 10


@given(st.integers(0, 2**32))
@settings(max_examples=40, deadline=None)
def test_ideal_powers_decrease(seed):
    m = random_map(random.Random(seed), max_dim=32)
    res = nil_report(m, record_powers=True)
    dims = [sum(d.values()) for d in res.power_dims]
    assert len(dims) == res.nil - 1
    assert all(x >= y for x, y in zip(dims, dims[1:]))
    assert all(x > 0 for x in dims)
    # I^{k+1} sits inside I^k, degree by degree
    I = kernel_ideal(m)
    P = I
    while P:
        Q = ideal_power_step(I, P)
        for e in Q.basis():
            assert P.contains(e)
        P = Q
    assert 1 <= res.nil <= m.source.top_degree + 1
