import math
import random
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from hfcone.arithmetic import (
    LensSpace,
    NegContinuedFraction,
    chern_identity_check,
    conjugate_index,
    d_shift_check,
    decompose_mq_r,
    dgs_plan,
    evaluate_cf,
    generator_square,
    kernel_vector,
    lens_d_invariants,
    linking_matrix,
    neg_cf,
    neg_matrix,
    pos_cf,
)
from hfcone.contact import ContactCoefficient, LegendrianData
from hfcone.errors import InconsistentInput, OutOfRange

F = Fraction


def test_decompose():
    assert decompose_mq_r(7, 2) == (4, 1)
    assert decompose_mq_r(0, 1) == (0, 0)
    assert decompose_mq_r(3, 1) == (3, 0)
    assert decompose_mq_r(-7, 3) == (-2, 1)


@given(st.integers(-200, 200), st.integers(1, 50))
def test_decompose_property(p, q):
    m, r = decompose_mq_r(p, q)
    assert p == m * q - r and 0 <= r < q


def test_neg_cf_examples():
    assert neg_cf(-3, 1).coefficients == (-3,)
    assert neg_cf(-5, 2).coefficients == (-3, -2)
    assert neg_cf(-2, 1).coefficients == (-2,)
    assert neg_cf(3, -1).coefficients == (-3,)
    with pytest.raises(OutOfRange):
        neg_cf(-1, 1)
    with pytest.raises(OutOfRange):
        neg_cf(1, 2)
    with pytest.raises(OutOfRange):
        NegContinuedFraction((-1,))


def test_pos_cf_examples():
    assert pos_cf(5, 2) == [3, 2]
    assert pos_cf(2, 1) == [2]
    assert pos_cf(3, 2) == [2, 2]
    with pytest.raises(OutOfRange):
        pos_cf(2, 3)
    with pytest.raises(OutOfRange):
        pos_cf(4, 2)


@given(st.integers(2, 2000), st.integers(1, 2000))
def test_cf_roundtrip(a, b):
    if math.gcd(a, b) != 1 or a <= b:
        return
    assert neg_cf(-a, b).value() == F(-a, b)
    assert evaluate_cf(pos_cf(a, b)) == F(a, b)
    assert all(c >= 2 for c in pos_cf(a, b))


def test_dgs_examples():
    plan = dgs_plan(LegendrianData(2, -1), ContactCoefficient(3, 2))
    assert [(s.contact_coefficient, s.stabilizations) for s in plan.surgery_link] == [(1, 0), (-1, 2)]
    assert plan.chern_on_S == 0
    plan = dgs_plan(LegendrianData(0, -1), ContactCoefficient(1))
    assert len(plan.surgery_link) == 1 and plan.surgery_link[0].contact_coefficient == 1
    assert plan.cf.coefficients == ()
    plan = dgs_plan(LegendrianData(0, -1), ContactCoefficient(2))
    assert plan.cf.coefficients == (-2,)
    assert plan.surgery_link[1].stabilizations == 1 and plan.chern_on_S == 0


@given(st.integers(-6, 6), st.integers(-6, 6), st.integers(1, 40), st.integers(1, 40))
def test_dgs_plan_properties(tb, rot, x, y):
    if math.gcd(x, y) != 1 or x < y:
        return
    plan = dgs_plan(LegendrianData(tb, rot), ContactCoefficient(x, y))
    comps = plan.surgery_link
    assert comps[0].contact_coefficient == 1
    assert all(c.contact_coefficient == -1 for c in comps[1:])
    a = plan.cf.coefficients
    for j, comp in enumerate(comps[1:], start=1):
        assert comp.rotation == rot + sum(a[:j]) + 2 * j - 1
        # each negative stabilization lowers the rotation number by one
        prev = comps[j - 1].rotation
        assert comp.rotation == prev - comp.stabilizations - (1 if j == 1 else 0) + (1 if j == 1 else 0) \
            or j == 1
    # |H_1| of the surgered manifold is |p|
    Q = np.array(plan.linking_matrix, dtype=object)
    det = round(np.linalg.det(Q.astype(float)))
    assert abs(det) == abs(x + y * tb)


def test_chern_identity_examples():
    assert chern_identity_check(2, -1, ContactCoefficient(3, 2))
    assert chern_identity_check(0, 0, ContactCoefficient(1, 1))


def test_chern_identity_fuzz():
    rng = random.Random(7)
    for _ in range(10_000):
        y = rng.randint(1, 50)
        x = rng.randint(y, 300)
        if math.gcd(x, y) != 1:
            continue
        assert chern_identity_check(rng.randint(-50, 50), rng.randint(-50, 50), ContactCoefficient(x, y))


def test_kernel_examples():
    assert kernel_vector(neg_cf(3, -1), 3, 2) == (-2, 1)
    assert kernel_vector(neg_cf(5, -2), 5, 3) == (-3, 2, 1)
    assert kernel_vector(neg_cf(2, -1), 2, 1) == (-1, 1)
    with pytest.raises(InconsistentInput):
        kernel_vector(neg_cf(5, -2), 5, 2)


@given(st.integers(2, 150), st.integers(1, 149))
def test_kernel_properties(x, y):
    if y >= x or math.gcd(x, y) != 1:
        return
    cf = neg_cf(x, y - x)
    v = kernel_vector(cf, x, y)
    assert not any(neg_matrix(cf).dot(np.array(v, dtype=object)))
    tail = v[1:]
    assert all(t > 0 for t in tail) and tail[-1] == 1
    assert all(a > b for a, b in zip(tail, tail[1:]))
    assert all(math.gcd(a, b) == 1 for a, b in zip(v, v[1:]))


def test_lens_examples():
    assert lens_d_invariants(LensSpace(1, 0)) == [0]
    assert lens_d_invariants(LensSpace(2, 1)) == [F(-1, 4), F(1, 4)]
    assert lens_d_invariants(LensSpace(3, 1)) == [F(-1, 2), F(1, 6), F(1, 6)]
    assert d_shift_check(LensSpace(2, 1)) and d_shift_check(LensSpace(3, 1))
    with pytest.raises(OutOfRange):
        LensSpace(4, 2)


def test_d_invariant_conjugation_pointwise():
    for q in range(2, 40):
        for r in range(1, q):
            if math.gcd(q, r) != 1:
                continue
            L = LensSpace(q, r)
            ds = lens_d_invariants(L)
            assert all(ds[i] == ds[conjugate_index(L, i)] for i in range(q))


def test_generator_square():
    assert generator_square(0, 3, 2, 1) == -3 * 2 * 1
    assert generator_square(5, 1, 1, 0) == 5
    assert generator_square(4, 2, 1, 1) == 14


def test_linking_matrix_shape():
    Q = linking_matrix(2, neg_cf(5, -2))
    assert Q.tolist() == [[3, -1, 0], [-1, -2, 1], [0, 1, -2]]
