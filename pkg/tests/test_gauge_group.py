import math

import pytest
from hypothesis import given, strategies as st

from hlgf import gauge_group as gg
from hlgf.gauge_group import (LoopClass, Pi1Element, dist, haar_element,
                              identity, inv, loop_compose0, loop_compose1,
                              loop_const, loop_inv0, loop_inv1, mul,
                              pi1_class, u1)

TWO_PI = 2 * math.pi
THETA_F = 2 * math.pi / 3

angles = st.floats(min_value=-20.0, max_value=20.0,
                   allow_nan=False, allow_infinity=False)


def test_u1_mul_example():
    assert dist(mul(u1(math.pi / 3), u1(math.pi / 3)),
                u1(2 * math.pi / 3)) < 1e-12


def test_u1_dist_wraparound():
    assert abs(dist(u1(0.0), u1(TWO_PI - 1e-9)) - 1e-9) < 1e-15


def test_so3_inverse():
    import random
    rng = random.Random(0)
    for _ in range(20):
        q = haar_element("SO3", rng)
        assert dist(mul(inv(q), q), identity("SO3")) < 1e-12


def test_backend_mismatch():
    with pytest.raises(gg.BackendMismatchError):
        mul(u1(0.1), identity("SO3"))


def test_loop_const():
    lc = loop_const(u1(0.7))
    assert lc.theta0 == 0.7 and lc.lift == 0.0
    so3 = loop_const(identity("SO3"))
    assert so3.q0 == so3.q1
    assert pi1_class(loop_const(u1(1.0))).is_zero()
    assert pi1_class(loop_const(identity("SO3"))).is_zero()


def test_compose0_two_face_contributions():
    a = LoopClass("U1", theta0=0.0, lift=THETA_F)
    combined = loop_compose0(a, a)
    assert abs(combined.lift - 2 * THETA_F) < 1e-15


def test_compose0_unit():
    a = LoopClass("U1", theta0=1.2, lift=5.0)
    e = loop_const(identity("U1"))
    assert loop_compose0(a, e).close_to(a)


def test_compose1_accumulates_full_turns():
    a = LoopClass("U1", theta0=0.0, lift=TWO_PI)
    b = loop_compose1(a, a)     # ends at 0 mod 2pi, so composable
    assert abs(b.lift - 4 * math.pi) < 1e-12


def test_compose1_endpoint_mismatch():
    a = LoopClass("U1", theta0=1.0, lift=0.5)
    b = LoopClass("U1", theta0=0.0, lift=0.3)
    with pytest.raises(gg.EndpointMismatchError):
        loop_compose1(a, b)


def test_compose1_constant_idempotent():
    lc = loop_const(u1(0.4))
    assert loop_compose1(lc, lc).close_to(lc)


def test_inv1_then_compose_closes():
    a = LoopClass("U1", theta0=0.3, lift=2.2)
    closed = loop_compose1(loop_inv1(a), a)
    assert pi1_class(closed).is_zero()
    assert abs(closed.lift) < 1e-15


def test_inv0_example():
    a = LoopClass("U1", theta0=0.0, lift=THETA_F)
    assert loop_inv0(a).lift == -THETA_F
    assert loop_inv0(loop_inv0(a)).close_to(a)
    assert loop_inv1(loop_inv1(a)).close_to(a)


def test_pi1_winding_two():
    assert pi1_class(LoopClass("U1", theta0=0.0, lift=4 * math.pi)).value == 2


def test_pi1_winding_error():
    with pytest.raises(gg.WindingError):
        pi1_class(LoopClass("U1", theta0=0.0, lift=math.pi))


def test_so3_nontrivial_loop_squares_to_trivial():
    # the lift pair (1, -1) is the nonidentity class; concatenated with
    # itself it unwinds
    minus = gg.qneg(gg.QUAT_ID)
    a = LoopClass("SO3", q0=gg.QUAT_ID, q1=minus)
    assert pi1_class(a).value == -1
    b = loop_compose1(a, a)
    assert pi1_class(b).value == 1


def test_so3_simultaneous_flip_is_same_class():
    import random
    rng = random.Random(3)
    q0, q1 = haar_element("SO3", rng).quat, haar_element("SO3", rng).quat
    a = LoopClass("SO3", q0=q0, q1=q1)
    flipped = LoopClass("SO3", q0=gg.qneg(q0), q1=gg.qneg(q1))
    assert a.close_to(flipped)
    b = LoopClass("SO3", q0=haar_element("SO3", rng).quat,
                  q1=haar_element("SO3", rng).quat)
    assert loop_compose0(flipped, b).close_to(loop_compose0(a, b))


def test_full_rotation_family_gives_minus_one():
    # integrate the SU(2) lift of the rotation family R_z(2*pi*t)
    m = 500
    q = gg.QUAT_ID
    for _ in range(m):
        half = math.pi / m
        q = gg.qmul((math.cos(half), 0.0, 0.0, math.sin(half)), q)
    lc = LoopClass("SO3", q0=gg.QUAT_ID, q1=q)
    assert pi1_class(lc).value == -1


def test_group_level_interchange():
    # loop_compose0(loop_compose1(a,b), loop_compose1(c,d))
    #   == loop_compose1(loop_compose0(a,c), loop_compose0(b,d))
    import random
    rng = random.Random(9)
    for backend in ("U1", "SO3"):
        for _ in range(50):
            if backend == "U1":
                b = LoopClass("U1", theta0=rng.uniform(0, TWO_PI),
                              lift=rng.uniform(-9, 9))
                a = LoopClass("U1", theta0=b.theta0 + b.lift,
                              lift=rng.uniform(-9, 9))
                d = LoopClass("U1", theta0=rng.uniform(0, TWO_PI),
                              lift=rng.uniform(-9, 9))
                c = LoopClass("U1", theta0=d.theta0 + d.lift,
                              lift=rng.uniform(-9, 9))
            else:
                qs = [haar_element("SO3", rng).quat for _ in range(4)]
                b = LoopClass("SO3", q0=qs[0], q1=qs[1])
                a = LoopClass("SO3", q0=qs[1], q1=qs[2])
                d = LoopClass("SO3", q0=qs[3], q1=qs[0])
                c = LoopClass("SO3", q0=qs[0], q1=qs[2])
            lhs = loop_compose0(loop_compose1(a, b), loop_compose1(c, d))
            rhs = loop_compose1(loop_compose0(a, c), loop_compose0(b, d))
            assert lhs.close_to(rhs, 1e-9)


def test_pi1_is_homomorphism():
    import random
    rng = random.Random(4)
    for _ in range(50):
        ka, kb = rng.randint(-3, 3), rng.randint(-3, 3)
        theta = rng.uniform(0, TWO_PI)
        a = LoopClass("U1", theta0=theta, lift=ka * TWO_PI)
        b = LoopClass("U1", theta0=theta, lift=kb * TWO_PI)
        total = pi1_class(loop_compose1(a, b))
        assert total.value == pi1_class(a).add(pi1_class(b)).value


@given(angles, angles)
def test_u1_lift_additivity_exact(x, y):
    a = LoopClass("U1", theta0=0.0, lift=x)
    b = LoopClass("U1", theta0=1.0, lift=y)
    assert loop_compose0(a, b).lift == x + y


@given(angles)
def test_u1_angle_reduced(theta):
    assert 0.0 <= u1(theta).angle < TWO_PI


def test_su2_pi1_trivial():
    lc = loop_const(identity("SU2"))
    assert pi1_class(lc).backend == "SU2"
    assert pi1_class(lc).is_zero()


def test_pi1_element_group_axioms():
    a = Pi1Element("SO3", -1)
    assert a.add(a).value == 1
    assert a.neg() == a
    z = gg.pi1_zero("U1")
    b = Pi1Element("U1", 5)
    assert b.add(z) == b
    assert b.add(b.neg()).is_zero()
    with pytest.raises(ValueError):
        Pi1Element("SO3", 2)
