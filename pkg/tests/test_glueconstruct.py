import itertools
import random

import pytest

from genus2covers import EllCurve, NotThetaSmooth, TwoTorsionIso, construct, gamma_of, theta_smooth
from genus2covers.ellcurve import ORIGIN
from genus2covers.errors import UnsupportedRing
from genus2covers.exactring import GF, QQ, Poly, function_field
from genus2covers.exactring.ratfunc import rf_eval
from genus2covers.glueconstruct import (
    SIGMA_C,
    TAU,
    TAU_PRIME,
    birationality_check,
    curve_points,
    discriminant,
    ec_add,
    fixed_point_scheme,
    kahler_different,
    ram_image_check,
    recover_psi,
    trace_pushpull,
    verify_all,
    weierstrass_pushforward,
)
from genus2covers.glueconstruct.checks import curve_c_points
from genus2covers.projline import MoebiusMap


def curve(K, xs):
    return EllCurve.from_values(K, xs)


def test_gamma_examples():
    E = curve(QQ, [0, 1, -1])
    assert gamma_of(E, E, TwoTorsionIso.identity()) == MoebiusMap.identity(QQ)
    assert gamma_of(E, curve(QQ, [0, 1, 3]), TwoTorsionIso.identity()) == MoebiusMap(QQ(3), QQ(0), QQ(2), QQ(1))
    F = GF(5)
    g = gamma_of(curve(F, [0, 1, 4]), curve(F, [0, 2, 3]), TwoTorsionIso((2, 1, 3)))
    assert g == MoebiusMap(F(3), F(2), F(3), F(1))


def test_theta_smooth_examples():
    F = GF(5)
    E, Ep = curve(F, [0, 1, 4]), curve(F, [0, 2, 3])
    assert not theta_smooth(E, E, TwoTorsionIso.identity())
    assert not theta_smooth(E, Ep, TwoTorsionIso.identity())
    assert theta_smooth(E, Ep, TwoTorsionIso((2, 1, 3)))
    with pytest.raises(NotThetaSmooth):
        construct(E, Ep, TwoTorsionIso.identity())


def test_q_example(q_pair):
    g = q_pair
    assert (g.a, g.b, g.lam) == (QQ("3/2"), QQ("-1/2"), QQ("3/8"))
    t = Poly.x(QQ)
    lam, a = QQ("3/8"), QQ("3/2")
    assert g.sextic == (t * t * lam + a) * (t * t * lam + a - 1) * (t * t * lam + a - 3)
    T = g.tfield
    tt = T.gen
    assert g.x_of_t == -(tt * tt + 4) / (tt * tt * 2)
    assert g.h == QQ(8) / (tt ** 3 * 3)
    # substitution oracle at t = 1
    x1 = rf_eval(g.x_of_t, QQ(1))
    assert x1 == QQ("-5/2") and g.E.rhs(x1) == QQ("-105/8")
    assert g.sextic(QQ(1)) * rf_eval(g.h, QQ(1)) ** 2 == QQ("-105/8")


def test_f5_example(f5_pair):
    g = f5_pair
    F = GF(5)
    assert (g.a, g.b, g.lam) == (F(1), F(3), F(4))
    t = Poly.x(F)
    assert g.sextic == (t * t * 4 + 1) * (t * t * 4 + 4) * (t * t * 4 + 3)
    roots = sorted({r for r in F.elements() if g.sextic(r).is_zero()}, key=lambda r: r.key)
    assert roots == [F(1), F(2), F(3), F(4)]


def test_weierstrass_examples(q_pair, f5_pair):
    assert weierstrass_pushforward(q_pair, "fprime") == {QQ(0): 2, QQ(1): 2, QQ(3): 2}
    assert weierstrass_pushforward(q_pair, "f") == {QQ(0): 2, QQ(1): 2, QQ(-1): 2}
    F = GF(5)
    assert weierstrass_pushforward(f5_pair, "fprime") == {F(0): 2, F(2): 2, F(3): 2}
    assert weierstrass_pushforward(f5_pair, "f") == {F(0): 2, F(1): 2, F(4): 2}


def test_recover_psi_examples(q_pair, f5_pair):
    assert recover_psi(q_pair) == TwoTorsionIso.identity()
    assert recover_psi(f5_pair) == TwoTorsionIso((2, 1, 3))


def test_weierstrass_points_by_substitution(f5_pair):
    # oracle independent of the gcd route: evaluate both covers at each rational root
    g = f5_pair
    F = GF(5)
    for t0 in F.elements():
        if g.sextic(t0).is_zero():
            x, y = g.f(t0, F(0))
            xp, _ = g.fprime(t0, F(0))
            i = g.E.e.index(x) + 1
            assert g.Ep.e[g.psi(i) - 1] == xp and y == 0


def test_kahler_examples(q_pair, f5_pair):
    V = kahler_different(q_pair, "f")
    assert V.chart == "u" and V.degree == 2 and not V.split
    Vp = kahler_different(q_pair, "fprime")
    assert Vp.chart == "t" and -Vp.equation[0] == QQ("-9/8") and not Vp.split
    Vp = kahler_different(f5_pair, "fprime")
    assert -Vp.equation[0] == GF(5)(2) and not Vp.split
    assert kahler_different(f5_pair, "f").split  # lambda = 4 is a square


def test_fixed_points(q_pair):
    assert fixed_point_scheme(q_pair, TAU) == [kahler_different(q_pair, "f")]
    assert fixed_point_scheme(q_pair, TAU_PRIME) == [kahler_different(q_pair, "fprime")]
    [W] = fixed_point_scheme(q_pair, SIGMA_C)
    assert W.degree == 6


def test_fixed_points_pointwise(f5_pair):
    # brute force: affine points over F_25 fixed by tau' are exactly those with t = 0
    g = f5_pair
    for t, y in curve_c_points(g, 2) + [(GF(5, 2)(0), w) for w in _ys(g, 0)]:
        fixed = TAU_PRIME(t, y) == (t, y)
        assert fixed == (t == 0)


def _ys(g, t0):
    L = GF(5, 2)
    w = L.sqrt(L.coerce(g.sextic(GF(5)(t0))))
    return [w, -w] if w else [w]


def test_ram_image_and_discriminant(q_pair, f5_pair):
    assert ram_image_check(q_pair) and ram_image_check(f5_pair)
    D = discriminant(q_pair, "f")
    assert (D.x, D.c, D.split) == (QQ("-1/2"), QQ("3/8"), False)
    F = GF(5)
    D = discriminant(f5_pair, "f")
    assert (D.x, D.c) == (F(3), F(4)) and D.points() == [(F(3), F(2)), (F(3), F(3))]
    Dp = discriminant(f5_pair, "fprime")
    assert Dp.x == f5_pair.a and not Dp.split


def test_group_law_against_brute_force():
    F = GF(7)
    E = curve(F, [0, 1, 3])
    pts = [ORIGIN] + [(x, y) for x in F.elements() for y in F.elements() if y * y == E.rhs(x)]
    pts_L = curve_points(E, 1)
    assert len(pts_L) == len(pts)
    for P in pts:
        assert ec_add(E, P, ORIGIN) == P
        for Q in pts:
            R = ec_add(E, P, Q)
            assert R == ec_add(E, Q, P)
            assert E.is_on_curve(R)
            for S in pts[::3]:
                assert ec_add(E, ec_add(E, P, Q), S) == ec_add(E, P, ec_add(E, Q, S))
    for x, _ in [(e, 0) for e in E.e]:
        assert ec_add(E, (x, F(0)), (x, F(0))) is ORIGIN


def test_trace_examples(f5_pair):
    assert trace_pushpull(f5_pair, ext=1)
    assert trace_pushpull(f5_pair, ext=2)
    assert trace_pushpull(f5_pair, ext=2, samples=20, rng=random.Random(5))


def test_trace_rejects_corrupted_cover(f5_pair):
    from dataclasses import replace

    from genus2covers.errors import FalsificationError

    bad = replace(f5_pair, h=f5_pair.h * 2)  # 2 is not +-1 in F_5, so f no longer lands on E
    with pytest.raises(FalsificationError):
        trace_pushpull(bad, ext=1)


def test_birationality(f5_pair):
    assert birationality_check(f5_pair)
    assert birationality_check(f5_pair, k=2)


def test_point_checks_need_prime_field(q_pair):
    with pytest.raises(UnsupportedRing):
        trace_pushpull(q_pair)


def test_relabeling_invariance_f7():
    F = GF(7)
    E, Ep = curve(F, [1, 2, 5]), curve(F, [0, 3, 6])
    for psi in TwoTorsionIso.all():
        if not theta_smooth(E, Ep, psi):
            continue
        g = construct(E, Ep, psi)
        for pi in TwoTorsionIso.all():
            E2 = E.relabel([pi(i) - 1 for i in (1, 2, 3)])
            assert construct(E2, Ep, psi * pi) == g


def test_h_closed_form_over_extension_and_function_field():
    K = GF(3, 2)
    z = K.gen
    E = EllCurve((K(0), K(1), z))
    Ep = EllCurve((K(0), z + 1, z * 2))
    S = function_field(GF(11), "s")
    s = S.gen
    E2, Ep2 = EllCurve((S(0), S(1), s)), EllCurve((S(2), s, s * s))
    for A, B in [(E, Ep), (E2, Ep2)]:
        for psi in TwoTorsionIso.all():
            if theta_smooth(A, B, psi):
                g = construct(A, B, psi)
                t = g.tfield.gen
                assert g.h == 1 / (g.lam * t ** 3)


def test_verify_all_examples(q_pair, f5_pair):
    assert all(verify_all(q_pair).values())
    res = verify_all(f5_pair)
    assert all(res.values()) and "trace_pushpull" in res


def test_verify_all_random_f11():
    rng = random.Random(2)
    F = GF(11)
    done = 0
    while done < 5:
        e = rng.sample(range(11), 3)
        ep = rng.sample(range(11), 3)
        psi = rng.choice(TwoTorsionIso.all())
        E, Ep = curve(F, e), curve(F, ep)
        if theta_smooth(E, Ep, psi):
            assert all(verify_all(construct(E, Ep, psi), trace_ext=1).values())
            done += 1
