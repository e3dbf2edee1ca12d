import pytest
from fractions import Fraction

import qalcove as qa
from qalcove.rootsys import Coroot, RationalPoint, RootSystemError


def test_standard_data():
    a2 = qa.build_root_system("A2", 2)
    assert len(a2.positive_roots) == 3 and len(a2.weyl_elements) == 6
    c2 = qa.build_root_system("C2", 2)
    assert [r.coeffs for r in c2.positive_roots] == [(0, 1), (1, 0), (1, 1), (2, 1)]
    assert len(c2.weyl_elements) == 8
    g2 = qa.build_root_system("G2")
    assert len(g2.positive_roots) == 6 and len(g2.weyl_elements) == 12


def test_unsupported_type():
    with pytest.raises(RootSystemError):
        qa.build_root_system("E8")
    with pytest.raises(RootSystemError):
        qa.build_root_system("A2", 3)


def test_b2_alias():
    assert qa.build_root_system("B2") is qa.build_root_system("C2")


def test_pairing():
    a2 = qa.build_root_system("A2")
    theta = a2.highest_root
    assert a2.pair(a2.fundamental_weight(0), a2.simple_coroot(0)) == 1
    assert a2.pair(a2.rho, a2.coroot(theta)) == 2
    # linearity oracle: <-2w1 + w2, theta^vee> = -2<w1,.> + <w2,.>
    got = a2.pair(a2.weight([-2, 1]), a2.coroot(theta))
    expect = -2 * a2.pair(a2.fundamental_weight(0), a2.coroot(theta)) + a2.pair(
        a2.fundamental_weight(1), a2.coroot(theta)
    )
    assert got == expect == -1


def test_simple_reflection_action():
    a2 = qa.build_root_system("A2")
    s1 = a2.simple_reflection(0)
    a1, alpha2 = a2.simple_root(0), a2.simple_root(1)
    assert a2.act(s1, a1) == -a1
    assert a2.act(s1, alpha2).coeffs == (1, 1)


def test_longest_element_on_weights():
    a2 = qa.build_root_system("A2")
    # independent oracle: compose the two generators by hand on fund coords
    def s(i, mu):
        out = list(mu)
        coeff = mu[i]
        col = [a2.cartan[k][i] for k in range(2)]
        return tuple(m - coeff * c for m, c in zip(mu, col))

    mu = (1, 0)
    for i in (0, 1, 0):
        mu = s(i, mu)
    w0 = a2.longest_element
    assert a2.act(w0, a2.fundamental_weight(0)).coeffs == mu == (0, -1)


def test_length_equals_inversions():
    for label in ("A2", "C2", "G2", "A3"):
        rs = qa.build_root_system(label)
        for w in rs.weyl_elements:
            winv = rs.inverse(w)
            inversions = sum(
                1
                for alpha in rs.positive_roots
                if not rs.act(winv, alpha).is_positive
            )
            assert w.length == inversions


def test_action_is_homomorphism():
    for label in ("A2", "C2", "A3"):
        rs = qa.build_root_system(label)
        elems = rs.weyl_elements
        for u in elems[:8]:
            for v in elems[:8]:
                uv = rs.mult(u, v)
                for alpha in rs.positive_roots:
                    assert rs.act(uv, alpha) == rs.act(u, rs.act(v, alpha))


def test_sign_and_abs():
    rs = qa.build_root_system("C2")
    for alpha in rs.all_roots:
        assert abs(alpha).is_positive
        scaled = qa.Root(tuple(alpha.sign * c for c in abs(alpha).coeffs))
        assert scaled == alpha


def test_inverse_roundtrip():
    rs = qa.build_root_system("G2")
    for w in rs.weyl_elements:
        assert rs.mult(rs.inverse(w), w) == rs.identity


def test_affine_reflect():
    a2 = qa.build_root_system("A2")
    alpha = a2.simple_root(0)
    nu = a2.nu0
    # k = 0 is the linear reflection
    assert a2.affine_reflect(nu, alpha, 0) == a2.act(a2.simple_reflection(0), nu)
    # involution
    img = a2.affine_reflect(nu, alpha, 2)
    assert a2.affine_reflect(img, alpha, 2) == nu
    # fixed point on the hyperplane
    a1 = qa.build_root_system("A1")
    w = RationalPoint((Fraction(1),))
    assert a1.affine_reflect(w, a1.simple_root(0), 1) == w


def test_base_point_interior():
    # strictly between consecutive integers for every positive coroot
    for label in ("A1", "A1xA1", "A2", "C2", "G2", "A3", "B3", "C3"):
        rs = qa.build_root_system(label)
        for alpha in rs.positive_roots:
            p = rs.pair(rs.nu0, rs.coroot(alpha))
            assert 0 < p < 1


def test_rank2_segments():
    a2 = qa.build_root_system("A2")
    seg = a2.rank2_subsystem(a2.simple_root(0), a2.simple_root(1))
    assert seg.type_label == "A2" and seg.q == 3
    assert [r.coeffs for r in seg.segment] == [(1, 0), (1, 1), (0, 1)]

    c2 = qa.build_root_system("C2")
    seg = c2.rank2_subsystem(c2.simple_root(0), c2.simple_root(1))
    assert seg.q == 4
    assert [r.coeffs for r in seg.segment] == [(1, 0), (2, 1), (1, 1), (0, 1)]

    g2 = qa.build_root_system("G2")
    seg = g2.rank2_subsystem(g2.simple_root(0), g2.simple_root(1))
    assert seg.q == 6
    assert len(set(seg.segment)) == 6

    a1a1 = qa.build_root_system("A1xA1")
    seg = a1a1.rank2_subsystem(a1a1.simple_root(0), a1a1.simple_root(1))
    assert seg.type_label == "A1xA1" and seg.q == 2

    with pytest.raises(RootSystemError):
        a2.rank2_subsystem(a2.simple_root(0), -a2.simple_root(0))


def test_highest_root():
    for label, coeffs in (("A2", (1, 1)), ("C2", (2, 1)), ("G2", (3, 2))):
        rs = qa.build_root_system(label)
        theta = rs.highest_root
        assert theta.coeffs == coeffs
        for beta in rs.positive_roots:
            assert all(t - b >= 0 for t, b in zip(theta.coeffs, beta.coeffs))
    with pytest.raises(RootSystemError):
        qa.build_root_system("A1xA1").highest_root


def test_word_round_trip():
    rs = qa.build_root_system("C2")
    for w in rs.weyl_elements:
        assert rs.element_from_word(w.word_str) == w
        assert rs.element_from_json(rs.element_to_json(w)) == w
