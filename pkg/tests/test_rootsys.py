import numpy as np
import pytest

from rootsign.rootsys import (Isometry, build, decompose, diagram_automorphisms, direct_power, dual_coxeter,
                              random_weyl_element, sgn_long, sgn_R, sgn_short, weyl_group)


@pytest.mark.parametrize("label,count,rank", [("A2", 6, 2), ("B3", 18, 3), ("C4", 32, 4), ("D4", 24, 4),
                                              ("G2", 12, 2), ("F4", 48, 4), ("E6", 72, 6), ("E7", 126, 7),
                                              ("E8", 240, 8)])
def test_root_counts(label, count, rank):
    R = build(label)
    assert len(R) == count
    assert R.rank == rank


def test_f4_long_and_short():
    F4 = build("F4")
    _, counts = np.unique(np.sum(F4.roots ** 2, axis=1), return_counts=True)
    assert list(counts) == [24, 24]


def test_e8_contains_d8():
    E8 = build("E8")
    integral = np.all(E8.roots % 2 == 0, axis=1)
    assert integral.sum() == 112


def test_roots_sorted_and_closed_under_negation():
    for label in ("A3", "B3", "G2", "F4", "E6"):
        R = build(label)
        rows = [tuple(r) for r in R.roots]
        assert rows == sorted(rows)
        assert set(rows) == {tuple(-r) for r in R.roots}


def test_reflection_basics():
    A2 = build("A2")
    a, b = (A2.roots[i] for i in A2.simple)
    s = A2.reflection(a)
    assert np.array_equal(s.apply(np.array([a]))[0], -a)
    assert s @ s == Isometry.identity(A2.ambient_dim)
    assert np.array_equal(s.apply(np.array([b]))[0], a + b)


def test_reflections_are_automorphisms():
    for label in ("B2", "G2", "F4", "E7"):
        R = build(label)
        for i in range(R.rank):
            assert R.is_automorphism(R.simple_reflection(i))


def test_decompose_examples():
    A2 = build("A2")
    word, tau, _ = decompose(A2, Isometry.identity(3))
    assert word == [] and tau == Isometry.identity(3)
    word, tau, tau_perm = decompose(A2, Isometry.scalar(3, -1))
    assert len(word) == 3 and tau_perm == (1, 0)
    s = A2.simple_reflection(0)
    word, tau, _ = decompose(A2, s)
    assert word == [0] and tau == Isometry.identity(3)


def test_decompose_reassembles():
    R = build("B3")
    rng = np.random.default_rng(0)
    for _ in range(20):
        a = random_weyl_element(R, rng)
        word, tau, _ = decompose(R, a)
        x = Isometry.identity(R.ambient_dim)
        for k in word:
            x = x @ R.simple_reflection(k)
        assert x @ tau == a


def test_sgn_R_examples():
    A2 = build("A2")
    for r in A2.roots:
        assert sgn_R(A2, A2.reflection(r)) == -1
    assert sgn_R(A2, Isometry.identity(3)) == 1
    A3 = build("A3")
    for t in diagram_automorphisms(A3):
        assert sgn_R(A3, t) == 1


def test_sgn_long_short_b2():
    B2 = build("B2")
    long = B2.reflection(np.array([2, -2]))
    short = B2.reflection(np.array([2, 0]))
    assert (sgn_long(B2, long), sgn_short(B2, long)) == (-1, 1)
    assert (sgn_long(B2, short), sgn_short(B2, short)) == (1, -1)


def test_simply_laced_short_sign_trivial():
    D4 = build("D4")
    rng = np.random.default_rng(1)
    for _ in range(10):
        a = random_weyl_element(D4, rng)
        assert sgn_short(D4, a) == 1
        assert sgn_long(D4, a) == sgn_R(D4, a)


def test_dual_coxeter_numbers():
    assert dual_coxeter("F4") == 9
    assert dual_coxeter("E8") == 30
    assert dual_coxeter("A4") == 5


def test_weyl_group_orders():
    assert len(weyl_group(build("A3"))) == 24
    assert len(weyl_group(build("B3"))) == 48
    assert len(weyl_group(build("G2"))) == 12


def test_diagram_automorphism_counts():
    assert len(diagram_automorphisms(build("A3"))) == 2
    assert len(diagram_automorphisms(build("D4"))) == 6
    assert len(diagram_automorphisms(build("D5"))) == 2
    assert len(diagram_automorphisms(build("E6"))) == 2
    assert len(diagram_automorphisms(build("F4"))) == 1


def test_direct_power():
    S = direct_power(build("B2"), 3)
    assert len(S) == 24 and S.rank == 6 and len(S.components) == 3


def test_dump_is_deterministic():
    R = build("G2")
    assert R.dump() == build("G2").dump()
    assert R.dump().startswith("label: G2\n")


def test_bad_label():
    with pytest.raises(ValueError):
        build("H3")
