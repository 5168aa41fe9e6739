import numpy as np
import pytest

from rootsign.classify import (UnknownClass, admissible_diagram_identity_check, b4_in_f4, class_names,
                               classical_elliptic_2power, d8_in_e8, exceptional_representative,
                               exhaustive_classical, exhaustive_verify_F4, identify_exceptional, perp_orbits,
                               registry_entry, subsystem_mask, two_power_partitions)
from rootsign.rootsys import Isometry, build
from rootsign.weyl import SignedPermutation, coxeter_partition, fingerprint, is_elliptic


def test_two_power_partitions():
    assert two_power_partitions(4) == [(4,), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert two_power_partitions(3) == [(2, 1), (1, 1, 1)]


def test_classical_lists():
    assert [c.parts for c in classical_elliptic_2power("B", 4)] == [(4,), (2, 2), (2, 1, 1), (1, 1, 1, 1)]
    assert [c.parts for c in classical_elliptic_2power("B", 3)] == [(2, 1), (1, 1, 1)]
    labels = [c.label for c in classical_elliptic_2power("A", 3)]
    assert labels == ["-1"]
    labels = [c.label for c in classical_elliptic_2power("A", 4)]
    assert labels == ["coxeter", "-1"]
    d = classical_elliptic_2power("D", 4)
    assert [c.in_weyl for c in d] == [False, True, False, True]
    with pytest.raises(ValueError):
        classical_elliptic_2power("G", 2)


@pytest.mark.parametrize("kind,n", [("B", 2), ("B", 3), ("C", 3), ("D", 4), ("B", 4), ("A", 4)])
def test_exhaustive_classical_agrees(kind, n):
    classes = exhaustive_classical(kind, n)
    assert len(classes) == len(classical_elliptic_2power(kind, n))


def test_embedding_images_are_roots():
    assert b4_in_f4().image_mask().sum() == 32
    assert d8_in_e8().image_mask().sum() == 112
    assert subsystem_mask("E7").sum() < 112


@pytest.mark.parametrize("ambient,name,order", [("F4", "-1", 2), ("F4", "A3xA1~", 4), ("F4", "D4(a1)", 4),
                                               ("F4", "B4", 8), ("E8", "-1", 2), ("E8", "A3^2xA1^2", 4),
                                               ("E8", "A7xA1", 8), ("E8", "D4(a1)^2", 4), ("E8", "D8(a3)", 8),
                                               ("E7", "A3^2xA1", 4), ("E7", "A7", 8), ("E6", "-D4(a1)", 4),
                                               ("G2", "-1", 2)])
def test_exceptional_representatives(ambient, name, order):
    label = exceptional_representative(name, ambient)
    R = build(ambient)
    assert is_elliptic(label.representative, R)
    assert label.expected.order == order


def test_f4_d4a1_from_b4():
    label = exceptional_representative("D4(a1)", "F4")
    assert label.representative == b4_in_f4().push(SignedPermutation.parse("n(0 1)n(2 3)", 4))


def test_e6_minus_d4a1_is_minus_a_d4a1_element():
    E6 = build("E6")
    w6 = exceptional_representative("-D4(a1)", "E6").representative
    minus = Isometry.scalar(8, -1) @ w6
    fp = fingerprint(minus, E6)
    assert fp.order == 4
    # -w6 has eigenvalue 1 on the E6 span, so it is not elliptic while w6 is
    assert not is_elliptic(minus, E6)


@pytest.mark.parametrize("name,sizes,symmetric", [("A3^2xA1^2", [4] * 32, 0), ("A7xA1", [8] * 16, 0),
                                                  ("D4(a1)^2", [4] * 32, 32), ("D8(a3)", [8] * 16, 16)])
def test_e8_perp_orbits(name, sizes, symmetric):
    sp = perp_orbits(exceptional_representative(name, "E8"))
    assert sp.sizes() == sizes
    assert sp.symmetric_count == symmetric


def test_f4_exhaustive():
    rep = exhaustive_verify_F4()
    assert rep.group_order == 1152
    assert sorted(rep.classes) == sorted(class_names("F4"))
    assert len(rep.classes["-1"]) == 1
    assert exceptional_representative("D4(a1)", "F4").expected.order == 4


def test_b4_partitions_restrict_to_f4_classes():
    F4 = build("F4")
    expected = {(4,): "B4", (2, 2): "D4(a1)", (2, 1, 1): "A3xA1~", (1, 1, 1, 1): "-1"}
    for lam, name in expected.items():
        w = b4_in_f4().push(coxeter_partition(lam))
        assert identify_exceptional(w, F4)[0] == name


def test_identify_e_types_by_fingerprint():
    E8 = build("E8")
    for name in class_names("E8"):
        w = exceptional_representative(name, "E8").representative
        assert identify_exceptional(w, E8) == (name, None)


def test_registry_aliases_and_unknowns():
    assert registry_entry("E8", "D8a3")["name"] == "D8(a3)"
    assert registry_entry("F4", "cox")["name"] == "B4"
    with pytest.raises(UnknownClass):
        registry_entry("E8", "A8")


def test_admissible_diagram_identity():
    B2 = build("B2")
    assert admissible_diagram_identity_check(B2, [2, 0], [0, 2])
    D4 = build("D4")
    assert admissible_diagram_identity_check(D4, [2, 2, 0, 0], [0, 0, 2, 2])
    assert admissible_diagram_identity_check(D4, [2, -2, 0, 0], [0, 0, 2, -2])
    with pytest.raises(ValueError):
        admissible_diagram_identity_check(B2, [2, 0], [2, 2])


def test_registry_orders_match_representatives():
    for ambient in ("G2", "F4", "E6", "E7", "E8"):
        for name in class_names(ambient):
            label = exceptional_representative(name, ambient)
            assert label.data["order"] == label.expected.order
            assert np.all(label.representative.num.shape == (build(ambient).ambient_dim,) * 2)
