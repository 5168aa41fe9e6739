import numpy as np
import pytest

from rootsign.classify import exceptional_representative
from rootsign.rootsys import Isometry, build
from rootsign.rtheta import (NotElliptic, build_lift, c_bar_mask, classical_R_w, compute_R_w, form,
                             gl6_not_root_example, lift_image, lump_partition, root_in_R_theta)
from rootsign.weyl import SignedPermutation, coxeter_partition


def test_c1_lift():
    L = build_lift("C", (1,))
    # v0 -> v'0, v'0 -> -v0
    assert np.array_equal(L.matrix, [[0, -1], [1, 0]])
    assert L.order() == 4


def test_b2_lift():
    L = build_lift("B", (2,))
    assert L.labels == ("v0", "v1", "v'0", "v'1", "e")
    col = {L.labels[k]: (L.labels[int(np.flatnonzero(L.matrix[:, k])[0])],
                         int(L.matrix[:, k].sum())) for k in range(5)}
    assert col == {"v0": ("v1", 1), "v1": ("v'0", 1), "v'0": ("v'1", 1), "v'1": ("v0", 1), "e": ("e", -1)}


def test_d_lift_has_two_blocks():
    L = build_lift("D", (2, 2))
    blocks = [[0, 1, 4, 5], [2, 3, 6, 7]]
    for b in blocks:
        others = [i for i in range(8) if i not in b]
        assert not L.matrix[np.ix_(others, b)].any()


@pytest.mark.parametrize("kind", ["B", "C", "D"])
def test_lifts_preserve_form(kind):
    for lam in ((3,), (2, 1), (1, 1, 1), (2, 2)):
        L = build_lift(kind, lam)
        J = form(kind, sum(lam))
        assert np.array_equal(L.matrix.T @ J @ L.matrix, J)


def test_lift_image_matches_signed_permutation():
    for lam in ((3,), (2, 1)):
        assert lift_image(build_lift("B", lam)) == coxeter_partition(lam).to_isometry()


@pytest.mark.parametrize("lam", [(4,), (3, 1), (2, 1, 1), (1, 1, 1, 1), (2, 2)])
def test_r_w_full_in_b_and_d(lam):
    for kind in ("B", "D"):
        R = build(f"{kind}{sum(lam)}")
        L = build_lift(kind, lam)
        assert classical_R_w(L, R).all()


def test_c4_r_w_is_c_lump():
    R = build("C4")
    lam = (2, 1, 1)
    mask = classical_R_w(build_lift("C", lam), R)
    assert np.array_equal(mask, c_bar_mask(R, lam))
    assert mask.sum() == 2 * 8        # two C2 blocks, 8 roots each
    two_e0 = R.index_of_vector([4, 0, 0, 0])
    assert mask[two_e0]
    mixed = R.index_of_vector([2, 0, 2, 0])   # e0 + e2 joins the size-2 part to a size-1 part
    assert not mask[mixed]


def test_rule_and_adjoint_agree():
    for kind, lam in (("C", (2, 1, 1)), ("C", (3, 2)), ("B", (2, 1)), ("D", (2, 2))):
        R = build(f"{kind}{sum(lam)}")
        L = build_lift(kind, lam)
        w = lift_image(L)
        for i in range(len(R)):
            assert root_in_R_theta(L, i, R, w, "rule") == root_in_R_theta(L, i, R, w, "adjoint")


def test_lump_partition_examples():
    assert lump_partition((2, 1, 1)) == (2, 2)
    assert lump_partition((1,)) == (1,)
    assert lump_partition((4, 2, 2, 1, 3)) == (4, 4, 4)


def test_compute_r_w_examples():
    B4 = build("B4")
    rw = compute_R_w(SignedPermutation.parse("n(0 1 2 3)", 4).to_isometry(), B4)
    assert rw.mask.all() and rw.provenance == "computed"
    F4 = build("F4")
    rw = compute_R_w(exceptional_representative("A3xA1~", "F4").representative, F4)
    assert len(rw) == 32
    # the 32 roots form a B4: integral coordinates, closed under negation
    assert np.all(F4.roots[rw.mask] % 2 == 0)
    for label in ("A3", "C3", "G2", "F4", "E6"):
        R = build(label)
        assert compute_R_w(Isometry.scalar(R.ambient_dim, -1), R).mask.all()


def test_compute_r_w_rejects_non_elliptic():
    A2 = build("A2")
    with pytest.raises(NotElliptic):
        compute_R_w(A2.simple_reflection(0), A2)


def test_gl6_counterexample():
    ex = gl6_not_root_example()
    assert ex.members == (True, True, False)
