"""The set R_w of roots on which a lift of w acts trivially whenever it fixes them.

For classical types the lift is an explicit monomial matrix on the defining
module V (basis ``v_0..v_{n-1}``, then ``v'_0..v'_{n-1}`` for the dual
basis, then ``e`` for type B).  The scalar by which a power of the lift acts
on a root space is read off in two independent ways:

* :func:`entry_rule_scalar` uses the diagonal entries of the power, by the
  stabiliser rules for the four root shapes;
* :func:`root_space_scalar` conjugates an explicit root vector of the Lie
  algebra of the form and compares.

For exceptional types the result is recorded data (``provenance =
"asserted"``): every elliptic class of 2-power order has R_w = R,
except the F4 class ``A3xA1~`` where R_w is the B4 subsystem containing w.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .rootsys import SCALE, Isometry, RootSystem, build
from .weyl import SignedPermutation, coxeter_partition, is_elliptic


class NotElliptic(ValueError):
    """R_w is only well defined for elliptic w."""


# ---------------------------------------------------------------- lifts

@dataclass
class MonomialLift:
    kind: str                # "A", "B", "C" or "D"
    n: int
    matrix: np.ndarray       # column k = image of basis vector k
    labels: Tuple[str, ...]

    @property
    def dim(self) -> int:
        return self.matrix.shape[0]

    def power(self, e: int) -> np.ndarray:
        return np.linalg.matrix_power(self.matrix, e)

    def __pow__(self, e: int) -> "MonomialLift":
        return MonomialLift(self.kind, self.n, self.power(e), self.labels)

    def order(self, limit: int = 10 ** 4) -> int:
        ident = np.eye(self.dim, dtype=np.int64)
        x = self.matrix.copy()
        for k in range(1, limit + 1):
            if np.array_equal(x, ident):
                return k
            x = x @ self.matrix
        raise RuntimeError("lift order exceeds limit")


def _labels(kind: str, n: int) -> Tuple[str, ...]:
    if kind == "A":
        return tuple(f"v{i}" for i in range(n))
    lab = [f"v{i}" for i in range(n)] + [f"v'{i}" for i in range(n)]
    if kind == "B":
        lab.append("e")
    return tuple(lab)


def form(kind: str, n: int) -> np.ndarray:
    """Gram matrix of the invariant form: symmetric (B, D) or alternating (C)."""
    dim = 2 * n + (1 if kind == "B" else 0)
    J = np.zeros((dim, dim), dtype=np.int64)
    for i in range(n):
        J[i, n + i] = 2
        J[n + i, i] = -2 if kind == "C" else 2
    if kind == "B":
        J[2 * n, 2 * n] = 1
    return J


def lift_signed_permutation(p: SignedPermutation, kind: str) -> MonomialLift:
    """Monomial lift of a signed permutation to V for type ``kind`` in B, C, D.

    Basis vector ``u_k`` (``k`` in Z/2n) is sent to ``+-u_{p(k)}``.  For
    ``k < n`` the sign is +1; the sign on ``u_{k+n}`` is then forced by the
    form.  For type C this gives ``v'_{last} -> -v_first`` on each negative
    cycle; for B the ``(e, e)`` entry is ``(-1)^{#negative cycles}``.
    """
    if kind not in "BCD" or len(kind) != 1:
        raise ValueError("kind must be B, C or D")
    n = p.n
    J = form(kind, n)
    dim = J.shape[0]
    L = np.zeros((dim, dim), dtype=np.int64)
    for k in range(n):
        j = p.map[k]
        L[j, k] = 1
        jn = (j + n) % (2 * n)
        # J(L u_k, L u_{k+n}) = J(u_j, u_{j+n}) * s must equal J(u_k, u_{k+n}) = 2
        s = 2 // int(J[j, jn])
        L[jn, n + k] = s
    if kind == "B":
        L[2 * n, 2 * n] = -1 if p.negative_cycle_count() % 2 else 1
    lift = MonomialLift(kind, n, L, _labels(kind, n))
    if not np.array_equal(L.T @ J @ L, J):
        raise AssertionError("lift does not preserve the form")
    return lift


def build_lift(kind: str, parts: Sequence[int]) -> MonomialLift:
    """The lift of ``w_{kind[parts]}``: one negative cycle per consecutive block."""
    if not parts or any(int(m) < 1 for m in parts):
        raise ValueError("invalid partition")
    return lift_signed_permutation(coxeter_partition([int(m) for m in parts]), kind)


def lift_permutation(sigma: Sequence[int]) -> MonomialLift:
    """Type A lift: the permutation matrix ``v_i -> v_{sigma(i)}`` in GL_n."""
    n = len(sigma)
    L = np.zeros((n, n), dtype=np.int64)
    for i, j in enumerate(sigma):
        L[j, i] = 1
    return MonomialLift("A", n, L, _labels("A", n))


# ---------------------------------------------------------------- root shapes

def root_shape(alpha: np.ndarray) -> Tuple[Tuple[int, int], ...]:
    """Nonzero (index, coefficient) pairs of a classical root in unscaled units."""
    a = np.asarray(alpha) // SCALE
    if np.any(np.asarray(alpha) % SCALE):
        raise ValueError("not a classical root")
    return tuple((int(i), int(a[i])) for i in np.flatnonzero(a))


def _weight_index(kind: str, n: int, i: int, c: int) -> int:
    """Basis index of weight ``c * e_i`` (c = +-1)."""
    if kind == "A":
        if c != 1:
            raise ValueError("type A has no negative weights")
        return i
    return i if c > 0 else n + i


def root_vector(kind: str, n: int, alpha: np.ndarray) -> np.ndarray:
    """A nonzero element of the alpha root space in the Lie algebra of the form."""
    sh = root_shape(alpha)
    dim = n if kind == "A" else 2 * n + (1 if kind == "B" else 0)
    X = np.zeros((dim, dim), dtype=np.int64)
    if kind == "A":
        (i, ci), (j, cj) = sh
        a, b = (i, j) if ci > 0 else (j, i)
        X[a, b] = 1
        return X
    if len(sh) == 2:
        (i, ci), (j, cj) = sh
        a = _weight_index(kind, n, i, ci)
        b = _weight_index(kind, n, j, -cj)  # E_{ab} has weight wt(a) - wt(b)
    else:
        (i, c), = sh
        if abs(c) == 2:
            a = _weight_index(kind, n, i, 1 if c > 0 else -1)
            b = _weight_index(kind, n, i, -1 if c > 0 else 1)
        else:
            if kind != "B":
                raise ValueError("short root e_i only exists in type B")
            a = _weight_index(kind, n, i, c)
            b = 2 * n
    E = np.zeros((dim, dim), dtype=np.int64)
    E[a, b] = 1
    J = form(kind, n)
    Jinv_num = np.linalg.inv(J.astype(float))
    Y = E.astype(float) - Jinv_num @ E.T.astype(float) @ J.astype(float)
    X = np.rint(Y * 2).astype(np.int64)
    if not np.any(X):
        raise AssertionError("root vector vanished")
    if not np.array_equal(X.T @ J + J @ X, np.zeros_like(J)):
        raise AssertionError("root vector is not in the Lie algebra")
    return X


def root_space_scalar(lift: MonomialLift, M: np.ndarray, alpha: np.ndarray) -> int:
    """Scalar of Ad(M) on the alpha root space, where M is a power of the lift
    fixing alpha.  Independent of :func:`entry_rule_scalar`."""
    X = root_vector(lift.kind, lift.n, alpha)
    Minv = np.rint(np.linalg.inv(M.astype(float))).astype(np.int64)
    Y = M @ X @ Minv
    k = np.flatnonzero(X)
    ratios = {Fraction(int(Y.flat[t]), int(X.flat[t])) for t in k}
    if len(ratios) != 1 or np.count_nonzero(Y) != len(k):
        raise AssertionError("power does not preserve the root space")
    r = ratios.pop()
    if r not in (1, -1):
        raise AssertionError("unexpected root-space scalar")
    return int(r)


def entry_rule_scalar(lift: MonomialLift, M: np.ndarray, alpha: np.ndarray) -> Optional[int]:
    """Scalar from the diagonal entries of M, or None if M does not fix the
    relevant axes individually.

    * ``e_i - e_j``: d(v_i) / d(v_j)
    * ``e_i + e_j``: d(v_i) * d(v_j)
    * ``e_i`` (B): d(v_i) / d(e)
    * ``2 e_i`` (C): d(v_i)^2
    Signs of the root flip the scalar to its inverse, which for +-1 is itself.
    """
    sh = root_shape(alpha)
    n = lift.n
    d = [int(x) for x in np.diag(M)]
    idx = [i for i, _ in sh]
    if any(d[i] == 0 for i in idx):
        return None
    if lift.kind == "B" and len(sh) == 1 and abs(sh[0][1]) == 1:
        if d[2 * n] == 0:
            return None
        return d[idx[0]] * d[2 * n]
    # entries are +-1, so quotients and products coincide
    if len(sh) == 1:
        return d[idx[0]] ** 2
    return d[idx[0]] * d[idx[1]]


def root_in_R_theta(lift: MonomialLift, alpha_index: int, R: RootSystem,
                    w: Optional[Isometry] = None, method: str = "rule") -> bool:
    """Whether every power of the lift fixing the root acts trivially on its root space.

    ``w`` is the image of the lift in Aut(R); by default it is read from the
    lift.  ``method`` is ``"rule"`` (diagonal-entry rules) or ``"adjoint"``
    (explicit conjugation of a root vector).
    """
    if w is None:
        w = lift_image(lift)
    p = R.perm(w)
    alpha = R.roots[alpha_index]
    o = lift.order()
    M = np.eye(lift.dim, dtype=np.int64)
    x = alpha_index
    for e in range(1, o + 1):
        M = lift.matrix @ M
        x = int(p[x])
        if x != alpha_index:
            continue
        if method == "rule":
            s = entry_rule_scalar(lift, M, alpha)
            if s is None:
                raise ValueError("entry rules do not apply to this power")
        else:
            s = root_space_scalar(lift, M, alpha)
        if s != 1:
            return False
    return True


def lift_image(lift: MonomialLift) -> Isometry:
    """The element of W induced on characters: e_i -> +-e_j when v_i -> +-u_j."""
    n = lift.n
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        col = lift.matrix[:, i]
        j = int(np.flatnonzero(col)[0])
        if lift.kind == "A":
            M[j, i] = 1
        else:
            M[j % n, i] = 1 if j < n else -1
    return Isometry(M)


# ---------------------------------------------------------------- R_w

@dataclass
class RThetaSet:
    mask: np.ndarray
    provenance: str          # "computed" or "asserted"
    note: str = ""

    def __len__(self) -> int:
        return int(self.mask.sum())


def lump_partition(parts: Sequence[int]) -> Tuple[int, ...]:
    """Merge parts of equal 2-adic valuation; result sorted descending."""
    if not parts or any(int(m) < 1 for m in parts):
        raise ValueError("invalid partition")
    groups: Dict[int, int] = {}
    for m in parts:
        m = int(m)
        v = (m & -m).bit_length() - 1
        groups[v] = groups.get(v, 0) + m
    return tuple(sorted(groups.values(), reverse=True))


def classical_R_w(lift: MonomialLift, R: RootSystem, method: str = "rule") -> np.ndarray:
    w = lift_image(lift)
    return np.array([root_in_R_theta(lift, i, R, w, method) for i in range(len(R))], dtype=bool)


def c_lambda_mask(R: RootSystem, blocks: Sequence[Sequence[int]]) -> np.ndarray:
    """Roots of C_n supported inside a single block of coordinates."""
    which = {}
    for b, idx in enumerate(blocks):
        for i in idx:
            which[int(i)] = b
    out = np.zeros(len(R), dtype=bool)
    for k, r in enumerate(R.roots):
        sup = {which[int(i)] for i in np.flatnonzero(r)}
        out[k] = len(sup) == 1
    return out


def compute_R_w(w: Isometry, R: RootSystem) -> RThetaSet:
    """R_w for elliptic ``w`` in Aut(R) with R irreducible and built by :func:`build`."""
    if not is_elliptic(w, R):
        raise NotElliptic("R_w is only defined here for elliptic elements")
    fam = R.family
    if fam in ("B", "C", "D"):
        sp = SignedPermutation.from_isometry(w)
        lift = lift_signed_permutation(sp, fam)
        return RThetaSet(classical_R_w(lift, R), "computed")
    if fam == "A":
        M = w.num
        if w.den == 1 and np.all((M == 0) | (M == 1)):
            sigma = [int(np.flatnonzero(M[:, i])[0]) for i in range(M.shape[0])]
            return RThetaSet(classical_R_w(lift_permutation(sigma), R), "computed")
        if w == Isometry.scalar(R.ambient_dim, -1) or _is_minus_one_on_span(w, R):
            return RThetaSet(np.ones(len(R), dtype=bool), "asserted", "R_{-1} = R")
        raise ValueError("only permutations and -1 are supported in type A")
    if _is_minus_one_on_span(w, R):
        return RThetaSet(np.ones(len(R), dtype=bool), "asserted", "R_{-1} = R")
    from .classify import identify_exceptional
    label, conj = identify_exceptional(w, R)
    if R.label == "F4" and label == "A3xA1~":
        # the B4 subsystem containing w is conj applied to the standard one
        std = np.all(np.abs(R.roots) != 1, axis=1)
        p = R.perm(conj)
        mask = np.zeros(len(R), dtype=bool)
        mask[p[std]] = True
        return RThetaSet(mask, "asserted", "R_w is the B4 subsystem")
    return RThetaSet(np.ones(len(R), dtype=bool), "asserted", "R_w = R")


def _is_minus_one_on_span(w: Isometry, R: RootSystem) -> bool:
    p = R.perm(w)
    return bool(np.array_equal(p, R.neg))


def c_bar_mask(R: RootSystem, parts: Sequence[int]) -> np.ndarray:
    """The C_{lump(parts)} subsystem for the block layout of ``w_{C[parts]}``.

    Built from :func:`lump_partition` data only: the axes of all parts of one
    2-adic valuation form one block.
    """
    blocks: Dict[int, list] = {}
    o = 0
    for m in parts:
        v = (m & -m).bit_length() - 1
        blocks.setdefault(v, []).extend(range(o, o + m))
        o += m
    if sorted(len(b) for b in blocks.values()) != sorted(lump_partition(parts)):
        raise AssertionError("block sizes disagree with lump_partition")
    return c_lambda_mask(R, list(blocks.values()))


@dataclass
class NotRootExample:
    lift: MonomialLift
    R: RootSystem
    alpha1: int
    alpha2: int
    beta: int
    members: Tuple[bool, bool, bool]


def gl6_not_root_example() -> NotRootExample:
    """In GL_6 take theta = w * diag(-1, 1, 1, 1, 1, 1), w the permutation
    (1 3)(2 4 5).  Then a1 = e0 - e1 and a2 = e1 - e2 lie in R_theta while
    s_{a1}(a2) = e0 - e2 does not, so R_theta is not closed under reflections."""
    sigma = list(range(6))
    for cyc in ((1, 3), (2, 4, 5)):
        for k, i in enumerate(cyc):
            sigma[i] = cyc[(k + 1) % len(cyc)]
    P = lift_permutation(sigma).matrix
    D = np.diag([-1, 1, 1, 1, 1, 1]).astype(np.int64)
    lift = MonomialLift("A", 6, P @ D, _labels("A", 6))
    R = build("A5")
    a1 = R.index_of_vector(SCALE * np.array([1, -1, 0, 0, 0, 0]))
    a2 = R.index_of_vector(SCALE * np.array([0, 1, -1, 0, 0, 0]))
    beta = R.index_of_vector(R.reflection(R.roots[a1]).apply(R.roots[a2][None, :])[0])
    w = lift_image(lift)
    mem = tuple(root_in_R_theta(lift, i, R, w) for i in (a1, a2, beta))
    return NotRootExample(lift, R, a1, a2, beta, mem)
