"""Root systems of types A-G in explicit integer coordinates.

Every coordinate is stored multiplied by 2 (``SCALE``) so that the
half-integer vectors of F4 and E8 become integers.  Inner products are
computed on the scaled vectors; since only ratios of inner products ever
matter (reflections, length classes), the scale never leaks out.

Coordinates follow the 0-based convention ``e_0, ..., e_{n-1}``:

* ``A_{n-1}`` lives in dimension ``n`` as the vectors ``e_i - e_j``.
* ``B_n, C_n, D_n`` use ``+-e_i +- e_j`` plus ``+-e_i`` (B) or ``+-2 e_i`` (C).
* ``F4 = B4`` together with ``1/2(+-1, +-1, +-1, +-1)``.
* ``E8 = D8`` together with the half-integer vectors whose sign pattern has
  the same parity as the extra simple root ``beta`` below; ``E7`` and ``E6``
  are the roots of E8 orthogonal to ``a1`` and to ``a1, a2`` of D8.
* ``G2`` lives in dimension 3 with short roots ``e_i - e_j``.

Automorphisms are :class:`Isometry` objects: exact rational matrices on the
ambient space, stored as an integer numerator and a positive denominator.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import reduce
from itertools import combinations, product
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

SCALE = 2

DUAL_COXETER = {"A": lambda r: r + 1, "B": lambda r: 2 * r - 1,
                "C": lambda r: r + 1, "D": lambda r: 2 * (r - 1),
                "E": {6: 12, 7: 18, 8: 30}.__getitem__,
                "F": lambda r: 9, "G": lambda r: 4}


class NotAnAutomorphism(ValueError):
    """Raised when a matrix does not permute the roots of a system."""


# ---------------------------------------------------------------- isometries

class Isometry:
    """An exact linear map ``num / den`` on the ambient space.

    ``num`` is an integer matrix and ``den`` a positive integer, kept in
    lowest terms so that equal maps compare equal.  Composition is ``@``:
    ``(a @ b)(x) = a(b(x))``.
    """

    __slots__ = ("num", "den", "_key")

    def __init__(self, num, den: int = 1):
        num = np.asarray(num, dtype=np.int64)
        if num.ndim != 2 or num.shape[0] != num.shape[1]:
            raise ValueError("isometry matrix must be square")
        if den <= 0:
            raise ValueError("denominator must be positive")
        g = reduce(gcd, (int(x) for x in num.flat), int(den))
        if g > 1:
            num = num // g
            den //= g
        self.num = num
        self.den = int(den)
        self._key = None

    @classmethod
    def identity(cls, dim: int) -> "Isometry":
        return cls(np.eye(dim, dtype=np.int64))

    @classmethod
    def scalar(cls, dim: int, c: int) -> "Isometry":
        return cls(c * np.eye(dim, dtype=np.int64))

    @classmethod
    def from_fractions(cls, rows: Sequence[Sequence]) -> "Isometry":
        fr = [[Fraction(x) for x in row] for row in rows]
        den = reduce(lambda a, b: a * b // gcd(a, b), (x.denominator for r in fr for x in r), 1)
        return cls([[int(x * den) for x in r] for r in fr], den)

    @property
    def dim(self) -> int:
        return self.num.shape[0]

    def key(self) -> Tuple:
        if self._key is None:
            self._key = (self.den, self.num.shape[0], self.num.tobytes())
        return self._key

    def __eq__(self, other) -> bool:
        return isinstance(other, Isometry) and self.key() == other.key()

    def __hash__(self) -> int:
        return hash(self.key())

    def __matmul__(self, other: "Isometry") -> "Isometry":
        return Isometry(self.num @ other.num, self.den * other.den)

    def __neg__(self) -> "Isometry":
        return Isometry(-self.num, self.den)

    def __pow__(self, k: int) -> "Isometry":
        base = self if k >= 0 else self.inverse()
        out = Isometry.identity(self.dim)
        for _ in range(abs(k)):
            out = out @ base
        return out

    def inverse(self) -> "Isometry":
        if not self.is_orthogonal():
            raise ValueError("inverse is only implemented for orthogonal maps")
        return Isometry(self.num.T.copy(), self.den)

    def is_orthogonal(self) -> bool:
        return bool(np.array_equal(self.num @ self.num.T, self.den ** 2 * np.eye(self.dim, dtype=np.int64)))

    def fractions(self) -> List[List[Fraction]]:
        return [[Fraction(int(x), self.den) for x in row] for row in self.num]

    def apply(self, vecs: np.ndarray) -> np.ndarray:
        """Images of integer row vectors; raises if a result is not integral."""
        vecs = np.asarray(vecs, dtype=np.int64)
        out = vecs @ self.num.T
        if self.den != 1:
            if np.any(out % self.den):
                raise NotAnAutomorphism("image is not an integral vector")
            out = out // self.den
        return out

    def det(self) -> Fraction:
        d = Fraction(int(round(np.linalg.det(self.num))), self.den ** self.dim)
        return d

    def __repr__(self) -> str:
        return f"Isometry(den={self.den}, num={self.num.tolist()})"


def block_diag_isometry(dim: int, blocks: Dict[Tuple[int, ...], np.ndarray]) -> Isometry:
    """Helper: identity outside the given coordinate blocks."""
    m = np.eye(dim, dtype=np.int64)
    for idx, b in blocks.items():
        m[np.ix_(idx, idx)] = b
    return Isometry(m)


# ---------------------------------------------------------------- root systems

class RootSystem:
    """A finite reduced root system with a chosen simple system.

    ``roots`` is an ``(N, d)`` integer array (coordinates times ``SCALE``)
    sorted lexicographically, so root ``i`` precedes root ``j`` iff its
    coordinate tuple is smaller.  ``simple`` lists indices into ``roots`` in
    the order of the supplied simple roots.
    """

    def __init__(self, label: str, roots: Iterable, simple: Optional[Iterable] = None,
                 family: Optional[str] = None, rank_param: Optional[int] = None,
                 functional=None):
        arr = np.array(sorted({tuple(int(x) for x in r) for r in roots}), dtype=np.int64)
        if arr.size == 0:
            raise ValueError("a root system needs at least one root")
        self.label = label
        self.family = family
        self.rank_param = rank_param
        self.roots = arr
        self.ambient_dim = arr.shape[1]
        self._lo = int(arr.min())
        self._base = int(arr.max()) - self._lo + 1
        self._weights = self._base ** np.arange(self.ambient_dim - 1, -1, -1, dtype=np.int64)
        self._keys = self._encode(arr)
        if np.any(np.diff(self._keys) <= 0):
            raise AssertionError("root encoding is not order preserving")
        self.neg = self.index_of(-arr)
        if simple is None:
            if functional is None:
                vals = arr.astype(object) @ _generic_functional(arr)
            else:
                vals = functional(arr)
            simple_idx = _indecomposables(self, vals)
        else:
            simple_idx = [self.index_of_vector(s) for s in simple]
        self.simple = tuple(simple_idx)
        self.rank = len(self.simple)
        self._setup()

    # -- lookups
    def _encode(self, vecs: np.ndarray) -> np.ndarray:
        return (np.asarray(vecs, dtype=np.int64) - self._lo) @ self._weights

    def index_of(self, vecs: np.ndarray) -> np.ndarray:
        """Indices of the given vectors (rows); raises if any is not a root."""
        vecs = np.asarray(vecs, dtype=np.int64)
        if vecs.ndim == 1:
            vecs = vecs[None, :]
        if vecs.shape[1] != self.ambient_dim:
            raise ValueError("dimension mismatch")
        if vecs.min(initial=self._lo) < self._lo or vecs.max(initial=self._lo) >= self._lo + self._base:
            raise NotAnAutomorphism("vector is not a root")
        keys = self._encode(vecs)
        pos = np.searchsorted(self._keys, keys)
        pos = np.minimum(pos, len(self._keys) - 1)
        if not np.array_equal(self._keys[pos], keys):
            raise NotAnAutomorphism("vector is not a root")
        return pos

    def index_of_vector(self, v) -> int:
        return int(self.index_of(np.asarray(v))[0])

    def contains(self, v) -> bool:
        try:
            self.index_of_vector(v)
            return True
        except NotAnAutomorphism:
            return False

    def __len__(self) -> int:
        return len(self.roots)

    def __repr__(self) -> str:
        return f"RootSystem({self.label!r}, {len(self)} roots, rank {self.rank})"

    # -- structure
    def _setup(self) -> None:
        S = self.roots[list(self.simple)]
        self.gram = S @ S.T
        self.norms = np.einsum("ij,ij->i", self.roots, self.roots)
        # coefficients of every root in the simple basis, solved exactly
        ginv = _rational_inverse(self.gram)
        pair = self.roots @ S.T
        coeffs = []
        for row in pair:
            c = [sum((ginv[k][j] * int(row[j]) for j in range(self.rank)), Fraction(0))
                 for k in range(self.rank)]
            if any(x.denominator != 1 for x in c):
                raise ValueError(f"{self.label}: simple roots do not form a base")
            coeffs.append([int(x) for x in c])
        self.coeffs = np.array(coeffs, dtype=np.int64).reshape(len(self), self.rank)
        pos = np.all(self.coeffs >= 0, axis=1)
        negs = np.all(self.coeffs <= 0, axis=1)
        if not np.all(pos | negs):
            raise ValueError(f"{self.label}: simple roots do not form a base")
        if not np.array_equal(self.roots @ S.T, self.coeffs @ self.gram):
            raise ValueError(f"{self.label}: roots are not in the span of the simple roots")
        self.positive = pos
        self.heights = self.coeffs.sum(axis=1)
        self._components()
        self._reflection_perms = [self.perm(self.reflection(int(i))) for i in self.simple]

    def _components(self) -> None:
        r = self.rank
        parent = list(range(r))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        for i, j in combinations(range(r), 2):
            if self.gram[i, j] != 0:
                parent[find(i)] = find(j)
        groups: Dict[int, List[int]] = {}
        for i in range(r):
            groups.setdefault(find(i), []).append(i)
        self.components = sorted(groups.values())
        comp_of_simple = {i: c for c, g in enumerate(self.components) for i in g}
        root_comp = np.empty(len(self), dtype=np.int64)
        for k, c in enumerate(self.coeffs):
            support = {comp_of_simple[i] for i in np.flatnonzero(c)}
            if len(support) != 1:
                raise AssertionError("root supported on two components")
            root_comp[k] = support.pop()
        self.root_component = root_comp
        # long-character flag: eps_long = -1 iff component simply laced or root long
        flag = np.zeros(len(self), dtype=bool)
        types = []
        for c in range(len(self.components)):
            mask = root_comp == c
            n = self.norms[mask]
            flag[mask] = n == n.max()
            types.append(_identify_component(int(mask.sum()), len(self.components[c]),
                                             int((n == n.max()).sum()), int((n < n.max()).sum()),
                                             int(n.max() // n.min())))
        self.long_flag = flag
        self.component_types = types

    @property
    def is_irreducible(self) -> bool:
        return len(self.components) == 1

    def cartan_type(self) -> str:
        return "x".join(f"{f}{r}" for f, r in self.component_types)

    def dual_coxeter(self) -> int:
        if not self.is_irreducible:
            raise ValueError("dual Coxeter number needs an irreducible system")
        return dual_coxeter(self.cartan_type())

    def dual_dual_coxeter(self) -> int:
        """Dual Coxeter number of the dual root system."""
        f, r = self.component_types[0]
        dual = {"B": "C", "C": "B"}.get(f, f)
        return dual_coxeter(f"{dual}{r}")

    # -- isometries attached to the system
    def reflection(self, alpha) -> Isometry:
        """The reflection ``s_alpha``; ``alpha`` is a root index or vector."""
        if isinstance(alpha, (int, np.integer)):
            a = self.roots[int(alpha)]
        else:
            a = np.asarray(alpha, dtype=np.int64)
            if not self.contains(a):
                raise ValueError("reflection needs a root of the system")
        nn = int(a @ a)
        return Isometry(nn * np.eye(self.ambient_dim, dtype=np.int64) - 2 * np.outer(a, a), nn)

    def simple_reflection(self, i: int) -> Isometry:
        return self.reflection(int(self.simple[i]))

    def perm(self, a: Isometry) -> np.ndarray:
        """Permutation of root indices induced by ``a`` (``p[i]`` = image of root i)."""
        if a.dim != self.ambient_dim:
            raise ValueError("dimension mismatch")
        return self.index_of(a.apply(self.roots))

    def is_automorphism(self, a: Isometry) -> bool:
        if not a.is_orthogonal():
            return False
        try:
            self.perm(a)
            return True
        except NotAnAutomorphism:
            return False

    def simple_matrix(self, a: Isometry) -> np.ndarray:
        """Matrix of ``a`` on span(R) in the simple-root basis (columns = images)."""
        p = self.perm(a)
        return self.coeffs[p[list(self.simple)]].T.copy()

    def matrix_from_perm(self, p: np.ndarray) -> Isometry:
        """The isometry of span(R) with root permutation ``p``, extended by the
        identity on the orthogonal complement of span(R)."""
        S = self.roots[list(self.simple)]
        iso = isometry_from_images(S, self.roots[p[list(self.simple)]])
        if not np.array_equal(self.perm(iso), p):
            raise NotAnAutomorphism("permutation is not induced by an automorphism")
        return iso

    def longest_element(self) -> Isometry:
        """The element of W sending every positive root to a negative one."""
        a = Isometry.identity(self.ambient_dim)
        while True:
            p = self.perm(a)
            # find a simple root still sent to a positive root
            for k, i in enumerate(self.simple):
                if self.positive[p[i]]:
                    a = a @ self.simple_reflection(k)
                    break
            else:
                return a

    def dump(self) -> str:
        """Deterministic text description (used by the command line)."""
        lines = [f"label: {self.label}", f"rank: {self.rank}",
                 f"ambient_dim: {self.ambient_dim}", f"scaled_by: {SCALE}", "roots:"]
        lines += ["  - [" + ", ".join(str(int(x)) for x in r) + "]" for r in self.roots]
        lines.append("simple: [" + ", ".join(str(i) for i in self.simple) + "]")
        return "\n".join(lines) + "\n"


def isometry_from_images(src, dst) -> Isometry:
    """The linear map sending each row of ``src`` to the matching row of ``dst``
    (rows linearly independent) and fixing the orthogonal complement of
    span(src) pointwise."""
    S = [[Fraction(int(x)) for x in row] for row in np.asarray(src)]
    T = [[Fraction(int(x)) for x in row] for row in np.asarray(dst)]
    d = len(S[0])
    comp = _nullspace(S, d)
    src_rows = S + comp
    dst_rows = T + comp
    if len(src_rows) != d:
        raise ValueError("source vectors are linearly dependent")
    # M src^T = dst^T, so M = dst^T (src^T)^{-1}
    inv = _rational_inverse([list(col) for col in zip(*src_rows)])
    M = [[sum((dst_rows[k][i] * inv[k][j] for k in range(d)), Fraction(0)) for j in range(d)]
         for i in range(d)]
    return Isometry.from_fractions(M)


def _generic_functional(roots: np.ndarray) -> np.ndarray:
    """A linear functional nonzero on every root, deterministic."""
    d = roots.shape[1]
    bound = int(np.abs(roots).sum(axis=1).max()) + 1
    f = np.array([(2 * bound + 1) ** (d - 1 - k) for k in range(d)], dtype=object)
    vals = roots.astype(object) @ f
    if np.any(vals == 0):
        raise AssertionError("functional vanishes on a root")
    return f


def _indecomposables(R: "RootSystem", vals) -> List[int]:
    """Simple roots of the positive system ``{beta : vals[beta] > 0}``, as the
    positive roots that are not sums of two positive roots.  ``vals`` holds
    the values of a linear functional on ``R.roots``."""
    pos = [i for i in range(len(R.roots)) if vals[i] > 0]
    if 2 * len(pos) != len(R.roots):
        raise ValueError("functional vanishes on a root")
    posset = {tuple(R.roots[i]) for i in pos}
    decomposable = set()
    for a, b in combinations(pos, 2):
        s = tuple(R.roots[a] + R.roots[b])
        if s in posset:
            decomposable.add(s)
    simple = [i for i in pos if tuple(R.roots[i]) not in decomposable]
    simple.sort(key=lambda i: (vals[i], tuple(R.roots[i])))
    return simple


def _rational_inverse(m) -> List[List[Fraction]]:
    n = len(m)
    a = [[m[i][j] if isinstance(m[i][j], Fraction) else Fraction(int(m[i][j]))
          for j in range(n)] + [Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _nullspace(rows: List[List[Fraction]], d: int) -> List[List[Fraction]]:
    """Basis of the vectors orthogonal to all ``rows`` (exact)."""
    a = [list(r) for r in rows]
    pivots = []
    r = 0
    for c in range(d):
        piv = next((i for i in range(r, len(a)) if a[i][c] != 0), None)
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        p = a[r][c]
        a[r] = [x / p for x in a[r]]
        for i in range(len(a)):
            if i != r and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[r])]
        pivots.append(c)
        r += 1
    free = [c for c in range(d) if c not in pivots]
    basis = []
    for fc in free:
        v = [Fraction(0)] * d
        v[fc] = Fraction(1)
        for i, pc in enumerate(pivots):
            v[pc] = -a[i][fc]
        basis.append(v)
    return basis


def _identify_component(n_roots: int, rank: int, n_long: int, n_short: int, ratio: int) -> Tuple[str, int]:
    if n_short == 0:
        if n_roots == rank * (rank + 1):
            return ("A", rank)
        if n_roots == 2 * rank * (rank - 1):
            return ("D", rank)
        if (rank, n_roots) in ((6, 72), (7, 126), (8, 240)):
            return ("E", rank)
    elif ratio == 3 and rank == 2:
        return ("G", 2)
    elif rank == 4 and n_roots == 48:
        return ("F", 4)
    elif n_short == 2 * rank:
        return ("B", rank)
    elif n_long == 2 * rank:
        return ("C", rank)
    raise ValueError("unrecognised root system component")


def dual_coxeter(label: str) -> int:
    """Dual Coxeter number of an irreducible type such as ``"F4"`` or ``"A4"``."""
    m = re.fullmatch(r"([A-G])(\d+)", label.strip())
    if not m or "x" in label:
        raise ValueError(f"need an irreducible label, got {label!r}")
    f, r = m.group(1), int(m.group(2))
    try:
        return DUAL_COXETER[f](r)
    except KeyError:
        raise ValueError(f"unsupported label {label!r}") from None


# ---------------------------------------------------------------- constructors

def _e(d: int, *pairs) -> np.ndarray:
    v = np.zeros(d, dtype=np.int64)
    for i, c in pairs:
        v[i] += c
    return v


def _type_a(n: int) -> RootSystem:
    """A_{n-1} in dimension n."""
    roots = [SCALE * (_e(n, (i, 1), (j, -1))) for i in range(n) for j in range(n) if i != j]
    simple = [SCALE * _e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    return RootSystem(f"A{n - 1}", roots, simple, "A", n - 1)


def _pm_pairs(n: int) -> List[np.ndarray]:
    return [SCALE * _e(n, (i, s), (j, t)) for i, j in combinations(range(n), 2)
            for s in (1, -1) for t in (1, -1)]


def _type_bcd(fam: str, n: int) -> RootSystem:
    roots = _pm_pairs(n)
    simple = [SCALE * _e(n, (i, 1), (i + 1, -1)) for i in range(n - 1)]
    if fam == "B":
        roots += [SCALE * _e(n, (i, s)) for i in range(n) for s in (1, -1)]
        simple.append(SCALE * _e(n, (n - 1, 1)))
    elif fam == "C":
        roots += [SCALE * _e(n, (i, 2 * s)) for i in range(n) for s in (1, -1)]
        simple.append(SCALE * _e(n, (n - 1, 2)))
    else:
        simple.append(SCALE * _e(n, (n - 2, 1), (n - 1, 1)))
    return RootSystem(f"{fam}{n}", roots, simple, fam, n)


def _half_vectors(d: int) -> List[np.ndarray]:
    return [np.array(s, dtype=np.int64) for s in product((1, -1), repeat=d)]


def _type_f4() -> RootSystem:
    b4 = _type_bcd("B", 4)
    roots = list(b4.roots) + _half_vectors(4)
    e = lambda *p: SCALE * _e(4, *p)
    a1, a2, a3, a4 = e((0, 1), (1, -1)), e((1, 1), (2, -1)), e((2, 1), (3, -1)), e((3, 1))
    extra = (a1 - a3 - 2 * a4) // 2
    return RootSystem("F4", roots, [a2, a3, a4, extra], "F", 4)


def d8_simple() -> List[np.ndarray]:
    """The simple roots a1..a8 of D8 used to build E8 (Bourbaki order for D8)."""
    e = lambda *p: SCALE * _e(8, *p)
    return [e((6, -1), (7, -1)), e((6, 1), (5, -1)), e((5, 1), (4, -1)), e((4, 1), (3, -1)),
            e((3, 1), (2, -1)), e((2, 1), (1, -1)), e((1, 1), (0, -1)), e((0, 1), (1, 1))]


def e8_beta() -> np.ndarray:
    a = d8_simple()
    coeffs = (1, 2, 3, 4, 5, 6, 4, 3)
    tot = sum(c * x for c, x in zip(coeffs, a))
    if np.any(tot % 2):
        raise AssertionError("beta is not integral after scaling")
    return -tot // 2


def _type_e8() -> RootSystem:
    beta = e8_beta()
    parity = int(np.sum(beta < 0)) % 2
    halves = [h for h in _half_vectors(8) if int(np.sum(h < 0)) % 2 == parity]
    roots = _pm_pairs(8) + halves
    a = d8_simple()
    simple = [beta, a[7], a[6], a[5], a[4], a[3], a[2], a[1]]
    return RootSystem("E8", roots, simple, "E", 8)


def _type_e_sub(n: int) -> RootSystem:
    e8 = _type_e8()
    a = d8_simple()
    perp = a[:8 - n]  # a1 for E7, a1 and a2 for E6
    mask = np.all(np.stack([e8.roots @ v for v in perp]) == 0, axis=0)
    simple = [e8.roots[i] for i in e8.simple[:n]]
    return RootSystem(f"E{n}", e8.roots[mask], simple, "E", n)


def _type_g2() -> RootSystem:
    short = [SCALE * _e(3, (i, 1), (j, -1)) for i in range(3) for j in range(3) if i != j]
    long_ = []
    for i in range(3):
        j, k = [x for x in range(3) if x != i]
        v = SCALE * _e(3, (i, 2), (j, -1), (k, -1))
        long_ += [v, -v]
    simple = [SCALE * _e(3, (0, 1), (1, -1)), SCALE * _e(3, (0, -2), (1, 1), (2, 1))]
    return RootSystem("G2", short + long_, simple, "G", 2)


_LABEL = re.compile(r"^\s*([A-G])\s*(\d+)\s*$")
_CACHE: Dict[str, RootSystem] = {}


def build(label: str) -> RootSystem:
    """Build ``A<r>`` (r >= 1), ``B<n>``/``C<n>`` (n >= 2), ``D<n>`` (n >= 2;
    ``D2`` is the reducible ``A1 x A1``), ``E6``, ``E7``, ``E8``, ``F4``, ``G2``.

    Results are cached; RootSystem objects are treated as immutable.
    """
    m = _LABEL.match(label)
    if not m:
        raise ValueError(f"unsupported root system label {label!r}")
    fam, r = m.group(1), int(m.group(2))
    key = f"{fam}{r}"
    if key in _CACHE:
        return _CACHE[key]
    if fam == "A" and r >= 1:
        R = _type_a(r + 1)
    elif fam in "BC" and r >= 2:
        R = _type_bcd(fam, r)
    elif fam == "D" and r >= 2:
        R = _type_bcd(fam, r)
    elif key == "E8":
        R = _type_e8()
    elif key in ("E7", "E6"):
        R = _type_e_sub(r)
    elif key == "F4":
        R = _type_f4()
    elif key == "G2":
        R = _type_g2()
    else:
        raise ValueError(f"unsupported root system label {label!r}")
    _CACHE[key] = R
    return R


def subsystem(R: RootSystem, mask, label: Optional[str] = None) -> RootSystem:
    """The root subsystem on the roots selected by ``mask`` (bool array or indices).

    Its positive system is the one induced by ``R``'s, so a positive root of
    the subsystem is positive in ``R``.
    """
    mask = np.asarray(mask)
    idx = np.flatnonzero(mask) if mask.dtype == bool else mask
    if len(idx) == 0:
        raise ValueError("empty subsystem")
    heights = {tuple(R.roots[i]): int(R.heights[i]) for i in idx}
    sub = RootSystem(label or "sub", R.roots[idx],
                     functional=lambda arr: np.array([heights[tuple(r)] for r in arr], dtype=object))
    if label is None:
        sub.label = sub.cartan_type()
    return sub


# ---------------------------------------------------------------- Weyl group data

def diagram_automorphisms(R: RootSystem) -> List[Isometry]:
    """The group Aut(R, simple) as isometries (identity on the complement of span R).

    Found by backtracking over permutations of the simple roots that preserve
    the Gram matrix.
    """
    G = R.gram
    r = R.rank
    out: List[Isometry] = []

    def extend(img: List[int]) -> None:
        k = len(img)
        if k == r:
            S = R.roots[list(R.simple)]
            T = R.roots[[R.simple[i] for i in img]]
            out.append(isometry_from_images(S, T))
            return
        for c in range(r):
            if c in img or G[c, c] != G[k, k]:
                continue
            if all(G[img[j], c] == G[j, k] for j in range(k)):
                extend(img + [c])

    extend([])
    return out


def automorphism_group(R: RootSystem, limit: int = 10 ** 6) -> List[Isometry]:
    """All of Aut(R) = W x| Aut(R, simple), by closure (small systems only)."""
    gens = [R.simple_reflection(k) for k in range(R.rank)]
    gens += [t for t in diagram_automorphisms(R) if t != Isometry.identity(R.ambient_dim)]
    return weyl_closure(R, gens, limit)


def random_weyl_element(R: RootSystem, rng, length: Optional[int] = None) -> Isometry:
    """Product of ``length`` random simple reflections (default: 2 * #positive roots + 5)."""
    if length is None:
        length = len(R) + 5
    a = Isometry.identity(R.ambient_dim)
    for k in rng.integers(0, R.rank, size=length):
        a = a @ R.simple_reflection(int(k))
    return a


def decompose(R: RootSystem, a: Isometry) -> Tuple[List[int], Isometry, Tuple[int, ...]]:
    """Write ``a = s_{i1} ... s_{ik} tau`` with ``tau`` stabilising the simple system.

    Returns the word ``[i1, ..., ik]`` (positions in ``R.simple``, reduced),
    ``tau`` as an isometry, and ``tau``'s permutation of the simple roots.
    The walk repeatedly strips the smallest left descent: if
    ``a^{-1}(alpha_i) < 0`` then ``a <- s_i a``.
    """
    p = R.perm(a)
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    word: List[int] = []
    while True:
        for k, i in enumerate(R.simple):
            if not R.positive[inv[i]]:
                s = R._reflection_perms[k]
                p = s[p]
                inv = inv[s]  # s is an involution
                word.append(k)
                break
        else:
            break
    tau = a
    for k in word:
        tau = R.simple_reflection(k) @ tau
    tau_perm = tuple(R.simple.index(int(p[i])) for i in R.simple)
    return word, tau, tau_perm


def inversion_count(R: RootSystem, a: Isometry, mask: Optional[np.ndarray] = None) -> int:
    """Number of positive roots (restricted to ``mask``) sent to negative roots."""
    p = R.perm(a)
    sel = R.positive if mask is None else (R.positive & mask)
    return int(np.count_nonzero(~R.positive[p[sel]]))


def sgn_R(R: RootSystem, a: Isometry) -> int:
    """The sign character of Aut(R): -1 per simple reflection, trivial on diagram automorphisms."""
    word, _, _ = decompose(R, a)
    return -1 if len(word) % 2 else 1


def _sgn_star(R: RootSystem, a: Isometry, want_long: bool) -> int:
    word, _, _ = decompose(R, a)
    s = 1
    for k in word:
        if bool(R.long_flag[R.simple[k]]) == want_long:
            s = -s
    return s


def sgn_long(R: RootSystem, a: Isometry) -> int:
    """Product of eps_long over a reduced word (per component for reducible R)."""
    return _sgn_star(R, a, True)


def sgn_short(R: RootSystem, a: Isometry) -> int:
    return _sgn_star(R, a, False)


def weyl_closure(R: RootSystem, gens: Sequence[Isometry], limit: int = 10 ** 6) -> List[Isometry]:
    """All elements of the group generated by ``gens`` (breadth first, deterministic)."""
    ident = Isometry.identity(R.ambient_dim)
    seen = {ident.key(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g @ x
                k = y.key()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > limit:
                        raise RuntimeError("group larger than limit")
        frontier = nxt
    return list(seen.values())


def weyl_group(R: RootSystem, limit: int = 10 ** 6) -> List[Isometry]:
    return weyl_closure(R, [R.simple_reflection(k) for k in range(R.rank)], limit)


def direct_power(R: RootSystem, k: int) -> RootSystem:
    """``k`` mutually orthogonal copies of ``R`` in ``k * R.ambient_dim`` coordinates.

    Copy ``c`` occupies coordinates ``c*d .. c*d + d - 1``; the simple system is
    the concatenation of the copies' simple systems.
    """
    if k < 1:
        raise ValueError("k must be positive")
    d = R.ambient_dim
    roots, simple = [], []
    for c in range(k):
        pad = np.zeros((len(R), k * d), dtype=np.int64)
        pad[:, c * d:(c + 1) * d] = R.roots
        roots.append(pad)
        simple.extend(pad[i] for i in R.simple)
    return RootSystem(f"{R.label}^{k}", np.vstack(roots), simple)
