"""Group-element bookkeeping: signed permutations, ellipticity, parabolics, orbits.

Signed permutations model W(B_n) as permutations of Z/2nZ that commute with
``i -> i + n``; index ``i < n`` stands for ``e_i`` and ``i + n`` for ``-e_i``.
They print in cycle notation, ``n(0 1)`` for a negative cycle and ``p(0 2)``
for a positive one, and act on any ambient space of dimension ``n`` (so the
same object describes elements of W(B4) inside F4 or of W(D8) inside E8).
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import sympy

from .rootsys import (Isometry, NotAnAutomorphism, RootSystem, _indecomposables, decompose,
                      subsystem, weyl_closure)


class CycleParseError(ValueError):
    """Malformed cycle notation."""


# ---------------------------------------------------------------- signed permutations

class SignedPermutation:
    """A permutation of Z/2nZ commuting with ``i -> i + n``."""

    __slots__ = ("n", "map")

    def __init__(self, n: int, mapping: Sequence[int]):
        mapping = tuple(int(x) % (2 * n) for x in mapping)
        if len(mapping) != 2 * n or sorted(mapping) != list(range(2 * n)):
            raise ValueError("not a permutation of Z/2nZ")
        if any(mapping[(i + n) % (2 * n)] != (mapping[i] + n) % (2 * n) for i in range(2 * n)):
            raise ValueError("map does not commute with the antipode i -> i + n")
        self.n = n
        self.map = mapping

    @classmethod
    def identity(cls, n: int) -> "SignedPermutation":
        return cls(n, range(2 * n))

    @classmethod
    def from_cycles(cls, n: int, cycles: Iterable[Tuple[str, Sequence[int]]]) -> "SignedPermutation":
        """Build from ``[("n", (0, 1)), ("p", (2, 3))]`` style data."""
        m = list(range(2 * n))
        touched = set()
        for kind, cyc in cycles:
            cyc = [int(j) % (2 * n) for j in cyc]
            if not cyc:
                raise CycleParseError("empty cycle")
            base = {j % n for j in cyc}
            if len(base) != len(cyc) or base & touched:
                raise CycleParseError("cycles must involve distinct axes")
            touched |= base
            r = len(cyc)
            for k, j in enumerate(cyc):
                nxt = cyc[(k + 1) % r]
                if kind == "n" and k == r - 1:
                    nxt = (nxt + n) % (2 * n)
                m[j] = nxt
                m[(j + n) % (2 * n)] = (nxt + n) % (2 * n)
        return cls(n, m)

    @classmethod
    def parse(cls, text: str, n: Optional[int] = None) -> "SignedPermutation":
        """Parse ``n(0 1)n(2 3)``, ``p(1 3)n(2)`` etc.  ``id`` is the identity.

        Whitespace is ignored between cycles; inside a cycle entries are
        separated by spaces or commas.  ``n`` defaults to one more than the
        largest entry.
        """
        body = text.strip()
        if body in ("", "id", "1"):
            if n is None:
                raise CycleParseError("rank needed for the identity")
            return cls.identity(n)
        pos = 0
        cycles = []
        tok = re.compile(r"\s*([np])\s*\(([^()]*)\)\s*")
        while pos < len(body):
            m = tok.match(body, pos)
            if not m:
                raise CycleParseError(f"cannot parse cycle notation at {body[pos:]!r}")
            entries = [x for x in re.split(r"[\s,]+", m.group(2).strip()) if x]
            if not entries or not all(re.fullmatch(r"\d+", x) for x in entries):
                raise CycleParseError(f"bad cycle {m.group(0).strip()!r}")
            cycles.append((m.group(1), [int(x) for x in entries]))
            pos = m.end()
        if n is None:
            n = max(max(c) for _, c in cycles) + 1
        if any(j >= 2 * n for _, c in cycles for j in c):
            raise CycleParseError("cycle entry out of range")
        return cls.from_cycles(n, cycles)

    def cycles(self) -> List[Tuple[str, Tuple[int, ...]]]:
        """Canonical cycle list: each cycle once, started at its least element,
        ordered by least element; fixed axes omitted."""
        n, m = self.n, self.map
        seen = set()
        out = []
        for start in range(n):
            if start in seen:
                continue
            cyc = [start]
            x = m[start]
            while x != start and x != start + n:
                cyc.append(x)
                x = m[x]
            kind = "n" if x == start + n else "p"
            for j in cyc:
                seen.add(j % n)
            if kind == "p" and len(cyc) == 1:
                continue
            out.append((kind, tuple(cyc)))
        return out

    def cycle_type(self) -> Tuple[Tuple[int, ...], Tuple[int, ...]]:
        """(negative cycle lengths, positive cycle lengths incl. fixed axes), sorted descending."""
        neg, pos = [], []
        n, m = self.n, self.map
        seen = set()
        for start in range(n):
            if start in seen:
                continue
            x, r = start, 0
            while True:
                seen.add(x % n)
                x = m[x]
                r += 1
                if x % n == start:
                    break
            (neg if x == start + n else pos).append(r)
        return tuple(sorted(neg, reverse=True)), tuple(sorted(pos, reverse=True))

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "id"
        return "".join(f"{k}({' '.join(str(j) for j in c)})" for k, c in cyc)

    def __repr__(self) -> str:
        return f"SignedPermutation({self.n}, {self})"

    def __eq__(self, other) -> bool:
        return isinstance(other, SignedPermutation) and self.map == other.map

    def __hash__(self) -> int:
        return hash(self.map)

    def __mul__(self, other: "SignedPermutation") -> "SignedPermutation":
        """Composition: ``(a * b)(i) = a(b(i))``."""
        if self.n != other.n:
            raise ValueError("rank mismatch")
        return SignedPermutation(self.n, [self.map[other.map[i]] for i in range(2 * self.n)])

    def inverse(self) -> "SignedPermutation":
        inv = [0] * (2 * self.n)
        for i, j in enumerate(self.map):
            inv[j] = i
        return SignedPermutation(self.n, inv)

    def __pow__(self, k: int) -> "SignedPermutation":
        base = self if k >= 0 else self.inverse()
        out = SignedPermutation.identity(self.n)
        for _ in range(abs(k)):
            out = out * base
        return out

    def order(self) -> int:
        neg, pos = self.cycle_type()
        o = 1
        for r in neg:
            o = o * 2 * r // gcd(o, 2 * r)
        for r in pos:
            o = o * r // gcd(o, r)
        return o

    def negative_cycle_count(self) -> int:
        return len(self.cycle_type()[0])

    def in_weyl_D(self) -> bool:
        """Membership in W(D_n): an even number of sign changes."""
        return sum(1 for i in range(self.n) if self.map[i] >= self.n) % 2 == 0

    def matrix(self) -> np.ndarray:
        """Integer matrix sending e_i to the signed basis vector of index map(i)."""
        n = self.n
        M = np.zeros((n, n), dtype=np.int64)
        for i in range(n):
            j = self.map[i]
            M[j % n, i] = 1 if j < n else -1
        return M

    def to_isometry(self, target: Optional[RootSystem] = None) -> Isometry:
        """The isometry e~_i -> e~_{p(i)}; checked against ``target`` if given."""
        iso = Isometry(self.matrix())
        if target is not None:
            if target.ambient_dim != self.n:
                raise ValueError(f"rank mismatch: {self.n} vs ambient dimension {target.ambient_dim}")
            if not target.is_automorphism(iso):
                raise NotAnAutomorphism(f"{self} does not preserve {target.label}")
        return iso

    @classmethod
    def from_isometry(cls, a: Isometry) -> "SignedPermutation":
        """Inverse of :meth:`to_isometry`; the matrix must be a signed permutation matrix."""
        if a.den != 1:
            raise ValueError("not a signed permutation matrix")
        M = a.num
        n = M.shape[0]
        m = [0] * (2 * n)
        for i in range(n):
            nz = np.flatnonzero(M[:, i])
            if len(nz) != 1 or abs(M[nz[0], i]) != 1:
                raise ValueError("not a signed permutation matrix")
            j = int(nz[0]) if M[nz[0], i] == 1 else int(nz[0]) + n
            m[i] = j
            m[i + n] = (j + n) % (2 * n)
        return cls(n, m)


def signed_perm_to_isometry(p: SignedPermutation, target: RootSystem) -> Isometry:
    return p.to_isometry(target)


def partition_offsets(parts: Sequence[int]) -> List[int]:
    out, o = [], 0
    for m in parts:
        out.append(o)
        o += m
    return out


def coxeter_partition(parts: Sequence[int]) -> SignedPermutation:
    """The element with one negative cycle on each consecutive block of ``parts``."""
    n = sum(parts)
    return SignedPermutation.from_cycles(
        n, [("n", tuple(range(o, o + m))) for o, m in zip(partition_offsets(parts), parts)])


def norm_partition(parts: Sequence[int], q: int) -> SignedPermutation:
    """Blockwise multiplication by ``q`` on the signed indices of each block.

    Block ``k`` of size ``m`` uses local signed indices ``Z/2m``; the map is
    ``i -> q*i mod 2m``.  ``q`` must be odd and prime to every part.
    """
    if q % 2 == 0 or any(gcd(q, m) != 1 for m in parts):
        raise ValueError("q must be odd and prime to every part")
    n = sum(parts)
    mp = list(range(2 * n))
    for o, m in zip(partition_offsets(parts), parts):
        for i in range(2 * m):
            j = (q * i) % (2 * m)
            src = o + i if i < m else o + i - m + n
            dst = o + j if j < m else o + j - m + n
            mp[src] = dst
    return SignedPermutation(n, mp)


# ---------------------------------------------------------------- linear algebra on span R

def _sym(M: np.ndarray) -> sympy.Matrix:
    return sympy.Matrix(M.tolist())


def order(a: Isometry, limit: int = 10 ** 4) -> int:
    ident = Isometry.identity(a.dim)
    x = a
    for k in range(1, limit + 1):
        if x == ident:
            return k
        x = x @ a
    raise RuntimeError("order exceeds limit")


def perm_order(p: np.ndarray) -> int:
    o = 1
    seen = np.zeros(len(p), dtype=bool)
    for s in range(len(p)):
        if seen[s]:
            continue
        x, r = s, 0
        while not seen[x]:
            seen[x] = True
            x = p[x]
            r += 1
        o = o * r // gcd(o, r)
    return o


def fixed_space(a: Isometry, R: RootSystem) -> List[np.ndarray]:
    """Integer basis (simple-root coordinates) of the fixed vectors of ``a`` on span R."""
    M = _sym(R.simple_matrix(a)) - sympy.eye(R.rank)
    basis = []
    for v in M.nullspace():
        den = sympy.ilcm(*[sympy.fraction(x)[1] for x in v]) if len(v) else 1
        basis.append(np.array([int(x * den) for x in v], dtype=np.int64))
    return basis


def is_elliptic(a: Isometry, R: RootSystem) -> bool:
    """True iff ``a`` has no nonzero fixed vector on span R."""
    R.perm(a)  # raises if a does not permute R
    M = _sym(R.simple_matrix(a)) - sympy.eye(R.rank)
    return M.det() != 0


def char_poly(a: Isometry, R: RootSystem) -> Tuple[int, ...]:
    """Characteristic polynomial of ``a`` on span R, leading coefficient first."""
    x = sympy.Symbol("x")
    return tuple(int(c) for c in _sym(R.simple_matrix(a)).charpoly(x).all_coeffs())


@dataclass
class Parabolic:
    """The smallest parabolic subgroup containing an element.

    ``delta`` is a simple system of R (root indices) whose chamber closure
    contains a generic fixed vector, ``theta`` the subset orthogonal to it,
    ``levi`` the Levi subsystem R_theta (None when theta is empty) and
    ``restricted`` the element itself, which stabilises ``levi``.
    """

    delta: Tuple[int, ...]
    theta: Tuple[int, ...]
    levi: Optional[RootSystem]
    restricted: Isometry
    chi: np.ndarray


def smallest_parabolic(a: Isometry, R: RootSystem) -> Parabolic:
    basis = fixed_space(a, R)
    pair = R.coeffs @ R.gram  # pairing of each root with each simple root
    if basis:
        vals = np.stack([pair @ b for b in basis], axis=1).astype(object)
        B = int(np.abs(vals).max())
        N = 2 * B + 1  # balanced base-N digits: sum N^i x_i = 0 iff all x_i = 0
        weights = np.array([N ** i for i in range(len(basis))], dtype=object)
        chi_vals = vals @ weights
        chi = sum((int(w) * b.astype(object) for w, b in zip(weights, basis)),
                  np.zeros(R.rank, dtype=object))
    else:
        chi_vals = np.zeros(len(R), dtype=object)
        chi = np.zeros(R.rank, dtype=object)
    H = int(np.abs(R.heights).max()) + 1
    order_vals = chi_vals * H + R.heights.astype(object)
    delta = tuple(_indecomposables(R, order_vals))
    theta = tuple(i for i in delta if chi_vals[i] == 0)
    zero = np.array([v == 0 for v in chi_vals])
    if not np.array_equal(np.flatnonzero(zero).size > 0, len(theta) > 0):
        raise AssertionError("Levi subsystem and theta disagree")
    levi = subsystem(R, zero) if zero.any() else None
    if levi is not None:
        if levi.rank != len(theta):
            raise AssertionError("theta does not span the Levi subsystem")
        if not is_elliptic(a, levi):
            raise AssertionError("restriction to the Levi subsystem is not elliptic")
    _check_parabolic_membership(a, R, delta, theta)
    return Parabolic(delta, theta, levi, a, np.array(chi, dtype=object))


def _check_parabolic_membership(a: Isometry, R: RootSystem, delta, theta) -> None:
    Rd = RootSystem(R.label, R.roots, [R.roots[i] for i in delta])
    word, _, tau_perm = decompose(Rd, a)
    pos = {int(Rd.simple[k]): k for k in range(Rd.rank)}
    theta_pos = {pos[Rd.index_of_vector(R.roots[i])] for i in theta}
    if not all(k in theta_pos for k in word):
        raise AssertionError("Weyl part leaves W_theta")
    if {tau_perm[k] for k in theta_pos} != theta_pos:
        raise AssertionError("diagram part does not stabilise theta")


# ---------------------------------------------------------------- orbits

@dataclass
class OrbitSpace:
    """Orbits of a group on a set of root indices.

    Orbits are tuples of root indices, sorted; the representative of an
    orbit is its least index, which is also its lexicographically least
    vector because roots are stored in sorted order.
    """

    orbits: List[Tuple[int, ...]]
    orbit_of: Dict[int, int]
    symmetric_count: int

    @property
    def representatives(self) -> List[int]:
        return [o[0] for o in self.orbits]

    def sizes(self) -> List[int]:
        return sorted(len(o) for o in self.orbits)

    def __len__(self) -> int:
        return len(self.orbits)


def orbit_space(R: RootSystem, base, gens: Sequence[Isometry]) -> OrbitSpace:
    """Orbits of the group generated by ``gens`` on ``base`` (indices or mask)."""
    return orbit_space_perms(R, base, [R.perm(g) for g in gens])


def orbit_space_perms(R: RootSystem, base, perms: Sequence[np.ndarray]) -> OrbitSpace:
    base = np.asarray(base)
    idx = np.flatnonzero(base) if base.dtype == bool else np.unique(base)
    members = set(int(i) for i in idx)
    for p in perms:
        if any(int(p[i]) not in members for i in idx):
            raise ValueError("base is not closed under the generators")
    orbit_of: Dict[int, int] = {}
    orbits: List[Tuple[int, ...]] = []
    for s in sorted(members):
        if s in orbit_of:
            continue
        comp = {s}
        frontier = [s]
        while frontier:
            x = frontier.pop()
            for p in perms:
                y = int(p[x])
                if y not in comp:
                    comp.add(y)
                    frontier.append(y)
        k = len(orbits)
        orb = tuple(sorted(comp))
        orbits.append(orb)
        for x in orb:
            orbit_of[x] = k
    sym = sum(1 for o in orbits if orbit_of.get(int(R.neg[o[0]])) == orbit_of[o[0]])
    return OrbitSpace(orbits, orbit_of, sym)


def induced_orbit_permutation(space: OrbitSpace, p: np.ndarray) -> List[int]:
    """The permutation of orbits induced by a root permutation ``p``."""
    img = [space.orbit_of[int(p[o[0]])] for o in space.orbits]
    for k, o in enumerate(space.orbits):
        if any(space.orbit_of[int(p[x])] != img[k] for x in o):
            raise ValueError("map does not permute the orbits")
    return img


# ---------------------------------------------------------------- fingerprints

@dataclass(frozen=True)
class ClassFingerprint:
    char_poly: Tuple[int, ...]
    orbit_sizes: Tuple[int, ...]
    symmetric_orbit_count: int
    order: int

    def as_dict(self) -> dict:
        return {"char_poly": list(self.char_poly), "orbit_sizes": list(self.orbit_sizes),
                "symmetric_orbit_count": self.symmetric_orbit_count, "order": self.order}


def fingerprint(a: Isometry, R: RootSystem) -> ClassFingerprint:
    p = R.perm(a)
    sp = orbit_space_perms(R, np.ones(len(R), dtype=bool), [p])
    return ClassFingerprint(char_poly(a, R), tuple(sp.sizes()), sp.symmetric_count, perm_order(p))


# ---------------------------------------------------------------- normalisers

def conjugation_exponent(v: Isometry, w: Isometry, R: Optional[RootSystem] = None) -> Optional[int]:
    """The ``q`` (mod the order of w) with ``v w v^-1 = w^q``, or None.

    With ``R`` given the comparison is made on root permutations, i.e. on
    span R only.
    """
    if R is not None:
        pw = R.perm(w)
        pv = R.perm(v)
        conj = np.empty_like(pw)
        conj[pv] = pv[pw]  # v w v^-1 as a root permutation
        x = np.arange(len(pw))
        for q in range(perm_order(pw)):
            if np.array_equal(x, conj):
                return q
            x = pw[x]
        return None
    target = v @ w @ v.inverse()
    x = Isometry.identity(w.dim)
    for q in range(order(w)):
        if x == target:
            return q
        x = x @ w
    return None


def centralizer_and_normalizer_gens(w: Isometry, gens: Sequence[Isometry],
                                    R: Optional[RootSystem] = None) -> List[Tuple[Isometry, int]]:
    """Check that every generator normalises <w>; return pairs (generator, q)."""
    out = []
    for g in gens:
        q = conjugation_exponent(g, w, R)
        if q is None:
            raise ValueError("generator does not normalise <w>")
        out.append((g, q))
    return out


def parabolic_subgroup(R: RootSystem, u: Isometry, theta: Sequence[int], diagram: Sequence[Isometry],
                       group: Sequence[Isometry]) -> frozenset:
    """Keys of ``u A_{theta in simple} u^-1`` inside ``group`` (small systems only).

    ``theta`` holds positions in ``R.simple``; ``diagram`` is Aut(R, simple).
    """
    gens = [R.simple_reflection(k) for k in theta]
    gens += [t for t in diagram
             if sorted(_simple_image(R, t, k) for k in theta) == sorted(theta)]
    sub = weyl_closure(R, gens) if gens else [Isometry.identity(R.ambient_dim)]
    uinv = u.inverse()
    return frozenset((u @ x @ uinv).key() for x in sub)


def _simple_image(R: RootSystem, t: Isometry, k: int) -> int:
    p = R.perm(t)
    return R.simple.index(int(p[R.simple[k]]))


def perm_closure(gens: Sequence[np.ndarray], limit: int = 10 ** 6) -> List[np.ndarray]:
    """All elements of the permutation group generated by ``gens`` (arrays on range(N))."""
    gens = [np.asarray(g) for g in gens]
    if not gens:
        raise ValueError("need at least one generator")
    ident = np.arange(len(gens[0]))
    seen = {ident.tobytes(): ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = g[x]
                k = y.tobytes()
                if k not in seen:
                    seen[k] = y
                    nxt.append(y)
                    if len(seen) > limit:
                        raise RuntimeError("group larger than limit")
        frontier = nxt
    return list(seen.values())


def perm_inverse(p: np.ndarray) -> np.ndarray:
    inv = np.empty_like(p)
    inv[p] = np.arange(len(p))
    return inv
