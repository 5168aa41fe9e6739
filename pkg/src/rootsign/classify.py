"""Elliptic classes of 2-power order and the embeddings realising the exceptional ones.

Exceptional representatives are signed permutations in the classical
subsystem (B4 in F4, D8 in E8) pushed through an :class:`EmbeddingDictionary`;
E7 and E6 live inside E8 coordinates and their representatives are
restrictions of E8 ones.  Class data (cycle notation, expected orders and
orbit counts, numerators with their expected signs) is read from
``data/registry.json``.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .rootsys import Isometry, RootSystem, build, d8_simple, e8_beta, isometry_from_images
from .weyl import (ClassFingerprint, SignedPermutation, fingerprint, is_elliptic, orbit_space_perms,
                   perm_closure, perm_inverse, perm_order)


class UnknownClass(KeyError):
    """No class of that name in the registry."""


# ---------------------------------------------------------------- classical lists

def two_power_partitions(n: int, largest: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Partitions of n into powers of 2, parts descending, partitions in reverse lex order."""
    if largest is None:
        largest = 1 << max(n.bit_length() - 1, 0)
    if n == 0:
        return [()]
    out = []
    p = largest
    while p >= 1:
        if p <= n:
            out += [(p,) + rest for rest in two_power_partitions(n - p, p)]
        p //= 2
    return out


@dataclass(frozen=True)
class ClassicalClass:
    kind: str
    label: str                  # partition like "2+1+1", or "coxeter" / "-1" in type A
    parts: Tuple[int, ...]
    in_weyl: bool               # for D: even number of negative cycles


def classical_elliptic_2power(kind: str, n: int) -> List[ClassicalClass]:
    """Elliptic classes of 2-power order in A = W(B_n) acting on B_n, C_n or D_n,
    or in Aut(A_{n-1}) for ``kind == "A"`` (``n`` is then the number of coordinates)."""
    if kind == "A":
        if n < 2:
            raise ValueError("A_{n-1} needs n >= 2")
        out = []
        if n & (n - 1) == 0:
            out.append(ClassicalClass("A", "coxeter", (n,), True))
        if n > 2:
            out.append(ClassicalClass("A", "-1", (), n == 2))
        return out
    if kind not in ("B", "C", "D"):
        raise ValueError(f"unsupported type {kind!r}")
    out = []
    for lam in two_power_partitions(n):
        label = "+".join(str(m) for m in lam)
        out.append(ClassicalClass(kind, label, lam, kind != "D" or len(lam) % 2 == 0))
    return out


def automorphism_perms(R: RootSystem, kind: str) -> List[np.ndarray]:
    """The group A used for classical class enumeration, as root permutations:
    W(B_n) for types B, C, D and S_n x <-1> for type A."""
    n = R.ambient_dim
    gens = []
    for i in range(n - 1):
        gens.append(SignedPermutation.from_cycles(n, [("p", (i, i + 1))]))
    if kind == "A":
        isos = [g.to_isometry() for g in gens] + [Isometry.scalar(n, -1)]
    else:
        gens.append(SignedPermutation.from_cycles(n, [("n", (n - 1,))]))
        isos = [g.to_isometry() for g in gens]
    return perm_closure([R.perm(g) for g in isos])


def conjugacy_classes_perms(elements: Sequence[np.ndarray], group: Sequence[np.ndarray]) -> List[List[bytes]]:
    """Partition ``elements`` into classes under conjugation by every element of ``group``."""
    todo = {e.tobytes(): e for e in elements}
    inv = [perm_inverse(g) for g in group]
    classes = []
    while todo:
        key, x = next(iter(todo.items()))
        cls = set()
        for g, gi in zip(group, inv):
            cls.add(g[x[gi]].tobytes())
        if not cls <= set(todo) | cls:
            raise AssertionError("conjugation left the element set")
        for k in cls:
            todo.pop(k, None)
        classes.append(sorted(cls))
    return classes


def _elliptic_perm(R: RootSystem, p: np.ndarray) -> bool:
    return is_elliptic(R.matrix_from_perm(p), R)


def exhaustive_classical(kind: str, n: int) -> List[List[bytes]]:
    """Elliptic 2-power classes of the classical group A by brute force (rank <= 5)."""
    R = build(f"A{n - 1}" if kind == "A" else f"{kind}{n}")
    group = automorphism_perms(R, kind)
    ell = [p for p in group if perm_order(p) & (perm_order(p) - 1) == 0 and _elliptic_perm(R, p)]
    return conjugacy_classes_perms(ell, group)


# ---------------------------------------------------------------- embeddings

@dataclass
class EmbeddingDictionary:
    """A linear map from the ambient space of ``source`` to that of ``target``.

    ``simple_images`` are the explicit target vectors of the source simple
    roots; ``map`` is the isometry they determine (identity on the
    orthogonal complement of the source span).
    """

    source: RootSystem
    target: RootSystem
    simple_images: List[np.ndarray]
    map: Isometry = field(init=False)

    def __post_init__(self):
        src = [self.source.roots[i] for i in self.source.simple]
        self.map = isometry_from_images(src, self.simple_images)
        s = np.array(src)
        t = np.array(self.simple_images)
        if not np.array_equal(s @ s.T, t @ t.T):
            raise AssertionError("dictionary does not preserve inner products")

    def image_roots(self) -> np.ndarray:
        return self.map.apply(self.source.roots)

    def image_mask(self) -> np.ndarray:
        """Mask of target roots hit by source roots; raises if some image is not a root."""
        idx = self.target.index_of(self.image_roots())
        mask = np.zeros(len(self.target), dtype=bool)
        mask[idx] = True
        return mask

    def push(self, p: SignedPermutation) -> Isometry:
        """The target isometry ``map o p o map^-1``."""
        a = p.to_isometry(self.source)
        out = self.map @ a @ self.map.inverse()
        if not self.target.is_automorphism(out):
            raise AssertionError("pushed element is not an automorphism of the target")
        return out


@lru_cache(maxsize=None)
def b4_in_f4() -> EmbeddingDictionary:
    """B4 simple roots (e0-e1, e1-e2, e2-e3, e3) inside F4.

    The F4 simple system is ``(a2, a3, a4, (a1 - a3 - 2 a4)/2)`` in terms of
    the B4 simple roots ``a1..a4``; both live in the same four coordinates.
    """
    B, F = build("B4"), build("F4")
    a = [B.roots[i] for i in B.simple]
    expected = [a[1], a[2], a[3], (a[0] - a[2] - 2 * a[3]) // 2]
    got = [F.roots[i] for i in F.simple]
    if not all(np.array_equal(x, y) for x, y in zip(expected, got)):
        raise AssertionError("F4 simple system differs from its B4 description")
    return EmbeddingDictionary(B, F, a)


@lru_cache(maxsize=None)
def d8_in_e8() -> EmbeddingDictionary:
    """D8 simple roots a1..a8 (a1 = -(e6+e7), ..., a8 = e0+e1) inside E8.

    The E8 simple system is ``(beta, a8, a7, ..., a2)`` with
    ``beta = -(a1 + 2a2 + 3a3 + 4a4 + 5a5 + 6a6 + 4a7 + 3a8)/2``.
    """
    D, E = build("D8"), build("E8")
    a = d8_simple()
    Dd = RootSystem("D8", D.roots, a, "D", 8)  # same roots, simple system a1..a8
    expected = [e8_beta()] + [a[k] for k in range(7, 0, -1)]
    got = [E.roots[i] for i in E.simple]
    if not all(np.array_equal(x, y) for x, y in zip(expected, got)):
        raise AssertionError("E8 simple system differs from its D8 description")
    return EmbeddingDictionary(Dd, E, a)


def subsystem_mask(ambient: str) -> np.ndarray:
    """Mask of the classical subsystem: B4 in F4, D8 in E8, D6xC1 in E7, D5 in E6."""
    if ambient == "F4":
        return b4_in_f4().image_mask()
    d8 = d8_in_e8().image_mask()
    if ambient == "E8":
        return d8
    R = build(ambient)
    return d8[build("E8").index_of(R.roots)]


# ---------------------------------------------------------------- registry

@lru_cache(maxsize=None)
def registry() -> dict:
    text = resources.files("rootsign").joinpath("data/registry.json").read_text(encoding="utf-8")
    return json.loads(text)


@dataclass
class ClassLabel:
    name: str
    ambient: str
    representative: Isometry
    expected: ClassFingerprint
    data: dict


def class_names(ambient: str) -> List[str]:
    return [c["name"] for c in registry()["classes"] if c["ambient"] == ambient]


def registry_entry(ambient: str, name: str) -> dict:
    for c in registry()["classes"]:
        if c["ambient"] == ambient and name in [c["name"]] + c.get("aliases", []):
            return c
    raise UnknownClass(f"{ambient}/{name}")


def signed_perm(ambient: str, text: str) -> SignedPermutation:
    return SignedPermutation.parse(text, build(ambient).ambient_dim)


def exceptional_representative(name: str, ambient: str) -> ClassLabel:
    """The registry representative, pushed through the embedding and checked.

    F4 uses the B4 dictionary, E8 the D8 one; E7 and E6 restrict the E8
    element (same matrix on E8 coordinates) after checking it stabilises the
    smaller system.  G2 has only ``-1``.
    """
    entry = registry_entry(ambient, name)
    R = build(ambient)
    if ambient == "G2":
        rep = Isometry.scalar(R.ambient_dim, -1)
    else:
        sp = signed_perm(ambient, entry["cycles"])
        if ambient == "F4":
            rep = b4_in_f4().push(sp)
        else:
            rep = d8_in_e8().push(sp)
            if ambient != "E8" and not R.is_automorphism(rep):
                raise AssertionError(f"{name} does not stabilise {ambient}")
    if not is_elliptic(rep, R):
        raise AssertionError(f"{ambient}/{name} representative is not elliptic")
    fp = fingerprint(rep, R)
    if fp.order != entry["order"]:
        raise AssertionError(f"{ambient}/{name}: order {fp.order}, expected {entry['order']}")
    return ClassLabel(entry["name"], ambient, rep, fp, entry)


def perp_orbits(label: ClassLabel):
    """Orbits of the representative on the roots outside the classical subsystem."""
    R = build(label.ambient)
    mask = ~subsystem_mask(label.ambient)
    return orbit_space_perms(R, mask, [R.perm(label.representative)])


def identify_exceptional(w: Isometry, R: RootSystem) -> Tuple[str, Optional[Isometry]]:
    """Registry class of ``w`` and, for F4 and G2, some ``g`` with ``g rep g^-1 = w``.

    F4 and G2 are searched exhaustively.  For E6, E7 and E8 only the class
    fingerprint (characteristic polynomial, orbit sizes, symmetric orbit
    count, order) is compared, and ``g`` is None.
    """
    if R.label in ("F4", "G2"):
        pw = R.perm(w)
        group = _weyl_perms(R.label)
        for name in class_names(R.label):
            pr = R.perm(exceptional_representative(name, R.label).representative)
            for g in group:
                conj = np.empty_like(pr)
                conj[g] = g[pr]
                if np.array_equal(conj, pw):
                    return name, R.matrix_from_perm(g)
        raise UnknownClass("element is not in a registered class")
    if R.label in ("E6", "E7", "E8"):
        fp = fingerprint(w, R)
        hits = [name for name in class_names(R.label)
                if exceptional_representative(name, R.label).expected == fp]
        if len(hits) != 1:
            raise UnknownClass("element does not match exactly one registered fingerprint")
        return hits[0], None
    raise ValueError(f"{R.label} is not an exceptional system")


@lru_cache(maxsize=None)
def _weyl_perms_cached(label: str) -> Tuple[bytes, ...]:
    R = build(label)
    gens = [R.perm(R.simple_reflection(k)) for k in range(R.rank)]
    return tuple(p.tobytes() for p in perm_closure(gens))


def _weyl_perms(label: str) -> List[np.ndarray]:
    return [np.frombuffer(b, dtype=np.int64) for b in _weyl_perms_cached(label)]


# ---------------------------------------------------------------- F4 exhaustive

@dataclass
class F4Report:
    group_order: int
    classes: Dict[str, List[bytes]]      # registry name -> class members (root permutations)
    normalizers: Dict[str, List[np.ndarray]]


def exhaustive_verify_F4() -> F4Report:
    """All of W(F4): filter elliptic elements of 2-power order, split into
    classes by conjugating with every group element, and match each class to
    a registry representative.  Also returns N_W(<rep>) for each class."""
    R = build("F4")
    group = _weyl_perms("F4")
    if len(group) != 1152:
        raise AssertionError(f"|W(F4)| = {len(group)}")
    ell = []
    for p in group:
        o = perm_order(p)
        if o & (o - 1) == 0 and _elliptic_perm(R, p):
            ell.append(p)
    classes = conjugacy_classes_perms(ell, group)
    named: Dict[str, List[bytes]] = {}
    normalizers = {}
    for name in class_names("F4"):
        rep = exceptional_representative(name, "F4").representative
        key = R.perm(rep).tobytes()
        hit = [c for c in classes if key in c]
        if len(hit) != 1:
            raise AssertionError(f"representative of {name} not found in exactly one class")
        named[name] = hit[0]
        pw = R.perm(rep)
        powers = set()
        x = np.arange(len(R))
        for _ in range(perm_order(pw)):
            powers.add(x.tobytes())
            x = pw[x]
        norm = []
        for g in group:
            conj = np.empty_like(pw)
            conj[g] = g[pw]
            if conj.tobytes() in powers:
                norm.append(g)
        normalizers[name] = norm
    if len(named) != len(classes):
        raise AssertionError(f"{len(classes)} classes found, {len(named)} registered")
    return F4Report(len(group), named, normalizers)


# ---------------------------------------------------------------- reflection identity

def _vector_reflection(v: np.ndarray) -> Isometry:
    n = int(v @ v)
    return Isometry(n * np.eye(len(v), dtype=np.int64) - 2 * np.outer(v, v), n)


def admissible_diagram_identity_check(R: RootSystem, alpha, beta) -> bool:
    """For orthogonal roots ``alpha``, ``beta``: s_a s_b == s_{a+b} s_{a-b} as matrices.

    ``a + b`` and ``a - b`` need not be roots (they are not in a simply laced
    system); their reflections are taken as plain orthogonal reflections.
    """
    a = np.asarray(alpha, dtype=np.int64)
    b = np.asarray(beta, dtype=np.int64)
    if not (R.contains(a) and R.contains(b)):
        raise ValueError("alpha and beta must be roots")
    if int(a @ b) != 0:
        raise ValueError("alpha and beta must be orthogonal")
    lhs = R.reflection(a) @ R.reflection(b)
    rhs = _vector_reflection(a + b) @ _vector_reflection(a - b)
    return lhs == rhs
