"""The sign symbol <v/w> and its closed forms.

``<v/w>`` is the sign of the permutation that ``v`` induces on the orbit
space ``<w>\\R_w``.  It is defined when ``w`` is elliptic, ``v`` normalises
``<w>`` and ``v`` stabilises ``R_w``.  Every closed form here has a
brute-force counterpart built on :class:`SignContext`.
"""
from __future__ import annotations

from dataclasses import dataclass
from math import gcd
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .arith import kronecker_top, perm_sign, sgn_plus
from .rootsys import Isometry, RootSystem, decompose, sgn_R
from .rtheta import NotElliptic, RThetaSet, compute_R_w
from .weyl import (OrbitSpace, SignedPermutation, is_elliptic, norm_partition, orbit_space_perms,
                   partition_offsets, perm_order)


class NotNormalizing(ValueError):
    """The numerator does not normalise <w>."""


class NotStable(ValueError):
    """The numerator does not stabilise R_w."""


@dataclass
class SignResult:
    value: int
    orbits_w: int        # |<w>\R_w|
    orbits_vw: int       # |<v, w>\R_w|
    q: int               # v w v^-1 = w^q
    provenance: str

    @property
    def bridge(self) -> int:
        """(-1)^(|<w>\\R_w| - |<v,w>\\R_w|), which must equal ``value``."""
        return -1 if (self.orbits_w - self.orbits_vw) % 2 else 1


class SignContext:
    """Precomputed ``<w>\\R_w`` for repeated evaluation of ``<v/w>``.

    With ``require_elliptic=False`` and an explicit ``rw`` mask the
    ellipticity check is skipped; that is how the trivial case ``w = 1``
    (where R_1 = R) is evaluated.
    """

    def __init__(self, R: RootSystem, w: Isometry, rw: Optional[RThetaSet] = None,
                 require_elliptic: bool = True):
        if require_elliptic and not is_elliptic(w, R):
            raise NotElliptic("the denominator must be elliptic")
        if rw is None:
            rw = compute_R_w(w, R)
        self.R = R
        self.w = w
        self.rw = rw
        self.pw = R.perm(w)
        self.mask = np.asarray(rw.mask, dtype=bool)
        if not np.array_equal(self.mask[self.pw], self.mask):
            raise AssertionError("R_w is not w-stable")
        if not np.array_equal(self.mask[R.neg], self.mask):
            raise AssertionError("R_w is not negation-stable")
        self.space: OrbitSpace = orbit_space_perms(R, self.mask, [self.pw])
        self._pw_powers = None

    def exponent(self, pv: np.ndarray) -> Optional[int]:
        if self._pw_powers is None:
            pw = self.pw
            x = np.arange(len(pw))
            powers = []
            for _ in range(perm_order(pw)):
                powers.append(x.tobytes())
                x = pw[x]
            self._pw_powers = {k: q for q, k in enumerate(powers)}
        conj = np.empty_like(self.pw)
        conj[pv] = pv[self.pw]
        return self._pw_powers.get(conj.tobytes())

    def sign_perm(self, pv: np.ndarray) -> SignResult:
        """``<v/w>`` for ``v`` given as a permutation of root indices."""
        q = self.exponent(pv)
        if q is None:
            raise NotNormalizing("v does not normalise <w>")
        if not np.array_equal(self.mask[pv], self.mask):
            raise NotStable("v does not stabilise R_w")
        space = self.space
        img = [space.orbit_of[int(pv[o[0]])] for o in space.orbits]
        value = perm_sign(img)
        joint = orbit_space_perms(self.R, self.mask, [self.pw, pv])
        return SignResult(value, len(space), len(joint), q, self.rw.provenance)

    def sign(self, v: Isometry) -> SignResult:
        return self.sign_perm(self.R.perm(v))

    def __call__(self, v: Isometry) -> int:
        return self.sign(v).value


def sign_symbol(R: RootSystem, w: Isometry, v: Isometry, rw: Optional[RThetaSet] = None) -> SignResult:
    """``<v/w>`` by brute force on the orbit space ``<w>\\R_w``."""
    return SignContext(R, w, rw).sign(v)


# ---------------------------------------------------------------- w = 1 and w = -1

def sign_plus_case(v: Isometry, R: RootSystem) -> int:
    """``<v/1> = sgn_R(v)``."""
    return sgn_R(R, v)


def sign_plus_bruteforce(v: Isometry, R: RootSystem) -> int:
    """Sign of the permutation of R itself induced by v (the orbit space of the trivial group)."""
    ctx = SignContext(R, Isometry.identity(R.ambient_dim),
                      RThetaSet(np.ones(len(R), dtype=bool), "computed"), require_elliptic=False)
    return ctx(v)


def _closed_minus_weyl(R: RootSystem, word: Sequence[int]) -> int:
    g, gd = R.dual_coxeter(), R.dual_dual_coxeter()
    sl = ss = 1
    for k in word:
        if R.long_flag[R.simple[k]]:
            sl = -sl
        else:
            ss = -ss
    return sl ** g * ss ** gd


def minus_one_in_weyl(R: RootSystem) -> bool:
    f, r = R.component_types[0]
    return not (f == "A" and r >= 2 or f == "D" and r % 2 or f == "E" and r == 6)


def tau_sign(tau: Isometry, R: RootSystem) -> int:
    """``<tau/-1>`` for a diagram automorphism ``tau`` of an irreducible R.

    When -1 is not in W, it equals ``w_0 tau_0`` with ``tau_0`` the opposition
    involution; since -1 acts trivially on ``<-1>\\R``, ``<tau_0/-1>`` equals
    the closed form at ``w_0``.  For D_n with n even an involutive diagram
    automorphism is conjugate in Aut(R) to the sign change of one axis, which
    swaps the classes of ``e_i + e_k`` and ``e_i - e_k`` for the ``n - 1``
    other axes; diagram automorphisms of order 3 lie in the kernel.
    """
    p = R.perm(tau)
    ident = np.arange(len(R))
    if np.array_equal(p, ident):
        return 1
    f, r = R.component_types[0]
    if f == "D" and r % 2 == 0:
        if np.array_equal(p[p], ident):
            return -1 if (r - 1) % 2 else 1
        if np.array_equal(p[p[p]], ident):
            return 1
        raise ValueError("unexpected diagram automorphism")
    if not minus_one_in_weyl(R):
        w0 = R.longest_element()
        word, _, _ = decompose(R, w0)
        if not np.array_equal(R.perm(tau), R.perm(-w0)):
            raise ValueError("unexpected diagram automorphism")
        return _closed_minus_weyl(R, word)
    raise ValueError("this system has no nontrivial diagram automorphisms")


def sign_minus_case(v: Isometry, R: RootSystem) -> int:
    """``<v/-1> = sgn_long(v)^g * sgn_short(v)^gd`` on W, extended to Aut(R)
    through :func:`tau_sign`; g and gd are the dual Coxeter numbers of R and
    of its dual."""
    if not R.is_irreducible:
        raise ValueError("irreducible root system required")
    word, tau, _ = decompose(R, v)
    return _closed_minus_weyl(R, word) * tau_sign(tau, R)


def minus_one(R: RootSystem) -> Isometry:
    return Isometry.scalar(R.ambient_dim, -1)


# ---------------------------------------------------------------- type A

def a_coxeter(n: int) -> Isometry:
    """The n-cycle e_i -> e_{i+1} in W(A_{n-1})."""
    return a_norm(n, 1) if n == 1 else Isometry(np.roll(np.eye(n, dtype=np.int64), 1, axis=0))


def a_norm(n: int, q: int) -> Isometry:
    """``norm_{A,q}``: e_i -> e_{q i mod n}; conjugates the Coxeter element to its q-th power."""
    if gcd(q, n) != 1:
        raise ValueError("gcd(q, n) != 1")
    M = np.zeros((n, n), dtype=np.int64)
    for i in range(n):
        M[(q * i) % n, i] = 1
    return Isometry(M)


def sign_A_coxeter(n: int, q: int) -> int:
    """``<norm_{A,q}/Coxeter>`` in A_{n-1}, which is sgn+_n(q)."""
    return sgn_plus(n, q)


# ---------------------------------------------------------------- types B, C, D

def valuation(m: int) -> int:
    return (m & -m).bit_length() - 1


def classical_numerator(shape: str, parts: Sequence[int], arg) -> SignedPermutation:
    """The numerators of the classical closed forms, as signed permutations.

    * ``("coxeter", k)``: the negative cycle on block ``k`` alone;
    * ``("switch", (k, l))``: the involution exchanging blocks ``k`` and
      ``l`` (equal sizes) coordinate by coordinate;
    * ``("norm", q)``: :func:`norm_partition`.
    """
    parts = [int(m) for m in parts]
    n = sum(parts)
    offs = partition_offsets(parts)
    if shape == "coxeter":
        k = int(arg)
        return SignedPermutation.from_cycles(n, [("n", tuple(range(offs[k], offs[k] + parts[k])))])
    if shape == "switch":
        k, l = arg
        if k == l or parts[k] != parts[l]:
            raise ValueError("switch needs two distinct blocks of equal size")
        return SignedPermutation.from_cycles(
            n, [("p", (offs[k] + t, offs[l] + t)) for t in range(parts[k])])
    if shape == "norm":
        return norm_partition(parts, int(arg))
    raise ValueError(f"unsupported numerator shape {shape!r}")


def sign_classical_closed(kind: str, parts: Sequence[int], shape: str, arg) -> int:
    """Closed forms for ``<v/w_{kind[parts]}>`` with v as in :func:`classical_numerator`.

    coxeter: (-1)^(s-1); switch: -1 for B and C, +1 for D;
    norm: (-1)^(s'(s'-1)(q-1)/4) * prod over even parts r' of (2r'|q),
    with s the number of parts and s' the number of even parts.
    Type C requires all parts to share one 2-adic valuation.
    """
    parts = [int(m) for m in parts]
    if kind not in ("B", "C", "D"):
        raise ValueError("kind must be B, C or D")
    if kind == "C" and len({valuation(m) for m in parts}) != 1:
        raise ValueError("type C needs all parts of one 2-adic valuation")
    s = len(parts)
    if shape == "coxeter":
        return -1 if (s - 1) % 2 else 1
    if shape == "switch":
        k, l = arg
        if k == l or parts[k] != parts[l]:
            raise ValueError("switch needs two distinct blocks of equal size")
        return 1 if kind == "D" else -1
    if shape == "norm":
        q = int(arg)
        if q % 2 == 0 or any(gcd(q, m) != 1 for m in parts):
            raise ValueError("q must be a unit modulo 2*lcm(parts)")
        even = [m for m in parts if m % 2 == 0]
        sp = len(even)
        e = sp * (sp - 1) * (q - 1) // 4
        out = -1 if e % 2 else 1
        for r in even:
            out *= kronecker_top(2 * r, q)
        return out
    raise ValueError(f"unsupported numerator shape {shape!r}")


def classical_units(parts: Sequence[int]) -> List[int]:
    """Representatives in (0, 2*lcm) of the units modulo 2*lcm(parts)."""
    L = 1
    for m in parts:
        L = L * m // gcd(L, m)
    return [q for q in range(1, 2 * L) if gcd(q, 2 * L) == 1]


# ---------------------------------------------------------------- odd powers

def reduce_odd_power_check(R: RootSystem, w: Isometry, v: Isometry, k: int) -> Tuple[int, int]:
    """``(<v/w>, <v/w^k>)`` for odd ``k``, with R_{w^k} computed independently."""
    if k % 2 == 0:
        raise ValueError("k must be odd")
    return sign_symbol(R, w, v).value, sign_symbol(R, w ** k, v).value


# ---------------------------------------------------------------- reducible systems

@dataclass
class ProductReport:
    direct: int
    product: int
    factors: List[Tuple[int, int, int, int]]   # (e, f, <sigma'/theta'>, <theta'/1>) per orbit of components


def _component_perm(R: RootSystem, p: np.ndarray) -> List[int]:
    comp = R.root_component
    out = []
    for c in range(len(R.components)):
        imgs = set(comp[p[comp == c]].tolist())
        if len(imgs) != 1:
            raise ValueError("map does not permute the components")
        out.append(imgs.pop())
    return out


def _orbit_parity(R: RootSystem, idx: np.ndarray, perms: Sequence[np.ndarray]) -> int:
    mask = np.zeros(len(R), dtype=bool)
    mask[idx] = True
    return len(orbit_space_perms(R, mask, perms))


def product_over_components_perms(R: RootSystem, pw: np.ndarray, pv: np.ndarray,
                                  exponent: str = "f") -> ProductReport:
    """Direct ``(-1)^(|N\\R| - |Gamma\\R|)`` against the product over orbits of components.

    Each orbit of components under ``Gamma = <v, w>`` contributes
    ``<sigma'/theta'> * <theta'/1>^(x - 1)`` where ``theta' = w^e`` and
    ``sigma' = w^j v^f`` stabilise a chosen component.  ``x`` is ``f``
    (default) or ``e`` when ``exponent="e"``.  R_w is taken to be all of R.
    """
    if exponent not in ("e", "f"):
        raise ValueError("exponent must be 'e' or 'f'")
    full = np.arange(len(R))
    n_w = _orbit_parity(R, full, [pw])
    n_g = _orbit_parity(R, full, [pw, pv])
    if conjugation_exponent_perm(pw, pv) is None:
        raise NotNormalizing("v does not normalise <w>")
    direct = -1 if (n_w - n_g) % 2 else 1
    cw, cv = _component_perm(R, pw), _component_perm(R, pv)
    ncomp = len(cw)
    seen = set()
    total = 1
    factors = []
    for c in range(ncomp):
        if c in seen:
            continue
        orbit = {c}
        frontier = [c]
        while frontier:
            x = frontier.pop()
            for m in (cw, cv):
                if m[x] not in orbit:
                    orbit.add(m[x])
                    frontier.append(m[x])
        seen |= orbit
        # e: least e with w^e stabilising c
        e, x = 1, cw[c]
        while x != c:
            x = cw[x]
            e += 1
        n_orbit = set()
        x = c
        for _ in range(e):
            n_orbit.add(x)
            x = cw[x]
        # f: least f with v^f stabilising N.c
        f = 1
        cur = {cv[y] for y in n_orbit}
        while cur != n_orbit:
            cur = {cv[y] for y in cur}
            f += 1
        theta = np.arange(len(R))
        for _ in range(e):
            theta = pw[theta]
        vf = np.arange(len(R))
        for _ in range(f):
            vf = pv[vf]
        comp_idx = np.flatnonzero(R.root_component == c)
        sigma = None
        y = vf
        for _ in range(e):
            if set(R.root_component[y[comp_idx]].tolist()) == {c}:
                sigma = y
                break
            y = pw[y]
        if sigma is None:
            raise AssertionError("no element of N v^f stabilises the component")
        a = _orbit_parity(R, comp_idx, [theta])
        b = _orbit_parity(R, comp_idx, [theta, sigma])
        sym = -1 if (a - b) % 2 else 1
        # <theta'/1>: sign of theta' on the component itself
        loc = {int(i): k for k, i in enumerate(comp_idx)}
        corr = perm_sign([loc[int(theta[i])] for i in comp_idx])
        x = f if exponent == "f" else e
        total *= sym * corr ** (x - 1)
        factors.append((e, f, sym, corr))
    return ProductReport(direct, total, factors)


def conjugation_exponent_perm(pw: np.ndarray, pv: np.ndarray) -> Optional[int]:
    conj = np.empty_like(pw)
    conj[pv] = pv[pw]
    x = np.arange(len(pw))
    for q in range(perm_order(pw)):
        if np.array_equal(x, conj):
            return q
        x = pw[x]
    return None


def product_over_components(R: RootSystem, w: Isometry, v: Isometry, exponent: str = "f") -> ProductReport:
    if R.is_irreducible:
        raise ValueError("R must be reducible")
    return product_over_components_perms(R, R.perm(w), R.perm(v), exponent)
