"""Permutation signs, Jacobi symbols and multiplication permutations on Z/nZ.

Signs are plain ints in {+1, -1}.  A finite permutation is any sequence ``p``
with ``p[i]`` the image of ``i`` (so the domain is ``range(len(p))``), or a
mapping from a finite set to itself.
"""
from __future__ import annotations

from math import gcd
from typing import Dict, Hashable, List, Mapping, NamedTuple, Sequence, Tuple, Union

import numpy as np

Permutation = Union[Sequence[int], Mapping[Hashable, Hashable]]


def _as_mapping(p: Permutation) -> Mapping:
    if isinstance(p, Mapping):
        return p
    return dict(enumerate(p))


def _check_bijection(m: Mapping) -> None:
    images = set(m.values())
    if len(images) != len(m) or images != set(m):
        raise ValueError("not a permutation of its domain")


def cycles(p: Permutation) -> List[Tuple]:
    """Cycle decomposition, each cycle starting at its least element.

    Cycles are listed in order of their least elements, fixed points
    included, so the result is independent of how ``p`` was built.
    """
    m = _as_mapping(p)
    _check_bijection(m)
    seen = set()
    out = []
    for start in sorted(m):
        if start in seen:
            continue
        cyc = [start]
        seen.add(start)
        x = m[start]
        while x != start:
            cyc.append(x)
            seen.add(x)
            x = m[x]
        out.append(tuple(cyc))
    return out


def perm_sign(p: Permutation) -> int:
    """Sign of a permutation: (-1) to the number of even-length cycles."""
    even = sum(1 for c in cycles(p) if len(c) % 2 == 0)
    return -1 if even % 2 else 1


def orbit_count(p: Permutation) -> int:
    """Number of orbits of the cyclic group generated by ``p``."""
    return len(cycles(p))


def jacobi(q: int, n: int) -> int:
    """Jacobi symbol (q | n) for odd positive ``n`` and ``gcd(q, n) == 1``."""
    if n <= 0 or n % 2 == 0:
        raise ValueError(f"Jacobi symbol needs an odd positive modulus, got {n}")
    if gcd(q, n) != 1:
        raise ValueError(f"gcd({q}, {n}) != 1")
    q %= n
    acc = 1
    while q:
        while q % 2 == 0:
            q //= 2
            if n % 8 in (3, 5):
                acc = -acc
        q, n = n, q
        if q % 4 == 3 and n % 4 == 3:
            acc = -acc
        q %= n
    return acc


def kronecker_top(a: int, q: int) -> int:
    """The symbol (a | q) for ``a > 0`` and odd ``q`` of either sign.

    Uses the Kronecker convention (a | -1) = 1 for positive ``a``, which is
    what makes (a | q) periodic in ``q`` modulo ``a`` when 4 divides ``a``.
    """
    if a <= 0:
        raise ValueError("numerator must be positive")
    return jacobi(a, abs(q))


def _check_coprime(n: int, q: int) -> None:
    if n < 1:
        raise ValueError(f"modulus must be positive, got {n}")
    if gcd(q, n) != 1:
        raise ValueError(f"gcd({q}, {n}) != 1")


def _class_rep(x: int, n: int, eps: int) -> int:
    x %= n
    return min(x, (-x) % n) if eps == -1 else x


def multiplication_permutation(n: int, q: int, eps: int) -> dict:
    """Multiplication by ``q`` on <eps>\\Z/nZ, keyed by canonical representatives.

    The representative of a {x, -x} class is ``min(x, n - x)``.
    """
    _check_coprime(n, q)
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    reps = sorted({_class_rep(x, n, eps) for x in range(n)})
    return {r: _class_rep(q * r, n, eps) for r in reps}


def sgn_eps_bruteforce(n: int, q: int, eps: int) -> int:
    """Sign of multiplication by q on <eps>\\Z/nZ, by building the permutation."""
    return perm_sign(multiplication_permutation(n, q, eps))


def sgn_plus(n: int, q: int) -> int:
    """Closed form for the sign of multiplication by q on Z/nZ."""
    _check_coprime(n, q)
    q %= n
    r = n % 4
    if r == 0:
        return -1 if q % 4 == 3 else 1
    if r == 2:
        return 1
    return jacobi(q, n)


def sgn_minus(n: int, q: int) -> int:
    """Closed form for the sign of multiplication by q on {+-1}\\Z/nZ."""
    _check_coprime(n, q)
    q %= n
    r = n % 4
    if r == 0:
        return kronecker_top(n, q)
    if r == 1:
        return jacobi(q, n)
    return 1


class CRTSides(NamedTuple):
    plus_lhs: int
    plus_rhs: int
    minus_lhs: int
    minus_rhs: int

    @property
    def holds(self) -> bool:
        return self.plus_lhs == self.plus_rhs and self.minus_lhs == self.minus_rhs


def free_class_count(n: int) -> int:
    """Number of {x, -x} classes in Z/nZ of size two, i.e. ceil((n+1)/2) - #(Z/nZ)[2]."""
    return (n + 2) // 2 - (1 if n % 2 else 2)


def sgn_eps_crt_check(m: int, n: int, q: int, literal_minus: bool = False) -> CRTSides:
    """Both sides of the CRT product rules for the two signs, all by brute force.

    plus:  sgn+_{mn}(q) = sgn+_m(q)^n * sgn+_n(q)^m
    minus: sgn-_{mn}(q) = sgn+_m(q)^a(n) * sgn-_m(q)^n * sgn+_n(q)^a(m) * sgn-_n(q)^m

    where a(k) is :func:`free_class_count`.  For odd k this is ceil((k-1)/2).
    With ``literal_minus`` the exponent ceil((k-1)/2) is used for every k;
    that variant is false when one modulus is even, e.g. (m, n, q) = (3, 2, 5).
    """
    if gcd(m, n) != 1 or gcd(m * n, q) != 1:
        raise ValueError("need gcd(m, n) == 1 and gcd(mn, q) == 1")
    if m < 1 or n < 1:
        raise ValueError("moduli must be positive")
    bf = sgn_eps_bruteforce
    pm, mm = bf(m, q, 1), bf(m, q, -1)
    pn, mn_ = bf(n, q, 1), bf(n, q, -1)
    a = (lambda k: k // 2) if literal_minus else free_class_count
    plus_rhs = pm ** n * pn ** m
    minus_rhs = pm ** a(n) * mm ** n * pn ** a(m) * mn_ ** m
    return CRTSides(bf(m * n, q, 1), plus_rhs, bf(m * n, q, -1), minus_rhs)


def sgn_eps_table(n: int, eps: int) -> np.ndarray:
    """Signs of multiplication by every q on <eps>\\Z/nZ, indexed by q mod n.

    Non-units get 0.  Only a generating set of (Z/nZ)^x is permuted
    explicitly; the rest follows because q -> (x -> qx) is an action.
    """
    out = np.zeros(n, dtype=np.int8)
    out[1 % n] = 1
    reached = [1 % n]
    for g in range(2, n):
        if gcd(g, n) != 1 or out[g]:
            continue
        sg = sgn_eps_bruteforce(n, g, eps)
        frontier = list(reached)
        while frontier:
            nxt = []
            for h in frontier:
                k = (h * g) % n
                if not out[k]:
                    out[k] = out[h] * sg
                    nxt.append(k)
            frontier = nxt
            reached.extend(nxt)
    return out


def crt_violations(limit: int, literal_minus: bool = False) -> Dict[str, int]:
    """Count failures of the CRT rules over coprime m, n <= limit and all units q.

    Same identities as :func:`sgn_eps_crt_check`, evaluated from brute-force
    sign tables so that the sweep is fast.
    """
    cache: Dict[Tuple[int, int], np.ndarray] = {}

    def table(k, eps):
        if (k, eps) not in cache:
            cache[k, eps] = sgn_eps_table(k, eps).astype(np.int64)
        return cache[k, eps]

    a = (lambda k: k // 2) if literal_minus else free_class_count
    bad = {"plus": 0, "minus": 0, "cases": 0}
    for m in range(1, limit + 1):
        for n in range(m, limit + 1):
            if gcd(m, n) != 1:
                continue
            N = m * n
            q = np.array([x for x in range(N) if gcd(x, N) == 1], dtype=np.int64)
            pm, mm = table(m, 1)[q % m], table(m, -1)[q % m]
            pn, mn_ = table(n, 1)[q % n], table(n, -1)[q % n]
            plus_rhs = pm ** n * pn ** m
            minus_rhs = pm ** a(n) * mm ** n * pn ** a(m) * mn_ ** m
            bad["plus"] += int(np.count_nonzero(table(N, 1)[q] != plus_rhs))
            bad["minus"] += int(np.count_nonzero(table(N, -1)[q] != minus_rhs))
            bad["cases"] += len(q)
    return bad


def sgn_eps_bruteforce_all(n: int, eps: int) -> Dict[int, int]:
    """``sgn_eps_bruteforce(n, q, eps)`` for every unit ``q`` in ``[1, n)``, at once.

    Every multiplication permutation is built explicitly; cycles are counted
    by pointer doubling (each point learns the least point of its cycle), and
    the sign is ``(-1)^(#points - #cycles)``.
    """
    if n < 1:
        raise ValueError("modulus must be positive")
    if eps not in (1, -1):
        raise ValueError("eps must be +1 or -1")
    units = np.array([q for q in range(1, n + 1) if gcd(q, n) == 1], dtype=np.int64) % n
    x = np.arange(n, dtype=np.int64)
    rep = np.minimum(x, (-x) % n) if eps == -1 else x
    reps = np.unique(rep)
    pos = np.full(n, -1, dtype=np.int64)
    pos[reps] = np.arange(len(reps))
    P = pos[rep[(units[:, None] * reps[None, :]) % n]]          # one permutation per row
    L = np.broadcast_to(np.arange(len(reps)), P.shape).copy()
    rows = np.arange(len(units))[:, None]
    for _ in range(max(1, int(len(reps)).bit_length())):
        L = np.minimum(L, L[rows, P])
        P = P[rows, P]
    cycles = np.count_nonzero(L == np.arange(len(reps)), axis=1)
    signs = np.where((len(reps) - cycles) % 2 == 1, -1, 1)
    return {int(q): int(s) for q, s in zip(units, signs)}
