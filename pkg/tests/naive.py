"""A deliberately plain second route to <v/w>: orbit counting on tuples.

Only the root list and the matrices are shared with the library; orbits,
the induced action and the parity are recomputed with Python sets.
"""
from fractions import Fraction


def _act(a, r):
    n = len(r)
    out = []
    for i in range(n):
        s = sum(Fraction(int(a.num[i, j]), a.den) * int(r[j]) for j in range(n))
        out.append(int(s))
    return tuple(out)


def _orbits(roots, gens):
    seen, count = set(), 0
    for r in roots:
        if r in seen:
            continue
        count += 1
        stack = [r]
        seen.add(r)
        while stack:
            x = stack.pop()
            for g in gens:
                y = g[x]
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return count


def naive_sign(R, w, v, mask=None):
    roots = [tuple(int(x) for x in r) for k, r in enumerate(R.roots) if mask is None or mask[k]]
    gw = {r: _act(w, r) for r in roots}
    gv = {r: _act(v, r) for r in roots}
    a = _orbits(roots, [gw])
    b = _orbits(roots, [gw, gv])
    return -1 if (a - b) % 2 else 1
