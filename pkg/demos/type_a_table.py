"""The sign character on the normaliser of a Coxeter element in type A.

For the n-cycle w in S_n, the element norm_q (i -> q i) conjugates w to w^q.
Its sign on the orbit space <w>\\R is sgn+_n(q), so the kernel alternates
with n mod 4.

Run:  python3 demos/type_a_table.py
"""
from math import gcd

from rootsign.arith import sgn_plus
from rootsign.rootsys import build
from rootsign.signchar import SignContext, a_coxeter, a_norm, minus_one

for n in range(3, 11):
    R = build(f"A{n - 1}")
    ctx = SignContext(R, a_coxeter(n))
    row = []
    for q in range(1, n):
        if gcd(q, n) == 1:
            r = ctx.sign(a_norm(n, q))
            assert r.value == sgn_plus(n, q) == r.bridge
            row.append(f"{q}:{r.value:+d}")
    minus = ctx.sign(minus_one(R)).value
    print(f"n = {n:2d} (n mod 4 = {n % 4})  -1 -> {minus:+d}   " + "  ".join(row))
print("\nevery brute-force sign matched sgn+_n(q) and the orbit-count parity")
