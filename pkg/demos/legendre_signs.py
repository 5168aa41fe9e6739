"""Multiplication by q permutes the classes of (Z/n)/{+-1}; its sign is a Jacobi-type symbol.

Run:  python3 demos/legendre_signs.py
"""
from math import gcd

from rootsign.arith import jacobi, multiplication_permutation, sgn_eps_bruteforce, sgn_minus, sgn_plus

# The plain permutation x -> qx of Z/n.  For odd n its sign is the Jacobi symbol (q|n).
n = 15
print(f"x -> q x on Z/{n}")
for q in range(1, n):
    if gcd(q, n) == 1:
        print(f"  q = {q:2d}: permutation sign {sgn_plus(n, q):+d}, Jacobi ({q}|{n}) = {jacobi(q, n):+d}")

# Quotienting by +-1 changes things: the sign of q acting on Z/n modulo x ~ -x.
print()
n = 8
mp = multiplication_permutation(n, 3, -1)
print(f"x -> 3x on Z/{n} modulo +-1: {mp}")
print(f"  sign by brute force {sgn_eps_bruteforce(n, 3, -1):+d}, closed form {sgn_minus(n, 3):+d}")
print(f"  (same value as the CLI: rootsign legendre {n} 3 -)")

# A small census: how often the closed forms agree with brute force.
agree = total = 0
for n in range(1, 120):
    for q in range(1, max(n, 2)):
        if gcd(q, n) != 1:
            continue
        for eps, f in ((1, sgn_plus), (-1, sgn_minus)):
            total += 1
            agree += f(n, q) == sgn_eps_bruteforce(n, q, eps)
print(f"\nclosed forms agree with brute force on {agree} of {total} pairs (n < 120)")
