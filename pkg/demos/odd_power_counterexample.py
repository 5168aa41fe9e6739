"""Replacing w by an odd power can change the sign.

In C4 take w with blocks (3, 1) and v = norm_{-1}, which conjugates w to w^5.
Then <v/w> = +1 but <v/w^3> = -1.  Equality holds whenever q = 1 modulo
gcd(k, ord w); here q = 5, k = 3 and ord w = 6.

Run:  python3 demos/odd_power_counterexample.py
"""
from math import gcd

from rootsign.rootsys import build
from rootsign.signchar import classical_numerator, reduce_odd_power_check, sign_symbol
from rootsign.weyl import coxeter_partition, perm_order

R = build("C4")
lam = (3, 1)
w = coxeter_partition(lam).to_isometry()
v = classical_numerator("norm", lam, -1).to_isometry()
q = sign_symbol(R, w, v).q
for k in (1, 3, 5, 7):
    a, b = reduce_odd_power_check(R, w, v, k)
    m = gcd(k, perm_order(R.perm(w)))
    print(f"k = {k}: <v/w> = {a:+d}, <v/w^k> = {b:+d}   q = {q}, gcd(k, ord w) = {m}, "
          f"q = 1 mod gcd: {(q - 1) % m == 0}")
