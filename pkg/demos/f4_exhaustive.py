"""All of W(F4) at once: elliptic classes of 2-power order and their normalisers.

The script enumerates the 1152 elements, sorts the elliptic 2-power ones
into classes, then evaluates the sign character on each normaliser.  The
B4 row shows that norm3 acts with sign +1 on the F4 orbit space even though
the same element has sign -1 inside B4 alone.

Run:  python3 demos/f4_exhaustive.py
"""
from rootsign.classify import b4_in_f4, class_names, exceptional_representative, exhaustive_verify_F4
from rootsign.rootsys import build
from rootsign.rtheta import compute_R_w
from rootsign.signchar import SignContext
from rootsign.weyl import SignedPermutation, norm_partition

report = exhaustive_verify_F4()
print(f"|W(F4)| = {report.group_order}, elliptic classes of 2-power order: {len(report.classes)}")
F4 = build("F4")
for name in class_names("F4"):
    label = exceptional_representative(name, "F4")
    w = label.representative
    ctx = SignContext(F4, w, compute_R_w(w, F4))
    normaliser = report.normalizers[name]
    plus = sum(ctx.sign_perm(g).value == 1 for g in normaliser)
    print(f"  {name:8s} order {label.expected.order:2d}  |N| = {len(normaliser):4d}  kernel index "
          f"{len(normaliser) // plus}")

B4 = build("B4")
w_b4 = SignedPermutation.parse("n(0 1 2 3)", 4)
v_b4 = norm_partition([4], 3)
inside_b4 = SignContext(B4, w_b4.to_isometry()).sign(v_b4.to_isometry()).value
emb = b4_in_f4()
w = emb.push(w_b4)
inside_f4 = SignContext(F4, w, compute_R_w(w, F4)).sign(emb.push(v_b4)).value
print(f"\nnorm3 against the B4 Coxeter element: {inside_b4:+d} in B4, {inside_f4:+d} in F4")
