"""Elliptic 2-power classes of E8, E7 and E6 built from signed permutations of D8.

Each representative is a signed permutation pushed into E8 through the D8
sublattice.  The script prints the order, the orbit pattern on the roots
outside D8 and the signs of the listed normaliser elements.

Run:  python3 demos/e8_representatives.py
"""
from rootsign.classify import class_names, exceptional_representative, perp_orbits
from rootsign.rootsys import build
from rootsign.rtheta import compute_R_w
from rootsign.signchar import NotNormalizing, SignContext
from rootsign.tables import numerator_isometry

for ambient in ("E8", "E7", "E6"):
    R = build(ambient)
    print(f"== {ambient} ({len(R)} roots) ==")
    for name in class_names(ambient):
        label = exceptional_representative(name, ambient)
        perp = perp_orbits(label)
        ctx = SignContext(R, label.representative, compute_R_w(label.representative, R))
        signs = []
        for item in label.data["numerators"]:
            try:
                signs.append(f"{item['name']}:{ctx(numerator_isometry(ambient, R, item)):+d}")
            except NotNormalizing:
                signs.append(f"{item['name']}:not normalising")
        print(f"  {name:12s} order {label.expected.order:2d}  outside orbits {len(perp)} x "
              f"{sorted(set(perp.sizes()))}  " + " ".join(signs))
