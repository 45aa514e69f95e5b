"""Search the catalogue for triples meeting the sharp pole bound ell = p.

Also demonstrates the quadratic rigidity: for p = 2 the search restricted to
non-invariant twisting characters must come back empty, because a double pole
forces the twist to be Galois-invariant.
"""

import sys

from triplepole.sweep import find_witness, shipped_catalogue


def main() -> int:
    ok = True
    for p in (2, 3, 5):
        family = shipped_catalogue(p_values=(p,))
        w = find_witness(family, target_ell=p)
        if w is None:
            print(f"p={p}: NO sharp witness found")
            ok = False
        else:
            print(f"p={p}: sharp witness ell={w['ell']} in model {w['model']}: "
                  f"theta1={w['theta1']} theta2={w['theta2']} chi={w['chi']}")

    family = shipped_catalogue(p_values=(2,))
    restricted = find_witness(family, target_ell=2, require_noninvariant_chi=True)
    if restricted is None:
        print("p=2 restricted to non-invariant chi: exhausted, as rigidity demands")
    else:
        print(f"p=2 rigidity BREACH: {restricted}")
        ok = False
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
