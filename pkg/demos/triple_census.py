#!/usr/bin/env python3
"""Census of valid triples on the small type-A systems."""

from leafatlas import build_root_system, enumerate_valid_triples
from leafatlas.bdtriple import partial_order_pairs

for label in ("A1", "A2", "A3"):
    rs = build_root_system(label)
    triples = enumerate_valid_triples(rs)
    print(f"{label}: {len(triples)} valid triples")
    for t in triples:
        g1 = ",".join(str(i + 1) for i in t.gamma1) or "-"
        g2 = ",".join(str(i + 1) for i in t.gamma2) or "-"
        tau = " ".join(f"{a + 1}>{b + 1}" for a, b in t.tau) or "-"
        # each comparable root pair contributes one wedge term to r
        pairs = len(partial_order_pairs(rs, t))
        print(
            f"  gamma1 [{g1:<4}] gamma2 [{g2:<4}] tau [{tau:<8}]"
            f" ord {t.ord_tau}  wedge pairs {pairs}"
        )
    print()
