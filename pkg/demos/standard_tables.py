#!/usr/bin/env python3
"""Dressing-orbit tables for the standard structure (empty triple).

With no root-space mixing every Weyl element is its own stratum, and the
dimensions collapse to rank formulas in the adjoint action.  The script
recomputes each table entry from rank(Ad_w - id) to show the agreement.
"""

from leafatlas import (
    build_root_system,
    compute_decomposition,
    reduced_word,
    solve_r0,
    validate_triple,
)
from leafatlas.leafclass import classify_gminus, sigma_group
from leafatlas.linalg import mat, rank
from leafatlas.rootsys import exp_kernel_lattice


def ad_rank(w):
    m = mat(w.matrix)
    k = len(m)
    return rank(mat([[m[i][j] - (i == j) for j in range(k)] for i in range(k)]))


for label in ("A2", "B2"):
    rs = build_root_system(label)
    triple = validate_triple(rs, (), (), {})
    d = compute_decomposition(rs, triple, solve_r0(rs, triple, "canonical"))
    dim_b = len(rs.positive_roots) + rs.rank
    sigma = sigma_group(d, exp_kernel_lattice(rs))

    print(f"== {label}  (dim b+ = {dim_b}, sigma = {sigma})")
    print("  w          l   leaf   coset   check")
    for rec in classify_gminus(rs, triple, d):
        word = " ".join(f"s{i + 1}" for i in reduced_word(rs, rec.v)) or "e"
        leaf = rec.leaf_dim.at(rec.orbit_range[0])
        coset = rec.coset_dim.at(rec.orbit_range[0])
        again = dim_b + rec.v.length + ad_rank(rec.v)
        flag = "ok" if coset == again else "MISMATCH"
        print(f"  {word:<10} {rec.v.length}   {leaf:<6} {coset:<7} {flag}")
    print()
