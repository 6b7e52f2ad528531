"""
Reproducing the feasibility tables
==================================

Three scanners cover the possible symmetrizations of a 4-class
skew-symmetric scheme: pseudocyclic (conference) graphs, ordinary strongly
regular graphs, and the imprimitive blown-up cliques; a fourth targets the
2-subset intersection family, which admits no split at all.  Every
feasible or Krein-excluded row has passed the dual-derivation check.
"""

from skewfiss import (
    classify_scheme,
    conference_scan,
    cyclotomic_scheme,
    imprimitive_scan,
    johnson_scan,
    scan_srg,
    wreath,
)

print("pseudocyclic rows up to 125 points (g-descending within n):")
for rec in conference_scan(125):
    print(f"  n={rec.n:<4} g={rec.params['g']:<4} h={rec.params['h']:<3} "
          f"realizable={rec.realizable}")

print("\nnon-conference rows up to 300 points:")
for rec in scan_srg(300):
    z = "" if rec.z is None else f" z={rec.z}"
    print(f"  n={rec.n:<4} {tuple(rec.params[k] for k in ('k', 'lam', 'mu'))} "
          f"type {rec.table_type}{z}: {rec.status}"
          + (f"  [{rec.notes}]" if rec.notes else ""))

print("\nimprimitive pairs up to 33 points:")
for rec in imprimitive_scan(33):
    print(f"  (f,g)=({rec.params['f']},{rec.params['g']})  n={rec.n:<3} "
          f"realizable={rec.realizable}")

print("\n2-subset family up to v = 15: every candidate is rejected")
for rec in johnson_scan(15):
    if rec.params["v"] % 4 == 3:
        print(f"  v={rec.params['v']:<3} z={rec.z}: {rec.status}  ({rec.notes})")

print("\nclassification round trips:")
for scheme, label in (
    (cyclotomic_scheme(13, 4), "4-class cyclotomic on GF(13)"),
    (cyclotomic_scheme(5, 4), "directed 5-cycle powers"),
    (wreath(cyclotomic_scheme(3, 2), cyclotomic_scheme(7, 2)), "wreath 3 in 7"),
):
    print(f"  {label:<30} -> {classify_scheme(scheme)}")
