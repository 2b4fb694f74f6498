#!/usr/bin/env python3
"""Write the finite rotation group signatures of order <= N from the closed
form list: trivial, cyclic (n; n, n), dihedral (2m; 2, 2, m) and the three
polyhedral groups. Usage: signatures.py N > signatures_N.csv"""
import sys

n_max = int(sys.argv[1])
rows = [(1, (), "trivial")]
rows += [(n, (n, n), "cyclic") for n in range(2, n_max + 1)]
rows += [(2 * m, (2, 2, m), "dihedral") for m in range(2, n_max // 2 + 1)]
rows += [(n, nus, fam) for n, nus, fam in [
    (12, (2, 3, 3), "tetrahedral"),
    (24, (2, 3, 4), "octahedral"),
    (60, (2, 3, 5), "icosahedral"),
] if n <= n_max]
rows.sort(key=lambda r: (r[0], r[1]))
print("order,nus,family")
for n, nus, fam in rows:
    print(f"{n},{';'.join(map(str, nus))},{fam}")
