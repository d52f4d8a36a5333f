#!/usr/bin/env python3
"""Regenerate the frozen theta base table from the homology oracle.

Writes the table body to stdout; paste into src/khoform/_theta_table.py
if the window or the builder conventions ever change.
"""

from khoform.graph import theta_graph
from khoform.oracle import homology_of_graph


def main() -> None:
    print("THETA_BASE_TABLE = {")
    for n2 in range(0, 3):
        for n1 in range(1, 4):
            for n3 in range(n1, 4):
                prof = homology_of_graph(theta_graph(n1, n2, n3))
                if prof.torsion():
                    raise AssertionError(f"torsion in theta{(n1, n2, n3)}")
                dims: list[int] = []
                for d, r, _ in prof.groups:
                    dims += [d] * r
                dims.sort(reverse=True)
                if dims:
                    val = f"HomotopyType({tuple(dims)!r})"
                else:
                    val = "HomotopyType(None)"
                print(f"    ({n1}, {n2}, {n3}): {val},")
    print("}")


if __name__ == "__main__":
    main()
