"""Extended A-D-E diagrams: marks, group orders, and edge-sign colourings.

Each finite subgroup of SU(2) has an extended Dynkin diagram whose
vertex marks d_i are the irreducible representation dimensions; they
satisfy sum d_i^2 = |Gamma|.  A +/-1 assignment with opposite signs on
every edge exists exactly when the diagram is bipartite — which rules
out the odd cycles among the extended A-series.
"""

from hkgeom.dynkin import (
    dynkin_signs,
    extended_diagram,
    gamma_order,
    mckay_dims,
    quiver_dim,
)

print(f"{'diagram':>8} {'vertices':>8} {'|Gamma|':>8} {'sum d^2':>8}   signs")
for kind, k in (
    ("A", 1), ("A", 2), ("A", 3), ("A", 4), ("A", 5),
    ("D", 4), ("D", 5), ("D", 6),
    ("E6", None), ("E7", None), ("E8", None),
):
    graph = extended_diagram(kind, k)
    marks = mckay_dims(kind, k)
    order = gamma_order(kind, k)
    signs = dynkin_signs(graph)
    if signs is None:
        shown = "NONE (odd cycle)"
    else:
        shown = " ".join("%+d" % c for c in signs)
    total = sum(d * d for d in marks)
    print(f"{graph.tag:>8} {graph.num_vertices:>8} {order:>8} {total:>8}   {shown}")

print("\nevery printed assignment satisfies c_i c_j = -1 across each edge;")
print("the A-series solves exactly when the cycle length k+1 is even.")

a1 = extended_diagram("A", 1)
print("\nquiver dimension of the extended A_1 diagram:", quiver_dim(a1),
      "(complex) — the same as H^2")
