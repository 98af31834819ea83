"""The matching condition for colorings of embeddings between metric spaces.

A one-point space A, a unit edge B, and a 4-point path C: for every
2-coloring of the four placements of A in C, a small family of edge
embeddings makes the composite placements matchable within a color class,
for both ways of placing A on the edge.

Run:  python3 demos/07_metric_matching_condition.py
"""

from fractions import Fraction

from matchcover import FinMetric, embeddings, ramsey_condition_check

A = FinMetric.build(["p"], [["0"]])
B = FinMetric.build(["x", "y"], [["0", "1"], ["1", "0"]])
C = FinMetric.build(
    ["c0", "c1", "c2", "c3"],
    [
        ["0", "1", "2", "3"],
        ["1", "0", "1", "2"],
        ["2", "1", "0", "1"],
        ["3", "2", "1", "0"],
    ],
)

print("placements of A in C:", len(embeddings(A, C)))
print("edge embeddings B -> C:", len(embeddings(B, C)))

outcome = ramsey_condition_check(A, B, C, k=1, eps=Fraction(1, 2))
print("condition holds:", outcome.holds)
print("colorings checked:", outcome.colorings_checked)

emb_bc = embeddings(B, C)
for vector, combo in outcome.witnesses[:6]:
    family = [
        "->".join(emb_bc[i].mapping()[p] for p in ("x", "y")) for i in combo
    ]
    print(f"  coloring {vector}: family {family}")
print("  ...")
