"""From a trained network to a formula table and a diagnostic grid.

A trained network extracts to a syndrome complex: the surviving
cascade written as numbered rows, one layer at a time.  The complex
serializes to a plain text formula table, renders symbolically, and
tabulates into a lookup grid whose signed cells carry both the decided
class and the size of the majority behind it.
"""

import numpy as np

from mofn import Dataset, FeatureSpec, TrainConfig, train
from mofn.rules import extract, parse_formula_table, symbolic, to_formula_table
from mofn.tables import detect_contradictions, make_table, render_text

ds = Dataset(
    features=[FeatureSpec("fever", "boolean"), FeatureSpec("rash", "boolean"),
              FeatureSpec("ache", "boolean")],
    rows=[(0, 0, 0), (0, 0, 1), (0, 1, 0), (0, 1, 1),
          (1, 0, 0), (1, 0, 1), (1, 1, 0), (1, 1, 1)],
    labels=np.array([0, 0, 0, 1, 0, 1, 1, 1]),
)
net = train(ds, TrainConfig(patience=2))
sc = extract(net)

print("formula table:")
print(to_formula_table(sc))

print("symbolic form:")
for line in symbolic(sc):
    print(f"  {line}")

# The text format round trips: parsing the canonical form and printing
# it again reproduces the bytes exactly.
text = to_formula_table(sc)
assert to_formula_table(parse_formula_table(text)) == text
print("\ncanonical round trip holds")

# Tabulate over a split of the referenced features.  The first feature
# of each axis is the most significant bit of its index.
feats = sc.referenced_features()
half = (len(feats) + 1) // 2
table = make_table(sc, feats[:half], feats[half:])
print("\ndiagnostic table (+m favors class 0, -m favors class 1):\n")
print(render_text(table))

ties = detect_contradictions(table)
print(f"contradictory cells: {len(ties)}")

# A deliberately contradictory rule: two syndromes that always disagree
# leave every cell tied at 0.
bad = parse_formula_table("""\
classes 0 1
feature 0 a kind=boolean h=1
feature 1 b kind=boolean h=1
layer 1
1 0 0 1
2 13 0 1
""")
tied = make_table(bad, [0], [1])
print("\na complementary pair ties everywhere:")
print(render_text(tied))
print(f"contradictory cells: {len(detect_contradictions(tied))}")
