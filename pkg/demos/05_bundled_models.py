"""The bundled reference rule sets.

Three fitted models ship with the package as formula tables, each with
the lookup grid it was published with.  This script loads them, checks
the grids cell for cell, and classifies a few cases by hand.
"""

from importlib import resources

import numpy as np

from mofn.rules import (
    decision_levels,
    describe_decision,
    evaluate,
    parse_formula_table,
)
from mofn.tables import make_table, parse_rendered_csv, render_text

fixtures = resources.files("mofn") / "fixtures"


def load(name):
    return parse_formula_table((fixtures / name).read_text())


for name in ("ie_srl.rules", "ie_ar.rules", "postop.rules"):
    sc = load(name)
    confident, certain = decision_levels(sc)
    print(f"{name}: classes {sc.class_names[0]}/{sc.class_names[1]}, "
          f"{sc.n} syndromes in {len(sc.layers)} layer(s), "
          f"confident at {confident} votes, certain at {certain}")

# The first model separates two diseases with overlapping symptoms.
sc = load("ie_srl.rules")
table = make_table(sc, [2, 5, 8, 11], [13, 14, 15, 16])
want = parse_rendered_csv((fixtures / "ie_srl_table.csv").read_text())
same = int(np.sum(table.cells == want))
print(f"\nie_srl grid reproduced: {same}/{want.size} cells")

# Classify by feature bits: low leucocytes and immune complex levels
# point to the first class even with no clinical signs present.
case = {2: 1, 5: 1, 8: 0, 11: 0, 13: 0, 14: 0, 15: 0, 16: 0}
d = evaluate(sc, case)
print(f"anchor case: {describe_decision(d, sc.class_names)}")

# The second model needs the extended catalog and runs four layers deep.
sc = load("ie_ar.rules")
table = make_table(sc, [9, 10, 12], [19, 20, 22])
want = parse_rendered_csv((fixtures / "ie_ar_table.csv").read_text())
print(f"\nie_ar grid reproduced: "
      f"{int(np.sum(table.cells == want))}/{want.size} cells")
print("its 8x8 grid:\n")
print(render_text(table))

# The third model screens for complications after surgery with seven
# thresholded lab measurements.
sc = load("postop.rules")
print("postop thresholds:")
for ident in sorted(sc.features):
    enc = sc.features[ident]
    side = ">" if enc.polarity == 1 else "<="
    print(f"  x_{ident} {enc.feature}: bit = 1 when value {side} {enc.threshold}")
