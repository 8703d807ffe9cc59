"""Growing a network layer by layer.

Training pairs up encoded features under every catalog function and
keeps only units that classify at least as well as both of their
inputs.  Surviving units feed the next layer; growth stops when a
layer stops improving, and the last layer's best units become the
voting syndromes.
"""

import numpy as np

from mofn import Dataset, FeatureSpec, TrainConfig, classify, train
from mofn.oracle import PlantedSpec, generate_planted

# The parity problem: no single feature bit helps, yet one unit solves it.
xor = Dataset(
    features=[FeatureSpec("a", "boolean"), FeatureSpec("b", "boolean")],
    rows=[(0, 0), (0, 1), (1, 0), (1, 1)],
    labels=np.array([0, 1, 1, 0]),
)
net = train(xor, TrainConfig(beam_width=8))
print("XOR training report:")
for line in net.report.lines(net.feature_names):
    print(f"  {line}")
u = net.layers[0][0]
print(f"the single surviving unit: g_{u.fn}(a, b), error {u.error}\n")

# A synthetic diagnosis task with a known hidden rule.  The generator
# plants an M-of-N rule over threshold bits and labels rows with it.
planted = generate_planted(PlantedSpec(seed=3, n_features=6, n_rows=20,
                                       n_syndromes=1))
print("hidden rule:", ", ".join(
    f"g_{fn}(f{a + 1}, f{b + 1})" for fn, a, b in planted.syndromes))

net = train(planted.dataset, TrainConfig(patience=2))
print("training report:")
for line in net.report.lines(net.feature_names):
    print(f"  {line}")

names = [f.name for f in planted.dataset.features]
wrong = sum(
    classify(net, dict(zip(names, row))).klass != int(y)
    for row, y in zip(planted.dataset.rows, planted.dataset.labels)
)
print(f"rows misclassified after training: {wrong}")

row = dict(zip(names, planted.dataset.rows[0]))
d = classify(net, row)
print(f"\nfirst row decides class {d.klass} with value {d.value:+d} "
      f"({d.m} of {d.n} syndromes)")
