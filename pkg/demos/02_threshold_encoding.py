"""How raw measurements become the bits the network sees.

A quantitative feature is reduced to one bit by a threshold u and a
polarity h: the bit is h when the value exceeds u, otherwise 1-h.
Fitting scans every boundary between consecutive distinct values and
keeps the pair with the fewest disagreements against the labels.
"""

import numpy as np

from mofn.encoding import encode_value, fit_boolean, fit_nominal, fit_quantitative

# Ten patients, one lab measurement, and a diagnosis bit.
values = np.array([3.1, 3.6, 4.0, 4.4, 5.0, 6.2, 6.9, 7.4, 8.0, 9.1])
labels = np.array([0, 0, 0, 0, 0, 1, 1, 1, 1, 1])

enc = fit_quantitative(values, labels, "lab_result")
print(f"fitted threshold u={enc.threshold}, polarity h={enc.polarity}, "
      f"error e={enc.error}")
print(f"  encode(5.0) = {encode_value(enc, 5.0)}")
print(f"  encode(6.5) = {encode_value(enc, 6.5)}")

# Noise moves the best boundary but the contract stays the same:
# least error first, then the widest gap, then the smallest threshold.
noisy = np.array([0, 0, 1, 0, 0, 1, 1, 0, 1, 1])
enc = fit_quantitative(values, noisy, "lab_result")
print(f"\nwith noisy labels: u={enc.threshold}, h={enc.polarity}, e={enc.error}")

# A column that cannot beat majority guessing is degenerate and is
# excluded from training rather than encoded arbitrarily.
flat = fit_quantitative(np.array([4.0, 4.0, 4.0, 4.0]),
                        np.array([0, 1, 0, 1]), "stuck_sensor")
print(f"\nconstant column: degenerate={flat.degenerate}, e={flat.error}")

# Boolean features pass through (possibly inverted), and nominal
# features are encoded as equality against their most telling category.
b = fit_boolean(np.array([0, 0, 1, 1]), np.array([1, 1, 0, 0]), "sign")
print(f"\nboolean fit picks polarity h={b.polarity} (inverted), e={b.error}")

wards = ["icu", "icu", "general", "day", "general", "day"]
n = fit_nominal(wards, np.array([1, 1, 0, 0, 0, 0]), "ward")
print(f"nominal fit: category={n.category!r}, h={n.polarity}, e={n.error}")
print(f"  encode('icu') = {encode_value(n, 'icu')}, "
      f"encode('day') = {encode_value(n, 'day')}")
