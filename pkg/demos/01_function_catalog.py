"""A walk through the two-input function catalog.

Every unit in a network computes one of a small set of Boolean
functions of two inputs.  Each function is a four-entry truth table
over the input pairs (0,0), (0,1), (1,0), (1,1), and keeps a fixed id
that the formula table format refers to.
"""

from mofn import catalog, complement_id, eval_fn, truth_row

print("The standard catalog has nine functions:\n")
for fn in catalog():
    print(f"  g_{fn.ident:<2} truth {fn.truth}   {fn.formula}")

print("\nA truth row maps (a b) pairs in binary order.  g_0 is AND:")
for a in (0, 1):
    for b in (0, 1):
        print(f"  g_0({a}, {b}) = {eval_fn(0, a, b)}")

print("\nMost functions have their pointwise complement in the set,")
print("for example g_0 (AND) and g_13 (NAND):")
print(f"  complement of g_0  -> g_{complement_id(0)}")
print(f"  complement of g_13 -> g_{complement_id(13)}")

print("\nOne function is left without a partner:")
print(f"  complement of g_12 -> {complement_id(12)}")

print("\nThe extended catalog adds g_1 to close that last pair.")
print(f"  g_1 truth: {truth_row(1, extended=True)}")
print(f"  complement of g_12 (extended) -> g_{complement_id(12, extended=True)}")
print("\nRule files opt in with a 'catalog extended' first line; the")
print("standard set stays the default everywhere else.")
