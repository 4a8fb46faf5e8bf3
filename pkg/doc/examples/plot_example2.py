"""
Example 2: Normal bundles of rational normal curves
---------------------------------------------------
"""

# %%

import rcsplit

# %%
# | The rational normal curve of degree 4 in P^4 and its conormal bundle.

curve = rcsplit.canonical_rnc(4, 4)
model = rcsplit.conormal_Pn(curve)
print(model.splitting)

# %%
# | Quadrics containing the twisted cubic, multiplied by linear forms, give
# | every section of the twisted conormal bundle.

report = rcsplit.rathmann_check(3, 4, 1)
print(report.to_json())

# %%
# | Normal bundle of the curve in a general complete intersection of two
# | quadrics containing it.

ambient = rcsplit.construct('projective', 4)
result = rcsplit.generic_ci_splitting(ambient, curve, [2, 2], trials=3, seed=0)
print(result['splitting'], result['prediction'])
