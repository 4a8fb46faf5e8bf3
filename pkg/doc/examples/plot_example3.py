"""
Example 3: Products of curves and the characteristic p counterexample
---------------------------------------------------------------------
"""

# %%

import rcsplit

# %%
# | Two twisted cubics mapped together to P^3 x P^3 after a general
# | automorphism of the source.

cubic = rcsplit.canonical_rnc(3, 3)
report = rcsplit.verify_product_theorem([cubic, cubic], d_range=(2, 6), trials=2, seed=0)
print(report['normal'], report['predicted_normal'], report['pass'])

# %%
# | In characteristic 3 the curve (s^4, s^3 t, s t^3, t^4) breaks the formula.

demo = rcsplit.charp_demo(3, samples=3, seed=0)
print(demo['observed'], demo['formula_conormal'])
