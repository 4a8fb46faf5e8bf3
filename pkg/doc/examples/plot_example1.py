"""
Example 1: Kernel of a general map between split bundles
--------------------------------------------------------
"""

# %%

import rcsplit

# %%
# | A general map O + O(2) + O(2) -> O(2) has a globally generated kernel of
# | rank 2 and degree 2. The Monte-Carlo algorithm samples random maps over
# | the field with 32003 elements and keeps the most balanced kernel.

source = rcsplit.SplittingType([0, 2, 2])
target = rcsplit.SplittingType([2])
kernel = rcsplit.generic_kernel_splitting(source, target, trials=5, seed=0)
print(kernel, kernel.render())

# %%
# | The h0 profile of the kernel, from which the splitting is read.

print(kernel.profile(-3, 3))
print(kernel.predicates())
