__version__ = '0.1'

from .errors import RcsplitError
from .exact import BinForm, field
from .bundles import BundleMap, SplittingType, generic_kernel_splitting, kernel_model
from .curves import CurveMap, canonical_rnc, charp_curve, conormal_Pn
from .ambient import Ambient, DivisorClass, construct, tangent_splitting, conormal_in_ambient
from .ci import generic_ci_splitting, rathmann_check, src_certificate
from .products import charp_demo, twisted_product, verify_product_theorem
