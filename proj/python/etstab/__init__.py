"""Extended tempered stable distributions.

Measure transforms, characteristic exponents, convergence diagnostics,
elementary decompositions and samplers, backed by the C++ core.
"""

from ._etstab import *  # noqa: F401,F403
from ._etstab import __doc__ as _core_doc  # noqa: F401
