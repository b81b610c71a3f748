"""Certified upper bounds for restoration entropy and Lyapunov dimension.

Thin re-export of the compiled module: SPD and product geometry, the
monomial metric family, singular-value objectives with subgradients,
projected descent with rate bounds, the entropy and dimension estimators,
and the randomized property suites.
"""

try:
    # wheel layout: the compiled module lives inside the package
    from ._riembound import *  # noqa: F401,F403
    from ._riembound import __doc__ as _core_doc  # noqa: F401
except ImportError:
    # build-tree layout: the compiled module sits next to the package on
    # sys.path (ctest exports PYTHONPATH=<build dir>:<source>/python)
    from _riembound import *  # noqa: F401,F403
    from _riembound import __doc__ as _core_doc  # noqa: F401
