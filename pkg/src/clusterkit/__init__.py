"""clusterkit: exact-arithmetic quiver mutation, cluster algebras, and
their module-category and polygon models, at desk scale.

Submodules are imported on demand: quiver, laurent, seed, repn,
clustercat, polygon, qp, cli, service.
"""

__version__ = "0.1.0"
