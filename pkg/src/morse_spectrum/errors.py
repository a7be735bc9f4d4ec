"""Exception types shared across the package.

The CLI maps these onto process exit codes: input/usage problems exit
with 2, numerical failures with 3.
"""


class InputError(ValueError):
    """Invalid argument: bad shape, unsorted grid, out-of-range count."""


class ParameterRangeError(InputError):
    """Deformation parameter t outside the family's [t_min, t_max]."""


class GeometryError(InputError):
    """Geometrically impossible domain (e.g. a sphere cap with t >= pi)."""


class NumericError(RuntimeError):
    """An iterative solve failed to converge; carries residual info."""


class ConsistencyError(RuntimeError):
    """Computed data violates an expected structural property,
    typically a sign that the discretization is too coarse."""
