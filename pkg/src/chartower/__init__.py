"""chartower: exact character theory for odd-order solvable groups."""

from chartower.kernel import KERNEL_NAME

__all__ = ["KERNEL_NAME"]
__version__ = "0.1.0"
