"""Exact mod-2 Steenrod algebra engine for the symmetric algebra H*(BO;F2).

Everything is computed exactly over F2 up to a configurable degree bound;
the CLI (`unstalg run <suite>`) re-verifies the structural results this
package encodes and exits nonzero on any failure.
"""

__version__ = "0.1.0"
