"""
hubbardq - downfolded extended-Hubbard models as qubit Hamiltonians

Exact spectra, Pauli resource estimates, variational quantum deflation with
shot sampling, and band-count extrapolation.
"""

from importlib.metadata import PackageNotFoundError, version

try:
    __version__ = version("hubbardq")
except PackageNotFoundError:
    __version__ = "0.1.0"

__all__ = ["__version__"]
