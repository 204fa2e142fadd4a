"""
Energy units

Everything inside the package is in eV; hartree appears only at FCIDUMP
boundaries and in L1-norm reporting.
"""

HARTREE_EV = 27.211386245988
