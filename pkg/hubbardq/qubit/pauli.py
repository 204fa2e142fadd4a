"""
Pauli Algebra - Pauli strings and real-weighted Pauli sums

A Pauli string is a text of letters over {I, X, Y, Z}; letter q acts on qubit q,
so strings read left to right in increasing qubit index like occupation
strings. Qubit 0 is the least significant bit of a computational basis index.
"""

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Dict, Iterator, Mapping, Tuple

import numpy as np
import scipy.sparse

from hubbardq.exceptions import ValidationError

PAULI_LETTERS = "IXYZ"
COEFF_TOL = 1e-10  # eV
IMAG_TOL = 1e-9

_MUL_MAP = {
    ("X", "X"): (1.0, "I"),
    ("X", "Y"): (1j, "Z"),
    ("X", "Z"): (-1j, "Y"),
    ("Y", "X"): (-1j, "Z"),
    ("Y", "Y"): (1.0, "I"),
    ("Y", "Z"): (1j, "X"),
    ("Z", "X"): (1j, "Y"),
    ("Z", "Y"): (-1j, "X"),
    ("Z", "Z"): (1.0, "I"),
}


def pauli_product(a: str, b: str) -> Tuple[complex, str]:
    """Product of two Pauli strings as (phase, string)"""
    if len(a) != len(b):
        raise ValidationError(f"Pauli strings differ in length: {len(a)} vs {len(b)}")
    phase: complex = 1.0
    letters = []
    for pa, pb in zip(a, b):
        if pa == "I":
            letters.append(pb)
        elif pb == "I":
            letters.append(pa)
        else:
            factor, letter = _MUL_MAP[(pa, pb)]
            phase *= factor
            letters.append(letter)
    return phase, "".join(letters)


def identity_string(n_qubits: int) -> str:
    return "I" * n_qubits


def _masks(letters: str) -> Tuple[int, int, int]:
    """(x_mask, z_mask, y_count) of a Pauli string"""
    x_mask = z_mask = 0
    for q, letter in enumerate(letters):
        if letter in "XY":
            x_mask |= 1 << q
        if letter in "YZ":
            z_mask |= 1 << q
    return x_mask, z_mask, letters.count("Y")


def parity(values: np.ndarray, n_bits: int) -> np.ndarray:
    """Bit parity of each integer in ``values``"""
    out = np.zeros_like(values)
    for q in range(n_bits):
        out ^= (values >> q) & 1
    return out


def pauli_string_action(letters: str) -> Tuple[np.ndarray, np.ndarray]:
    """
    Column action of a Pauli string: P|b> = phase[b] |target[b]>

    Uses P|b> = i^nY (-1)^popcount(b & z) |b ^ x>.
    """
    n = len(letters)
    x_mask, z_mask, n_y = _masks(letters)
    basis = np.arange(1 << n, dtype=np.int64)
    signs = 1 - 2 * parity(basis & z_mask, n)
    phase = (1j ** n_y) * signs
    return basis ^ x_mask, phase


@dataclass(frozen=True)
class PauliSum:
    """
    Real linear combination of Pauli strings

    Attributes:
        n_qubits: Number of qubits (2K)
        terms: Pauli string -> coefficient (eV); entries below 1e-10 are dropped
    """
    n_qubits: int
    terms: Mapping[str, float]

    def __post_init__(self):
        cleaned: Dict[str, float] = {}
        for letters, coeff in self.terms.items():
            if len(letters) != self.n_qubits or any(ch not in PAULI_LETTERS for ch in letters):
                raise ValidationError(f"invalid Pauli string {letters!r} for {self.n_qubits} qubits")
            coeff = float(coeff)
            if abs(coeff) >= COEFF_TOL:
                cleaned[letters] = coeff
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(cleaned.items()))))

    @classmethod
    def from_complex(cls, n_qubits: int, terms: Mapping[str, complex]) -> "PauliSum":
        """Build from complex coefficients, which must be real up to 1e-9"""
        real: Dict[str, float] = {}
        for letters, coeff in terms.items():
            if abs(complex(coeff).imag) > IMAG_TOL:
                raise ValidationError(
                    f"operator is not Hermitian: {letters} has imaginary part {complex(coeff).imag:.3e}"
                )
            real[letters] = complex(coeff).real
        return cls(n_qubits, real)

    @classmethod
    def identity(cls, n_qubits: int, coefficient: float = 1.0) -> "PauliSum":
        return cls(n_qubits, {identity_string(n_qubits): coefficient})

    @property
    def identity_coefficient(self) -> float:
        return self.terms.get(identity_string(self.n_qubits), 0.0)

    def non_identity_terms(self) -> Dict[str, float]:
        ident = identity_string(self.n_qubits)
        return {p: c for p, c in self.terms.items() if p != ident}

    def __len__(self) -> int:
        return len(self.terms)

    def __iter__(self) -> Iterator[Tuple[str, float]]:
        return iter(self.terms.items())

    def __add__(self, other: "PauliSum") -> "PauliSum":
        if not isinstance(other, PauliSum):
            return NotImplemented
        if other.n_qubits != self.n_qubits:
            raise ValidationError("cannot add Pauli sums on different qubit counts")
        merged = dict(self.terms)
        for letters, coeff in other.terms.items():
            merged[letters] = merged.get(letters, 0.0) + coeff
        return PauliSum(self.n_qubits, merged)

    def __sub__(self, other: "PauliSum") -> "PauliSum":
        return self + (-1.0) * other

    def __mul__(self, factor: float) -> "PauliSum":
        if not isinstance(factor, (int, float, np.floating, np.integer)):
            return NotImplemented
        return PauliSum(self.n_qubits, {p: c * factor for p, c in self.terms.items()})

    __rmul__ = __mul__

    def to_text(self) -> str:
        """One ``coefficient_eV PAULISTRING`` line per term"""
        return "".join(f"{coeff:.16g} {letters}\n" for letters, coeff in self.terms.items())

    @classmethod
    def from_text(cls, text: str) -> "PauliSum":
        terms: Dict[str, float] = {}
        n_qubits = None
        for line_no, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise ValidationError(f"line {line_no}: expected 'coefficient PAULISTRING'")
            coeff_tok, letters = parts
            try:
                coeff = float(coeff_tok.replace("−", "-"))
            except ValueError:
                raise ValidationError(f"line {line_no}: bad coefficient {coeff_tok!r}")
            if n_qubits is None:
                n_qubits = len(letters)
            terms[letters] = terms.get(letters, 0.0) + coeff
        if n_qubits is None:
            raise ValidationError("empty Pauli sum text")
        return cls(n_qubits, terms)

    @cached_property
    def sparse(self) -> scipy.sparse.csr_matrix:
        """Matrix over the 2^n computational basis"""
        dim = 1 << self.n_qubits
        rows, cols, data = [], [], []
        basis = np.arange(dim, dtype=np.int64)
        for letters, coeff in self.terms.items():
            target, phase = pauli_string_action(letters)
            rows.append(target)
            cols.append(basis)
            data.append(coeff * phase)
        if not data:
            return scipy.sparse.csr_matrix((dim, dim), dtype=complex)
        matrix = scipy.sparse.coo_matrix(
            (np.concatenate(data), (np.concatenate(rows), np.concatenate(cols))),
            shape=(dim, dim),
            dtype=complex,
        )
        return matrix.tocsr()

    def to_dense(self) -> np.ndarray:
        return self.sparse.toarray()

    def expectation(self, state: np.ndarray) -> float:
        """<state|H|state> for a normalized statevector"""
        state = np.asarray(state, dtype=complex)
        if state.shape != (1 << self.n_qubits,):
            raise ValidationError(
                f"statevector length {state.shape} does not match {self.n_qubits} qubits"
            )
        return float(np.real(np.vdot(state, self.sparse @ state)))

