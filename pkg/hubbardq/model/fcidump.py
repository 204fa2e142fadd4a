"""
FCIDUMP export and import

Integrals are written in hartree, chemist notation, one line per canonical
(ij|kl) with i >= j, k >= l, ij >= kl, followed by one-body lines and the core
energy line, as pyscf writes them.
"""

import re
from pathlib import Path
from typing import Dict, Optional, TextIO, Union

import numpy as np

from hubbardq.exceptions import ParameterFileError, ValidationError
from hubbardq.model.hamiltonian import BasisTag, EriKey, SpinOrbitalHamiltonian, expand_spin
from hubbardq.observability import mainLogger
from hubbardq.units import HARTREE_EV

ZERO_THRESHOLD = 1e-12  # hartree
FLOAT_FORMAT = " %.16g"


def _write_fcidump(fout: TextIO, ham: SpinOrbitalHamiltonian, n_electrons: int, ms2: int) -> Dict[str, int]:
    K = ham.K
    fout.write(" &FCI NORB=%4d,NELEC=%2d,MS2=%d,\n" % (K, n_electrons, ms2))
    fout.write("  ORBSYM=%s\n" % ("1," * K))
    fout.write("  ISYM=1,\n")
    fout.write(" &END\n")

    eri_format = FLOAT_FORMAT + " %4d %4d %4d %4d\n"
    n_two = 0
    for (i, j, k, l), value in ham.eri.items():
        value_h = value / HARTREE_EV
        if abs(value_h) > ZERO_THRESHOLD:
            fout.write(eri_format % (value_h, i + 1, j + 1, k + 1, l + 1))
            n_two += 1

    h = ham.h1_spatial / HARTREE_EV
    hcore_format = FLOAT_FORMAT + " %4d %4d    0    0\n"
    n_one = 0
    for i in range(K):
        for j in range(i + 1):
            if abs(h[i, j]) > ZERO_THRESHOLD:
                fout.write(hcore_format % (h[i, j], i + 1, j + 1))
                n_one += 1

    fout.write((FLOAT_FORMAT + "    0    0    0    0\n") % (ham.constant / HARTREE_EV))
    return {"two_body_lines": n_two, "one_body_lines": n_one}


def export_fcidump(
    ham: SpinOrbitalHamiltonian,
    destination: Union[str, Path],
    n_electrons: Optional[int] = None,
    ms2: int = 0,
) -> Dict[str, int]:
    """
    Write a Hamiltonian as FCIDUMP

    Args:
        ham: Hamiltonian in eV
        destination: Output file path
        n_electrons: NELEC, defaults to the count carried by the Hamiltonian
        ms2: 2 S_z

    Returns:
        Written integral records {"two_body_lines", "one_body_lines"}
    """
    nelec = ham.n_electrons if n_electrons is None else n_electrons
    path = Path(destination)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8") as fout:
        counts = _write_fcidump(fout, ham, nelec, ms2)

    mainLogger.info("Exported FCIDUMP", path=str(path), norb=ham.K, nelec=nelec, **counts)
    return counts


_HEADER_FIELD = re.compile(r"([A-Za-z0-9]+)\s*=\s*(-?\d+)")


def _parse_header(header: str) -> Dict[str, int]:
    """Integer header fields (NORB, NELEC, MS2, ...); ORBSYM keeps its first entry only"""
    fields: Dict[str, int] = {}
    for key, value in _HEADER_FIELD.findall(header):
        fields.setdefault(key.upper(), int(value))
    return fields


def read_fcidump(source: Union[str, Path], name: str = "") -> SpinOrbitalHamiltonian:
    """
    Read an FCIDUMP file back into a Hamiltonian in eV

    Raises:
        ParameterFileError: Missing header fields or malformed integral lines
    """
    path = Path(source)
    try:
        lines = path.read_text(encoding="utf-8").splitlines()
    except OSError as e:
        raise ParameterFileError(f"cannot read {path}: {e}")

    header_lines = []
    body_start = None
    for idx, line in enumerate(lines):
        stripped = line.strip()
        if stripped.upper().endswith("&END") or stripped == "/":
            header_lines.append(stripped[:-4] if stripped != "/" else "")
            body_start = idx + 1
            break
        header_lines.append(stripped)
    if body_start is None:
        raise ParameterFileError("FCIDUMP header is not terminated by &END")

    header = _parse_header(" ".join(header_lines))
    if "NORB" not in header:
        raise ParameterFileError("FCIDUMP header lacks NORB")
    K = header["NORB"]
    nelec = header.get("NELEC", 0)

    h = np.zeros((K, K))
    eri: Dict[EriKey, float] = {}
    constant = 0.0
    for line_no, line in enumerate(lines[body_start:], start=body_start + 1):
        tokens = line.split()
        if not tokens:
            continue
        if len(tokens) != 5:
            raise ParameterFileError(f"expected 'value i j k l', got {line.strip()!r}", line=line_no)
        try:
            value = float(tokens[0].replace("D", "E").replace("d", "e")) * HARTREE_EV
            i, j, k, l = (int(t) for t in tokens[1:])
        except ValueError:
            raise ParameterFileError(f"malformed integral line {line.strip()!r}", line=line_no)

        if i == j == k == l == 0:
            constant = value
        elif k == 0 and l == 0:
            h[i - 1, j - 1] = h[j - 1, i - 1] = value
        elif min(i, j, k, l) >= 1 and max(i, j, k, l) <= K:
            eri[(i - 1, j - 1, k - 1, l - 1)] = value
        else:
            raise ParameterFileError(f"orbital index out of range in {line.strip()!r}", line=line_no)

    try:
        return SpinOrbitalHamiltonian(
            n_spin_orbitals=2 * K,
            h1=expand_spin(h),
            eri=eri,
            constant=constant,
            basis_tag=BasisTag.WANNIER,
            n_electrons=nelec,
            name=name or path.stem,
        )
    except ValidationError as e:
        raise ParameterFileError(f"inconsistent integrals: {e}")
