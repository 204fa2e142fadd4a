"""
Model Parameters - Downfolded extended-Hubbard parameters and their file format

Parameter files are YAML documents with a ``model`` mapping and a ``params``
block of whitespace-separated rows ``i j t U J D`` (1-based orbital indices,
eV units). ``#`` starts a comment; ``-`` marks an absent J (diagonal rows).

    model:
      name: ethylene
      K: 2
      n_electrons: 2
      alpha: 1.0
      variant: with-exchange
    params: |
      # i j      t       U      J      D
        1 1  -3.820  10.442     -  1.000
        1 2  -2.874   6.376  0.161  0.948
        2 2  -3.820  10.442     -  1.000
"""

import dataclasses
from dataclasses import dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Dict, List, Optional, Tuple, Union

import numpy as np
import yaml

from hubbardq.exceptions import ParameterFileError, ValidationError
from hubbardq.observability import mainLogger

SYMMETRY_TOL = 1e-12
ABSENT_TOKENS = {"-", ".", "na", "none"}


class InteractionVariant(str, Enum):
    """Two-body interaction form"""
    WITH_EXCHANGE = "with-exchange"   # Model 1: U + exchange + pair hopping
    COULOMB_ONLY = "coulomb-only"     # Model 2: U only

    @classmethod
    def parse(cls, value: Union[str, "InteractionVariant"]) -> "InteractionVariant":
        """Accept enum values, names and the ``model1``/``model2`` aliases"""
        if isinstance(value, cls):
            return value
        key = str(value).strip().lower().replace("_", "-")
        aliases = {
            "model1": cls.WITH_EXCHANGE,
            "model-1": cls.WITH_EXCHANGE,
            "withexchange": cls.WITH_EXCHANGE,
            "model2": cls.COULOMB_ONLY,
            "model-2": cls.COULOMB_ONLY,
            "coulombonly": cls.COULOMB_ONLY,
        }
        if key in aliases:
            return aliases[key]
        for member in cls:
            if member.value == key:
                return member
        raise ValidationError(f"unknown interaction variant: {value!r}")


def _frozen(matrix: np.ndarray) -> np.ndarray:
    out = np.array(matrix, dtype=float)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class ModelParameters:
    """
    Extended-Hubbard parameters over K Wannier orbitals

    Attributes:
        molecule_name: Label, e.g. ``ethylene``
        K: Number of orbitals
        n_electrons: Active electrons
        t: One-body matrix (eV)
        U: Screened Coulomb matrix (eV)
        J: Screened exchange matrix with zero diagonal (eV)
        D: One-body density matrix (occupations)
        alpha: Double-counting weight in [0, 1]
        interaction_variant: WITH_EXCHANGE or COULOMB_ONLY
    """
    molecule_name: str
    K: int
    n_electrons: int
    t: np.ndarray
    U: np.ndarray
    J: np.ndarray
    D: np.ndarray
    alpha: float = 1.0
    interaction_variant: InteractionVariant = InteractionVariant.WITH_EXCHANGE
    active_space: Optional[str] = None

    def __post_init__(self):
        if self.K < 1:
            raise ValidationError(f"K must be at least 1, got {self.K}")
        if not 0 <= self.n_electrons <= 2 * self.K:
            raise ValidationError(
                f"n_electrons must be within [0, {2 * self.K}], got {self.n_electrons}"
            )
        if not 0.0 <= self.alpha <= 1.0:
            raise ValidationError(f"alpha must be within [0, 1], got {self.alpha}")

        object.__setattr__(self, "interaction_variant",
                           InteractionVariant.parse(self.interaction_variant))

        for name in ("t", "U", "J", "D"):
            matrix = np.asarray(getattr(self, name), dtype=float)
            if matrix.shape != (self.K, self.K):
                raise ValidationError(
                    f"{name} must be {self.K}x{self.K}, got shape {matrix.shape}"
                )
            if np.max(np.abs(matrix - matrix.T), initial=0.0) > SYMMETRY_TOL:
                raise ValidationError(f"{name} is not symmetric")
            object.__setattr__(self, name, _frozen(matrix))

        if np.any(self.U < 0):
            raise ValidationError("U entries must be nonnegative")
        if np.any(np.diag(self.J) != 0.0):
            raise ValidationError("diagonal of J must be zero")

    @property
    def n_alpha(self) -> int:
        return self.n_electrons - self.n_electrons // 2

    @property
    def n_beta(self) -> int:
        return self.n_electrons // 2

    @property
    def n_spin_orbitals(self) -> int:
        return 2 * self.K

    def with_variant(self, variant: Union[str, InteractionVariant]) -> "ModelParameters":
        """Copy with another interaction variant"""
        return dataclasses.replace(self, interaction_variant=InteractionVariant.parse(variant))

    def with_alpha(self, alpha: float) -> "ModelParameters":
        """Copy with another double-counting weight"""
        return dataclasses.replace(self, alpha=alpha)


def _parse_value(token: str, what: str, line_no: int) -> float:
    try:
        return float(token.replace("−", "-"))
    except ValueError:
        raise ParameterFileError(f"cannot parse {what} value {token!r}", line=line_no)


def _parse_rows(block: str) -> Dict[Tuple[int, int], Dict[str, Optional[float]]]:
    """Parse ``i j t U J D`` rows into a dict keyed by 0-based (i, j) with i <= j"""
    entries: Dict[Tuple[int, int], Dict[str, Optional[float]]] = {}

    for line_no, raw in enumerate(block.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) == 5:
            # J column left out entirely
            i_tok, j_tok, t_tok, u_tok, d_tok = tokens
            j_val_tok = "-"
        elif len(tokens) == 6:
            i_tok, j_tok, t_tok, u_tok, j_val_tok, d_tok = tokens
        else:
            raise ParameterFileError(
                f"expected 'i j t U J D' (6 columns), got {len(tokens)}", line=line_no
            )

        try:
            i, j = int(i_tok) - 1, int(j_tok) - 1
        except ValueError:
            raise ParameterFileError(f"orbital indices must be integers: {line!r}", line=line_no)
        if i < 0 or j < 0:
            raise ParameterFileError("orbital indices are 1-based", line=line_no)

        row = {
            "t": _parse_value(t_tok, "t", line_no),
            "U": _parse_value(u_tok, "U", line_no),
            "J": None if j_val_tok.lower() in ABSENT_TOKENS else _parse_value(j_val_tok, "J", line_no),
            "D": _parse_value(d_tok, "D", line_no),
        }

        key = (min(i, j), max(i, j))
        if key in entries:
            previous = entries[key]
            for name, value in row.items():
                old = previous[name]
                if value is None or old is None:
                    if value != old:
                        raise ParameterFileError(
                            f"conflicting duplicate entry for {name}{key[0] + 1}{key[1] + 1}",
                            line=line_no,
                        )
                elif abs(old - value) > SYMMETRY_TOL:
                    raise ParameterFileError(
                        f"asymmetric duplicate entry for {name}{key[0] + 1}{key[1] + 1}: "
                        f"{old} vs {value}",
                        line=line_no,
                    )
        else:
            entries[key] = row

    return entries


def load_model_params(config_text: str) -> ModelParameters:
    """
    Parse parameter-file content into ModelParameters

    Args:
        config_text: YAML text with ``model`` and ``params`` sections

    Returns:
        ModelParameters with symmetric matrices (J diagonal zero)

    Raises:
        ParameterFileError: Malformed YAML, rows, or missing (i, j) pairs
        ValidationError: Values out of range (alpha, U, n_electrons)
    """
    try:
        data = yaml.safe_load(config_text)
    except yaml.YAMLError as e:
        raise ParameterFileError(f"invalid YAML: {e}")

    if not isinstance(data, dict) or "model" not in data or "params" not in data:
        raise ParameterFileError("parameter file needs 'model' and 'params' sections")

    model = data["model"] or {}
    block = data["params"]
    if not isinstance(model, dict):
        raise ParameterFileError("'model' must be a mapping")
    if isinstance(block, list):
        block = "\n".join(str(row) for row in block)
    if not isinstance(block, str):
        raise ParameterFileError("'params' must be a block of 'i j t U J D' rows")

    for key in ("name", "K", "n_electrons"):
        if key not in model:
            raise ParameterFileError(f"missing model field: {key}")

    try:
        K = int(model["K"])
        n_electrons = int(model["n_electrons"])
        alpha = float(model.get("alpha", 1.0))
    except (TypeError, ValueError) as e:
        raise ParameterFileError(f"invalid model field: {e}")

    entries = _parse_rows(block)

    t = np.zeros((K, K))
    U = np.zeros((K, K))
    J = np.zeros((K, K))
    D = np.zeros((K, K))
    missing: List[str] = []
    for i in range(K):
        for j in range(i, K):
            row = entries.pop((i, j), None)
            if row is None:
                missing.append(f"({i + 1},{j + 1})")
                continue
            t[i, j] = t[j, i] = row["t"]
            U[i, j] = U[j, i] = row["U"]
            D[i, j] = D[j, i] = row["D"]
            if i == j:
                if row["J"] not in (None, 0.0):
                    raise ParameterFileError(f"J{i + 1}{i + 1} must be blank or zero")
            elif row["J"] is None:
                raise ParameterFileError(f"missing J for pair ({i + 1},{j + 1})")
            else:
                J[i, j] = J[j, i] = row["J"]

    if entries:
        extra = ", ".join(f"({i + 1},{j + 1})" for i, j in sorted(entries))
        raise ParameterFileError(f"rows outside the {K}-orbital model: {extra}")
    if missing:
        raise ParameterFileError(f"missing parameter rows: {', '.join(missing)}")

    params = ModelParameters(
        molecule_name=str(model["name"]),
        K=K,
        n_electrons=n_electrons,
        t=t,
        U=U,
        J=J,
        D=D,
        alpha=alpha,
        interaction_variant=model.get("variant", InteractionVariant.WITH_EXCHANGE),
        active_space=model.get("active_space"),
    )

    mainLogger.info(
        "Loaded model parameters",
        molecule=params.molecule_name,
        K=params.K,
        n_electrons=params.n_electrons,
        alpha=params.alpha,
        variant=params.interaction_variant.value,
    )
    return params


def load_model_file(path: Union[str, Path]) -> ModelParameters:
    """Read and parse a parameter file"""
    file_path = Path(path).expanduser()
    try:
        text = file_path.read_text(encoding="utf-8")
    except OSError as e:
        raise ParameterFileError(f"cannot read {file_path}: {e}")
    return load_model_params(text)


FIXTURES = ("ethylene", "butadiene", "hexatriene_4e4o", "hexatriene_6e6o")


def fixture_path(name: str) -> Path:
    """Path of a shipped model fixture (ethylene, butadiene, hexatriene_4e4o, hexatriene_6e6o)"""
    if name not in FIXTURES:
        raise ValidationError(f"unknown fixture {name!r}; available: {', '.join(FIXTURES)}")
    return Path(str(resources.files("hubbardq.data").joinpath("models", f"{name}.yaml")))


def load_fixture(name: str) -> ModelParameters:
    """Load a shipped model fixture by name"""
    return load_model_file(fixture_path(name))
