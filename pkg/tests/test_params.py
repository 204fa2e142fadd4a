import numpy as np
import pytest

from hubbardq.exceptions import ParameterFileError, ValidationError
from hubbardq.model import (
    FIXTURES,
    InteractionVariant,
    fixture_path,
    load_fixture,
    load_model_file,
    load_model_params,
)

ETHYLENE_TEXT = """
model:
  name: ethylene
  K: 2
  n_electrons: 2
  alpha: 1.0
  variant: with-exchange
params: |
  1 1  -3.820  10.442     -  1.000
  1 2  -2.874   6.376  0.161  0.948
  2 2  -3.820  10.442     -  1.000
"""


def test_ethylene_file_values():
    params = load_model_params(ETHYLENE_TEXT)
    assert params.K == 2
    assert params.n_electrons == 2
    assert params.t[0, 1] == pytest.approx(-2.874)
    assert params.t[1, 0] == pytest.approx(-2.874)
    assert params.U[0, 0] == pytest.approx(10.442)
    assert params.U[0, 1] == pytest.approx(6.376)
    assert params.J[0, 1] == pytest.approx(0.161)
    assert params.D[0, 1] == pytest.approx(0.948)
    assert np.all(np.diag(params.J) == 0.0)
    assert params.interaction_variant is InteractionVariant.WITH_EXCHANGE


def test_diagonal_only_file_has_zero_exchange():
    text = """
model: {name: atom, K: 1, n_electrons: 1}
params: |
  1 1 -1.0 4.0 - 1.0
"""
    params = load_model_params(text)
    assert np.all(params.J == 0.0)
    assert params.t[0, 0] == -1.0


def test_five_column_rows_leave_out_exchange():
    text = """
model: {name: atom, K: 1, n_electrons: 2}
params: |
  1 1 -1.0 4.0 1.0
"""
    assert np.all(load_model_params(text).J == 0.0)


def test_missing_pair_row_is_rejected():
    text = """
model: {name: dimer, K: 2, n_electrons: 2}
params: |
  1 1 -1.0 4.0 - 1.0
  2 2 -1.0 4.0 - 1.0
"""
    with pytest.raises(ParameterFileError, match=r"missing parameter rows: \(1,2\)"):
        load_model_params(text)


def test_fixture_with_a_deleted_pair_row_is_rejected():
    text = fixture_path("butadiene").read_text(encoding="utf-8")
    lines = text.splitlines()
    pair = next(k for k, line in enumerate(lines) if line.split()[:2] == ["2", "3"])
    del lines[pair]
    with pytest.raises(ParameterFileError, match=r"missing parameter rows: \(2,3\)"):
        load_model_params("\n".join(lines))


@pytest.mark.parametrize("name, K", [
    ("ethylene", 2), ("butadiene", 4), ("hexatriene_4e4o", 4), ("hexatriene_6e6o", 6),
])
def test_fixtures_load(name, K):
    params = load_fixture(name)
    assert params.K == K
    assert params.n_electrons == K
    for matrix in (params.t, params.U, params.J, params.D):
        assert np.array_equal(matrix, matrix.T)


def test_hexatriene_6e6o_has_21_rows():
    text = fixture_path("hexatriene_6e6o").read_text(encoding="utf-8")
    rows = [line for line in text.split("params: |", 1)[1].splitlines()
            if line.strip() and not line.strip().startswith("#")]
    assert len(rows) == 21


def test_unknown_fixture():
    with pytest.raises(ValidationError):
        fixture_path("benzene")
    assert len(FIXTURES) == 4


def test_missing_diagonal_row():
    text = """
model: {name: x, K: 2, n_electrons: 2}
params: |
  1 1 -1.0 4.0 - 1.0
"""
    with pytest.raises(ParameterFileError, match="missing parameter rows"):
        load_model_params(text)


def test_missing_exchange_for_pair():
    text = """
model: {name: x, K: 2, n_electrons: 2}
params: |
  1 1 -1.0 4.0 - 1.0
  1 2 -0.5 2.0 - 0.5
  2 2 -1.0 4.0 - 1.0
"""
    with pytest.raises(ParameterFileError, match="missing J"):
        load_model_params(text)


def test_asymmetric_duplicate_rows():
    text = """
model: {name: x, K: 2, n_electrons: 2}
params: |
  1 1 -1.0 4.0 - 1.0
  1 2 -0.5 2.0 0.1 0.5
  2 1 -0.6 2.0 0.1 0.5
  2 2 -1.0 4.0 - 1.0
"""
    with pytest.raises(ParameterFileError, match="asymmetric"):
        load_model_params(text)


def test_symmetric_duplicate_rows_are_accepted():
    text = """
model: {name: x, K: 2, n_electrons: 2}
params: |
  1 1 -1.0 4.0 - 1.0
  1 2 -0.5 2.0 0.1 0.5
  2 1 -0.5 2.0 0.1 0.5
  2 2 -1.0 4.0 - 1.0
"""
    assert load_model_params(text).t[0, 1] == pytest.approx(-0.5)


def test_alpha_out_of_range():
    text = ETHYLENE_TEXT.replace("alpha: 1.0", "alpha: 1.5")
    with pytest.raises(ValidationError, match="alpha"):
        load_model_params(text)


def test_unparseable_value_reports_line():
    text = ETHYLENE_TEXT.replace("-2.874", "abc")
    with pytest.raises(ParameterFileError) as info:
        load_model_params(text)
    assert info.value.line == 2


def test_missing_sections():
    with pytest.raises(ParameterFileError):
        load_model_params("model: {name: x}\n")


def test_unreadable_file(tmp_path):
    with pytest.raises(ParameterFileError):
        load_model_file(tmp_path / "absent.yaml")


def test_variant_parse_aliases():
    assert InteractionVariant.parse("model1") is InteractionVariant.WITH_EXCHANGE
    assert InteractionVariant.parse("Coulomb_Only") is InteractionVariant.COULOMB_ONLY
    with pytest.raises(ValidationError):
        InteractionVariant.parse("hubbard")


def test_with_variant_and_alpha(ethylene):
    other = ethylene.with_variant("coulomb-only").with_alpha(0.0)
    assert other.interaction_variant is InteractionVariant.COULOMB_ONLY
    assert other.alpha == 0.0
    assert ethylene.alpha == 1.0
