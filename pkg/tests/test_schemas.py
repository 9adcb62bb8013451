# tests/test_schemas.py
import numpy as np
import pytest
from numpy.testing import assert_allclose
from pydantic import ValidationError

from lsl.combinatorics import SubsetIndex
from lsl.ring import basis_class
from lsl.schemas import (
    ClassPayload,
    MatrixPayload,
    RunConfig,
    StandardResponse,
    SubsetPayload,
    loop_from_payload,
)
from lsl.spectral_flow import maslov_index


def test_matrix_payload():
    M = np.array([[1, 2j], [3 - 1j, 0]])
    payload = MatrixPayload.from_array(M)
    assert payload.data[1] == [0.0, 2.0]
    assert_allclose(payload.to_array(), M)
    with pytest.raises(ValidationError, match="expected 4 entries"):
        MatrixPayload(rows=2, cols=2, data=[[1, 0]])
    with pytest.raises(ValidationError, match="re, im"):
        MatrixPayload(rows=1, cols=1, data=[[1, 0, 0]])


def test_subset_and_class_payloads():
    payload = SubsetPayload(n=3, members=[3, 1])
    assert payload.members == [1, 3]
    assert payload.to_subset() == SubsetIndex.of(3, [1, 3])
    x = basis_class(SubsetIndex.of(3, [2])).scale(-4)
    restored = ClassPayload.model_validate(ClassPayload.from_class(x).model_dump()).to_class()
    assert restored == x


def test_loop_from_payload():
    theta = np.linspace(-np.pi, np.pi, 129)
    samples = [
        {"theta": float(t), "S": MatrixPayload.from_array([[np.exp(1j * (t + 0.3))]]).model_dump()}
        for t in theta
    ]
    assert maslov_index(loop_from_payload(samples)) == 1
    with pytest.raises(ValidationError):
        loop_from_payload(samples[:-1])


def test_run_config_defaults():
    config = RunConfig()
    assert config.n == 2
    assert config.flow_spec().alpha == (0.5, 1.5)
    assert config.format == "json"


def test_run_config_file_and_overrides(tmp_path):
    path = tmp_path / "run.yaml"
    path.write_text("n: 3\nseed: 5\nspec: '1,2,3'\ntol_phase: 1.0e-6\n", encoding="utf-8")
    config = RunConfig.load(path, seed=9, out=None)
    assert config.n == 3
    assert config.seed == 9
    assert config.flow_spec().alpha == (1.0, 2.0, 3.0)
    assert config.tolerances().phase == 1e-6
    assert config.out is None


def test_run_config_json_file(tmp_path):
    path = tmp_path / "run.json"
    path.write_text('{"n": 2, "format": "csv"}', encoding="utf-8")
    assert RunConfig.load(path).format == "csv"


def test_run_config_rejects_bad_values(tmp_path):
    with pytest.raises(ValidationError, match="strictly increasing"):
        RunConfig(n=2, spec="2,1")
    with pytest.raises(ValidationError):
        RunConfig(n=0)
    with pytest.raises(ValidationError):
        RunConfig(format="xml")
    path = tmp_path / "list.yaml"
    path.write_text("- 1\n- 2\n", encoding="utf-8")
    with pytest.raises(ValueError, match="mapping"):
        RunConfig.load(path)


def test_standard_response():
    response = StandardResponse(outcome="success", result={"n": 1})
    assert response.model_dump() == {"outcome": "success", "result": {"n": 1}, "message": None}
    with pytest.raises(ValidationError):
        StandardResponse(outcome="maybe")
