import numpy
import pytest
from numpy.testing import assert_allclose, assert_array_equal

from hermlab import dump_model, model_reader
from hermlab.enums import ModelKind
from hermlab.exceptions import JacobiViolation, ModelFileError
from hermlab.holsys import HolonomySystem
from hermlab.liegeom.models import LieHermitianModel, PointwiseFrameModel
from hermlab.parser import entry_reader, get_model_treater
from hermlab.parser.treaters import LieTreater
from hermlab.zoo import zoo_names


def test_read_lie_model_from_json():
    model = model_reader('tests/models/non_unimodular.json')
    assert isinstance(model, LieHermitianModel)
    assert model.n == 2
    assert model.label == 'non_unimodular'
    assert model.D[0, 0, 0] == 1
    assert not numpy.any(model.C)


def test_read_lie_model_from_yaml():
    model = model_reader('tests/models/heisenberg.yaml')
    assert model.C[0, 1, 2] == 1 and model.C[1, 0, 2] == -1


def test_read_pointwise_model():
    model = model_reader('tests/models/hopf3.yaml')
    assert isinstance(model, PointwiseFrameModel)
    assert model.label == 'hopf3_off_axis'
    assert_array_equal(model.point, [0.5 + 0.5j, -1j, 2])


def test_read_zoo_reference():
    assert model_reader('zoo:sphere3').dim == 3
    with pytest.raises(ModelFileError):
        model_reader('zoo:nothing')


def test_jacobi_violation():
    with pytest.raises(JacobiViolation):
        model_reader('tests/models/broken_jacobi.yaml')
    model = model_reader('tests/models/broken_jacobi.yaml', validate=False)
    assert model.residuals()['jacobi'] > 0.5


@pytest.mark.parametrize('path', [
    'tests/models/missing.json',
    'tests/models/truncated.json',
    'tests/models/wrong_shape.json',
    'tests/models/wrong_version.json',
])
def test_malformed_files(path):
    with pytest.raises(ModelFileError):
        model_reader(path)


@pytest.mark.parametrize('doc', [
    {'version': 1, 'kind': 'kodaira', 'n': 1},
    {'version': 1, 'kind': 'lie', 'n': 1},
    {'version': 1, 'kind': 'lie', 'n': 1, 'C': [[[1]]], 'D': [[[1]]]},
    {'version': 1, 'kind': 'pointwise', 'n': 2, 'family': 'abelian',
     'params': {'n': 2}},
    {'version': 1, 'kind': 'pointwise', 'n': 3, 'family': 'hopf',
     'params': {'n': 2}},
    {'version': 1, 'kind': 'holonomy-system', 'dim': 2, 'H': [[1]],
     'Rm': []},
])
def test_malformed_documents(doc):
    with pytest.raises(ModelFileError):
        model_reader(doc)


def test_treater_kind_mismatch():
    with pytest.raises(ValueError):
        LieTreater().treat({'version': 1, 'kind': 'pointwise'})
    with pytest.raises(NotImplementedError):
        get_model_treater('kodaira')
    assert get_model_treater(ModelKind.LIE) is LieTreater


@pytest.mark.parametrize('name', zoo_names())
@pytest.mark.parametrize('extension', ['json', 'yaml'])
def test_round_trip(tmp_path, name, extension):
    model = model_reader(f'zoo:{name}')
    path = str(tmp_path / f'{name}.{extension}')
    document = dump_model(model, path, notes='round trip')
    assert document['metadata'] == {'label': model.label,
                                    'notes': 'round trip'}
    read = model_reader(path)
    assert type(read) is type(model)
    assert read.label == model.label
    if isinstance(model, HolonomySystem):
        assert_array_equal(read.Rm, model.Rm)
        assert_array_equal(read.H, model.H)
        assert len(read.g_basis) == len(model.g_basis)
    elif isinstance(model, PointwiseFrameModel):
        assert_array_equal(read.point, model.point)
        assert_allclose(read.bracket, model.bracket, atol=1e-14)
    else:
        assert_array_equal(read.C, model.C)
        assert_array_equal(read.D, model.D)


def test_dump_without_path(zoo):
    document = dump_model(zoo('hopf2').model)
    assert document['kind'] == 'pointwise'
    assert document['family'] == 'hopf'
    assert document['params'] == {'n': 2}
    assert document['point'] == [[1.0, 0.0], [0.0, 0.0]]


def test_entry_reader():
    entry = entry_reader('zoo:cp2')
    assert entry.expected
    file_entry = entry_reader('tests/models/heisenberg.yaml')
    assert file_entry.name == 'heisenberg'
    assert file_entry.expected == []
    assert file_entry.kind == 'lie'
    with pytest.raises(ModelFileError):
        entry_reader('zoo:nothing')
