import pytest

from hermlab.fs import LocalFileSystem, fs_factory


@pytest.mark.parametrize('src_path, dst_name', [
    ['tests/models/non_unimodular.json', 'model.yaml'],
    ['tests/models/non_unimodular.json', 'model.json'],
    ['tests/models/heisenberg.yaml', 'model.yaml'],
    ['tests/models/heisenberg.yaml', 'model.yml'],
    ['tests/checks.yaml', 'checks.json'],
])
def test_fs_local(src_path, dst_name, tmp_path):
    src = fs_factory(src_path)
    dst = fs_factory(str(tmp_path)) / dst_name

    doc = src.read_dict()
    dst.write_dict(doc)

    assert src.read_dict() == dst.read_dict()


def test_unknown_extension(tmp_path):
    target = fs_factory(str(tmp_path / 'model.toml'))
    with pytest.raises(NotImplementedError):
        target.write_dict({})
    with pytest.raises(NotImplementedError):
        target.read_dict()


def test_folders(tmp_path):
    folder = fs_factory(str(tmp_path)) / 'a' / 'b'
    assert isinstance(folder, LocalFileSystem)
    assert not folder.exists()
    folder.mkdir(parents=True)
    assert folder.isdir()
    (folder / 'x.json').write_dict({'x': 1})
    assert [str(f) for f in fs_factory(str(tmp_path)).ls()] == [
        str(folder / 'x.json')]


def test_import_as_python_module():
    module = fs_factory('tests/custom_check.py').import_as_python_module()
    assert hasattr(module, 'BracketNormBelowX')
    with pytest.raises(ValueError):
        fs_factory('tests/checks.yaml').import_as_python_module()
