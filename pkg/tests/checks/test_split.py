from hermlab import validate
from hermlab.checks import Decomposition


def test_split_check(zoo):
    check = Decomposition({'type': 'split', 'W_dim': 1, 'N_dim': 2,
                           'blocks': 1})
    report = check(zoo('complex_heisenberg'))
    assert report['result'] is True
    assert report['detail']['cas'] is True


def test_split_check_wrong_dimension(zoo):
    check = Decomposition({'type': 'split', 'W_dim': 2})
    assert check(zoo('complex_heisenberg'))['result'] is False


def test_split_document():
    document = {
        'name': 'split',
        'items': [{'model': 'zoo:sl2c',
                   'checks': [{'type': 'split', 'W_dim': 3, 'N_dim': 0}]}],
    }
    result = validate(document)
    report = result['items'][0]['checks'][0]['report']
    assert report['result'] == 'pass'
    assert report['detail']['blocks'] == 0
