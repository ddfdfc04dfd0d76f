import numpy
import pytest
import scipy.linalg

from hermlab.exceptions import Degenerate
from hermlab.split import (chern_holonomy, decompose, is_cas,
                           pairing_blocks)
from hermlab.liegeom import ModelGeometry


def rotation(b):
    return numpy.array([[0, b], [-b, 0]], dtype=complex)


def test_pairing_blocks():
    A = scipy.linalg.block_diag(rotation(1), rotation(2))
    blocks = pairing_blocks(A)
    assert [block.b for block in blocks] == pytest.approx([2, 1])
    assert [block.multiplicity for block in blocks] == [1, 1]
    assert blocks[0].to_dict()['dimension'] == 2


def test_pairing_blocks_with_multiplicity():
    A = scipy.linalg.block_diag(rotation(1), rotation(1))
    blocks = pairing_blocks(A)
    assert len(blocks) == 1
    assert blocks[0].multiplicity == 2


def test_pairing_blocks_singular():
    with pytest.raises(Degenerate):
        pairing_blocks(numpy.zeros((2, 2)))


def test_complex_heisenberg(zoo):
    report = decompose(zoo('complex_heisenberg').model)
    assert report.cas
    assert (report.ell1, report.N_basis.shape[1], report.ell3) == (1, 2, 1)
    assert report.ell2 == 0
    assert report.checks.all_hold
    assert report.to_dict()['W'] == 1


def test_complex_simple(zoo):
    report = decompose(zoo('sl2c').model)
    assert report.ell1 == 3
    assert report.N_basis.shape[1] == 0
    assert report.ell3 == 0


def test_abelian(zoo):
    report = decompose(zoo('abelian2').model)
    assert report.ell1 == 0
    assert report.N_basis.shape[1] == 2


def test_chern_holonomy_of_flat_model(zoo):
    geometry = ModelGeometry(zoo('complex_heisenberg').model)
    assert is_cas(geometry)
    assert all(numpy.allclose(g, 0, atol=1e-9)
               for g in chern_holonomy(geometry))
