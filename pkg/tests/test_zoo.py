import numpy
import pytest
from numpy.testing import assert_array_equal

from hermlab.exceptions import BadRowSum
from hermlab.liegeom import ModelGeometry, predicates
from hermlab.zoo import (SystemFact, build, finite_difference_residuals,
                         hopf, nilpotent, reference_residuals, system_facts,
                         verify_entry, zoo_entry, zoo_names)


@pytest.mark.parametrize('name', zoo_names())
def test_zoo_expectations(zoo, name):
    entry = zoo(name)
    assert entry.expected
    report = verify_entry(entry)
    assert report.all_hold, [(e.name, e.residual, e.detail)
                             for e in report.failures()]


def test_zoo_entry_names():
    assert zoo_entry('zoo:sl2c').name == 'sl2c'
    with pytest.raises(KeyError):
        zoo_entry('sl3c')


def test_zoo_is_deterministic():
    first, second = zoo_entry('hopf3r'), zoo_entry('hopf3r')
    assert_array_equal(first.model.point, second.model.point)
    assert_array_equal(zoo_entry('sl2c').model.C, zoo_entry('sl2c').model.C)


@pytest.mark.parametrize('name, kind', [
    ('hopf2', 'pointwise'),
    ('nilpotent3', 'lie'),
    ('flat4', 'holonomy-system'),
])
def test_entry_kind(name, kind):
    entry = zoo_entry(name)
    assert entry.kind == kind
    assert entry.summary()['kind'] == kind


def test_hopf_arguments():
    with pytest.raises(ValueError):
        hopf(1)
    with pytest.raises(ValueError):
        hopf(2, [0, 0])


def test_nilpotent_row_sums():
    with pytest.raises(BadRowSum):
        nilpotent(3, 2, [[1, 1]])
    with pytest.raises(ValueError):
        nilpotent(3, 3, [[1, -1]])


def test_build():
    assert build('abelian', n=3).model.n == 3
    assert build('hopf', n=4).model.label == 'hopf4'
    with pytest.raises(KeyError):
        build('kodaira')


@pytest.mark.parametrize('name', ['hopf2', 'hopf3', 'hopf4'])
def test_hopf_reference_at_random_points(zoo, name):
    model = zoo(name).model
    rng = numpy.random.default_rng(0)
    for _ in range(20):
        point = (rng.standard_normal(model.n)
                 + 1j * rng.standard_normal(model.n))
        geometry = ModelGeometry(model.at(point))
        assert reference_residuals(geometry).all_hold
        assert finite_difference_residuals(geometry).all_hold
        conditions = predicates(geometry, t_values=(2.0,))
        assert conditions.holds('btp')
        assert conditions.holds('AS(t=2)')


def test_finite_differences_skip_lie_models(zoo):
    geometry = ModelGeometry(zoo('sl2c').model)
    assert len(finite_difference_residuals(geometry)) == 0
    assert len(reference_residuals(geometry)) == 0


def test_system_facts_keys(zoo):
    facts = system_facts(zoo('sphere3').model)
    assert facts['holsys.valid'].holds
    assert facts['holsys.valid'].residual <= 1e-9
    assert facts['holsys.certificate'] == SystemFact(True)
    assert not facts['holsys.flat'].holds
    assert facts['holsys.flat'].residual is None
    assert facts['holsys.flat'].value > 0
    assert facts['holsys.lambda_nonzero'].value != 0
