"""
Classes to turn model documents into engine objects and back.
"""

from dataclasses import replace
from typing import Any, Dict, Optional

import numpy

from .._typing import HermlabModelDocument
from ..enums import ModelKind
from ..holsys import HolonomySystem
from ..liegeom.models import LieHermitianModel, PointwiseFrameModel
from ..utils import from_pairs, to_pairs
from ..zoo import build

MODEL_FILE_VERSION = 1


def _metadata(label: str, notes: Optional[str] = None) -> Dict[str, Any]:
    metadata = {'label': label}
    if notes:
        metadata['notes'] = notes
    return metadata


class ModelTreater:
    """Base class for model treaters.

    A treater validates the envelope of a document (`version`, `kind`),
    builds the engine object with `treat` and writes it back with
    `serialize`.
    """

    kind: ModelKind

    def treat(self, doc: HermlabModelDocument):
        """Build an engine object from a model document.

        Parameters
        ----------
        doc : HermlabModelDocument
            Parsed JSON/YAML document.

        Raises
        ------
        ValueError
            Unsupported version or mismatching kind.
        """
        version = doc.get('version')
        if version != MODEL_FILE_VERSION:
            raise ValueError(f'Unsupported model file version: {version!r}'
                             f' (expected {MODEL_FILE_VERSION})')
        kind = ModelKind(doc.get('kind'))
        if kind != self.kind:
            raise ValueError(f'{type(self).__name__} cannot treat'
                             f' `{kind.value}` documents')

    @staticmethod
    def serialize(model) -> HermlabModelDocument:
        """Create a model document from an engine object.

        Parameters
        ----------
        model
            Engine object of the treater kind.

        Returns
        -------
        dict
            A document that `treat` turns back into an equal object.
        """
        raise NotImplementedError('No serializer for this treater.')

    @staticmethod
    def _label(doc: HermlabModelDocument) -> str:
        return (doc.get('metadata') or {}).get('label', '')


class LieTreater(ModelTreater):
    """Treater for left-invariant models stored through `C` and `D`."""

    kind = ModelKind.LIE

    # docstr-coverage:inherited
    def treat(self, doc: HermlabModelDocument) -> LieHermitianModel:
        super().treat(doc)
        n = int(doc['n'])
        shape = (n,) * 3
        return LieHermitianModel(n, from_pairs(doc['C'], shape),
                                 from_pairs(doc['D'], shape),
                                 self._label(doc))

    # docstr-coverage:inherited
    @staticmethod
    def serialize(model: LieHermitianModel,
                  notes: Optional[str] = None) -> HermlabModelDocument:
        return {
            'version': MODEL_FILE_VERSION,
            'kind': ModelKind.LIE.value,
            'n': model.n,
            'C': to_pairs(model.C),
            'D': to_pairs(model.D),
            'metadata': _metadata(model.label, notes),
        }


class PointwiseTreater(ModelTreater):
    """Treater for pointwise models.

    Frame functions cannot be stored, so documents name a zoo family
    with its parameters and the base point:

    .. code-block:: yaml

        version: 1
        kind: pointwise
        n: 3
        family: hopf
        params: {n: 3}
        point: [[1.0, 0.0], [0.0, 0.0], [0.0, 0.0]]
    """

    kind = ModelKind.POINTWISE

    # docstr-coverage:inherited
    def treat(self, doc: HermlabModelDocument) -> PointwiseFrameModel:
        super().treat(doc)
        entry = build(doc['family'], **(doc.get('params') or {}))
        model = entry.model
        if not isinstance(model, PointwiseFrameModel):
            raise ValueError(f'Zoo family {doc["family"]!r} does not'
                             ' build pointwise models')
        if int(doc.get('n', model.n)) != model.n:
            raise ValueError(f'Family {doc["family"]!r} built n={model.n},'
                             f' document declares n={doc["n"]}')
        if doc.get('point') is not None:
            model = model.at(from_pairs(doc['point'], (model.n,)))
        label = self._label(doc)
        if label:
            model = replace(model, label=label)
        return model

    # docstr-coverage:inherited
    @staticmethod
    def serialize(model: PointwiseFrameModel,
                  notes: Optional[str] = None) -> HermlabModelDocument:
        source = dict(model.source)
        try:
            family = source.pop('zoo')
        except KeyError:
            raise ValueError(f'Pointwise model {model.label!r} was not'
                             ' built by a zoo family') from None
        return {
            'version': MODEL_FILE_VERSION,
            'kind': ModelKind.POINTWISE.value,
            'n': model.n,
            'family': family,
            'params': source,
            'point': to_pairs(model.point),
            'metadata': _metadata(model.label, notes),
        }


class HolonomySystemTreater(ModelTreater):
    """Treater for holonomy systems, stored as nested real arrays."""

    kind = ModelKind.HOLONOMY_SYSTEM

    # docstr-coverage:inherited
    def treat(self, doc: HermlabModelDocument) -> HolonomySystem:
        super().treat(doc)

        def _optional(key):
            value = doc.get(key)
            return None if value is None else numpy.asarray(value,
                                                            dtype=float)

        g_basis = doc.get('g_basis')
        if g_basis is not None:
            g_basis = [numpy.asarray(A, dtype=float) for A in g_basis]
        return HolonomySystem(int(doc['dim']),
                              numpy.asarray(doc['H'], dtype=float),
                              numpy.asarray(doc['Rm'], dtype=float),
                              _optional('T'), g_basis, _optional('J'),
                              self._label(doc))

    # docstr-coverage:inherited
    @staticmethod
    def serialize(system: HolonomySystem,
                  notes: Optional[str] = None) -> HermlabModelDocument:
        doc = {
            'version': MODEL_FILE_VERSION,
            'kind': ModelKind.HOLONOMY_SYSTEM.value,
            'dim': system.dim,
            'H': system.H.tolist(),
            'Rm': system.Rm.tolist(),
            'g_basis': [A.tolist() for A in system.g_basis],
        }
        if system.T is not None:
            doc['T'] = system.T.tolist()
        if system.J is not None:
            doc['J'] = system.J.tolist()
        doc['metadata'] = _metadata(system.label, notes)
        return doc
