"""
Functions to read and write model files.
"""

import json
import logging
from typing import Dict, Type, Union

import yaml

from .._typing import HermlabModelDocument
from ..enums import ModelKind
from ..exceptions import InvalidModel, JacobiViolation, ModelFileError
from ..fs import fs_factory
from ..holsys import HolonomySystem
from ..liegeom.models import (HermitianModel, LieHermitianModel,
                              PointwiseFrameModel)
from ..numlin import ToleranceContext
from ..zoo import ZooEntry, is_zoo_reference, zoo_entry
from . import treaters

logger = logging.getLogger(__name__)

AnyModel = Union[HermitianModel, HolonomySystem]


def get_model_treater(kind: Union[ModelKind, str]
                      ) -> Type[treaters.ModelTreater]:
    """Map a model kind to its treater class.

    Parameters
    ----------
    kind : Union[ModelKind, str]
        Value of the `kind` key of a model document.

    Returns
    -------
    Type[treaters.ModelTreater]
        The treater class.

    Raises
    ------
    NotImplementedError
        Kind not supported.
    """
    treater_map: Dict[ModelKind, Type[treaters.ModelTreater]] = {
        ModelKind.LIE: treaters.LieTreater,
        ModelKind.POINTWISE: treaters.PointwiseTreater,
        ModelKind.HOLONOMY_SYSTEM: treaters.HolonomySystemTreater,
    }
    try:
        return treater_map[ModelKind(kind)]
    except (KeyError, ValueError):
        raise NotImplementedError(f'Model kind {kind!r} not implemented.')


def _kind_of(model: AnyModel) -> ModelKind:
    if isinstance(model, HolonomySystem):
        return ModelKind.HOLONOMY_SYSTEM
    if isinstance(model, PointwiseFrameModel):
        return ModelKind.POINTWISE
    if isinstance(model, LieHermitianModel):
        return ModelKind.LIE
    raise TypeError(f'Cannot serialize {type(model).__name__} objects')


def _read_document(path: str) -> HermlabModelDocument:
    fs = fs_factory(path)
    if not fs.exists():
        raise ModelFileError(f'Model file not found: {path}')
    try:
        doc = fs.read_dict()
    except (OSError, NotImplementedError, json.JSONDecodeError,
            yaml.YAMLError) as e:
        raise ModelFileError(f'Cannot parse model file {path}: {e}') from e
    if not isinstance(doc, dict):
        raise ModelFileError(f'Model file {path} does not hold a mapping')
    return doc


def entry_reader(source: Union[str, HermlabModelDocument]) -> ZooEntry:
    """Like :func:`model_reader`, but zoo references keep their
    expectations. Documents and files are wrapped in an entry with no
    expectations."""
    if is_zoo_reference(source):
        try:
            return zoo_entry(source)
        except KeyError as e:
            raise ModelFileError(str(e.args[0])) from None
    model = model_reader(source, validate=False)
    return ZooEntry(model.label or str(source)[:40], model,
                    family=_kind_of(model).value)


def model_reader(source: Union[str, HermlabModelDocument],
                 ctx: ToleranceContext = None,
                 validate: bool = True) -> AnyModel:
    """Create a model from a file, a parsed document or a zoo
    reference (`zoo:<name>`).

    Parameters
    ----------
    source : Union[str, HermlabModelDocument]
        Path to a JSON/YAML model file, a zoo reference or a document.
    ctx : ToleranceContext, optional
        Tolerances for bracket validation.
    validate : bool, optional
        Check antisymmetry and Jacobi of Hermitian models.

    Returns
    -------
    AnyModel
        A Lie or pointwise model, or a holonomy system.

    Raises
    ------
    ModelFileError
        Missing file, unparsable content or inconsistent arrays.
    JacobiViolation
        The brackets read fail the Lie algebra axioms.
    """
    if is_zoo_reference(source):
        try:
            model = zoo_entry(source).model
        except KeyError as e:
            raise ModelFileError(str(e.args[0])) from None
    else:
        if isinstance(source, str):
            doc = _read_document(source)
        else:
            doc = source
        try:
            treater = get_model_treater(doc.get('kind'))
            model = treater().treat(doc)
        except JacobiViolation:
            raise
        except (KeyError, ValueError, TypeError, NotImplementedError,
                InvalidModel) as e:
            raise ModelFileError(f'Malformed model document: {e}') from e
        logger.debug('Read %s model %r', doc.get('kind'), model.label)

    if validate and not isinstance(model, HolonomySystem):
        model.validate(ctx)
    return model


def dump_model(model: AnyModel, path: str = None,
               notes: str = None, **kwargs) -> HermlabModelDocument:
    """Serialize a model to a document and optionally write it.

    Parameters
    ----------
    model : AnyModel
        Model or holonomy system.
    path : str, optional
        Destination file (`.json`, `.yaml` or `.yml`).
    notes : str, optional
        Free text stored in the document metadata.
    **kwargs
        Passed to the file writer (`indent=2` for JSON, for instance).

    Returns
    -------
    HermlabModelDocument
        The serialized document.
    """
    doc = get_model_treater(_kind_of(model)).serialize(model, notes)
    if path is not None:
        fs_factory(path).write_dict(doc, **kwargs)
        logger.info('Model %r written to %s', model.label, path)
    return doc
