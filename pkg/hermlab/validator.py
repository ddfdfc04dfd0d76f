"""
Set of functions to run check documents over models.
"""

import functools
import json
import logging
import warnings
from copy import deepcopy
from datetime import datetime
from os.path import dirname, join, splitext
from types import ModuleType
from typing import Iterable, List, Optional, Union

from jinja2 import BaseLoader
from jinja2 import StrictUndefined as strict
from jinja2.nativetypes import NativeEnvironment

from ._typing import HermlabCheck, HermlabCheckDocument
from .checks import CHECKS_MAP, BaseCheck
from .enums import SeverityLevel
from .exceptions import HermlabError, ValidationError
from .fs import FileSystem, LocalFileSystem, fs_factory
from .numlin import ToleranceContext
from .parser import entry_reader
from .report import to_plain
from .utils import _render_dict
from .zoo import ZOO_PREFIX, zoo_names

logger = logging.getLogger(__name__)

SUITES = ('identities', 'holonomy', 'appendix', 'zoo', 'properties')
"""Check documents shipped with the package, run by `verify all`."""

ALL_ZOO = f'{ZOO_PREFIX}*'


def suite_path(name: str) -> str:
    """Path to a bundled check document."""
    if name not in SUITES:
        raise KeyError(f'Unknown suite {name!r}; available: {SUITES}')
    return join(dirname(__file__), 'suites', f'{name}.yaml')


@functools.lru_cache(maxsize=32)
def _cached_import_file_as_module(file_path: str) -> ModuleType:
    """Import a file as a module, caching the result."""
    return fs_factory(file_path).import_as_python_module()


def _load_custom_check(location: str):
    """Load a custom check from a .py file"""
    if '::' not in location:
        raise ValueError('You should pass your class location using the'
                         ' following pattern:\n'
                         '<.py file location>::<class name>')

    file_path, class_name = location.split('::')

    module = _cached_import_file_as_module(file_path)
    cls = getattr(module, class_name)

    if not issubclass(cls, BaseCheck):
        raise ImportError('Your custom check should be a subclass of '
                          'BaseCheck')

    return cls


def _process_check(check: HermlabCheck,
                   ctx: Optional[ToleranceContext] = None) -> BaseCheck:
    """Receive check dict and instantiate the proper check class.
    The `name` attribute of the class binds the check type to its
    class.

    Raises
    ------
    KeyError
        Custom check without a `location` parameter.
    NotImplementedError
        Declared check type does not exist.
    """
    check_type = check.get('type')

    if check_type == 'custom':
        location = check.get('location')
        if not location:
            raise KeyError('A custom check must define a `location`'
                           ' parameter.')
        cls = _load_custom_check(location)
    elif check_type in CHECKS_MAP:
        cls = CHECKS_MAP[check_type]
    else:
        raise NotImplementedError(
            f'Check type "{check_type}" not implemented.\n'
            f'The available types are {list(CHECKS_MAP)}'
            ' or `custom` for your own checks.'
        )

    options = {key: value for key, value in check.items()
               if key != 'report'}
    return cls(options, ctx)


def _expand_models(reference: Union[str, List[str]]) -> List[str]:
    references = reference if isinstance(reference, list) else [reference]
    expanded = []
    for item in references:
        if item == ALL_ZOO:
            expanded.extend(f'{ZOO_PREFIX}{name}' for name in zoo_names())
        else:
            expanded.append(item)
    return expanded


def _run_check(check: HermlabCheck, entry,
               ctx: Optional[ToleranceContext]) -> dict:
    instance = _process_check(check, ctx)
    try:
        report = instance(entry)
    except (HermlabError, KeyError, ValueError) as e:
        logger.warning('Check %r raised on %r: %s', check.get('type'),
                       entry.name, e)
        report = {'detail': {'error': f'{type(e).__name__}: {e}'},
                  'result': False, 'worst_residual': None}
    report = to_plain(report)
    report['result'] = 'pass' if report['result'] is True else 'fail'
    return report


def validate(against: Union[str, HermlabCheckDocument], *,
             ctx: Optional[ToleranceContext] = None,
             models: Optional[Iterable[str]] = None,
             save_to: Optional[str] = None,
             save_format: Optional[str] = None,
             current_date: Optional[datetime] = None,
             raise_exception: bool = True,
             exception_level: SeverityLevel = SeverityLevel.CRITICAL,
             template: Optional[dict] = None) -> dict:
    """Run a check document.

    The document declares a `name` and a list of `items`; each item
    names a model (a path, a `zoo:<name>` reference, a list of them, or
    `zoo:*` for every zoo entry) and the checks to run on it:

    .. code-block:: yaml

        name: appendix
        items:
        - model: [zoo:hopf2, zoo:hopf3, zoo:hopf4]
          checks:
          - type: reference
            severity: 5
            points: 20

    Strings containing `{{` are rendered as Jinja templates with the
    variables `tol` and `fd_tol` of `ctx` plus `template`.

    Parameters
    ----------
    against : Union[str, HermlabCheckDocument]
        A check document, a path to a YAML/JSON check document or the
        name of a bundled suite.
    ctx : ToleranceContext, optional
        Tolerances, by default from the environment.
    models : Iterable[str], optional
        Only run items whose model reference is in this collection.
    save_to : str, optional
        Folder where the result document is saved, as
        `<save_to>/<document name>/<%Y%m%dT%H%M%S>.<save_format>`.
    save_format : str, optional
        `yaml` or `json`; by default the format of `against`, or YAML.
    current_date : datetime, optional
        Date used in the saved file name; `datetime.utcnow()` with a
        warning when missing.
    raise_exception : bool, optional
        Raise `ValidationError` when a check of severity at least
        `exception_level` fails. By default True.
    exception_level : SeverityLevel, optional
        By default SeverityLevel.CRITICAL (5).
    template : dict, optional
        Extra template variables.

    Returns
    -------
    dict
        The document with one `report` per check and the resolved model
        per item.

    Raises
    ------
    ValueError
        `save_to` is not a directory.
    ValidationError
        A check of severity at least `exception_level` failed.
    """
    ctx = ctx or ToleranceContext.from_env()

    if save_to:
        save_to_fs = fs_factory(save_to)
        if isinstance(save_to_fs, LocalFileSystem) and not save_to_fs.isdir():
            raise ValueError('The `save_to` parameter must be an existing'
                             ' directory.')

    if isinstance(against, str):
        if against in SUITES:
            against = suite_path(against)
        save_format = save_format or splitext(against)[1].lstrip('.')
        document = fs_factory(against).read_dict()
    else:
        save_format = save_format or 'yaml'
        document = deepcopy(against)
    assert save_format.lower() in ('json', 'yaml', 'yml'), (
        f'Not a valid format {save_format}'
    )

    template = dict(tol=ctx.abs_tol, fd_tol=ctx.fd_tol, **(template or {}))
    _render_dict(NativeEnvironment(loader=BaseLoader(), undefined=strict),
                 dict_=document,
                 template=template)

    results = []
    for item in document['items']:
        for reference in _expand_models(item['model']):
            if models is not None and reference not in models:
                continue
            entry = entry_reader(reference)
            checks = deepcopy(item.get('checks') or [])
            for check in checks:
                check['report'] = _run_check(check, entry, ctx)
            results.append({'model': reference, 'checks': checks})
            logger.info('%s: %d checks run on %s', document['name'],
                        len(checks), reference)
    document['items'] = results

    if save_to:
        _save_validation_document(document, save_to_fs, save_format,
                                  current_date)

    if raise_exception:
        raise_validation(document, exception_level)

    return document


def raise_validation(validation_result_document: dict,
                     exception_level: SeverityLevel) -> None:
    """Raise `ValidationError` whenever a check whose severity level is
    greater or equal to `exception_level` failed, printing every failed
    check.

    Parameters
    ----------
    validation_result_document : dict
        Result document generated by :func:`validate`.
    exception_level : SeverityLevel
        Integer for the minimum severity level to raise exception for.

    Raises
    ------
    ValidationError
        Validation failed for at least one check whose severity is
        greater or equal to `exception_level`.
    """
    highest_level = None
    for item in validation_result_document['items']:
        model = item['model']
        for check in item.get('checks'):
            severity = check.get('severity', SeverityLevel.CRITICAL)
            result = check.get('report').get('result')

            if result == 'fail':
                if severity >= exception_level:
                    if highest_level is None or severity > highest_level:
                        highest_level = severity
                print(f'Check failed for model {model}:')
                print(json.dumps(check, indent=4, default=str))

    if highest_level is not None:
        print(f'Severity level threshold was {exception_level}.')
        raise ValidationError(
            highest_level,
            f'Validation failed with severity level {highest_level}.'
        )


def _save_validation_document(document: dict,
                              save_to: FileSystem,
                              save_format: Optional[str] = None,
                              current_date: Optional[datetime] = None) -> None:
    if current_date is None:
        warnings.warn(
            'Document is being saved using the current date returned by the'
            ' `datetime.utcnow()` method. Instead, prefer to explicitly pass a'
            ' `current_date` argument to `validate`.', Warning
        )
        current_date = datetime.utcnow()
    current_date = current_date.strftime('%Y%m%dT%H%M%S')  # type: ignore

    folder_path = save_to / document['name']
    if isinstance(folder_path, LocalFileSystem):
        folder_path.mkdir(parents=True, exist_ok=True)

    file_path = folder_path / f'{current_date}.{save_format}'

    logger.info('Saving check results to "%s"', file_path)
    file_path.write_dict(document, indent=2)
