"""
Command-line front end: `hermlab report`, `hermlab verify` and
`hermlab zoo`.

Exit codes
----------
0
    Success.
1
    Model file missing or malformed.
2
    Model fails validation (Jacobi identity, antisymmetry, unitarity,
    holonomy-system axioms).
3
    A verification suite failed.
"""

import argparse
import json
import logging
import sys
from typing import Dict, List, Optional

import pandas

from .__version__ import __version__
from .enums import ConnectionTag, SeverityLevel
from .exceptions import (HermlabError, InvalidModel, ModelFileError,
                         ValidationError)
from .fs import fs_factory
from .holsys import HolonomySystem, ak_certificate, from_model, validate_system
from .liegeom.geometry import ModelGeometry
from .liegeom.identities import check_curvature_identities
from .liegeom.models import PointwiseFrameModel
from .liegeom.predicates import DEFAULT_T_VALUES, predicates
from .numlin import ToleranceContext, max_norm
from .parser import dump_model, model_reader
from .report import ConditionReport, to_plain
from .split import decompose
from .utils import parse_t_values
from .validator import SUITES, raise_validation, validate
from .zoo import system_facts, zoo_entry, zoo_names

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_MODEL_FILE = 1
EXIT_INVALID_MODEL = 2
EXIT_SUITE_FAILURE = 3

CHECK_MARK = {True: '✓', False: '✗'}


def _section(title: str) -> None:
    print(f'\n== {title} ==')


def _table(report: ConditionReport,
           only: Optional[List[str]] = None) -> pandas.DataFrame:
    frame = report.to_frame()
    if only:
        frame = frame[frame['condition'].isin(only)]
    frame = frame.assign(holds=frame['holds'].map(CHECK_MARK))
    return frame


def _print_frame(frame: pandas.DataFrame) -> None:
    if frame.empty:
        print('(none)')
    else:
        print(frame.to_string(index=False, float_format='{:.3e}'.format))


def _ricci_table(geometry: ModelGeometry,
                 t_values: List[float]) -> pandas.DataFrame:
    rows = []
    connections = [('chern', None), ('bismut', None)]
    connections += [('gauduchon', t) for t in t_values
                    if t not in (0.0, 2.0)]
    for tag, t in connections:
        ricci = geometry.ricci(tag, t)
        rows.append({'connection': tag if t is None else f'{tag}(t={t:g})',
                     'ric1': max_norm(ricci.ric1),
                     'ric2': max_norm(ricci.ric2),
                     'ric3': max_norm(ricci.ric3),
                     's1': ricci.s1, 's3': ricci.s3})
    return pandas.DataFrame(rows)


def _connection_of(t: float):
    if t == 0:
        return ConnectionTag.CHERN, None
    if t == 2:
        return ConnectionTag.BISMUT, None
    return ConnectionTag.GAUDUCHON, t


def _holonomy_summary(geometry: ModelGeometry, conditions: ConditionReport,
                      t_values: List[float]) -> List[Dict]:
    summaries = []
    for t in t_values:
        name = f'AS(t={t:g})'
        if name not in conditions or not conditions.holds(name):
            continue
        tag, gauduchon_t = _connection_of(t)
        summary = {'t': t, 'connection': tag.value}
        try:
            system = from_model(geometry, tag, t=gauduchon_t)
            certificate = ak_certificate(system, geometry.ctx)
        except HermlabError as e:
            summary['error'] = f'{type(e).__name__}: {e}'
        else:
            summary.update(dim=system.dim, holonomy_dim=len(system.g_basis),
                           flat=certificate.flat,
                           contradiction=certificate.contradiction,
                           lam=certificate.lam)
        summaries.append(summary)
    return summaries


def _report_system(system: HolonomySystem, ctx: ToleranceContext,
                   args) -> int:
    _section('Holonomy system')
    print(f'label: {system.label}  dim: {system.dim}'
          f'  holonomy dim: {len(system.g_basis)}'
          f'  torsion: {system.is_generalized}')
    validation = validate_system(system, ctx)
    _section('System axioms')
    _print_frame(_table(validation))
    document = {'system': {'label': system.label, 'dim': system.dim},
                'validation': validation.to_dict()}
    if not validation.all_hold:
        _write_json(args.json, document)
        return EXIT_INVALID_MODEL
    facts = system_facts(system, ctx)
    _section('Certificates')
    _print_frame(pandas.DataFrame(
        [{'fact': name, 'holds': CHECK_MARK[bool(fact.holds)],
          'residual': fact.residual, 'value': fact.value}
         for name, fact in facts.items()],
        columns=['fact', 'holds', 'residual', 'value']))
    document['facts'] = {name: fact._asdict()
                         for name, fact in facts.items()}
    _write_json(args.json, document)
    return EXIT_OK


def _write_json(path: Optional[str], document: dict) -> None:
    if path:
        fs_factory(path).write_json(to_plain(document), indent=2)
        logger.info('Report written to %s', path)


def _context(args) -> ToleranceContext:
    if args.tol is None:
        return ToleranceContext.from_env()
    return ToleranceContext.from_env(abs_tol=args.tol)


def cmd_report(args) -> int:
    """Print every analysis of one model."""
    ctx = _context(args)
    try:
        model = model_reader(args.model, ctx)
    except ModelFileError as e:
        print(f'error: {e}', file=sys.stderr)
        return EXIT_MODEL_FILE
    except InvalidModel as e:
        print(f'invalid model: {e}', file=sys.stderr)
        return EXIT_INVALID_MODEL
    if isinstance(model, HolonomySystem):
        return _report_system(model, ctx, args)

    t_values = (parse_t_values(args.t) if args.t is not None
                else list(DEFAULT_T_VALUES))
    only = parse_names(args.check)
    geometry = ModelGeometry(model, ctx)

    _section('Model')
    kind = 'pointwise' if isinstance(model, PointwiseFrameModel) else 'lie'
    print(f'label: {model.label}  kind: {kind}  n: {model.n}')
    residuals = model.residuals()
    print('  '.join(f'{key}: {value:.3e}'
                    for key, value in residuals.items()))

    conditions = predicates(geometry, ctx, t_values)
    _section('Predicates')
    _print_frame(_table(conditions, only))

    _section('Ricci')
    ricci = _ricci_table(geometry, t_values)
    _print_frame(ricci)

    identities = {}
    _section('Identities')
    for t in t_values:
        report = check_curvature_identities(geometry, t, ctx)
        identities[f'{t:g}'] = report
        print(f'-- t = {t:g}')
        _print_frame(_table(report))

    decomposition = decompose(geometry, ctx, seed=args.seed)
    _section('Decomposition')
    print(f'W: {decomposition.ell1}  N: {decomposition.N_basis.shape[1]}'
          f'  CAS: {decomposition.cas}  blocks: {decomposition.ell3}')
    _print_frame(_table(decomposition.checks))

    holonomy = _holonomy_summary(geometry, conditions, t_values)
    if holonomy:
        _section('Holonomy systems')
        _print_frame(pandas.DataFrame(holonomy))

    _write_json(args.json, {
        'model': {'label': model.label, 'kind': kind, 'n': model.n,
                  'residuals': residuals},
        'predicates': conditions.to_dict(),
        'ricci': ricci.to_dict(orient='records'),
        'identities': {t: r.to_dict() for t, r in identities.items()},
        'decomposition': decomposition.to_dict(),
        'holonomy': holonomy,
    })
    return EXIT_OK


def parse_names(value: Optional[str]) -> Optional[List[str]]:
    """Comma-separated predicate names, or None."""
    if not value:
        return None
    return [name.strip() for name in value.split(',') if name.strip()]


def cmd_verify(args) -> int:
    """Run bundled suites (or check documents) and summarize them."""
    ctx = _context(args)
    suites = list(SUITES) if args.suite == 'all' else [args.suite]
    rows = []
    failed = False
    for suite in suites:
        try:
            document = validate(suite, ctx=ctx, save_to=args.save_to,
                                raise_exception=False)
        except (ModelFileError, OSError, ImportError, KeyError,
                NotImplementedError, ValueError) as e:
            print(f'error: {e}', file=sys.stderr)
            return EXIT_MODEL_FILE
        for item in document['items']:
            for check in item['checks']:
                report = check['report']
                rows.append({
                    'suite': document['name'],
                    'model': item['model'],
                    'check': check['type'],
                    'result': report['result'],
                    'worst_residual': report['worst_residual'],
                })
        try:
            raise_validation(document, SeverityLevel.MINIMAL)
        except ValidationError as e:
            logger.info('Suite %r failed: %s', document['name'], e)
            failed = True

    _section('Verification')
    _print_frame(pandas.DataFrame(rows))
    if args.json:
        _write_json(args.json, {'checks': rows, 'passed': not failed})
    passed = sum(row['result'] == 'pass' for row in rows)
    print(f'\n{passed}/{len(rows)} checks passed')
    return EXIT_SUITE_FAILURE if failed else EXIT_OK


def cmd_zoo(args) -> int:
    """List zoo entries or dump one in the model file format."""
    if args.action == 'list':
        rows = []
        for name in zoo_names():
            entry = zoo_entry(name)
            rows.append({'name': name, 'kind': entry.kind,
                         'family': entry.family,
                         'expectations': len(entry.expected)})
        _print_frame(pandas.DataFrame(rows))
        return EXIT_OK

    if not args.name:
        print('error: `zoo dump` needs a model name', file=sys.stderr)
        return EXIT_MODEL_FILE
    try:
        entry = zoo_entry(args.name)
    except KeyError as e:
        print(f'error: {e.args[0]}', file=sys.stderr)
        return EXIT_MODEL_FILE
    if args.output:
        dump_model(entry.model, args.output, indent=2)
    else:
        print(json.dumps(dump_model(entry.model), indent=2))
    return EXIT_OK


def _join_negative_values(argv: List[str]) -> List[str]:
    """Let `--t -1,1,3` through argparse, which would read `-1,1,3` as
    an option."""
    joined = []
    iterator = iter(argv)
    for arg in iterator:
        if arg == '--t':
            value = next(iterator, None)
            joined.append('--t' if value is None else f'--t={value}')
        else:
            joined.append(arg)
    return joined


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='hermlab',
        description='Curvature, torsion and holonomy of Hermitian models.',
    )
    parser.add_argument('--version', action='version',
                        version=f'%(prog)s {__version__}')
    parser.add_argument('-v', '--verbose', action='count', default=0,
                        help='More logging (repeat for debug output).')
    commands = parser.add_subparsers(dest='command', required=True)

    report = commands.add_parser('report', help='Analyse one model.')
    report.add_argument('model', help='Model file or zoo:<name>.')
    report.add_argument('--tol', type=float, help='Absolute tolerance.')
    report.add_argument('--t', help='Gauduchon parameters, comma-separated.')
    report.add_argument('--json', help='Also write the report to this file.')
    report.add_argument('--check',
                        help='Only show these predicates, comma-separated.')
    report.add_argument('--seed', type=int, default=0,
                        help='Seed of the randomized steps.')
    report.set_defaults(handler=cmd_report)

    verify = commands.add_parser('verify', help='Run verification suites.')
    verify.add_argument('suite', help=f'One of {", ".join(SUITES)}, `all`'
                        ' or a check document path.')
    verify.add_argument('--tol', type=float, help='Absolute tolerance.')
    verify.add_argument('--json', help='Write the summary to this file.')
    verify.add_argument('--save-to',
                        help='Folder where full result documents are kept.')
    verify.set_defaults(handler=cmd_verify)

    zoo = commands.add_parser('zoo', help='Built-in example models.')
    zoo.add_argument('action', choices=['list', 'dump'])
    zoo.add_argument('name', nargs='?', help='Entry to dump.')
    zoo.add_argument('--output', help='Write the model file here.')
    zoo.set_defaults(handler=cmd_zoo)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    """Entry point of the `hermlab` console script."""
    argv = sys.argv[1:] if argv is None else argv
    args = build_parser().parse_args(_join_negative_values(argv))
    level = (logging.WARNING, logging.INFO, logging.DEBUG)[min(args.verbose,
                                                               2)]
    logging.basicConfig(level=level,
                        format='%(levelname)s %(name)s: %(message)s')
    return args.handler(args)


if __name__ == '__main__':
    sys.exit(main())
