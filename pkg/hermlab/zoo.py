"""
Built-in models with the properties they are known to have.

Every constructor returns a :class:`ZooEntry`: the model together with a
list of :class:`Expectation` records. :func:`verify_entry` evaluates an
entry with the engine and reports, per expectation, whether the computed
property agrees with the recorded one.

Named entries are available through :func:`zoo_entry` (`'zoo:hopf3'` and
`'hopf3'` are equivalent); parameterized families through
:func:`build`, which is what model files of the pointwise kind use.
"""

import logging
from dataclasses import dataclass, field
from functools import partial
from typing import (Any, Callable, Dict, List, Mapping, NamedTuple, Optional,
                    Tuple, Union)

import numpy

from .exceptions import (BadRowSum, Balanced, Degenerate, HermlabError,
                         HypothesisUnmet, NotCAS, NotDiagonalizable)
from .holsys import (HolonomySystem, ak_certificate, is_irreducible,
                     killing_checks, kostant_reconstruction, nomizu,
                     schur_lambda, validate_system)
from .liegeom.frames import admissible_frame
from .liegeom.geometry import ModelGeometry
from .liegeom.identities import check_curvature_identities
from .liegeom.models import (HermitianModel, LieHermitianModel,
                             PointwiseFrameModel, direct_sum,
                             finite_difference_derivative,
                             from_real_algebra)
from .liegeom.predicates import lee_form, predicates
from .numlin import (DEFAULT_TOLERANCE, Jet, ToleranceContext, approx_zero,
                     conjugate_index, contract, max_norm)
from .report import ConditionReport
from .split import decompose

logger = logging.getLogger(__name__)

ZOO_PREFIX = 'zoo:'

# Scale turning the Cartan-Killing metric of sl(2, C) into the identity
# on the standard su(2) basis: g = -K / 4 on su(2) and K / 4 on i su(2).
CARTAN_KILLING_SCALE = 0.25


@dataclass(frozen=True)
class Expectation:
    """A property a zoo model is known to have.

    Parameters
    ----------
    name : str
        Fact name (`btp`, `identities.b_closed`, `split.w_invariant`,
        `holsys.valid`, ...) or quantity name (`chern_ric3`, `W_dim`, ...).
    value : Any
        `True`/`False` for facts and for quantities compared with
        `compare='zero'`; a number otherwise.
    provenance : str
        `LITERATURE`, `DERIVED` or `TRIVIAL`.
    anchor : str, optional
        Where the property comes from.
    index : tuple, optional
        Component of a quantity compared with `compare='equals'`.
    compare : str, optional
        For quantities: `zero`, `equals`, `below` or `above`.
    """

    name: str
    value: Any
    provenance: str
    anchor: str = ''
    index: Optional[Tuple[int, ...]] = None
    compare: Optional[str] = None

    def to_dict(self) -> dict:
        document = {'name': self.name, 'value': self.value,
                    'provenance': self.provenance}
        if self.anchor:
            document['anchor'] = self.anchor
        if self.index is not None:
            document['index'] = list(self.index)
        if self.compare:
            document['compare'] = self.compare
        return document


@dataclass(eq=False)
class ZooEntry:
    """A model (or holonomy system) and its expected properties."""

    name: str
    model: Union[HermitianModel, HolonomySystem]
    expected: List[Expectation] = field(default_factory=list)
    family: str = ''
    params: Mapping[str, Any] = field(default_factory=dict)

    @property
    def kind(self) -> str:
        if isinstance(self.model, HolonomySystem):
            return 'holonomy-system'
        if isinstance(self.model, PointwiseFrameModel):
            return 'pointwise'
        return 'lie'

    def summary(self) -> dict:
        return {'name': self.name, 'kind': self.kind, 'family': self.family,
                'label': self.model.label,
                'expected': [e.to_dict() for e in self.expected]}


def _known(name, value, anchor='', **kwargs) -> Expectation:
    return Expectation(name, value, 'LITERATURE', anchor, **kwargs)


def _derived(name, value, anchor='', **kwargs) -> Expectation:
    return Expectation(name, value, 'DERIVED', anchor, **kwargs)


def _trivial(name, value, anchor='', **kwargs) -> Expectation:
    return Expectation(name, value, 'TRIVIAL', anchor, **kwargs)


# Hopf manifolds

def _hopf_potential(z: numpy.ndarray):
    """`f_a = x_a(|z|) / |z|` with its first two frame derivatives.

    With `e_i = |z| d/dz_i` every bracket is
    `[x_a, x_b] = f_a x_b - f_b x_a`.
    """
    n = len(z)
    r = numpy.linalg.norm(z)
    w = numpy.concatenate([z, z.conj()])
    bar = conjugate_index(2 * n)
    f = w[bar] / (2 * r)
    pairing = numpy.eye(2 * n)[bar]
    df = pairing / 2 - numpy.multiply.outer(f, f)
    d2f = (- contract('rs,a->rsa', pairing, f) / 2
           - contract('ra,s->rsa', pairing, f) / 2
           + 2 * contract('r,s,a->rsa', f, f, f))
    return f, df, d2f


def hopf_structure(z) -> Jet:
    """Structure functions of the frame `e_i = |z| d/dz_i` of the Hopf
    metric `g = |dz|^2 / |z|^2`, with closed-form frame derivatives."""
    z = numpy.asarray(z, dtype=complex)
    eye = numpy.eye(2 * len(z))

    def bracket(v):
        return (contract('...a,bd->...abd', v, eye)
                - contract('...b,ad->...abd', v, eye))

    f, df, d2f = _hopf_potential(z)
    return Jet(bracket(f), bracket(df), bracket(d2f))


def hopf_frame(z) -> numpy.ndarray:
    z = numpy.asarray(z, dtype=complex)
    return numpy.linalg.norm(z) * numpy.eye(len(z))


def _hopf_torsion(z):
    zb, r, eye = z.conj(), numpy.linalg.norm(z), numpy.eye(len(z))
    return (contract('k,ij->ikj', zb, eye)
            - contract('i,kj->ikj', zb, eye)) / r


def _hopf_chern_gamma(z):
    zb, r, eye = z.conj(), numpy.linalg.norm(z), numpy.eye(len(z))
    return -contract('k,ij->ikj', zb, eye) / (2 * r)


def _hopf_bismut_gamma(z):
    zb, r, eye = z.conj(), numpy.linalg.norm(z), numpy.eye(len(z))
    return (contract('k,ij->ikj', zb, eye) / (2 * r)
            - contract('i,kj->ikj', zb, eye) / r)


def _hopf_bismut_curvature(z):
    """`R^b_{i jbar k lbar}` indexed `[i, j, k, l]`."""
    zb, eye = z.conj(), numpy.eye(len(z))
    r2 = numpy.vdot(z, z).real
    return (contract('il,kj->ijkl', eye, eye)
            - contract('ij,kl->ijkl', eye, eye)
            + (contract('i,j,kl->ijkl', zb, z, eye)
               + contract('k,l,ij->ijkl', zb, z, eye)
               - contract('i,l,kj->ijkl', zb, z, eye)
               - contract('k,j,il->ijkl', zb, z, eye)) / r2)


def _hopf_bismut_curvature_derivative(z):
    """`e_s(R^b_{i jbar k lbar})` indexed `[s, i, j, k, l]`."""
    zb, eye = z.conj(), numpy.eye(len(z))
    r = numpy.linalg.norm(z)
    projector = eye - contract('s,j->js', zb, z) / r ** 2
    first = (contract('i,kl->ikl', zb, eye)
             - contract('k,il->ikl', zb, eye)) / r
    second = (contract('k,ij->ikj', zb, eye)
              - contract('i,kj->ikj', zb, eye)) / r
    return (contract('ikl,js->sijkl', first, projector)
            + contract('ikj,ls->sijkl', second, projector))


def _hopf_ddbar_log(z):
    """Frame components `|z|^2 d_i dbar_j log|z|^2`."""
    r2 = numpy.vdot(z, z).real
    return numpy.eye(len(z)) - contract('i,j->ij', z.conj(), z) / r2


def _hopf_bismut_ricci(z):
    """First Bismut Ricci, `-(n - 2)` times the frame components of
    `i ddbar log|z|^2`."""
    return -(len(z) - 2) * _hopf_ddbar_log(z)


def _hopf_lee_form(z):
    """`psi = -d log|z|^2` on the complexified frame."""
    f, _, _ = _hopf_potential(z)
    return -2 * f


HOPF_REFERENCE = {
    'torsion': _hopf_torsion,
    'chern_gamma': _hopf_chern_gamma,
    'bismut_gamma': _hopf_bismut_gamma,
    'bismut_curvature': _hopf_bismut_curvature,
    'bismut_curvature_derivative': _hopf_bismut_curvature_derivative,
    'bismut_ricci': _hopf_bismut_ricci,
    'lee_form': _hopf_lee_form,
}


def hopf(n: int, z=None) -> ZooEntry:
    """Hopf manifold `(C^n - 0) / <2z>` with `g = |dz|^2 / |z|^2` at the
    point `z`, by default `(1, 0, ..., 0)`.

    Raises
    ------
    ValueError
        If `n < 2` or `z = 0`.
    """
    n = int(n)
    if n < 2:
        raise ValueError('Hopf manifolds need n >= 2')
    z = (numpy.eye(n)[0] if z is None
         else numpy.asarray(z, dtype=complex).reshape(n))
    if not numpy.any(z):
        raise ValueError('The base point of a Hopf manifold must be nonzero')
    model = PointwiseFrameModel(n, z, hopf_structure, hopf_frame,
                                label=f'hopf{n}', reference=HOPF_REFERENCE,
                                source={'zoo': 'hopf', 'n': n})
    expected = [
        _known('btp', True, 'Bismut torsion is parallel'),
        _known('AS(t=2)', True, 'Bismut curvature is parallel'),
        _known('bismut_flat', n == 2, 'not Bismut flat for n >= 3'),
        _known('vaisman', True, 'Lee form -d log|z|^2 is parallel'),
        _derived('kahler', False),
        _derived('balanced', False),
        _known('identities.chern_bismut_swap', True),
        _known('identities.bismut_swap', True),
        _derived('frames.b_torsion_norm', True),
        _derived('frames.eta_sum', True),
        _known('frames.b_eta', True),
        _derived('fd.bismut_curvature', True),
    ]
    expected += [_known(f'reference.{key}', True) for key in HOPF_REFERENCE]
    if n == 2:
        expected.append(_derived('bismut_curvature', 0.0, compare='below'))
    elif numpy.allclose(z, numpy.eye(n)[0] * abs(z[0])):
        expected.append(_known('bismut_hermitian', -1.0, index=(1, 1, 2, 2),
                               compare='equals'))
        expected.append(_derived('bismut_curvature', 0.5, compare='above'))
    return ZooEntry(f'hopf{n}', model, expected, 'hopf',
                    {'n': n, 'z': z})


# Left-invariant models

def almost_abelian(lam: float, v, A) -> ZooEntry:
    """Almost abelian Lie algebra in an admissible unitary frame.

    The nonzero constants are `D^1_{11} = lam`, `D^1_{i1} = v_i`,
    `D^j_{i1} = A_ij` and `C^j_{1i} = -conj(A_ji)` for `i, j >= 2`.
    """
    A = numpy.atleast_2d(numpy.asarray(A, dtype=complex))
    n = A.shape[0] + 1
    v = numpy.asarray(v, dtype=complex).reshape(n - 1)
    C = numpy.zeros((n,) * 3, dtype=complex)
    D = numpy.zeros((n,) * 3, dtype=complex)
    D[0, 0, 0] = lam
    D[1:, 0, 0] = v
    D[1:, 0, 1:] = A
    C[0, 1:, 1:] = -A.conj().T
    C[1:, 0, 1:] = A.conj().T
    model = LieHermitianModel(n, C, D, label='almost_abelian').validate()

    trace = numpy.trace(A)
    real_trace = (trace + trace.conj()).real
    normal = numpy.allclose(A @ A.conj().T, A.conj().T @ A)
    no_shift = abs(lam) < DEFAULT_TOLERANCE.abs_tol and not numpy.any(v)
    anchor = 'structural constants of an admissible frame'
    expected = [
        _known('unimodular', abs(lam + real_trace) < 1e-12, anchor),
        _known('chern_flat', no_shift and normal, anchor),
        _known('chern_ric3', no_shift and abs(real_trace) < 1e-12, anchor,
               compare='zero'),
    ]
    if no_shift and abs(real_trace) < 1e-12:
        expected.append(_known('chern_ric1', True, compare='zero'))
        if not normal:
            expected.append(_known('chern_curvature', 0.1, compare='above'))
    return ZooEntry('almost_abelian', model, expected, 'almost_abelian',
                    {'lam': lam, 'v': v, 'A': A})


def nilpotent(n: int, r: int, Y, ctx: ToleranceContext = None) -> ZooEntry:
    """Nilpotent Lie algebra with `d phi_i = 0` (`i < r`) and
    `d phi_a = sum_i Y[a, i] phi_i ^ conj(phi_i)`.

    Raises
    ------
    BadRowSum
        If a row of `Y` does not sum to zero.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    Y = numpy.atleast_2d(numpy.asarray(Y, dtype=complex))
    if Y.shape != (n - r, r) or not 1 <= r < n:
        raise ValueError(f'Y must have shape {(n - r, r)} with 1 <= r < n')
    sums = Y.sum(axis=1)
    if not approx_zero(sums, ctx):
        raise BadRowSum(f'Rows of Y must sum to zero, got {sums}')

    bracket = numpy.zeros((2 * n,) * 3, dtype=complex)
    for i in range(r):
        bracket[i, n + i, r:n] = -Y[:, i]
        bracket[i, n + i, n + r:] = Y[:, i].conj()
        bracket[n + i, i] = -bracket[i, n + i]
    model = LieHermitianModel.from_bracket(bracket, 'nilpotent').validate(ctx)

    trivial = not numpy.any(Y)
    anchor = 'balanced nilpotent structure equation'
    expected = [
        _known('balanced', True, anchor),
        _known('btp', True, anchor),
        _known('chern_ric1', True, anchor, compare='zero'),
        _known('chern_ric3', True, anchor, compare='zero'),
        _known('chern_ric2', trivial, anchor, compare='zero'),
        _known('chern_flat', trivial, anchor),
    ]
    if not trivial:
        expected.append(_known('chern_ric2', 0.1, compare='above'))
    return ZooEntry('nilpotent', model, expected, 'nilpotent',
                    {'n': n, 'r': r, 'Y': Y})


def _su2_structure() -> numpy.ndarray:
    """`[u_a, u_b] = sum_c eps_abc u_c`."""
    eps = numpy.zeros((3, 3, 3))
    for a, b, c in ((0, 1, 2), (1, 2, 0), (2, 0, 1)):
        eps[a, b, c], eps[b, a, c] = 1, -1
    return eps


def _complexified_su2():
    """Real structure of `sl(2, C) = su(2) + J su(2)` and its `J`."""
    eps = _su2_structure()
    s = numpy.zeros((6, 6, 6))
    s[:3, :3, :3] = eps
    s[:3, 3:, 3:] = eps
    s[3:, :3, 3:] = eps
    s[3:, 3:, :3] = -eps
    J = numpy.zeros((6, 6))
    J[3:, :3] = numpy.eye(3)
    J[:3, 3:] = -numpy.eye(3)
    return s, J


def complex_simple(kind: str = 'sl2') -> ZooEntry:
    """Simple complex Lie group with the metric of its Cartan-Killing
    form, `g = -K` on the compact form `u` and `K` on `Ju`, rescaled by
    :data:`CARTAN_KILLING_SCALE`."""
    if kind != 'sl2':
        raise ValueError(f'Unknown complex simple algebra {kind!r}')
    s, J = _complexified_su2()
    K = contract('ubg,vgb->uv', s, s)
    metric = CARTAN_KILLING_SCALE * numpy.block([[-K[:3, :3], K[:3, 3:]],
                                                 [K[3:, :3], K[3:, 3:]]])
    model = from_real_algebra(s, J, metric, label='sl2c')
    anchor = 'metric from the Cartan-Killing form'
    expected = [
        _known('chern_flat', True, anchor),
        _known('btp', True, anchor),
        _derived('balanced', True),
        _derived('kahler', False),
        _derived('W_dim', 3.0, compare='equals'),
        _derived('N_dim', 0.0, compare='equals'),
        _known('identities.gauduchon_scalar', True),
        _known('identities.gauduchon_ricci', True),
    ]
    expected += [_known(f'AS(t={t:g})', True, 't-GAS for every t')
                 for t in (-1.0, 0.0, 0.5, 1.0, 2.0, 3.0)]
    return ZooEntry('sl2c', model, expected, 'complex_simple',
                    {'kind': kind})


def samelson_u2() -> ZooEntry:
    """`u(2) = su(2) + R` with the bi-invariant metric and the complex
    structure `J u_0 = u_3`, `J u_1 = u_2`."""
    s = numpy.zeros((4, 4, 4))
    s[1:, 1:, 1:] = _su2_structure()
    J = numpy.zeros((4, 4))
    J[3, 0], J[0, 3] = 1, -1
    J[2, 1], J[1, 2] = 1, -1
    model = from_real_algebra(s, J, label='samelson_u2')
    expected = [
        _derived('bismut_flat', True, 'bi-invariant metric'),
        _derived('btp', True),
        _derived('vaisman', True),
        _derived('kahler', False),
        _derived('AS(t=2)', True),
        _derived('cyt', True),
    ]
    return ZooEntry('samelson_u2', model, expected, 'samelson_u2')


def complex_heisenberg() -> ZooEntry:
    """Complex Heisenberg group, `[e_1, e_2] = e_3`, as a complex Lie
    group with a unitary left-invariant frame."""
    C = numpy.zeros((3, 3, 3), dtype=complex)
    C[0, 1, 2], C[1, 0, 2] = 1, -1
    model = LieHermitianModel(3, C, numpy.zeros_like(C),
                              label='complex_heisenberg').validate()
    expected = [
        _derived('chern_flat', True, 'complex Lie group'),
        _derived('AS(t=0)', True),
        _derived('balanced', True),
        _derived('W_dim', 1.0, compare='equals'),
        _derived('N_dim', 2.0, compare='equals'),
        _derived('block_count', 1.0, compare='equals'),
        _derived('split.block_invariance', True),
        _derived('split.tau_parallel', True),
        _derived('split.tau_invariance', True),
        _derived('split.dimension_count', True),
    ]
    return ZooEntry('complex_heisenberg', model, expected,
                    'complex_heisenberg')


def abelian(n: int) -> ZooEntry:
    """Flat Kähler `C^n`."""
    zeros = numpy.zeros((n,) * 3)
    model = LieHermitianModel(n, zeros, zeros, label=f'abelian{n}')
    expected = [_trivial('kahler', True), _trivial('chern_flat', True),
                _trivial('W_dim', 0.0, compare='equals')]
    return ZooEntry(f'abelian{n}', model, expected, 'abelian', {'n': n})


def sum_entry(first: ZooEntry, second: ZooEntry) -> ZooEntry:
    """Orthogonal product of two Lie entries."""
    model = direct_sum(first.model, second.model)
    name = f'{first.name}+{second.name}'
    expected = [_derived('W_dim', float(first.model.n), compare='equals'),
                _derived('split.w_invariant', True),
                _derived('split.tau_parallel', True)]
    return ZooEntry(name, model, expected, 'direct_sum',
                    {'first': first.name, 'second': second.name})


# Holonomy systems

def _sphere_curvature(dim: int) -> numpy.ndarray:
    eye = numpy.eye(dim)
    return (contract('ad,bc->abdc', eye, eye)
            - contract('bd,ac->abdc', eye, eye))


def _cpn_curvature(n: int):
    """Fubini-Study curvature (holomorphic sectional curvature 4) on
    `C^n = R^2n` with `J e_i = e_{n+i}`."""
    dim = 2 * n
    J = numpy.zeros((dim, dim))
    J[n:, :n] = numpy.eye(n)
    J[:n, n:] = -numpy.eye(n)
    Rm = numpy.zeros((dim,) * 4)
    eye = numpy.eye(dim)
    for a in range(dim):
        for b in range(dim):
            x, y = eye[a], eye[b]
            Rm[a, b] = (numpy.outer(x, y) - numpy.outer(y, x)
                        + numpy.outer(J @ x, J @ y)
                        - numpy.outer(J @ y, J @ x)
                        + 2 * J[a, b] * J)
    return Rm, J


def symmetric_space_system(kind: str, n: int) -> HolonomySystem:
    """Holonomy system of a symmetric space.

    Parameters
    ----------
    kind : str
        `sphere` (round, sectional curvature 1, `dim = n`), `cpn`
        (Fubini-Study, `dim = 2n`) or `flat` (`dim = n`).
    n : int
        Dimension parameter.
    """
    if kind == 'sphere':
        return HolonomySystem(n, numpy.eye(n), _sphere_curvature(n),
                              label=f'sphere{n}')
    if kind == 'cpn':
        Rm, J = _cpn_curvature(n)
        return HolonomySystem(2 * n, numpy.eye(2 * n), Rm, J=J,
                              label=f'cp{n}')
    if kind == 'flat':
        return HolonomySystem(n, numpy.eye(n), numpy.zeros((n,) * 4),
                              label=f'flat{n}')
    raise ValueError(f'Unknown symmetric space {kind!r}')


def _system_entry(kind: str, n: int) -> ZooEntry:
    system = symmetric_space_system(kind, n)
    curved = kind != 'flat'
    expected = [
        _derived('holsys.valid', True),
        _derived('holsys.jacobi', True),
        _derived('holsys.killing', True),
        _derived('holsys.irreducible', True),
        _derived('holsys.lambda_nonzero', curved),
        _derived('holsys.kostant', curved),
        _derived('holsys.no_contradiction', True),
        _trivial('holsys.flat', not curved),
    ]
    return ZooEntry(system.label, system, expected, 'symmetric_space',
                    {'kind': kind, 'n': n})


FAMILIES: Dict[str, Callable[..., ZooEntry]] = {
    'hopf': hopf,
    'almost_abelian': almost_abelian,
    'nilpotent': nilpotent,
    'complex_simple': complex_simple,
    'samelson_u2': samelson_u2,
    'complex_heisenberg': complex_heisenberg,
    'abelian': abelian,
    'symmetric_space': _system_entry,
}


def _random_point(n: int, seed: int = 0) -> numpy.ndarray:
    rng = numpy.random.default_rng(seed)
    return rng.standard_normal(n) + 1j * rng.standard_normal(n)


ZOO: Dict[str, Callable[[], ZooEntry]] = {
    'hopf2': partial(hopf, 2),
    'hopf3': partial(hopf, 3),
    'hopf4': partial(hopf, 4),
    'hopf3r': lambda: hopf(3, _random_point(3)),
    'almost_abelian_ric3': partial(almost_abelian, 0.0, [0, 0],
                                   [[1j, 1], [0, -1j]]),
    'almost_abelian_flat': partial(almost_abelian, 0.0, [0, 0],
                                   [[1j, 0], [0, -1j]]),
    'almost_abelian_nonunimodular': partial(almost_abelian, 1.0, [0],
                                            [[0]]),
    'nilpotent3': partial(nilpotent, 3, 2, [[1, -1]]),
    'sl2c': complex_simple,
    'samelson_u2': samelson_u2,
    'complex_heisenberg': complex_heisenberg,
    'abelian2': partial(abelian, 2),
    'sl2c+abelian1': lambda: sum_entry(complex_simple(), abelian(1)),
    'cp2': partial(_system_entry, 'cpn', 2),
    'sphere3': partial(_system_entry, 'sphere', 3),
    'flat4': partial(_system_entry, 'flat', 4),
}


def zoo_names() -> List[str]:
    return sorted(ZOO)


def is_zoo_reference(reference: str) -> bool:
    return isinstance(reference, str) and reference.startswith(ZOO_PREFIX)


def zoo_entry(name: str) -> ZooEntry:
    """Named entry; accepts an optional `zoo:` prefix.

    Raises
    ------
    KeyError
        For unknown names.
    """
    if is_zoo_reference(name):
        name = name[len(ZOO_PREFIX):]
    try:
        builder = ZOO[name]
    except KeyError:
        raise KeyError(f'Unknown zoo model {name!r}; available:'
                       f' {", ".join(zoo_names())}') from None
    entry = builder()
    entry.name = name
    return entry


def build(family: str, **params) -> ZooEntry:
    """Entry of a parameterized family."""
    try:
        constructor = FAMILIES[family]
    except KeyError:
        raise KeyError(f'Unknown zoo family {family!r}') from None
    return constructor(**params)


# Evaluation

def _quantities(geometry: ModelGeometry, facts: '_Facts'
                ) -> Dict[str, Callable[[], Any]]:
    return {
        'chern_curvature': lambda: geometry.curvature('chern').value,
        'bismut_curvature': lambda: geometry.curvature('bismut').value,
        'bismut_hermitian': lambda: geometry.curvature('bismut').hermitian(),
        'chern_ric1': lambda: geometry.ricci('chern').ric1,
        'chern_ric2': lambda: geometry.ricci('chern').ric2,
        'chern_ric3': lambda: geometry.ricci('chern').ric3,
        'bismut_ric1': lambda: geometry.ricci('bismut').ric1,
        'eta': lambda: geometry.derived.eta,
        'W_dim': lambda: float(facts.split.ell1),
        'N_dim': lambda: float(facts.split.N_basis.shape[1]),
        'block_count': lambda: float(facts.split.ell3),
    }


def _engine_counterparts(geometry: ModelGeometry
                         ) -> Dict[str, Callable[[], numpy.ndarray]]:
    n = geometry.n
    return {
        'torsion': lambda: geometry.torsion.components,
        'chern_gamma': lambda: geometry.chern.gamma_hol,
        'bismut_gamma': lambda: geometry.bismut.gamma_hol,
        'bismut_curvature': lambda: geometry.curvature('bismut').hermitian(),
        'bismut_curvature_derivative':
            lambda: geometry.curvature('bismut').full.d1[:n, :n, n:, :n, n:],
        'bismut_ricci': lambda: geometry.ricci('bismut').ric1,
        'lee_form': lambda: lee_form(geometry)[0].value,
    }


def reference_residuals(geometry: ModelGeometry) -> ConditionReport:
    """Engine values minus the closed-form reference evaluators of a
    pointwise model, at its base point."""
    model = geometry.model
    report = ConditionReport(model.label, geometry.ctx)
    engine = _engine_counterparts(geometry)
    for key, evaluator in getattr(model, 'reference', {}).items():
        expected = numpy.asarray(evaluator(model.point))
        report.add(key, engine[key]() - expected)
    return report


def finite_difference_residuals(geometry: ModelGeometry) -> ConditionReport:
    """Frame derivatives of the Bismut curvature against central
    differences (empty for Lie models)."""
    model = geometry.model
    n, ctx = geometry.n, geometry.ctx
    report = ConditionReport(model.label, ctx)
    if not isinstance(model, PointwiseFrameModel):
        return report

    def bismut(point):
        return ModelGeometry(model.at(point),
                             ctx).curvature('bismut').hermitian()

    numeric = finite_difference_derivative(model, bismut)
    exact = geometry.curvature('bismut').full.d1[:, :n, n:, :n, n:]
    report.add('bismut_curvature', numeric - exact, tol=ctx.fd_tol)
    return report


FACT_SOURCES = ('predicates', 'identities', 'split', 'frames', 'reference',
                'fd')


class _Facts:
    """Lazily evaluated reports of one model."""

    def __init__(self, geometry: ModelGeometry, t: float):
        self.geometry = geometry
        self.t = t
        self._reports: Dict[str, ConditionReport] = {}
        self._split = None

    @property
    def split(self):
        if self._split is None:
            self._split = decompose(self.geometry)
        return self._split

    def report(self, source: str) -> ConditionReport:
        if source not in self._reports:
            self._reports[source] = self._evaluate(source)
        return self._reports[source]

    def _evaluate(self, source: str) -> ConditionReport:
        geometry = self.geometry
        if source == 'predicates':
            return predicates(geometry)
        if source == 'identities':
            return check_curvature_identities(geometry, self.t)
        if source == 'split':
            return self.split.checks
        if source == 'frames':
            try:
                return admissible_frame(geometry).report
            except (Balanced, NotDiagonalizable) as e:
                report = ConditionReport(geometry.model.label, geometry.ctx)
                report.add('admissible', numpy.inf, status=type(e).__name__)
                return report
        if source == 'reference':
            return reference_residuals(geometry)
        if source == 'fd':
            return finite_difference_residuals(geometry)
        raise KeyError(f'Unknown fact source {source!r}')

    def holds(self, name: str) -> Tuple[bool, float]:
        source, _, entry = name.partition('.')
        if source not in FACT_SOURCES:
            source, entry = 'predicates', name
        found = self.report(source)[entry]
        return found.holds, found.residual


class SystemFact(NamedTuple):
    """Verdict of one holonomy-system check.

    `residual` is set only for facts decided by a residual against the
    tolerance; `value` carries a measured quantity (`lambda`, `|Rm|`).
    """

    holds: bool
    residual: Optional[float] = None
    value: Optional[float] = None


def system_facts(system: HolonomySystem, ctx: ToleranceContext = None
                 ) -> Dict[str, SystemFact]:
    """Named verdicts of the holonomy-system checks, keyed
    `holsys.<fact>`."""
    ctx = ctx or DEFAULT_TOLERANCE
    facts = {}
    validation = validate_system(system, ctx)
    facts['holsys.valid'] = SystemFact(
        validation.all_hold, max(e.residual for e in validation))
    try:
        algebra = nomizu(system, ctx)
    except HermlabError as e:
        logger.info('Nomizu algebra of %r failed: %s', system.label, e)
        facts['holsys.jacobi'] = SystemFact(False)
        return facts
    facts['holsys.jacobi'] = SystemFact(True, algebra.jacobi_residual)
    killing = killing_checks(algebra, system, ctx)
    facts['holsys.killing'] = SystemFact(
        killing.all_hold, max(e.residual for e in killing))
    irreducible = is_irreducible(system.orthonormal(ctx))
    facts['holsys.irreducible'] = SystemFact(irreducible)
    if irreducible:
        lam, deviation = schur_lambda(algebra, system, ctx)
        facts['holsys.lambda_nonzero'] = SystemFact(
            not approx_zero(lam, ctx), value=float(lam))
        facts['holsys.schur'] = SystemFact(approx_zero(deviation, ctx),
                                           float(deviation))
    try:
        _, residual = kostant_reconstruction(algebra, system, ctx)
        facts['holsys.kostant'] = SystemFact(residual <= ctx.abs_tol * 10,
                                             float(residual))
    except HypothesisUnmet as e:
        facts['holsys.kostant'] = SystemFact(False)
        logger.debug('Kostant reconstruction skipped: %s', e.hypothesis)
    try:
        certificate = ak_certificate(system, ctx)
    except HypothesisUnmet as e:
        logger.info('Ricci-flat certificate of %r not applicable: %s',
                    system.label, e.hypothesis)
        facts['holsys.certificate'] = SystemFact(False)
        return facts
    facts['holsys.certificate'] = SystemFact(True)
    facts['holsys.no_contradiction'] = SystemFact(
        not certificate.contradiction)
    facts['holsys.flat'] = SystemFact(certificate.flat,
                                      value=max_norm(system.Rm))
    return facts


def _compare(expectation: Expectation, value, ctx: ToleranceContext):
    """Residual of a quantity expectation, zero when it is met."""
    value = numpy.asarray(value)
    if expectation.compare == 'zero':
        return 0.0 if approx_zero(value, ctx) == expectation.value else 1.0
    if expectation.compare == 'equals':
        actual = value[expectation.index] if expectation.index else value
        return float(abs(actual - expectation.value))
    norm = max_norm(value)
    if expectation.compare == 'below':
        return max(0.0, norm - expectation.value)
    if expectation.compare == 'above':
        return max(0.0, expectation.value - norm)
    raise ValueError(f'Unknown comparison {expectation.compare!r}')


def verify_entry(entry: ZooEntry, ctx: ToleranceContext = None,
                 t: float = 1.0) -> ConditionReport:
    """Evaluate every expectation of an entry.

    Each report entry is named after the expectation and holds when the
    engine agrees with it; facts report the residual of the underlying
    check in `detail`.
    """
    ctx = ctx or DEFAULT_TOLERANCE
    report = ConditionReport(entry.name, ctx)
    if isinstance(entry.model, HolonomySystem):
        known = system_facts(entry.model, ctx)
        for expectation in entry.expected:
            fact = known.get(expectation.name, SystemFact(None))
            report.add(expectation.name,
                       0.0 if fact.holds == expectation.value else 1.0,
                       tol=0.5, residual=fact.residual,
                       provenance=expectation.provenance)
        return report

    geometry = ModelGeometry(entry.model, ctx)
    facts = _Facts(geometry, t)
    quantities = _quantities(geometry, facts)
    for expectation in entry.expected:
        key = expectation.name
        if expectation.index is not None:
            key = f'{key}{list(expectation.index)}'
        try:
            if expectation.name in quantities:
                value = quantities[expectation.name]()
                report.add(key, _compare(expectation, value, ctx),
                           provenance=expectation.provenance)
                continue
            holds, residual = facts.holds(expectation.name)
        except (KeyError, NotCAS, Degenerate) as e:
            logger.warning('Expectation %r of %r cannot be evaluated: %s',
                           expectation.name, entry.name, e)
            report.add(key, numpy.inf, provenance=expectation.provenance,
                       error=str(e))
            continue
        report.add(key, 0.0 if holds == expectation.value else 1.0,
                   tol=0.5, residual=residual,
                   provenance=expectation.provenance)
    logger.info('Zoo entry %r: %d/%d expectations met', entry.name,
                sum(e.holds for e in report), len(report))
    return report
