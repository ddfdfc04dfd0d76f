"""
Hermlab enumeration classes.
"""

from enum import Enum


class ConnectionTag(str, Enum):
    """Canonical Hermitian connections known to the engine."""

    CHERN = 'chern'
    """The Chern connection, built by
    :ref:`chern_connection<hermlab.liegeom.connections.chern_connection>`."""
    BISMUT = 'bismut'
    """The Bismut connection, the Gauduchon connection at `t = 2`."""
    GAUDUCHON = 'gauduchon'
    """A member of the Gauduchon line, see
    :ref:`gauduchon_connection<hermlab.liegeom.connections.gauduchon_connection>`."""
    LEVI_CIVITA = 'levi_civita'
    """The Riemannian (torsion-free) connection."""


class FrameKind(str, Enum):
    """Kind of a change of frame."""

    UNITARY = 'unitary'
    """The matrix is unitary, Hermitian pairings are preserved."""
    GENERAL = 'general'
    """Any invertible matrix."""


class ModelKind(str, Enum):
    """Kinds of documents accepted by the model reader."""

    LIE = 'lie'
    """Left-invariant structure given by the constants `C` and `D`,
    treated by :ref:`LieTreater<hermlab.parser.treaters.LieTreater>`."""
    POINTWISE = 'pointwise'
    """Frame data depending on a base point, only by zoo reference,
    treated by
    :ref:`PointwiseTreater<hermlab.parser.treaters.PointwiseTreater>`."""
    HOLONOMY_SYSTEM = 'holonomy-system'
    """Abstract holonomy system, treated by
    :ref:`HolonomySystemTreater<hermlab.parser.treaters.HolonomySystemTreater>`."""


class SeverityLevel(int, Enum):
    """Hermlab named Severity levels."""

    MINIMAL = 1
    """Minimal severity check failure."""
    WARNING = 3
    """Check warning."""
    CRITICAL = 5
    """Critical check failure."""
