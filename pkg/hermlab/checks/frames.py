"""
Check of the admissible frame of a non-balanced model.
"""
import logging

from ..exceptions import Balanced, NotDiagonalizable
from ..liegeom.frames import admissible_frame
from ..zoo import ZooEntry
from .base_check import BaseCheck

logger = logging.getLogger(__name__)


class AdmissibleFrameCheck(BaseCheck):
    """Build the admissible frame of a model and check its relations:
    the torsion 1-form points along the last vector, the torsion block
    is diagonal, the diagonal sums to `lambda`, and the B-tensor
    diagonal equals `2|a_i|^2 + 2 delta_i` (and `lambda (a_i + conj a_i)`
    when the first and third Bismut Ricci vanish).

    The available options are:

    * `expect_frame`: whether an admissible frame should exist. When
      False the check passes only if the model is balanced or its
      torsion block is not normal. Default: True.
    """

    name = 'admissible_frame'
    expected_parameters = ['expect_frame']
    applies_to = ('lie', 'pointwise')

    def __init__(self, *args, **kwargs) -> None:
        super().__init__(*args, **kwargs)

        self.expect_frame = bool(self.options.get('expect_frame', True))

    # docstr-coverage:inherited
    def report(self, entry: ZooEntry) -> dict:
        try:
            frame = admissible_frame(entry.model, self.ctx)
        except (Balanced, NotDiagonalizable) as e:
            logger.debug('No admissible frame for %r: %s', entry.name, e)
            return {'exists': False, 'reason': type(e).__name__}
        return {
            'exists': True,
            'eta_norm': frame.eta_norm,
            'a': [[float(x.real), float(x.imag)] for x in frame.a],
            'b': [float(x) for x in frame.b],
            'delta': [float(x) for x in frame.delta],
            'checks': self.summarize(frame.report),
        }

    # docstr-coverage:inherited
    def result(self, report: dict) -> bool:
        if report['exists'] != self.expect_frame:
            return False
        if not report['exists']:
            return True
        return all(c['holds'] for c in report['checks'].values())
