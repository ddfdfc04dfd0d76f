import numpy

from hermlab.checks import BaseCheck


class BracketNormBelowX(BaseCheck):
    name = 'bracket_norm_below_x'
    expected_parameters = ['x']
    applies_to = ('lie', 'pointwise')

    def __init__(self, *args, **kwargs):
        super().__init__(*args, **kwargs)

        self.x = self.options.get('x')

    def report(self, entry):
        report = {
            'bracket_norm': float(numpy.abs(entry.model.bracket).max())
        }
        return report

    def result(self, report):
        return report.get('bracket_norm') < self.x


class NotACheck:
    pass
