import param

from opMatrix.errors import ConfigError
from opMatrix.utils.math import RationalComplex, parse_fraction, to_fraction

from .expressions import parse_models, parse_tuple

COMMANDS = ['spectrum', 'intersect', 'check-equality', 'hypothesis', 'complete', 'verify', 'plot', 'profile']
KINDS = ['L', 'R', 'Full', 'LE', 'RE', 'E', 'LW', 'RW', 'W', 'all']
VARIANTS = [None, 'PlainEmbedding', 'StrictEmbedding', 'BetaNInfinite', 'AlphaOneInfinite',
            'StrongEmbedding', 'Ufds']
TARGETS = [None, 'LeftFredholm', 'RightFredholm', 'Fredholm', 'LeftWeyl', 'RightWeyl']
LOG_LEVELS = ['DEBUG', 'INFO', 'WARNING', 'ERROR', 'CRITICAL']

DEFAULT_WINDOW = ['-2', '2', '-2', '2']
SINGLE_MODEL_COMMANDS = ('spectrum', 'profile')


def _window_value(value):
    try:
        return to_fraction(parse_fraction(value) if isinstance(value, str) else value)
    except (TypeError, ValueError) as e:
        raise ConfigError(f"window bounds must be exact rationals, got {value!r}: {e}")


class JobConfig(param.Parameterized):
    """One CLI job: a diagonal tuple and the command to run on it."""
    models = param.Parameter(default=None, doc="Model expressions, D1..Dn mapping or 'Dk = expr' lines")
    command = param.ObjectSelector(default='intersect', objects=COMMANDS)
    kind = param.ObjectSelector(default='all', objects=KINDS)
    variant = param.ObjectSelector(default=None, objects=VARIANTS)
    target = param.ObjectSelector(default=None, objects=TARGETS)
    reading = param.ObjectSelector(default='pointwise', objects=['pointwise', 'fixed'])
    lam = param.String(default=None, allow_None=True, doc="Spectral parameter as a complex literal")
    window = param.List(default=DEFAULT_WINDOW, bounds=(4, 4))
    resolution = param.Integer(default=201, bounds=(2, 2001))
    output_dir = param.String(default='out')
    log_level = param.ObjectSelector(default='INFO', objects=LOG_LEVELS)

    @classmethod
    def from_dict(cls, values):
        values = dict(values or {})
        if 'lambda' in values:
            values['lam'] = values.pop('lambda')
        if values.get('lam') is not None:
            values['lam'] = str(values['lam'])
        if 'window' in values:
            values['window'] = [str(v) for v in values['window']]
        unknown = set(values) - set(cls.param)
        if unknown:
            raise ConfigError(f"unknown job keys: {sorted(unknown)}")
        try:
            config = cls(**values)
        except ValueError as e:
            raise ConfigError(str(e))
        config.validate()
        return config

    def validate(self):
        if self.models is None:
            raise ConfigError("the job defines no models")
        if self.command in ('complete', 'verify') and self.lam is None:
            raise ConfigError(f"command {self.command} needs lambda")
        if self.command in ('complete', 'verify') and self.target is None and self.kind in ('all', 'L', 'R', 'Full', 'W'):
            raise ConfigError(f"command {self.command} needs a target or one of the kinds LE, RE, E, LW, RW")
        xmin, xmax, ymin, ymax = self.window_bounds()
        if not (xmin < xmax and ymin < ymax):
            raise ConfigError(f"window {self.window} must satisfy xmin < xmax and ymin < ymax")
        if self.command in SINGLE_MODEL_COMMANDS:
            self.model_list()
        else:
            self.tuple()
        self.spectral_parameter()

    def window_bounds(self):
        return tuple(_window_value(v) for v in self.window)

    def model_list(self):
        return parse_models(self.models)

    def tuple(self):
        return parse_tuple(self.models)

    def spectral_parameter(self):
        if self.lam is None:
            return None
        try:
            return RationalComplex.parse(self.lam)
        except (ValueError, ZeroDivisionError) as e:
            raise ConfigError(f"bad lambda {self.lam!r}: {e}")
