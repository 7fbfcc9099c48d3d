"""Run configuration: flags or a ``key = value`` file, expanded into a grid.

A file mirrors the command-line flags::

    # sphere and Clifford tubes of HP^3
    family = p1k
    m = 3
    k = 0, 1
    radius = auto:two-type, pi/5
    checks = table1, chen2

List values are comma-separated, ``#`` starts a comment.
"""

from dataclasses import dataclass, field, fields

from .checks import CHECK_NAMES
from .coefficients import RADIUS_TOKENS, radii_for_token
from .errors import ConfigError
from .family import FAMILIES, FamilySpec, canonical_family, has_core_index, radius_interval
from .finite_difference import ORACLE_FD
from .spectral import DEFAULT_SAMPLES, DEFAULT_SEED
from .units import units

FORMATS = ('json', 'md', 'csv')
DEFAULT_RADIUS = 'auto:two-type'

# file keys and the RunConfig field each one sets
FILE_KEYS = {
    'family': 'families',
    'm': 'ms',
    'k': 'ks',
    'radius': 'radii',
    'checks': 'checks',
    'fd-step': 'fd_step',
    'seed': 'seed',
    'format': 'format',
    'out': 'out',
    'samples': 'samples',
}


def split_list(text):
    return [item.strip() for item in str(text).split(',') if item.strip()]


def _int_list(key, text):
    try:
        return [int(item) for item in split_list(text)]
    except ValueError:
        raise ConfigError(f"'{key}' expects comma-separated integers, got '{text}'")


def _single(key, text, kind):
    try:
        return kind(str(text).strip())
    except ValueError:
        raise ConfigError(f"'{key}' expects a {kind.__name__}, got '{text}'")


def read_config_file(path):
    """
    Reads a ``key = value`` file into a dict of raw strings.

    :raises ConfigError: on unknown keys or lines without ``=``.
    """
    try:
        with open(path, encoding='utf-8') as handle:
            lines = handle.readlines()
    except OSError as e:
        raise ConfigError(f"cannot read config file '{path}': {e}")
    values = {}
    for number, line in enumerate(lines, start=1):
        text = line.split('#', 1)[0].strip()
        if not text:
            continue
        if '=' not in text:
            raise ConfigError(f"{path}:{number}: expected 'key = value', got '{text}'")
        key, value = (part.strip() for part in text.split('=', 1))
        key = key.replace('_', '-')
        if key not in FILE_KEYS:
            raise ConfigError(f"{path}:{number}: unknown key '{key}' (expected one of {', '.join(FILE_KEYS)})")
        values[key] = value
    return values


@dataclass
class RunConfig:
    """
    Settings of one ``verify`` or ``atlas`` run.

    :param families: family names; canonicalized on construction.
    :param ms: quaternionic dimensions.
    :param ks: core dimensions for P1k/H1k; None means every ``0..m-1``.
    :param radii: radius texts (numbers, angle expressions or ``auto:`` tokens);
        empty means ``auto:two-type`` in ``verify`` and no grid rows in ``atlas``.
    :param checks: check names; None runs all of them.
    :param fd_step: step of the Laplacian oracle; None keeps the default.
    """
    families: list = field(default_factory=list)
    ms: list = field(default_factory=lambda: [2])
    ks: list = None
    radii: list = field(default_factory=list)
    checks: list = None
    fd_step: float = None
    seed: int = DEFAULT_SEED
    format: str = 'json'
    out: str = None
    samples: int = DEFAULT_SAMPLES
    quiet: bool = False

    def __post_init__(self):
        self.families = [canonical_family(name) for name in self.families]
        if self.format not in FORMATS:
            raise ConfigError(f"unknown format '{self.format}' (expected one of {', '.join(FORMATS)})")
        if self.checks is not None:
            unknown = sorted(set(self.checks) - set(CHECK_NAMES))
            if unknown:
                raise ConfigError(f"unknown checks: {', '.join(unknown)}")
        if self.samples < 1:
            raise ConfigError(f"samples must be positive, got {self.samples}")
        # validates the step range
        self.oracle_cfg = ORACLE_FD if self.fd_step is None else ORACLE_FD.with_step(self.fd_step)

    @classmethod
    def from_values(cls, values, **overrides):
        """
        Builds a config from raw ``key = value`` strings; ``overrides`` are
        already-typed field values that win over the strings.
        """
        kwargs = {}
        for key, text in values.items():
            name = FILE_KEYS[key]
            if name in ('families', 'radii', 'checks'):
                kwargs[name] = split_list(text)
            elif name in ('ms', 'ks'):
                kwargs[name] = _int_list(key, text)
            elif name in ('seed', 'samples'):
                kwargs[name] = _single(key, text, int)
            elif name == 'fd_step':
                kwargs[name] = _single(key, text, float)
            else:
                kwargs[name] = text.strip()
        known = {f.name for f in fields(cls)}
        kwargs.update({k: v for k, v in overrides.items() if k in known and v is not None})
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path, **overrides):
        return cls.from_values(read_config_file(path), **overrides)

    def _core_indices(self, family, m):
        if not has_core_index(family):
            return [None]
        return list(range(m)) if self.ks is None else list(self.ks)

    def _resolve_radii(self, family, m, k, texts):
        if radius_interval(family) is None:
            return [None]
        out = []
        for text in texts:
            if text.startswith('auto:'):
                if text not in RADIUS_TOKENS:
                    raise ConfigError(f"unknown radius token '{text}' (expected one of {', '.join(RADIUS_TOKENS)})")
                out.extend(radii_for_token(text, family, m, k))
            else:
                out.append(units.parse_angle(text))
        return out

    def shapes(self):
        """The (family, m, k) triples of the configuration, without radii."""
        for family in self.families:
            for m in self.ms:
                for k in self._core_indices(family, m):
                    yield family, m, k

    def cells(self, radii=None):
        """
        The sorted, duplicate-free grid of FamilySpec cells.

        :param radii: radius texts to use instead of ``self.radii``.
        :raises SpecError: if a cell is not a legal hypersurface.
        """
        texts = self.radii if radii is None else radii
        specs = set()
        for family, m, k in self.shapes():
            for r in self._resolve_radii(family, m, k, texts):
                specs.add(FamilySpec(family, m, k, r))
        return sorted(specs, key=lambda spec: spec.key())

    def verify_cells(self):
        if not self.families:
            raise ConfigError(f"no family given (expected some of {', '.join(FAMILIES)})")
        return self.cells(self.radii or [DEFAULT_RADIUS])

    def describe(self):
        """Plain settings for report metadata."""
        return {
            'families': list(self.families),
            'm': list(self.ms),
            'k': None if self.ks is None else list(self.ks),
            'radius': list(self.radii),
            'checks': list(self.checks) if self.checks is not None else list(CHECK_NAMES),
            'fd_step': self.oracle_cfg.h,
            'seed': self.seed,
            'samples': self.samples,
        }
