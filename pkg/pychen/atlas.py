"""Classification atlas: the Chen type of every special radius and grid cell."""

import pandas as pd
from tqdm import tqdm

from .closed_forms import ClosedForms
from .chart import chart as build_chart
from .coefficients import mean_curvature, solve_type_coefficients, special_radii
from .diagnostics import is_quiet, say
from .errors import PyChenError
from .spectral import decompose

ATLAS_COLUMNS = ['family', 'm', 'k', 'radius', 'type', 'lambda_u', 'lambda_v', 'mass_symmetric', 'minimal']
MASS_TOL = 1e-6
MINIMAL_TOL = 1e-9


def _mass_symmetric(spec, coeffs):
    if coeffs.order == 3:
        return True
    if coeffs.order not in (1, 2):
        return False
    try:
        gap = decompose(ClosedForms(build_chart(spec)), coeffs).mass_center_gap()
    except PyChenError as err:
        say('ATLAS', f"no decomposition for {spec!r}: {err}")
        return False
    return gap <= MASS_TOL


def atlas_row(spec, tags=None):
    """
    One atlas row.

    :param tags: tags of a closed-form special radius; None computes both
        flags numerically.
    """
    coeffs = solve_type_coefficients(spec)
    if tags is None:
        mass = _mass_symmetric(spec, coeffs)
        minimal = spec.r is not None and abs(mean_curvature(spec.family, spec.m, spec.k, spec.r)) <= MINIMAL_TOL
    else:
        mass, minimal = 'mass-symmetric' in tags, 'minimal' in tags
    return {
        'family': spec.family,
        'm': spec.m,
        'k': spec.k,
        'radius': spec.r,
        'type': coeffs.verdict,
        'lambda_u': coeffs.lambda_u,
        'lambda_v': coeffs.lambda_v,
        'mass_symmetric': bool(mass),
        'minimal': bool(minimal),
    }


def atlas_frame(config):
    """
    Rows for every closed-form special radius of the configured families,
    followed by the explicit grid cells, sorted by (family, m, k, radius).

    :type config: RunConfig
    :rtype: pandas.DataFrame
    """
    rows = {}
    for family, m, k in config.shapes():
        for item in special_radii(family, m, k):
            cell = item.spec()
            rows.setdefault(cell.key(), (cell, item.tags))
    for spec in config.cells():
        rows.setdefault(spec.key(), (spec, None))
    keys = sorted(rows)
    data = [atlas_row(*rows[key]) for key in tqdm(keys, desc='atlas', disable=config.quiet or is_quiet())]
    frame = pd.DataFrame(data, columns=ATLAS_COLUMNS)
    # keep k as integers next to missing values
    frame['k'] = frame['k'].astype('Int64')
    return frame


def emit_atlas(config, path=None):
    """
    Writes the atlas CSV to ``path`` (default ``config.out``) and returns
    its text.

    :raises OSError: if the file cannot be written.
    """
    frame = atlas_frame(config)
    text = frame.to_csv(index=False, lineterminator='\n')
    path = path or config.out
    if path:
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(text)
        say('ATLAS', f"{len(frame)} rows written to {path}")
    return text
