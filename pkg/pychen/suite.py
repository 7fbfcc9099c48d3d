"""Runs the named checks over a grid of hypersurfaces."""

from tqdm import tqdm  # progress over grid cells

from .checks import CheckContext, CheckGraph, run_check
from .diagnostics import is_quiet, say
from .report import Report


def run_cell(spec, order, config):
    """
    Runs the checks ``order`` on one cell.

    :returns: the applicable records, in check order.
    """
    ctx = CheckContext(spec, config.samples, config.seed, config.oracle_cfg)
    records = []
    for name in order:
        record = run_check(name, ctx)
        if record is None:
            continue
        if not record['pass']:
            say('VERIFY', f"{name} fails on {spec!r}")
        records.append(record)
    return records


def run_suite(config):
    """
    Runs the selected checks on every cell of the configuration.

    Cells are processed in sorted order, so a fixed configuration and seed
    always yield the same report.

    :type config: RunConfig
    :rtype: Report
    :raises ConfigError: on an invalid configuration.
    :raises SpecError: if a cell is not a legal hypersurface.
    """
    order = CheckGraph().execution_order(config.checks)
    cells = config.verify_cells()
    say('VERIFY', f"{len(cells)} cells, checks: {', '.join(order)}")
    records = []
    for spec in tqdm(cells, desc='verify', disable=config.quiet or is_quiet()):
        records.extend(run_cell(spec, order, config))
    report = Report(records, config.describe())
    say('VERIFY', f"{report.summary['passed']} of {report.summary['total']} records pass")
    return report
