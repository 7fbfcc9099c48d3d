"""Verification reports.

The JSON form is the reference; markdown and CSV are flattened views of
the same records built with pandas.  Reports carry no timestamps, so a
fixed configuration always produces the same bytes.
"""

import json

import pandas as pd

from . import __version__

TOOL = 'pychen'


def summarize(records):
    """Counts of passing and failing records, overall and per check."""
    by_check = {}
    for record in records:
        entry = by_check.setdefault(record['check'], {'passed': 0, 'failed': 0})
        entry['passed' if record['pass'] else 'failed'] += 1
    passed = sum(1 for record in records if record['pass'])
    return {
        'total': len(records),
        'passed': passed,
        'failed': len(records) - passed,
        'by_check': by_check,
        'pass': passed == len(records),
    }


def _worst(record):
    residuals = record['residuals']
    if not residuals:
        return None
    return max(residuals.values())


def _params_text(params):
    return ', '.join(f"{key}={value:.12g}" if isinstance(value, float) else f"{key}={value}"
                     for key, value in params.items() if value is not None)


class Report:
    """
    The records of one run together with metadata and summary.

    :param records: check records as built by ``make_record``.
    :param settings: plain settings of the run (see ``RunConfig.describe``).
    """

    def __init__(self, records, settings=None):
        self.records = list(records)
        self.meta = {'tool': TOOL, 'version': __version__, 'settings': settings or {}}
        self.summary = summarize(self.records)

    @property
    def passed(self):
        return self.summary['pass']

    def as_dict(self):
        return {'meta': self.meta, 'records': self.records, 'summary': self.summary}

    def to_json(self):
        return json.dumps(self.as_dict(), indent=2, sort_keys=True) + '\n'

    def to_frame(self):
        """
        One row per record; residuals, tolerances and the expected value are
        spread into dotted columns.
        """
        if not self.records:
            return pd.DataFrame(columns=['check', 'family', 'pass'])
        rows = []
        for record in self.records:
            row = {key: value for key, value in record.items() if key not in ('residuals', 'tolerances', 'expected', 'params')}
            row.update({f"params.{k}": v for k, v in record['params'].items()})
            row.update({f"residuals.{k}": v for k, v in record['residuals'].items()})
            row.update({f"tolerances.{k}": v for k, v in record['tolerances'].items()})
            row['expected.provenance'] = record['expected']['provenance']
            row['expected.value'] = json.dumps(record['expected']['value'], sort_keys=True)
            rows.append({k: (json.dumps(v, sort_keys=True) if isinstance(v, (dict, list)) else v)
                         for k, v in row.items()})
        frame = pd.DataFrame(rows)
        leading = ['check', 'family', 'pass']
        rest = sorted(column for column in frame.columns if column not in leading)
        return frame[leading + rest]

    def to_csv(self):
        return self.to_frame().to_csv(index=False, lineterminator='\n')

    def to_markdown(self):
        lines = [
            f"# {TOOL} {__version__} verification report",
            '',
            f"{self.summary['passed']} of {self.summary['total']} records pass.",
            '',
            '| check | family | params | worst residual | pass |',
            '|---|---|---|---|---|',
        ]
        for record in self.records:
            worst = _worst(record)
            worst = '' if worst is None else f"{worst:.3e}"
            verdict = 'yes' if record['pass'] else 'NO'
            if 'error' in record:
                verdict += f" ({record['error']})"
            lines.append(f"| {record['check']} | {record['family']} | {_params_text(record['params'])} "
                         f"| {worst} | {verdict} |")
        return '\n'.join(lines) + '\n'

    def render(self, fmt='json'):
        if fmt == 'md':
            return self.to_markdown()
        if fmt == 'csv':
            return self.to_csv()
        return self.to_json()

    def write(self, path, fmt='json'):
        """
        Writes the rendered report.

        :raises OSError: if the file cannot be written.
        """
        with open(path, 'w', encoding='utf-8', newline='') as handle:
            handle.write(self.render(fmt))
