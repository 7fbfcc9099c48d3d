import json
import math

import pandas as pd
import pytest

from pychen.cli import EXIT_CONFIG, EXIT_FAIL, EXIT_IO, EXIT_PASS, build_parser, config_from_args, main
from pychen.config import RunConfig, read_config_file
from pychen.errors import ConfigError

SPHERE = ['--family', 'p1k', '--m', '2', '--k', '0', '--radius', 'pi/4', '--quiet']


def test_verify_sphere(tmp_path):
    out = tmp_path / 'report.json'
    code = main(['verify', *SPHERE, '--checks', 'table1,chen2', '--out', str(out)])
    assert code == EXIT_PASS
    report = json.loads(out.read_text())
    assert report['summary']['pass']
    assert [record['check'] for record in report['records']] == ['table1', 'chen2']
    assert report['records'][1]['expected']['value']['a'] == pytest.approx(52.0)
    assert report['meta']['tool'] == 'pychen'


def test_markdown_report(tmp_path):
    out = tmp_path / 'report.md'
    assert main(['verify', *SPHERE, '--checks', 'table1', '--format', 'md', '--out', str(out)]) == EXIT_PASS
    text = out.read_text()
    assert text.startswith('# pychen')
    assert '| table1 | P1k |' in text


def test_failing_record_sets_exit_code(tmp_path, monkeypatch):
    from pychen import checks

    monkeypatch.setitem(checks.CHECKS, 'table1',
                        lambda ctx: checks.make_record('table1', ctx.spec, {'spectrum': 1.0}, {'spectrum': 1e-6}))
    assert main(['verify', *SPHERE, '--checks', 'table1', '--out', str(tmp_path / 'r.json')]) == EXIT_FAIL


@pytest.mark.parametrize('extra', [
    ['--family', 'p7'],
    ['--family', 'p1k', '--fd-step', '1.0'],
    ['--family', 'p1k', '--checks', 'chen4'],
    ['--family', 'p1k', '--m', '2', '--k', '5', '--radius', 'pi/4'],
    ['--family', 'p1k', '--radius', 'auto:nothing'],
    [],
])
def test_bad_configuration(extra, tmp_path):
    assert main(['verify', '--quiet', '--out', str(tmp_path / 'r.json'), *extra]) == EXIT_CONFIG


def test_unwritable_output(tmp_path):
    out = tmp_path / 'missing' / 'report.json'
    assert main(['verify', *SPHERE, '--checks', 'table1', '--out', str(out)]) == EXIT_IO


def test_reports_are_deterministic(tmp_path):
    first, second = tmp_path / 'a.json', tmp_path / 'b.json'
    for out in (first, second):
        assert main(['verify', *SPHERE, '--checks', 'table1,one-type', '--seed', '3', '--out', str(out)]) == EXIT_PASS
    assert first.read_bytes() == second.read_bytes()


class TestAtlas:

    def test_header_only(self, tmp_path):
        out = tmp_path / 'atlas.csv'
        assert main(['atlas', '--quiet', '--out', str(out)]) == EXIT_PASS
        assert out.read_text() == 'family,m,k,radius,type,lambda_u,lambda_v,mass_symmetric,minimal\n'

    def test_complex_tubes(self, tmp_path):
        out = tmp_path / 'atlas.csv'
        assert main(['atlas', '--family', 'p2', '--m', '2', '--quiet', '--out', str(out)]) == EXIT_PASS
        frame = pd.read_csv(out)
        assert list(frame['type']) == ['two-type', 'two-type']
        assert frame['mass_symmetric'].all()
        expected = sorted([0.5 * math.atan(math.sqrt(2)), 0.5 * math.atan(math.sqrt(30 / (3 + math.sqrt(369))))])
        assert list(frame['radius']) == pytest.approx(expected)

    def test_stdout(self, capsys):
        assert main(['atlas', '--family', 'p2', '--m', '2', '--quiet']) == EXIT_PASS
        assert capsys.readouterr().out.startswith('family,m,k,radius')


class TestConfigFile:

    def write(self, tmp_path, text):
        path = tmp_path / 'run.cfg'
        path.write_text(text)
        return path

    def test_flags_override_file(self, tmp_path):
        path = self.write(tmp_path, "# sphere\nfamily = p1k\nm = 2\nk = 0\nradius = pi/4  # start\nchecks = table1\n")
        args = build_parser().parse_args(['verify', '--config', str(path), '--radius', 'pi/3'])
        config = config_from_args(args)
        assert config.checks == ['table1']
        assert [spec.r for spec in config.verify_cells()] == [pytest.approx(math.pi / 3)]

    def test_unknown_key(self, tmp_path):
        path = self.write(tmp_path, "famly = p1k\n")
        with pytest.raises(ConfigError, match='unknown key'):
            read_config_file(path)

    def test_missing_equals(self, tmp_path):
        with pytest.raises(ConfigError):
            read_config_file(self.write(tmp_path, "family p1k\n"))

    def test_bad_integer(self):
        with pytest.raises(ConfigError):
            RunConfig.from_values({'family': 'p1k', 'm': 'two'})

    def test_default_radius(self):
        config = RunConfig(families=['p2'], ms=[2])
        radii = [spec.r for spec in config.verify_cells()]
        assert radii == pytest.approx(sorted([0.5 * math.atan(math.sqrt(2)),
                                              0.5 * math.atan(math.sqrt(30 / (3 + math.sqrt(369))))]))


def test_library_quiet_silences_progress(capsys):
    from pychen.diagnostics import set_quiet
    from pychen.suite import run_suite

    set_quiet(True)
    try:
        report = run_suite(RunConfig(families=['p1k'], ms=[2], ks=[0], radii=['pi/4'], checks=['table1']))
    finally:
        set_quiet(False)
    assert report.passed
    assert capsys.readouterr().err == ''
