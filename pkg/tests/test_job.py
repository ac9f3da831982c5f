from fractions import Fraction
import json
from pathlib import Path

import pandas as pd
import pytest

from opMatrix.errors import ConfigError
from opMatrix.regions import Circle, contains
from opMatrix.utils.math import RationalComplex
from perturbation.job import JobConfig
from run import EXIT_CONFIG, EXIT_ENGINE, EXIT_IO, main

CONFIG_DIR = Path(__file__).resolve().parent.parent / 'config_jobs'


def read_report(out):
    with open(out / 'report.json', encoding='utf-8') as f:
        return json.load(f)


@pytest.mark.parametrize("values", [
    {'models': ['shift', 'backshift'], 'colour': 'red'},
    {'models': ['shift', 'backshift'], 'command': 'bogus'},
    {'models': ['shift', 'backshift'], 'resolution': 1},
    {'models': ['shift', 'backshift'], 'command': 'complete', 'target': 'LeftFredholm'},
    {'models': ['shift', 'backshift'], 'command': 'verify', 'lambda': 0},
    {'models': ['shift', 'backshift'], 'window': [2, -2, -2, 2]},
    {'models': ['shift', 'backshift'], 'window': ['a', 2, -2, 2]},
    {'models': ['shift', 'backshift'], 'lambda': '1+'},
    {'models': ['shift']},
    {'command': 'intersect'},
])
def test_invalid_jobs(values):
    with pytest.raises(ConfigError):
        JobConfig.from_dict(values)


def test_job_defaults_and_lambda():
    config = JobConfig.from_dict({'models': ['shift', 'backshift'], 'command': 'complete',
                                  'kind': 'LW', 'lambda': '1/2-i'})
    assert config.spectral_parameter() == RationalComplex(Fraction(1, 2), -1)
    assert config.window_bounds() == (-2, 2, -2, 2)
    assert config.tuple().n == 2
    assert JobConfig.from_dict({'models': ['shift'], 'command': 'spectrum'}).model_list()


def test_intersect_the_shift_pair(tmp_path):
    assert main(['--models', 'shift', 'backshift', '--kind', 'LE', '--out', str(tmp_path),
                 '--log-level', 'WARNING']) == 0
    report = read_report(tmp_path)
    assert report["command"] == 'intersect'
    assert report["reports"][0]["result"]["describe"] == '{|λ|=1}'
    assert report["inclusions"]["passed"]


def test_spectrum_of_the_backward_shift(tmp_path):
    assert main(['--command', 'spectrum', '--kind', 'LW', '--models', 'backshift',
                 '--out', str(tmp_path), '--log-level', 'WARNING']) == 0
    report = read_report(tmp_path)
    assert report["spectra"][0]["model"] == 'backshift'
    assert report["spectra"][0]["spectra"][0]["describe"] == '{|λ|≤1}'


def test_equality_check_reports_the_gap(tmp_path):
    assert main(['--command', 'check-equality', '--kind', 'LE', '--models', 'shift(inf)', 'zero',
                 '--out', str(tmp_path), '--log-level', 'WARNING']) == 0
    check = read_report(tmp_path)["checks"][0]
    assert not check["holds"]
    assert check["witness"]["describe"] == '{0}'


def test_plot_writes_an_exact_grid(tmp_path):
    assert main(['--command', 'plot', '--kind', 'LE', '--models', 'shift', 'backshift',
                 '--out', str(tmp_path), '--log-level', 'WARNING']) == 0
    frame = pd.read_csv(tmp_path / 'grid.csv', index_col=0)
    assert frame.shape == (201, 201)
    assert set(frame.values.ravel()) <= {0, 1}
    circle = Circle(0, 1)
    for i in range(0, 201, 10):
        y = Fraction(frame.index[i])
        for j in range(0, 201, 10):
            x = Fraction(frame.columns[j])
            assert frame.iat[i, j] == int(contains(circle, RationalComplex(x, y)))
    # (3/5, 4/5) sits on the grid and on the circle
    assert frame.loc['4/5', '3/5'] == 1
    assert frame.loc['0/1', '0/1'] == 0
    assert (tmp_path / 'plot.svg').stat().st_size > 0
    assert read_report(tmp_path)["resolution"] == 201


def test_reports_are_deterministic(tmp_path):
    first, second = tmp_path / 'a', tmp_path / 'b'
    for out in (first, second):
        assert main(['--models', 'shift', 'zero', 'backshift', '--out', str(out),
                     '--log-level', 'WARNING']) == 0
    assert (first / 'report.json').read_bytes() == (second / 'report.json').read_bytes()


def test_exit_codes(tmp_path):
    assert main(['--models', 'shift', 'spin', '--out', str(tmp_path)]) == EXIT_CONFIG

    broken = tmp_path / 'broken.yml'
    broken.write_text("models: [shift\n")
    assert main(['--config', str(broken), '--out', str(tmp_path)]) == EXIT_CONFIG

    assert main(['--command', 'complete', '--kind', 'LE', '--lambda', '1', '--models', 'shift', 'backshift',
                 '--out', str(tmp_path), '--log-level', 'WARNING']) == EXIT_ENGINE

    blocker = tmp_path / 'taken'
    blocker.write_text('')
    assert main(['--models', 'shift', 'backshift', '--out', str(blocker),
                 '--log-level', 'WARNING']) == EXIT_IO


def test_verify_the_shift_pair_completion(tmp_path):
    assert main(['--command', 'verify', '--target', 'LeftWeyl', '--lambda', '0',
                 '--models', 'shift', 'backshift', '--out', str(tmp_path), '--log-level', 'WARNING']) == 0
    verification = read_report(tmp_path)["verification"]
    assert verification["alpha"] == 0 and verification["beta"] == 0


@pytest.mark.parametrize("path", sorted(CONFIG_DIR.glob('*.yml')), ids=lambda p: p.stem)
def test_bundled_jobs_run(tmp_path, path):
    assert main(['--config', str(path), '--out', str(tmp_path), '--log-level', 'WARNING']) == 0
    assert (tmp_path / 'report.json').exists()
