import json
import os
import sys

import pytest
from adiabat.__main__ import main
from adiabat.experiments import BASIS, ConfigError, ExperimentFailed, apply_overrides, default_config, execute, \
    experiments, implementation, parse_basis, parse_config, parse_poly, perturbation_profile, run, write_report

ROUND_CONFIG = '''
# A small round product
experiment = round-baseline
grid.n = 12
ks = 4, 8
'''

SMALL_CONFIG = '''
grid.n = 12
grid.refinement = 8, 12
ks = 8, 16
epsilons = 0.1
samples = 1
potentials = 1
flow.n = 8
'''

TABLES = {
    'round-baseline': {'quantities': 'quantity,computed,reference,error'},
    'compute': {
        'averages': 'k,S_k_hat,k_expansion_defect',
        'futaki': 'generator,transverse,submersion,moment_pairing,leading_term,fibre_term,twisted_term,'
                  'omega_squared_term',
        'classical': 'generator,k,classical,normalized',
    },
    'invariance-sweep': {
        'sweep': 'sample,potential,generator,epsilon,delta',
        'derivatives': 'sample,potential,generator,derivative',
        'omega_shift': 'sample,generator,variation',
        'refinement': 'n,defect',
    },
    'adiabatic-sweep': {
        'adiabatic': 'generator,k,normalized_classical,transverse,difference',
        'average_expansion': 'k,defect',
        'oracle': 'generator,k,classical,predicted,relative_error',
    },
    'fine-expansion': {'expansion': 'k,fine_defect,average_defect'},
    'identity-suite': {'refinement': 'n,identity,defect'},
    'solve': {'trace': 'step,t,dt,r_fibre,r_base,energy'},
}

VERDICTS = {
    'compute': {'route_spread[fibre]', 'leading_term[fibre]', 'route_spread[base]', 'leading_term[base]'},
    'invariance-sweep': {'largest_delta', 'largest_derivative', 'refinement_decay'},
    'adiabatic-sweep': {'futaki_order[fibre]', 'futaki_order[base]', 'average_order', 'oracle[fibre]', 'oracle[base]'},
    'fine-expansion': {'fine_order', 'average_order'},
    'identity-suite': {'refinement[kernel]', 'refinement[linearization]', 'refinement[self_adjoint]', 'kernel'},
    'solve': {'r_fibre', 'energy_monotone', 'converged', 'round_fibre', 'transverse[fibre]', 'transverse[base]'},
}


def _config(tmp_path, text: str = ROUND_CONFIG):
    return apply_overrides(parse_config(text), out=str(tmp_path))


def test_defaults():
    """
    Test that every key has its default
    """
    config = default_config()
    assert config['experiment'] == 'round-baseline', 'The default experiment'
    assert config['flow.retries'] == 8, 'The default number of halvings'
    assert config['ks'] == [8., 16., 32.], 'The default adiabatic parameters'
    assert config.grid.n == 32, 'Sections are reachable as attributes'


def test_parse_config():
    """
    Test config parsing, comments and key normalization
    """
    config = parse_config('provider.name = hirzebruch  # twisted\nflow.max-steps = 50\n\nks = 8, 16\n')
    assert config['provider.name'] == 'hirzebruch', 'Comments must be stripped'
    assert config['flow.max_steps'] == 50, 'Dashes and underscores are the same'
    assert config['ks'] == [8., 16.], 'Lists are parsed element-wise'
    assert config['grid.n'] == 32, 'Missing keys keep their defaults'


def test_bad_config():
    """
    Test that malformed configs are rejected
    """
    for text in ('grid.size = 12', 'grid.n = twelve', 'provider.name = sphere', 'grid.n', 'ks = ',
                 'perturbation.phi.poly = 1:2', 'perturbation.phi.basis = bump:1'):
        with pytest.raises(ConfigError):
            parse_config(text)


def test_overrides():
    """
    Test that command line overrides apply to a copy
    """
    config = default_config()
    overridden = apply_overrides(config, experiment='solve', grid=16, seed=3)
    assert (overridden['experiment'], overridden['grid.n'], overridden['seed']) == ('solve', 16, 3), \
        'Overrides must be applied'
    assert config['grid.n'] == 32, 'The original config must be untouched'


def test_perturbations():
    """
    Test polynomial and basis perturbations
    """
    assert parse_poly('0.5:2:0, -1:0:3') == ((.5, 2, 0), (-1., 0, 3)), 'Monomials are parsed in order'
    assert parse_basis('base-bump:2') == (('base_bump', 2.),), 'Basis names accept dashes'

    profile = perturbation_profile('2:1:1', 'base_bump:4')
    expected = 2 * .25 * .5 + 4 * BASIS['base_bump'].profile(.25, .5)
    assert abs(profile(.25, .5) - expected) < 1e-15, 'Terms must add up'

    with pytest.raises(ConfigError):
        perturbation_profile('1:1:0', '', base_only=True)

    with pytest.raises(ConfigError):
        perturbation_profile('', 'fibre_bump:1', base_only=True)

    with pytest.raises(ConfigError):
        parse_poly('1:-1:0')


def test_registry():
    """
    Test that experiments register once under their name
    """
    assert {'round-baseline', 'solve', 'verify-all'} <= set(experiments), 'Experiments register on import'
    with pytest.raises(KeyError):
        implementation('round-baseline')(lambda config: None)


def test_round_baseline(tmp_path):
    """
    Test a full round baseline run and its report files
    """
    report = run(_config(tmp_path))
    assert report.passed, f'Failed verdicts: {report.failed}'

    directory = tmp_path / 'round-baseline'
    with open(directory / 'report.json') as report_file:
        written = json.load(report_file)

    assert written['passed'] and written['experiment'] == 'round-baseline', 'The report must be written'
    assert written['config']['grid']['n'] == 12, 'The report carries its config'
    assert written['tables'] == {'quantities': 'quantities.csv'}, 'Tables are listed by file'
    with open(directory / 'quantities.csv') as table_file:
        header = table_file.readline().strip()

    assert header == 'quantity,computed,reference,error', 'The table header'
    assert os.path.exists(directory / 'timing.json'), 'Timing is written apart'


def test_deterministic_reports(tmp_path):
    """
    Test that rerunning an experiment reproduces its files byte for byte
    """
    config = _config(tmp_path)
    contents = []
    for _ in range(2):
        run(config)
        contents.append(tuple((tmp_path / 'round-baseline' / name).read_bytes()
                              for name in ('report.json', 'quantities.csv')))

    assert contents[0] == contents[1], 'Reruns must write identical files'


def test_failed_verdicts(tmp_path):
    """
    Test that failed verdicts are written before they are raised
    """
    config = _config(tmp_path, ROUND_CONFIG + 'tolerance.round = -1\n')
    with pytest.raises(ExperimentFailed) as info:
        run(config)

    assert 'S_F' in info.value.failed, 'The failed verdicts are named'
    with open(tmp_path / 'round-baseline' / 'report.json') as report_file:
        assert not json.load(report_file)['passed'], 'The failing report is still written'


def test_unknown_experiment(tmp_path):
    """
    Test that an unknown experiment is a config error and writes nothing
    """
    config = _config(tmp_path, 'experiment = everything\n')
    with pytest.raises(ConfigError):
        execute(config)

    assert not os.listdir(tmp_path), 'Nothing may be written'


def test_command_line(tmp_path, monkeypatch):
    """
    Test the exit codes of the command line
    """
    config_path = tmp_path / 'round.cfg'
    config_path.write_text(ROUND_CONFIG)
    out = tmp_path / 'reports'

    monkeypatch.setattr(sys, 'argv', ['adiabat', 'round-baseline', '--config', str(config_path), '--out', str(out),
                                      '--quiet'])
    with pytest.raises(SystemExit) as info:
        main()

    assert info.value.code == 0, 'A passing experiment exits with 0'
    assert (out / 'round-baseline' / 'report.json').exists(), 'The report lands under --out'

    monkeypatch.setattr(sys, 'argv', ['adiabat', 'run', '--config', str(tmp_path / 'missing.cfg')])
    with pytest.raises(SystemExit) as info:
        main()

    assert info.value.code == 2, 'A config error exits with 2'


@pytest.mark.parametrize('experiment', sorted(TABLES))
def test_experiment_tables(tmp_path, experiment):
    """
    Test the CSV columns and the verdict names of every experiment
    """
    config = apply_overrides(parse_config(SMALL_CONFIG), experiment=experiment, out=str(tmp_path))
    report = execute(config)
    assert VERDICTS.get(experiment, set()) <= set(report.verdicts), f'Verdicts of {experiment}'

    directory = write_report(report, config['output'])
    assert sorted(os.listdir(directory)) == sorted(['report.json', 'timing.json']
                                                   + [f'{name}.csv' for name in TABLES[experiment]]), \
        f'Files of {experiment}'

    for name, header in TABLES[experiment].items():
        with open(os.path.join(directory, f'{name}.csv')) as table_file:
            lines = table_file.read().splitlines()

        assert lines[0] == header, f'Columns of {experiment}/{name}'
        assert len(lines) > 1, f'{experiment}/{name} must have rows'


def test_table_rows():
    """
    Test that the sweeps write one row per sample, generator and parameter
    """
    config = parse_config(SMALL_CONFIG)
    tables = {table.name: table for table in execute(apply_overrides(config, 'invariance-sweep')).tables}
    assert len(tables['sweep'].rows) == 2 and len(tables['refinement'].rows) == 2, 'One row per generator and n'

    tables = {table.name: table for table in execute(apply_overrides(config, 'identity-suite')).tables}
    assert len(tables['refinement'].rows) == 2 * 10, 'One row per grid and identity'

    tables = {table.name: table for table in execute(apply_overrides(config, 'adiabatic-sweep')).tables}
    assert [row[:2] for row in tables['adiabatic'].rows] == [('fibre', 8.), ('fibre', 16.), ('base', 8.),
                                                             ('base', 16.)], 'One row per generator and k'


def test_fine_expansion_default(tmp_path):
    """
    Test that the fine expansion of the default round product passes with rounding noise left unfitted
    """
    report = run(apply_overrides(default_config(), experiment='fine-expansion', out=str(tmp_path)))
    assert report.passed, f'Failed verdicts: {report.failed}'
    assert report.metrics['fine_order'] is None and report.metrics['average_order'] is None, \
        'The round product expansion is exact'


def test_verify_all_default(tmp_path):
    """
    Test that every experiment passes on the default config
    """
    report = run(apply_overrides(default_config(), experiment='verify-all', out=str(tmp_path)))
    assert report.passed, f'Failed verdicts: {report.failed}'
    assert {name.split('.')[0] for name in report.verdicts} == set(TABLES), 'Every experiment reports'
    for name in TABLES:
        assert (tmp_path / name / 'report.json').exists(), f'{name} writes its own report'


def test_hirzebruch_oracle_sweep():
    """
    Test that the adiabatic sweep predicts the Hirzebruch fibre invariant from the calibrated boundary formula
    """
    config = parse_config('provider.name = hirzebruch\ngrid.n = 24\nks = 8, 16\nexperiment = adiabatic-sweep\n')
    report = execute(config)
    assert report.verdicts['oracle[fibre]'], f'Relative error {report.metrics["oracle[fibre]"]}'
    assert report.metrics['calibration[fibre]'] != 0, 'The calibration constant is recorded'


def test_solve_drifting_fibres():
    """
    Test that the solve experiment judges fibres by their curvature when they depend on the base point
    """
    config = parse_config('experiment = solve\nflow.n = 10\nperturbation.phi.basis = mixed:0.02\n')
    report = execute(config)
    assert report.verdicts['converged'] and report.verdicts['round_fibre'], f'Failed verdicts: {report.failed}'
