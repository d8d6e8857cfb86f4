import json

import pytest

import main
from cayleyaut.analysis_engine import AnalysisEngine
from cayleyaut.corpus import CORPUS, CorpusEntry
from cayleyaut.models import GraphSpecFile
from cayleyaut.settings import Settings


def run(capsys, *argv):
    code = main.main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def write_spec(tmp_path, data, name='spec.json'):
    path = tmp_path / name
    path.write_text(data if isinstance(data, str) else json.dumps(data))
    return str(path)


# --- family ---------------------------------------------------------------

def test_family_cycle_edges(capsys):
    code, out, _ = run(capsys, 'family', 'cycle', '5', '--emit', 'edges')
    assert code == 0
    assert out == '0 1\n0 4\n1 2\n2 3\n3 4\n'


def test_family_mobius_spec(capsys):
    code, out, _ = run(capsys, 'family', 'mobius', '8', '--emit', 'spec')
    assert code == 0
    assert json.loads(out) == {'moduli': [8], 'connection_set': [[1], [4], [7]]}


def test_family_circulant_json_params(capsys):
    code, out, _ = run(capsys, 'family', 'circulant', '{"n": 25, "d": 5, "m": 2}')
    assert code == 0
    assert json.loads(out)['connection_set'] == [[1], [5], [20], [24]]


@pytest.mark.parametrize('argv', [
    ['family', 'petersen', '5'],
    ['family', 'cycle', '2'],
    ['family', 'kary_ncube', '3'],
])
def test_family_errors(capsys, argv):
    code, out, err = run(capsys, *argv)
    assert code == 2
    assert out == ''
    assert '[FAIL]' in err


# --- analyze --------------------------------------------------------------

def test_analyze_json(capsys, tmp_path):
    path = write_spec(tmp_path, {'family': 'mobius', 'params': {'n': 9}})
    code, out, err = run(capsys, 'analyze', path, '--json', '--stable')
    assert code == 0
    data = json.loads(out)
    assert data['us']['holds'] is True
    assert (data['predicted_order'], data['aut_order']) == (18, 18)
    assert data['theorem32']['equality'] is True
    assert data['dihedral'] == {'is_dihedral': True, 'n': 9}
    assert 'timings' not in data


def test_analyze_connectivity(capsys, tmp_path):
    path = write_spec(tmp_path, {'family': 'kary_ncube', 'params': {'k': 3, 'n': 2}})
    code, out, _ = run(capsys, 'analyze', path, '--json', '--connectivity')
    assert code == 0
    data = json.loads(out)
    assert data['aut_order'] == 72
    assert data['arc_transitive'] is True
    assert data['connectivity']['vertex'] == 4
    assert 'timings' in data


def test_analyze_cycle_4_witness(capsys, tmp_path):
    path = write_spec(tmp_path, {'moduli': [4], 'connection_set': [[1], [3]]})
    code, out, _ = run(capsys, 'analyze', path, '--json', '--stable')
    data = json.loads(out)
    assert code == 0
    assert data['us']['holds'] is False
    assert data['us']['witness']['g'] == [2]
    assert data['theorem32']['applicable'] is False


def test_analyze_human_format(capsys, tmp_path):
    path = write_spec(tmp_path, {'family': 'cycle', 'params': {'n': 6}})
    code, out, err = run(capsys, 'analyze', path, '--stable')
    assert code == 0
    assert 'Vertices: 6' in out
    assert '|Aut(graph)|: 12' in out
    assert 'Timings' not in out
    assert 'cayleyaut' in err


def test_analyze_stable_json_is_byte_identical(capsys, tmp_path):
    path = write_spec(tmp_path, {'family': 'hypercube', 'params': {'n': 3}})
    _, first, _ = run(capsys, 'analyze', path, '--json', '--stable')
    _, second, _ = run(capsys, 'analyze', path, '--json', '--stable')
    assert first == second


def test_family_spec_round_trips_through_analyze(capsys, tmp_path):
    _, spec_json, _ = run(capsys, 'family', 'mobius', '8', '--emit', 'spec')
    path = write_spec(tmp_path, spec_json)
    _, out, _ = run(capsys, 'analyze', path, '--json', '--stable')

    direct = AnalysisEngine(Settings()).analyze(GraphSpecFile.from_json(spec_json))
    assert json.loads(out) == json.loads(direct.to_json(stable=True))


def test_analyze_malformed_json(capsys, tmp_path):
    path = write_spec(tmp_path, '{"moduli": [4],\n "connection_set": ')
    code, out, err = run(capsys, 'analyze', path, '--json')
    assert code == 2
    assert out == ''
    assert 'line 2' in err


def test_analyze_invariant_violation(capsys, tmp_path):
    path = write_spec(tmp_path, {'moduli': [6], 'connection_set': [[0], [1], [5]]})
    code, _, err = run(capsys, 'analyze', path)
    assert code == 2
    assert 'zero_excluded' in err


def test_analyze_not_generating(capsys, tmp_path):
    path = write_spec(tmp_path, {'moduli': [6], 'connection_set': [[2], [4]]})
    code, _, err = run(capsys, 'analyze', path)
    assert code == 2
    assert 'generating' in err


def test_analyze_cap_exceeded(capsys, tmp_path):
    path = write_spec(tmp_path, {'family': 'cycle', 'params': {'n': 12}})
    code, out, err = run(capsys, 'analyze', path, '--max-vertices', '10')
    assert code == 3
    assert out == ''
    assert 'brute_force_vertices' in err

    code, out, _ = run(capsys, 'analyze', path, '--max-vertices', '10', '--no-brute', '--json')
    assert code == 0
    assert json.loads(out)['aut_order'] is None


def test_analyze_missing_file(capsys, tmp_path):
    code, _, _ = run(capsys, 'analyze', str(tmp_path / 'nope.json'))
    assert code == 2


# --- corpus ---------------------------------------------------------------

def test_corpus_listing(capsys):
    code, out, _ = run(capsys, 'corpus', '--json')
    assert code == 0
    assert [e['graph'] for e in json.loads(out)] == [e.name for e in CORPUS]


def test_corpus_run_subset(capsys, monkeypatch):
    subset = [e for e in CORPUS if e.name in ('M_6', 'M_12', 'Q_3')]
    monkeypatch.setattr('cayleyaut.corpus.CORPUS', subset)
    code, out, _ = run(capsys, 'corpus', '--run', '--json')
    assert code == 0
    rows = {r['graph']: r for r in json.loads(out)}
    assert rows['M_12'] == {'graph': 'M_12', 'us': True, 'predicted': 24, 'brute': 24,
                            'verdict': 'PASS', 'reasons': []}
    assert (rows['M_6']['us'], rows['M_6']['predicted'], rows['M_6']['brute']) == (False, 12, 72)
    assert rows['Q_3']['brute'] == 48


def test_corpus_mismatch_exits_1(capsys, monkeypatch):
    monkeypatch.setattr('cayleyaut.corpus.CORPUS',
                        [CorpusEntry('C_5 (wrong)', 'cycle', {'n': 5}, True, 10, 12)])
    code, out, err = run(capsys, 'corpus', '--run')
    assert code == 1
    assert 'FAIL' in out
    assert 'C_5 (wrong)' in err


def test_no_command(capsys):
    assert main.main([]) == 1


@pytest.mark.slow
def test_full_corpus(capsys):
    code, out, _ = run(capsys, 'corpus', '--run')
    assert code == 0
    assert f'{len(CORPUS)}/{len(CORPUS)} entries passed' in out
