import json

import pytest

from cayleyaut.cayley import check_us, family_mobius
from cayleyaut.exceptions import ArgumentError, DimensionError, SpecFileError
from cayleyaut.families import FAMILIES, build_family, normalize_params, parse_cli_params
from cayleyaut.models import GraphSpecFile, us_json


# --- GraphSpecFile ---------------------------------------------------------

def test_explicit_spec():
    spec_file = GraphSpecFile.from_json('{"moduli": [4], "connection_set": [[1], [3]]}')
    graph = spec_file.build()
    assert graph.n == 4
    assert graph.conn.indices == (1, 3)
    assert spec_file.to_dict() == {'moduli': [4], 'connection_set': [[1], [3]]}


def test_family_spec():
    spec_file = GraphSpecFile.from_dict({'family': 'kary_ncube', 'params': {'n': 2, 'k': 3}})
    assert list(spec_file.params) == ['k', 'n']
    assert spec_file.build().n == 9


def test_malformed_json_reports_position():
    with pytest.raises(SpecFileError) as exc:
        GraphSpecFile.from_json('{"moduli": [4],\n "connection_set": [[1], [3]')
    assert exc.value.line == 2
    assert exc.value.column is not None
    assert 'line 2' in str(exc.value)
    assert exc.value.exit_code == 2


@pytest.mark.parametrize('data', [
    [],
    {},
    {'moduli': [4], 'connection_set': [[1], [3]], 'family': 'cycle'},
    {'moduli': [4], 'connection_set': [[1], [3]], 'extra': 1},
    {'moduli': [], 'connection_set': []},
    {'moduli': [4], 'connection_set': [[1.5], [3]]},
    {'moduli': [4], 'connection_set': [1, 3]},
    {'family': 5, 'params': {}},
])
def test_invalid_spec_files(data):
    with pytest.raises(SpecFileError):
        GraphSpecFile.from_dict(data)


def test_residue_length_mismatch():
    with pytest.raises(DimensionError) as exc:
        GraphSpecFile.from_dict({'moduli': [2, 2], 'connection_set': [[1, 0], [1]]})
    assert (exc.value.expected, exc.value.actual) == (2, 1)


def test_unknown_family():
    with pytest.raises(ArgumentError) as exc:
        GraphSpecFile.from_dict({'family': 'petersen', 'params': {}})
    assert exc.value.invariant == 'family_name'


def test_load_missing_file(tmp_path):
    with pytest.raises(SpecFileError):
        GraphSpecFile.load(str(tmp_path / 'missing.json'))


def test_from_graph_round_trip(tmp_path):
    graph = family_mobius(8)
    path = tmp_path / 'm8.json'
    path.write_text(GraphSpecFile.from_graph(graph).to_json())
    rebuilt = GraphSpecFile.load(str(path)).build()
    assert rebuilt.same_edges(graph)
    assert json.loads(path.read_text()) == {'moduli': [8], 'connection_set': [[1], [4], [7]]}


def test_us_json():
    graph = family_mobius(6)
    data = us_json(check_us(graph.group, graph.conn))
    assert data['holds'] is False
    assert data['witness'] == {'g': [2], 'first': [[1], [1]], 'second': [[3], [5]]}
    assert data['collisions'] >= 1


# --- families -------------------------------------------------------------

def test_family_registry():
    assert set(FAMILIES) == {'cycle', 'hypercube', 'mobius', 'kary_ncube', 'circulant'}


def test_normalize_params():
    assert normalize_params('circulant', {'m': 2, 'n': 25, 'd': 5}) == {'n': 25, 'd': 5, 'm': 2}
    with pytest.raises(ArgumentError):
        normalize_params('cycle', {})
    with pytest.raises(ArgumentError):
        normalize_params('cycle', {'n': 5, 'k': 2})
    with pytest.raises(ArgumentError):
        normalize_params('cycle', {'n': '5'})
    with pytest.raises(ArgumentError):
        normalize_params('cycle', {'n': True})
    with pytest.raises(ArgumentError):
        normalize_params('circulant', {'n': 25, 'd': 5, 'm': 2, 'powers': 'all'})


def test_parse_cli_params():
    assert parse_cli_params('kary_ncube', ['3', '2']) == {'k': 3, 'n': 2}
    assert parse_cli_params('circulant', ['{"n": 25, "d": 5, "m": 2}']) == {'n': 25, 'd': 5, 'm': 2}
    assert parse_cli_params('circulant', ['{"n": 25, "d": 5, "m": 2, "powers": [0]}'])['powers'] == [0]
    with pytest.raises(ArgumentError):
        parse_cli_params('cycle', [])
    with pytest.raises(ArgumentError):
        parse_cli_params('cycle', ['five'])
    with pytest.raises(ArgumentError):
        parse_cli_params('cycle', ['{"n": 5'])
    with pytest.raises(ArgumentError):
        parse_cli_params('torus', ['5'])


def test_build_family():
    graph = build_family('circulant', {'n': 25, 'd': 5, 'm': 2, 'powers': [0]})
    assert graph.conn.indices == (1, 24)
    assert build_family('cycle', {'n': 5}).label == 'C_5'
