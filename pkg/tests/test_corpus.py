import random

import pytest

from cayleyaut.autgroup import (brute_force_aut, is_arc_transitive, is_vertex_transitive, orbit_of,
                                stabilizer)
from cayleyaut.cayley import relabel
from cayleyaut.connect import edge_connectivity, vertex_connectivity
from cayleyaut.corpus import CORPUS, CorpusEntry, run_corpus, run_entry
from cayleyaut.families import build_family

# Entries whose exhaustive search dominates the runtime
SLOW = {'Q_4', 'Q_3^3', 'Q_4^2', 'Q_2^4', 'M_16', 'Circ(25;5,2)'}

ENTRIES = [pytest.param(e, id=e.name, marks=pytest.mark.slow if e.name in SLOW else ())
           for e in CORPUS]

SMALL_ENTRIES = [pytest.param(e, id=e.name) for e in CORPUS
                 if build_family(e.family, e.params).n <= 10]


def test_corpus_names_are_unique():
    names = [e.name for e in CORPUS]
    assert len(names) == len(set(names))


def test_corpus_covers_expected_graphs():
    names = {e.name for e in CORPUS}
    assert {f'C_{n}' for n in range(3, 13)} <= names
    assert {f'M_{n}' for n in range(4, 17)} <= names
    assert {'Q_1', 'Q_2', 'Q_3', 'Q_4', 'Q_2^3', 'Q_2^5', 'Q_3^3', 'Q_1^6', 'Q_1^7', 'Q_3^2',
            'Q_4^2', 'Q_2^4', 'Circ(25;5,2)'} <= names


@pytest.mark.parametrize('entry', ENTRIES)
def test_corpus_entry(entry, settings):
    result = run_entry(entry, settings)
    assert result.passed, result.reasons
    assert result.to_dict()['verdict'] == 'PASS'


@pytest.mark.parametrize('entry', ENTRIES)
def test_corpus_graph_symmetry_and_connectivity(entry):
    graph = build_family(entry.family, entry.params)
    aut = brute_force_aut(graph)
    assert is_vertex_transitive(graph, aut)
    if entry.family in ('hypercube', 'kary_ncube'):
        assert is_arc_transitive(graph, aut)

    for v in range(graph.n):
        assert len(orbit_of(aut, v)) * stabilizer(aut, v).order == aut.order

    kappa = vertex_connectivity(graph, group=aut)
    lam = edge_connectivity(graph)
    delta = min(graph.degrees())
    assert kappa <= lam <= delta
    assert kappa == vertex_connectivity(graph)
    if is_arc_transitive(graph, aut):
        assert kappa == delta


@pytest.mark.parametrize('entry', ENTRIES)
def test_corpus_graph_relabeling_invariance(entry):
    graph = build_family(entry.family, entry.params)
    aut = brute_force_aut(graph)
    rng = random.Random(entry.name)
    for _ in range(10):
        perm = list(range(graph.n))
        rng.shuffle(perm)
        relabeled = brute_force_aut(relabel(graph, perm))
        assert relabeled.order == aut.order


@pytest.mark.parametrize('entry', SMALL_ENTRIES)
def test_corpus_refinement_is_sound(entry):
    graph = build_family(entry.family, entry.params)
    assert brute_force_aut(graph).element_set() == brute_force_aut(graph, refine=False).element_set()


def test_wrong_expectation_fails(settings):
    entry = CorpusEntry('M_8 (wrong)', 'mobius', {'n': 8}, us=False, predicted=16, aut=32)
    result = run_entry(entry, settings)
    assert not result.passed
    assert any('us=True' in r for r in result.reasons)
    assert any('aut order 16' in r for r in result.reasons)


def test_run_corpus_subset(settings):
    entries = [e for e in CORPUS if e.name in ('C_5', 'M_6')]
    results = run_corpus(settings, entries)
    assert [r.name for r in results] == ['C_5', 'M_6']
    assert all(r.passed for r in results)
    m6 = results[1]
    assert (m6.us, m6.predicted, m6.brute) == (False, 12, 72)
