import itertools

import pytest

from cayleyaut.abelian import (GroupElement, GroupEndoMap, GroupSpec, NotExtendable, add,
                               aut_stabilizing, elem_order, extend_map, generates, neg, zero)
from cayleyaut.exceptions import ArgumentError, DimensionError, PreconditionError, ResourceError


def E(*residues):
    return GroupElement(tuple(residues))


# --- arithmetic -----------------------------------------------------------

def test_add_examples():
    assert add(GroupSpec((6,)), 3, 5) == E(2)
    assert add(GroupSpec((2, 2)), (1, 0), (0, 1)) == E(1, 1)
    assert add(GroupSpec((5,)), 4, 4) == E(3)


def test_neg_examples():
    assert neg(GroupSpec((7,)), 3) == E(4)
    assert neg(GroupSpec((2, 2, 2)), (1, 0, 1)) == E(1, 0, 1)
    assert neg(GroupSpec((9,)), 4) == E(5)


def test_elem_order():
    assert elem_order(GroupSpec((6,)), 2) == 3
    assert elem_order(GroupSpec((6,)), 0) == 1
    assert elem_order(GroupSpec((4, 6)), (1, 2)) == 12
    assert elem_order(GroupSpec((2, 2, 2)), (1, 1, 0)) == 2


def test_dimension_mismatch():
    spec = GroupSpec((2, 2))
    with pytest.raises(DimensionError):
        add(spec, (1,), (0, 1))
    with pytest.raises(DimensionError):
        spec.element(1)


@pytest.mark.parametrize('moduli', [(), (1,), (4, 1), (0,)])
def test_invalid_moduli(moduli):
    with pytest.raises(ArgumentError):
        GroupSpec(moduli)


@pytest.mark.parametrize('moduli', [(5,), (2, 3), (2, 2, 2), (4, 6), (3, 3)])
def test_group_axioms(moduli):
    spec = GroupSpec(moduli)
    elements = spec.elements()
    z = zero(spec)
    for a in elements:
        assert add(spec, a, z) == a
        assert add(spec, a, neg(spec, a)) == z
        for b in elements:
            assert add(spec, a, b) == add(spec, b, a)
    for a, b, c in itertools.product(elements, repeat=3):
        assert add(spec, add(spec, a, b), c) == add(spec, a, add(spec, b, c))


def test_mixed_radix_index():
    spec = GroupSpec((2, 3))
    assert spec.index_of((1, 2)) == 5
    assert spec.from_index(5) == E(1, 2)
    assert [spec.index_of(e) for e in spec.elements()] == list(range(6))
    with pytest.raises(ArgumentError):
        spec.from_index(6)


def test_translation_and_negation_tables():
    spec = GroupSpec((2, 3))
    t = spec.translation(spec.index_of((1, 1)))
    for x in range(spec.order):
        assert spec.from_index(int(t[x])) == add(spec, spec.from_index(x), (1, 1))
    n = spec.negation()
    for x in range(spec.order):
        assert spec.from_index(int(n[x])) == neg(spec, spec.from_index(x))


# --- generates ------------------------------------------------------------

def test_generates():
    assert generates(GroupSpec((8,)), [1, 7])
    assert not generates(GroupSpec((6,)), [2, 4])
    assert generates(GroupSpec((8,)), [1, 7, 4])
    assert not generates(GroupSpec((2, 2)), [(1, 1)])
    with pytest.raises(ArgumentError):
        generates(GroupSpec((8,)), [])


# --- extend_map -----------------------------------------------------------

def test_extend_scalar_multiplication():
    spec = GroupSpec((5,))
    f = extend_map(spec, [1, 4], [2, 3])
    assert isinstance(f, GroupEndoMap)
    assert f.images == (0, 2, 4, 1, 3)
    assert f.is_automorphism
    assert f.is_additive(spec)


def test_extend_swap_in_z6():
    spec = GroupSpec((6,))
    f = extend_map(spec, [1, 5, 3], [5, 1, 3])
    assert f.images == (0, 5, 4, 3, 2, 1)
    assert f.is_automorphism


def test_extend_klein_four():
    spec = GroupSpec((2, 2))
    f = extend_map(spec, [(1, 0), (0, 1)], [(1, 0), (1, 1)])
    assert f.is_automorphism
    assert f.apply(spec, (0, 1)) == E(1, 1)
    assert f.apply(spec, (1, 1)) == E(0, 1)


def test_extend_non_bijective_endomorphism():
    spec = GroupSpec((6,))
    f = extend_map(spec, [1, 5], [2, 4])
    assert isinstance(f, GroupEndoMap)
    assert not f.is_automorphism
    assert f.is_additive(spec)


def test_extend_not_extendable():
    spec = GroupSpec((4,))
    result = extend_map(spec, [1, 3], [1, 1])
    assert isinstance(result, NotExtendable)
    assert not result
    x, s = result.witness
    assert s in (E(1), E(3))


def test_extend_requires_generating_set():
    with pytest.raises(PreconditionError):
        extend_map(GroupSpec((6,)), [2, 4], [2, 4])


def test_extend_length_mismatch():
    with pytest.raises(ArgumentError):
        extend_map(GroupSpec((6,)), [1, 5], [1])


@pytest.mark.parametrize('moduli,S', [
    ((7,), [1, 6]),
    ((2, 2, 2), [(1, 0, 0), (0, 1, 0), (0, 0, 1)]),
    ((3, 3), [(1, 0), (2, 0), (0, 1), (0, 2)]),
    ((10,), [1, 9, 5]),
])
def test_extend_identity_assignment(moduli, S):
    spec = GroupSpec(moduli)
    f = extend_map(spec, S, S)
    assert f.images == tuple(range(spec.order))


def test_endomap_compose_and_inverse():
    spec = GroupSpec((5,))
    double = extend_map(spec, [1], [2])
    triple = extend_map(spec, [1], [3])
    assert double.compose(triple).images == tuple(range(5))
    assert double.inverse().images == triple.images
    with pytest.raises(PreconditionError):
        GroupEndoMap((0, 0, 0)).inverse()


# --- aut_stabilizing --------------------------------------------------------

@pytest.mark.parametrize('n', range(3, 11))
def test_aut_stabilizing_cycle(n):
    maps = aut_stabilizing(GroupSpec((n,)), [1, n - 1])
    assert [m.images for m in maps] == [
        tuple(range(n)),
        tuple((-x) % n for x in range(n)),
    ]


@pytest.mark.parametrize('n,expected', [(1, 1), (2, 2), (3, 6), (4, 24)])
def test_aut_stabilizing_hypercube(n, expected):
    spec = GroupSpec.power(2, n)
    assert len(aut_stabilizing(spec, [spec.unit(i) for i in range(n)])) == expected


@pytest.mark.parametrize('k,n,expected', [(3, 2, 8), (5, 2, 8), (3, 3, 48), (4, 2, 8)])
def test_aut_stabilizing_kary(k, n, expected):
    spec = GroupSpec.power(k, n)
    S = []
    for i in range(n):
        e = spec.unit(i)
        S += [e, neg(spec, e)]
    assert len(aut_stabilizing(spec, S)) == expected


@pytest.mark.parametrize('moduli,S', [
    ((8,), [1, 7, 4]),
    ((9,), [1, 8, 4, 5]),
    ((6,), [1, 5, 3]),
    ((3, 3), [(1, 0), (2, 0), (0, 1), (0, 2)]),
    ((12,), [1, 11, 5, 7]),
])
def test_aut_stabilizing_is_a_group_of_automorphisms(moduli, S):
    spec = GroupSpec(moduli)
    maps = aut_stabilizing(spec, S)
    tables = {m.images for m in maps}
    s_indices = {spec.index_of(s) for s in S}

    assert [m.images for m in maps] == sorted(tables)
    for m in maps:
        assert m.is_automorphism
        assert m.is_bijective()
        assert m.is_additive(spec)
        assert {m(s) for s in s_indices} == s_indices
        assert m.inverse().images in tables
        for other in maps:
            assert m.compose(other).images in tables


@pytest.mark.parametrize('S,invariant', [
    ([], 'nonempty'),
    ([0, 1, 5], 'zero_excluded'),
    ([1], 'inverse_closed'),
    ([2, 4], 'generating'),
])
def test_aut_stabilizing_preconditions(S, invariant):
    with pytest.raises(PreconditionError) as exc:
        aut_stabilizing(GroupSpec((6,)), S)
    assert exc.value.invariant == invariant


def test_aut_stabilizing_cap():
    with pytest.raises(ResourceError) as exc:
        aut_stabilizing(GroupSpec((7,)), range(1, 7), max_connection_set=4)
    assert exc.value.cap == 'connection_set_size'
    assert exc.value.exit_code == 3
