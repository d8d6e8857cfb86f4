"""
Arithmetic in finite abelian groups H = Z_m1 x ... x Z_mr

Elements are residue tuples; every element also has an integer index in
[0, |H|) given by little-endian mixed radix:

    index = x_1 + x_2*m_1 + x_3*m_1*m_2 + ...

Most internal work happens on indices and numpy translation tables.
"""
import logging
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd, prod
from typing import Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from .exceptions import ArgumentError, DimensionError, PreconditionError, ResourceError
from .settings import MAX_CONNECTION_SET, MAX_GROUP_ORDER

logger = logging.getLogger(__name__)

ElementLike = Union['GroupElement', int, Sequence[int]]


@dataclass(frozen=True, order=True)
class GroupElement:
    """An element of H as a tuple of reduced residues"""

    residues: Tuple[int, ...]

    def __iter__(self):
        return iter(self.residues)

    def __len__(self):
        return len(self.residues)

    def __str__(self):
        if len(self.residues) == 1:
            return str(self.residues[0])
        return '(' + ','.join(str(x) for x in self.residues) + ')'


@dataclass(frozen=True)
class GroupSpec:
    """A finite abelian group given as a product of cyclic groups"""

    moduli: Tuple[int, ...]

    def __post_init__(self):
        moduli = tuple(int(m) for m in self.moduli)
        object.__setattr__(self, 'moduli', moduli)

        if not moduli:
            raise ArgumentError("a group needs at least one cyclic factor", invariant='rank')
        if any(m < 2 for m in moduli):
            raise ArgumentError(f"every modulus must be >= 2, got {list(moduli)}", invariant='modulus')
        if prod(moduli) > MAX_GROUP_ORDER:
            raise ArgumentError(
                f"group order {prod(moduli)} exceeds the supported maximum {MAX_GROUP_ORDER}",
                invariant='order',
            )

    @classmethod
    def cyclic(cls, n: int) -> 'GroupSpec':
        return cls((n,))

    @classmethod
    def power(cls, k: int, n: int) -> 'GroupSpec':
        """Z_k^n"""
        return cls((k,) * n)

    @property
    def rank(self) -> int:
        return len(self.moduli)

    @property
    def order(self) -> int:
        return prod(self.moduli)

    def __str__(self):
        return ' x '.join(f'Z_{m}' for m in self.moduli)

    @cached_property
    def weights(self) -> np.ndarray:
        """Place values of the mixed-radix index"""
        w = [1]
        for m in self.moduli[:-1]:
            w.append(w[-1] * m)
        return np.array(w, dtype=np.int64)

    @cached_property
    def residue_table(self) -> np.ndarray:
        """Array of shape (|H|, r): row i holds the residues of element i"""
        idx = np.arange(self.order, dtype=np.int64)
        moduli = np.array(self.moduli, dtype=np.int64)
        return (idx[:, None] // self.weights[None, :]) % moduli[None, :]

    def element(self, value: ElementLike) -> GroupElement:
        """
        Coerce value into a validated GroupElement

        Args:
            value: GroupElement, residue sequence, or a plain integer (rank 1 only)

        Returns:
            GroupElement with residues reduced
        """
        if isinstance(value, GroupElement):
            residues = value.residues
        elif isinstance(value, (int, np.integer)):
            if self.rank != 1:
                raise DimensionError(self.rank, 1)
            residues = (int(value),)
        else:
            residues = tuple(int(x) for x in value)

        if len(residues) != self.rank:
            raise DimensionError(self.rank, len(residues))
        return GroupElement(tuple(x % m for x, m in zip(residues, self.moduli)))

    def index_of(self, value: ElementLike) -> int:
        """Mixed-radix index of an element"""
        element = self.element(value)
        return int(sum(x * int(w) for x, w in zip(element.residues, self.weights)))

    def from_index(self, index: int) -> GroupElement:
        if not 0 <= index < self.order:
            raise ArgumentError(f"index {index} out of range for {self}")
        return GroupElement(tuple(int(x) for x in self.residue_table[index]))

    def elements(self) -> List[GroupElement]:
        return [GroupElement(tuple(int(x) for x in row)) for row in self.residue_table]

    def unit(self, i: int) -> GroupElement:
        """e_i: 1 at position i, 0 elsewhere"""
        return GroupElement(tuple(1 if j == i else 0 for j in range(self.rank)))

    def encode_rows(self, rows: np.ndarray) -> np.ndarray:
        """Indices of a batch of residue rows (already reduced)"""
        return rows @ self.weights

    def translation(self, index: int) -> np.ndarray:
        """Table t with t[x] = index of x + element(index)"""
        moduli = np.array(self.moduli, dtype=np.int64)
        shifted = (self.residue_table + self.residue_table[index]) % moduli
        return self.encode_rows(shifted)

    def negation(self) -> np.ndarray:
        """Table t with t[x] = index of -x"""
        moduli = np.array(self.moduli, dtype=np.int64)
        return self.encode_rows((-self.residue_table) % moduli)

    def add_index(self, i: int, j: int) -> int:
        return self.index_of(tuple(int(x) for x in self.residue_table[i] + self.residue_table[j]))


def add(spec: GroupSpec, a: ElementLike, b: ElementLike) -> GroupElement:
    """Componentwise (a_i + b_i) mod m_i"""
    a, b = spec.element(a), spec.element(b)
    return GroupElement(tuple((x + y) % m for x, y, m in zip(a, b, spec.moduli)))


def neg(spec: GroupSpec, a: ElementLike) -> GroupElement:
    a = spec.element(a)
    return GroupElement(tuple((m - x) % m for x, m in zip(a, spec.moduli)))


def zero(spec: GroupSpec) -> GroupElement:
    return GroupElement((0,) * spec.rank)


def elem_order(spec: GroupSpec, a: ElementLike) -> int:
    """Least t >= 1 with t*a = 0, i.e. lcm of m_i / gcd(a_i, m_i)"""
    a = spec.element(a)
    order = 1
    for x, m in zip(a, spec.moduli):
        component = m // gcd(x, m)
        order = order * component // gcd(order, component)
    return order


def _indices(spec: GroupSpec, elements: Iterable[ElementLike]) -> List[int]:
    return [spec.index_of(e) for e in elements]


def _closure_size(spec: GroupSpec, generator_indices: Sequence[int]) -> int:
    tables = [spec.translation(s) for s in generator_indices]
    seen = np.zeros(spec.order, dtype=bool)
    seen[0] = True
    frontier = np.array([0], dtype=np.int64)
    while frontier.size:
        reached = np.unique(np.concatenate([t[frontier] for t in tables]))
        frontier = reached[~seen[reached]]
        seen[frontier] = True
    return int(seen.sum())


def generates(spec: GroupSpec, S: Iterable[ElementLike]) -> bool:
    """True iff the additive closure of S is all of H"""
    indices = _indices(spec, S)
    if not indices:
        raise ArgumentError("generates() needs a nonempty set", invariant='nonempty')
    return _closure_size(spec, indices) == spec.order


@dataclass(frozen=True)
class GroupEndoMap:
    """A total function H -> H stored as an image table over indices"""

    images: Tuple[int, ...]
    is_automorphism: bool = False

    def __call__(self, index: int) -> int:
        return self.images[index]

    def __len__(self):
        return len(self.images)

    def apply(self, spec: GroupSpec, element: ElementLike) -> GroupElement:
        return spec.from_index(self.images[spec.index_of(element)])

    def compose(self, other: 'GroupEndoMap') -> 'GroupEndoMap':
        """self after other"""
        return GroupEndoMap(
            tuple(self.images[i] for i in other.images),
            self.is_automorphism and other.is_automorphism,
        )

    def inverse(self) -> 'GroupEndoMap':
        if not self.is_bijective():
            raise PreconditionError("map is not bijective", invariant='bijective')
        inv = [0] * len(self.images)
        for i, y in enumerate(self.images):
            inv[y] = i
        return GroupEndoMap(tuple(inv), self.is_automorphism)

    def is_bijective(self) -> bool:
        return len(set(self.images)) == len(self.images)

    def is_additive(self, spec: GroupSpec) -> bool:
        """Check f(x+y) = f(x)+f(y) on all |H|^2 pairs"""
        f = np.array(self.images, dtype=np.int64)
        for y in range(spec.order):
            if not np.array_equal(f[spec.translation(y)], spec.translation(int(f[y]))[f]):
                return False
        return True


@dataclass(frozen=True)
class NotExtendable:
    """Assignment s_j -> images_j has no additive extension"""

    witness: Tuple[GroupElement, GroupElement]
    message: str = field(default='')

    def __bool__(self):
        return False


def _extend(spec: GroupSpec, gens: Sequence[int], imgs: Sequence[int],
            gen_tables: Sequence[np.ndarray]) -> Union[GroupEndoMap, Tuple[int, int]]:
    """Index-level extend_map; returns a map or the (x, s) witness indices"""
    img_tables = [spec.translation(img) for img in imgs]
    f = np.full(spec.order, -1, dtype=np.int64)
    f[0] = 0
    queue = deque([0])
    while queue:
        x = queue.popleft()
        for table, img_table in zip(gen_tables, img_tables):
            y = table[x]
            if f[y] < 0:
                f[y] = img_table[f[x]]
                queue.append(int(y))

    if (f < 0).any():
        raise PreconditionError("the generator set does not generate the group", invariant='generating')

    for s, table, img_table in zip(gens, gen_tables, img_tables):
        mismatch = np.nonzero(f[table] != img_table[f])[0]
        if mismatch.size:
            return int(mismatch[0]), s

    images = tuple(int(y) for y in f)
    return GroupEndoMap(images, is_automorphism=len(set(images)) == spec.order)


def extend_map(spec: GroupSpec, S: Sequence[ElementLike],
               images: Sequence[ElementLike]) -> Union[GroupEndoMap, NotExtendable]:
    """
    Extend s_j -> images_j to an additive map on H

    The map is defined along a BFS spanning tree from 0 and then checked with
    f(x+s) = f(x) + f(s) for every x in H and s in S, which is enough for
    additivity because S generates H.

    Args:
        spec: Group
        S: Ordered generating set
        images: Ordered images, one per element of S

    Returns:
        GroupEndoMap on success, NotExtendable with an (x, s) witness otherwise
    """
    gens = _indices(spec, S)
    imgs = _indices(spec, images)
    if len(gens) != len(imgs):
        raise ArgumentError(f"{len(gens)} generators but {len(imgs)} images")
    if not gens:
        raise ArgumentError("extend_map() needs a nonempty generator set", invariant='nonempty')

    result = _extend(spec, gens, imgs, [spec.translation(s) for s in gens])
    if isinstance(result, GroupEndoMap):
        return result

    x, s = result
    return NotExtendable(
        witness=(spec.from_index(x), spec.from_index(s)),
        message=f"f({spec.from_index(x)}+{spec.from_index(s)}) != f({spec.from_index(x)})+f({spec.from_index(s)})",
    )


def validate_connection_indices(spec: GroupSpec, indices: Sequence[int]):
    """Raise PreconditionError unless the indices form a valid connection set"""
    if not indices:
        raise PreconditionError("connection set is empty", invariant='nonempty')
    members = set(indices)
    if 0 in members:
        raise PreconditionError("connection set contains the identity 0", invariant='zero_excluded')
    negation = spec.negation()
    for s in sorted(members):
        if int(negation[s]) not in members:
            raise PreconditionError(
                f"connection set is not inverse-closed: {spec.from_index(s)} present, "
                f"{spec.from_index(int(negation[s]))} missing",
                invariant='inverse_closed',
            )
    if _closure_size(spec, sorted(members)) != spec.order:
        raise PreconditionError("connection set does not generate the group", invariant='generating')


def _pair_up(spec: GroupSpec, indices: Sequence[int]) -> List[Tuple[int, int]]:
    """Split S into {s, -s} pairs, ordered by the smaller index"""
    negation = spec.negation()
    pairs, seen = [], set()
    for s in sorted(indices):
        if s in seen:
            continue
        t = int(negation[s])
        seen.update((s, t))
        pairs.append((s, t))
    return pairs


def aut_stabilizing(spec: GroupSpec, S: Iterable[ElementLike],
                    max_connection_set: int = MAX_CONNECTION_SET) -> List[GroupEndoMap]:
    """
    Enumerate Aut(H, S) = {f in Aut(H) : f(S) = S}

    Candidates are bijections of S that send each pair {s, -s} onto another
    pair of the same shape and element order, with f(-s) = -f(s). Each is
    passed to the additive extension and kept when the result is bijective.

    Args:
        spec: Group
        S: Inverse-closed generating set not containing 0
        max_connection_set: Cap on |S|

    Returns:
        Automorphisms sorted lexicographically by image table
    """
    indices = sorted(set(_indices(spec, S)))
    validate_connection_indices(spec, indices)
    if len(indices) > max_connection_set:
        raise ResourceError('connection_set_size', max_connection_set, len(indices))

    pairs = _pair_up(spec, indices)
    orders = {s: elem_order(spec, spec.from_index(s)) for s in indices}
    gens = [s for pair in pairs for s in dict.fromkeys(pair)]
    tables = [spec.translation(s) for s in gens]

    found = {}
    candidates = 0

    def assign(depth: int, used: frozenset, mapping: dict):
        nonlocal candidates
        if depth == len(pairs):
            candidates += 1
            result = _extend(spec, gens, [mapping[s] for s in gens], tables)
            if isinstance(result, GroupEndoMap) and result.is_automorphism:
                found[result.images] = result
            return

        s, minus_s = pairs[depth]
        for t, minus_t in pairs:
            if t in used or (s == minus_s) != (t == minus_t) or orders[s] != orders[t]:
                continue
            options = [(t, minus_t)] if t == minus_t else [(t, minus_t), (minus_t, t)]
            for image, minus_image in options:
                mapping[s], mapping[minus_s] = image, minus_image
                assign(depth + 1, used | {t}, mapping)
        mapping.pop(s, None)
        mapping.pop(minus_s, None)

    assign(0, frozenset(), {})
    logger.debug("Aut(H,S) for %s: %d candidates, %d automorphisms", spec, candidates, len(found))
    return [found[key] for key in sorted(found)]
