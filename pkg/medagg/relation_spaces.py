#!/usr/bin/env python3
'''
Spaces of binary relations on a finite ground set, embedded as median
join-semilattices: total preorders (join = transitive closure of the union),
weak orders (the dual image of total preorders), weak and strict generalized
tournaments, and the lattices of reflexive and irreflexive relations (join =
union, meet = intersection).  Also Kemeny distance, Condorcet winners, top
sets, the bracket notation used for printing total preorders, and the
isomorphisms between paired spaces.

A relation R on a ground set of size k is encoded as an integer whose bit
a * k + b is set when a R b.  Element indices follow a canonical enumeration:
    total preorders: ordered set partitions (best block first), sorted as
        tuples of sorted tuples.
    other flavors: increasing integer value of the off-diagonal bits read in
        row-major order, filtered by the flavor's conditions.
'''

import enum
import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple, Union

import numpy as np

from medagg.defaults import get_limit, use_bracket_notation
from medagg.errors import (BadProfile, InternalInvariantViolation,
                           NoLinearOrders, SizeLimit, WrongFlavor)
from medagg.order_core import MedianContext, build_context, build_poset

DEFAULT_NAMES = 'abcdefghijklmnopqrstuvwxyz'


class Flavor(enum.Enum):
    TOTAL_PREORDER = 'total-preorder'
    WEAK_ORDER = 'weak-order'
    WEAK_TOURNAMENT = 'weak-tournament'
    STRICT_TOURNAMENT = 'strict-tournament'
    REFLEXIVE = 'reflexive'
    IRREFLEXIVE = 'irreflexive'

    @classmethod
    def parse(cls, text: str) -> 'Flavor':
        key = text.strip().lower().replace('_', '-')
        for flavor in cls:
            if flavor.value == key:
                return flavor
        raise ValueError('unknown flavor: {0}'.format(text))


REFLEXIVE_FLAVORS = (Flavor.TOTAL_PREORDER, Flavor.WEAK_TOURNAMENT,
                     Flavor.REFLEXIVE)
LATTICE_FLAVORS = (Flavor.REFLEXIVE, Flavor.IRREFLEXIVE)
PAIRED_FLAVORS = {
    Flavor.TOTAL_PREORDER: Flavor.WEAK_ORDER,
    Flavor.WEAK_TOURNAMENT: Flavor.STRICT_TOURNAMENT,
    Flavor.REFLEXIVE: Flavor.IRREFLEXIVE,
}


@dataclass(frozen=True)
class GroundSet:
    '''
    The alternatives.  names holds one display label per alternative.
    '''
    m: int
    names: Tuple[str, ...]

    def __post_init__(self):
        assert self.m >= 2, 'a ground set needs at least two alternatives'
        assert len(self.names) == self.m, 'one name per alternative'
        assert len(set(self.names)) == self.m, 'names must be distinct'

    @classmethod
    def default(cls, m: int) -> 'GroundSet':
        return cls(m, tuple(DEFAULT_NAMES[:m]))

    @classmethod
    def from_names(cls, names: Union[str, Sequence[str]]) -> 'GroundSet':
        '''
        Builds a ground set from a comma separated string or a sequence.
        '''
        if isinstance(names, str):
            names = [name.strip() for name in names.split(',') if name.strip()]
        return cls(len(names), tuple(names))

    def index(self, name: str) -> int:
        try:
            return self.names.index(name)
        except ValueError:
            raise BadProfile('unknown alternative {0!r}'.format(name))

    @property
    def single_char(self) -> bool:
        return all(len(name) == 1 for name in self.names)


@dataclass(frozen=True)
class BinRel:
    '''
    A binary relation given by its m x m boolean matrix.
    '''
    mat: np.ndarray
    flavor: Optional[Flavor] = None

    @property
    def m(self) -> int:
        return self.mat.shape[0]

    @property
    def code(self) -> int:
        return int(encode(self.mat))

    def pairs(self) -> List[Tuple[int, int]]:
        return [(int(a), int(b)) for a, b in np.argwhere(self.mat)]

    @classmethod
    def from_pairs(cls, m: int, pairs, flavor: Optional[Flavor] = None,
                   add_diagonal: bool = False) -> 'BinRel':
        mat = np.zeros((m, m), dtype=bool)
        for a, b in pairs:
            mat[a, b] = True
        if add_diagonal:
            np.fill_diagonal(mat, True)
        return cls(mat, flavor)

    @classmethod
    def from_code(cls, m: int, code: int,
                  flavor: Optional[Flavor] = None) -> 'BinRel':
        return cls(decode(np.array([code]), m)[0], flavor)


@dataclass(frozen=True)
class RelationSpace:
    '''
    An enumerated family of relations embedded as a MedianContext.

    Attributes:
        flavor: which family of relations.
        ground: the ground set.
        codes: integer encoding of each element, in canonical order.
        mats: (k, m, m) boolean matrices of the elements.
        ctx: the MedianContext (element i of ctx is codes[i]).
        blocks: for total preorders and weak orders, the ordered partition
            of each element into indifference classes, best first.
    '''
    flavor: Flavor
    ground: GroundSet
    codes: np.ndarray
    mats: np.ndarray
    ctx: MedianContext
    blocks: Optional[List[Tuple[Tuple[int, ...], ...]]] = None

    @property
    def n(self) -> int:
        return len(self.codes)

    @property
    def m(self) -> int:
        return self.ground.m

    def element(self, i: int) -> BinRel:
        return BinRel(self.mats[i], self.flavor)

    def index_of(self, relation: Union[BinRel, int]) -> int:
        '''
        Canonical index of a relation (or of its integer code).

        Raises:
            BadProfile: when the relation is not an element of the space.
        '''
        code = relation.code if isinstance(relation, BinRel) else relation
        found = lookup(self.codes, np.array([code]))
        if found[0] < 0:
            raise BadProfile('relation {0} is not a {1}'.format(
                code, self.flavor.value))
        return int(found[0])


def encode(mats: np.ndarray) -> np.ndarray:
    '''
    Integer codes of a stack of m x m boolean matrices.
    '''
    mats = np.asarray(mats, dtype=bool)
    m = mats.shape[-1]
    weights = np.left_shift(1, np.arange(m * m, dtype=np.int64))
    flat = mats.reshape(mats.shape[:-2] + (m * m,))
    return (flat * weights).sum(axis=-1)


def decode(codes: np.ndarray, m: int) -> np.ndarray:
    codes = np.asarray(codes, dtype=np.int64)
    bits = (codes[..., None] >> np.arange(m * m, dtype=np.int64)) & 1
    return bits.astype(bool).reshape(codes.shape + (m, m))


def lookup(codes: np.ndarray, queries: np.ndarray) -> np.ndarray:
    '''
    Indices of queries within codes, -1 for codes not present.
    '''
    order = np.argsort(codes, kind='stable')
    ordered = codes[order]
    queries = np.asarray(queries, dtype=np.int64)
    pos = np.clip(np.searchsorted(ordered, queries), 0, len(codes) - 1)
    found = ordered[pos] == queries
    return np.where(found, order[pos], -1)


def transitive_closure(mats: np.ndarray) -> np.ndarray:
    '''
    Warshall closure of a stack of boolean relation matrices.
    '''
    closure = np.array(mats, dtype=bool, copy=True)
    m = closure.shape[-1]
    for t in range(m):
        closure |= closure[..., :, t, None] & closure[..., None, t, :]
    return closure


def ordered_set_partitions(items: List[int]) -> Iterator[List[List[int]]]:
    '''
    Generates every ordered set partition of items as a list of blocks.
    '''
    if not items:
        yield []
        return

    rest, last = items[:-1], items[-1]
    for smaller in ordered_set_partitions(rest):
        for i, block in enumerate(smaller):
            yield smaller[:i] + [block + [last]] + smaller[i + 1:]
        for i in range(len(smaller) + 1):
            yield smaller[:i] + [[last]] + smaller[i:]


def _preorder_matrix(blocks, m: int) -> np.ndarray:
    level = np.empty(m, dtype=np.int64)
    for rank, block in enumerate(blocks):
        level[list(block)] = rank
    return level[:, None] <= level[None, :]


def _ground_limit(flavor: Flavor) -> Tuple[str, int]:
    if flavor in (Flavor.TOTAL_PREORDER, Flavor.WEAK_ORDER):
        return 'max_ground_preorder', get_limit('max_ground_preorder')
    if flavor in (Flavor.WEAK_TOURNAMENT, Flavor.STRICT_TOURNAMENT):
        return 'max_ground_tournament', get_limit('max_ground_tournament')
    return 'max_ground_relation', get_limit('max_ground_relation')


def _off_diagonal_codes(m: int, reflexive: bool,
                        connected: bool) -> np.ndarray:
    pairs = [(a, b) for a in range(m) for b in range(m) if a != b]
    values = np.arange(2**len(pairs), dtype=np.int64)
    positions = np.array([a * m + b for a, b in pairs], dtype=np.int64)
    bits = (values[:, None] >> np.arange(len(pairs), dtype=np.int64)) & 1
    codes = (bits << positions[None, :]).sum(axis=1)
    if reflexive:
        codes |= sum(1 << (a * m + a) for a in range(m))
    if connected:
        mats = decode(codes, m)
        keep = (mats | np.swapaxes(mats, -1, -2) |
                np.eye(m, dtype=bool)).all(axis=(-1, -2))
        codes = codes[keep]
    return codes


def _union_table(codes: np.ndarray) -> np.ndarray:
    table = lookup(codes, (codes[:, None] | codes[None, :]).ravel())
    table = table.reshape(len(codes), len(codes))
    if (table < 0).any():
        raise InternalInvariantViolation('space is not closed under union')
    return table


def _intersection_table(codes: np.ndarray) -> np.ndarray:
    table = lookup(codes, (codes[:, None] & codes[None, :]).ravel())
    table = table.reshape(len(codes), len(codes))
    if (table < 0).any():
        raise InternalInvariantViolation(
            'space is not closed under intersection')
    return table


def _closure_join_table(codes: np.ndarray, m: int) -> np.ndarray:
    mats = decode(codes, m)
    union = mats[:, None] | mats[None, :]
    closed = encode(transitive_closure(union))
    table = lookup(codes, closed.ravel()).reshape(len(codes), len(codes))
    if (table < 0).any():
        raise InternalInvariantViolation(
            'transitive closure of a union of total preorders left the space')
    return table


def _inclusion(codes: np.ndarray) -> np.ndarray:
    return (codes[:, None] & ~codes[None, :]) == 0


def enumerate_space(flavor: Flavor,
                    ground: Union[GroundSet, int],
                    allow_large: bool = False,
                    verbose: bool = False) -> RelationSpace:
    '''
    Enumerates a relation space in canonical order and builds its context.

    Arguments:
        flavor: the family of relations.
        ground: a GroundSet, or the number of alternatives.
        allow_large: lift the configured ground-set and element limits.
        verbose: whether to print progress.

    Returns:
        space: the RelationSpace.

    Raises:
        SizeLimit: when the ground set exceeds the limit for the flavor.
    '''
    if isinstance(flavor, str):
        flavor = Flavor.parse(flavor)
    if isinstance(ground, int):
        ground = GroundSet.default(ground)
    m = ground.m

    what, limit = _ground_limit(flavor)
    if m > limit and not allow_large:
        raise SizeLimit('ground set for {0}'.format(flavor.value), m, limit)

    if flavor == Flavor.WEAK_ORDER:
        return weak_order_space(
            enumerate_space(Flavor.TOTAL_PREORDER, ground, allow_large,
                            verbose), verbose=verbose)

    if verbose:
        print('\nEnumerating Space\n-----------------------')
        print('\tflavor:', flavor.value, '| ground:', ','.join(ground.names))

    blocks = None
    join = None
    meet = None
    if flavor == Flavor.TOTAL_PREORDER:
        blocks = sorted(
            tuple(tuple(sorted(block))
                  for block in partition)
            for partition in ordered_set_partitions(list(range(m))))
        mats = np.array([_preorder_matrix(b, m) for b in blocks])
        codes = encode(mats)
        join = _closure_join_table(codes, m)
    else:
        reflexive = flavor in REFLEXIVE_FLAVORS
        connected = flavor in (Flavor.WEAK_TOURNAMENT,
                               Flavor.STRICT_TOURNAMENT)
        codes = _off_diagonal_codes(m, reflexive, connected)
        mats = decode(codes, m)
        join = _union_table(codes)
        if flavor in LATTICE_FLAVORS:
            meet = _intersection_table(codes)

    if verbose:
        print('\telements:', len(codes))

    poset = build_poset(len(codes),
                        _inclusion(codes),
                        labels=[_render(flavor, ground, mat, blocks_i)
                                for mat, blocks_i in zip(
                                    mats, blocks or [None] * len(codes))])
    ctx = build_context(poset,
                        join=join,
                        meet=meet,
                        allow_large=allow_large,
                        verbose=verbose)
    return RelationSpace(flavor=flavor,
                         ground=ground,
                         codes=codes,
                         mats=mats,
                         ctx=ctx,
                         blocks=blocks)


def weak_order_space(space: RelationSpace,
                     verbose: bool = False) -> RelationSpace:
    '''
    The weak orders (asymmetric parts of the total preorders) ordered by
    reverse inclusion.  Element i is the strict part of element i of space.

    Raises:
        WrongFlavor: unless space holds total preorders.
    '''
    if space.flavor != Flavor.TOTAL_PREORDER:
        raise WrongFlavor(Flavor.TOTAL_PREORDER.value, space.flavor.value)

    mats = space.mats & ~np.swapaxes(space.mats, -1, -2)
    codes = encode(mats)
    poset = build_poset(len(codes), _inclusion(codes).T,
                        labels=space.ctx.poset.labels)
    ctx = build_context(poset,
                        join=np.array(space.ctx.join),
                        meet=np.array(space.ctx.meet),
                        allow_large=True,
                        verbose=verbose)
    return RelationSpace(flavor=Flavor.WEAK_ORDER,
                         ground=space.ground,
                         codes=codes,
                         mats=mats,
                         ctx=ctx,
                         blocks=space.blocks)


def join_rel(space: RelationSpace, r1: int, r2: int) -> int:
    '''
    The join of two elements: transitive closure of the union for total
    preorders, union for the other flavors (intersection of strict parts
    for weak orders).
    '''
    return int(space.ctx.join[r1, r2])


def two_block_irreducibles(space: RelationSpace) -> np.ndarray:
    '''
    The total preorders with exactly two indifference classes.

    Raises:
        WrongFlavor: unless space holds total preorders.
    '''
    if space.flavor != Flavor.TOTAL_PREORDER:
        raise WrongFlavor(Flavor.TOTAL_PREORDER.value, space.flavor.value)
    return np.array([i for i, b in enumerate(space.blocks) if len(b) == 2],
                    dtype=np.int64)


def kemeny_distance(r1: Union[BinRel, np.ndarray],
                    r2: Union[BinRel, np.ndarray]) -> int:
    '''
    Size of the symmetric difference of two relations as ordered-pair sets.
    '''
    a = r1.mat if isinstance(r1, BinRel) else np.asarray(r1, dtype=bool)
    b = r2.mat if isinstance(r2, BinRel) else np.asarray(r2, dtype=bool)
    assert a.shape == b.shape, 'relations must share the ground set'
    return int((a != b).sum())


def kemeny_matrix(space: RelationSpace) -> np.ndarray:
    '''
    Kemeny distances between all pairs of elements of a space.
    '''
    flat = space.mats.reshape(space.n, -1)
    return (flat[:, None, :] != flat[None, :, :]).sum(axis=-1)


@dataclass(frozen=True)
class IsoMap:
    '''
    An order and join isomorphism between paired spaces.  forward[i] is the
    index in target of the image of element i of source.
    '''
    source: RelationSpace
    target: RelationSpace
    forward: np.ndarray

    def __call__(self, i: int) -> int:
        return int(self.forward[i])


def iso_maps(space: RelationSpace, verbose: bool = False) -> IsoMap:
    '''
    The bijection to the paired space: weak to strict tournaments and
    reflexive to irreflexive relations by removing the diagonal, total
    preorders to weak orders by taking the asymmetric part.  The map is
    checked to preserve the order and the join.

    Raises:
        WrongFlavor: for flavors without a pair.
        InternalInvariantViolation: when the map is not an isomorphism.
    '''
    if space.flavor not in PAIRED_FLAVORS:
        raise WrongFlavor('/'.join(f.value for f in PAIRED_FLAVORS),
                          space.flavor.value)

    if space.flavor == Flavor.TOTAL_PREORDER:
        target = weak_order_space(space, verbose=verbose)
        images = target.codes
    else:
        target = enumerate_space(PAIRED_FLAVORS[space.flavor],
                                 space.ground,
                                 allow_large=True,
                                 verbose=verbose)
        images = encode(space.mats & ~np.eye(space.m, dtype=bool))

    forward = lookup(target.codes, images)
    if (forward < 0).any() or len(np.unique(forward)) != target.n or \
            target.n != space.n:
        raise InternalInvariantViolation('paired spaces are not in bijection')
    if not (target.ctx.leq[np.ix_(forward, forward)] == space.ctx.leq).all():
        raise InternalInvariantViolation('bijection does not preserve order')
    if not (forward[space.ctx.join] == target.ctx.join[np.ix_(
            forward, forward)]).all():
        raise InternalInvariantViolation('bijection does not preserve join')
    return IsoMap(space, target, forward)


def majority_threshold(n: int) -> int:
    '''
    Smallest coalition size in the majority family: floor((n + 2) / 2).
    '''
    return (n + 2) // 2


def strict_tally(mats: np.ndarray) -> np.ndarray:
    '''
    tally[a, b] counts the relations in which a is strictly above b.
    '''
    mats = np.asarray(mats, dtype=bool)
    return (mats & ~np.swapaxes(mats, -1, -2)).sum(axis=0)


def condorcet_winner(ground: GroundSet, profile) -> Optional[int]:
    '''
    The alternative strictly preferred to every other by a majority
    coalition, or None.

    Arguments:
        ground: the ground set.
        profile: a sequence of BinRel (or m x m boolean matrices).

    Returns:
        the index of the winner in ground, or None.
    '''
    mats = np.array([r.mat if isinstance(r, BinRel) else r for r in profile],
                    dtype=bool)
    assert mats.shape[1:] == (ground.m, ground.m), \
        'relations must share the ground set'
    tally = strict_tally(mats)
    wins = tally >= majority_threshold(len(mats))
    np.fill_diagonal(wins, True)
    winners = np.flatnonzero(wins.all(axis=1))
    if winners.size:
        return int(winners[0])
    return None


def top_set(r: Union[BinRel, np.ndarray]) -> np.ndarray:
    '''
    Alternatives related to every alternative: {a : a R b for all b}.
    '''
    mat = r.mat if isinstance(r, BinRel) else np.asarray(r, dtype=bool)
    return np.flatnonzero(mat.all(axis=1))


def linear_orders(space: RelationSpace) -> np.ndarray:
    '''
    Indices of the antisymmetric elements of a total preorder space.

    Raises:
        WrongFlavor: unless space holds total preorders.
        NoLinearOrders: when none exist.
    '''
    if space.flavor != Flavor.TOTAL_PREORDER:
        raise WrongFlavor(Flavor.TOTAL_PREORDER.value, space.flavor.value)
    off = ~np.eye(space.m, dtype=bool)
    symmetric = space.mats & np.swapaxes(space.mats, -1, -2) & off
    found = np.flatnonzero(~symmetric.any(axis=(-1, -2)))
    if found.size == 0:
        raise NoLinearOrders()
    return found


def permutation_action(space: RelationSpace, perm: Sequence[int]) -> np.ndarray:
    '''
    The element permutation induced by a permutation of the ground set:
    a R b becomes perm[a] R' perm[b].
    '''
    perm = np.asarray(perm, dtype=np.int64)
    assert sorted(perm.tolist()) == list(range(space.m)), \
        'not a permutation of the ground set'
    inverse = np.argsort(perm)
    moved = space.mats[:, inverse][:, :, inverse]
    images = lookup(space.codes, encode(moved))
    if (images < 0).any():
        raise InternalInvariantViolation('space is not closed under relabeling')
    return images


def ground_permutations(m: int) -> Iterator[Tuple[int, ...]]:
    return itertools.permutations(range(m))


def _render(flavor: Flavor, ground: GroundSet, mat: np.ndarray,
            blocks=None) -> str:
    names = ground.names
    if blocks is not None and ground.single_char:
        parts = []
        for block in blocks:
            word = ''.join(names[a] for a in block)
            parts.append(word if len(block) == 1 else '[' + word + ']')
        return ''.join(parts)
    if blocks is not None:
        return ' > '.join(' ~ '.join(names[a] for a in block)
                          for block in blocks)
    pairs = [(a, b) for a, b in np.argwhere(mat) if a != b]
    return '{' + ','.join('({0},{1})'.format(names[a], names[b])
                          for a, b in pairs) + '}'


def render(space: RelationSpace, element: int,
           bracket: Optional[bool] = None) -> str:
    '''
    Display string of an element: bracket notation for total preorders and
    weak orders (x[yz] puts x above the indifferent pair y, z), otherwise the
    list of off-diagonal pairs.

    Arguments:
        bracket: use bracket notation where the flavor allows it.  Defaults
            to bracket_notation in the [output] config section.
    '''
    if bracket is None:
        bracket = use_bracket_notation()
    blocks = space.blocks[element] \
        if bracket and space.blocks is not None else None
    return _render(space.flavor, space.ground, space.mats[element], blocks)


def _parse_bracket(ground: GroundSet, text: str) -> List[List[int]]:
    blocks = []
    current = None
    for char in text:
        if char.isspace():
            continue
        if char == '[':
            if current is not None:
                raise BadProfile('nested brackets in {0!r}'.format(text))
            current = []
        elif char == ']':
            if not current:
                raise BadProfile('empty block in {0!r}'.format(text))
            blocks.append(current)
            current = None
        elif current is not None:
            current.append(ground.index(char))
        else:
            blocks.append([ground.index(char)])
    if current is not None:
        raise BadProfile('unclosed bracket in {0!r}'.format(text))
    used = sorted(a for block in blocks for a in block)
    if used != list(range(ground.m)):
        raise BadProfile('{0!r} does not rank every alternative exactly '
                         'once'.format(text))
    return blocks


def _parse_pairs(ground: GroundSet, text: str) -> List[Tuple[int, int]]:
    body = text.strip()[1:-1].strip()
    if not body:
        return []
    pairs = []
    for chunk in body.replace(' ', '').split('),'):
        chunk = chunk.strip('()')
        if chunk.count(',') != 1:
            raise BadProfile('malformed pair {0!r}'.format(chunk))
        a, b = chunk.split(',')
        pairs.append((ground.index(a), ground.index(b)))
    return pairs


def relation_from_pairs(space: RelationSpace, pairs) -> int:
    '''
    Index of the relation holding exactly the given pairs (the diagonal is
    added for reflexive flavors and removed for irreflexive ones).
    '''
    mat = BinRel.from_pairs(space.m, pairs).mat
    if space.flavor in REFLEXIVE_FLAVORS:
        np.fill_diagonal(mat, True)
    else:
        np.fill_diagonal(mat, False)
    return space.index_of(int(encode(mat)))


def parse(space: RelationSpace, text: Union[str, int]) -> int:
    '''
    Index of the element written as text.  Accepted forms: a canonical
    index, bracket notation or a linear-order word for total preorders and
    weak orders (x[yz], xyz), and a pair list {(a,b),(b,c)} for any flavor.

    Raises:
        BadProfile: when the text names no element of the space.
    '''
    if isinstance(text, (int, np.integer)):
        if not 0 <= text < space.n:
            raise BadProfile('index {0} out of range'.format(text))
        return int(text)
    text = text.strip()
    if text.isdigit():
        return parse(space, int(text))
    if text.startswith('{'):
        return relation_from_pairs(space, _parse_pairs(space.ground, text))
    if space.blocks is None:
        raise BadProfile('{0!r} is not a pair list'.format(text))
    blocks = _parse_bracket(space.ground, text)
    target = tuple(tuple(sorted(block)) for block in blocks)
    for i, b in enumerate(space.blocks):
        if b == target:
            return i
    raise BadProfile('{0!r} is not an element of the space'.format(text))


def space_summary(space: RelationSpace) -> Dict[str, object]:
    ctx = space.ctx
    return {
        'flavor': space.flavor.value,
        'ground': list(space.ground.names),
        'elements': space.n,
        'top': render(space, ctx.top),
        'meet_irreducibles': [render(space, e) for e in ctx.meet_irr],
        'coatoms': [render(space, e) for e in ctx.coatoms],
        'structure': ctx.report.as_dict(),
    }
