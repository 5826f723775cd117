#!/usr/bin/env python3
'''
Aggregation rules on median join-semilattices and relation spaces.

Agents are numbered 0 .. n-1 and coalitions are integer bitmasks over them.
A rule is described by a RuleSpec (sponsorship families, co-majority, quota
rules, dictators, constants, generalized and strict Condorcet-Kemeny rules,
lattice filter rules, majority rule on relation lattices, tabulated rules and
minimal monotonic retracts) and can always be tabulated into a dense
RuleTable over every profile.

All evaluation is vectorized over a (K, n) array of profiles; evaluate()
handles a single profile.

Useage:
    space = enumerate_space(Flavor.TOTAL_PREORDER, 3)
    table = tabulate(space, co_majority_rule(), n=3)
    family = extract_filters(space.ctx, table)
'''

import itertools
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import numpy as np

from medagg.defaults import get_limit, get_random
from medagg.errors import (BadProfile, InternalInvariantViolation, SizeLimit,
                           WrongFlavor)
from medagg.order_core import MedianContext, distance_rows, require_median
from medagg.relation_spaces import (LATTICE_FLAVORS, RelationSpace, decode,
                                    linear_orders, majority_threshold,
                                    transitive_closure)

Target = Union[MedianContext, RelationSpace]

VARIANTS = ('sponsorship', 'co-majority', 'quota', 'generalized-ck',
            'strict-ck', 'lattice-filter', 'lattice-dual-filter',
            'majority-lattice', 'dictator', 'constant', 'tabulated', 'retract')


def _ctx(target: Target) -> MedianContext:
    if isinstance(target, RelationSpace):
        return target.ctx
    return target


def _space(target: Target, what: str) -> RelationSpace:
    if not isinstance(target, RelationSpace):
        raise WrongFlavor('a relation space', 'an abstract context ({0})'.
                          format(what))
    return target


# Coalitions
# -----------------------


def coalition(members: Iterable[int]) -> int:
    mask = 0
    for i in members:
        mask |= 1 << int(i)
    return mask


def members(mask: int) -> List[int]:
    return [i for i in range(mask.bit_length()) if mask >> i & 1]


def popcount(mask: int) -> int:
    return bin(mask).count('1')


def all_coalitions(n: int) -> np.ndarray:
    return np.arange(2**n, dtype=np.int64)


def coalition_sizes(n: int) -> np.ndarray:
    coalitions = all_coalitions(n)
    return ((coalitions[:, None] >> np.arange(max(n, 1))) & 1).sum(axis=1)


def majority_coalitions(n: int) -> List[int]:
    '''
    The majority family: every coalition of at least floor((n + 2) / 2)
    agents, by increasing bitmask.
    '''
    q = majority_threshold(n)
    return [S for S in range(2**n) if popcount(S) >= q]


def _minimal(n: int, sets: Iterable[int]) -> Tuple[int, ...]:
    kept = []
    for S in sorted(set(int(s) for s in sets), key=lambda s: (popcount(s), s)):
        assert 0 <= S < 2**n, 'coalition outside the agent set'
        if not any(b & ~S == 0 for b in kept):
            kept.append(S)
    return tuple(sorted(kept))


@dataclass(frozen=True)
class OrderFilterN:
    '''
    An upward-closed family of coalitions, stored by its basis of minimal
    members.  The empty basis is the empty filter; the basis (0,) holds every
    coalition.
    '''
    n: int
    basis: Tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, 'basis', _minimal(self.n, self.basis))

    @classmethod
    def from_members(cls, n: int, sets: Iterable[int]) -> 'OrderFilterN':
        return cls(n, tuple(sets))

    @classmethod
    def threshold(cls, n: int, q: int) -> 'OrderFilterN':
        '''
        {S : |S| >= q}; empty when q > n.
        '''
        return cls(n, tuple(S for S in range(2**n) if popcount(S) == q))

    @classmethod
    def principal(cls, n: int, S: int) -> 'OrderFilterN':
        return cls(n, (S,))

    def contains(self, S: int) -> bool:
        return any(b & ~S == 0 for b in self.basis)

    def indicator(self) -> np.ndarray:
        '''
        Membership of every coalition 0 .. 2**n - 1.
        '''
        coalitions = all_coalitions(self.n)
        if not self.basis:
            return np.zeros(len(coalitions), dtype=bool)
        basis = np.array(self.basis, dtype=np.int64)
        return ((basis[None, :] & ~coalitions[:, None]) == 0).any(axis=1)

    def members(self) -> List[int]:
        return [int(S) for S in np.flatnonzero(self.indicator())]

    @property
    def is_empty(self) -> bool:
        return not self.basis

    @property
    def is_trivial(self) -> bool:
        return 0 in self.basis

    @property
    def is_nontrivial_proper(self) -> bool:
        return not self.is_empty and not self.is_trivial

    def quota(self) -> Optional[int]:
        '''
        q when the filter equals {S : |S| >= q} for some q <= n, else None.
        '''
        if self.is_empty:
            return None
        q = min(popcount(b) for b in self.basis)
        if np.array_equal(self.indicator(), coalition_sizes(self.n) >= q):
            return q
        return None

    def is_transversal(self) -> bool:
        return all(a & b for a, b in itertools.combinations_with_replacement(
            self.basis, 2))


@dataclass(frozen=True)
class FilterFamily:
    '''
    One order filter per meet-irreducible element.
    '''
    n: int
    filters: Dict[int, OrderFilterN] = field(default_factory=dict)

    def check(self, ctx: MedianContext):
        assert sorted(self.filters) == sorted(int(m) for m in ctx.meet_irr), \
            'family must be keyed by the meet-irreducible elements'
        assert all(f.n == self.n for f in self.filters.values()), \
            'all filters must share the agent count'

    def __eq__(self, other) -> bool:
        if not isinstance(other, FilterFamily):
            return NotImplemented
        return self.n == other.n and self.filters == other.filters


@dataclass
class RuleTable:
    '''
    Dense aggregation rule: outcomes[x_0, ..., x_{n-1}] is the outcome of the
    profile (x_0, ..., x_{n-1}).
    '''
    n: int
    k: int
    outcomes: np.ndarray

    def __post_init__(self):
        self.outcomes = np.asarray(self.outcomes, dtype=np.int64)
        assert self.outcomes.shape == (self.k,) * self.n, \
            'outcome table must have one axis of length k per agent'
        assert self.outcomes.size == 0 or (
            self.outcomes.min() >= 0 and self.outcomes.max() < self.k), \
            'outcomes must be elements of the space'

    def __call__(self, profile: Sequence[int]) -> int:
        return int(self.outcomes[tuple(profile)])

    @property
    def flat(self) -> np.ndarray:
        return self.outcomes.ravel()

    def profiles(self) -> np.ndarray:
        return all_profiles(self.k, self.n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RuleTable):
            return NotImplemented
        return self.n == other.n and self.k == other.k and \
            np.array_equal(self.outcomes, other.outcomes)


def all_profiles(k: int, n: int) -> np.ndarray:
    '''
    Every profile in C order, as a (k**n, n) array.
    '''
    return np.array(np.unravel_index(np.arange(k**n), (k,) * n)).T.reshape(
        -1, n)


@dataclass(frozen=True)
class TieBreak:
    '''
    A linear order on the elements: order[0] is the least (preferred) one.
    '''
    order: Tuple[int, ...]

    def __post_init__(self):
        order = tuple(int(e) for e in self.order)
        assert sorted(order) == list(range(len(order))), \
            'tiebreak must be a permutation of the elements'
        object.__setattr__(self, 'order', order)

    @classmethod
    def default(cls, k: int) -> 'TieBreak':
        return cls(tuple(range(k)))

    @classmethod
    def reverse(cls, k: int) -> 'TieBreak':
        return cls(tuple(range(k - 1, -1, -1)))

    @classmethod
    def shuffled(cls, k: int, rng: np.random.Generator) -> 'TieBreak':
        return cls(tuple(rng.permutation(k)))

    @property
    def position(self) -> np.ndarray:
        return np.argsort(np.array(self.order))


@dataclass
class RuleSpec:
    '''
    A structured aggregation rule.  Only the fields used by the variant are
    set.

    Attributes:
        variant: one of VARIANTS.
        family: FilterFamily of a sponsorship rule.
        quotas: an int, or a dict from meet-irreducible to quota.
        tiebreak: TieBreak of a Condorcet-Kemeny rule (None is the canonical
            index order).
        coalitions: OrderFilterN of a lattice filter rule.
        offsets: dict from coalition to offset element of a lattice filter
            rule; missing coalitions get the default offset.
        mode: 'basis' iterates over basis coalitions only, 'closure' over the
            full upward closure with inherited offsets.
        agent: dictator index.
        element: constant outcome.
        table: RuleTable of a tabulated rule.
        inner: RuleSpec wrapped by a retract.
        name: optional display name.
    '''
    variant: str
    family: Optional[FilterFamily] = None
    quotas: Optional[Union[int, Dict[int, int]]] = None
    tiebreak: Optional[TieBreak] = None
    coalitions: Optional[OrderFilterN] = None
    offsets: Optional[Dict[int, int]] = None
    mode: str = 'basis'
    agent: Optional[int] = None
    element: Optional[int] = None
    table: Optional[RuleTable] = None
    inner: Optional['RuleSpec'] = None
    name: Optional[str] = None

    def __post_init__(self):
        assert self.variant in VARIANTS, 'unknown rule variant {0}'.format(
            self.variant)
        assert self.mode in ('basis', 'closure'), 'unknown filter mode'

    def describe(self) -> str:
        if self.name:
            return self.name
        if self.variant == 'dictator':
            return 'dictator-{0}'.format(self.agent)
        if self.variant == 'constant':
            return 'constant-{0}'.format(self.element)
        if self.variant == 'quota' and isinstance(self.quotas, int):
            return 'quota-{0}'.format(self.quotas)
        if self.variant == 'retract':
            return 'retract({0})'.format(self.inner.describe())
        return self.variant


# Rule constructors
# -----------------------


def co_majority_rule() -> RuleSpec:
    return RuleSpec('co-majority')


def dictator(i: int) -> RuleSpec:
    return RuleSpec('dictator', agent=int(i))


def constant(x: int) -> RuleSpec:
    return RuleSpec('constant', element=int(x))


def sponsorship_rule(family: FilterFamily, name: Optional[str] = None):
    return RuleSpec('sponsorship', family=family, name=name)


def quota_rule(quotas: Union[int, Dict[int, int]],
               name: Optional[str] = None) -> RuleSpec:
    return RuleSpec('quota', quotas=quotas, name=name)


def generalized_ck_rule(tiebreak: Optional[TieBreak] = None) -> RuleSpec:
    return RuleSpec('generalized-ck', tiebreak=tiebreak)


def strict_ck_rule(tiebreak: Optional[TieBreak] = None) -> RuleSpec:
    return RuleSpec('strict-ck', tiebreak=tiebreak)


def lattice_filter(coalitions: OrderFilterN,
                   offsets: Optional[Dict[int, int]] = None,
                   dual: bool = False,
                   mode: str = 'basis') -> RuleSpec:
    '''
    Lattice filter rule.  The primal form intersects (union of the
    coalition's relations) with its offset added; the dual form unites
    (intersection of the coalition's relations) cut down to its offset.
    '''
    variant = 'lattice-dual-filter' if dual else 'lattice-filter'
    return RuleSpec(variant, coalitions=coalitions, offsets=offsets, mode=mode)


def majority_lattice_rule() -> RuleSpec:
    return RuleSpec('majority-lattice')


def tabulated(table: RuleTable, name: Optional[str] = None) -> RuleSpec:
    return RuleSpec('tabulated', table=table, name=name)


def retract(inner: RuleSpec) -> RuleSpec:
    return RuleSpec('retract', inner=inner)


def empty_family(ctx: MedianContext, n: int) -> FilterFamily:
    '''
    Every filter empty: the constant-top rule.
    '''
    return FilterFamily(n, {int(m): OrderFilterN(n) for m in ctx.meet_irr})


def quota_family(ctx: MedianContext, n: int,
                 quotas: Union[int, Dict[int, int]]) -> FilterFamily:
    '''
    F_m = {S : |S| >= q_m}.  quotas is a single q or a dict keyed by the
    meet-irreducible elements.
    '''
    filters = {}
    for m in ctx.meet_irr:
        m = int(m)
        q = quotas if isinstance(quotas, (int, np.integer)) else quotas[m]
        assert q >= 0, 'quotas must be nonnegative'
        filters[m] = OrderFilterN.threshold(n, int(q))
    return FilterFamily(n, filters)


def collegial_family(ctx: MedianContext, n: int,
                     colleges: Union[int, Dict[int, int]]) -> FilterFamily:
    '''
    F_m = {S : S_m is a subset of S}.  colleges is one coalition for every m
    or a dict keyed by the meet-irreducible elements.
    '''
    filters = {}
    for m in ctx.meet_irr:
        m = int(m)
        S = colleges if isinstance(colleges, (int, np.integer)) \
            else colleges[m]
        filters[m] = OrderFilterN.principal(n, int(S))
    return FilterFamily(n, filters)


# Evaluation
# -----------------------


def _check_profiles(ctx: MedianContext, profiles,
                    n: Optional[int] = None) -> np.ndarray:
    profiles = np.asarray(profiles, dtype=np.int64)
    if profiles.ndim == 1:
        profiles = profiles[None, :]
    if profiles.ndim != 2 or profiles.shape[1] == 0:
        raise BadProfile('a profile needs at least one agent')
    if n is not None and profiles.shape[1] != n:
        raise BadProfile('expected {0} agents, got {1}'.format(
            n, profiles.shape[1]))
    if profiles.size and (profiles.min() < 0 or profiles.max() >= ctx.n):
        raise BadProfile('profile names an element outside the space')
    return profiles


def evaluate(target: Target, rule: RuleSpec, profile: Sequence[int]) -> int:
    '''
    Outcome of a rule at one profile.

    Arguments:
        target: a MedianContext or a RelationSpace (required by the strict
            Condorcet-Kemeny, lattice filter and retract variants).
        rule: the RuleSpec.
        profile: one element index per agent.

    Raises:
        BadProfile: for a malformed profile.
    '''
    return int(evaluate_many(target, rule, [list(profile)])[0])


def evaluate_many(target: Target, rule: RuleSpec, profiles) -> np.ndarray:
    '''
    Outcomes of a rule at each row of a (K, n) profile array.
    '''
    ctx = _ctx(target)
    n = rule.table.n if rule.variant == 'tabulated' else (
        rule.family.n if rule.variant == 'sponsorship' else None)
    profiles = _check_profiles(ctx, profiles, n)
    K, n = profiles.shape
    variant = rule.variant

    if variant == 'constant':
        assert 0 <= rule.element < ctx.n, 'constant outside the space'
        return np.full(K, rule.element, dtype=np.int64)
    if variant == 'dictator':
        if not 0 <= rule.agent < n:
            raise BadProfile('dictator {0} is not one of {1} agents'.format(
                rule.agent, n))
        return profiles[:, rule.agent].copy()
    if variant == 'co-majority':
        return co_majority_many(ctx, profiles)
    if variant == 'sponsorship':
        return sponsorship_many(ctx, rule.family, profiles)
    if variant == 'quota':
        return sponsorship_many(ctx, quota_family(ctx, n, rule.quotas),
                                profiles)
    if variant == 'generalized-ck':
        return _ck_many(ctx, profiles, rule.tiebreak, None)
    if variant == 'strict-ck':
        space = _space(target, 'strict-ck')
        return _ck_many(ctx, profiles, rule.tiebreak, linear_orders(space))
    if variant in ('lattice-filter', 'lattice-dual-filter'):
        space = _space(target, variant)
        return lattice_filter_many(space, rule.coalitions, rule.offsets,
                                   profiles,
                                   dual=variant == 'lattice-dual-filter',
                                   mode=rule.mode)
    if variant == 'majority-lattice':
        space = _space(target, variant)
        return lattice_filter_many(space,
                                   OrderFilterN(n, majority_coalitions(n)),
                                   None,
                                   profiles,
                                   dual=True)
    if variant == 'tabulated':
        if rule.table.k != ctx.n:
            raise BadProfile('table was built for a space of {0} elements'.
                             format(rule.table.k))
        return rule.table.outcomes[tuple(profiles.T)]
    if variant == 'retract':
        space = _space(target, variant)
        inner = evaluate_many(space, rule.inner, profiles)
        unique, inverse = np.unique(inner, return_inverse=True)
        images = np.array(
            [_retract_element(space, int(e)) for e in unique], dtype=np.int64)
        return images[inverse.ravel()]
    raise AssertionError('unhandled variant {0}'.format(variant))


def _meet_step(ctx: MedianContext, acc: np.ndarray, terms: np.ndarray,
               profiles: np.ndarray, active: Optional[np.ndarray] = None):
    met = ctx.meet[acc, terms]
    bad = met < 0
    if active is not None:
        bad &= active
        met = np.where(active, met, acc)
    if bad.any():
        raise InternalInvariantViolation(
            'meet undefined at profile {0}'.format(
                profiles[np.argmax(bad)].tolist()))
    return met


def co_majority(ctx: MedianContext, profile: Sequence[int]) -> int:
    '''
    The meet, over the majority coalitions, of the join of each coalition's
    proposals.  On (x, x, y) it returns x; on odd n it is the metric median.
    '''
    return int(co_majority_many(ctx, [list(profile)])[0])


def co_majority_many(ctx: MedianContext, profiles) -> np.ndarray:
    require_median(ctx)
    profiles = _check_profiles(ctx, profiles)
    n = profiles.shape[1]
    acc = None
    for S in majority_coalitions(n):
        agents = members(S)
        joined = profiles[:, agents[0]]
        for i in agents[1:]:
            joined = ctx.join[joined, profiles[:, i]]
        acc = joined if acc is None else _meet_step(ctx, acc, joined,
                                                    profiles)
    return acc


def coalition_masks(ctx: MedianContext, profiles: np.ndarray) -> np.ndarray:
    '''
    masks[p, j] is the coalition {i : x_i <= m_j} at profile p, with m_j the
    j-th meet-irreducible element.
    '''
    below = ctx.leq[:, ctx.meet_irr][profiles]
    weights = np.left_shift(1, np.arange(profiles.shape[1], dtype=np.int64))
    return (below * weights[None, :, None]).sum(axis=1)


def sponsorship_eval(ctx: MedianContext, family: FilterFamily,
                     profile: Sequence[int]) -> int:
    '''
    The meet of the meet-irreducibles m whose coalition {i : x_i <= m} is in
    F_m (top when none qualifies).

    Raises:
        InternalInvariantViolation: when that meet does not exist, which only
            happens for families that are not total.
    '''
    return int(sponsorship_many(ctx, family, [list(profile)])[0])


def sponsorship_many(ctx: MedianContext, family: FilterFamily,
                     profiles) -> np.ndarray:
    family.check(ctx)
    profiles = _check_profiles(ctx, profiles, family.n)
    masks = coalition_masks(ctx, profiles)
    acc = np.full(len(profiles), ctx.top, dtype=np.int64)
    for j, m in enumerate(ctx.meet_irr):
        qualifies = family.filters[int(m)].indicator()[masks[:, j]]
        acc = _meet_step(ctx, acc, np.full_like(acc, m), profiles, qualifies)
    return acc


def extract_filters(ctx: MedianContext, table: RuleTable) -> FilterFamily:
    '''
    The locally m-winning coalitions of a tabulated rule: F_m holds every
    {i : x_i <= m} realized at a profile whose outcome is below m.  For
    strategy-proof rules sponsorship_eval over the result reproduces the
    table.
    '''
    assert table.k == ctx.n, 'table does not match the context'
    profiles = table.profiles()
    masks = coalition_masks(ctx, profiles)
    outcome_below = ctx.leq[:, ctx.meet_irr][table.flat]
    filters = {}
    for j, m in enumerate(ctx.meet_irr):
        winning = np.unique(masks[outcome_below[:, j], j])
        filters[int(m)] = OrderFilterN.from_members(table.n, winning)
    return FilterFamily(table.n, filters)


@dataclass
class FamilyClassification:
    quorum_system: bool
    inclusive: bool
    collegial: bool
    collegial_sets: Dict[int, int]
    outcome_biased: bool
    weakly_neutral: bool
    quota: bool
    quotas: Dict[int, Optional[int]]

    def tags(self) -> List[str]:
        return [
            key for key in ('quorum_system', 'inclusive', 'collegial',
                            'outcome_biased', 'weakly_neutral', 'quota')
            if getattr(self, key)
        ]

    def as_dict(self) -> dict:
        return {
            'tags': self.tags(),
            'collegial_sets': {
                str(m): members(S) for m, S in self.collegial_sets.items()
            },
            'quotas': {str(m): q for m, q in self.quotas.items()},
        }


def classify_family(ctx: MedianContext,
                    family: FilterFamily) -> FamilyClassification:
    '''
    Shape of a sponsorship family.

    Tags:
        quorum_system: every filter is transversal.
        inclusive: the basis members together cover every agent.
        collegial: some nonempty filter has a nonempty coalition common to
            all its members (collegial_sets maps each such m to it).
        outcome_biased: some filter is empty.
        weakly_neutral: F_m equals F_m' whenever m ^ m' exists.
        quota: every filter is {S : |S| >= q_m} (quotas maps m to q_m).
    '''
    family.check(ctx)
    n = family.n
    filters = family.filters
    covered = 0
    colleges = {}
    quotas = {}
    for m, f in filters.items():
        for b in f.basis:
            covered |= b
        if not f.is_empty:
            common = 2**n - 1
            for b in f.basis:
                common &= b
            if common:
                colleges[m] = common
        quotas[m] = f.quota()

    neutral = all(filters[int(a)] == filters[int(b)]
                  for a, b in itertools.combinations(ctx.meet_irr, 2)
                  if ctx.meet[a, b] >= 0)

    return FamilyClassification(
        quorum_system=all(f.is_transversal() for f in filters.values()),
        inclusive=covered == 2**n - 1,
        collegial=bool(colleges),
        collegial_sets=colleges,
        outcome_biased=any(f.is_empty for f in filters.values()),
        weakly_neutral=neutral,
        quota=all(q is not None for q in quotas.values()),
        quotas=quotas)


def is_total_family(ctx: MedianContext, family: FilterFamily) -> bool:
    '''
    Whether the sponsorship meet exists at every profile.  On a median
    context this fails exactly when two meet-irreducibles without a common
    lower bound have filters holding disjoint coalitions.
    '''
    require_median(ctx)
    family.check(ctx)
    for a, b in itertools.combinations(ctx.meet_irr, 2):
        if ctx.meet[a, b] >= 0:
            continue
        for S in family.filters[int(a)].basis:
            for T in family.filters[int(b)].basis:
                if S & T == 0:
                    return False
    return True


# Condorcet-Kemeny rules
# -----------------------


def _ck_many(ctx: MedianContext, profiles: np.ndarray,
             tiebreak: Optional[TieBreak],
             allowed: Optional[np.ndarray]) -> np.ndarray:
    require_median(ctx)
    if tiebreak is None:
        tiebreak = TieBreak.default(ctx.n)
    assert len(tiebreak.order) == ctx.n, 'tiebreak does not match the space'
    position = tiebreak.position
    candidates = np.arange(ctx.n) if allowed is None else np.asarray(allowed)

    out = np.empty(len(profiles), dtype=np.int64)
    chunk = max(1, 2**22 // max(1, ctx.n * profiles.shape[1]))
    for start in range(0, len(profiles), chunk):
        block = profiles[start:start + chunk]
        rows = distance_rows(ctx, block.ravel()).reshape(
            block.shape + (ctx.n,))[:, :, candidates]
        remote = rows.sum(axis=1)
        best = remote == remote.min(axis=1, keepdims=True)
        score = np.where(best, position[candidates][None, :], ctx.n)
        out[start:start + chunk] = candidates[np.argmin(score, axis=1)]
    return out


def generalized_ck(ctx: MedianContext, profile: Sequence[int],
                   tiebreak: Optional[TieBreak] = None) -> int:
    '''
    The tiebreak-least element minimizing the summed covering-graph distance
    to the profile.
    '''
    profiles = _check_profiles(ctx, [list(profile)])
    return int(_ck_many(ctx, profiles, tiebreak, None)[0])


def strict_ck(space: RelationSpace, profile: Sequence[int],
              tiebreak: Optional[TieBreak] = None) -> int:
    '''
    As generalized_ck, with the minimum taken over linear orders only.

    Raises:
        WrongFlavor: unless space holds total preorders.
    '''
    candidates = linear_orders(space)
    profiles = _check_profiles(space.ctx, [list(profile)])
    return int(_ck_many(space.ctx, profiles, tiebreak, candidates)[0])


# Lattice filter rules and retracts
# -----------------------


def _lattice_space(space: RelationSpace) -> RelationSpace:
    if space.flavor not in LATTICE_FLAVORS:
        raise WrongFlavor('/'.join(f.value for f in LATTICE_FLAVORS),
                          space.flavor.value)
    return space


def _closure_offsets(coalitions: OrderFilterN, offsets: Dict[int, int],
                     dual: bool) -> Dict[int, int]:
    '''
    Offset codes for every member of the upward closure.  A member without an
    explicit offset inherits the union (or, for the dual form, the
    intersection) of the offsets of the basis coalitions it contains.
    '''
    full = {}
    for S in coalitions.members():
        if S in offsets:
            full[S] = offsets[S]
            continue
        inherited = None
        for b in coalitions.basis:
            if b & ~S == 0:
                code = offsets[b]
                if inherited is None:
                    inherited = code
                else:
                    inherited = inherited & code if dual else inherited | code
        full[S] = inherited
    return full


def lattice_filter_rule(space: RelationSpace,
                        coalitions: OrderFilterN,
                        offsets: Optional[Dict[int, int]],
                        profile: Sequence[int],
                        dual: bool = False,
                        mode: str = 'basis') -> int:
    '''
    Lattice filter rule on a relation lattice.

    Arguments:
        space: reflexive or irreflexive relations.
        coalitions: the order filter F.
        offsets: offset element R_S per coalition; missing basis coalitions
            default to the bottom (primal form) or top (dual form).
        profile: one element index per agent.
        dual: False for the intersection over S in F of
            ((union of R_i, i in S) union R_S); True for the union over S in
            F of ((intersection of R_i, i in S) intersection R_S).
        mode: 'basis' or 'closure' (see RuleSpec).

    Raises:
        WrongFlavor: for other relation spaces.
    '''
    profiles = np.asarray([list(profile)], dtype=np.int64)
    return int(
        lattice_filter_many(space, coalitions, offsets, profiles, dual,
                            mode)[0])


def lattice_filter_many(space: RelationSpace,
                        coalitions: OrderFilterN,
                        offsets: Optional[Dict[int, int]],
                        profiles,
                        dual: bool = False,
                        mode: str = 'basis') -> np.ndarray:
    _lattice_space(space)
    profiles = _check_profiles(space.ctx, profiles, coalitions.n)
    ctx = space.ctx
    codes = space.codes
    top = int(codes[ctx.top])
    bottom = int(codes[ctx.bottom])
    default = top if dual else bottom

    offsets = offsets or {}
    base = {
        S: int(codes[offsets[S]]) if S in offsets else default
        for S in coalitions.basis
    }
    explicit = {S: int(codes[e]) for S, e in offsets.items()}
    explicit.update(base)
    if mode == 'closure':
        terms = _closure_offsets(coalitions, explicit, dual)
    else:
        terms = base

    proposals = codes[profiles]
    result = np.full(len(profiles), bottom if dual else top, dtype=np.int64)
    for S, offset in sorted(terms.items()):
        agents = members(S)
        if dual:
            combined = np.full(len(profiles), top, dtype=np.int64)
            for i in agents:
                combined &= proposals[:, i]
            result |= combined & offset
        else:
            combined = np.full(len(profiles), bottom, dtype=np.int64)
            for i in agents:
                combined |= proposals[:, i]
            result &= combined | offset

    return _codes_to_indices(space, result)


def _codes_to_indices(space: RelationSpace, result: np.ndarray) -> np.ndarray:
    unique, inverse = np.unique(result, return_inverse=True)
    images = np.array([space.index_of(int(c)) for c in unique],
                      dtype=np.int64)
    return images[inverse.ravel()]


def has_asymmetric_cycle(mats: np.ndarray) -> np.ndarray:
    '''
    Whether each relation has a cycle passing through an asymmetric pair.
    '''
    mats = np.asarray(mats, dtype=bool)
    strict = mats & ~np.swapaxes(mats, -1, -2)
    closure = transitive_closure(mats)
    return (strict & np.swapaxes(closure, -1, -2)).any(axis=(-1, -2))


def _retract_element(space: RelationSpace, element: int) -> int:
    m = space.m
    limit = get_limit('max_ground_retract')
    if m > limit:
        raise SizeLimit('ground set for retracts', m, limit)

    code = int(space.codes[element])
    pairs = [a * m + b for a in range(m) for b in range(m)
             if a != b and code >> (a * m + b) & 1]
    for size in range(len(pairs) + 1):
        deletions = sorted(
            sum(1 << bit for bit in chosen)
            for chosen in itertools.combinations(pairs, size))
        deletions = np.array(deletions, dtype=np.int64)
        candidates = code & ~deletions
        acyclic = ~has_asymmetric_cycle(decode(candidates, m))
        if acyclic.any():
            return space.index_of(int(candidates[np.argmax(acyclic)]))
    raise InternalInvariantViolation('no acyclic sub-relation found')


def minimal_monotonic_retract(space: RelationSpace, inner: RuleSpec,
                              profile: Sequence[int]) -> int:
    '''
    Evaluates inner, then deletes as few off-diagonal pairs as possible so
    that no cycle passes through an asymmetric pair.  Among deletion sets of
    the same size the one with the smallest pair-set encoding wins.

    Raises:
        WrongFlavor: unless space is a relation lattice.
        SizeLimit: above the configured retract ground-set size.
    '''
    _lattice_space(space)
    return _retract_element(space, evaluate(space, inner, profile))


# Tabulation and corpora
# -----------------------


def tabulate(target: Target, rule: RuleSpec, n: int,
             allow_large: bool = False,
             verbose: bool = False) -> RuleTable:
    '''
    Dense table of a rule over every profile of n agents.

    Raises:
        SizeLimit: when k**n exceeds the exhaustive profile limit.
    '''
    ctx = _ctx(target)
    if rule.variant == 'tabulated':
        return rule.table
    total = ctx.n**n
    limit = get_limit('exhaustive_max_profiles')
    if total > limit and not allow_large:
        raise SizeLimit('profile cube', total, limit)
    if verbose:
        print('\tTabulating', rule.describe(), 'over', total, 'profiles')
    outcomes = evaluate_many(target, rule, all_profiles(ctx.n, n))
    return RuleTable(n, ctx.n, outcomes.reshape((ctx.n,) * n))


def random_table(ctx: MedianContext, n: int,
                 rng: np.random.Generator) -> RuleTable:
    '''
    Uniformly random outcome at every profile.
    '''
    return RuleTable(n, ctx.n, rng.integers(0, ctx.n, size=(ctx.n,) * n))


def anti_dictator_table(ctx: MedianContext, n: int) -> RuleTable:
    '''
    Each profile goes to the first element farthest from agent 0's proposal.
    '''
    far = np.argmax(distance_rows(ctx, np.arange(ctx.n)), axis=1)
    profiles = all_profiles(ctx.n, n)
    return RuleTable(n, ctx.n, far[profiles[:, 0]].reshape((ctx.n,) * n))


def _random_filter(n: int, rng: np.random.Generator) -> OrderFilterN:
    kind = rng.random()
    if kind < 0.15:
        return OrderFilterN(n)
    sizes = coalition_sizes(n)
    if kind < 0.75:
        pool = np.flatnonzero(sizes >= majority_threshold(n))
    else:
        pool = np.flatnonzero(sizes >= 1)
    chosen = pool[rng.random(len(pool)) < 0.4]
    if chosen.size == 0:
        chosen = pool[rng.integers(0, len(pool), size=1)]
    return OrderFilterN.from_members(n, chosen)


def random_sponsorship_family(ctx: MedianContext,
                              n: int,
                              rng: np.random.Generator,
                              attempts: Optional[int] = None) -> FilterFamily:
    '''
    A random total sponsorship family.  Filters are drawn at random and
    families whose meet is not total are discarded.

    Raises:
        InternalInvariantViolation: when no total family is found within
            attempts draws.
    '''
    if attempts is None:
        attempts = get_random('family_attempts')
    for _ in range(attempts):
        family = FilterFamily(
            n, {int(m): _random_filter(n, rng) for m in ctx.meet_irr})
        if is_total_family(ctx, family):
            return family
    raise InternalInvariantViolation(
        'no total family found in {0} attempts'.format(attempts))


def structured_rules(target: Target, n: int) -> List[RuleSpec]:
    '''
    The named rule corpus: co-majority, every dictator, the constant top
    and constant first element, unanimity quota, two mixed quota rules
    and the generalized Condorcet-Kemeny rule.
    '''
    ctx = _ctx(target)
    q_maj = majority_threshold(n)
    irr = [int(m) for m in ctx.meet_irr]
    mixed_a = {m: (q_maj if j % 2 == 0 else n) for j, m in enumerate(irr)}
    mixed_b = {m: (n if j < len(irr) // 2 else q_maj) for j, m in enumerate(irr)}
    rules = [co_majority_rule()]
    rules += [dictator(i) for i in range(n)]
    rules += [
        constant(ctx.top),
        constant(0),
        quota_rule(n, name='quota-unanimity'),
        quota_rule(mixed_a, name='quota-mixed-alternating'),
        quota_rule(mixed_b, name='quota-mixed-split'),
        generalized_ck_rule(),
    ]
    return rules
