#!/usr/bin/env python3
'''
Axiom predicates and verification harnesses for aggregation rules.

Every predicate runs exhaustively over a dense RuleTable (RuleSpecs are
tabulated first) and returns a CheckReport.  A failed check always carries a
witness that recheck() can confirm through the public evaluation functions
alone.

Strategy-proofness is checked against the canonical locally unimodal
preferences: three indifference classes {x}, I(x, w) minus x, and the rest.
That domain is rich, and a rule is strategy-proof on it exactly when it is
monotonic with respect to median betweenness.

Useage:
    space = enumerate_space(Flavor.TOTAL_PREORDER, 3)
    report = is_strategy_proof(space, co_majority_rule(), n=3)
    report = verify_sp_equivalence(space, n=3)
'''

import itertools
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple, Union

import numpy as np

from medagg.agg_rules import (RuleSpec, RuleTable, Target, TieBreak,
                              all_profiles, anti_dictator_table,
                              co_majority_many, co_majority_rule, coalition,
                              evaluate, evaluate_many, extract_filters,
                              generalized_ck_rule, has_asymmetric_cycle,
                              is_total_family, lattice_filter,
                              majority_coalitions, majority_lattice_rule,
                              OrderFilterN,
                              quota_family, random_sponsorship_family,
                              random_table, retract, sponsorship_many,
                              sponsorship_rule, structured_rules, tabulate)
from medagg.defaults import get_limit, get_random, get_seed
from medagg.errors import (InternalInvariantViolation, NotMedian, SizeLimit,
                           WrongFlavor)
from medagg.order_core import (MedianContext, betweenness_cube,
                               distance_rows, interval, median,
                               median_cube, rank_valuation_defect,
                               require_median)
from medagg.relation_spaces import (LATTICE_FLAVORS, Flavor, RelationSpace,
                                    condorcet_winner, enumerate_space,
                                    ground_permutations, kemeny_matrix,
                                    permutation_action, top_set)

Rule = Union[RuleSpec, RuleTable]

AXIOMS = ('inclusive', 'anonymous', 'idempotent', 'sovereign',
          'neutral_groundset', 'neutral_elements', 'bi_idempotent',
          'basic_pareto', 'weak_condorcet', 'monotonic_iia', 'iia')
PREDICATES = ('strategy_proof', 'bmu_monotonic', 'monotonic_m_independent',
              'm_independent', 'isotonic', 'monotonic_j_independent')
CHECKS = PREDICATES + AXIOMS

RELATION_AXIOMS = ('neutral_groundset', 'basic_pareto', 'weak_condorcet',
                   'monotonic_iia', 'iia')
NEUTRAL_ELEMENTS_MAX = 7


def _plain(obj):
    if isinstance(obj, dict):
        return {str(k): _plain(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_plain(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return _plain(obj.tolist())
    if isinstance(obj, (np.bool_, bool)):
        return bool(obj)
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


@dataclass
class CheckReport:
    '''
    Outcome of one predicate or harness.

    Attributes:
        name: the predicate.
        verdict: whether the property holds.
        witness: counterexample when the verdict is False.
        expected: the verdict the mathematics predicts.
        rule: display name of the rule checked, if any.
        details: counts and sub-verdicts.
    '''
    name: str
    verdict: bool
    witness: Optional[dict] = None
    expected: bool = True
    rule: Optional[str] = None
    details: dict = field(default_factory=dict)

    def __post_init__(self):
        self.verdict = bool(self.verdict)
        assert self.verdict or self.witness is not None, \
            'a failed check needs a witness'

    @property
    def as_expected(self) -> bool:
        return self.verdict == self.expected

    def as_dict(self) -> dict:
        return _plain({
            'name': self.name,
            'verdict': self.verdict,
            'expected': self.expected,
            'rule': self.rule,
            'witness': self.witness,
            'details': self.details,
        })


@dataclass
class OutcomePreference:
    '''
    A preorder over the elements of a context: rel[a, b] is True when a is
    weakly preferred to b.
    '''
    ctx: MedianContext
    rel: np.ndarray

    def __post_init__(self):
        self.rel = np.asarray(self.rel, dtype=bool)
        k = self.ctx.n
        assert self.rel.shape == (k, k), 'preference must be k x k'
        assert self.rel.diagonal().all(), 'preference must be reflexive'
        r = self.rel.astype(np.int32)
        assert not ((r @ r > 0) & ~self.rel).any(), \
            'preference must be transitive'

    @classmethod
    def from_levels(cls, ctx: MedianContext,
                    levels: np.ndarray) -> 'OutcomePreference':
        levels = np.asarray(levels)
        return cls(ctx, levels[:, None] >= levels[None, :])

    @property
    def strict(self) -> np.ndarray:
        return self.rel & ~self.rel.T

    @property
    def maxima(self) -> np.ndarray:
        return np.flatnonzero(self.rel.all(axis=1))

    @property
    def top(self) -> Optional[int]:
        maxima = self.maxima
        return int(maxima[0]) if len(maxima) == 1 else None

    def upper_contour(self, y: int) -> np.ndarray:
        return np.flatnonzero(self.rel[:, y])


# Helpers
# -----------------------


def _ctx(target: Target) -> MedianContext:
    if isinstance(target, RelationSpace):
        return target.ctx
    return target


def _relation_space(target: Target, which: str) -> RelationSpace:
    if not isinstance(target, RelationSpace):
        raise WrongFlavor('a relation space',
                          'an abstract context ({0})'.format(which))
    return target


def _rule_name(rule: Rule) -> str:
    if isinstance(rule, RuleSpec):
        return rule.describe()
    return 'table'


def as_table(target: Target, rule: Rule, n: Optional[int] = None,
             allow_large: bool = False) -> RuleTable:
    '''
    The dense table of a rule.  RuleSpecs need the number of agents n.
    '''
    ctx = _ctx(target)
    if isinstance(rule, RuleTable):
        assert rule.k == ctx.n, 'table does not match the space'
        return rule
    if n is None:
        if rule.variant == 'tabulated':
            return rule.table
        raise ValueError('n is required to tabulate {0}'.format(
            rule.describe()))
    return tabulate(target, rule, n, allow_large=allow_large)


def _outcome(target: Target, rule: Rule, profile: Sequence[int]) -> int:
    if isinstance(rule, RuleTable):
        return rule(profile)
    return evaluate(target, rule, profile)


def _agent_view(table: RuleTable, i: int) -> np.ndarray:
    '''
    (k, R) array: view[a, r] is the outcome with agent i at a and the other
    agents at the r-th profile of the rest.
    '''
    return np.moveaxis(table.outcomes, i, 0).reshape(table.k, -1)


def _profile_at(table: RuleTable, i: int, a: int, r: int) -> List[int]:
    rest = np.unravel_index(int(r), (table.k,) * (table.n - 1))
    profile = [int(v) for v in rest]
    profile.insert(i, int(a))
    return profile


def _replace(profile: Sequence[int], i: int, y: int) -> List[int]:
    changed = [int(v) for v in profile]
    changed[i] = int(y)
    return changed


def _first(mask: np.ndarray) -> Optional[Tuple[int, ...]]:
    if not mask.any():
        return None
    return tuple(int(v) for v in np.unravel_index(np.argmax(mask), mask.shape))


def _canonical_levels(ctx: MedianContext) -> np.ndarray:
    '''
    levels[x, w, z] of element z in the canonical preference with top x
    built on w: 2 for x, 1 inside I(x, w), 0 elsewhere.
    '''
    k = ctx.n
    e = np.arange(k)
    levels = (median_cube(ctx) == e[None, None, :]).astype(np.int8)
    levels[e, :, e] = 2
    return levels


# Preferences
# -----------------------


def canonical_lu_preorder(ctx: MedianContext, x: int,
                          y: int) -> OutcomePreference:
    '''
    Three indifference classes: {x} on top, the rest of the median interval
    I(x, y) in the middle, everything else at the bottom.

    Raises:
        NotMedian: for non-median contexts.
    '''
    require_median(ctx)
    levels = np.zeros(ctx.n, dtype=np.int8)
    levels[interval(ctx, x, y)] = 1
    levels[x] = 2
    return OutcomePreference.from_levels(ctx, levels)


def _inside_intervals(ctx: MedianContext, t: int) -> np.ndarray:
    e = np.arange(ctx.n)
    return median(ctx, t, e[:, None], e[None, :]) == e[None, :]


def is_locally_unimodal(ctx: MedianContext,
                        pref: OutcomePreference) -> CheckReport:
    '''
    A unique maximum t, and no y strictly above any z of I(t, y) other
    than t.
    '''
    require_median(ctx)
    name = 'locally_unimodal'
    maxima = pref.maxima
    if len(maxima) != 1:
        return CheckReport(name, False, {'maxima': maxima})
    t = int(maxima[0])
    inside = _inside_intervals(ctx, t)
    inside[:, t] = False
    found = _first(inside & pref.strict)
    if found is not None:
        y, z = found
        return CheckReport(name, False, {'top': t, 'y': y, 'z': z})
    return CheckReport(name, True, details={'top': t})


def is_rich(ctx: MedianContext,
            prefs: Sequence[OutcomePreference]) -> CheckReport:
    '''
    Every preference is locally unimodal and, for all x and y, one of them
    has top x and upper contour set at y equal to I(x, y).
    '''
    require_median(ctx)
    name = 'rich'
    k = ctx.n
    covered = np.zeros((k, k), dtype=bool)
    for index, pref in enumerate(prefs):
        local = is_locally_unimodal(ctx, pref)
        if not local.verdict:
            return CheckReport(name, False, {
                'preference': index,
                'locally_unimodal': local.witness
            })
        t = pref.top
        inside = _inside_intervals(ctx, t)
        covered[t] |= (pref.rel.T == inside).all(axis=1)
    found = _first(~covered)
    if found is not None:
        return CheckReport(name, False, {'x': found[0], 'y': found[1]})
    return CheckReport(name, True, details={'preferences': len(prefs)})


def canonical_domain(ctx: MedianContext) -> List[OutcomePreference]:
    return [
        canonical_lu_preorder(ctx, x, w) for x in range(ctx.n)
        for w in range(ctx.n)
    ]


# Rule predicates
# -----------------------


def is_bmu_monotonic(target: Target, rule: Rule,
                     n: Optional[int] = None) -> CheckReport:
    '''
    Whether f(x) lies in I(x_i, f(y_i, x_-i)) for every profile x, agent i
    and deviation y_i.
    '''
    ctx = _ctx(target)
    require_median(ctx)
    table = as_table(target, rule, n)
    name = 'bmu_monotonic'
    e = np.arange(ctx.n)
    between = median_cube(ctx) == e[None, None, :]

    for i in range(table.n):
        view = _agent_view(table, i)
        for a in range(table.k):
            truth = view[a]
            ok = between[a][view, truth[None, :]]
            found = _first(~ok)
            if found is not None:
                y, r = found
                profile = _profile_at(table, i, a, r)
                return CheckReport(name, False, {
                    'profile': profile,
                    'agent': i,
                    'deviation': y,
                    'outcome': int(truth[r]),
                    'deviated_outcome': int(view[y, r]),
                }, rule=_rule_name(rule))
    return CheckReport(name, True, rule=_rule_name(rule))


def is_strategy_proof(target: Target, rule: Rule,
                      n: Optional[int] = None,
                      cross_check: bool = True) -> CheckReport:
    '''
    Whether no agent gains by misreporting, with each agent's preference
    ranging over the canonical locally unimodal preferences topped by the
    agent's proposal.

    Arguments:
        cross_check: also run is_bmu_monotonic and raise when the verdicts
            disagree.

    Raises:
        InternalInvariantViolation: on a cross-check disagreement.
    '''
    ctx = _ctx(target)
    require_median(ctx)
    table = as_table(target, rule, n)
    name = 'strategy_proof'
    levels = _canonical_levels(ctx)
    report = CheckReport(name, True, rule=_rule_name(rule))

    for i in range(table.n):
        view = _agent_view(table, i)
        for a in range(table.k):
            truth = view[a]
            la = levels[a]
            gain = la[:, view] > la[:, truth][:, None, :]
            found = _first(gain)
            if found is not None:
                w, y, r = found
                profile = _profile_at(table, i, a, r)
                report = CheckReport(name, False, {
                    'profile': profile,
                    'agent': i,
                    'deviation': y,
                    'preference': {'top': a, 'built_on': w},
                    'outcome': int(truth[r]),
                    'deviated_outcome': int(view[y, r]),
                }, rule=_rule_name(rule))
                break
        if not report.verdict:
            break

    if cross_check:
        other = is_bmu_monotonic(target, table)
        if other.verdict != report.verdict:
            raise InternalInvariantViolation(
                'strategy-proofness ({0}) disagrees with median monotonicity '
                '({1}) for {2}'.format(report.verdict, other.verdict,
                                       report.rule))
    return report


def _membership(ctx: MedianContext, kind: str) -> Tuple[np.ndarray,
                                                        np.ndarray]:
    if kind == 'join':
        if not ctx.report.is_distributive_lattice:
            raise NotMedian('join-irreducible independence needs a '
                            'distributive lattice')
        irr = ctx.join_irr
        return irr, ctx.leq[irr, :].T
    irr = ctx.meet_irr
    return irr, ctx.leq[:, irr]


def _one_step(table: RuleTable, irr: np.ndarray, member: np.ndarray,
              monotone: bool) -> Optional[dict]:
    '''
    Single-agent changes of a profile.  member[e, j] says whether an agent
    at e belongs to the coalition of irreducible j; the outcome is tested
    the same way.  Monotone mode allows changes that keep or add the agent;
    otherwise the membership must not change.
    '''
    for j, m in enumerate(irr):
        col = member[:, j]
        if monotone:
            allowed = ~col[:, None] | col[None, :]
        else:
            allowed = col[:, None] == col[None, :]
        for i in range(table.n):
            view = _agent_view(table, i)
            inside = col[view]
            bad = allowed[:, :, None] & inside[:, None, :] & \
                ~inside[None, :, :]
            found = _first(bad)
            if found is not None:
                a, y, r = found
                profile = _profile_at(table, i, a, r)
                return {
                    'profile': profile,
                    'other_profile': _replace(profile, i, y),
                    'agent': i,
                    'irreducible': int(m),
                }
    return None


def _full_pairs(table: RuleTable, irr: np.ndarray,
                member: np.ndarray) -> Optional[dict]:
    k_max = get_limit('full_pair_max_elements')
    n_max = get_limit('full_pair_max_agents')
    if table.k > k_max:
        raise SizeLimit('elements for full profile pairs', table.k, k_max)
    if table.n > n_max:
        raise SizeLimit('agents for full profile pairs', table.n, n_max)
    profiles = table.profiles()
    weights = np.left_shift(1, np.arange(table.n, dtype=np.int64))
    masks = (member[profiles] * weights[None, :, None]).sum(axis=1)
    inside = member[table.flat]
    for j, m in enumerate(irr):
        subset = (masks[:, None, j] & ~masks[None, :, j]) == 0
        bad = subset & inside[:, None, j] & ~inside[None, :, j]
        found = _first(bad)
        if found is not None:
            p, q = found
            return {
                'profile': profiles[p].tolist(),
                'other_profile': profiles[q].tolist(),
                'irreducible': int(m),
            }
    return None


def is_m_independent(target: Target, rule: Rule,
                     n: Optional[int] = None) -> CheckReport:
    '''
    Whether f(x) <= m depends only on the coalition {i : x_i <= m}, for
    every meet-irreducible m.
    '''
    ctx = _ctx(target)
    table = as_table(target, rule, n)
    irr, member = _membership(ctx, 'meet')
    witness = _one_step(table, irr, member, monotone=False)
    return CheckReport('m_independent', witness is None, witness,
                       rule=_rule_name(rule))


def is_isotonic(target: Target, rule: Rule,
                n: Optional[int] = None) -> CheckReport:
    '''
    Whether raising one proposal never lowers the outcome.  Single-agent
    raises chain up to any pointwise comparison of profiles.
    '''
    ctx = _ctx(target)
    table = as_table(target, rule, n)
    leq = ctx.leq
    for i in range(table.n):
        view = _agent_view(table, i)
        bad = leq[:, :, None] & ~leq[view[:, None, :], view[None, :, :]]
        found = _first(bad)
        if found is not None:
            a, y, r = found
            profile = _profile_at(table, i, a, r)
            return CheckReport('isotonic', False, {
                'profile': profile,
                'other_profile': _replace(profile, i, y),
                'agent': i,
            }, rule=_rule_name(rule))
    return CheckReport('isotonic', True, rule=_rule_name(rule))


def is_monotonic_m_independent(target: Target, rule: Rule,
                               n: Optional[int] = None,
                               full_pairs: bool = False,
                               cross_check: bool = True) -> CheckReport:
    '''
    Whether, for every meet-irreducible m, growing the coalition
    {i : x_i <= m} keeps f(x) <= m.

    Arguments:
        full_pairs: compare every pair of profiles instead of single-agent
            changes.  Limited to small spaces and two agents.
        cross_check: also run is_m_independent and is_isotonic and raise
            unless their conjunction matches.

    Raises:
        SizeLimit: for full_pairs beyond the configured limits.
        InternalInvariantViolation: on a cross-check disagreement.
    '''
    ctx = _ctx(target)
    table = as_table(target, rule, n)
    irr, member = _membership(ctx, 'meet')
    if full_pairs:
        witness = _full_pairs(table, irr, member)
    else:
        witness = _one_step(table, irr, member, monotone=True)
    report = CheckReport('monotonic_m_independent', witness is None, witness,
                         rule=_rule_name(rule))
    if cross_check:
        split = is_m_independent(target, table)
        iso = is_isotonic(target, table)
        report.details = {
            'm_independent': split.verdict,
            'isotonic': iso.verdict
        }
        if (split.verdict and iso.verdict) != report.verdict:
            raise InternalInvariantViolation(
                'independence and isotony do not combine to monotonic '
                'independence for {0}'.format(report.rule))
    return report


def is_monotonic_j_independent(target: Target, rule: Rule,
                               n: Optional[int] = None,
                               full_pairs: bool = False) -> CheckReport:
    '''
    The join-irreducible mirror: growing {i : j <= x_i} keeps j <= f(x).

    Raises:
        NotMedian: unless the context is a distributive lattice.
    '''
    ctx = _ctx(target)
    table = as_table(target, rule, n)
    irr, member = _membership(ctx, 'join')
    if full_pairs:
        witness = _full_pairs(table, irr, member)
    else:
        witness = _one_step(table, irr, member, monotone=True)
    return CheckReport('monotonic_j_independent', witness is None, witness,
                       rule=_rule_name(rule))


# Axioms
# -----------------------


def _inclusive(target, table):
    for i in range(table.n):
        view = _agent_view(table, i)
        if not (view != view[:1]).any():
            return {'agent': i}
    return None


def _anonymous(target, table):
    T = table.outcomes
    for i in range(table.n - 1):
        found = _first(T != np.swapaxes(T, i, i + 1))
        if found is not None:
            profile = list(found)
            swapped = list(profile)
            swapped[i], swapped[i + 1] = swapped[i + 1], swapped[i]
            return {'profile': profile, 'permuted': swapped}
    return None


def _idempotent(target, table):
    e = np.arange(table.k)
    diagonal = table.outcomes[(e,) * table.n]
    bad = np.flatnonzero(diagonal != e)
    if bad.size:
        return {'element': int(bad[0]), 'outcome': int(diagonal[bad[0]])}
    return None


def _sovereign(target, table):
    missing = np.setdiff1d(np.arange(table.k), np.unique(table.outcomes))
    if missing.size:
        return {'element': int(missing[0])}
    return None


def _bi_idempotent(target, table):
    bits = all_profiles(2, table.n)
    y, z = np.triu_indices(table.k)
    profiles = np.where(bits[None, :, :] == 1, z[:, None, None],
                        y[:, None, None])
    out = table.outcomes[tuple(np.moveaxis(profiles, -1, 0))]
    bad = (out != y[:, None]) & (out != z[:, None])
    found = _first(bad)
    if found is not None:
        pair, p = found
        return {
            'profile': profiles[pair, p].tolist(),
            'pair': [int(y[pair]), int(z[pair])],
            'outcome': int(out[pair, p]),
        }
    return None


def _neutral_under(table, actions):
    T = table.outcomes
    for perm, act in actions:
        moved = T[np.ix_(*([act] * table.n))]
        found = _first(moved != act[T])
        if found is not None:
            return {'permutation': list(perm), 'profile': list(found)}
    return None


def _neutral_groundset(target, table):
    space = _relation_space(target, 'neutral_groundset')
    actions = ((perm, permutation_action(space, perm))
               for perm in ground_permutations(space.m))
    return _neutral_under(table, actions)


def _neutral_elements(target, table):
    if table.k > NEUTRAL_ELEMENTS_MAX:
        raise SizeLimit('elements for literal neutrality', table.k,
                        NEUTRAL_ELEMENTS_MAX)
    actions = ((perm, np.array(perm, dtype=np.int64))
               for perm in itertools.permutations(range(table.k)))
    return _neutral_under(table, actions)


def _profile_mats(space: RelationSpace, profiles: np.ndarray) -> np.ndarray:
    return space.mats[profiles]


def _pair_names(space: RelationSpace, a: int, b: int) -> List[str]:
    return [space.ground.names[a], space.ground.names[b]]


def _basic_pareto(target, table):
    space = _relation_space(target, 'basic_pareto')
    profiles = table.profiles()
    common = _profile_mats(space, profiles).all(axis=1)
    out = space.mats[table.flat]
    found = _first(common & ~out)
    if found is not None:
        p, a, b = found
        return {
            'profile': profiles[p].tolist(),
            'pair': [a, b],
            'names': _pair_names(space, a, b),
        }
    return None


def _weak_condorcet(target, table):
    space = _relation_space(target, 'weak_condorcet')
    if space.flavor not in (Flavor.TOTAL_PREORDER, Flavor.WEAK_TOURNAMENT):
        raise WrongFlavor('total-preorder/weak-tournament', space.flavor.value)
    profiles = table.profiles()
    pm = _profile_mats(space, profiles)
    strict = pm & ~np.swapaxes(pm, -1, -2)
    wins = strict.sum(axis=1) >= (table.n + 2) // 2
    e = np.arange(space.m)
    wins[:, e, e] = True
    winner = wins.all(axis=2)
    out = space.mats[table.flat]
    on_top = out.all(axis=2)
    found = _first(winner & ~on_top)
    if found is not None:
        p, a = found
        return {
            'profile': profiles[p].tolist(),
            'winner': a,
            'name': space.ground.names[a],
        }
    return None


def _monotonic_iia(target, table):
    space = _relation_space(target, 'monotonic_iia')
    if space.flavor not in LATTICE_FLAVORS:
        raise WrongFlavor('/'.join(f.value for f in LATTICE_FLAVORS),
                          space.flavor.value)
    profiles = table.profiles()
    pm = _profile_mats(space, profiles)
    out = space.mats[table.flat]
    weights = np.left_shift(1, np.arange(table.n, dtype=np.int64))
    size = 2**table.n
    coalitions = np.arange(size)
    subset = (coalitions[:, None] & ~coalitions[None, :]) == 0
    for u, v in itertools.permutations(range(space.m), 2):
        masks = (pm[:, :, u, v] * weights[None, :]).sum(axis=1)
        held = out[:, u, v]
        holds = np.zeros(size, dtype=bool)
        fails = np.zeros(size, dtype=bool)
        holds[masks[held]] = True
        fails[masks[~held]] = True
        found = _first(subset & holds[:, None] & fails[None, :])
        if found is not None:
            S, T = found
            p = np.argmax((masks == S) & held)
            q = np.argmax((masks == T) & ~held)
            return {
                'profile': profiles[p].tolist(),
                'other_profile': profiles[q].tolist(),
                'pair': [u, v],
                'names': _pair_names(space, u, v),
            }
    return None


def iia_witness(space: RelationSpace, profiles: np.ndarray,
                outcomes: np.ndarray) -> Optional[dict]:
    '''
    A violation of independence of irrelevant alternatives among the given
    profiles: two profiles whose restrictions to {u, w} agree agent by
    agent, with u weakly above w in the first outcome but not in the second.
    '''
    profiles = np.asarray(profiles, dtype=np.int64)
    outcomes = np.asarray(outcomes, dtype=np.int64)
    K, n = profiles.shape
    pm = _profile_mats(space, profiles)
    om = space.mats[outcomes]
    weights = 4**np.arange(n, dtype=np.int64)
    index = np.arange(K)
    for a, b in itertools.combinations(range(space.m), 2):
        signature = ((2 * pm[:, :, a, b] + pm[:, :, b, a]) *
                     weights[None, :]).sum(axis=1)
        value = 2 * om[:, a, b].astype(np.int64) + om[:, b, a]
        order = np.lexsort((index, signature))
        s = signature[order]
        starts = np.flatnonzero(np.r_[True, s[1:] != s[:-1]])
        low = np.minimum.reduceat(value[order], starts)
        high = np.maximum.reduceat(value[order], starts)
        bad = np.flatnonzero(low != high)
        if bad.size == 0:
            continue
        # earliest profile first
        group = bad[np.argmin(order[starts[bad]])]
        members = order[starts[group]:(starts[group + 1] if group + 1 <
                                        len(starts) else K)]
        p = members[0]
        q = members[value[members] != value[p]][0]
        for u, w in ((a, b), (b, a)):
            if om[p, u, w] != om[q, u, w]:
                if not om[p, u, w]:
                    p, q = q, p
                return {
                    'profile': profiles[p].tolist(),
                    'other_profile': profiles[q].tolist(),
                    'pair': [u, w],
                    'names': _pair_names(space, u, w),
                }
    return None


_AXIOM_CHECKS = {
    'inclusive': _inclusive,
    'anonymous': _anonymous,
    'idempotent': _idempotent,
    'sovereign': _sovereign,
    'neutral_groundset': _neutral_groundset,
    'neutral_elements': _neutral_elements,
    'bi_idempotent': _bi_idempotent,
    'basic_pareto': _basic_pareto,
    'weak_condorcet': _weak_condorcet,
    'monotonic_iia': _monotonic_iia,
}


def axiom(target: Target, rule: Rule, which: str,
          n: Optional[int] = None,
          profiles: Optional[Sequence[Sequence[int]]] = None) -> CheckReport:
    '''
    Exhaustive check of one axiom.

    Arguments:
        which: one of AXIOMS.
        profiles: for 'iia' only, restrict the search to these profiles.

    Raises:
        WrongFlavor: for relation axioms on abstract contexts, weak_condorcet
            off total preorders and weak tournaments, and monotonic_iia off
            the relation lattices.
    '''
    assert which in AXIOMS, 'unknown axiom {0}'.format(which)
    if which in RELATION_AXIOMS:
        _relation_space(target, which)
    name = _rule_name(rule)
    if which == 'iia':
        space = _relation_space(target, which)
        if profiles is None:
            table = as_table(target, rule, n)
            chosen = table.profiles()
            outcomes = table.flat
        else:
            chosen = np.asarray(profiles, dtype=np.int64)
            outcomes = evaluate_many(space, rule, chosen) if isinstance(
                rule, RuleSpec) else rule.outcomes[tuple(chosen.T)]
        witness = iia_witness(space, chosen, outcomes)
    else:
        table = as_table(target, rule, n)
        witness = _AXIOM_CHECKS[which](target, table)
    return CheckReport(which, witness is None, witness, rule=name)


def check(target: Target, rule: Rule, which: str,
          n: Optional[int] = None, full_pairs: bool = False) -> CheckReport:
    '''
    Any predicate of CHECKS by name.
    '''
    if which in AXIOMS:
        return axiom(target, rule, which, n)
    if which == 'strategy_proof':
        return is_strategy_proof(target, rule, n)
    if which == 'bmu_monotonic':
        return is_bmu_monotonic(target, rule, n)
    if which == 'monotonic_m_independent':
        return is_monotonic_m_independent(target, rule, n, full_pairs)
    if which == 'm_independent':
        return is_m_independent(target, rule, n)
    if which == 'isotonic':
        return is_isotonic(target, rule, n)
    if which == 'monotonic_j_independent':
        return is_monotonic_j_independent(target, rule, n, full_pairs)
    raise ValueError('unknown check: {0}'.format(which))


# Witness re-evaluation
# -----------------------


def _irreducible_member(ctx: MedianContext, name: str, irr: int, e: int):
    if name == 'monotonic_j_independent':
        return bool(ctx.leq[irr, e])
    return bool(ctx.leq[e, irr])


def recheck(target: Target, rule: Rule, report: CheckReport,
            n: Optional[int] = None) -> bool:
    '''
    Re-evaluates the witness of a failed report with evaluate() and the
    order tables, and returns whether it shows a violation.
    '''
    if report.verdict:
        raise ValueError('only failed reports carry a witness')
    ctx = _ctx(target)
    w = report.witness

    def f(profile):
        return _outcome(target, rule, profile)

    name = report.name

    if name == 'strategy_proof':
        pref = canonical_lu_preorder(ctx, w['preference']['top'],
                                     w['preference']['built_on'])
        profile = w['profile']
        assert profile[w['agent']] == w['preference']['top']
        deviated = _replace(profile, w['agent'], w['deviation'])
        return bool(pref.strict[f(deviated), f(profile)])
    if name == 'bmu_monotonic':
        profile = w['profile']
        deviated = _replace(profile, w['agent'], w['deviation'])
        return f(profile) not in interval(ctx, profile[w['agent']],
                                          f(deviated))
    if name in ('monotonic_m_independent', 'm_independent',
                'monotonic_j_independent'):
        p, q, irr = w['profile'], w['other_profile'], w['irreducible']
        inside = [[_irreducible_member(ctx, name, irr, e) for e in prof]
                  for prof in (p, q)]
        if name == 'm_independent':
            linked = inside[0] == inside[1]
        else:
            linked = all(b or not a for a, b in zip(*inside))
        fp = _irreducible_member(ctx, name, irr, f(p))
        fq = _irreducible_member(ctx, name, irr, f(q))
        if name == 'm_independent':
            return linked and fp != fq
        return linked and fp and not fq
    if name == 'isotonic':
        p, q = w['profile'], w['other_profile']
        raised = all(ctx.leq[a, b] for a, b in zip(p, q))
        return raised and not ctx.leq[f(p), f(q)]
    if name == 'anonymous':
        return sorted(w['profile']) == sorted(w['permuted']) and \
            f(w['profile']) != f(w['permuted'])
    if name == 'idempotent':
        table = as_table(target, rule, n)
        return f([w['element']] * table.n) != w['element']
    if name in ('sovereign', 'inclusive'):
        table = as_table(target, rule, n)
        return _AXIOM_CHECKS[name](target, table) == w
    if name == 'bi_idempotent':
        pair = set(w['pair'])
        return set(w['profile']) <= pair and f(w['profile']) not in pair
    if name in ('neutral_groundset', 'neutral_elements'):
        if name == 'neutral_groundset':
            act = permutation_action(target, w['permutation'])
        else:
            act = np.array(w['permutation'])
        profile = w['profile']
        return f([int(act[x]) for x in profile]) != int(act[f(profile)])

    space = _relation_space(target, name)
    if name == 'basic_pareto':
        a, b = w['pair']
        unanimous = all(space.mats[x][a, b] for x in w['profile'])
        return unanimous and not space.mats[f(w['profile'])][a, b]
    if name == 'weak_condorcet':
        mats = [space.mats[x] for x in w['profile']]
        winner = condorcet_winner(space.ground, mats)
        return winner == w['winner'] and \
            winner not in top_set(space.mats[f(w['profile'])])
    if name == 'iia':
        u, v = w['pair']
        p, q = w['profile'], w['other_profile']
        same = all(
            space.mats[x][u, v] == space.mats[y][u, v] and
            space.mats[x][v, u] == space.mats[y][v, u] for x, y in zip(p, q))
        return same and space.mats[f(p)][u, v] and \
            not space.mats[f(q)][u, v]
    if name == 'monotonic_iia':
        u, v = w['pair']
        p, q = w['profile'], w['other_profile']
        grows = coalition(i for i, x in enumerate(p) if space.mats[x][u, v]) \
            & ~coalition(i for i, x in enumerate(q) if space.mats[x][u, v])
        return grows == 0 and space.mats[f(p)][u, v] and \
            not space.mats[f(q)][u, v]
    raise ValueError('no witness re-evaluation for {0}'.format(name))


# Verification harnesses
# -----------------------


def _rng(seed: Optional[int]) -> np.random.Generator:
    return np.random.default_rng(get_seed() if seed is None else seed)


def rule_corpus(target: Target, n: int,
                random_count: Optional[int] = None,
                seed: Optional[int] = None) -> List[Tuple[str, RuleTable]]:
    '''
    Named tables: the structured rules, the anti-dictator and random_count
    uniformly random tables drawn from the seed.
    '''
    ctx = _ctx(target)
    if random_count is None:
        random_count = get_random('corpus_size')
    rng = _rng(seed)
    corpus = [(rule.describe(), tabulate(target, rule, n))
              for rule in structured_rules(target, n)]
    corpus.append(('anti-dictator', anti_dictator_table(ctx, n)))
    corpus += [('random-{0}'.format(j), random_table(ctx, n, rng))
               for j in range(random_count)]
    return corpus


def sponsorship_corpus(target: Target, n: int, count: int,
                       seed: Optional[int] = None
                       ) -> List[Tuple[str, RuleTable]]:
    '''
    Tables of count random total sponsorship families.
    '''
    ctx = _ctx(target)
    rng = _rng(seed)
    corpus = []
    for j in range(count):
        family = random_sponsorship_family(ctx, n, rng)
        rule = sponsorship_rule(family, 'sponsorship-{0}'.format(j))
        corpus.append((rule.name, tabulate(target, rule, n)))
    return corpus


def _named(target: Target, rules: Sequence[Rule],
           n: int) -> List[Tuple[str, RuleTable]]:
    named = []
    for j, rule in enumerate(rules):
        label = _rule_name(rule)
        if label == 'table':
            label = 'table-{0}'.format(j)
        named.append((label, as_table(target, rule, n)))
    return named


def _profile_source(k: int, n: int, sample: Optional[int],
                    seed: Optional[int]) -> Tuple[np.ndarray, bool]:
    if sample is None and k**n <= get_limit('exhaustive_max_profiles'):
        return all_profiles(k, n), True
    if sample is None:
        sample = get_random('sample_size')
    return _rng(seed).integers(0, k, size=(sample, n)), False


def verify_sp_equivalence(target: Target,
                          rules: Optional[Sequence[Rule]] = None,
                          n: int = 3,
                          random_count: Optional[int] = None,
                          seed: Optional[int] = None,
                          verbose: bool = False) -> CheckReport:
    '''
    Strategy-proofness, median monotonicity and monotonic independence must
    agree on every rule.  The default corpus is rule_corpus().
    '''
    ctx = _ctx(target)
    require_median(ctx)
    if verbose:
        print('\nComparing strategy-proofness predicates\n'
              '-----------------------')
    if rules is None:
        corpus = rule_corpus(target, n, random_count, seed)
    else:
        corpus = _named(target, rules, n)

    disagreements = []
    holding = 0
    for label, table in corpus:
        sp = is_strategy_proof(target, table, cross_check=False)
        bm = is_bmu_monotonic(target, table)
        mm = is_monotonic_m_independent(target, table)
        verdicts = (sp.verdict, bm.verdict, mm.verdict)
        if verbose:
            print('\t{0}: {1}'.format(label, verdicts))
        if len(set(verdicts)) > 1:
            disagreements.append({
                'rule': label,
                'strategy_proof': sp.verdict,
                'bmu_monotonic': bm.verdict,
                'monotonic_m_independent': mm.verdict,
            })
        holding += all(verdicts)

    details = {
        'rules': len(corpus),
        'all_true': holding,
        'all_false': len(corpus) - holding - len(disagreements),
        'disagreements': len(disagreements),
    }
    witness = disagreements[0] if disagreements else None
    return CheckReport('sp_equivalence', not disagreements, witness,
                       details=details)


def verify_sponsorship_roundtrip(target: Target,
                                 rules: Optional[Sequence[Rule]] = None,
                                 n: int = 3,
                                 random_count: Optional[int] = None,
                                 seed: Optional[int] = None,
                                 verbose: bool = False) -> CheckReport:
    '''
    Every strategy-proof rule is the sponsorship rule of its extracted
    filter family.  The default corpus adds random total sponsorship
    families to rule_corpus().
    '''
    ctx = _ctx(target)
    require_median(ctx)
    if verbose:
        print('\nRebuilding strategy-proof rules from filters\n'
              '-----------------------')
    if rules is None:
        count = get_random('corpus_size') if random_count is None \
            else random_count
        corpus = rule_corpus(target, n, count, seed)
        corpus += sponsorship_corpus(target, n, max(1, count // 10), seed)
    else:
        corpus = _named(target, rules, n)

    rebuilt = 0
    for label, table in corpus:
        if not is_strategy_proof(target, table).verdict:
            continue
        family = extract_filters(ctx, table)
        outcomes = sponsorship_many(ctx, family, table.profiles())
        bad = np.flatnonzero(outcomes != table.flat)
        if verbose:
            print('\t{0}: {1} mismatches'.format(label, bad.size))
        if bad.size:
            p = int(bad[0])
            return CheckReport('sponsorship_roundtrip', False, {
                'rule': label,
                'profile': table.profiles()[p].tolist(),
                'outcome': int(table.flat[p]),
                'sponsorship_outcome': int(outcomes[p]),
            }, details={'rebuilt': rebuilt})
        rebuilt += 1
    return CheckReport('sponsorship_roundtrip', True,
                       details={'rules': len(corpus), 'rebuilt': rebuilt})


def verify_comajority_characterization(target: Target,
                                       n: int = 3,
                                       random_count: Optional[int] = None,
                                       seed: Optional[int] = None,
                                       verbose: bool = False) -> CheckReport:
    '''
    Co-majority is anonymous, bi-idempotent and strategy-proof, and every
    other corpus rule with all three properties has the same table.  The
    corpus holds the structured rules, every uniform quota family that is
    total, and random total sponsorship families.

    Raises:
        ValueError: for an even number of agents.
    '''
    ctx = _ctx(target)
    require_median(ctx)
    if n % 2 == 0:
        raise ValueError('the co-majority characterization needs odd n')
    if verbose:
        print('\nCharacterizing co-majority\n-----------------------')
    if random_count is None:
        random_count = get_random('corpus_size') // 10

    reference = tabulate(target, co_majority_rule(), n)
    corpus = [(rule.describe(), tabulate(target, rule, n))
              for rule in structured_rules(target, n)]
    for q in range(n + 2):
        family = quota_family(ctx, n, q)
        if is_total_family(ctx, family):
            corpus.append(('quota-{0}'.format(q),
                           tabulate(target, sponsorship_rule(family), n)))
    corpus += sponsorship_corpus(target, n, random_count, seed)

    failures = []
    for label, table in corpus:
        reports = [
            axiom(target, table, 'anonymous'),
            axiom(target, table, 'bi_idempotent'),
            is_strategy_proof(target, table),
        ]
        failed = [r for r in reports if not r.verdict]
        if failed:
            failures.append({
                'rule': label,
                'failed': failed[0].name,
                'witness': failed[0].witness
            })
        elif table != reference:
            p = int(np.argmax(table.flat != reference.flat))
            return CheckReport('comajority_characterization', False, {
                'rule': label,
                'profile': table.profiles()[p].tolist(),
                'outcome': int(table.flat[p]),
                'co_majority': int(reference.flat[p]),
            })
        if verbose:
            print('\t{0}: {1}'.format(
                label, failed[0].name if failed else 'equals co-majority'))

    details = {'rules': len(corpus), 'failures': failures}
    return CheckReport('comajority_characterization', True, details=details)


def verify_kemeny_agreement(space: RelationSpace,
                            n: int = 3,
                            sample: Optional[int] = None,
                            seed: Optional[int] = None,
                            verbose: bool = False) -> CheckReport:
    '''
    On total preorders the distance-sum minimizer is unique for odd n,
    equals co-majority, and generalized Condorcet-Kemeny gives it under the
    index order and its reverse.  Profiles are exhaustive under the
    configured limit and sampled from the seed beyond it.

    Raises:
        WrongFlavor: unless space holds total preorders.
    '''
    if space.flavor != Flavor.TOTAL_PREORDER:
        raise WrongFlavor(Flavor.TOTAL_PREORDER.value, space.flavor.value)
    ctx = space.ctx
    name = 'kemeny_agreement'
    expected = n % 2 == 1
    profiles, exhaustive = _profile_source(ctx.n, n, sample, seed)
    if verbose:
        print('\nComparing distance medians\n-----------------------')
        print('\t{0} profiles, exhaustive: {1}'.format(len(profiles),
                                                      exhaustive))
    details = {'profiles': len(profiles), 'exhaustive': exhaustive}

    dist = distance_rows(ctx, np.arange(ctx.n))
    remote = dist[profiles].sum(axis=1)
    minimal = remote == remote.min(axis=1, keepdims=True)
    ties = np.flatnonzero(minimal.sum(axis=1) != 1)
    if ties.size:
        p = int(ties[0])
        return CheckReport(name, False, {
            'profile': profiles[p].tolist(),
            'minimizers': np.flatnonzero(minimal[p]).tolist(),
        }, expected=expected, details=details)

    medians = np.argmax(minimal, axis=1)
    majority = co_majority_many(ctx, profiles)
    k = ctx.n
    forward = evaluate_many(space, generalized_ck_rule(TieBreak.default(k)),
                            profiles)
    backward = evaluate_many(space, generalized_ck_rule(TieBreak.reverse(k)),
                             profiles)
    for label, values in (('co_majority', majority), ('ck_index', forward),
                          ('ck_reverse', backward)):
        bad = np.flatnonzero(values != medians)
        if bad.size:
            p = int(bad[0])
            return CheckReport(name, False, {
                'profile': profiles[p].tolist(),
                'median': int(medians[p]),
                label: int(values[p]),
            }, expected=expected, details=details)
    return CheckReport(name, True, expected=expected, details=details)


def verify_lattice_rules(space: RelationSpace,
                         n: int = 3,
                         sample: Optional[int] = None,
                         seed: Optional[int] = None,
                         verbose: bool = False) -> CheckReport:
    '''
    On a relation lattice with odd n: the majority relation, the lattice
    filter rule on the majority coalitions, co-majority and generalized
    Condorcet-Kemeny under two tie-breaks all agree.  Retracts of the
    majority relation carry no cycle through an asymmetric pair.

    Raises:
        WrongFlavor: unless space is a relation lattice.
    '''
    if space.flavor not in LATTICE_FLAVORS:
        raise WrongFlavor('/'.join(f.value for f in LATTICE_FLAVORS),
                          space.flavor.value)
    ctx = space.ctx
    name = 'lattice_rules'
    expected = n % 2 == 1
    profiles, exhaustive = _profile_source(ctx.n, n, sample, seed)
    if verbose:
        print('\nComparing lattice majority rules\n-----------------------')
        print('\t{0} profiles, exhaustive: {1}'.format(len(profiles),
                                                      exhaustive))
    details = {'profiles': len(profiles), 'exhaustive': exhaustive}

    k = ctx.n
    majority = evaluate_many(space, majority_lattice_rule(), profiles)
    filters = OrderFilterN(n, tuple(majority_coalitions(n)))
    others = [
        ('lattice_filter', evaluate_many(space, lattice_filter(filters),
                                         profiles)),
        ('co_majority', co_majority_many(ctx, profiles)),
        ('ck_index',
         evaluate_many(space, generalized_ck_rule(TieBreak.default(k)),
                       profiles)),
        ('ck_reverse',
         evaluate_many(space, generalized_ck_rule(TieBreak.reverse(k)),
                       profiles)),
    ]
    for label, values in others:
        bad = np.flatnonzero(values != majority)
        if bad.size:
            p = int(bad[0])
            return CheckReport(name, False, {
                'profile': profiles[p].tolist(),
                'majority': int(majority[p]),
                label: int(values[p]),
            }, expected=expected, details=details)

    if space.m <= get_limit('max_ground_retract'):
        retracted = evaluate_many(space, retract(majority_lattice_rule()),
                                  profiles)
        cyclic = has_asymmetric_cycle(space.mats[retracted])
        if cyclic.any():
            p = int(np.argmax(cyclic))
            return CheckReport(name, False, {
                'profile': profiles[p].tolist(),
                'retract': int(retracted[p]),
            }, expected=expected, details=details)
        details['retracts'] = True
    return CheckReport(name, True, expected=expected, details=details)


def verify_basic_pareto(space: RelationSpace,
                        n: int = 3,
                        random_count: Optional[int] = None,
                        seed: Optional[int] = None,
                        verbose: bool = False) -> CheckReport:
    '''
    Sponsorship rules whose filters are all nontrivial and proper satisfy
    basic Pareto: uniform quotas 1 .. n that give total families, and
    random total families filtered to nontrivial proper filters.
    '''
    ctx = space.ctx
    if verbose:
        print('\nChecking basic Pareto\n-----------------------')
    if random_count is None:
        random_count = get_random('corpus_size') // 10
    families = []
    for q in range(1, n + 1):
        family = quota_family(ctx, n, q)
        if is_total_family(ctx, family):
            families.append(('quota-{0}'.format(q), family))
    rng = _rng(seed)
    drawn = 0
    for attempt in range(50 * (random_count + 1)):
        if drawn == random_count:
            break
        family = random_sponsorship_family(ctx, n, rng)
        if all(f.is_nontrivial_proper for f in family.filters.values()):
            families.append(('sponsorship-{0}'.format(attempt), family))
            drawn += 1

    for label, family in families:
        report = axiom(space, sponsorship_rule(family, label),
                       'basic_pareto', n)
        if verbose:
            print('\t{0}: {1}'.format(label, report.verdict))
        if not report.verdict:
            witness = dict(report.witness, rule=label)
            return CheckReport('basic_pareto_sponsorship', False, witness)
    return CheckReport('basic_pareto_sponsorship', True,
                       details={'rules': len(families)})


def verify_weak_condorcet(space: RelationSpace,
                          n: int = 3,
                          verbose: bool = False) -> CheckReport:
    '''
    A Condorcet winner is always among the top alternatives of the
    co-majority outcome.  The winning threshold equals the co-majority
    quota, so this holds for even n as well.
    '''
    report = axiom(space, co_majority_rule(), 'weak_condorcet', n)
    if verbose:
        print('\nChecking weak Condorcet\n-----------------------')
        print('\tco-majority: {0}'.format(report.verdict))
    return report


def _structure_claims(space: RelationSpace, n: int,
                      seed: Optional[int]) -> List[CheckReport]:
    ctx = space.ctx
    tag = '{0}-{1}'.format(space.flavor.value, space.m)
    reports = []

    if not ctx.is_graded:
        reports.append(CheckReport('graded', False, {'space': tag},
                                   details={'space': tag}))
        return reports
    reports.append(CheckReport('graded', True, details={'space': tag}))

    defect = rank_valuation_defect(ctx)
    witness = {'space': tag, 'pair': list(defect[0])} if defect else None
    reports.append(
        CheckReport('rank_valuation', not defect, witness,
                    details={'space': tag}))

    e = np.arange(ctx.n)
    bfs = distance_rows(ctx, e)
    rank = 2 * ctx.rank[ctx.join] - ctx.rank[:, None] - ctx.rank[None, :]
    found = _first(rank != bfs)
    triangle = _first(bfs[:, :, None] + bfs[None, :, :] < bfs[:, None, :])
    witness = None
    if found is not None:
        witness = {'space': tag, 'pair': list(found)}
    elif triangle is not None:
        witness = {'space': tag, 'triangle': list(triangle)}
    reports.append(CheckReport('rank_metric', witness is None, witness,
                               details={'space': tag}))

    median_b = betweenness_cube(ctx, 'median')
    interval_b = betweenness_cube(ctx, 'interval')
    metric_b = betweenness_cube(ctx, 'metric')
    found = _first(interval_b & ~median_b)
    if found is None:
        found = _first(median_b != metric_b)
    reports.append(
        CheckReport('betweenness_inclusion', found is None,
                    None if found is None else {
                        'space': tag,
                        'triple': list(found)
                    },
                    details={'space': tag}))
    if ctx.report.is_distributive_lattice:
        found = _first(interval_b != median_b)
        reports.append(
            CheckReport('betweenness_equality', found is None,
                        None if found is None else {
                            'space': tag,
                            'triple': list(found)
                        },
                        details={'space': tag}))

    profiles, exhaustive = _profile_source(ctx.n, n, None, seed)
    remote = bfs[profiles].sum(axis=1)
    minimal = remote == remote.min(axis=1, keepdims=True)
    majority = co_majority_many(ctx, profiles)
    bad = np.flatnonzero((minimal.sum(axis=1) != 1) |
                         ~minimal[np.arange(len(profiles)), majority])
    reports.append(
        CheckReport('metric_median', bad.size == 0,
                    None if bad.size == 0 else {
                        'space': tag,
                        'profile': profiles[bad[0]].tolist()
                    },
                    details={
                        'space': tag,
                        'profiles': len(profiles),
                        'exhaustive': exhaustive
                    }))

    kemeny = kemeny_matrix(space)
    found = _first(kemeny != bfs)
    witness = None
    if found is not None:
        x, y = found
        witness = {
            'space': tag,
            'pair': [x, y],
            'kemeny': int(kemeny[x, y]),
            'rank_metric': int(bfs[x, y]),
        }
    reports.append(
        CheckReport('kemeny_rank_metric', found is None, witness,
                    expected=space.flavor in LATTICE_FLAVORS,
                    details={'space': tag}))
    return reports


def builtin_spaces() -> List[RelationSpace]:
    return [
        enumerate_space(Flavor.TOTAL_PREORDER, 3),
        enumerate_space(Flavor.TOTAL_PREORDER, 4),
        enumerate_space(Flavor.REFLEXIVE, 3),
    ]


def verify_structure_claims(spaces: Optional[Sequence[RelationSpace]] = None,
                            n: int = 3,
                            seed: Optional[int] = None,
                            verbose: bool = False) -> List[CheckReport]:
    '''
    Order-theoretic facts of each space: graded, rank is a valuation, the
    rank metric is the covering-graph distance, interval betweenness sits
    inside median betweenness which equals metric betweenness (all three
    equal on distributive lattices), the distance-sum median of odd
    profiles is unique and equals co-majority, and the Kemeny distance
    against the rank metric (equal on relation lattices only).
    '''
    if spaces is None:
        spaces = builtin_spaces()
    if verbose:
        print('\nChecking structure claims\n-----------------------')
    reports = []
    for space in spaces:
        found = _structure_claims(space, n, seed)
        if verbose:
            for report in found:
                print('\t{0} {1}: {2}'.format(report.details.get('space'),
                                              report.name, report.verdict))
        reports += found
    return reports
