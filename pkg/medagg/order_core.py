#!/usr/bin/env python3
'''
Finite posets and median join-semilattices.  A Poset is validated from its
incidence matrix; build_context then fills the dense join and meet tables,
the irreducible elements, the rank function and the covering-graph metric,
and classifies the structure (join-semilattice, upper distributive,
meet-Helly, median, graded, distributive lattice, co-atomistic, atomistic).

Elements are always referred to by their integer index.  Tables store -1
where a meet is undefined.

Useage:
    p = build_poset(2, [[1, 1], [0, 1]])
    ctx = build_context(p)
    median(ctx, 0, 0, 1)
'''

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
import scipy.sparse
import scipy.sparse.csgraph

from medagg.defaults import get_limit, get_random, get_seed
from medagg.errors import (MeetUndefined, NotAntisymmetric, NotGraded,
                           NotJoinSemilattice, NotMedian, NotReflexive,
                           NotTransitive, SizeLimit)

BETWEENNESS_KINDS = ('median', 'interval', 'metric')


@dataclass(frozen=True)
class Poset:
    '''
    A finite partial order.  leq[x, y] is True when x <= y.
    '''
    n: int
    leq: np.ndarray
    labels: Optional[List[str]] = None

    def label(self, x: int) -> str:
        if self.labels is None:
            return str(x)
        return self.labels[x]


@dataclass
class StructureReport:
    '''
    Structural flags of a finite poset.  witnesses maps the name of each
    false flag to the elements that break it.
    '''
    is_poset: bool = True
    is_join_semilattice: bool = False
    is_upper_distributive: bool = False
    is_meet_helly: bool = False
    is_median: bool = False
    is_graded: bool = False
    is_distributive_lattice: bool = False
    is_coatomistic: bool = False
    is_atomistic: bool = False
    sampled: bool = False
    witnesses: Dict[str, tuple] = field(default_factory=dict)

    def as_dict(self) -> dict:
        out = {
            key: getattr(self, key)
            for key in ('is_poset', 'is_join_semilattice',
                        'is_upper_distributive', 'is_meet_helly', 'is_median',
                        'is_graded', 'is_distributive_lattice',
                        'is_coatomistic', 'is_atomistic', 'sampled')
        }
        out['witnesses'] = {
            key: [int(v) for v in value]
            for key, value in self.witnesses.items()
        }
        return out


@dataclass(frozen=True)
class MedianContext:
    '''
    A finite join-semilattice with every derived table filled in.

    Attributes:
        poset: the underlying Poset.
        join: (n, n) table of least upper bounds.
        meet: (n, n) table of greatest lower bounds, -1 where undefined.
        top: the greatest element.
        bottom: the least element, or None.
        meet_irr, join_irr, coatoms, atoms: sorted element arrays.
        upper_covers, lower_covers: per-element arrays of covers.
        cover: (n, n) boolean cover relation, cover[x, y] when x << y.
        longest: length of the longest chain from x up to top.
        rank: normalized rank r(x) = max(longest) - longest[x].
        dist: (n, n) covering-graph distance, or None when rows are
            computed on demand (large contexts).
        report: the StructureReport of the poset.
    '''
    poset: Poset
    join: np.ndarray
    meet: np.ndarray
    top: int
    bottom: Optional[int]
    meet_irr: np.ndarray
    join_irr: np.ndarray
    coatoms: np.ndarray
    atoms: np.ndarray
    upper_covers: Tuple[np.ndarray, ...]
    lower_covers: Tuple[np.ndarray, ...]
    cover: np.ndarray
    longest: np.ndarray
    rank: np.ndarray
    dist: Optional[np.ndarray]
    report: StructureReport

    @property
    def n(self) -> int:
        return self.poset.n

    @property
    def leq(self) -> np.ndarray:
        return self.poset.leq

    @property
    def cover_adj(self) -> Tuple[np.ndarray, ...]:
        '''
        Neighbors of each element in the undirected covering graph.
        '''
        return tuple(
            np.union1d(self.upper_covers[x], self.lower_covers[x])
            for x in range(self.n))

    @property
    def is_median(self) -> bool:
        return self.report.is_median

    @property
    def is_graded(self) -> bool:
        return self.report.is_graded


def build_poset(n: int, leq, labels: Optional[Sequence[str]] = None) -> Poset:
    '''
    Validates an incidence matrix and wraps it as a Poset.

    Arguments:
        n: the number of elements.
        leq: n x n boolean (or 0/1) matrix, leq[x][y] meaning x <= y.
        labels: optional display strings, one per element.

    Returns:
        poset: the validated Poset.

    Raises:
        NotReflexive, NotAntisymmetric or NotTransitive naming the first
        witness in index order.
    '''
    leq = np.asarray(leq).astype(bool)
    assert leq.shape == (n, n), 'leq must be an n x n matrix'
    if labels is not None:
        labels = [str(label) for label in labels]
        assert len(labels) == n, 'labels must have one entry per element'

    diagonal = np.diagonal(leq)
    if not diagonal.all():
        raise NotReflexive(int(np.argmin(diagonal)))

    both = leq & leq.T
    np.fill_diagonal(both, False)
    if both.any():
        x, y = np.argwhere(both)[0]
        raise NotAntisymmetric(int(x), int(y))

    leq_f = leq.astype(np.float32)
    reach = (leq_f @ leq_f) > 0
    broken = reach & ~leq
    if broken.any():
        x, z = np.argwhere(broken)[0]
        y = int(np.argmax(leq[x] & leq[:, z]))
        raise NotTransitive(int(x), y, int(z))

    leq.setflags(write=False)
    return Poset(n=n, leq=leq, labels=labels)


def _join_table(leq: np.ndarray) -> np.ndarray:
    '''
    Least upper bounds of all pairs, -1 where none exists.  The least upper
    bound of {x, y} is the common upper bound u whose up-set has exactly as
    many elements as the set of common upper bounds.
    '''
    n = leq.shape[0]
    upcount = leq.sum(axis=1)
    join = np.full((n, n), -1, dtype=np.int64)
    for x in range(n):
        common = leq[x][None, :] & leq
        candidates = common & (upcount[None, :] == common.sum(axis=1)[:, None])
        found = candidates.any(axis=1)
        join[x, found] = np.argmax(candidates[found], axis=1)
    return join


def _meet_table(leq: np.ndarray) -> np.ndarray:
    return _join_table(leq.T)


def _upper_distributive(join: np.ndarray, meet: np.ndarray,
                        triples: Optional[np.ndarray] = None) -> Optional[tuple]:
    '''
    Checks x ^ (y v z) = (x ^ y) v (x ^ z) for every triple with a common
    lower bound.  This is exactly distributivity inside every principal
    filter, since a triple lies in some up-set iff it has a lower bound.
    Returns the first failing triple, or None.
    '''
    n = join.shape[0]
    if triples is None:
        for x in range(n):
            xy = meet[x][:, None].repeat(n, axis=1)
            xz = meet[x][None, :].repeat(n, axis=0)
            ok = (xy >= 0) & (xz >= 0)
            common = np.full((n, n), -1)
            common[ok] = meet[xy[ok], np.nonzero(ok)[1]]
            valid = common >= 0
            lhs = meet[x][join]
            rhs = np.full((n, n), -1)
            rhs[valid] = join[xy[valid], xz[valid]]
            bad = valid & (lhs != rhs)
            if bad.any():
                y, z = np.argwhere(bad)[0]
                return (x, int(y), int(z))
        return None

    x, y, z = triples.T
    xy = meet[x, y]
    xz = meet[x, z]
    ok = (xy >= 0) & (xz >= 0)
    ok[ok] = meet[xy[ok], z[ok]] >= 0
    lhs = meet[x[ok], join[y[ok], z[ok]]]
    rhs = join[xy[ok], xz[ok]]
    bad = np.flatnonzero(lhs != rhs)
    if bad.size:
        return tuple(int(v) for v in triples[ok][bad[0]])
    return None


def _meet_helly(meet: np.ndarray,
                triples: Optional[np.ndarray] = None) -> Optional[tuple]:
    '''
    Checks that pairwise meets existing implies the triple meet exists.
    Returns the first failing triple, or None.
    '''
    n = meet.shape[0]
    defined = meet >= 0
    if triples is None:
        for x in range(n):
            pairwise = defined[x][:, None] & defined[x][None, :] & defined
            xy = meet[x][:, None].repeat(n, axis=1)
            triple = np.zeros((n, n), dtype=bool)
            triple[pairwise] = meet[xy[pairwise], np.nonzero(pairwise)[1]] >= 0
            bad = pairwise & ~triple
            if bad.any():
                y, z = np.argwhere(bad)[0]
                return (x, int(y), int(z))
        return None

    x, y, z = triples.T
    pairwise = defined[x, y] & defined[x, z] & defined[y, z]
    xy = meet[x, y]
    bad = np.flatnonzero(pairwise & (meet[np.where(pairwise, xy, 0), z] < 0))
    if bad.size:
        return tuple(int(v) for v in triples[bad[0]])
    return None


def _covers(leq: np.ndarray) -> np.ndarray:
    n = leq.shape[0]
    lt = leq & ~np.eye(n, dtype=bool)
    lt_f = lt.astype(np.float32)
    return lt & ~((lt_f @ lt_f) > 0)


def _longest_to_top(leq: np.ndarray, cover: np.ndarray) -> np.ndarray:
    '''
    Length of the longest chain from each element up to the top, by longest
    path over the cover DAG.  Elements with larger up-sets are processed
    after every element above them.
    '''
    n = leq.shape[0]
    order = np.argsort(leq.sum(axis=1), kind='stable')
    longest = np.zeros(n, dtype=np.int64)
    for x in order:
        above = np.flatnonzero(cover[x])
        if above.size:
            longest[x] = longest[above].max() + 1
    return longest


def _sample_triples(n: int, count: int) -> np.ndarray:
    rng = np.random.default_rng(get_seed())
    return rng.integers(0, n, size=(count, 3))


def classify(p: Poset, verbose: bool = False) -> StructureReport:
    '''
    Computes every structural flag by exhaustive check of its definition.
    Above the configured element limit the distributivity and meet-Helly
    checks run on a seeded sample of triples and the report is marked as
    sampled.

    Arguments:
        p: the poset to classify.
        verbose: whether to print progress.

    Returns:
        report: a StructureReport.
    '''
    report, _ = _classify(p, verbose=verbose)
    return report


def _classify(p: Poset, join: Optional[np.ndarray] = None,
              meet: Optional[np.ndarray] = None, verbose: bool = False):
    if verbose:
        print('\nClassifying Poset\n-----------------------')
        print('\telements:', p.n)

    leq = p.leq
    n = p.n
    report = StructureReport()
    if join is None:
        join = _join_table(leq)
    if meet is None:
        meet = _meet_table(leq)

    missing = np.argwhere(join < 0)
    report.is_join_semilattice = missing.size == 0
    if not report.is_join_semilattice:
        report.witnesses['is_join_semilattice'] = tuple(missing[0])
        for key in ('is_upper_distributive', 'is_meet_helly', 'is_median',
                    'is_distributive_lattice'):
            report.witnesses[key] = tuple(missing[0])
        if verbose:
            print('\tnot a join-semilattice at', tuple(missing[0]))
        return report, None

    cover = _covers(leq)
    tables = {'join': join, 'meet': meet, 'cover': cover}

    triples = None
    if n > get_limit('max_elements'):
        triples = _sample_triples(n, get_random('sample_size'))
        report.sampled = True

    if verbose:
        print('\tchecking upper distributivity')
    failed = _upper_distributive(join, meet, triples)
    report.is_upper_distributive = failed is None
    if failed is not None:
        report.witnesses['is_upper_distributive'] = failed

    if verbose:
        print('\tchecking meet-Helly')
    failed = _meet_helly(meet, triples)
    report.is_meet_helly = failed is None
    if failed is not None:
        report.witnesses['is_meet_helly'] = failed

    report.is_median = report.is_upper_distributive and report.is_meet_helly
    if not report.is_median:
        report.witnesses['is_median'] = report.witnesses.get(
            'is_upper_distributive', report.witnesses.get('is_meet_helly'))

    longest = _longest_to_top(leq, cover)
    tables['longest'] = longest
    bad = np.argwhere(cover & (longest[:, None] != longest[None, :] + 1))
    report.is_graded = bad.size == 0
    if not report.is_graded:
        report.witnesses['is_graded'] = tuple(bad[0])

    top = int(np.flatnonzero(leq.all(axis=0))[0])
    bottoms = np.flatnonzero(leq.all(axis=1))
    bottom = int(bottoms[0]) if bottoms.size else None

    report.is_distributive_lattice = (bottom is not None and
                                      report.is_upper_distributive)
    if not report.is_distributive_lattice:
        if bottom is None:
            minimal = np.flatnonzero(leq.sum(axis=0) == 1)
            report.witnesses['is_distributive_lattice'] = tuple(minimal[:2])
        else:
            report.witnesses['is_distributive_lattice'] = \
                report.witnesses['is_upper_distributive']

    coatoms = np.flatnonzero(cover[:, top])
    for x in range(n):
        if _meet_of_elements(meet, top, coatoms[leq[x, coatoms]]) != x:
            report.witnesses['is_coatomistic'] = (x,)
            break
    report.is_coatomistic = 'is_coatomistic' not in report.witnesses

    if bottom is None:
        report.witnesses['is_atomistic'] = ()
    else:
        atoms = np.flatnonzero(cover[bottom])
        for x in range(n):
            below = atoms[leq[atoms, x]]
            joined = bottom
            for a in below:
                joined = join[joined, a]
            if joined != x:
                report.witnesses['is_atomistic'] = (x,)
                break
    report.is_atomistic = 'is_atomistic' not in report.witnesses

    if verbose:
        print('\tmedian:', report.is_median, 'graded:', report.is_graded)
    return report, tables


def _meet_of_elements(meet: np.ndarray, top: int, elements) -> int:
    acc = top
    for e in elements:
        acc = meet[acc, e]
        if acc < 0:
            return -1
    return int(acc)


def build_context(p: Poset,
                  join: Optional[np.ndarray] = None,
                  meet: Optional[np.ndarray] = None,
                  allow_large: bool = False,
                  verbose: bool = False) -> MedianContext:
    '''
    Fills every derived table of a finite join-semilattice.

    Arguments:
        p: a validated Poset.
        join, meet:
            Optional precomputed tables (for lattices of relations, where
            union and intersection are known).  They are checked against
            leq when the context is within the element limit.
        allow_large: permit more elements than the configured limit.  The
            distance table is then replaced by on-demand BFS rows.
        verbose: whether to print progress.

    Returns:
        ctx: a MedianContext.  A context that fails the median conditions is
            still returned; median-dependent operations refuse it with
            NotMedian.

    Raises:
        NotJoinSemilattice: when some pair has no least upper bound.
        SizeLimit: when n exceeds the element limit without allow_large.
    '''
    limit = get_limit('max_elements')
    if p.n > limit and not allow_large:
        raise SizeLimit('poset', p.n, limit)

    if verbose:
        print('\nBuilding Context\n-----------------------')

    if join is not None and p.n <= limit:
        _check_bound_table(p.leq, join, upper=True)
    if meet is not None and p.n <= limit:
        _check_bound_table(p.leq, meet, upper=False)

    report, tables = _classify(p, join=join, meet=meet, verbose=verbose)
    if not report.is_join_semilattice:
        x, y = report.witnesses['is_join_semilattice']
        raise NotJoinSemilattice(int(x), int(y))

    leq = p.leq
    join = tables['join']
    meet = tables['meet']
    cover = tables['cover']
    longest = tables['longest']

    top = int(np.flatnonzero(leq.all(axis=0))[0])
    bottoms = np.flatnonzero(leq.all(axis=1))
    bottom = int(bottoms[0]) if bottoms.size else None

    upper_covers = tuple(np.flatnonzero(cover[x]) for x in range(p.n))
    lower_covers = tuple(np.flatnonzero(cover[:, x]) for x in range(p.n))
    n_upper = cover.sum(axis=1)
    n_lower = cover.sum(axis=0)

    meet_irr = np.flatnonzero(n_upper == 1)
    if bottom is None:
        join_irr = np.flatnonzero(n_lower <= 1)
    else:
        join_irr = np.flatnonzero(n_lower == 1)
    coatoms = np.flatnonzero(cover[:, top])
    if bottom is None:
        atoms = np.array([], dtype=np.int64)
    else:
        atoms = np.flatnonzero(cover[bottom])

    rank = longest.max() - longest

    dist = None
    if p.n <= limit:
        if verbose:
            print('\tcomputing covering-graph distances')
        dist = _cover_distances(cover).astype(np.int64)

    for table in (join, meet, cover, longest, rank):
        table.setflags(write=False)
    if dist is not None:
        dist.setflags(write=False)

    if verbose:
        print('\ttop:', p.label(top), '| meet-irreducibles:', len(meet_irr),
              '| join-irreducibles:', len(join_irr))

    return MedianContext(poset=p,
                         join=join,
                         meet=meet,
                         top=top,
                         bottom=bottom,
                         meet_irr=meet_irr,
                         join_irr=join_irr,
                         coatoms=coatoms,
                         atoms=atoms,
                         upper_covers=upper_covers,
                         lower_covers=lower_covers,
                         cover=cover,
                         longest=longest,
                         rank=rank,
                         dist=dist,
                         report=report)


def _check_bound_table(leq: np.ndarray, table: np.ndarray, upper: bool):
    '''
    Asserts that table[x, y] is the least upper (or greatest lower) bound.
    '''
    order = leq if upper else leq.T
    n = leq.shape[0]
    assert table.shape == (n, n), 'bound table must be n x n'
    for x in range(n):
        row = table[x]
        defined = row >= 0
        bounds = order[x][None, :] & order
        assert order[x, row[defined]].all() and \
            order[np.flatnonzero(defined), row[defined]].all(), \
            'table entry is not a bound of its pair'
        least = ~(bounds[defined] & ~order[row[defined]]).any()
        assert least, 'table entry is not the least bound of its pair'
        assert not bounds[~defined].any(), 'table misses an existing bound'


def _cover_graph(cover: np.ndarray):
    return scipy.sparse.csr_matrix(cover.astype(np.int8))


def _cover_distances(cover: np.ndarray,
                     indices: Optional[Sequence[int]] = None) -> np.ndarray:
    dist = scipy.sparse.csgraph.shortest_path(_cover_graph(cover),
                                              directed=False,
                                              unweighted=True,
                                              indices=indices)
    return dist.astype(np.int64)


def distance_rows(ctx: MedianContext, elements) -> np.ndarray:
    '''
    Covering-graph distances from each given element to every element.
    '''
    elements = np.asarray(elements, dtype=np.int64)
    if ctx.dist is not None:
        return ctx.dist[elements]
    return _cover_distances(ctx.cover, indices=elements)


def require_median(ctx: MedianContext):
    if not ctx.report.is_median:
        witness = ctx.report.witnesses.get('is_median')
        raise NotMedian('upper distributivity or meet-Helly fails at '
                        '{0}'.format(witness))


def require_graded(ctx: MedianContext):
    if not ctx.report.is_graded:
        x, y = ctx.report.witnesses['is_graded']
        raise NotGraded(int(x), int(y))


def median(ctx: MedianContext, x, y, z):
    '''
    The median (x v y) ^ (y v z) ^ (x v z).  Accepts integers or broadcastable
    integer arrays.

    Raises:
        NotMedian: when the context failed median classification.
    '''
    require_median(ctx)
    return _median(ctx.join, ctx.meet, x, y, z)


def _median(join, meet, x, y, z):
    xy = join[x, y]
    yz = join[y, z]
    xz = join[x, z]
    result = meet[meet[xy, yz], xz]
    if np.ndim(result) == 0:
        return int(result)
    return result


def median_cube(ctx: MedianContext) -> np.ndarray:
    '''
    The full (n, n, n) table of medians.
    '''
    require_median(ctx)
    e = np.arange(ctx.n)
    return _median(ctx.join, ctx.meet, e[:, None, None], e[None, :, None],
                   e[None, None, :])


def interval(ctx: MedianContext, x: int, y: int) -> np.ndarray:
    '''
    The median interval {z : median(x, y, z) = z}, as a sorted element array.
    '''
    require_median(ctx)
    z = np.arange(ctx.n)
    return np.flatnonzero(_median(ctx.join, ctx.meet, x, y, z) == z)


def dist_rank(ctx: MedianContext, x, y):
    '''
    The rank metric 2 r(x v y) - r(x) - r(y).  Accepts arrays.

    Raises:
        NotGraded: when the context has no rank function.
    '''
    require_graded(ctx)
    rank = ctx.rank
    result = 2 * rank[ctx.join[x, y]] - rank[x] - rank[y]
    if np.ndim(result) == 0:
        return int(result)
    return result


def betweenness(ctx: MedianContext, kind: str, x: int, z: int, y: int) -> bool:
    '''
    Whether z lies between x and y.

    Arguments:
        kind:
            'median': z = median(x, y, z).
            'interval': z <= x v y and z lies above x, above y, or above
                x ^ y when that meet exists.
            'metric': d(x, z) + d(z, y) = d(x, y) with the rank metric.
    '''
    assert kind in BETWEENNESS_KINDS, 'unknown betweenness kind'
    if kind == 'median':
        return median(ctx, x, y, z) == z
    if kind == 'interval':
        return bool(_interval_between(ctx, x, z, y))
    return dist_rank(ctx, x, z) + dist_rank(ctx, z, y) == dist_rank(ctx, x, y)


def _interval_between(ctx: MedianContext, x, z, y):
    leq = ctx.leq
    low = ctx.meet[x, y]
    # -1 marks an undefined meet
    above_meet = (low >= 0) & leq[np.maximum(low, 0), z]
    return leq[z, ctx.join[x, y]] & (leq[x, z] | leq[y, z] | above_meet)


def betweenness_cube(ctx: MedianContext, kind: str) -> np.ndarray:
    '''
    Boolean (n, n, n) array B[x, z, y] of the chosen betweenness relation.
    '''
    assert kind in BETWEENNESS_KINDS, 'unknown betweenness kind'
    e = np.arange(ctx.n)
    x = e[:, None, None]
    z = e[None, :, None]
    y = e[None, None, :]
    if kind == 'median':
        return median(ctx, x, y, z) == z
    if kind == 'interval':
        return _interval_between(ctx, x, z, y)
    return dist_rank(ctx, x, z) + dist_rank(ctx, z, y) == dist_rank(ctx, x, y)


def meet_of_set(ctx: MedianContext, elements: Iterable[int]) -> int:
    '''
    Greatest lower bound of a set of elements.  The meet of the empty set is
    the top element.

    Raises:
        MeetUndefined: naming a pair without a common lower bound when one
            exists in the set.
    '''
    elements = [int(e) for e in elements]
    result = _meet_of_elements(ctx.meet, ctx.top, elements)
    if result < 0:
        raise MeetUndefined(elements, _unbounded_pair(ctx, elements))
    return result


def _unbounded_pair(ctx: MedianContext, elements: List[int]):
    for i, a in enumerate(elements):
        for b in elements[i + 1:]:
            if ctx.meet[a, b] < 0:
                return (a, b)
    return None


def join_of_set(ctx: MedianContext, elements: Iterable[int]) -> int:
    '''
    Least upper bound of a set.  The join of the empty set is the bottom.

    Raises:
        MeetUndefined: for the empty set when the context has no bottom.
    '''
    elements = [int(e) for e in elements]
    if not elements:
        if ctx.bottom is None:
            raise MeetUndefined([])
        return ctx.bottom
    acc = elements[0]
    for e in elements[1:]:
        acc = int(ctx.join[acc, e])
    return acc


def principal_filter(ctx: MedianContext, u: int) -> np.ndarray:
    '''
    The up-set of u.
    '''
    return np.flatnonzero(ctx.leq[u])


def meet_irreducibles_above(ctx: MedianContext, x: int) -> np.ndarray:
    return ctx.meet_irr[ctx.leq[x, ctx.meet_irr]]


def join_irreducibles_below(ctx: MedianContext, x: int) -> np.ndarray:
    return ctx.join_irr[ctx.leq[ctx.join_irr, x]]


def metric_median_set(ctx: MedianContext, profile: Sequence[int]) -> np.ndarray:
    '''
    Elements minimizing the summed covering-graph distance to the profile.

    Raises:
        NotMedian: when the context failed median classification.
    '''
    require_median(ctx)
    remoteness = distance_rows(ctx, profile).sum(axis=0)
    return np.flatnonzero(remoteness == remoteness.min())


def remoteness(ctx: MedianContext, profile: Sequence[int]) -> np.ndarray:
    return distance_rows(ctx, profile).sum(axis=0)


def rank_valuation_defect(ctx: MedianContext) -> List[Tuple[int, int]]:
    '''
    Pairs (x, y), x < y by index, whose meet exists but which break
    r(x) + r(y) = r(x v y) + r(x ^ y).  Empty on graded upper distributive
    contexts.
    '''
    e = np.arange(ctx.n)
    x = e[:, None]
    y = e[None, :]
    meet = ctx.meet
    defined = (meet >= 0) & (x < y)
    rank = ctx.rank
    lhs = rank[x] + rank[y]
    rhs = rank[ctx.join] + rank[np.where(defined, meet, 0)]
    return [(int(a), int(b)) for a, b in np.argwhere(defined & (lhs != rhs))]


def chain_poset(length: int) -> Poset:
    '''
    The chain 0 < 1 < ... < length - 1.
    '''
    e = np.arange(length)
    return build_poset(length, e[:, None] <= e[None, :])


def subset_poset(k: int) -> Poset:
    '''
    The Boolean lattice of subsets of a k-set ordered by inclusion, element
    index equal to the subset bitmask.
    '''
    e = np.arange(2**k)
    return build_poset(2**k, (e[:, None] & ~e[None, :]) == 0)
