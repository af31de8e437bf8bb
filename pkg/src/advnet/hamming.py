"""Coordinate-restricted error/erasure channels and their capacities.

Words live in A^s for an alphabet of size a (encoded 0..a-1); received
words may carry the erasure symbol STAR.  A spec lists blocks (U, t, e):
the adversary owning block U may corrupt up to t coordinates of U into
different symbols and erase up to e of them.  Disjoint-variant blocks are
pairwise disjoint; the overlapping variant composes erasure-free block
adversaries acting in sequence (order irrelevant).

Capacity values in this module are logarithms in base a, with the base
recorded on the returned value.
"""

import itertools
import math
from dataclasses import dataclass

from . import codes, gf
from .channel import (STAR, ProductChannel, SymbolicChannel, TableChannel,
                      UnionChannel, one_shot_capacity)
from .errors import (AlphabetMismatch, FieldTooSmall, IndexOutOfRange,
                     InvalidParams, SearchLimitExceeded, UnsupportedVariant)

DISJOINT = "disjoint"
OVERLAPPING = "overlapping"


@dataclass(frozen=True)
class Block:
    coords: frozenset
    t: int
    e: int

    def __init__(self, coords, t, e):
        object.__setattr__(self, "coords", frozenset(coords))
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "e", e)
        if t < 0 or e < 0:
            raise InvalidParams("error/erasure powers must be non-negative")


@dataclass(frozen=True)
class HammingSpec:
    """Multi-adversary error/erasure channel on A^s.

    Budgets may exceed block sizes (t+e > |U| is allowed).  The overlapping
    variant is erasure-free.
    """

    alphabet_size: int
    length: int
    blocks: tuple
    variant: str = DISJOINT

    def __post_init__(self):
        if self.alphabet_size < 2:
            raise InvalidParams("alphabet size must be >= 2")
        for b in self.blocks:
            if any(not 0 <= i < self.length for i in b.coords):
                raise IndexOutOfRange("block coordinate outside the word length")
        if self.variant == DISJOINT:
            seen = set()
            for b in self.blocks:
                if seen & b.coords:
                    raise InvalidParams("disjoint-variant blocks must not overlap")
                seen |= b.coords
        elif self.variant == OVERLAPPING:
            if any(b.e for b in self.blocks):
                raise InvalidParams("overlapping variant is erasure-free")
        else:
            raise UnsupportedVariant(self.variant)

    @property
    def covered(self):
        out = set()
        for b in self.blocks:
            out |= b.coords
        return frozenset(out)

    def clip(self, chosen):
        """Restrict each block to a chosen coordinate subset (V within U)."""
        new = tuple(Block(b.coords & set(v), b.t, b.e)
                    for b, v in zip(self.blocks, chosen))
        return HammingSpec(self.alphabet_size, self.length, new, self.variant)


def single_block(alphabet_size, length, coords, t, e=0):
    return HammingSpec(alphabet_size, length, (Block(coords, t, e),))


def words(a, s):
    return itertools.product(range(a), repeat=s)


def word_count(a, s):
    return a ** s


# -- discrepancy and erasure weight ------------------------------------------

def discrepancy(y, x, coords):
    """Number of non-erased disagreements between y and x inside coords."""
    for i in coords:
        if not 0 <= i < len(y):
            raise IndexOutOfRange(f"coordinate {i} out of range")
    return sum(1 for i in coords if y[i] != STAR and y[i] != x[i])


def erasure_weight(y, coords):
    for i in coords:
        if not 0 <= i < len(y):
            raise IndexOutOfRange(f"coordinate {i} out of range")
    return sum(1 for i in coords if y[i] == STAR)


# -- membership --------------------------------------------------------------

def in_fanout(spec, x, y):
    """Whether y is a possible received word when x is sent."""
    if len(x) != spec.length or len(y) != spec.length:
        raise AlphabetMismatch("word length mismatch")
    if spec.variant == DISJOINT:
        covered = spec.covered
        for i in range(spec.length):
            if i not in covered and y[i] != x[i]:
                return False
        for b in spec.blocks:
            if discrepancy(y, x, b.coords) > b.t:
                return False
            if erasure_weight(y, b.coords) > b.e:
                return False
        return True
    # overlapping: y = x off the union, and the changed coordinates admit an
    # assignment to blocks within their budgets (per-coordinate flow check)
    covered = spec.covered
    if any(y[i] == STAR for i in range(spec.length)):
        return False
    diff = [i for i in range(spec.length) if y[i] != x[i]]
    if any(i not in covered for i in diff):
        return False
    return _assignable(diff, spec.blocks)


def _assignable(positions, blocks):
    """Bipartite feasibility: each position to some block containing it,
    block ell taking at most t_ell positions (augmenting-path matching
    over block slots)."""
    slots = []
    for idx, b in enumerate(blocks):
        slots.extend([idx] * b.t)
    match = {}

    def try_place(pos, visited):
        for s_idx, b_idx in enumerate(slots):
            if s_idx in visited or pos not in blocks[b_idx].coords:
                continue
            visited.add(s_idx)
            if s_idx not in match or try_place(match[s_idx], visited):
                match[s_idx] = pos
                return True
        return False

    for pos in positions:
        if not try_place(pos, set()):
            return False
    return True


def fanout(spec, x):
    """Explicit fan-out set of x (tiny instances only)."""
    a, s = spec.alphabet_size, spec.length
    if spec.variant == DISJOINT:
        per_block = []
        for b in spec.blocks:
            coords = sorted(b.coords)
            options = set()
            for n_err in range(min(b.t, len(coords)) + 1):
                for err_pos in itertools.combinations(coords, n_err):
                    rest = [c for c in coords if c not in err_pos]
                    for n_star in range(min(b.e, len(rest)) + 1):
                        for star_pos in itertools.combinations(rest, n_star):
                            choices = [[v for v in range(a) if v != x[i]]
                                       for i in err_pos]
                            for vals in itertools.product(*choices):
                                options.add(tuple(sorted(
                                    list(zip(err_pos, vals))
                                    + [(i, STAR) for i in star_pos])))
            per_block.append(options)
        out = set()
        for combo in itertools.product(*per_block):
            y = list(x)
            for assignment in combo:
                for i, v in assignment:
                    y[i] = v
            out.add(tuple(y))
        return frozenset(out) if out else frozenset({tuple(x)})
    # overlapping: scan all words equal to x off the covered set
    covered = sorted(spec.covered)
    out = set()
    for vals in itertools.product(range(a), repeat=len(covered)):
        y = list(x)
        for i, v in zip(covered, vals):
            y[i] = v
        y = tuple(y)
        if in_fanout(spec, x, y):
            out.add(y)
    return frozenset(out)


# -- confusability -----------------------------------------------------------

def confusable_analytic(spec, x, xp):
    """Closed-form fan-out intersection test (disjoint variant)."""
    if spec.variant != DISJOINT:
        raise UnsupportedVariant(
            "analytic confusability covers the disjoint variant only")
    covered = spec.covered
    for i in range(spec.length):
        if i not in covered and x[i] != xp[i]:
            return False
    for b in spec.blocks:
        d = sum(1 for i in b.coords if x[i] != xp[i])
        if d > 2 * b.t + b.e:
            return False
    return True


def explicit_channel(spec, limit=1 << 12):
    a, s = spec.alphabet_size, spec.length
    if word_count(a, s) > limit:
        raise SearchLimitExceeded("alphabet too large for an explicit table")
    inputs = list(words(a, s))
    outputs = list(itertools.product(tuple(range(a)) + (STAR,), repeat=s))
    return TableChannel(inputs, outputs, {x: fanout(spec, x) for x in inputs})


def symbolic_channel(spec):
    a, s = spec.alphabet_size, spec.length
    conf = None
    if spec.variant == DISJOINT:
        conf = lambda x, xp: confusable_analytic(spec, x, xp)
    return SymbolicChannel((word_count(a, s), lambda: words(a, s)),
                           lambda x: fanout(spec, x),
                           confusable_fn=conf,
                           name=f"hamming[{spec.variant}]")


# -- capacity values ----------------------------------------------------------

class BaseValue:
    """A capacity value or bound expressed as a log in the given base."""

    __slots__ = ("value", "base", "exact")

    def __init__(self, value, base, exact=True):
        self.value = value
        self.base = base
        self.exact = exact

    @property
    def bits(self):
        return self.value * math.log2(self.base)

    def __repr__(self):
        tag = "exact" if self.exact else "bound"
        return f"BaseValue({self.value:.6g} in base {self.base}, {tag})"


def capacity_single_block(spec):
    """Exact one-shot capacity s - u + beta(a, u, 2t+e+1) of a single-block
    disjoint spec, in base-a units (beta exactness propagated)."""
    if spec.variant != DISJOINT or len(spec.blocks) != 1:
        raise InvalidParams("single-block disjoint spec required")
    b = spec.blocks[0]
    u = len(b.coords)
    bv = codes.beta(spec.alphabet_size, u, 2 * b.t + b.e + 1)
    return BaseValue(spec.length - u + bv.value, spec.alphabet_size, bv.exact)


def block_sigma(block):
    return min(2 * block.t + block.e, len(block.coords))


def sigmas(spec):
    return tuple(block_sigma(b) for b in spec.blocks)


def sigma(spec):
    return sum(sigmas(spec))


def multi_block_bound(spec, n=1):
    """Upper bound n(s - sum_l min(2t_l+e_l, |U_l|)) on the capacity of n
    uses (also valid for the compound model), base-a units."""
    if spec.variant != DISJOINT:
        raise InvalidParams("disjoint variant required")
    return BaseValue(n * (spec.length - sigma(spec)), spec.alphabet_size)


# -- compound channels ---------------------------------------------------------

def _chosen_subsets(spec):
    """All per-block coordinate choices V (|V_l| <= t_l + e_l)."""
    per_block = []
    for b in spec.blocks:
        coords = sorted(b.coords)
        opts = []
        for r in range(min(b.t + b.e, len(coords)) + 1):
            opts.extend(itertools.combinations(coords, r))
        per_block.append(opts)
    return list(itertools.product(*per_block))


def compound_channel(spec, n, limit=1 << 12):
    """Union over coordinate choices V of the n-fold product of the clipped
    channels: the adversaries fix their vulnerable coordinates across uses."""
    if spec.variant != DISJOINT:
        raise InvalidParams("disjoint variant required")
    choices = _chosen_subsets(spec)
    if len(choices) * word_count(spec.alphabet_size, spec.length) ** n > limit ** 2:
        raise SearchLimitExceeded("compound channel too large")
    branches = []
    for chosen in choices:
        clipped = explicit_channel(spec.clip(chosen), limit)
        branches.append(ProductChannel([clipped] * n) if n > 1 else clipped)
    return UnionChannel(branches)


def compound_confusable(spec, n, xs, xps):
    """Whether two n-tuples of words are confusable for the compound channel."""
    if spec.variant != DISJOINT:
        raise InvalidParams("disjoint variant required")
    choices = _chosen_subsets(spec)
    fans = {}

    def fan(chosen, w):
        key = (chosen, w)
        if key not in fans:
            fans[key] = fanout(spec.clip(chosen), w)
        return fans[key]

    for ca in choices:
        for cb in choices:
            if all(fan(ca, x) & fan(cb, xp) for x, xp in zip(xs, xps)):
                return True
    return False


def compound_capacity_bound(spec, n=1):
    return multi_block_bound(spec, n)


# -- achievability -------------------------------------------------------------

def achievability_code(spec, field, verify=True):
    """[s, s-sigma, sigma+1] MDS code, good for the spec's channel."""
    if spec.variant != DISJOINT:
        raise InvalidParams("disjoint variant required")
    if field.q != spec.alphabet_size:
        raise AlphabetMismatch("field order must match the alphabet size")
    sg = sigma(spec)
    if sg >= spec.length:
        raise InvalidParams("zero-rate spec: sigma >= s")
    gen = codes.mds_generator(field, spec.length, spec.length - sg)
    code = codes.BlockCode.from_generator(field, gen)
    if verify:
        cw = code.codewords
        if len(cw) > 1 << 11:
            raise SearchLimitExceeded("code too large to verify pairwise")
        for w1, w2 in itertools.combinations(cw, 2):
            if confusable_analytic(spec, w1, w2):
                raise FieldTooSmall("construction not good for this spec")
    return code


# -- product alphabets ---------------------------------------------------------

def product_alphabet_bound(t, e, b, m, s, n=1):
    """n * s/m * max(0, m - 2t - e) in base-(b^m) units."""
    if m < 1:
        raise InvalidParams("m must be >= 1")
    return BaseValue(n * s / m * max(0, m - 2 * t - e), b ** m)


def product_alphabet_channel(b, m, s, t, e, limit=1 << 12):
    """Channel on (B^m)^s where every symbol independently suffers up to t
    sub-symbol errors and e erasures."""
    symbol_spec = single_block(b, m, range(m), t, e)
    if (b ** m) ** s > limit:
        raise SearchLimitExceeded("product-alphabet channel too large")
    inner = explicit_channel(symbol_spec, limit)
    return ProductChannel([inner] * s) if s > 1 else inner


# -- overlapping adversaries ----------------------------------------------------

def adversarial_strength(blocks):
    """Exhaustive max size of a union of two per-block <=t subsets."""
    best = 0
    per_block = []
    for b in blocks:
        coords = sorted(b.coords)
        opts = []
        for r in range(min(b.t, len(coords)) + 1):
            opts.extend(itertools.combinations(coords, r))
        per_block.append(opts)
    for first in itertools.product(*per_block):
        base = set().union(*first) if first else set()
        for second in itertools.product(*per_block):
            u = base.union(*second) if second else base
            best = max(best, len(u))
    return best


def overlap_bound(spec, n=1):
    if spec.variant != OVERLAPPING:
        raise InvalidParams("overlapping variant required")
    return BaseValue(n * (spec.length - adversarial_strength(spec.blocks)),
                     spec.alphabet_size)


# -- the intersection witness ---------------------------------------------------

def keylong_witness(spec):
    """Deterministic witness (V, V', Ubar): per-block splits with
    |V_l|, |V'_l| <= t_l + e_l and |Ubar| = sigma such that any two words
    agreeing off Ubar have intersecting fan-outs under the clipped specs."""
    if spec.variant != DISJOINT:
        raise InvalidParams("disjoint variant required")
    V, Vp, stars = [], [], []
    ubar = set()
    for b in spec.blocks:
        coords = sorted(b.coords)
        sg = block_sigma(b)
        chosen = coords[:sg]
        n1 = min(b.t, sg)
        n2 = min(b.t, sg - n1)
        u1 = set(chosen[:n1])
        u2 = set(chosen[n1:n1 + n2])
        ustar = set(chosen[n1 + n2:])
        V.append(frozenset(u1 | ustar))
        Vp.append(frozenset(u2 | ustar))
        stars.append(frozenset(ustar))
        ubar |= set(chosen)
    return tuple(V), tuple(Vp), frozenset(ubar), tuple(stars)


def keylong_common_output(spec, witness, x, xp):
    """The explicit common word z in the two clipped fan-outs."""
    V, Vp, _, stars = witness
    vbar = set().union(*V) if V else set()
    vpbar = set().union(*Vp) if Vp else set()
    starbar = set().union(*stars) if stars else set()
    z = list(x)
    for i in range(spec.length):
        if i in starbar:
            z[i] = STAR
        elif i in vbar:
            z[i] = xp[i]
        elif i in vpbar:
            z[i] = x[i]
    return tuple(z)


# -- rank-metric adversaries ----------------------------------------------------

@dataclass(frozen=True)
class RankMetricSpec:
    """Adversary on m x s matrices over F_q: may rewrite columns indexed by
    U as long as the difference matrix has rank at most t."""

    q: int
    m: int
    s: int
    coords: frozenset
    t: int

    def __init__(self, q, m, s, coords, t):
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "s", s)
        object.__setattr__(self, "coords", frozenset(coords))
        object.__setattr__(self, "t", t)
        if t < 0:
            raise InvalidParams("t must be non-negative")
        if any(not 0 <= i < s for i in self.coords):
            raise IndexOutOfRange("column index out of range")


def rank_in_fanout(spec, m1, m2):
    """Whether matrix m2 is reachable from m1 (both gf.Matrix over F_q)."""
    diff = m2 - m1
    for j in range(spec.s):
        if j not in spec.coords and any(row[j] for row in diff.rows):
            return False
    return diff.rank() <= spec.t


def rank_confusable(spec, m1, m2):
    """Fan-outs intersect iff columns agree off U and the difference has
    rank at most 2t."""
    diff = m2 - m1
    for j in range(spec.s):
        if j not in spec.coords and any(row[j] for row in diff.rows):
            return False
    return diff.rank() <= 2 * spec.t


def rank_explicit_channel(spec, limit=1 << 12):
    field = gf.make_field(spec.q)
    total = spec.q ** (spec.m * spec.s)
    if total > limit:
        raise SearchLimitExceeded("matrix space too large")
    mats = []
    for combo in itertools.product(range(spec.q), repeat=spec.m * spec.s):
        rows = tuple(combo[i * spec.s:(i + 1) * spec.s] for i in range(spec.m))
        mats.append(gf.Matrix(field, rows))
    table = {m1: frozenset(m2 for m2 in mats if rank_in_fanout(spec, m1, m2))
             for m1 in mats}
    return TableChannel(mats, mats, table)


def rank_channel_bound(q, m, s, coords, t, n=1):
    """n(s - min(2t, |U|)) in base-(q^m) units."""
    return BaseValue(n * (s - min(2 * t, len(frozenset(coords)))), q ** m)


def rank_achievability(q, m, s, t, verify=True):
    """Gabidulin code of rank distance 2t+1 achieving s - 2t; requires
    q >= m >= s and 2t < s."""
    if not (q >= m >= s):
        raise FieldTooSmall("achievability needs q >= m >= s")
    if 2 * t >= s:
        raise InvalidParams("need 2t < s for a positive rate")
    field = gf.make_field(q)
    rc = codes.gabidulin(field, m, s, s - 2 * t)
    if verify:
        cw = rc.codewords()
        if len(cw) > 1 << 11:
            raise SearchLimitExceeded("code too large to verify pairwise")
        for w1, w2 in itertools.combinations(cw, 2):
            if rc.rank_distance(w1, w2) <= 2 * t:
                raise FieldTooSmall("construction not good for this spec")
    return rc


# -- brute-force capacity helper -------------------------------------------------

def brute_force_capacity(spec, limit=1 << 10, node_budget=None):
    """Exact one-shot capacity of a tiny spec by explicit search, as a
    BaseValue in base a."""
    chan = explicit_channel(spec, limit)
    res = one_shot_capacity(chan, max_vertices=limit, node_budget=node_budget)
    if not res.exact:
        raise SearchLimitExceeded("budget exhausted in brute-force capacity")
    return BaseValue(res.value_in_base(spec.alphabet_size), spec.alphabet_size)
