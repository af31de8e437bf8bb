"""Capacity-region bounds via cut-set porting, and rate verification.

A rate region is a conjunction of inequalities sum_{i in J} alpha_i <= b_J
over non-empty source subsets J, each carrying an exactness flag and the
(terminal, cut) certificate that attains the bound.  Bounds are expressed
as logarithms in the network alphabet size.

Verification implements the three achievability notions: one-shot (a
product code good for every terminal's adversarial channel), n-shot
(a fresh network code and adversary action per use), and compound (the
adversary fixes its vulnerable edge set across all uses).
"""

import itertools
import math
from dataclasses import dataclass

from . import codes as codes_mod
from . import hamming as hamming_mod
from . import network as net_mod
from .errors import InvalidParams, UnsupportedVariant
from .network import (DISJOINT, OVERLAPPING, RANK, adversarial_fanouts,
                      enumerate_minimal_cuts, min_cut)


@dataclass(frozen=True)
class Inequality:
    subset: frozenset
    bound: float
    exact: bool = True
    terminal: str = None
    cut: tuple = None

    def holds(self, alpha, tol=1e-9):
        return sum(alpha[i] for i in self.subset) <= self.bound + tol


class RateRegion:
    def __init__(self, n_sources, inequalities):
        self.n_sources = n_sources
        self.inequalities = tuple(inequalities)

    def bound_for(self, subset):
        subset = frozenset(subset)
        for ineq in self.inequalities:
            if ineq.subset == subset:
                return ineq
        raise KeyError(subset)

    def contains(self, alpha, tol=1e-9):
        if len(alpha) != self.n_sources or any(a < -tol for a in alpha):
            return False
        return all(ineq.holds(alpha, tol) for ineq in self.inequalities)

    def integer_points(self, box=None):
        """Lattice points of the region within the given per-coordinate box
        (defaults to the singleton bounds rounded down)."""
        if box is None:
            box = []
            for i in range(self.n_sources):
                b = self.bound_for({i}).bound
                box.append(int(math.floor(b + 1e-9)))
        ranges = [range(0, b + 1) for b in box]
        return [pt for pt in itertools.product(*ranges) if self.contains(pt)]

    def __repr__(self):
        parts = []
        for ineq in self.inequalities:
            left = "+".join(f"a{i + 1}" for i in sorted(ineq.subset))
            parts.append(f"{left} <= {ineq.bound:.6g}")
        return "RateRegion(" + ", ".join(parts) + ")"


def _subsets(n):
    for r in range(1, n + 1):
        for js in itertools.combinations(range(n), r):
            yield frozenset(js)


def _cut_minimize(net, value_fn, cut_limit=1 << 20):
    """For every J: minimize value_fn(cut) over terminals and inclusion-
    minimal cuts; returns {J: (value, exact, terminal, cut)}."""
    out = {}
    for subset in _subsets(len(net.sources)):
        best = None
        for t in net.terminals:
            for cut in enumerate_minimal_cuts(net, sorted(subset), t, cut_limit):
                value, exact = value_fn(cut)
                key = (value, tuple(net.edge_positions(cut)))
                if best is None or key < best[0]:
                    best = (key, exact, t, tuple(net.edge_positions(cut)))
        out[subset] = (best[0][0], best[1], best[2], best[3])
    return out


def theo1_region(net, adv, alphabet_size):
    """Single-block error/erasure adversary: per J the minimum over cuts of
    |cut minus U| + beta(a, |cut and U|, 2t+e+1)."""
    if adv.variant != DISJOINT or len(adv.blocks) != 1:
        raise InvalidParams("single-block disjoint adversary required")
    block = adv.blocks[0]
    d = 2 * block.t + block.e + 1

    def value(cut):
        inside = len(cut & block.edges)
        outside = len(cut) - inside
        bv = codes_mod.beta(alphabet_size, inside, d) if inside else None
        if bv is None:
            return float(outside), True
        return outside + bv.upper_value, bv.exact

    best = _cut_minimize(net, value)
    return RateRegion(len(net.sources),
                      [Inequality(j, *best[j]) for j in _subsets(len(net.sources))])


def singleton_hamming_region(net, t, e, alphabet_size):
    """All-edge adversary: per J the tighter of the Singleton-type bound
    max(0, mu - 2t - e) and the Hamming-type bound with radius floor(t+e/2),
    minimized over terminals."""
    tprime = t + e // 2
    ineqs = []
    for subset in _subsets(len(net.sources)):
        best = None
        for term in net.terminals:
            mu = min_cut(net, sorted(subset), term)
            singleton = max(0.0, mu - 2 * t - e)
            ball = sum(math.comb(mu, h) * (alphabet_size - 1) ** h
                       for h in range(0, tprime + 1))
            hamming_bound = max(0.0, mu - math.log(ball, alphabet_size))
            val = min(singleton, hamming_bound)
            if best is None or val < best[0]:
                best = (val, term)
        ineqs.append(Inequality(subset, best[0], True, best[1], None))
    return RateRegion(len(net.sources), ineqs)


def theo2_region(net, adv):
    """Disjoint multi-block adversary: per J the minimum over cuts of
    |cut| - sum_l min(2 t_l + e_l, |cut and U_l|); valid simultaneously for
    the one-shot, zero-error, and compound regions."""
    if adv.variant != DISJOINT:
        raise InvalidParams("disjoint adversary required")

    def value(cut):
        total = len(cut)
        for b in adv.blocks:
            total -= min(2 * b.t + b.e, len(cut & b.edges))
        return float(total), True

    best = _cut_minimize(net, value)
    return RateRegion(len(net.sources),
                      [Inequality(j, *best[j]) for j in _subsets(len(net.sources))])


def product_alphabet_region(net, t, e, m):
    """Sub-symbol adversary on every edge: per J, mu * max(0, m-2t-e) / m."""
    factor = max(0, m - 2 * t - e) / m
    ineqs = []
    for subset in _subsets(len(net.sources)):
        best = None
        for term in net.terminals:
            mu = min_cut(net, sorted(subset), term)
            val = mu * factor
            if best is None or val < best[0]:
                best = (val, term)
        ineqs.append(Inequality(subset, best[0], True, best[1], None))
    return RateRegion(len(net.sources), ineqs)


def overlap_region(net, adv):
    """Overlapping erasure-free adversaries: per J the minimum over cuts of
    |cut| - adversarial_strength(blocks clipped to the cut)."""
    if adv.variant != OVERLAPPING:
        raise InvalidParams("overlapping adversary required")

    def value(cut):
        clipped = tuple(hamming_mod.Block(
            {i for i, eid in enumerate(sorted(cut)) if eid in b.edges}, b.t, 0)
            for b in adv.blocks)
        return float(len(cut) - hamming_mod.adversarial_strength(clipped)), True

    best = _cut_minimize(net, value)
    return RateRegion(len(net.sources),
                      [Inequality(j, *best[j]) for j in _subsets(len(net.sources))])


def rank_region(net, adv):
    """Rank-metric adversary on one edge set: per J the minimum over cuts of
    |cut| - min(2t, |cut and U|)."""
    if adv.variant != RANK or len(adv.blocks) != 1:
        raise InvalidParams("single-block rank adversary required")
    block = adv.blocks[0]

    def value(cut):
        return float(len(cut) - min(2 * block.t, len(cut & block.edges))), True

    best = _cut_minimize(net, value)
    return RateRegion(len(net.sources),
                      [Inequality(j, *best[j]) for j in _subsets(len(net.sources))])


# -- verification ---------------------------------------------------------------

@dataclass
class VerifyResult:
    ok: bool
    rate: tuple
    terminal: str = None
    pair: tuple = None
    observation: object = None

    def __bool__(self):
        return self.ok


def _rates(net, source_codes, alphabet_size, n=1):
    out = []
    for i, c in enumerate(source_codes):
        out.append(math.log(len(c), alphabet_size) / n)
    return tuple(out)


def verify_one_shot(net, code, source_codes, adv, alphabet=None, limit=10 ** 6):
    """Whether the product of the source codes is good for every terminal's
    adversarial channel; the certificate of failure is (terminal, pair)."""
    alphabet_t = net._alphabet(alphabet)
    rate = _rates(net, source_codes, len(alphabet_t))
    messages = [tuple(x) for x in itertools.product(*source_codes)]
    fans = {t: {} for t in net.terminals}
    for x in messages:
        per_t = adversarial_fanouts(net, code, adv, x, alphabet_t, limit)
        for t in net.terminals:
            fans[t][x] = per_t[t]
    for t in net.terminals:
        for x, xp in itertools.combinations(messages, 2):
            common = fans[t][x] & fans[t][xp]
            if common:
                return VerifyResult(False, rate, t, (x, xp), next(iter(common)))
    return VerifyResult(True, rate)


def _use_fanouts(net, code, adv, x, alphabet, limit):
    return adversarial_fanouts(net, code, adv, x, alphabet, limit)


def verify_n_shot(net, codes_per_use, source_codes, adv, alphabet=None,
                  limit=10 ** 6):
    """n-shot goodness: each use k has its own network code; the adversary
    picks a fresh admissible action per use.  Source codes contain n-tuples
    of local inputs."""
    alphabet_t = net._alphabet(alphabet)
    n = len(codes_per_use)
    rate = _rates(net, source_codes, len(alphabet_t), n)
    messages = [tuple(x) for x in itertools.product(*source_codes)]
    fans = {}
    for msg in messages:
        per_use = []
        for k in range(n):
            x = tuple(msg[i][k] for i in range(len(net.sources)))
            per_use.append(_use_fanouts(net, codes_per_use[k], adv, x,
                                        alphabet_t, limit))
        fans[msg] = per_use
    for t in net.terminals:
        for m1, m2 in itertools.combinations(messages, 2):
            if all(fans[m1][k][t] & fans[m2][k][t] for k in range(n)):
                return VerifyResult(False, rate, t, (m1, m2))
    return VerifyResult(True, rate)


def _clipped_choices(adv):
    per_block = []
    for b in adv.blocks:
        edges = sorted(b.edges)
        opts = []
        for r in range(min(b.t + b.e, len(edges)) + 1):
            opts.extend(itertools.combinations(edges, r))
        per_block.append(opts)
    return [tuple(frozenset(c) for c in combo)
            for combo in itertools.product(*per_block)]


def verify_compound(net, codes_per_use, source_codes, adv, alphabet=None,
                    limit=10 ** 6):
    """Compound goodness: the adversary fixes per-block vulnerable edge sets
    (within budget sizes) across all uses, then acts freely within them."""
    if adv.variant != DISJOINT:
        raise UnsupportedVariant("compound verification needs a disjoint adversary")
    alphabet_t = net._alphabet(alphabet)
    n = len(codes_per_use)
    rate = _rates(net, source_codes, len(alphabet_t), n)
    choices = _clipped_choices(adv)
    clipped_advs = [net_mod.AdversarySpec(
        blocks=tuple(net_mod.AdvBlock(v, b.t, b.e)
                     for v, b in zip(choice, adv.blocks)))
        for choice in choices]
    messages = [tuple(x) for x in itertools.product(*source_codes)]
    fans = {}
    for ci, clipped in enumerate(clipped_advs):
        for msg in messages:
            for k in range(n):
                x = tuple(msg[i][k] for i in range(len(net.sources)))
                key = (ci, msg, k)
                fans[key] = _use_fanouts(net, codes_per_use[k], clipped, x,
                                         alphabet_t, limit)
    for t in net.terminals:
        for m1, m2 in itertools.combinations(messages, 2):
            for ci in range(len(clipped_advs)):
                for cj in range(len(clipped_advs)):
                    if all(fans[(ci, m1, k)][t] & fans[(cj, m2, k)][t]
                           for k in range(n)):
                        return VerifyResult(False, rate, t, (m1, m2))
    return VerifyResult(True, rate)


def region_contains(region, alpha, tol=1e-9):
    return region.contains(alpha, tol)


def integer_points(region, box=None):
    return region.integer_points(box)
