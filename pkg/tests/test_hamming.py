import itertools
import math
import random

import pytest

from advnet import channel as ch
from advnet import codes, gf, hamming
from advnet.channel import STAR
from advnet.errors import InvalidParams, UnsupportedVariant


def random_disjoint_spec(rng, max_len=4, max_alpha=3):
    a = rng.randint(2, max_alpha)
    s = rng.randint(1, max_len)
    coords = list(range(s))
    rng.shuffle(coords)
    blocks = []
    used = 0
    for _ in range(rng.randint(1, 2)):
        if used >= s:
            break
        size = rng.randint(0, s - used)
        blk = coords[used:used + size]
        used += size
        blocks.append(hamming.Block(blk, rng.randint(0, 2), rng.randint(0, 1)))
    if not blocks:
        blocks = [hamming.Block([], 0, 0)]
    return hamming.HammingSpec(a, s, tuple(blocks))


# ---------------------------------------------------------------------------
# discrepancy / erasure weight / membership
# ---------------------------------------------------------------------------


def test_discrepancy_and_erasure_weight():
    x = (0, 0, 0, 0)
    assert hamming.discrepancy(x, x, range(4)) == 0
    assert hamming.erasure_weight(x, range(4)) == 0
    y = (1, STAR, 0, 0)
    assert hamming.discrepancy(y, x, range(4)) == 1
    assert hamming.erasure_weight(y, range(4)) == 1
    assert hamming.discrepancy(y, x, {2, 3}) == 0
    assert hamming.erasure_weight(y, {2, 3}) == 0


def test_in_fanout_single_block():
    spec = hamming.single_block(2, 4, range(4), t=1)
    x = (0, 0, 0, 0)
    assert hamming.in_fanout(spec, x, x)
    assert hamming.in_fanout(spec, x, (0, 1, 0, 0))
    assert not hamming.in_fanout(spec, x, (0, 1, 1, 0))
    assert not hamming.in_fanout(spec, x, (0, STAR, 0, 0))  # e = 0


def test_in_fanout_two_blocks():
    spec = hamming.HammingSpec(2, 4, (hamming.Block({0, 1}, 1, 0),
                                      hamming.Block({2, 3}, 1, 0)))
    x = (0, 0, 0, 0)
    assert hamming.in_fanout(spec, x, (0, 1, 0, 1))
    assert not hamming.in_fanout(spec, x, (1, 1, 0, 0))


def test_fanout_enumeration_matches_membership():
    rng = random.Random(6)
    for _ in range(15):
        spec = random_disjoint_spec(rng)
        a, s = spec.alphabet_size, spec.length
        for x in itertools.islice(hamming.words(a, s), 4):
            fan = hamming.fanout(spec, x)
            alphabet = tuple(range(a)) + (STAR,)
            expected = {y for y in itertools.product(alphabet, repeat=s)
                        if hamming.in_fanout(spec, x, y)}
            assert fan == expected


# ---------------------------------------------------------------------------
# analytic confusability vs explicit intersection (the core oracle)
# ---------------------------------------------------------------------------


def test_confusable_analytic_matches_intersection_oracle():
    rng = random.Random(60)
    for _ in range(20):
        spec = random_disjoint_spec(rng)
        a, s = spec.alphabet_size, spec.length
        if a ** s > 128:
            continue
        all_words = list(hamming.words(a, s))
        for x in all_words:
            for xp in all_words:
                want = bool(hamming.fanout(spec, x) & hamming.fanout(spec, xp))
                got = hamming.confusable_analytic(spec, x, xp)
                assert got == want, (spec, x, xp)


def test_confusable_examples():
    spec = hamming.single_block(2, 4, range(4), t=1)
    x = (0, 0, 0, 0)
    assert hamming.confusable_analytic(spec, x, x)
    assert hamming.confusable_analytic(spec, x, (1, 1, 0, 0))
    assert not hamming.confusable_analytic(spec, x, (1, 1, 1, 0))


def test_two_block_spec_isomorphic_to_hh_squared():
    spec = hamming.HammingSpec(2, 8, (hamming.Block(range(4), 1, 0),
                                      hamming.Block(range(4, 8), 1, 0)))
    for x in [(0,) * 8, (1, 0) * 4]:
        for xp in [(0, 1) * 4, (1,) * 8, x]:
            d1 = sum(1 for i in range(4) if x[i] != xp[i])
            d2 = sum(1 for i in range(4, 8) if x[i] != xp[i])
            assert hamming.confusable_analytic(spec, x, xp) == (d1 <= 2 and d2 <= 2)


# ---------------------------------------------------------------------------
# capacities
# ---------------------------------------------------------------------------


def test_capacity_single_block_formula():
    # adversary with no coordinates is powerless
    spec = hamming.single_block(3, 2, [], 5, 5)
    assert hamming.capacity_single_block(spec).value == pytest.approx(2.0)
    # binary length-4 full-access single-error channel
    spec = hamming.single_block(2, 4, range(4), 1)
    v = hamming.capacity_single_block(spec)
    assert v.exact and v.value == pytest.approx(1.0) and v.base == 2
    # one erasure on two of three coordinates
    spec = hamming.single_block(2, 3, {0, 1}, 0, 1)
    assert hamming.capacity_single_block(spec).value == pytest.approx(2.0)


def test_single_block_capacity_equals_brute_force():
    spec = hamming.single_block(2, 3, {0, 1}, 0, 1)
    assert hamming.brute_force_capacity(spec).value == pytest.approx(2.0)


def test_prop_formula_matches_brute_force_randomized():
    rng = random.Random(99)
    done = 0
    while done < 12:
        a = rng.randint(2, 3)
        s = rng.randint(1, 3 if a == 3 else 4)
        u = rng.randint(0, s)
        t = rng.randint(0, 1)
        e = rng.randint(0, 1)
        spec = hamming.single_block(a, s, range(u), t, e)
        formula = hamming.capacity_single_block(spec)
        if not formula.exact:
            continue
        brute = hamming.brute_force_capacity(spec)
        assert brute.value == pytest.approx(formula.value), (a, s, u, t, e)
        done += 1


def test_multi_block_bound_values():
    spec = hamming.single_block(2, 3, range(3), 0, 0)
    assert hamming.multi_block_bound(spec, 5).value == pytest.approx(15)
    spec = hamming.HammingSpec(2, 8, (hamming.Block(range(4), 1, 0),
                                      hamming.Block(range(4, 8), 1, 0)))
    assert hamming.sigmas(spec) == (2, 2)
    assert hamming.multi_block_bound(spec).value == pytest.approx(4.0)
    # capacity exceeds the naive per-block sum: log2(5) > 2 bits
    big_code = [tuple(int(b) for b in w) for w in
                ("00000000", "00011101", "10100111", "11010110", "11101000")]
    chan = hamming.symbolic_channel(spec)
    assert ch.is_good_code(chan, big_code)


def test_equality_when_alphabet_large_enough():
    # q >= s: the bound s - sigma is met exactly
    for (a, s, u, t, e) in [(5, 3, 2, 1, 0), (4, 2, 1, 1, 0), (5, 2, 2, 0, 1)]:
        spec = hamming.single_block(a, s, range(u), t, e)
        bound = hamming.multi_block_bound(spec).value
        brute = hamming.brute_force_capacity(spec).value
        assert brute == pytest.approx(min(bound, s))


# ---------------------------------------------------------------------------
# compound channels
# ---------------------------------------------------------------------------


def test_compound_n1_equals_plain_fanout():
    rng = random.Random(13)
    for _ in range(8):
        spec = random_disjoint_spec(rng, max_len=3, max_alpha=2)
        comp = hamming.compound_channel(spec, 1)
        plain = hamming.explicit_channel(spec)
        assert ch.same_fanout_map(comp, plain)


def test_compound_capacity_chain():
    spec = hamming.single_block(2, 2, range(2), 1, 0)
    c1 = hamming.brute_force_capacity(spec).value
    plain2 = ch.one_shot_capacity(ch.power(hamming.explicit_channel(spec), 2))
    comp2 = ch.one_shot_capacity(hamming.compound_channel(spec, 2))
    a = spec.alphabet_size
    c_n = plain2.value_in_base(a)
    c_rest = comp2.value_in_base(a)
    assert 2 * c1 <= c_n + 1e-9 <= c_rest + 1e-9
    assert c_rest <= 2 * hamming.multi_block_bound(spec).value + 1e-9


def test_compound_confusable_consistency():
    spec = hamming.single_block(2, 2, range(2), 1, 0)
    comp = hamming.compound_channel(spec, 2)
    inputs = list(itertools.product(hamming.words(2, 2), repeat=2))
    for xs in inputs[:6]:
        for xps in inputs[:6]:
            want = bool(comp.fanout(xs) & comp.fanout(xps))
            got = hamming.compound_confusable(spec, 2, xs, xps)
            assert got == want


def test_compound_bound_single_block():
    spec = hamming.single_block(2, 3, range(3), 1, 0)
    assert hamming.compound_capacity_bound(spec, 4).value == pytest.approx(4.0)


# ---------------------------------------------------------------------------
# achievability
# ---------------------------------------------------------------------------


def test_achievability_full_space_when_sigma_zero():
    spec = hamming.single_block(5, 3, range(3), 0, 0)
    code = hamming.achievability_code(spec, gf.make_field(5))
    assert len(code) == 125


def test_achievability_exfinale_style():
    spec = hamming.single_block(5, 5, range(5), 1, 0)
    code = hamming.achievability_code(spec, gf.make_field(5))
    assert len(code) == 125 and code.min_distance() == 3
    assert hamming.capacity_single_block(spec).value == pytest.approx(3.0)


def test_achievability_repetition():
    spec = hamming.single_block(2, 3, range(3), 1, 0)
    code = hamming.achievability_code(spec, gf.make_field(2))
    assert len(code) == 2
    assert hamming.brute_force_capacity(spec).value == pytest.approx(1.0)


# ---------------------------------------------------------------------------
# product alphabets
# ---------------------------------------------------------------------------


def test_product_alphabet_bound_values():
    assert hamming.product_alphabet_bound(0, 0, 2, 3, 4).value == pytest.approx(4)
    assert hamming.product_alphabet_bound(1, 0, 2, 3, 2).value == pytest.approx(2 / 3)
    assert hamming.product_alphabet_bound(2, 1, 2, 4, 3).value == pytest.approx(0.0)


def test_product_alphabet_channel_is_power_of_symbol_channel():
    chan = hamming.product_alphabet_channel(2, 2, 2, 1, 0)
    x = ((0, 0), (1, 1))
    fan = chan.fanout(x)
    for y in fan:
        assert all(sum(1 for u, v in zip(xi, yi) if u != v) <= 1
                   for xi, yi in zip(x, y))
    res = ch.one_shot_capacity(chan)
    bound = hamming.product_alphabet_bound(1, 0, 2, 2, 2)
    assert res.value_in_base(4) <= bound.value + 1e-9


# ---------------------------------------------------------------------------
# overlapping adversaries
# ---------------------------------------------------------------------------


def test_overlap_membership_and_commutation():
    # two adversaries, overlapping coordinate sets, t = 1 each
    b1 = hamming.Block({0, 1}, 1, 0)
    b2 = hamming.Block({1, 2}, 1, 0)
    spec = hamming.HammingSpec(2, 3, (b1, b2), variant=hamming.OVERLAPPING)
    x = (0, 0, 0)
    assert hamming.in_fanout(spec, x, (1, 1, 0))
    assert hamming.in_fanout(spec, x, (0, 1, 1))
    assert not hamming.in_fanout(spec, x, (1, 1, 1))
    # sequential composition in either order gives the same fan-out
    fwd = hamming.HammingSpec(2, 3, (b1, b2), variant=hamming.OVERLAPPING)
    bwd = hamming.HammingSpec(2, 3, (b2, b1), variant=hamming.OVERLAPPING)
    for x in hamming.words(2, 3):
        assert hamming.fanout(fwd, x) == hamming.fanout(bwd, x)


def test_overlap_fanout_matches_two_step_composition():
    rng = random.Random(3)
    for _ in range(6):
        s = 3
        c1 = frozenset(rng.sample(range(s), rng.randint(0, s)))
        c2 = frozenset(rng.sample(range(s), rng.randint(0, s)))
        t1, t2 = rng.randint(0, 2), rng.randint(0, 2)
        spec = hamming.HammingSpec(2, s, (hamming.Block(c1, t1, 0),
                                          hamming.Block(c2, t2, 0)),
                                   variant=hamming.OVERLAPPING)
        s1 = hamming.single_block(2, s, c1, t1)
        s2 = hamming.single_block(2, s, c2, t2)
        for x in hamming.words(2, s):
            two_step = set()
            for z in hamming.fanout(s1, x):
                two_step |= hamming.fanout(s2, z)
            assert hamming.fanout(spec, x) == two_step


def test_adversarial_strength_values():
    # single block: sigma = min(2t, |U|)
    assert hamming.adversarial_strength((hamming.Block(range(4), 1, 0),)) == 2
    assert hamming.adversarial_strength((hamming.Block(range(3), 2, 0),)) == 3
    # identical blocks {0,1} with t = 1 each: strength 2
    b = hamming.Block({0, 1}, 1, 0)
    assert hamming.adversarial_strength((b, b)) == 2


def test_adversarial_strength_disjoint_reduces_to_sum():
    rng = random.Random(8)
    for _ in range(3):
        s = 6
        cut = rng.randint(1, 5)
        b1 = hamming.Block(range(cut), rng.randint(0, 2), 0)
        b2 = hamming.Block(range(cut, s), rng.randint(0, 2), 0)
        got = hamming.adversarial_strength((b1, b2))
        want = sum(min(2 * b.t, len(b.coords)) for b in (b1, b2))
        assert got == want


def test_overlap_bound():
    b1 = hamming.Block({0, 1}, 1, 0)
    b2 = hamming.Block({1, 2}, 1, 0)
    spec = hamming.HammingSpec(2, 4, (b1, b2), variant=hamming.OVERLAPPING)
    assert hamming.overlap_bound(spec).value == pytest.approx(4 - 3)


def test_overlap_rejects_erasures():
    with pytest.raises(InvalidParams):
        hamming.HammingSpec(2, 3, (hamming.Block({0}, 1, 1),),
                            variant=hamming.OVERLAPPING)


def test_analytic_confusability_rejects_overlapping():
    spec = hamming.HammingSpec(2, 3, (hamming.Block({0, 1}, 1, 0),),
                               variant=hamming.OVERLAPPING)
    with pytest.raises(UnsupportedVariant):
        hamming.confusable_analytic(spec, (0, 0, 0), (1, 1, 1))


# ---------------------------------------------------------------------------
# keylong witness
# ---------------------------------------------------------------------------


def test_keylong_witness_trivial():
    spec = hamming.HammingSpec(2, 3, (hamming.Block({0, 1}, 0, 0),))
    V, Vp, ubar, _ = hamming.keylong_witness(spec)
    assert all(not v for v in V) and all(not v for v in Vp) and not ubar


def test_keylong_witness_sizes():
    spec = hamming.single_block(2, 4, range(4), 1, 0)
    V, Vp, ubar, _ = hamming.keylong_witness(spec)
    assert len(ubar) == 2
    assert len(V[0]) == 1 and len(Vp[0]) == 1
    spec = hamming.single_block(2, 5, {0, 1, 2}, 1, 1)
    V, Vp, ubar, _ = hamming.keylong_witness(spec)
    assert len(ubar) == 3 == min(2 * 1 + 1, 3)


def test_keylong_intersection_property():
    rng = random.Random(14)
    for _ in range(10):
        spec = random_disjoint_spec(rng, max_len=4, max_alpha=2)
        witness = hamming.keylong_witness(spec)
        V, Vp, ubar, _ = witness
        clipped = spec.clip(V)
        clipped_p = spec.clip(Vp)
        a, s = spec.alphabet_size, spec.length
        for x in hamming.words(a, s):
            for xp in hamming.words(a, s):
                if any(x[i] != xp[i] for i in range(s) if i not in ubar):
                    continue
                z = hamming.keylong_common_output(spec, witness, x, xp)
                assert hamming.in_fanout(clipped, x, z)
                assert hamming.in_fanout(clipped_p, xp, z)


# ---------------------------------------------------------------------------
# rank-metric adversaries
# ---------------------------------------------------------------------------


def test_rank_confusable_matches_explicit_oracle():
    spec = hamming.RankMetricSpec(2, 2, 2, {0, 1}, 1)
    chan = hamming.rank_explicit_channel(spec)
    mats = chan.inputs_tuple()
    for m1 in mats:
        for m2 in mats:
            want = bool(chan.fanout(m1) & chan.fanout(m2))
            assert hamming.rank_confusable(spec, m1, m2) == want


def test_rank_confusable_respects_column_restriction():
    spec = hamming.RankMetricSpec(2, 2, 3, {0}, 1)
    F = gf.make_field(2)
    m1 = gf.Matrix.zeros(F, 2, 3)
    m2 = gf.Matrix(F, ((1, 0, 0), (0, 0, 0)))
    m3 = gf.Matrix(F, ((0, 1, 0), (0, 0, 0)))
    assert hamming.rank_in_fanout(spec, m1, m2)
    assert not hamming.rank_in_fanout(spec, m1, m3)


def test_rank_channel_bound_values():
    assert hamming.rank_channel_bound(4, 3, 3, range(3), 0).value == 3
    assert hamming.rank_channel_bound(4, 3, 3, range(3), 2).value == 0
    assert hamming.rank_channel_bound(4, 3, 3, range(3), 1).value == 1


def test_rank_achievability_q4():
    rc = hamming.rank_achievability(4, 3, 3, 1)
    words = rc.codewords()
    assert len(words) == 64
    dmin = min(rc.rank_distance(a, b)
               for a, b in itertools.combinations(words, 2))
    assert dmin == 3
    bound = hamming.rank_channel_bound(4, 3, 3, range(3), 1)
    assert math.log(len(words), 4 ** 3) == pytest.approx(bound.value)
