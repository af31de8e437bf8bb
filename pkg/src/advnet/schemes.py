"""Constructive coding schemes for adversarial networks.

All randomized constructions draw local encoder and vertex matrices from a
seeded generator until every terminal's decodability condition (a
full-rank transfer matrix, or full-rank stacked matrices in the
rank-metric pipelines) holds; the non-constructive existence argument
behind these schemes is replaced by draw-and-check with a configurable
budget.
"""

import itertools
import random
from dataclasses import dataclass, field

from . import codes as codes_mod
from . import gf
from .channel import STAR
from .errors import (DrawsExhausted, InvalidParams, RegionViolated,
                     UnsupportedSources)
from .network import (AdvBlock, AdversarySpec, FuncVertex, LinearVertex,
                      NetworkCode, PER_SYMBOL, TableVertex, min_cut)
from .regions import _subsets


@dataclass
class Scheme:
    """A verifiable communication scheme.

    source_codes lists explicit local codewords per source (n_uses == 1) or
    n-tuples of local inputs; decoders map a terminal to a function from
    its observation (or tuple of per-use observations) to the decoded
    messages.  meta carries construction internals (fields, matrices,
    encoders) for reports and tests.
    """

    n_uses: int
    network_codes: list
    source_codes: list
    decoders: dict
    alphabet: tuple
    rate: tuple
    meta: dict = field(default_factory=dict)

    @property
    def network_code(self):
        return self.network_codes[0]


def _check_min_cut_region(net, demands, slack=0):
    for subset in _subsets(len(net.sources)):
        need = sum(demands[i] for i in subset)
        for t in net.terminals:
            if need > min_cut(net, sorted(subset), t) - slack:
                raise RegionViolated(subset)


def linear_transfer_matrices(net, code, fld):
    """Per-terminal transfer matrices of a linear network code: for each
    source i a matrix of shape |out(S_i)| x |in(T)| over the field, mapping
    emitted packets (as coefficients) to terminal observations."""
    offsets = {}
    total = 0
    for s in net.sources:
        offsets[s] = total
        total += len(net.out_edges(s))
    coeff = {}
    for e in net.edges:
        if e.tail in net.sources:
            vec = [0] * total
            vec[offsets[e.tail] + net.out_edges(e.tail).index(e)] = 1
            coeff[e.id] = tuple(vec)
        else:
            vertex = code.fn(e.tail)
            matrix = vertex.matrix
            j = net.out_edges(e.tail).index(e)
            vec = [0] * total
            for i, ie in enumerate(net.in_edges(e.tail)):
                c = matrix[i][j]
                if c:
                    for r, old in enumerate(coeff[ie.id]):
                        if old:
                            vec[r] = fld.add(vec[r], fld.mul(c, old))
            coeff[e.id] = tuple(vec)
    out = {}
    for t in net.terminals:
        cols = [coeff[e.id] for e in net.in_edges(t)]
        per_source = {}
        for i, s in enumerate(net.sources):
            b = len(net.out_edges(s))
            rows = []
            for r in range(offsets[s], offsets[s] + b):
                rows.append(tuple(col[r] for col in cols))
            per_source[i] = gf.Matrix(fld, tuple(rows))
        out[t] = per_source
    return out


def _draw_linear_code(rng, net, fld, m=1):
    fns = {}
    for v in net.intermediates:
        r, s = len(net.in_edges(v)), len(net.out_edges(v))
        rows = tuple(tuple(rng.randrange(fld.q) for _ in range(s)) for _ in range(r))
        fns[v] = LinearVertex(fld, rows, m)
    return NetworkCode(fns)


def _draw_matrix(rng, fld, nrows, ncols):
    return gf.Matrix(fld, tuple(tuple(rng.randrange(fld.q) for _ in range(ncols))
                                for _ in range(nrows)))


def _columns(matrix):
    return tuple(tuple(matrix.rows[r][c] for r in range(matrix.nrows))
                 for c in range(matrix.ncols))


# -- adversary-free linear multicast -------------------------------------------

def build_adversary_free(net, demands, q, max_draws=200, seed=0):
    """Linear network code plus injective local encoders achieving the
    integer rate vector `demands` with no adversary.  Succeeds once every
    terminal's stacked transfer matrix has full row rank."""
    _check_min_cut_region(net, demands)
    fld = gf.make_field(q)
    rng = random.Random(seed)
    a_total = sum(demands)
    last_fail = None
    for _ in range(max_draws):
        code = _draw_linear_code(rng, net, fld)
        encoders = [_draw_matrix(rng, fld, demands[i], len(net.out_edges(s)))
                    for i, s in enumerate(net.sources)]
        transfer = linear_transfer_matrices(net, code, fld)
        stacked = {}
        ok = True
        for t in net.terminals:
            blocks = [encoders[i] @ transfer[t][i] for i in range(len(net.sources))]
            m_t = blocks[0]
            for b in blocks[1:]:
                m_t = m_t.vstack(b)
            if m_t.rank() < a_total:
                ok = False
                last_fail = t
                break
            stacked[t] = m_t
        if not ok:
            continue
        source_codes = []
        for i in range(len(net.sources)):
            words = [gf.mat_vec_row(fld, msg, encoders[i])
                     for msg in itertools.product(range(q), repeat=demands[i])]
            source_codes.append(words)
        inverses = {t: stacked[t].right_inverse() for t in net.terminals}

        def make_decoder(t):
            inv = inverses[t]

            def decode(obs):
                y = gf.Matrix(fld, (tuple(obs),))
                x = y @ inv
                out = []
                pos = 0
                for a_i in demands:
                    out.append(tuple(x.rows[0][pos:pos + a_i]))
                    pos += a_i
                return tuple(out)

            return decode

        decoders = {t: make_decoder(t) for t in net.terminals}
        return Scheme(1, [code], source_codes, decoders, tuple(range(q)),
                      tuple(float(a) for a in demands),
                      meta={"field": fld, "encoders": encoders,
                            "transfer": transfer, "stacked": stacked})
    raise DrawsExhausted(last_fail)


# -- rank-metric one-shot scheme -------------------------------------------------

def build_achiev1(net, demands, t, q, max_draws=200, seed=0):
    """One-shot scheme against an adversary corrupting up to t arbitrary
    edges, for one or two sources, over the alphabet F_q^m with
    m = prod_i (a_i + 2t).  Nested rank-metric outer codes protect the
    messages; decoding peels the second source with a rank decoder, then
    block-decodes the first."""
    n_sources = len(net.sources)
    if n_sources not in (1, 2):
        raise UnsupportedSources("the construction covers one or two sources")
    if any(a < 1 for a in demands):
        raise InvalidParams("demands must be positive integers")
    _check_min_cut_region(net, demands, slack=2 * t)

    fld = gf.make_field(q)
    rng = random.Random(seed)
    if n_sources == 1:
        return _achiev1_single(net, demands[0], t, fld, rng, max_draws)
    return _achiev1_double(net, demands, t, fld, rng, max_draws)


def _achiev1_single(net, a1, t, fld, rng, max_draws, n_uses=1):
    n1 = a1 + 2 * t
    m = n1
    d1 = codes_mod.gabidulin(fld, n1, n1, a1)
    ext1, phi1, phi1_inv = d1.ext_field, d1.expand, d1.flatten
    b1 = len(net.out_edges(net.sources[0]))
    last_fail = None
    for _ in range(max_draws):
        code = _draw_linear_code(rng, net, fld, m=n1 if n_uses > 1 else m)
        e1 = _draw_matrix(rng, fld, n1, b1)
        transfer = linear_transfer_matrices(net, code, fld)
        b_mats = {t_: (e1 @ transfer[t_][0]) for t_ in net.terminals}
        if any(b.rank() < n1 for b in b_mats.values()):
            last_fail = next(t_ for t_, b in b_mats.items() if b.rank() < n1)
            continue
        inverses = {t_: b_mats[t_].right_inverse() for t_ in net.terminals}
        rows_per_use = n1 if n_uses > 1 else None

        def encode(x1):
            """x1: message matrix over the big field (rows x a1)."""
            cw = x1 @ d1.generator
            packets = phi1(cw) @ e1
            return packets  # (n1 * rows) x b1 over F_q

        def decode_stacked(t_, r_matrix):
            w = r_matrix @ inverses[t_]
            rows = []
            blocks = w.nrows // n1
            for i in range(blocks):
                block = w.submatrix(row_idx=range(i * n1, (i + 1) * n1))
                word = phi1_inv(block)
                rows.append(d1.rank_decode(tuple(word.rows[0]), t))
            return gf.Matrix(ext1, tuple(r for r in rows))

        meta = {"field": fld, "ext1": ext1, "phi1": phi1, "phi1_inv": phi1_inv,
                "d1": d1, "e1": e1, "n1": n1, "m": m, "transfer": transfer,
                "b_mats": b_mats, "encode": encode,
                "decode_stacked": decode_stacked, "rows_per_use": rows_per_use}
        if n_uses == 1:
            return _package_single_one_shot(net, fld, a1, t, code, meta)
        return _package_single_compound(net, fld, a1, t, code, meta, n_uses)
    raise DrawsExhausted(last_fail)


def _package_single_one_shot(net, fld, a1, t, code, meta):
    q = fld.q
    n1, m = meta["n1"], meta["m"]
    ext1 = meta["ext1"]
    encode = meta["encode"]
    decode_stacked = meta["decode_stacked"]
    alphabet = tuple(itertools.product(range(q), repeat=m))

    def local_codeword(x1_row):
        x1 = gf.Matrix(ext1, (tuple(x1_row),))
        return _columns(encode(x1))

    messages = [tuple(msg) for msg in
                itertools.product(range(ext1.q), repeat=a1)]
    source_codes = [[local_codeword(msg) for msg in messages]]

    def make_decoder(t_):
        def decode(obs):
            r = gf.Matrix(fld, tuple(tuple(sym[d] for sym in obs)
                                     for d in range(m)))
            x1 = decode_stacked(t_, r)
            return (tuple(x1.rows[0]),)

        return decode

    decoders = {t_: make_decoder(t_) for t_ in net.terminals}
    return Scheme(1, [code], source_codes, decoders, alphabet,
                  (float(a1),), meta=dict(meta, messages=messages,
                                          local_codeword=local_codeword))


def _package_single_compound(net, fld, a1, t, code, meta, n_uses):
    q = fld.q
    n1 = meta["n1"]
    ext1 = meta["ext1"]
    encode = meta["encode"]
    decode_stacked = meta["decode_stacked"]
    alphabet = tuple(itertools.product(range(q), repeat=n1))

    def local_codeword(x1_rows):
        """x1_rows: tuple of n_uses rows, each a tuple of a1 elements."""
        x1 = gf.Matrix(ext1, tuple(tuple(r) for r in x1_rows))
        packets = encode(x1)  # (n1*n_uses) x b1
        uses = []
        for j in range(n_uses):
            block = packets.submatrix(row_idx=range(j * n1, (j + 1) * n1))
            uses.append(_columns(block))
        return tuple(uses)

    def make_decoder(t_):
        def decode(per_use_obs):
            rows = []
            for obs in per_use_obs:
                rows.extend(tuple(sym[d] for sym in obs) for d in range(n1))
            r = gf.Matrix(fld, tuple(rows))
            x1 = decode_stacked(t_, r)
            return (tuple(tuple(row) for row in x1.rows),)

        return decode

    decoders = {t_: make_decoder(t_) for t_ in net.terminals}
    return Scheme(n_uses, [code] * n_uses, None, decoders, alphabet,
                  (float(a1),), meta=dict(meta, local_codeword=local_codeword))


def _achiev1_double(net, demands, t, fld, rng, max_draws, n_uses=1):
    q = fld.q
    a1, a2 = demands
    n1, n2 = a1 + 2 * t, a2 + 2 * t
    m = n1 * n2
    width = n1 if n_uses > 1 else m  # per-use symbol width on the edges
    d1 = codes_mod.gabidulin(fld, n1, n1, a1)
    ext1, phi1, phi1_inv = d1.ext_field, d1.expand, d1.flatten
    d2 = codes_mod.gabidulin(ext1, n2, n2, a2)
    ext2, phi2, phi2_inv = d2.ext_field, d2.expand, d2.flatten
    b1 = len(net.out_edges(net.sources[0]))
    b2 = len(net.out_edges(net.sources[1]))
    last_fail = None
    for _ in range(max_draws):
        code = _draw_linear_code(rng, net, fld, m=width)
        e1 = _draw_matrix(rng, fld, n1, b1)
        e2 = _draw_matrix(rng, fld, n2, b2)
        transfer = linear_transfer_matrices(net, code, fld)
        a_mats, b_mats, ok = {}, {}, True
        for t_ in net.terminals:
            m1 = e1 @ transfer[t_][0]          # n1 x |in(T)| over F_q
            m2 = e2 @ transfer[t_][1]          # n2 x |in(T)| over F_q
            top = d1.generator @ m1.lift(ext1)
            a_t = top.vstack(m2.lift(ext1))    # (a1+n2) x |in(T)| over ext1
            if m1.rank() < n1 or a_t.rank() < a1 + n2:
                ok = False
                last_fail = t_
                break
            a_mats[t_] = a_t
            b_mats[t_] = m1
        if not ok:
            continue
        a_inv = {t_: a_mats[t_].right_inverse() for t_ in net.terminals}
        b_inv = {t_: b_mats[t_].right_inverse() for t_ in net.terminals}
        m2_mats = {t_: e2 @ transfer[t_][1] for t_ in net.terminals}

        def encode1(x1):
            """x1: n2 x a1 matrix over ext1 -> m x b1 packet matrix."""
            return phi1(x1 @ d1.generator) @ e1

        def encode2(x2_row):
            """x2: 1 x a2 row over ext2 -> m x b2 packet matrix."""
            x2 = gf.Matrix(ext2, (tuple(x2_row),))
            return phi1(phi2(x2 @ d2.generator)) @ e2

        def decode_stacked(t_, r):
            """r: m x |in(T)| matrix over F_q collecting all observations."""
            y = phi1_inv(r)                       # n2 x |in| over ext1
            p = y @ a_inv[t_]                     # n2 x (a1+n2) over ext1
            m2_part = p.submatrix(col_idx=range(a1, a1 + n2))
            r2 = phi2_inv(m2_part)                # 1 x n2 over ext2
            x2 = d2.rank_decode(tuple(r2.rows[0]), t)
            clean2 = phi1(phi2(gf.Matrix(ext2, (x2,)) @ d2.generator)) @ m2_mats[t_]
            r_bar = r - clean2
            w = r_bar @ b_inv[t_]                 # m x n1 over F_q
            rows = []
            for i in range(n2):
                block = w.submatrix(row_idx=range(i * n1, (i + 1) * n1))
                word = phi1_inv(block)
                rows.append(d1.rank_decode(tuple(word.rows[0]), t))
            return (tuple(rows), x2)

        meta = {"field": fld, "ext1": ext1, "ext2": ext2, "d1": d1, "d2": d2,
                "e1": e1, "e2": e2, "n1": n1, "n2": n2, "m": m,
                "encode1": encode1, "encode2": encode2,
                "a_mats": a_mats, "b_mats": b_mats,
                "columns": _columns}

        if n_uses == 1:
            def make_decoder(t_):
                def decode(obs):
                    r = gf.Matrix(fld, tuple(tuple(sym[d] for sym in obs)
                                             for d in range(m)))
                    return decode_stacked(t_, r)

                return decode

            decoders = {t_: make_decoder(t_) for t_ in net.terminals}
            alphabet = tuple(itertools.product(range(q), repeat=m))
            return Scheme(1, [code], None, decoders, alphabet,
                          (float(a1), float(a2)), meta=meta)

        # compound packaging: one row-block of packets per network use
        def split_uses(packets):
            return tuple(_columns(packets.submatrix(
                row_idx=range(j * n1, (j + 1) * n1))) for j in range(n_uses))

        def local1(x1):
            return split_uses(encode1(x1))

        def local2(x2_row):
            return split_uses(encode2(x2_row))

        def make_decoder(t_):
            def decode(per_use_obs):
                rows = []
                for obs in per_use_obs:
                    rows.extend(tuple(sym[d] for sym in obs)
                                for d in range(n1))
                return decode_stacked(t_, gf.Matrix(fld, tuple(rows)))

            return decode

        decoders = {t_: make_decoder(t_) for t_ in net.terminals}
        alphabet = tuple(itertools.product(range(q), repeat=n1))
        return Scheme(n_uses, [code] * n_uses, None, decoders, alphabet,
                      (float(a1), float(a2)),
                      meta=dict(meta, local1=local1, local2=local2))
    raise DrawsExhausted(last_fail)


def build_achiev2(net, demands, t, q, max_draws=200, seed=0):
    """Compound-model scheme: the same linear network code is reused over
    several uses and the adversary must corrupt a fixed edge set in every
    use; alphabet F_q^m with m = min(a_i) + 2t, for one or two sources
    (two-source packaging assumes a1 <= a2)."""
    n_sources = len(net.sources)
    if n_sources not in (1, 2):
        raise UnsupportedSources("the construction covers one or two sources")
    if any(a < 1 for a in demands):
        raise InvalidParams("demands must be positive")
    _check_min_cut_region(net, demands, slack=2 * t)
    fld = gf.make_field(q)
    rng = random.Random(seed)
    if n_sources == 1:
        n_uses = demands[0] + 2 * t
        return _achiev1_single(net, demands[0], t, fld, rng, max_draws,
                               n_uses=n_uses)
    if demands[0] > demands[1]:
        raise InvalidParams("two-source compound packaging assumes a1 <= a2")
    return _achiev1_double(net, demands, t, fld, rng, max_draws,
                           n_uses=demands[1] + 2 * t)


# -- link-level coded scheme ------------------------------------------------------

def build_product_alphabet(net, demands, t, e, q, m, max_draws=200, seed=0):
    """Scheme over the alphabet F_q^m against a per-edge sub-symbol
    adversary (up to t errors and e erasures per edge): an inner
    [m, m-2t-e, 2t+e+1] code on every link around an outer adversary-free
    linear code.  Achieves rate (m-2t-e)/m * demands."""
    k = m - 2 * t - e
    if k < 1:
        raise InvalidParams("need m >= 2t + e + 1")
    fld = gf.make_field(q)
    gen = codes_mod.mds_generator(fld, m, k)
    inner = codes_mod.BlockCode.from_generator(fld, gen)
    enc_table = {}
    dec_table = {}
    for msg in itertools.product(range(q), repeat=k):
        cw = gf.mat_vec_row(fld, msg, gen)
        enc_table[msg] = cw
        dec_table[cw] = msg
    base = build_adversary_free(net, demands, q, max_draws, seed)
    outer_code = base.network_code
    encoders = base.meta["encoders"]
    stacked = base.meta["stacked"]

    fns = {}
    for v in net.intermediates:
        lv = outer_code.fn(v)

        def make_fn(matrix):
            def apply(values):
                decoded = [dec_table[codes_mod.decode_hamming(inner, val)]
                           for val in values]
                n_out = len(matrix[0]) if matrix else 0
                out = []
                for j in range(n_out):
                    acc = (0,) * k
                    for i, vec in enumerate(decoded):
                        c = matrix[i][j]
                        if c:
                            acc = tuple(fld.add(x, fld.mul(c, y))
                                        for x, y in zip(acc, vec))
                    out.append(enc_table[acc])
                return tuple(out)

            return apply

        fn = make_fn(lv.matrix)
        fns[v] = FuncVertexLike(fn, lv.matrix)
    code = NetworkCode(fns)

    def local_codeword(i, msg_vectors):
        """msg_vectors: a_i message k-tuples -> b_i inner codewords."""
        y = []
        b_i = len(net.out_edges(net.sources[i]))
        for j in range(b_i):
            acc = (0,) * k
            for r in range(demands[i]):
                c = encoders[i].rows[r][j]
                if c:
                    acc = tuple(fld.add(x, fld.mul(c, v))
                                for x, v in zip(acc, msg_vectors[r]))
            y.append(enc_table[acc])
        return tuple(y)

    source_codes = []
    messages = []
    for i in range(len(net.sources)):
        msgs = list(itertools.product(
            list(itertools.product(range(q), repeat=k)), repeat=demands[i]))
        messages.append(msgs)
        source_codes.append([local_codeword(i, msg) for msg in msgs])

    inverses = {t_: stacked[t_].right_inverse() for t_ in net.terminals}

    def make_decoder(t_):
        inv = inverses[t_]

        def decode(obs):
            vecs = [dec_table[codes_mod.decode_hamming(inner, v)] for v in obs]
            per_source = []
            for d in range(k):
                y = gf.Matrix(fld, (tuple(v[d] for v in vecs),))
                per_source.append((y @ inv).rows[0])
            out = []
            pos = 0
            for a_i in demands:
                msgs = tuple(tuple(per_source[d][pos + r] for d in range(k))
                             for r in range(a_i))
                out.append(msgs)
                pos += a_i
            return tuple(out)

        return decode

    decoders = {t_: make_decoder(t_) for t_ in net.terminals}
    alphabet = tuple(itertools.product(range(q), repeat=m))
    rate = tuple(k / m * a for a in demands)
    return Scheme(1, [code], source_codes, decoders, alphabet, rate,
                  meta={"field": fld, "inner": inner, "outer": base,
                        "enc_table": enc_table, "messages": messages,
                        "adversary": AdversarySpec(variant=PER_SYMBOL,
                                                   t=t, e=e, m=m)})


class FuncVertexLike:
    """Callable vertex that remembers the outer linear matrix it wraps."""

    def __init__(self, fn, matrix):
        self.fn = fn
        self.matrix = matrix

    def __call__(self, values):
        return self.fn(values)


# -- the hand-built double-relay scheme ---------------------------------------------

DOUBLE_RELAY_GEN = ((1, 0, 0, 3, 1), (2, 1, 0, 2, 0), (3, 0, 1, 1, 0))


def double_relay_scheme():
    """Rate-(1, 2) one-shot scheme over GF(5) on the two-relay example
    network, protected against one corruption among the second source's
    relay-two links and one among the remaining vulnerable links."""
    from . import netlib

    fld = gf.make_field(5)
    net = netlib.two_source_double_relay(tuple(range(5)))

    def clean(v):
        return 0 if v == STAR else v

    def f_v1(x1, x3, x4):
        x1, x3, x4 = clean(x1), clean(x3), clean(x4)
        return (fld.add(x1, fld.add(fld.mul(2, x3), fld.mul(3, x4))), x3, x4)

    def f_v2(x2, x5, x6, x7):
        x2 = clean(x2)
        maj = codes_mod.majority_extend(clean(x5), clean(x6), clean(x7))
        return (fld.add(x2, maj), fld.mul(2, x2))

    code = NetworkCode({"V1": FuncVertex(f_v1), "V2": FuncVertex(f_v2)})

    code1 = [(a, fld.mul(3, a)) for a in range(5)]
    code2 = [(b, c, fld.add(fld.mul(2, b), c), fld.add(fld.mul(2, b), c),
              fld.add(fld.mul(2, b), c))
             for b in range(5) for c in range(5)]

    gen = gf.Matrix(fld, DOUBLE_RELAY_GEN)
    block = codes_mod.BlockCode.from_generator(fld, gen)
    cw_to_msg = {}
    for msg in itertools.product(range(5), repeat=3):
        cw_to_msg[gf.mat_vec_row(fld, msg, gen)] = msg
    table = {}
    for obs in itertools.product(range(5), repeat=5):
        a, b, c = cw_to_msg[codes_mod.decode_hamming(block, obs)]
        table[obs] = ((a, fld.mul(3, a)),
                      (b, c, fld.add(fld.mul(2, b), c),
                       fld.add(fld.mul(2, b), c), fld.add(fld.mul(2, b), c)))

    def decode(obs):
        return table[tuple(obs)]

    adv = AdversarySpec(blocks=(
        AdvBlock({"e5", "e6", "e7"}, 1, 0),
        AdvBlock({"e1", "e8", "e9", "e10", "e11", "e12"}, 1, 0)))
    return Scheme(1, [code], [code1, code2], {"T": decode}, tuple(range(5)),
                  (1.0, 2.0), meta={"network": net, "adversary": adv,
                                    "generator": gen, "block_code": block})


# -- exhaustive linear impossibility ---------------------------------------------

def linear_impossibility(net, adv, q, target, limit=1 << 16):
    """For a single-relay network, enumerate every linear vertex assignment
    and compute the exact one-shot capacity of the induced adversarial
    channel.  Returns the per-assignment capacities (all below `target`
    proves linear coding insufficient) and a nonlinear majority scheme
    achieving `target` when the relay has at least three inputs."""
    from .channel import TableChannel, one_shot_capacity
    from .network import adversarial_fanouts as fanouts

    relays = net.intermediates
    if len(relays) != 1:
        raise InvalidParams("exhaustive search covers single-relay networks")
    relay = relays[0]
    fld = gf.make_field(q)
    r = len(net.in_edges(relay))
    s = len(net.out_edges(relay))
    if q ** (r * s) > limit:
        raise InvalidParams("too many linear assignments to enumerate")
    alphabet = tuple(range(q))
    inputs = list(itertools.product(
        *[list(itertools.product(alphabet, repeat=len(net.out_edges(src))))
          for src in net.sources]))
    results = []
    for combo in itertools.product(range(q), repeat=r * s):
        rows = tuple(tuple(combo[i * s + j] for j in range(s)) for i in range(r))
        code = NetworkCode({relay: LinearVertex(fld, rows)})
        table = {}
        for x in inputs:
            table[x] = fanouts(net, code, adv, x, alphabet)[net.terminals[0]]
        outputs = sorted(set().union(*table.values()))
        chan = TableChannel(inputs, outputs, table)
        cap = one_shot_capacity(chan)
        results.append((rows, cap.value_in_base(q)))
    all_below = all(value < target - 1e-9 for _, value in results)

    nonlinear = None
    if r >= 3 and s == 1:
        maj_table = {}
        for vals in itertools.product(alphabet + (STAR,), repeat=r):
            cleaned = [0 if v == STAR else v for v in vals]
            maj_table[vals] = (codes_mod.majority_extend(*cleaned[:3]),)
        maj_code = NetworkCode({relay: TableVertex(maj_table)})
        rep = [tuple([a] * len(net.out_edges(net.sources[0])))
               for a in alphabet]
        nonlinear = (maj_code, [rep])
    return {"results": results, "all_below_target": all_below,
            "nonlinear": nonlinear}
