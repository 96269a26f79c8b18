"""Component code construction, encoding, syndromes, and bounded-distance decoding.

Supported constructions:
  * extended Hamming (2^m, 2^m-1-m, 4), t=1, syndrome decoding
  * extended narrow-sense BCH of length 2^m with t=2, algebraic decoding
  * repetition and small custom codes, brute-force decoding (test oracles)

All decoders implement exact bounded-distance semantics: a codeword is
returned iff it lies within Hamming distance t of the input.
"""

from dataclasses import dataclass, field

import numpy as np

from . import gf2

# Primitive polynomials (including the x^m term) per field degree.
_PRIMITIVE_POLY = {
    3: 0b1011,
    4: 0b10011,
    5: 0b100101,
    6: 0b1000011,
    7: 0b10001001,
    8: 0b100011101,  # x^8 + x^4 + x^3 + x^2 + 1
    9: 0b1000010001,
    10: 0b10000001001,
    11: 0b101000000001,
    12: 0b1000001010011,
}


class _GF:
    """GF(2^m) arithmetic via log/antilog tables."""

    def __init__(self, m):
        self.m = m
        self.q = 1 << m
        poly = _PRIMITIVE_POLY[m]
        exp = np.zeros(2 * (self.q - 1), dtype=np.int64)
        log = np.full(self.q, -1, dtype=np.int64)
        x = 1
        for i in range(self.q - 1):
            exp[i] = x
            log[x] = i
            x <<= 1
            if x & self.q:
                x ^= poly
        exp[self.q - 1:] = exp[: self.q - 1]
        self.exp = exp
        self.log = log

    def mul(self, a, b):
        a = np.asarray(a)
        b = np.asarray(b)
        out = self.exp[(self.log[a] + self.log[b]) % (self.q - 1)]
        return np.where((a == 0) | (b == 0), 0, out)

    def pow(self, a, e):
        a = np.asarray(a)
        out = self.exp[(self.log[a] * e) % (self.q - 1)]
        return np.where(a == 0, 0, out)

    def inv(self, a):
        return self.exp[(self.q - 1 - self.log[a]) % (self.q - 1)]


@dataclass
class ComponentCode:
    """An (n, k, d_min) binary linear code with a BDD of capability t."""

    n: int
    k: int
    d_min: int
    t: int
    generator: np.ndarray      # (k, n) systematic, message in first k positions
    parity_check: np.ndarray   # (n-k, n); last row all-ones for extended codes
    kind: str
    _decode_data: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        g, h = self.generator, self.parity_check
        if g.shape != (self.k, self.n) or h.shape != (self.n - self.k, self.n):
            raise ValueError("generator/parity-check shape mismatch")
        if np.any(gf2.matmul2(g, h.T)):
            raise ValueError("generator rows must satisfy all parity checks")


@dataclass
class ProductCodeParams:
    """Two-dimensional product code with identical row/column component code."""

    component: ComponentCode

    @property
    def n2(self):
        return self.component.n ** 2

    @property
    def k2(self):
        return self.component.k ** 2

    @property
    def d_min2(self):
        return self.component.d_min ** 2

    @property
    def rate(self):
        return self.component.k ** 2 / self.component.n ** 2


def build_extended_hamming(m):
    """(2^m, 2^m-1-m, 4) extended Hamming code, t=1, systematic."""
    if not 3 <= m <= 12:
        raise ValueError(f"extended Hamming requires 3 <= m <= 12, got {m}")
    n = 1 << m
    k = n - 1 - m
    vals = np.arange(1, n)
    powers = vals[(vals & (vals - 1)) == 0]
    non_powers = vals[(vals & (vals - 1)) != 0]
    col_vals = np.concatenate([non_powers, powers])  # coordinates 0..n-2

    h = np.zeros((m + 1, n), dtype=np.uint8)
    for b in range(m):
        h[b, : n - 1] = (col_vals >> b) & 1
    h[m, :] = 1

    g = np.zeros((k, n), dtype=np.uint8)
    for j in range(k):
        v = int(col_vals[j])
        g[j, j] = 1
        for b in range(m):
            g[j, k + b] = (v >> b) & 1
        g[j, n - 1] = (1 + bin(v).count("1")) % 2

    syn_to_pos = np.full(n, -1, dtype=np.int64)
    syn_to_pos[col_vals] = np.arange(n - 1)
    syn_to_pos[0] = n - 1  # zero base syndrome + odd parity -> parity bit

    data = {"syn_to_pos": syn_to_pos, "pow2": (1 << np.arange(m)).astype(np.int64)}
    return ComponentCode(n, k, 4, 1, g, h, "extended-hamming", data)


def _min_poly(gf, coset):
    """Binary minimal polynomial with roots alpha^e for e in the coset."""
    poly = np.zeros(len(coset) + 1, dtype=np.int64)
    poly[0] = 1
    deg = 0
    for e in coset:
        root = gf.exp[e]
        nxt = np.zeros_like(poly)
        nxt[1: deg + 2] = poly[: deg + 1]
        nxt[: deg + 1] ^= gf.mul(poly[: deg + 1], root)
        poly = nxt
        deg += 1
    if np.any((poly != 0) & (poly != 1)):
        raise AssertionError("minimal polynomial must be binary")
    return poly.astype(np.uint8)  # poly[i] = coefficient of x^i


def _poly_mul2(a, b):
    out = np.zeros(len(a) + len(b) - 1, dtype=np.int64)
    for i, c in enumerate(a):
        if c:
            out[i: i + len(b)] ^= b.astype(np.int64)
    return out.astype(np.uint8)


def _poly_rem2(a, g):
    """Remainder of a(x) mod g(x) over GF(2); coefficients ascending."""
    a = a.astype(np.uint8).copy()
    dg = len(g) - 1
    for i in range(len(a) - 1, dg - 1, -1):
        if a[i]:
            a[i - dg: i + 1] ^= g
    return a[:dg]


def build_extended_bch(m, t_design):
    """Extended narrow-sense BCH code of length 2^m with t = t_design = 2."""
    if m not in range(4, 11):
        raise ValueError(f"extended BCH requires 4 <= m <= 10, got {m}")
    if t_design != 2:
        raise ValueError("only double-error-correcting (t_design=2) BCH is supported")
    gf = _GF(m)
    n_bch = (1 << m) - 1

    def coset(s):
        out, e = [], s
        while True:
            out.append(e)
            e = (2 * e) % n_bch
            if e == s:
                return out

    g_poly = _poly_mul2(_min_poly(gf, coset(1)), _min_poly(gf, coset(3)))
    r = len(g_poly) - 1
    k = n_bch - r
    if k <= 0:
        raise ValueError("degenerate BCH parameters")
    n = n_bch + 1

    # Coordinate i carries polynomial degree pi(i); last coordinate is parity.
    pi = np.concatenate([np.arange(r, n_bch), np.arange(r)])

    gen = np.zeros((k, n), dtype=np.uint8)
    for i in range(k):
        xi = np.zeros(r + i + 1, dtype=np.uint8)
        xi[r + i] = 1
        gen[i, i] = 1
        gen[i, k: n - 1] = _poly_rem2(xi, g_poly)
        gen[i, n - 1] = gen[i, : n - 1].sum() % 2

    alpha_pi = gf.exp[pi % (gf.q - 1)]
    alpha3_pi = gf.pow(alpha_pi, 3)
    h = np.zeros((2 * m + 1, n), dtype=np.uint8)
    for b in range(m):
        h[b, : n - 1] = (alpha_pi >> b) & 1
        h[m + b, : n - 1] = (alpha3_pi >> b) & 1
    h[2 * m, :] = 1
    if gf2.rank2(h) != 2 * m + 1:
        raise AssertionError("BCH parity-check matrix is rank deficient")

    pos_of_exp = np.full(n_bch, -1, dtype=np.int64)
    pos_of_exp[pi] = np.arange(n_bch)

    cube = gf.pow(np.arange(gf.q), 3)
    quadsol = np.full(gf.q, gf.q, dtype=np.int64)  # w^2 + w = c -> w; q = unsolvable
    w = np.arange(gf.q)
    c = gf.pow(w, 2) ^ w
    for wi, ci in zip(w[::-1], c[::-1]):
        quadsol[ci] = wi

    a1 = np.zeros((n, m), dtype=np.uint8)
    a3 = np.zeros((n, m), dtype=np.uint8)
    for b in range(m):
        a1[: n - 1, b] = (alpha_pi >> b) & 1
        a3[: n - 1, b] = (alpha3_pi >> b) & 1

    data = {
        "gf": gf,
        "a1": a1,
        "a3": a3,
        "pos_of_exp": pos_of_exp,
        "cube": cube,
        "quadsol": quadsol,
        "pow2": (1 << np.arange(m)).astype(np.int64),
    }
    return ComponentCode(n, k, 2 * t_design + 2, t_design, gen, h, "extended-bch", data)


def build_repetition(n):
    """(n, 1, n) repetition code with brute-force BDD."""
    if n < 2:
        raise ValueError("repetition length must be >= 2")
    g = np.ones((1, n), dtype=np.uint8)
    h = np.zeros((n - 1, n), dtype=np.uint8)
    for i in range(n - 1):
        h[i, i] = h[i, i + 1] = 1
    code = ComponentCode(n, 1, n, (n - 1) // 2, g, h, "repetition")
    code._decode_data["codebook"] = enumerate_codebook(code)
    return code


def build_custom(generator, d_min=None):
    """Small custom code (k <= 16) from a systematic generator, brute-force BDD."""
    g = gf2.mod2(generator)
    k, n = g.shape
    if k > 16:
        raise ValueError("custom codes are limited to k <= 16")
    if gf2.rank2(g) != k:
        raise ValueError("generator must have full rank")
    h = gf2.nullspace2(g)
    code = ComponentCode(n, k, 1, 0, g, h, "custom")
    cb = enumerate_codebook(code)
    w = cb[1:].sum(axis=1)
    dm = int(w.min()) if d_min is None else d_min
    code.d_min = dm
    code.t = (dm - 1) // 2
    code._decode_data["codebook"] = cb
    return code


def encode(code, message):
    """Systematic encoding: message occupies the first k positions."""
    message = gf2.mod2(message)
    if message.shape[-1] != code.k:
        raise ValueError(f"message length must be {code.k}")
    return gf2.matmul2(message, code.generator)


def syndrome(code, word):
    """parity_check @ word over GF(2); zero iff word is a codeword."""
    word = gf2.mod2(word)
    if word.shape[-1] != code.n:
        raise ValueError(f"word length must be {code.n}")
    return gf2.matmul2(word, code.parity_check.T)


def is_codeword(code, word):
    return not np.any(syndrome(code, word))


def enumerate_codebook(code):
    """All 2^k codewords; guarded against exponential blowup."""
    if code.k > 16:
        raise ValueError("codebook enumeration is limited to k <= 16")
    msgs = ((np.arange(1 << code.k)[:, None] >> np.arange(code.k)) & 1).astype(np.uint8)
    return gf2.matmul2(msgs, code.generator)


def _bits_matmul(words, mat_t):
    # Exact binary matmul through BLAS; sums stay far below 2^53.
    return (words.astype(np.float64) @ mat_t.astype(np.float64)).astype(np.int64) & 1


def _decode_hamming_batch(code, words):
    d = code._decode_data
    s = _bits_matmul(words, code.parity_check.T)
    m = code.parity_check.shape[0] - 1
    s_base = s[:, :m] @ d["pow2"][:m]
    s_par = s[:, m]
    err = np.where(s_par == 1, d["syn_to_pos"][s_base], -1)
    ok = (s_par == 1) | (s_base == 0)
    decoded = words.copy()
    rows = np.nonzero(err >= 0)[0]
    decoded[rows, err[rows]] ^= 1
    return decoded, ok


def _decode_bch_batch(code, words):
    d = code._decode_data
    gf = d["gf"]
    q = gf.q
    s1 = _bits_matmul(words, d["a1"]) @ d["pow2"]
    s3 = _bits_matmul(words, d["a3"]) @ d["pow2"]
    par = words.sum(axis=1, dtype=np.int64) & 1

    b = words.shape[0]
    err1 = np.full(b, -1, dtype=np.int64)
    err2 = np.full(b, -1, dtype=np.int64)
    ok = np.zeros(b, dtype=bool)

    s1_zero = s1 == 0
    s3_matches = s3 == d["cube"][s1]

    # no error / lone parity-bit error
    clean = s1_zero & (s3 == 0)
    ok |= clean
    err1 = np.where(clean & (par == 1), code.n - 1, err1)

    # single error in the BCH part (odd overall parity)
    single = (~s1_zero) & (par == 1) & s3_matches
    ok |= single
    pos1 = d["pos_of_exp"][gf.log[np.where(s1 == 0, 1, s1)] % (q - 1)]
    err1 = np.where(single, pos1, err1)

    # one BCH-part error plus the parity bit (even overall parity)
    pair_par = (~s1_zero) & (par == 0) & s3_matches
    ok |= pair_par
    err1 = np.where(pair_par, pos1, err1)
    err2 = np.where(pair_par, code.n - 1, err2)

    # two errors in the BCH part: z^2 + s1 z + (s3/s1 + s1^2) = 0
    dbl = (~s1_zero) & (par == 0) & (~s3_matches)
    s1_safe = np.where(s1_zero, 1, s1)
    c = gf.mul(s3, gf.inv(d["cube"][s1_safe])) ^ 1
    w = d["quadsol"][c]
    solvable = dbl & (w < q) & (c != 0)
    w_safe = np.where(w < q, w, 0)
    z1 = gf.mul(s1_safe, w_safe)
    z2 = z1 ^ s1
    z1 = np.where(z1 == 0, 1, z1)
    z2 = np.where(z2 == 0, 1, z2)
    ok |= solvable
    err1 = np.where(solvable, d["pos_of_exp"][gf.log[z1] % (q - 1)], err1)
    err2 = np.where(solvable, d["pos_of_exp"][gf.log[z2] % (q - 1)], err2)

    decoded = words.copy()
    rows = np.nonzero(ok & (err1 >= 0))[0]
    decoded[rows, err1[rows]] ^= 1
    rows = np.nonzero(ok & (err2 >= 0))[0]
    decoded[rows, err2[rows]] ^= 1
    return decoded, ok


def _decode_brute_batch(code, words):
    cb = code._decode_data["codebook"]
    dist = (words[:, None, :] ^ cb[None, :, :]).sum(axis=2)
    best = dist.argmin(axis=1)
    ok = dist[np.arange(len(words)), best] <= code.t
    return cb[best].copy(), ok


def bdd_decode_batch(code, words):
    """Vectorized BDD: (decoded (B,n), ok (B,)); rows with ok=False are unchanged.

    Exact BDD semantics: ok[i] iff a codeword lies within distance t of
    words[i], and then decoded[i] is that codeword.
    """
    words = gf2.mod2(words)
    if words.ndim != 2 or words.shape[1] != code.n:
        raise ValueError(f"words must have shape (B, {code.n})")
    if code.kind == "extended-hamming":
        decoded, ok = _decode_hamming_batch(code, words)
    elif code.kind == "extended-bch":
        decoded, ok = _decode_bch_batch(code, words)
    else:
        decoded, ok = _decode_brute_batch(code, words)
    # Enforce the distance contract even if a decoder branch misbehaves.
    bad = ok & ((decoded ^ words).sum(axis=1) > code.t)
    if np.any(bad):
        ok = ok & ~bad
        decoded[bad] = words[bad]
    return decoded, ok


def bdd_decode(code, word):
    """Single-word BDD; returns the codeword within distance t or None."""
    decoded, ok = bdd_decode_batch(code, gf2.mod2(word)[None, :])
    return decoded[0] if ok[0] else None
