"""Four circulant codes: generator matrices, duality criteria, distances.

A code is determined by a pair (a, b) of residues in R(n, F_q).  Its
generator matrix is

    G = [ I  0  A  B  ]
        [ 0  I -Bt At ]

with A, B the circulant matrices whose first rows are the coefficient
vectors of a and b.  Rows of G span a [4n, 2n] code; the identity blocks
make the first two length-n blocks of any codeword equal to its message.
"""

from __future__ import annotations

import multiprocessing
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .fields import Field
from .polyring import QuotientRing, poly_degree, poly_gcd

DEFAULT_CAP = 1 << 26


class CapExceeded(RuntimeError):
    """An exhaustive scan would exceed its workload cap."""


@dataclass(frozen=True)
class Codeword:
    """Codeword split into its four length-n blocks (c, d, e, f)."""

    blocks: tuple

    @property
    def vector(self) -> tuple:
        return self.blocks[0] + self.blocks[1] + self.blocks[2] + self.blocks[3]

    @property
    def weight(self) -> int:
        return sum(1 for x in self.vector if x)


def circulant(first_row: Sequence[int]) -> list[list[int]]:
    """Expand a first row into the circulant matrix M[i][j] = row[(j - i) % n]."""
    n = len(first_row)
    return [[first_row[(j - i) % n] for j in range(n)] for i in range(n)]


class FourCirculantCode:
    """The [4n, 2n] code C_{a,b} over F_q."""

    def __init__(self, ring: QuotientRing, a: Sequence[int], b: Sequence[int]):
        n = ring.n
        if len(a) != n or len(b) != n:
            raise ValueError(f"generator polynomials must have exactly {n} coefficients")
        for c in tuple(a) + tuple(b):
            if not 0 <= c < ring.field.q:
                raise ValueError(f"coefficient {c} out of range for F_{ring.field.q}")
        self.ring = ring
        self.field = ring.field
        self.n = n
        self.a = tuple(a)
        self.b = tuple(b)
        self.a_rec = ring.reciprocal(self.a)
        self.b_rec = ring.reciprocal(self.b)
        self._neg_b_rec = ring.neg(self.b_rec)
        self._residue: Optional[tuple] = None

    # -- encoding and membership ------------------------------------------------

    def encode(self, c: Sequence[int], d: Sequence[int]) -> Codeword:
        """c*(1,0,a,b) + d*(0,1,-b',a') with products taken in R(n, F_q)."""
        R = self.ring
        c = tuple(c)
        d = tuple(d)
        e = R.sub(R.mul(c, self.a), R.mul(d, self.b_rec))
        f = R.add(R.mul(c, self.b), R.mul(d, self.a_rec))
        return Codeword((c, d, e, f))

    def contains(self, word) -> bool:
        """Membership via the systematic form: blocks (c, d) are the message."""
        if isinstance(word, Codeword):
            c, d, e, f = word.blocks
        else:
            flat = tuple(word)
            if len(flat) != 4 * self.n:
                raise ValueError(f"expected a vector of length {4 * self.n}")
            n = self.n
            c, d, e, f = flat[:n], flat[n : 2 * n], flat[2 * n : 3 * n], flat[3 * n :]
        expected = self.encode(c, d)
        return expected.blocks[2] == tuple(e) and expected.blocks[3] == tuple(f)

    # -- duality criteria ---------------------------------------------------------

    def criterion_residue(self) -> tuple:
        """1 + a*a' + b*b' reduced in R(n, F_q)."""
        if self._residue is None:
            R = self.ring
            s = R.add(R.mul(self.a, self.a_rec), R.mul(self.b, self.b_rec))
            self._residue = R.add(R.one, s)
        return self._residue

    def is_self_dual_poly(self) -> bool:
        return self.criterion_residue() == self.ring.zero

    def is_lcd(self) -> bool:
        """Complementary dual: the criterion residue is a unit mod x^n - 1."""
        g = poly_gcd(self.field, self.ring.lift(self.criterion_residue()), self.ring.modulus_poly)
        return poly_degree(g) == 0

    def generator_matrix(self) -> list[list[int]]:
        n, F = self.n, self.field
        A = circulant(self.a)
        B = circulant(self.b)
        NBt = circulant(self._neg_b_rec)
        At = circulant(self.a_rec)
        rows = []
        for i in range(n):
            row = [0] * (2 * n)
            row[i] = F.one
            rows.append(row + A[i] + B[i])
        for i in range(n):
            row = [0] * (2 * n)
            row[n + i] = F.one
            rows.append(row + NBt[i] + At[i])
        return rows

    def is_self_dual_matrix(self) -> bool:
        """Matrix-side criterion: A*At + B*Bt + I = 0 and the full Gram G*Gt = 0.

        Works entirely on expanded matrices with literal transposition, so it
        shares no machinery with the residue criterion.
        """
        n, F = self.n, self.field
        A = circulant(self.a)
        B = circulant(self.b)
        At = [[A[j][i] for j in range(n)] for i in range(n)]
        Bt = [[B[j][i] for j in range(n)] for i in range(n)]
        for i in range(n):
            for j in range(n):
                s = F.one if i == j else F.zero
                for t in range(n):
                    s = F.add(s, F.mul(A[i][t], At[t][j]))
                    s = F.add(s, F.mul(B[i][t], Bt[t][j]))
                if s != F.zero:
                    return False
        G = []
        for i in range(n):
            row = [0] * (2 * n)
            row[i] = F.one
            G.append(row + A[i] + B[i])
        for i in range(n):
            row = [0] * (2 * n)
            row[n + i] = F.one
            G.append(row + [F.neg(x) for x in Bt[i]] + At[i])
        for i in range(2 * n):
            for j in range(2 * n):
                s = F.zero
                for t in range(4 * n):
                    s = F.add(s, F.mul(G[i][t], G[j][t]))
                if s != F.zero:
                    return False
        return True

    # -- minimum distance ------------------------------------------------------------

    def min_distance(self, cap: int = DEFAULT_CAP, workers: int = 1) -> tuple[int, Codeword]:
        """Exact minimum distance by scanning all q^(2n) messages.

        Returns the distance and the codeword of the lexicographically least
        message attaining it (message index = c_index * q^n + d_index).
        Raises CapExceeded when q^(2n) > cap.
        """
        Q = self.ring.size
        total = Q * Q
        if total > cap:
            raise CapExceeded(
                f"distance scan needs {total} codeword evaluations, cap is {cap}"
            )
        if workers > 1 and total >= 4:
            chunk = (total + workers - 1) // workers
            tasks = []
            for w in range(workers):
                lo, hi = w * chunk, min((w + 1) * chunk, total)
                if lo < hi:
                    tasks.append(
                        (
                            self.field.p,
                            self.field.k,
                            self.field.modulus,
                            self.n,
                            self.a,
                            self.b,
                            lo,
                            hi,
                        )
                    )
            ctx = multiprocessing.get_context("fork")
            with ctx.Pool(len(tasks)) as pool:
                partials = pool.map(_distance_worker, tasks)
            best_w, best_m = min(p for p in partials if p[1] >= 0)
        else:
            best_w, best_m = _distance_scan(self, 0, total)
        ci, di = divmod(best_m, Q)
        witness = self.encode(self.ring.element(ci), self.ring.element(di))
        return best_w, witness

    def __repr__(self) -> str:
        return f"FourCirculantCode(q={self.field.q}, n={self.n}, a={list(self.a)}, b={list(self.b)})"


def _distance_scan(code: FourCirculantCode, lo: int, hi: int) -> tuple[int, int]:
    ring = code.ring
    Q = ring.size
    t = ring.tables()
    best_w = 4 * code.n + 1
    best_m = -1
    if t is not None:
        mul, add, neg, rec, W = t.mul, t.add, t.neg, t.recip, t.weight
        ai, bi = ring.index(code.a), ring.index(code.b)
        row_a, row_b = mul[ai], mul[bi]
        row_ap = mul[rec[ai]]
        neg_row_bp = [neg[v] for v in mul[rec[bi]]]
        ci_lo, ci_hi = lo // Q, (hi - 1) // Q
        for ci in range(ci_lo, ci_hi + 1):
            wc = W[ci]
            arow = add[row_a[ci]]
            brow = add[row_b[ci]]
            d_start = lo - ci * Q if ci == ci_lo else 0
            d_end = hi - ci * Q if ci == ci_hi else Q
            for di in range(max(d_start, 0), d_end):
                if ci == 0 and di == 0:
                    continue
                w = wc + W[di] + W[arow[neg_row_bp[di]]] + W[brow[row_ap[di]]]
                if w < best_w:
                    best_w = w
                    best_m = ci * Q + di
    else:
        for m in range(lo, hi):
            if m == 0:
                continue
            ci, di = m // Q, m % Q
            word = code.encode(ring.element(ci), ring.element(di))
            w = word.weight
            if w < best_w:
                best_w = w
                best_m = m
    return best_w, best_m


def _distance_worker(args):
    p, k, modulus, n, a, b, lo, hi = args
    field = Field(p, k, modulus if k > 1 else None)
    ring = QuotientRing(field, n)
    code = FourCirculantCode(ring, a, b)
    return _distance_scan(code, lo, hi)


def _digit_matrix(q: int, n: int, count: int) -> np.ndarray:
    codes = np.arange(count, dtype=np.int64)
    E = np.empty((count, n), dtype=np.int64)
    v = codes.copy()
    for j in range(n):
        E[:, j] = v % q
        v //= q
    return E


def self_dual_matrix_sweep(
    field: Field,
    n: int,
    pairs: Optional[Sequence[tuple[int, int]]] = None,
    chunk: int = 8192,
) -> np.ndarray:
    """Matrix-side self-duality test over many (a, b) pairs at once.

    pairs is a sequence of (a_index, b_index) ring element indices; None means
    all q^(2n) pairs in a-major order.  Prime fields run a batched integer
    computation that assembles every G explicitly and checks A*At + B*Bt + I = 0
    together with the full Gram G*Gt = 0.  Extension fields fall back to the
    per-code check.
    """
    ring = QuotientRing(field, n)
    Q = ring.size
    if pairs is None:
        ai_all = np.repeat(np.arange(Q, dtype=np.int64), Q)
        bi_all = np.tile(np.arange(Q, dtype=np.int64), Q)
    else:
        arr = np.asarray(pairs, dtype=np.int64)
        ai_all, bi_all = arr[:, 0], arr[:, 1]
    total = len(ai_all)
    if field.k != 1:
        out = np.empty(total, dtype=bool)
        for s in range(total):
            code = FourCirculantCode(
                ring, ring.element(int(ai_all[s])), ring.element(int(bi_all[s]))
            )
            out[s] = code.is_self_dual_matrix()
        return out

    p = field.p
    E = _digit_matrix(p, n, Q)
    idx = (np.arange(n)[None, :] - np.arange(n)[:, None]) % n
    I_n = np.eye(n, dtype=np.int64)
    out = np.empty(total, dtype=bool)
    for start in range(0, total, chunk):
        stop = min(start + chunk, total)
        ai = ai_all[start:stop]
        bi = bi_all[start:stop]
        A = E[ai][:, idx]
        B = E[bi][:, idx]
        At = A.transpose(0, 2, 1)
        Bt = B.transpose(0, 2, 1)
        gram = (
            np.einsum("sij,skj->sik", A, A) + np.einsum("sij,skj->sik", B, B) + I_n
        ) % p
        ok = (gram == 0).all(axis=(1, 2))
        m = stop - start
        G = np.zeros((m, 2 * n, 4 * n), dtype=np.int64)
        G[:, :n, :n] = I_n
        G[:, n:, n : 2 * n] = I_n
        G[:, :n, 2 * n : 3 * n] = A
        G[:, :n, 3 * n :] = B
        G[:, n:, 2 * n : 3 * n] = (-Bt) % p
        G[:, n:, 3 * n :] = At
        GGt = np.einsum("sij,skj->sik", G, G) % p
        ok &= (GGt == 0).all(axis=(1, 2))
        out[start:stop] = ok
    return out
