"""Exact counting: brute-force censuses and the closed-form enumeration.

Everything here is integer-exact.  The self-dual pair sweep filters all
q^(2n) generator pairs through the residue criterion; the closed form

    (q - eta(-1)) * (q^((n-1)/2) + 1) * (q^(n-1) - q^((n-1)/2))   q odd
    q             * (q^((n-1)/2) + 1) * (q^(n-1) - q^((n-1)/2))   q even

applies when n is an odd prime and q is a primitive root mod n, and the
two are compared by the acceptance suite.
"""

from __future__ import annotations

import math
import multiprocessing
from dataclasses import dataclass, field as dataclass_field
from typing import Optional, Sequence

import numpy as np

from .codes import DEFAULT_CAP, CapExceeded, FourCirculantCode
from .fields import Field, is_prime, quad_char
from .polyring import QuotientRing, is_primitive_root, multiplicative_order


# ---------------------------------------------------------------------------
# solution counts behind the closed form

def count_sum_of_squares(field: Field) -> tuple[int, int]:
    """Solutions of x^2 + y^2 = -1 in F_q, exhaustive count next to q - eta(-1)."""
    if field.q % 2 == 0:
        raise ValueError("x^2 + y^2 = -1 count requires odd q")
    target = field.neg(field.one)
    squares = [field.mul(x, x) for x in field.elements()]
    brute = 0
    for sx in squares:
        want = field.sub(target, sx)
        brute += sum(1 for sy in squares if sy == want)
    formula = field.q - quad_char(field, field.neg(field.one))
    return brute, formula


def count_hermitian(field: Field) -> tuple[int, int]:
    """Solutions of a^(1+q) + b^(1+q) = -1 in F_{q^2}, next to (q+1)(q^2-q).

    Valid for every prime power q, even characteristic included.
    """
    q = field.q
    big = Field(field.p, 2 * field.k)
    target = big.neg(big.one)
    norms = [big.pow(x, 1 + q) for x in big.elements()]
    counts: dict[int, int] = {}
    for v in norms:
        counts[v] = counts.get(v, 0) + 1
    brute = 0
    for v, c in counts.items():
        brute += c * counts.get(big.sub(target, v), 0)
    formula = (q + 1) * (q * q - q)
    return brute, formula


def self_dual_count_formula(field: Field, n: int) -> Optional[int]:
    """Closed-form count of self-dual pairs, or None when outside its hypotheses."""
    q = field.q
    if n < 3 or n % 2 == 0 or not is_prime(n):
        return None
    if math.gcd(n, q) != 1 or not is_primitive_root(q, n):
        return None
    h = (n - 1) // 2
    core = (q**h + 1) * (q ** (n - 1) - q**h)
    if q % 2 == 0:
        return q * core
    return (q - quad_char(field, field.neg(field.one))) * core


# ---------------------------------------------------------------------------
# exhaustive self-dual pair sweep

@dataclass
class CensusReport:
    """Everything the self-dual pair sweep finds.

    distinct_code_count is None when fingerprinting all pairs would blow the
    workload cap (the count is only informative at small sizes anyway, and
    provably equals pair_count: the generator matrix is its own reduced row
    echelon form, so distinct pairs span distinct codes).
    """

    q: int
    n: int
    pair_count: int
    formula_count: Optional[int]
    distinct_code_count: Optional[int]
    pairs: list = dataclass_field(default_factory=list)
    pair_distances: Optional[list] = None
    per_code_distances: Optional[dict] = None


def _self_conv_groups(ring: QuotientRing):
    """For every ring element u (by index), u * u' and the grouping by value."""
    elems = [ring.element(i) for i in range(ring.size)]
    sc = [ring.mul(u, ring.reciprocal(u)) for u in elems]
    groups: dict[tuple, list[int]] = {}
    for i, v in enumerate(sc):
        groups.setdefault(v, []).append(i)
    return elems, sc, groups


def _pair_scan(ring: QuotientRing, lo: int, hi: int) -> list[tuple[int, int]]:
    elems, sc, groups = _self_conv_groups(ring)
    one = ring.one
    out = []
    for ai in range(lo, hi):
        need = ring.neg(ring.add(one, sc[ai]))
        for bi in groups.get(need, ()):
            out.append((ai, bi))
    return out


def _enumerate_worker(args):
    p, k, modulus, n, lo, hi = args
    field = Field(p, k, modulus if k > 1 else None)
    ring = QuotientRing(field, n)
    return _pair_scan(ring, lo, hi)


def self_dual_pairs(
    field: Field, n: int, cap: int = DEFAULT_CAP, workers: int = 1
) -> list[tuple[int, int]]:
    """Index pairs (a, b) with 1 + a*a' + b*b' = 0, in a-major order."""
    ring = QuotientRing(field, n)
    Q = ring.size
    if Q * Q > cap:
        raise CapExceeded(f"pair sweep covers {Q * Q} pairs, cap is {cap}")
    if workers > 1 and Q >= workers:
        chunk = (Q + workers - 1) // workers
        tasks = [
            (field.p, field.k, field.modulus, n, w * chunk, min((w + 1) * chunk, Q))
            for w in range(workers)
            if w * chunk < Q
        ]
        ctx = multiprocessing.get_context("fork")
        with ctx.Pool(len(tasks)) as pool:
            parts = pool.map(_enumerate_worker, tasks)
        out: list[tuple[int, int]] = []
        for part in parts:
            out.extend(part)
        return out
    return _pair_scan(ring, 0, Q)


def _rref_fingerprint(field: Field, rows: list[list[int]]) -> tuple:
    """Reduced row echelon form of a matrix over F_q, as a hashable tuple."""
    mat = [list(r) for r in rows]
    nrows, ncols = len(mat), len(mat[0])
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if mat[i][c]:
                piv = i
                break
        if piv is None:
            continue
        mat[r], mat[piv] = mat[piv], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(nrows):
            if i != r and mat[i][c]:
                f = mat[i][c]
                mat[i] = [field.sub(mat[i][j], field.mul(f, mat[r][j])) for j in range(ncols)]
        r += 1
        if r == nrows:
            break
    return tuple(tuple(row) for row in mat)


def _rref_mod_p(mat: np.ndarray, p: int) -> np.ndarray:
    M = mat % p
    rows, cols = M.shape
    r = 0
    for c in range(cols):
        piv = None
        for i in range(r, rows):
            if M[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            M[[r, piv]] = M[[piv, r]]
        M[r] = (M[r] * pow(int(M[r, c]), p - 2, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        M = (M - np.outer(col, M[r])) % p
        r += 1
        if r == rows:
            break
    return M


def distinct_code_count(field: Field, n: int, pairs: Sequence[tuple[int, int]]) -> int:
    """Number of distinct row spaces among the codes C_{a,b} of the given pairs.

    Row spaces are canonicalized by reduced row echelon form, so equal codes
    collapse even if they arise from different generator pairs.
    """
    ring = QuotientRing(field, n)
    prints = set()
    for ai, bi in pairs:
        code = FourCirculantCode(ring, ring.element(ai), ring.element(bi))
        if field.k == 1:
            M = _rref_mod_p(np.array(code.generator_matrix(), dtype=np.int64), field.p)
            prints.add(M.tobytes())
        else:
            prints.add(_rref_fingerprint(field, code.generator_matrix()))
    return len(prints)


def code_distances(
    field: Field,
    n: int,
    pairs: Sequence[tuple[int, int]],
    cap: int = DEFAULT_CAP,
) -> list[int]:
    """Exact minimum distance for each (a, b) index pair."""
    ring = QuotientRing(field, n)
    Q = ring.size
    if Q * Q > cap:
        raise CapExceeded(f"distance scans need {Q * Q} evaluations per code, cap is {cap}")
    t = ring.tables()
    if t is None:
        out = []
        for ai, bi in pairs:
            code = FourCirculantCode(ring, ring.element(ai), ring.element(bi))
            out.append(code.min_distance(cap=cap)[0])
        return out
    MUL, ADD = t.mul_np, t.add_np
    NEG, REC, W = t.neg_np, t.recip_np, t.weight_np
    big = np.int64(4 * n + 1)
    out = []
    for ai, bi in pairs:
        row_a = MUL[ai]
        row_b = MUL[bi]
        row_ap = MUL[REC[ai]]
        neg_row_bp = NEG[MUL[REC[bi]]]
        e_idx = ADD[row_a[:, None], neg_row_bp[None, :]]
        f_idx = ADD[row_b[:, None], row_ap[None, :]]
        wt = W[:, None] + W[None, :] + W[e_idx] + W[f_idx]
        wt[0, 0] = big
        out.append(int(wt.min()))
    return out


def enumerate_self_dual(
    field: Field,
    n: int,
    with_distances: bool = False,
    cap: int = DEFAULT_CAP,
    workers: int = 1,
) -> CensusReport:
    """Sweep all q^(2n) pairs and report every self-dual one.

    The closed-form count is attached when its hypotheses hold (n an odd
    prime, q a primitive root mod n) and left as None otherwise.  Pair
    order is a-major with coefficient vectors ascending in base-q code
    order, so reports are deterministic for any worker count.
    """
    ring = QuotientRing(field, n)
    idx_pairs = self_dual_pairs(field, n, cap=cap, workers=workers)
    pairs = [(ring.element(ai), ring.element(bi)) for ai, bi in idx_pairs]
    # fingerprinting costs about 16 n^3 field operations per pair
    distinct = None
    if len(idx_pairs) * 16 * n**3 <= cap:
        distinct = distinct_code_count(field, n, idx_pairs)
    report = CensusReport(
        q=field.q,
        n=n,
        pair_count=len(idx_pairs),
        formula_count=self_dual_count_formula(field, n),
        distinct_code_count=distinct,
        pairs=pairs,
    )
    if with_distances:
        dists = code_distances(field, n, idx_pairs, cap=cap)
        hist: dict[int, int] = {}
        for d in dists:
            hist[d] = hist.get(d, 0) + 1
        report.pair_distances = dists
        report.per_code_distances = dict(sorted(hist.items()))
    return report


# ---------------------------------------------------------------------------
# membership census (how many codes contain a given word)

@dataclass
class MembershipReport:
    """Counts of generator pairs whose code contains one fixed word.

    count ranges over all q^(2n) pairs; unit_count only over pairs with both
    a and b coprime to x^n - 1, which is the setting of the q^n*(q-1) bound
    (the all-pair count can exceed it, see max_nonconstant on the sweep).
    """

    blocks: tuple
    count: int
    unit_count: int
    bound: int
    unique: bool
    solution: Optional[tuple]
    solution_valid: Optional[bool]
    self_dual_count: int


def constant_vectors(ring: QuotientRing) -> set[tuple]:
    """Scalar multiples of the all-ones vector, the length-n cyclic code
    generated by (x^n - 1)/(x - 1)."""
    return {ring.scalar_mul(c, ring.all_ones) for c in ring.field.elements()}


def _split_blocks(n: int, word) -> tuple:
    flat = tuple(word)
    if len(flat) == 4 and all(isinstance(b, tuple) for b in flat):
        return flat
    if len(flat) != 4 * n:
        raise ValueError(f"expected 4 blocks or a flat vector of length {4 * n}")
    return flat[:n], flat[n : 2 * n], flat[2 * n : 3 * n], flat[3 * n :]


def membership_census(
    field: Field, n: int, word, cap: int = DEFAULT_CAP
) -> MembershipReport:
    """Count generator pairs (a, b) whose code contains the given word.

    Scans all q^(2n) pairs, not only self-dual ones; the self-dual-restricted
    count rides along.  When c*c' + d*d' is a unit the word pins (a, b)
    uniquely and the explicit solution

        a = (e*c' + d*f') / (c*c' + d*d')
        b = (f*c' - d*e') / (c*c' + d*d')

    is computed and checked against the linear system.
    """
    ring = QuotientRing(field, n)
    Q = ring.size
    if Q * Q > cap:
        raise CapExceeded(f"membership census covers {Q * Q} pairs, cap is {cap}")
    c, d, e, f = _split_blocks(n, word)
    count = 0
    unit_count = 0
    sd_count = 0
    elems = [ring.element(i) for i in range(Q)]
    recs = [ring.reciprocal(u) for u in elems]
    units = [ring.is_unit(u) for u in elems]
    one = ring.one
    for ai, a in enumerate(elems):
        ca = ring.mul(c, a)
        da_rec = ring.mul(d, recs[ai])
        res_a = ring.add(one, ring.mul(a, recs[ai]))
        for bi, b in enumerate(elems):
            if ring.sub(ca, ring.mul(d, recs[bi])) != e:
                continue
            if ring.add(ring.mul(c, b), da_rec) != f:
                continue
            count += 1
            if units[ai] and units[bi]:
                unit_count += 1
            if ring.add(res_a, ring.mul(b, recs[bi])) == ring.zero:
                sd_count += 1
    c_rec = ring.reciprocal(c)
    d_rec = ring.reciprocal(d)
    delta = ring.add(ring.mul(c, c_rec), ring.mul(d, d_rec))
    unique = ring.is_unit(delta)
    solution = None
    solution_valid = None
    if unique:
        dinv = ring.inv(delta)
        e_rec = ring.reciprocal(e)
        f_rec = ring.reciprocal(f)
        a_sol = ring.mul(ring.add(ring.mul(e, c_rec), ring.mul(d, f_rec)), dinv)
        b_sol = ring.mul(ring.sub(ring.mul(f, c_rec), ring.mul(d, e_rec)), dinv)
        solution = (a_sol, b_sol)
        check = FourCirculantCode(ring, a_sol, b_sol).encode(c, d)
        solution_valid = check.blocks[2] == e and check.blocks[3] == f
    return MembershipReport(
        blocks=(c, d, e, f),
        count=count,
        unit_count=unit_count,
        bound=field.q**n * (field.q - 1),
        unique=unique,
        solution=solution,
        solution_valid=solution_valid,
        self_dual_count=sd_count,
    )


@dataclass
class MembershipSweep:
    """Membership counts for every word of F_q^(4n) at once.

    counts[u] is the number of generator pairs whose code contains the word
    with block index u = c + Q*d + Q^2*e + Q^3*f (Q = q^n).  unit_counts
    restricts to pairs with a and b both coprime to x^n - 1 (the setting of
    the q^n*(q-1) bound); sd_counts restricts to self-dual pairs.
    """

    q: int
    n: int
    Q: int
    bound: int
    counts: list
    unit_counts: list
    sd_counts: list
    constant_indices: frozenset

    def word_index(self, word) -> int:
        c, d, e, f = _split_blocks(self.n, word)
        out = 0
        for block in (f, e, d, c):
            code = 0
            for v in reversed(block):
                code = code * self.q + v
            out = out * self.Q + code
        return out

    def count_of(self, word) -> int:
        return self.counts[self.word_index(word)]

    def max_nonconstant(self, which: str = "unit") -> tuple[int, int]:
        """Largest count over words whose c and d blocks are both non-constant.

        which selects the pair universe: "all", "unit" or "self_dual".
        """
        table = {"all": self.counts, "unit": self.unit_counts, "self_dual": self.sd_counts}[
            which
        ]
        Q = self.Q
        best, best_u = -1, -1
        const = self.constant_indices
        for u, cnt in enumerate(table):
            ci = u % Q
            di = (u // Q) % Q
            if ci in const or di in const:
                continue
            if cnt > best:
                best, best_u = cnt, u
        return best, best_u


def membership_sweep(field: Field, n: int, cap: int = DEFAULT_CAP) -> MembershipSweep:
    """Exhaustive membership census over every word, via encoding all pairs.

    For each generator pair and each message the encoded word's count is
    incremented, which is exactly |{(a, b) : u in C_{a,b}}| for every u since
    membership forces the message blocks.
    """
    ring = QuotientRing(field, n)
    Q = ring.size
    if Q**4 > cap:
        raise CapExceeded(f"membership sweep covers {Q ** 4} encodings, cap is {cap}")
    t = ring.tables()
    if t is None:
        raise CapExceeded("membership sweep needs dense ring tables")
    mul, add, neg, rec = t.mul, t.add, t.neg, t.recip
    Q2, Q3 = Q * Q, Q * Q * Q
    counts = [0] * (Q**4)
    unit_counts = [0] * (Q**4)
    sd_counts = [0] * (Q**4)
    one_idx = ring.index(ring.one)
    units = [ring.is_unit(ring.element(i)) for i in range(Q)]
    for ai in range(Q):
        row_a = mul[ai]
        row_ap = mul[rec[ai]]
        res_a = add[one_idx][row_a[rec[ai]]]
        for bi in range(Q):
            row_b = mul[bi]
            neg_row_bp = [neg[v] for v in mul[rec[bi]]]
            targets = [counts]
            if units[ai] and units[bi]:
                targets.append(unit_counts)
            if add[res_a][row_b[rec[bi]]] == 0:
                targets.append(sd_counts)
            for ci in range(Q):
                erow = add[row_a[ci]]
                frow = add[row_b[ci]]
                for di in range(Q):
                    u = ci + Q * di + Q2 * erow[neg_row_bp[di]] + Q3 * frow[row_ap[di]]
                    for arr in targets:
                        arr[u] += 1
    const_idx = frozenset(ring.index(u) for u in constant_vectors(ring))
    return MembershipSweep(
        q=field.q,
        n=n,
        Q=Q,
        bound=field.q**n * (field.q - 1),
        counts=counts,
        unit_counts=unit_counts,
        sd_counts=sd_counts,
        constant_indices=const_idx,
    )


# ---------------------------------------------------------------------------
# primitive-root length scan

@dataclass(frozen=True)
class ArtinReport:
    q: int
    limit: int
    primes: tuple
    candidates: int
    density: float
    note: str


def _primes_up_to(limit: int) -> list[int]:
    if limit < 2:
        return []
    sieve = bytearray([1]) * (limit + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(limit**0.5) + 1):
        if sieve[i]:
            sieve[i * i :: i] = b"\x00" * len(sieve[i * i :: i])
    return [i for i in range(2, limit + 1) if sieve[i]]


def artin_scan(q: int, limit: int) -> ArtinReport:
    """Odd primes n <= limit for which q generates (Z/nZ)*.

    These are exactly the lengths where x^n - 1 splits into two irreducible
    factors over F_q.  A perfect-square q is flagged, since squares can
    never be primitive roots for n > 3.
    """
    if q < 2:
        raise ValueError(f"q must be at least 2, got {q}")
    if limit > 10**6:
        raise ValueError(f"scan limit {limit} is above the supported 10^6")
    candidates = [n for n in _primes_up_to(limit) if n % 2 == 1 and q % n != 0]
    hits = tuple(n for n in candidates if multiplicative_order(q, n) == n - 1)
    note = ""
    root = math.isqrt(q)
    if root * root == q:
        note = "q is a perfect square; its order mod n divides (n-1)/2, so hits can only be degenerate"
    density = len(hits) / len(candidates) if candidates else 0.0
    return ArtinReport(
        q=q, limit=limit, primes=hits, candidates=len(candidates), density=density, note=note
    )
