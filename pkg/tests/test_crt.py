import random

import pytest

from fourcirc.codes import FourCirculantCode
from fourcirc.crt import Constituent, constituent_self_dual, decompose, decompose_report, reconstruct
from fourcirc.fields import Field
from fourcirc.polyring import QuotientRing, factor_xn_minus_1, poly_eval

F2, F3, F5 = Field(2), Field(3), Field(5)


def make_code(field, n, a, b):
    return FourCirculantCode(QuotientRing(field, n), a, b)


def test_decompose_example():
    code = make_code(F2, 3, (0, 1, 0), (0, 0, 0))
    cons = decompose(code)
    assert [c.kind for c in cons] == ["self_reciprocal", "self_reciprocal"]
    lin, quad = cons
    assert lin.factor == (1, 1)
    assert lin.field == F2
    assert lin.a_image == 1  # a = x evaluated at the root 1
    assert lin.b_image == 0
    assert quad.factor == (1, 1, 1)
    assert quad.field.q == 4
    assert quad.a_image == quad.root  # a = x maps to the chosen root
    # root really is a root of the factor inside F_4
    assert poly_eval(quad.field, quad.factor, quad.root) == 0


def test_decompose_zero():
    code = make_code(F3, 5, (0,) * 5, (0,) * 5)
    for con in decompose(code):
        assert con.a_image == 0
        assert con.b_image == 0


def test_decompose_requires_coprime_length():
    code = make_code(F3, 6, (0,) * 6, (0,) * 6)
    with pytest.raises(ValueError):
        decompose(code)


def test_round_trip_random():
    random.seed(20240601)
    for field, n in [(F3, 5), (F2, 5), (F5, 3), (F2, 3), (F2, 7), (Field(2, 2), 3)]:
        ring = QuotientRing(field, n)
        for _ in range(100):
            a = ring.element(random.randrange(ring.size))
            b = ring.element(random.randrange(ring.size))
            code = FourCirculantCode(ring, a, b)
            assert reconstruct(field, n, decompose(code)) == (a, b)


def test_images_respect_evaluation():
    ring = QuotientRing(F3, 5)
    code = FourCirculantCode(ring, (1, 2, 0, 0, 1), (0, 1, 1, 0, 2))
    for con in decompose(code):
        ext = con.field
        # recompute a(root) directly in the extension
        from fourcirc.fields import Embedding

        emb = Embedding(F3, ext)
        acc = 0
        for c in reversed(code.a):
            acc = ext.add(ext.mul(acc, con.root), emb.apply(c))
        assert acc == con.a_image


def test_hermitian_examples():
    code = make_code(F2, 3, (0, 1, 0), (0, 0, 0))
    lin, quad = decompose(code)
    assert constituent_self_dual(quad)  # 1 + w*w^2 = 1 + 1 = 0 in F_4
    assert constituent_self_dual(lin)  # 1 + 1*1 + 0 = 0 over F_2
    # degree-1 arithmetic over F_3: images (1, 1) satisfy 1 + 1 + 1 = 0
    con = Constituent(
        factor=(2, 1), kind="self_reciprocal", base=F3, field=F3, root=1, a_image=1, b_image=1
    )
    assert constituent_self_dual(con)
    con2 = Constituent(
        factor=(2, 1), kind="self_reciprocal", base=F3, field=F3, root=1, a_image=1, b_image=0
    )
    assert not constituent_self_dual(con2)


def test_hermitian_rejects_pair_kinds():
    # q=2, n=7 has a reciprocal pair of cubics
    code = make_code(F2, 7, (0, 1) + (0,) * 5, (0,) * 7)
    cons = decompose(code)
    kinds = [c.kind for c in cons]
    assert kinds.count("pair_first") == 1 and kinds.count("pair_second") == 1
    pair_con = next(c for c in cons if c.kind == "pair_first")
    with pytest.raises(ValueError):
        constituent_self_dual(pair_con)


def test_conjugation_inverts_root():
    # for a self-reciprocal factor of degree 2m, root^(q^m) is 1/root
    for field, n in [(F2, 3), (F2, 5), (F3, 5), (F5, 3)]:
        code = FourCirculantCode(QuotientRing(field, n), (0, 1) + (0,) * (n - 2), (0,) * n)
        for con in decompose(code):
            if con.kind != "self_reciprocal" or con.degree == 1:
                continue
            ext = con.field
            exp = field.q ** (con.degree // 2)
            assert ext.pow(con.root, exp) == ext.inv(con.root)


def test_self_dual_iff_constituent_conditions():
    """Residue form of the constituent criterion, exhaustively.

    Self-duality of the code is equivalent to: every self-reciprocal
    constituent passes the Hermitian test, and the criterion residue is
    divisible by both members of every reciprocal pair.
    """
    from fourcirc.polyring import poly_mod

    for field, n in [(F2, 3), (F2, 7)]:
        ring = QuotientRing(field, n)
        fact = factor_xn_minus_1(field, n)
        paired = [h for pair in fact.pairs for h in pair]
        for ai in range(ring.size):
            for bi in range(ring.size):
                code = FourCirculantCode(ring, ring.element(ai), ring.element(bi))
                sd = code.is_self_dual_poly()
                cons = decompose(code)
                herm = all(
                    constituent_self_dual(c) for c in cons if c.kind == "self_reciprocal"
                )
                residue = ring.lift(code.criterion_residue())
                pair_div = all(not poly_mod(field, residue, h) for h in paired)
                assert sd == (herm and pair_div)


def test_decompose_report_shape():
    code = make_code(F2, 3, (0, 1, 0), (0, 0, 0))
    rep = decompose_report(code)
    assert rep[0]["field"] == "2^1"
    assert rep[1]["field"] == "2^2"
    assert rep[1]["hermitian_self_dual"] is True
    assert rep[0]["factor"] == [1, 1]
