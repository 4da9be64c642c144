from nchodge.algebra import builtin
from nchodge.fields import GF, QQ
from nchodge.hochschild import (ChainComplex, DegreeWindow, chain_basis,
                                guard_safe_weights, hh0_direct, hh_ranks,
                                hkr_reference)


def _compose_is_zero(A, first, second, n_top):
    F = A.field
    fzero, fadd, fmul, fis0 = F.zero(), F.add, F.mul, F.is_zero
    for n in range(n_top + 1):
        for w in chain_basis(A, n):
            acc = {}
            for w1, c1 in first(w).items():
                for w2, c2 in second(w1).items():
                    s = fadd(acc.get(w2, fzero), fmul(c1, c2))
                    if fis0(s):
                        acc.pop(w2, None)
                    else:
                        acc[w2] = s
            if acc:
                return (w, acc)
    return None


def test_chain_basis_shape():
    A = builtin("dual_numbers")
    assert chain_basis(A, 0) == [(0,), (1,)]
    assert chain_basis(A, 2) == [(0, 1, 1), (1, 1, 1)]


def test_chain_basis_weight_filter():
    A = builtin("poly_truncated", QQ, vars=2, max_weight=3)
    for w in chain_basis(A, 2, weight=2):
        assert sum(A.weight[i] for i in w) == 2


def test_differential_identities_small():
    # exhaustive d^2 = B^2 = dB + Bd = 0 on small algebras; the full catalogue
    # sweep is acceptance criterion 1
    for name in ("dual_numbers", "clifford1", "group_z2"):
        for F in (QQ, GF(3)):
            A = builtin(name, F)
            cx = ChainComplex(A)
            assert _compose_is_zero(A, cx.boundary_word, cx.boundary_word, 5) is None
            assert _compose_is_zero(A, cx.connes_word, cx.connes_word, 5) is None

            def anti(w, cx=cx, A=A):
                out = {}
                Fl = A.field
                for w1, c1 in cx.connes_word(w).items():
                    for w2, c2 in cx.boundary_word(w1).items():
                        s = Fl.add(out.get(w2, Fl.zero()), Fl.mul(c1, c2))
                        if Fl.is_zero(s):
                            out.pop(w2, None)
                        else:
                            out[w2] = s
                return out
            assert _compose_is_zero(A, anti,
                                    lambda w: {w: A.field.one()}, 0) is None


def test_b_vanishes_on_unit_heads():
    A = builtin("dual_numbers")
    cx = ChainComplex(A)
    assert cx.connes_word((0, 1, 1)) == {}


def test_dual_numbers_hh():
    A = builtin("dual_numbers")
    ranks = hh_ranks(A, DegreeWindow(5))
    assert ranks["per_n"] == {0: 2, 1: 1, 2: 1, 3: 1, 4: 1}


def test_mat2_morita_trivial_hh():
    A = builtin("mat", QQ, m=2)
    ranks = hh_ranks(A, DegreeWindow(4))
    assert ranks["per_n"] == {0: 1, 1: 0, 2: 0, 3: 0}


def test_hh0_direct_matches_complex():
    for name in ("dual_numbers", "a2_path", "group_z2", "clifford1"):
        A = builtin(name)
        assert hh0_direct(A)["rank"] == hh_ranks(A, DegreeWindow(2))["per_n"][0]


def test_hkr_reference_values():
    # 1 variable: functions and 1-forms only
    assert hkr_reference(1, 0, 3) == 1
    assert hkr_reference(1, 1, 3) == 1
    assert hkr_reference(1, 2, 3) == 0
    # 2 variables, weight 2: 3 functions, 2*2 one-forms, 1 two-form
    assert hkr_reference(2, 0, 2) == 3
    assert hkr_reference(2, 1, 2) == 4
    assert hkr_reference(2, 2, 2) == 1


def test_guard_safe_weights():
    A = builtin("poly_truncated", QQ, vars=1, max_weight=4)
    flags = guard_safe_weights(A, [1, 2, 3, 4])
    assert flags == {1: True, 2: True, 3: False, 4: False}


def test_super_wrap_sign():
    # clifford1: wrap face of (xi; xi) picks up the plain-parity Koszul sign
    A = builtin("clifford1")
    cx = ChainComplex(A)
    img = cx.boundary_word((1, 1))
    # d(xi (x) xi) = xi.xi - (-1)^{...} xi.xi; for this word the two faces
    # reinforce: the identity d^2 = 0 is what pins the convention, so only
    # check the image is a multiple of the unit word
    assert set(img) <= {(0,)}
