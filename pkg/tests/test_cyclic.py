import pytest

from nchodge.algebra import builtin
from nchodge.cyclic import (UnsupportedError, WindowError, char_p_compare,
                            degeneration_check, graded_piece_analysis,
                            hodge_filtration, hp_ranks, negative_cyclic)
from nchodge.fields import GF, QQ
from nchodge.hochschild import DegreeWindow


def test_window_precondition():
    A = builtin("dual_numbers")
    with pytest.raises(WindowError):
        hp_ranks(A, DegreeWindow(4), 3)  # needs n_max >= 2N


def test_negative_cyclic_dual_numbers():
    A = builtin("dual_numbers")
    rep = negative_cyclic(A, DegreeWindow(6), 3)
    assert rep.even.free_rank == 1
    assert rep.odd.free_rank == 0
    assert rep.even.torsion_list == [1, 1, 1]
    assert rep.consistent


def test_hp_dual_numbers_fat_point():
    A = builtin("dual_numbers")
    rep = hp_ranks(A, DegreeWindow(8), 3)
    assert (rep.hp_even, rep.hp_odd) == (1, 0)
    assert rep.conclusive
    assert rep.verdict == "finite-torsion-found"


def test_hp_point_and_mat2_agree():
    P = builtin("point")
    M = builtin("mat", QQ, m=2)
    rp = hp_ranks(P, DegreeWindow(6), 2)
    rm = hp_ranks(M, DegreeWindow(6), 2)
    assert rp.conclusive and rm.conclusive
    assert (rp.hp_even, rp.hp_odd) == (rm.hp_even, rm.hp_odd) == (1, 0)


def test_filtration_dual_numbers():
    A = builtin("dual_numbers")
    filt = hodge_filtration(A, DegreeWindow(8), 4)
    assert filt["0"] == 1 and filt["1"] == 1 and filt["1/2"] == 0


def test_filtration_inconclusive_raises():
    # a window too tight to stabilize must refuse to hand out a filtration
    A = builtin("truncated_poly", QQ, m=3)
    with pytest.raises((UnsupportedError, WindowError)):
        hodge_filtration(A, DegreeWindow(4), 2)


def test_degeneration_verdicts():
    A = builtin("mat", QQ, m=2)
    rep = degeneration_check(A, DegreeWindow(6), 2)
    assert rep["verdict"] == "collapses-in-window"
    B = builtin("dual_numbers")
    rep2 = degeneration_check(B, DegreeWindow(8), 3)
    assert rep2["verdict"] == "finite-torsion-found"
    assert rep2["torsion_inventory"]


def test_char_p_compare_requires_prime_field():
    A = builtin("dual_numbers")
    with pytest.raises(UnsupportedError):
        char_p_compare(A, DegreeWindow(8), 3)


def test_char_p_compare_dual_f2():
    A = builtin("dual_numbers", GF(2))
    rep = char_p_compare(A, DegreeWindow(8), 3)
    assert rep["agree"]
    # Frobenius pairing: slot w is compared against slot 2w
    for slot in rep["per_slot"]:
        assert slot["partner_weight"] == 2 * slot["weight"]
    # odd weights of the (d + uB) complex vanish
    for off in rep["off_frobenius"]:
        assert off["weight"] % 2 == 1
        assert not off["guard_safe"] or off["vanishes"]


def test_char_p_compare_truncated_poly_f3():
    A = builtin("truncated_poly", GF(3), m=3)
    rep = char_p_compare(A, DegreeWindow(8), 3)
    assert rep["agree"]


def test_graded_pieces_acyclicity():
    # acyclic exactly when gcd(n, p) = 1
    for p in (2, 3):
        F = GF(p)
        for n in (1, 2, 3, 4):
            rep = graded_piece_analysis(2, n, F)
            assert rep["acyclic"] == (n % p != 0), (p, n)


def test_graded_pieces_char_zero_always_acyclic():
    for n in (1, 2, 3):
        assert graded_piece_analysis(2, n, QQ)["acyclic"]
