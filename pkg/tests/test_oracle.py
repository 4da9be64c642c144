import pytest

from nchodge import oracle
from nchodge.fields import GF, QQ


def test_registry_is_populated_and_described():
    assert len(oracle.FIXTURES) >= 20
    for fid, (description, fn) in oracle.FIXTURES.items():
        assert isinstance(description, str) and description
        assert callable(fn)


def test_certify_known_values():
    r = oracle.certify("dual_numbers_hh_n4")
    assert r.value == [2, 1, 1, 1, 1]
    r2 = oracle.certify("quantum_plane_n1_w2_count")
    assert r2.value["main"] == r2.value["independent"] == 7
    r3 = oracle.certify("mat2_commutator_rank")
    assert r3.value == 3


def test_certify_hash_is_deterministic():
    a = oracle.certify("two_term_u_complex_N3")
    b = oracle.certify("two_term_u_complex_N3")
    assert a.inputs_hash == b.inputs_hash
    assert a.value == b.value


def test_unknown_fixture_rejected():
    with pytest.raises(oracle.FixtureError):
        oracle.certify("no_such_fixture")


def test_dense_rank_agrees_with_hand_values():
    rows = [[1, 2, 3], [2, 4, 6], [0, 0, 1]]
    assert oracle.dense_rank(rows, QQ) == 2
    assert oracle.dense_rank([[1, 1], [1, 3]], GF(2)) == 1


def test_unreduced_oracle_size_guard():
    from nchodge.algebra import builtin
    A = builtin("mat", QQ, m=2)  # dim 4 > 3
    with pytest.raises(oracle.FixtureError):
        oracle.unreduced_hh_ranks(A, 3)


def test_dense_blocks_from_dims():
    # free rank 1 and one block of size 2 at N = 4
    dims = [(4 - j) + max(2 - j, 0) for j in range(4)]
    free, blocks = oracle.dense_blocks_from_dims(dims)
    assert free == 1
    assert blocks == {2: 1}


def test_independent_jacobiator():
    from nchodge.poisson import builtin_bivector
    comps = oracle.jacobiator_components(builtin_bivector("so3"))
    assert all(not poly for poly in comps.values())
    bad = oracle.jacobiator_components(builtin_bivector("nonjacobi4"))
    assert any(poly for poly in bad.values())


def test_registry_document_in_sync():
    # docs/fixtures.md is the checked-in, human-readable registry; every
    # fixture id must appear there
    import os
    path = os.path.join(os.path.dirname(__file__), "..", "docs", "fixtures.md")
    text = open(path, encoding="utf-8").read()
    for fid in oracle.FIXTURES:
        assert f"`{fid}`" in text, fid
