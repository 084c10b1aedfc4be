import pytest

from clusterchar import (
    antisym_form_simple,
    euler_form,
    euler_matrix,
    injective_representation,
    positive_roots,
    projective_representation,
    quiver_from_dict,
    quiver_from_text,
    validate_quiver,
)
from clusterchar.errors import (
    BadVertexIndex,
    CycleFound,
    DimensionMismatch,
    LoopFound,
    NotDynkin,
    TwoCycleFound,
)


def test_validate_a2():
    q = validate_quiver(2, [(1, 2)])
    assert q.n == 2 and q.arrows == ((1, 2),)


def test_validate_loop():
    with pytest.raises(LoopFound):
        validate_quiver(1, [(1, 1)])


def test_validate_three_cycle():
    with pytest.raises(CycleFound):
        validate_quiver(3, [(1, 2), (2, 3), (3, 1)])


def test_validate_two_cycle():
    with pytest.raises(TwoCycleFound):
        validate_quiver(2, [(1, 2), (2, 1)])


def test_validate_bad_index():
    with pytest.raises(BadVertexIndex):
        validate_quiver(2, [(1, 3)])


def test_euler_matrix_a2(a2):
    ed = euler_matrix(a2)
    assert ed.E == ((1, -1), (0, 1))
    assert ed.C == ((-1, -1), (1, 0))


def test_euler_matrix_no_arrows():
    q = validate_quiver(3, [])
    assert euler_matrix(q).E == ((1, 0, 0), (0, 1, 0), (0, 0, 1))


def test_euler_matrix_a3(a3):
    assert euler_matrix(a3).E == ((1, -1, 0), (0, 1, -1), (0, 0, 1))


def test_euler_matrix_inverse_exact(a3, kronecker):
    for q in (a3, kronecker):
        ed = euler_matrix(q)
        n = q.n
        prod = [
            [sum(ed.E[i][k] * ed.Einv[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)
        ]
        assert prod == [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def test_euler_form_values(a2, kronecker):
    assert euler_form(a2, (1, 0), (1, 1)) == 0
    assert euler_form(a2, (5, 7), (0, 0)) == 0
    assert euler_form(kronecker, (1, 1), (1, 1)) == 0


def test_euler_form_length_check(a2):
    with pytest.raises(DimensionMismatch):
        euler_form(a2, (1,), (1, 0))


def test_antisym_form(a2):
    assert antisym_form_simple(a2, 1, (1, 0)) == 0
    assert antisym_form_simple(a2, 2, (1, 0)) == 1
    assert antisym_form_simple(a2, 1, (0, 1)) == -1


def test_positive_roots_small(a1, a2, a3):
    assert positive_roots(a1) == ((1,),)
    assert positive_roots(a2) == ((0, 1), (1, 0), (1, 1))
    roots3 = positive_roots(a3)
    assert len(roots3) == 6
    assert (1, 1, 1) in roots3 and (1, 1, 0) in roots3 and (0, 1, 1) in roots3


def test_positive_roots_rejects_kronecker(kronecker):
    with pytest.raises(NotDynkin):
        positive_roots(kronecker)


def test_roots_have_self_pairing_one(a2, a3):
    for q in (a2, a3):
        for beta in positive_roots(q):
            assert euler_form(q, beta, beta) == 1


def test_coxeter_sends_projective_index_to_injective(a2, a3):
    # C acts in index coordinates: C·ind(P_i) = -ind(I_i).
    for q in (a2, a3):
        ed = euler_matrix(q)
        n = q.n
        for i in range(1, n + 1):
            dp = projective_representation(q, i).dims
            di = injective_representation(q, i).dims
            ind_p = tuple(sum(ed.E[j][k] * dp[j] for j in range(n)) for k in range(n))
            ind_i = tuple(sum(ed.E[j][k] * di[j] for j in range(n)) for k in range(n))
            c_ind_p = tuple(sum(ed.C[k][j] * ind_p[j] for j in range(n)) for k in range(n))
            assert c_ind_p == tuple(-x for x in ind_i)


def test_text_and_dict_round_trip(a3):
    assert quiver_from_text(a3.to_text()) == a3
    assert quiver_from_dict(a3.to_dict()) == a3


def test_paths_a3(a3):
    assert a3.paths(1, 3) == [(0, 1)]
    assert a3.paths(1, 1) == [()]
    assert a3.paths(3, 1) == []
