import random
from fractions import Fraction
from itertools import product

import pytest

from clusterchar import (
    GF,
    QQ,
    count_subreps,
    decompose,
    direct_sum,
    ext_dim,
    euler_form,
    generic_representation,
    grassmannian_euler,
    hom_dim,
    indecomposable_for_root,
    is_isomorphic,
    projective_representation,
    random_representation,
    simple_representation,
    validate_quiver,
    zero_representation,
)
from clusterchar.errors import CapExceeded, FieldMismatch, NotARoot, SubdimensionOutOfRange
from clusterchar.replab import gaussian_binomial, make_representation, representation_from_json


@pytest.fixture(scope="module")
def point():
    return validate_quiver(1, [])


def test_random_representation_shapes_and_determinism(a2):
    m1 = random_representation(a2, (2, 1), rng_seed=5)
    m2 = random_representation(a2, (2, 1), rng_seed=5)
    m3 = random_representation(a2, (2, 1), rng_seed=6)
    assert m1 == m2
    assert m1 != m3
    assert len(m1.maps[0]) == 1 and len(m1.maps[0][0]) == 2
    assert random_representation(a2, (0, 0), rng_seed=1).is_zero()


def test_hom_examples(a2):
    p1 = projective_representation(a2, 1)
    s1 = simple_representation(a2, 1)
    s2 = simple_representation(a2, 2)
    assert p1.dims == (1, 1) and p1.maps == (((1,),),)
    assert hom_dim(p1, s1) == 1
    assert hom_dim(s1, s2) == 0
    for m in (p1, s1, s2, random_representation(a2, (2, 2), rng_seed=9)):
        assert hom_dim(m, m) >= 1


def test_ext_examples(a2):
    s1 = simple_representation(a2, 1)
    s2 = simple_representation(a2, 2)
    assert ext_dim(s1, s2) == 1
    assert ext_dim(s2, s1) == 0
    for i in (1, 2):
        p = projective_representation(a2, i)
        for n in (s1, s2, random_representation(a2, (2, 1), rng_seed=4)):
            assert ext_dim(p, n) == 0


def test_euler_identity_random(a2, a3, kronecker):
    rng = random.Random(42)
    for q in (a2, a3, kronecker):
        for _ in range(25):
            d = tuple(rng.randint(0, 2) for _ in range(q.n))
            e = tuple(rng.randint(0, 2) for _ in range(q.n))
            m = random_representation(q, d, rng_seed=rng.randint(0, 10**6))
            n = random_representation(q, e, rng_seed=rng.randint(0, 10**6))
            assert hom_dim(m, n) - ext_dim(m, n) == euler_form(q, d, e)


def test_field_mismatch(a2):
    m = random_representation(a2, (1, 1), rng_seed=0)
    n = random_representation(a2, (1, 1), GF(5), rng_seed=0)
    with pytest.raises(FieldMismatch):
        hom_dim(m, n)


def test_indecomposable_for_root(a2, a3):
    m = indecomposable_for_root(a2, (1, 1))
    assert m.dims == (1, 1) and hom_dim(m, m) == 1
    assert is_isomorphic(m, projective_representation(a2, 1))
    assert is_isomorphic(indecomposable_for_root(a2, (1, 0)), simple_representation(a2, 1))
    thin = indecomposable_for_root(a3, (1, 1, 1))
    assert thin.dims == (1, 1, 1) and hom_dim(thin, thin) == 1
    with pytest.raises(NotARoot):
        indecomposable_for_root(a2, (2, 0))


def test_decompose_examples(a2):
    assert decompose(zero_representation(a2)) == []
    parts = decompose(random_representation(a2, (2, 1), rng_seed=3))
    assert sorted(p.dims for p in parts) == [(1, 0), (1, 1)]
    p1 = projective_representation(a2, 1)
    assert [p.dims for p in decompose(p1)] == [(1, 1)]


def test_decompose_isotypic(a2, kronecker):
    s2 = simple_representation(kronecker, 2)
    m = direct_sum(direct_sum(s2, s2), s2)
    assert sorted(p.dims for p in decompose(m)) == [(0, 1)] * 3
    p1 = projective_representation(a2, 1)
    m2 = direct_sum(p1, p1)
    assert sorted(p.dims for p in decompose(m2)) == [(1, 1), (1, 1)]


def test_decompose_seed_stability(a2, a3):
    rng = random.Random(8)
    for q in (a2, a3):
        for _ in range(5):
            d = tuple(rng.randint(0, 2) for _ in range(q.n))
            m = random_representation(q, d, rng_seed=rng.randint(0, 10**6))
            sigs = {tuple(sorted(p.dims for p in decompose(m, rng_seed=s))) for s in range(5)}
            assert len(sigs) == 1


def test_count_subreps_examples(point, a2):
    v2 = random_representation(point, (2,), GF(2), rng_seed=0)
    assert count_subreps(v2, (1,)) == 3  # projective line over F_2
    assert count_subreps(v2, (0,)) == 1
    p1 = make_representation(a2, GF(7), (1, 1), [((1,),)])
    assert count_subreps(p1, (0, 1)) == 1
    assert count_subreps(p1, (1, 0)) == 0
    assert count_subreps(p1, (1, 1)) == 1


def test_count_subreps_errors(point, a2):
    v = random_representation(point, (3,), GF(11), rng_seed=0)
    with pytest.raises(SubdimensionOutOfRange):
        count_subreps(v, (4,))
    m = make_representation(a2, GF(11), (3, 3), [((1, 0, 0), (0, 1, 0), (0, 0, 1))])
    with pytest.raises(CapExceeded):
        count_subreps(m, (1, 1), cap=2)


def test_count_subreps_free_vertex_factor(point):
    # an unconstrained vertex contributes the full Gaussian binomial
    v = random_representation(point, (5,), GF(23), rng_seed=0)
    assert count_subreps(v, (2,), cap=10) == gaussian_binomial(5, 2, 23)


def test_total_subrep_count_cross_check(a2):
    # Independent oracle: enumerate every tuple of vector subsets closed under
    # span and the arrow map, for a tiny module over F_2.
    p = 2
    m = make_representation(a2, GF(p), (2, 1), [((1, 0),)])
    all_vectors = {
        1: [tuple(v) for v in product(range(p), repeat=2)],
        2: [tuple(v) for v in product(range(p), repeat=1)],
    }

    def spans(vecs, d):
        out = set()
        base = [tuple([0] * d)]
        from itertools import combinations

        for r in range(3):
            for gens in combinations(vecs, r):
                span = set(base)
                changed = True
                while changed:
                    changed = False
                    for g in gens:
                        for v in list(span):
                            for c in range(p):
                                w = tuple((a + c * b) % p for a, b in zip(v, g))
                                if w not in span:
                                    span.add(w)
                                    changed = True
                out.add(frozenset(span))
        return out

    spaces1 = spans(all_vectors[1], 2)
    spaces2 = spans(all_vectors[2], 1)
    mat = m.maps[0]
    total = 0
    for u1 in spaces1:
        for u2 in spaces2:
            if all(tuple(sum(mat[i][j] * v[j] for j in range(2)) % p for i in range(1)) in u2 for v in u1):
                total += 1
    by_counts = sum(
        count_subreps(m, e) for e in product(range(3), range(2))
    )
    assert total == by_counts


def test_grassmannian_euler_binomial(point):
    from math import comb

    v4 = random_representation(point, (4,), QQ, rng_seed=0)
    g = grassmannian_euler(v4, (2,))
    assert g.euler == comb(4, 2) == 6
    assert grassmannian_euler(v4, (4,)).euler == 1
    assert grassmannian_euler(v4, (0,)).euler == 1


def test_grassmannian_euler_p1(a2):
    p1 = make_representation(a2, QQ, (1, 1), [((1,),)])
    assert grassmannian_euler(p1, (0, 1)).euler == 1
    assert grassmannian_euler(p1, (1, 0)).euler == 0
    assert grassmannian_euler(p1, (1, 1)).euler == 1


def test_grassmannian_euler_thin_equals_any_count(a3):
    m = make_representation(a3, QQ, (1, 1, 1), [((1,),), ((1,),)])
    for e in product(range(2), repeat=3):
        g = grassmannian_euler(m, e)
        assert set(g.counts.values()) == {g.euler}


def test_grassmannian_flags_non_polynomial_counts(kronecker):
    # Q-indecomposable with End = Q(sqrt 2): the (1,1)-subspace count follows the
    # splitting of 2 mod p, which no integer polynomial matches.
    m = make_representation(kronecker, QQ, (2, 2), [((1, 0), (0, 1)), ((0, 1), (2, 0))])
    from clusterchar.errors import NotPolynomialCount

    with pytest.raises(NotPolynomialCount):
        grassmannian_euler(m, (1, 1))


def test_grassmannian_skips_denominator_primes(a2):
    m = make_representation(a2, QQ, (1, 1), [((Fraction(1, 2),),)])
    g = grassmannian_euler(m, (0, 1))
    assert 2 not in g.counts
    assert g.euler == 1


def test_gaussian_binomial():
    assert gaussian_binomial(2, 1, 2) == 3
    assert gaussian_binomial(4, 2, 3) == (3**4 - 1) * (3**3 - 1) // ((3**2 - 1) * (3 - 1))


def test_generic_representation_patterns(a2, kronecker):
    m, parts = generic_representation(a2, (2, 1), rng_seed=1)
    assert sorted(p.dims for p in parts) == [(1, 0), (1, 1)]
    assert m.dims == (2, 1)
    m, parts = generic_representation(kronecker, (2, 2), rng_seed=1)
    assert sorted(p.dims for p in parts) == [(1, 1), (1, 1)]
    assert all(hom_dim(p, p) == 1 for p in parts)


def test_is_isomorphic(a2):
    p1 = projective_representation(a2, 1)
    scaled = make_representation(a2, QQ, (1, 1), [((7,),)])
    assert is_isomorphic(p1, scaled)
    assert not is_isomorphic(p1, direct_sum(simple_representation(a2, 1), simple_representation(a2, 2)))


def test_representation_json_round_trip(a2):
    m = make_representation(a2, QQ, (2, 1), [((1, Fraction(1, 2)),)])
    assert representation_from_json(m.to_json()) == m
    mp = random_representation(a2, (2, 1), GF(5), rng_seed=2)
    assert representation_from_json(mp.to_json()) == mp
