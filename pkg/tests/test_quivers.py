"""Quiver construction, path products and the coalgebra structure."""

import random
from fractions import Fraction

import pytest

from quivergeom.errors import NotAdStable
from quivergeom.groups import cyclic_group, s3_group
from quivergeom.quivers import (
    Arrow,
    GradedVec,
    Quiver,
    cayley_digraph,
    concat_product,
    deconcat_coproduct,
    dot_export,
    hopf_quiver,
    is_symmetric,
    iterated_splits,
    mark_cayley_bar,
    paths_of_length,
)


def test_hopf_quiver_counts():
    Z2 = cyclic_group(2)
    q = hopf_quiver(Z2, {0: 1, 1: 2})
    assert len(q.arrows) == 6
    assert sorted((a.source, a.target, a.color) for a in q.arrows) == [
        (0, 0, 1), (0, 1, 1), (0, 1, 2), (1, 0, 1), (1, 0, 2), (1, 1, 1)]
    assert len(hopf_quiver(Z2, {1: 2}).arrows) == 4
    assert len(hopf_quiver(Z2, {}).arrows) == 0
    G = s3_group()
    # arrow count |G| * sum R_C |C|
    u, uv = G.index("u"), G.index("uv")
    q2 = hopf_quiver(G, {u: 2, uv: 1})
    assert len(q2.arrows) == 6 * (2 * 3 + 1 * 2)


def test_cayley_digraph():
    G = s3_group()
    u, v, w = G.index("u"), G.index("v"), G.index("w")
    C = cayley_digraph(G, {u, v, w})
    assert len(C.arrows) == 18 and all(a.bar for a in C.arrows)
    Z2 = cyclic_group(2)
    assert len(cayley_digraph(Z2, {1}).arrows) == 2
    assert len(cayley_digraph(Z2, set()).arrows) == 0
    with pytest.raises(NotAdStable):
        cayley_digraph(G, {u})


def test_symmetry():
    Z2 = cyclic_group(2)
    assert is_symmetric(hopf_quiver(Z2, {1: 2}))
    assert not is_symmetric(Quiver(["x", "y"], [Arrow(0, 1, 1)]))
    G = s3_group()
    assert is_symmetric(cayley_digraph(G, {G.index("u"), G.index("v"), G.index("w")}))


def test_concat_product():
    Z2 = cyclic_group(2)
    q = mark_cayley_bar(Z2, hopf_quiver(Z2, {1: 2}), {1})
    a1, a2 = q.arrow_id(0, 1, 1), q.arrow_id(0, 1, 2)
    b1 = q.arrow_id(1, 0, 1)
    va1, va2, vb1 = (GradedVec.path(q, (i,)) for i in (a1, a2, b1))
    assert concat_product(va1, vb1) == GradedVec.path(q, (a1, b1))
    assert concat_product(va1, va2).is_zero()
    vx = GradedVec.path(q, 0)
    assert concat_product(vx, va1) == va1
    assert concat_product(va1, vx).is_zero()
    # associativity and units on random elements of degree <= 3
    rng = random.Random(0)
    unit = GradedVec(q, 0, {x: Fraction(1) for x in range(2)})
    for _ in range(20):
        degs = [rng.randint(0, 2) for _ in range(3)]
        vecs = []
        for d in degs:
            paths = paths_of_length(q, d)
            vecs.append(GradedVec(q, d, {rng.choice(paths): Fraction(rng.randint(-3, 3))}))
        u_, v_, w_ = vecs
        assert concat_product(concat_product(u_, v_), w_) == concat_product(u_, concat_product(v_, w_))
        assert concat_product(unit, u_) == u_ and concat_product(u_, unit) == u_


def test_deconcat_counit_coassoc():
    Z2 = cyclic_group(2)
    q = hopf_quiver(Z2, {0: 1, 1: 2})
    # vertex: x (x) x
    terms = deconcat_coproduct(q, 0)
    assert len(terms) == 1 and terms[0][0] == GradedVec.path(q, 0)
    for n in range(1, 4):
        for p in paths_of_length(q, n)[:10]:
            terms = deconcat_coproduct(q, p)
            assert len(terms) == n + 1
            # counit: epsilon (x) id and id (x) epsilon recover p
            left = [r for l, r in terms if isinstance(next(iter(l.coeffs)), int)]
            right = [l for l, r in terms if isinstance(next(iter(r.coeffs)), int)]
            assert left[0] == GradedVec.path(q, p) and right[0] == GradedVec.path(q, p)
            # grading of the splits
            for l, r in terms:
                assert l.degree + r.degree == n
    # coassociativity via iterated splits: both orders give all 3-fold splits
    p = paths_of_length(q, 3)[0]
    splits = iterated_splits(q, p, 3)
    assert len(splits) == 10


def test_dot_export():
    Z2 = cyclic_group(2)
    q = mark_cayley_bar(Z2, hopf_quiver(Z2, {1: 2}), {1})
    dot = dot_export(q)
    assert dot.count("->") == 4 and "style=bold" in dot and "digraph" in dot
    empty = Quiver(["x"], [])
    assert "digraph" in dot_export(empty)


def test_path_counts_z2_loops():
    Z2 = cyclic_group(2)
    q = hopf_quiver(Z2, {0: 1, 1: 2})
    assert len(paths_of_length(q, 3)) == 54
    assert len(paths_of_length(q, 4)) == 162
