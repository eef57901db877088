"""Groups, conjugacy structure, representations and cocycles."""

from fractions import Fraction

import pytest

from quivergeom.errors import CocycleInvalid, NotAGroup
from quivergeom.groups import (
    Cocycle,
    FiniteGroup,
    build_group,
    centralizer,
    character,
    coboundary,
    conjugacy_classes,
    cyclic_group,
    group_from_permutations,
    inner_theta_from_cocycle,
    is_ad_stable,
    normalized_character,
    right_mult_module,
    s3_group,
    sign_rep_s3,
    trivial_rep,
    two_dim_rep_s3,
    verify_cocycle,
)


def test_s3_presentation():
    G = s3_group()
    u, v, w = G.index("u"), G.index("v"), G.index("w")
    assert G.mul(u, u) == G.identity and G.mul(v, v) == G.identity
    assert G.mul(G.mul(u, v), u) == w == G.mul(G.mul(v, u), v)
    assert G.mul(u, v) == G.index("uv") and G.mul(v, u) == G.index("vu")


def test_build_group_forms():
    assert build_group({"cyclic": 2}).order == 2
    assert build_group({"permutations": [[1, 0, 2], [0, 2, 1]]}).order == 6
    table = s3_group().to_json()
    assert build_group(table).order == 6
    with pytest.raises(NotAGroup):
        FiniteGroup(["a", "b"], [[0, 0], [1, 1]])


def test_conjugacy_classes():
    G = s3_group()
    u, v, w, uv, vu = (G.index(t) for t in ("u", "v", "w", "uv", "vu"))
    sets = sorted(tuple(sorted(c.members)) for c in conjugacy_classes(G))
    assert sets == [(G.identity,), (u, v, w), (uv, vu)]
    assert len(conjugacy_classes(cyclic_group(2))) == 2
    assert len(conjugacy_classes(cyclic_group(4))) == 4


def test_centralizer_orbit_stabilizer():
    G = s3_group()
    u = G.index("u")
    assert centralizer(G, u) == {G.identity, u}
    assert centralizer(G, G.identity) == set(G.elements())
    Z2 = cyclic_group(2)
    assert centralizer(Z2, 1) == {0, 1}
    for c in conjugacy_classes(G):
        assert len(c) * len(centralizer(G, c.rep)) == G.order


def test_ad_stable():
    G = s3_group()
    u, v, w = G.index("u"), G.index("v"), G.index("w")
    assert is_ad_stable(G, {u, v, w})
    assert not is_ad_stable(G, {u})
    assert is_ad_stable(G, set())
    assert is_ad_stable(cyclic_group(2), {1})
    assert not is_ad_stable(G, {G.identity, u})


def test_two_dim_rep_characters():
    G = s3_group()
    rho = two_dim_rep_s3(G)
    chi = normalized_character(rho)
    assert chi[G.identity] == 1
    assert chi[G.index("u")] == 0
    assert chi[G.index("uv")] == Fraction(-1, 2)
    sgn = sign_rep_s3(G)
    assert normalized_character(sgn)[G.index("uv")] == 1
    for c in conjugacy_classes(G):
        vals = {character(rho)[g] for g in c.members}
        assert len(vals) == 1


def test_rep_cocycles():
    G = s3_group()
    for rho in (trivial_rep(G), sign_rep_s3(G), two_dim_rep_s3(G)):
        mod = right_mult_module(rho)
        vals = []
        for g in G.elements():
            m = rho.mats[g]
            vals.append([m[i][j] - (1 if i == j else 0) for i in range(rho.dim) for j in range(rho.dim)])
        zeta = Cocycle(mod, vals)
        assert verify_cocycle(G, mod, zeta)


def test_inner_theta_sign_rep():
    G = s3_group()
    sgn = sign_rep_s3(G)
    mod = right_mult_module(sgn)
    zeta = Cocycle(mod, [[sgn.mats[g][0][0] - 1] for g in G.elements()])
    theta = inner_theta_from_cocycle(G, mod, zeta)
    assert theta == [Fraction(1)]
    cb = coboundary(mod, theta)
    for g in G.elements():
        assert cb(g) == zeta(g)
    bad = Cocycle(mod, [[Fraction(1)] for _ in G.elements()])
    assert not verify_cocycle(G, mod, bad)
    with pytest.raises(CocycleInvalid):
        inner_theta_from_cocycle(G, mod, bad)


def test_coboundary_is_cocycle():
    G = s3_group()
    rho = two_dim_rep_s3(G)
    mod = right_mult_module(rho)
    theta0 = [Fraction(k + 1, 3) for k in range(4)]
    cb = coboundary(mod, theta0)
    assert verify_cocycle(G, mod, cb)
    theta = inner_theta_from_cocycle(G, mod, cb)
    # recovered theta differs from theta0 by an invariant element
    diff = [a - b for a, b in zip(theta, theta0)]
    for g in G.elements():
        moved = mod.apply(diff, g)
        assert moved == diff
