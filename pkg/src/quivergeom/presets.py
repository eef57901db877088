"""Named presets materialising every worked example.

Each builder returns a dict of live objects (group, quiver, calculus,
frame, metric, connection data, ...) for the CLI and the test suites.
Builders are cached: presets are immutable once constructed.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from .calculus import (
    ArrowAction,
    calculus_from_rep,
    canonical_kG_calculus,
    canonical_kofG_calculus,
    codifferential_kG,
    with_frame,
)
from .errors import UnknownPreset
from .geometry import FrameMetric, frame_from_group_calculus, frame_from_set_calculus
from .groups import cyclic_group, s3_group, sign_rep_s3, two_dim_rep_s3
from .quivers import GradedVec, cayley_digraph, hopf_quiver, mark_cayley_bar

PRESET_NAMES = (
    "cs3-4d",
    "cs3-sign",
    "ks3-3d",
    "ks3-uvclass",
    "z2-4arrow",
    "z2-loops",
    "z2-shuffle",
    "s3-mod-z2",
)


def preset(name):
    if name not in PRESET_NAMES:
        raise UnknownPreset(f"unknown preset {name!r}; choose from {', '.join(PRESET_NAMES)}")
    return _BUILDERS[name]()


@lru_cache(maxsize=None)
def cs3_4d():
    """CS3 with the 4D calculus of the 2-dimensional irreducible."""
    G = s3_group()
    rho = two_dim_rep_s3(G)
    raw = calculus_from_rep(G, rho)
    u, v, uv, vu = (G.index(t) for t in ("u", "v", "uv", "vu"))
    basis = [raw.zeta(u), raw.zeta(v), raw.zeta(uv), raw.zeta(vu)]
    calc = with_frame(raw, ["e_u", "e_v", "e_uv", "e_vu"], basis)
    frame = frame_from_group_calculus(calc)
    lam = _cs3_metric_coeffs()
    metric = FrameMetric(frame, lam)
    return {"group": G, "rep": rho, "calculus": calc, "frame": frame, "metric": metric, "alpha_family": _cs3_alpha()}


def _cs3_metric_coeffs():
    """Coefficients of g = sum e_i (x) e_i over u,v,w,uv,vu minus 6 theta (x) theta
    expanded in the frame (e_u, e_v, e_uv, e_vu)."""
    F = Fraction
    return {
        (0, 0): F(2), (0, 1): F(1), (1, 0): F(1), (1, 1): F(2),
        (0, 2): F(-1), (0, 3): F(-1), (1, 2): F(-1), (1, 3): F(-1),
        (2, 0): F(-1), (3, 0): F(-1), (2, 1): F(-1), (3, 1): F(-1),
        (2, 2): F(4, 3), (2, 3): F(1, 3), (3, 2): F(1, 3), (3, 3): F(4, 3),
    }


def _cs3_alpha():
    """The displayed one-parameter family at lambda = 1 (indices u,v,uv,vu)."""
    F = Fraction
    return {
        0: {(0, 0): F(-1), (0, 1): F(1), (1, 0): F(1), (1, 1): F(2), (1, 2): F(-1), (1, 3): F(-1),
            (2, 1): F(-1), (3, 1): F(-1), (2, 3): F(1), (3, 2): F(1)},
        1: {(0, 0): F(2), (0, 1): F(1), (1, 0): F(1), (1, 1): F(-1), (0, 2): F(-1), (0, 3): F(-1),
            (2, 0): F(-1), (3, 0): F(-1), (2, 3): F(1), (3, 2): F(1)},
        2: {(3, 2): F(1), (2, 2): F(-1), (2, 3): F(1)},
        3: {(2, 3): F(1), (3, 3): F(-1), (3, 2): F(1)},
    }


@lru_cache(maxsize=None)
def cs3_sign():
    """CS3 with the 1-dimensional sign-representation calculus."""
    G = s3_group()
    rho = sign_rep_s3(G)
    calc = calculus_from_rep(G, rho)
    frame = frame_from_group_calculus(calc)
    metric = FrameMetric(frame, {(0, 0): Fraction(1)})
    return {"group": G, "rep": rho, "calculus": calc, "frame": frame, "metric": metric}


def _ks3(cbar_labels):
    G = s3_group()
    cbar = {G.index(t) for t in cbar_labels}
    quiver = cayley_digraph(G, cbar)
    calc = canonical_kofG_calculus(G, quiver)
    frame = frame_from_set_calculus(calc)
    lam = {}
    ones = (Fraction(1),) * G.order
    for i, (g, _) in enumerate(frame.inv.letters):
        for j, (h, _) in enumerate(frame.inv.letters):
            if G.mul(g, h) == G.identity and (len(cbar) != 3 or i == j):
                lam[(i, j)] = ones
    metric = FrameMetric(frame, lam)
    return {"group": G, "quiver": quiver, "calculus": calc, "frame": frame, "metric": metric}


@lru_cache(maxsize=None)
def ks3_3d():
    """k(S3) with the standard 3D calculus of the class {u,v,w}, Euclidean metric."""
    return _ks3(("u", "v", "w"))


@lru_cache(maxsize=None)
def ks3_uvclass():
    """k(S3) with the calculus of the class {uv, vu} and its central metric."""
    return _ks3(("uv", "vu"))


@lru_cache(maxsize=None)
def z2_4arrow():
    """The 4-arrow Z2 quiver (ramification 2{g}) with its marked digraph."""
    Z2 = cyclic_group(2)
    quiver = mark_cayley_bar(Z2, hopf_quiver(Z2, {1: 2}), {1})
    calc = canonical_kofG_calculus(Z2, quiver)
    frame = frame_from_set_calculus(calc)
    return {"group": Z2, "quiver": quiver, "calculus": calc, "frame": frame}


@lru_cache(maxsize=None)
def z2_loops():
    """Z2 with ramification {e} + 2{g}: loops gamma, rho and arrows alpha_i, beta_i.

    Carries the right-handed triple action alpha_1.g = beta_1,
    alpha_2.g = -beta_2, gamma.g = -rho (and symmetrically), the canonical
    inner kG calculus, and the codifferential i(alpha_1) = g - e.
    """
    Z2 = cyclic_group(2)
    quiver = mark_cayley_bar(Z2, hopf_quiver(Z2, {0: 1, 1: 2}), {1})
    ga = quiver.arrow_id(0, 0, 1)
    rh = quiver.arrow_id(1, 1, 1)
    a1, a2 = quiver.arrow_id(0, 1, 1), quiver.arrow_id(0, 1, 2)
    b1, b2 = quiver.arrow_id(1, 0, 1), quiver.arrow_id(1, 0, 2)
    F = Fraction
    table = [
        {aid: GradedVec.path(quiver, (aid,)) for aid in range(6)},
        {
            a1: GradedVec(quiver, 1, {(b1,): F(1)}),
            a2: GradedVec(quiver, 1, {(b2,): F(-1)}),
            b1: GradedVec(quiver, 1, {(a1,): F(1)}),
            b2: GradedVec(quiver, 1, {(a2,): F(-1)}),
            ga: GradedVec(quiver, 1, {(rh,): F(-1)}),
            rh: GradedVec(quiver, 1, {(ga,): F(-1)}),
        },
    ]
    rstar = ArrowAction(Z2, quiver, table, "right")
    kcal = canonical_kG_calculus(Z2, quiver, rstar)
    i_table, checks = codifferential_kG(Z2, quiver, rstar)
    arrows = {"gamma": ga, "rho": rh, "alpha1": a1, "alpha2": a2, "beta1": b1, "beta2": b2}
    return {"group": Z2, "quiver": quiver, "rstar": rstar, "kcalculus": kcal, "i_table": i_table,
            "codiff_checks": checks, "arrows": arrows}


@lru_cache(maxsize=None)
def z2_shuffle():
    """The z2-loops data together with the canonical coinner functional."""
    data = dict(z2_loops())
    kcal = data["kcalculus"]
    vartheta = {}
    for i, aid in enumerate(kcal.frame_arrows):
        vartheta[i] = Fraction(1) if kcal.quiver.arrows[aid].bar else Fraction(0)
    data["vartheta"] = vartheta
    arrows = data["arrows"]
    data["vartheta_arrows"] = {arrows["alpha1"]: Fraction(1), arrows["beta1"]: Fraction(1)}
    return data


@lru_cache(maxsize=None)
def s3_mod_z2():
    """S3 with the Bruhat digraph, Z2 = <u> acting by right translation."""
    from .bundles import right_translation_action

    G = s3_group()
    u, v, w = (G.index(t) for t in ("u", "v", "w"))
    quiver = cayley_digraph(G, {u, v, w})
    H, action = right_translation_action(G, quiver, [G.identity, u])
    return {"group": G, "quiver": quiver, "subgroup": H, "action": action, "cbar": frozenset({H.index("u")})}


_BUILDERS = {
    "cs3-4d": cs3_4d,
    "cs3-sign": cs3_sign,
    "ks3-3d": ks3_3d,
    "ks3-uvclass": ks3_uvclass,
    "z2-4arrow": z2_4arrow,
    "z2-loops": z2_loops,
    "z2-shuffle": z2_shuffle,
    "s3-mod-z2": s3_mod_z2,
}
