"""Group actions on digraphs, quantum-principal-bundle conditions,
quotient quivers, and the canonical connection.

The base digraph is a Quiver whose arrows all have colour 1; a DigraphAction
acts on vertices (and hence arrows, by covariance of source and target).
"""

from __future__ import annotations

from fractions import Fraction

from .calculus import CheckResult
from .errors import BundleConditionsFail, QuivergeomError
from .quivers import Arrow, Quiver


class DigraphAction:
    """Action of a finite group on a digraph with s, t covariant.

    vertex_action[g][x] is the image of vertex x under g; the arrow action
    is induced (an arrow x -> y maps to x^g -> y^g, which must again be an
    arrow).
    """

    def __init__(self, G, quiver, vertex_action):
        self.group = G
        self.quiver = quiver
        self.vertex_action = [list(row) for row in vertex_action]
        self._validate()

    def _validate(self):
        G = self.group
        n = len(self.quiver.vertices)
        ident = self.vertex_action[G.identity]
        if ident != list(range(n)):
            raise QuivergeomError("the identity must act trivially on vertices")
        for g in G.elements():
            if sorted(self.vertex_action[g]) != list(range(n)):
                raise QuivergeomError(f"{G.labels[g]} does not permute the vertices")
            for h in G.elements():
                gh = G.mul(g, h)
                for x in range(n):
                    if self.vertex_action[h][self.vertex_action[g][x]] != self.vertex_action[gh][x]:
                        raise QuivergeomError("vertex action is not a right action")
        self.arrow_action = []
        for g in G.elements():
            row = []
            for a in self.quiver.arrows:
                xs = self.vertex_action[g][a.source]
                ys = self.vertex_action[g][a.target]
                try:
                    row.append(self.quiver.arrow_id(xs, ys, a.color))
                except KeyError:
                    raise QuivergeomError(
                        f"s,t covariance fails: image of {a.source}->{a.target} under {G.labels[g]} is not an arrow"
                    )
            self.arrow_action.append(row)

    def vertex_orbits(self):
        seen = set()
        out = []
        for x in range(len(self.quiver.vertices)):
            if x in seen:
                continue
            orb = {self.vertex_action[g][x] for g in self.group.elements()}
            seen |= orb
            out.append(sorted(orb))
        return sorted(out)

    def arrow_orbits(self):
        seen = set()
        out = []
        for a in range(len(self.quiver.arrows)):
            if a in seen:
                continue
            orb = {self.arrow_action[g][a] for g in self.group.elements()}
            seen |= orb
            out.append(sorted(orb))
        return sorted(out)


def right_translation_action(G, quiver, subgroup_elems):
    """Right translation of a subgroup on a group-vertex digraph.

    quiver vertices are the elements of a group X realised by G itself
    (vertex i multiplies as G); subgroup_elems index into the vertex group.
    Returns (subgroup FiniteGroup-like labels, DigraphAction) where the
    acting group is the abstract subgroup with the induced table.
    """
    from .groups import FiniteGroup

    elems = sorted(subgroup_elems)
    pos = {g: i for i, g in enumerate(elems)}
    table = [[pos[G.mul(a, b)] for b in elems] for a in elems]
    H = FiniteGroup([G.labels[g] for g in elems], table)
    vertex_action = []
    for h in elems:
        vertex_action.append([G.mul(x, h) for x in range(G.order)])
    return H, DigraphAction(H, quiver, vertex_action)


def check_bundle(action, cbar):
    """Prop conditions for a quantum principal bundle from a digraph action.

    (i) every vertex orbit has cardinality |G| (the action is free);
    (ii) within each orbit the arrows are exactly x -> x^a for a in cbar
    (valency |cbar|).  cbar indexes elements of the acting group.
    Returns (ok, checks).
    """
    G = action.group
    checks = []
    orbits = action.vertex_orbits()
    ok1 = all(len(o) == G.order for o in orbits)
    checks.append(CheckResult("i", ok1, "" if ok1 else "an orbit has cardinality below |G|"))
    cbar = set(cbar)
    ok2, wit = True, ""
    orbit_of = {}
    for k, o in enumerate(orbits):
        for x in o:
            orbit_of[x] = k
    for aid, a in enumerate(action.quiver.arrows):
        if orbit_of[a.source] != orbit_of[a.target]:
            continue
        # intra-orbit arrow must be x -> x^a with a unique a in cbar
        hits = [g for g in cbar if action.vertex_action[g][a.source] == a.target]
        if len(hits) != 1:
            ok2, wit = False, f"intra-orbit arrow {aid} is not of the form x -> x^a, a in cbar"
    # valency |cbar| within each orbit
    if ok2:
        for x in range(len(action.quiver.vertices)):
            intra = [aid for aid in action.quiver.arrows_from(x) if orbit_of[action.quiver.arrows[aid].target] == orbit_of[x]]
            if len(intra) != len(cbar):
                ok2, wit = False, f"vertex {x} has intra-orbit valency {len(intra)} != |cbar|"
    checks.append(CheckResult("ii", ok2, wit))
    return all(c.ok for c in checks), checks


def quotient_quiver(action):
    """Invariant one-forms as a quiver on the vertex orbits.

    Each orbit of arrows contributes one arrow between the corresponding
    orbits (loops allowed); colours enumerate parallel arrows.  Returns
    (quiver, orbit list, arrow-orbit list).
    """
    orbits = action.vertex_orbits()
    orbit_of = {}
    for k, o in enumerate(orbits):
        for x in o:
            orbit_of[x] = k
    arrow_orbits = action.arrow_orbits()
    counts = {}
    arrows = []
    for orb in arrow_orbits:
        a = action.quiver.arrows[orb[0]]
        s, t = orbit_of[a.source], orbit_of[a.target]
        counts[(s, t)] = counts.get((s, t), 0) + 1
        arrows.append(Arrow(s, t, counts[(s, t)]))
    labels = ["{" + ",".join(action.quiver.vertices[x] for x in o) + "}" for o in orbits]
    return Quiver(labels, arrows), orbits, arrow_orbits


def vertical_map(action, cbar):
    """ver(x -> y) = delta_x (x) e_a when y = x^a for a unique a in cbar.

    Returns a dict arrow id -> (x, a) or None for horizontal arrows.
    """
    out = {}
    for aid, a in enumerate(action.quiver.arrows):
        hits = [g for g in cbar if action.vertex_action[g][a.source] == a.target]
        if len(hits) > 1:
            raise BundleConditionsFail("the action is not free on arrows: ver is ill-defined")
        out[aid] = (a.source, hits[0]) if hits else None
    return out


def canonical_connection(action, cbar):
    """omega(e_a) = sum_x (x -> x^a), with ver omega(e_a) = 1 (x) e_a and the
    vertical projection Pi_omega; raises when the bundle conditions fail.
    """
    ok, checks = check_bundle(action, cbar)
    if not ok:
        bad = next(c for c in checks if not c.ok)
        raise BundleConditionsFail(f"condition ({bad.name}): {bad.witness}")
    quiver = action.quiver
    omega = {}
    for g in sorted(cbar):
        coeffs = {}
        for x in range(len(quiver.vertices)):
            y = action.vertex_action[g][x]
            coeffs[(quiver.arrow_id(x, y, 1),)] = Fraction(1)
        omega[g] = coeffs
    ver = vertical_map(action, cbar)
    # ver(omega(e_a)) = sum_x delta_x (x) e_a = 1 (x) e_a
    for g in sorted(cbar):
        for path in omega[g]:
            v = ver[path[0]]
            if v is None or v[1] != g:
                raise BundleConditionsFail("ver omega(e_a) != 1 (x) e_a")
    # Pi_omega(x -> y) = x -> y if same orbit else 0
    orbit_of = {}
    for k, o in enumerate(action.vertex_orbits()):
        for x in o:
            orbit_of[x] = k
    projection = {}
    for aid, a in enumerate(quiver.arrows):
        projection[aid] = 1 if ver[aid] is not None else 0
        if (orbit_of[a.source] == orbit_of[a.target]) != bool(projection[aid]):
            raise BundleConditionsFail("Pi_omega kernel is not the span of inter-orbit arrows")
    return omega, ver, projection


def equivariance_check(action, cbar, omega):
    """Delta_R omega(e_a) = sum_g omega(e_{g^-1 a g}) (x) delta_g.

    For the right-translation bundles used here the coaction translates
    each arrow x -> x^a to x^g -> x^{ag}; the condition is that the
    translated sum equals omega at the conjugated label.
    """
    G = action.group
    for a in sorted(cbar):
        for g in G.elements():
            conj = G.mul(G.mul(G.inv(g), a), g)
            if conj not in cbar:
                return False
            moved = {}
            for path in omega[a]:
                aid = action.arrow_action[g][path[0]]
                moved[(aid,)] = Fraction(1)
            if moved != omega[conj]:
                return False
    return True


def splitting_dimensions(action, cbar):
    """When at most one arrow joins a vertex to any other orbit, the
    invariant forms split as base forms plus k(X/G, Lambda^1_H).

    Returns (splits, dim_invariant, dim_base_quiver, dim_vertical)."""
    quiver = action.quiver
    orbits = action.vertex_orbits()
    orbit_of = {}
    for k, o in enumerate(orbits):
        for x in o:
            orbit_of[x] = k
    splits = True
    for x in range(len(quiver.vertices)):
        targets = {}
        for aid in quiver.arrows_from(x):
            t = orbit_of[quiver.arrows[aid].target]
            if t != orbit_of[x]:
                targets[t] = targets.get(t, 0) + 1
        if any(v > 1 for v in targets.values()):
            splits = False
    dim_inv = len(action.arrow_orbits())
    qq, _, _ = quotient_quiver(action)
    inter = sum(1 for a in qq.arrows if a.source != a.target)
    vertical = len(orbits) * len(set(cbar))
    return splits, dim_inv, inter, vertical
