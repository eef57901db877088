"""First-order generalised differential and codifferential calculi in
their quiver canonical forms, with validation predicates.

Two concrete carriers:

* SetCalculus - calculi on the functions k(X) of a finite set, with
  one-forms spanned by quiver arrows (source/target bimodule actions);
  when X is a group and a compatible left action is supplied this is the
  canonical bicovariant form.
* GroupCalculus - bicovariant calculi on a group algebra kG, presented on
  the left-invariant frame (a G-graded right G-module with a fixed basis)
  with d inner via an element theta of the frame.

Functions on X are plain dicts vertex -> scalar; kG elements are dicts
element -> scalar; one-forms are GradedVec (set side) or dicts
(element, frame index) -> scalar (group side).
"""

from __future__ import annotations

from fractions import Fraction

from .errors import (
    ActionInvalid,
    BarNotDigraph,
    DiagonalTheta,
    NoLoopAtIdentity,
    QuivergeomError,
    TripleInvalid,
)
from .groups import conjugacy_classes, centralizer
from .quivers import Arrow, GradedVec, Quiver, hopf_quiver, path_label
from .scalars import is_zero


class CheckResult:
    def __init__(self, name, ok, witness=""):
        self.name = name
        self.ok = bool(ok)
        self.witness = witness

    def to_json(self):
        out = {"axiom": self.name, "ok": self.ok}
        if not self.ok:
            out["witness"] = self.witness
        return out

    def __repr__(self):
        return f"CheckResult({self.name}, {'ok' if self.ok else 'FAIL'}{', ' + self.witness if self.witness else ''})"


# ---------------------------------------------------------------------------
# helpers on functions and group-algebra elements


def delta(x):
    return {x: Fraction(1)}


def fun_sub(f, g):
    out = dict(f)
    for k, v in g.items():
        s = out.get(k, 0) - v
        if is_zero(s):
            out.pop(k, None)
        else:
            out[k] = s
    return out


def fun_eq(f, g):
    return all(is_zero(v) for v in fun_sub(f, g).values())


# ---------------------------------------------------------------------------
# arrow actions (G acting linearly on kQ_1)


class ArrowAction:
    """A linear action of G on the arrow span, one table per element.

    table[g][arrow_id] is a GradedVec of degree 1.  side is "left" or
    "right" and only affects the action axiom checked:  left means
    g.(h.a) = (gh).a, right means (a.g).h = a.(gh).
    """

    def __init__(self, G, quiver, table, side):
        self.group = G
        self.quiver = quiver
        self.table = table
        self.side = side

    def apply(self, g, vec):
        out = GradedVec(self.quiver, 1, {})
        for p, c in vec.coeffs.items():
            aid = p[0] if isinstance(p, tuple) else p
            out = out + self.table[g][aid].scale(c)
        return out

    def apply_arrow(self, g, arrow_id):
        return self.table[g][arrow_id]

    def is_action(self):
        G = self.group
        for g in G.elements():
            for h in G.elements():
                gh = G.mul(g, h)
                for aid in range(len(self.quiver.arrows)):
                    one = GradedVec.path(self.quiver, (aid,))
                    if self.side == "right":
                        # (a . g) . h = a . (gh)
                        lhs = self.apply(h, self.apply(g, one))
                    else:
                        # g . (h . a) = (gh) . a
                        lhs = self.apply(g, self.apply(h, one))
                    if lhs != self.apply(gh, one):
                        return False, f"action axiom fails at g={G.labels[g]}, h={G.labels[h]}, arrow {aid}"
        ident = self.table[G.identity]
        for aid in range(len(self.quiver.arrows)):
            if ident[aid] != GradedVec.path(self.quiver, (aid,)):
                return False, f"identity does not act trivially on arrow {aid}"
        return True, ""


def canonical_left_star(G, quiver):
    """h * (x ->(i) y) = xh^-1 ->(i) yh^-1 (the k(G)-side canonical action)."""
    table = []
    for h in G.elements():
        hm = G.inv(h)
        row = {}
        for aid, a in enumerate(quiver.arrows):
            target = quiver.arrow_id(G.mul(a.source, hm), G.mul(a.target, hm), a.color)
            row[aid] = GradedVec.path(quiver, (target,))
        table.append(row)
    return ArrowAction(G, quiver, table, "left")


def canonical_right_star(G, quiver):
    """(x ->(i) y) * h = h^-1 x ->(i) h^-1 y."""
    table = []
    for h in G.elements():
        hm = G.inv(h)
        row = {}
        for aid, a in enumerate(quiver.arrows):
            target = quiver.arrow_id(G.mul(hm, a.source), G.mul(hm, a.target), a.color)
            row[aid] = GradedVec.path(quiver, (target,))
        table.append(row)
    return ArrowAction(G, quiver, table, "right")


def translation_left(G, quiver):
    """h * (x ->(i) y) = hx ->(i) hy (the kG-side canonical left action)."""
    table = []
    for h in G.elements():
        row = {}
        for aid, a in enumerate(quiver.arrows):
            target = quiver.arrow_id(G.mul(h, a.source), G.mul(h, a.target), a.color)
            row[aid] = GradedVec.path(quiver, (target,))
        table.append(row)
    return ArrowAction(G, quiver, table, "left")


# ---------------------------------------------------------------------------
# calculi on k(X)


class SetCalculus:
    """Quiver canonical form on k(X): Omega^1 = kQ_1, d = [theta, .]."""

    def __init__(self, quiver, theta=None, group=None, star=None):
        self.quiver = quiver
        self.theta = theta if theta is not None else GradedVec(quiver, 1, {})
        self.group = group
        self.star = star  # left ArrowAction for Delta_R in the bicovariant case

    @property
    def vertices(self):
        return range(len(self.quiver.vertices))

    def fun_on_left(self, f, vec):
        out = {}
        for p, c in vec.coeffs.items():
            aid = p[0] if isinstance(p, tuple) else p
            s = f.get(self.quiver.arrows[aid].source, 0)
            if not is_zero(s):
                out[p] = c * s
        return GradedVec(self.quiver, 1, out)

    def fun_on_right(self, vec, f):
        out = {}
        for p, c in vec.coeffs.items():
            aid = p[0] if isinstance(p, tuple) else p
            s = f.get(self.quiver.arrows[aid].target, 0)
            if not is_zero(s):
                out[p] = c * s
        return GradedVec(self.quiver, 1, out)

    def d_fun(self, f):
        """d f = theta f - f theta."""
        return self.fun_on_right(self.theta, f) - self.fun_on_left(f, self.theta)

    def d_vertex(self, x):
        return self.d_fun(delta(x))


def quiver_calculus(quiver):
    """Inner quiver calculus with theta the sum of the distinguished arrows."""
    if not quiver.bar_is_digraph():
        raise BarNotDigraph("distinguished arrows must form a digraph (no loops, no repeats)")
    theta = GradedVec(quiver, 1, {(i,): Fraction(1) for i in quiver.bar_arrows()})
    return SetCalculus(quiver, theta)


def verify_hopf_triple(G, quiver, star):
    """Check the Hopf digraph-quiver triple axioms; returns (ok, checks)."""
    checks = []
    ok_act, wit = star.is_action()
    checks.append(CheckResult("action", ok_act, wit))
    # (1) h * k(xQ1y) = k(x h^-1 Q1 y h^-1)
    ok1, wit1 = True, ""
    for h in G.elements():
        for aid, a in enumerate(quiver.arrows):
            img = star.apply_arrow(h, aid)
            sx, sy = G.mul(a.source, G.inv(h)), G.mul(a.target, G.inv(h))
            for p in img.coeffs:
                b = quiver.arrows[p[0]]
                if (b.source, b.target) != (sx, sy):
                    ok1, wit1 = False, f"h={G.labels[h]} sends arrow {aid} off k({G.labels[sx]}->{G.labels[sy]})"
    checks.append(CheckResult("1", ok1, wit1))
    # (2) restriction to bar arrows is canonical
    ok2, wit2 = True, ""
    for h in G.elements():
        for aid in quiver.bar_arrows():
            a = quiver.arrows[aid]
            want = quiver.arrow_id(G.mul(a.source, G.inv(h)), G.mul(a.target, G.inv(h)), 1)
            if star.apply_arrow(h, aid) != GradedVec.path(quiver, (want,)):
                ok2, wit2 = False, f"h={G.labels[h]} is not canonical on bar arrow {aid}"
    checks.append(CheckResult("2", ok2, wit2))
    # (3) commutes with the canonical right action
    right = canonical_right_star(G, quiver)
    ok3, wit3 = True, ""
    for h in G.elements():
        for k in G.elements():
            for aid in range(len(quiver.arrows)):
                one = GradedVec.path(quiver, (aid,))
                lhs = star.apply(h, right.apply(k, one))
                rhs = right.apply(k, star.apply(h, one))
                if lhs != rhs:
                    ok3, wit3 = False, f"h={G.labels[h]}, k={G.labels[k]}, arrow {aid}"
    checks.append(CheckResult("3", ok3, wit3))
    return all(c.ok for c in checks), checks


def canonical_kofG_calculus(G, quiver, star=None):
    """Prop-canonical bicovariant quiver calculus on k(G).

    quiver must be a coloured Hopf quiver with its Cayley sub-digraph
    marked; star defaults to the canonical left action.
    """
    if star is None:
        star = canonical_left_star(G, quiver)
    ok, checks = verify_hopf_triple(G, quiver, star)
    if not ok:
        bad = next(c for c in checks if not c.ok)
        raise TripleInvalid(bad.name, bad.witness)
    calc = quiver_calculus(quiver)
    calc.group = G
    calc.star = star
    return calc


def coaction_right(calc, vec):
    """Delta_R(vec) = sum_h h*vec (x) delta_h as a dict h -> GradedVec."""
    return {h: calc.star.apply(h, vec) for h in calc.group.elements()}


def coaction_left(calc, vec):
    """Delta_L(vec) = sum_h delta_h (x) (h^-1 x -> h^-1 y) components."""
    G = calc.group
    out = {}
    for h in G.elements():
        moved = {}
        for p, c in vec.coeffs.items():
            a = calc.quiver.arrows[p[0]]
            target = calc.quiver.arrow_id(G.mul(G.inv(h), a.source), G.mul(G.inv(h), a.target), a.color)
            moved[(target,)] = moved.get((target,), 0) + c
        out[h] = GradedVec(calc.quiver, 1, moved)
    return out


def validate_set_calculus(calc):
    """Leibniz, inner identity, and (when covariant) comodule properties."""
    checks = []
    q = calc.quiver
    ok, wit = True, ""
    for x in calc.vertices:
        for y in calc.vertices:
            prod = delta(x) if x == y else {}
            lhs = calc.d_fun(prod)
            rhs = calc.fun_on_left(delta(x), calc.d_vertex(y)) + calc.fun_on_right(calc.d_vertex(x), delta(y))
            if lhs != rhs:
                ok, wit = False, f"Leibniz fails on delta_{q.vertices[x]}, delta_{q.vertices[y]}"
    checks.append(CheckResult("leibniz", ok, wit))
    ok, wit = True, ""
    for x in calc.vertices:
        if calc.d_vertex(x) != calc.fun_on_right(calc.theta, delta(x)) - calc.fun_on_left(delta(x), calc.theta):
            ok, wit = False, f"inner identity fails at {q.vertices[x]}"
    checks.append(CheckResult("inner", ok, wit))
    if calc.group is not None and calc.star is not None:
        G = calc.group
        ok, wit = True, ""
        for x in calc.vertices:
            dr = coaction_right(calc, calc.d_vertex(x))
            for h in G.elements():
                if dr[h] != calc.d_vertex(G.mul(x, G.inv(h))):
                    ok, wit = False, f"d is not a right comodule map at delta_{G.labels[x]}, h={G.labels[h]}"
        checks.append(CheckResult("d-right-comodule", ok, wit))
        ok, wit = True, ""
        for x in calc.vertices:
            dl = coaction_left(calc, calc.d_vertex(x))
            for h in G.elements():
                if dl[h] != calc.d_vertex(G.mul(G.inv(h), x)):
                    ok, wit = False, f"d is not a left comodule map at delta_{G.labels[x]}, h={G.labels[h]}"
        checks.append(CheckResult("d-left-comodule", ok, wit))
        # Delta_R is a bimodule map iff axiom (1); recheck through the module actions
        ok, wit = True, ""
        for aid in range(len(q.arrows)):
            a = q.arrows[aid]
            one = GradedVec.path(q, (aid,))
            for h in G.elements():
                img = calc.star.apply(h, one)
                lhs = calc.fun_on_left(delta(G.mul(a.source, G.inv(h))), img)
                if lhs != img:
                    ok, wit = False, f"Delta_R not a left module map on arrow {aid}"
        checks.append(CheckResult("coaction-bimodule", ok, wit))
    return checks


# ---------------------------------------------------------------------------
# codifferentials


def codiff_on_set(quiver):
    """Coinner codifferential on kX from the distinguished sub-digraph.

    Returns (vartheta, i_table): vartheta maps arrow ids to 0/1 scalars,
    i_table maps arrow ids to dicts vertex -> scalar.
    """
    for aid in quiver.bar_arrows():
        a = quiver.arrows[aid]
        if a.source == a.target:
            raise DiagonalTheta("vartheta_{x,x} = 0 forbids distinguished loops")
    vartheta = {}
    i_table = {}
    for aid, a in enumerate(quiver.arrows):
        vartheta[aid] = Fraction(1) if a.bar else Fraction(0)
        if a.bar:
            i_table[aid] = {a.target: Fraction(1), a.source: Fraction(-1)}
        else:
            i_table[aid] = {}
    return vartheta, i_table


def codifferential_kG(G, quiver, rstar):
    """Prop-canonical codifferential on kQ_1 over kG (right-handed triple).

    i(x ->(i) y) = y - x for colour-1 arrows with x^-1 y in the marked
    Cayley set, zero otherwise.  Returns (i_table, checks).
    """
    checks = _validate_right_triple(G, quiver, rstar)
    if not all(c.ok for c in checks):
        bad = next(c for c in checks if not c.ok)
        raise TripleInvalid(bad.name, bad.witness)
    i_table = {}
    for aid, a in enumerate(quiver.arrows):
        if a.bar and a.color == 1:
            i_table[aid] = {a.target: Fraction(1), a.source: Fraction(-1)}
        else:
            i_table[aid] = {}
    checks.append(_co_leibniz_kG(G, quiver, rstar, i_table))
    return i_table, checks


def _validate_right_triple(G, quiver, rstar):
    checks = []
    ok_act, wit = rstar.is_action()
    checks.append(CheckResult("action", ok_act, wit))
    ok1, wit1 = True, ""
    for h in G.elements():
        for aid, a in enumerate(quiver.arrows):
            img = rstar.apply_arrow(h, aid)
            sx, sy = G.mul(a.source, h), G.mul(a.target, h)
            for p in img.coeffs:
                b = quiver.arrows[p[0]]
                if (b.source, b.target) != (sx, sy):
                    ok1, wit1 = False, f"h={G.labels[h]} sends arrow {aid} off k({G.labels[sx]}->{G.labels[sy]})"
    checks.append(CheckResult("1", ok1, wit1))
    ok2, wit2 = True, ""
    for h in G.elements():
        for aid in quiver.bar_arrows():
            a = quiver.arrows[aid]
            want = quiver.arrow_id(G.mul(a.source, h), G.mul(a.target, h), 1)
            if rstar.apply_arrow(h, aid) != GradedVec.path(quiver, (want,)):
                ok2, wit2 = False, f"h={G.labels[h]} not canonical on bar arrow {aid}"
    checks.append(CheckResult("2", ok2, wit2))
    left = translation_left(G, quiver)
    ok3, wit3 = True, ""
    for h in G.elements():
        for k in G.elements():
            for aid in range(len(quiver.arrows)):
                one = GradedVec.path(quiver, (aid,))
                lhs = rstar.apply(h, left.apply(k, one))
                rhs = left.apply(k, rstar.apply(h, one))
                if lhs != rhs:
                    ok3, wit3 = False, f"h={G.labels[h]}, k={G.labels[k]}, arrow {aid}"
    checks.append(CheckResult("3", ok3, wit3))
    return checks


def _co_leibniz_kG(G, quiver, rstar, i_table):
    """Delta i = (i (x) id) Delta_R + (id (x) i) Delta_L on arrows.

    Delta_L(x->y) = x (x) (x->y), Delta_R(x->y) = (x->y) (x) y; i lands in
    kG whose coproduct is grouplike.
    """
    ok, wit = True, ""
    for aid, a in enumerate(quiver.arrows):
        lhs = {}
        for g, c in i_table[aid].items():
            lhs[(g, g)] = lhs.get((g, g), 0) + c
        rhs = {}
        for g, c in i_table[aid].items():
            rhs[(g, a.target)] = rhs.get((g, a.target), 0) + c
            rhs[(a.source, g)] = rhs.get((a.source, g), 0) + c
        diff = dict(lhs)
        for k, v in rhs.items():
            diff[k] = diff.get(k, 0) - v
        if any(not is_zero(v) for v in diff.values()):
            ok, wit = False, f"co-Leibniz fails on arrow {aid}"
    return CheckResult("co-leibniz", ok, wit)


def codifferential_kofG(G, quiver, lam_action):
    """Prop-canonical coinner codifferential on k(G) from a left action.

    lam_action is an ArrowAction (side "left") with h.(x ->(i) y) supported
    on arrows x h^-1 -> y h^-1 and commuting with the canonical right
    action (x->y).g = g^-1 x -> g^-1 y.  Returns (vartheta, i_table,
    checks) with i(x ->(i) y) = delta_{x,y} (lambda_{i1}(x) - delta_{i,1})
    delta_x.
    """
    checks = []
    ok_act, wit = lam_action.is_action()
    checks.append(CheckResult("action", ok_act, wit))
    ok1, wit1 = True, ""
    for h in G.elements():
        for aid, a in enumerate(quiver.arrows):
            img = lam_action.apply_arrow(h, aid)
            sx, sy = G.mul(a.source, G.inv(h)), G.mul(a.target, G.inv(h))
            for p in img.coeffs:
                b = quiver.arrows[p[0]]
                if (b.source, b.target) != (sx, sy):
                    ok1, wit1 = False, f"h={G.labels[h]} sends arrow {aid} off the graded component"
    checks.append(CheckResult("grading", ok1, wit1))
    right = canonical_right_star(G, quiver)
    ok3, wit3 = True, ""
    for h in G.elements():
        for k in G.elements():
            for aid in range(len(quiver.arrows)):
                one = GradedVec.path(quiver, (aid,))
                lhs = lam_action.apply(h, right.apply(k, one))
                rhs = right.apply(k, lam_action.apply(h, one))
                if lhs != rhs:
                    ok3, wit3 = False, f"h={G.labels[h]}, k={G.labels[k]}, arrow {aid}"
    checks.append(CheckResult("commutes-right", ok3, wit3))
    if not all(c.ok for c in checks):
        bad = next(c for c in checks if not c.ok)
        raise ActionInvalid(f"{bad.name}: {bad.witness}")
    e = G.identity
    i_table = {}
    for aid, a in enumerate(quiver.arrows):
        if a.source != a.target:
            i_table[aid] = {}
            continue
        x = a.source
        # lambda_{i1}(x): coefficient of the colour-1 loop in x acting on e ->(i) e
        src = quiver.arrow_id(e, e, a.color)
        img = lam_action.apply_arrow(x, src)
        loop1 = quiver.arrow_id(G.mul(e, G.inv(x)), G.mul(e, G.inv(x)), 1)
        lam_i1 = img.coeffs.get((loop1,), Fraction(0))
        val = lam_i1 - (1 if a.color == 1 else 0)
        i_table[aid] = {} if is_zero(val) else {x: val}
    checks.append(_co_leibniz_kofG(G, quiver, lam_action, i_table))
    return i_table, checks


def _co_leibniz_kofG(G, quiver, lam_action, i_table):
    """Delta i = (i (x) id) Delta_R + (id (x) i) Delta_L on k(G) arrows."""
    ok, wit = True, ""
    for aid, a in enumerate(quiver.arrows):
        # lhs: Delta of the function i(arrow): Delta delta_x = sum_{ab=x} delta_a (x) delta_b
        lhs = {}
        for x, c in i_table[aid].items():
            for g in G.elements():
                b = G.mul(G.inv(g), x)
                lhs[(g, b)] = lhs.get((g, b), 0) + c
        rhs = {}
        # (i (x) id) Delta_R: Delta_R(arrow) = sum_h h.(arrow) (x) delta_h
        for h in G.elements():
            img = lam_action.apply_arrow(h, aid)
            for p, c in img.coeffs.items():
                for x, cc in i_table[p[0]].items():
                    rhs[(x, h)] = rhs.get((x, h), 0) + c * cc
        # (id (x) i) Delta_L: Delta_L(arrow) = sum_h delta_h (x) (h^-1 x -> h^-1 y)
        for h in G.elements():
            moved = quiver.arrow_id(G.mul(G.inv(h), a.source), G.mul(G.inv(h), a.target), a.color)
            for x, cc in i_table[moved].items():
                rhs[(h, x)] = rhs.get((h, x), 0) + cc
        diff = dict(lhs)
        for k, v in rhs.items():
            diff[k] = diff.get(k, 0) - v
        if any(not is_zero(v) for v in diff.values()):
            ok, wit = False, f"co-Leibniz fails on arrow {aid} ({path_label(quiver, (aid,))})"
    return CheckResult("co-leibniz", ok, wit)


# ---------------------------------------------------------------------------
# calculi on kG


class GroupCalculus:
    """Inner bicovariant calculus on kG presented on an invariant frame.

    frame element f_i has group degree deg[i]; the right action is
    f_i . g = sum_j act[g][i][j] f_j; theta is a frame vector and
    d x = x (theta . x - theta) for x in G.
    """

    def __init__(self, G, frame_names, deg, act, theta):
        self.group = G
        self.frame_names = list(frame_names)
        self.deg = list(deg)
        self.act = act
        self.theta = list(theta)
        self.dim = len(self.frame_names)

    def right_move(self, vec, g):
        """vec . g in frame coordinates."""
        m = self.act[g]
        out = [Fraction(0)] * self.dim
        for i, c in enumerate(vec):
            if is_zero(c):
                continue
            for j in range(self.dim):
                if not is_zero(m[i][j]):
                    out[j] = out[j] + c * m[i][j]
        return out

    def zeta(self, g):
        """zeta_g = theta . g - theta."""
        moved = self.right_move(self.theta, g)
        return [a - b for a, b in zip(moved, self.theta)]

    def d_elem(self, g):
        """d g = g (x) zeta_g: returns (g, frame vector)."""
        return g, self.zeta(g)

    def braiding(self, i, j):
        """Psi(f_i (x) f_j) = f_j (x) (f_i . |f_j|) as a dict (k,l)->scalar."""
        moved = self.right_move(_unit(self.dim, i), self.deg[j])
        out = {}
        for k, c in enumerate(moved):
            if not is_zero(c):
                out[(j, k)] = c
        return out

    def validate(self):
        """Grading compatibility, cocycle property and connectivity facts."""
        checks = []
        G = self.group
        ok, wit = True, ""
        for g in G.elements():
            for i in range(self.dim):
                want = G.mul(G.mul(G.inv(g), self.deg[i]), g)
                for j, c in enumerate(self.act[g][i]):
                    if not is_zero(c) and self.deg[j] != want:
                        ok, wit = False, f"f_{i} . {G.labels[g]} leaves the {G.labels[want]} component"
        checks.append(CheckResult("grading", ok, wit))
        ok, wit = True, ""
        for g in G.elements():
            for h in G.elements():
                lhs = self.zeta(G.mul(g, h))
                rhs = [a + b for a, b in zip(self.right_move(self.zeta(g), h), self.zeta(h))]
                if any(not is_zero(a - b) for a, b in zip(lhs, rhs)):
                    ok, wit = False, f"cocycle identity fails at ({G.labels[g]},{G.labels[h]})"
        checks.append(CheckResult("cocycle", ok, wit))
        ok, wit = True, ""
        for x in G.elements():
            for y in G.elements():
                # e_x . y = y . (e_{xy} - e_y) in Omega^1 reduces to the frame identity
                lhs = self.right_move(self.zeta(x), y)
                rhs = [a - b for a, b in zip(self.zeta(G.mul(x, y)), self.zeta(y))]
                if any(not is_zero(a - b) for a, b in zip(lhs, rhs)):
                    ok, wit = False, f"commutation relation fails at ({G.labels[x]},{G.labels[y]})"
        checks.append(CheckResult("commutation", ok, wit))
        return checks


def _unit(n, i):
    v = [Fraction(0)] * n
    v[i] = Fraction(1)
    return v


def calculus_from_rep(G, rho):
    """Lemma-canonical inner calculus on kG from a representation.

    Lambda^1 = End(V) with the matrix unit frame, omega . h = omega rho(h),
    theta = id, d x = x (rho(x) - id).
    """
    m = rho.dim
    names = [f"E{i + 1}{j + 1}" for i in range(m) for j in range(m)]
    deg = [G.identity] * (m * m)
    acts = []
    for g in G.elements():
        r = rho.mats[g]
        mat = [[Fraction(0)] * (m * m) for _ in range(m * m)]
        for k in range(m):
            for l in range(m):
                for j in range(m):
                    mat[k * m + l][k * m + j] = r[l][j]
        acts.append(mat)
    theta = [Fraction(1) if i == j else Fraction(0) for i in range(m) for j in range(m)]
    calc = GroupCalculus(G, names, deg, acts, theta)
    calc.rep = rho
    return calc


def with_frame(calc, names, basis):
    """Re-express a GroupCalculus in a new frame basis.

    basis rows are the new frame vectors in old coordinates; they must be
    homogeneous for the group grading.
    """
    from .linalg import mat_inverse, mat_mul

    B = [list(r) for r in basis]
    Binv = mat_inverse(B)
    if Binv is None:
        raise QuivergeomError("new frame basis is singular")
    deg = []
    for r in B:
        degs = {calc.deg[j] for j, c in enumerate(r) if not is_zero(c)}
        if len(degs) != 1:
            raise QuivergeomError("new frame vector is not homogeneous")
        deg.append(degs.pop())
    acts = [mat_mul(mat_mul(B, calc.act[g]), Binv) for g in calc.group.elements()]
    theta = [sum((calc.theta[j] * Binv[j][i] for j in range(calc.dim)), Fraction(0)) for i in range(calc.dim)]
    out = GroupCalculus(calc.group, names, deg, acts, theta)
    if hasattr(calc, "rep"):
        out.rep = calc.rep
    return out


def canonical_kG_calculus(G, quiver, rstar):
    """Prop-canonical inner bicovariant calculus on kG from (Q(G,R), *).

    rstar is the right ArrowAction; the frame is the arrows based at the
    identity, theta the colour-1 loop there, and the crossed-module action
    is conjugation f . h = h^-1 * (f * h).
    """
    e = G.identity
    checks = []
    ok_act, wit = rstar.is_action()
    checks.append(CheckResult("action", ok_act, wit))
    ok1, wit1 = True, ""
    for h in G.elements():
        for aid, a in enumerate(quiver.arrows):
            img = rstar.apply_arrow(h, aid)
            sx, sy = G.mul(a.source, h), G.mul(a.target, h)
            for p in img.coeffs:
                b = quiver.arrows[p[0]]
                if (b.source, b.target) != (sx, sy):
                    ok1, wit1 = False, f"h={G.labels[h]} sends arrow {aid} off k({G.labels[sx]}->{G.labels[sy]})"
    checks.append(CheckResult("grading", ok1, wit1))
    left = translation_left(G, quiver)
    ok3, wit3 = True, ""
    for h in G.elements():
        for k in G.elements():
            for aid in range(len(quiver.arrows)):
                one = GradedVec.path(quiver, (aid,))
                if rstar.apply(h, left.apply(k, one)) != left.apply(k, rstar.apply(h, one)):
                    ok3, wit3 = False, f"h={G.labels[h]}, k={G.labels[k]}, arrow {aid}"
    checks.append(CheckResult("commutes-left", ok3, wit3))
    if not all(c.ok for c in checks):
        bad = next(c for c in checks if not c.ok)
        raise ActionInvalid(f"{bad.name}: {bad.witness}")
    frame_arrows = sorted(quiver.arrows_from(e), key=lambda i: (quiver.arrows[i].target, quiver.arrows[i].color))
    try:
        theta_arrow = quiver.arrow_id(e, e, 1)
    except KeyError:
        raise NoLoopAtIdentity("the ramification must include the identity class (R_{e} >= 1)")
    names = [path_label(quiver, (i,)) for i in frame_arrows]
    deg = [quiver.arrows[i].target for i in frame_arrows]
    pos = {aid: k for k, aid in enumerate(frame_arrows)}
    acts = []
    for h in G.elements():
        mat = [[Fraction(0)] * len(frame_arrows) for _ in frame_arrows]
        for k, aid in enumerate(frame_arrows):
            conj = left.apply(G.inv(h), rstar.apply_arrow(h, aid))
            for p, c in conj.coeffs.items():
                mat[k][pos[p[0]]] = c
        acts.append(mat)
    theta = _unit(len(frame_arrows), pos[theta_arrow])
    calc = GroupCalculus(G, names, deg, acts, theta)
    calc.quiver = quiver
    calc.rstar = rstar
    calc.frame_arrows = frame_arrows
    return calc


# ---------------------------------------------------------------------------
# crossed modules on the k(G) side (Lemma data -> canonical quiver calculus)


class CrossedModule:
    """G-graded left G-module: basis with degrees and action matrices.

    act[h][i][j]: coefficient of f_j in h |> f_i.  Grading compatibility
    h |> Lambda_g = Lambda_{h g h^-1} is validated on construction.
    """

    def __init__(self, G, deg, act):
        self.group = G
        self.deg = list(deg)
        self.act = act
        self.dim = len(self.deg)
        for h in G.elements():
            for i in range(self.dim):
                want = G.conj(h, self.deg[i])
                for j, c in enumerate(act[h][i]):
                    if not is_zero(c) and self.deg[j] != want:
                        raise QuivergeomError(f"action of {G.labels[h]} breaks the grading at basis {i}")

    def apply(self, h, vec):
        m = self.act[h]
        out = [Fraction(0)] * self.dim
        for i, c in enumerate(vec):
            if is_zero(c):
                continue
            for j in range(self.dim):
                if not is_zero(m[i][j]):
                    out[j] = out[j] + c * m[i][j]
        return out

    def component(self, vec, g):
        return [c if self.deg[i] == g else Fraction(0) for i, c in enumerate(vec)]

    def braiding(self, i, j):
        """Psi(f_i (x) f_j) = |f_i| |> f_j (x) f_i as dict (k, l) -> scalar."""
        moved = self.apply(self.deg[i], _unit(self.dim, j))
        return {(k, i): c for k, c in enumerate(moved) if not is_zero(c)}


def omega_extension(cm, omega_c):
    """Extend class data {rep -> omega_rep} to all of G, checking both the
    centraliser invariance and independence of the coset representative.

    Returns dict g -> frame vector for g in the supported classes.
    """
    G = cm.group
    out = {}
    for c, vec in omega_c.items():
        for u in centralizer(G, c):
            if any(not is_zero(a - b) for a, b in zip(cm.apply(u, vec), vec)):
                raise QuivergeomError(f"omega_{G.labels[c]} is not centraliser invariant (u={G.labels[u]})")
        values = {}
        for h in G.elements():
            g = G.conj(h, c)
            moved = cm.apply(h, vec)
            if g in values:
                if any(not is_zero(a - b) for a, b in zip(values[g], moved)):
                    raise QuivergeomError(f"omega extension ill-defined at {G.labels[g]}")
            else:
                values[g] = moved
        out.update(values)
    return out


def calculus_from_crossed_module(cm, omega_c, theta_e=None):
    """Canonical bicovariant quiver calculus from Lemma data (Lambda^1, omega).

    The frame basis of each graded component is rebased so that the first
    vector at degree g is theta_g when nonzero; the resulting coloured Hopf
    quiver with its Cayley sub-digraph and transported action is returned
    as a canonical k(G) calculus.  theta_e defaults to zero.
    """
    from .linalg import echelon, mat_inverse

    G = cm.group
    omega = omega_extension(cm, omega_c)
    classes = conjugacy_classes(G)
    comp_index = {}
    for g in G.elements():
        comp_index[g] = [i for i in range(cm.dim) if cm.deg[i] == g]
    theta = {g: vec for g, vec in omega.items() if any(not is_zero(c) for c in vec)}
    if theta_e is not None and any(not is_zero(c) for c in theta_e):
        theta[G.identity] = list(theta_e)
    cbar = sorted(theta.keys() - {G.identity})
    # choose a basis per graded component with theta_g first when present
    basis = {}
    for g in G.elements():
        idxs = comp_index[g]
        if not idxs:
            basis[g] = []
            continue
        vecs = []
        if g in theta:
            vecs.append([theta[g][i] for i in idxs])
        rows = [[Fraction(1) if j == k else Fraction(0) for k in range(len(idxs))] for j in range(len(idxs))]
        for row in rows:
            cand = vecs + [row]
            if echelon([list(v) for v in cand]).rank == len(cand):
                vecs.append(row)
            if len(vecs) == len(idxs):
                break
        basis[g] = vecs
    # build the coloured Hopf quiver
    ram = {}
    for c in classes:
        n = len(comp_index[c.rep])
        if n:
            ram[c.rep] = n
    quiver = hopf_quiver(G, ram)
    arrows = []
    for a in quiver.arrows:
        g = G.mul(G.inv(a.source), a.target)
        arrows.append(Arrow(a.source, a.target, a.color, a.color == 1 and g in cbar))
    quiver = Quiver(quiver.vertices, arrows)
    # transport the action through the basis: star on arrows from the module action
    lift = {}  # g -> matrix basis rows in component coords, and its inverse
    for g in G.elements():
        if basis[g]:
            B = basis[g]
            Binv = mat_inverse(B)
            lift[g] = (B, Binv)
    table = []
    for h in G.elements():
        row = {}
        for aid, a in enumerate(quiver.arrows):
            g = G.mul(G.inv(a.source), a.target)
            gh = G.conj(h, g)
            # e^{(i)}_g corresponds to basis[g][i-1] in component coords
            idxs = comp_index[g]
            vec_full = [Fraction(0)] * cm.dim
            for pos, c in enumerate(basis[g][a.color - 1]):
                vec_full[idxs[pos]] = c
            moved = cm.apply(h, vec_full)
            idxs_t = comp_index[gh]
            comp = [moved[i] for i in idxs_t]
            Binv = lift[gh][1]
            coords = [sum((comp[j] * Binv[j][k] for j in range(len(comp))), Fraction(0)) for k in range(len(comp))]
            out = {}
            xs = G.mul(a.source, G.inv(h))
            ys = G.mul(a.target, G.inv(h))
            for c_idx, coeff in enumerate(coords):
                if not is_zero(coeff):
                    out[(quiver.arrow_id(xs, ys, c_idx + 1),)] = coeff
            row[aid] = GradedVec(quiver, 1, out)
        table.append(row)
    star = ArrowAction(G, quiver, table, "left")
    return canonical_kofG_calculus(G, quiver, star)


