"""Finite groups as multiplication tables, with conjugacy structure,
exact matrix representations and group cocycles.

Elements are referred to by index into the label list; the identity is
whatever index validates as a two-sided unit.  All built-in data (the S3
labels and its 2-dimensional representation over Q(sqrt 3)) follows the
conventions with generators u, v satisfying u^2 = v^2 = e, uvu = vuv.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .errors import CocycleInvalid, NotAGroup
from .linalg import mat_mul
from .scalars import is_zero, quad, sqrt_d

_FULL_CHECK_LIMIT = 64
_ASSOC_SAMPLES = 4096


class FiniteGroup:
    """Group given by labels and an n x n multiplication table of indices."""

    def __init__(self, labels, table):
        self.labels = tuple(str(x) for x in labels)
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.labels)
        self._validate()
        self._index = {lab: i for i, lab in enumerate(self.labels)}

    def _validate(self):
        n = self.order
        if len(self.table) != n or any(len(row) != n for row in self.table):
            raise NotAGroup("multiplication table is not square")
        rng = range(n)
        for row in self.table:
            if sorted(row) != list(rng):
                raise NotAGroup("table rows are not permutations (Latin square fails)")
        for j in rng:
            col = sorted(self.table[i][j] for i in rng)
            if col != list(rng):
                raise NotAGroup("table columns are not permutations (Latin square fails)")
        e = None
        for i in rng:
            if all(self.table[i][j] == j == self.table[j][i] for j in rng):
                e = i
                break
        if e is None:
            raise NotAGroup("no two-sided identity")
        self.identity = e
        inv = [None] * n
        for i in rng:
            for j in rng:
                if self.table[i][j] == e and self.table[j][i] == e:
                    inv[i] = j
        if any(v is None for v in inv):
            raise NotAGroup("an element has no two-sided inverse")
        self.inverse_table = tuple(inv)
        if n <= _FULL_CHECK_LIMIT:
            triples = itertools.product(rng, rng, rng)
        else:
            rnd = random.Random(0)
            triples = ((rnd.randrange(n), rnd.randrange(n), rnd.randrange(n)) for _ in range(_ASSOC_SAMPLES))
        for a, b, c in triples:
            if self.table[self.table[a][b]][c] != self.table[a][self.table[b][c]]:
                raise NotAGroup(f"associativity fails at ({self.labels[a]},{self.labels[b]},{self.labels[c]})")

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverse_table[a]

    def conj(self, h, g):
        """h g h^-1."""
        return self.mul(self.mul(h, g), self.inv(h))

    def index(self, label):
        return self._index[label]

    def elements(self):
        return range(self.order)

    def __repr__(self):
        return f"FiniteGroup({list(self.labels)})"

    def to_json(self):
        return {"labels": list(self.labels), "table": [list(r) for r in self.table]}


def build_group(spec):
    """Build a group from a JSON-style spec.

    Accepted forms: {"labels": [...], "table": [[...]]}, {"cyclic": n}, or
    {"permutations": [[...], ...]} with generators as image lists.
    """
    if "table" in spec:
        return FiniteGroup(spec.get("labels", [str(i) for i in range(len(spec["table"]))]), spec["table"])
    if "cyclic" in spec:
        return cyclic_group(spec["cyclic"])
    if "permutations" in spec:
        return group_from_permutations(spec["permutations"])
    raise NotAGroup(f"unrecognised group spec keys: {sorted(spec)}")


def cyclic_group(n):
    if n == 2:
        labels = ["e", "g"]
    else:
        labels = ["e"] + [f"g{i}" for i in range(1, n)]
    table = [[(i + j) % n for j in range(n)] for i in range(n)]
    return FiniteGroup(labels, table)


def group_from_permutations(gens):
    """Close a list of permutations (image tuples) under composition."""
    degree = len(gens[0])
    if any(len(g) != degree for g in gens):
        raise NotAGroup("permutation generators act on different sets")
    ident = tuple(range(degree))
    gens = [tuple(g) for g in gens]
    elems = [ident]
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(p[g[i]] for i in range(degree))
                if q not in seen:
                    seen.add(q)
                    elems.append(q)
                    nxt.append(q)
        frontier = nxt
    pos = {p: i for i, p in enumerate(elems)}
    table = [[pos[tuple(p[q[i]] for i in range(degree))] for q in elems] for p in elems]
    labels = ["".join(str(i) for i in p) for p in elems]
    return FiniteGroup(labels, table)


def s3_group():
    """S3 with labels e, u, v, w = uvu and the products uv, vu.

    Realised on permutations of {0,1,2} with u = (0 1), v = (1 2) and
    product a.b acting as a after b.
    """
    labels = ["e", "u", "v", "w", "uv", "vu"]
    u = (1, 0, 2)
    v = (0, 2, 1)

    def compose(p, q):
        return tuple(p[q[i]] for i in range(3))

    perms = {"e": (0, 1, 2), "u": u, "v": v}
    perms["uv"] = compose(u, v)
    perms["vu"] = compose(v, u)
    perms["w"] = compose(u, perms["vu"])
    lookup = {p: lab for lab, p in perms.items()}
    table = [[labels.index(lookup[compose(perms[a], perms[b])]) for b in labels] for a in labels]
    return FiniteGroup(labels, table)


class ConjClass:
    """Conjugacy class with the minimal-index element as representative."""

    def __init__(self, rep, members):
        self.rep = rep
        self.members = frozenset(members)

    def __len__(self):
        return len(self.members)

    def __contains__(self, g):
        return g in self.members

    def __eq__(self, other):
        return isinstance(other, ConjClass) and self.members == other.members

    def __hash__(self):
        return hash(self.members)

    def __repr__(self):
        return f"ConjClass(rep={self.rep}, members={sorted(self.members)})"


def conjugacy_classes(G):
    """Disjoint conjugacy classes covering G, ordered by representative."""
    seen = set()
    out = []
    for g in G.elements():
        if g in seen:
            continue
        members = {G.conj(h, g) for h in G.elements()}
        seen |= members
        out.append(ConjClass(min(members), members))
    return out


def centralizer(G, c):
    return {h for h in G.elements() if G.mul(h, c) == G.mul(c, h)}


def is_ad_stable(G, S):
    """True iff S excludes the identity and is closed under conjugation."""
    S = set(S)
    if G.identity in S:
        return False
    return all({G.conj(h, g) for g in S} == S for h in G.elements())


class GroupRep:
    """Exact matrix representation: element index -> m x m scalar matrix."""

    def __init__(self, G, mats, check=True):
        self.group = G
        self.mats = [[list(row) for row in m] for m in mats]
        self.dim = len(self.mats[0])
        if check:
            self._validate()

    def _validate(self):
        G = self.group
        e = self.mats[G.identity]
        for i in range(self.dim):
            for j in range(self.dim):
                expect = 1 if i == j else 0
                if not is_zero(e[i][j] - expect):
                    raise ValueError("rho(e) is not the identity matrix")
        for g in G.elements():
            for h in G.elements():
                prod = mat_mul(self.mats[g], self.mats[h])
                target = self.mats[G.mul(g, h)]
                for i in range(self.dim):
                    for j in range(self.dim):
                        if not is_zero(prod[i][j] - target[i][j]):
                            raise ValueError(f"rho({G.labels[g]})rho({G.labels[h]}) != rho(product)")

    def mat(self, g):
        return self.mats[g]


def trivial_rep(G):
    return GroupRep(G, [[[Fraction(1)]] for _ in G.elements()])


def sign_rep_s3(G):
    """Sign representation on the S3 built from s3_group()."""
    sgn = {"e": 1, "u": -1, "v": -1, "w": -1, "uv": 1, "vu": 1}
    return GroupRep(G, [[[Fraction(sgn[G.labels[g]])]] for g in G.elements()])


def two_dim_rep_s3(G):
    """The 2-dimensional irreducible of S3 over Q(sqrt 3).

    rho(u) = diag(1, -1), rho(v) = (1/2) [[-1, sqrt3], [sqrt3, 1]].
    """
    h = Fraction(1, 2)
    s3 = sqrt_d(3)
    rho_u = [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(-1)]]
    rho_v = [[-h, h * s3], [h * s3, h]]
    mats = {"e": [[Fraction(1), Fraction(0)], [Fraction(0), Fraction(1)]], "u": rho_u, "v": rho_v}
    mats["uv"] = mat_mul(rho_u, rho_v)
    mats["vu"] = mat_mul(rho_v, rho_u)
    mats["w"] = mat_mul(rho_u, mats["vu"])
    return GroupRep(G, [mats[G.labels[g]] for g in G.elements()])


def character(rho):
    """Unnormalised character g -> trace rho(g)."""
    out = {}
    for g in rho.group.elements():
        tr = Fraction(0)
        for i in range(rho.dim):
            tr = tr + rho.mats[g][i][i]
        out[g] = tr
    return out


def normalized_character(rho):
    """chi(g) = trace rho(g) / dim."""
    ch = character(rho)
    return {g: t / rho.dim for g, t in ch.items()}


class RightModule:
    """Right G-module on a based vector space: v -> v . g by matrices.

    act[g] is the matrix with rows indexed by input basis vectors, i.e.
    (basis_i) . g = sum_j act[g][i][j] basis_j.
    """

    def __init__(self, G, act):
        self.group = G
        self.act = act
        self.dim = len(act[G.identity])

    def apply(self, vec, g):
        m = self.act[g]
        out = [Fraction(0)] * self.dim
        for i, c in enumerate(vec):
            if is_zero(c):
                continue
            for j in range(self.dim):
                if not is_zero(m[i][j]):
                    out[j] = out[j] + c * m[i][j]
        return out


def right_mult_module(rho):
    """End(V) as a right module by omega . g = omega rho(g), in the matrix
    unit basis E_11, E_12, ..., E_mm (row-major)."""
    G = rho.group
    m = rho.dim
    acts = []
    for g in G.elements():
        mat = [[Fraction(0)] * (m * m) for _ in range(m * m)]
        r = rho.mats[g]
        # E_kl . g = sum_j r[l][j] E_kj
        for k in range(m):
            for l in range(m):
                for j in range(m):
                    mat[k * m + l][k * m + j] = r[l][j]
        acts.append(mat)
    return RightModule(G, acts)


class Cocycle:
    """Map g -> zeta_g into a right G-module."""

    def __init__(self, module, values):
        self.module = module
        self.values = values  # list of vectors indexed by group element

    def __call__(self, g):
        return self.values[g]


def verify_cocycle(G, module, zeta):
    """zeta_{gh} = zeta_g . h + zeta_h for all g, h (implies zeta_e = 0)."""
    for g in G.elements():
        for h in G.elements():
            lhs = zeta(G.mul(g, h))
            moved = module.apply(zeta(g), h)
            rhs = [a + b for a, b in zip(moved, zeta(h))]
            if any(not is_zero(a - b) for a, b in zip(lhs, rhs)):
                return False
    return True


def inner_theta_from_cocycle(G, module, zeta):
    """theta = -|G|^{-1} sum_g zeta_g, so that zeta_g = theta . g - theta."""
    if not verify_cocycle(G, module, zeta):
        raise CocycleInvalid("cocycle identity zeta_{gh} = zeta_g.h + zeta_h fails")
    n = module.dim
    total = [Fraction(0)] * n
    for g in G.elements():
        total = [a + b for a, b in zip(total, zeta(g))]
    scale = Fraction(-1, G.order)
    return [scale * a for a in total]


def coboundary(module, theta):
    """The exact cocycle zeta_g = theta . g - theta."""
    G = module.group
    vals = []
    for g in G.elements():
        moved = module.apply(theta, g)
        vals.append([a - b for a, b in zip(moved, theta)])
    return Cocycle(module, vals)
