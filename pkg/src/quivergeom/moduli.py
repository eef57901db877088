"""Connection moduli: assemble the linear constraint systems for sigma
deviations tau and for alpha, solve them exactly, and verify parametrized
families as polynomial identities.

Unknowns are indexed tensors; on k(X) carriers each unknown is a function
on the vertices so one symbol is created per vertex component.  Systems
are solved by the exact row reduction kernel; free parameters are the
trailing unknowns in the fixed ordering.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .errors import DegenerateM, QuivergeomError
from .geometry import Connection, FrameMetric, sigma_plus_tau
from .linalg import echelon
from .scalars import RatScalar, as_poly, inverse, is_zero, subs_partial, substitute, variable


class UnknownTensor:
    """Symbol table for tau_{ij}^{mn} and alpha_i^{mn} coefficient unknowns.

    Identifications (e.g. symmetry in the last two indices) are realised by
    mapping identified index tuples to one representative symbol.
    """

    def __init__(self, frame, sym_last_two=True):
        self.frame = frame
        n = frame.n
        self.nverts = 1 if frame.kind == "group" else frame.nverts
        self.tau_keys = []
        self.tau_map = {}
        for i in range(n):
            for j in range(n):
                for m in range(n):
                    for nn in range(n):
                        rep = (i, j, m, nn)
                        if sym_last_two and nn < m:
                            rep = (i, j, nn, m)
                        self.tau_map[(i, j, m, nn)] = rep
                        if rep == (i, j, m, nn) and rep not in self.tau_keys:
                            self.tau_keys.append(rep)
        self.alpha_keys = []
        self.alpha_map = {}
        for i in range(n):
            for m in range(n):
                for nn in range(n):
                    rep = (i, m, nn)
                    if sym_last_two and nn < m:
                        rep = (i, nn, m)
                    self.alpha_map[(i, m, nn)] = rep
                    if rep == (i, m, nn) and rep not in self.alpha_keys:
                        self.alpha_keys.append(rep)
        self.names = []
        self.index = {}
        for key in self.tau_keys:
            for v in range(self.nverts):
                self.index[("tau", key, v)] = len(self.names)
                self.names.append(f"tau{key}" + (f"@{v}" if self.nverts > 1 else ""))
        for key in self.alpha_keys:
            for v in range(self.nverts):
                self.index[("alpha", key, v)] = len(self.names)
                self.names.append(f"alpha{key}" + (f"@{v}" if self.nverts > 1 else ""))

    def ncols(self):
        return len(self.names)

    def tau_col(self, i, j, m, nn, v=0):
        return self.index[("tau", self.tau_map[(i, j, m, nn)], v)]

    def alpha_col(self, i, m, nn, v=0):
        return self.index[("alpha", self.alpha_map[(i, m, nn)], v)]


class LinearSystem:
    """Sparse affine system rows . x = rhs over the unknown ordering."""

    def __init__(self, unknowns):
        self.unknowns = unknowns
        self.rows = []
        self.rhs = []

    def add_row(self, coeffs, rhs=Fraction(0)):
        row = {k: v for k, v in coeffs.items() if not is_zero(v)}
        if row or not is_zero(rhs):
            self.rows.append(row)
            self.rhs.append(rhs)

    def stacked(self, other):
        out = LinearSystem(self.unknowns)
        out.rows = self.rows + other.rows
        out.rhs = self.rhs + other.rhs
        return out

    def solve(self):
        """Reduced solution: (consistent, particular, nullspace basis, pivots)."""
        n = self.unknowns.ncols()
        dense = []
        for row, r in zip(self.rows, self.rhs):
            v = [Fraction(0)] * (n + 1)
            for k, c in row.items():
                v[k] = c
            v[n] = r
            dense.append(v)
        if not dense:
            ident = [[Fraction(1) if i == k else Fraction(0) for i in range(n)] for k in range(n)]
            return True, [Fraction(0)] * n, ident, []
        ech = echelon(dense, n + 1)
        if n in ech.pivots:
            return False, None, None, ech.pivots
        particular = [Fraction(0)] * n
        for r, c in enumerate(ech.pivots):
            particular[c] = ech.rows[r][n]
        hom = echelon([v[:n] for v in dense], n)
        basis = hom.nullspace()
        return True, particular, basis, hom.pivots

    def solution_dim(self):
        ok, _, basis, _ = self.solve()
        return len(basis) if ok else -1

    def report(self):
        ok, part, basis, pivots = self.solve()
        free = [self.unknowns.names[c] for c in range(self.unknowns.ncols()) if c not in set(pivots)] if ok else []
        return {
            "unknowns": self.unknowns.ncols(),
            "rows": len(self.rows),
            "rank": len(pivots) if pivots is not None else None,
            "consistent": ok,
            "solution_dim": len(basis) if ok else 0,
            "free_unknowns": free,
        }


# ---------------------------------------------------------------------------
# assembly


def _vertex_split(fr, scalar_or_const, v):
    return scalar_or_const


def assemble_torsion_free(fr, unknowns):
    """Torsion-compatibility of sigma = flip + tau and wedge alpha = 0,
    together with the bimodule conditions on tau and alpha.

    tau and alpha are already symmetric in their last two indices through
    the unknown identification; the remaining equations are the wedge of
    the flip part (inhomogeneous, relevant when the braiding is not the
    flip) and the right-action commutation on group-kind frames.
    """
    n = fr.n
    sys = LinearSystem(unknowns)
    nverts = unknowns.nverts
    # wedge((id + sigma)(f_i ox f_j)) = 0
    for i in range(n):
        for j in range(n):
            const = {}
            for l2, c in fr.wedge_table[(i, j)].items():
                const[l2] = const.get(l2, 0) + c
            for l2, c in fr.wedge_table[(j, i)].items():
                const[l2] = const.get(l2, 0) + c
            for l2 in range(len(fr.lam2_basis)):
                for v in range(nverts):
                    row = {}
                    for m in range(n):
                        for nn in range(n):
                            w = fr.wedge_table[(m, nn)].get(l2)
                            if w is not None:
                                col = unknowns.tau_col(i, j, m, nn, v)
                                row[col] = row.get(col, 0) + w
                    sys.add_row(row, -const.get(l2, Fraction(0)))
    # grading on set-kind frames: outputs must keep the total letter degree
    if fr.kind == "set":
        G = fr.group
        for i in range(n):
            for j in range(n):
                want = G.mul(fr.deg[i], fr.deg[j])
                for m in range(n):
                    for nn in range(n):
                        if G.mul(fr.deg[m], fr.deg[nn]) != want:
                            for v in range(nverts):
                                sys.add_row({unknowns.tau_col(i, j, m, nn, v): Fraction(1)})
        for i in range(n):
            for m in range(n):
                for nn in range(n):
                    if G.mul(fr.deg[m], fr.deg[nn]) != fr.deg[i]:
                        for v in range(nverts):
                            sys.add_row({unknowns.alpha_col(i, m, nn, v): Fraction(1)})
    # wedge alpha = 0
    for i in range(n):
        for l2 in range(len(fr.lam2_basis)):
            for v in range(nverts):
                row = {}
                for m in range(n):
                    for nn in range(n):
                        w = fr.wedge_table[(m, nn)].get(l2)
                        if w is not None:
                            col = unknowns.alpha_col(i, m, nn, v)
                            row[col] = row.get(col, 0) + w
                sys.add_row(row)
    # bimodule conditions (group kind: commutation with the right action)
    if fr.kind == "group":
        kcal = fr.kcal
        for g in _generators(fr.group):
            A = kcal.act[g]
            _add_commutation_rows(sys, unknowns, fr, A)
    return sys


def _generators(G):
    """A small generating set: elements whose closure is the whole group."""
    elems = list(G.elements())
    chosen = []
    closure = {G.identity}
    for g in elems:
        if g in closure:
            continue
        chosen.append(g)
        frontier = [G.identity]
        closure = {G.identity}
        while frontier:
            nxt = []
            for h in frontier:
                for k in chosen:
                    m = G.mul(h, k)
                    if m not in closure:
                        closure.add(m)
                        nxt.append(m)
            frontier = nxt
        if len(closure) == G.order:
            break
    return chosen


def _add_commutation_rows(sys, unknowns, fr, A, alpha_too=True):
    """[(A ox A), tau] = 0 and A . alpha = alpha . (A ox A)."""
    n = fr.n
    for i in range(n):
        for j in range(n):
            for m in range(n):
                for nn in range(n):
                    row = {}
                    # sum_{pq} A_i^p A_j^q tau_{pq}^{mn} - tau_{ij}^{pq} A_p^m A_q^n
                    for p in range(n):
                        if is_zero(A[i][p]):
                            continue
                        for q in range(n):
                            c = A[i][p] * A[j][q]
                            if is_zero(c):
                                continue
                            col = unknowns.tau_col(p, q, m, nn)
                            row[col] = row.get(col, 0) + c
                    for p in range(n):
                        for q in range(n):
                            c = A[p][m] * A[q][nn]
                            if is_zero(c):
                                continue
                            col = unknowns.tau_col(i, j, p, q)
                            row[col] = row.get(col, 0) - c
                    sys.add_row(row)
    if alpha_too:
        for i in range(n):
            for m in range(n):
                for nn in range(n):
                    row = {}
                    for p in range(n):
                        if is_zero(A[i][p]):
                            continue
                        col = unknowns.alpha_col(p, m, nn)
                        row[col] = row.get(col, 0) + A[i][p]
                    for p in range(n):
                        for q in range(n):
                            c = A[p][m] * A[q][nn]
                            if is_zero(c):
                                continue
                            col = unknowns.alpha_col(i, p, q)
                            row[col] = row.get(col, 0) - c
                    sys.add_row(row)
    return sys


def assemble_cotorsion_free(fr, metric, unknowns):
    """Metric-lowered total symmetry of tau.theta and alpha.

    With the first index lowered by the metric coefficients, both
    (g tau.theta) and (g alpha) must be invariant under exchanging the
    lowered index with the first upper index (full S3-symmetry follows
    with the last-two-index symmetry already identified).
    """
    n = fr.n
    sys = LinearSystem(unknowns)
    lam = {(i, j): metric.lam.get((i, j), Fraction(0)) for i in range(n) for j in range(n)}
    theta = fr.theta
    for i in range(n):
        for m in range(i + 1, n):
            for nn in range(n):
                row = {}
                for j in range(n):
                    if not is_zero(lam[(i, j)]):
                        for l, th in enumerate(theta):
                            if is_zero(th):
                                continue
                            col = unknowns.tau_col(j, l, m, nn)
                            row[col] = row.get(col, 0) + lam[(i, j)] * th
                    if not is_zero(lam[(m, j)]):
                        for l, th in enumerate(theta):
                            if is_zero(th):
                                continue
                            col = unknowns.tau_col(j, l, i, nn)
                            row[col] = row.get(col, 0) - lam[(m, j)] * th
                sys.add_row(row)
                arow = {}
                for j in range(n):
                    if not is_zero(lam[(i, j)]):
                        col = unknowns.alpha_col(j, m, nn)
                        arow[col] = arow.get(col, 0) + lam[(i, j)]
                    if not is_zero(lam[(m, j)]):
                        col = unknowns.alpha_col(j, i, nn)
                        arow[col] = arow.get(col, 0) - lam[(m, j)]
                sys.add_row(arow)
    return sys


def assemble_invariance(fr, unknowns, mats):
    """Commutation with further symmetry matrices (e.g. the adjoint action)."""
    sys = LinearSystem(unknowns)
    for A in mats:
        _add_commutation_rows(sys, unknowns, fr, A)
    return sys


def split_solution(unknowns, vec):
    """Split a solution vector into tau and alpha coefficient tables.

    On set-kind frames the entries become vertex tuples.
    """
    nverts = unknowns.nverts
    tau = {}
    for (i, j, m, nn) in unknowns.tau_map:
        if nverts == 1:
            c = vec[unknowns.tau_col(i, j, m, nn)]
        else:
            c = tuple(vec[unknowns.tau_col(i, j, m, nn, v)] for v in range(nverts))
        if not (is_zero(c) if nverts == 1 else all(is_zero(p) for p in c)):
            tau.setdefault((i, j), {})[(m, nn)] = c
    alpha = {}
    for (i, m, nn) in unknowns.alpha_map:
        if nverts == 1:
            c = vec[unknowns.alpha_col(i, m, nn)]
        else:
            c = tuple(vec[unknowns.alpha_col(i, m, nn, v)] for v in range(nverts))
        if not (is_zero(c) if nverts == 1 else all(is_zero(p) for p in c)):
            alpha.setdefault(i, {})[(m, nn)] = c
    return tau, alpha


def tau_dim(system, unknowns):
    """Solution dimensions (tau part, alpha part) of a solved system.

    The assembled systems never mix tau with alpha, so the solution space
    splits and the dimensions are counted on the nullspace basis supports.
    """
    ok, _, basis, _ = system.solve()
    if not ok:
        return -1, -1
    ntau = sum(1 for v in basis if any(not is_zero(c) for c in v[: _tau_len(unknowns)]))
    nalpha = len(basis) - ntau
    return ntau, nalpha


def _tau_len(unknowns):
    return len(unknowns.tau_keys) * unknowns.nverts


# ---------------------------------------------------------------------------
# family verification


class FamilyReport:
    def __init__(self):
        self.results = {}

    def record(self, name, zero, witness=None):
        self.results[name] = {"identically_zero": zero}
        if witness is not None:
            self.results[name]["witness"] = witness

    def to_json(self):
        return self.results


def verify_family(conn, metric, predicates, avoid=None, seed=0):
    """Certify each predicate as a polynomial identity or exhibit a witness.

    predicates is an iterable of names among torsion, cotorsion,
    metric_compat, curvature; a nonzero result is witnessed by a random
    rational substitution away from the declared singular locus (avoid: a
    list of scalars that must stay nonzero at the sample point).
    """
    from .geometry import cotorsion as _cot
    from .geometry import curvature as _cur
    from .geometry import nabla_g as _ng
    from .geometry import t_is_zero, torsion as _tor

    fr = conn.frame
    rep = FamilyReport()
    values = {}
    if "torsion" in predicates:
        T = _tor(conn)
        values["torsion"] = _collect(fr, T.values())
    if "cotorsion" in predicates:
        values["cotorsion"] = _collect(fr, [_cot(conn, metric)])
    if "metric_compat" in predicates:
        values["metric_compat"] = _collect(fr, [_ng(conn, metric)])
    if "curvature" in predicates:
        values["curvature"] = _collect(fr, _cur(conn).values())
    for name, coeffs in values.items():
        nz = [c for c in coeffs if not is_zero(c)]
        if not nz:
            rep.record(name, True)
        else:
            rep.record(name, False, _witness(nz, avoid or [], seed))
    return rep


def _collect(fr, tensors):
    out = []
    for t in tensors:
        for c in t.values():
            if fr.kind == "group":
                out.append(c)
            else:
                out.extend(c)
    return out


def _witness(coeffs, avoid, seed):
    """A rational point where some coefficient is nonzero and the declared
    invertible scalars stay nonzero."""
    rng = random.Random(seed)
    names = set()
    for c in coeffs:
        if isinstance(c, RatScalar):
            names |= c.variables()
        elif hasattr(c, "variables"):
            names |= c.variables()
    for a in avoid:
        if hasattr(a, "variables"):
            names |= a.variables()
    names = sorted(names)
    for _ in range(500):
        point = {v: Fraction(rng.randint(-9, 9)) for v in names}
        try:
            if any(is_zero(substitute(a, point)) for a in avoid):
                continue
            vals = [substitute(c, point) for c in coeffs]
        except Exception:
            continue
        for c, val in zip(coeffs, vals):
            if not is_zero(val):
                return {"point": {k: str(v) for k, v in point.items()}, "value": str(val)}
    return None


# ---------------------------------------------------------------------------
# the Z2 Levi-Civita family (general quiver metric on two points)


def _to_based(value, bases):
    """Express a scalar with denominator dividing a product of the bases."""
    from .scalars import BasedFrac, PolyScalar, poly_divexact, _monic

    if isinstance(value, (int, Fraction)) or not isinstance(value, RatScalar):
        return BasedFrac.const(value, bases)
    den = as_poly(value.den)
    exp = [0] * len(bases)
    monics = [_monic(as_poly(b)) for b in bases]
    rest = den
    changed = True
    while changed and not rest.is_const():
        changed = False
        for k, b in enumerate(monics):
            try:
                q = poly_divexact(rest, b)
            except (ValueError, ZeroDivisionError):
                continue
            rest = as_poly(q)
            exp[k] += 1
            changed = True
            break
    if not as_poly(rest).is_const():
        raise QuivergeomError("denominator does not factor over the declared bases")
    t = PolyScalar.const(1)
    for b, k in zip(bases, exp):
        for _ in range(k):
            t = as_poly(t * b)
    num = as_poly(poly_divexact(as_poly(value.num * t), den))
    return BasedFrac(num, exp, bases)


def z2_lc_family(fr, lam, x, y, z, w):
    """Quantum Levi-Civita family on the 4-arrow Z2 quiver calculus.

    lam is the 2x2 metric coefficient matrix over A = k(Z2) (entries are
    functions: pairs of scalars), x, y, z, w the four function parameters.
    The first sigma column comes in closed form,

        a1 = (Rg lam)^-1 (w; x + del') + (1; 0),
        (b1, c1) = (Rg lam)^-1 [[x, y], [y + del'', z]],

    where del', del'' are the differentials of the translated entries
    (Rg lam)_{21}, (Rg lam)_{22}; the translated matrix appears because the
    metric-compatibility contractions move coefficients through a frame
    leg.  The second column is the unique solution of the remaining linear
    equations of nabla g = 0, solved exactly at construction time; it
    requires det M = xz - y(y + del lam22) to be invertible.
    """
    from .linalg import _generic_echelon
    from .scalars import BasedFrac, PolyScalar

    if fr.kind != "set" or fr.n != 2:
        raise QuivergeomError("the Levi-Civita family lives on the two-letter k(Z2) frame")

    def fn(v):
        return v if isinstance(v, tuple) else (v, v)

    x, y, z, w = fn(x), fn(y), fn(z), fn(w)
    # translated metric coefficients Rg lam
    L = [[fn(lam[0][0])[::-1], fn(lam[0][1])[::-1]], [fn(lam[1][0])[::-1], fn(lam[1][1])[::-1]]]
    det_lam = tuple(L[0][0][v] * L[1][1][v] - L[0][1][v] * L[1][0][v] for v in range(2))
    dl21 = (L[1][0][1] - L[1][0][0], L[1][0][0] - L[1][0][1])
    dl22 = (L[1][1][1] - L[1][1][0], L[1][1][0] - L[1][1][1])
    det_m = tuple(x[v] * z[v] - y[v] * (y[v] + dl22[v]) for v in range(2))
    for v in range(2):
        if is_zero(det_lam[v]):
            raise DegenerateM("metric coefficient matrix is singular")
        if is_zero(det_m[v]):
            raise DegenerateM("det M = xz - y(y + del lam22) vanishes")
    bases = (det_lam[0], det_lam[1], det_m[0], det_m[1])

    def bf(f):
        return tuple(BasedFrac.const(f[v], bases) for v in range(2))

    def fadd(a, b):
        return tuple(p + q for p, q in zip(a, b))

    def fneg(a):
        return tuple(-p for p in a)

    def m_vec(A, vv):
        return (
            tuple(A[0][0][t] * vv[0][t] + A[0][1][t] * vv[1][t] for t in range(2)),
            tuple(A[1][0][t] * vv[0][t] + A[1][1][t] * vv[1][t] for t in range(2)),
        )

    Lb = [[bf(L[i][j]) for j in range(2)] for i in range(2)]
    adj = [[Lb[1][1], fneg(Lb[0][1])], [fneg(Lb[1][0]), Lb[0][0]]]
    Linv = [[tuple(adj[i][j][v].div_base(v) for v in range(2)) for j in range(2)] for i in range(2)]
    xb, yb, zb, wb = bf(x), bf(y), bf(z), bf(w)
    dl21b, dl22b = bf(dl21), bf(dl22)
    one = bf((Fraction(1), Fraction(1)))
    a1 = m_vec(Linv, (wb, fadd(xb, dl21b)))
    a1 = (fadd(a1[0], one), a1[1])
    b1 = m_vec(Linv, (xb, fadd(yb, dl22b)))
    c1 = m_vec(Linv, (yb, zb))

    # second column: unique solution of the remaining nabla g = 0 equations
    from .geometry import FrameMetric as _FM
    from .geometry import nabla_g as _nabla_g

    met = _FM(fr, {(0, 0): fn(lam[0][0]), (0, 1): fn(lam[0][1]), (1, 0): fn(lam[1][0]), (1, 1): fn(lam[1][1])})
    unames = [f"_q{k}" for k in range(12)]
    pos = {}
    k = 0
    usyms = {}
    for blk in ("a", "b", "c"):
        for i in range(2):
            for v in range(2):
                usyms[(blk, i, v)] = variable(unames[k])
                pos[unames[k]] = (blk, i, v)
                k += 1
    sigma = {}
    for i in range(2):
        sigma[(i, 0)] = {
            (0, 0): a1[i],
            (0, 1): fadd(b1[i], bf((Fraction(0), Fraction(0)) if i == 0 else (Fraction(1), Fraction(1)))),
            (1, 0): b1[i],
            (1, 1): c1[i],
        }
        off = Fraction(-1) if i == 0 else Fraction(0)
        sigma[(i, 1)] = {
            (0, 0): (usyms[("a", i, 0)], usyms[("a", i, 1)]),
            (0, 1): (usyms[("b", i, 0)] + off, usyms[("b", i, 1)] + off),
            (1, 0): (usyms[("b", i, 0)], usyms[("b", i, 1)]),
            (1, 1): (usyms[("c", i, 0)], usyms[("c", i, 1)]),
        }
    probe = Connection(fr, sigma)
    ng = _nabla_g(probe, met, compare_inner=False)
    rows = []
    for coeff in ng.values():
        for v in range(2):
            val = coeff[v]
            if isinstance(val, BasedFrac):
                val = val.num
            expr = as_poly(val) if not isinstance(val, (int, Fraction)) else val
            if isinstance(expr, (int, Fraction)):
                if not is_zero(expr):
                    raise DegenerateM("second-column system is inconsistent")
                continue
            row = [Fraction(0)] * 13
            consts = {}
            liftable = True
            for mono, cc in expr.terms.items():
                d = dict(mono)
                here = [nm for nm in d if nm in pos]
                if not here:
                    consts[mono] = cc
                else:
                    nm = here[0]
                    rest = tuple((kk, vv) for kk, vv in mono if kk != nm)
                    cur = row[unames.index(nm)]
                    add = PolyScalar(dict([(rest, cc)])) if rest else cc
                    row[unames.index(nm)] = cur + add
            if consts:
                row[12] = -PolyScalar(dict(consts))
            if any(not is_zero(c) for c in row):
                rows.append(row)
    ech = _generic_echelon(rows, 13)
    if 12 in ech.pivots or ech.rank < 12:
        raise DegenerateM("second-column system is not uniquely solvable")
    col2 = {}
    for r, c in enumerate(ech.pivots):
        col2[pos[unames[c]]] = ech.rows[r][12]
    for key in list(col2):
        col2[key] = _to_based(col2[key], bases)
    zero_b = BasedFrac.const(Fraction(0), bases)
    a2 = tuple((col2.get(("a", i, 0), zero_b), col2.get(("a", i, 1), zero_b)) for i in range(2))
    b2 = tuple((col2.get(("b", i, 0), zero_b), col2.get(("b", i, 1), zero_b)) for i in range(2))
    c2 = tuple((col2.get(("c", i, 0), zero_b), col2.get(("c", i, 1), zero_b)) for i in range(2))
    a = (a1, a2)
    b = (b1, b2)
    c = (c1, c2)
    sigma = {}
    for i in range(2):
        for j in range(2):
            row = {}
            row[(0, 0)] = a[j][i]
            off = Fraction(0)
            if (i, j) == (0, 1):
                off = Fraction(-1)
            elif (i, j) == (1, 0):
                off = Fraction(1)
            row[(0, 1)] = fadd(b[j][i], bf((off, off)))
            row[(1, 0)] = b[j][i]
            row[(1, 1)] = c[j][i]
            sigma[(i, j)] = {kk: vv for kk, vv in row.items() if not all(is_zero(p) for p in vv)}
    conn = Connection(fr, sigma)
    conn.bases = bases
    return conn


# ---------------------------------------------------------------------------
# quadratic metric compatibility on a solved linear stratum


def metric_compat_on_stratum(fr, metric, unknowns, basis, var_prefix="p"):
    """Analyse nabla g = 0 on the span of a solved linear stratum.

    Returns a dict with: "zero_is_solution", "linearization_rank" (full
    rank certifies that 0 is an isolated solution), and "unique_zero" which
    is True when repeated single-variable elimination reduces the quadratic
    system to the origin, False when another solution is exhibited, and
    None when the elimination stalls (complete quadratic solving is outside
    this artifact's scope; the families the paper exhibits are verified
    separately).
    """
    from .geometry import nabla_g
    from .linalg import echelon as _ech

    names = [f"{var_prefix}{k}" for k in range(len(basis))]
    params = [variable(nm) for nm in names]
    tau = {}
    alpha = {}
    for k, vec in enumerate(basis):
        tk, ak = split_solution(unknowns, vec)
        for key, img in tk.items():
            row = tau.setdefault(key, {})
            for kk, c in img.items():
                row[kk] = row.get(kk, 0) + params[k] * c
        for key, img in ak.items():
            row = alpha.setdefault(key, {})
            for kk, c in img.items():
                row[kk] = row.get(kk, 0) + params[k] * c
    conn = Connection(fr, sigma_plus_tau(fr, tau), alpha)
    ng = nabla_g(conn, metric, compare_inner=False)
    eqs = []
    for c in ng.values():
        vals = [c] if fr.kind == "group" else list(c)
        for vv in vals:
            if isinstance(vv, Fraction):
                if not is_zero(vv):
                    return {"zero_is_solution": False, "linearization_rank": None, "unique_zero": False}
                continue
            p = as_poly(vv)
            if p.terms:
                eqs.append(p)
    out = {"zero_is_solution": all(is_zero(e.terms.get((), Fraction(0))) for e in eqs)}
    rows = []
    for e in eqs:
        row = [Fraction(0)] * len(names)
        for mono, c in e.terms.items():
            d = dict(mono)
            if len(d) == 1:
                (nm, ex), = d.items()
                if ex == 1:
                    row[names.index(nm)] = row[names.index(nm)] + c
        rows.append(row)
    out["linearization_rank"] = _ech(rows, len(names)).rank if rows else 0
    unique = _eliminate_to_origin(eqs, set(names))
    if unique is None and len(names) <= 8:
        unique = _macaulay_unique_zero(eqs, names)
    out["unique_zero"] = unique
    return out


def _eliminate_to_origin(eqs, live):
    """Repeated single-variable elimination; True / False / None (stalled)."""
    eqs = list(eqs)
    live = set(live)
    while live and eqs:
        progress = False
        for eq in eqs:
            for name in sorted(live):
                coeff = Fraction(0)
                ok = True
                for mono, c in eq.terms.items():
                    d = dict(mono)
                    if d.get(name, 0) == 1 and len(d) == 1:
                        coeff = coeff + c
                    elif d.get(name, 0) >= 1:
                        ok = False
                        break
                if ok and not is_zero(coeff):
                    rest = as_poly(eq - coeff * variable(name))
                    value = (-1 / coeff) * rest
                    new_eqs = []
                    for other in eqs:
                        sub = subs_partial(other, {name: value})
                        sub = sub if isinstance(sub, Fraction) else as_poly(sub)
                        if isinstance(sub, Fraction):
                            if not is_zero(sub):
                                return False
                            continue
                        if sub.terms:
                            new_eqs.append(sub)
                    eqs = new_eqs
                    live.discard(name)
                    progress = True
                    break
            if progress:
                break
        if not progress:
            return None
    if eqs:
        return None
    return True if not live else None


def _macaulay_unique_zero(eqs, names, max_degree=4):
    """Bounded Macaulay certificate: True when every coordinate linear form
    lies in the low-degree span of the ideal, which forces the origin to be
    the only solution over any field; None when the bound is insufficient."""
    import itertools

    from .linalg import echelon as _ech

    params = [variable(nm) for nm in names]
    nvars = len(names)
    for D in range(3, max_degree + 1):
        polys = []
        mons = [()]
        for d in range(1, D - 1):
            mons += list(itertools.combinations_with_replacement(range(nvars), d))
        for m in mons:
            mult = Fraction(1)
            for i in m:
                mult = mult * params[i]
            for e in eqs:
                p = as_poly(e * mult)
                if p.degree() <= D and p.terms:
                    polys.append(p)
        monos = {}
        for e in polys:
            for mm in e.terms:
                monos.setdefault(mm, None)

        def mdeg(m):
            return sum(x for _, x in m)

        lin = sorted([m for m in monos if mdeg(m) == 1], key=str)
        cols = sorted([m for m in monos if mdeg(m) != 1], key=str) + lin
        cidx = {m: i for i, m in enumerate(cols)}
        nq = len(cols) - len(lin)
        rows = []
        for e in polys:
            r = [Fraction(0)] * len(cols)
            for m, c in e.terms.items():
                r[cidx[m]] = c
            rows.append(r)
        ech = _ech(rows, len(cols))
        pure = []
        for r, c in enumerate(ech.pivots):
            if c >= nq and all(is_zero(ech.rows[r][j]) for j in range(nq)):
                pure.append([ech.rows[r][j] for j in range(nq, len(cols))])
        if pure and _ech(pure, len(lin)).rank == nvars:
            return True
    return None
