"""Coloured quivers, Hopf quivers, Cayley digraphs, and the truncated
path algebra / coalgebra.

Arrows are referenced by their index in the arrow tuple; a path is a
tuple of arrow ids with matching endpoints, and a length-0 path is the
integer index of its vertex.  GradedVec holds a formal linear combination
of paths of one fixed length.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import NotAdStable, QuivergeomError
from .groups import conjugacy_classes, is_ad_stable
from .scalars import is_zero


@dataclass(frozen=True)
class Arrow:
    source: int
    target: int
    color: int = 1
    bar: bool = False


class Quiver:
    def __init__(self, vertices, arrows):
        self.vertices = tuple(str(v) for v in vertices)
        self.arrows = tuple(arrows)
        self._validate()
        self._out = {}
        self._in = {}
        for i, a in enumerate(self.arrows):
            self._out.setdefault(a.source, []).append(i)
            self._in.setdefault(a.target, []).append(i)

    def _validate(self):
        n = len(self.vertices)
        by_pair = {}
        for a in self.arrows:
            if not (0 <= a.source < n and 0 <= a.target < n):
                raise QuivergeomError("arrow endpoint out of range")
            by_pair.setdefault((a.source, a.target), []).append(a)
        for (x, y), arr in by_pair.items():
            colors = sorted(a.color for a in arr)
            if colors != list(range(1, len(arr) + 1)):
                raise QuivergeomError(f"colors on {x}->{y} are not 1..n(x,y): {colors}")
            bars = [a for a in arr if a.bar]
            if len(bars) > 1:
                raise QuivergeomError(f"more than one distinguished arrow on {x}->{y}")
            if bars and bars[0].color != 1:
                raise QuivergeomError(f"distinguished arrow on {x}->{y} must have color 1")

    def n_arrows(self, x, y):
        return sum(1 for a in self.arrows if a.source == x and a.target == y)

    def arrow_id(self, x, y, color=1):
        for i, a in enumerate(self.arrows):
            if a.source == x and a.target == y and a.color == color:
                return i
        raise KeyError(f"no arrow {x}->{y} with color {color}")

    def arrows_from(self, x):
        return self._out.get(x, [])

    def arrows_into(self, y):
        return self._in.get(y, [])

    def bar_arrows(self):
        return [i for i, a in enumerate(self.arrows) if a.bar]

    def bar_is_digraph(self):
        """No loops and no repeated pairs among the distinguished arrows."""
        seen = set()
        for i in self.bar_arrows():
            a = self.arrows[i]
            if a.source == a.target:
                return False
            if (a.source, a.target) in seen:
                return False
            seen.add((a.source, a.target))
        return True

    def index_pairs(self):
        """Ordered vertex pairs (x, y) carrying at least one arrow."""
        out = []
        seen = set()
        for a in self.arrows:
            if (a.source, a.target) not in seen:
                seen.add((a.source, a.target))
                out.append((a.source, a.target))
        return sorted(out)

    def to_json(self):
        return {
            "vertices": list(self.vertices),
            "arrows": [{"s": a.source, "t": a.target, "color": a.color, "bar": a.bar} for a in self.arrows],
        }

    @staticmethod
    def from_json(obj):
        return Quiver(obj["vertices"], [Arrow(a["s"], a["t"], a.get("color", 1), a.get("bar", False)) for a in obj["arrows"]])


def hopf_quiver(G, ram):
    """Hopf quiver Q(G, R): for each class C with R_C > 0 and c in C,
    R_C arrows x -> xc at every vertex x.

    ram maps a class representative index (or a ConjClass) to R_C.
    """
    classes = conjugacy_classes(G)
    rc = {}
    for key, mult in ram.items():
        rep = key.rep if hasattr(key, "rep") else key
        for c in classes:
            if rep in c.members:
                rc[c.rep] = mult
                break
        else:
            raise QuivergeomError(f"no conjugacy class containing element {key}")
    arrows = []
    for x in G.elements():
        for c in classes:
            mult = rc.get(c.rep, 0)
            for g in sorted(c.members):
                for i in range(1, mult + 1):
                    arrows.append(Arrow(x, G.mul(x, g), i))
    return Quiver(G.labels, arrows)


def mark_cayley_bar(G, quiver, cbar):
    """Return a copy with arrows x ->(1) y, x^-1 y in cbar, distinguished."""
    cbar = set(cbar)
    if not is_ad_stable(G, cbar):
        raise NotAdStable(f"{sorted(cbar)} is not ad-stable")
    arrows = []
    for a in quiver.arrows:
        g = G.mul(G.inv(a.source), a.target)
        arrows.append(Arrow(a.source, a.target, a.color, a.color == 1 and g in cbar))
    return Quiver(quiver.vertices, arrows)


def cayley_digraph(G, cbar):
    """Cayley digraph of an ad-stable subset: x -> y iff x^-1 y in cbar.

    All arrows have color 1 and are distinguished.
    """
    cbar = set(cbar)
    if not is_ad_stable(G, cbar):
        raise NotAdStable(f"{sorted(cbar)} is not ad-stable")
    arrows = []
    for x in G.elements():
        for g in sorted(cbar):
            arrows.append(Arrow(x, G.mul(x, g), 1, True))
    return Quiver(G.labels, arrows)


def is_symmetric(quiver):
    """n(x, y) == n(y, x) for all vertex pairs."""
    pairs = set(quiver.index_pairs())
    for x, y in pairs:
        if quiver.n_arrows(x, y) != quiver.n_arrows(y, x):
            return False
    return True


# ---------------------------------------------------------------------------
# paths and graded vectors


def path_source(quiver, path):
    if isinstance(path, int):
        return path
    return quiver.arrows[path[0]].source


def path_target(quiver, path):
    if isinstance(path, int):
        return path
    return quiver.arrows[path[-1]].target


def is_path(quiver, path):
    if isinstance(path, int):
        return 0 <= path < len(quiver.vertices)
    for a, b in zip(path, path[1:]):
        if quiver.arrows[a].target != quiver.arrows[b].source:
            return False
    return True


def path_label(quiver, path):
    if isinstance(path, int):
        return quiver.vertices[path]
    return ".".join(arrow_label(quiver, i) for i in path)


def arrow_label(quiver, i):
    a = quiver.arrows[i]
    return f"{quiver.vertices[a.source]}->{quiver.vertices[a.target]}({a.color})"


def paths_of_length(quiver, n):
    """All paths of length n, ordered lexicographically by arrow ids."""
    if n == 0:
        return list(range(len(quiver.vertices)))
    out = [(i,) for i in range(len(quiver.arrows))]
    for _ in range(n - 1):
        nxt = []
        for p in out:
            for j in quiver.arrows_from(quiver.arrows[p[-1]].target):
                nxt.append(p + (j,))
        out = nxt
    return sorted(out)


class GradedVec:
    """Formal linear combination of paths of one fixed length."""

    __slots__ = ("quiver", "degree", "coeffs")

    def __init__(self, quiver, degree, coeffs=None):
        self.quiver = quiver
        self.degree = degree
        self.coeffs = {}
        if coeffs:
            for p, c in coeffs.items():
                if not is_zero(c):
                    self.coeffs[p] = c

    @staticmethod
    def path(quiver, p, coeff=Fraction(1)):
        deg = 0 if isinstance(p, int) else len(p)
        return GradedVec(quiver, deg, {p: coeff})

    def __add__(self, other):
        if other == 0:
            return self
        if self.degree != other.degree:
            raise QuivergeomError("cannot add vectors of different degree")
        out = dict(self.coeffs)
        for p, c in other.coeffs.items():
            s = out.get(p, 0) + c
            if is_zero(s):
                out.pop(p, None)
            else:
                out[p] = s
        return GradedVec(self.quiver, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return GradedVec(self.quiver, self.degree, {p: -c for p, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, s):
        if is_zero(s):
            return GradedVec(self.quiver, self.degree, {})
        return GradedVec(self.quiver, self.degree, {p: c * s for p, c in self.coeffs.items()})

    def is_zero(self):
        return not self.coeffs

    def __eq__(self, other):
        if other == 0:
            return not self.coeffs
        return self.degree == other.degree and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.degree, tuple(sorted(self.coeffs.items(), key=lambda kv: str(kv[0])))))

    def __repr__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for p in sorted(self.coeffs, key=lambda q: (0, q) if isinstance(q, int) else (1, q)):
            bits.append(f"({self.coeffs[p]})*{path_label(self.quiver, p)}")
        return " + ".join(bits)


def concat_product(u, v):
    """Concatenation product; non-composable path pairs contribute 0."""
    quiver = u.quiver
    out = {}
    for p, c in u.coeffs.items():
        for q, e in v.coeffs.items():
            if path_target(quiver, p) != path_source(quiver, q):
                continue
            if isinstance(p, int):
                key = q
            elif isinstance(q, int):
                key = p
            else:
                key = p + q
            s = out.get(key, 0) + c * e
            if is_zero(s):
                out.pop(key, None)
            else:
                out[key] = s
    return GradedVec(quiver, u.degree + v.degree, out)


def deconcat_coproduct(quiver, p):
    """Deconcatenation: list of (left GradedVec, right GradedVec) summands."""
    if isinstance(p, int):
        v = GradedVec.path(quiver, p)
        return [(v, v)]
    n = len(p)
    out = [(GradedVec.path(quiver, path_source(quiver, p)), GradedVec.path(quiver, p))]
    for i in range(1, n):
        out.append((GradedVec.path(quiver, p[:i]), GradedVec.path(quiver, p[i:])))
    out.append((GradedVec.path(quiver, p), GradedVec.path(quiver, path_target(quiver, p))))
    return out


def iterated_splits(quiver, p, parts):
    """All ways to cut path p into `parts` consecutive segments.

    Each segment is a path key: a subpath tuple, or the vertex (int) at
    the cut position when the segment is empty.  This realises the
    (parts-1)-fold deconcatenation coproduct summands of a single path.
    """
    if isinstance(p, int):
        return [[p] * parts]
    n = len(p)

    def at(i):
        if i < n:
            return quiver.arrows[p[i]].source
        return quiver.arrows[p[-1]].target

    out = []

    def rec(start, remaining, acc):
        if remaining == 1:
            acc = acc + [p[start:n] if start < n else at(n)]
            out.append(acc)
            return
        for end in range(start, n + 1):
            seg = p[start:end] if end > start else at(start)
            rec(end, remaining - 1, acc + [seg])

    rec(0, parts, [])
    return out


def dot_export(quiver):
    """GraphViz DOT text; distinguished arrows bold, colors as labels."""
    lines = ["digraph quiver {"]
    for i, v in enumerate(quiver.vertices):
        lines.append(f'  n{i} [label="{v}"];')
    for a in quiver.arrows:
        attrs = [f'label="({a.color})"']
        if a.bar:
            attrs.append("style=bold")
        lines.append(f"  n{a.source} -> n{a.target} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
