"""Bound formulas and deterministic constructors for the extremal families.

Vertex layout is fixed: the clique side ``A`` first, then ``C``, then the
independent side ``B``, then the attached part ``J`` (components in the
order given).  Every constructor returns a :class:`LabeledConstruction`
carrying the part labels so that recognizers and tests can refer to them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from math import comb
from typing import Mapping, Sequence

from .graph import GraphError, SimpleGraph, make_graph
from .structure import capped_circumference, is_2_connected


class ConstructionError(ValueError):
    """Parameters violate the constraints of the requested family."""


def half_threshold(k: int) -> int:
    """``t = floor((k - 1) / 2)``."""
    return (k - 1) // 2


def h_value(n: int, k: int, a: int) -> int:
    """Edge count of ``H(n, k, a)``: ``C(k - a, 2) + a (n - k + a)``."""
    _check_nka(n, k, a)
    return comb(k - a, 2) + a * (n - k + a)


def ell_value(n: int, d: int) -> int:
    """Largest edge count of a non-hamiltonian ``n``-vertex graph with min degree ``d``."""
    if d < 1 or n <= 2 * d:
        raise ConstructionError(f"need d >= 1 and n > 2d, got n={n}, d={d}")
    return max(comb(n - d, 2) + d * d, comb((n + 2) // 2, 2) + ((n - 1) // 2) ** 2)


def _check_nka(n: int, k: int, a: int) -> None:
    if not (1 <= a and 2 * a < k and n >= k):
        raise ConstructionError(f"need n >= k and 1 <= a < k/2, got n={n}, k={k}, a={a}")


@dataclass(frozen=True)
class TheoremParams:
    n: int
    k: int
    a: int

    def __post_init__(self):
        _check_nka(self.n, self.k, self.a)

    @property
    def t(self) -> int:
        return half_threshold(self.k)


@dataclass(frozen=True)
class LabeledConstruction:
    graph: SimpleGraph
    family: str
    parts: Mapping[str, tuple[int, ...]]
    params: Mapping[str, object] = field(default_factory=dict)

    def part(self, name: str) -> tuple[int, ...]:
        return self.parts[name]

    def vertex(self, name: str) -> int:
        (v,) = self.parts[name]
        return v


class _Builder:
    def __init__(self):
        self.n = 0
        self.edges: list[tuple[int, int]] = []
        self.parts: dict[str, tuple[int, ...]] = {}

    def block(self, name: str, size: int) -> tuple[int, ...]:
        vs = tuple(range(self.n, self.n + size))
        self.n += size
        self.parts[name] = vs
        return vs

    def clique(self, vs) -> None:
        vs = list(vs)
        for i, u in enumerate(vs):
            for v in vs[i + 1:]:
                self.edges.append((u, v))

    def biclique(self, xs, ys) -> None:
        for x in xs:
            for y in ys:
                self.edges.append((x, y))

    def finish(self, family: str, **params) -> LabeledConstruction:
        return LabeledConstruction(make_graph(self.n, self.edges), family, dict(self.parts), params)


def build_H(n: int, k: int, a: int) -> LabeledConstruction:
    """``H(n, k, a)``: clique on ``A u C``, every ``A``-``B`` edge, ``B`` independent."""
    _check_nka(n, k, a)
    b = _Builder()
    A = b.block("A", a)
    C = b.block("C", k - 2 * a)
    B = b.block("B", n - k + a)
    b.clique(A + C)
    b.biclique(A, B)
    return b.finish("H", n=n, k=k, a=a)


# ---------------------------------------------------------------------------
# classes G1 .. G8
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class StarSpec:
    """A star component with ``size`` vertices (centre plus ``size - 1`` leaves).

    ``anchor`` selects which vertex of the attachment pair the leaves of a
    star with three or more vertices use.  ``ends`` is the attachment pair as
    indices into ``A`` (classes for k = 8 only; the earlier classes always
    attach to the first two vertices of ``A``).
    """

    size: int
    anchor: int = 0
    ends: tuple[int, int] = (0, 1)


def _attach_star(b: _Builder, name: str, star: StarSpec, A: Sequence[int], ends: Sequence[int],
                 leaf_anchor: int) -> tuple[int, ...]:
    S = b.block(name, star.size)
    centre, leaves = S[0], S[1:]
    b.biclique([centre], leaves)
    b.biclique([centre], ends)
    if star.size == 2:
        b.biclique(leaves, ends)
    else:
        b.biclique(leaves, [leaf_anchor])
    return S


def build_G1(n: int, k: int) -> LabeledConstruction:
    t = half_threshold(k)
    lc = build_H(n, k, t)
    return LabeledConstruction(lc.graph, "G1", lc.parts, {"n": n, "k": k, "t": t})


def build_G2(b_size: int, j_size: int, t: int, k: int | None = None) -> LabeledConstruction:
    """K_t on ``A``, ``A`` x ``B`` complete, ``B`` independent, each ``J`` vertex sees exactly ``a1, b1``."""
    if t < 1 or b_size < 1 or j_size < 0:
        raise ConstructionError("class G2 needs t >= 1, |B| >= 1, |J| >= 0")
    b = _Builder()
    A = b.block("A", t)
    B = b.block("B", b_size)
    J = b.block("J", j_size)
    b.clique(A)
    b.biclique(A, B)
    b.biclique(J, [A[0], B[0]])
    b.parts["a1"], b.parts["b1"] = (A[0],), (B[0],)
    return b.finish("G2", t=t, k=k)


def build_G3(b_size: int, stars: Sequence[StarSpec | int], t: int, k: int | None = None) -> LabeledConstruction:
    """K_t on ``A`` joined to independent ``B``; star components of ``J`` hang on ``A' = {a1, a2}``."""
    stars = [s if isinstance(s, StarSpec) else StarSpec(s) for s in stars]
    if t < 2 or b_size < 0:
        raise ConstructionError("class G3 needs t >= 2 and |B| >= 0")
    if len(stars) < 2:
        raise ConstructionError("class G3 needs at least two star components")
    for s in stars:
        if s.size < 2 or s.anchor not in (0, 1):
            raise ConstructionError("G3 stars need >= 2 vertices and anchor a1 or a2")
    b = _Builder()
    A = b.block("A", t)
    B = b.block("B", b_size)
    b.clique(A)
    b.biclique(A, B)
    ends = A[:2]
    for i, s in enumerate(stars):
        _attach_star(b, f"S{i}", s, A, ends, ends[s.anchor])
    b.parts["J"] = tuple(range(t + b_size, b.n))
    b.parts["A'"] = ends
    return b.finish("G3", t=t, k=k)


def build_G4(stars: Sequence[StarSpec | int]) -> LabeledConstruction:
    """k = 10: a triangle ``A`` plus a star forest; leaves of big stars share one ``A`` neighbour."""
    stars = [s if isinstance(s, StarSpec) else StarSpec(s) for s in stars]
    b = _Builder()
    A = b.block("A", 3)
    b.clique(A)
    for i, s in enumerate(stars):
        if s.size < 1 or s.anchor not in (0, 1, 2):
            raise ConstructionError("G4 components need >= 1 vertex and an anchor in A")
        S = b.block(f"S{i}", s.size)
        centre, leaves = S[0], S[1:]
        b.biclique([centre], leaves)
        b.biclique([centre], A)
        b.biclique(leaves, A if s.size == 2 else [A[s.anchor]])
    b.parts["J"] = tuple(range(3, b.n))
    return b.finish("G4", t=4, k=10)


_BRIDGE_CLASS_SIZE = {"G5": 3, "G6": 4, "G7": 4, "G8": 5}


def build_bridge_class(label: str, bridges: Sequence[StarSpec], isolated: Sequence[tuple[int, int]],
                       reading: str = "every") -> LabeledConstruction:
    """Classes for k = 8: clique ``A`` plus J3-bridges and degree-2 isolated vertices.

    ``bridges`` are stars (``ends`` index the two endpoints in ``A``,
    ``anchor`` picks which end the leaves use); ``isolated`` lists the
    ``A``-neighbour pair of each isolated vertex.  The result is checked to be
    2-connected with no cycle of length 8 or more.  For G6, ``reading`` is
    ``"every"`` (all isolated vertices see ``a1``) or ``"some"`` (at least one).
    """
    if label not in _BRIDGE_CLASS_SIZE:
        raise ConstructionError(f"unknown bridge class {label!r}")
    s = _BRIDGE_CLASS_SIZE[label]
    norm_iso = [tuple(sorted(p)) for p in isolated]
    for p in norm_iso:
        if len(set(p)) != 2 or not all(0 <= x < s for x in p):
            raise ConstructionError(f"isolated vertex pair {p} is not a 2-subset of A")
    for br in bridges:
        if br.size < 2 or len(set(br.ends)) != 2 or not all(0 <= x < s for x in br.ends) or br.anchor not in (0, 1):
            raise ConstructionError(f"bad J3-bridge {br}")
    pairs = [tuple(sorted(br.ends)) for br in bridges]
    if label == "G5":
        if any(0 not in p for p in pairs + norm_iso):
            raise ConstructionError("G5: a1 must be adjacent to every component")
    elif label in ("G6", "G7"):
        if any(p != (0, 1) for p in pairs):
            raise ConstructionError(f"{label}: J3-bridge endpoints must be a1, a2")
        if label == "G7" and any(p != (2, 3) for p in norm_iso):
            raise ConstructionError("G7: isolated vertices must see exactly a3, a4")
        if label == "G6":
            if reading not in ("every", "some"):
                raise ConstructionError("G6 reading must be 'every' or 'some'")
            hits = [0 in p for p in norm_iso]
            if not hits or (reading == "every" and not all(hits)):
                raise ConstructionError(f"G6 ({reading} reading): isolated vertices must see a1")
    else:
        if any(p != (0, 1) for p in pairs + norm_iso):
            raise ConstructionError("G8: every component must attach to exactly a1, a2")
    b = _Builder()
    A = b.block("A", s)
    b.clique(A)
    for i, br in enumerate(bridges):
        ends = [A[br.ends[0]], A[br.ends[1]]]
        _attach_star(b, f"S{i}", br, A, ends, ends[br.anchor])
    for i, p in enumerate(norm_iso):
        (c,) = b.block(f"I{i}", 1)
        b.biclique([c], [A[p[0]], A[p[1]]])
    b.parts["J"] = tuple(range(s, b.n))
    lc = b.finish(label, k=8, t=3, reading=reading if label == "G6" else None)
    if not is_2_connected(lc.graph) or capped_circumference(lc.graph, 8) >= 8:
        raise ConstructionError(f"{label} shape is not 2-connected with circumference < 8")
    return lc


# ---------------------------------------------------------------------------
# path-rich families
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FFamilySpec:
    """Selects one member of a path-rich family.

    ``family`` is ``F0``, ``F1``, ``F2``, ``F3``, ``F4``, ``F4'`` or
    ``general`` (the two-vertex attachment family with explicit ``A1``,
    ``A2``, ``a_size`` and ``b_size``).  ``deletions`` are ``(i, j)`` pairs
    meaning the edge between the ``i``-th vertex of ``A`` and the ``j``-th
    vertex of ``B`` of the complete bipartite base graph is removed.
    """

    family: str
    t: int = 4
    deletions: tuple[tuple[int, int], ...] = ()
    A1: tuple[int, ...] = ()
    A2: tuple[int, ...] = ()
    a_size: int | None = None
    b_size: int | None = None


def deletion_budget(family: str, t: int) -> int:
    if family == "F0":
        return t - 3
    if family in ("F1", "F2", "F3", "general"):
        return t - 4
    return 0


def _bipartite_base(b: _Builder, A, B, deletions, skip=()) -> None:
    removed = set()
    for i, j in deletions:
        if not (0 <= i < len(A) and 0 <= j < len(B)):
            raise ConstructionError(f"deletion ({i}, {j}) is not an A-B pair")
        removed.add((i, j))
    if len(removed) != len(deletions):
        raise ConstructionError("repeated deletion")
    for i, x in enumerate(A):
        for j, y in enumerate(B):
            if (i, j) not in removed and (i, j) not in skip:
                b.edges.append((x, y))


def build_F_member(spec: FFamilySpec) -> LabeledConstruction:
    fam, t = spec.family, spec.t
    if fam in ("F4", "F4'"):
        if t != 4:
            raise ConstructionError(f"{fam} is defined only for t = 4")
    elif t < 3 or (fam != "F0" and t < 4):
        raise ConstructionError(f"{fam} needs t >= {3 if fam == 'F0' else 4}")
    budget = deletion_budget(fam, t)
    if len(spec.deletions) > budget:
        raise ConstructionError(f"{fam}: {len(spec.deletions)} deletions exceed the budget {budget}")
    b = _Builder()
    if fam in ("F0", "F1"):
        A = b.block("A", t)
        B = b.block("B", t + 1 if fam == "F0" else t + 2)
        _bipartite_base(b, A, B, spec.deletions)
    elif fam == "F2":
        if (0, 0) in spec.deletions:
            raise ConstructionError("F2: the subdivided edge a1b1 cannot be deleted")
        A = b.block("A", t)
        (c1,) = b.block("C", 1)
        B = b.block("B", t + 2)
        _bipartite_base(b, A, B, spec.deletions, skip={(0, 0)})
        b.edges += [(A[0], c1), (c1, B[0])]
        b.parts.update(a1=(A[0],), b1=(B[0],), c1=(c1,))
    elif fam == "F4":
        A = b.block("A", 3)
        B = b.block("B", 6)
        b.biclique(A, B)
        b.edges += [(B[0], B[1]), (B[2], B[3]), (B[4], B[5])]
    else:
        if fam == "F3":
            a_size = b_size = t
            A1, A2 = (0, 1), (2, 3)
        elif fam == "F4'":
            a_size = b_size = 4
            A1 = A2 = (0, 1, 2)
        else:
            a_size = spec.a_size if spec.a_size is not None else t
            b_size = spec.b_size if spec.b_size is not None else t
            A1, A2 = tuple(spec.A1), tuple(spec.A2)
        _check_attachment_sets(A1, A2, a_size)
        A = b.block("A", a_size)
        c1, c2 = b.block("C", 2)
        B = b.block("B", b_size)
        _bipartite_base(b, A, B, spec.deletions)
        b.edges.append((c1, c2))
        b.biclique([c1], [A[i] for i in A1])
        b.biclique([c2], [A[i] for i in A2])
        b.parts.update(c1=(c1,), c2=(c2,), A1=tuple(A[i] for i in A1), A2=tuple(A[i] for i in A2))
    return b.finish(fam, t=t, deletions=tuple(spec.deletions))


def _check_attachment_sets(A1, A2, a_size) -> None:
    s1, s2 = set(A1), set(A2)
    if not s1 or not s2 or len(s1) != len(A1) or len(s2) != len(A2):
        raise ConstructionError("A1 and A2 must be non-empty sets")
    if not all(0 <= i < a_size for i in s1 | s2):
        raise ConstructionError("A1 and A2 must index vertices of A")
    if len(s1 | s2) < 3:
        raise ConstructionError("A1 and A2 must cover at least three vertices")
    if min(len(s1), len(s2)) == 1 and s1 & s2:
        raise ConstructionError("a singleton attachment set must be disjoint from the other")


# ---------------------------------------------------------------------------
# generic entry point
# ---------------------------------------------------------------------------
def build_class_member(label: str, **shape) -> LabeledConstruction:
    """Dispatch to the maximal-member builder for ``label`` (``G1`` .. ``G8``)."""
    try:
        if label == "G1":
            return build_G1(shape["n"], shape["k"])
        if label == "G2":
            return build_G2(shape["b_size"], shape["j_size"], shape["t"], shape.get("k"))
        if label == "G3":
            return build_G3(shape["b_size"], shape["stars"], shape["t"], shape.get("k"))
        if label == "G4":
            return build_G4(shape["stars"])
        if label in _BRIDGE_CLASS_SIZE:
            return build_bridge_class(label, shape.get("bridges", ()), shape.get("isolated", ()),
                                      shape.get("reading", "every"))
    except KeyError as exc:
        raise ConstructionError(f"{label}: missing shape parameter {exc}") from None
    except GraphError as exc:
        raise ConstructionError(str(exc)) from None
    raise ConstructionError(f"unknown class {label!r}")
