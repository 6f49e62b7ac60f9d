"""Rooted graphs, rooted minor operations and rooted-minor containment.

Vertices are ``0..n-1``.  A :class:`RootedGraph` is an immutable value; every
operation returns a new graph.  Minor containment is decided by a
branch-set backtracking search over host vertex bitmasks.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Sequence

from . import witnesses
from .errors import InvalidOp, OutOfRange, ParseError, SizeLimit

DEFAULT_SIZE_CAP = 12


def _norm_edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class RootedGraph:
    n: int
    edges: frozenset[tuple[int, int]]
    root: int = 0

    def __post_init__(self):
        edges = frozenset(_norm_edge(int(u), int(v)) for u, v in self.edges)
        for u, v in edges:
            if u == v:
                raise InvalidOp(f"loop at vertex {u}")
            if u < 0 or v >= self.n:
                raise InvalidOp(f"edge ({u},{v}) out of range for n={self.n}")
        if self.n > 0 and not 0 <= self.root < self.n:
            raise InvalidOp(f"root {self.root} out of range for n={self.n}")
        if self.n == 0 and self.root != 0:
            raise InvalidOp("empty graph must use root 0")
        object.__setattr__(self, "edges", edges)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Sequence[int]], root: int = 0) -> "RootedGraph":
        return cls(n, frozenset(_norm_edge(u, v) for u, v in edges), root)

    # structure ----------------------------------------------------------

    @cached_property
    def adjacency(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as a bitmask."""
        adj = [0] * self.n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return tuple(adj)

    def neighbors(self, v: int) -> list[int]:
        return _bits(self.adjacency[v])

    def degree(self, v: int) -> int:
        return bin(self.adjacency[v]).count("1")

    def has_edge(self, u: int, v: int) -> bool:
        return _norm_edge(u, v) in self.edges

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def sorted_edges(self) -> list[tuple[int, int]]:
        return sorted(self.edges)

    def non_edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in range(u + 1, self.n)
                if (u, v) not in self.edges]

    def with_root(self, root: int) -> "RootedGraph":
        return RootedGraph(self.n, self.edges, root)

    def components(self) -> list[list[int]]:
        """Connected components, each sorted, ordered by smallest vertex."""
        seen = 0
        out = []
        for v in range(self.n):
            if seen >> v & 1:
                continue
            comp = _component_mask(self.adjacency, 1 << v, (1 << self.n) - 1)
            seen |= comp
            out.append(_bits(comp))
        return out

    def is_connected(self) -> bool:
        return self.n <= 1 or len(self.components()) == 1

    def induced(self, vertices: Iterable[int], root: int | None = None) -> "RootedGraph":
        """Induced subgraph relabelled in increasing vertex order.

        ``root`` is given in old labels and defaults to the current root,
        which must then be among ``vertices``.
        """
        keep = sorted(set(vertices))
        pos = {v: k for k, v in enumerate(keep)}
        root = self.root if root is None else root
        if root not in pos:
            raise InvalidOp(f"root {root} not in induced vertex set")
        edges = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return RootedGraph.from_edges(len(keep), edges, pos[root])

    def root_component(self) -> "RootedGraph":
        comp = _bits(_component_mask(self.adjacency, 1 << self.root, (1 << self.n) - 1))
        return self.induced(comp)

    def delete_vertex(self, v: int) -> "RootedGraph":
        return self.induced([k for k in range(self.n) if k != v])

    def relabel(self, perm: Sequence[int]) -> "RootedGraph":
        """Graph with old vertex ``v`` renamed to ``perm[v]``."""
        if sorted(perm) != list(range(self.n)):
            raise InvalidOp(f"not a permutation of 0..{self.n - 1}: {perm}")
        return RootedGraph.from_edges(self.n, [(perm[u], perm[v]) for u, v in self.edges],
                                      perm[self.root] if self.n else 0)

    def __repr__(self) -> str:
        return f"RootedGraph(n={self.n}, edges={self.sorted_edges()}, root={self.root})"

    # json ---------------------------------------------------------------

    def to_json(self) -> dict:
        return {"n": self.n, "edges": [list(e) for e in self.sorted_edges()], "root": self.root}

    @classmethod
    def from_json(cls, obj: dict) -> "RootedGraph":
        try:
            return cls.from_edges(int(obj["n"]), [(int(u), int(v)) for u, v in obj["edges"]],
                                  int(obj.get("root", 0)))
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"malformed graph JSON: {exc}") from exc


def _bits(mask: int) -> list[int]:
    out = []
    while mask:
        low = mask & -mask
        out.append(low.bit_length() - 1)
        mask ^= low
    return out


def _component_mask(adj: Sequence[int], start: int, allowed: int) -> int:
    comp = start & allowed
    frontier = comp
    while frontier:
        low = frontier & -frontier
        frontier ^= low
        new = adj[low.bit_length() - 1] & allowed & ~comp
        comp |= new
        frontier |= new
    return comp


# minor operations ------------------------------------------------------------


@dataclass(frozen=True)
class MinorOp:
    kind: str  # "delete_edge" | "delete_vertex" | "contract_edge"
    u: int
    v: int | None = None

    def __str__(self) -> str:
        if self.kind == "delete_vertex":
            return f"DeleteVertex({self.u})"
        name = "DeleteEdge" if self.kind == "delete_edge" else "ContractEdge"
        return f"{name}({self.u},{self.v})"


def DeleteEdge(u: int, v: int) -> MinorOp:
    return MinorOp("delete_edge", u, v)


def DeleteVertex(v: int) -> MinorOp:
    return MinorOp("delete_vertex", v)


def ContractEdge(u: int, v: int) -> MinorOp:
    return MinorOp("contract_edge", u, v)


def contract_edge(g: RootedGraph, u: int, v: int) -> RootedGraph:
    """Merge ``u`` and ``v`` into the smaller label; the root follows the merge."""
    keep, gone = min(u, v), max(u, v)

    def lab(x: int) -> int:
        if x == gone:
            x = keep
        return x - 1 if x > gone else x

    edges = {_norm_edge(lab(a), lab(b)) for a, b in g.edges}
    edges = {e for e in edges if e[0] != e[1]}
    return RootedGraph(g.n - 1, frozenset(edges), lab(g.root))


def apply_minor_op(g: RootedGraph, op: MinorOp) -> RootedGraph:
    if op.kind == "delete_edge":
        if op.v is None or not g.has_edge(op.u, op.v):
            raise InvalidOp(f"{op}: no such edge")
        return RootedGraph(g.n, g.edges - {_norm_edge(op.u, op.v)}, g.root)
    if op.kind == "delete_vertex":
        if not 0 <= op.u < g.n:
            raise InvalidOp(f"{op}: no such vertex")
        if op.u == g.root:
            raise InvalidOp(f"{op}: cannot delete the root")
        return g.delete_vertex(op.u)
    if op.kind == "contract_edge":
        if op.v is None or not g.has_edge(op.u, op.v):
            raise InvalidOp(f"{op}: no such edge")
        return contract_edge(g, op.u, op.v)
    raise InvalidOp(f"unknown minor operation {op.kind!r}")


def minor_ops(g: RootedGraph) -> list[MinorOp]:
    """Every legal single minor operation on ``g``."""
    ops = [DeleteEdge(u, v) for u, v in g.sorted_edges()]
    ops += [DeleteVertex(v) for v in range(g.n) if v != g.root]
    ops += [ContractEdge(u, v) for u, v in g.sorted_edges()]
    return ops


def one_step_minors(g: RootedGraph) -> list[RootedGraph]:
    return [apply_minor_op(g, op) for op in minor_ops(g)]


# containment -------------------------------------------------------------------


def _pattern_order(pattern: RootedGraph, rooted: bool) -> list[int]:
    """Placement order: root first (rooted search), then greedily the vertex
    with most already-placed neighbours, ties by degree then index."""
    n = pattern.n
    deg = [pattern.degree(v) for v in range(n)]
    adj = pattern.adjacency
    order: list[int] = []
    placed = 0
    if rooted:
        order.append(pattern.root)
        placed |= 1 << pattern.root
    while len(order) < n:
        best = None
        best_key = None
        for v in range(n):
            if placed >> v & 1:
                continue
            key = (bin(adj[v] & placed).count("1"), deg[v], -v)
            if best_key is None or key > best_key:
                best, best_key = v, key
        order.append(best)
        placed |= 1 << best
    return order


def _connected_sets(adj: Sequence[int], start: int, allowed: int, max_size: int) -> Iterator[int]:
    """Connected vertex sets within ``allowed`` that contain ``start`` (a bit),
    each produced once, smallest-first along every branch."""

    def rec(S: int, ext: int, excluded: int, size: int) -> Iterator[int]:
        yield S
        if size == max_size:
            return
        while ext:
            w = ext & -ext
            ext ^= w
            newS = S | w
            widx = w.bit_length() - 1
            newext = (ext | (adj[widx] & allowed)) & ~newS & ~excluded
            yield from rec(newS, newext, excluded, size + 1)
            excluded |= w

    ext0 = adj[start.bit_length() - 1] & allowed & ~start
    yield from rec(start, ext0, 0, 1)


def _search_model(host: RootedGraph, pattern: RootedGraph, rooted: bool) -> list[int] | None:
    hadj = host.adjacency
    padj = pattern.adjacency
    p = pattern.n
    order = _pattern_order(pattern, rooted)
    pos = {v: k for k, v in enumerate(order)}
    earlier = [[pos[u] for u in _bits(padj[v]) if pos[u] < k] for k, v in enumerate(order)]
    # pending[q][k]: pattern vertex at position q still has a neighbour placed after k
    pending = [[any(pos[u] > k for u in _bits(padj[v])) for k in range(p)] for v in order]
    hroot = 1 << host.root
    branch = [0] * p
    branch_nbhd = [0] * p

    def nbhd(mask: int) -> int:
        out = 0
        while mask:
            low = mask & -mask
            mask ^= low
            out |= hadj[low.bit_length() - 1]
        return out

    def place(k: int, avail: int) -> bool:
        if k == p:
            return True
        is_root = rooted and order[k] == pattern.root
        allowed = avail if is_root or not rooted else avail & ~hroot
        max_size = bin(allowed).count("1") - (p - k - 1)
        if max_size < 1:
            return False
        prev = earlier[k]
        if is_root:
            starts = hroot & allowed
        elif prev:
            starts = branch_nbhd[prev[0]] & allowed
        else:
            starts = allowed
        excluded_starts = 0
        while starts:
            s = starts & -starts
            starts ^= s
            for S in _connected_sets(hadj, s, allowed & ~excluded_starts, max_size):
                NS = nbhd(S)
                if any(not (NS & branch[q]) for q in prev):
                    continue
                new_avail = avail & ~S
                branch[k] = S
                branch_nbhd[k] = NS
                if all(not pending[q][k] or branch_nbhd[q] & new_avail for q in range(k + 1)) \
                        and place(k + 1, new_avail):
                    return True
            excluded_starts |= s
        return False

    if place(0, (1 << host.n) - 1):
        return list(branch)
    return None


def contains_rooted_minor(host: RootedGraph, pattern: RootedGraph, *, rooted: bool = True,
                          size_cap: int = DEFAULT_SIZE_CAP) -> bool:
    """Decide whether ``pattern`` is a (rooted) minor of ``host``.

    With ``rooted=True`` the host root must lie in the branch set of the
    pattern root.  Raises :class:`SizeLimit` for hosts above ``size_cap``.
    """
    if host.n > size_cap:
        raise SizeLimit(f"host has {host.n} vertices, cap is {size_cap}")
    if pattern.n == 0:
        return True
    if pattern.n > host.n or pattern.num_edges > host.num_edges:
        return False
    if rooted and pattern.is_connected():
        comp = host.root_component()
        if pattern.n > comp.n or pattern.num_edges > comp.num_edges:
            return False
        host = comp
    return _search_model(host, pattern, rooted) is not None


def minor_model(host: RootedGraph, pattern: RootedGraph, *, rooted: bool = True,
                size_cap: int = DEFAULT_SIZE_CAP) -> dict[int, list[int]] | None:
    """Branch sets (pattern vertex -> host vertices) witnessing containment."""
    if host.n > size_cap:
        raise SizeLimit(f"host has {host.n} vertices, cap is {size_cap}")
    if pattern.n == 0:
        return {}
    if pattern.n > host.n:
        return None
    found = _search_model(host, pattern, rooted)
    if found is None:
        return None
    order = _pattern_order(pattern, rooted)
    return {v: _bits(found[k]) for k, v in enumerate(order)}


# constructions -------------------------------------------------------------------


def extend_root(g: RootedGraph) -> RootedGraph:
    """Append a leaf (vertex ``n``) to the root and make it the new root."""
    return RootedGraph(g.n + 1, g.edges | {(g.root, g.n)}, g.n)


def vertex_sum(g1: RootedGraph, g2: RootedGraph, v1: int, v2: int | None = None) -> RootedGraph:
    """Glue ``g2`` onto ``g1`` by identifying ``g1``'s vertex ``v1`` with
    ``g2``'s vertex ``v2`` (default: same label).

    Vertices of ``g1`` keep their labels; the other vertices of ``g2``
    follow in order.  The root is ``g1``'s root.
    """
    v2 = v1 if v2 is None else v2
    if not (0 <= v1 < g1.n and 0 <= v2 < g2.n):
        raise InvalidOp(f"glue vertices {v1},{v2} out of range")
    lab = {}
    nxt = g1.n
    for w in range(g2.n):
        if w == v2:
            lab[w] = v1
        else:
            lab[w] = nxt
            nxt += 1
    edges = set(g1.edges) | {_norm_edge(lab[a], lab[b]) for a, b in g2.edges}
    return RootedGraph(nxt, frozenset(edges), g1.root)


def is_cut_vertex(g: RootedGraph, v: int) -> bool:
    """``True`` iff deleting ``v`` increases the number of components."""
    full = (1 << g.n) - 1
    comp = _component_mask(g.adjacency, 1 << v, full)
    nbrs = g.adjacency[v]
    if not nbrs:
        return False
    first = nbrs & -nbrs
    reach = _component_mask(g.adjacency, first, comp & ~(1 << v))
    return (nbrs & ~reach) != 0


def cut_vertices(g: RootedGraph) -> list[int]:
    return [v for v in range(g.n) if is_cut_vertex(g, v)]


def complement(g: RootedGraph) -> RootedGraph:
    return RootedGraph(g.n, frozenset(g.non_edges()), g.root)


def disjoint_union(g: RootedGraph, h: RootedGraph) -> RootedGraph:
    """``g`` followed by a shifted copy of ``h``; root stays in ``g``."""
    shifted = {(u + g.n, v + g.n) for u, v in h.edges}
    return RootedGraph(g.n + h.n, frozenset(set(g.edges) | shifted), g.root)


# families ----------------------------------------------------------------------

T3_MEMBERS = ("T3:K4", "T3:K23", "T3:T", "T3:T1", "T3:T2", "T3:T3")
_T3_MATRIX = {v: k for k, v in witnesses.SUPPORT_NAME.items()}


def complete_graph(n: int) -> RootedGraph:
    return RootedGraph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star(n: int) -> RootedGraph:
    """K_{1,n}: centre 0, leaves 1..n."""
    return RootedGraph.from_edges(n + 1, [(0, k) for k in range(1, n + 1)])


def path(n: int) -> RootedGraph:
    return RootedGraph.from_edges(n, [(k, k + 1) for k in range(n - 1)])


def family(name: str, n: int | None = None) -> RootedGraph:
    """A fixed labelled graph; the root is 0 and should be set by the caller.

    Names: ``K`` (needs ``n``), ``Star`` (K_{1,n}), ``Path``, ``Paw``,
    ``S211`` and the T3-family members ``T3:K4``, ``T3:K23``, ``T3:T``,
    ``T3:T1``, ``T3:T2``, ``T3:T3``.

    ``Paw`` is the triangle 0-1-2 with pendant 3 on 0.  ``S211`` is K_{1,3}
    (centre 0, leaves 1,2,3) with 4 appended to leaf 1, so 4 is the far
    end of the length-2 leg.
    """
    if name in ("K", "K_n"):
        return complete_graph(_need(n, name))
    if name == "Star":
        return star(_need(n, name))
    if name == "Path":
        return path(_need(n, name))
    if name == "Paw":
        return RootedGraph.from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
    if name == "S211":
        return RootedGraph.from_edges(5, [(0, 1), (0, 2), (0, 3), (1, 4)])
    if name in _T3_MATRIX:
        mat = witnesses.MATRICES[_T3_MATRIX[name]]
        return RootedGraph.from_edges(len(mat), witnesses.support_edges(mat))
    raise OutOfRange(f"unknown family {name!r}")


def _need(n: int | None, name: str) -> int:
    if n is None or n < 0:
        raise OutOfRange(f"family {name!r} needs a size")
    return n


def t3_rooted() -> list[RootedGraph]:
    """T3-family members rooted at each non-cut vertex, in family then index order."""
    out = []
    for name in T3_MEMBERS:
        g = family(name)
        out.extend(g.with_root(v) for v in range(g.n) if not is_cut_vertex(g, v))
    return out


def minimal_minor_family(s: int) -> list[RootedGraph]:
    """Minimal rooted minors for ``xixi >= s``, ``s`` in 0..5."""
    if s < 0 or s > 5:
        raise OutOfRange(f"minimal minors for xixi >= {s} are unknown (only 0..5)")
    if s == 0:
        return [complete_graph(1)]
    if s == 1:
        return [complete_graph(2).with_root(1)]
    if s == 2:
        return [complete_graph(3), star(3).with_root(1)]
    if s == 3:
        return [family("Paw").with_root(3), family("S211").with_root(4)]
    fam4 = t3_rooted()
    if s == 4:
        return fam4
    return [extend_root(g) for g in fam4]


# graph6 -----------------------------------------------------------------------


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def to_graph6(g: RootedGraph) -> str:
    """graph6 encoding of the unrooted structure (no header)."""
    bits = [1 if (i, j) in g.edges else 0 for j in range(1, g.n) for i in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(chr(63 + int("".join(map(str, bits[k:k + 6])), 2))
                   for k in range(0, len(bits), 6))
    return _encode_n(g.n) + body


def from_graph6(s: str, root: int = 0) -> RootedGraph:
    s = s.strip()
    if s.startswith(">>graph6<<"):
        s = s[len(">>graph6<<"):]
    if not s or any(not 63 <= ord(ch) <= 126 for ch in s):
        raise ParseError(f"invalid graph6 string {s!r}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] != 63:
        n, rest = vals[0], vals[1:]
    elif len(vals) > 1 and vals[1] != 63:
        if len(vals) < 4:
            raise ParseError("truncated graph6 size field")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        rest = vals[4:]
    else:
        if len(vals) < 8:
            raise ParseError("truncated graph6 size field")
        n = 0
        for v in vals[2:8]:
            n = (n << 6) | v
        rest = vals[8:]
    need = n * (n - 1) // 2
    if len(rest) != (need + 5) // 6:
        raise ParseError(f"graph6 body has {len(rest)} bytes, expected {(need + 5) // 6}")
    bits = []
    for v in rest:
        bits.extend((v >> (5 - k)) & 1 for k in range(6))
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    if any(bits[need:]):
        raise ParseError("nonzero padding bits in graph6 string")
    return RootedGraph.from_edges(n, edges, root)
