"""
Trivalent recursion graphs.

A graph of genus g with k leaves has 2g + k - 1 vertices arranged as a
planar binary skeleton tree below the root p. Each vertex has a left slot
(the point q) and a right slot (the conjugate point q_bar). A slot holds a
tree child, a leaf p_i, or one end of a non-arrowed inner edge.

Rule sets:
    strict    inner edges join a vertex to itself or to a descendant, and a
              vertex with a tree child and a downward inner edge keeps the
              tree child on the left; 5 graphs at (g, k) = (2, 0)
    any-side  drops the left-child condition; 13 graphs at (2, 0), the
              count usually quoted for graphs without the edge rules
    any-edge  also drops the ancestor condition, so inner edges may join
              unrelated vertices; 15 graphs at (2, 0)
"""

import logging
from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple, Union

logger = logging.getLogger(__name__)

LEFT, RIGHT = 0, 1
SIDES = "LR"
RULE_SETS = ("strict", "any-side", "any-edge")


@dataclass(frozen=True)
class Child:
    vertex: int


@dataclass(frozen=True)
class Leaf:
    label: int


@dataclass(frozen=True)
class Bond:
    """Non-arrowed inner edge to slot ``side`` of ``vertex``."""

    vertex: int
    side: int


Slot = Union[Child, Leaf, Bond]
Shape = Optional[Tuple["Shape", "Shape"]]


@dataclass(frozen=True)
class RecursionGraph:
    """
    One graph; vertex 0 hangs off the root and vertices are numbered in preorder.

    Args:
        g: genus
        k: number of leaves
        slots: (left, right) slot contents per vertex
    """

    g: int
    k: int
    slots: Tuple[Tuple[Slot, Slot], ...]

    @property
    def n_vertices(self) -> int:
        return len(self.slots)

    def parents(self) -> Dict[int, int]:
        out = {}
        for v, pair in enumerate(self.slots):
            for s in pair:
                if isinstance(s, Child):
                    out[s.vertex] = v
        return out

    def children(self, v: int) -> List[int]:
        return [s.vertex for s in self.slots[v] if isinstance(s, Child)]

    def is_ancestor(self, u: int, w: int) -> bool:
        """True when u lies strictly above w."""
        parents = self.parents()
        while w in parents:
            w = parents[w]
            if w == u:
                return True
        return False

    def postorder(self) -> List[int]:
        order: List[int] = []

        def visit(v: int) -> None:
            for c in self.children(v):
                visit(c)
            order.append(v)

        visit(0)
        return order

    def edge_counts(self) -> Tuple[int, int]:
        """(arrowed, non-arrowed) edges, the root edge included."""
        arrowed = 1 + sum(isinstance(s, Child) for pair in self.slots for s in pair)
        leaves = sum(isinstance(s, Leaf) for pair in self.slots for s in pair)
        bonds = sum(isinstance(s, Bond) for pair in self.slots for s in pair) // 2
        return arrowed, leaves + bonds

    def swap(self, v: int) -> "RecursionGraph":
        """Exchange the left and right slots of vertex v, keeping bond partners consistent."""
        slots = [list(pair) for pair in self.slots]
        slots[v].reverse()
        for u, pair in enumerate(slots):
            for i, s in enumerate(pair):
                if isinstance(s, Bond) and s.vertex == v:
                    pair[i] = Bond(v, 1 - s.side)
        return RecursionGraph(self.g, self.k, tuple(tuple(p) for p in slots))


# enumeration

@lru_cache(maxsize=None)
def skeleton_shapes(n: int) -> Tuple[Shape, ...]:
    """Planar binary skeleton trees with n vertices; a shape is (left, right) or None."""
    if n == 0:
        return (None,)
    shapes = []
    for left in range(n):
        for L in skeleton_shapes(left):
            for R in skeleton_shapes(n - 1 - left):
                shapes.append((L, R))
    return tuple(shapes)


def _number(shape: Shape) -> List[List[Optional[int]]]:
    """Preorder numbering: per vertex, the tree child index on each side or None."""
    table: List[List[Optional[int]]] = []

    def visit(node: Shape) -> int:
        v = len(table)
        table.append([None, None])
        for side in (LEFT, RIGHT):
            if node[side] is not None:
                table[v][side] = visit(node[side])
        return v

    visit(shape)
    return table


def _matchings(free: Sequence[Tuple[int, int]], pairs: int) -> Iterator[Tuple[List[Tuple], List[Tuple]]]:
    """Choose ``pairs`` disjoint pairs among free slots; yield (pairs, singles)."""
    if not free:
        if pairs == 0:
            yield [], []
        return
    head, rest = free[0], list(free[1:])
    if len(rest) >= 2 * pairs:
        for matched, singles in _matchings(rest, pairs):
            yield matched, [head] + singles
    if pairs:
        for i, other in enumerate(rest):
            remaining = rest[:i] + rest[i + 1:]
            for matched, singles in _matchings(remaining, pairs - 1):
                yield [(head, other)] + matched, singles


def _ancestors(children: List[List[Optional[int]]]) -> Dict[int, FrozenSet[int]]:
    above: Dict[int, FrozenSet[int]] = {0: frozenset()}
    for v, pair in enumerate(children):
        for c in pair:
            if c is not None:
                above[c] = above[v] | {v}
    return above


def _allowed(pair, children, above, rules: str) -> bool:
    (u, su), (w, sw) = pair
    if rules == "any-edge" or u == w:
        return True
    if u in above[w]:
        top, top_side = u, su
    elif w in above[u]:
        top, top_side = w, sw
    else:
        return False
    if rules == "strict":
        # the tree child of the upper vertex sits on the left
        return top_side == RIGHT and children[top][LEFT] is not None
    return True


def enumerate_graphs(g: int, k: int, rules: str = "strict") -> List[RecursionGraph]:
    """
    All recursion graphs with genus g and k labelled leaves.

    Args:
        g: genus
        k: number of leaves (the graphs compute omega_{k+1}^(g))
        rules: "strict", "any-side" or "any-edge"

    Returns:
        Duplicate-free list in a deterministic order
    """
    if rules not in RULE_SETS:
        raise ValueError(f"unknown rule set {rules!r}, expected one of {RULE_SETS}")
    if g < 0 or k < 0 or 2 * g + k < 2:
        raise ValueError(f"graphs need 2g + k >= 2, got g={g}, k={k}")
    n = 2 * g + k - 1
    graphs: List[RecursionGraph] = []
    seen = set()
    for shape in skeleton_shapes(n):
        children = _number(shape)
        above = _ancestors(children)
        free = [(v, s) for v in range(n) for s in (LEFT, RIGHT) if children[v][s] is None]
        for matched, singles in _matchings(free, g):
            if not all(_allowed(p, children, above, rules) for p in matched):
                continue
            for labels in permutations(range(1, k + 1)):
                slots: List[List[Slot]] = [[None, None] for _ in range(n)]
                for v in range(n):
                    for s in (LEFT, RIGHT):
                        if children[v][s] is not None:
                            slots[v][s] = Child(children[v][s])
                for (u, su), (w, sw) in matched:
                    slots[u][su] = Bond(w, sw)
                    slots[w][sw] = Bond(u, su)
                for (v, s), label in zip(singles, labels):
                    slots[v][s] = Leaf(label)
                graph = RecursionGraph(g, k, tuple(tuple(p) for p in slots))
                text = to_text(graph)
                if text not in seen:
                    seen.add(text)
                    graphs.append(graph)
    logger.debug(f"enumerated {len(graphs)} graphs for g={g}, k={k} ({rules})")
    return graphs


def pants_count(g: int, k: int) -> int:
    """Number of recursion graphs; equals the number of pants decompositions counted the same way."""
    return len(enumerate_graphs(g, k))


# text form

def _slot_text(graph: RecursionGraph, v: int, side: int) -> str:
    s = graph.slots[v][side]
    if isinstance(s, Child):
        return _vertex_text(graph, s.vertex)
    if isinstance(s, Leaf):
        return f"p{s.label}"
    return f"~{s.vertex}{SIDES[s.side]}"


def _vertex_text(graph: RecursionGraph, v: int) -> str:
    return f"{v}[{_slot_text(graph, v, LEFT)} {_slot_text(graph, v, RIGHT)}]"


def to_text(graph: RecursionGraph) -> str:
    """
    Bracketed notation, e.g. ``p -> 0[1[~2R ~0R] ~1R]``.

    ``v[A B]`` is vertex v with left slot A and right slot B; ``pi`` is a
    leaf and ``~wS`` an inner edge to slot S of vertex w.
    """
    return f"p -> {_vertex_text(graph, 0)}"


def mirror_classes(graphs: Sequence[RecursionGraph]) -> List[Tuple[RecursionGraph, int]]:
    """
    Group graphs related by left/right swaps at any set of vertices.

    Returns (representative, multiplicity) pairs, largest classes first.
    """
    classes: Dict[str, List[RecursionGraph]] = {}
    for graph in graphs:
        key = _canonical(graph)
        classes.setdefault(key, []).append(graph)
    out = [(members[0], len(members)) for members in classes.values()]
    out.sort(key=lambda item: (-item[1], to_text(item[0])))
    return out


def _canonical(graph: RecursionGraph) -> str:
    best = None
    for flips in product((False, True), repeat=graph.n_vertices):
        g = graph
        for v, flip in enumerate(flips):
            if flip:
                g = g.swap(v)
        text = _relabelled_text(g)
        if best is None or text < best:
            best = text
    return best


def _relabelled_text(graph: RecursionGraph) -> str:
    """to_text after renumbering vertices in preorder of the (possibly swapped) tree."""
    order: List[int] = []

    def visit(v: int) -> None:
        order.append(v)
        for s in graph.slots[v]:
            if isinstance(s, Child):
                visit(s.vertex)

    visit(0)
    index = {v: i for i, v in enumerate(order)}

    def slot(s: Slot) -> Slot:
        if isinstance(s, Child):
            return Child(index[s.vertex])
        if isinstance(s, Bond):
            return Bond(index[s.vertex], s.side)
        return s

    slots = [None] * graph.n_vertices
    for v in order:
        slots[index[v]] = tuple(slot(s) for s in graph.slots[v])
    return to_text(RecursionGraph(graph.g, graph.k, tuple(slots)))
