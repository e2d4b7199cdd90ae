"""
Graph weights by nested residues, leaves to root.

Every vertex q contributes Res_{q->a} K(parent point, q) summed over
branchpoints; its left slot sits at q and its right slot at q_bar. Leaves
and inner edges are Bergman kernels. Sub-results are partial-fraction
forms whose slots name the points they still depend on.
"""

import logging
from typing import Any, Dict, Hashable, Optional, Sequence

from exact_arith.errors import WindowExceeded
from forms import FormSeries, PoleForm
from recursion import Z, ZBAR, LocalCalculus, engine_for

from .graphs import LEFT, RIGHT, Bond, Leaf, RecursionGraph

logger = logging.getLogger(__name__)

MODES = {LEFT: Z, RIGHT: ZBAR}


def _incoming(v: int) -> Hashable:
    return ("in", v)


def _anchor(v: int, side: int) -> Hashable:
    return ("bond", v, side)


class GraphEvaluator:
    """
    Evaluates graph weights on one curve at a fixed local window.

    Args:
        curve: validated curve
        calc: residue calculus shared with the engine
    """

    def __init__(self, curve, calc: LocalCalculus):
        self.curve = curve
        self.calc = calc
        self.logger = logging.getLogger(__name__)

    def _side_factor(self, graph: RecursionGraph, v: int, side: int, ia: int,
                     below: Dict[int, PoleForm]) -> Optional[FormSeries]:
        """Series of one slot of v at branchpoint ia; None when carried by the sibling slot."""
        s = graph.slots[v][side]
        mode = MODES[side]
        if isinstance(s, Leaf):
            return self.calc.bergman(ia, mode, s.label)
        if isinstance(s, Bond):
            if graph.is_ancestor(s.vertex, v):
                return self.calc.bergman(ia, mode, _anchor(s.vertex, s.side))
            if graph.is_ancestor(v, s.vertex):
                # already a slot of the subtree below the sibling
                return None
            raise ValueError(f"inner edge {v}-{s.vertex} joins unrelated vertices; no residue order exists")
        child = below[s.vertex]
        modes = {_incoming(s.vertex): mode}
        for other in (LEFT, RIGHT):
            if _anchor(v, other) in child.slots:
                modes[_anchor(v, other)] = MODES[other]
        return self.calc.expand(child, modes, ia)

    def _vertex(self, graph: RecursionGraph, v: int, below: Dict[int, PoleForm]) -> PoleForm:
        left = graph.slots[v][LEFT]
        total: Optional[PoleForm] = None
        for ia in range(len(self.curve.branchpoints)):
            if isinstance(left, Bond) and left.vertex == v:
                bracket = FormSeries.from_series(self.calc.bergman_diagonal(ia))
            else:
                factors = [self._side_factor(graph, v, side, ia, below) for side in (LEFT, RIGHT)]
                factors = [f for f in factors if f is not None]
                bracket = factors[0]
                for f in factors[1:]:
                    bracket = bracket.tensor(f, 0)
                bracket = bracket.truncate(0)
            piece = self.calc.residue(bracket, ia, _incoming(v), graph.g)
            total = piece if total is None else total + piece
        return total

    def weight(self, graph: RecursionGraph) -> PoleForm:
        below: Dict[int, PoleForm] = {}
        for v in graph.postorder():
            below[v] = self._vertex(graph, v, below)
        root = below[0]
        form = root.relabel(tuple(0 if lab == _incoming(0) else lab for lab in root.slots))
        return form.reorder(tuple(range(graph.k + 1))).with_genus(graph.g)


def graph_weight(curve, graph: RecursionGraph, config: Optional[Dict[str, Any]] = None) -> PoleForm:
    """
    Weight of one graph as a form in (p, p_1..p_k) = slots 0..k.

    Args:
        curve: validated curve
        graph: the graph
        config: engine settings (window margin and doublings)

    Returns:
        PoleForm comparable with compute_omega(curve, g, k + 1)
    """
    engine = engine_for(curve, config)
    order = engine.window(graph.g, graph.k + 1)
    for attempt in range(engine.max_doublings + 1):
        try:
            return GraphEvaluator(curve, engine.calculus(order)).weight(graph)
        except WindowExceeded as e:
            if attempt == engine.max_doublings:
                raise
            logger.warning(f"graph weight window {order} too small: {e.message}; doubling")
            order *= 2


def graphs_weight_sum(curve, graphs: Sequence[RecursionGraph],
                      config: Optional[Dict[str, Any]] = None) -> Optional[PoleForm]:
    """Sum of graph weights in list order."""
    total: Optional[PoleForm] = None
    for graph in graphs:
        w = graph_weight(curve, graph, config)
        total = w if total is None else total + w
    return total
