"""Torus-knot diagrams, colorings, cocycle weights, and generic moves.

The diagram D(p, q) is realized as the closure of the |p|-strand braid
(sigma_1 ... sigma_{|p|-1})^{|q|}: arcs carry labels a_{ij} for
0 <= i < |q|, 0 <= j < |p|, with a_{i0} and a_{[i+1], |p|-1} marking the
same arc.  Row i contributes |p|-1 crossings, all of sign +1 when
pq > 0 and -1 otherwise; in each of them the long arc a_{i0} passes
over.  The incidence below is the one validated by trochoid-derived
colorings and by the dihedral coloring counts of the trefoil.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from math import gcd

from .exactnum import BudgetError
from .geom import AREA_ZERO, AreaValue, Point, PolygonSpec, polygon_area
from .quandle import RotElem, cocycle_phi, elem_from_json, elem_to_json

# an arc label (i, j); representative labels have 0 <= j <= |p|-2
Arc = tuple[int, int]


@dataclass(frozen=True)
class Crossing:
    """One crossing of D(p, q).

    The coloring condition is color(arc_xy) = color(arc_x) * color(arc_over)
    regardless of sign; the sign only decides which of arc_x / arc_xy is
    the incoming under-arc.  Weights read the (arc_x, arc_over) slots.
    """

    row: int
    t: int
    arc_x: Arc
    arc_over: Arc
    arc_xy: Arc
    sign: int

    @property
    def under_in(self) -> Arc:
        return self.arc_x if self.sign > 0 else self.arc_xy

    @property
    def under_out(self) -> Arc:
        return self.arc_xy if self.sign > 0 else self.arc_x

    @property
    def over(self) -> Arc:
        return self.arc_over


@dataclass(frozen=True)
class TorusDiagram:
    p: int
    q: int

    def __post_init__(self):
        if abs(self.p) < 2 or abs(self.q) < 2:
            raise ValueError("need |p|, |q| >= 2")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not coprime")

    @property
    def abs_p(self) -> int:
        return abs(self.p)

    @property
    def abs_q(self) -> int:
        return abs(self.q)

    @property
    def sign(self) -> int:
        return 1 if self.p * self.q > 0 else -1

    def rep(self, i: int, j: int) -> Arc:
        """Representative label of the arc a_{ij}."""
        i %= self.abs_q
        j %= self.abs_p
        if j == self.abs_p - 1:
            return ((i - 1) % self.abs_q, 0)
        return (i, j)

    @property
    def rep_arcs(self) -> list[Arc]:
        return [
            (i, j) for i in range(self.abs_q) for j in range(self.abs_p - 1)
        ]

    @property
    def crossings(self) -> list[Crossing]:
        out = []
        for i in range(self.abs_q):
            for t in range(1, self.abs_p):
                out.append(
                    Crossing(
                        row=i,
                        t=t,
                        arc_x=self.rep(i, t),
                        arc_over=self.rep(i, 0),
                        arc_xy=self.rep(i + 1, t - 1),
                        sign=self.sign,
                    )
                )
        return out


@lru_cache(maxsize=None)
def build_diagram(p: int, q: int) -> TorusDiagram:
    return TorusDiagram(p, q)


class Coloring:
    """An assignment of quandle elements to the arcs of a diagram.

    Stored on representative labels; `color` resolves any a_{ij}.
    Equality and hashing use the representative assignment in arc order.
    """

    __slots__ = ("diagram", "quandle", "_colors", "_key")

    def __init__(self, diagram: TorusDiagram, quandle, colors: dict[Arc, object]):
        reps = diagram.rep_arcs
        missing = [a for a in reps if a not in colors]
        if missing:
            raise ValueError(f"missing colors for arcs {missing}")
        self.diagram = diagram
        self.quandle = quandle
        self._colors = {a: colors[a] for a in reps}
        self._key = (diagram.p, diagram.q, tuple(self._colors[a] for a in reps))

    def color(self, i: int, j: int):
        return self._colors[self.diagram.rep(i, j)]

    def color_of(self, arc: Arc):
        return self._colors[self.diagram.rep(*arc)]

    @property
    def colors(self) -> dict[Arc, object]:
        return dict(self._colors)

    def is_trivial(self) -> bool:
        vals = list(self._colors.values())
        return all(v == vals[0] for v in vals[1:])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Coloring):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self) -> str:
        return f"Coloring(D({self.diagram.p},{self.diagram.q}), {len(self._colors)} arcs)"


def trivial_coloring(diagram: TorusDiagram, quandle, element) -> Coloring:
    return Coloring(diagram, quandle, {a: element for a in diagram.rep_arcs})


@dataclass(frozen=True)
class ValidationReport:
    ok: bool
    crossing: Crossing | None = None
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate_coloring(c: Coloring) -> ValidationReport:
    """Check the coloring condition at every crossing, exactly."""
    q = c.quandle
    for cr in c.diagram.crossings:
        want = q.op(c.color_of(cr.arc_x), c.color_of(cr.arc_over))
        got = c.color_of(cr.arc_xy)
        if got != want:
            return ValidationReport(
                False,
                cr,
                f"crossing (row {cr.row}, t {cr.t}): color{cr.arc_xy} differs "
                f"from color{cr.arc_x} * color{cr.arc_over}",
            )
    return ValidationReport(True)


def enumerate_colorings_finite(
    quandle, diagram: TorusDiagram, budget: int = 1_000_000
) -> list[Coloring]:
    """All valid colorings by a finite quandle, deterministically ordered.

    The colors of a_{00}, ..., a_{0,|p|-1} determine everything else by
    propagating the crossing condition row by row, so the search space
    is |X|^{|p|}, not |X|^{arc count}.
    """
    elements = quandle.elements()
    ap, aq = diagram.abs_p, diagram.abs_q
    seeds = [diagram.rep(0, j) for j in range(ap)]
    if len(elements) ** len(seeds) > budget:
        raise BudgetError(
            f"{len(elements)}^{len(seeds)} seed assignments exceed budget {budget}"
        )
    index = {x: n for n, x in enumerate(elements)}
    reps = diagram.rep_arcs
    found = []
    for combo in itertools.product(elements, repeat=len(seeds)):
        colors = dict(zip(seeds, combo))
        ok = True
        for i in range(aq):
            over = colors[(i, 0)]
            for t in range(1, ap):
                target = diagram.rep(i + 1, t - 1)
                val = quandle.op(colors[diagram.rep(i, t)], over)
                if target in colors:
                    if colors[target] != val:
                        ok = False
                        break
                else:
                    colors[target] = val
            if not ok:
                break
        if ok:
            found.append(Coloring(diagram, quandle, colors))
    found.sort(key=lambda c: tuple(index[c.color_of(a)] for a in reps))
    return found


# ---------------------------------------------------------------------------
# cocycle weights


def total_weight(c: Coloring, o: Point) -> AreaValue:
    """Sum of signed cocycle values over the crossings of the diagram.

    Each crossing contributes sign * Phi_o(color(arc_x), color(arc_over));
    the total does not depend on o.
    """
    acc = AREA_ZERO
    for cr in c.diagram.crossings:
        x: RotElem = c.color_of(cr.arc_x)
        y: RotElem = c.color_of(cr.arc_over)
        term = cocycle_phi(o, x, y)
        if cr.sign < 0:
            term = -term
        acc = acc + term
    return acc


def closed_form_weight(
    p: int, q: int, k: int, l: int, Q: PolygonSpec, P0: PolygonSpec
) -> AreaValue:
    """sign * (S(P0) * |q| - S(Q) * |p|) from the two polygon areas alone."""
    if Q.m != abs(q) or Q.k != l:
        raise ValueError(f"base polygon has type ({Q.m},{Q.k}), want ({abs(q)},{l})")
    if P0.m != abs(p) or P0.k != k:
        raise ValueError(
            f"moving polygon has type ({P0.m},{P0.k}), want ({abs(p)},{k})"
        )
    if (Q.anchor, Q.direction, Q.side) != (P0.anchor, P0.direction, P0.side):
        raise ValueError("polygons do not share the anchored first edge")
    sign = 1 if p * q > 0 else -1
    val = polygon_area(P0) * abs(q) - polygon_area(Q) * abs(p)
    return val if sign > 0 else -val


# ---------------------------------------------------------------------------
# generic moves (any quandle)


def shift_generic(c: Coloring) -> Coloring:
    """The row-rotation relabeling induced by the planar isotopy that
    slides the braid closure one over-strand forward: the new color of
    a_{ij} is the old color of a_{[i+1], j}."""
    d = c.diagram
    new_colors = {(i, j): c.color(i + 1, j) for (i, j) in d.rep_arcs}
    return Coloring(d, c.quandle, new_colors)


def switch_generic(c: Coloring) -> Coloring:
    """The inside-out move carrying a coloring of D(p,q) to one of D(q,p).

    With Y_s = old color of a_{s, |p|-1}, the new color of a'_{it} is

        Y'(i, t) = C(a_{[-i-t], |p|-1}) * Y_{[1-i]} * Y_{[2-i]} * ... * Y_{[0]}

    (operation applied left to right, i factors, indices mod |q|).  The
    identification a'_{i0} = a'_{[i+1], |q(new)|-1} is respected because
    the extra factor acts on itself (x * x = x).
    """
    d = c.diagram
    ap, aq = d.abs_p, d.abs_q
    nd = build_diagram(d.q, d.p)
    op = c.quandle.op
    y = [c.color(s, ap - 1) for s in range(aq)]
    new_colors = {}
    for (i, t) in nd.rep_arcs:
        val = c.color(-i - t, ap - 1)
        for s in range(1 - i, 1):
            val = op(val, y[s % aq])
        new_colors[(i, t)] = val
    return Coloring(nd, c.quandle, new_colors)


def coloring_orbit(c: Coloring, node_budget: int = 10_000) -> list[Coloring]:
    """Closure of a coloring under shift and switch, in discovery order.

    Explores both diagram sides but returns only the colorings living on
    the starting diagram, i.e. those reached by an even number of
    switches.  Finite for finite quandles; guarded by node_budget.
    """
    start_side = (c.diagram.p, c.diagram.q)
    seen: dict[Coloring, None] = {c: None}
    queue = deque([c])
    while queue:
        cur = queue.popleft()
        for move in (shift_generic, switch_generic):
            nxt = move(cur)
            if nxt in seen:
                continue
            if len(seen) >= node_budget:
                raise BudgetError(f"coloring orbit exceeded {node_budget} states")
            seen[nxt] = None
            queue.append(nxt)
    return [x for x in seen if (x.diagram.p, x.diagram.q) == start_side]


# ---------------------------------------------------------------------------
# serialization


def coloring_to_json(c: Coloring) -> dict:
    return {
        "p": c.diagram.p,
        "q": c.diagram.q,
        "colors": {
            f"a_{i}_{j}": elem_to_json(c.color(i, j)) for (i, j) in c.diagram.rep_arcs
        },
    }


def coloring_from_json(data: dict, quandle) -> Coloring:
    d = build_diagram(int(data["p"]), int(data["q"]))
    colors = {}
    for key, val in data["colors"].items():
        _, i, j = key.split("_")
        colors[(int(i), int(j))] = elem_from_json(val)
    return Coloring(d, quandle, colors)
