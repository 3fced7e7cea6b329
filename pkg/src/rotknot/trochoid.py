"""Trochoids, their deformations, the anchor lattice, and the classifier.

A trochoid rolls a regular polygon of type (|p|, k) around a base
polygon of type (|q|, l), both sharing an anchored first edge, rotating
by the fixed turn theta at each of the |q| base vertices.  Every
non-trivial rotation-quandle coloring of D(p, q) arises this way, and
the deformation moves (shift, switch, and their composite, the
fundamental deformation) act on trochoids by simple updates of the
anchored edge.  The classifier decides when two trochoids produce
R-equivalent colorings, exactly when the parity invariant p'q' allows.
"""

from __future__ import annotations

import os
from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

from .diagram import (
    Coloring,
    build_diagram,
    shift_generic,
    switch_generic,
)
from .exactnum import (
    BudgetError,
    ContradictionError,
    Cyc,
    HALF_TURN,
    LevelError,
    Turn,
    cyc_root,
    enumerate_unit_elements,
    turn_from_json,
    turn_to_json,
    turn_to_root,
)
from .geom import (
    ORIGIN,
    Point,
    PolygonSpec,
    point_from_json,
    point_to_json,
    polygon_vertices,
    rotate,
)
from .quandle import ROT, RotElem

DEFAULT_LEVEL_CAP = 240


class TrochoidConsistencyError(RuntimeError):
    """An exact postcondition of the rolling construction failed.

    Signals a wrong convention (chirality, turning direction), never a
    data error: for valid parameters the construction provably works.
    """


def theta(m: int, k: int, n: int, l: int) -> Turn:
    """The rolling turn for a type-(m,k) polygon around a type-(n,l) one.

    Equals ((m-2k)/m - (n-2l)/n)/2 of a full turn, i.e. l/n - k/m.
    """
    return Turn(Fraction(l, n) - Fraction(k, m))


@dataclass(frozen=True)
class TrochoidSpec:
    """Parameters of a trochoid: diagram indices, polygon types, and the
    anchored first edge.

    `chirality` +1 means the polygons walk off the stored edge as given;
    -1 selects the mirror pair through the same segment, which is the
    same as re-anchoring at the far endpoint with the direction
    reversed.  `resolved()` performs that normalization; everything
    geometric is built from the resolved anchor and direction.
    """

    p: int
    q: int
    k: int
    l: int
    anchor: Point = ORIGIN
    direction: Turn = Turn(0)
    side: Fraction = Fraction(1)
    chirality: int = 1

    def __post_init__(self):
        if abs(self.p) < 2 or abs(self.q) < 2:
            raise ValueError("need |p|, |q| >= 2")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"({self.p}, {self.q}) is not coprime")
        if not 1 <= self.k <= abs(self.p) - 1:
            raise ValueError(f"k={self.k} outside [1, {abs(self.p) - 1}]")
        if not 1 <= self.l <= abs(self.q) - 1:
            raise ValueError(f"l={self.l} outside [1, {abs(self.q) - 1}]")
        side = Fraction(self.side)
        if side <= 0:
            raise ValueError("side must be positive")
        object.__setattr__(self, "side", side)
        if self.chirality not in (1, -1):
            raise ValueError("chirality must be +1 or -1")

    # -- derived quantities ---------------------------------------------------

    @property
    def abs_p(self) -> int:
        return abs(self.p)

    @property
    def abs_q(self) -> int:
        return abs(self.q)

    @property
    def sign(self) -> int:
        return 1 if self.p * self.q > 0 else -1

    @property
    def p_prime(self) -> int:
        return self.abs_p // gcd(self.abs_p, self.k)

    @property
    def q_prime(self) -> int:
        return self.abs_q // gcd(self.abs_q, self.l)

    @property
    def k_prime(self) -> int:
        return self.k // gcd(self.abs_p, self.k)

    @property
    def l_prime(self) -> int:
        return self.l // gcd(self.abs_q, self.l)

    @property
    def theta(self) -> Turn:
        return theta(self.abs_p, self.k, self.abs_q, self.l)

    @property
    def alpha(self) -> int:
        pq = self.p_prime * self.q_prime
        return pq // 2 if pq % 2 == 0 else pq

    def resolved(self) -> tuple[Point, Turn]:
        """The (anchor, direction) of the actual first edge walk."""
        if self.chirality == 1:
            return (self.anchor, self.direction)
        step = turn_to_root(self.direction) * self.side
        return (self.anchor + step, self.direction + HALF_TURN)

    @property
    def polygon_q(self) -> PolygonSpec:
        a, d = self.resolved()
        return PolygonSpec(self.abs_q, self.l, a, d, self.side)

    @property
    def polygon_p0(self) -> PolygonSpec:
        a, d = self.resolved()
        return PolygonSpec(self.abs_p, self.k, a, d, self.side)

    def canonical_key(self):
        """Exact identity of the trochoid: chirality folded into the
        resolved edge, anchor in minimal form."""
        a, d = self.resolved()
        return (
            self.p,
            self.q,
            self.k,
            self.l,
            self.side,
            d.fraction,
            a.sort_key(),
        )


def same_trochoid(a: TrochoidSpec, b: TrochoidSpec) -> bool:
    return a.canonical_key() == b.canonical_key()


def session_level(spec: TrochoidSpec) -> int:
    """The shared cyclotomic level for one trochoid's computations.

    lcm(2 p'q', |p|, |q|, 4) joined with the denominators already present
    in the spec's anchor and direction.  Capped by QT_SESSION_LEVEL_CAP.
    """
    _, d = spec.resolved()
    level = lcm(
        2 * spec.p_prime * spec.q_prime,
        spec.abs_p,
        spec.abs_q,
        4,
        spec.anchor.level,
        d.denominator,
    )
    cap = int(os.environ.get("QT_SESSION_LEVEL_CAP", DEFAULT_LEVEL_CAP))
    if level > cap:
        raise LevelError(
            f"session level {level} exceeds cap {cap} "
            "(raise QT_SESSION_LEVEL_CAP to allow)",
            required_level=level,
        )
    return level


# ---------------------------------------------------------------------------
# construction


def build_trochoid(spec: TrochoidSpec) -> list[list[Point]]:
    """The |q| rolled polygons; rows[i][j] is the vertex w_{ij}.

    Row 0 is the moving polygon on the shared edge; row i arises from
    row i-1 by the exact rotation about the base vertex v_{[i]}.  The
    shared-vertex postconditions and the labeled closure
    w_{|q|, j} = w_{0, [j - |q|]} are checked exactly.
    """
    session_level(spec)
    ap, aq = spec.abs_p, spec.abs_q
    v = polygon_vertices(spec.polygon_q)
    th = spec.theta
    rows = [polygon_vertices(spec.polygon_p0)]
    for i in range(1, aq):
        center = v[i % aq]
        rows.append([rotate(w, center, th) for w in rows[-1]])
    for i in range(aq):
        if rows[i][i % ap] != v[i % aq] or rows[i][(i + 1) % ap] != v[(i + 1) % aq]:
            raise TrochoidConsistencyError(
                f"row {i} does not touch the base polygon at vertices "
                f"{i % aq}, {(i + 1) % aq}"
            )
    closing = [rotate(w, v[0], th) for w in rows[-1]]
    for j in range(ap):
        if closing[j] != rows[0][(j - aq) % ap]:
            raise TrochoidConsistencyError("trochoid does not close up")
    return rows


def trochoid_vertices(spec: TrochoidSpec) -> list[Point]:
    """All vertices of the trochoid diagram: base polygon then all rows."""
    rows = build_trochoid(spec)
    out = list(polygon_vertices(spec.polygon_q))
    for row in rows:
        out.extend(row)
    return out


def derive_coloring(spec: TrochoidSpec) -> Coloring:
    """The rotation-quandle coloring read off the trochoid.

    The arc a_{ij} is colored by the rotation about w_{i, [i+j+1]} by the
    rolling turn theta.
    """
    rows = build_trochoid(spec)
    ap = spec.abs_p
    th = spec.theta
    d = build_diagram(spec.p, spec.q)
    colors = {
        (i, j): RotElem(rows[i][(i + j + 1) % ap], th) for (i, j) in d.rep_arcs
    }
    return Coloring(d, ROT, colors)


def _fraction_sqrt(f: Fraction) -> Fraction | None:
    from math import isqrt

    rn, rd = isqrt(f.numerator), isqrt(f.denominator)
    if rn * rn == f.numerator and rd * rd == f.denominator:
        return Fraction(rn, rd)
    return None


def recover_trochoid(c: Coloring) -> TrochoidSpec:
    """Reconstruct the trochoid from a non-trivial rotation coloring.

    The base vertices appear as the centers of the colors of the arcs
    a_{i, |p|-1}; side, direction, and (k, l) follow from the first edge
    and the common turn.  The round trip through derive_coloring is
    verified exactly before returning.
    """
    d = c.diagram
    ap, aq = d.abs_p, d.abs_q
    first = c.color(0, 0)
    if not isinstance(first, RotElem):
        raise ValueError("recovery needs a rotation-quandle coloring")
    th: Turn = first.angle
    for (i, j) in d.rep_arcs:
        if c.color(i, j).angle != th:
            raise ValueError("colors do not share one rotation angle")
    if c.is_trivial():
        raise ValueError("trivial colorings do not come from trochoids")
    v = [c.color(i, ap - 1).center for i in range(aq)]
    edge = v[1 % aq] - v[0]
    side_sq = edge.abs_sq()
    if not side_sq.is_rational():
        raise ValueError("first edge has non-rational squared length")
    side = _fraction_sqrt(side_sq.as_fraction())
    if side is None or side == 0:
        raise ValueError("first edge length is not a positive rational")
    unit = edge / side
    order = unit.is_root_of_unity()
    if order is None:
        raise ValueError("first edge direction is not a rational turn")
    expo = next(e for e in range(order) if cyc_root(order, e) == unit)
    direction = Turn(expo, order)
    # theta = l/|q| - k/|p| determines (k, l) uniquely since gcd(p,q) = 1
    t_num = th.fraction * ap * aq
    if t_num.denominator != 1:
        raise ValueError("rotation angle incompatible with the diagram size")
    t_int = t_num.numerator % (ap * aq)
    k = (-t_int * pow(aq, -1, ap)) % ap
    l = (t_int * pow(ap, -1, aq)) % aq
    if k == 0 or l == 0:
        raise ValueError("rotation angle does not match any polygon pair")
    spec = TrochoidSpec(d.p, d.q, k, l, v[0], direction, side, 1)
    if derive_coloring(spec) != c:
        raise ValueError("coloring is not consistent with any trochoid")
    return spec


# ---------------------------------------------------------------------------
# moves


def shift(spec: TrochoidSpec) -> TrochoidSpec:
    """Re-anchor at the next base vertex; the moving polygon becomes the
    next rolled copy.  Derived colorings transform by the generic shift."""
    a, d = spec.resolved()
    return TrochoidSpec(
        spec.p,
        spec.q,
        spec.k,
        spec.l,
        a + turn_to_root(d) * spec.side,
        d + Turn(spec.l, spec.abs_q),
        spec.side,
        1,
    )


def switch(spec: TrochoidSpec) -> TrochoidSpec:
    """Exchange the roles of the two polygons; lands on D(q, p).

    The new base polygon is the reversed moving polygon (type
    (|p|, |p|-k)) anchored at the far end of the shared edge; applying
    switch twice gives back the original trochoid.
    """
    a, d = spec.resolved()
    return TrochoidSpec(
        spec.q,
        spec.p,
        spec.abs_q - spec.l,
        spec.abs_p - spec.k,
        a + turn_to_root(d) * spec.side,
        d + HALF_TURN,
        spec.side,
        1,
    )


def flip_chirality(spec: TrochoidSpec) -> TrochoidSpec:
    """The mirror trochoid through the same anchored segment."""
    return TrochoidSpec(
        spec.p,
        spec.q,
        spec.k,
        spec.l,
        spec.anchor,
        spec.direction,
        spec.side,
        -spec.chirality,
    )


def fundamental_deformation(spec: TrochoidSpec) -> TrochoidSpec:
    """switch, then shift, then switch, then shift.

    Fixes the resolved anchor exactly and advances the direction by
    theta, so it acts on the whole trochoid diagram as the theta-rotation
    about the center point; its order is exactly p'q'.
    """
    return shift(switch(shift(switch(spec))))


def center_point(spec: TrochoidSpec) -> Point:
    """The fixed point of the fundamental deformation (the resolved anchor)."""
    return spec.resolved()[0]


def apply_move(spec: TrochoidSpec, move: str) -> TrochoidSpec:
    if move == "shift":
        return shift(spec)
    if move == "switch":
        return switch(spec)
    raise ValueError(f"unknown move {move!r}")


@dataclass(frozen=True)
class MoveSeq:
    """An ordered word in the moves shift and switch."""

    moves: tuple[str, ...] = ()

    def __post_init__(self):
        for m in self.moves:
            if m not in ("shift", "switch"):
                raise ValueError(f"unknown move {m!r}")

    @property
    def switch_parity(self) -> int:
        return sum(1 for m in self.moves if m == "switch") % 2

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self):
        return iter(self.moves)

    def to_json(self) -> list[str]:
        return list(self.moves)


def replay_spec(moves: MoveSeq, spec: TrochoidSpec) -> TrochoidSpec:
    out = spec
    for m in moves:
        out = apply_move(out, m)
    return out


def replay(moves: MoveSeq, c: Coloring) -> Coloring:
    """Apply the generic coloring moves in order."""
    out = c
    for m in moves:
        out = shift_generic(out) if m == "shift" else switch_generic(out)
    return out


# ---------------------------------------------------------------------------
# the anchor lattice and direction sets


@dataclass(frozen=True)
class LatticeSpec:
    """The integer span of the 2*alpha unit directions at the anchor.

    Reachable anchors of a trochoid under the moves all lie in
    base_point + side * Z[zeta_{2 alpha}] * u(base_direction).
    """

    alpha: int
    base_point: Point
    base_direction: Turn
    side: Fraction = Fraction(1)

    @property
    def level(self) -> int:
        return 2 * self.alpha


def lattice_for(spec: TrochoidSpec) -> LatticeSpec:
    a, d = spec.resolved()
    return LatticeSpec(spec.alpha, a, d, spec.side)


def lattice_generators(lat: LatticeSpec) -> list[Cyc]:
    """The 2*alpha unit vectors v_sigma at angles base_direction + sigma/(2 alpha)."""
    u = turn_to_root(lat.base_direction)
    return [u * cyc_root(lat.level, s) for s in range(lat.level)]


def _lattice_coordinate(lat: LatticeSpec, w: Point) -> Cyc:
    u = turn_to_root(lat.base_direction)
    return (w - lat.base_point) * u.conj() / lat.side


def lattice_contains(lat: LatticeSpec, w: Point) -> bool:
    """Whether w = base + side * (integral element) * u(base_direction)."""
    x = _lattice_coordinate(lat, w)
    if not x.is_integral():
        return False
    min_level, _ = x.min_form()
    return lat.level % min_level == 0


def unit_neighbors(
    lat: LatticeSpec, w: Point, *, verify: bool = False, bound: int = 2
) -> list[Point]:
    """The lattice points at distance `side` from w: exactly w + side*v_sigma.

    With verify=True the claim is re-established by brute force: an
    exhaustive coefficient scan around the unit circle finds exactly the
    2*alpha displacement vectors and nothing else.
    """
    if not lattice_contains(lat, w):
        raise ValueError("point is not in the lattice")
    gens = lattice_generators(lat)
    if verify:
        units = enumerate_unit_elements(lat.level, bound)
        expect = {cyc_root(lat.level, s) for s in range(lat.level)}
        if set(units) != expect or len(units) != lat.level:
            raise ContradictionError(
                "unit scan disagrees with the 2*alpha neighbor claim"
            )
    return [w + lat.side * g for g in gens]


def v_sets_sigma_tau(spec: TrochoidSpec, sigma: int = 0) -> tuple[frozenset[int], frozenset[int]]:
    """Direction indices reachable from sigma, and from its switch-partner tau.

    Both sets have exactly p'q' elements; for even p'q' they coincide
    with the full index set, for odd p'q' they are the two parity
    classes, disjoint with union everything.
    """
    a2 = 2 * spec.alpha
    pq = spec.p_prime * spec.q_prime
    beta = (Fraction(a2) * spec.theta.fraction) % a2
    assert beta.denominator == 1
    beta = int(beta)
    e_step = (a2 // spec.q_prime) * spec.l_prime
    tau = (sigma + (spec.q_prime - 1) * e_step + spec.alpha) % a2
    v_sigma = frozenset((sigma + r * beta) % a2 for r in range(pq))
    v_tau = frozenset((tau + r * beta) % a2 for r in range(pq))
    return v_sigma, v_tau


# ---------------------------------------------------------------------------
# orbit search and classification


def _bfs_key(spec: TrochoidSpec, level: int):
    a, d = spec.resolved()
    return (spec.p, spec.q, spec.k, spec.l, d.fraction, a.lift(level).coeffs)


def _in_region(spec: TrochoidSpec, region: tuple[float, float, float, float] | None) -> bool:
    if region is None:
        return True
    z = spec.resolved()[0].embed()
    x0, x1, y0, y1 = region
    eps = 1e-9
    return x0 - eps <= z.real <= x1 + eps and y0 - eps <= z.imag <= y1 + eps


def orbit_bfs(
    spec: TrochoidSpec,
    max_moves: int,
    region: tuple[float, float, float, float] | None = None,
    *,
    node_budget: int = 100_000,
) -> list[tuple[TrochoidSpec, MoveSeq]]:
    """Breadth-first closure of a trochoid under shift and switch.

    Expands every state (both diagram sides) whose resolved anchor stays
    inside `region`, deduplicating exactly, and returns the states that
    live on the original diagram (even switch count), each with one
    shortest move word, sorted canonically.
    """
    base_level = session_level(spec)
    visited: dict = {_bfs_key(spec, base_level): (spec, MoveSeq())}
    queue = deque([(spec, ())])
    while queue:
        cur, word = queue.popleft()
        if len(word) >= max_moves:
            continue
        for name in ("shift", "switch"):
            nxt = apply_move(cur, name)
            key = _bfs_key(nxt, base_level)
            if key in visited:
                continue
            if not _in_region(nxt, region):
                continue
            if len(visited) >= node_budget:
                raise BudgetError(
                    f"orbit search exceeded {node_budget} states "
                    f"(frontier size {len(queue)})"
                )
            seq = word + (name,)
            visited[key] = (nxt, MoveSeq(seq))
            queue.append((nxt, seq))
    same_side = [
        (s, mv)
        for (s, mv) in visited.values()
        if (s.p, s.q) == (spec.p, spec.q)
    ]
    same_side.sort(key=lambda pair: pair[0].canonical_key())
    return same_side


KL_MISMATCH = "KLMismatch"
SIDE_MISMATCH = "SideLengthMismatch"
LATTICE_MISMATCH = "LatticeMismatch"


@dataclass(frozen=True)
class ClassificationResult:
    """Verdict of the R-equivalence test for two trochoid colorings."""

    verdict: str  # "Equivalent" | "NotEquivalent" | "Undetermined"
    witness: MoveSeq | None = None
    reason: str | None = None
    note: str = ""

    def to_json(self) -> dict:
        out: dict = {"verdict": self.verdict}
        if self.witness is not None:
            out["witness"] = self.witness.to_json()
        if self.reason is not None:
            out["reason"] = self.reason
        if self.note:
            out["note"] = self.note
        return out


def _search_witness(
    a: TrochoidSpec,
    b: TrochoidSpec,
    attempts: list[tuple[int, float, int]],
) -> MoveSeq | None:
    """Escalating bounded search for a move word carrying a to b."""
    level = lcm(session_level(a), session_level(b))
    target = _bfs_key(b, level)
    za = a.resolved()[0].embed()
    zb = b.resolved()[0].embed()
    for max_moves, pad, budget in attempts:
        margin = pad * float(a.side)
        region = (
            min(za.real, zb.real) - margin,
            max(za.real, zb.real) + margin,
            min(za.imag, zb.imag) - margin,
            max(za.imag, zb.imag) + margin,
        )
        visited: dict = {_bfs_key(a, level): ()}
        if _bfs_key(a, level) == target:
            return MoveSeq()
        queue = deque([(a, ())])
        exhausted = False
        while queue:
            cur, word = queue.popleft()
            if len(word) >= max_moves:
                continue
            for name in ("shift", "switch"):
                nxt = apply_move(cur, name)
                key = _bfs_key(nxt, level)
                if key == target:
                    return MoveSeq(word + (name,))
                if key in visited or not _in_region(nxt, region):
                    continue
                if len(visited) >= budget:
                    exhausted = True
                    queue.clear()
                    break
                visited[key] = None
                queue.append((nxt, word + (name,)))
            if exhausted:
                break
    return None


def classify(
    a: TrochoidSpec, b: TrochoidSpec, *, verify_witness: bool = True
) -> ClassificationResult:
    """Decide whether the colorings of a and b are R-equivalent.

    Necessary conditions first: same (k, l) and same side length.  When
    p'q' is even the anchor-lattice and direction test decides the
    question, and an Equivalent verdict always carries a move word that
    is replayed against the actual colorings before being returned.
    When p'q' is odd only a bounded search is attempted; failure to find
    a word is reported as Undetermined, never as NotEquivalent.
    """
    if (a.p, a.q) != (b.p, b.q):
        raise ValueError("classification needs two colorings of one diagram")
    if (a.k, a.l) != (b.k, b.l):
        return ClassificationResult("NotEquivalent", reason=KL_MISMATCH)
    if a.side != b.side:
        return ClassificationResult("NotEquivalent", reason=SIDE_MISMATCH)

    pq = a.p_prime * a.q_prime
    lat = lattice_for(a)
    anchor_b, dir_b = b.resolved()
    dir_diff = (dir_b - lat.base_direction).fraction * lat.level
    lattice_ok = lattice_contains(lat, anchor_b) and dir_diff.denominator == 1

    if pq % 2 == 0:
        if not lattice_ok:
            return ClassificationResult("NotEquivalent", reason=LATTICE_MISMATCH)
        witness = _search_witness(
            a,
            b,
            [
                (4, 2.5, 3_000),
                (2 * pq, 3.5, 30_000),
                (6 * pq, 5.0, 150_000),
            ],
        )
        if witness is None:
            raise BudgetError(
                "trochoids are equivalent but the witness search exhausted "
                "its budget; raise the search limits"
            )
        if verify_witness:
            got = replay(witness, derive_coloring(a))
            if got != derive_coloring(b):
                raise ContradictionError("witness replay failed")
        return ClassificationResult("Equivalent", witness=witness)

    witness = _search_witness(a, b, [(4, 2.5, 2_000), (12, 3.0, 10_000)])
    if witness is not None:
        if verify_witness:
            got = replay(witness, derive_coloring(a))
            if got != derive_coloring(b):
                raise ContradictionError("witness replay failed")
        return ClassificationResult("Equivalent", witness=witness)
    v_sigma, v_tau = v_sets_sigma_tau(a)
    note = (
        f"p'q' = {pq} is odd: bounded search found no move word; "
        "the theory leaves this case open. "
        f"Direction classes: V_sigma={sorted(v_sigma)}, V_tau={sorted(v_tau)}"
    )
    return ClassificationResult("Undetermined", note=note)


# ---------------------------------------------------------------------------
# serialization


def spec_to_json(spec: TrochoidSpec) -> dict:
    return {
        "p": spec.p,
        "q": spec.q,
        "k": spec.k,
        "l": spec.l,
        "anchor": point_to_json(spec.anchor),
        "direction": turn_to_json(spec.direction),
        "chirality": spec.chirality,
        "side": str(spec.side),
    }


def spec_from_json(data: dict) -> TrochoidSpec:
    return TrochoidSpec(
        int(data["p"]),
        int(data["q"]),
        int(data["k"]),
        int(data["l"]),
        point_from_json(data["anchor"]),
        turn_from_json(data["direction"]),
        Fraction(data.get("side", 1)),
        int(data.get("chirality", 1)),
    )
