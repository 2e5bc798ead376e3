"""Oriented link diagrams from PD codes and braid words.

PD conventions
--------------
A crossing is written ``X(a,b,c,d)``: the four edge labels meeting at the
crossing, listed counterclockwise starting from the *incoming under-strand*.
So ``a -> c`` is the under-strand and ``b, d`` carry the over-strand.  Slot
positions 0..3 refer to this order.

Orientation of every component that passes under somewhere is forced by the
slot-0 rule.  A component that never passes under is oriented so that its
labels increase along it.

Sign rule (KnotTheory/KnotInfo compatible): the crossing is positive when the
over-strand runs from slot 3 to slot 1 (``b == d + 1`` for consecutive
labels), negative when it runs from slot 1 to slot 3.  With this rule the
closure of the braid ``BR[2; 1,1,1]`` is the positive (right-handed) trefoil.

A crossingless unknotted component is written ``U``; the plain unknot is the
one-term input ``U``.  Terms may be mixed, e.g. ``X(...),X(...),U``.
"""
import re
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import (DisconnectedDiagram, LetterOutOfRange, MalformedNotation,
                     NonPlanarOrInconsistent, UnknownComponent)
from .intmat import bareiss_det


@dataclass(frozen=True)
class Crossing:
    over: int
    under_in: int
    under_out: int
    sign: int


@dataclass(frozen=True)
class LinkDiagram:
    pd: tuple
    free_loops: int
    crossings: tuple
    arcs: tuple                      # (arc id, component id)
    n_components: int
    source_notation: str = field(default="", compare=False)
    over_in_slot: tuple = field(default=(), compare=False, repr=False)
    arc_edges: tuple = field(default=(), compare=False, repr=False)
    crossing_components: tuple = field(default=(), compare=False, repr=False)
    component_edges: tuple = field(default=(), compare=False, repr=False)

    @property
    def n_crossings(self):
        return len(self.pd)

    @property
    def n_arcs(self):
        return len(self.arcs)

    def arc_component(self, arc):
        return self.arcs[arc][1]

    def component_arcs(self, component):
        return [a for a, c in self.arcs if c == component]


@dataclass(frozen=True)
class GoeritzData:
    matrix: tuple          # reduced Goeritz matrix, rows as tuples
    correction: int        # Gordon-Litherland correction mu
    n_white: int = 0

    @property
    def determinant(self):
        return bareiss_det([list(r) for r in self.matrix])


_INT = r"\s*(\d+)\s*"
_TERM = r"(?:X[\(\[]" + ",".join([_INT] * 4) + r"[\)\]]|U)"
_TERM_RE = re.compile(_TERM)
_PD_RE = re.compile(r"^\s*" + _TERM + r"(?:\s*,\s*" + _TERM + r")*\s*$")
_BRAID_RE = re.compile(r"^\s*BR\[\s*(-?\d+)\s*;\s*(.*?)\s*\]\s*$", re.S)


def parse(text):
    """Dispatch on notation: braid words start with ``BR[``, anything else is PD."""
    if text.strip().startswith("BR"):
        return parse_braid(text)
    return parse_pd(text)


def parse_pd(text):
    source = text
    body = text.strip()
    if body.upper().startswith("PD:"):
        body = body[3:]
    if not body.strip():
        raise MalformedNotation("empty PD notation")
    if not _PD_RE.match(body):
        raise MalformedNotation(f"not a PD code: {text!r}")
    pd = []
    free = 0
    for m in _TERM_RE.finditer(body):
        if m.group(0) == "U":
            free += 1
        else:
            pd.append(tuple(int(g) for g in m.groups()))
    return _build(tuple(pd), free, source)


def parse_braid(text):
    m = _BRAID_RE.match(text)
    if not m:
        raise MalformedNotation(f"not a braid word: {text!r}")
    strands = int(m.group(1))
    if strands < 1:
        raise MalformedNotation("braid needs at least one strand")
    letters = []
    if m.group(2):
        for tok in m.group(2).split(","):
            tok = tok.strip()
            if not re.fullmatch(r"-?\d+", tok):
                raise MalformedNotation(f"bad braid letter {tok!r}")
            w = int(tok)
            if w == 0:
                raise MalformedNotation("braid letter 0")
            if abs(w) > strands - 1:
                raise LetterOutOfRange(f"letter {w} needs at least {abs(w) + 1} strands")
            letters.append(w)
    pd, free = _braid_closure_pd(strands, letters)
    return _build(canonical_relabel(pd), free, text)


def render_pd(d):
    """Canonical text form; ``parse_pd(render_pd(d)) == d``."""
    terms = ["X(%d,%d,%d,%d)" % x for x in d.pd] + ["U"] * d.free_loops
    return ",".join(terms)


def _braid_closure_pd(strands, letters):
    parent = {}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    counter = iter(range(1, 10 ** 9))
    bottom = [next(counter) for _ in range(strands)]
    for b in bottom:
        parent[b] = b
    cur = list(bottom)
    raw = []
    for w in letters:
        i = abs(w) - 1
        a, b = cur[i], cur[i + 1]
        c, d = next(counter), next(counter)
        parent[c], parent[d] = c, d
        # strands run upward; slot 0 is the incoming under-strand
        if w > 0:
            raw.append((b, d, c, a))   # left strand passes over
        else:
            raw.append((a, b, d, c))   # right strand passes over
        cur[i], cur[i + 1] = c, d
    for top, bot in zip(cur, bottom):
        parent[find(top)] = find(bot)
    pd = tuple(tuple(find(x) for x in x4) for x4 in raw)
    used = {find(x) for x4 in raw for x in x4}
    free = len({find(b) for b in bottom} - used)
    return pd, free


def _slots(pd):
    where = {}
    for c, x4 in enumerate(pd):
        for p, label in enumerate(x4):
            where.setdefault(label, []).append((c, p))
    return where


def _validate_labels(pd):
    where = _slots(pd)
    n = len(pd)
    if sorted(where) != list(range(1, 2 * n + 1)) or any(len(v) != 2 for v in where.values()):
        raise NonPlanarOrInconsistent("PD labels must be 1..2n, each used exactly twice")
    return where


def _walk(pd, where, label, head):
    """Edges of one component starting at ``label`` whose head slot is ``head``."""
    def other(lab, slot):
        a, b = where[lab]
        return b if a == slot else a

    out = []
    lab, h = label, head
    while True:
        out.append((lab, h))
        c, p = h
        lab = pd[c][(p + 2) % 4]
        h = other(lab, (c, (p + 2) % 4))
        if lab == label:
            return out, h == head


def _orient(pd, where):
    """Return (heads, components): head slot of every edge, oriented edge cycles."""
    def other(lab, slot):
        a, b = where[lab]
        return b if a == slot else a

    seen = set()
    heads = {}
    components = []
    for start in sorted(where):
        if start in seen:
            continue
        steps, _ = _walk(pd, where, start, where[start][0])
        labels = {lab for lab, _ in steps}
        seen |= labels
        head = None
        for lab in sorted(labels):
            for (c, p) in where[lab]:
                if p == 0:
                    head = (lab, (c, p))
                elif p == 2:
                    head = (lab, other(lab, (c, p)))
                if head:
                    break
            if head:
                break
        if head is None:
            # never passes under: orient so labels increase
            lab = min(labels)
            options = []
            for h in where[lab]:
                c, p = h
                options.append((pd[c][(p + 2) % 4], h))
            head = (lab, min(options)[1])
        steps, closed = _walk(pd, where, *head)
        if not closed or {lab for lab, _ in steps} != labels:
            raise NonPlanarOrInconsistent("broken component cycle")
        for lab, h in steps:
            if h[1] == 2:
                raise NonPlanarOrInconsistent(
                    f"under-strand enters crossing {h[0] + 1} at its outgoing slot")
            heads[lab] = h
        k = [lab for lab, _ in steps].index(min(labels))
        steps = steps[k:] + steps[:k]
        components.append([lab for lab, _ in steps])
    return heads, components


def _build(pd, free_loops, source):
    where = _validate_labels(pd) if pd else {}
    heads, comp_cycles = _orient(pd, where) if pd else ({}, [])
    # canonical component order: by smallest label
    order = sorted(range(len(comp_cycles)), key=lambda i: min(comp_cycles[i]))
    comp_cycles = [comp_cycles[i] for i in order]
    edge_comp = {}
    for ci, cyc in enumerate(comp_cycles):
        for lab in cyc:
            edge_comp[lab] = ci

    over_in = []
    for c, x4 in enumerate(pd):
        h1 = heads[x4[1]] == (c, 1)
        h3 = heads[x4[3]] == (c, 3)
        if h1 == h3:
            raise NonPlanarOrInconsistent(f"over-strand at crossing {c + 1} is not oriented through")
        if heads[x4[0]] != (c, 0):
            raise NonPlanarOrInconsistent(f"slot 0 of crossing {c + 1} is not incoming")
        over_in.append(1 if h1 else 3)

    # arcs: split each component where it passes under
    arcs_edges = []
    for cyc in comp_cycles:
        # rotate so the cycle starts just after an under-pass, if any
        breaks = [k for k, lab in enumerate(cyc) if heads[lab][1] == 0]
        if not breaks:
            arcs_edges.append(list(cyc))
            continue
        k0 = breaks[0] + 1
        rot = cyc[k0:] + cyc[:k0]
        current = []
        for lab in rot:
            current.append(lab)
            if heads[lab][1] == 0:
                arcs_edges.append(current)
                current = []
    arcs_edges.sort(key=min)
    edge_arc = {}
    for a, edges in enumerate(arcs_edges):
        for lab in edges:
            edge_arc[lab] = a
    arcs = [(a, edge_comp[edges[0]]) for a, edges in enumerate(arcs_edges)]
    n_pd_comps = len(comp_cycles)
    for k in range(free_loops):
        arcs.append((len(arcs), n_pd_comps + k))
        arcs_edges.append([])

    crossings = []
    cross_comps = []
    for c, x4 in enumerate(pd):
        over = edge_arc[x4[1]]
        if edge_arc[x4[3]] != over:
            raise NonPlanarOrInconsistent(f"over-strand broken at crossing {c + 1}")
        sign = 1 if over_in[c] == 3 else -1
        crossings.append(Crossing(over, edge_arc[x4[0]], edge_arc[x4[2]], sign))
        cross_comps.append((edge_comp[x4[1]], edge_comp[x4[0]]))

    d = LinkDiagram(
        pd=tuple(pd), free_loops=free_loops, crossings=tuple(crossings),
        arcs=tuple(arcs), n_components=n_pd_comps + free_loops,
        source_notation=source, over_in_slot=tuple(over_in),
        arc_edges=tuple(tuple(e) for e in arcs_edges),
        crossing_components=tuple(cross_comps),
        component_edges=tuple(tuple(c) for c in comp_cycles),
    )
    if pd:
        _faces(d.pd)  # planarity check
    return d


def canonical_relabel(pd):
    """Relabel edges 1..2n so labels increase along each oriented component."""
    if not pd:
        return pd
    # build with provisional consecutive labels so validation passes
    labels = sorted({x for x4 in pd for x in x4})
    provisional = {lab: i + 1 for i, lab in enumerate(labels)}
    pd1 = tuple(tuple(provisional[x] for x in x4) for x4 in pd)
    where = _validate_labels(pd1)
    _, cycles = _orient(pd1, where)
    cycles.sort(key=min)
    new = {}
    for cyc in cycles:
        k = cyc.index(min(cyc))
        for lab in cyc[k:] + cyc[:k]:
            new[lab] = len(new) + 1
    return tuple(tuple(new[x] for x in x4) for x4 in pd1)


def mirror(d):
    """Mirror image: swap over and under at every crossing."""
    pd = []
    for c, (a, b, cc, dd) in enumerate(d.pd):
        # the old over-strand becomes the under-strand; list from its incoming slot
        if d.over_in_slot[c] == 3:
            pd.append((dd, a, b, cc))
        else:
            pd.append((b, cc, dd, a))
    return _build(tuple(pd), d.free_loops, "mirror(" + d.source_notation + ")")


def reverse_component(d, component):
    """Reverse the orientation of one component."""
    if not 0 <= component < d.n_components:
        raise UnknownComponent(f"no component {component}")
    if component >= len(d.component_edges):
        return d  # a free loop: orientation is invisible
    cycle = d.component_edges[component]
    flip = set(cycle)
    # reuse the label set in reverse so labels still increase along the new direction
    relabel = dict(zip(cycle, [cycle[0]] + list(cycle[:0:-1])))
    pd = []
    for x4 in d.pd:
        if x4[0] in flip:
            x4 = (x4[2], x4[3], x4[0], x4[1])
        pd.append(tuple(relabel.get(x, x) for x in x4))
    return _build(tuple(pd), d.free_loops, "reverse(" + d.source_notation + ")")


def linking_number(d, c1, c2):
    for c in (c1, c2):
        if not 0 <= c < d.n_components:
            raise UnknownComponent(f"no component {c}")
    if c1 == c2:
        raise UnknownComponent("linking number needs two distinct components")
    total = sum(x.sign for x, comps in zip(d.crossings, d.crossing_components)
                if set(comps) == {c1, c2})
    assert total % 2 == 0
    return total // 2


# ---------------------------------------------------------------------------
# faces, checkerboard colouring and the Goeritz form

def _faces(pd):
    """Faces of the planar diagram as lists of corners (crossing, k).

    Corner k of a crossing sits between slots k and k+1.
    """
    where = _slots(pd)

    def other(slot):
        c, p = slot
        a, b = where[pd[c][p]]
        return b if a == slot else a

    seen = set()
    faces = []
    for c in range(len(pd)):
        for p in range(4):
            if (c, p) in seen:
                continue
            face = []
            slot = (c, p)
            while slot not in seen:
                seen.add(slot)
                face.append(slot)
                c2, p2 = other(slot)
                slot = (c2, (p2 + 1) % 4)
            faces.append(face)
    # faces were traced as corner cycles; corner of each step is (c2, p2)
    corner_faces = []
    for face in faces:
        corners = []
        for slot in face:
            c2, p2 = other(slot)
            corners.append((c2, p2))
        corner_faces.append(corners)
    pieces = _pieces(pd)
    expected = sum(len(piece) + 2 for piece in pieces)
    if len(corner_faces) != expected:
        raise NonPlanarOrInconsistent(
            f"PD code is not planar ({len(corner_faces)} faces, expected {expected})")
    return corner_faces


def _pieces(pd):
    """Crossing sets of the connected pieces of the diagram graph."""
    where = _slots(pd)
    parent = list(range(len(pd)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for (c1, _), (c2, _) in where.values():
        parent[find(c1)] = find(c2)
    groups = {}
    for c in range(len(pd)):
        groups.setdefault(find(c), []).append(c)
    return sorted(groups.values())


def goeritz(d, swap_colours=False):
    """Reduced Goeritz matrix and Gordon-Litherland correction.

    Regions are checkerboard coloured with the unbounded region white.  The
    unbounded region is taken to be the region with the most corners (ties:
    smallest incident edge label); its row and column are the ones deleted.
    At each crossing the incidence number is +1 when the white corners are
    the ones reached counterclockwise from the under-strand slots (corners 0
    and 2), -1 otherwise.  A crossing counts toward the correction when the
    oriented smoothing joins its two black corners (the black surface is not
    locally compatible with the orientation there).

    ``swap_colours`` builds the form of the other checkerboard surface; both
    give the same signature and determinant.

    Then ``signature = sign(G) - correction`` and ``det = |det G|``.
    """
    if d.n_crossings == 0 and d.free_loops <= 1:
        return GoeritzData(matrix=(), correction=0, n_white=1)
    pieces = _pieces(d.pd) if d.pd else []
    if len(pieces) + d.free_loops > 1:
        parts = [_goeritz_piece(d, piece, swap_colours) for piece in pieces]
        parts += [GoeritzData(matrix=(), correction=0, n_white=1)] * d.free_loops
        raise DisconnectedDiagram(
            f"diagram splits into {len(pieces) + d.free_loops} pieces", parts)
    return _goeritz_piece(d, pieces[0], swap_colours)


def _goeritz_piece(d, piece, swap_colours=False):
    keep = sorted(piece)
    sub = tuple(d.pd[c] for c in keep)
    slots_in = [d.over_in_slot[c] for c in keep]
    faces = _faces(sub)
    corner_face = {}
    for f, corners in enumerate(faces):
        for corner in corners:
            corner_face[corner] = f
    where = _slots(sub)

    # adjacency across edges: corners (c, p-1) and (c, p) flank the edge at slot p
    colour = {0: 0}
    stack = [0]
    while stack:
        f = stack.pop()
        for (c, k) in faces[f]:
            for p in (k, (k + 1) % 4):
                g1 = corner_face[(c, (p - 1) % 4)]
                g2 = corner_face[(c, p)]
                g = g2 if g1 == f else g1
                if g == f:
                    continue
                if g in colour:
                    if colour[g] == colour[f]:
                        raise NonPlanarOrInconsistent("diagram is not checkerboard colourable")
                else:
                    colour[g] = 1 - colour[f]
                    stack.append(g)

    def face_key(f):
        labels = {sub[c][k] for c, k in faces[f]} | {sub[c][(k + 1) % 4] for c, k in faces[f]}
        return (-len(faces[f]), min(labels))

    face_order = sorted(range(len(faces)), key=face_key)
    outer = face_order[0]
    white_colour = colour[outer] ^ int(swap_colours)
    white = [f for f in sorted(range(len(faces)), key=lambda f: face_key(f)[1])
             if colour[f] == white_colour]
    if outer in white:
        white.remove(outer)
        white = [outer] + white
    index = {f: i for i, f in enumerate(white)}
    n = len(white)
    G = [[0] * n for _ in range(n)]
    mu = 0
    for c in range(len(sub)):
        white_corners = (1, 3) if colour[corner_face[(c, 1)]] == white_colour else (0, 2)
        eta = 1 if white_corners == (0, 2) else -1
        a = index[corner_face[(c, white_corners[0])]]
        b = index[corner_face[(c, white_corners[1])]]
        if a != b:
            G[a][b] -= eta
            G[b][a] -= eta
        # oriented smoothing merges corners 1,3 for over 3->1, corners 0,2 for over 1->3
        merged = (1, 3) if slots_in[c] == 3 else (0, 2)
        if merged != white_corners:
            mu += eta
    for i in range(n):
        G[i][i] = -sum(G[i][j] for j in range(n) if j != i)
    reduced = tuple(tuple(row[1:]) for row in G[1:])
    return GoeritzData(matrix=reduced, correction=mu, n_white=n)


def inertia(M):
    """(positive, negative, zero) eigenvalue counts of a symmetric rational matrix."""
    A = [[Fraction(x) for x in row] for row in M]
    n = len(A)
    pos = neg = 0
    k = 0
    while k < n:
        pivot = next((i for i in range(k, n) if A[i][i] != 0), None)
        if pivot is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j] != 0), None)
            if pair is None:
                break
            i, j = pair
            # congruence: row/col i += row/col j makes the diagonal 2 A[i][j]
            for t in range(n):
                A[i][t] += A[j][t]
            for t in range(n):
                A[t][i] += A[t][j]
            pivot = i
        A[k], A[pivot] = A[pivot], A[k]
        for row in A:
            row[k], row[pivot] = row[pivot], row[k]
        p = A[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = A[i][k] / p
            if f:
                for j in range(k, n):
                    A[i][j] -= f * A[k][j]
        for j in range(k + 1, n):
            A[k][j] = Fraction(0)
            # keep symmetry of the trailing block
        for i in range(k + 1, n):
            A[i][k] = Fraction(0)
        k += 1
    return pos, neg, n - pos - neg


def gordon_litherland_signature(g):
    pos, neg, _ = inertia(g.matrix)
    return pos - neg - g.correction
