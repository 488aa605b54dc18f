# vim: expandtab:ts=4:sw=4
"""Kauffman polynomial of unoriented planar diagrams by skein recursion.

Crossings are PD tuples ``(a, b, c, d)``: edge labels counterclockwise,
starting at an incoming under-strand. Slots 0 and 2 are the under-strand,
slots 1 and 3 the over-strand.

* switching ``(a, b, c, d) -> (b, c, d, a)`` exchanges over and under;
* the A-smoothing joins slots (0, 1) and (2, 3), the B-smoothing (0, 3) and
  (1, 2);
* ``D(X) = D(switch X) + z (D(X_A) - D(X_B))``;
* a kink whose A-smoothing splits off a loop is worth alpha, the other kind
  alpha^-1, and a free loop is worth delta.

The recursion switches the first crossing met from below along a fixed
traversal until the diagram is descending, i.e. a stack of unknots.
"""
import json
import logging

import networkx as nx

from . import laurent
from .errors import InconsistentEdges, MalformedPD, RecursionLimit

log = logging.getLogger(__name__)

DEFAULT_RECURSION_LIMIT = 16
STRATEGIES = ("first", "last")


class SkeinParams(object):
    """Skein variables ``(alpha, z, delta)``.

    Raises
    ------
    ValueError
        If ``delta z != alpha - alpha^-1 + z``.

    """

    def __init__(self, alpha, z, delta):
        self.alpha = laurent.RingElement.coerce(alpha)
        self.z = laurent.RingElement.coerce(z)
        self.delta = laurent.RingElement.coerce(delta)
        if self.delta * self.z != self.alpha - self.alpha.inverse() + self.z:
            raise ValueError("delta * z must equal alpha - alpha^-1 + z")

    @classmethod
    def from_spec(cls, spec):
        return cls(spec.alpha, spec.z, spec.delta)


class PlanarDiagram(object):
    """An unoriented 4-valent diagram plus a number of crossingless loops.

    Parameters
    ----------
    crossings : Iterable[Tuple[int, int, int, int]]
    loops : int
        Free loops not touching any crossing.

    """

    def __init__(self, crossings, loops=0):
        self.crossings = tuple(tuple(int(e) for e in x) for x in crossings)
        self.loops = int(loops)

    def __len__(self):
        return len(self.crossings)

    def __eq__(self, other):
        return (isinstance(other, PlanarDiagram)
                and (self.crossings, self.loops) == (other.crossings, other.loops))

    def __repr__(self):
        return f"PlanarDiagram({[list(x) for x in self.crossings]}, loops={self.loops})"

    def edges(self):
        return sorted({e for x in self.crossings for e in x})

    def strand_components(self):
        """Edge sets of the closed curves through crossings."""
        return _strand_components(self.crossings)

    @property
    def components(self):
        return len(self.strand_components()) + self.loops

    def curls(self):
        """Kink counts ``(positive, negative)`` read from adjacent repeated edges."""
        positive = negative = 0
        for x in self.crossings:
            p = next((p for p in range(4) if x[p] == x[(p + 1) % 4]), None)
            if p is None:
                continue
            if p in (0, 2):
                positive += 1
            else:
                negative += 1
        return positive, negative

    def to_json(self):
        return {"crossings": [list(x) for x in self.crossings],
                "components": self.components}


def _occurrences(crossings):
    occ = {}
    for k, x in enumerate(crossings):
        for p, e in enumerate(x):
            occ.setdefault(e, []).append((k, p))
    return occ


def _strand_components(crossings):
    graph = nx.Graph()
    for x in crossings:
        graph.add_edge(x[0], x[2])
        graph.add_edge(x[1], x[3])
    return [sorted(c) for c in nx.connected_components(graph)]


def _validate(crossings):
    for k, x in enumerate(crossings):
        if len(x) != 4:
            raise MalformedPD(f"crossing {k} has {len(x)} edges, expected 4")
    for edge, slots in _occurrences(crossings).items():
        if len(slots) != 2:
            raise InconsistentEdges(f"edge {edge} appears {len(slots)} times, expected 2")


def parse_pd(source):
    """Read a PD code.

    ``source`` is JSON text or already decoded data: either a list of
    4-integer lists, or ``{"crossings": [...], "components": k}`` where
    ``components`` counts every closed curve including crossingless ones.
    An empty crossing list is one loop unless ``components`` says otherwise.

    Raises
    ------
    MalformedPD
    InconsistentEdges

    """
    if isinstance(source, str):
        try:
            source = json.loads(source)
        except ValueError as exc:
            raise MalformedPD(f"PD code is not valid JSON: {exc}")
    hint = None
    if isinstance(source, dict):
        if "crossings" not in source:
            raise MalformedPD("PD object needs a 'crossings' list")
        hint = source.get("components")
        source = source["crossings"]
    if not isinstance(source, list):
        raise MalformedPD("PD code must be a list of crossings")
    crossings = []
    for k, x in enumerate(source):
        if (not isinstance(x, list) or len(x) != 4
                or not all(isinstance(e, int) and not isinstance(e, bool) for e in x)):
            raise MalformedPD(f"crossing {k} must be a list of 4 integers, got {x!r}")
        crossings.append(tuple(x))
    _validate(crossings)
    strands = len(_strand_components(crossings))
    if hint is None:
        loops = 0 if crossings else 1
    else:
        if not isinstance(hint, int) or hint < strands:
            raise MalformedPD(f"components hint {hint!r} is below the {strands} traced curves")
        loops = hint - strands
    return PlanarDiagram(crossings, loops)


def braid_to_pd(braid):
    """PD code of the trace closure of ``braid``.

    Strand ``s`` starts on edge ``s + 1``. A positive generator on strands
    ``i, i+1`` has its under-strand entering from the right, so it reads
    ``(e_r, n_r, n_l, e_l)``; a negative one reads ``(e_l, e_r, n_r, n_l)``.
    """
    k = braid.strands
    current = list(range(1, k + 1))
    fresh = k + 1
    crossings = []
    for j in braid.generators:
        i = abs(j) - 1
        e_l, e_r = current[i], current[i + 1]
        n_l, n_r = fresh, fresh + 1
        fresh += 2
        if j > 0:
            crossings.append((e_r, n_r, n_l, e_l))
        else:
            crossings.append((e_l, e_r, n_r, n_l))
        current[i], current[i + 1] = n_l, n_r
    closing = {end: start for start, end in zip(range(1, k + 1), current) if end != start}
    crossings = [tuple(closing.get(e, e) for e in x) for x in crossings]
    loops = sum(1 for start, end in zip(range(1, k + 1), current) if end == start)
    return PlanarDiagram(crossings, loops)


def _splice(crossings, pairs):
    """Join each edge pair into one edge; a pair of equal labels closes a loop."""
    crossings = [list(x) for x in crossings]
    pending = list(pairs)
    loops = 0
    while pending:
        keep, drop = pending.pop(0)
        if keep == drop:
            loops += 1
            continue
        for x in crossings:
            for p in range(4):
                if x[p] == drop:
                    x[p] = keep
        pending = [(keep if u == drop else u, keep if v == drop else v) for u, v in pending]
    return [tuple(x) for x in crossings], loops


def _without(crossings, *indices):
    return [x for k, x in enumerate(crossings) if k not in indices]


def _find_kink(crossings):
    for k, x in enumerate(crossings):
        for p in range(4):
            if x[p] == x[(p + 1) % 4]:
                return k, p
    return None


def _find_bigon(crossings, occ):
    for k, x in enumerate(crossings):
        for p in range(4):
            e, f = x[p], x[(p + 1) % 4]
            if e == f:
                continue
            (ke, pe), = [s for s in occ[e] if s != (k, p)]
            (kf, pf), = [s for s in occ[f] if s != (k, (p + 1) % 4)]
            if ke != kf or ke == k:
                continue
            # the two edges bound a face only if their order reverses at the far end
            if (pe - pf) % 4 != 1:
                continue
            if p % 2 == pe % 2:
                return k, p, ke, pe, (p + 1) % 4, pf
    return None


def _reduce(crossings, loops):
    """Remove kinks (R1) and bigons (R2) until none remain."""
    crossings = list(crossings)
    power = 0
    while True:
        kink = _find_kink(crossings)
        if kink is not None:
            k, p = kink
            x = crossings[k]
            power += 1 if p in (0, 2) else -1
            crossings, extra = _splice(
                _without(crossings, k), [(x[(p + 2) % 4], x[(p + 3) % 4])])
            loops += extra
            continue
        bigon = _find_bigon(crossings, _occurrences(crossings))
        if bigon is not None:
            k, pe_k, y, pe_y, pf_k, pf_y = bigon
            x, w = crossings[k], crossings[y]
            pairs = [(x[(pe_k + 2) % 4], w[(pe_y + 2) % 4]),
                     (x[(pf_k + 2) % 4], w[(pf_y + 2) % 4])]
            crossings, extra = _splice(_without(crossings, k, y), pairs)
            loops += extra
            continue
        return crossings, loops, power


def simplify(diagram):
    """Apply R1 and R2 reductions.

    Returns
    -------
    (PlanarDiagram, int)
        The reduced diagram and the exponent of alpha collected from kinks.

    """
    crossings, loops, power = _reduce(diagram.crossings, diagram.loops)
    return PlanarDiagram(crossings, loops), power


def _pieces(crossings):
    """Crossing lists of the connected pieces of a diagram."""
    graph = nx.Graph()
    graph.add_nodes_from(range(len(crossings)))
    for slots in _occurrences(crossings).values():
        graph.add_edge(slots[0][0], slots[1][0])
    return [[crossings[k] for k in sorted(piece)]
            for piece in sorted(nx.connected_components(graph), key=min)]


def _encode(crossings, occ, start, rotation):
    labels = {}
    turn = {start: rotation}
    order = [start]
    code = []
    i = 0
    while i < len(order):
        k = order[i]
        i += 1
        x = crossings[k]
        row = []
        for s in range(4):
            slot = (s + turn[k]) % 4
            e = x[slot]
            if e not in labels:
                labels[e] = len(labels)
            row.append(labels[e])
            for other, q in occ[e]:
                if other not in turn:
                    turn[other] = 0 if q in (0, 1) else 2
                    order.append(other)
        code.append(tuple(row))
    return tuple(code)


def canonical_key(crossings):
    """Relabeling-invariant encoding of a connected crossing list.

    Each crossing may also be read from its other under-strand end, i.e.
    rotated by two slots; the key is the least BFS encoding over all start
    crossings and both readings of the start.
    """
    occ = _occurrences(crossings)
    return min(_encode(crossings, occ, start, rotation)
               for start in range(len(crossings)) for rotation in (0, 2))


def _traverse(crossings, strategy):
    """Visits ``(component, crossing, slot)`` along every closed curve in order."""
    occ = _occurrences(crossings)
    components = _strand_components(crossings)
    last = strategy == "last"
    components.sort(key=max if last else min, reverse=last)
    visits = []
    for c, edges in enumerate(components):
        base = max(edges) if last else min(edges)
        k, p = sorted(occ[base], reverse=last,
                      key=lambda s: (s[0], crossings[s[0]][(s[1] + 2) % 4], s[1]))[0]
        start = (k, p)
        while True:
            visits.append((c, k, p))
            out = (p + 2) % 4
            (k, p), = [s for s in occ[crossings[k][out]] if s != (k, out)]
            if (k, p) == start:
                break
    return visits, len(components)


class _Evaluator(object):

    def __init__(self, params, strategy, memo):
        self.params = params
        self.strategy = strategy
        self.memo = {} if memo else None
        self.hits = 0

    def evaluate(self, crossings, loops):
        crossings, loops, power = _reduce(crossings, loops)
        value = self.params.alpha ** power * self.params.delta ** loops
        for piece in _pieces(crossings):
            value = value * self.piece(piece)
        return value

    def piece(self, crossings):
        key = None
        if self.memo is not None:
            key = canonical_key(crossings)
            if key in self.memo:
                self.hits += 1
                return self.memo[key]
        visits, count = _traverse(crossings, self.strategy)
        first = {}
        target = None
        for c, k, p in visits:
            if k not in first:
                first[k] = (c, p)
                if p % 2 == 0:
                    target = k
                    break
        if target is None:
            value = self.descending(crossings, visits, count)
        else:
            x = crossings[target]
            switched = list(crossings)
            switched[target] = (x[1], x[2], x[3], x[0])
            rest = _without(crossings, target)
            smooth_a = _splice(rest, [(x[0], x[1]), (x[2], x[3])])
            smooth_b = _splice(rest, [(x[0], x[3]), (x[1], x[2])])
            value = (self.evaluate(switched, 0)
                     + self.params.z * (self.evaluate(*smooth_a) - self.evaluate(*smooth_b)))
        if key is not None:
            self.memo[key] = value
        return value

    def descending(self, crossings, visits, count):
        """Value of a stack of unknots: ``delta^c alpha^w`` with w the self-writhe."""
        seen = {}
        writhe = 0
        for c, k, p in visits:
            if k in seen:
                other_c, other_p = seen[k]
                if other_c == c:
                    under = p if p % 2 == 0 else other_p
                    over = p if p % 2 == 1 else other_p
                    writhe += 1 if (under == 0) == (over == 3) else -1
            else:
                seen[k] = (c, p)
        return self.params.alpha ** writhe * self.params.delta ** count


def kauffman_poly(diagram, params, strategy="first", memo=True,
                  limit=DEFAULT_RECURSION_LIMIT):
    """Kauffman polynomial ``D`` of ``diagram`` under ``params``.

    Parameters
    ----------
    diagram : PlanarDiagram
    params : SkeinParams
    strategy : str
        ``"first"`` walks curves from their smallest edge label, ``"last"``
        from their largest; both reach the same value.
    memo : bool
        Cache values of connected pieces by ``canonical_key``.
    limit : int
        Largest crossing count accepted.

    Raises
    ------
    RecursionLimit
        If the diagram has more than ``limit`` crossings.

    """
    if strategy not in STRATEGIES:
        raise ValueError(f"unknown strategy {strategy!r}; expected one of {STRATEGIES}")
    if len(diagram) > limit:
        raise RecursionLimit(
            f"diagram has {len(diagram)} crossings, above the limit of {limit}")
    evaluator = _Evaluator(params, strategy, memo)
    value = evaluator.evaluate(diagram.crossings, diagram.loops)
    if evaluator.memo is not None:
        log.debug("skein memo: %d entries, %d hits", len(evaluator.memo), evaluator.hits)
    return value
