"""Reduction graphs: construction, components, reduct, reduction functions.

The reduction graph of a legal string u with respect to a removal set D has
a source s, a target t, and two interior vertices per occurrence of a
pointer outside D.  Reality edges follow adjacency in u and carry the
removed segments as labels; desire edges pair up the two occurrences of
each identity and carry the empty label.

Vertices are encoded as small integers: 0 is s, 1 is t, and the interior
vertices I_i and I'_i (i = 1..n) are 2i and 2i+1.  Both edge colours are
stored closed under reversal; traversal helpers use the undirected view.
"""

from __future__ import annotations

import gc
from array import array
from dataclasses import dataclass
from typing import Iterable, Optional

import numpy as np

from .errors import DomainError, StructureError
from .strings import PointerString, inverse

SOURCE = 0
TARGET = 1

# Compiled kernels pay an import/JIT cost that only amortizes on long
# strings; below this length the numpy path wins anyway.
_KERNEL_MIN = 4096
_kern = None


def _kernels():
    """The optional numba kernel module, or None when unavailable."""
    global _kern
    if _kern is None:
        try:
            from . import _kernels

            _kern = _kernels
        except Exception:
            _kern = False
    return _kern or None

REALITY = 0
DESIRE = 1

Label = Optional[PointerString]


def vertex_name(v: int) -> str:
    if v == SOURCE:
        return "s"
    if v == TARGET:
        return "t"
    return f"I{v // 2}" + ("p" if v % 2 else "")


def _vertex_sort_key(v: int) -> tuple[int, int]:
    # s first, interior vertices in index order, t last
    return (0, 0) if v == SOURCE else ((2, 0) if v == TARGET else (1, v))


class ReductionGraph:
    """Immutable 2-edge-coloured two-ended graph.

    Arrays are indexed by vertex code; removed codes hold None.  ``r_lab[v]``
    is the reality-edge label read in the direction away from v.

    Graphs built from a string keep compact integer arrays internally and
    materialize the tuple views on first access, so that construction and
    the reduct stay linear with a small constant even for very long strings.
    """

    __slots__ = ("_label", "_r_to", "_r_lab", "_d_to", "_raw", "_comp")

    def __init__(self, label, r_to, r_lab, d_to):
        self._label = tuple(label)
        self._r_to = tuple(r_to)
        self._r_lab = tuple(r_lab)
        self._d_to = tuple(d_to)
        self._raw = None
        self._comp = None

    @classmethod
    def _from_arrays(cls, u, u_arr, pos, g0, g1, same, comp):
        G = cls.__new__(cls)
        G._label = None
        G._r_to = None
        G._r_lab = None
        G._d_to = None
        G._raw = (u, u_arr, pos, g0, g1, same)
        G._comp = comp
        return G

    def _materialize(self):
        u, u_arr, pos, g0, g1, same = self._raw
        n = len(pos)
        size = 2 * n + 2
        pos_l = pos.tolist()
        segs = []
        prev = -1
        for i in pos_l:
            segs.append(u[prev + 1 : i])
            prev = i
        segs.append(u[prev + 1 :])

        aptrs = np.abs(u_arr[pos]).tolist()
        label: list[Optional[int]] = [None] * size
        label[2::2] = aptrs
        label[3::2] = aptrs

        r_to: list[Optional[int]] = [None] * size
        r_lab: list[Label] = [None] * size
        r_to[SOURCE] = 2
        r_to[TARGET] = 2 * n + 1
        r_to[2::2] = [SOURCE] + list(range(3, 2 * n, 2))
        r_to[3::2] = list(range(4, 2 * n + 1, 2)) + [TARGET]
        r_lab[SOURCE] = segs[0]
        r_lab[TARGET] = inverse(segs[n])
        r_lab[2::2] = [inverse(seg) for seg in segs[:n]]
        r_lab[3::2] = segs[1:]

        ci = 2 * g1.astype(np.int64) + 2
        cj = 2 * g0.astype(np.int64) + 2
        s_ = same.astype(np.int64)
        d_np = np.full(size, -1, dtype=np.int64)
        d_np[ci] = cj + s_
        d_np[cj] = ci + s_
        d_np[ci + 1] = cj + 1 - s_
        d_np[cj + 1] = ci + 1 - s_
        d_to = d_np.tolist()
        d_to[SOURCE] = None
        d_to[TARGET] = None

        self._label = tuple(label)
        self._r_to = tuple(r_to)
        self._r_lab = tuple(r_lab)
        self._d_to = tuple(d_to)

    @property
    def label(self) -> tuple[Optional[int], ...]:
        if self._label is None:
            self._materialize()
        return self._label

    @property
    def r_to(self) -> tuple[Optional[int], ...]:
        if self._r_to is None:
            self._materialize()
        return self._r_to

    @property
    def r_lab(self) -> tuple[Label, ...]:
        if self._r_lab is None:
            self._materialize()
        return self._r_lab

    @property
    def d_to(self) -> tuple[Optional[int], ...]:
        if self._d_to is None:
            self._materialize()
        return self._d_to

    @property
    def vertices(self) -> list[int]:
        return [
            v
            for v in range(len(self.label))
            if v in (SOURCE, TARGET) or self.label[v] is not None
        ]

    @property
    def interior_labels(self) -> frozenset[int]:
        return frozenset(l for l in self.label if l is not None)

    @property
    def reality_edges(self) -> frozenset[tuple[int, PointerString, int]]:
        """Directed reality edges, closed under reversal."""
        return frozenset(
            (v, self.r_lab[v], self.r_to[v])
            for v in self.vertices
            if self.r_to[v] is not None
        )

    @property
    def desire_edges(self) -> frozenset[tuple[int, PointerString, int]]:
        """Directed desire edges (empty labels), closed under reversal."""
        return frozenset(
            (v, (), self.d_to[v]) for v in self.vertices if self.d_to[v] is not None
        )


def build_reduction_graph(u: PointerString, removed: Iterable[int]) -> ReductionGraph:
    """The reduction graph of legal string u with respect to the removal set."""
    dset = frozenset(removed)
    # Generational GC scans the millions of small tuples built here; pause it
    # for the duration so construction stays linear in |u|.
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        return _build(u, dset)
    finally:
        if was_enabled:
            gc.enable()


def _build(u: PointerString, dset: frozenset[int]) -> ReductionGraph:
    # The common case fits int32, which halves the memory traffic of every
    # pass below; huge identities fall back to the int64 path.  Building an
    # array.array first converts the tuple noticeably faster than numpy.
    try:
        arr = np.frombuffer(array("i", u), dtype=np.int32)
    except OverflowError:
        arr = np.asarray(u, dtype=np.int64).reshape(len(u))
    amax = int(max(arr.max(), -arr.min())) if arr.size else -1
    dense = 0 <= amax < 4 * len(u)

    # Split u into kept pointers p_1..p_n and the removed segments between
    # them, validating that the removed part is paired and D ⊆ dom(u).
    if dense:
        # Dense identities: membership by lookup table, occurrence counts
        # by bincount, occurrence pairing by position scatter -- all linear,
        # no sorting.
        if dset:
            darr = np.fromiter(dset, dtype=np.int64, count=len(dset))
            if int(darr.min()) < 0 or int(darr.max()) > amax:
                raise DomainError(
                    f"removal set {sorted(dset)} is not a subset of the domain"
                )
        else:
            darr = None
        kern = None
        if arr.dtype == np.int32 and _KERNEL_MIN <= len(u) < 2**30:
            kern = _kernels()
        if kern is not None:
            seen = np.full(amax + 1, kern.UNSEEN, dtype=np.int32)
            if darr is not None:
                seen[darr] = kern.REMOVED_UNSEEN
            err, removed_ids, pos, g0, g1, same, comp_np = kern.dense_pair(
                arr, seen
            )
            if err:
                raise DomainError(f"string is not legal: {list(u)}")
            if removed_ids != len(dset):
                raise DomainError(
                    f"removal set {sorted(dset)} is not a subset of the domain"
                )
            n = int(pos.size)
            if n == 0:
                return ReductionGraph(
                    (None, None), (TARGET, SOURCE), (u, inverse(u)), (None, None)
                )
            return ReductionGraph._from_arrays(u, arr, pos, g0, g1, same, comp_np)
        au = np.abs(arr)
        counts = np.bincount(au, minlength=amax + 1)
        if np.any((counts != 0) & (counts != 2)):
            raise DomainError(f"string is not legal: {list(u)}")
        if dset:
            if np.any(counts[darr] == 0):
                raise DomainError(
                    f"removal set {sorted(dset)} is not a subset of the domain"
                )
            tab = np.zeros(amax + 1, dtype=bool)
            tab[darr] = True
            keep = ~tab[au]
            pos = np.flatnonzero(keep)
            pkept = arr[pos]
            akept = au[pos]
            kept_counts = counts.copy()
            kept_counts[darr] = 0
        else:
            pos = np.arange(len(u), dtype=np.int64)
            pkept = arr
            akept = au
            kept_counts = counts
        n = int(akept.size)
        if n == 0:
            return ReductionGraph(
                (None, None), (TARGET, SOURCE), (u, inverse(u)), (None, None)
            )
        # Pair up the two occurrences of each kept identity by scattering
        # positions into a table; the last write wins, so a reversed pass
        # records first occurrences and a forward pass the second ones.
        idx = np.arange(n, dtype=arr.dtype)
        first = np.empty(amax + 1, dtype=arr.dtype)
        first[akept[::-1]] = idx[::-1]
        last = np.empty(amax + 1, dtype=arr.dtype)
        last[akept] = idx
        ids_present = np.flatnonzero(kept_counts)
        g0 = first[ids_present]
        g1 = last[ids_present]
    else:
        au = np.abs(arr)
        if dset:
            darr = np.fromiter(dset, dtype=np.int64, count=len(dset))
            keep = np.isin(au, darr, invert=True)
            ids_removed, counts = np.unique(au[~keep], return_counts=True)
            if ids_removed.size != len(dset):
                raise DomainError(
                    f"removal set {sorted(dset)} is not a subset of the domain"
                )
            if np.any(counts != 2):
                raise DomainError(f"string is not legal: {list(u)}")
            pos = np.flatnonzero(keep)
            pkept = arr[pos]
            akept = au[pos]
        else:
            pos = np.arange(len(u), dtype=np.int64)
            pkept = arr
            akept = au
        n = int(akept.size)
        if n % 2:
            raise DomainError(f"string is not legal: {list(u)}")
        if n == 0:
            return ReductionGraph(
                (None, None), (TARGET, SOURCE), (u, inverse(u)), (None, None)
            )
        # A stable argsort groups equal identities in occurrence order, so
        # consecutive entries of ``order`` are the occurrence pairs;
        # legality requires every group to have exactly two members.
        order = np.argsort(akept.astype(np.int64), kind="stable")
        g0 = order[0::2]
        g1 = order[1::2]
        a0 = akept[g0]
        if not np.array_equal(a0, akept[g1]) or np.any(a0[:-1] >= a0[1:]):
            raise DomainError(f"string is not legal: {list(u)}")

    # Compact successor array for the walk in reduct(): comp[v] = d(r(v))
    # follows the reality edge at v, then the desire edge.  Desire edges of
    # the pair at occurrence indices i < j (vertex codes ci = 2i+2 and
    # cj = 2j+2) join crosswise for same orientation and parallel for
    # opposite; instead of materializing d and composing, each value d(x)
    # is scattered straight to comp at r(x), using that r is an involution
    # with r(2) = s, r(2k) = 2k-1, r(2k+1) = 2k+2 and r(2n+1) = t.  Entries
    # never written stay -1; in particular comp[2n+1] = d(t) = -1 ends the
    # chase exactly when the walk's reality edge hits t.
    size = 2 * n + 2
    ci = 2 * g0 + 2
    cj = 2 * g1 + 2
    same = pkept[g0] == pkept[g1]
    s_ = same.astype(arr.dtype)
    comp_np = np.full(size, -1, dtype=arr.dtype)
    comp_np[np.where(ci == 2, SOURCE, ci - 1)] = cj + s_
    comp_np[np.where(cj == 2, SOURCE, cj - 1)] = ci + s_
    comp_np[np.where(ci == 2 * n, TARGET, ci + 2)] = cj + 1 - s_
    comp_np[np.where(cj == 2 * n, TARGET, cj + 2)] = ci + 1 - s_
    comp = array("i" if comp_np.itemsize == 4 else "q", comp_np.tobytes())

    return ReductionGraph._from_arrays(u, arr, pos, g0, g1, same, comp)


def _walk_from_source(G: ReductionGraph):
    """The unique alternating walk from s to t.

    Yields (vertex, out_colour, out_label, next_vertex) per step.
    """
    limit = len(G.label) + 2
    v = SOURCE
    colour = REALITY
    for _ in range(limit):
        if colour == REALITY:
            w, lab = G.r_to[v], G.r_lab[v]
        else:
            w, lab = G.d_to[v], ()
        if w is None:
            raise StructureError(f"missing edge at vertex {vertex_name(v)}")
        yield v, colour, lab, w
        if w == TARGET:
            return
        v = w
        colour = 1 - colour
    raise StructureError("alternating walk from s does not reach t")


def reduct(G: ReductionGraph) -> PointerString:
    """Label of the alternating walk from s to t (the reduct)."""
    if G._raw is not None:
        return _reduct_fast(G)
    r_to, r_lab, d_to = G.r_to, G.r_lab, G.d_to
    out: list[int] = []
    v = SOURCE
    colour = REALITY
    for _ in range(len(r_to) + 2):
        if colour == REALITY:
            w = r_to[v]
            lab = r_lab[v]
            if lab:
                out.extend(lab)
        else:
            w = d_to[v]
        if w is None:
            raise StructureError(f"missing edge at vertex {vertex_name(v)}")
        if w == TARGET:
            return tuple(out)
        v = w
        colour = 1 - colour
    raise StructureError("alternating walk from s does not reach t")


def _reduct_fast(G: ReductionGraph) -> PointerString:
    """Reduct straight from the construction arrays, without the tuple views.

    Chases the compact successor array from s, maps each visited vertex to
    the removed segment its reality edge reads (inverted at even vertices,
    which read their segment backwards), and gathers all segment values from
    u in one vectorized pass.
    """
    u, u_arr, pos, _g0, _g1, _same = G._raw
    comp = G._comp
    if isinstance(comp, np.ndarray):
        out = _kernels().chase_emit(comp, pos, u_arr)
        return tuple(out.tolist())
    visited = [SOURCE]
    v = comp[SOURCE]
    while v != -1:
        visited.append(v)
        v = comp[v]
    vs = np.asarray(visited, dtype=np.int64)

    # Segment j lies strictly between kept positions pos[j-1] and pos[j].
    pos_front = np.concatenate(([-1], pos))
    pos_ext = np.concatenate((pos, [len(u)]))
    odd = vs % 2 == 1
    j = np.where(odd, (vs - 1) // 2, vs // 2 - 1)
    j[0] = 0
    rev = ~odd
    rev[0] = False

    a = pos_front[j] + 1
    b = pos_ext[j]
    lens = b - a
    total = int(lens.sum())
    starts = np.concatenate(([0], np.cumsum(lens[:-1])))
    k = np.arange(total, dtype=np.int64) - np.repeat(starts, lens)
    rrep = np.repeat(rev, lens)
    idx = np.where(rrep, np.repeat(b - 1, lens) - k, np.repeat(a, lens) + k)
    vals = u_arr[idx]
    np.negative(vals, where=rrep, out=vals)
    return tuple(vals.tolist())


def _cycle_from(G: ReductionGraph, v0: int):
    """Vertex/colour/label sequences of the cyclic component containing v0.

    The traversal starts at v0 along its reality edge and alternates; it
    ends when the start state recurs.
    """
    verts: list[int] = []
    colours: list[int] = []
    labs: list[PointerString] = []
    v = v0
    colour = REALITY
    limit = len(G.label) + 2
    for _ in range(limit):
        if colour == REALITY:
            w, lab = G.r_to[v], G.r_lab[v]
        else:
            w, lab = G.d_to[v], ()
        if w is None:
            raise StructureError(f"missing edge at vertex {vertex_name(v)}")
        verts.append(v)
        colours.append(colour)
        labs.append(lab)
        v = w
        colour = 1 - colour
        if v == v0 and colour == REALITY:
            return verts, colours, labs
    raise StructureError("cyclic traversal does not close")


@dataclass(frozen=True)
class GraphComponent:
    cyclic: bool
    vertices: tuple[int, ...]
    label_word: tuple[int, ...]
    reality_labels_empty: bool


@dataclass(frozen=True)
class ComponentSummary:
    components: tuple[GraphComponent, ...]

    @property
    def count_total(self) -> int:
        return len(self.components)

    @property
    def count_cyclic(self) -> int:
        return sum(1 for c in self.components if c.cyclic)

    @property
    def linear(self) -> GraphComponent:
        return next(c for c in self.components if not c.cyclic)


def components(G: ReductionGraph) -> ComponentSummary:
    """Weakly-connected components; cyclic components are those missing s."""
    out: list[GraphComponent] = []

    linear_verts: list[int] = [SOURCE]
    linear_labs: list[PointerString] = []
    for _, colour, lab, w in _walk_from_source(G):
        if colour == REALITY:
            linear_labs.append(lab)
        linear_verts.append(w)
    word = tuple(G.label[v] for v in linear_verts if G.label[v] is not None)
    out.append(
        GraphComponent(
            cyclic=False,
            vertices=tuple(linear_verts),
            label_word=word,
            reality_labels_empty=all(lab == () for lab in linear_labs),
        )
    )

    seen = set(linear_verts)
    for v0 in G.vertices:
        if v0 in seen:
            continue
        verts, _, labs = _cycle_from(G, v0)
        seen.update(verts)
        word = tuple(G.label[v] for v in verts)
        candidates = []
        for seq in (word, word[::-1]):
            for r in range(len(seq)):
                candidates.append(seq[r:] + seq[:r])
        out.append(
            GraphComponent(
                cyclic=True,
                vertices=tuple(verts),
                label_word=min(candidates),
                reality_labels_empty=all(lab == () for lab in labs),
            )
        )
    return ComponentSummary(tuple(out))


def summary_text(G: ReductionGraph) -> str:
    """One line per component: kind, then the traversal word of vertex labels."""
    summary = components(G)
    lines = []
    for comp in summary.components:
        if not comp.cyclic:
            lines.append(("linear: " + " ".join(map(str, comp.label_word))).rstrip())
    for comp in sorted(
        (c for c in summary.components if c.cyclic), key=lambda c: c.label_word
    ):
        lines.append("cyclic: " + " ".join(map(str, comp.label_word)))
    return "\n".join(lines)


def reduction_function(G: ReductionGraph, id_: int) -> ReductionGraph:
    """Remove all vertices labelled ``id_`` and merge the walks over them."""
    if id_ not in G.interior_labels:
        raise DomainError(f"no vertex labelled {id_} in graph")

    label = list(G.label)
    r_to = list(G.r_to)
    r_lab = list(G.r_lab)
    d_to = list(G.d_to)

    removed = [v for v in range(len(label)) if label[v] == id_]
    kept = [v for v in G.vertices if G.label[v] != id_]

    for v in kept:
        w = G.r_to[v]
        if G.label[w] != id_:
            continue
        # Maximal alternating walk over removed vertices; it must leave the
        # removed region via a reality edge, since desire edges stay within
        # one label.
        labs = list(G.r_lab[v])
        colour = REALITY
        cur = w
        limit = len(G.label) + 2
        for _ in range(limit):
            if G.label[cur] != id_:
                break
            colour = 1 - colour
            if colour == REALITY:
                labs.extend(G.r_lab[cur])
                cur = G.r_to[cur]
            else:
                cur = G.d_to[cur]
        else:
            raise StructureError("merge walk does not terminate")
        r_to[v] = cur
        r_lab[v] = tuple(labs)

    for v in removed:
        label[v] = None
        r_to[v] = None
        r_lab[v] = None
        d_to[v] = None

    return ReductionGraph(tuple(label), tuple(r_to), tuple(r_lab), tuple(d_to))


def _canonical_cycle(G: ReductionGraph, v0: int, strip_labels: bool):
    verts, colours, labs = _cycle_from(G, v0)
    k = len(verts)
    vlabels = [G.label[v] for v in verts]
    if strip_labels:
        labs = [() for _ in labs]

    words = []
    # Forward readings: rotate the step sequence.
    forward = list(zip(vlabels, colours, labs))
    for r in range(k):
        words.append(tuple(forward[r:] + forward[:r]))
    # Reverse readings: step j goes from verts[-j] back over edge -j-1.
    rv = [vlabels[(-j) % k] for j in range(k)]
    rc = [colours[(-j - 1) % k] for j in range(k)]
    rl = [
        labs[(-j - 1) % k] if rc[j] == DESIRE else inverse(labs[(-j - 1) % k])
        for j in range(k)
    ]
    backward = list(zip(rv, rc, rl))
    for r in range(k):
        words.append(tuple(backward[r:] + backward[:r]))
    return min(words)


def canonical_form(G: ReductionGraph, strip_labels: bool = False):
    """Canonical invariant: equal forms iff the graphs are isomorphic.

    Every component is an alternating path (the linear one) or cycle, so a
    traversal word canonicalized by rotation and reflection suffices.
    """
    linear_v: list[Optional[int]] = []
    linear_l: list[PointerString] = []
    seen = {SOURCE}
    for v, colour, lab, w in _walk_from_source(G):
        if colour == REALITY:
            linear_l.append(lab if not strip_labels else ())
        linear_v.append(G.label[w])
        seen.add(w)
    linear = (tuple(linear_v), tuple(linear_l))

    cycles = []
    for v0 in G.vertices:
        if v0 in seen:
            continue
        verts, _, _ = _cycle_from(G, v0)
        seen.update(verts)
        cycles.append(_canonical_cycle(G, v0, strip_labels))
    return linear, tuple(sorted(cycles))


def graphs_isomorphic(
    G1: ReductionGraph, G2: ReductionGraph, ignore_labels: bool = False
) -> bool:
    """Isomorphism preserving s, t, vertex labels, edge labels, and colours."""
    return canonical_form(G1, ignore_labels) == canonical_form(G2, ignore_labels)


def export_dot(G: ReductionGraph) -> str:
    """Deterministic DOT text; desire edges dashed, one edge per pair {e, e-bar}."""
    from .strings import format_string

    lines = ["graph reduction {"]
    order = sorted(G.vertices, key=_vertex_sort_key)
    for v in order:
        if G.label[v] is None:
            lines.append(f"    {vertex_name(v)};")
        else:
            lines.append(f'    {vertex_name(v)} [label="{G.label[v]}"];')

    reality, desire = [], []
    for v in order:
        w = G.r_to[v]
        if w is not None and _vertex_sort_key(v) <= _vertex_sort_key(w):
            reality.append((v, w, G.r_lab[v]))
        w = G.d_to[v]
        if w is not None and _vertex_sort_key(v) <= _vertex_sort_key(w):
            desire.append((v, w))
    for v, w, lab in reality:
        lines.append(
            f'    {vertex_name(v)} -- {vertex_name(w)} [label="{format_string(lab)}"];'
        )
    for v, w in desire:
        lines.append(f"    {vertex_name(v)} -- {vertex_name(w)} [style=dashed];")
    lines.append("}")
    return "\n".join(lines) + "\n"
