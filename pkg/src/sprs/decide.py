"""Decision procedures built on reduction graphs.

Reducibility of u to v in a rule set S reduces to two checks with
D = dom(v): the reduct of u to D must equal v, and rem_D(u) must be
successful in S.  Successfulness itself is decided per rule subset, either
by a sign/overlap criterion, by cyclic-component counting, or by recursive
decomposition into elementary legal substrings.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import DomainError
from .graph import build_reduction_graph, components, reduct
from .rules import (
    FULL_RULESET,
    SDR,
    SNR,
    SPR,
    Reduction,
    apply_reduction,
    find_reduction,
)
from .strings import (
    PointerString,
    domain,
    is_positive,
    pointers_overlap,
    proper_legal_substring,
    remove_pointers,
)


def reduct_of(u: PointerString, removed: Iterable[int]) -> PointerString:
    """The reduct of u to the removal set (linear time in |u|)."""
    return reduct(build_reduction_graph(u, removed))


def snr_count(u: PointerString, removed: Iterable[int] = ()) -> int:
    """Number of cyclic components of the reduction graph of u w.r.t. the set.

    This equals the number of string negative rules in every reduction of u
    whose result has exactly that domain.
    """
    return components(build_reduction_graph(u, removed)).count_cyclic


def exists_reduction_to_domain(u: PointerString, removed: Iterable[int]) -> bool:
    """True iff some reduction of u leaves exactly the given domain."""
    dset = frozenset(removed)
    v = reduct_of(u, dset)
    counts: dict[int, int] = {}
    for p in v:
        counts[abs(p)] = counts.get(abs(p), 0) + 1
    return all(c == 2 for c in counts.values()) and frozenset(counts) == dset


@dataclass(frozen=True)
class OverlapGraph:
    """Signed overlap graph: identities of dom(u), edges between interleaving pairs."""

    vertices: frozenset[int]
    positive: frozenset[int]
    edges: frozenset[frozenset[int]]

    def sign(self, id_: int) -> str:
        if id_ not in self.vertices:
            raise DomainError(f"identity {id_} not in graph")
        return "positive" if id_ in self.positive else "negative"


def overlap_graph(u: PointerString) -> OverlapGraph:
    ids = sorted(domain(u))
    positive = frozenset(a for a in ids if is_positive(u, a))
    edges = frozenset(
        frozenset((a, b))
        for i, a in enumerate(ids)
        for b in ids[i + 1 :]
        if pointers_overlap(u, a, b)
    )
    return OverlapGraph(frozenset(ids), positive, edges)


def _all_negative(u: PointerString) -> bool:
    return not any(is_positive(u, a) for a in domain(u))


def _no_overlaps(u: PointerString) -> bool:
    # Intervals are pairwise non-interleaving iff they nest properly.
    stack: list[int] = []
    open_: set[int] = set()
    for p in u:
        a = abs(p)
        if a in open_:
            if not stack or stack[-1] != a:
                return False
            stack.pop()
            open_.discard(a)
        else:
            stack.append(a)
            open_.add(a)
    return True


def _successful_decomposition(u: PointerString, with_snr: bool, cache: dict) -> bool:
    """Shared recursion for the {Spr} and {Snr, Spr} characterizations.

    Splits off proper nonempty legal substrings; elementary strings are
    decided directly: with snr they need a positive pointer or the form pp,
    without snr they need a positive pointer and no cyclic component.
    """
    if not u:
        return True
    hit = cache.get(u)
    if hit is not None:
        return hit
    split = proper_legal_substring(u)
    if split is not None:
        i, j = split
        ok = _successful_decomposition(
            u[i : j + 1], with_snr, cache
        ) and _successful_decomposition(u[:i] + u[j + 1 :], with_snr, cache)
    elif with_snr:
        ok = (len(u) == 2 and u[0] == u[1]) or any(
            is_positive(u, a) for a in domain(u)
        )
    else:
        ok = any(is_positive(u, a) for a in domain(u)) and snr_count(u) == 0
    cache[u] = ok
    return ok


def successful_in(u: PointerString, kinds: Iterable[str] = FULL_RULESET) -> bool:
    """Whether u is reducible to the empty string using only the given rule kinds."""
    kinds = frozenset(kinds)
    if kinds == frozenset():
        return u == ()
    if kinds == {SNR}:
        return _all_negative(u) and _no_overlaps(u)
    if kinds == {SPR}:
        return _successful_decomposition(u, with_snr=False, cache={})
    if kinds == {SDR}:
        return _all_negative(u) and snr_count(u) == 0
    if kinds == {SNR, SPR}:
        return _successful_decomposition(u, with_snr=True, cache={})
    if kinds == {SNR, SDR}:
        return _all_negative(u)
    if kinds == {SPR, SDR}:
        return snr_count(u) == 0
    return True


REASON_OK = "ok"
REASON_DOMAIN = "domain-not-subset"
REASON_REDUCT = "reduct-mismatch"
REASON_REM = "rem-not-successful-in-S"


@dataclass(frozen=True)
class ReducibilityVerdict:
    reducible: bool
    reason: str
    witness: Optional[Reduction] = None


def is_reducible(
    u: PointerString,
    v: PointerString,
    kinds: Iterable[str] = FULL_RULESET,
    want_witness: bool = False,
    max_domain: int = 8,
) -> ReducibilityVerdict:
    """Decide whether u is reducible to v using only the given rule kinds.

    A witness reduction is attached on request when the search stays within
    ``max_domain`` identities.
    """
    kinds = frozenset(kinds)
    dset = domain(v)
    if not dset <= domain(u):
        return ReducibilityVerdict(False, REASON_DOMAIN)
    if reduct_of(u, dset) != v:
        return ReducibilityVerdict(False, REASON_REDUCT)
    if not successful_in(remove_pointers(u, dset), kinds):
        return ReducibilityVerdict(False, REASON_REM)
    witness = None
    if want_witness and len(domain(u)) <= max_domain:
        phi = find_reduction(remove_pointers(u, dset), (), kinds, max_domain=max_domain)
        if phi is not None and apply_reduction(phi, u) == v:
            witness = phi
    return ReducibilityVerdict(True, REASON_OK, witness)


def is_reducible_spr_sdr(u: PointerString, v: PointerString) -> bool:
    """Reducibility of u to v using only spr and sdr rules.

    Holds iff the reduction graph of u w.r.t. dom(v) has no cyclic component
    and its reduct equals v.
    """
    dset = domain(v)
    if not dset <= domain(u):
        raise DomainError(
            f"dom(v) = {sorted(dset)} is not a subset of dom(u) = {sorted(domain(u))}"
        )
    summary = components(build_reduction_graph(u, dset))
    return summary.count_cyclic == 0 and reduct_of(u, dset) == v
