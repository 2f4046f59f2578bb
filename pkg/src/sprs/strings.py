"""Pointers, legal strings, and micronuclear patterns.

A pointer is encoded as a signed integer: ``k`` (k >= 2) is the unbarred
pointer with identity k, and ``-k`` is its barred counterpart.  Strings of
pointers are plain tuples of such integers; the empty tuple is the empty
string.  Text form is whitespace-separated signed decimals, e.g.
``"3 2 -3 -2"``.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CapacityError, DomainError, ParseError

PointerString = tuple[int, ...]

EMPTY: PointerString = ()


def ident(p: int) -> int:
    """Unbarred identity of a pointer."""
    return abs(p)


def bar(p: int) -> int:
    """Flip the orientation of a pointer (an involution)."""
    return -p


def is_barred(p: int) -> bool:
    return p < 0


def _check_pointer(p: int) -> int:
    if not isinstance(p, int) or abs(p) < 2:
        raise ParseError(f"invalid pointer {p!r}: identities start at 2")
    return p


def parse_string(text: str) -> PointerString:
    """Parse whitespace-separated signed integers into a pointer string.

    ``"k"`` (k >= 2) is the unbarred pointer k, ``"-k"`` the barred one.
    Empty input gives the empty string.
    """
    out = []
    for pos, tok in enumerate(text.split(), start=1):
        try:
            p = int(tok)
        except ValueError:
            raise ParseError(f"token {pos} ({tok!r}) is not an integer") from None
        if abs(p) < 2:
            raise ParseError(f"token {pos} ({tok!r}): pointer identities start at 2")
        out.append(p)
    return tuple(out)


def format_string(u: Iterable[int]) -> str:
    """Inverse of :func:`parse_string`: single-space separated tokens."""
    return " ".join(str(p) for p in u)


def inverse(u: PointerString) -> PointerString:
    """Reverse the string and flip every pointer's orientation."""
    if not u:
        return ()
    return tuple([-p for p in reversed(u)])


def domain(u: Iterable[int]) -> frozenset[int]:
    """Set of unbarred identities occurring in the string."""
    return frozenset(abs(p) for p in u)


def is_legal(u: PointerString) -> bool:
    """True iff every identity occurs exactly twice, counting both orientations."""
    counts = Counter(map(abs, u))
    return all(c == 2 for c in counts.values())


def occurrence_positions(u: PointerString, id_: int) -> tuple[int, int]:
    """Positions (0-based) of the two occurrences of an identity in a legal string."""
    found = [i for i, p in enumerate(u) if abs(p) == id_]
    if len(found) != 2:
        raise DomainError(f"identity {id_} does not occur twice in {list(u)}")
    return found[0], found[1]


def is_positive(u: PointerString, id_: int) -> bool:
    """True iff the two occurrences of the identity have opposite orientations."""
    i, j = occurrence_positions(u, id_)
    return u[i] != u[j]


def interval(u: PointerString, p: int) -> tuple[int, int]:
    """Start and end positions (inclusive) of the p-interval of u."""
    return occurrence_positions(u, ident(p))


def pointers_overlap(u: PointerString, id1: int, id2: int) -> bool:
    """True iff the two identities' intervals interleave strictly."""
    if id1 == id2:
        raise DomainError("overlap is defined for distinct identities only")
    i1, j1 = occurrence_positions(u, id1)
    i2, j2 = occurrence_positions(u, id2)
    return i1 < i2 < j1 < j2 or i2 < i1 < j2 < j1


def remove_pointers(u: PointerString, ids: Iterable[int]) -> PointerString:
    """Erase every pointer whose identity is in ``ids`` (both orientations).

    Identities absent from the string are ignored, so any set is accepted.
    """
    dset = frozenset(ids)
    if not dset:
        return u
    return tuple(p for p in u if abs(p) not in dset)


def _partners(u: PointerString) -> list[int]:
    # partner[i] = position of the other occurrence of the identity at i
    first: dict[int, int] = {}
    partner = [0] * len(u)
    for i, p in enumerate(u):
        a = abs(p)
        if a in first:
            j = first.pop(a)
            partner[i] = j
            partner[j] = i
        else:
            first[a] = i
    if first:
        raise DomainError(f"string is not legal: {list(u)}")
    return partner


def closed_interval_from(u: PointerString, partner: list[int], i: int) -> Optional[int]:
    """End of the minimal legal substring of u starting at position i, if any.

    Returns the inclusive end position j such that u[i..j] is legal, or None
    when no legal substring starts exactly at i.
    """
    end = partner[i]
    if end < i:
        return None
    k = i
    while k <= end:
        q = partner[k]
        if q < i:
            return None
        if q > end:
            end = q
        k += 1
    return end


def proper_legal_substring(u: PointerString) -> Optional[tuple[int, int]]:
    """Some proper nonempty legal substring of u as (start, end), or None."""
    n = len(u)
    if n == 0:
        return None
    partner = _partners(u)
    for i in range(n):
        end = closed_interval_from(u, partner, i)
        if end is not None and (i > 0 or end < n - 1):
            return i, end
    return None


def is_elementary(u: PointerString) -> bool:
    """True iff the nonempty legal string has no proper nonempty legal substring."""
    if not u:
        raise DomainError("elementarity is defined for nonempty strings")
    return proper_legal_substring(u) is None


@dataclass(frozen=True)
class MdsPattern:
    """A micronuclear pattern: a permutation of the MDS indices 1..kappa.

    ``mds`` holds signed indices in their micronuclear order; a negative
    entry denotes an inverted MDS.
    """

    mds: tuple[int, ...]
    kappa: int

    def __post_init__(self):
        if self.kappa < 2:
            raise ParseError(f"kappa must be at least 2, got {self.kappa}")
        if sorted(abs(m) for m in self.mds) != list(range(1, self.kappa + 1)):
            raise ParseError(
                f"pattern {self} is not a permutation of 1..{self.kappa}"
            )


def parse_pattern(text: str) -> MdsPattern:
    """Parse tokens like ``"M3 M4 ~M2"``; kappa is the maximum index."""
    mds = []
    for pos, tok in enumerate(text.split(), start=1):
        body = tok
        inverted = False
        if body.startswith("~"):
            inverted = True
            body = body[1:]
        if not body.startswith("M") or not body[1:].isdigit():
            raise ParseError(f"token {pos} ({tok!r}) is not of the form Mi or ~Mi")
        idx = int(body[1:])
        if idx < 1:
            raise ParseError(f"token {pos} ({tok!r}): MDS indices start at 1")
        mds.append(-idx if inverted else idx)
    if not mds:
        raise ParseError("empty pattern")
    return MdsPattern(tuple(mds), max(abs(m) for m in mds))


def format_pattern(delta: MdsPattern) -> str:
    return " ".join(("~M" if m < 0 else "M") + str(abs(m)) for m in delta.mds)


def _mds_image(idx: int, kappa: int) -> PointerString:
    if idx == 1:
        return (2,)
    if idx == kappa:
        return (kappa,)
    return (idx, idx + 1)


def encode_pattern(delta: MdsPattern) -> PointerString:
    """The pointer string associated with a micronuclear pattern.

    The first MDS maps to the single pointer 2, the last to kappa, and any
    other index i to the pair (i, i+1); inverted MDSs map to the inverse.
    """
    out: list[int] = []
    for m in delta.mds:
        image = _mds_image(abs(m), delta.kappa)
        out.extend(inverse(image) if m < 0 else image)
    return tuple(out)


def realistic_witness(u: PointerString) -> Optional[MdsPattern]:
    """A micronuclear pattern encoding to u, or None when u is not realistic.

    The candidate kappa is forced: a realistic string uses every MDS index
    once, so its domain is the gap-free range 2..kappa.
    """
    kappa = max(domain(u), default=2)
    kappa = max(kappa, 2)
    if domain(u) != frozenset(range(2, kappa + 1)):
        return None
    if len(u) != 2 * kappa - 2:
        return None

    images = {}
    for idx in range(1, kappa + 1):
        images[idx] = _mds_image(idx, kappa)
        images[-idx] = inverse(images[idx])

    used = [False] * (kappa + 1)
    picks: list[int] = []

    def backtrack(pos: int) -> bool:
        if pos == len(u):
            return True
        for idx in range(1, kappa + 1):
            if used[idx]:
                continue
            for m in (idx, -idx):
                img = images[m]
                if u[pos : pos + len(img)] == img:
                    used[idx] = True
                    picks.append(m)
                    if backtrack(pos + len(img)):
                        return True
                    picks.pop()
                    used[idx] = False
        return False

    if backtrack(0):
        return MdsPattern(tuple(picks), kappa)
    return None


def is_realistic(u: PointerString) -> bool:
    """True iff u is the encoding of some micronuclear pattern."""
    return realistic_witness(u) is not None


def is_realizable(u: PointerString, max_domain: int = 8) -> bool:
    """True iff some identity renaming (with optional bar flips) of u is realistic.

    Exhaustive search over bijections from dom(u) onto the gap-free range
    2..|dom(u)|+1 combined with per-identity orientation flips.  Raises
    CapacityError when the domain exceeds ``max_domain``.
    """
    ids = sorted(domain(u))
    if not ids:
        return False
    if len(ids) > max_domain:
        raise CapacityError(
            f"realizability search capped at {max_domain} identities, "
            f"string has {len(ids)}"
        )
    targets = range(2, len(ids) + 2)
    for perm in itertools.permutations(targets):
        rename = dict(zip(ids, perm))
        for flips in itertools.product((1, -1), repeat=len(ids)):
            flip = dict(zip(ids, flips))
            image = tuple(
                (rename[abs(p)] if p > 0 else -rename[abs(p)]) * flip[abs(p)]
                for p in u
            )
            if realistic_witness(image) is not None:
                return True
    return False
