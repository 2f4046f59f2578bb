"""Shared generators for legal strings used across the test suite."""

from __future__ import annotations

import itertools
import random

from hypothesis import settings
from hypothesis import strategies as st

# The timing-sensitive checks live in test_acceptance.py with explicit
# budgets; per-example deadlines only add flakes on a noisy machine.
settings.register_profile("suite", deadline=None)
settings.load_profile("suite")


def legal_string_from_symbols(symbols) -> tuple[int, ...]:
    return tuple(symbols)


def random_legal_string(rng: random.Random, ids) -> tuple[int, ...]:
    """Two occurrences of each identity, random orientations, shuffled."""
    out = []
    for a in ids:
        out.append(a if rng.random() < 0.5 else -a)
        out.append(a if rng.random() < 0.5 else -a)
    rng.shuffle(out)
    # Fresh int objects allocated in final order: matches the heap layout of
    # parser output, which matters for the large timing fixtures.
    return tuple(x + 0 for x in out)


def exhaustive_legal_strings(ids=(2, 3, 4)):
    """Every legal string whose domain is a subset of ``ids``.

    Exhaustive over both orderings and per-occurrence orientations.
    """
    out = [()]
    ids = tuple(ids)
    for r in range(1, len(ids) + 1):
        for subset in itertools.combinations(ids, r):
            base = []
            for a in subset:
                base.extend((a, a))
            for perm in sorted(set(itertools.permutations(base))):
                for signs in itertools.product((1, -1), repeat=len(perm)):
                    out.append(tuple(p * s for p, s in zip(perm, signs)))
    return out


@st.composite
def legal_strings(draw, max_ids: int = 5, min_ids: int = 0):
    n = draw(st.integers(min_value=min_ids, max_value=max_ids))
    ids = list(range(2, 2 + n))
    symbols = []
    for a in ids:
        symbols.extend((a, a))
    perm = draw(st.permutations(symbols))
    signs = draw(st.lists(st.sampled_from((1, -1)), min_size=2 * n, max_size=2 * n))
    return tuple(p * s for p, s in zip(perm, signs))


@st.composite
def legal_strings_with_removal(draw, max_ids: int = 5):
    u = draw(legal_strings(max_ids=max_ids))
    dom = sorted({abs(p) for p in u})
    dset = draw(st.frozensets(st.sampled_from(dom)) if dom else st.just(frozenset()))
    return u, frozenset(dset)
