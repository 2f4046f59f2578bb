"""The three string pointer reduction rules and brute-force search over them.

Rules are indexed by oriented pointers: ``snr`` for p rewrites the factor
``p p`` (exact orientations, adjacent), ``spr`` for p rewrites
``u1 p u2 bar(p) u3`` to ``u1 inverse(u2) u3``, and ``sdr`` for p, q rewrites
``u1 p u2 q u3 p u4 q u5`` to ``u1 u4 u3 u2 u5``.

A reduction is a sequence of rules stored in application order (first-applied
first).  Compositions written right-to-left elsewhere are converted at the
text boundary only.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional

from .errors import CapacityError, NotApplicableError, ParseError
from .strings import PointerString, bar, domain, ident, inverse, is_barred

SNR = "snr"
SPR = "spr"
SDR = "sdr"
FULL_RULESET = frozenset({SNR, SPR, SDR})

RuleSet = frozenset


def parse_ruleset(text: str) -> frozenset[str]:
    """Parse a comma list such as ``"snr,spr"``."""
    kinds = set()
    for tok in text.split(","):
        tok = tok.strip().lower()
        if not tok:
            continue
        if tok not in FULL_RULESET:
            raise ParseError(f"unknown rule kind {tok!r} (expected snr, spr, sdr)")
        kinds.add(tok)
    return frozenset(kinds)


@dataclass(frozen=True, order=True)
class Rule:
    """A single reduction rule; ``q`` is present for sdr only."""

    kind: str
    p: int
    q: Optional[int] = None

    def __post_init__(self):
        if self.kind not in FULL_RULESET:
            raise ParseError(f"unknown rule kind {self.kind!r}")
        if abs(self.p) < 2:
            raise ParseError(f"invalid pointer {self.p} in {self.kind} rule")
        if self.kind == SDR:
            if self.q is None or abs(self.q) < 2:
                raise ParseError("sdr needs a second pointer")
            if ident(self.p) == ident(self.q):
                raise ParseError("sdr needs two distinct identities")
        elif self.q is not None:
            raise ParseError(f"{self.kind} takes a single pointer")

    def __str__(self):
        if self.kind == SDR:
            return f"{self.kind}:{self.p},{self.q}"
        return f"{self.kind}:{self.p}"


Reduction = tuple[Rule, ...]


def parse_rule(text: str) -> Rule:
    """Parse ``"snr:2"``, ``"spr:-3"``, or ``"sdr:2,-3"``."""
    head, sep, tail = text.strip().partition(":")
    head = head.strip().lower()
    if not sep or head not in FULL_RULESET:
        raise ParseError(f"malformed rule {text!r}")
    try:
        params = [int(t) for t in tail.split(",")]
    except ValueError:
        raise ParseError(f"malformed rule parameters in {text!r}") from None
    if head == SDR:
        if len(params) != 2:
            raise ParseError(f"sdr takes two pointers: {text!r}")
        return Rule(SDR, params[0], params[1])
    if len(params) != 1:
        raise ParseError(f"{head} takes one pointer: {text!r}")
    return Rule(head, params[0])


def parse_reduction(text: str) -> Reduction:
    """Parse a semicolon list of rules in application order."""
    parts = [part for part in text.split(";") if part.strip()]
    return tuple(parse_rule(part) for part in parts)


def format_reduction(phi: Reduction) -> str:
    return "; ".join(str(rule) for rule in phi)


def rule_domain(rule: Rule) -> frozenset[int]:
    """Unbarred identities removed by the rule."""
    if rule.kind == SDR:
        return frozenset({ident(rule.p), ident(rule.q)})
    return frozenset({ident(rule.p)})


def reduction_domain(phi: Reduction) -> frozenset[int]:
    out: frozenset[int] = frozenset()
    for rule in phi:
        out |= rule_domain(rule)
    return out


def _snr_site(u: PointerString, p: int) -> Optional[int]:
    for i in range(len(u) - 1):
        if u[i] == p and u[i + 1] == p:
            return i
    return None


def _spr_site(u: PointerString, p: int) -> Optional[tuple[int, int]]:
    try:
        i = u.index(p)
        j = u.index(bar(p), i + 1)
    except ValueError:
        return None
    return i, j


def _sdr_site(u: PointerString, p: int, q: int) -> Optional[tuple[int, int, int, int]]:
    ps = [i for i, x in enumerate(u) if x == p]
    qs = [i for i, x in enumerate(u) if x == q]
    if len(ps) != 2 or len(qs) != 2:
        return None
    i1, j1 = ps
    i2, j2 = qs
    if i1 < i2 < j1 < j2:
        return i1, i2, j1, j2
    return None


def rule_applicable(rule: Rule, u: PointerString) -> bool:
    if rule.kind == SNR:
        return _snr_site(u, rule.p) is not None
    if rule.kind == SPR:
        return _spr_site(u, rule.p) is not None
    return _sdr_site(u, rule.p, rule.q) is not None


def apply_rule(rule: Rule, u: PointerString) -> PointerString:
    """Rewrite u by the rule; the match is unique on legal strings."""
    if rule.kind == SNR:
        i = _snr_site(u, rule.p)
        if i is None:
            raise NotApplicableError(rule, u)
        return u[:i] + u[i + 2 :]
    if rule.kind == SPR:
        site = _spr_site(u, rule.p)
        if site is None:
            raise NotApplicableError(rule, u)
        i, j = site
        return u[:i] + inverse(u[i + 1 : j]) + u[j + 1 :]
    site = _sdr_site(u, rule.p, rule.q)
    if site is None:
        raise NotApplicableError(rule, u)
    i1, i2, j1, j2 = site
    return (
        u[:i1] + u[j1 + 1 : j2] + u[i2 + 1 : j1] + u[i1 + 1 : i2] + u[j2 + 1 :]
    )


def apply_reduction(phi: Reduction, u: PointerString) -> PointerString:
    """Left fold of apply_rule; reports the failing step index on error."""
    for step, rule in enumerate(phi):
        try:
            u = apply_rule(rule, u)
        except NotApplicableError:
            raise NotApplicableError(rule, u, step=step) from None
    return u


def _rule_sort_key(rule: Rule):
    kind_rank = (SNR, SPR, SDR).index(rule.kind)
    q = rule.q if rule.q is not None else 0
    return (kind_rank, ident(rule.p), is_barred(rule.p), ident(q), is_barred(q))


def applicable_rules(u: PointerString, kinds: Iterable[str] = FULL_RULESET) -> list[Rule]:
    """All applicable rules of the given kinds, in canonical order.

    snr before spr before sdr; within a kind, sorted by identity then
    orientation.  sdr parameters are ordered by first occurrence, matching
    the rule schema, so each applicable sdr is listed once.
    """
    kinds = frozenset(kinds)
    rules = []
    # Orientation and order per identity: first occurrence, second occurrence.
    occ: dict[int, list[int]] = {}
    for x in u:
        occ.setdefault(abs(x), []).append(x)
    if SNR in kinds:
        seen = set()
        for i in range(len(u) - 1):
            if u[i] == u[i + 1] and u[i] not in seen:
                seen.add(u[i])
                rules.append(Rule(SNR, u[i]))
    if SPR in kinds:
        for a, pair in occ.items():
            if len(pair) == 2 and pair[0] == bar(pair[1]):
                rules.append(Rule(SPR, pair[0]))
    if SDR in kinds:
        negatives = [a for a, pair in occ.items() if len(pair) == 2 and pair[0] == pair[1]]
        pos = {a: [i for i, x in enumerate(u) if abs(x) == a] for a in negatives}
        for ai in negatives:
            for bi in negatives:
                if ai == bi:
                    continue
                i1, j1 = pos[ai]
                i2, j2 = pos[bi]
                if i1 < i2 < j1 < j2:
                    rules.append(Rule(SDR, occ[ai][0], occ[bi][0]))
    return sorted(rules, key=_rule_sort_key)


def _check_capacity(u: PointerString, max_domain: int):
    if len(domain(u)) > max_domain:
        raise CapacityError(
            f"search capped at {max_domain} identities, string has {len(domain(u))}"
        )


def enumerate_successful_reductions(
    u: PointerString,
    kinds: Iterable[str] = FULL_RULESET,
    limit: Optional[int] = None,
    max_domain: int = 8,
) -> list[Reduction]:
    """All rule sequences from the given kinds reducing u to the empty string.

    Depth-first enumeration in the canonical order of applicable_rules;
    truncated at ``limit`` when given.
    """
    _check_capacity(u, max_domain)
    kinds = frozenset(kinds)
    out: list[Reduction] = []
    prefix: list[Rule] = []

    def walk(v: PointerString) -> bool:
        if limit is not None and len(out) >= limit:
            return False
        if not v:
            out.append(tuple(prefix))
            return limit is None or len(out) < limit
        for rule in applicable_rules(v, kinds):
            prefix.append(rule)
            more = walk(apply_rule(rule, v))
            prefix.pop()
            if not more:
                return False
        return True

    walk(u)
    return out


def is_reducible_oracle(
    u: PointerString,
    v: PointerString,
    kinds: Iterable[str] = FULL_RULESET,
    max_domain: int = 8,
) -> bool:
    """Exhaustive check that some reduction over the given kinds maps u to v."""
    return find_reduction(u, v, kinds, max_domain=max_domain) is not None


def find_reduction(
    u: PointerString,
    v: PointerString,
    kinds: Iterable[str] = FULL_RULESET,
    max_domain: int = 8,
) -> Optional[Reduction]:
    """One reduction mapping u to v exactly, or None.

    Memoized on visited strings; rule application only shortens strings, so
    a string that failed once can be skipped on re-entry.
    """
    _check_capacity(u, max_domain)
    kinds = frozenset(kinds)
    dead: set[PointerString] = set()
    path: list[Rule] = []

    def walk(w: PointerString) -> bool:
        if w == v:
            return True
        if len(w) <= len(v) or w in dead:
            return False
        for rule in applicable_rules(w, kinds):
            path.append(rule)
            if walk(apply_rule(rule, w)):
                return True
            path.pop()
        dead.add(w)
        return False

    if walk(u):
        return tuple(path)
    return None
