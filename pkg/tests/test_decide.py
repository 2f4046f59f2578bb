"""Decision procedures: reduct, snr counting, successfulness, reducibility."""

import itertools
import random

import pytest

from sprs import (
    DomainError,
    apply_rule,
    applicable_rules,
    domain,
    exists_reduction_to_domain,
    is_legal,
    is_reducible,
    is_reducible_oracle,
    is_reducible_spr_sdr,
    overlap_graph,
    parse_string,
    reduct_of,
    remove_pointers,
    snr_count,
    successful_in,
)
from sprs.decide import REASON_DOMAIN, REASON_OK, REASON_REDUCT, REASON_REM
from sprs.rules import FULL_RULESET, SDR, SNR, SPR, apply_reduction

from conftest import exhaustive_legal_strings, random_legal_string

ALL_SUBSETS = [
    frozenset(s)
    for r in range(4)
    for s in itertools.combinations((SNR, SPR, SDR), r)
]

PAPER_U = parse_string("5 2 6 8 8 3 -2 5 -4 3 7 7 4 6")


class TestReductOf:
    def test_golden(self):
        assert reduct_of(PAPER_U, {5, 6, 7, 8}) == (5, 6)
        assert reduct_of(PAPER_U, domain(PAPER_U)) == PAPER_U
        assert reduct_of(PAPER_U, ()) == ()

    def test_domain_error(self):
        with pytest.raises(DomainError):
            reduct_of((2, 2), {3})


class TestExistsReductionToDomain:
    def test_golden(self):
        assert not exists_reduction_to_domain(PAPER_U, {5, 6, 7, 8})
        assert exists_reduction_to_domain(PAPER_U, domain(PAPER_U))
        assert exists_reduction_to_domain(PAPER_U, ())

    def test_against_reachability_oracle(self):
        rng = random.Random(3)
        for _ in range(40):
            u = random_legal_string(rng, range(2, 5))
            # All strings reachable from u by any reduction.
            reachable = {u}
            frontier = [u]
            while frontier:
                w = frontier.pop()
                for rule in applicable_rules(w):
                    x = apply_rule(rule, w)
                    if x not in reachable:
                        reachable.add(x)
                        frontier.append(x)
            reachable_domains = {domain(w) for w in reachable}
            for r in range(len(domain(u)) + 1):
                for dset in itertools.combinations(sorted(domain(u)), r):
                    dset = frozenset(dset)
                    assert exists_reduction_to_domain(u, dset) == (
                        dset in reachable_domains
                    ), (u, dset)


class TestSnrCount:
    def test_golden(self):
        assert snr_count(parse_string("2 3 -2 -4 3 4")) == 1
        assert snr_count(parse_string("3 -2 2 3")) == 1
        assert snr_count(parse_string("2 2 3 3")) == 2
        assert snr_count(PAPER_U, {5, 6, 7, 8}) == 1


class TestOverlapGraph:
    def test_golden(self):
        g = overlap_graph((2, 3, -2, -3))
        assert g.edges == {frozenset((2, 3))}
        assert g.positive == {2, 3}
        assert g.sign(2) == "positive"

        g = overlap_graph((2, 2, 3, 3))
        assert g.edges == frozenset()
        assert g.positive == frozenset()
        assert g.sign(3) == "negative"

        g = overlap_graph(())
        assert g.vertices == frozenset() and g.edges == frozenset()

    def test_sign_unknown_vertex(self):
        with pytest.raises(DomainError):
            overlap_graph((2, 2)).sign(3)


class TestSuccessfulIn:
    def test_goldens(self):
        assert not successful_in(parse_string("2 3 -3 2 4 -4"), {SPR, SDR})
        assert successful_in((2, 2, 3, 3), {SNR})
        assert successful_in(parse_string("3 2 4 5 -4 5 -3 -2"), {SNR, SPR})
        assert successful_in((), frozenset())
        assert not successful_in((2, 2), frozenset())
        assert successful_in((2, 3, 2, 3), FULL_RULESET)
        assert not successful_in((2, 3, 2, 3), {SNR, SPR})

    def test_monotone_in_ruleset(self):
        rng = random.Random(7)
        for _ in range(60):
            u = random_legal_string(rng, range(2, rng.randint(3, 6)))
            for s1 in ALL_SUBSETS:
                for s2 in ALL_SUBSETS:
                    if s1 <= s2 and successful_in(u, s1):
                        assert successful_in(u, s2), (u, s1, s2)

    def test_small_exhaustive_vs_oracle(self):
        for u in exhaustive_legal_strings((2, 3)):
            for s in ALL_SUBSETS:
                assert successful_in(u, s) == is_reducible_oracle(u, (), s), (u, s)

    def test_decomposition_splits(self):
        # Concatenations of legal strings: u v successful iff both parts are,
        # for the rule sets decided by decomposition.
        rng = random.Random(11)
        for _ in range(60):
            u = random_legal_string(rng, (2, 3))
            v = tuple(p + 3 if p > 0 else p - 3 for p in random_legal_string(rng, (2, 3)))
            for s in ({SPR}, {SNR, SPR}):
                assert successful_in(u + v, s) == (
                    successful_in(u, s) and successful_in(v, s)
                ), (u, v, s)


class TestIsReducible:
    def test_paper_goldens(self):
        u = parse_string("3 2 4 5 -4 5 -3 6 6 -2")
        v = parse_string("-5 4 -5 -4 6 6")
        verdict = is_reducible(u, v)
        assert not verdict.reducible

        u2 = parse_string("3 2 4 5 -4 5 -3 -2")
        v2 = parse_string("-5 4 -5 -4")
        assert is_reducible(u2, v2, {SNR, SPR}).reducible
        assert is_reducible(u2, u2).reducible

    def test_reasons(self):
        assert is_reducible((2, 2), (3, 3)).reason == REASON_DOMAIN
        assert (
            is_reducible((2, 3, 2, 3), (3, 3)).reason == REASON_REDUCT
        )
        u = parse_string("2 3 -3 2 4 -4")
        assert is_reducible(u, (), {SPR, SDR}).reason == REASON_REM
        assert is_reducible(u, (), FULL_RULESET).reason == REASON_OK

    def test_witness(self):
        u = parse_string("3 2 4 5 -4 5 -3 -2")
        v = parse_string("-5 4 -5 -4")
        verdict = is_reducible(u, v, {SNR, SPR}, want_witness=True)
        assert verdict.reducible and verdict.witness is not None
        assert apply_reduction(verdict.witness, u) == v

    def test_full_ruleset_reduces_to_reduct_only(self):
        # With all rules allowed, reducibility is exactly reduct equality.
        rng = random.Random(13)
        for _ in range(60):
            u = random_legal_string(rng, range(2, 5))
            dom = sorted(domain(u))
            dset = frozenset(dom[: rng.randint(0, len(dom))])
            v = reduct_of(u, dset)
            if is_legal(v) and domain(v) == dset:
                assert is_reducible(u, v).reducible

    def test_against_oracle_small(self):
        rng = random.Random(17)
        for _ in range(25):
            u = random_legal_string(rng, range(2, 5))
            dom = sorted(domain(u))
            dset = frozenset(dom[: rng.randint(0, len(dom))])
            v = reduct_of(u, dset)
            if not (is_legal(v) and domain(v) == dset):
                continue
            for s in ALL_SUBSETS:
                assert is_reducible(u, v, s).reducible == is_reducible_oracle(
                    u, v, s
                ), (u, v, s)


class TestIsReducibleSprSdr:
    def test_goldens(self):
        u = parse_string("2 3 -3 2 4 -4")
        assert is_reducible_spr_sdr(u, (2, 2))
        assert is_reducible_spr_sdr(u, u)
        assert not is_reducible_spr_sdr(u, ())

    def test_domain_error(self):
        with pytest.raises(DomainError):
            is_reducible_spr_sdr((2, 2), (3, 3))

    def test_against_oracle(self):
        rng = random.Random(19)
        for _ in range(40):
            u = random_legal_string(rng, range(2, 5))
            dom = sorted(domain(u))
            dset = frozenset(dom[: rng.randint(0, len(dom))])
            v = reduct_of(u, dset)
            if not (is_legal(v) and domain(v) == dset):
                continue
            assert is_reducible_spr_sdr(u, v) == is_reducible_oracle(
                u, v, {SPR, SDR}
            ), (u, v)
