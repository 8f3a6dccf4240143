import math

from hypothesis import given, settings, strategies as st

from cfgsimp import (
    GenConfig,
    Grammar,
    N,
    T,
    accessible_set,
    min_yield,
    nullable_set,
    predicates,
    random_grammar,
    unit_pairs,
    useful_set,
)
from cfgsimp.derivation import SearchCaps, derives_witness

from oracles import bounded_languages, symbols_in_derived_forms, unit_closure_by_search


def g_(start, rules, nts=None, ts=None):
    rules = [(l, r) for l, r in rules]
    if nts is None:
        nts = dict.fromkeys([start] + [l for l, _ in rules] +
                            [x for _, r in rules for x in r.split() if x[0].isupper()])
    if ts is None:
        ts = dict.fromkeys(x for _, r in rules for x in r.split() if x[0].islower())
    return Grammar.build(start, list(nts), list(ts), rules)


def names(symbols):
    return {s.name for s in symbols}


def test_nullable_examples(ab_grammar):
    assert nullable_set(ab_grammar).members == frozenset()
    ns = nullable_set(g_("S", [("S", "A B"), ("A", ""), ("B", "")]))
    assert names(ns.members) == {"A", "B", "S"}
    assert ns.rounds <= 3
    assert names(nullable_set(g_("S", [("S", "a S"), ("S", "")])).members) == {"S"}


def test_unit_pairs_examples():
    up = unit_pairs(g_("S", [("S", "A"), ("A", "B"), ("B", "a")]))
    assert {(x.name, y.name) for x, y in up.pairs} == {("S", "A"), ("A", "B"), ("S", "B")}
    assert unit_pairs(g_("S", [("S", "a")])).pairs == frozenset()
    up = unit_pairs(g_("A", [("A", "B"), ("B", "A"), ("A", "a")]))
    assert {(x.name, y.name) for x, y in up.pairs} == {("A", "B"), ("B", "A"), ("A", "A"), ("B", "B")}


def test_useful_examples(ab_grammar):
    assert names(useful_set(ab_grammar).members) == {"a", "b", "S'"}
    g = g_("S", [("S", "A B"), ("A", "a")], nts=["S", "A", "B"])
    assert names(useful_set(g).members) == {"a", "A"}
    g = g_("S", [("S", "A b"), ("A", "a")])
    assert names(useful_set(g).members) == {"S", "A", "a", "b"}


def test_accessible_examples(ab_grammar):
    assert names(accessible_set(ab_grammar).members) == {"S'", "a", "b"}
    g = g_("S", [("A", "a")], nts=["S", "A"])
    assert accessible_set(g).members == {N("S")}
    g = g_("S", [("S", "A B"), ("A", "a"), ("B", "b"), ("C", "c")])
    assert names(accessible_set(g).members) == {"S", "A", "B", "a", "b"}


def test_predicates_ab(ab_grammar):
    p = predicates(ab_grammar)
    assert p.has_no_empty_rules and p.has_no_unit_rules
    assert p.has_no_useless_symbols  # A, B never occur in a rule
    assert p.has_no_inaccessible_symbols
    assert not p.start_symbol_not_in_rhs
    assert p.non_empty and not p.generates_empty
    assert not p.has_one_empty_rule


def test_predicates_small():
    p = predicates(g_("S", [("S", "")]))
    assert p.has_one_empty_rule and p.generates_empty and p.start_symbol_not_in_rhs
    p = predicates(g_("S", [("S", "A"), ("A", "")]))
    assert not p.has_no_unit_rules and not p.has_no_empty_rules and not p.has_one_empty_rule


def test_predicates_on_useless_and_inaccessible():
    p = predicates(g_("S", [("S", "a"), ("S", "B"), ("C", "c")], nts=["S", "B", "C"]))
    assert not p.has_no_useless_symbols
    assert not p.has_no_inaccessible_symbols
    p = predicates(g_("S", [("S", "S S")]))
    assert not p.non_empty and not p.has_no_useless_symbols


seeds = st.integers(min_value=0, max_value=10_000)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_nullable_matches_exact_language(seed):
    g = random_grammar(GenConfig(seed=seed))
    langs = bounded_languages(g, 0)
    assert names(nullable_set(g).members) == {a for a, ws in langs.items() if () in ws}


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_nullable_matches_derivation_search(seed):
    g = random_grammar(GenConfig(seed=seed, max_nonterminals=5))
    ns = nullable_set(g)
    caps = SearchCaps(max_form_len=64, max_visited=200_000)
    for a in g.nonterminals:
        found = derives_witness(g, (a,), (), depth_cap=200, caps=caps) is not None
        assert found == (a in ns)


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_useful_matches_min_yield(seed):
    g = random_grammar(GenConfig(seed=seed))
    my = min_yield(g)
    useful = useful_set(g)
    assert {a for a in g.nonterminals if my[a] != math.inf} == {a for a in useful.members if a.is_nonterminal}
    assert set(g.terminals) <= useful.members


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_unit_pairs_match_search(seed):
    g = random_grammar(GenConfig(seed=seed, unit_rule_bias=0.5))
    assert set(unit_pairs(g).pairs) == unit_closure_by_search(g)


@settings(max_examples=80, deadline=None)
@given(seeds)
def test_accessible_matches_derived_forms(seed):
    g = random_grammar(GenConfig(seed=seed, max_nonterminals=4, max_rules=6, max_rhs_len=3))
    # a chain of at most |N| rewrites reaches every accessible symbol
    seen = symbols_in_derived_forms(g, len(g.nonterminals))
    assert accessible_set(g).members == seen


@settings(max_examples=100, deadline=None)
@given(seeds, st.integers(min_value=0, max_value=2**32))
def test_analyses_monotone_in_rules(seed, other):
    g = random_grammar(GenConfig(seed=seed))
    extra = random_grammar(GenConfig(seed=other))
    declared = set(g.nonterminals) | set(g.terminals)
    added = [r for r in extra.rules if r.lhs in declared and all(s in declared for s in r.rhs)]
    bigger = g.with_rules([*g.rules, *added])
    assert nullable_set(g).members <= nullable_set(bigger).members
    assert unit_pairs(g).pairs <= unit_pairs(bigger).pairs
    assert useful_set(g).members <= useful_set(bigger).members
    assert accessible_set(g).members <= accessible_set(bigger).members


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_round_bounds(seed):
    g = random_grammar(GenConfig(seed=seed))
    n, t = len(g.nonterminals), len(g.terminals)
    assert nullable_set(g).rounds <= n
    assert useful_set(g).rounds <= n
    assert unit_pairs(g).rounds <= n * n
    assert accessible_set(g).rounds <= n + t
