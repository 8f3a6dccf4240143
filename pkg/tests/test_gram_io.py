import json

import pytest
from hypothesis import given, settings, strategies as st

from cfgsimp import GenConfig, N, Rule, parse_grammar, random_grammar, serialize_grammar, simplify_pipeline
from cfgsimp.gram_io import (
    DuplicateRuleError,
    GrammarSyntaxError,
    MissingHeaderError,
    UndeclaredSymbolError,
    analysis_document,
    pipeline_document,
)

from conftest import AB_TEXT


def test_parse_ab(ab_grammar):
    assert parse_grammar(AB_TEXT) == ab_grammar


def test_parse_alternatives_and_comments(ab_grammar):
    text = "# the a*b grammar\nstart: S'\n\nterminals: a b\nnonterminals: S' A B\nS' -> a S' | b\n"
    assert parse_grammar(text) == ab_grammar


def test_empty_rhs():
    g = parse_grammar("start: S\nterminals:\nnonterminals: S\nS ->\n")
    assert g.rules == (Rule(N("S"), ()),)


def test_undeclared_symbol():
    with pytest.raises(UndeclaredSymbolError) as info:
        parse_grammar("start: S\nterminals: a\nnonterminals: S\nS -> a\nS -> c a\n")
    assert info.value.name == "c"
    assert info.value.line == 5
    assert "'c'" in str(info.value) and "line 5" in str(info.value)


def test_duplicate_rule():
    with pytest.raises(DuplicateRuleError):
        parse_grammar("start: S\nterminals: a\nnonterminals: S\nS -> a\nS -> a | a\n")


def test_missing_header():
    with pytest.raises(MissingHeaderError, match="nonterminals"):
        parse_grammar("start: S\nterminals: a\n")


@pytest.mark.parametrize("text, line, column", [
    ("start: S\nterminals: a\nnonterminals: S\nS a -> a\n", 4, 3),
    ("start: S\nterminals: a\nnonterminals: S\nwhat is this\n", 4, 1),
    ("start: S\nterminals: a:b\nnonterminals: S\n", 2, 12),
])
def test_syntax_errors_carry_position(text, line, column):
    with pytest.raises(GrammarSyntaxError) as info:
        parse_grammar(text)
    assert (info.value.line, info.value.column) == (line, column)


def test_terminal_on_left_rejected():
    with pytest.raises(GrammarSyntaxError):
        parse_grammar("start: S\nterminals: a\nnonterminals: S\na -> S\n")


def test_serialize_ab(ab_grammar):
    text = serialize_grammar(ab_grammar)
    assert text == AB_TEXT
    assert len(text.splitlines()) == 5


def test_serialize_header_only():
    g = parse_grammar("start: S\nterminals: a\nnonterminals: S\n")
    assert serialize_grammar(g) == "start: S\nterminals: a\nnonterminals: S\n"


def test_serialize_empty_rule_has_no_trailing_space():
    g = parse_grammar("start: S\nterminals:\nnonterminals: S\nS ->\n")
    assert serialize_grammar(g).splitlines() == ["start: S", "terminals:", "nonterminals: S", "S ->"]


@settings(max_examples=200, deadline=None)
@given(st.integers(min_value=0, max_value=2**64 - 1))
def test_round_trip(seed):
    g = random_grammar(GenConfig(seed=seed))
    text = serialize_grammar(g)
    assert parse_grammar(text) == g
    assert serialize_grammar(parse_grammar(text)) == text


def test_canonicalization_is_idempotent():
    messy = "# x\nstart: S\nterminals: a b\nnonterminals: S A\n  S ->  a   A | b\nA -> | a\n"
    once = serialize_grammar(parse_grammar(messy))
    assert serialize_grammar(parse_grammar(once)) == once
    assert once.splitlines()[3:] == ["S -> a A", "S -> b", "A ->", "A -> a"]


def test_documents_are_json(ab_grammar):
    doc = analysis_document(ab_grammar)
    assert doc["useful"]["members"] == ["S'", "a", "b"]
    assert doc["predicates"]["non_empty"] is True
    out, reports = simplify_pipeline(ab_grammar)
    doc = pipeline_document(reports, out)
    assert [p["pass"] for p in doc["passes"]] == ["empty", "unit", "useless", "inaccessible"]
    assert json.loads(json.dumps(doc)) == doc
