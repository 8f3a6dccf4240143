"""Line-oriented grammar files and JSON report documents.

File format::

    # comment
    start: S
    terminals: a b
    nonterminals: S A B
    S -> a S | b
    A ->

Symbol names are whitespace separated.  ``|`` splits alternatives when
reading; the writer always emits one rule per line.  A rule with nothing
after ``->`` is an empty rule.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .analysis import accessible_set, nullable_set, predicates, unit_pairs, useful_set
from .grammar import Grammar, N, Rule, T, check_name, validate

HEADERS = ("start", "terminals", "nonterminals")


class GrammarFileError(ValueError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f"line {line}" + (f", column {column}" if column is not None else "") + ": "
        super().__init__(where + message)


class GrammarSyntaxError(GrammarFileError):
    pass


class UndeclaredSymbolError(GrammarFileError):
    def __init__(self, name, line, column=None):
        self.name = name
        super().__init__(f"undeclared symbol {name!r}", line, column)


class DuplicateRuleError(GrammarFileError):
    pass


class MissingHeaderError(GrammarFileError):
    pass


@dataclass
class _Token:
    text: str
    column: int


def _tokens(text: str, offset: int = 0) -> list[_Token]:
    out = []
    i = 0
    while i < len(text):
        if text[i].isspace():
            i += 1
            continue
        j = i
        while j < len(text) and not text[j].isspace():
            j += 1
        out.append(_Token(text[i:j], offset + i + 1))
        i = j
    return out


def parse_grammar(text: str) -> Grammar:
    header: dict[str, tuple[int, list[_Token]]] = {}
    raw_rules: list[tuple[int, _Token, list[_Token]]] = []

    for lineno, line in enumerate(text.splitlines(), 1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "->" in line:
            arrow = line.index("->")
            lhs = _tokens(line[:arrow])
            if len(lhs) != 1:
                col = lhs[1].column if len(lhs) > 1 else arrow + 1
                raise GrammarSyntaxError("expected exactly one symbol before '->'", lineno, col)
            rest = line[arrow + 2 :]
            alternatives: list[list[_Token]] = [[]]
            for tok in _tokens(rest, arrow + 2):
                for k, piece in enumerate(tok.text.split("|")):
                    if k:
                        alternatives.append([])
                    if piece:
                        alternatives[-1].append(_Token(piece, tok.column))
            for alt in alternatives:
                raw_rules.append((lineno, lhs[0], alt))
            continue
        key, sep, value = line.partition(":")
        key = key.strip()
        if not sep or key not in HEADERS:
            raise GrammarSyntaxError(f"unrecognized line {stripped!r}", lineno, line.index(stripped[0]) + 1)
        if key in header:
            raise GrammarSyntaxError(f"repeated header {key!r}", lineno, 1)
        header[key] = (lineno, _tokens(value, len(line) - len(value)))

    for key in HEADERS:
        if key not in header:
            raise MissingHeaderError(f"missing header {key!r}")

    lookup = {}
    decls = {}
    for key, make in (("terminals", T), ("nonterminals", N)):
        lineno, toks = header[key]
        out = []
        for tok in toks:
            if not check_name(tok.text):
                raise GrammarSyntaxError(f"invalid symbol name {tok.text!r}", lineno, tok.column)
            if tok.text in lookup:
                raise GrammarSyntaxError(f"symbol {tok.text!r} declared twice", lineno, tok.column)
            sym = make(tok.text)
            lookup[tok.text] = sym
            out.append(sym)
        decls[key] = tuple(out)

    lineno, toks = header["start"]
    if len(toks) != 1:
        raise GrammarSyntaxError("start header needs exactly one symbol", lineno, toks[1].column if toks else None)
    start_tok = toks[0]
    if start_tok.text not in lookup:
        raise UndeclaredSymbolError(start_tok.text, lineno, start_tok.column)
    start = lookup[start_tok.text]
    if start.is_terminal:
        raise GrammarSyntaxError(f"start symbol {start.name!r} is a terminal", lineno, start_tok.column)

    rules = []
    seen = set()
    for lineno, lhs_tok, alt in raw_rules:
        for tok in (lhs_tok, *alt):
            if tok.text not in lookup:
                if not check_name(tok.text):
                    raise GrammarSyntaxError(f"invalid symbol name {tok.text!r}", lineno, tok.column)
                raise UndeclaredSymbolError(tok.text, lineno, tok.column)
        lhs = lookup[lhs_tok.text]
        if lhs.is_terminal:
            raise GrammarSyntaxError(f"terminal {lhs.name!r} on the left of a rule", lineno, lhs_tok.column)
        rule = Rule(lhs, tuple(lookup[t.text] for t in alt))
        if rule in seen:
            raise DuplicateRuleError(f"duplicate rule {rule}", lineno)
        seen.add(rule)
        rules.append(rule)

    g = Grammar(start, decls["nonterminals"], decls["terminals"], tuple(rules))
    problems = validate(g)
    if problems:
        raise GrammarFileError("; ".join(map(str, problems)))
    return g


def serialize_grammar(g: Grammar) -> str:
    lines = [
        f"start: {g.start.name}",
        "terminals: " + " ".join(t.name for t in g.terminals),
        "nonterminals: " + " ".join(n.name for n in g.nonterminals),
    ]
    lines += [str(r) for r in g.rules]
    return "\n".join(line.rstrip() for line in lines) + "\n"


def read_grammar(path) -> Grammar:
    with open(path, encoding="utf-8") as fh:
        return parse_grammar(fh.read())


def write_grammar(g: Grammar, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(serialize_grammar(g))


def _names(symbols) -> list[str]:
    return sorted(s.name for s in symbols)


def analysis_document(g: Grammar) -> dict:
    nullable = nullable_set(g)
    units = unit_pairs(g)
    useful = useful_set(g)
    accessible = accessible_set(g)
    return {
        "nullable": {"members": _names(nullable.members), "rounds": nullable.rounds},
        "unit_pairs": {
            "pairs": sorted([a.name, b.name] for a, b in units.pairs),
            "rounds": units.rounds,
        },
        "useful": {"members": _names(useful.members), "rounds": useful.rounds},
        "accessible": {"members": _names(accessible.members), "rounds": accessible.rounds},
        "predicates": predicates(g).as_dict(),
    }


def pipeline_document(reports, final: Grammar) -> dict:
    return {
        "passes": [r.as_dict() for r in reports],
        "predicates": predicates(final).as_dict(),
    }


def dump_document(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=False) + "\n"
