"""Reference computations that share no code with the library's search."""

from collections import defaultdict
from itertools import product


def bounded_languages(g, n):
    """Exact words of length <= n derivable from every nonterminal, by name.

    Least fixpoint of ``L[A] = U_{A -> X1..Xk} L[X1] ... L[Xk]`` truncated at
    length ``n``; terminals denote themselves.
    """
    lang = defaultdict(set)

    def of(sym):
        if sym.is_terminal:
            return {(sym.name,)}
        return lang[sym.name]

    changed = True
    while changed:
        changed = False
        for r in g.rules:
            words = {()}
            for sym in r.rhs:
                by_len = defaultdict(list)
                for w in of(sym):
                    by_len[len(w)].append(w)
                words = {
                    u + w
                    for u in words
                    for k, ws in by_len.items()
                    if len(u) + k <= n
                    for w in ws
                }
                if not words:
                    break
            new = words - lang[r.lhs.name]
            if new:
                lang[r.lhs.name] |= new
                changed = True
    return lang


def language(g, n):
    return bounded_languages(g, n)[g.start.name]


def brute_leftmost_words(g, n, max_steps):
    """Words reached by every leftmost derivation of at most ``max_steps`` steps.

    No pruning and no memoization beyond exact duplicates; only usable on
    tiny grammars.
    """
    forms = {(g.start,)}
    found = set()
    for _ in range(max_steps + 1):
        nxt = set()
        for f in forms:
            lead = next((i for i, s in enumerate(f) if s.is_nonterminal), None)
            if lead is None:
                if len(f) <= n:
                    found.add(tuple(s.name for s in f))
                continue
            for r in g.rules_for(f[lead]):
                nxt.add(f[:lead] + r.rhs + f[lead + 1:])
        forms = nxt
    return found


def unit_closure_by_search(g):
    """Pairs (a, b) with [a] =>+ [b] using unit rules, by depth-first walks."""
    step = defaultdict(set)
    for r in g.rules:
        if len(r.rhs) == 1 and r.rhs[0].is_nonterminal:
            step[r.lhs].add(r.rhs[0])
    pairs = set()
    for a in list(step):
        stack, seen = list(step[a]), set()
        while stack:
            b = stack.pop()
            if b in seen:
                continue
            seen.add(b)
            pairs.add((a, b))
            stack.extend(step[b])
    return pairs


def all_subsets_deleted(rhs, nullable_names):
    """Reference expansion: delete every subset of nullable positions."""
    spots = [i for i, s in enumerate(rhs) if s.is_nonterminal and s.name in nullable_names]
    out = set()
    for mask in product((0, 1), repeat=len(spots)):
        drop = {i for i, m in zip(spots, mask) if m}
        v = tuple(s.name for i, s in enumerate(rhs) if i not in drop)
        if v:
            out.add(v)
    return out


def symbols_in_derived_forms(g, depth):
    """Symbols seen in any form reachable from [start] in <= depth rewrites."""
    forms = {(g.start,)}
    seen = {g.start}
    for _ in range(depth):
        nxt = set()
        for f in forms:
            for i, s in enumerate(f):
                for r in g.rules_for(s) if s.is_nonterminal else ():
                    nxt.add(f[:i] + r.rhs + f[i + 1:])
        nxt -= forms
        for f in nxt:
            seen.update(f)
        forms = nxt
    return seen
