"""Seeded random grammars for property testing.

Randomness comes from xorshift64* so a seed means the same grammar on every
platform and in every language.  With 64-bit wrap-around arithmetic::

    x ^= x >> 12;  x ^= x << 25;  x ^= x >> 27
    output = x * 0x2545F4914F6CDD1D

The initial state is ``splitmix64(seed)`` (replaced by 1 if that is zero).
"""

from __future__ import annotations

import string
from dataclasses import dataclass

from .analysis import useful_set
from .grammar import Grammar, N, Rule, T, dedupe

MASK = (1 << 64) - 1


def splitmix64(x: int) -> int:
    x = (x + 0x9E3779B97F4A7C15) & MASK
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & MASK
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & MASK
    return x ^ (x >> 31)


class XorShift64Star:
    def __init__(self, seed: int):
        self.state = splitmix64(seed & MASK) or 1

    def next(self) -> int:
        x = self.state
        x ^= x >> 12
        x ^= (x << 25) & MASK
        x ^= x >> 27
        self.state = x
        return (x * 0x2545F4914F6CDD1D) & MASK

    def below(self, n: int) -> int:
        """Uniform-ish integer in ``[0, n)`` from the top 32 bits."""
        return ((self.next() >> 32) * n) >> 32

    def uniform(self) -> float:
        """Float in ``[0, 1)`` with 53 random bits."""
        return (self.next() >> 11) / float(1 << 53)


@dataclass(frozen=True)
class GenConfig:
    seed: int = 0
    max_nonterminals: int = 6
    max_terminals: int = 4
    max_rules: int = 12
    max_rhs_len: int = 4
    empty_rule_bias: float = 0.15
    unit_rule_bias: float = 0.15

    def __post_init__(self):
        for name in ("max_nonterminals", "max_terminals", "max_rules", "max_rhs_len"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be at least 1")
        for name in ("empty_rule_bias", "unit_rule_bias"):
            if not 0.0 <= getattr(self, name) <= 1.0:
                raise ValueError(f"{name} must lie in [0, 1]")
        if not 0 <= self.seed <= MASK:
            raise ValueError("seed must be an unsigned 64-bit value")


class RetryExhausted(RuntimeError):
    pass


def _nonterminal_names(k: int) -> list[str]:
    letters = [c for c in string.ascii_uppercase if c != "S"]
    names = ["S"] + letters
    if k <= len(names):
        return names[:k]
    return names + [f"N{i}" for i in range(k - len(names))]


def _terminal_names(k: int) -> list[str]:
    if k <= 26:
        return list(string.ascii_lowercase[:k])
    return list(string.ascii_lowercase) + [f"t{i}" for i in range(k - 26)]


def _generate(rng: XorShift64Star, cfg: GenConfig) -> Grammar:
    n_nt = 1 + rng.below(cfg.max_nonterminals)
    n_t = 1 + rng.below(cfg.max_terminals)
    n_rules = 1 + rng.below(cfg.max_rules)
    nts = [N(x) for x in _nonterminal_names(n_nt)]
    ts = [T(x) for x in _terminal_names(n_t)]
    pool = nts + ts

    rules = []
    for k in range(n_rules):
        lhs = nts[0] if k == 0 else nts[rng.below(n_nt)]
        if rng.uniform() < cfg.empty_rule_bias:
            rhs = ()
        elif rng.uniform() < cfg.unit_rule_bias:
            rhs = (nts[rng.below(n_nt)],)
        else:
            length = 1 + rng.below(cfg.max_rhs_len)
            rhs = tuple(pool[rng.below(len(pool))] for _ in range(length))
        rules.append(Rule(lhs, rhs))
    return Grammar(nts[0], tuple(nts), tuple(ts), dedupe(rules))


def random_grammar(cfg: GenConfig) -> Grammar:
    return _generate(XorShift64Star(cfg.seed), cfg)


def random_nonempty_grammar(cfg: GenConfig, max_tries: int = 1000) -> Grammar:
    """Draw grammars from the seed's stream until one produces some word."""
    rng = XorShift64Star(cfg.seed)
    for _ in range(max_tries):
        g = _generate(rng, cfg)
        if g.start in useful_set(g):
            return g
    raise RetryExhausted(f"no grammar with a nonempty language after {max_tries} tries")
