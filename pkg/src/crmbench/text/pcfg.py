"""Toy probabilistic context-free grammar: derivation costs and coding.

Grammar files are declarative text, one rule per line:

    LHS -> RHS1 RHS2 ... @ prob

A right-hand-side token that never appears as a left-hand side is a
terminal word. A category whose alternatives are all single terminal words
is a lexical category; its choices are charged separately from the
structural derivation cost.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from ..coding import (
    ArithDecoder,
    ArithEncoder,
    BitString,
    CumulativeTable,
    quantize_distribution,
)

MAX_EXPANSIONS = 10_000


class GrammarError(ValueError):
    pass


class DerivationError(ValueError):
    pass


@dataclass(frozen=True)
class Rule:
    lhs: str
    rhs: tuple[str, ...]
    prob: float


@dataclass
class Pcfg:
    rules: dict[str, list[Rule]]  # lhs -> ordered alternatives
    start: str
    lexical: set[str] = field(default_factory=set)

    def __post_init__(self):
        for lhs, alts in self.rules.items():
            total = sum(r.prob for r in alts)
            if abs(total - 1.0) > 1e-9:
                raise GrammarError(f"probabilities for {lhs} sum to {total}, not 1")
        self.lexical = {
            lhs for lhs, alts in self.rules.items()
            if all(len(r.rhs) == 1 and r.rhs[0] not in self.rules for r in alts)
        }

    def is_nonterminal(self, symbol: str) -> bool:
        return symbol in self.rules

    def table(self, lhs: str) -> CumulativeTable:
        return quantize_distribution([r.prob for r in self.rules[lhs]])

    @classmethod
    def parse(cls, source: str) -> "Pcfg":
        rules: dict[str, list[Rule]] = {}
        start = None
        for lineno, line in enumerate(source.splitlines(), start=1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            try:
                head, prob_part = line.rsplit("@", 1)
                lhs, rhs_part = head.split("->", 1)
                lhs = lhs.strip()
                rhs = tuple(rhs_part.split())
                prob = float(prob_part)
            except ValueError as e:
                raise GrammarError(f"line {lineno}: cannot parse {line!r}") from e
            if not lhs or not rhs:
                raise GrammarError(f"line {lineno}: empty rule side")
            rules.setdefault(lhs, []).append(Rule(lhs, rhs, prob))
            if start is None:
                start = lhs
        if start is None:
            raise GrammarError("grammar has no rules")
        return cls(rules, start)


@dataclass(frozen=True)
class ParseDerivation:
    """Preorder list of (category, alternative-index) choices."""

    choices: tuple[tuple[str, int], ...]


def _replay(grammar: Pcfg, derivation: ParseDerivation, visit) -> list[str]:
    """Walk the derivation preorder, calling visit(step, rule); returns terminals."""
    stack = [grammar.start]
    terminals: list[str] = []
    pos = 0
    expansions = 0
    while stack:
        symbol = stack.pop()
        if not grammar.is_nonterminal(symbol):
            terminals.append(symbol)
            continue
        if pos >= len(derivation.choices):
            raise DerivationError(f"derivation ends early at nonterminal {symbol}")
        lhs, idx = derivation.choices[pos]
        if lhs != symbol:
            raise DerivationError(
                f"step {pos}: derivation names {lhs}, grammar expects {symbol}")
        alts = grammar.rules[symbol]
        if not 0 <= idx < len(alts):
            raise DerivationError(f"step {pos}: rule index {idx} out of range for {symbol}")
        visit(pos, alts[idx])
        stack.extend(reversed(alts[idx].rhs))
        pos += 1
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            raise DerivationError("expansion limit exceeded")
    if pos != len(derivation.choices):
        raise DerivationError(f"{len(derivation.choices) - pos} unused derivation steps")
    return terminals


def derivation_terminals(grammar: Pcfg, derivation: ParseDerivation) -> list[str]:
    return _replay(grammar, derivation, lambda pos, rule: None)


def pcfg_derivation_cost(grammar: Pcfg, derivation: ParseDerivation,
                         include_lexicon: bool = False) -> float:
    """Bits to transmit the derivation: sum of -log2 p over rule choices.

    Deterministic expansions cost nothing. Lexical word choices are counted
    only when include_lexicon is set.
    """
    bits = 0.0

    def visit(pos, rule):
        nonlocal bits
        if rule.lhs in grammar.lexical and not include_lexicon:
            return
        if rule.prob <= 0:
            raise DerivationError(f"step {pos}: zero-probability rule")
        bits -= math.log2(rule.prob)

    _replay(grammar, derivation, visit)
    return bits


def pcfg_encode(grammar: Pcfg, derivation: ParseDerivation) -> BitString:
    enc = ArithEncoder()

    def visit(pos, rule):
        lhs = rule.lhs
        if len(grammar.rules[lhs]) > 1:
            idx = grammar.rules[lhs].index(rule)
            enc.encode_symbol(grammar.table(lhs), idx)

    _replay(grammar, derivation, visit)
    return enc.finish()


def pcfg_decode(grammar: Pcfg, bits: BitString) -> ParseDerivation:
    """Expand from the start symbol, decoding a rule index at each choice.

    Total on arbitrary bit input (zero-extension), so random bits sample a
    grammatical derivation.
    """
    dec = ArithDecoder(bits)
    stack = [grammar.start]
    choices: list[tuple[str, int]] = []
    expansions = 0
    while stack:
        symbol = stack.pop()
        if not grammar.is_nonterminal(symbol):
            continue
        alts = grammar.rules[symbol]
        idx = dec.decode_symbol(grammar.table(symbol)) if len(alts) > 1 else 0
        choices.append((symbol, idx))
        stack.extend(reversed(alts[idx].rhs))
        expansions += 1
        if expansions > MAX_EXPANSIONS:
            raise DerivationError("expansion limit exceeded during decode")
    return ParseDerivation(tuple(choices))
