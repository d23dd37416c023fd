"""Rule-file language: lexer, parser, disjunction rewriting, resolution.

A rule file declares input and output signals with their universes, then
lists rules.  Antecedents are conjunctions of clauses, or an OR of
parenthesized conjunctive groups; consequents are conjunctions only.
Rewriting (normalize) expands each disjunctive rule into one conjunctive
rule per group, which is the only form the hardware targets accept.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from fuzzchip.core import (
    ANY,
    NULL,
    Adverb,
    FuzzyDictionary,
    MembershipFunction,
    NAME_RE,
    apply_adverb,
    Universe,
)

_KEYWORDS = {"IF", "THEN", "AND", "OR", "IS", "INPUT", "OUTPUT"}
_ADVERBS = {a.value: a for a in Adverb}
_NUM_RE = re.compile(r"^[+-]?(\d+\.?\d*|\.\d+)([eE][+-]?\d+)?$")


class RuleError(ValueError):
    """Syntax or resolution failure, with source position when known."""

    def __init__(self, message: str, line: int = 0, col: int = 0):
        loc = f"line {line}, col {col}: " if line else ""
        super().__init__(loc + message)
        self.line = line
        self.col = col


class Direction(Enum):
    INPUT = "INPUT"
    OUTPUT = "OUTPUT"


@dataclass(frozen=True)
class SignalDecl:
    name: str
    universe: Universe
    direction: Direction
    position: int  # ordinal within its direction, declaration order


@dataclass(frozen=True)
class Clause:
    signal: str
    adverbs: tuple[Adverb, ...]
    adjective: str
    line: int = field(default=0, compare=False)
    col: int = field(default=0, compare=False)

    def __str__(self) -> str:
        words = [self.signal, "IS", *[a.value for a in self.adverbs], self.adjective]
        return " ".join(words)


@dataclass(frozen=True)
class Rule:
    """Antecedent in disjunctive normal form (OR of ANDs), one consequent."""

    disjuncts: tuple[tuple[Clause, ...], ...]
    consequent: tuple[Clause, ...]


@dataclass(frozen=True)
class RuleSet:
    inputs: tuple[SignalDecl, ...]
    outputs: tuple[SignalDecl, ...]
    rules: tuple[Rule, ...]
    source: str = field(default="<string>", compare=False)


@dataclass(frozen=True)
class CompiledRule:
    """One conjunctive rule with every signal slot filled."""

    antecedents: tuple[MembershipFunction, ...]
    consequents: tuple[MembershipFunction, ...]


@dataclass(frozen=True)
class CompiledRuleSet:
    inputs: tuple[SignalDecl, ...]
    outputs: tuple[SignalDecl, ...]
    rules: tuple[CompiledRule, ...]


@dataclass(frozen=True)
class _Token:
    kind: str  # "(", ")", "SYM", "NUM"
    value: object
    line: int
    col: int


def _tokenize(text: str) -> list[_Token]:
    tokens: list[_Token] = []
    line, col = 1, 1
    i, n = 0, len(text)
    while i < n:
        ch = text[i]
        if ch == "\n":
            line += 1
            col = 1
            i += 1
            continue
        if ch.isspace():
            col += 1
            i += 1
            continue
        if ch == "(" and i + 1 < n and text[i + 1] == "*":
            start_line, start_col = line, col
            i += 2
            col += 2
            while i < n and text[i] != ")":
                if text[i] == "\n":
                    line += 1
                    col = 1
                else:
                    col += 1
                i += 1
            if i == n:
                raise RuleError("unterminated comment", start_line, start_col)
            i += 1
            col += 1
            continue
        if ch in "()":
            tokens.append(_Token(ch, ch, line, col))
            i += 1
            col += 1
            continue
        j = i
        while j < n and not text[j].isspace() and text[j] not in "()":
            j += 1
        word = text[i:j]
        if _NUM_RE.match(word):
            tokens.append(_Token("NUM", float(word), line, col))
        else:
            tokens.append(_Token("SYM", word.upper(), line, col))
        col += j - i
        i = j
    return tokens


class _Parser:
    def __init__(self, tokens: list[_Token], source: str):
        self.tokens = tokens
        self.pos = 0
        self.source = source

    def peek(self) -> _Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, expected: str) -> _Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1] if self.tokens else None
            raise RuleError(
                f"unexpected end of file, expected {expected}",
                last.line if last else 1,
                last.col if last else 1,
            )
        self.pos += 1
        return tok

    def expect(self, kind: str, expected: str) -> _Token:
        tok = self.next(expected)
        if tok.kind != kind:
            raise RuleError(f"expected {expected}, got {tok.value!r}", tok.line, tok.col)
        return tok

    def expect_keyword(self, word: str) -> _Token:
        tok = self.next(word)
        if tok.kind != "SYM" or tok.value != word:
            raise RuleError(f"expected {word}, got {tok.value!r}", tok.line, tok.col)
        return tok

    def at_keyword(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "SYM" and tok.value == word


def parse(text: str, source: str = "<string>") -> RuleSet:
    """Parse rule-file text into a RuleSet AST.

    Keywords are case-insensitive and identifiers are folded to upper
    case.  Clause signals are bound to declarations here; adjective
    lookup is deferred to resolve().
    """
    tokens = _tokenize(text)
    if not tokens:
        raise RuleError("no rules", 1, 1)
    p = _Parser(tokens, source)

    inputs = _parse_decl(p, Direction.INPUT, {})
    seen = {d.name: d for d in inputs}
    outputs = _parse_decl(p, Direction.OUTPUT, seen)
    decls = {d.name: d for d in inputs + outputs}

    rules = []
    while p.peek() is not None:
        rules.append(_parse_rule(p, decls))
    if not rules:
        last = tokens[-1]
        raise RuleError("no rules", last.line, last.col)
    return RuleSet(tuple(inputs), tuple(outputs), tuple(rules), source)


def _parse_decl(p: _Parser, direction: Direction, seen: dict) -> tuple[SignalDecl, ...]:
    p.expect("(", f"({direction.value} ...) declaration")
    p.expect_keyword(direction.value)
    decls: list[SignalDecl] = []
    while not (p.peek() and p.peek().kind == ")"):
        name_tok = p.expect("SYM", "signal name")
        name = str(name_tok.value)
        if name in _KEYWORDS or not NAME_RE.match(name):
            raise RuleError(f"invalid signal name {name!r}", name_tok.line, name_tok.col)
        if name in seen or any(d.name == name for d in decls):
            raise RuleError(f"duplicate declaration {name!r}", name_tok.line, name_tok.col)
        p.expect("(", "universe (lo hi)")
        lo = p.expect("NUM", "universe lower bound")
        hi = p.expect("NUM", "universe upper bound")
        p.expect(")", ")")
        try:
            universe = Universe(float(lo.value), float(hi.value))
        except ValueError as exc:
            raise RuleError(str(exc), lo.line, lo.col) from exc
        decls.append(SignalDecl(name, universe, direction, len(decls)))
    p.expect(")", ")")
    if not decls:
        tok = p.tokens[p.pos - 1]
        raise RuleError(f"empty {direction.value} declaration", tok.line, tok.col)
    return tuple(decls)


def _parse_rule(p: _Parser, decls: dict) -> Rule:
    p.expect("(", "rule")
    p.expect_keyword("IF")
    tok = p.peek()
    if tok is not None and tok.kind == "(":
        disjuncts = [_parse_group(p, decls)]
        while p.at_keyword("OR"):
            p.next("OR")
            disjuncts.append(_parse_group(p, decls))
    else:
        disjuncts = [_parse_conjunction(p, decls, Direction.INPUT)]
    p.expect_keyword("THEN")
    consequent = _parse_conjunction(p, decls, Direction.OUTPUT)
    p.expect(")", ")")
    return Rule(tuple(disjuncts), consequent)


def _parse_group(p: _Parser, decls: dict) -> tuple[Clause, ...]:
    p.expect("(", "parenthesized group")
    conj = _parse_conjunction(p, decls, Direction.INPUT)
    p.expect(")", ")")
    return conj


def _parse_conjunction(p: _Parser, decls: dict, direction: Direction) -> tuple[Clause, ...]:
    clauses = [_parse_clause(p, decls, direction)]
    while p.at_keyword("AND"):
        p.next("AND")
        clauses.append(_parse_clause(p, decls, direction))
    used = set()
    for c in clauses:
        if c.signal in used:
            raise RuleError(
                f"signal {c.signal} appears in more than one clause of the same conjunction",
                c.line,
                c.col,
            )
        used.add(c.signal)
    return tuple(clauses)


def _parse_clause(p: _Parser, decls: dict, direction: Direction) -> Clause:
    name_tok = p.expect("SYM", "signal name")
    signal = str(name_tok.value)
    if signal in _KEYWORDS or not NAME_RE.match(signal):
        raise RuleError(f"invalid signal name {signal!r}", name_tok.line, name_tok.col)
    decl = decls.get(signal)
    if decl is None:
        raise RuleError(f"unknown signal {signal!r}", name_tok.line, name_tok.col)
    if decl.direction is not direction:
        place = "an antecedent" if direction is Direction.INPUT else "a consequent"
        raise RuleError(
            f"signal {signal} is declared {decl.direction.value} and cannot appear in {place}",
            name_tok.line,
            name_tok.col,
        )
    p.expect_keyword("IS")

    words: list[_Token] = []
    while True:
        tok = p.peek()
        if tok is None or tok.kind != "SYM" or tok.value in ("AND", "OR", "THEN"):
            break
        words.append(p.next("adjective"))
    if not words:
        tok = p.peek()
        raise RuleError(
            "missing adjective after IS",
            tok.line if tok else name_tok.line,
            tok.col if tok else name_tok.col,
        )
    adjective_tok = words[-1]
    adjective = str(adjective_tok.value)
    if not NAME_RE.match(adjective):
        raise RuleError(
            f"invalid adjective {adjective!r}", adjective_tok.line, adjective_tok.col
        )
    adverbs = []
    for tok in words[:-1]:
        adverb = _ADVERBS.get(str(tok.value))
        if adverb is None:
            raise RuleError(f"unknown adverb {tok.value!r}", tok.line, tok.col)
        adverbs.append(adverb)
    return Clause(signal, tuple(adverbs), adjective, name_tok.line, name_tok.col)


def normalize(rs: RuleSet) -> RuleSet:
    """Expand each disjunctive rule into one conjunctive rule per disjunct.

    Expansion happens in place: a rule with k disjuncts is replaced by k
    rules sharing its consequent, in disjunct order.  Idempotent.
    """
    rules = []
    for rule in rs.rules:
        for disjunct in rule.disjuncts:
            rules.append(Rule((disjunct,), rule.consequent))
    return RuleSet(rs.inputs, rs.outputs, tuple(rules), rs.source)


def resolve(rs: RuleSet, dictionary: FuzzyDictionary) -> CompiledRuleSet:
    """Bind every clause to its membership function.

    Adverbs apply innermost-first (the one written next to the adjective
    goes first).  Input positions with no clause get ANY, output positions
    with no clause get NULL, so every slot of every rule is filled.
    """
    in_pos = {d.name: d.position for d in rs.inputs}
    out_pos = {d.name: d.position for d in rs.outputs}
    compiled = []
    for rule in rs.rules:
        if len(rule.disjuncts) != 1:
            raise ValueError("rule set must be normalized before resolution; call normalize()")
        antecedents: list[MembershipFunction] = [ANY] * len(rs.inputs)
        for clause in rule.disjuncts[0]:
            antecedents[in_pos[clause.signal]] = _clause_membership(clause, dictionary)
        consequents: list[MembershipFunction] = [NULL] * len(rs.outputs)
        for clause in rule.consequent:
            consequents[out_pos[clause.signal]] = _clause_membership(clause, dictionary)
        compiled.append(CompiledRule(tuple(antecedents), tuple(consequents)))
    return CompiledRuleSet(rs.inputs, rs.outputs, tuple(compiled))


def _clause_membership(clause: Clause, dictionary: FuzzyDictionary) -> MembershipFunction:
    try:
        mf = dictionary.get(clause.adjective)
    except KeyError:
        raise RuleError(
            f"unknown adjective {clause.adjective} in clause '{clause}'",
            clause.line,
            clause.col,
        ) from None
    for adverb in reversed(clause.adverbs):
        mf = apply_adverb(adverb, mf)
    return mf


def _fmt_number(x: float) -> str:
    return str(int(x)) if float(x).is_integer() else repr(float(x))


def format_rules(rs: RuleSet) -> str:
    """Emit canonical rule-file text; parse(format_rules(rs)) == rs.

    Keywords and identifiers come out upper case; comments are not
    preserved.
    """
    lines = []
    for direction, decls in (("INPUT", rs.inputs), ("OUTPUT", rs.outputs)):
        parts = " ".join(
            f"{d.name} ({_fmt_number(d.universe.lo)} {_fmt_number(d.universe.hi)})"
            for d in decls
        )
        lines.append(f"({direction} {parts})")
    for rule in rs.rules:
        lines.append("")
        consequent = " AND\n    ".join(str(c) for c in rule.consequent)
        if len(rule.disjuncts) == 1:
            antecedent = " AND\n    ".join(str(c) for c in rule.disjuncts[0])
        else:
            antecedent = " OR\n    ".join(
                "(" + " AND ".join(str(c) for c in d) + ")" for d in rule.disjuncts
            )
        lines.append(f"(IF {antecedent}\n THEN\n    {consequent})")
    return "\n".join(lines) + "\n"
