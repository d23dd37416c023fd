"""Shared builders for constructing compiled rule sets directly in tests."""

from fuzzchip.core import MembershipFunction, Universe
from fuzzchip.rules import CompiledRule, CompiledRuleSet, Direction, SignalDecl

ANY_VEC = (15,) * 16
NULL_VEC = (0,) * 16


def signal_row(direction, *specs):
    """specs: (name, lo, hi) triples in declaration order."""
    return tuple(
        SignalDecl(name, Universe(lo, hi), direction, i)
        for i, (name, lo, hi) in enumerate(specs)
    )


def compiled_from_vectors(inputs, outputs, rules):
    """Build a CompiledRuleSet from raw level vectors.

    inputs/outputs: (name, lo, hi) triples.
    rules: (antecedent_vectors, consequent_vectors) pairs, one 16-vector
    per declared position.
    """
    ins = signal_row(Direction.INPUT, *inputs)
    outs = signal_row(Direction.OUTPUT, *outputs)
    compiled = []
    for ant_vecs, con_vecs in rules:
        assert len(ant_vecs) == len(ins) and len(con_vecs) == len(outs)
        compiled.append(
            CompiledRule(
                tuple(MembershipFunction(tuple(v)) for v in ant_vecs),
                tuple(MembershipFunction(tuple(v)) for v in con_vecs),
            )
        )
    return CompiledRuleSet(ins, outs, tuple(compiled))


def random_vector(rng):
    return tuple(int(rng.integers(0, 16)) for _ in range(16))


def random_compiled(rng, n_inputs=2, n_outputs=2, max_rules=16, universes=None):
    """A chip-sized random rule set; vectors uniform over the truth grid."""
    if universes is None:
        universes = [(-1.0, 1.0)] * n_inputs + [(0.0, 10.0)] * n_outputs
    ins = [(f"IN{j}", universes[j][0], universes[j][1]) for j in range(n_inputs)]
    outs = [
        (f"OUT{o}", universes[n_inputs + o][0], universes[n_inputs + o][1])
        for o in range(n_outputs)
    ]
    n_rules = int(rng.integers(1, max_rules + 1))
    rules = [
        (
            [random_vector(rng) for _ in range(n_inputs)],
            [random_vector(rng) for _ in range(n_outputs)],
        )
        for _ in range(n_rules)
    ]
    return compiled_from_vectors(ins, outs, rules)


def rules_as_oracle_input(compiled):
    """Convert a CompiledRuleSet to the plain-list form the oracles accept."""
    return [
        (
            [list(mf.levels) for mf in rule.antecedents],
            [list(mf.levels) for mf in rule.consequents],
        )
        for rule in compiled.rules
    ]
