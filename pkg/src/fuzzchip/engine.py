"""Chip objects and the inference pipeline.

A chip object is an immutable snapshot of a compiled rule set plus a
composition type.  MINMAX chips combine rules with pure 4-bit min/max
comparisons, mirroring the multiplication-free hardware; MULTIPLICATIVE
chips combine with max-product in real arithmetic and exist only for
memory-chip targets.

Internally both types run on integer kernels (the product path carries
memberships scaled by 225 = 15 * 15), so batch and single-state
evaluation agree bit for bit and defuzzification can reduce exactly.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

import numpy as np

from fuzzchip.core import MAX_TRUTH, NAME_RE, RESOLUTION, Universe, quantize
from fuzzchip.kernels import PRODUCT_SCALE, minmax_eval, product_eval
from fuzzchip.rules import CompiledRuleSet

NO_ACTIVATION = None  # crisp-output marker for an identically zero membership


class ChipType(Enum):
    MINMAX = "MINMAX"
    MULTIPLICATIVE = "MULTIPLICATIVE"


@dataclass(frozen=True, eq=False)
class ChipObject:
    """Named, immutable inference unit. Construct via create_chip()."""

    name: str
    chip_type: ChipType
    compiled: CompiledRuleSet
    ant: np.ndarray = field(repr=False)  # [rules, inputs, 16] uint8
    con: np.ndarray = field(repr=False)  # [rules, outputs, 16] uint8

    @property
    def input_universes(self) -> tuple[Universe, ...]:
        return tuple(d.universe for d in self.compiled.inputs)

    @property
    def output_universes(self) -> tuple[Universe, ...]:
        return tuple(d.universe for d in self.compiled.outputs)

    @property
    def n_inputs(self) -> int:
        return len(self.compiled.inputs)

    @property
    def n_outputs(self) -> int:
        return len(self.compiled.outputs)

    @property
    def n_rules(self) -> int:
        return len(self.compiled.rules)


@dataclass(frozen=True)
class InferenceResult:
    """All three evaluation stages, so callers can display intermediates."""

    outputs: tuple[float | None, ...]
    memberships: tuple[tuple[float, ...], ...]
    activations: tuple[float, ...]


def create_chip(name: str, chip_type: ChipType, compiled: CompiledRuleSet) -> ChipObject:
    """Snapshot a compiled rule set as a chip object."""
    if not NAME_RE.match(name):
        raise ValueError(f"invalid chip name {name!r}")
    if not compiled.rules:
        raise ValueError("compiled rule set has no rules")
    rules = len(compiled.rules)
    ant = np.empty((rules, len(compiled.inputs), RESOLUTION), dtype=np.uint8)
    con = np.empty((rules, len(compiled.outputs), RESOLUTION), dtype=np.uint8)
    for r, rule in enumerate(compiled.rules):
        for j, mf in enumerate(rule.antecedents):
            ant[r, j, :] = mf.levels
        for o, mf in enumerate(rule.consequents):
            con[r, o, :] = mf.levels
    ant.setflags(write=False)
    con.setflags(write=False)
    return ChipObject(name, chip_type, compiled, ant, con)


def update_chip(chip: ChipObject, compiled: CompiledRuleSet) -> ChipObject:
    """Replacement snapshot after a dictionary edit; the interface is pinned."""
    if (
        compiled.inputs != chip.compiled.inputs
        or compiled.outputs != chip.compiled.outputs
    ):
        raise ValueError(
            f"signature mismatch: chip {chip.name} declares different signals"
        )
    return create_chip(chip.name, chip.chip_type, compiled)


def _check_levels(chip: ChipObject, levels) -> np.ndarray:
    if len(levels) != chip.n_inputs:
        raise ValueError(f"expected {chip.n_inputs} input levels, got {len(levels)}")
    for v in levels:
        if not 0 <= int(v) <= MAX_TRUTH:
            raise ValueError(f"input level {v} outside 0..{MAX_TRUTH}")
    return np.asarray([levels], dtype=np.uint8)


def rule_strength(chip: ChipObject, levels) -> list:
    """Per-rule activation at quantized input levels.

    The activation is the min of the antecedent lookups for both chip
    types; MULTIPLICATIVE chips report it rescaled to [0, 1].
    """
    batch = _check_levels(chip, levels)
    acts, _ = minmax_eval(chip.ant, chip.con, batch)
    row = acts[0]
    if chip.chip_type is ChipType.MINMAX:
        return [int(a) for a in row]
    return [int(a) / MAX_TRUTH for a in row]


def output_membership(chip: ChipObject, activations) -> list[list]:
    """Compose per-rule consequents under the chip's semantics.

    MINMAX takes max over rules of min(activation, consequent level),
    integer only.  MULTIPLICATIVE takes max over rules of
    activation * consequent/15 for real activations in [0, 1].
    """
    if len(activations) != chip.n_rules:
        raise ValueError(f"expected {chip.n_rules} activations, got {len(activations)}")
    out = []
    if chip.chip_type is ChipType.MINMAX:
        for a in activations:
            if not 0 <= int(a) <= MAX_TRUTH:
                raise ValueError(f"activation {a} outside 0..{MAX_TRUTH}")
        for o in range(chip.n_outputs):
            vec = []
            for k in range(RESOLUTION):
                best = 0
                for r in range(chip.n_rules):
                    c = int(chip.con[r, o, k])
                    m = min(int(activations[r]), c)
                    if m > best:
                        best = m
                vec.append(best)
            out.append(vec)
        return out
    for a in activations:
        if not 0.0 <= float(a) <= 1.0:
            raise ValueError(f"activation {a} outside [0, 1]")
    for o in range(chip.n_outputs):
        vec = []
        for k in range(RESOLUTION):
            best = 0.0
            for r in range(chip.n_rules):
                m = float(activations[r]) * (int(chip.con[r, o, k]) / MAX_TRUTH)
                if m > best:
                    best = m
            vec.append(best)
        out.append(vec)
    return out


def defuzzify(vector, u: Universe) -> float | None:
    """Centroid of one output membership over the 16 bin centers.

    Returns NO_ACTIVATION (None) when the membership is identically zero.
    Integer vectors reduce exactly: the weighted sums are integers, so the
    result is independent of summation order and identical between scalar
    and batch evaluation.
    """
    if len(vector) != RESOLUTION:
        raise ValueError(f"membership must have {RESOLUTION} entries")
    values = list(vector)
    if all(float(v).is_integer() for v in values):
        s0 = sum(int(v) for v in values)
        if s0 == 0:
            return NO_ACTIVATION
        s1 = sum(k * int(v) for k, v in enumerate(values))
        return u.lo + u.width * ((2 * s1 + s0) / (32 * s0))
    num = 0.0
    den = 0.0
    for k, v in enumerate(values):
        center = u.lo + (k + 0.5) * u.width / RESOLUTION
        num += float(v) * center
        den += float(v)
    if den == 0.0:
        return NO_ACTIVATION
    return num / den


def evaluate_batch(chip: ChipObject, levels: np.ndarray):
    """Raw integer evaluation of many quantized input states at once.

    Returns (activations [S, rules] uint8 0..15, memberships
    [S, outputs, 16] uint8).  MULTIPLICATIVE memberships are scaled by
    PRODUCT_SCALE; divide to obtain reals in [0, 1].
    """
    if chip.chip_type is ChipType.MINMAX:
        return minmax_eval(chip.ant, chip.con, levels)
    return product_eval(chip.ant, chip.con, levels)


def defuzzify_batch(memberships: np.ndarray, universes) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized centroid over integer membership batches.

    Returns (values [S, outputs] float64, dead [S, outputs] bool); dead
    cells hold the universe midpoint.  Bit-identical to defuzzify() on
    each row because the reductions are exact integer sums.
    """
    m = memberships.astype(np.int64)
    s0 = m.sum(axis=2)
    s1 = (m * np.arange(RESOLUTION, dtype=np.int64)).sum(axis=2)
    dead = s0 == 0
    safe = np.where(dead, 1, s0)
    ratio = (2 * s1 + s0) / (32 * safe)
    values = np.empty(ratio.shape, dtype=np.float64)
    for o, u in enumerate(universes):
        values[:, o] = u.lo + u.width * ratio[:, o]
        values[dead[:, o], o] = u.midpoint
    return values, dead


def assert_input(chip: ChipObject, xs) -> InferenceResult:
    """Quantize real inputs, activate rules, compose, and defuzzify."""
    if len(xs) != chip.n_inputs:
        raise ValueError(f"expected {chip.n_inputs} inputs, got {len(xs)}")
    levels = [quantize(float(x), u) for x, u in zip(xs, chip.input_universes)]
    batch = np.asarray([levels], dtype=np.uint8)
    acts, membs = evaluate_batch(chip, batch)
    raw_act = acts[0]
    raw_memb = membs[0]
    outputs = tuple(
        defuzzify([int(v) for v in raw_memb[o]], u)
        for o, u in enumerate(chip.output_universes)
    )
    if chip.chip_type is ChipType.MINMAX:
        memberships = tuple(tuple(int(v) for v in row) for row in raw_memb)
        activations = tuple(int(a) for a in raw_act)
    else:
        memberships = tuple(
            tuple(int(v) / PRODUCT_SCALE for v in row) for row in raw_memb
        )
        activations = tuple(int(a) / MAX_TRUTH for a in raw_act)
    return InferenceResult(outputs, memberships, activations)
