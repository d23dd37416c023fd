"""Hardware emitters: rule memory images and address tables.

Two targets exist.  The inference-chip target serializes the rules
themselves (16 rule slots of 4 antecedent + 2 consequent membership
functions, nibble-packed) for the min-max silicon.  The memory-chip
target precomputes the chip's answer for every possible quantized input
state, addressed by the concatenated input levels, for burning into a
plain memory part.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

import numpy as np

from fuzzchip.core import (
    ANY,
    NULL,
    MembershipFunction,
    RESOLUTION,
    round_half_away,
)
from fuzzchip.engine import ChipObject, ChipType, defuzzify_batch, evaluate_batch

MAGIC = b"FZC1"
FORMAT_VERSION = 1
IMAGE_RULE_SLOTS = 16
IMAGE_ANTECEDENTS = 4
IMAGE_CONSEQUENTS = 2
IMAGE_SIZE = 8 + IMAGE_RULE_SLOTS * (IMAGE_ANTECEDENTS + IMAGE_CONSEQUENTS) * 8

TABLE_MAX_INPUTS = 6  # 16^6 addresses = 2^24, the address-space ceiling

_EVAL_CHUNK = 1 << 16


class TargetError(ValueError):
    """The chip cannot be lowered to the requested target."""


class CapacityError(ValueError):
    """The chip exceeds a hard limit of the target."""


def pack_membership(mf: MembershipFunction) -> bytes:
    """Pack 16 truth levels into 8 bytes, level 0 in the low nibble of
    byte 0, level 1 in the high nibble, and so on.
    """
    levels = mf.levels
    return bytes(
        (levels[2 * j] & 0xF) | ((levels[2 * j + 1] & 0xF) << 4) for j in range(8)
    )


def write_rule_image(chip: ChipObject) -> bytes:
    """Serialize a MINMAX chip into the 776-byte rule memory image.

    Layout: 8-byte header (magic, format version, rule count, two
    reserved zero bytes), then 16 rule slots of 48 bytes each: four
    antecedent then two consequent membership functions, 8 bytes apiece.
    Declared positions fill in declaration order; missing antecedents pad
    with ANY and missing consequents with NULL, and unused rule slots are
    all-ANY/all-NULL, which is inert under min-max composition.
    """
    if chip.chip_type is not ChipType.MINMAX:
        raise TargetError(
            f"inference-chip target requires a MINMAX chip; {chip.name} is "
            f"{chip.chip_type.value}"
        )
    if chip.n_inputs > IMAGE_ANTECEDENTS:
        raise CapacityError(
            f"inference-chip target: max {IMAGE_ANTECEDENTS} inputs, got {chip.n_inputs}"
        )
    if chip.n_outputs > IMAGE_CONSEQUENTS:
        raise CapacityError(
            f"inference-chip target: max {IMAGE_CONSEQUENTS} outputs, got {chip.n_outputs}"
        )
    if chip.n_rules > IMAGE_RULE_SLOTS:
        raise CapacityError(
            f"inference-chip target: max {IMAGE_RULE_SLOTS} rules, got {chip.n_rules}"
        )

    blob = bytearray(MAGIC)
    blob += bytes([FORMAT_VERSION, chip.n_rules, 0, 0])
    for slot in range(IMAGE_RULE_SLOTS):
        if slot < chip.n_rules:
            rule = chip.compiled.rules[slot]
            antecedents = list(rule.antecedents) + [ANY] * (
                IMAGE_ANTECEDENTS - chip.n_inputs
            )
            consequents = list(rule.consequents) + [NULL] * (
                IMAGE_CONSEQUENTS - chip.n_outputs
            )
        else:
            antecedents = [ANY] * IMAGE_ANTECEDENTS
            consequents = [NULL] * IMAGE_CONSEQUENTS
        for mf in antecedents + consequents:
            blob += pack_membership(mf)
    assert len(blob) == IMAGE_SIZE
    return bytes(blob)


def quantize_output(y: float, u, bytesize: int) -> int:
    """Scale a crisp output into an unsigned integer of `bytesize` bits."""
    return round_half_away((y - u.lo) / u.width * ((1 << bytesize) - 1))


@dataclass(frozen=True, eq=False)
class AddressTable:
    """Dense input-state to output map for the memory-chip target.

    Row addresses run 0 .. 16^inputs - 1 with input 0 in the least
    significant nibble.  Outputs are reals when bytesize is 0, else
    unsigned integers of `bytesize` bits.  Addresses where no rule fired
    hold the output-universe midpoint and are listed in no_activation.
    """

    input_count: int
    output_count: int
    bytesize: int
    outputs: np.ndarray  # [addresses, output_count]
    no_activation: tuple[int, ...]

    @property
    def addresses(self) -> int:
        return RESOLUTION**self.input_count

    def levels_for(self, address: int) -> tuple[int, ...]:
        return tuple(
            (address >> (4 * j)) & 0xF for j in range(self.input_count)
        )

    def rows(self):
        for address in range(self.addresses):
            yield address, self.levels_for(address), tuple(self.outputs[address].tolist())

    def __eq__(self, other) -> bool:
        if not isinstance(other, AddressTable):
            return NotImplemented
        return (
            self.input_count == other.input_count
            and self.output_count == other.output_count
            and self.bytesize == other.bytesize
            and self.no_activation == other.no_activation
            and np.array_equal(self.outputs, other.outputs)
        )


def gen_table(chip: ChipObject, bytesize: int) -> AddressTable:
    """Evaluate the chip at every quantized input state.

    The address is the input state: levels are decoded from the address
    and fed straight into rule activation, bypassing the real-input
    quantizer.  bytesize 0 keeps real outputs; 1..16 scales each output
    into that many bits with round-half-away.
    """
    n = chip.n_inputs
    if n < 1:
        raise CapacityError("memory-chip target requires at least one input")
    if n > TABLE_MAX_INPUTS:
        raise CapacityError(
            f"memory-chip target: max {TABLE_MAX_INPUTS} inputs "
            f"(16^{n} addresses exceed 2^24)"
        )
    if not (bytesize == 0 or 1 <= bytesize <= 16):
        raise TargetError(f"bytesize must be 0 or 1..16, got {bytesize}")

    total = RESOLUTION**n
    shifts = 4 * np.arange(n, dtype=np.int64)
    universes = chip.output_universes
    values = np.empty((total, chip.n_outputs), dtype=np.float64)
    dead_rows = []
    for start in range(0, total, _EVAL_CHUNK):
        stop = min(start + _EVAL_CHUNK, total)
        addresses = np.arange(start, stop, dtype=np.int64)
        levels = ((addresses[:, None] >> shifts) & 0xF).astype(np.uint8)
        _, memberships = evaluate_batch(chip, levels)
        chunk_values, dead = defuzzify_batch(memberships, universes)
        values[start:stop] = chunk_values
        hit = np.nonzero(dead.any(axis=1))[0]
        if hit.size:
            dead_rows.append(addresses[hit])

    no_activation = (
        tuple(int(a) for a in np.concatenate(dead_rows)) if dead_rows else ()
    )
    if bytesize == 0:
        outputs = values
    else:
        top = (1 << bytesize) - 1
        outputs = np.empty_like(values, dtype=np.int64)
        for o, u in enumerate(universes):
            outputs[:, o] = np.floor((values[:, o] - u.lo) / u.width * top + 0.5).astype(
                np.int64
            )
    return AddressTable(n, chip.n_outputs, bytesize, outputs, no_activation)


def _fmt_value(v, bytesize: int) -> str:
    return str(int(v)) if bytesize else repr(float(v))


def emit_table(table: AddressTable) -> str:
    """Render the table as text: a header line, one row per address, and,
    when dead states exist, a trailing comment listing their addresses.
    """
    lines = [
        f"INPUT {table.input_count}  OUTPUT {table.output_count}  "
        f"BYTESIZE {table.bytesize}"
    ]
    for address, levels, outputs in table.rows():
        fields = [str(address)]
        fields += [str(l) for l in levels]
        fields += [_fmt_value(v, table.bytesize) for v in outputs]
        lines.append(" ".join(fields))
    if table.no_activation:
        lines.append(
            "(* NO-ACTIVATION " + " ".join(str(a) for a in table.no_activation) + " )"
        )
    return "\n".join(lines) + "\n"


_HEADER_RE = re.compile(
    r"^INPUT\s+(\d+)\s+OUTPUT\s+(\d+)\s+BYTESIZE\s+(\d+)\s*$"
)
_NO_ACT_RE = re.compile(r"^\(\*\s*NO-ACTIVATION\s+([\d\s]*)\)$")


def parse_table(text: str) -> AddressTable:
    """Inverse of emit_table; round-trips exactly."""
    lines = [l for l in text.splitlines() if l.strip()]
    if not lines:
        raise ValueError("empty table")
    header = _HEADER_RE.match(lines[0])
    if not header:
        raise ValueError(f"bad table header: {lines[0]!r}")
    input_count, output_count, bytesize = (int(g) for g in header.groups())

    no_activation: tuple[int, ...] = ()
    body = lines[1:]
    while body and body[-1].lstrip().startswith("(*"):
        trailer = _NO_ACT_RE.match(body.pop().strip())
        if trailer:
            no_activation = tuple(int(t) for t in trailer.group(1).split())

    total = RESOLUTION**input_count
    if len(body) != total:
        raise ValueError(f"expected {total} rows, got {len(body)}")
    dtype = np.float64 if bytesize == 0 else np.int64
    outputs = np.empty((total, output_count), dtype=dtype)
    convert = float if bytesize == 0 else int
    for expected_address, line in enumerate(body):
        fields = line.split()
        if len(fields) != 1 + input_count + output_count:
            raise ValueError(f"bad row: {line!r}")
        address = int(fields[0])
        if address != expected_address:
            raise ValueError(f"rows out of order at address {address}")
        levels = tuple(int(f) for f in fields[1 : 1 + input_count])
        expected_levels = tuple((address >> (4 * j)) & 0xF for j in range(input_count))
        if levels != expected_levels:
            raise ValueError(f"address {address} decodes to {expected_levels}, row says {levels}")
        outputs[address] = [convert(f) for f in fields[1 + input_count :]]
    return AddressTable(input_count, output_count, bytesize, outputs, no_activation)


def emit_table_binary(table: AddressTable) -> bytes:
    """Pack quantized outputs for burning: little-endian, ceil(b/8) bytes
    per value, outputs in declaration order within each address.
    """
    if table.bytesize == 0:
        raise TargetError(
            "binary emission requires a quantized table (bytesize >= 1); "
            "real-valued outputs have no canonical binary layout"
        )
    width = (table.bytesize + 7) // 8
    dtype = "<u1" if width == 1 else "<u2"
    return np.ascontiguousarray(table.outputs.astype(dtype)).tobytes()
