"""Discretized membership-function arithmetic.

Every signal is carried on a fixed 16-column grid: a universe of discourse
(a real interval) is split into 16 equal bins, and a membership function
assigns each bin a 4-bit truth level (0..15).  This module provides the
quantizer between physical values and grid levels, the normal/triangle
distribution generators driven by (center, tail) column pairs, the adverb
hedges (VERY, SOMEWHAT, ABOVE, BELOW), and the named-definition dictionary
with its line-oriented text format.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from enum import Enum
from pathlib import Path

RESOLUTION = 16
MAX_TRUTH = 15

NAME_RE = re.compile(r"^[A-Za-z][A-Za-z0-9._-]*$")


class DegenerateDistributionError(ValueError):
    """Raised when a generator is asked for a zero-width distribution."""


class DictionaryError(ValueError):
    """Malformed dictionary text; carries the offending line number."""

    def __init__(self, message: str, line: int = 0):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


def round_half_away(x: float) -> int:
    """Round to the nearest integer, halves away from zero.

    This is the single rounding rule applied wherever a real becomes a
    truth level or a quantized output word.
    """
    return math.floor(x + 0.5) if x >= 0 else math.ceil(x - 0.5)


@dataclass(frozen=True)
class Universe:
    """Interval of physical values a signal may take."""

    lo: float
    hi: float

    def __post_init__(self):
        if not self.lo < self.hi:
            raise ValueError(f"universe requires lo < hi, got ({self.lo}, {self.hi})")

    @property
    def width(self) -> float:
        return self.hi - self.lo

    @property
    def midpoint(self) -> float:
        return (self.lo + self.hi) / 2


@dataclass(frozen=True)
class MembershipFunction:
    """Sixteen 4-bit truth levels, indexed by grid column."""

    levels: tuple[int, ...]

    def __post_init__(self):
        if len(self.levels) != RESOLUTION:
            raise ValueError(f"expected {RESOLUTION} levels, got {len(self.levels)}")
        for v in self.levels:
            if not isinstance(v, int) or not 0 <= v <= MAX_TRUTH:
                raise ValueError(f"truth level {v!r} outside 0..{MAX_TRUTH}")

    def __getitem__(self, i: int) -> int:
        return self.levels[i]

    def __iter__(self):
        return iter(self.levels)


ANY = MembershipFunction((MAX_TRUTH,) * RESOLUTION)
NULL = MembershipFunction((0,) * RESOLUTION)


class Adverb(Enum):
    """Hedges usable in rule clauses; a closed set."""

    VERY = "VERY"
    SOMEWHAT = "SOMEWHAT"
    ABOVE = "ABOVE"
    BELOW = "BELOW"


def quantize(x: float, u: Universe) -> int:
    """Map a physical value to its grid column, clamping out-of-range input."""
    t = math.floor((x - u.lo) / u.width * RESOLUTION)
    if t < 0:
        return 0
    if t > MAX_TRUTH:
        return MAX_TRUTH
    return t


def bin_center(level: int, u: Universe) -> float:
    """Physical value at the center of a grid column."""
    if not 0 <= level < RESOLUTION:
        raise ValueError(f"level {level} outside 0..{MAX_TRUTH}")
    return u.lo + (level + 0.5) * u.width / RESOLUTION


def _check_pair(center: int, tail: int) -> None:
    for v in (center, tail):
        if not 0 <= v <= MAX_TRUTH:
            raise ValueError(f"grid column {v} outside 0..{MAX_TRUTH}")
    if center == tail:
        raise DegenerateDistributionError(
            f"center and tail coincide at column {center}"
        )


def make_normal(center: int, tail: int) -> MembershipFunction:
    """Bell distribution peaking at `center`; the tail column sits at three
    standard deviations, so its truth rounds to zero.
    """
    _check_pair(center, tail)
    sigma = abs(tail - center) / 3.0
    levels = [
        round_half_away(MAX_TRUTH * math.exp(-((i - center) ** 2) / (2.0 * sigma * sigma)))
        for i in range(RESOLUTION)
    ]
    levels[center] = MAX_TRUTH
    return MembershipFunction(tuple(levels))


def make_triangle(center: int, tail: int) -> MembershipFunction:
    """Triangular distribution peaking at `center`, reaching zero at the tail."""
    _check_pair(center, tail)
    w = abs(tail - center)
    levels = tuple(
        round_half_away(MAX_TRUTH * max(0.0, 1.0 - abs(i - center) / w))
        for i in range(RESOLUTION)
    )
    return MembershipFunction(levels)


def apply_adverb(adverb: Adverb, mf: MembershipFunction) -> MembershipFunction:
    """Transform a membership function by one hedge.

    VERY narrows (squares the normalized truth), SOMEWHAT relaxes (square
    root), ABOVE/BELOW zero the function through the peak and complement
    it beyond, producing a ramp on unimodal input.  Chains apply
    innermost-first: the adverb written next to the adjective goes first.
    """
    levels = mf.levels
    if adverb is Adverb.VERY:
        out = tuple(round_half_away(v * v / MAX_TRUTH) for v in levels)
    elif adverb is Adverb.SOMEWHAT:
        out = tuple(round_half_away(math.sqrt(MAX_TRUTH * v)) for v in levels)
    elif adverb is Adverb.ABOVE:
        peak = levels.index(max(levels))
        out = tuple(
            0 if i <= peak else MAX_TRUTH - levels[i] for i in range(RESOLUTION)
        )
    elif adverb is Adverb.BELOW:
        peak = RESOLUTION - 1 - levels[::-1].index(max(levels))
        out = tuple(
            0 if i >= peak else MAX_TRUTH - levels[i] for i in range(RESOLUTION)
        )
    else:  # pragma: no cover - closed enumeration
        raise ValueError(f"unknown adverb {adverb!r}")
    return MembershipFunction(out)


class FuzzyDictionary:
    """Named membership-function definitions, case-insensitive.

    ANY (all 15s) and NULL (all 0s) resolve as builtins unless shadowed
    by an explicit definition.
    """

    _BUILTINS = {"ANY": ANY, "NULL": NULL}

    def __init__(self):
        self._entries: dict[str, tuple[str, MembershipFunction]] = {}

    def define(self, name: str, mf: MembershipFunction) -> None:
        """Insert or replace a definition (workbench edit semantics)."""
        if not NAME_RE.match(name):
            raise ValueError(f"invalid definition name {name!r}")
        self._entries[name.upper()] = (name.upper(), mf)

    def get(self, name: str) -> MembershipFunction:
        key = name.upper()
        if key in self._entries:
            return self._entries[key][1]
        if key in self._BUILTINS:
            return self._BUILTINS[key]
        raise KeyError(name)

    def remove(self, name: str) -> None:
        del self._entries[name.upper()]

    def names(self) -> list[str]:
        return [name for name, _ in self._entries.values()]

    def items(self) -> list[tuple[str, MembershipFunction]]:
        return list(self._entries.values())

    def __contains__(self, name: str) -> bool:
        return name.upper() in self._entries or name.upper() in self._BUILTINS

    def __len__(self) -> int:
        return len(self._entries)

    def __eq__(self, other) -> bool:
        if not isinstance(other, FuzzyDictionary):
            return NotImplemented
        return self._entries == other._entries


_DEFINE_RE = re.compile(
    r"^\(\s*DEFINE\s+(?P<name>\S+)\s+\((?P<levels>[^()]*)\)\s*\)\s*$",
    re.IGNORECASE,
)


def parse_dictionary(text: str) -> FuzzyDictionary:
    """Parse dictionary text: one `(DEFINE NAME (l0 .. l15))` per line,
    `(* ...)` comment lines and blank lines allowed.
    """
    d = FuzzyDictionary()
    seen: set[str] = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("(*"):
            continue
        m = _DEFINE_RE.match(line)
        if not m:
            raise DictionaryError(f"malformed entry: {line!r}", lineno)
        name = m.group("name")
        if not NAME_RE.match(name):
            raise DictionaryError(f"invalid name {name!r}", lineno)
        if name.upper() in seen:
            raise DictionaryError(f"duplicate definition {name!r}", lineno)
        seen.add(name.upper())
        tokens = m.group("levels").split()
        if len(tokens) != RESOLUTION:
            raise DictionaryError(
                f"{name}: expected {RESOLUTION} levels, got {len(tokens)}", lineno
            )
        try:
            levels = tuple(int(t) for t in tokens)
            mf = MembershipFunction(levels)
        except ValueError as exc:
            raise DictionaryError(f"{name}: {exc}", lineno) from exc
        d.define(name, mf)
    return d


def format_dictionary(d: FuzzyDictionary) -> str:
    lines = [
        "(DEFINE %s (%s))" % (name, " ".join(str(v) for v in mf.levels))
        for name, mf in d.items()
    ]
    return "\n".join(lines) + ("\n" if lines else "")


def load_dictionary(path: str | Path) -> FuzzyDictionary:
    return parse_dictionary(Path(path).read_text(encoding="utf-8"))


def save_dictionary(d: FuzzyDictionary, path: str | Path) -> None:
    Path(path).write_text(format_dictionary(d), encoding="utf-8")


def upsert_definition(path: str | Path, name: str, mf: MembershipFunction) -> None:
    """Rewrite one definition line in place, or append a new one.

    Comment lines and entry order in the file are preserved.
    """
    path = Path(path)
    entry = "(DEFINE %s (%s))" % (name.upper(), " ".join(str(v) for v in mf.levels))
    if not path.exists():
        path.write_text(entry + "\n", encoding="utf-8")
        return
    text = path.read_text(encoding="utf-8")
    parse_dictionary(text)  # validate before touching the file
    lines = text.splitlines()
    pattern = re.compile(
        r"^\(\s*DEFINE\s+%s\s" % re.escape(name), re.IGNORECASE
    )
    for i, line in enumerate(lines):
        if pattern.match(line.strip()):
            lines[i] = entry
            break
    else:
        lines.append(entry)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
