"""fuzzchip: compile linguistic fuzzy control rules into simulated chip
objects, inference-chip rule memory images, and memory-chip address tables.
"""

from fuzzchip.core import (
    ANY,
    NULL,
    Adverb,
    FuzzyDictionary,
    MembershipFunction,
    Universe,
    apply_adverb,
    bin_center,
    load_dictionary,
    make_normal,
    make_triangle,
    quantize,
    save_dictionary,
)
from fuzzchip.engine import (
    ChipObject,
    ChipType,
    InferenceResult,
    NO_ACTIVATION,
    assert_input,
    create_chip,
    defuzzify,
    output_membership,
    rule_strength,
    update_chip,
)
from fuzzchip.rules import (
    CompiledRuleSet,
    RuleError,
    RuleSet,
    format_rules,
    normalize,
    parse,
    resolve,
)
from fuzzchip.network import ChipNetwork, Connection
from fuzzchip.codegen import (
    AddressTable,
    emit_table,
    emit_table_binary,
    gen_table,
    parse_table,
    write_rule_image,
)

__version__ = "0.1.0"

__all__ = [
    "ANY",
    "NULL",
    "AddressTable",
    "Adverb",
    "ChipNetwork",
    "ChipObject",
    "ChipType",
    "CompiledRuleSet",
    "Connection",
    "FuzzyDictionary",
    "InferenceResult",
    "MembershipFunction",
    "NO_ACTIVATION",
    "RuleError",
    "RuleSet",
    "Universe",
    "apply_adverb",
    "assert_input",
    "bin_center",
    "create_chip",
    "defuzzify",
    "emit_table",
    "emit_table_binary",
    "format_rules",
    "gen_table",
    "load_dictionary",
    "make_normal",
    "make_triangle",
    "normalize",
    "output_membership",
    "parse",
    "parse_table",
    "quantize",
    "resolve",
    "rule_strength",
    "save_dictionary",
    "update_chip",
    "write_rule_image",
    "__version__",
]
