"""Versioned JSON forms for rules and subshifts (the CLI wire formats).

Rule files:
    {"group": {"type": "Zd", "d": 1},
     "input_alphabet": ["0", "1"],
     "output_alphabet": ["0", "1"],
     "memory_set": [[-1], [0], [1]],
     "table": {"000": "0", ...}}        # keys in canonical support order
or  {"wolfram": 102}

Table keys join the window's symbol names when every input symbol is a
single character, and use comma-separated names otherwise.

Subshift files:
    {"kind": "sft", "group": ..., "alphabet": [...], "forbidden": [pattern...]}
    {"kind": "sofic", "alphabet": [...], "vertices": n, "edges": [[u, v, "sym"]...]}
or  {"builtin": "golden_mean" | "even_shift" | "hard_ball:d" | "ledrappier"
               | "full_shift:a"}
"""

from __future__ import annotations

from typing import List

from .automaton import CellularAutomaton, wolfram_rule
from .groups import group_from_json, element_from_json, element_to_json
from .patterns import Alphabet, pattern_from_json, pattern_to_json
from .subshift import (
    SFTPresentation,
    SoficPresentation1D,
    even_shift,
    full_shift,
    golden_mean,
    hard_ball,
    ledrappier,
    sofic_from_json,
    sofic_to_json,
)

SCHEMA_VERSION = "1"


def _window_key(alphabet: Alphabet, values) -> str:
    names = [alphabet.symbols[v] for v in values]
    if all(len(s) == 1 for s in alphabet.symbols):
        return "".join(names)
    return ",".join(names)


def _parse_window_key(alphabet: Alphabet, key: str, width: int) -> List[int]:
    if "," in key:
        names = key.split(",")
    elif all(len(s) == 1 for s in alphabet.symbols):
        names = list(key)
    else:
        raise ValueError(f"ambiguous table key {key!r}")
    if len(names) != width:
        raise ValueError(f"table key {key!r} has wrong width (want {width})")
    return [alphabet.index(s) for s in names]


def rule_to_json(ca: CellularAutomaton) -> dict:
    from .patterns import index_to_values

    a = len(ca.input_alphabet)
    width = len(ca.memory_set)
    table = {}
    for k, out in enumerate(ca.table):
        key = _window_key(ca.input_alphabet, index_to_values(a, width, k))
        table[key] = ca.output_alphabet.symbols[out]
    return {
        "schema": SCHEMA_VERSION,
        "group": ca.group.descriptor_json(),
        "input_alphabet": list(ca.input_alphabet.symbols),
        "output_alphabet": list(ca.output_alphabet.symbols),
        "memory_set": [element_to_json(ca.group, g) for g in ca.memory_set],
        "table": table,
    }


def rule_from_json(obj: dict) -> CellularAutomaton:
    if "wolfram" in obj:
        return wolfram_rule(int(obj["wolfram"]))
    group = group_from_json(obj["group"])
    input_alphabet = Alphabet(tuple(obj["input_alphabet"]))
    output_alphabet = Alphabet(tuple(obj.get("output_alphabet", obj["input_alphabet"])))
    memory = group.canon(
        element_from_json(group, g) for g in obj["memory_set"]
    )
    a = len(input_alphabet)
    width = len(memory)
    expected = a**width
    entries = obj["table"]
    if len(entries) != expected:
        raise ValueError(
            f"table has {len(entries)} entries; need {expected} "
            f"({a} symbols on {width} cells)"
        )
    from .patterns import values_to_index

    table = [None] * expected
    for key, out in entries.items():
        idx = values_to_index(a, _parse_window_key(input_alphabet, key, width))
        if table[idx] is not None:
            raise ValueError(f"duplicate table key {key!r}")
        table[idx] = output_alphabet.index(out)
    return CellularAutomaton(group, input_alphabet, output_alphabet, memory, tuple(table))


BUILTIN_SUBSHIFTS = ("golden_mean", "even_shift", "ledrappier")


def subshift_from_json(obj) -> object:
    if isinstance(obj, str):
        obj = {"builtin": obj}
    if "builtin" in obj:
        name = obj["builtin"]
        if name == "golden_mean":
            return golden_mean()
        if name == "even_shift":
            return even_shift()
        if name == "ledrappier":
            return ledrappier()
        if name.startswith("hard_ball:"):
            return hard_ball(int(name.split(":", 1)[1]))
        if name.startswith("full_shift:"):
            return full_shift(Alphabet.of_size(int(name.split(":", 1)[1])))
        raise ValueError(f"unknown builtin subshift {name!r}")
    kind = obj.get("kind", "sofic" if "edges" in obj else "sft")
    if kind == "sofic":
        return sofic_from_json(obj)
    group = group_from_json(obj.get("group", {"type": "Zd", "d": 1}))
    alphabet = Alphabet(tuple(obj["alphabet"]))
    forbidden = tuple(
        pattern_from_json(group, alphabet, item) for item in obj["forbidden"]
    )
    return SFTPresentation(group, alphabet, forbidden)


def subshift_to_json(X) -> dict:
    if isinstance(X, SoficPresentation1D):
        out = sofic_to_json(X)
        out["kind"] = "sofic"
        out["schema"] = SCHEMA_VERSION
        return out
    if isinstance(X, SFTPresentation):
        return {
            "schema": SCHEMA_VERSION,
            "kind": "sft",
            "group": X.group.descriptor_json(),
            "alphabet": list(X.alphabet.symbols),
            "forbidden": [pattern_to_json(X.group, X.alphabet, p) for p in X.forbidden],
        }
    raise TypeError(f"not a subshift presentation: {X!r}")
