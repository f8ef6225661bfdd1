"""
Built-in scheme definitions.

Presets are plain JSON-compatible dictionaries validated by the same path as
scheme files, so a preset can be dumped, edited and reloaded from disk.
"""

from __future__ import annotations

import string
from typing import Any

# US-style layout: (unshifted, shifted) per character key. Space has no shifted form.
US_KEY_PAIRS: tuple[tuple[str, str], ...] = (
    ("`", "~"), ("1", "!"), ("2", "@"), ("3", "#"), ("4", "$"), ("5", "%"), ("6", "^"),
    ("7", "&"), ("8", "*"), ("9", "("), ("0", ")"), ("-", "_"), ("=", "+"),
    *((c, c.upper()) for c in "qwertyuiop"), ("[", "{"), ("]", "}"), ("\\", "|"),
    *((c, c.upper()) for c in "asdfghjkl"), (";", ":"), ("'", '"'),
    *((c, c.upper()) for c in "zxcvbnm"), (",", "<"), (".", ">"), ("/", "?"),
)

# 48 keys are reachable; the ISO 102nd key counts towards the group size only.
TEXTUAL_KEY_GROUP_SIZE = 49
TEXTUAL_MODIFIERS = ("none", "shift", "altgr")

CHESS_COLORS = {"W": "white", "B": "black"}
CHESS_FIGURES = {
    "P": "pawn",
    "R": "rook",
    "N": "knight",
    "B": "bishop",
    "Q": "queen",
    "K": "king",
}
CHESS_SQUARES = tuple(f"{file}{rank}" for file in "abcdefgh" for rank in range(1, 9))

ASSOCIATION_COLUMNS: tuple[tuple[str, ...], ...] = (
    ("tiger", "falcon", "otter", "badger", "heron", "lynx", "walrus", "gecko", "bison", "raven"),
    ("lantern", "anchor", "violin", "compass", "kettle", "ladder", "mirror", "saddle", "candle", "barrel"),
    ("river", "meadow", "glacier", "canyon", "harbor", "orchard", "desert", "lagoon", "summit", "prairie"),
)


def _textual_layout() -> dict[str, list[str]]:
    layout: dict[str, list[str]] = {" ": ["space", "none"]}
    for unshifted, shifted in US_KEY_PAIRS:
        layout[unshifted] = [unshifted, "none"]
        layout[shifted] = [unshifted, "shift"]
    return layout


def textual_definition() -> dict[str, Any]:
    """Textual passwords: 95 printable ASCII characters on a US-style layout."""
    symbols = list(string.punctuation) + [" "]
    return {
        "id": "textual",
        "description": "Textual passwords typed on a US-style keyboard",
        "pool_size": 95,
        "codec": "textual-layout",
        "reference_length": 11,
        "match_groups": [
            {"name": "key", "size": TEXTUAL_KEY_GROUP_SIZE},
            {"name": "modifier", "size": len(TEXTUAL_MODIFIERS)},
        ],
        "entropy_categories": [
            {"name": "numeric", "members": list(string.digits)},
            {"name": "lowercase", "members": list(string.ascii_lowercase)},
            {"name": "uppercase", "members": list(string.ascii_uppercase)},
            {"name": "symbols", "members": symbols},
        ],
        "layout": _textual_layout(),
    }


def gcps_definition() -> dict[str, Any]:
    """Chess-board graphical passwords: figure, color and square per move."""
    return {
        "id": "gcps",
        "description": "Game Changer Password System, chess variant",
        "pool_size": len(CHESS_FIGURES) * len(CHESS_COLORS) * len(CHESS_SQUARES),
        "codec": "token-list",
        "reference_length": 7,
        "match_groups": [
            {"name": "figure", "size": len(CHESS_FIGURES)},
            {"name": "color", "size": len(CHESS_COLORS)},
            {"name": "square", "size": len(CHESS_SQUARES)},
        ],
        "entropy_categories": [{"name": "moves", "members": "*"}],
        "token_fields": ["color", "figure", "square"],
        "alphabets": {
            "color": dict(CHESS_COLORS),
            "figure": dict(CHESS_FIGURES),
            "square": {square: square for square in CHESS_SQUARES},
        },
    }


def association_list_definition(scheme_id: str = "assoc-list", description: str = "") -> dict[str, Any]:
    """Association lists: one word per column, columns cycled left to right."""
    column_size = len(ASSOCIATION_COLUMNS[0])
    return {
        "id": scheme_id,
        "description": description or "Association list passwords",
        "pool_size": column_size,
        "codec": "indexed-list",
        "reference_length": 21,
        "match_groups": [{"name": "word", "size": column_size}],
        "entropy_categories": [{"name": "words", "members": "*"}],
        "lists": [list(column) for column in ASSOCIATION_COLUMNS],
    }


PRESET_BUILDERS = {
    "textual": textual_definition,
    "gcps": gcps_definition,
    "assoc-list": association_list_definition,
    "assoc-list-keyboard": lambda: association_list_definition(
        "assoc-list-keyboard", "Association list passwords entered by numeric keyboard"
    ),
    "assoc-list-mouse": lambda: association_list_definition(
        "assoc-list-mouse", "Association list passwords entered by mouse"
    ),
}


def preset_definition(scheme_id: str) -> dict[str, Any]:
    """Return a fresh copy of a built-in scheme definition."""
    return PRESET_BUILDERS[scheme_id]()
