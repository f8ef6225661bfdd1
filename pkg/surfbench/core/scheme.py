"""
Authentication schemes as structured alphabets.

A scheme defines composite symbols (one component per match group), a wire codec
that turns user-facing password text into symbol sequences, and entropy
categories used to estimate the effective pool of a guess.
"""

from __future__ import annotations

import itertools
import math
import re
from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any, Literal, Optional, Union

import orjson
from pydantic import BaseModel, ConfigDict, Field
from pydantic import ValidationError as PydanticValidationError

from surfbench.core.presets import PRESET_BUILDERS, preset_definition
from surfbench.exceptions import DecodeError, SchemeError
from surfbench.utils.logging import get_logger

logger = get_logger(__name__)

Symbol = tuple[str, ...]
Codec = Literal["textual-layout", "token-list", "indexed-list"]
EntropyMode = Literal["original", "guess"]

SEARCH_SPACE_THRESHOLD = 10**21

_INDEX_TOKEN = re.compile(r"#(0|[1-9][0-9]*)")


class MatchGroup(BaseModel):
    """One disjoint component of a composite symbol."""

    model_config = ConfigDict(frozen=True, extra="forbid")

    name: str = Field(min_length=1)
    size: int = Field(ge=1)


class CategoryDefinition(BaseModel):
    """Entropy category as written in a scheme file: wire tokens or "*" for all."""

    model_config = ConfigDict(extra="forbid")

    name: str = Field(min_length=1)
    members: Union[Literal["*"], list[str]]
    size: Optional[int] = Field(default=None, ge=1)


class SchemeDefinition(BaseModel):
    """The documented scheme file format."""

    model_config = ConfigDict(extra="forbid")

    id: str = Field(min_length=1, pattern=r"^[A-Za-z0-9_.-]+$")
    description: str = ""
    pool_size: int = Field(ge=2)
    codec: Codec
    match_groups: list[MatchGroup] = Field(min_length=1)
    entropy_categories: list[CategoryDefinition] = Field(min_length=1)
    reference_length: Optional[int] = Field(default=None, ge=1)
    layout: Optional[dict[str, list[str]]] = None
    lists: Optional[list[list[str]]] = None
    token_fields: Optional[list[str]] = None
    alphabets: Optional[dict[str, dict[str, str]]] = None


@dataclass(frozen=True)
class EntropyCategory:
    """A partition class of the alphabet."""

    name: str
    size: int
    members: frozenset[Symbol]


@dataclass(frozen=True)
class PasswordSeq:
    """
    A decoded password under a scheme.

    ``wire_style`` remembers how an indexed-list password was written
    ("words" or "indices") so that encoding reproduces the input text.
    """

    scheme_id: str
    symbols: tuple[Symbol, ...]
    wire_style: Optional[str] = None

    @property
    def length(self) -> int:
        return len(self.symbols)

    def __len__(self) -> int:
        return len(self.symbols)


@dataclass(frozen=True, eq=False)
class Scheme:
    """
    An authentication method's alphabet. Immutable after load.

    Attributes:
        id: Short scheme name
        pool_size: Theoretical per-character pool P
        match_groups: Ordered match groups; symbols carry one component per group
        entropy_categories: Partition of the symbol table
        symbol_table: All composite symbols
        codec: Wire-format rule
        reference_length: Password length used for this scheme in the study, if any
        definition: The validated definition the scheme was built from
    """

    id: str
    pool_size: int
    match_groups: tuple[MatchGroup, ...]
    entropy_categories: tuple[EntropyCategory, ...]
    symbol_table: frozenset[Symbol]
    codec: Codec
    definition: SchemeDefinition
    reference_length: Optional[int] = None
    description: str = ""
    _decode_table: dict[str, Symbol] = field(default_factory=dict, repr=False)
    _encode_table: dict[Symbol, str] = field(default_factory=dict, repr=False)
    _category_of: dict[Symbol, str] = field(default_factory=dict, repr=False)
    _token_fields: tuple[int, ...] = field(default=(), repr=False)
    _lists: tuple[tuple[str, ...], ...] = field(default=(), repr=False)

    @property
    def group_names(self) -> tuple[str, ...]:
        return tuple(group.name for group in self.match_groups)

    @property
    def sorted_symbols(self) -> list[Symbol]:
        return sorted(self.symbol_table)

    def group_index(self, group: Union[MatchGroup, str]) -> int:
        """Position of a match group inside composite symbols."""
        name = group.name if isinstance(group, MatchGroup) else group
        for index, candidate in enumerate(self.match_groups):
            if candidate.name == name:
                return index
        raise SchemeError(
            f"Unknown match group '{name}' for scheme '{self.id}'",
            details={"scheme": self.id, "groups": ",".join(self.group_names)},
        )

    def category_of(self, symbol: Symbol) -> str:
        return self._category_of[symbol]

    def variants(self, symbol: Symbol, group: Union[MatchGroup, str]) -> list[Symbol]:
        """Symbols that differ from ``symbol`` only in the given group's component."""
        index = self.group_index(group)
        return [
            candidate
            for candidate in self.sorted_symbols
            if candidate[index] != symbol[index]
            and all(candidate[i] == symbol[i] for i in range(len(symbol)) if i != index)
        ]

    def search_space(self, length: Optional[int] = None) -> int:
        """Exact number of passwords of the given (or reference) length."""
        length = self.reference_length if length is None else length
        if length is None:
            raise SchemeError(f"Scheme '{self.id}' has no reference_length")
        return self.pool_size**length

    def meets_search_space(
        self, length: Optional[int] = None, threshold: int = SEARCH_SPACE_THRESHOLD
    ) -> bool:
        return self.search_space(length) >= threshold

    def decode(self, wire: str) -> PasswordSeq:
        return decode(self, wire)

    def encode(self, seq: PasswordSeq) -> str:
        return encode(self, seq)


def _invariant_error(scheme_id: str, invariant: str, message: str, **details: Any) -> SchemeError:
    return SchemeError(message, details={"scheme": scheme_id, "invariant": invariant, **details})


def _layout_tables(definition: SchemeDefinition) -> tuple[dict[str, Symbol], dict[Symbol, str]]:
    if not definition.layout:
        raise _invariant_error(
            definition.id, "codec-fields", "textual-layout codec requires a 'layout' table"
        )
    width = len(definition.match_groups)
    decode_table: dict[str, Symbol] = {}
    encode_table: dict[Symbol, str] = {}
    for character, components in definition.layout.items():
        if len(character) != 1:
            raise _invariant_error(
                definition.id, "layout-keys", "layout keys must be single characters", key=character
            )
        if len(components) != width:
            raise _invariant_error(
                definition.id,
                "symbol-width",
                "every symbol must supply exactly one component per match group",
                key=character,
            )
        symbol = tuple(components)
        if symbol in encode_table:
            raise _invariant_error(
                definition.id,
                "layout-injective",
                "two characters map to the same symbol",
                key=character,
                other=encode_table[symbol],
            )
        decode_table[character] = symbol
        encode_table[symbol] = character
    return decode_table, encode_table


def _token_tables(
    definition: SchemeDefinition,
) -> tuple[dict[str, Symbol], dict[Symbol, str], tuple[int, ...]]:
    names = [group.name for group in definition.match_groups]
    fields_ = definition.token_fields
    alphabets = definition.alphabets
    if not fields_ or alphabets is None:
        raise _invariant_error(
            definition.id,
            "codec-fields",
            "token-list codec requires 'token_fields' and 'alphabets'",
        )
    if sorted(fields_) != sorted(names) or sorted(alphabets) != sorted(names):
        raise _invariant_error(
            definition.id,
            "codec-fields",
            "token_fields and alphabets must name every match group exactly once",
        )
    for name, alphabet in alphabets.items():
        if len(set(alphabet.values())) != len(alphabet):
            raise _invariant_error(
                definition.id, "alphabet-values", "alphabet values must be unique", group=name
            )
        if any(":" in code or " " in code for code in alphabet):
            raise _invariant_error(
                definition.id, "alphabet-codes", "codes may not contain ':' or spaces", group=name
            )

    order = tuple(names.index(name) for name in fields_)
    decode_table: dict[str, Symbol] = {}
    encode_table: dict[Symbol, str] = {}
    per_field = [list(alphabets[name].items()) for name in fields_]
    for combination in itertools.product(*per_field):
        components: list[str] = [""] * len(names)
        for slot, (_, value) in zip(order, combination):
            components[slot] = value
        token = ":".join(code for code, _ in combination)
        symbol = tuple(components)
        decode_table[token] = symbol
        encode_table[symbol] = token
    return decode_table, encode_table, order


def _indexed_tables(
    definition: SchemeDefinition,
) -> tuple[dict[str, Symbol], dict[Symbol, str], tuple[tuple[str, ...], ...]]:
    if len(definition.match_groups) != 1:
        raise _invariant_error(
            definition.id, "codec-fields", "indexed-list codec requires exactly one match group"
        )
    size = definition.match_groups[0].size
    lists = tuple(tuple(column) for column in (definition.lists or []))
    for position, column in enumerate(lists):
        if len(column) != size:
            raise _invariant_error(
                definition.id,
                "list-columns",
                "every list column must hold one word per group value",
                column=position,
                expected=size,
                actual=len(column),
            )
        if len(set(column)) != len(column):
            raise _invariant_error(
                definition.id, "list-columns", "words must be unique within a column", column=position
            )
        if any(not word or " " in word or word.startswith("#") for word in column):
            raise _invariant_error(
                definition.id,
                "list-columns",
                "words must be non-empty, contain no spaces and not start with '#'",
                column=position,
            )
    decode_table = {f"#{k}": (str(k),) for k in range(size)}
    encode_table = {symbol: token for token, symbol in decode_table.items()}
    return decode_table, encode_table, lists


def build_scheme(definition: SchemeDefinition) -> Scheme:
    """
    Build a Scheme from a validated definition, checking all type invariants.

    Raises:
        SchemeError: Naming the violated invariant
    """
    names = [group.name for group in definition.match_groups]
    if len(set(names)) != len(names):
        raise _invariant_error(definition.id, "group-names", "match group names must be unique")
    if not any(group.size >= 2 for group in definition.match_groups):
        raise _invariant_error(
            definition.id, "group-sizes", "at least one match group must have size >= 2"
        )

    token_fields: tuple[int, ...] = ()
    lists: tuple[tuple[str, ...], ...] = ()
    if definition.codec == "textual-layout":
        decode_table, encode_table = _layout_tables(definition)
    elif definition.codec == "token-list":
        decode_table, encode_table, token_fields = _token_tables(definition)
    else:
        decode_table, encode_table, lists = _indexed_tables(definition)

    symbol_table = frozenset(encode_table)
    for index, group in enumerate(definition.match_groups):
        values = {symbol[index] for symbol in symbol_table}
        if len(values) > group.size:
            raise _invariant_error(
                definition.id,
                "group-sizes",
                f"match group '{group.name}' has more component values than its size",
                group=group.name,
                size=group.size,
                values=len(values),
            )

    categories: list[EntropyCategory] = []
    for category in definition.entropy_categories:
        if category.members == "*":
            members = symbol_table
        else:
            resolved = []
            for token in category.members:
                if token not in decode_table:
                    raise _invariant_error(
                        definition.id,
                        "category-members",
                        "entropy category member is not a symbol of the scheme",
                        category=category.name,
                        member=token,
                    )
                resolved.append(decode_table[token])
            members = frozenset(resolved)
        size = len(members)
        if category.size is not None and category.size != size:
            raise _invariant_error(
                definition.id,
                "category-size",
                "declared category size does not match its members",
                category=category.name,
                declared=category.size,
                members=size,
            )
        categories.append(EntropyCategory(name=category.name, size=size, members=members))

    total = sum(category.size for category in categories)
    if total != definition.pool_size:
        raise _invariant_error(
            definition.id,
            "category-sizes-sum",
            f"entropy category sizes sum to {total}, expected pool_size {definition.pool_size}",
            total=total,
            pool_size=definition.pool_size,
        )

    category_of: dict[Symbol, str] = {}
    for category in categories:
        for symbol in category.members:
            if symbol in category_of:
                raise _invariant_error(
                    definition.id,
                    "category-partition",
                    "a symbol belongs to more than one entropy category",
                    categories=f"{category_of[symbol]},{category.name}",
                )
            category_of[symbol] = category.name
    if len(category_of) != len(symbol_table):
        raise _invariant_error(
            definition.id,
            "category-partition",
            "entropy categories do not cover the symbol table",
            covered=len(category_of),
            symbols=len(symbol_table),
        )

    return Scheme(
        id=definition.id,
        pool_size=definition.pool_size,
        match_groups=tuple(definition.match_groups),
        entropy_categories=tuple(categories),
        symbol_table=symbol_table,
        codec=definition.codec,
        definition=definition,
        reference_length=definition.reference_length,
        description=definition.description,
        _decode_table=decode_table,
        _encode_table=encode_table,
        _category_of=category_of,
        _token_fields=token_fields,
        _lists=lists,
    )


def _validate_definition(data: Any, source: str) -> SchemeDefinition:
    try:
        return SchemeDefinition.model_validate(data)
    except PydanticValidationError as e:
        first = e.errors()[0]
        location = ".".join(str(part) for part in first["loc"])
        raise SchemeError(
            f"Invalid scheme definition: {first['msg']}",
            details={"source": source, "field": location, "errors": e.error_count()},
        ) from e


def load_scheme(definition_text: Union[str, bytes], source: str = "<text>") -> Scheme:
    """
    Load a scheme from its JSON definition text.

    Args:
        definition_text: Scheme file contents
        source: Label used in error details (usually the file path)

    Returns:
        Scheme satisfying all invariants

    Raises:
        SchemeError: On parse errors (with line/column) or invariant violations
    """
    try:
        data = orjson.loads(definition_text)
    except orjson.JSONDecodeError as e:
        raise SchemeError(
            f"Scheme file is not valid JSON: {e.msg}",
            details={"source": source, "line": e.lineno, "column": e.colno},
        ) from e

    scheme = build_scheme(_validate_definition(data, source))
    logger.debug("Loaded scheme", scheme=scheme.id, source=source, pool_size=scheme.pool_size)
    return scheme


def load_scheme_file(path: Union[str, Path]) -> Scheme:
    """Load a scheme from a JSON file."""
    path = Path(path)
    try:
        text = path.read_bytes()
    except OSError as e:
        raise SchemeError("Cannot read scheme file", details={"path": str(path), "error": str(e)}) from e
    return load_scheme(text, source=str(path))


def preset_ids() -> list[str]:
    return list(PRESET_BUILDERS)


def get_preset(scheme_id: str) -> Scheme:
    """Load a built-in scheme without a file."""
    if scheme_id not in PRESET_BUILDERS:
        raise SchemeError(
            f"Unknown preset '{scheme_id}'",
            details={"available": ",".join(PRESET_BUILDERS)},
        )
    return build_scheme(_validate_definition(preset_definition(scheme_id), f"preset:{scheme_id}"))


def load_schemes(schemes_dir: Optional[Union[str, Path]] = None) -> dict[str, Scheme]:
    """
    Load the built-in presets plus every ``*.json`` scheme in a directory.

    Directory schemes replace presets with the same id.
    """
    schemes = {scheme_id: get_preset(scheme_id) for scheme_id in PRESET_BUILDERS}
    if schemes_dir is None:
        return schemes

    directory = Path(schemes_dir)
    if not directory.is_dir():
        raise SchemeError("Schemes directory not found", details={"path": str(directory)})
    for path in sorted(directory.glob("*.json")):
        scheme = load_scheme_file(path)
        if scheme.id in schemes:
            logger.warning("Scheme file overrides existing scheme", scheme=scheme.id, path=str(path))
        schemes[scheme.id] = scheme
    return schemes


def resolve_scheme(schemes: Mapping[str, Scheme], scheme_id: str) -> Scheme:
    try:
        return schemes[scheme_id]
    except KeyError:
        raise SchemeError(
            f"Unknown scheme '{scheme_id}'",
            details={"available": ",".join(sorted(schemes))},
        ) from None


def _split_tokens(scheme: Scheme, wire: str) -> list[str]:
    if wire == "":
        return []
    tokens = wire.split(" ")
    for position, token in enumerate(tokens):
        if token == "":
            raise DecodeError(
                "Empty token (tokens are separated by single spaces)",
                details={"scheme": scheme.id, "position": position},
            )
    return tokens


def decode(scheme: Scheme, wire: str) -> PasswordSeq:
    """
    Decode wire text into a symbol sequence.

    Raises:
        DecodeError: Unknown character/token, malformed token or out-of-range index
    """
    if scheme.codec == "textual-layout":
        symbols = []
        for position, character in enumerate(wire):
            try:
                symbols.append(scheme._decode_table[character])
            except KeyError:
                raise DecodeError(
                    f"Character {character!r} is not in the layout of scheme '{scheme.id}'",
                    details={"scheme": scheme.id, "position": position, "token": character},
                ) from None
        return PasswordSeq(scheme.id, tuple(symbols))

    tokens = _split_tokens(scheme, wire)

    if scheme.codec == "token-list":
        width = len(scheme._token_fields)
        symbols = []
        for position, token in enumerate(tokens):
            if token.count(":") != width - 1:
                raise DecodeError(
                    f"Malformed token {token!r}: expected {width} ':'-separated fields",
                    details={"scheme": scheme.id, "position": position, "token": token},
                )
            try:
                symbols.append(scheme._decode_table[token])
            except KeyError:
                raise DecodeError(
                    f"Unknown token {token!r} for scheme '{scheme.id}'",
                    details={"scheme": scheme.id, "position": position, "token": token},
                ) from None
        return PasswordSeq(scheme.id, tuple(symbols))

    return _decode_indexed(scheme, tokens)


def _decode_indexed(scheme: Scheme, tokens: list[str]) -> PasswordSeq:
    styles = {"indices" if token.startswith("#") else "words" for token in tokens}
    if len(styles) > 1:
        raise DecodeError(
            "Mixed word and index tokens",
            details={"scheme": scheme.id},
        )
    size = scheme.match_groups[0].size
    symbols = []
    for position, token in enumerate(tokens):
        if token.startswith("#"):
            match = _INDEX_TOKEN.fullmatch(token)
            if match is None:
                raise DecodeError(
                    f"Malformed index token {token!r}",
                    details={"scheme": scheme.id, "position": position, "token": token},
                )
            index = int(match.group(1))
            if index >= size:
                raise DecodeError(
                    f"Index {index} out of range 0-{size - 1}",
                    details={"scheme": scheme.id, "position": position, "token": token},
                )
        else:
            if not scheme._lists:
                raise DecodeError(
                    f"Scheme '{scheme.id}' has no word lists; use #k index tokens",
                    details={"scheme": scheme.id, "position": position, "token": token},
                )
            column = scheme._lists[position % len(scheme._lists)]
            try:
                index = column.index(token)
            except ValueError:
                raise DecodeError(
                    f"Word {token!r} is not in list column {position % len(scheme._lists)}",
                    details={"scheme": scheme.id, "position": position, "token": token},
                ) from None
        symbols.append((str(index),))
    style = styles.pop() if styles else None
    return PasswordSeq(scheme.id, tuple(symbols), wire_style=style)


def encode(scheme: Scheme, seq: PasswordSeq) -> str:
    """Encode a symbol sequence back to wire text; inverse of decode."""
    if seq.scheme_id != scheme.id:
        raise DecodeError(
            "Sequence belongs to another scheme",
            details={"scheme": scheme.id, "sequence_scheme": seq.scheme_id},
        )
    for position, symbol in enumerate(seq.symbols):
        if symbol not in scheme.symbol_table:
            raise DecodeError(
                "Symbol is not in the scheme's symbol table",
                details={"scheme": scheme.id, "position": position, "symbol": symbol},
            )

    if scheme.codec == "textual-layout":
        return "".join(scheme._encode_table[symbol] for symbol in seq.symbols)
    if scheme.codec == "indexed-list" and seq.wire_style == "words" and scheme._lists:
        columns = scheme._lists
        return " ".join(
            columns[position % len(columns)][int(symbol[0])]
            for position, symbol in enumerate(seq.symbols)
        )
    return " ".join(scheme._encode_table[symbol] for symbol in seq.symbols)


def make_sequence(
    scheme: Scheme, symbols: Iterable[Symbol], wire_style: Optional[str] = None
) -> PasswordSeq:
    """Build a PasswordSeq from symbols, checking membership."""
    symbols = tuple(symbols)
    for position, symbol in enumerate(symbols):
        if symbol not in scheme.symbol_table:
            raise DecodeError(
                "Symbol is not in the scheme's symbol table",
                details={"scheme": scheme.id, "position": position, "symbol": symbol},
            )
    return PasswordSeq(scheme.id, symbols, wire_style=wire_style)


def project(scheme: Scheme, seq: PasswordSeq, group: Union[MatchGroup, str]) -> tuple[str, ...]:
    """
    Project a sequence onto one match group.

    Returns:
        The group component of every symbol, same length as ``seq``

    Raises:
        SchemeError: Unknown group name
    """
    index = scheme.group_index(group)
    return tuple(symbol[index] for symbol in seq.symbols)


def effective_pool(scheme: Scheme, seq: PasswordSeq) -> int:
    """Sum of the sizes of entropy categories represented in ``seq``."""
    if len(scheme.entropy_categories) == 1:
        return scheme.pool_size
    present = {scheme.category_of(symbol) for symbol in seq.symbols}
    return sum(category.size for category in scheme.entropy_categories if category.name in present)


def entropy_bits(scheme: Scheme, seq: PasswordSeq, mode: EntropyMode = "original") -> float:
    """
    Password entropy as l * log2(p).

    ``original`` uses the scheme pool; ``guess`` uses the effective pool of the
    categories present in the sequence.
    """
    if seq.length == 0:
        return 0.0
    pool = scheme.pool_size if mode == "original" else effective_pool(scheme, seq)
    return seq.length * math.log2(pool)
