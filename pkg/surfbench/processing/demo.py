"""
Deterministic synthetic observation dataset.

Four methods (textual passwords, chess-board graphical passwords and
association lists entered by keyboard or by mouse), each observed by active
and passive observers: 274 records in 8 groups. Every method uses one fixed
original password; guesses are the original with observer noise applied
(dropped symbols, wrong symbols, partially wrong symbols, swaps and early
give-ups), heavier for passive observers.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from surfbench.core.presets import ASSOCIATION_COLUMNS
from surfbench.core.scheme import PasswordSeq, Scheme, Symbol, decode, encode, get_preset
from surfbench.models.records import ObservationRecord, ObserverType

DEFAULT_SEED = 274

LIST_KEYBOARD_ORIGINAL = (3, 7, 1, 9, 0, 4, 6, 2, 8, 5, 1, 3, 7, 0, 9, 4, 2, 6, 8, 5, 3)
LIST_MOUSE_ORIGINAL = (5, 2, 8, 0, 6, 1, 9, 3, 7, 4, 2, 8, 5, 1, 6, 0, 9, 7, 3, 4, 6)


@dataclass(frozen=True)
class NoiseProfile:
    """Per-symbol error probabilities of one observer type."""

    drop: float
    substitute: float
    partial: float
    swap: float
    give_up: float


NOISE: dict[ObserverType, NoiseProfile] = {
    "active": NoiseProfile(drop=0.06, substitute=0.18, partial=0.14, swap=0.05, give_up=0.10),
    "passive": NoiseProfile(drop=0.10, substitute=0.30, partial=0.16, swap=0.06, give_up=0.22),
}


@dataclass(frozen=True)
class DemoMethod:
    scheme_id: str
    original: str
    median_login_s: float
    group_sizes: tuple[int, int]  # active, passive


def _list_wire(indices: tuple[int, ...]) -> str:
    columns = ASSOCIATION_COLUMNS
    return " ".join(columns[i % len(columns)][k] for i, k in enumerate(indices))


DEMO_METHODS: tuple[DemoMethod, ...] = (
    DemoMethod("textual", "Tr0ub4dor&3", 21.92, (35, 34)),
    DemoMethod("gcps", "W:N:f3 B:Q:d8 W:P:e4 B:K:g8 W:R:a1 B:B:c5 W:K:e1", 61.58, (35, 34)),
    DemoMethod("assoc-list-keyboard", _list_wire(LIST_KEYBOARD_ORIGINAL), 90.15, (34, 34)),
    DemoMethod("assoc-list-mouse", _list_wire(LIST_MOUSE_ORIGINAL), 96.09, (34, 34)),
)

DEMO_RECORD_COUNT = sum(sum(method.group_sizes) for method in DEMO_METHODS)


def demo_schemes() -> dict[str, Scheme]:
    return {method.scheme_id: get_preset(method.scheme_id) for method in DEMO_METHODS}


def _pick(rng: np.random.Generator, options: list[Symbol]) -> Symbol:
    return options[int(rng.integers(len(options)))]


def _observe(
    scheme: Scheme,
    original: PasswordSeq,
    profile: NoiseProfile,
    rng: np.random.Generator,
) -> PasswordSeq:
    alphabet = scheme.sorted_symbols
    groups = [group for group in scheme.match_groups if group.size > 1]
    guess: list[Symbol] = []
    for symbol in original.symbols:
        u = float(rng.random())
        if u < profile.drop:
            continue
        u -= profile.drop
        if u < profile.substitute:
            guess.append(_pick(rng, alphabet))
            continue
        u -= profile.substitute
        if u < profile.partial and len(groups) > 1:
            group = groups[int(rng.integers(len(groups)))]
            options = scheme.variants(symbol, group)
            guess.append(_pick(rng, options) if options else symbol)
            continue
        guess.append(symbol)

    for i in range(len(guess) - 1):
        if float(rng.random()) < profile.swap:
            guess[i], guess[i + 1] = guess[i + 1], guess[i]

    if guess and float(rng.random()) < profile.give_up:
        guess = guess[: int(rng.integers(len(guess)))]

    # indexed-list sequences keep the original's wire style
    return PasswordSeq(scheme.id, tuple(guess), wire_style=original.wire_style)


def demo_records(seed: int = DEFAULT_SEED) -> list[ObservationRecord]:
    """
    Generate the demo dataset.

    The same seed always yields the same records, in method then observer order.
    """
    rng = np.random.default_rng(seed)
    schemes = demo_schemes()
    records: list[ObservationRecord] = []
    for method in DEMO_METHODS:
        scheme = schemes[method.scheme_id]
        original = decode(scheme, method.original)
        for observer, size in zip(("active", "passive"), method.group_sizes):
            for _ in range(size):
                index = len(records) + 1
                guess = _observe(scheme, original, NOISE[observer], rng)
                login = float(rng.lognormal(mean=np.log(method.median_login_s), sigma=0.35))
                records.append(
                    ObservationRecord(
                        record_id=f"demo-{index:03d}",
                        scheme_id=method.scheme_id,
                        participant_id=f"P{index:03d}",
                        observer_type=observer,  # type: ignore[arg-type]
                        original=method.original,
                        guess=encode(scheme, guess),
                        login_time_s=round(login, 2),
                    )
                )
    return records
