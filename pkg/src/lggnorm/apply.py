"""Run compiled transducers over text and rewrite the matched spans.

Scanning is leftmost-longest: positions are tried left to right (token
starts by default), every transducer runs at each position, the longest
consumed span wins, ties fall to grammar priority order and then to the
graph's own alternative order.  Accepted matches never overlap; REPLACE
splices outputs into the text, MERGE decorates spans in place as
``{surface,output.TAG}``.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass

from .fst import Fst, TOKEN_BOUNDARY, is_sentinel
from .hangul import Jamo, to_jamo_seq
from .lexicon import Lexicon, analyze_token
from .tokenizer import Token, TokenClass, TokenStream, tokenize


class Mode(enum.Enum):
    REPLACE = "replace"
    MERGE = "merge"


class Anchor(enum.Enum):
    TOKEN_START = "token"
    ANYWHERE = "anywhere"


@dataclass(frozen=True)
class Match:
    start: int  # byte offsets
    end: int
    surface: str
    output: str
    grammar: str
    tag: str


@dataclass(frozen=True)
class ApplyConfig:
    mode: Mode = Mode.REPLACE
    anchor: Anchor = Anchor.TOKEN_START
    grammar_priority: tuple[str, ...] = ()


def unit_symbol(unit) -> str:
    return unit.char if isinstance(unit, Jamo) else unit


class TextIndex:
    """Jamo units of a text plus the unit/char/byte/token cross-references."""

    def __init__(self, text: str, lexicon: Lexicon | None = None,
                 stream: TokenStream | None = None):
        self.text = text
        self.lexicon = lexicon
        self.stream = stream if stream is not None else tokenize(text)
        seq = to_jamo_seq(text)
        self.units = seq.units
        self.symbols = tuple(unit_symbol(u) for u in self.units)
        unit_chars = seq.char_index_of_unit()
        self.unit_chars = unit_chars

        self.char_start_unit: list[int] = []
        for i, c in enumerate(unit_chars):
            if c == len(self.char_start_unit):
                self.char_start_unit.append(i)
        n_chars = len(self.char_start_unit)
        self.char_aligned = {len(self.units)}
        self.char_aligned.update(self.char_start_unit)

        self.byte_of_char = [0] * (n_chars + 1)
        for i, ch in enumerate(text):
            self.byte_of_char[i + 1] = self.byte_of_char[i] + len(ch.encode("utf-8"))
        char_of_byte = {b: i for i, b in enumerate(self.byte_of_char)}

        self.token_at_unit: dict[int, Token] = {}
        self.token_end_unit: dict[int, int] = {}
        for tok in self.stream:
            start_char = char_of_byte[tok.start]
            end_char = start_char + len(tok.surface)
            u = self.char_start_unit[start_char]
            self.token_at_unit[u] = tok
            self.token_end_unit[u] = (self.char_start_unit[end_char]
                                      if end_char < n_chars else len(self.units))
        self._single_pos: dict[int, frozenset[str]] = {}

    def scan_positions(self, anchor: Anchor) -> list[int]:
        if anchor is Anchor.TOKEN_START:
            return sorted(self.token_at_unit)
        return list(self.char_start_unit)

    def single_pos(self, unit: int) -> frozenset[str]:
        """POS names under which the token starting here is one bare word."""
        if unit not in self._single_pos:
            tok = self.token_at_unit.get(unit)
            names: set[str] = set()
            if tok is not None and tok.cls is TokenClass.HANGUL and self.lexicon:
                for a in analyze_token(tok, self.lexicon):
                    if len(a.segments) == 1:
                        names.add(a.segments[0][1].pos.value)
            self._single_pos[unit] = frozenset(names)
        return self._single_pos[unit]

    def consume(self, symbol: str, unit: int) -> int | None:
        """Unit index after consuming one transition symbol, or None."""
        if unit >= len(self.units):
            return None
        if symbol == TOKEN_BOUNDARY:
            u = self.units[unit]
            return unit + 1 if isinstance(u, str) and u.isspace() else None
        if is_sentinel(symbol):
            if symbol[1:-1] in self.single_pos(unit):
                return self.token_end_unit[unit]
            return None
        return unit + 1 if self.symbols[unit] == symbol else None


def run_from(fst: Fst, index: TextIndex, start_unit: int,
             arcs: dict | None = None) -> tuple[int, str] | None:
    """Longest accept of ``fst`` starting at a unit; ties resolved by the
    transducer's transition order.  Accepts only at character boundaries.
    Returns (end unit, output) or None."""
    adj = arcs if arcs is not None else fst.arcs_from()
    memo: dict[tuple[int, int], tuple[int, str] | None] = {}

    def best(state: int, unit: int) -> tuple[int, str] | None:
        key = (state, unit)
        if key in memo:
            return memo[key]
        result: tuple[int, str] | None = None
        fo = fst.final_outputs.get(state)
        if fo is not None and unit in index.char_aligned:
            result = (unit, fo[0])
        for _, sym, out, dst in adj.get(state, ()):
            nxt = index.consume(sym, unit)
            if nxt is None:
                continue
            sub = best(dst, nxt)
            if sub is not None and (result is None or sub[0] > result[0]):
                result = (sub[0], out + sub[1])
        memo[key] = result
        return result

    got = best(fst.initial, start_unit)
    if got is not None and got[0] == start_unit:
        return None  # no empty matches
    return got


def find_matches(text: str, fsts: list[Fst], lexicon: Lexicon,
                 config: ApplyConfig | None = None) -> list[Match]:
    """Non-overlapping leftmost-longest matches of all transducers."""
    if config is None:
        config = ApplyConfig()
    priority = config.grammar_priority or tuple(f.name for f in fsts)
    by_name = {f.name: f for f in fsts}
    if set(priority) != set(by_name) or len(priority) != len(by_name):
        raise ValueError("grammar_priority must cover exactly the loaded grammars")
    ordered = [by_name[name] for name in priority]
    arcs = {f.name: f.arcs_from() for f in ordered}

    index = TextIndex(text, lexicon)
    positions = index.scan_positions(config.anchor)
    matches: list[Match] = []
    i = 0
    while i < len(positions):
        pos = positions[i]
        chosen: tuple[int, str, Fst] | None = None
        for fst in ordered:
            got = run_from(fst, index, pos, arcs[fst.name])
            if got is not None and (chosen is None or got[0] > chosen[0]):
                chosen = (got[0], got[1], fst)
        if chosen is None:
            i += 1
            continue
        end_unit, output, fst = chosen
        start_char = index.unit_chars[pos]
        end_char = index.unit_chars[end_unit - 1] + 1
        matches.append(Match(
            start=index.byte_of_char[start_char],
            end=index.byte_of_char[end_char],
            surface=text[start_char:end_char],
            output=output,
            grammar=fst.name,
            tag=fst.tag,
        ))
        while i < len(positions) and positions[i] < end_unit:
            i += 1
    return matches


def transform(text: str, matches: list[Match], mode: Mode) -> str:
    """Rewrite matched spans; bytes outside the spans are preserved."""
    data = text.encode("utf-8")
    parts: list[bytes] = []
    prev = 0
    for m in matches:
        parts.append(data[prev:m.start])
        if mode is Mode.REPLACE:
            parts.append(m.output.encode("utf-8"))
        else:
            parts.append(f"{{{m.surface},{m.output}.{m.tag}}}".encode("utf-8"))
        prev = m.end
    parts.append(data[prev:])
    return b"".join(parts).decode("utf-8")


_MERGE_RE = re.compile(r"\{(.*?),([^,{}]*)\.([A-Z][A-Z0-9_]*)\}")


def strip_merge(text: str) -> str:
    """Undo MERGE decorations, recovering the original surfaces."""
    return _MERGE_RE.sub(r"\1", text)


def normalize(text: str, fsts: list[Fst], lexicon: Lexicon,
              config: ApplyConfig | None = None) -> str:
    """find_matches + REPLACE in one call."""
    if config is None:
        config = ApplyConfig()
    matches = find_matches(text, fsts, lexicon, config)
    return transform(text, matches, Mode.REPLACE)
