"""Lossless tokenization into classified, byte-addressed spans.

Each non-space character belongs to exactly one class; a token is a
maximal run of same-class characters, so reassembling token surfaces and
the whitespace between them reproduces the input byte for byte.
"""

from __future__ import annotations

import enum
import unicodedata
from collections import Counter
from dataclasses import dataclass

from .hangul import COMPAT_FIRST, COMPAT_LAST, SYLLABLE_BASE, SYLLABLE_LAST


class InvalidEncoding(ValueError):
    """Input text is not NFC-normalized."""


class TokenClass(enum.Enum):
    HANGUL = "HANGUL"
    JAMO = "JAMO"
    LATIN = "LATIN"
    DIGIT = "DIGIT"
    PUNCT = "PUNCT"
    SYMBOL = "SYMBOL"


# Sentence punctuation is kept apart from SYMBOL runs so that emoticons
# like *_* or @@ form single SYMBOL tokens while a trailing "." does not
# count against the non-analyzable ratio.
PUNCT_CHARS = frozenset(".,!?;:…·'\"()[]{}“”‘’「」『』~-")


@dataclass(frozen=True)
class Token:
    surface: str
    cls: TokenClass
    start: int  # byte offset into the UTF-8 encoding
    end: int

    def __repr__(self):
        return f"Token({self.surface!r}/{self.cls.value} @{self.start}:{self.end})"


@dataclass(frozen=True)
class TokenStream:
    tokens: tuple[Token, ...]
    source_len: int  # byte count

    def __iter__(self):
        return iter(self.tokens)

    def __len__(self):
        return len(self.tokens)


def char_class(ch: str) -> TokenClass | None:
    """Class of one scalar; None for whitespace (token gap)."""
    o = ord(ch)
    if SYLLABLE_BASE <= o <= SYLLABLE_LAST:
        return TokenClass.HANGUL
    if COMPAT_FIRST <= o <= COMPAT_LAST:
        return TokenClass.JAMO
    if ch.isascii():
        if ch.isalpha():
            return TokenClass.LATIN
        if ch.isdigit():
            return TokenClass.DIGIT
    if ch.isspace():
        return None
    if ch in PUNCT_CHARS:
        return TokenClass.PUNCT
    return TokenClass.SYMBOL


def tokenize(text: str) -> TokenStream:
    """Split NFC text into maximal same-class runs with byte offsets."""
    if not unicodedata.is_normalized("NFC", text):
        raise InvalidEncoding("input must be NFC-normalized")
    tokens: list[Token] = []
    run: list[str] = []
    run_cls: TokenClass | None = None
    run_start = 0
    byte = 0

    def flush(end_byte: int):
        if run:
            tokens.append(Token("".join(run), run_cls, run_start, end_byte))
            run.clear()

    for ch in text:
        cls = char_class(ch)
        width = len(ch.encode("utf-8"))
        if cls is None:
            flush(byte)
            run_cls = None
        elif cls is run_cls:
            run.append(ch)
        else:
            flush(byte)
            run_cls = cls
            run_start = byte
            run.append(ch)
        byte += width
    flush(byte)
    return TokenStream(tuple(tokens), byte)


def fold_surface(token: Token) -> str:
    """Census key for a token: LATIN lowercased, everything else verbatim."""
    if token.cls is TokenClass.LATIN:
        return token.surface.lower()
    return token.surface


def type_census(stream: TokenStream) -> dict[str, int]:
    """Occurrence count per distinct (case-folded) surface."""
    return dict(Counter(fold_surface(t) for t in stream))
