"""Corpus-level counts: tokens, types, and the non-analyzable type ratio."""

from __future__ import annotations

from dataclasses import dataclass

from .lexicon import Lexicon, is_analyzable
from .tokenizer import TokenStream, fold_surface


@dataclass(frozen=True)
class CorpusStats:
    token_count: int
    type_count: int
    non_analyzable_types: int
    non_analyzable_ratio: float  # percent
    empty: bool = False

    @classmethod
    def from_counts(cls, token_count: int, type_count: int,
                    non_analyzable_types: int) -> "CorpusStats":
        if type_count == 0:
            return cls(token_count, 0, 0, 0.0, empty=True)
        return cls(token_count, type_count, non_analyzable_types,
                   100.0 * non_analyzable_types / type_count)

    @property
    def ratio_str(self) -> str:
        return f"{self.non_analyzable_ratio:.1f}"

    def rows(self) -> list[tuple[str, str]]:
        return [
            ("corpus_size", str(self.token_count)),
            ("types", str(self.type_count)),
            ("non_analyzable_types", str(self.non_analyzable_types)),
            ("non_analyzable_pct", self.ratio_str),
        ]


def corpus_stats(stream: TokenStream, lexicon: Lexicon) -> CorpusStats:
    """Token/type counts plus how many types the dictionary rejects."""
    representatives = {}
    for token in stream:
        representatives.setdefault(fold_surface(token), token)
    non_analyzable = sum(
        1 for token in representatives.values() if not is_analyzable(token, lexicon)
    )
    return CorpusStats.from_counts(len(stream.tokens), len(representatives),
                                   non_analyzable)


@dataclass(frozen=True)
class ComparisonReport:
    label_a: str
    label_b: str
    a: CorpusStats
    b: CorpusStats

    @property
    def token_delta(self) -> int:
        return self.b.token_count - self.a.token_count

    @property
    def type_delta(self) -> int:
        return self.b.type_count - self.a.type_count

    @property
    def non_analyzable_delta(self) -> int:
        return self.b.non_analyzable_types - self.a.non_analyzable_types

    @property
    def ratio_delta(self) -> float:
        return self.b.non_analyzable_ratio - self.a.non_analyzable_ratio


def compare(a: CorpusStats, b: CorpusStats,
            label_a: str = "A", label_b: str = "B") -> ComparisonReport:
    """Side-by-side stats with B minus A deltas."""
    return ComparisonReport(label_a, label_b, a, b)
