"""Classify non-analyzable tokens into the six non-standard-form categories.

Detectors run in a fixed priority order and all firing detectors are
collected; the first one becomes the primary category:

1. EMOTICON        jamo/symbol token made of laugh/cry letters, or an
                   emoticon grammar accepts the whole token
2. ABBREVIATION    abbreviation grammar or dictionary matches a
                   token-start span
3. NEOLOGISM       neologism grammar/dictionary matches, or an unknown
                   root carries the 하-verbalizer plus an ending
4. LOANWORD_VARIANT loanword grammar matches, or a token prefix is within
                   the loan threshold of a loanword standard
5. SPACING         the token splits into two or more analyzable words
6. DEVIANT_SPELLING deviant-ending grammar matches a suffix, or the token
                   is within the deviant threshold of an analyzable form

Cheap exact tests outrank fuzzy distance tests; a clean multi-word split
(SPACING) is stronger evidence than a one-jamo edit (DEVIANT_SPELLING).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .apply import TextIndex, run_from
from .fst import Fst
from .hangul import compose_letters, distance_key, fold_letters, key_distance
from .lexicon import DictEntry, Lexicon, Pos, is_analyzable
from .tokenizer import Token, TokenClass, TokenStream

EMOTICON_SCALARS = frozenset("ㅋㅎㅠㅜㅇ_")


class Category(enum.Enum):
    SPACING = "SPACING"
    ABBREVIATION = "ABBREVIATION"
    DEVIANT_SPELLING = "DEVIANT_SPELLING"
    LOANWORD_VARIANT = "LOANWORD_VARIANT"
    NEOLOGISM = "NEOLOGISM"
    EMOTICON = "EMOTICON"
    UNKNOWN = "UNKNOWN"


# grammar tag (prefix) -> category
TAG_CATEGORIES = {
    "ABBR": Category.ABBREVIATION,
    "DEVIANT": Category.DEVIANT_SPELLING,
    "LOAN": Category.LOANWORD_VARIANT,
    "NEO": Category.NEOLOGISM,
    "EMOTICON": Category.EMOTICON,
}


def tag_category(tag: str) -> Category | None:
    for prefix, cat in TAG_CATEGORIES.items():
        if tag == prefix or tag.startswith(prefix + "_"):
            return cat
    return None


class PreconditionViolated(ValueError):
    """classify_token was handed an analyzable token."""


@dataclass(frozen=True)
class Thresholds:
    loan: int = 2     # max jamo edits from a loanword standard
    deviant: int = 1  # max jamo edits from an analyzable form


@dataclass(frozen=True)
class Candidate:
    category: Category
    evidence: str


@dataclass(frozen=True)
class ClassificationResult:
    token: Token
    primary: Category
    candidates: tuple[Candidate, ...]
    suggestion: str | None


@dataclass
class Resources:
    """Everything classification consults besides the token itself."""

    lexicon: Lexicon                       # analyzability dictionary
    fsts: list[Fst]                        # compiled root grammars
    abbr_entries: tuple[DictEntry, ...] = ()
    neo_entries: tuple[DictEntry, ...] = ()
    loan_entries: tuple[DictEntry, ...] = ()
    thresholds: Thresholds = field(default_factory=Thresholds)

    def __post_init__(self):
        self._by_category: dict[Category, list[Fst]] = {}
        for f in self.fsts:
            cat = tag_category(f.tag)
            if cat is not None:
                self._by_category.setdefault(cat, []).append(f)
        self._deviant_candidates: list[tuple[tuple, str]] | None = None
        self._loan_keys = [distance_key(e.surface) for e in self.loan_entries]

    def grammars_for(self, cat: Category) -> list[Fst]:
        return self._by_category.get(cat, [])

    def loan_keys(self) -> list[tuple]:
        return self._loan_keys

    def deviant_candidates(self) -> list[tuple[tuple, str]]:
        """(distance key, composed form) for every analyzable one- or
        two-morpheme form the lexicon can produce; the fuzzy deviant
        detector measures edit distance against these."""
        if self._deviant_candidates is None:
            by_pos: dict[Pos, list[tuple]] = {}
            for e in self.lexicon.entries:
                by_pos.setdefault(e.pos, []).append(fold_letters(e.surface))

            forms: dict[str, tuple] = {}

            def add(*keys: tuple):
                letters = sum(keys, ())
                form = compose_letters(letters)
                if form not in forms:
                    # composed output of pure syllables folds back to the
                    # same letters, so the distance key is direct; forms
                    # with leftover standalone letters take the slow path
                    if all("가" <= ch <= "힣" for ch in form):
                        forms[form] = tuple(("jamo", l) for l in letters)
                    else:
                        forms[form] = distance_key(form)

            for n in by_pos.get(Pos.N, ()):
                add(n)
                for j in by_pos.get(Pos.JOSA, ()):
                    add(n, j)
                for x in by_pos.get(Pos.XSV, ()):
                    for eo in by_pos.get(Pos.EOMI, ()):
                        add(n, x, eo)
            for pos in (Pos.V, Pos.ADJ):
                for v in by_pos.get(pos, ()):
                    for eo in by_pos.get(Pos.EOMI, ()):
                        add(v, eo)
            for pos in (Pos.ADV, Pos.DET, Pos.INTERJ, Pos.PROPER):
                for e in by_pos.get(pos, ()):
                    add(e)
            self._deviant_candidates = [(k, f) for f, k in forms.items()]
        return self._deviant_candidates


def _word_analyzable(word: str, lexicon: Lexicon) -> bool:
    return bool(word) and bool(lexicon.analyze_key(fold_letters(word)))


def _suggestion_ok(s: str, lexicon: Lexicon) -> bool:
    return bool(s) and all(_word_analyzable(w, lexicon) for w in s.split(" "))


def _splice(surface: str, start_char: int, end_char: int, output: str,
            lexicon: Lexicon) -> str:
    """Replacement suggestion for a span; falls back to inserting spaces
    at the replacement boundary when the direct splice is not a
    well-formed word."""
    direct = surface[:start_char] + output + surface[end_char:]
    if _suggestion_ok(direct, lexicon):
        return direct
    pieces = [p for p in (surface[:start_char], output, surface[end_char:]) if p]
    spaced = " ".join(pieces)
    if _suggestion_ok(spaced, lexicon):
        return spaced
    return direct


def _grammar_span(token_index: TextIndex, fsts: list[Fst], start_unit: int):
    """Longest accept over several transducers from one unit; returns
    (end_unit, output, fst) or None."""
    best = None
    for f in fsts:
        got = run_from(f, token_index, start_unit)
        if got is not None and (best is None or got[0] > best[0]):
            best = (got[0], got[1], f)
    return best


class _TokenView:
    """Unit-level view of a single token, shared by the detectors."""

    def __init__(self, token: Token, lexicon: Lexicon):
        self.token = token
        self.lexicon = lexicon
        self.index = TextIndex(token.surface, lexicon)
        self.n_units = len(self.index.units)
        self.chars = token.surface

    def char_start_units(self) -> list[int]:
        return list(self.index.char_start_unit)

    def char_of_unit(self, unit: int) -> int:
        if unit >= len(self.index.unit_chars):
            return len(self.chars)
        return self.index.unit_chars[unit]


def _detect_emoticon(view: _TokenView, res: Resources) -> tuple[Candidate, str | None] | None:
    tok = view.token
    if tok.cls not in (TokenClass.JAMO, TokenClass.SYMBOL):
        return None
    if all(ch in EMOTICON_SCALARS for ch in tok.surface):
        return Candidate(Category.EMOTICON, "emoticon-scalars"), None
    got = _grammar_span(view.index, res.grammars_for(Category.EMOTICON), 0)
    if got is not None and got[0] == view.n_units:
        return Candidate(Category.EMOTICON, f"grammar:{got[2].name}"), got[1] or None
    return None


def _prefix_entry_match(view: _TokenView, entries, suggestion_of):
    """First dictionary entry whose surface is a leading span of the token."""
    for e in entries:
        if view.chars.startswith(e.surface):
            out = suggestion_of(e)
            if out is None:
                continue
            sug = _splice(view.chars, 0, len(e.surface), out, view.lexicon)
            return e, sug
    return None


def _detect_abbreviation(view: _TokenView, res: Resources):
    if view.token.cls is not TokenClass.HANGUL:
        return None
    got = _grammar_span(view.index, res.grammars_for(Category.ABBREVIATION), 0)
    if got is not None:
        end_char = view.char_of_unit(got[0] - 1) + 1
        sug = _splice(view.chars, 0, end_char, got[1], view.lexicon)
        return Candidate(Category.ABBREVIATION, f"grammar:{got[2].name}"), sug
    hit = _prefix_entry_match(view, res.abbr_entries, lambda e: e.flag_value("exp"))
    if hit is not None:
        entry, sug = hit
        return Candidate(Category.ABBREVIATION, f"dict:{entry.surface}"), sug
    return None


def _eomi_chain(lexicon: Lexicon, key: tuple, start: int) -> bool:
    for end, e in lexicon.iter_prefix_entries(key, start):
        if e.pos is not Pos.EOMI:
            continue
        if end == len(key) or _eomi_chain(lexicon, key, end):
            return True
    return False


def _hada_root(view: _TokenView, lexicon: Lexicon) -> str | None:
    """Unknown root followed by the 하 verbalizer and at least one ending."""
    for i in range(1, len(view.chars)):
        root = view.chars[:i]
        rest_key = fold_letters(view.chars[i:])
        for end, e in lexicon.iter_prefix_entries(rest_key, 0):
            if e.pos is not Pos.XSV or e.lemma != "하":
                continue
            if _eomi_chain(lexicon, rest_key, end) and not _word_analyzable(root, lexicon):
                return root
    return None


def _detect_neologism(view: _TokenView, res: Resources):
    if view.token.cls is not TokenClass.HANGUL:
        return None
    got = _grammar_span(view.index, res.grammars_for(Category.NEOLOGISM), 0)
    if got is not None:
        end_char = view.char_of_unit(got[0] - 1) + 1
        sug = _splice(view.chars, 0, end_char, got[1], view.lexicon)
        return Candidate(Category.NEOLOGISM, f"grammar:{got[2].name}"), sug
    hit = _prefix_entry_match(view, res.neo_entries, lambda e: e.lemma)
    if hit is not None:
        entry, sug = hit
        return Candidate(Category.NEOLOGISM, f"dict:{entry.surface}"), sug
    root = _hada_root(view, res.lexicon)
    if root is not None:
        return Candidate(Category.NEOLOGISM, f"hada-pattern:{root}"), None
    return None


def _detect_loanword(view: _TokenView, res: Resources):
    if view.token.cls is not TokenClass.HANGUL:
        return None
    got = _grammar_span(view.index, res.grammars_for(Category.LOANWORD_VARIANT), 0)
    if got is not None:
        end_char = view.char_of_unit(got[0] - 1) + 1
        sug = _splice(view.chars, 0, end_char, got[1], view.lexicon)
        return Candidate(Category.LOANWORD_VARIANT, f"grammar:{got[2].name}"), sug

    limit = res.thresholds.loan
    token_key = distance_key(view.chars)
    starts = view.char_start_units()
    best = None  # (distance, -prefix_chars, entry_order) -> suggestion parts
    for order, entry in enumerate(res.loan_entries):
        entry_key = res.loan_keys()[order]
        for n_chars in range(1, len(view.chars) + 1):
            end_unit = starts[n_chars] if n_chars < len(starts) else len(token_key)
            prefix_key = token_key[:end_unit]
            d = key_distance(prefix_key, entry_key, cap=limit)
            if d <= limit:
                rank = (d, -n_chars, order)
                if best is None or rank < best[0]:
                    best = (rank, entry, n_chars)
    if best is not None:
        _, entry, n_chars = best
        sug = _splice(view.chars, 0, n_chars, entry.surface, view.lexicon)
        return Candidate(Category.LOANWORD_VARIANT,
                         f"distance:{entry.surface}"), sug
    return None


def _detect_spacing(view: _TokenView, res: Resources):
    if view.token.cls is not TokenClass.HANGUL:
        return None
    chars = view.chars
    n = len(chars)
    # fewest-words split, then lexicographically smallest word tuple
    best_split: dict[int, tuple[int, tuple[str, ...]]] = {n: (0, ())}

    def solve(i: int):
        if i in best_split:
            return best_split[i]
        best = None
        for j in range(i + 1, n + 1):
            word = chars[i:j]
            if not _word_analyzable(word, res.lexicon):
                continue
            rest = solve(j)
            if rest is None:
                continue
            cand = (rest[0] + 1, (word,) + rest[1])
            if best is None or cand < best:
                best = cand
        best_split[i] = best
        return best

    got = solve(0)
    if got is not None and got[0] >= 2:
        words = got[1]
        return Candidate(Category.SPACING, f"split:{len(words)}"), " ".join(words)
    return None


def _detect_deviant(view: _TokenView, res: Resources):
    if view.token.cls is not TokenClass.HANGUL:
        return None
    fsts = res.grammars_for(Category.DEVIANT_SPELLING)
    for start_unit in view.char_start_units():
        got = _grammar_span(view.index, fsts, start_unit)
        if got is not None and got[0] == view.n_units:
            start_char = view.char_of_unit(start_unit)
            sug = _splice(view.chars, start_char, len(view.chars), got[1],
                          res.lexicon)
            return Candidate(Category.DEVIANT_SPELLING,
                             f"grammar:{got[2].name}"), sug

    limit = res.thresholds.deviant
    token_key = distance_key(view.chars)
    best = None  # (distance, -shared_prefix, form): deviance keeps the onset
    for key, form in res.deviant_candidates():
        if abs(len(key) - len(token_key)) > limit:
            continue
        d = key_distance(token_key, key, cap=limit)
        if d > limit:
            continue
        shared = 0
        for a, b in zip(token_key, key):
            if a != b:
                break
            shared += 1
        rank = (d, -shared, form)
        if best is None or rank < best:
            best = rank
    if best is not None:
        return Candidate(Category.DEVIANT_SPELLING, f"distance:{best[0]}"), best[2]
    return None


_DETECTORS = (
    _detect_emoticon,
    _detect_abbreviation,
    _detect_neologism,
    _detect_loanword,
    _detect_spacing,
    _detect_deviant,
)


def classify_token(token: Token, res: Resources) -> ClassificationResult:
    """Classify one non-analyzable token; all firing detectors are kept
    as candidates and the first becomes the primary category."""
    if is_analyzable(token, res.lexicon):
        raise PreconditionViolated(f"token {token.surface!r} is analyzable")
    view = _TokenView(token, res.lexicon)
    candidates: list[Candidate] = []
    suggestion: str | None = None
    for detect in _DETECTORS:
        got = detect(view, res)
        if got is None:
            continue
        cand, sug = got
        candidates.append(cand)
        if len(candidates) == 1:
            suggestion = sug
    if not candidates:
        return ClassificationResult(token, Category.UNKNOWN, (), None)
    return ClassificationResult(token, candidates[0].category,
                                tuple(candidates), suggestion)


@dataclass(frozen=True)
class CorpusClassification:
    results: tuple[ClassificationResult, ...]
    counts: dict[Category, int]


def classify_corpus(stream: TokenStream, res: Resources) -> CorpusClassification:
    """Classify each distinct non-analyzable HANGUL/JAMO/SYMBOL surface
    once, in first-occurrence order."""
    seen: set[str] = set()
    results: list[ClassificationResult] = []
    counts: dict[Category, int] = {}
    for token in stream:
        if token.cls not in (TokenClass.HANGUL, TokenClass.JAMO, TokenClass.SYMBOL):
            continue
        if token.surface in seen:
            continue
        seen.add(token.surface)
        if is_analyzable(token, res.lexicon):
            continue
        result = classify_token(token, res)
        results.append(result)
        counts[result.primary] = counts.get(result.primary, 0) + 1
    return CorpusClassification(tuple(results), counts)
