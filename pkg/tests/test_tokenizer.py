import pytest
from hypothesis import given
from hypothesis import strategies as st

from lggnorm.tokenizer import (
    InvalidEncoding,
    TokenClass,
    char_class,
    tokenize,
    type_census,
)

NFC_SAFE = st.text(
    alphabet=st.one_of(
        st.characters(min_codepoint=0xAC00, max_codepoint=0xD7A3),
        st.characters(min_codepoint=0x3131, max_codepoint=0x318E),
        st.sampled_from(list("abcXYZ019 \t\n._*@~?!「」한국말%^&=+")),
    ),
    max_size=40,
)


def classes(text):
    return [(t.surface, t.cls) for t in tokenize(text)]


def test_hangul_sentence():
    assert classes("영화 잼있어요") == [
        ("영화", TokenClass.HANGUL),
        ("잼있어요", TokenClass.HANGUL),
    ]


def test_jamo_token():
    assert classes("ㅋㅋ") == [("ㅋㅋ", TokenClass.JAMO)]


def test_empty():
    stream = tokenize("")
    assert len(stream) == 0 and stream.source_len == 0


def test_symbol_runs_stay_single_tokens():
    assert classes("*_*") == [("*_*", TokenClass.SYMBOL)]
    assert classes("@@") == [("@@", TokenClass.SYMBOL)]


def test_mixed_script_splits_at_class_boundaries():
    assert classes("abc가1.") == [
        ("abc", TokenClass.LATIN),
        ("가", TokenClass.HANGUL),
        ("1", TokenClass.DIGIT),
        (".", TokenClass.PUNCT),
    ]


def test_jamo_symbol_mix_splits():
    assert classes("ㅜ_ㅜ") == [
        ("ㅜ", TokenClass.JAMO),
        ("_", TokenClass.SYMBOL),
        ("ㅜ", TokenClass.JAMO),
    ]


def test_byte_offsets_slice_source():
    text = "영화 잼있어요 good"
    data = text.encode("utf-8")
    for tok in tokenize(text):
        assert data[tok.start:tok.end].decode("utf-8") == tok.surface


def test_rejects_nfd():
    decomposed = "한"  # NFD 한
    with pytest.raises(InvalidEncoding):
        tokenize(decomposed)


@given(NFC_SAFE)
def test_losslessness(text):
    stream = tokenize(text)
    data = text.encode("utf-8")
    rebuilt = bytearray()
    prev = 0
    for tok in stream:
        gap = data[prev:tok.start].decode("utf-8")
        assert gap == "" or gap.isspace()
        rebuilt += data[prev:tok.start]
        rebuilt += tok.surface.encode("utf-8")
        prev = tok.end
    tail = data[prev:].decode("utf-8")
    assert tail == "" or tail.isspace()
    rebuilt += data[prev:]
    assert bytes(rebuilt) == data


@given(NFC_SAFE)
def test_class_purity(text):
    for tok in tokenize(text):
        for ch in tok.surface:
            assert char_class(ch) is tok.cls


@given(NFC_SAFE)
def test_census_counts_sum_to_token_count(text):
    stream = tokenize(text)
    assert sum(type_census(stream).values()) == len(stream)


def test_census_counts():
    stream = tokenize("영화 잼있어요 영화")
    assert type_census(stream) == {"영화": 2, "잼있어요": 1}


def test_census_folds_latin_case():
    assert type_census(tokenize("GG gg")) == {"gg": 2}


def test_census_empty():
    assert type_census(tokenize("")) == {}
