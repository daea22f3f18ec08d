import pytest

from lggnorm.apply import (
    Anchor,
    ApplyConfig,
    Mode,
    find_matches,
    normalize,
    strip_merge,
    transform,
)
from lggnorm.fst import compile_graph
from lggnorm.grammar import parse_graph


def test_abbreviation_match(library, lexicon):
    matches = find_matches("이 상품을 강추합니다", library.fsts, lexicon)
    assert len(matches) == 1
    m = matches[0]
    assert (m.surface, m.output, m.tag) == ("강추", "강력 추천", "ABBR")


def test_match_prefix_of_compound(library, lexicon):
    matches = find_matches("초콜렛향기", library.fsts, lexicon)
    assert len(matches) == 1
    m = matches[0]
    assert m.start == 0 and m.surface == "초콜렛" and m.output == "초콜릿"


def test_standard_sentence_has_no_effective_match(library, lexicon):
    text = "효과가 좋아요"
    assert normalize(text, library.fsts, lexicon) == text


def test_replace_examples(library, lexicon):
    assert normalize("효과가 넘 좋아요", library.fsts, lexicon) == "효과가 너무 좋아요"
    assert normalize("안녕하세욤", library.fsts, lexicon) == "안녕하세요"
    assert normalize("", library.fsts, lexicon) == ""


def test_merge_decoration(library, lexicon):
    text = "영화 잼있어요"
    matches = find_matches(text, library.fsts, lexicon)
    assert transform(text, matches, Mode.MERGE) == "영화 {잼,재미.ABBR}있어요"


def test_match_surface_equals_source_slice(library, lexicon, informal_text):
    data = informal_text.encode("utf-8")
    matches = find_matches(informal_text, library.fsts, lexicon)
    assert matches
    prev_end = 0
    for m in matches:
        assert m.start < m.end
        assert m.start >= prev_end  # sorted, non-overlapping
        prev_end = m.end
        assert data[m.start:m.end].decode("utf-8") == m.surface


def test_replace_identity_with_no_matches():
    text = "아무 일도 없다"
    assert transform(text, [], Mode.REPLACE) == text


def test_merge_strip_recovers_source(library, lexicon, informal_text):
    matches = find_matches(informal_text, library.fsts, lexicon)
    merged = transform(informal_text, matches, Mode.MERGE)
    assert strip_merge(merged) == informal_text


def test_idempotent_on_corpora(library, lexicon, formal_text, informal_text):
    for text in (formal_text, informal_text):
        once = normalize(text, library.fsts, lexicon)
        assert normalize(once, library.fsts, lexicon) == once


def test_token_start_anchor_blocks_interior_match(lexicon):
    g = parse_graph('GRAPH G TAG T\n0 INITIAL -> 1\n1 "넘" / "너무" -> 9\n9 FINAL\n')
    fst = compile_graph(g)
    # 넘 appears mid-token in 안넘; TOKEN_START must not fire there
    assert find_matches("안넘", [fst], lexicon) == []
    anywhere = ApplyConfig(anchor=Anchor.ANYWHERE)
    hits = find_matches("안넘", [fst], lexicon, anywhere)
    assert [m.surface for m in hits] == ["넘"]


def test_longest_match_wins_across_grammars(lexicon):
    short = parse_graph('GRAPH Short TAG A\n0 INITIAL -> 1\n1 "가나" / "s" -> 9\n9 FINAL\n')
    long_ = parse_graph('GRAPH Long TAG B\n0 INITIAL -> 1\n1 "가나다" / "l" -> 9\n9 FINAL\n')
    fsts = [compile_graph(short), compile_graph(long_)]
    matches = find_matches("가나다", fsts, lexicon)
    assert [m.output for m in matches] == ["l"]


def test_priority_breaks_span_ties(lexicon):
    a = parse_graph('GRAPH A TAG A\n0 INITIAL -> 1\n1 "가나" / "a" -> 9\n9 FINAL\n')
    b = parse_graph('GRAPH B TAG B\n0 INITIAL -> 1\n1 "가나" / "b" -> 9\n9 FINAL\n')
    fsts = [compile_graph(a), compile_graph(b)]
    assert find_matches("가나", fsts, lexicon)[0].output == "a"
    flipped = ApplyConfig(grammar_priority=("B", "A"))
    assert find_matches("가나", fsts, lexicon, flipped)[0].output == "b"


def test_alternative_order_breaks_ties_within_graph(lexicon):
    g = parse_graph('GRAPH G TAG T\n0 INITIAL -> 1,2\n'
                    '1 "가나" / "first" -> 9\n2 "가나" / "second" -> 9\n9 FINAL\n')
    fst = compile_graph(g)
    assert find_matches("가나", [fst], lexicon)[0].output == "first"


def test_priority_must_cover_grammars(library, lexicon):
    with pytest.raises(ValueError):
        find_matches("x", library.fsts, lexicon,
                     ApplyConfig(grammar_priority=("Abbrev",)))


def test_mask_consumes_analyzable_token(lexicon):
    g = parse_graph('GRAPH G TAG T\n0 INITIAL -> 1\n'
                    '1 <N> / "명사" -> 9\n9 FINAL\n')
    fst = compile_graph(g)
    matches = find_matches("효과 잼", [fst], lexicon)
    assert [m.surface for m in matches] == ["효과"]  # 잼 is not analyzable
    assert matches[0].output == "명사"


def test_mask_pos_must_agree(lexicon):
    g = parse_graph('GRAPH G TAG T\n0 INITIAL -> 1\n1 <JOSA> -> 9\n9 FINAL\n')
    fst = compile_graph(g)
    assert find_matches("효과", [fst], lexicon) == []


def test_boundary_symbol_matches_single_space(lexicon):
    g = parse_graph('GRAPH G TAG T\n0 INITIAL -> 1\n1 "강력 추천" / "강추" -> 9\n9 FINAL\n')
    fst = compile_graph(g)
    matches = find_matches("강력 추천", [fst], lexicon)
    assert [m.surface for m in matches] == ["강력 추천"]
    assert find_matches("강력  추천", [fst], lexicon) == []


def test_emoticon_matches_span_token_boundaries(library, lexicon):
    # ㅜ_ㅜ tokenizes into three tokens but matches as one sad emoticon
    matches = find_matches("ㅜ_ㅜ 늦어요", library.fsts, lexicon)
    assert [m.surface for m in matches] == ["ㅜ_ㅜ"]
    assert matches[0].tag == "EMOTICON_SAD"
