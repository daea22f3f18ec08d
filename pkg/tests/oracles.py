"""Independent reference implementations the test suite checks against."""

from __future__ import annotations

import random
from functools import lru_cache

from lggnorm.fst import text_to_symbols
from lggnorm.grammar import BoxKind, GraphIR, LabelKind, parse_graph
from lggnorm.hangul import Jamo, to_jamo_seq
from lggnorm.lexicon import Lexicon, analyze_token
from lggnorm.tokenizer import TokenClass, tokenize


def brute_levenshtein(a: tuple, b: tuple) -> int:
    """Plain recursive Levenshtein, memoized; no DP table."""

    @lru_cache(maxsize=None)
    def go(i: int, j: int) -> int:
        if i == len(a):
            return len(b) - j
        if j == len(b):
            return len(a) - i
        cost = 0 if a[i] == b[j] else 1
        return min(go(i + 1, j) + 1, go(i, j + 1) + 1, go(i + 1, j + 1) + cost)

    return go(0, 0)


# ---------------------------------------------------------------- graphs

LITERAL_SYLLABLES = ["가", "나", "다", "한", "너", "무", "요", "ㅋ", "a"]


def random_graph_text(rng: random.Random, name: str = "Rand", tag: str = "RAND",
                      max_boxes: int = 8, max_alts: int = 3,
                      allow_epsilon: bool = True, allow_mask: bool = True,
                      subgraphs: tuple[str, ...] = ()) -> str:
    """Text of a random acyclic graph in the .lgg format.

    Successors always point to higher box ids, so the box graph is a DAG;
    validity (reachability both ways) is up to the caller to check.
    """
    n_plain = rng.randint(1, max_boxes - 2)
    final_id = n_plain + 1
    lines = [f"GRAPH {name} TAG {tag}"]
    init_succ = sorted(rng.sample(range(1, n_plain + 1),
                                  rng.randint(1, n_plain)))
    lines.append(f"0 INITIAL -> {','.join(map(str, init_succ))}")
    for box in range(1, n_plain + 1):
        choices = ["literal"]
        if allow_epsilon:
            choices.append("epsilon")
        if allow_mask:
            choices.append("mask")
        if subgraphs:
            choices.append("subgraph")
        kind = rng.choice(choices)
        if kind == "literal":
            alts = []
            for _ in range(rng.randint(1, max_alts)):
                alts.append("".join(rng.choice(LITERAL_SYLLABLES)
                                    for _ in range(rng.randint(1, 2))))
            spec = '"' + "|".join(alts) + '"'
        elif kind == "epsilon":
            spec = "<E>"
        elif kind == "mask":
            spec = "<N>"
        else:
            spec = ":" + rng.choice(list(subgraphs))
        out = ""
        if rng.random() < 0.5:
            out = f' / "{rng.choice(["너무", "진짜", "x"])}"'
        succ = sorted(set(rng.choice(range(box + 1, final_id + 1))
                          for _ in range(rng.randint(1, 2))))
        lines.append(f"{box} {spec}{out} -> {','.join(map(str, succ))}")
    lines.append(f"{final_id} FINAL")
    return "\n".join(lines) + "\n"


def random_graph(rng: random.Random, **kwargs) -> GraphIR:
    return parse_graph(random_graph_text(rng, **kwargs))


# ------------------------------------------------- leftmost-longest oracle

def ordered_pairs(g: GraphIR, library=None, max_len: int = 24) -> list[tuple[str, str]]:
    """(input, output) pairs of a graph in alternative/successor order.

    Unlike enumerate_paths this keeps the DFS ordering, which is the
    tie-break order for equal spans.
    """
    lib = {gr.name: gr for gr in (library or [])}
    lib.setdefault(g.name, g)
    pairs: list[tuple[str, str]] = []

    def enter(graph, box, stack, text, length, out):
        if length > max_len:
            return
        if box.kind is BoxKind.FINAL:
            if stack:
                cgraph, cbox, cout = stack[-1]
                leave(cgraph, cbox, stack[:-1], text, length, out + cout)
            else:
                pairs.append((text, out))
            return
        if box.kind is BoxKind.INITIAL:
            leave(graph, box, stack, text, length, out)
            return
        output = box.output or ""
        for label in box.alternatives:
            if label.kind is LabelKind.LITERAL:
                step = len(text_to_symbols(label.payload))
                leave(graph, box, stack, text + label.payload, length + step,
                      out + output)
            elif label.kind is LabelKind.MASK:
                leave(graph, box, stack, text + f"<{label.payload}>", length + 1,
                      out + output)
            elif label.kind is LabelKind.EPSILON:
                leave(graph, box, stack, text, length, out + output)
            else:
                callee = lib[label.payload]
                enter(callee, callee.initial, stack + ((graph, box, output),),
                      text, length, out)

    def leave(graph, box, stack, text, length, out):
        for succ in box.successors:
            enter(graph, graph.boxes[succ], stack, text, length, out)

    enter(g, g.initial, (), "", 0, "")
    return pairs


def _unit_symbols(text: str) -> list[str]:
    return [u.char if isinstance(u, Jamo) else u for u in to_jamo_seq(text).units]


class BruteMatcher:
    """All-matches enumeration followed by greedy leftmost-longest selection.

    Independent of apply.find_matches: works from the graph IR pair lists,
    not from compiled transducers.
    """

    def __init__(self, graphs: list[GraphIR], lexicon: Lexicon, library=None):
        self.lexicon = lexicon
        self.pair_lists = [ordered_pairs(g, library or graphs) for g in graphs]
        self.names = [g.name for g in graphs]

    def _match_at(self, text_syms, char_aligned, token_info, pos, pair):
        """End unit of one pair matched at a unit position, or None."""
        inp, _ = pair
        u = pos
        for sym in text_to_symbols(inp):
            if u >= len(text_syms):
                return None
            if len(sym) > 1 and sym != "<B>":  # POS mask
                info = token_info.get(u)
                if info is None or sym[1:-1] not in info[1]:
                    return None
                u = info[0]
            elif sym == "<B>":
                if not (isinstance(text_syms[u], str) and text_syms[u].isspace()
                        and len(text_syms[u]) == 1):
                    return None
                u += 1
            else:
                if text_syms[u] != sym:
                    return None
                u += 1
        if u not in char_aligned or u == pos:
            return None
        return u

    def all_matches(self, text: str, positions, char_aligned, token_info):
        syms = _unit_symbols(text)
        found = []
        for pos in positions:
            for gi, pairs in enumerate(self.pair_lists):
                for pi, pair in enumerate(pairs):
                    end = self._match_at(syms, char_aligned, token_info, pos, pair)
                    if end is not None:
                        found.append((pos, end, gi, pi, pair[1]))
        return found

    def select(self, text: str):
        """Greedy leftmost-longest with priority and alternative-order ties."""
        seq = to_jamo_seq(text)
        unit_chars = seq.char_index_of_unit()
        char_start_unit = []
        for i, c in enumerate(unit_chars):
            if c == len(char_start_unit):
                char_start_unit.append(i)
        char_aligned = set(char_start_unit) | {len(seq.units)}

        stream = tokenize(text)
        token_info = {}
        byte = 0
        char_of_byte = {}
        b = 0
        for i, ch in enumerate(text):
            char_of_byte[b] = i
            b += len(ch.encode("utf-8"))
        for tok in stream:
            start_char = char_of_byte[tok.start]
            u = char_start_unit[start_char]
            end_char = start_char + len(tok.surface)
            end_u = (char_start_unit[end_char] if end_char < len(char_start_unit)
                     else len(seq.units))
            poses = set()
            if tok.cls is TokenClass.HANGUL:
                for a in analyze_token(tok, self.lexicon):
                    if len(a.segments) == 1:
                        poses.add(a.segments[0][1].pos.value)
            token_info[u] = (end_u, poses)

        positions = sorted(token_info)
        found = self.all_matches(text, positions, char_aligned, token_info)
        chosen = []
        i = 0
        while i < len(positions):
            pos = positions[i]
            here = [m for m in found if m[0] == pos]
            if not here:
                i += 1
                continue
            best = min(here, key=lambda m: (-m[1], m[2], m[3]))
            start_char = unit_chars[pos]
            end_char = unit_chars[best[1] - 1] + 1
            chosen.append((start_char, end_char, self.names[best[2]], best[4]))
            while i < len(positions) and positions[i] < best[1]:
                i += 1
        return chosen
