"""Compile local grammar graphs into finite-state transducers.

Compilation inlines subgraph calls (the call graph must be acyclic),
expands every literal alternative into a chain of jamo-unit transitions,
then removes epsilon transitions while pushing their outputs forward.
Outputs that would be emitted after the last consumed symbol survive as
per-final-state output strings, so the compiled relation is exactly the
graph's input/output relation.

Input symbols are single characters (conjoining jamo for decomposed
syllables, compatibility jamo and other characters verbatim), ``<POS>``
mask sentinels bound to whole tokens at application time, and the
``<B>`` token-boundary sentinel produced by a space inside a literal.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .grammar import Box, BoxKind, GraphIR, LabelKind, validate, _library_by_name
from .hangul import decompose_syllable, is_syllable

TOKEN_BOUNDARY = "<B>"
DEFAULT_MAX_STATES = 100_000

_SENTINEL_RE = re.compile(r"<[A-Z]+>")


class CompileError(ValueError):
    """Base class for graph compilation failures."""


class GraphValidationError(CompileError):
    def __init__(self, diagnostics):
        self.diagnostics = list(diagnostics)
        super().__init__("; ".join(str(d) for d in self.diagnostics))


class EpsilonOnlyPath(CompileError):
    """The graph accepts the empty input."""


class EpsilonCycle(CompileError):
    """An epsilon cycle emitting output would make the relation infinite."""


class CompileOverflow(CompileError):
    """Inlined state count exceeded the configured cap."""


def mask_symbol(pos_name: str) -> str:
    return f"<{pos_name}>"


def is_sentinel(symbol: str) -> bool:
    return len(symbol) > 1


def literal_symbols(text: str) -> list[str]:
    """Input symbols for a literal: syllables decompose, space becomes <B>."""
    syms: list[str] = []
    for ch in text:
        if is_syllable(ch):
            ini, med, fin = decompose_syllable(ch)
            syms.append(ini.char)
            syms.append(med.char)
            if fin is not None:
                syms.append(fin.char)
        elif ch == " ":
            syms.append(TOKEN_BOUNDARY)
        else:
            syms.append(ch)
    return syms


def text_to_symbols(text: str) -> tuple[str, ...]:
    """Symbols for an enumerated input string, parsing <POS>/<B> sentinels.

    Intended for oracle comparisons; literal text must not itself contain
    angle-bracket sequences.
    """
    syms: list[str] = []
    pos = 0
    for m in _SENTINEL_RE.finditer(text):
        for ch in text[pos:m.start()]:
            syms.extend(literal_symbols(ch))
        syms.append(m.group(0))
        pos = m.end()
    for ch in text[pos:]:
        syms.extend(literal_symbols(ch))
    return tuple(syms)


@dataclass(frozen=True)
class Fst:
    """Epsilon-free transducer: transitions are (src, symbol, output, dst)."""

    name: str
    tag: str
    n_states: int
    initial: int
    final_outputs: dict[int, tuple[str, ...]]
    transitions: tuple[tuple[int, str, str, int], ...]

    @property
    def finals(self) -> frozenset[int]:
        return frozenset(self.final_outputs)

    def arcs_from(self) -> dict[int, list[tuple[int, str, str, int]]]:
        adj: dict[int, list[tuple[int, str, str, int]]] = {}
        for t in self.transitions:
            adj.setdefault(t[0], []).append(t)
        return adj

    def relation(self, max_input_len: int) -> set[tuple[tuple[str, ...], str]]:
        """Brute-force enumeration of the transduction relation, inputs
        bounded by symbol count."""
        adj = self.arcs_from()
        out: set[tuple[tuple[str, ...], str]] = set()
        stack = [(self.initial, (), "")]
        while stack:
            state, syms, emitted = stack.pop()
            for fo in self.final_outputs.get(state, ()):
                out.add((syms, emitted + fo))
            if len(syms) >= max_input_len:
                continue
            for _, sym, o, dst in adj.get(state, ()):
                stack.append((dst, syms + (sym,), emitted + o))
        return out

    def dump(self) -> str:
        lines = [f"fst\t{self.name}\t{self.tag}",
                 f"states\t{self.n_states}",
                 f"initial\t{self.initial}"]
        for state in sorted(self.final_outputs):
            for fo in self.final_outputs[state]:
                lines.append(f"final\t{state}\t{fo}")
        for src, sym, o, dst in self.transitions:
            lines.append(f"{src}\t{sym}\t{o}\t{dst}")
        return "\n".join(lines) + "\n"


class _Builder:
    def __init__(self, library: dict[str, GraphIR], max_states: int):
        self.library = library
        self.max_states = max_states
        self.n = 0
        self.eps: list[tuple[int, str, int]] = []          # (src, out, dst)
        self.arcs: list[tuple[int, str, str, int]] = []    # (src, sym, out, dst)

    def new_state(self) -> int:
        if self.n >= self.max_states:
            raise CompileOverflow(f"state count exceeded cap {self.max_states}")
        self.n += 1
        return self.n - 1

    def build(self, g: GraphIR, stack: tuple[str, ...]) -> tuple[int, int]:
        """Wire one graph; returns (entry state, accept state)."""
        enter: dict[int, int] = {}
        exit_: dict[int, int] = {}
        for box_id in g.boxes:
            box = g.boxes[box_id]
            s = self.new_state()
            enter[box_id] = s
            exit_[box_id] = s if box.kind is not BoxKind.PLAIN else self.new_state()

        for box_id in g.boxes:
            box = g.boxes[box_id]
            if box.kind is BoxKind.PLAIN:
                self._wire_alternatives(g, box, enter[box_id], exit_[box_id], stack)
            for succ in box.successors:
                self.eps.append((exit_[box_id], "", enter[succ]))
        return enter[g.initial.id], enter[g.final.id]

    def _wire_alternatives(self, g: GraphIR, box: Box, src: int, dst: int,
                           stack: tuple[str, ...]):
        output = box.output or ""
        for label in box.alternatives:
            if label.kind is LabelKind.LITERAL:
                syms = literal_symbols(label.payload)
                cur = src
                for i, sym in enumerate(syms):
                    last = i == len(syms) - 1
                    nxt = dst if last else self.new_state()
                    self.arcs.append((cur, sym, output if last else "", nxt))
                    cur = nxt
            elif label.kind is LabelKind.MASK:
                self.arcs.append((src, mask_symbol(label.payload), output, dst))
            elif label.kind is LabelKind.EPSILON:
                self.eps.append((src, output, dst))
            else:  # SUBGRAPH
                callee = self.library[label.payload]
                sub_in, sub_out = self.build(callee, stack + (callee.name,))
                self.eps.append((src, "", sub_in))
                self.eps.append((sub_out, output, dst))


def _epsilon_closure(n_states: int, eps: list[tuple[int, str, int]]):
    """Closure pairs (reachable state, accumulated output) per state, in
    deterministic DFS preorder.  Raises EpsilonCycle when an epsilon cycle
    carries output (its closure would be infinite)."""
    adj: dict[int, list[tuple[str, int]]] = {}
    for src, out, dst in eps:
        adj.setdefault(src, []).append((out, dst))

    # reject epsilon cycles that emit output
    for src, out, dst in eps:
        if not out:
            continue
        seen = {dst}
        stack = [dst]
        while stack:
            s = stack.pop()
            if s == src:
                raise EpsilonCycle(
                    f"epsilon cycle through state {src} emits {out!r}")
            for _, nxt in adj.get(s, ()):
                if nxt not in seen:
                    seen.add(nxt)
                    stack.append(nxt)

    closures: list[list[tuple[int, str]]] = []
    for q in range(n_states):
        pairs: list[tuple[int, str]] = []
        seen: set[tuple[int, str]] = set()

        def visit(state: int, out: str):
            if (state, out) in seen:
                return
            seen.add((state, out))
            pairs.append((state, out))
            for o, dst in adj.get(state, ()):
                visit(dst, out + o)

        visit(q, "")
        closures.append(pairs)
    return closures


def compile_graph(g: GraphIR, library=(), max_states: int = DEFAULT_MAX_STATES) -> Fst:
    """Compile a validated graph (plus its subgraph library) into an Fst."""
    lib = _library_by_name(library)
    lib.setdefault(g.name, g)
    diags = validate(g, lib)
    if diags:
        raise GraphValidationError(diags)

    builder = _Builder(lib, max_states)
    init, accept = builder.build(g, (g.name,))
    closures = _epsilon_closure(builder.n, builder.eps)

    # push epsilon outputs forward onto following consuming transitions
    arcs_by_src: dict[int, list[tuple[int, str, str, int]]] = {}
    for arc in builder.arcs:
        arcs_by_src.setdefault(arc[0], []).append(arc)

    new_arcs: list[tuple[int, str, str, int]] = []
    seen_arcs: set[tuple[int, str, str, int]] = set()
    final_outputs: dict[int, tuple[str, ...]] = {}
    for q in range(builder.n):
        outs: list[str] = []
        for r, w in closures[q]:
            if r == accept and w not in outs:
                outs.append(w)
            for _, sym, o, dst in arcs_by_src.get(r, ()):
                arc = (q, sym, w + o, dst)
                if arc not in seen_arcs:
                    seen_arcs.add(arc)
                    new_arcs.append(arc)
        if outs:
            final_outputs[q] = tuple(outs)

    if init in final_outputs:
        raise EpsilonOnlyPath(f"graph {g.name!r} accepts the empty input")

    # prune states not on an initial..final path, renumber breadth-first
    fwd: dict[int, list[int]] = {}
    rev: dict[int, list[int]] = {}
    for src, _, _, dst in new_arcs:
        fwd.setdefault(src, []).append(dst)
        rev.setdefault(dst, []).append(src)

    reach = {init}
    frontier = [init]
    while frontier:
        s = frontier.pop()
        for d in fwd.get(s, ()):
            if d not in reach:
                reach.add(d)
                frontier.append(d)
    coreach = set(final_outputs)
    frontier = list(final_outputs)
    while frontier:
        s = frontier.pop()
        for d in rev.get(s, ()):
            if d not in coreach:
                coreach.add(d)
                frontier.append(d)
    keep = reach & coreach
    keep.add(init)

    order: dict[int, int] = {init: 0}
    queue = [init]
    while queue:
        s = queue.pop(0)
        for src, _, _, dst in new_arcs:
            if src == s and dst in keep and dst not in order:
                order[dst] = len(order)
                queue.append(dst)

    kept_arcs = [
        (order[src], sym, o, order[dst])
        for src, sym, o, dst in new_arcs
        if src in order and dst in order
    ]
    kept_arcs.sort(key=lambda a: a[0])  # stable: per-state order preserved
    finals = {
        order[s]: outs for s, outs in final_outputs.items() if s in order
    }
    return Fst(
        name=g.name,
        tag=g.tag,
        n_states=len(order),
        initial=0,
        final_outputs=finals,
        transitions=tuple(kept_arcs),
    )


def _symbol_count(text: str) -> int:
    return len(literal_symbols(text))


def enumerate_paths(g: GraphIR, library=(), max_input_len: int = 12) -> set[tuple[str, str]]:
    """Exhaustively enumerate (input, output) pairs of a graph.

    Independent of compilation: walks the graph IR directly, inlining
    subgraph calls via an explicit continuation stack.  Inputs are
    rendered as text with MASK labels as ``<POS>`` sentinels; a MASK
    counts one unit against ``max_input_len``.
    """
    lib = _library_by_name(library)
    lib.setdefault(g.name, g)
    results: set[tuple[str, str]] = set()

    def stack_key(stack):
        return tuple((sg.name, sb.id) for sg, sb, _ in stack)

    def after_box(graph, box, stack, text, length, out, path):
        for succ in box.successors:
            enter_box(graph, graph.boxes[succ], stack, text, length, out, path)

    def enter_box(graph, box, stack, text, length, out, path):
        key = (graph.name, box.id, stack_key(stack), length, len(out))
        if key in path:
            return  # zero-progress cycle
        path = path | {key}
        if box.kind is BoxKind.FINAL:
            if stack:
                cgraph, cbox, cout = stack[-1]
                after_box(cgraph, cbox, stack[:-1], text, length, out + cout, path)
            else:
                results.add((text, out))
            return
        if box.kind is BoxKind.INITIAL:
            after_box(graph, box, stack, text, length, out, path)
            return
        output = box.output or ""
        for label in box.alternatives:
            if label.kind is LabelKind.LITERAL:
                step = _symbol_count(label.payload)
                if length + step > max_input_len:
                    continue
                after_box(graph, box, stack, text + label.payload,
                          length + step, out + output, path)
            elif label.kind is LabelKind.MASK:
                if length + 1 > max_input_len:
                    continue
                after_box(graph, box, stack, text + mask_symbol(label.payload),
                          length + 1, out + output, path)
            elif label.kind is LabelKind.EPSILON:
                after_box(graph, box, stack, text, length, out + output, path)
            else:
                callee = lib[label.payload]
                enter_box(callee, callee.initial,
                          stack + ((graph, box, output),), text, length, out, path)

    root = g.initial
    enter_box(g, root, (), "", 0, "", frozenset())
    return results
