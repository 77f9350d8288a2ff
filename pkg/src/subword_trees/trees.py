"""Decision trees over length-n slices: model, solving-condition validators, serialization.

A tree has an unlabeled root with one or more children (exactly one in the
deterministic case).  Interior nodes query a 1-based letter position and carry
bit-labeled edges; terminal nodes carry either a word (recognition) or a bit
rendered as ``"0"``/``"1"`` (membership).  Depth counts query nodes on a
root-to-leaf path.  A complete path accepts exactly the words that agree with
every (position, bit) constraint along it; repeated contradictory queries on
one path simply accept nothing.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Callable, Iterator, Union

from .language import Language

DET = "det"
NONDET = "nondet"

BULLET_LEAF_LABELS = 1
BULLET_COVERAGE = 2
BULLET_CONSISTENCY = 3
BULLET_DETERMINISM = 0  # structural, outside the three solving bullets


class TreeFormatError(ValueError):
    """A tree document or tree structure is malformed for the requested use."""


class StrategyError(RuntimeError):
    """A query strategy was driven outside its contract."""


@dataclass(frozen=True)
class Leaf:
    label: str


@dataclass(frozen=True)
class Branch:
    position: int  # 1-based letter index
    edges: tuple[tuple[int, "Node"], ...]


Node = Union[Leaf, Branch]


@dataclass(frozen=True)
class DecisionTree:
    """Root children of the (unlabeled) root.  Empty tuple is the distinguished
    empty tree used when there is nothing to recognize."""

    root_children: tuple[Node, ...]

    def depth(self) -> int:
        best = 0
        stack: list[tuple[Node, int]] = [(c, 0) for c in self.root_children]
        while stack:
            node, d = stack.pop()
            if isinstance(node, Leaf):
                best = max(best, d)
            else:
                for _, child in node.edges:
                    stack.append((child, d + 1))
        return best

    def iter_nodes(self) -> Iterator[Node]:
        seen: set[int] = set()
        stack = list(self.root_children)
        while stack:
            node = stack.pop()
            if id(node) in seen:
                continue
            seen.add(id(node))
            yield node
            if isinstance(node, Branch):
                stack.extend(child for _, child in node.edges)


@dataclass(frozen=True)
class Violation:
    """One failed solving condition, with the bullet it violates and a witness."""

    bullet: int
    message: str
    witness: str | None = None

    def __str__(self) -> str:
        where = "determinism" if self.bullet == BULLET_DETERMINISM else f"bullet {self.bullet}"
        tail = f" (witness: {self.witness!r})" if self.witness is not None else ""
        return f"{where}: {self.message}{tail}"


def chain(word: str, positions: tuple[int, ...], label: str) -> Node:
    """Single-path certificate chain: query each position, follow the word's bit."""
    node: Node = Leaf(label)
    for p in reversed(positions):
        node = Branch(p, ((int(word[p - 1]), node),))
    return node


def _check_positions(tree: DecisionTree, n: int) -> None:
    for node in tree.iter_nodes():
        if isinstance(node, Branch):
            if not 1 <= node.position <= n:
                raise TreeFormatError(
                    f"branch queries position {node.position}, outside 1..{n}"
                )
            if not node.edges:
                raise TreeFormatError("branch with no outgoing edges")
            for bit, _ in node.edges:
                if bit not in (0, 1):
                    raise TreeFormatError(f"edge bit {bit!r} is not 0 or 1")


def _determinism_violation(tree: DecisionTree) -> Violation | None:
    if len(tree.root_children) != 1:
        return Violation(
            BULLET_DETERMINISM,
            f"deterministic tree needs exactly one root child, found {len(tree.root_children)}",
        )
    for node in tree.iter_nodes():
        if isinstance(node, Branch):
            bits = [bit for bit, _ in node.edges]
            if len(bits) != len(set(bits)):
                return Violation(
                    BULLET_DETERMINISM,
                    f"branch at position {node.position} repeats an edge bit",
                )
    return None


def _matching_leaves(children: tuple[Node, ...], w: str) -> Iterator[Leaf]:
    """Leaves of every complete path whose constraints ``w`` satisfies."""
    stack = list(children)
    while stack:
        node = stack.pop()
        if isinstance(node, Leaf):
            yield node
        else:
            want = int(w[node.position - 1])
            for bit, child in node.edges:
                if bit == want:
                    stack.append(child)


def _validate(
    tree: DecisionTree,
    n: int,
    mode: str,
    universe: Iterator[str],
    label_of: Callable[[str], str],
    label_ok: Callable[[str], bool],
    empty_universe_ok: bool,
) -> Violation | None:
    if mode not in (DET, NONDET):
        raise ValueError(f"mode must be {DET!r} or {NONDET!r}, got {mode!r}")
    _check_positions(tree, n)
    if mode == DET and tree.root_children:
        bad = _determinism_violation(tree)
        if bad is not None:
            return bad
    if not tree.root_children:
        # distinguished empty tree: valid only when there is nothing to solve
        if empty_universe_ok:
            return None
        return Violation(BULLET_COVERAGE, "empty tree but the problem has words to solve")
    for node in tree.iter_nodes():
        if isinstance(node, Leaf) and not label_ok(node.label):
            return Violation(
                BULLET_LEAF_LABELS,
                f"terminal label {node.label!r} is not admissible",
                witness=node.label,
            )
    for w in universe:
        want = label_of(w)
        seen = False
        for leaf in _matching_leaves(tree.root_children, w):
            seen = True
            if leaf.label != want:
                return Violation(
                    BULLET_CONSISTENCY,
                    f"a path accepting {w!r} ends with label {leaf.label!r}, expected {want!r}",
                    witness=w,
                )
        if not seen:
            return Violation(
                BULLET_COVERAGE, f"no complete path accepts {w!r}", witness=w
            )
    return None


def validate_recognition(
    tree: DecisionTree, lang: Language, n: int, mode: str = DET
) -> Violation | None:
    """Check the recognition solving conditions for L(n) by exhaustive replay.

    Passes (returns None) iff every terminal label is a member of the slice,
    every slice word is accepted by some complete path, and every path
    accepting a slice word ends with exactly that word.  ``det`` mode adds the
    structural single-root-child and distinct-edge-bits requirements.
    """
    members = set(lang.slice(n))
    return _validate(
        tree,
        n,
        mode,
        iter(sorted(members)),
        label_of=lambda w: w,
        label_ok=lambda lab: lab in members,
        empty_universe_ok=not members,
    )


def validate_membership(
    tree: DecisionTree, lang: Language, n: int, mode: str = DET
) -> Violation | None:
    """Check the membership solving conditions over all 2^n words of length n."""
    from .language import all_words

    return _validate(
        tree,
        n,
        mode,
        all_words(n),
        label_of=lambda w: "1" if lang.contains(w) else "0",
        label_ok=lambda lab: lab in ("0", "1"),
        empty_universe_ok=False,  # the universe 2^n is never empty for n >= 0
    )


# ---------------------------------------------------------------------------
# Interactive strategies: an implicit tree form for constructions whose
# explicit tree would be exponentially large in the depth.


@dataclass(frozen=True)
class Ask:
    position: int


@dataclass(frozen=True)
class Finish:
    label: str | None


class QueryStrategy:
    """Value-state recognizer protocol.

    Subclasses expose ``n`` and implement ``next_action(state)`` returning
    ``Ask`` or ``Finish``; states are immutable values advanced by
    ``advance(state, bit)``.
    """

    n: int

    def initial_state(self):
        return ()

    def next_action(self, state):  # pragma: no cover - interface
        raise NotImplementedError

    def advance(self, state, bit: int):
        act = self.next_action(state)
        if not isinstance(act, Ask):
            raise StrategyError("advance called on a finished strategy")
        return state + ((act.position, bit),)


def trace_strategy(
    strategy: QueryStrategy, w: str, budget: int | None = None
) -> tuple[list[int], str | None]:
    """Replay a strategy against a word, answering every query truthfully.

    Returns the queried positions in order and the final label.  Raises
    ``StrategyError`` when the word length does not match or the strategy
    exceeds the query budget (default: one query per letter), which would
    indicate a non-terminating strategy.
    """
    if len(w) != strategy.n:
        raise StrategyError(
            f"word length {len(w)} does not match strategy length {strategy.n}"
        )
    if budget is None:
        budget = strategy.n
    state = strategy.initial_state()
    queried: list[int] = []
    while True:
        act = strategy.next_action(state)
        if isinstance(act, Finish):
            return queried, act.label
        if len(queried) >= budget:
            raise StrategyError(f"query budget {budget} exceeded at position {act.position}")
        queried.append(act.position)
        state = state + ((act.position, int(w[act.position - 1])),)


def materialize_strategy(strategy: QueryStrategy) -> DecisionTree:
    """Exhaustively play out a strategy into an explicit deterministic tree.

    Exponential in the strategy depth; intended for small n only.
    """
    first = strategy.next_action(strategy.initial_state())
    if isinstance(first, Finish) and first.label is None:
        return DecisionTree(())

    def expand(state) -> Node:
        act = strategy.next_action(state)
        if isinstance(act, Finish):
            if act.label is None:
                raise StrategyError("strategy finished without a label")
            return Leaf(act.label)
        return Branch(
            act.position,
            tuple((bit, expand(state + ((act.position, bit),))) for bit in (0, 1)),
        )

    return DecisionTree((expand(strategy.initial_state()),))


# ---------------------------------------------------------------------------
# Serialization: JSON tree documents and DOT rendering.


def tree_to_json(tree: DecisionTree) -> str:
    def encode(node: Node) -> dict:
        if isinstance(node, Leaf):
            return {"leaf": node.label}
        return {
            "query": node.position,
            "edges": [{"bit": bit, "child": encode(child)} for bit, child in node.edges],
        }

    return json.dumps({"children": [encode(c) for c in tree.root_children]}, indent=2)


def tree_from_json(text: str) -> DecisionTree:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TreeFormatError(f"malformed tree document: {exc}") from exc

    def decode(obj) -> Node:
        if not isinstance(obj, dict):
            raise TreeFormatError("tree node must be an object")
        if "leaf" in obj:
            label = obj["leaf"]
            if not isinstance(label, str):
                raise TreeFormatError("leaf label must be a string")
            return Leaf(label)
        if "query" in obj:
            pos = obj["query"]
            edges = obj.get("edges")
            if not isinstance(pos, int):
                raise TreeFormatError("'query' must be an integer position")
            if not isinstance(edges, list) or not edges:
                raise TreeFormatError("'edges' must be a non-empty list")
            decoded = []
            for e in edges:
                if not isinstance(e, dict) or "bit" not in e or "child" not in e:
                    raise TreeFormatError("edge needs 'bit' and 'child'")
                if e["bit"] not in (0, 1):
                    raise TreeFormatError("edge 'bit' must be 0 or 1")
                decoded.append((e["bit"], decode(e["child"])))
            return Branch(pos, tuple(decoded))
        raise TreeFormatError("tree node needs 'leaf' or 'query'")

    if not isinstance(doc, dict) or "children" not in doc or not isinstance(doc["children"], list):
        raise TreeFormatError("tree document must be an object with a 'children' list")
    return DecisionTree(tuple(decode(c) for c in doc["children"]))


def tree_to_dot(tree: DecisionTree) -> str:
    """GraphViz rendering: query nodes as circles labeled x_i, leaves boxed."""
    lines = ["digraph decision_tree {", '  root [shape=point, label=""];']
    counter = 0

    def emit(node: Node, parent: str, edge_label: str | None) -> None:
        nonlocal counter
        name = f"n{counter}"
        counter += 1
        if isinstance(node, Leaf):
            lines.append(f'  {name} [shape=box, label="{node.label}"];')
        else:
            lines.append(f'  {name} [shape=circle, label="x_{node.position}"];')
        if edge_label is None:
            lines.append(f"  {parent} -> {name};")
        else:
            lines.append(f'  {parent} -> {name} [label="{edge_label}"];')
        if isinstance(node, Branch):
            for bit, child in node.edges:
                emit(child, name, str(bit))

    for child in tree.root_children:
        emit(child, "root", None)
    lines.append("}")
    return "\n".join(lines) + "\n"
