"""Exact brute-force oracles for the four depth measures, plus depth profiles.

Recognition depths come from a memoized minimax over the consistent member
subsets reachable by splitting queries; membership depths from the analogous
minimax over partial letter assignments, with certificate sizes computed by
exact hitting-set search.  Everything here is exhaustive and exact at desk
scale; the caps raise ``CapExceeded`` rather than silently approximating.
"""

from __future__ import annotations

from dataclasses import dataclass

from .language import Language
from .trees import Branch, DecisionTree, Leaf, trace_strategy

MEASURES = ("rd", "ra", "md", "ma")

MAX_BRUTE_N = 22
MAX_RECOGNITION_N = 16
MAX_SLICE = 4096
MAX_MEMBERSHIP_N = 14


class CapExceeded(RuntimeError):
    """The requested instance exceeds the configured exhaustive-search caps."""


def brute_slice(lang: Language, n: int, max_n: int = MAX_BRUTE_N) -> list[str]:
    """Ground-truth slice: filter all 2^n words by the membership predicate.

    Deliberately independent of the counting automaton used by
    ``Language.slice``; this is the oracle the automaton is checked against.
    """
    if n > max_n:
        raise CapExceeded(f"brute_slice capped at n <= {max_n}, got {n}")
    if n == 0:
        return [""] if lang.contains("") else []
    return [w for i in range(1 << n) if lang.contains(w := format(i, f"0{n}b"))]


# ---------------------------------------------------------------------------
# exact minimum hitting set (positions encoded as bits of an int)


def greedy_hitting_set(masks: list[int]) -> int:
    """Most-frequent-bit greedy cover; an upper bound for the exact search."""
    remaining = [m for m in masks if m]
    chosen = 0
    while remaining:
        freq: dict[int, int] = {}
        for m in remaining:
            while m:
                b = m & -m
                freq[b] = freq.get(b, 0) + 1
                m ^= b
        bit = max(sorted(freq), key=freq.get)
        chosen |= bit
        remaining = [m for m in remaining if not m & bit]
    return chosen


def min_hitting_set(masks: list[int], upper: int | None = None) -> int:
    """Smallest bit set intersecting every mask, by branch and bound.

    Branches over the allowed bits of a smallest uncovered mask, excluding
    already-branched bits on later siblings.  ``upper`` (a bit count) prunes
    the search when only solutions at most that large matter; the fallback
    return is then the greedy set.
    """
    masks = [m for m in masks if m]
    if not masks:
        return 0
    # drop strict supersets: hitting a subset hits them for free
    masks = sorted(set(masks), key=lambda m: m.bit_count())
    kept: list[int] = []
    for m in masks:
        if not any(k & m == k for k in kept):
            kept.append(m)
    masks = kept
    best = greedy_hitting_set(masks)
    best_size = best.bit_count()
    if upper is not None and upper < best_size:
        best_size = upper + 1

    def dfs(chosen: int, count: int, excluded: int) -> None:
        nonlocal best, best_size
        if count >= best_size:
            return
        pick = 0
        pick_bits = None
        for m in masks:
            if m & chosen:
                continue
            allowed = m & ~excluded
            if allowed == 0:
                return
            c = allowed.bit_count()
            if pick_bits is None or c < pick_bits:
                pick, pick_bits = allowed, c
                if c == 1:
                    break
        if pick_bits is None:
            best, best_size = chosen, count
            return
        exc = excluded
        while pick:
            b = pick & -pick
            pick ^= b
            dfs(chosen | b, count + 1, exc)
            exc |= b

    dfs(0, 0, 0)
    return best


# ---------------------------------------------------------------------------
# recognition: minimax over consistent member subsets


def _slice_ints(lang: Language, n: int) -> tuple[list[str], list[int]]:
    words = lang.slice(n)
    return words, [int(w, 2) for w in words]


def _check_recognition_caps(lang, n, max_n, max_slice):
    if not 1 <= n <= max_n:
        raise CapExceeded(f"recognition oracle capped at 1 <= n <= {max_n}, got {n}")
    if lang.count_slice(n) > max_slice:
        raise CapExceeded(f"slice larger than {max_slice} words")


def _recognition_minimax(lang, n, max_n, max_slice):
    """Returns (words, optimal depth, split choice per subset bitmask)."""
    _check_recognition_caps(lang, n, max_n, max_slice)
    words, ints = _slice_ints(lang, n)
    k = len(words)
    choices: dict[int, int] = {}
    if k <= 1:
        return words, 0, choices
    zero_mask = [0] * n
    for idx, x in enumerate(ints):
        for p in range(n):
            if not x >> (n - 1 - p) & 1:
                zero_mask[p] |= 1 << idx
    full = (1 << k) - 1
    memo: dict[int, int] = {}

    def h(S: int) -> int:
        if S & (S - 1) == 0:
            return 0
        cached = memo.get(S)
        if cached is not None:
            return cached
        lower = (S.bit_count() - 1).bit_length()  # ceil(log2 |S|)
        best = None
        for p in range(n):
            s0 = S & zero_mask[p]
            if not s0 or s0 == S:
                continue  # non-splitting queries gain nothing
            s1 = S ^ s0
            d0 = h(s0)
            if best is not None and 1 + d0 >= best:
                continue
            cand = 1 + max(d0, h(s1))
            if best is None or cand < best:
                best = cand
                choices[S] = p
                if best == lower:
                    break
        memo[S] = best
        return best

    return words, h(full), choices


def recognition_depth_det(
    lang: Language, n: int, max_n: int = MAX_RECOGNITION_N, max_slice: int = MAX_SLICE
) -> int:
    """Minimum depth of a deterministic tree recognizing the slice (exact)."""
    return _recognition_minimax(lang, n, max_n, max_slice)[1]


def optimal_recognition_tree(
    lang: Language, n: int, max_n: int = MAX_RECOGNITION_N, max_slice: int = MAX_SLICE
) -> DecisionTree:
    """Depth-optimal deterministic recognition tree, replayed from the minimax."""
    words, _, choices = _recognition_minimax(lang, n, max_n, max_slice)
    if not words:
        return DecisionTree(())
    if len(words) == 1:
        return DecisionTree((Leaf(words[0]),))
    ints = [int(w, 2) for w in words]
    zero_mask = [0] * n
    for idx, x in enumerate(ints):
        for p in range(n):
            if not x >> (n - 1 - p) & 1:
                zero_mask[p] |= 1 << idx

    def build(S: int):
        if S & (S - 1) == 0:
            return Leaf(words[S.bit_length() - 1])
        p = choices[S]
        s0 = S & zero_mask[p]
        return Branch(p + 1, ((0, build(s0)), (1, build(S ^ s0))))

    return DecisionTree((build((1 << len(words)) - 1),))


def _difference_masks(ints: list[int], i: int) -> list[int]:
    x = ints[i]
    return [x ^ y for j, y in enumerate(ints) if j != i]


def recognition_certificates(
    lang: Language, n: int, max_n: int = MAX_RECOGNITION_N, max_slice: int = MAX_SLICE
) -> dict[str, tuple[int, ...]]:
    """Exact minimum separating position set for every slice word."""
    _check_recognition_caps(lang, n, max_n, max_slice)
    words, ints = _slice_ints(lang, n)
    out: dict[str, tuple[int, ...]] = {}
    for i, w in enumerate(words):
        chosen = min_hitting_set(_difference_masks(ints, i))
        out[w] = tuple(sorted(n - b for b in range(n) if chosen >> b & 1))
    return out


def recognition_depth_nondet(
    lang: Language, n: int, max_n: int = MAX_RECOGNITION_N, max_slice: int = MAX_SLICE
) -> int:
    """Largest over slice words of the minimum separating-set size (exact)."""
    _check_recognition_caps(lang, n, max_n, max_slice)
    _, ints = _slice_ints(lang, n)
    best = 0
    for i in range(len(ints)):
        if best == n:
            break  # no certificate can need more than every position
        masks = _difference_masks(ints, i)
        if greedy_hitting_set(masks).bit_count() <= best:
            continue  # its minimum certainly cannot raise the maximum
        best = max(best, min_hitting_set(masks).bit_count())
    return best


# ---------------------------------------------------------------------------
# membership: minimax over partial assignments


def _check_membership_caps(n, max_n):
    if not 1 <= n <= max_n:
        raise CapExceeded(f"membership oracle capped at 1 <= n <= {max_n}, got {n}")


def _membership_minimax(lang: Language, n: int, max_n: int):
    """Returns (depth, choice per (assigned, values) masks, constancy lookup)."""
    _check_membership_caps(n, max_n)
    aut = lang.automaton()
    memo: dict[tuple[int, int], int] = {}
    choices: dict[tuple[int, int], int] = {}
    kinds: dict[tuple[int, int], str] = {}

    def h(am: int, vm: int, assign: dict[int, int]) -> int:
        key = (am, vm)
        cached = memo.get(key)
        if cached is not None:
            return cached
        member_ok = aut.exists_consistent(n, assign, True)
        if not member_ok or not aut.exists_consistent(n, assign, False):
            memo[key] = 0
            kinds[key] = "1" if member_ok else "0"
            return 0
        best = None
        for p in range(1, n + 1):
            bit = 1 << (p - 1)
            if am & bit:
                continue
            d0 = h(am | bit, vm, {**assign, p: 0})
            if best is not None and 1 + d0 >= best:
                continue
            cand = 1 + max(d0, h(am | bit, vm | bit, {**assign, p: 1}))
            if best is None or cand < best:
                best = cand
                choices[key] = p
                if best == 1:
                    break
        memo[key] = best
        return best

    depth = h(0, 0, {})
    return depth, choices, kinds


def membership_depth_det(lang: Language, n: int, max_n: int = MAX_MEMBERSHIP_N) -> int:
    """Minimum depth of a deterministic tree deciding slice membership (exact)."""
    return _membership_minimax(lang, n, max_n)[0]


def optimal_membership_tree(
    lang: Language, n: int, max_n: int = MAX_MEMBERSHIP_N
) -> DecisionTree:
    """Depth-optimal deterministic membership tree, replayed from the minimax."""
    _, choices, kinds = _membership_minimax(lang, n, max_n)

    def build(am: int, vm: int):
        key = (am, vm)
        if key in kinds:
            return Leaf(kinds[key])
        p = choices[key]
        bit = 1 << (p - 1)
        return Branch(p, ((0, build(am | bit, vm)), (1, build(am | bit, vm | bit))))

    return DecisionTree((build(0, 0),))


def membership_certificate(
    lang: Language,
    n: int,
    w: str,
    upper: int | None = None,
    max_n: int = MAX_MEMBERSHIP_N,
) -> tuple[int, ...]:
    """Exact minimum position set certifying the membership answer for ``w``.

    A set works when every word agreeing with ``w`` on it gets the same answer.
    Branch and bound with lazily generated counterexamples: each node asks the
    automaton for a word of the opposite class consistent with the positions
    chosen so far, then must include one of the differing positions.
    """
    _check_membership_caps(n, max_n)
    target = lang.contains(w)
    aut = lang.automaton()

    def find_witness(pos_mask: int) -> str | None:
        assign = {p: int(w[p - 1]) for p in range(1, n + 1) if pos_mask >> (p - 1) & 1}
        for p in range(1, n + 1):  # cheap near-miss scan first
            if pos_mask >> (p - 1) & 1:
                continue
            flipped = w[: p - 1] + ("1" if w[p - 1] == "0" else "0") + w[p:]
            if lang.contains(flipped) != target:
                return flipped
        return aut.find_consistent(n, assign, member=not target, prefer=w)

    # greedy pass for an upper bound: repeatedly pin the differing position
    # that leaves the fewest opposite-class words consistent
    greedy_mask = 0
    while True:
        u = find_witness(greedy_mask)
        if u is None:
            break
        candidates = [p for p in range(1, n + 1) if u[p - 1] != w[p - 1]]
        total = 2 ** (n - greedy_mask.bit_count() - 1)

        def opposite_count(p: int) -> int:
            mask = greedy_mask | 1 << (p - 1)
            assign = {q: int(w[q - 1]) for q in range(1, n + 1) if mask >> (q - 1) & 1}
            members = aut.count_consistent(n, assign)
            return members if not target else total - members

        greedy_mask |= 1 << (min(candidates, key=opposite_count) - 1)

    best_mask = greedy_mask
    best_size = greedy_mask.bit_count()
    if upper is not None and upper < best_size:
        best_size = upper + 1

    def dfs(pos_mask: int, count: int, excluded: int) -> None:
        nonlocal best_mask, best_size
        if count >= best_size:
            return
        u = find_witness(pos_mask)
        if u is None:
            best_mask, best_size = pos_mask, count
            return
        exc = excluded
        for p in range(1, n + 1):
            b = 1 << (p - 1)
            if u[p - 1] != w[p - 1] and not pos_mask & b and not exc & b:
                dfs(pos_mask | b, count + 1, exc)
                exc |= b

    dfs(0, 0, 0)
    return tuple(p for p in range(1, n + 1) if best_mask >> (p - 1) & 1)


def membership_depth_nondet(lang: Language, n: int, max_n: int = MAX_MEMBERSHIP_N) -> int:
    """Largest over all 2^n words of the minimum certificate size (exact).

    Members are handled by the lazy branch-and-bound; non-members reduce to a
    hitting set over their difference masks against the member list when that
    list is small, and fall back to the lazy search otherwise.
    """
    _check_membership_caps(n, max_n)
    if not lang.obstructions:
        return 0  # complement empty: the answer is constant
    members, member_ints = _slice_ints(lang, n)
    if not members:
        return 0  # empty slice: the answer is constant
    best = 0
    for w in members:
        if best == n:
            return best
        cert = membership_certificate(lang, n, w, upper=None, max_n=max_n)
        best = max(best, len(cert))
    member_set = set(member_ints)
    use_masks = len(members) <= 1024
    for x in range(1 << n):
        if best == n:
            return best
        if x in member_set:
            continue
        if use_masks:
            masks = [x ^ m for m in member_ints]
            if greedy_hitting_set(masks).bit_count() <= best:
                continue
            best = max(best, min_hitting_set(masks).bit_count())
        else:
            w = format(x, f"0{n}b")
            cert = membership_certificate(lang, n, w, upper=None, max_n=max_n)
            best = max(best, len(cert))
    return best


# ---------------------------------------------------------------------------
# depth profiles

EXACT = "EXACT"
CONSTRUCTED = "CONSTRUCTED"
SKIPPED = "SKIPPED"


@dataclass(frozen=True)
class ProfileRow:
    n: int
    values: dict[str, int | None]
    sources: dict[str, str]


@dataclass(frozen=True)
class DepthProfile:
    name: str
    rows: list[ProfileRow]


def _constructed_rd(lang: Language, n: int, sim_cap: int) -> int | None:
    """Measured worst-case query count of the block strategy over the slice."""
    from .builders import BuilderPreconditionError, block_recognition_strategy

    try:
        strategy = block_recognition_strategy(lang, n)
    except BuilderPreconditionError:
        return None
    count = lang.count_slice(n)
    if count == 0:
        return 0
    if count > sim_cap:
        return None
    worst = 0
    for w in lang.iter_slice(n):
        queried, label = trace_strategy(strategy, w)
        if label != w:
            raise AssertionError(f"block strategy misrecognized {w!r} for {lang.name}")
        worst = max(worst, len(queried))
    return worst


def depth_profile(
    lang: Language,
    lo: int,
    hi: int,
    measures: tuple[str, ...] = MEASURES,
    allow_constructed: bool = False,
    max_recognition_n: int = MAX_RECOGNITION_N,
    max_slice: int = MAX_SLICE,
    max_membership_n: int = MAX_MEMBERSHIP_N,
    sim_cap: int = MAX_SLICE,
) -> DepthProfile:
    """Per-n table of the four depth measures with per-cell provenance.

    Cells are EXACT while the oracle caps allow; past the caps, the ``rd``
    column may be filled by simulating the constructive strategy (CONSTRUCTED)
    when ``allow_constructed`` is set, and everything else is SKIPPED.
    """
    if not 1 <= lo <= hi:
        raise ValueError(f"invalid range {lo}..{hi}")
    for m in measures:
        if m not in MEASURES:
            raise ValueError(f"unknown measure {m!r}; expected one of {MEASURES}")
    rows = []
    for n in range(lo, hi + 1):
        values: dict[str, int | None] = {}
        sources: dict[str, str] = {}
        for m in MEASURES:
            if m not in measures:
                values[m], sources[m] = None, SKIPPED
                continue
            try:
                if m == "rd":
                    v = recognition_depth_det(lang, n, max_recognition_n, max_slice)
                elif m == "ra":
                    v = recognition_depth_nondet(lang, n, max_recognition_n, max_slice)
                elif m == "md":
                    v = membership_depth_det(lang, n, max_membership_n)
                else:
                    v = membership_depth_nondet(lang, n, max_membership_n)
                values[m], sources[m] = v, EXACT
            except CapExceeded:
                if m == "rd" and allow_constructed:
                    v = _constructed_rd(lang, n, sim_cap)
                    if v is None:
                        values[m], sources[m] = None, SKIPPED
                    else:
                        values[m], sources[m] = v, CONSTRUCTED
                else:
                    values[m], sources[m] = None, SKIPPED
        rows.append(ProfileRow(n, values, sources))
    return DepthProfile(lang.name, rows)
