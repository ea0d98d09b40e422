"""Jaro and Jaro-Winkler string similarities."""

from __future__ import annotations

from dataclasses import dataclass

from .textnorm import simplify


@dataclass(frozen=True)
class JwParams:
    """Winkler prefix-boost constants.

    The boost is ``prefix * prefix_scale * (1 - jaro)``, applied only when
    the Jaro score is at least `boost_threshold`.
    """

    prefix_scale: float = 0.1
    max_prefix: int = 4
    boost_threshold: float = 0.7

    def __post_init__(self):
        if not 0.0 <= self.prefix_scale <= 0.25:
            raise ValueError(f"prefix_scale must lie in [0, 0.25], got {self.prefix_scale}")
        if self.max_prefix < 0:
            raise ValueError(f"max_prefix must be >= 0, got {self.max_prefix}")


DEFAULT_JW = JwParams()


def jaro(a: str, b: str) -> float:
    """Jaro similarity of two strings.

    Empty strings are handled totally: two empty strings are identical
    (1.0), an empty string against a non-empty one shares nothing (0.0).
    """
    if a == b:
        return 1.0
    la, lb = len(a), len(b)
    if not la or not lb:
        return 0.0

    window = max(max(la, lb) // 2 - 1, 0)
    b_used = [False] * lb
    a_matched = []
    for i, ch in enumerate(a):
        lo = i - window if i > window else 0
        hi = i + window + 1
        # leftmost unused occurrence of ch inside the window
        j = b.find(ch, lo, hi)
        while j != -1 and b_used[j]:
            j = b.find(ch, j + 1, hi)
        if j != -1:
            b_used[j] = True
            a_matched.append(ch)

    m = len(a_matched)
    if not m:
        return 0.0

    b_matched = [b[j] for j in range(lb) if b_used[j]]
    half_transpositions = sum(x != y for x, y in zip(a_matched, b_matched))
    transpositions = half_transpositions / 2
    return (m / la + m / lb + (m - transpositions) / m) / 3


def common_prefix_length(a: str, b: str, cap: int) -> int:
    n = 0
    for x, y in zip(a[:cap], b[:cap]):
        if x != y:
            break
        n += 1
    return n


def jaro_winkler(a: str, b: str, params: JwParams = DEFAULT_JW) -> float:
    sim = jaro(a, b)
    if sim < params.boost_threshold:
        return sim
    prefix = common_prefix_length(a, b, params.max_prefix)
    # max_prefix > 4 with the largest scale could otherwise overshoot
    return min(1.0, sim + prefix * params.prefix_scale * (1.0 - sim))


def avg_jw(a: str, b: str, params: JwParams = DEFAULT_JW) -> float:
    """Mean of the Jaro-Winkler score of the raw pair and of its simplified pair.

    The raw pair is compared case-sensitively; only the simplified half sees
    lowercased, ASCII-folded, vowel-stripped strings.
    """
    if a == b:
        return 1.0
    return (jaro_winkler(a, b, params) + jaro_winkler(simplify(a), simplify(b), params)) / 2
