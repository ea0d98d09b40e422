"""Slow, obviously-correct reference implementations for the test suite.

Nothing here imports the package's own similarity, clustering or scoring
code; these are written straight from the definitions.
"""

import itertools
import math
from collections import Counter


def jaro_reference(a, b):
    """Jaro similarity from the definition.

    Two characters match when they are equal and no further apart than
    floor(max(len)/2) - 1 positions; each character of `b` may be matched
    once, scanning `a` left to right and taking the leftmost free partner.
    """
    if not a and not b:
        return 1.0
    if not a or not b:
        return 0.0
    window = max(0, max(len(a), len(b)) // 2 - 1)
    taken = set()
    pairs = []
    for i in range(len(a)):
        candidates = [
            j for j in range(len(b))
            if abs(i - j) <= window and j not in taken and b[j] == a[i]
        ]
        if candidates:
            j = min(candidates)
            taken.add(j)
            pairs.append((i, j))
    m = len(pairs)
    if m == 0:
        return 0.0
    a_seq = [a[i] for i, _ in sorted(pairs)]
    b_seq = [b[j] for j in sorted(j for _, j in pairs)]
    t = sum(1 for x, y in zip(a_seq, b_seq) if x != y) / 2
    return (m / len(a) + m / len(b) + (m - t) / m) / 3


def jaro_winkler_reference(a, b, scale=0.1, max_prefix=4, threshold=0.7):
    j = jaro_reference(a, b)
    if j < threshold:
        return j
    ell = 0
    while ell < min(len(a), len(b), max_prefix) and a[ell] == b[ell]:
        ell += 1
    return j + ell * scale * (1 - j)


def naive_average_linkage(n, d, t):
    """Average linkage recomputing every cluster pair from raw distances each step.

    `d(i, j)` gives the distance of items i and j. Merges while the smallest
    mean is <= t; ties go to the pair whose smallest members are
    lexicographically smallest. Returns a set of frozensets of indices.
    """
    clusters = [[i] for i in range(n)]
    while len(clusters) > 1:
        best = None
        for x, y in itertools.combinations(range(len(clusters)), 2):
            A, B = clusters[x], clusters[y]
            total = 0.0
            for a in A:
                for b in B:
                    total += d(a, b)
            mean = total / (len(A) * len(B))
            key = (mean, min(min(A), min(B)), max(min(A), min(B)))
            if best is None or key < best[0]:
                best = (key, x, y)
        (mean, _, _), x, y = best
        if mean > t:
            break
        merged = clusters[x] + clusters[y]
        clusters = [c for k, c in enumerate(clusters) if k not in (x, y)] + [merged]
    return {frozenset(c) for c in clusters}


def entropy_bits(labels):
    n = len(labels)
    return -sum(c / n * math.log2(c / n) for c in Counter(labels).values())


def conditional_entropy_bits(target, given):
    """H(target | given) in bits, from joint counts."""
    n = len(target)
    joint = Counter(zip(target, given))
    given_counts = Counter(given)
    return -sum(c / n * math.log2(c / given_counts[g]) for (_, g), c in joint.items())


def v_measure_reference(gold, pred):
    hg, hp = entropy_bits(gold), entropy_bits(pred)
    h = 1.0 if hg == 0 else 1 - conditional_entropy_bits(gold, pred) / hg
    c = 1.0 if hp == 0 else 1 - conditional_entropy_bits(pred, gold) / hp
    v = 0.0 if h + c == 0 else 2 * h * c / (h + c)
    return h, c, v
