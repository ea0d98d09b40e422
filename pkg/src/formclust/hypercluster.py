"""Stem-keyed blocks of the vocabulary.

Clustering never crosses block boundaries, which keeps the quadratic
distance computation affordable on a 10^5-word vocabulary.
"""

from __future__ import annotations

from typing import Iterable

from .textnorm import simplify

EMPTY_STEM = "∅"


def stem(form: str, K: int) -> str:
    """First `K` characters of the simplified form.

    Forms that simplify to nothing (non-Latin scripts) fall back to their
    lowercased raw characters, and failing that to a reserved stem.
    """
    if K < 1:
        raise ValueError(f"K must be >= 1, got {K}")
    s = simplify(form)
    if s:
        return s[:K]
    raw = form.lower()
    if raw:
        return raw[:K]
    return EMPTY_STEM


class HyperclusterSet:
    """Partition of forms into blocks keyed by stem.

    Blocks keep the order in which forms were given (rank order for a
    vocabulary). Iteration is over stems in sorted order.
    """

    def __init__(self, blocks: dict[str, list[str]], K: int):
        self.blocks = blocks
        self.K = K

    def __len__(self) -> int:
        return len(self.blocks)

    def __iter__(self):
        return iter(sorted(self.blocks))

    def __getitem__(self, key: str) -> list[str]:
        return self.blocks[key]

    def __contains__(self, key) -> bool:
        return key in self.blocks

    def items(self):
        for key in sorted(self.blocks):
            yield key, self.blocks[key]

    def sizes(self) -> dict[str, int]:
        return {key: len(forms) for key, forms in self.blocks.items()}


def partition(forms: Iterable[str], K: int) -> HyperclusterSet:
    """Group `forms` (a Vocabulary or any iterable of strings) by stem."""
    forms = getattr(forms, "forms", forms)
    blocks: dict[str, list[str]] = {}
    for form in forms:
        blocks.setdefault(stem(form, K), []).append(form)
    return HyperclusterSet(blocks, K)
