"""Word-form distance combining string and embedding similarity."""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

import numpy as np

from .embeddings import Vocabulary
from .strsim import DEFAULT_JW, JwParams, avg_jw


class DistanceMode(str, enum.Enum):
    COMBINED = "combined"
    JW_ONLY = "jw_only"
    COS_ONLY = "cos_only"

    def __str__(self) -> str:
        return self.value


@dataclass(frozen=True)
class Params:
    """Every tunable of a run.

    t     merge threshold for the clustering and for OOV assignment
    K     stem length, in characters of the simplified form
    N     cap on the number of vectors loaded (most frequent first)
    mode  which similarity feeds the distance
    """

    t: float = 0.4
    K: int = 3
    N: int = 100_000
    mode: DistanceMode = DistanceMode.COMBINED
    jw: JwParams = field(default_factory=lambda: DEFAULT_JW)

    def __post_init__(self):
        object.__setattr__(self, "mode", DistanceMode(self.mode))
        if not 0.0 <= self.t <= 1.0:
            raise ValueError(f"t must lie in [0, 1], got {self.t}")
        if self.K < 1:
            raise ValueError(f"K must be >= 1, got {self.K}")
        if self.N < 0:
            raise ValueError(f"N must be >= 0, got {self.N}")

    def describe(self) -> str:
        return f"t={self.t!r} K={self.K} N={self.N} mode={self.mode.value}"


def combine(string_sim: float, cos: float | None, mode: DistanceMode) -> float:
    """Turn a string similarity and a cosine (None when a vector is missing) into a distance."""
    if mode is DistanceMode.JW_ONLY:
        return 1.0 - string_sim
    if mode is DistanceMode.COS_ONLY:
        return 1.0 if cos is None else 1.0 - (cos + 1.0) / 2.0
    embed = 1.0 if cos is None else (cos + 1.0) / 2.0
    return 1.0 - string_sim * embed


def pair_distance(a: str, b: str, vocab: Vocabulary, params: Params) -> float:
    """Distance between two word forms, in [0, 1].

    A form without a vector contributes no embedding evidence: in combined
    mode the embedding factor becomes 1, so the distance falls back to the
    string part alone; in cos_only mode such a pair is maximally distant.
    """
    if a == b:
        return 0.0
    mode = params.mode
    sim = 1.0 if mode is DistanceMode.COS_ONLY else avg_jw(a, b, params.jw)
    cos = None if mode is DistanceMode.JW_ONLY else vocab.similarity(a, b)
    return combine(sim, cos, mode)


class CondensedDistances:
    """Upper triangle of a symmetric n x n distance matrix, row by row.

    Entry (i, j) with i < j lives at ``n*i - i*(i+1)//2 + (j - i - 1)``,
    the same layout scipy uses.
    """

    def __init__(self, n: int, values):
        values = np.asarray(values, dtype=np.float64)
        if values.shape != (n * (n - 1) // 2,):
            raise ValueError(f"expected {n * (n - 1) // 2} values for n={n}, got {values.shape}")
        self.n = n
        self.values = values

    @staticmethod
    def offset(n: int, i: int, j: int) -> int:
        if i == j:
            raise IndexError("the diagonal is not stored")
        if i > j:
            i, j = j, i
        return n * i - i * (i + 1) // 2 + (j - i - 1)

    def __getitem__(self, ij) -> float:
        i, j = ij
        if i == j:
            return 0.0
        return float(self.values[self.offset(self.n, i, j)])

    @classmethod
    def from_square(cls, square) -> "CondensedDistances":
        square = np.asarray(square, dtype=np.float64)
        n = square.shape[0]
        iu = np.triu_indices(n, k=1)
        return cls(n, square[iu])

    def to_square(self) -> np.ndarray:
        square = np.zeros((self.n, self.n))
        iu = np.triu_indices(self.n, k=1)
        square[iu] = self.values
        square.T[iu] = self.values
        return square


def block_distances(forms: list[str], vocab: Vocabulary, params: Params) -> CondensedDistances:
    """All pairwise distances inside one block of in-vocabulary forms."""
    n = len(forms)
    iu = np.triu_indices(n, k=1)
    mode = params.mode

    if mode is DistanceMode.COS_ONLY:
        sim = np.ones(len(iu[0]))
    else:
        jw = params.jw
        sim = np.fromiter(
            (avg_jw(forms[i], forms[j], jw) for i, j in zip(*iu)),
            dtype=np.float64,
            count=len(iu[0]),
        )
    if mode is DistanceMode.JW_ONLY:
        values = 1.0 - sim
    else:
        cos = vocab.cosine_matrix(forms)[iu]
        values = 1.0 - sim * ((cos + 1.0) / 2.0)
    return CondensedDistances(n, np.clip(values, 0.0, 1.0))
