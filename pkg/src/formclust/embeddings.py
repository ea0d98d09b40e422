"""Pretrained word vectors in the plain-text ``.vec`` format."""

from __future__ import annotations

import os
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np


class FormatError(ValueError):
    """Raised for malformed input files; carries the offending line number when known."""

    def __init__(self, message: str, path=None, lineno: int | None = None):
        self.path = path
        self.lineno = lineno
        where = ""
        if path is not None:
            where = f"{path}:"
            if lineno is not None:
                where += f"{lineno}:"
            where += " "
        elif lineno is not None:
            where = f"line {lineno}: "
        super().__init__(where + message)


@dataclass(frozen=True)
class VocabEntry:
    form: str
    vector: np.ndarray
    rank: int


class Vocabulary:
    """Word forms in frequency order with their embedding vectors.

    Immutable after construction. Row `i` of `vectors` belongs to
    ``forms[i]``, whose rank is `i`.
    """

    def __init__(self, forms: Sequence[str], vectors, dim: int | None = None):
        forms = list(forms)
        vectors = np.asarray(vectors, dtype=np.float64)
        if dim is None:
            dim = vectors.shape[1] if vectors.ndim == 2 else 0
        if len(forms) == 0:
            vectors = vectors.reshape(0, dim)
        if vectors.shape != (len(forms), dim):
            raise ValueError(f"vectors must have shape ({len(forms)}, {dim}), got {vectors.shape}")
        index = {}
        for rank, form in enumerate(forms):
            if form in index:
                raise ValueError(f"duplicate form {form!r} in vocabulary")
            index[form] = rank
        self.forms = forms
        self.vectors = vectors
        self.dim = dim
        self.norms = np.linalg.norm(vectors, axis=1)
        self._index = index
        self.vectors.setflags(write=False)
        self.norms.setflags(write=False)

    @classmethod
    def empty(cls, dim: int = 0) -> "Vocabulary":
        return cls([], np.zeros((0, dim)), dim)

    def __len__(self) -> int:
        return len(self.forms)

    def __contains__(self, form) -> bool:
        return form in self._index

    def __iter__(self) -> Iterator[VocabEntry]:
        for rank, form in enumerate(self.forms):
            yield VocabEntry(form, self.vectors[rank], rank)

    @property
    def entries(self) -> list[VocabEntry]:
        return list(self)

    def rank(self, form: str) -> int | None:
        return self._index.get(form)

    def vector(self, form: str) -> np.ndarray | None:
        rank = self._index.get(form)
        return None if rank is None else self.vectors[rank]

    def similarity(self, a: str, b: str) -> float | None:
        """Cosine of the two forms' vectors, or None if either has no vector."""
        ia = self._index.get(a)
        ib = self._index.get(b)
        if ia is None or ib is None:
            return None
        na, nb = self.norms[ia], self.norms[ib]
        if na == 0.0 or nb == 0.0:
            return 0.0
        return _clip(float(self.vectors[ia] @ self.vectors[ib]) / (na * nb))

    def cosine_matrix(self, forms: Sequence[str]) -> np.ndarray:
        """Pairwise cosines between in-vocabulary `forms` (zero vectors give 0)."""
        rows = np.fromiter((self._index[f] for f in forms), dtype=np.intp, count=len(forms))
        vecs = self.vectors[rows]
        norms = self.norms[rows]
        safe = np.where(norms > 0, norms, 1.0)
        unit = vecs / safe[:, None]
        sims = unit @ unit.T
        sims[norms == 0, :] = 0.0
        sims[:, norms == 0] = 0.0
        return np.clip(sims, -1.0, 1.0)

    def subset(self, forms: Iterable[str]) -> "Vocabulary":
        forms = list(forms)
        rows = [self._index[f] for f in forms]
        return Vocabulary(forms, self.vectors[rows], self.dim)


def _clip(x: float) -> float:
    return -1.0 if x < -1.0 else 1.0 if x > 1.0 else x


def cosine(u, v) -> float:
    """Cosine similarity; 0 if either vector has zero norm."""
    u = np.asarray(u, dtype=np.float64)
    v = np.asarray(v, dtype=np.float64)
    if u.shape != v.shape:
        raise ValueError(f"dimension mismatch: {u.shape} vs {v.shape}")
    nu = np.linalg.norm(u)
    nv = np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        return 0.0
    return _clip(float(u @ v) / (nu * nv))


def _split_row(line: str, dim: int) -> list[str]:
    # Split from the right on plain spaces: real .vec files contain tokens with
    # NBSP and other Unicode whitespace that str.split() would break apart.
    return line.rstrip("\r\n").rstrip(" ").rsplit(" ", dim)


def load_vectors(path, n_max: int) -> Vocabulary:
    """Load the first `n_max` distinct words of a text vector file.

    The file starts with a ``<count> <dim>`` header; every other line is a
    token followed by `dim` numbers. Rows after the cap are never read, so
    the cap also bounds the loading time for multi-million-word files.
    Duplicate tokens keep their first occurrence.
    """
    if n_max < 0:
        raise ValueError("n_max must be >= 0")
    with open(path, encoding="utf-8", errors="strict") as f:
        header = f.readline()
        if not header:
            raise FormatError("empty file", path, 1)
        fields = header.split()
        try:
            if len(fields) != 2:
                raise ValueError
            count, dim = int(fields[0]), int(fields[1])
            if count < 0 or dim <= 0:
                raise ValueError
        except ValueError:
            raise FormatError(f"malformed header {header.strip()!r}, expected '<count> <dim>'", path, 1) from None

        forms: list[str] = []
        seen: set[str] = set()
        rows: list[np.ndarray] = []
        wanted = min(n_max, count)
        lineno = 1
        for line in f:
            if len(forms) >= wanted:
                break
            lineno += 1
            parts = _split_row(line, dim)
            if len(parts) != dim + 1 or not parts[0]:
                raise FormatError(f"expected a token and {dim} values, got {len(parts) - 1} values", path, lineno)
            token = parts[0]
            if token in seen:
                continue
            try:
                vec = np.array(parts[1:], dtype=np.float64)
            except ValueError:
                raise FormatError("non-numeric vector component", path, lineno) from None
            seen.add(token)
            forms.append(token)
            rows.append(vec)
        if len(forms) < wanted and lineno - 1 < count:
            raise FormatError(f"header announces {count} rows but the file ends after {lineno - 1}", path, lineno)

    matrix = np.vstack(rows) if rows else np.zeros((0, dim))
    return Vocabulary(forms, matrix, dim)


def save_vectors(vocab: Vocabulary, path) -> None:
    """Write `vocab` in the same text format `load_vectors` reads.

    Values use the shortest repr that round-trips, so loading the file
    again reproduces the vectors exactly.
    """
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="utf-8", newline="\n") as f:
        f.write(f"{len(vocab)} {vocab.dim}\n")
        for form, row in zip(vocab.forms, vocab.vectors):
            f.write(form + " " + " ".join(repr(float(x)) for x in row) + "\n")
    os.replace(tmp, path)


def oov_rate(vocab: Vocabulary, tokens: Iterable[str]) -> float:
    """Fraction of `tokens` (counted with repeats) that have no vector."""
    total = missing = 0
    for token in tokens:
        total += 1
        if token not in vocab:
            missing += 1
    return missing / total if total else 0.0
