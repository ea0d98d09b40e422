"""Token streams from CoNLL-U treebank files."""

from __future__ import annotations

from typing import Iterator, NamedTuple

from .embeddings import FormatError


class TokenRecord(NamedTuple):
    form: str
    lemma: str


def iter_tokens(path) -> Iterator[TokenRecord]:
    """Yield (FORM, LEMMA) for every syntactic word of a CoNLL-U file.

    Comments, sentence breaks, multiword-token ranges (``3-4``) and empty
    nodes (``5.1``) are skipped; everything else keeps corpus order and
    repetition.
    """
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 10:
                raise FormatError(f"expected 10 tab-separated columns, got {len(cols)}", path, lineno)
            token_id = cols[0]
            if token_id.isascii() and token_id.isdigit():
                yield TokenRecord(cols[1], cols[2])
            elif "-" in token_id or "." in token_id:
                continue
            else:
                raise FormatError(f"bad token id {token_id!r}", path, lineno)


def read_tokens(path) -> list[TokenRecord]:
    return list(iter_tokens(path))
