"""Threshold-stopped average-linkage clustering and the lexicon it produces."""

from __future__ import annotations

import copy
import logging
import os
from concurrent.futures import ProcessPoolExecutor
from typing import Sequence

import numpy as np

from .distance import CondensedDistances, DistanceMode, Params, block_distances, pair_distance
from .embeddings import FormatError, Vocabulary
from .hypercluster import partition, stem

log = logging.getLogger(__name__)


def _as_square(dist, items: Sequence) -> np.ndarray:
    n = len(items)
    if isinstance(dist, CondensedDistances):
        if dist.n != n:
            raise ValueError(f"distance source covers {dist.n} items, got {n}")
        return dist.to_square()
    if callable(dist):
        square = np.zeros((n, n))
        for i in range(n):
            for j in range(i + 1, n):
                square[i, j] = square[j, i] = dist(items[i], items[j])
        return square
    arr = np.asarray(dist, dtype=np.float64)
    if arr.ndim == 1:
        return CondensedDistances(n, arr).to_square()
    if arr.shape != (n, n):
        raise ValueError(f"expected a {n}x{n} matrix, got {arr.shape}")
    return arr.copy()


def agglomerate(items: Sequence, dist, t: float) -> list[list]:
    """Average-linkage clustering of `items`, stopped once no pair is within `t`.

    `dist` is a `CondensedDistances`, a square or condensed array, or a
    callable on two items. Items are assumed to be in rank order. The pair of
    clusters with the lowest mean cross distance is merged as long as that
    mean is <= t; equal means are resolved towards the pair whose smallest
    member ranks are lexicographically smallest.

    Returns the clusters ordered by their first member, each cluster's
    members in rank order.
    """
    n = len(items)
    if n == 0:
        raise ValueError("cannot cluster an empty list")
    if n == 1:
        return [[items[0]]]

    # Pairwise distance sums between clusters. A cluster is stored under the
    # index of its first member, so the merged pair (i, j), i < j, keeps i.
    # Keeping sums rather than means makes the merged row an exact sum, and
    # every mean is recomputed from it with a single division.
    sums = _as_square(dist, items)
    np.fill_diagonal(sums, np.inf)
    sizes = np.ones(n)
    active = np.ones(n, dtype=bool)
    members: list[list[int] | None] = [[i] for i in range(n)]

    # For each active row i: nearest active j > i and that mean distance.
    nearest = np.full(n, -1, dtype=np.intp)
    nearest_d = np.full(n, np.inf)

    def refresh(i: int) -> None:
        cols = np.flatnonzero(active[i + 1:]) + (i + 1)
        if cols.size == 0:
            nearest[i] = -1
            nearest_d[i] = np.inf
            return
        means = sums[i, cols] / (sizes[i] * sizes[cols])
        k = int(np.argmin(means))
        nearest[i] = cols[k]
        nearest_d[i] = means[k]

    for i in range(n - 1):
        refresh(i)

    while True:
        i = int(np.argmin(nearest_d))
        d = nearest_d[i]
        if not d <= t:
            break
        j = int(nearest[i])

        sums[i, :] += sums[j, :]
        sums[:, i] = sums[i, :]
        sums[i, i] = np.inf
        sizes[i] += sizes[j]
        active[j] = False
        nearest_d[j] = np.inf
        nearest[j] = -1
        members[i].extend(members[j])
        members[j] = None

        # Rows above i see a changed column i; rows pointing at i or j must rescan.
        rows = np.flatnonzero(active[:i])
        if rows.size:
            stale = (nearest[rows] == i) | (nearest[rows] == j)
            fresh_rows = rows[~stale]
            means = sums[fresh_rows, i] / (sizes[fresh_rows] * sizes[i])
            better = (means < nearest_d[fresh_rows]) | (
                (means == nearest_d[fresh_rows]) & (i < nearest[fresh_rows])
            )
            nearest[fresh_rows[better]] = i
            nearest_d[fresh_rows[better]] = means[better]
            for r in rows[stale]:
                refresh(int(r))
        between = np.flatnonzero(active[i + 1:j]) + (i + 1)
        for r in between[nearest[between] == j]:
            refresh(int(r))
        refresh(i)

    clusters = []
    for i in range(n):
        if members[i] is not None:
            clusters.append([items[k] for k in sorted(members[i])])
    return clusters


def cluster_block(forms: list[str], vocab: Vocabulary, params: Params) -> list[list[str]]:
    if len(forms) == 1:
        return [list(forms)]
    return agglomerate(forms, block_distances(forms, vocab, params), params.t)


def _cluster_block_job(job):
    forms, vectors, params = job
    return cluster_block(forms, Vocabulary(forms, vectors), params)


class Lexicon:
    """Trained model: every vocabulary form mapped to a dense cluster id.

    Also serves as the session state of `assign`: OOV forms seen at test
    time are added to `assignment` (joining a cluster or minting a new id),
    so a repeated form always gets the same answer. Use `fork` to get an
    independent session.
    """

    def __init__(self, params: Params):
        self.params = params
        self.assignment: dict[str, int] = {}
        self.members: dict[int, list[str]] = {}
        self.cluster_stem: dict[int, str] = {}
        self.by_stem: dict[str, list[int]] = {}

    @property
    def cluster_meta(self) -> dict[int, tuple[str, int]]:
        return {cid: (self.cluster_stem[cid], len(forms)) for cid, forms in self.members.items()}

    @property
    def n_clusters(self) -> int:
        return len(self.members)

    def next_id(self) -> int:
        return len(self.members)

    def add_cluster(self, stem_key: str, forms: Sequence[str]) -> int:
        cid = self.next_id()
        self.members[cid] = list(forms)
        self.cluster_stem[cid] = stem_key
        self.by_stem.setdefault(stem_key, []).append(cid)
        for form in forms:
            self.assignment[form] = cid
        return cid

    def join(self, form: str, cid: int) -> None:
        self.members[cid].append(form)
        self.assignment[form] = cid

    def fork(self) -> "Lexicon":
        return copy.deepcopy(self)

    def labels(self) -> dict[str, int]:
        return dict(self.assignment)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Lexicon):
            return NotImplemented
        return (
            self.params == other.params
            and self.members == other.members
            and self.cluster_stem == other.cluster_stem
        )

    def __repr__(self) -> str:
        return f"<Lexicon {len(self.assignment)} forms, {self.n_clusters} clusters, {self.params.describe()}>"

    def save(self, path) -> None:
        """Write the lexicon as TSV: a params header, then ``form, id, stem`` lines."""
        p = self.params
        tmp = f"{path}.tmp"
        with open(tmp, "w", encoding="utf-8", newline="\n") as f:
            f.write(f"#params\tt={p.t!r}\tK={p.K}\tN={p.N}\tmode={p.mode.value}\n")
            for cid in range(self.n_clusters):
                stem_key = self.cluster_stem[cid]
                for form in self.members[cid]:
                    if "\t" in form or "\n" in form:
                        raise ValueError(f"form {form!r} cannot be stored in TSV")
                    f.write(f"{form}\t{cid}\t{stem_key}\n")
        os.replace(tmp, path)

    @classmethod
    def load(cls, path) -> "Lexicon":
        with open(path, encoding="utf-8") as f:
            header = f.readline().rstrip("\n")
            fields = header.split("\t")
            if not fields or fields[0] != "#params":
                raise FormatError("missing '#params' header", path, 1)
            try:
                kv = dict(field.split("=", 1) for field in fields[1:])
                params = Params(t=float(kv["t"]), K=int(kv["K"]), N=int(kv["N"]), mode=DistanceMode(kv["mode"]))
            except (KeyError, ValueError) as exc:
                raise FormatError(f"bad params header: {exc}", path, 1) from None

            lex = cls(params)
            for lineno, line in enumerate(f, start=2):
                parts = line.rstrip("\n").split("\t")
                if len(parts) != 3:
                    raise FormatError(f"expected 3 tab-separated columns, got {len(parts)}", path, lineno)
                form, cid_text, stem_key = parts
                try:
                    cid = int(cid_text)
                except ValueError:
                    raise FormatError(f"bad cluster id {cid_text!r}", path, lineno) from None
                if cid == lex.next_id():
                    lex.add_cluster(stem_key, [form])
                elif cid >= 0 and cid == lex.next_id() - 1 and lex.cluster_stem[cid] == stem_key:
                    lex.join(form, cid)
                else:
                    raise FormatError(f"cluster id {cid} out of order", path, lineno)
        return lex


def build_model(vocab: Vocabulary, params: Params, threads: int = 1) -> Lexicon:
    """Cluster every hypercluster of `vocab` and number the clusters.

    Ids follow sorted stems, then the order clusters come out of each block.
    With ``threads > 1`` blocks are clustered in worker processes; the
    result does not depend on the worker count.
    """
    hyper = partition(vocab, params.K)
    keys = list(hyper)
    big = [k for k in keys if len(hyper[k]) > 1]

    results: dict[str, list[list[str]]] = {k: [list(hyper[k])] for k in keys if len(hyper[k]) == 1}
    if threads > 1 and len(big) > 1:
        # Largest blocks first so one straggler does not serialize the tail.
        order = sorted(big, key=lambda k: -len(hyper[k]))
        jobs = [(hyper[k], vocab.vectors[[vocab.rank(f) for f in hyper[k]]], params) for k in order]
        with ProcessPoolExecutor(max_workers=threads) as pool:
            for k, clusters in zip(order, pool.map(_cluster_block_job, jobs, chunksize=1)):
                results[k] = clusters
    else:
        for k in big:
            results[k] = cluster_block(hyper[k], vocab, params)

    lex = Lexicon(params)
    for k in keys:
        for forms in results[k]:
            lex.add_cluster(k, forms)
    log.info("clustered %d forms in %d blocks into %d clusters", len(vocab), len(keys), lex.n_clusters)
    return lex


def assign(form: str, lex: Lexicon, vocab: Vocabulary, params: Params | None = None) -> int:
    """Cluster id for `form`, extending `lex` if the form is new.

    A known form gets its stored id. An unknown form is compared with every
    cluster of its own block by mean distance to the members; it joins the
    closest one if that mean is strictly below t, otherwise it opens a new
    cluster. Either way the form is recorded in `lex`.
    """
    cid = lex.assignment.get(form)
    if cid is not None:
        return cid

    params = params or lex.params
    key = stem(form, params.K)
    best, best_d = None, np.inf
    for cand in lex.by_stem.get(key, ()):
        members = lex.members[cand]
        d = sum(pair_distance(form, m, vocab, params) for m in members) / len(members)
        if d < best_d:
            best, best_d = cand, d

    if best is not None and best_d < params.t:
        lex.join(form, best)
        return best
    return lex.add_cluster(key, [form])


def assign_all(forms, lex: Lexicon, vocab: Vocabulary, params: Params | None = None) -> list[int]:
    return [assign(form, lex, vocab, params) for form in forms]

