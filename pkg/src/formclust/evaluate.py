"""Scoring a clustering against gold lemmas.

Errors are ``1 - v_measure`` and are kept as fractions; the results table
shows them as percentages.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Hashable, Sequence

import numpy as np

from .cluster import Lexicon, assign
from .conllu import TokenRecord
from .distance import Params
from .embeddings import Vocabulary, oov_rate
from .hypercluster import stem

BASELINE_MODES = ("form", "form5")


def _encode(labels: Sequence[Hashable]) -> np.ndarray:
    codes: dict = {}
    return np.fromiter((codes.setdefault(x, len(codes)) for x in labels), dtype=np.intp, count=len(labels))


def contingency(gold: Sequence[Hashable], pred: Sequence[Hashable]) -> np.ndarray:
    """Token counts per (gold class, predicted cluster)."""
    g = _encode(gold)
    p = _encode(pred)
    table = np.zeros((g.max() + 1, p.max() + 1), dtype=np.int64)
    np.add.at(table, (g, p), 1)
    return table


def _entropy(counts: np.ndarray) -> float:
    counts = counts[counts > 0]
    total = counts.sum()
    probs = counts / total
    return float(-(probs * np.log(probs)).sum())


def _conditional_entropy(table: np.ndarray) -> float:
    """H(rows | columns) from a count table."""
    total = table.sum()
    col_totals = table.sum(axis=0)
    nz = np.nonzero(table)
    n_ij = table[nz].astype(np.float64)
    return float(-(n_ij / total * np.log(n_ij / col_totals[nz[1]])).sum())


def v_measure(gold: Sequence[Hashable], pred: Sequence[Hashable]) -> tuple[float, float, float]:
    """Homogeneity, completeness and their harmonic mean (the V-measure).

    Label values are opaque; only which tokens share a label matters.
    """
    if len(gold) != len(pred):
        raise ValueError(f"label sequences differ in length: {len(gold)} vs {len(pred)}")
    if len(gold) == 0:
        raise ValueError("cannot score an empty labeling")
    table = contingency(gold, pred)
    h_gold = _entropy(table.sum(axis=1))
    h_pred = _entropy(table.sum(axis=0))
    homogeneity = 1.0 if h_gold == 0.0 else 1.0 - _conditional_entropy(table) / h_gold
    completeness = 1.0 if h_pred == 0.0 else 1.0 - _conditional_entropy(table.T) / h_pred
    if homogeneity + completeness == 0.0:
        v = 0.0
    else:
        v = 2.0 * homogeneity * completeness / (homogeneity + completeness)
    return homogeneity, completeness, v


def clustering_error(gold, pred) -> float:
    return 1.0 - v_measure(gold, pred)[2]


def baseline_labels(tokens: Sequence[TokenRecord], mode: str) -> list[str]:
    """The form itself, or its first five characters, as the predicted lemma."""
    if mode == "form":
        return [tok.form for tok in tokens]
    if mode == "form5":
        return [tok.form[:5] for tok in tokens]
    raise ValueError(f"unknown baseline mode {mode!r}; expected one of {BASELINE_MODES}")


def oracle_labels(tokens: Sequence[TokenRecord], K: int) -> list[tuple[str, str]]:
    """Best labeling reachable inside the stem blocks.

    A token gets its gold lemma when the lemma shares the form's stem, and
    its own form otherwise. The two kinds of label are kept in separate
    namespaces so a stranded form can never coincide with some lemma.
    """
    labels = []
    for tok in tokens:
        if tok.form == tok.lemma or stem(tok.lemma, K) == stem(tok.form, K):
            labels.append(("lemma", tok.lemma))
        else:
            labels.append(("form", tok.form))
    return labels


def error_reduction(base: float, ours: float, upper: float) -> float | None:
    """Where `ours` lies between `base` (0 %) and `upper` (100 %); None if the two coincide."""
    if base == upper:
        return None
    return (base - ours) / (base - upper) * 100.0


@dataclass
class EvalReport:
    homogeneity: float
    completeness: float
    v_measure: float
    error: float
    baseline_form_err: float
    baseline_form5_err: float
    baseline_err: float
    baseline_mode: str
    our_err: float
    oracle_err: float
    error_reduction: float | None
    oov_rate: float
    n_tokens: int

    def as_dict(self) -> dict:
        return asdict(self)

    def summary(self) -> str:
        er = "n/a" if self.error_reduction is None else f"{self.error_reduction:.1f}%"
        return "\n".join([
            f"tokens            {self.n_tokens}",
            f"oov rate          {100 * self.oov_rate:.2f}%",
            f"homogeneity       {self.homogeneity:.4f}",
            f"completeness      {self.completeness:.4f}",
            f"v-measure         {self.v_measure:.4f}",
            f"baseline form     {100 * self.baseline_form_err:.2f}",
            f"baseline form5    {100 * self.baseline_form5_err:.2f}",
            f"{'baseline (' + self.baseline_mode + ')':18s}{100 * self.baseline_err:.2f}",
            f"ours              {100 * self.our_err:.2f}",
            f"oracle            {100 * self.oracle_err:.2f}",
            f"error reduction   {er}",
        ])


def predicted_labels(tokens: Sequence[TokenRecord], lex: Lexicon, vocab: Vocabulary, params: Params) -> list[int]:
    """Cluster id per token, assigning OOV forms in a private session."""
    session = lex.fork()
    return [assign(tok.form, session, vocab, params) for tok in tokens]


def evaluate_run(tokens: Sequence[TokenRecord], lex: Lexicon, vocab: Vocabulary, params: Params | None = None) -> EvalReport:
    """Score the lexicon on a token stream, next to both baselines and the oracle."""
    params = params or lex.params
    if not tokens:
        raise ValueError("no tokens to evaluate")
    gold = [tok.lemma for tok in tokens]

    h, c, v = v_measure(gold, predicted_labels(tokens, lex, vocab, params))
    form_err = clustering_error(gold, baseline_labels(tokens, "form"))
    form5_err = clustering_error(gold, baseline_labels(tokens, "form5"))
    # ties go to the plain form
    baseline_mode = "form" if form_err <= form5_err else "form5"
    baseline_err = min(form_err, form5_err)
    oracle_err = clustering_error(gold, oracle_labels(tokens, params.K))
    our_err = 1.0 - v

    return EvalReport(
        homogeneity=h,
        completeness=c,
        v_measure=v,
        error=our_err,
        baseline_form_err=form_err,
        baseline_form5_err=form5_err,
        baseline_err=baseline_err,
        baseline_mode=baseline_mode,
        our_err=our_err,
        oracle_err=oracle_err,
        error_reduction=error_reduction(baseline_err, our_err, oracle_err),
        oov_rate=oov_rate(vocab, (tok.form for tok in tokens)),
        n_tokens=len(tokens),
    )


RESULTS_COLUMNS = ("treebank", "baseline_mode", "baseline_err", "our_err", "oracle_err", "err_reduction")


def results_row(treebank: str, report: EvalReport) -> str:
    """One tab-separated results line; errors in percent of 1 - v."""
    er = "n/a" if report.error_reduction is None else f"{report.error_reduction:.1f}"
    return "\t".join([
        treebank,
        report.baseline_mode,
        f"{100 * report.baseline_err:.2f}",
        f"{100 * report.our_err:.2f}",
        f"{100 * report.oracle_err:.2f}",
        er,
    ])


def results_header() -> str:
    return "\t".join(RESULTS_COLUMNS)
