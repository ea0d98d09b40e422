"""
Scoring against gold lemmas
===========================

Token-level V-measure of the clustering, next to two naive baselines and
an oracle that is only limited by the stem blocks. Runs on the micro
fixture shipped with the tests; point the paths at a real ``.vec`` file and
a UD dev treebank for a real evaluation (or use ``formclust eval``).
"""

from pathlib import Path

from formclust import Params, build_model, evaluate_run, load_vectors, read_tokens
from formclust.evaluate import baseline_labels, oracle_labels, results_header, results_row

DATA = Path(__file__).resolve().parent.parent / "tests" / "data"
vocab = load_vectors(DATA / "micro.vec", 100_000)
tokens = read_tokens(DATA / "micro.conllu")
print(len(vocab), "vectors,", len(tokens), "tokens")

# %%
# What the baselines and the oracle predict for a few tokens.
form5 = baseline_labels(tokens, "form5")
oracle = oracle_labels(tokens, K=3)
for tok, b, o in list(zip(tokens, form5, oracle))[4:9]:
    print(f"{tok.form:8s} gold={tok.lemma:6s} form5={b:6s} oracle={o}")

# %%
# The full report. "went" cannot be reached from "go" through a shared
# stem, so even the oracle keeps some error.
report = evaluate_run(tokens, build_model(vocab, Params()), vocab)
print(report.summary())

# %%
# Distance ablation: strings only, embeddings only, and the product.
print(results_header() + "\tmode")
for mode in ("jw_only", "cos_only", "combined"):
    params = Params(mode=mode)
    report = evaluate_run(tokens, build_model(vocab, params), vocab, params)
    print(results_row("micro", report) + f"\t{mode}")
