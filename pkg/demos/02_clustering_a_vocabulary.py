"""
Clustering a small vocabulary
=============================

Build a toy embedding vocabulary, look at the distances inside one stem
block, cluster it, and assign forms that were never seen at build time.
"""

import numpy as np

from formclust import Params, Vocabulary, assign, build_model, pair_distance, partition
from formclust.distance import block_distances

rng = np.random.default_rng(0)

# Three Czech lemmas. Forms of one lemma share a direction in the vector
# space; "prahový" (an adjective, 'threshold') is a derivation that shares
# the stem but not the meaning.
families = {
    "Praha": ["Praha", "Prahy", "Prahou", "Praze"],
    "práh": ["práh", "prahu", "prahem"],
    "prahový": ["prahový", "prahová"],
}
forms, vectors = [], []
for k, members in enumerate(families.values()):
    center = np.eye(8)[k] * 3
    for form in members:
        forms.append(form)
        vectors.append(center + 0.4 * rng.normal(size=8))
vocab = Vocabulary(forms, np.array(vectors))

# %%
# Stem blocks: the first three characters of the simplified form. "Praze"
# simplifies to "prz" and therefore lands in a block of its own; no
# clustering can bring it back to "Praha".
blocks = partition(vocab, K=3)
for stem, members in blocks.items():
    print(stem, members)

# %%
# Distances inside the large block, as a square matrix.
params = Params(t=0.4)
members = blocks["prh"]
square = block_distances(members, vocab, params).to_square()
print("      " + " ".join(f"{m[:6]:>6s}" for m in members))
for m, row in zip(members, square):
    print(f"{m[:6]:>6s} " + " ".join(f"{x:6.2f}" for x in row))

# %%
# Average-linkage clustering per block, stopped at t.
lex = build_model(vocab, params)
for cid, cluster in lex.members.items():
    print(cid, lex.cluster_stem[cid], cluster)

# %%
# Forms without a vector get one clustering step against their own block:
# they join the closest cluster when its mean distance is below t, and
# otherwise open a new one. Repeated forms keep their first answer, and
# vocabulary forms ("prahová") are a plain lookup.
for form in ["Prahám", "Prahu", "zebra", "Prahám", "prahová"]:
    cid = assign(form, lex, vocab)
    print(f"{form:8s} -> cluster {cid} {lex.members[cid]}")

# %%
# The threshold trades merging inflections against merging derivations.
for t in (0.2, 0.3, 0.4, 0.5, 0.6):
    print(t, build_model(vocab, Params(t=t)).n_clusters, "clusters")

print(pair_distance("Praha", "Prahy", vocab, params), pair_distance("práh", "prahový", vocab, params))
