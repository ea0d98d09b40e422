"""Unsupervised lemmatization by clustering word forms.

Word forms are compared with a distance that multiplies a Jaro-Winkler
string similarity by a shifted embedding cosine, split into stem blocks, and
clustered with threshold-stopped average linkage.
"""

from .cluster import Lexicon, agglomerate, assign, build_model
from .conllu import TokenRecord, read_tokens
from .distance import CondensedDistances, DistanceMode, Params, pair_distance
from .embeddings import FormatError, Vocabulary, cosine, load_vectors, oov_rate
from .evaluate import EvalReport, error_reduction, evaluate_run, v_measure
from .hypercluster import partition, stem
from .strsim import JwParams, avg_jw, jaro, jaro_winkler
from .textnorm import simplify, transliterate

__version__ = "0.1.0"

__all__ = [
    "CondensedDistances",
    "DistanceMode",
    "EvalReport",
    "FormatError",
    "JwParams",
    "Lexicon",
    "Params",
    "TokenRecord",
    "Vocabulary",
    "agglomerate",
    "assign",
    "avg_jw",
    "build_model",
    "cosine",
    "error_reduction",
    "evaluate_run",
    "jaro",
    "jaro_winkler",
    "load_vectors",
    "oov_rate",
    "pair_distance",
    "partition",
    "read_tokens",
    "simplify",
    "stem",
    "transliterate",
    "v_measure",
]
