import itertools

import numpy as np
import pytest

import formclust.cluster as cluster_mod
from formclust.cluster import Lexicon, agglomerate, assign, build_model
from formclust.distance import CondensedDistances, Params, pair_distance
from formclust.embeddings import FormatError, Vocabulary
from formclust.hypercluster import partition, stem
from oracles import naive_average_linkage


def as_index_sets(clusters):
    return {frozenset(c) for c in clusters}


def square(values, n):
    return CondensedDistances(n, values).to_square()


class TestAgglomerate:
    def test_singleton(self):
        assert agglomerate(["x"], np.zeros(0), 0.4) == [["x"]]

    def test_empty_input(self):
        with pytest.raises(ValueError):
            agglomerate([], np.zeros(0), 0.4)

    def test_stops_above_threshold(self):
        # d(a,b)=0.1, d(a,c)=0.5, d(b,c)=0.5: {a,b} to c averages 0.5 > 0.4
        assert agglomerate(["a", "b", "c"], [0.1, 0.5, 0.5], 0.4) == [["a", "b"], ["c"]]

    def test_merges_at_exactly_threshold(self):
        # {a,b} to c averages (0.3 + 0.5) / 2 = 0.4, which still merges
        assert agglomerate(["a", "b", "c"], [0.1, 0.3, 0.5], 0.4) == [["a", "b", "c"]]

    def test_accepts_callable_and_square(self):
        d = {frozenset("ab"): 0.1, frozenset("ac"): 0.3, frozenset("bc"): 0.5}
        by_fn = agglomerate(["a", "b", "c"], lambda x, y: d[frozenset((x, y))], 0.35)
        by_sq = agglomerate(["a", "b", "c"], square([0.1, 0.3, 0.5], 3), 0.35)
        assert by_fn == by_sq == [["a", "b"], ["c"]]

    def test_average_not_single_linkage(self):
        # single linkage would chain c in via b (0.2); the mean (0.2 + 0.9) / 2 does not
        assert agglomerate(["a", "b", "c"], [0.1, 0.9, 0.2], 0.4) == [["a", "b"], ["c"]]

    def test_tie_goes_to_lowest_ranks(self):
        # a-d merge first (0.25). Then {a,d}-c and b-c both average 0.5 = t;
        # {a,d}-c has the smaller first members (0, 2) < (1, 2) and wins, which
        # leaves b-{a,c,d} at 0.583 > t. Preferring b-c would give {a,d}, {b,c}.
        d = [0.5, 0.5, 0.25, 0.5, 0.75, 0.5]  # a-b, a-c, a-d, b-c, b-d, c-d
        out = agglomerate(list("abcd"), d, 0.5)
        assert out == [["a", "c", "d"], ["b"]]
        sq = square(d, 4)
        assert naive_average_linkage(4, lambda i, j: sq[i, j], 0.5) == {frozenset({0, 2, 3}), frozenset({1})}

    def test_output_ordering(self):
        rng = np.random.default_rng(3)
        items = list(range(12))
        sq = rng.random((12, 12))
        sq = (sq + sq.T) / 2
        out = agglomerate(items, sq, 0.45)
        assert [c[0] for c in out] == sorted(c[0] for c in out)
        assert all(c == sorted(c) for c in out)
        assert sorted(itertools.chain.from_iterable(out)) == items

    @pytest.mark.parametrize("seed", range(40))
    def test_matches_naive_reference(self, seed):
        rng = np.random.default_rng(seed)
        n = int(rng.integers(2, 9))
        if seed % 2:
            # dyadic grid values: plenty of exact ties, and every sum is exact
            values = rng.integers(0, 33, size=n * (n - 1) // 2) / 32
            t = rng.integers(0, 33) / 32
        else:
            values = rng.random(n * (n - 1) // 2)
            t = rng.random()
        sq = square(values, n)
        got = as_index_sets(agglomerate(list(range(n)), sq, t))
        assert got == naive_average_linkage(n, lambda i, j: sq[i, j], t)

    def test_merges_never_exceed_threshold(self):
        rng = np.random.default_rng(11)
        for _ in range(30):
            n = 10
            sq = square(rng.random(45), n)
            for c in agglomerate(list(range(n)), sq, 0.5):
                # every cluster was formed by merges at mean <= t, so some member pair is within t
                if len(c) > 1:
                    assert min(sq[i, j] for i in c for j in c if i != j) <= 0.5


class TestBuildModel:
    def test_threshold_zero_gives_singletons(self, synthetic_vocab):
        lex = build_model(synthetic_vocab, Params(t=0.0))
        assert lex.n_clusters == len(synthetic_vocab)

    def test_threshold_one_collapses_blocks(self, synthetic_vocab):
        lex = build_model(synthetic_vocab, Params(t=1.0))
        assert lex.n_clusters == len(partition(synthetic_vocab, 3))

    def test_close_pair_shares_a_cluster(self):
        vocab = Vocabulary(["walk", "walks"], [[1.0, 0.0], [0.98, 0.2]])
        assert pair_distance("walk", "walks", vocab, Params()) < 0.4
        lex = build_model(vocab, Params())
        assert lex.assignment["walk"] == lex.assignment["walks"]

    def test_clusters_never_cross_stems(self, synthetic_vocab):
        lex = build_model(synthetic_vocab, Params(t=1.0))
        for cid, members in lex.members.items():
            assert {stem(f, 3) for f in members} == {lex.cluster_stem[cid]}

    def test_ids_follow_sorted_stems(self, synthetic_vocab):
        lex = build_model(synthetic_vocab, Params())
        stems = [lex.cluster_stem[cid] for cid in range(lex.n_clusters)]
        assert stems == sorted(stems)
        assert sorted(lex.members) == list(range(lex.n_clusters))

    def test_empty_vocabulary(self):
        lex = build_model(Vocabulary.empty(4), Params())
        assert lex.n_clusters == 0

    def test_parallel_matches_serial(self, synthetic_vocab):
        serial = build_model(synthetic_vocab, Params())
        assert build_model(synthetic_vocab, Params(), threads=3) == serial

    def test_every_vocabulary_form_maps_back(self, synthetic_vocab):
        lex = build_model(synthetic_vocab, Params())
        before = dict(lex.assignment)
        for form in synthetic_vocab.forms:
            assert assign(form, lex, synthetic_vocab) == before[form]
        assert lex.n_clusters == len(set(before.values()))


class TestAssign:
    @pytest.fixture
    def lex(self, micro_vocab):
        return build_model(micro_vocab, Params())

    def test_known_form(self, lex, micro_vocab):
        assert assign("walked", lex, micro_vocab) == lex.assignment["walked"]

    def test_oov_joins_nearest_cluster(self, lex, micro_vocab):
        assert assign("walkin", lex, micro_vocab) == lex.assignment["walk"]
        assert "walkin" in lex.members[lex.assignment["walk"]]

    def test_oov_without_block_gets_fresh_id(self, lex, micro_vocab):
        n = lex.n_clusters
        cid = assign("zebra", lex, micro_vocab)
        assert cid == n
        assert assign("zebra", lex, micro_vocab) == cid
        assert lex.n_clusters == n + 1

    def test_fresh_cluster_is_reused_by_later_forms(self, lex, micro_vocab):
        first = assign("zebras", lex, micro_vocab)
        assert assign("zebra", lex, micro_vocab) == first

    @pytest.mark.parametrize("mean, joins", [(0.39, True), (0.40, False)])
    def test_join_is_strict(self, lex, micro_vocab, monkeypatch, mean, joins):
        monkeypatch.setattr(cluster_mod, "pair_distance", lambda a, b, v, p: mean)
        target = lex.by_stem["wlk"][0]
        cid = assign("walkx", lex, micro_vocab)
        assert (cid == target) is joins

    def test_session_fork_is_independent(self, lex, micro_vocab):
        session = lex.fork()
        assign("zebra", session, micro_vocab)
        assert "zebra" not in lex.assignment


class TestLexiconFile:
    def test_roundtrip(self, synthetic_vocab, tmp_path):
        lex = build_model(synthetic_vocab, Params(t=0.35, K=2, N=150, mode="jw_only"))
        path = tmp_path / "lex.tsv"
        lex.save(path)
        again = Lexicon.load(path)
        assert again == lex
        assert again.assignment == lex.assignment
        again.save(tmp_path / "lex2.tsv")
        assert (tmp_path / "lex2.tsv").read_bytes() == path.read_bytes()

    def test_header(self, micro_vocab, tmp_path):
        path = tmp_path / "lex.tsv"
        build_model(micro_vocab, Params()).save(path)
        first, second = path.read_text(encoding="utf-8").splitlines()[:2]
        assert first == "#params\tt=0.4\tK=3\tN=100000\tmode=combined"
        assert second == "go\t0\tg"

    @pytest.mark.parametrize("body", [
        "walk\t0\n",
        "#params\tt=0.4\tK=3\tN=10\tmode=combined\nwalk\tx\twlk\n",
        "#params\tt=0.4\tK=3\tN=10\tmode=combined\nwalk\t1\twlk\n",
        "#params\tt=0.4\tK=3\tN=10\tmode=combined\nwalk\t0\n",
        "#params\tt=2\tK=3\tN=10\tmode=combined\n",
    ])
    def test_malformed(self, tmp_path, body):
        path = tmp_path / "bad.tsv"
        path.write_text(body, encoding="utf-8")
        with pytest.raises(FormatError):
            Lexicon.load(path)
