"""Full-scale reproduction of the reference results on UD 2.3 (optional, slow).

Needs data that is not shipped with the package:

* pretrained fastText vectors, one ``cc.<lang>.300.vec`` (or ``wiki.<lang>.vec``)
  per language, in --vectors-dir (https://fasttext.cc/docs/en/crawl-vectors.html)
* the Universal Dependencies 2.3 release unpacked in --ud-dir
  (https://universaldependencies.org/)

    python scripts/reproduce.py --vectors-dir ~/fasttext --ud-dir ~/ud-treebanks-v2.3 \
        --treebanks cs_pdt,en_ewt --out results.tsv

Each treebank's dev split is scored with the default settings (t=0.4, K=3,
N=100000). Every error is compared with its reference value at a tolerance
of 0.5 percentage points. With --modes, the string-only and embedding-only
ablations are run too, and their average/median over the treebanks are
compared with the reference ablation figures when all 28 treebanks were run.
Expect roughly an hour and a gigabyte of memory per treebank and mode.
"""

from __future__ import annotations

import argparse
import statistics
import sys
import time
from pathlib import Path

from formclust import Params, build_model, evaluate_run, load_vectors, read_tokens
from formclust.evaluate import results_header, results_row

TOLERANCE_PP = 0.5

# treebank: (baseline mode, baseline err %, our err %, oracle err %, error reduction %)
EXPECTED = {
    "ar_padt": ("form", 4.19, 3.90, 2.93, 23.1),
    "ca_ancora": ("form", 4.65, 4.35, 3.32, 22.3),
    "cs_cac": ("form5", 3.56, 2.25, 1.14, 54.0),
    "cs_fictree": ("form5", 4.82, 4.08, 2.68, 34.6),
    "cs_pdt": ("form5", 4.93, 3.41, 1.65, 46.6),
    "da_ddt": ("form", 2.32, 2.16, 1.55, 21.2),
    "en_ewt": ("form", 2.29, 2.22, 1.78, 13.8),
    "es_ancora": ("form", 3.99, 3.38, 2.25, 34.7),
    "et_edt": ("form5", 4.78, 4.31, 2.54, 20.9),
    "fa_seraji": ("form", 8.99, 8.76, 7.44, 14.8),
    "fr_gsd": ("form", 4.12, 3.81, 2.70, 22.0),
    "hi_hdtb": ("form", 4.18, 3.58, 2.83, 44.3),
    "hr_set": ("form5", 4.04, 2.87, 1.71, 50.2),
    "it_isdt": ("form", 4.27, 3.71, 2.78, 37.8),
    "it_postwita": ("form", 3.60, 4.07, 2.37, -38.0),
    "ja_gsd": ("form", 1.64, 1.93, 1.41, -123.1),
    "ko_kaist": ("form", 0.14, 2.41, 0.11, -6392.8),
    "la_ittb": ("form5", 6.53, 6.97, 3.85, -16.4),
    "la_proiel": ("form5", 6.92, 7.42, 4.20, -18.4),
    "lv_lvtb": ("form5", 3.90, 3.39, 2.10, 28.0),
    "no_bokmaal": ("form", 2.79, 2.22, 1.48, 43.6),
    "no_nynorsk": ("form", 2.73, 2.52, 1.48, 16.7),
    "pl_lfg": ("form5", 3.68, 3.06, 1.84, 33.6),
    "pt_bosque": ("form", 3.57, 3.17, 2.55, 39.0),
    "ro_nonstd": ("form5", 8.13, 7.95, 5.64, 7.2),
    "sk_snk": ("form5", 2.87, 2.01, 0.63, 38.2),
    "uk_iu": ("form", 2.66, 1.94, 0.88, 40.7),
    "ur_udtb": ("form", 3.95, 3.79, 2.65, 12.3),
}

# mode: (average err %, median err %) over all 28 treebanks
EXPECTED_ABLATION = {
    "jw_only": (8.17, 7.92),
    "cos_only": (4.39, 3.87),
    "combined": (3.77, 3.40),
}


def language(treebank: str) -> str:
    return treebank.split("_")[0]


def find_vectors(vectors_dir: Path, lang: str) -> Path:
    for name in (f"cc.{lang}.300.vec", f"wiki.{lang}.vec", f"{lang}.vec"):
        path = vectors_dir / name
        if path.exists():
            return path
    raise FileNotFoundError(f"no vectors for {lang!r} in {vectors_dir}")


def find_dev(ud_dir: Path, treebank: str) -> Path:
    hits = sorted(ud_dir.rglob(f"{treebank}-ud-dev.conllu"))
    if not hits:
        raise FileNotFoundError(f"no dev split for {treebank!r} under {ud_dir}")
    return hits[0]


def check(label: str, got: float, want: float) -> bool:
    ok = abs(got - want) <= TOLERANCE_PP
    print(f"  {label:10s} got {got:6.2f}  expected {want:6.2f}  {'ok' if ok else 'MISMATCH'}")
    return ok


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--vectors-dir", type=Path, required=True)
    parser.add_argument("--ud-dir", type=Path, required=True)
    parser.add_argument("--treebanks", default=",".join(EXPECTED), help="comma-separated (default: all 28)")
    parser.add_argument("--modes", default="combined", help="comma-separated subset of combined,jw_only,cos_only")
    parser.add_argument("--threads", type=int, default=1)
    parser.add_argument("--out", type=Path)
    args = parser.parse_args(argv)

    treebanks = [tb for tb in args.treebanks.split(",") if tb]
    unknown = [tb for tb in treebanks if tb not in EXPECTED]
    if unknown:
        parser.error(f"no reference values for {unknown}")
    modes = [m for m in args.modes.split(",") if m]

    rows = [results_header() + "\tmode"]
    errors: dict[str, list[float]] = {m: [] for m in modes}
    all_ok = True
    for tb in treebanks:
        tokens = read_tokens(find_dev(args.ud_dir, tb))
        vec_path = find_vectors(args.vectors_dir, language(tb))
        for mode in modes:
            params = Params(mode=mode)
            started = time.perf_counter()
            vocab = load_vectors(vec_path, params.N)
            lex = build_model(vocab, params, threads=args.threads)
            report = evaluate_run(tokens, lex, vocab, params)
            print(f"{tb} [{mode}] {time.perf_counter() - started:.0f}s, oov {100 * report.oov_rate:.1f}%")
            rows.append(results_row(tb, report) + f"\t{mode}")
            errors[mode].append(100 * report.our_err)
            if mode == "combined":
                _, base, ours, upper, _ = EXPECTED[tb]
                all_ok &= check("baseline", 100 * report.baseline_err, base)
                all_ok &= check("ours", 100 * report.our_err, ours)
                all_ok &= check("oracle", 100 * report.oracle_err, upper)

    if len(treebanks) == len(EXPECTED):
        print("ablation (average / median over treebanks)")
        for mode in modes:
            avg_want, med_want = EXPECTED_ABLATION[mode]
            all_ok &= check(f"{mode} avg", statistics.mean(errors[mode]), avg_want)
            all_ok &= check(f"{mode} med", statistics.median(errors[mode]), med_want)

    table = "\n".join(rows) + "\n"
    if args.out:
        args.out.write_text(table, encoding="utf-8")
    else:
        sys.stdout.write(table)
    print("all within tolerance" if all_ok else "some values outside tolerance")
    return 0 if all_ok else 1


if __name__ == "__main__":
    sys.exit(main())
