"""Acceptance suite: one test per criterion, each printing a PASS line with
its measured numbers (run with -s to see them on passing runs)."""

import json
import math
import time

import numpy as np

from conical import (
    ConicalClassifier,
    SplitSpec,
    brute_force_membership,
    bns_score,
    combine,
    cosine_similarity,
    decompose_between,
    inverse_normal_cdf,
    ne_score,
    run_evaluation,
    time_scaling_probe,
    unit_normalize,
)
from conical.cli import main

from _synth import jitter_vector, random_unit_corpus, two_topic_dataset


def test_c1_oracle_equivalence():
    """Sparse short-circuit membership agrees with the dense full-scan
    oracle on 10,000 random unit vectors across 50 random models, < 5 s."""
    rng = np.random.default_rng(101)
    start = time.perf_counter()
    checked = agreed = in_topic = 0
    for _ in range(50):
        dim = int(rng.integers(40, 1200))
        corpus = random_unit_corpus(rng, int(rng.integers(3, 40)), dim)
        clf = ConicalClassifier().fit(corpus)
        # Per model: random probes plus training vectors and near-boundary
        # jitters of them, 200 in all.
        probes = random_unit_corpus(rng, 200 - 2 * len(corpus), dim)
        for v in corpus:
            probes.append(v)
            probes.append(jitter_vector(rng, v))
        for v in probes:
            fast = clf.predict_one(v)
            slow = brute_force_membership(clf, v)
            checked += 1
            agreed += fast.in_topic == slow.in_topic
            in_topic += fast.in_topic
    elapsed = time.perf_counter() - start
    assert checked == 10_000
    assert agreed == checked  # 100% agreement
    assert 0 < in_topic < checked  # both labels exercised
    assert elapsed < 5.0
    print(f"ACCEPTANCE 1 (oracle equivalence): PASS: {agreed}/{checked} agree, "
          f"{in_topic} in-topic, {elapsed:.2f}s")


def test_c2_train_set_recall():
    """Every training document of 100 random corpora is classified in-topic
    by its own model; exactly 1.0, no tolerance."""
    rng = np.random.default_rng(102)
    total = hits = 0
    for _ in range(100):
        dim = int(rng.integers(10, 2001))
        n_docs = int(rng.integers(5, 201))
        corpus = random_unit_corpus(rng, n_docs, dim)
        clf = ConicalClassifier().fit(corpus)
        for v in corpus:
            total += 1
            hits += clf.predict_one(v).in_topic
    assert hits == total
    print(f"ACCEPTANCE 2 (train-set recall): PASS: {hits}/{total} training "
          f"documents accepted")


def test_c3_inverse_normal_cdf():
    """|Phi(quantile(p)) - p| <= 1e-9 on 10,000 probabilities, with Phi an
    independent erf-based oracle."""
    rng = np.random.default_rng(103)
    ps = np.concatenate([
        rng.uniform(1e-4, 1 - 1e-4, size=9_000),
        np.linspace(1e-4, 1 - 1e-4, 1_000),
    ])
    worst = 0.0
    for p in ps:
        p = float(p)
        z = inverse_normal_cdf(p)
        phi = 0.5 * (1.0 + math.erf(z / math.sqrt(2.0)))
        worst = max(worst, abs(phi - p))
    assert len(ps) == 10_000
    assert worst <= 1e-9
    print(f"ACCEPTANCE 3 (inverse normal CDF): PASS: worst roundtrip error "
          f"{worst:.3e} over {len(ps)} probabilities")


def test_c4_separation_score_properties():
    """Symmetry, zero-at-equality, one-sided monotonicity on a 200x200 rate
    grid; the two-rate and rate-vs-frequency scores agree bit-for-bit."""
    grid = np.linspace(0.0, 1.0, 200)
    ne = np.empty((200, 200))
    bns = np.empty((200, 200))
    for i, t in enumerate(grid):
        for j, f in enumerate(grid):
            ne[i, j] = ne_score(float(t), float(f))
            bns[i, j] = bns_score(float(t), float(f))
    assert np.array_equal(ne, bns)  # bit-for-bit
    assert np.array_equal(ne, ne.T)  # symmetry
    assert np.all(np.diag(ne) == 0.0)  # zero at equality
    off_diagonal = ne[~np.eye(200, dtype=bool)]
    assert np.all(off_diagonal > 0.0)  # no clamp collisions on this grid
    for j in range(200):  # one-sided monotonicity in the rate argument
        col = ne[:, j]
        above = grid >= grid[j]
        below = grid <= grid[j]
        assert np.all(np.diff(col[above]) >= 0.0)
        assert np.all(np.diff(col[below]) <= 0.0)
    print("ACCEPTANCE 4 (NE/BNS properties): PASS: symmetry, zero-at-equality, "
          "monotonicity, bit-for-bit equality on 200x200 grid")


def test_c5_synthetic_topic_separation():
    """Two synthetic topics (disjoint 50-word keyword pools, shared 100-word
    stopword pool, 200 docs per topic, 20-60 tokens each): 20-repetition
    evaluation reaches mean accuracy and F1 >= 0.95 in under 60 s."""
    ds, lexicon = two_topic_dataset(seed=12345)
    # Generator conformance: pool sizes, corpus size, token lengths.
    assert len(ds.texts) == 400
    assert sum(1 for l in ds.labels if l == "alpha") == 200
    keywords = {t for text in ds.texts for t in text.split() if not t.startswith("filler")}
    assert len({t for t in keywords if t.startswith("alpha")}) <= 50
    assert len({t for t in keywords if t.startswith("beta")}) <= 50
    assert all(20 <= len(text.split()) <= 60 for text in ds.texts)

    start = time.perf_counter()
    report = run_evaluation(ds, SplitSpec(seed=0), repetitions=20,
                            weighting="ne-tf", word_frequencies=lexicon)
    elapsed = time.perf_counter() - start
    acc, f1 = report.mean["accuracy"], report.mean["f1"]
    assert acc >= 0.90 and f1 >= 0.90  # hard floor
    assert acc >= 0.95
    assert f1 >= 0.95
    assert elapsed < 60.0
    print(f"ACCEPTANCE 5 (synthetic separation): PASS: accuracy {acc:.4f}, "
          f"F1 {f1:.4f} over 20 repetitions in {elapsed:.1f}s")


def test_c6_linear_scaling_and_short_circuit():
    """At d = 5,000, predicting 20,000 vectors costs at most 3x predicting
    10,000; short-circuit on/off yield identical labels."""
    rng = np.random.default_rng(106)
    corpus = random_unit_corpus(rng, 60, 5_000, max_nnz=48)
    clf = ConicalClassifier().fit(corpus)

    rows = time_scaling_probe(clf, [10_000, 20_000], nnz=32, seed=106, passes=5)
    ratio = rows[1].ratio
    assert ratio is not None
    assert ratio <= 3.0

    probes = random_unit_corpus(rng, 2_000, 5_000) + corpus \
        + [jitter_vector(rng, v) for v in corpus]
    on = [clf.predict_one(v, short_circuit=True).in_topic for v in probes]
    off = [clf.predict_one(v, short_circuit=False).in_topic for v in probes]
    assert on == off
    print(f"ACCEPTANCE 6 (linearity probe): PASS: 20k/10k time ratio "
          f"{ratio:.2f} (limit 3.0), labels identical with short-circuit on/off")


def test_c7_decomposition_recovery():
    """1,000 random convex combinations between random unit vectors are
    recovered within cosine tolerance 1e-6 and lambda tolerance 1e-5, in at
    most 64 bisection iterations."""
    rng = np.random.default_rng(107)
    worst_lambda = 0.0
    worst_cos = 1.0
    max_iters = 0
    trials = 0
    while trials < 1_000:
        dim = int(rng.integers(8, 80))
        x, y = random_unit_corpus(rng, 2, dim, max_nnz=16)
        if cosine_similarity(x, y) > 0.8:  # keep the endpoints apart
            continue
        lam = float(rng.random())
        target = unit_normalize(combine(lam, x, 1.0 - lam, y))
        if target.is_zero():
            continue
        res = decompose_between(x, y, target, tol=1e-6)
        recon = unit_normalize(combine(res.lambda_x, x, res.lambda_y, y))
        cos = cosine_similarity(recon, target)
        worst_lambda = max(worst_lambda, abs(res.lambda_x - lam))
        worst_cos = min(worst_cos, cos)
        max_iters = max(max_iters, res.iterations)
        assert res.iterations <= 64
        trials += 1
    assert worst_cos >= 1.0 - 1e-6
    assert worst_lambda <= 1e-5
    print(f"ACCEPTANCE 7 (decomposition): PASS: worst lambda error "
          f"{worst_lambda:.2e}, worst cosine {worst_cos:.9f}, max iterations "
          f"{max_iters}")


def test_c8_cli_determinism(tmp_path, capsys):
    """Identically seeded train and eval runs produce byte-identical model
    files and summary records."""
    corpus = tmp_path / "corpus.txt"
    lexicon = tmp_path / "lexicon.tsv"
    data = tmp_path / "data.jsonl"
    ds, lex_table = two_topic_dataset(seed=321, docs_per_topic=60)
    corpus.write_text(
        "\n".join(t for t, l in zip(ds.texts, ds.labels) if l == "alpha") + "\n",
        encoding="utf-8",
    )
    lexicon.write_text(
        "".join(f"{w}\t{int(f * 1e9)}\n" for w, f in sorted(lex_table.freq.items())),
        encoding="utf-8",
    )
    with data.open("w", encoding="utf-8") as fh:
        for t, l in zip(ds.texts, ds.labels):
            fh.write(json.dumps({"text": t, "label": l}) + "\n")

    model_bytes = []
    summaries = []
    run_metrics = []
    for attempt in ("a", "b"):
        model_path = tmp_path / f"model_{attempt}.json"
        report_path = tmp_path / f"report_{attempt}.jsonl"
        assert main(["train", "--corpus", str(corpus), "--lexicon", str(lexicon),
                     "--out", str(model_path)]) == 0
        assert main(["eval", "--data", str(data), "--positive-label", "alpha",
                     "--lexicon", str(lexicon), "--repetitions", "5",
                     "--seed", "7", "--out", str(report_path)]) == 0
        model_bytes.append(model_path.read_bytes())
        lines = report_path.read_text(encoding="utf-8").splitlines()
        summaries.append(lines[-1])
        run_metrics.append(
            [(json.loads(l)["repetition"], json.loads(l)["metrics"])
             for l in lines[:-1]]
        )
    capsys.readouterr()
    assert model_bytes[0] == model_bytes[1]
    assert summaries[0] == summaries[1]  # byte-identical summary JSON
    assert run_metrics[0] == run_metrics[1]
    print("ACCEPTANCE 8 (determinism): PASS: model files and summary records "
          "byte-identical across two seeded runs")
