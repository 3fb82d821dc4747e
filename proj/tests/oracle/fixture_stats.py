"""Computes golden statistics for tests/data/webnlg_fixture.jsonl with numpy
and writes tests/data/webnlg_fixture_golden.json. Run once; the output is
frozen and checked by the C++ tests."""
import collections
import json
import pathlib
import re
import unicodedata

import numpy as np

data = pathlib.Path(__file__).resolve().parents[1] / "data"
records = [json.loads(l) for l in (data / "webnlg_fixture.jsonl").read_text(encoding="utf-8").splitlines() if l.strip()]


def canonical(s):
    s = unicodedata.normalize("NFKD", s)
    s = "".join(c for c in s if ord(c) < 128 and unicodedata.category(c) not in ("Mn", "Me", "Mc"))
    s = s.replace("_", " ").lower()
    return re.sub(r"\s+", " ", s).strip()


def describe(values):
    a = np.array(values, dtype=np.float64)
    q = np.percentile(a, [25, 50, 75], method="linear")
    return {"count": len(values), "mean": float(a.mean()), "std": float(a.std(ddof=0)),
            "std_sample": float(a.std(ddof=1)), "min": float(a.min()),
            "p25": float(q[0]), "p50": float(q[1]), "p75": float(q[2]), "max": float(a.max())}


ref_lengths = [len(r) for rec in records for r in rec["references"]]
record_lengths = [len(" ".join(rec["references"])) for rec in records]
rdf_lengths = [len(" ".join(f"{s} | {p} | {o} ;" for s, p, o in rec["triples"])) for rec in records]
rel = collections.Counter(canonical(t[1]) for rec in records for t in rec["triples"])
relations = sorted(rel.items(), key=lambda kv: (-kv[1], kv[0]))
triples_per = np.array([len(rec["triples"]) for rec in records], dtype=np.float64)
refs_per = np.array([len(rec["references"]) for rec in records], dtype=np.float64)
splits = collections.Counter(rec["split"] for rec in records)

golden = {
    "split_counts": [splits["train"], splits["validation"], splits["test"]],
    "reference_text": describe(ref_lengths),
    "record_text": describe(record_lengths),
    "serialized_rdf": describe(rdf_lengths),
    "refs_per_record_mean": float(refs_per.mean()),
    "triples_per_set_mean": float(triples_per.mean()),
    "triples_per_set_std": float(triples_per.std(ddof=0)),
    "triple_count": int(triples_per.sum()),
    "relations": [[k, v] for k, v in relations],
}
(data / "webnlg_fixture_golden.json").write_text(json.dumps(golden, indent=1, ensure_ascii=True) + "\n")
print(json.dumps({k: v for k, v in golden.items() if k != "relations"}, indent=1))
print(relations[:6], len(relations))
