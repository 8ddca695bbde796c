#!/usr/bin/env python3
"""Regenerates the checked-in test fixtures under tests/fixtures.

The OFSFEAT1 files are written here with struct.pack so the C++ reader is
checked against an encoder it does not share code with.
"""
import math
import random
import struct
from pathlib import Path

OUT = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def ofsfeat(name, dim, records):
    blob = bytearray(b"OFSFEAT1")
    encoded = name.encode("utf-8")
    blob += struct.pack("<I", len(encoded)) + encoded
    blob += struct.pack("<IQ", dim, len(records))
    for example_id, vector in records:
        assert len(vector) == dim
        blob += struct.pack("<Q", example_id)
        blob += struct.pack(f"<{dim}f", *vector)
    return bytes(blob)


def aggregation_set():
    # Three classes, 200 each. Family A shifts class 1 away from {0, 2};
    # family B shifts class 2 away from {0, 1}. Neither alone separates all three.
    rng = random.Random(20200101)
    labels = [c for c in range(3) for _ in range(200)]
    rng.shuffle(labels)
    shift = 0.6
    fam_a, fam_b, rows = [], [], []
    for i, label in enumerate(labels):
        example_id = 5000 + 7 * i
        a = [rng.gauss(shift if label == 1 else -shift, 1.0) for _ in range(16)]
        b = [rng.gauss(shift if label == 2 else -shift, 1.0) for _ in range(16)]
        fam_a.append((example_id, a))
        fam_b.append((example_id, b))
        rows.append((example_id, ["IND", "GRP", "OTH"][label]))
    (OUT / "agg_family_a.ofsfeat").write_bytes(ofsfeat("family-a", 16, fam_a))
    (OUT / "agg_family_b.ofsfeat").write_bytes(ofsfeat("family-b", 16, fam_b))
    with open(OUT / "agg_labels.tsv", "w") as f:
        f.write("id\tlabel\n")
        for example_id, name in rows:
            f.write(f"{example_id}\t{name}\n")


def format_fixtures():
    # Two 768-dim records, value k/1024 - 0.375 (exact in float32).
    records = [(11, [k / 1024 - 0.375 for k in range(768)]), (12, [-(k / 512) for k in range(768)])]
    good = ofsfeat("xlnet-base", 768, records)
    (OUT / "xlnet_two_records.ofsfeat").write_bytes(good)

    small = ofsfeat("tiny", 4, [(1, [0.5, 1.0, 1.5, 2.0]), (2, [-1.0, 0.0, 1.0, 2.0]), (3, [3.0, 2.0, 1.0, 0.0])])
    (OUT / "bad_magic.ofsfeat").write_bytes(b"XXXXXXXX" + small[8:])
    header = 8 + 4 + len("tiny") + 4 + 8
    record = 8 + 4 * 4
    # Cut in the middle of record 2 (1-based), inside its vector.
    (OUT / "truncated.ofsfeat").write_bytes(small[: header + record + 8 + 6])
    nan = ofsfeat("tiny", 4, [(1, [0.5, 1.0, 1.5, 2.0]), (2, [-1.0, math.nan, 1.0, 2.0])])
    (OUT / "nonfinite.ofsfeat").write_bytes(nan)
    (OUT / "trailing.ofsfeat").write_bytes(small + b"\x00")


def metrics_fixtures():
    with open(OUT / "eval_pred.tsv", "w") as f:
        f.write("id\tlabel\n1\tOFF\n2\tNOT\n3\tOFF\n")
    with open(OUT / "eval_gold.tsv", "w") as f:
        f.write("id\tlabel\n1\tOFF\n2\tOFF\n3\tNOT\n")


def tweet_fixtures():
    # OLID layout with a mix of normalization cases.
    rows = [
        (101, "<b>WOW</b> @USER @USER @USER @USER you isn't #dinnertime :)", "OFF", "TIN", "IND"),
        (102, "café &amp; croissants for everyone", "NOT", "NULL", "NULL"),
        (103, "#MAGA2020 they can't be serious", "OFF", "TIN", "GRP"),
        (104, "I'm fine :( thanks", "NOT", "NULL", "NULL"),
    ]
    with open(OUT / "olid_sample.tsv", "w", encoding="utf-8") as f:
        f.write("id\ttweet\tsubtask_a\tsubtask_b\tsubtask_c\n")
        for row in rows:
            f.write("\t".join(str(x) for x in row) + "\n")
    conf = [(201, "you are awful", 0.81), (202, "lovely day", 0.05), (203, "borderline case", 0.4),
            (204, "just under", 0.3999)]
    with open(OUT / "solid_sample.tsv", "w", encoding="utf-8") as f:
        f.write("id\ttext\taverage\tstd\n")
        for example_id, text, avg in conf:
            f.write(f"{example_id}\t{text}\t{avg}\t0.1\n")


if __name__ == "__main__":
    OUT.mkdir(parents=True, exist_ok=True)
    aggregation_set()
    format_fixtures()
    metrics_fixtures()
    tweet_fixtures()
