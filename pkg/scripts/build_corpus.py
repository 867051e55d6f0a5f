"""Regenerate the bundled scenarios and the 20-scene evaluation corpus.

Every scene is certified (clear start, voter consensus, grid-proven
docking pose) before it is written; a failure aborts the build.
"""
import argparse
from pathlib import Path

from moto import corpus
from moto.scene.scenario import dump_yaml

ROOT = Path(__file__).resolve().parents[1] / "src" / "moto" / "scenarios"


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--out", type=Path, default=ROOT)
    args = ap.parse_args()
    (args.out / "corpus").mkdir(parents=True, exist_ok=True)
    jobs = [(args.out / f"{name}.yaml", doc) for name, doc in corpus.bundled_documents().items()]
    jobs += [(args.out / "corpus" / f"{doc['id']}.yaml", doc) for doc in corpus.corpus_documents()]
    for path, doc in jobs:
        rep = corpus.certify(doc)
        if not rep["ok"] and doc["id"] != "minimal":
            raise SystemExit(f"{doc['id']}: certification failed: {rep}")
        doc["truth"]["certificate"] = rep
        path.write_text(dump_yaml(doc), encoding="utf-8")
        print(f"{path.relative_to(args.out)}  points={doc['header']['n_points']}  ok={rep['ok']}")


if __name__ == "__main__":
    main()
