"""Regenerate src/amalgam/corpus from the catalogue; tags are written by hand and checked on load."""

import json
from pathlib import Path

from amalgam.catalog import (
    diagonal,
    dual_numbers,
    matrix_algebra,
    null_algebra,
    quadratic_field,
    rationals,
    upper_triangular,
    zero_algebra,
)
from amalgam.io import save_algebra

OUT = Path(__file__).resolve().parent.parent / "src" / "amalgam" / "corpus"

BASE = {
    "zero": (zero_algebra(), ["commutative", "unital", "square-dense", "semisimple", "split"]),
    "Q": (rationals(), ["commutative", "unital", "square-dense", "semisimple", "split"]),
    "N1": (null_algebra(1), ["commutative", "split"]),
    "dual": (dual_numbers(), ["commutative", "unital", "square-dense", "split"]),
    "QxQ": (diagonal(2), ["commutative", "unital", "square-dense", "semisimple", "split"]),
    "Qsqrt2": (quadratic_field(2), ["commutative", "unital", "square-dense", "semisimple"]),
    "T2": (upper_triangular(), ["unital", "square-dense", "split"]),
    "M2": (matrix_algebra(2), ["unital", "square-dense", "semisimple", "split"]),
}

DESCRIPTORS = {
    "Q_id_Q": ({"kind": "id", "A": "Q.json"}, ["commutative", "unital", "square-dense", "semisimple", "split"]),
    "lau_QxQ_T2": (
        {"kind": "lau", "A": "QxQ.json", "B": "T2.json", "phi": ["1", "0"]},
        ["unital", "square-dense", "split"],
    ),
    "lau_Q_M2": ({"kind": "lau", "A": "Q.json", "B": "M2.json", "phi": ["1"]}, ["unital", "square-dense", "semisimple", "split"]),
    "semidirect_T2": (
        {"kind": "semidirect", "B": "T2.json", "subalgebra": [[1, 0, 0], [0, 1, 0]], "ideal": [[0, 0, 1]]},
        ["unital", "square-dense", "split"],
    ),
    "modext_QxQ": (
        {"kind": "module-ext", "A": "QxQ.json", "bimodule": "QxQ_bimodule.json"},
        ["unital", "square-dense", "split"],
    ),
    "unitize_N1": ({"kind": "unitize", "A": "N1.json"}, ["commutative", "unital", "square-dense", "split"]),
    "Q_in_dual": (
        {"kind": "amalgam", "A": "Q.json", "B": "dual.json", "theta": [["1"], ["0"]], "ideal": [["0", "1"]]},
        ["commutative", "unital", "square-dense", "split"],
    ),
    "Q_in_QxQ": (
        {"kind": "amalgam", "A": "Q.json", "B": "QxQ.json", "theta": [["1"], ["0"]], "ideal": [["1", "0"], ["0", "1"]]},
        ["commutative", "unital", "square-dense", "semisimple", "split"],
    ),
    "cartesian_Q_N1": ({"kind": "cartesian", "A": "Q.json", "B": "N1.json"}, ["commutative", "split"]),
}

# X = Q with e0 acting on the left and e1 on the right; Q x Q (+) X is T2.
BIMODULE = {"dim": 1, "labels": ["x"], "left": [[["1"]], [["0"]]], "right": [[["0"], ["1"]]]}


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    entries = []
    for name, (alg, tags) in BASE.items():
        save_algebra(alg, OUT / f"{name}.json")
        entries.append({"name": name, "file": f"{name}.json", "tags": tags})
    (OUT / "QxQ_bimodule.json").write_text(json.dumps(BIMODULE, indent=1) + "\n", encoding="utf-8")
    for name, (desc, tags) in DESCRIPTORS.items():
        (OUT / f"{name}.json").write_text(json.dumps(desc, indent=1) + "\n", encoding="utf-8")
        entries.append({"name": name, "file": f"{name}.json", "tags": tags})
    (OUT / "manifest.json").write_text(json.dumps({"entries": entries}, indent=1) + "\n", encoding="utf-8")


if __name__ == "__main__":
    main()
