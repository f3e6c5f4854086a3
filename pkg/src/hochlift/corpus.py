"""Bundled JSON examples.

The files under ``hochlift/corpus/`` are generated by :func:`build_corpus`;
``python -m hochlift.corpus DIR`` rewrites them.
"""
from __future__ import annotations

import sys
from pathlib import Path

from .algebra import matrix_algebra
from .azumaya import nonconstant_degree_example
from .coeff import PrimeField
from .formats import algebra_to_json, dump_json, endo_to_json, flat_lift_to_json, load_json
from .samples import conjugation, f2_dual, logsymp_lift, mat2_f3_lift, y_to_ysq
from .weyl import bracket_constants, p2_example, triangular_example

CORPUS_DIR = Path(__file__).with_name("corpus")


def build_corpus() -> dict:
    """File name -> JSON object."""
    out = {}
    L = mat2_f3_lift()
    out["mat2_f3.json"] = flat_lift_to_json(L)
    out["mat2_f3_algebra.json"] = algebra_to_json(L.base)
    out["conj.json"] = endo_to_json(L.base, conjugation(L.base, [1, 1, 0, 1]))

    L = logsymp_lift()
    out["logsymp_5_2_3.json"] = flat_lift_to_json(L)
    out["y_to_ysq.json"] = endo_to_json(L.base, y_to_ysq(L.base))

    A = matrix_algebra(PrimeField(2), 3)
    out["mat3_f2.json"] = algebra_to_json(A)
    out["mat3_f2_conj.json"] = endo_to_json(A, conjugation(A, [1, 1, 0, 0, 1, 1, 0, 0, 1]))
    A = f2_dual()
    out["f2_dual.json"] = algebra_to_json(A)

    A, f, _ = nonconstant_degree_example()
    out["f4_mat2_f4.json"] = algebra_to_json(A)
    out["f4_mat2_f4_endo.json"] = endo_to_json(A, f)

    out["p2_example.json"] = p2_example().to_json()
    for p in (2, 3, 5):
        out[f"triangular_p{p}.json"] = triangular_example(p).to_json()
    out["bracket_constants.json"] = {
        str(p): [list(row) for row in bracket_constants(p, 1)] for p in (2, 3, 5, 7)
    }
    return out


def corpus_path(name: str) -> Path:
    return CORPUS_DIR / name


def load(name: str) -> dict:
    return load_json(corpus_path(name))


def write_corpus(directory) -> list:
    directory = Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    names = []
    for name, obj in build_corpus().items():
        (directory / name).write_text(dump_json(obj) + "\n")
        names.append(name)
    return names


if __name__ == "__main__":
    target = sys.argv[1] if len(sys.argv) > 1 else CORPUS_DIR
    for name in write_corpus(target):
        print(name)
