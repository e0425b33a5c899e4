"""JSON encoding of network solutions and covering codes.

Matrices are stored row-major as flat lists of the integer representations of
their entries.  Nested lists are accepted on input as well.
"""
from __future__ import annotations

import json
from typing import Any

from .constructor import CoveringCode, CoveringCodeParams
from .errors import ParamViolation
from .gf import MatrixGF, Subspace, field_new
from .network import NetworkParams, NetworkSolution


def _flat(M: MatrixGF) -> list[int]:
    return [int(v) for v in M.data.reshape(-1)]


def _unflat(F, values, rows: int, cols: int, what: str) -> MatrixGF:
    if values and isinstance(values[0], list):
        values = [v for row in values for v in row]
    if len(values) != rows * cols:
        raise ParamViolation(f"{what}: expected {rows * cols} entries, got {len(values)}")
    return MatrixGF(F, [values[i * cols:(i + 1) * cols] for i in range(rows)], cols=cols)


def solution_to_dict(params: NetworkParams, sol: NetworkSolution) -> dict[str, Any]:
    return {
        "q": sol.q,
        "t": sol.t,
        "h": params.h,
        "r": sol.r,
        "alpha": params.alpha,
        "ell": params.ell,
        "eps": params.eps,
        "A": [_flat(M) for M in sol.A],
    }


def solution_from_dict(d: dict[str, Any]) -> tuple[NetworkParams, NetworkSolution]:
    try:
        q, t = int(d["q"]), int(d["t"])
        params = NetworkParams(int(d["h"]), int(d["r"]), int(d["alpha"]), int(d["ell"]), int(d["eps"]))
        mats = d["A"]
    except KeyError as exc:
        raise ParamViolation(f"solution file lacks key {exc}") from None
    if len(mats) != params.r:
        raise ParamViolation(f"r = {params.r} but {len(mats)} matrices given")
    F = field_new(q)
    rows, cols = params.ell * t, params.h * t
    A = [_unflat(F, m, rows, cols, f"A[{i}]") for i, m in enumerate(mats)]
    return params, NetworkSolution(q, t, A)


def code_to_dict(code: CoveringCode, limit: int | None = None) -> dict[str, Any]:
    p = code.params
    words = []
    for i, (U, m) in enumerate(code.entries()):
        if limit is not None and i >= limit:
            break
        words.append({"basis": _flat(U.basis), "multiplicity": int(m)})
    return {"n": p.n, "k": p.k, "delta": p.delta, "alpha": p.alpha, "q": p.q, "codewords": words}


def code_from_dict(d: dict[str, Any]) -> CoveringCode:
    try:
        p = CoveringCodeParams(int(d["n"]), int(d["k"]), int(d["delta"]), int(d["alpha"]), int(d["q"]))
        raw = d["codewords"]
    except KeyError as exc:
        raise ParamViolation(f"code file lacks key {exc}") from None
    F = field_new(p.q)
    words, mult = [], []
    for i, w in enumerate(raw):
        B = _unflat(F, w["basis"], p.k, p.n, f"codeword {i}")
        if B.rank() != p.k:
            raise ParamViolation(f"codeword {i} does not have rank {p.k}")
        words.append(Subspace(B))
        mult.append(int(w.get("multiplicity", 1)))
    return CoveringCode(p, words, mult)


def dumps(obj: dict[str, Any]) -> str:
    return json.dumps(obj, sort_keys=False, separators=(",", ":")) + "\n"


def load_solution(path: str) -> tuple[NetworkParams, NetworkSolution]:
    with open(path) as fh:
        return solution_from_dict(json.load(fh))


def load_code(path: str) -> CoveringCode:
    with open(path) as fh:
        return code_from_dict(json.load(fh))
