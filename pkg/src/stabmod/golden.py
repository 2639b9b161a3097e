"""Frozen reference tables (charts, series, conjecture values) and helpers to
expand them into the shapes the engine produces.

Internal t-exponents are stored prime-independently as coefficient vectors
[c0, c1, c2, c3] meaning c0 + c1*p + c2*p^2 + c3*p^3; Ravenel weights as
[a, b] meaning a + b*p.  Series may be stored factored; helpers expand them.
"""

from __future__ import annotations

import functools
import json
from importlib import resources


@functools.lru_cache(maxsize=None)
def load(name: str) -> dict:
    path = resources.files("stabmod.data").joinpath(name + ".json")
    return json.loads(path.read_text())


def texp(vec: list[int], p: int, modulus: int | None = None) -> int:
    v = sum(c * p ** i for i, c in enumerate(vec))
    return v % modulus if modulus else v


def rav_value(ab: list[int], p: int) -> int:
    a, b = ab
    return a + b * p


def poly_mul(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def expand_one_var(factors: list[list[int]]) -> list[int]:
    out = [1]
    for f in factors:
        out = poly_mul(out, f)
    return out


def expand_two_var(factors, p: int, modulus: int) -> dict[int, list[int]]:
    """Product of factors given as lists of [s, mult, texp_vec]; returns the
    multiset {coh degree: sorted t-exponents} with t-exponents mod modulus."""
    terms = {(0, 0): 1}
    for factor in factors:
        nxt: dict[tuple[int, int], int] = {}
        for (s0, t0), m0 in terms.items():
            for s1, m1, vec in factor:
                k = (s0 + s1, (t0 + texp(vec, p)) % modulus)
                nxt[k] = nxt.get(k, 0) + m0 * m1
        terms = nxt
    out: dict[int, list[int]] = {}
    for (s, t), m in terms.items():
        out.setdefault(s, []).extend([t] * m)
    for ts in out.values():
        ts.sort()
    return out


def two_var_from_terms(terms, p: int, modulus: int) -> dict[int, list[int]]:
    """Multiset from explicit rows [s, mult, texp_vec]."""
    out: dict[int, list[int]] = {}
    for s, m, vec in terms:
        out.setdefault(s, []).extend([texp(vec, p, modulus)] * m)
    for ts in out.values():
        ts.sort()
    return out


def chart_multiset(chart: dict, p: int, modulus: int) -> list[tuple[int, int, int]]:
    """Sorted multiset of (coh, rav, t-exp) for a chart, expanding the tensor
    factor when present."""
    rows = [(r[1], rav_value(r[3], p), texp(r[2], p, modulus))
            for r in chart["rows"]]
    tensor = chart.get("tensor_with")
    if tensor:
        base = rows
        rows = []
        for s0, r0, t0 in base:
            for _, s1, vec, ab in tensor:
                rows.append((s0 + s1, r0 + rav_value(ab, p),
                             (t0 + texp(vec, p)) % modulus))
    return sorted(rows)


def two_var_diff(expected: dict[int, list[int]],
                 got: dict[int, list[int]]) -> list[dict]:
    """Machine-readable per-degree mismatches: [{degree, expected, got}, ...]."""
    diffs = []
    for s in sorted(set(expected) | set(got)):
        e, g = expected.get(s, []), got.get(s, [])
        if e != g:
            diffs.append({"degree": s, "expected": e, "got": g})
    return diffs


def one_var_diff(expected: list[int], got: list[int]) -> list[dict]:
    diffs = []
    for s in range(max(len(expected), len(got))):
        e = expected[s] if s < len(expected) else 0
        g = got[s] if s < len(got) else 0
        if e != g:
            diffs.append({"degree": s, "expected": e, "got": g})
    return diffs
