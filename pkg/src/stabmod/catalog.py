"""Constructors for the catalog of named exterior DGAs.

Families:
  K(n,m)    — exterior on h_{i,j}, 1<=i<=m, 0<=j<n, cyclic index wrap
              h_{i,j+n} = h_{i,j}, internal degrees mod 2(p^n-1).
  E(n,m,l)  — n even; exterior on h_{i,j} (0<=j<n/2, wrap with sign +1) and
              w_{i,j} for i<=l (wrap with sign -1), internal degrees mod
              2(p^{n/2}-1).  l=0 is the quotient of K(n,m) by the ideal
              below; l=m is its full associated graded.
  ideal_I   — the degree-1 ideal generators h_{i,j} - h_{i,j+n/2} of K(n,m).
"""

from __future__ import annotations

import warnings
from functools import lru_cache

from .dga import DgaPresentation, Element, GeneratorSpec


@lru_cache(maxsize=None)
def ravenel_number(n: int, i: int, p: int) -> int:
    if n < 1:
        raise ValueError("n must be positive")
    if i <= 0:
        return 0
    return max(i, p * ravenel_number(n, i - n, p))


def _check_prime(p: int, n: int):
    if p <= 3:
        raise ValueError("prime must exceed 3")
    if any(p % q == 0 for q in range(2, int(p ** 0.5) + 1)):
        raise ValueError(f"p={p} is not prime")
    if p <= 2 * n + 1:
        warnings.warn(f"p={p} <= 2n+1={2*n+1}: collapse arguments need a larger prime",
                      stacklevel=3)


def build_K(n: int, m: int, p: int) -> DgaPresentation:
    """Exterior DGA on h_{i,j} with d(h_{i,j}) = sum_k h_{k,j} h_{i-k,j+k}."""
    if n < 1 or m < 1:
        raise ValueError("n, m must be positive")
    _check_prime(p, n)
    M = 2 * (p ** n - 1)
    gens = []
    for i in range(1, m + 1):
        assert i > n or ravenel_number(n, i, p) == i
        for j in range(n):
            gens.append(GeneratorSpec(
                name=f"h{i}_{j}",
                rav=ravenel_number(n, i, p),
                internal=(2 * (p ** i - 1) * p ** j) % M,
                arith=0,
                sigma_name=f"h{i}_{(j + 1) % n}",
                sigma_sign=1,
            ))
    diffs = {}
    for i in range(1, m + 1):
        for j in range(n):
            terms = []
            for k in range(1, i):
                terms.append((1, (f"h{k}_{j}", f"h{i - k}_{(j + k) % n}")))
            diffs[f"h{i}_{j}"] = terms
    return DgaPresentation(p, M, n, gens, diffs)


def ideal_I(n: int, m: int, p: int, pres: DgaPresentation | None = None) -> list[Element]:
    """Degree-1 generators h_{i,j} - h_{i,j+n/2} of K(n,m), for 0 <= j < n/2.

    (Indices n/2 <= j < n repeat these up to sign and are pruned.)
    """
    if n % 2:
        raise ValueError("n must be even")
    if pres is None:
        pres = build_K(n, m, p)
    h = n // 2
    out = []
    for i in range(1, m + 1):
        for j in range(h):
            out.append(pres.gen(f"h{i}_{j}") - pres.gen(f"h{i}_{j + h}"))
    return out


def build_E(n: int, m: int, level: int, p: int,
            ravenel_scheme: str = "d_n") -> DgaPresentation:
    """The intermediate algebras between K(n,m)/I and the full associated graded.

    Generators h_{i,j} (1<=i<=m) and w_{i,j} (1<=i<=level), 0<=j<n/2, with
    index wrap h_{i,j+n/2} = h_{i,j} and w_{i,j+n/2} = -w_{i,j}; internal
    degrees mod 2(p^{n/2}-1).  ravenel_scheme picks whether Ravenel degrees
    use the height n/2 numbers ("d_n") or the height n numbers ("d_2n");
    the choice relabels one grading and does not affect cohomology ranks.
    """
    if n % 2:
        raise ValueError("n must be even")
    if not 0 <= level <= m:
        raise ValueError("level must satisfy 0 <= level <= m")
    if ravenel_scheme not in ("d_n", "d_2n"):
        raise ValueError(f"unknown ravenel_scheme {ravenel_scheme!r}")
    _check_prime(p, n)
    h = n // 2
    rav_height = h if ravenel_scheme == "d_n" else n
    M = 2 * (p ** h - 1)

    def wrap(kind: str, i: int, j: int) -> tuple[str, int]:
        """Reduce index j mod h; w picks up a sign per wrap."""
        q, j = divmod(j, h)
        sign = -1 if (kind == "w" and q % 2) else 1
        return f"{kind}{i}_{j}", sign

    gens = []
    for i in range(1, m + 1):
        for j in range(h):
            sname, ssign = wrap("h", i, j + 1)
            gens.append(GeneratorSpec(
                name=f"h{i}_{j}",
                rav=ravenel_number(rav_height, i, p),
                internal=(2 * (p ** i - 1) * p ** j) % M,
                arith=0, sigma_name=sname, sigma_sign=ssign,
            ))
    for i in range(1, level + 1):
        for j in range(h):
            sname, ssign = wrap("w", i, j + 1)
            gens.append(GeneratorSpec(
                name=f"w{i}_{j}",
                rav=ravenel_number(rav_height, i, p),
                internal=(2 * (p ** i - 1) * p ** j) % M,
                arith=1, sigma_name=sname, sigma_sign=ssign,
            ))

    diffs = {}
    for i in range(1, m + 1):
        for j in range(h):
            terms = []
            for k in range(1, i):
                n1, s1 = wrap("h", k, j)
                n2, s2 = wrap("h", i - k, j + k)
                terms.append((s1 * s2, (n1, n2)))
            diffs[f"h{i}_{j}"] = terms
    for i in range(1, level + 1):
        for j in range(h):
            terms = []
            for k in range(1, i):
                # d(w_{i,j}) = sum_k (w_{k,j} h_{i-k,j+k} + h_{k,j} w_{i-k,j+k}),
                # with the wrap sign on any w factor whose index exceeds h
                if k <= level:
                    n1, s1 = wrap("w", k, j)
                    n2, s2 = wrap("h", i - k, j + k)
                    terms.append((s1 * s2, (n1, n2)))
                if i - k <= level:
                    n1, s1 = wrap("h", k, j)
                    n2, s2 = wrap("w", i - k, j + k)
                    terms.append((s1 * s2, (n1, n2)))
            diffs[f"w{i}_{j}"] = terms
    return DgaPresentation(p, M, n, gens, diffs)


def build_E0K(n: int, m: int, p: int, ravenel_scheme: str = "d_n") -> DgaPresentation:
    return build_E(n, m, m, p, ravenel_scheme)


def strategy_parameters(n: int, p: int) -> tuple[int, int]:
    if p <= n + 1:
        raise ValueError("need p > n+1")
    return (n * p // (p - 1), 2 * n * p // (p - 1))
