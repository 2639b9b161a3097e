"""Blockwise cohomology of a DgaPresentation.

The differential preserves the internal and arith degrees exactly, and the
Ravenel degree whenever that label is an honest grading (detected per
presentation).  Monomials are therefore grouped into small independent
complexes indexed by cohomological degree, and each one is handled by exact
Gaussian elimination over F_p.  Vectors live directly on monomial bitmasks:
a cochain is a dict {mask: coefficient}, which doubles as Element.terms.
"""

from __future__ import annotations

import concurrent.futures
import itertools

from .dga import DgaPresentation, Element, MultiDegree, apply_action, \
    check_presentation, multiply
from .fplin import Echelon, kernel_basis, solve_in_span


def _rav_graded(pres: DgaPresentation) -> bool:
    """Whether d preserves the Ravenel degree (vs. merely filtering by it)."""
    for i, g in enumerate(pres.generators):
        for mask in pres.d_gen[i]:
            if pres.degree_of_mask(mask).rav != g.rav:
                return False
    return True


def _group_monomials(pres: DgaPresentation, rav_graded: bool):
    """Map (rav-or-None, internal, arith) -> {coh: sorted list of masks}."""
    groups: dict[tuple, dict[int, list[int]]] = {}
    for mask in range(1 << len(pres.generators)):
        deg = pres.degree_of_mask(mask)
        key = (deg.rav if rav_graded else None, deg.internal, deg.arith)
        groups.setdefault(key, {}).setdefault(deg.coh, []).append(mask)
    for by_coh in groups.values():
        for masks in by_coh.values():
            masks.sort()
    return groups


def _group_cohomology(pres: DgaPresentation, by_coh: dict[int, list[int]]):
    """Cohomology of one block complex.

    Returns {coh: (reps, coboundary_columns)} where reps are reduced,
    deterministic term-dicts and coboundary_columns span im(d) in that
    cohomological degree.
    """
    p = pres.prime
    out = {}
    images: dict[int, list[dict[int, int]]] = {}
    for s, masks in by_coh.items():
        images[s] = [pres.d_mask(m) for m in masks]
    for s, masks in sorted(by_coh.items()):
        cols = images[s]
        kv = kernel_basis(cols, p)
        cobs = [c for c in images.get(s - 1, []) if c]
        ech = Echelon(p)
        for c in cobs:
            ech.add(c)
        reps = []
        for coords in kv:
            vec: dict[int, int] = {}
            for ci, c in coords.items():
                m = masks[ci]
                v = (vec.get(m, 0) + c) % p
                if v:
                    vec[m] = v
                else:
                    vec.pop(m, None)
            r = ech.add(vec)
            if r is not None:
                reps.append(ech.pivots[r])
        if reps or cobs:
            out[s] = (reps, cobs)
    return out


class CohomologyResult:
    def __init__(self, pres: DgaPresentation, dims: dict[MultiDegree, int],
                 reps: dict[MultiDegree, list[Element]],
                 coboundaries: dict[tuple, dict[int, list[dict[int, int]]]],
                 rav_graded: bool):
        self.pres = pres
        self.dims = dims
        self.reps = reps
        self._coboundaries = coboundaries
        self.rav_graded = rav_graded
        self.total_rank = sum(dims.values())
        self.duality_top = max((d.coh for d, v in dims.items() if v), default=0)
        # stable global basis: (degree, index within block)
        self.basis: list[tuple[MultiDegree, int]] = []
        for deg in sorted(dims, key=MultiDegree.key):
            for i in range(dims[deg]):
                self.basis.append((deg, i))
        self.basis_index = {db: i for i, db in enumerate(self.basis)}

    def rep(self, k: int) -> Element:
        deg, i = self.basis[k]
        return self.reps[deg][i]

    def block_key(self, deg: MultiDegree) -> tuple:
        return (deg.rav if self.rav_graded else None, deg.internal, deg.arith)

    def express(self, x: Element) -> dict[int, int] | None:
        """Coordinates of the cohomology class of cocycle x in the global
        basis, or None if x is not a cocycle class of this result."""
        if not x.terms:
            return {}
        degs = {self.pres.degree_of_mask(m) for m in x.terms}
        cohs = {d.coh for d in degs}
        keys = {self.block_key(d) for d in degs}
        if len(cohs) != 1 or len(keys) != 1:
            raise ValueError("element is not homogeneous for the block grading")
        coh, key = cohs.pop(), keys.pop()
        # candidate blocks: same computational block and coh degree
        cand = [d for d in self.dims
                if self.block_key(d) == key and d.coh == coh]
        targets = []
        owners = []
        for d in cand:
            for i, r in enumerate(self.reps[d]):
                targets.append(r.terms)
                owners.append(self.basis_index[(d, i)])
        cobs = self._coboundaries.get(key, {}).get(coh, [])
        sol = solve_in_span(targets + cobs, x.terms, self.pres.prime)
        if sol is None:
            return None
        return {owners[k]: c for k, c in sol.items() if k < len(targets)}

    def to_json_dict(self) -> dict:
        blocks = []
        for deg in sorted(self.dims, key=MultiDegree.key):
            if not self.dims[deg]:
                continue
            blocks.append({
                "coh": deg.coh, "rav": deg.rav, "internal": deg.internal,
                "arith": deg.arith, "dim": self.dims[deg],
            })
        return {"total_rank": self.total_rank, "duality_top": self.duality_top,
                "blocks": blocks}


def _compute_groups(pres, items):
    out = []
    for key, by_coh in items:
        out.append((key, _group_cohomology(pres, by_coh)))
    return out


def cohomology(pres: DgaPresentation, jobs: int = 1) -> CohomologyResult:
    problems = check_presentation(pres, strict_rav=False)
    if problems:
        raise ValueError("invalid presentation: " + "; ".join(problems))
    rav_graded = _rav_graded(pres)
    groups = _group_monomials(pres, rav_graded)
    items = sorted(groups.items())

    if jobs > 1 and len(items) > 1:
        chunks = [items[i::jobs] for i in range(jobs)]
        results = []
        with concurrent.futures.ProcessPoolExecutor(max_workers=jobs) as ex:
            for part in ex.map(_compute_groups, itertools.repeat(pres), chunks):
                results.extend(part)
        results.sort(key=lambda kv: kv[0])
    else:
        results = _compute_groups(pres, items)

    dims: dict[MultiDegree, int] = {}
    reps: dict[MultiDegree, list[Element]] = {}
    coboundaries: dict[tuple, dict[int, list[dict[int, int]]]] = {}
    for key, per_coh in results:
        coboundaries[key] = {s: cobs for s, (rs, cobs) in per_coh.items()}
        for s, (rs, cobs) in per_coh.items():
            for terms in rs:
                el = Element(pres, dict(terms))
                if rav_graded:
                    deg = MultiDegree(s, key[0], key[1], key[2])
                else:
                    # rav is a filtration label; tag the class by the lowest
                    # Ravenel weight among its representative's monomials
                    rv = min(pres.degree_of_mask(m).rav for m in terms)
                    deg = MultiDegree(s, rv, key[1], key[2])
                dims[deg] = dims.get(deg, 0) + 1
                reps.setdefault(deg, []).append(el)
    return CohomologyResult(pres, dims, reps, coboundaries, rav_graded)


# ---- Poincaré series ---------------------------------------------------------


class PoincareSeries:
    def __init__(self, one_var: list[int], two_var: dict[int, list[int]], modulus: int):
        self.one_var = one_var
        self.two_var = two_var        # coh degree -> sorted list of t-exponents
        self.modulus = modulus        # t-exponents are reduced mod this

    def __eq__(self, other):
        return isinstance(other, PoincareSeries) and self.one_var == other.one_var \
            and self.two_var == other.two_var and self.modulus == other.modulus

    def to_json_dict(self):
        return {"one_var": self.one_var, "modulus": self.modulus,
                "two_var": {str(s): ts for s, ts in sorted(self.two_var.items())}}


def poincare(r: CohomologyResult, p: int, n: int) -> PoincareSeries:
    T = (p ** n - 1) // (p - 1)
    unit = 2 * (p - 1)
    two_var: dict[int, list[int]] = {}
    for deg, k in r.dims.items():
        if not k:
            continue
        if deg.internal % unit:
            raise ValueError(f"internal degree {deg.internal} is not divisible by 2(p-1)")
        t = (deg.internal // unit) % T
        two_var.setdefault(deg.coh, []).extend([t] * k)
    for ts in two_var.values():
        ts.sort()
    top = max(two_var, default=0)
    one_var = [len(two_var.get(s, [])) for s in range(top + 1)]
    return PoincareSeries(one_var, two_var, T)


def is_palindromic(series: list[int]) -> bool:
    return series == series[::-1]


def euler_characteristics_match(r: CohomologyResult) -> bool:
    """Per computational block, the alternating sums of cohomology and cochain
    dimensions agree."""
    groups = _group_monomials(r.pres, r.rav_graded)
    h_euler: dict[tuple, int] = {}
    for deg, k in r.dims.items():
        key = r.block_key(deg)
        h_euler[key] = h_euler.get(key, 0) + (-1) ** deg.coh * k
    for key, by_coh in groups.items():
        c = sum((-1) ** s * len(masks) for s, masks in by_coh.items())
        if c != h_euler.get(key, 0):
            return False
    return True


# ---- ring structure, action, module decomposition ----------------------------


def cup_product(r: CohomologyResult, a: int, b: int) -> dict[int, int]:
    """Product of basis classes a, b, as coordinates in the global basis."""
    prod = multiply(r.rep(a), r.rep(b))
    coords = r.express(prod)
    if coords is None:
        raise RuntimeError("product of cocycle classes failed to decompose")
    return coords


def induced_action(r: CohomologyResult) -> dict[int, dict[int, int]]:
    """The map sigma* on cohomology, basis index -> coordinate dict."""
    out = {}
    for k in range(r.total_rank):
        img = apply_action(r.rep(k))
        coords = r.express(img)
        if coords is None:
            raise RuntimeError("sigma image of a cocycle failed to decompose")
        out[k] = coords
    return out


def _operator_matrix(r: CohomologyResult, a: int) -> list[dict[int, int]]:
    """Columns of multiplication-by-(class a) in the global basis."""
    cols = []
    for k in range(r.total_rank):
        cols.append(cup_product(r, a, k))
    return cols


def module_structure(r: CohomologyResult, over: list[int]) -> dict:
    """Decomposition counts of H as a module over the exterior algebra on two
    degree-1 classes A, B (with A² = B² = 0 in cohomology).

    Types: P (free of rank 4), M0 (killed by B: 2-dimensional), M1 (killed by
    A), T (trivial).  Counts are recovered from ranks of the multiplication
    operators; an inconsistency is reported in the result rather than raised.
    """
    from .fplin import rank as mat_rank
    if len(over) != 2:
        raise ValueError("expected two module generators")
    a, b = over
    A = _operator_matrix(r, a)
    B = _operator_matrix(r, b)
    p = r.pres.prime

    def compose(X, Y):
        # columns of X∘Y
        out = []
        for col in Y:
            acc: dict[int, int] = {}
            for k, c in col.items():
                for rr, v in X[k].items():
                    nv = (acc.get(rr, 0) + c * v) % p
                    if nv:
                        acc[rr] = nv
                    else:
                        acc.pop(rr, None)
            out.append(acc)
        return out

    n = r.total_rank
    rA = mat_rank(A, p)
    rB = mat_rank(B, p)
    rAB = mat_rank(compose(A, B), p)
    P = rAB
    M0 = rA - 2 * P
    M1 = rB - 2 * P
    T = n - 4 * P - 2 * M0 - 2 * M1
    # dim(ker A ∩ ker B): rank of the stacked operator [A; B]
    stacked = [{**{k: v for k, v in A[i].items()},
                **{k + n: v for k, v in B[i].items()}} for i in range(n)]
    ker_both = n - mat_rank(stacked, p)
    consistent = (min(P, M0, M1, T) >= 0) and ker_both == P + M0 + M1 + T
    return {"P": P, "M0": M0, "M1": M1, "T": T, "total": n,
            "consistent": consistent}
