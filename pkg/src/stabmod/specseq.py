"""Spectral sequence of a filtered exterior DGA over F_p.

Conventions: decreasing filtration F^f ⊇ F^{f+1} induced by integer weights on
the generators (weights may be negative); d never lowers the filtration; the
page-r differential goes (f, s) -> (f+r, s+1).

Everything is computed from the numbers
    z_r(f, s) = dim { x in F^f C^s : dx in F^{f+r} C^{s+1} },
which are read off one incremental column echelon per (block, s): columns are
the differentials of source monomials added in decreasing source filtration,
rows are target monomials ordered by increasing filtration, and a snapshot of
pivot-row filtrations is taken at every filtration stage.  Because a stored
echelon column has its lowest nonzero row at its pivot, the rank of the
composite F^f C^s -> C^{s+1}/F^g is exactly the number of pivots in rows of
filtration < g.
"""

from __future__ import annotations

from bisect import bisect_left, insort

from .dga import DgaPresentation, Element, differential, multiply
from .fplin import Echelon, kernel_basis, solve_in_span


class FilteredComplex:
    def __init__(self, pres: DgaPresentation, weights: dict[str, int]):
        self.pres = pres
        self.weights = [weights.get(g.name, 0) for g in pres.generators]
        for i, g in enumerate(pres.generators):
            wf = self.weights[i]
            for mask in pres.d_gen[i]:
                if self.filtration(mask) < wf:
                    raise ValueError(
                        f"d({g.name}) lowers the filtration degree")

    def filtration(self, mask: int) -> int:
        f = 0
        m = mask
        while m:
            f += self.weights[(m & -m).bit_length() - 1]
            m &= m - 1
        return f


def ce_filtration(total: DgaPresentation,
                  quotient_generators: list[str]) -> FilteredComplex:
    """Cartan-Eilenberg filtration of a DGA extension: a monomial's degree is
    minus its count of quotient-generator factors, so d_1 is induced by the
    part of d carrying one quotient variable into the subalgebra."""
    for name in quotient_generators:
        if name not in total.index:
            raise ValueError(f"unknown generator {name!r}")
    return FilteredComplex(total, {name: -1 for name in quotient_generators})


class SSPage:
    def __init__(self, r: int, dims: dict[tuple, int], d_ranks: dict[tuple, int],
                 stable: bool):
        self.r = r
        # dims/d_ranks keyed by (f, s, rav, internal); rav is None when the
        # Ravenel label is not preserved by d
        self.dims = dims
        self.d_ranks = d_ranks
        self.stable = stable

    def total(self) -> int:
        return sum(self.dims.values())

    def totals_by_degree(self) -> dict[tuple, int]:
        """(rav, internal) -> total dimension."""
        out: dict[tuple, int] = {}
        for (f, s, rav, internal), v in self.dims.items():
            k = (rav, internal)
            out[k] = out.get(k, 0) + v
        return out

    def to_json_dict(self) -> dict:
        blocks = []
        for (f, s, rav, internal) in sorted(self.dims,
                                            key=lambda k: (k[0], k[1], k[2] if k[2] is not None else -1, k[3])):
            v = self.dims[(f, s, rav, internal)]
            if v:
                blocks.append({"filtration": f, "coh": s, "rav": rav,
                               "internal": internal, "dim": v})
        return {"page": self.r, "blocks": blocks, "stable": self.stable}


class _BlockData:
    """Echelon snapshots for one (rav?, internal) block of the complex."""

    def __init__(self, fc: FilteredComplex, monos: dict[int, list[tuple[int, int]]]):
        # monos: s -> list of (filt, mask)
        p = fc.pres.prime
        self.monos = monos
        self.counts: dict[int, dict[int, int]] = {}   # s -> {f: #monomials}
        for s, lst in monos.items():
            c: dict[int, int] = {}
            for f, _ in lst:
                c[f] = c.get(f, 0) + 1
            self.counts[s] = c
        # snapshots[s]: {f: (ncols, sorted tuple of pivot row filts)}
        self.snapshots: dict[int, dict[int, tuple[int, list[int]]]] = {}
        for s, lst in monos.items():
            targets = sorted((fc.filtration(m), m)
                             for m in {nm for _, mk in lst
                                       for nm in fc.pres.d_mask(mk)})
            row_of = {m: i for i, (tf, m) in enumerate(targets)}
            row_filt = [tf for tf, _ in targets]
            ech = Echelon(p)
            pivot_filts: list[int] = []
            snaps: dict[int, tuple[int, list[int]]] = {}
            ncols = 0
            by_filt_desc = sorted(lst, reverse=True)
            i = 0
            stage_filts = sorted({f for f, _ in lst}, reverse=True)
            for f in stage_filts:
                while i < len(by_filt_desc) and by_filt_desc[i][0] >= f:
                    _, mk = by_filt_desc[i]
                    col = {row_of[nm]: c for nm, c in fc.pres.d_mask(mk).items()}
                    r = ech.add(col)
                    if r is not None:
                        insort(pivot_filts, row_filt[r])
                    ncols += 1
                    i += 1
                snaps[f] = (ncols, list(pivot_filts))
            self.snapshots[s] = snaps
        self.stages = {s: sorted({f for f, _ in lst}) for s, lst in monos.items()}

    def z(self, r: int, f: int, s: int) -> int:
        """dim { x in F^f C^s : dx in F^{f+r} }."""
        snaps = self.snapshots.get(s)
        if not snaps:
            return 0
        stages = self.stages[s]
        # snapshot at the smallest stage filtration >= f
        k = bisect_left(stages, f)
        if k == len(stages):
            return 0
        ncols, pivot_filts = snaps[stages[k]]
        return ncols - bisect_left(pivot_filts, f + r)


def _block_key_flags(pres: DgaPresentation):
    """Which of (rav, arith) the differential preserves."""
    rav_ok = arith_ok = True
    for i, g in enumerate(pres.generators):
        for mask in pres.d_gen[i]:
            deg = pres.degree_of_mask(mask)
            if deg.rav != g.rav:
                rav_ok = False
            if deg.arith != g.arith:
                arith_ok = False
    return rav_ok, arith_ok


def pages(fc: FilteredComplex, r_max: int = 64) -> list[SSPage]:
    """Pages E_1, E_2, ... up to stability (or r_max)."""
    pres = fc.pres
    rav_ok, arith_ok = _block_key_flags(pres)
    blocks: dict[tuple, dict[int, list[tuple[int, int]]]] = {}
    fmin, fmax = 0, 0
    for mask in range(1 << len(pres.generators)):
        deg = pres.degree_of_mask(mask)
        key = (deg.rav if rav_ok else None, deg.internal,
               deg.arith if arith_ok else None)
        f = fc.filtration(mask)
        fmin, fmax = min(fmin, f), max(fmax, f)
        blocks.setdefault(key, {}).setdefault(deg.coh, []).append((f, mask))
    data = {key: _BlockData(fc, monos) for key, monos in blocks.items()}
    spread = fmax - fmin

    out: list[SSPage] = []
    r = 1
    while True:
        dims: dict[tuple, int] = {}
        d_ranks: dict[tuple, int] = {}
        for key, bd in data.items():
            rav, internal = key[0], key[1]
            smax = max(bd.monos)
            for s in range(smax + 1):
                for f in range(fmin, fmax + 1):
                    e = (bd.z(r, f, s) - bd.z(r - 1, f + 1, s)) \
                        - (bd.z(r - 1, f - r + 1, s - 1) - bd.z(r, f - r + 1, s - 1))
                    if e:
                        dims[(f, s, rav, internal)] = \
                            dims.get((f, s, rav, internal), 0) + e
                    dr = (bd.z(r, f, s) - bd.z(r + 1, f, s)) \
                        - (bd.z(r - 1, f + 1, s) - bd.z(r, f + 1, s))
                    if dr:
                        d_ranks[(f, s, rav, internal)] = \
                            d_ranks.get((f, s, rav, internal), 0) + dr
        stable = r > spread
        out.append(SSPage(r, dims, d_ranks, stable))
        if stable or r >= r_max:
            break
        r += 1
    return out


def e_infinity(fc: FilteredComplex) -> SSPage:
    return pages(fc)[-1]


def e1_differential_table(fc: FilteredComplex):
    """The induced d_1 with explicit representatives.

    Returns a list of dicts {filtration, coh, rav, internal, source, target}
    where source is an E_1 cocycle representative (an Element of the total
    complex, homogeneous of the given filtration) and target is the filtration
    f+1 component of its differential, reduced modulo d_0-coboundaries at
    (f+1, s+1); entries with zero target are omitted.  Intended for small
    complexes: it rebuilds E_1 with representatives directly.
    """
    pres = fc.pres
    p = pres.prime
    rav_ok, arith_ok = _block_key_flags(pres)
    blocks: dict[tuple, dict[tuple[int, int], list[int]]] = {}
    for mask in range(1 << len(pres.generators)):
        deg = pres.degree_of_mask(mask)
        key = (deg.rav if rav_ok else None, deg.internal,
               deg.arith if arith_ok else None)
        blocks.setdefault(key, {}).setdefault(
            (fc.filtration(mask), deg.coh), []).append(mask)

    def d0_parts(mask, f):
        full = pres.d_mask(mask)
        same = {m: c for m, c in full.items() if fc.filtration(m) == f}
        up = {m: c for m, c in full.items() if fc.filtration(m) == f + 1}
        return same, up

    def e1_reps(key, f, s):
        masks = sorted(blocks.get(key, {}).get((f, s), []))
        cols = [d0_parts(m, f)[0] for m in masks]
        kv = kernel_basis(cols, p)
        cobs = []
        for m in blocks.get(key, {}).get((f, s - 1), []):
            same, _ = d0_parts(m, f)
            if same:
                cobs.append(same)
        ech = Echelon(p)
        for c in cobs:
            ech.add(c)
        reps = []
        for coords in kv:
            vec: dict[int, int] = {}
            for ci, c in coords.items():
                vec[masks[ci]] = c
            rr = ech.add(vec)
            if rr is not None:
                reps.append(ech.pivots[rr])
        return reps, cobs

    table = []
    for key in sorted(blocks, key=lambda k: (k[1], k[2] if k[2] is not None else 0,
                                             k[0] if k[0] is not None else 0)):
        fs_list = sorted(blocks[key])
        for f, s in fs_list:
            reps, _ = e1_reps(key, f, s)
            if not reps:
                continue
            tgt_reps, tgt_cobs = e1_reps(key, f + 1, s + 1)
            for rep in reps:
                img = differential(Element(pres, dict(rep)))
                up = {m: c for m, c in img.terms.items()
                      if fc.filtration(m) == f + 1}
                if not up:
                    continue
                # reduce modulo d_0-coboundaries at the target spot
                ech = Echelon(p)
                for c in tgt_cobs:
                    ech.add(c)
                res = ech.reduce(up)
                if not res:
                    continue
                table.append({
                    "filtration": f, "coh": s, "rav": key[0], "internal": key[1],
                    "source": Element(pres, dict(rep)),
                    "target": Element(pres, res),
                })
    return table


def iadic_complex(n: int, m: int, p: int) -> FilteredComplex:
    """The height-doubling filtered complex: K(n,m) (n even) rewritten exactly
    in the basis a_{i,j} = h_{i,j} + h_{i,j+n/2}, b_{i,j} = h_{i,j} - h_{i,j+n/2}
    and filtered by b-count (powers of the ideal generated by the b's).

    The internal modulus drops to 2(p^{n/2}-1): the b's are homogeneous only
    modulo the smaller period.  E_1 has the dimensions of the cohomology of
    the fully associated graded algebra, and E_infinity those of H(K(n,m)).
    """
    from .catalog import build_K, ideal_I
    from .dga import change_of_basis
    if n % 2:
        raise ValueError("n must be even")
    K = build_K(n, m, p)
    h = n // 2
    basis = []
    weights = {}
    for i in range(1, m + 1):
        for j in range(h):
            a = K.gen(f"h{i}_{j}") + K.gen(f"h{i}_{j + h}")
            basis.append((f"a{i}_{j}", a, 0))
            weights[f"a{i}_{j}"] = 0
    for i in range(1, m + 1):
        for j in range(h):
            b = K.gen(f"h{i}_{j}") - K.gen(f"h{i}_{j + h}")
            basis.append((f"b{i}_{j}", b, 1))
            weights[f"b{i}_{j}"] = 1
    rewritten = change_of_basis(K, basis, internal_modulus=2 * (p ** h - 1))
    return FilteredComplex(rewritten, weights)
