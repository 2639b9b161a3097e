"""Finite multigraded exterior DGAs with a cyclic group action.

A presentation is an exterior algebra on at most 64 degree-1 generators over
F_p, with a square-zero derivation d determined by quadratic images of the
generators, and a multiplicative action sigma permuting the generators up to
sign.  Monomials are bitmasks over the generator list; all signs come from
counting transpositions needed to sort concatenated index sequences.

Gradings carried per generator: cohomological degree (always 1), Ravenel
degree, internal degree (a residue mod the presentation's internal_modulus),
and an arithmetic/filtration degree.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .fplin import Echelon, inv_mod, kernel_basis, solve_in_span


@dataclass(frozen=True, order=True)
class MultiDegree:
    coh: int
    rav: int
    internal: int
    arith: int = 0

    def key(self):
        return (self.coh, self.rav, self.internal, self.arith)


@dataclass(frozen=True)
class GeneratorSpec:
    name: str
    rav: int
    internal: int
    arith: int = 0
    # image under sigma: (generator name, sign)
    sigma_name: str = ""
    sigma_sign: int = 1

    @property
    def coh(self):
        return 1


def _merge_sign(a: int, b: int) -> int:
    """Koszul sign (+1/-1) for sorting the concatenation of disjoint masks a, b.

    Counts pairs (i in a, j in b) with i > j; each such pair is one
    transposition of odd generators.
    """
    sign = 1
    while b:
        j = b & -b
        if (a >> (j.bit_length())) .bit_count() & 1:
            sign = -sign
        b ^= j
    return sign


class DgaPresentation:
    def __init__(self, prime: int, internal_modulus: int, action_order: int,
                 generators: list[GeneratorSpec],
                 differentials: dict[str, list[tuple[int, tuple[str, str]]]]):
        """differentials maps a generator name to a list of quadratic terms
        (coefficient, (name1, name2)); names may come in either order."""
        if len(generators) > 64:
            raise ValueError("at most 64 generators are supported")
        self.prime = prime
        self.internal_modulus = internal_modulus
        self.action_order = action_order
        self.generators = tuple(generators)
        self.index = {g.name: i for i, g in enumerate(generators)}
        if len(self.index) != len(generators):
            raise ValueError("duplicate generator names")
        p = prime
        # differential images as {mask: coeff}
        self.d_gen: list[dict[int, int]] = []
        for g in generators:
            img: dict[int, int] = {}
            for coeff, (n1, n2) in differentials.get(g.name, []):
                i1, i2 = self.index[n1], self.index[n2]
                if i1 == i2:
                    continue
                sgn = 1
                if i1 > i2:
                    i1, i2, sgn = i2, i1, -1
                mask = (1 << i1) | (1 << i2)
                v = (img.get(mask, 0) + sgn * coeff) % p
                if v:
                    img[mask] = v
                else:
                    img.pop(mask, None)
            self.d_gen.append(img)
        self.sigma_gen = []
        for g in generators:
            if g.sigma_name not in self.index:
                raise ValueError(f"sigma image {g.sigma_name!r} is not a generator")
            self.sigma_gen.append((self.index[g.sigma_name], g.sigma_sign % p))
        self._d_cache: dict[int, dict[int, int]] = {}

    # ---- degree bookkeeping -------------------------------------------------

    def degree_of_mask(self, mask: int) -> MultiDegree:
        coh = rav = internal = arith = 0
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            g = self.generators[i]
            coh += 1
            rav += g.rav
            internal += g.internal
            arith += g.arith
            m &= m - 1
        return MultiDegree(coh, rav, internal % self.internal_modulus, arith)

    def zero(self) -> "Element":
        return Element(self, {})

    def unit(self) -> "Element":
        return Element(self, {0: 1})

    def gen(self, name: str) -> "Element":
        return Element(self, {1 << self.index[name]: 1})

    def element(self, terms: dict[int, int]) -> "Element":
        p = self.prime
        return Element(self, {m: c % p for m, c in terms.items() if c % p})

    # ---- core operations ----------------------------------------------------

    def d_mask(self, mask: int) -> dict[int, int]:
        """Differential of a basis monomial, via the derivation rule."""
        cached = self._d_cache.get(mask)
        if cached is not None:
            return cached
        p = self.prime
        out: dict[int, int] = {}
        sign = 1
        m = mask
        while m:
            low = m & -m
            i = low.bit_length() - 1
            rest = mask ^ low
            for qmask, c in self.d_gen[i].items():
                if qmask & rest:
                    continue
                s = sign * _merge_sign(qmask, rest)
                nm = qmask | rest
                v = (out.get(nm, 0) + s * c) % p
                if v:
                    out[nm] = v
                else:
                    out.pop(nm, None)
            sign = -sign
            m ^= low
        self._d_cache[mask] = out
        return out

    def sigma_mask(self, mask: int) -> tuple[int, int]:
        """(image mask, sign) of sigma on a basis monomial."""
        p = self.prime
        images = []
        sign = 1
        m = mask
        while m:
            i = (m & -m).bit_length() - 1
            j, s = self.sigma_gen[i]
            sign = sign * s % p
            images.append(j)
            m &= m - 1
        # sort image indices, counting transpositions (all generators odd)
        arr = images[:]
        for a in range(1, len(arr)):
            b = a
            while b and arr[b - 1] > arr[b]:
                arr[b - 1], arr[b] = arr[b], arr[b - 1]
                sign = -sign % p
                b -= 1
        out = 0
        for j in arr:
            if out & (1 << j):
                return 0, 0
            out |= 1 << j
        return out, sign % p


class Element:
    """F_p-linear combination of exterior monomials over one presentation."""

    __slots__ = ("pres", "terms")

    def __init__(self, pres: DgaPresentation, terms: dict[int, int]):
        self.pres = pres
        self.terms = terms

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        return isinstance(other, Element) and self.pres is other.pres \
            and self.terms == other.terms

    def __add__(self, other: "Element") -> "Element":
        _same_pres(self, other)
        p = self.pres.prime
        out = dict(self.terms)
        for m, c in other.terms.items():
            v = (out.get(m, 0) + c) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return Element(self.pres, out)

    def __sub__(self, other: "Element") -> "Element":
        return self + other.scale(-1)

    def scale(self, c: int) -> "Element":
        p = self.pres.prime
        c %= p
        if not c:
            return Element(self.pres, {})
        return Element(self.pres, {m: (v * c) % p for m, v in self.terms.items()})

    def degree(self) -> MultiDegree:
        """MultiDegree of a homogeneous element; raises if mixed."""
        degs = {self.pres.degree_of_mask(m) for m in self.terms}
        if len(degs) != 1:
            raise ValueError(f"element is not homogeneous: {sorted(d.key() for d in degs)}")
        return degs.pop()

    def __repr__(self):
        if not self.terms:
            return "0"
        names = [g.name for g in self.pres.generators]
        bits = []
        for m in sorted(self.terms):
            c = self.terms[m]
            mono = ".".join(names[i] for i in range(64) if m >> i & 1) or "1"
            bits.append(f"{c}*{mono}")
        return " + ".join(bits)


def _same_pres(a: Element, b: Element):
    if a.pres is not b.pres:
        raise ValueError("elements over different presentations")


def multiply(a: Element, b: Element) -> Element:
    _same_pres(a, b)
    p = a.pres.prime
    out: dict[int, int] = {}
    for ma, ca in a.terms.items():
        for mb, cb in b.terms.items():
            if ma & mb:
                continue
            s = _merge_sign(ma, mb)
            m = ma | mb
            v = (out.get(m, 0) + s * ca * cb) % p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
    return Element(a.pres, out)


def differential(x: Element) -> Element:
    p = x.pres.prime
    out: dict[int, int] = {}
    for m, c in x.terms.items():
        for nm, dc in x.pres.d_mask(m).items():
            v = (out.get(nm, 0) + c * dc) % p
            if v:
                out[nm] = v
            else:
                out.pop(nm, None)
    return Element(x.pres, out)


def apply_action(x: Element) -> Element:
    p = x.pres.prime
    out: dict[int, int] = {}
    for m, c in x.terms.items():
        nm, s = x.pres.sigma_mask(m)
        if not s:
            continue
        v = (out.get(nm, 0) + c * s) % p
        if v:
            out[nm] = v
        else:
            out.pop(nm, None)
    return Element(x.pres, out)


def check_presentation(pres: DgaPresentation, strict_rav: bool = True) -> list[str]:
    """Returns a list of human-readable invariant violations (empty = valid).

    With strict_rav=False the Ravenel degree is treated as a display label
    rather than a grading: its preservation by d is not required.  (Some
    presentations carry the height-n/2 Ravenel labels used in the low-height
    charts, which the differential only respects as a filtration.)
    """
    problems = []
    M = pres.internal_modulus
    for i, g in enumerate(pres.generators):
        img = Element(pres, dict(pres.d_gen[i]))
        if img:
            degs = {pres.degree_of_mask(m) for m in img.terms}
            cohs = {d.coh for d in degs}
            ints = {d.internal % M for d in degs}
            ariths = {d.arith for d in degs}
            ravs = {d.rav for d in degs}
            if cohs != {2}:
                problems.append(f"d({g.name}) has cohomological degree {sorted(cohs)}")
            if ints != {g.internal % M} or ariths != {g.arith}:
                problems.append(f"d({g.name}) does not preserve internal/arith degrees")
            if strict_rav and ravs != {g.rav}:
                problems.append(f"d({g.name}) does not preserve the Ravenel degree")
        dd = differential(img)
        if dd:
            problems.append(f"d(d({g.name})) != 0")
        # equivariance on the generator
        x = pres.gen(g.name)
        if apply_action(differential(x)) != differential(apply_action(x)):
            problems.append(f"sigma does not commute with d on {g.name}")
        # action order
        y = x
        for _ in range(pres.action_order):
            y = apply_action(y)
        if y != x:
            problems.append(f"sigma^{pres.action_order}({g.name}) != {g.name}")
    return problems


def change_of_basis(pres: DgaPresentation, new_basis: list[tuple[str, Element, int]],
                    internal_modulus: int | None = None,
                    action_order: int | None = None,
                    arith_truncate: bool = False) -> DgaPresentation:
    """Rewrites the presentation in a new linear basis of the generator span.

    new_basis lists (name, element linear in the old generators, arith degree);
    it must be a full invertible basis.  The differential and sigma are
    transported exactly, unless arith_truncate is set, in which case only the
    components preserving the declared arith degrees are kept (this is the
    passage to the associated graded of the filtration by arith weight).
    internal_modulus may shrink (it must divide the old modulus) so that the
    new generators become internally homogeneous.
    """
    p = pres.prime
    n = len(pres.generators)
    if len(new_basis) != n:
        raise ValueError("new basis has wrong size")
    M = internal_modulus if internal_modulus is not None else pres.internal_modulus
    if pres.internal_modulus % M:
        raise ValueError("new internal modulus must divide the old one")

    # coordinate columns of the new basis vectors over old generator indices
    cols = []
    for name, el, arith in new_basis:
        col = {}
        for m, c in el.terms.items():
            if m.bit_count() != 1:
                raise ValueError(f"basis vector {name} is not linear")
            col[m.bit_length() - 1] = c
        cols.append(col)
    # invert: express each old generator in the new basis
    old_in_new: list[dict[int, int]] = []
    for i in range(n):
        sol = solve_in_span(cols, {i: 1}, p)
        if sol is None:
            raise ValueError("new basis is not invertible")
        old_in_new.append(sol)

    def degrees_of(el: Element, arith: int):
        degs = set()
        for m in el.terms:
            d = pres.degree_of_mask(m)
            degs.add((d.rav, d.internal % M))
        if len(degs) != 1:
            raise ValueError("new basis vector is not homogeneous (rav/internal)")
        rav, internal = degs.pop()
        return rav, internal

    gens = []
    name_of = [nb[0] for nb in new_basis]
    arith_of = [nb[2] for nb in new_basis]
    # sigma in the new basis: sigma(new_k) must be +-1 times a new basis vector
    # (after truncation to the arith-preserving part, when requested)
    sig = []
    for bi, (name, el, arith) in enumerate(new_basis):
        img = apply_action(el)
        coords: dict[int, int] = {}
        for m, c in img.terms.items():
            coords_m = old_in_new[m.bit_length() - 1]
            for k, v in coords_m.items():
                nv = (coords.get(k, 0) + c * v) % p
                if nv:
                    coords[k] = nv
                else:
                    coords.pop(k, None)
        if arith_truncate:
            coords = {k: v for k, v in coords.items() if arith_of[k] == arith}
        if len(coords) != 1:
            raise ValueError(f"sigma image of {name} is not a signed basis vector")
        (k, c), = coords.items()
        if c != 1 and c != p - 1:
            raise ValueError(f"sigma image of {name} has coefficient {c}")
        sig.append((name_of[k], 1 if c == 1 else -1))

    for (name, el, arith), (sname, ssign) in zip(new_basis, sig):
        rav, internal = degrees_of(el, arith)
        gens.append(GeneratorSpec(name, rav, internal, arith, sname, ssign))

    # transport the differential: d(new_k) written in new quadratic monomials
    diffs: dict[str, list[tuple[int, tuple[str, str]]]] = {}
    for name, el, arith in new_basis:
        img = differential(el)
        terms: list[tuple[int, tuple[str, str]]] = []
        for m, c in img.terms.items():
            i1 = (m & -m).bit_length() - 1
            i2 = m.bit_length() - 1
            # substitute old generators by their new-basis expressions
            for k1, v1 in old_in_new[i1].items():
                for k2, v2 in old_in_new[i2].items():
                    if k1 == k2:
                        continue
                    if arith_truncate and arith_of[k1] + arith_of[k2] != arith:
                        continue
                    terms.append((c * v1 * v2 % p, (name_of[k1], name_of[k2])))
        diffs[name] = terms
    return DgaPresentation(p, M, action_order or pres.action_order, gens, diffs)


def associated_graded(pres: DgaPresentation, ideal_generators: list[Element],
                      internal_modulus: int | None = None,
                      names: list[str] | None = None) -> DgaPresentation:
    """Associated graded of the filtration by powers of the ideal generated by
    the given degree-1 elements.

    The new presentation has the same generator span: residues of old
    generators not in the ideal's pivot set (arithmetic degree 0) plus the
    ideal generators themselves (arithmetic degree 1).  Its differential keeps
    only the terms that preserve total arithmetic degree.
    """
    p = pres.prime
    n = len(pres.generators)
    if not ideal_generators:
        return pres
    for v in ideal_generators:
        if any(m.bit_count() != 1 for m in v.terms):
            raise ValueError("ideal generators must be linear in the generators")

    # echelon the ideal generators to find pivot coordinates
    ech = Echelon(p)
    pivots = []
    for v in ideal_generators:
        col = {m.bit_length() - 1: c for m, c in v.terms.items()}
        r = ech.add(col)
        if r is None:
            raise ValueError("ideal generators are linearly dependent")
        pivots.append(r)
    pivot_set = set(pivots)

    if names is None:
        names = [f"u{k}" for k in range(len(ideal_generators))]
    basis: list[tuple[str, Element, int]] = []
    for i, g in enumerate(pres.generators):
        if i not in pivot_set:
            basis.append((g.name, pres.gen(g.name), g.arith))
    for name, v in zip(names, ideal_generators):
        basis.append((name, v, 1))

    return change_of_basis(pres, basis, internal_modulus=internal_modulus,
                           arith_truncate=True)


# ---- JSON presentation schema ----------------------------------------------

def to_json_dict(pres: DgaPresentation) -> dict:
    gens = []
    for g in pres.generators:
        gens.append({
            "name": g.name, "coh": 1, "rav": g.rav,
            "internal": g.internal % pres.internal_modulus, "arith": g.arith,
            "sigma": {"name": g.sigma_name, "sign": 1 if g.sigma_sign == 1 else -1},
        })
    diff = {}
    names = [g.name for g in pres.generators]
    for i, g in enumerate(pres.generators):
        terms = []
        for mask in sorted(pres.d_gen[i]):
            mono = [names[k] for k in range(64) if mask >> k & 1]
            terms.append({"coeff": pres.d_gen[i][mask], "monomial": mono})
        diff[g.name] = terms
    return {
        "prime": pres.prime,
        "internal_modulus": pres.internal_modulus,
        "action_order": pres.action_order,
        "generators": gens,
        "differential": diff,
    }


def from_json_dict(data: dict) -> DgaPresentation:
    gens = [GeneratorSpec(g["name"], g["rav"], g["internal"], g.get("arith", 0),
                          g["sigma"]["name"], g["sigma"]["sign"])
            for g in data["generators"]]
    diffs = {}
    for name, terms in data["differential"].items():
        lst = []
        for t in terms:
            mono = t["monomial"]
            if len(mono) != 2:
                raise ValueError("differential terms must be quadratic")
            lst.append((t["coeff"], (mono[0], mono[1])))
        diffs[name] = lst
    return DgaPresentation(data["prime"], data["internal_modulus"],
                           data["action_order"], gens, diffs)


def dumps(pres: DgaPresentation) -> str:
    return json.dumps(to_json_dict(pres), sort_keys=True, separators=(",", ":"))
