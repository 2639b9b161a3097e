"""Cobar-complex spot checks over truncated dual group-ring coalgebras.

Two coalgebra variants over F_p, both with generators indexed up to a
configurable i_max:

  ungraded:  F_p[t_1, ..., t_imax] / (t_i^{p^2} = t_i), coproduct
             Delta(t_i) = sum_{k=0}^{i} t_k (x) t_{i-k}^{p^k}   (t_0 = 1),
  graded:    F_p[t_{i,j} : 0 <= j <= 1] / (t_{i,j}^p), coproduct
             Delta(t_{i,j}) = sum_{k=0}^{i} t_{k,j} (x) t_{i-k, (k+j) mod 2}.

The cobar differential convention used throughout:
  degree 1:  d(x) = reduced coproduct of x,
  degree 2:  d(x (x) y) = Dbar(x) (x) y - x (x) Dbar(y).
Under it, d o d = 0 and the degree-1 Leibniz-type checks below all close.

Monomials are sorted tuples of (generator key, exponent); elements are dicts
{monomial: coefficient}; k-cochains are dicts {k-tuple of monomials: coeff}
with no unit tensor legs.
"""

from __future__ import annotations

from .fplin import inv_mod

UNIT = ()


class TruncatedCoalgebra:
    def __init__(self, p: int, variant: str, i_max: int,
                 degree_bound: int | None = None):
        if variant not in ("graded", "ungraded"):
            raise ValueError(f"unknown variant {variant!r}")
        self.p = p
        self.variant = variant
        self.i_max = i_max
        if degree_bound is None and variant == "ungraded":
            degree_bound = 4 * p
        self.degree_bound = degree_bound
        self.truncation_hit = False
        if variant == "ungraded":
            self.gens = [i for i in range(1, i_max + 1)]
        else:
            self.gens = [(i, j) for i in range(1, i_max + 1) for j in (0, 1)]

    # ---- algebra ----------------------------------------------------------

    def t(self, key, exp: int = 1):
        """The monomial t_key^exp as an element."""
        if key not in self.gens and key != 0:
            raise ValueError(f"unknown generator {key!r}")
        m = self._normalize(((key, exp),)) if key != 0 else UNIT
        return {m: 1} if m is not None else {}

    def _normalize(self, pairs):
        """Sort, merge, reduce exponents; None means the monomial vanishes."""
        p = self.p
        acc: dict = {}
        for key, e in pairs:
            acc[key] = acc.get(key, 0) + e
        out = []
        for key in sorted(acc):
            e = acc[key]
            if not e:
                continue
            if self.variant == "graded":
                if e >= p:
                    return None            # t_{i,j}^p = 0
            else:
                while e >= p * p:
                    e -= p * p - 1         # t_i^{p^2} = t_i
            out.append((key, e))
        if self.degree_bound is not None:
            if sum(e for _, e in out) > self.degree_bound:
                self.truncation_hit = True
                return None
        return tuple(out)

    def mono_mul(self, m1, m2):
        return self._normalize(tuple(m1) + tuple(m2))

    def mul(self, a: dict, b: dict) -> dict:
        p = self.p
        out: dict = {}
        for m1, c1 in a.items():
            for m2, c2 in b.items():
                m = self.mono_mul(m1, m2)
                if m is None:
                    continue
                v = (out.get(m, 0) + c1 * c2) % p
                if v:
                    out[m] = v
                else:
                    out.pop(m, None)
        return out

    def scale(self, a: dict, c: int) -> dict:
        c %= self.p
        return {m: (v * c) % self.p for m, v in a.items()} if c else {}

    def add(self, a: dict, b: dict) -> dict:
        out = dict(a)
        for m, c in b.items():
            v = (out.get(m, 0) + c) % self.p
            if v:
                out[m] = v
            else:
                out.pop(m, None)
        return out

    # ---- coproduct ---------------------------------------------------------

    def coproduct_gen(self, key) -> dict:
        """Delta(t_key) as a 2-tensor {(m1, m2): coeff}."""
        p = self.p
        out: dict = {}
        if self.variant == "ungraded":
            i = key
            for k in range(i + 1):
                left = UNIT if k == 0 else self._normalize(((k, 1),))
                rexp = p ** k
                right = UNIT if k == i else self._normalize(((i - k, rexp),))
                if left is None or right is None:
                    continue
                out[(left, right)] = (out.get((left, right), 0) + 1) % p
        else:
            i, j = key
            for k in range(i + 1):
                left = UNIT if k == 0 else self._normalize((((k, j), 1),))
                right = UNIT if k == i else self._normalize((((i - k, (k + j) % 2), 1),))
                if left is None or right is None:
                    continue
                out[(left, right)] = (out.get((left, right), 0) + 1) % p
        return {m: c for m, c in out.items() if c}

    def _tensor_mul(self, a: dict, b: dict) -> dict:
        """Componentwise product of 2-tensors."""
        p = self.p
        out: dict = {}
        for (x1, y1), c1 in a.items():
            for (x2, y2), c2 in b.items():
                x = self.mono_mul(x1, x2)
                y = self.mono_mul(y1, y2)
                if x is None or y is None:
                    continue
                v = (out.get((x, y), 0) + c1 * c2) % p
                if v:
                    out[(x, y)] = v
                else:
                    out.pop((x, y), None)
        return out

    def _frobenius(self, tensor: dict) -> dict:
        """Termwise p-th power of a 2-tensor ((a+b)^p = a^p + b^p mod p)."""
        p = self.p
        out: dict = {}
        for (x, y), c in tensor.items():
            xp = self._normalize(tuple((k, e * p) for k, e in x))
            yp = self._normalize(tuple((k, e * p) for k, e in y))
            if xp is None or yp is None:
                continue
            v = (out.get((xp, yp), 0) + c) % p
            if v:
                out[(xp, yp)] = v
            else:
                out.pop((xp, yp), None)
        return out

    def coproduct_mono(self, mono) -> dict:
        """Delta of a monomial.  Powers are expanded one base-p digit at a
        time, using Frobenius for the p-th-power steps, so intermediate
        exponents never blow past the truncation bound on the way to a small
        final answer."""
        out = {(UNIT, UNIT): 1}
        for key, e in mono:
            dgk = self.coproduct_gen(key)
            while e:
                for _ in range(e % self.p):
                    out = self._tensor_mul(out, dgk)
                e //= self.p
                if e:
                    dgk = self._frobenius(dgk)
        return out

    def coproduct(self, a: dict) -> dict:
        p = self.p
        out: dict = {}
        for mono, c in a.items():
            for mm, cc in self.coproduct_mono(mono).items():
                v = (out.get(mm, 0) + c * cc) % p
                if v:
                    out[mm] = v
                else:
                    out.pop(mm, None)
        return out

    # ---- axioms -------------------------------------------------------------

    def check_counit(self, keys=None) -> bool:
        """(eps (x) 1)Delta = id = (1 (x) eps)Delta on generators."""
        for key in (keys or self.gens):
            d = self.coproduct_gen(key)
            left = {}
            right = {}
            for (x, y), c in d.items():
                if x == UNIT:
                    left = self.add(left, {y: c})
                if y == UNIT:
                    right = self.add(right, {x: c})
            t = self.t(key)
            if left != t or right != t:
                return False
        return True

    def check_coassociativity(self, keys=None) -> bool:
        p = self.p
        for key in (keys or self.gens):
            lhs: dict = {}
            rhs: dict = {}
            for (x, y), c in self.coproduct_gen(key).items():
                for (x1, x2), c1 in self.coproduct_mono(x).items():
                    v = (lhs.get((x1, x2, y), 0) + c * c1) % p
                    if v:
                        lhs[(x1, x2, y)] = v
                    else:
                        lhs.pop((x1, x2, y), None)
                for (y1, y2), c1 in self.coproduct_mono(y).items():
                    v = (rhs.get((x, y1, y2), 0) + c * c1) % p
                    if v:
                        rhs[(x, y1, y2)] = v
                    else:
                        rhs.pop((x, y1, y2), None)
            if lhs != rhs:
                return False
        return True


# ---- cobar differential ------------------------------------------------------


def _reduced_coproduct(co: TruncatedCoalgebra, mono) -> dict:
    return {(x, y): c for (x, y), c in co.coproduct_mono(mono).items()
            if x != UNIT and y != UNIT}


def cobar_d(co: TruncatedCoalgebra, cochain: dict, degree: int) -> dict:
    """Cobar differential of a degree-1 or degree-2 cochain.

    Degree-1 cochains are {monomial: coeff}; degree-2 cochains are
    {(m1, m2): coeff}.
    """
    p = co.p
    out: dict = {}
    if degree == 1:
        for mono, c in cochain.items():
            for mm, cc in _reduced_coproduct(co, mono).items():
                v = (out.get(mm, 0) + c * cc) % p
                if v:
                    out[mm] = v
                else:
                    out.pop(mm, None)
        return out
    if degree == 2:
        for (m1, m2), c in cochain.items():
            for (x, y), cc in _reduced_coproduct(co, m1).items():
                k = (x, y, m2)
                v = (out.get(k, 0) + c * cc) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
            for (x, y), cc in _reduced_coproduct(co, m2).items():
                k = (m1, x, y)
                v = (out.get(k, 0) - c * cc) % p
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return out
    raise ValueError("only cochain degrees 1 and 2 are supported")


# ---- the named representatives -----------------------------------------------


def _m(co, *pairs):
    m = co._normalize(pairs)
    assert m is not None
    return m


def named_cochains(co: TruncatedCoalgebra) -> dict:
    """The displayed representatives, keyed by name; values (degree, cochain)."""
    p = co.p
    half = inv_mod(2, p)
    third = inv_mod(3, p)
    items = {}
    if co.variant == "ungraded":
        t = lambda i, e=1: _m(co, (i, e))
        items["t1"] = (1, {t(1): 1})
        items["t2"] = (1, {t(2): 1})
        # displayed two-cocycle for h10.eta2 (verbatim)
        items["h10eta2_lift_displayed"] = (2, {
            (t(1), t(2)): 1, (t(1), t(2, p)): -1 % p, (t(1), t(1, p + 1)): -1 % p,
        })
        items["h10eta2_lift_corrected"] = (2, dict(items["h10eta2_lift_displayed"][1]))
        items["h10eta2_lift_corrected"][1][(t(2), t(1))] = -2 % p
        # displayed lift for h10.h30
        items["h10h30_lift"] = (2, {
            (t(1), t(3)): 1,
            (t(1), _m(co, (1, 1), (2, 1))): -1 % p,
            (t(1, 2), t(2)): -half % p,
            (t(1, 2), t(2, p)): half,
            (t(1, 2), t(1, p + 1)): -half % p,
            (t(1, 3), t(1, p)): -third % p,
        })
        if co.i_max >= 4:
            items["zeta4_lift"] = (1, {
                t(4): 1, t(4, p): 1,
                _m(co, (1, 1), (3, p)): -1 % p,
                _m(co, (1, p), (3, 1)): -1 % p,
                t(2, 2): -half % p, t(2, 2 * p): -half % p,
                _m(co, (1, p + 1), (2, 1)): 1,
                _m(co, (1, p + 1), (2, p)): 1,
                t(1, 2 * p + 2): -half % p,
            })
    else:
        t = lambda i, j, e=1: _m(co, ((i, j), e))
        items["t1"] = (1, {t(1, 0): 1})
        items["h10eta2_lift_displayed"] = (2, {
            (t(1, 0), t(2, 0)): 1,
            (t(1, 0), t(2, 1)): -1 % p,
            (t(1, 0), _m(co, ((1, 0), 1), ((1, 1), 1))): -1 % p,
        })
        items["h10eta2_lift_corrected"] = (2, dict(items["h10eta2_lift_displayed"][1]))
        items["h10eta2_lift_corrected"][1][(t(2, 0), t(1, 0))] = -2 % p
        if co.i_max >= 3:
            items["h10h30_rep"] = (2, {
                (t(1, 0), t(3, 0)): 1,
                (t(1, 0), _m(co, ((1, 0), 1), ((2, 0), 1))): -1 % p,
                (t(1, 0, 2), t(2, 0)): -half % p,
                (t(1, 0, 2), t(2, 1)): half,
                (t(1, 0, 2), _m(co, ((1, 0), 1), ((1, 1), 1))): -half % p,
                (t(1, 0, 3), t(1, 1)): -third % p,
            })
        if co.i_max >= 4:
            items["zeta4_rep"] = (1, {
                t(4, 0): 1, t(4, 1): 1,
                _m(co, ((1, 0), 1), ((3, 1), 1)): -1 % p,
                _m(co, ((1, 1), 1), ((3, 0), 1)): -1 % p,
                t(2, 0, 2): -half % p, t(2, 1, 2): -half % p,
                _m(co, ((1, 0), 1), ((1, 1), 1), ((2, 0), 1)): 1,
                _m(co, ((1, 0), 1), ((1, 1), 1), ((2, 1), 1)): 1,
                _m(co, ((1, 0), 2), ((1, 1), 2)): -half % p,
            })
    return items


def verify_named_cocycles(p: int, assume_coproduct_t4: bool = False) -> list[dict]:
    """Evaluates cobar_d on every named representative; one report row per
    item.  Items that need the coproduct of t_4 (the coproduct formula is only
    trusted for indices below 4p/(p-1)) run only when assume_coproduct_t4 is
    set and are marked conditional."""
    if p <= 5:
        raise ValueError("need p > 5")
    rows = []

    def run(co, variant, conditional_names=()):
        for name, (deg, cochain) in named_cochains(co).items():
            img = cobar_d(co, cochain, deg)
            rows.append({
                "name": name, "variant": variant, "degree": deg,
                "is_cocycle": not img, "residual_terms": len(img),
                "conditional": name in conditional_names,
                "expected_cocycle": name not in ("t2", "h10eta2_lift_displayed"),
                "truncated": co.truncation_hit,
            })

    run(TruncatedCoalgebra(p, "graded", 2), "graded_h2")
    run(TruncatedCoalgebra(p, "graded", 4 if assume_coproduct_t4 else 3),
        "graded_h4", conditional_names=("zeta4_rep",))
    run(TruncatedCoalgebra(p, "ungraded", 4 if assume_coproduct_t4 else 3),
        "ungraded", conditional_names=("zeta4_lift",))
    return rows
