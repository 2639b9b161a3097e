"""Exact solver for the generating-function recursion

    A(t) = sum_{n >= 0} (t^n / n!) * prod_{k=1}^{n} A(kt),

treated as a formal power series over Q.  Writing A(t) = sum c_n t^n, the
t^m coefficient of the n-th summand only involves c_j with j <= m - n, so the
coefficients are determined by a triangular recursion.  The integers
a_n = n! * c_n are the conjectured rank numerators; the conjectured total
rank at height n is 2^n * a_n.
"""

from __future__ import annotations

from fractions import Fraction
from math import factorial


def _scaled(coeffs: list[Fraction], k: int, upto: int) -> list[Fraction]:
    """Coefficients of A(kt) through degree upto."""
    return [coeffs[m] * k ** m for m in range(upto + 1)]


def _product_coeff(coeffs: list[Fraction], n: int, m: int) -> Fraction:
    """[t^m] of prod_{k=1}^n A(kt), using coefficients through degree m."""
    prod = [Fraction(1)] + [Fraction(0)] * m
    for k in range(1, n + 1):
        fac = _scaled(coeffs, k, m)
        out = [Fraction(0)] * (m + 1)
        for i in range(m + 1):
            if not prod[i]:
                continue
            for j in range(m + 1 - i):
                out[i + j] += prod[i] * fac[j]
        prod = out
    return prod[m]


def solve_series(N: int = 16) -> list[Fraction]:
    """c_0 .. c_N of the unique formal solution."""
    if N < 0:
        raise ValueError("N must be nonnegative")
    c = [Fraction(0)] * (N + 1)
    c[0] = Fraction(1)
    for m in range(1, N + 1):
        total = Fraction(0)
        for n in range(1, m + 1):
            total += Fraction(1, factorial(n)) * _product_coeff(c, n, m - n)
        c[m] = total
    return c


def check_fixed_point(c: list[Fraction]) -> bool:
    """Re-substitute the truncation into the right side; exact through N."""
    N = len(c) - 1
    for m in range(N + 1):
        rhs = Fraction(1) if m == 0 else Fraction(0)
        for n in range(1, m + 1):
            rhs += Fraction(1, factorial(n)) * _product_coeff(c, n, m - n)
        if rhs != c[m]:
            return False
    return True


def solve_functional_equation(N: int = 16) -> list[int]:
    """a_0 .. a_N with a_n = n! * c_n, verified integral."""
    c = solve_series(N)
    out = []
    for n, cn in enumerate(c):
        a = cn * factorial(n)
        if a.denominator != 1:
            raise ArithmeticError(f"a_{n} is not an integer: {a}")
        out.append(int(a))
    return out


def conjectured_rank(n: int) -> int:
    if n < 0:
        raise ValueError("n must be nonnegative")
    return 2 ** n * solve_functional_equation(n)[n]


def table(N: int = 8) -> list[list[int]]:
    """Rows [n, 2^n * a_n, a_n]."""
    a = solve_functional_equation(N)
    return [[n, 2 ** n * a[n], a[n]] for n in range(N + 1)]
