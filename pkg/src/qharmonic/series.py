"""Hilbert series: univariate expansion, product formula, h-basis expansion."""

from __future__ import annotations

from fractions import Fraction
from itertools import permutations

from .exactalg import solve_unique


class NotSymmetric(ValueError):
    """Hilbert data that is not invariant under permuting the degree axes."""


def poly_mul_t(a: list[int], b: list[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def hilbert_product_formula(m: int, n: int, p: int = 1) -> list[int]:
    """Coefficients of prod_k [d_k]_t over the degrees d_k of G(m,p,n).

    For p = 1 this is prod_{k=1}^n (t^(km) - 1)/(t - 1).
    """
    if m < 1 or n < 1 or m % p:
        raise ValueError(f"invalid G({m},{p},{n})")
    degs = [k * m for k in range(1, n)] + [n * m // p]
    out = [1]
    for d in degs:
        out = poly_mul_t(out, [1] * d)
    return out


def univariate(hilbert: dict) -> list[int]:
    """Collapse multigraded dimensions to coefficients by total degree."""
    if not hilbert:
        return [0]
    top = max(sum(d) for d in hilbert)
    out = [0] * (top + 1)
    for d, k in hilbert.items():
        out[sum(d)] += k
    while len(out) > 1 and not out[-1]:
        out.pop()
    return out


def format_series(coeffs: list[int], var: str = "t") -> str:
    """"1+2t+3t^2"; zero coefficients are skipped."""
    parts = []
    for k, c in enumerate(coeffs):
        if not c:
            continue
        if k == 0:
            mono = ""
        elif k == 1:
            mono = var
        else:
            mono = f"{var}^{k}"
        if not mono:
            s = str(c)
        elif c == 1:
            s = mono
        elif c == -1:
            s = "-" + mono
        else:
            s = f"{c}{mono}"
        parts.append(s)
    if not parts:
        return "0"
    return "+".join(parts).replace("+-", "-")


def partitions(total: int, max_parts: int, largest: int | None = None) -> list[tuple]:
    """Partitions of ``total`` into at most ``max_parts`` parts, ascending lex."""
    if largest is None:
        largest = total
    if total == 0:
        return [()]
    if max_parts == 0:
        return []
    out = []
    for first in range(1, min(total, largest) + 1):
        for rest in partitions(total - first, max_parts - 1, first):
            out.append((first,) + rest)
    return sorted(out)


def _h_poly(k: int, l: int) -> dict:
    """h_k(t_1..t_l) as {exponent tuple: 1}."""
    from .polyspace import _compositions

    return {c: 1 for c in _compositions(k, l)}


def _mul(a: dict, b: dict) -> dict:
    out: dict = {}
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(x + y for x, y in zip(e1, e2))
            out[e] = out.get(e, 0) + c1 * c2
    return out


def h_product(lam: tuple, l: int) -> dict:
    out = {(0,) * l: 1}
    for k in lam:
        out = _mul(out, _h_poly(k, l))
    return out


def check_symmetric(hilbert: dict, l: int) -> None:
    for d, k in hilbert.items():
        for perm in set(permutations(d)):
            if hilbert.get(perm, 0) != k:
                raise NotSymmetric(f"dim at {d} is {k} but at {perm} is {hilbert.get(perm, 0)}")


def hbasis_expression(hilbert: dict, l: int) -> dict:
    """Coefficients c_lam with H = sum c_lam h_lam(t_1..t_l).

    Per total degree D, h_lam for partitions lam of D with at most l parts
    span the symmetric polynomials of degree D in l variables, so matching
    the coefficients of t^mu (mu a partition) gives a square nonsingular
    system.
    """
    hilbert = {tuple(d): k for d, k in hilbert.items()}
    if any(len(d) != l for d in hilbert):
        raise ValueError(f"Hilbert data does not have {l} degree axes")
    check_symmetric(hilbert, l)
    top = max((sum(d) for d, k in hilbert.items() if k), default=-1)
    out = {}
    for D in range(top + 1):
        lams = partitions(D, l)
        mus = [tuple(lam) + (0,) * (l - len(lam)) for lam in lams]
        mus = [tuple(sorted(mu, reverse=True)) for mu in mus]
        rhs = [hilbert.get(mu, 0) for mu in mus]
        if not any(rhs):
            continue
        polys = [h_product(lam, l) for lam in lams]
        rows = [[Fraction(p.get(mu, 0)) for p in polys] for mu in mus]
        sol = solve_unique(rows, [Fraction(v) for v in rhs])
        for lam, c in zip(lams, sol):
            if c:
                out[lam] = c
    return out


def _hname(lam: tuple) -> str:
    if len(lam) == 1:
        k = lam[0]
        return f"h_{k}" if k < 10 else f"h_{{{k}}}"
    parts = sorted(lam, reverse=True)
    sep = "," if any(k >= 10 for k in parts) else ""
    return "h_{" + sep.join(map(str, parts)) + "}"


def format_hbasis(expansion: dict) -> str:
    """"1+2h_1+h_{11}+h_2+h_3": by degree, then partitions in ascending lex."""
    keys = sorted(expansion, key=lambda lam: (sum(lam), tuple(sorted(lam, reverse=True))))
    parts = []
    for lam in keys:
        c = expansion[lam]
        c = int(c) if Fraction(c).denominator == 1 else c
        if not lam:
            parts.append(str(c))
            continue
        name = _hname(lam)
        if c == 1:
            parts.append(name)
        elif c == -1:
            parts.append("-" + name)
        else:
            parts.append(f"{c}{name}")
    if not parts:
        return "0"
    return "+".join(parts).replace("+-", "-")


def evaluate_hbasis(expansion: dict, l: int):
    """Value at t_1 = ... = t_l = 1."""
    total = Fraction(0)
    for lam, c in expansion.items():
        total += c * sum(h_product(lam, l).values())
    return int(total) if total.denominator == 1 else total
