"""Dense integer univariate polynomials and exact integer determinants.

Polynomials are lists of integer coefficients, lowest degree first, with
no trailing zeros (the zero polynomial is ``[]``).
"""

from __future__ import annotations


def trim(a):
    a = list(a)
    while a and a[-1] == 0:
        a.pop()
    return a


def degree(a) -> int:
    a = trim(a)
    return len(a) - 1 if a else -1


def add(a, b):
    n = max(len(a), len(b))
    return trim([(a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0) for i in range(n)])


def mul(a, b):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                out[i + j] += ai * bj
    return trim(out)


def derivative(a):
    return trim([i * a[i] for i in range(1, len(a))])


def rem_monic(a, f):
    """Remainder of ``a`` modulo the monic polynomial ``f``."""
    n = len(f) - 1
    a = list(a)
    for top in range(len(a) - 1, n - 1, -1):
        c = a[top]
        if c:
            shift = top - n
            for i in range(n + 1):
                a[shift + i] -= c * f[i]
    return trim(a[:n]) if len(a) > n else trim(a)


def is_monic(f) -> bool:
    f = trim(f)
    return len(f) >= 2 and f[-1] == 1


def bareiss_det(rows) -> int:
    """Determinant of a square integer matrix by fraction-free elimination."""
    m = [list(r) for r in rows]
    n = len(m)
    if n == 0:
        return 1
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        for i in range(k + 1, n):
            mik = m[i][k]
            row_i, row_k = m[i], m[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - mik * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def format_poly(a, var="x") -> str:
    a = trim(a)
    if not a:
        return "0"
    parts = []
    for i in range(len(a) - 1, -1, -1):
        c = a[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        c = abs(c)
        if i == 0:
            body = str(c)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if c == 1 else f"{c}*{mono}"
        parts.append((sign, body))
    first_sign, first_body = parts[0]
    out = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        out += f"{sign}{body}"
    return out
