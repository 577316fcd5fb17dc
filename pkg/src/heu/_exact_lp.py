"""Exact feasibility of ``A x = b, x >= 0`` over the rationals.

Gaussian elimination first; if the basic solution it yields has a negative
entry, a phase-one simplex with Bland's rule decides feasibility.
"""

from fractions import Fraction


def _rref(rows, ncols):
    """Reduce ``rows`` (augmented, last column is the rhs) in place.

    Returns the pivot columns, or ``None`` if the system is inconsistent.
    """
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c] != 0), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [v * inv for v in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    if any(all(v == 0 for v in row[:ncols]) and row[ncols] != 0 for row in rows[r:]):
        return None
    del rows[r:]
    return pivots


def _phase_one(rows, ncols):
    m = len(rows)
    tab = []
    for i, row in enumerate(rows):
        row = list(row)
        if row[ncols] < 0:
            row = [-v for v in row]
        art = [Fraction(0)] * m
        art[i] = Fraction(1)
        tab.append(row[:ncols] + art + [row[ncols]])
    width = ncols + m
    basis = [ncols + i for i in range(m)]
    cost = [-sum((tab[i][j] for i in range(m)), Fraction(0)) for j in range(width + 1)]
    for i in range(m):
        cost[ncols + i] = Fraction(0)
    while True:
        enter = next((j for j in range(width) if cost[j] < 0), None)
        if enter is None:
            break
        leave = None
        best = None
        for i in range(m):
            a = tab[i][enter]
            if a > 0:
                ratio = tab[i][width] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:  # unbounded cannot occur in phase one
            break
        piv = tab[leave][enter]
        tab[leave] = [v / piv for v in tab[leave]]
        for i in range(m):
            if i != leave and tab[i][enter] != 0:
                f = tab[i][enter]
                tab[i] = [a - f * b for a, b in zip(tab[i], tab[leave])]
        f = cost[enter]
        cost = [a - f * b for a, b in zip(cost, tab[leave])]
        basis[leave] = enter
    if cost[width] != 0:
        return None
    x = [Fraction(0)] * ncols
    for i, j in enumerate(basis):
        if j < ncols:
            x[j] = tab[i][width]
    return x


def solve_nonnegative(a, b):
    """A nonnegative rational solution of ``a x = b``, or ``None``."""
    ncols = len(a[0]) if a else 0
    rows = [[Fraction(v) for v in row] + [Fraction(rhs)] for row, rhs in zip(a, b)]
    pivots = _rref(rows, ncols)
    if pivots is None:
        return None
    x = [Fraction(0)] * ncols
    for row, c in zip(rows, pivots):
        x[c] = row[ncols]
    if all(v >= 0 for v in x):
        return x
    return _phase_one(rows, ncols)
