"""Independent oracles used to freeze expected values.

Everything here is deliberately separate from the library's own reduction
code: dense textbook Smith reduction with first-nonzero pivoting, gcd-of-
minors invariant factors, Bareiss determinants, counting arguments, and a
bar-resolution group homology calculator.
"""

from fractions import Fraction
from itertools import combinations
from math import comb, gcd


def bareiss_det(rows):
    """Exact determinant of a square integer matrix."""
    a = [[Fraction(v) for v in row] for row in rows]
    n = len(a)
    sign = 1
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k]), None)
        if pivot is None:
            return 0
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            sign = -sign
        for i in range(k + 1, n):
            factor = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= factor * a[k][j]
    det = sign
    for k in range(n):
        det *= a[k][k]
    return int(det)


def minors_gcd_diagonal(rows):
    """Invariant factors via gcds of k-minors (small matrices only)."""
    m, n = len(rows), len(rows[0]) if rows else 0
    out = []
    prev = 1
    for k in range(1, min(m, n) + 1):
        g = 0
        for ris in combinations(range(m), k):
            for cjs in combinations(range(n), k):
                sub = [[rows[i][j] for j in cjs] for i in ris]
                g = gcd(g, abs(bareiss_det(sub)))
        if g == 0:
            out.extend([0] * (min(m, n) - len(out)))
            return out
        out.append(g // prev)
        prev = g
    return out


def dense_snf_diagonal(rows):
    """Plain dense Smith reduction, first-nonzero pivot, no basis tracking."""
    a = [list(r) for r in rows]
    m, n = len(a), len(a[0]) if a else 0
    t = 0
    while t < min(m, n):
        pos = None
        for i in range(t, m):
            for j in range(t, n):
                if a[i][j]:
                    pos = (i, j)
                    break
            if pos:
                break
        if pos is None:
            break
        i0, j0 = pos
        a[t], a[i0] = a[i0], a[t]
        for row in a:
            row[t], row[j0] = row[j0], row[t]
        while True:
            done = True
            for i in range(t + 1, m):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    for j in range(n):
                        a[i][j] -= q * a[t][j]
                    if a[i][t]:
                        a[t], a[i] = a[i], a[t]
                        done = False
            for j in range(t + 1, n):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    for i in range(m):
                        a[i][j] -= q * a[i][t]
                    if a[t][j]:
                        for row in a:
                            row[t], row[j] = row[j], row[t]
                        done = False
            if done and all(a[i][t] == 0 for i in range(t + 1, m)) \
                    and all(a[t][j] == 0 for j in range(t + 1, n)):
                break
        bad = None
        for i in range(t + 1, m):
            for j in range(t + 1, n):
                if a[i][j] % a[t][t]:
                    bad = i
                    break
            if bad is not None:
                break
        if bad is not None:
            for j in range(n):
                a[t][j] += a[bad][j]
            continue
        if a[t][t] < 0:
            for j in range(n):
                a[t][j] = -a[t][j]
        t += 1
    return [a[i][i] for i in range(min(m, n))]


def homology_from_boundaries(d_k, d_k1, n_k):
    """(free rank, sorted torsion) of ker d_k / im d_k1 from dense matrices."""
    def diag(mat):
        if not mat or not mat[0]:
            return []
        return dense_snf_diagonal(mat)

    r_k = sum(1 for d in diag(d_k) if d)
    diag1 = diag(d_k1)
    r_k1 = sum(1 for d in diag1 if d)
    torsion = sorted(d for d in diag1 if d > 1)
    return n_k - r_k - r_k1, tuple(torsion)


def product_nondegenerate_counts(x_counts, y_counts, upto):
    """Nondegenerate simplex counts of a product from total simplex counts.

    total_n = sum_k C(n, n-k) nd_k inverts to nd_n; the product's totals are
    the products of the factors' totals.
    """
    def totals(nd):
        out = []
        for n in range(upto + 1):
            t = sum(comb(n, n - k) * nd[k] for k in range(min(n, len(nd) - 1) + 1))
            out.append(t)
        return out

    tx, ty = totals(list(x_counts)), totals(list(y_counts))
    nd = []
    for n in range(upto + 1):
        t = tx[n] * ty[n]
        for k in range(n):
            t -= comb(n, n - k) * nd[k]
        nd.append(t)
    return tuple(nd)


def bar_resolution_homology(table, unit, upto):
    """Group/monoid homology from the normalized bar complex.

    table: dict (a, b) -> ab for a finite monoid; unit: the identity element.
    Returns [(free rank, torsion tuple)] for degrees 0..upto.
    """
    elements = sorted({a for a, _ in table} | {b for _, b in table}
                      | set(table.values()), key=repr)
    others = [g for g in elements if g != unit]

    def tuples(k):
        if k == 0:
            return [()]
        out = []
        for prev in tuples(k - 1):
            for g in others:
                out.append(prev + (g,))
        return out

    chains = {k: tuples(k) for k in range(upto + 2)}
    index = {k: {t: i for i, t in enumerate(chains[k])} for k in chains}

    def boundary_matrix(k):
        rows = [[0] * len(chains[k]) for _ in range(len(chains[k - 1]))]
        for j, tup in enumerate(chains[k]):
            sign = 1
            for i in range(k + 1):
                if i == 0:
                    face = tup[1:]
                elif i == k:
                    face = tup[:-1]
                else:
                    face = tup[: i - 1] + (table[(tup[i - 1], tup[i])],) + tup[i + 1:]
                if unit not in face:
                    rows[index[k - 1][face]][j] += sign
                sign = -sign
        return rows

    out = []
    for k in range(upto + 1):
        d_k = boundary_matrix(k) if k >= 1 else [[0] * len(chains[0])]
        d_k1 = boundary_matrix(k + 1)
        if k == 0:
            rank, torsion = homology_from_boundaries([], d_k1, len(chains[0]))
        else:
            rank, torsion = homology_from_boundaries(d_k, d_k1, len(chains[k]))
        out.append((rank, torsion))
    return out


def cyclic_table(n):
    return {(a, b): (a + b) % n for a in range(n) for b in range(n)}
