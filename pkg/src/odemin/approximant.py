"""Hermite-Pade approximant bases in shifted Popov form.

approximant_basis computes a basis of all polynomial vectors (p_1..p_k) with
sum(p_j S_j) = O(z^order), canonicalized to the Popov form for the shift
(-s_1..-s_k): pivots monic on the diagonal with minimal degrees, other
entries in each pivot column of smaller degree.  Rows whose pivot degree is
at most the corresponding s_i generate every relation with deg p_j <= s_j;
those are the selected rows.

Over a prime field the inner loop runs in the compiled kernel when present
(odemin._modbasis, built from Cython) and otherwise in the pure-Python
fallback; over QQ a primitive-integer variant keeps coefficient growth in
check.  `benchmarks/bench_modbasis.py` compares the two kernels.
"""

from __future__ import annotations

from dataclasses import dataclass

from .poly import Poly, PrimeDomain, QQ_DOM
from .rat import QQ, Q0, gcd_list, lcm_list
from .series import TruncSeries

try:  # compiled kernel, with pure-Python fallback
    from ._modbasis import order_basis_modp as _kernel_modp

    KERNEL = "cython"
except ImportError:  # pragma: no cover - exercised when extension is absent
    from .modbasis_py import order_basis_modp as _kernel_modp

    KERNEL = "python"


@dataclass
class ApproximantBasisResult:
    dom: object
    basis: list  # k x k matrix of Poly, rows indexed by pivot column
    shifts: list[int]
    order: int
    row_degrees: list[int]  # deg basis[i][i]
    selected: list[int]  # rows with deg basis[i][i] <= shifts[i]


def approximant_basis(series: list[TruncSeries], shifts: list[int], order: int
                      ) -> ApproximantBasisResult:
    """Shifted-Popov basis of {(p_1..p_k): sum p_j S_j = O(z^order)}."""
    if not series:
        raise ValueError("no series given")
    dom = series[0].dom
    if len(shifts) != len(series):
        raise ValueError("shifts and series lengths differ")
    for s in series:
        if s.dom != dom:
            raise ValueError("mixed coefficient fields")
        if s.prec < order or s.val < 0:
            raise ValueError("series precision below requested order")
    cols = [_column(s, order) for s in series]
    if isinstance(dom, PrimeDomain):
        rows, _ = _kernel_modp(cols, list(shifts), order, dom.p)
        mat = [[Poly(dom, ent) for ent in row] for row in rows]
    elif dom is QQ_DOM:
        rows = _order_basis_qq(cols, list(shifts), order)
        mat = [[Poly(dom, ent) for ent in row] for row in rows]
    else:
        raise TypeError("approximant bases are computed over QQ or a prime field")
    mat = _popov_normalize(mat, shifts, dom)
    degs = [mat[i][i].deg for i in range(len(mat))]
    selected = [i for i in range(len(mat)) if degs[i] <= shifts[i]]
    return ApproximantBasisResult(dom, mat, list(shifts), order, degs, selected)


def _column(s: TruncSeries, order: int):
    return [s[e] for e in range(order)]


def _order_basis_qq(cols, shifts, order):
    """Iterative order basis over QQ with primitive-integer row scaling."""
    k = len(cols)
    rows = [[[] for _ in range(k)] for _ in range(k)]
    for i in range(k):
        rows[i][i] = [QQ(1)]
    delta = [-int(s) for s in shifts]
    for sigma in range(order):
        res = []
        for i in range(k):
            acc = Q0
            for j in range(k):
                ent = rows[i][j]
                if ent:
                    fj = cols[j]
                    lim = min(len(ent) - 1, sigma)
                    acc += sum((ent[t] * fj[sigma - t] for t in range(lim + 1)), Q0)
            res.append(acc)
        piv = -1
        for i in range(k):
            if res[i] and (piv < 0 or delta[i] < delta[piv]):
                piv = i
        if piv < 0:
            continue
        prow = rows[piv]
        for i in range(k):
            if i == piv or not res[i]:
                continue
            r = res[i] / res[piv]
            row = rows[i]
            for j in range(k):
                ent = prow[j]
                if not ent:
                    continue
                tgt = row[j]
                if len(tgt) < len(ent):
                    tgt.extend([Q0] * (len(ent) - len(tgt)))
                for t, c in enumerate(ent):
                    if c:
                        tgt[t] -= r * c
                while tgt and not tgt[-1]:
                    tgt.pop()
            _strip_row(row)
        for j in range(k):
            if prow[j]:
                prow[j].insert(0, Q0)
        delta[piv] += 1
    return rows


def _strip_row(row):
    """Scale a row of QQ coefficient lists to primitive integers."""
    den = 1
    for ent in row:
        for v in ent:
            if v:
                den = lcm_list((den, v.denominator))
    g = 0
    for ent in row:
        for v in ent:
            if v:
                g = gcd_list((g, v.numerator * den))
                if g == 1 and den == 1:
                    return
    if g == 0:
        return
    scale = QQ(den, g)
    if scale == 1:
        return
    for ent in row:
        for t in range(len(ent)):
            ent[t] *= scale


def _pivot_index(row, shifts):
    """Rightmost entry achieving the shifted row degree."""
    best, bestdeg = -1, None
    for j, ent in enumerate(row):
        if ent.is_zero():
            continue
        d = ent.deg - shifts[j]
        if bestdeg is None or d >= bestdeg:
            best, bestdeg = j, d
    return best, bestdeg


def _popov_normalize(mat, shifts, dom):
    """Canonical shifted Popov form of a row basis (unimodular row ops only)."""
    k = len(mat)
    rows = [list(r) for r in mat]

    def pivot(i):
        return _pivot_index(rows[i], shifts)

    # weak Popov: make pivot indices distinct
    while True:
        seen = {}
        clash = None
        for i in range(k):
            j, _ = pivot(i)
            if j in seen:
                clash = (seen[j], i, j)
                break
            seen[j] = i
        if clash is None:
            break
        i1, i2, j = clash
        if rows[i1][j].deg < rows[i2][j].deg:
            i1, i2 = i2, i1
        d = rows[i1][j].deg - rows[i2][j].deg
        c = dom.div(rows[i1][j].lc(), rows[i2][j].lc())
        for col in range(k):
            sub = rows[i2][col].scale(c).shift_up(d)
            rows[i1][col] = rows[i1][col] - sub
    # order rows by pivot column
    perm = [None] * k
    for i in range(k):
        j, _ = pivot(i)
        perm[j] = rows[i]
    rows = perm
    # monic pivots
    for i in range(k):
        lc = rows[i][i].lc()
        if not dom.eq(lc, dom.one):
            inv = dom.inv(lc)
            rows[i] = [e.scale(inv) for e in rows[i]]
    # reduce entries above/below each pivot
    changed = True
    while changed:
        changed = False
        for i in range(k):
            for j in range(k):
                if i == j or rows[i][j].deg < rows[j][j].deg:
                    continue
                q, _ = rows[i][j].divmod(rows[j][j])
                if q.is_zero():
                    continue
                changed = True
                for col in range(k):
                    rows[i][col] = rows[i][col] - q * rows[j][col]
    return rows


def residual_order(series: list[TruncSeries], row: list[Poly]):
    """Valuation of sum(row_j * S_j); None when zero to full precision."""
    dom = series[0].dom
    prec = min(s.prec for s in series)
    acc = [dom.zero] * prec
    for ent, s in zip(row, series):
        for t, c in enumerate(ent.c):
            if dom.is_zero(c):
                continue
            for e in range(s.val, prec - t):
                acc[t + e] = dom.add(acc[t + e], dom.mul(c, s[e]))
    for e, v in enumerate(acc):
        if not dom.is_zero(v):
            return e
    return None


def candidate_operators(result: ApproximantBasisResult):
    """Selected rows as differential operators p_1 + p_2 D + ...,

    sorted by (order, max coefficient degree, index) for deterministic
    candidate choice."""
    from .ore import DiffOp

    ops = []
    for i in result.selected:
        row = result.basis[i]
        op = DiffOp(list(row), result.dom)
        if not op.is_zero():
            ops.append((op.order, op.max_coeff_degree(), i, op))
    ops.sort(key=lambda t: t[:3])
    return [t[3] for t in ops]
