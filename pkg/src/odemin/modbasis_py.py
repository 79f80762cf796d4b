"""Pure-Python fallback for the mod-p order-basis kernel.

Same contract as the compiled odemin._modbasis.order_basis_modp; selected at
import time by odemin.approximant when the extension is unavailable.
"""

from __future__ import annotations


def order_basis_modp(series, shifts, order: int, prime: int):
    k = len(series)
    p = order
    F = [[v % prime for v in s[:p]] + [0] * max(0, p - len(s)) for s in series]
    rows = [[[] for _ in range(k)] for _ in range(k)]
    for i in range(k):
        rows[i][i] = [1]
    delta = [-int(s) for s in shifts]
    for sigma in range(p):
        res = []
        for i in range(k):
            acc = 0
            row = rows[i]
            for j in range(k):
                ent = row[j]
                if ent:
                    fj = F[j]
                    lim = min(len(ent) - 1, sigma)
                    acc += sum(ent[t] * fj[sigma - t] for t in range(lim + 1))
            res.append(acc % prime)
        piv = -1
        for i in range(k):
            if res[i] and (piv < 0 or delta[i] < delta[piv]):
                piv = i
        if piv < 0:
            continue
        cinv = pow(res[piv], -1, prime)
        prow = rows[piv]
        for i in range(k):
            if i == piv or not res[i]:
                continue
            r = (res[i] * cinv) % prime
            row = rows[i]
            for j in range(k):
                ent = prow[j]
                if not ent:
                    continue
                tgt = row[j]
                if len(tgt) < len(ent):
                    tgt.extend([0] * (len(ent) - len(tgt)))
                for t, c in enumerate(ent):
                    if c:
                        tgt[t] = (tgt[t] - r * c) % prime
                while tgt and tgt[-1] == 0:
                    tgt.pop()
        for j in range(k):
            if prow[j]:
                prow[j].insert(0, 0)
        delta[piv] += 1
    return rows, delta
