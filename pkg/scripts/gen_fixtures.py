"""Generate the stored recurrence fixtures by exact guessing.

Creative telescoping is out of scope for the package, so the recurrences the
paper takes as inputs are reconstructed here from sequence terms: nullspace
of the ansatz sum_j q_j(n) u_{n+j} = 0 modulo several primes, CRT and
rational reconstruction, then exact verification on further terms.  Run from
the repository root:

    python scripts/gen_fixtures.py [--stretch]

Writes JSON problem files into src/odemin/data/.
"""

import argparse
import json
import math
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parent.parent / "src"))

from odemin.rat import QQ, crt_pair, qstr, rational_reconstruct  # noqa: E402

DATA = Path(__file__).resolve().parent.parent / "src" / "odemin" / "data"

PRIMES = [2147483647, 2147483629, 2147483587, 2147483579, 2147483563,
          2147483549, 2147483543, 2147483497, 2147483489, 2147483477,
          2147483423, 2147483399, 2147483353, 2147483323, 2147483269,
          2147483249, 2147483237, 2147483179, 2147483171, 2147483137,
          2147483123, 2147483077, 2147483069, 2147483059, 2147483053,
          2147483033, 2147483029, 2147482951, 2147482949, 2147482943,
          2147482937, 2147482921, 2147482877, 2147482873, 2147482867,
          2147482859, 2147482819, 2147482817, 2147482811, 2147482801]


def binom_table(n_max):
    c = [[1]]
    for n in range(1, n_max + 1):
        row = [1] + [c[-1][k] + c[-1][k + 1] for k in range(n - 1)] + [1]
        c.append(row)
    return c


def fmp_terms(m, p, count):
    """u_n = sum_k C(n,k)^m C(n+k,k)^p, exact integers."""
    out = []
    for n in range(count):
        s = 0
        for k in range(n + 1):
            s += math.comb(n, k) ** m * math.comb(n + k, k) ** p
        out.append(s)
    return out


def nullspace_mod(rows, ncols, prime):
    """Nullspace basis of the matrix mod prime (rows: list of int lists)."""
    m = [[v % prime for v in r] for r in rows]
    pivots = {}
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = pow(m[r][c], -1, prime)
        m[r] = [v * inv % prime for v in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                mi, mr = m[i], m[r]
                m[i] = [(a - f * b) % prime for a, b in zip(mi, mr)]
        pivots[c] = r
        r += 1
        if r == len(m):
            break
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for c, pr in pivots.items():
            vec[c] = (-m[pr][fc]) % prime
        basis.append(vec)
    return basis


def guess_recurrence(terms_mod, order, degree, prime, n_eqs):
    """One-dimensional nullvector of the ansatz mod prime, pivot-normalized."""
    ncols = (order + 1) * (degree + 1)
    rows = []
    for n in range(n_eqs):
        row = []
        for j in range(order + 1):
            u = terms_mod[n + j]
            npow = 1
            for d in range(degree + 1):
                row.append(u * npow % prime)
                npow = npow * n % prime
        rows.append(row)
    basis = nullspace_mod(rows, ncols, prime)
    if len(basis) != 1:
        raise RuntimeError(f"nullspace dimension {len(basis)} != 1 "
                           f"(order {order}, degree {degree})")
    vec = basis[0]
    piv = next(i for i, v in enumerate(vec) if v)
    inv = pow(vec[piv], -1, prime)
    return [v * inv % prime for v in vec], piv


def reconstruct(order, degree, terms, n_eqs, label):
    t0 = time.time()
    residues = None
    modulus = None
    piv0 = None
    for prime in PRIMES:
        terms_mod = [t % prime for t in terms]
        vec, piv = guess_recurrence(terms_mod, order, degree, prime, n_eqs)
        if piv0 is None:
            piv0 = piv
        elif piv != piv0:
            raise RuntimeError("pivot position differs between primes")
        if residues is None:
            residues, modulus = vec, prime
        else:
            residues = [crt_pair(a, modulus, b, prime)[0]
                        for a, b in zip(residues, vec)]
            modulus *= prime
        # try rational reconstruction
        rec = [rational_reconstruct(v, modulus) for v in residues]
        if all(r is not None for r in rec):
            den = 1
            for r in rec:
                den = den * r.denominator // math.gcd(den, int(r.denominator))
            ints = [int(r * den) for r in rec]
            g = 0
            for v in ints:
                g = math.gcd(g, v)
            ints = [v // g for v in ints]
            coeffs = [ints[j * (degree + 1):(j + 1) * (degree + 1)]
                      for j in range(order + 1)]
            if verify(coeffs, terms, len(terms) - order):
                print(f"{label}: reconstructed with modulus of "
                      f"{modulus.bit_length()} bits in {time.time()-t0:.1f}s")
                return coeffs
    raise RuntimeError(f"{label}: reconstruction failed")


def verify(coeffs, terms, n_check):
    for n in range(n_check):
        s = 0
        for j, q in enumerate(coeffs):
            qn = 0
            for d in reversed(range(len(q))):
                qn = qn * n + q[d]
            s += qn * terms[n + j]
        if s != 0:
            return False
    return True


def trim_degree(coeffs):
    out = []
    for q in coeffs:
        q = list(q)
        while q and q[-1] == 0:
            q.pop()
        out.append(q)
    return out


def write_fixture(name, rec_coeffs, initial, task, options=None, meta=None):
    spec = {
        "kind": "recurrence",
        "recurrence": [[str(v) for v in q] for q in rec_coeffs],
        "initial": {str(k): qstr(v) for k, v in initial.items()},
        "task": task,
    }
    if options:
        spec["options"] = options
    if meta:
        spec["meta"] = meta
    DATA.mkdir(parents=True, exist_ok=True)
    path = DATA / f"{name}.json"
    path.write_text(json.dumps(spec, indent=1, sort_keys=True) + "\n")
    print(f"wrote {path}")


def gen_apery31():
    """Recurrence for u_n = sum_k C(n,k)^3 C(n+k,k) / n! (the f_{3,1} row)."""
    terms = [Fraction(sum(math.comb(n, k) ** 3 * math.comb(n + k, k)
                          for k in range(n + 1)), math.factorial(n))
             for n in range(120)]
    coeffs = reconstruct_rat(4, 10, terms, 80, "apery31")
    coeffs = trim_degree(coeffs)
    write_fixture("apery31", coeffs, {0: QQ(1), 1: QQ(3)}, "minimize",
                  meta={"sequence": "u_n = sum_k n!(n+k)!/(k!^4 (n-k)!^3)",
                        "series": "ordinary generating function of u_n"})
    return coeffs


def gen_fmp(m, p, order, degree, count, n_eqs, stretch=False):
    u = fmp_terms(m, p, count)
    terms = [Fraction(un, math.factorial(n)) for n, un in enumerate(u)]
    # clear to integers for the modular ansatz: scale row n by n!... simpler:
    # work with v_n = u_n / n! as exact rationals mod p via modular inverse
    label = f"fmp_{m}_{p}"
    coeffs = reconstruct_rat(order, degree, terms, n_eqs, label)
    coeffs = trim_degree(coeffs)
    initial = {}
    write_fixture(label, coeffs, initial, "minimize",
                  meta={"sequence":
                        f"a_n = (sum_k C(n,k)^{m} C(n+k,k)^{p}) / n!",
                        "series": "f_{m,p} exponential generating function",
                        "stretch": stretch})
    return coeffs


def reconstruct_rat(order, degree, terms, n_eqs, label):
    """Like reconstruct() but for rational terms (denominators invertible)."""
    t0 = time.time()
    residues = None
    modulus = None
    piv0 = None
    for prime in PRIMES:
        terms_mod = []
        for t in terms:
            den = t.denominator % prime
            terms_mod.append(t.numerator % prime * pow(den, -1, prime) % prime)
        vec, piv = guess_recurrence(terms_mod, order, degree, prime, n_eqs)
        if piv0 is None:
            piv0 = piv
        elif piv != piv0:
            raise RuntimeError("pivot position differs between primes")
        if residues is None:
            residues, modulus = vec, prime
        else:
            residues = [crt_pair(a, modulus, b, prime)[0]
                        for a, b in zip(residues, vec)]
            modulus *= prime
        rec = [rational_reconstruct(v, modulus) for v in residues]
        if all(r is not None for r in rec):
            den = 1
            for r in rec:
                den = den * int(r.denominator) // math.gcd(den, int(r.denominator))
            ints = [int(r * den) for r in rec]
            g = 0
            for v in ints:
                g = math.gcd(g, v)
            if g:
                ints = [v // g for v in ints]
            coeffs = [ints[j * (degree + 1):(j + 1) * (degree + 1)]
                      for j in range(order + 1)]
            if verify_rat(coeffs, terms, len(terms) - order):
                print(f"{label}: reconstructed with modulus of "
                      f"{modulus.bit_length()} bits in {time.time()-t0:.1f}s")
                return coeffs
    raise RuntimeError(f"{label}: reconstruction failed")


def verify_rat(coeffs, terms, n_check):
    for n in range(n_check):
        s = Fraction(0)
        for j, q in enumerate(coeffs):
            qn = 0
            for d in reversed(range(len(q))):
                qn = qn * n + q[d]
            if qn:
                s += qn * terms[n + j]
        if s != 0:
            return False
    return True


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--stretch", action="store_true",
                    help="also generate the large Table-1 stretch fixtures")
    args = ap.parse_args()
    gen_apery31()
    gen_fmp(2, 4, 5, 26, 230, 190)
    if args.stretch:
        gen_fmp(1, 5, 6, 32, 300, 250, stretch=True)
        gen_fmp(3, 4, 7, 51, 480, 430, stretch=True)


if __name__ == "__main__":
    main()
