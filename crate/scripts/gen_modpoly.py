#!/usr/bin/env python3
"""Regenerate the bundled classical modular polynomial tables (data/modpoly/).

The classical modular polynomial Phi_n(X, Y) is the symmetric integer
polynomial of degree psi(n) = n * prod_{p | n} (1 + 1/p) in each variable
that vanishes exactly on pairs (j(E), j(E')) of j-invariants of elliptic
curves linked by a cyclic n-isogeny.

Method (exact, no floating point):
  Phi_n(X, j(tau)) = prod_{(a,b,d)} (X - j((a*tau + b)/d))
  over integer triples a*d = n, 0 <= b < d, gcd(a, b, d) = 1.

  For a prime p = 1 (mod n), the n-th roots of unity live in F_p, so each
  factor j((a*tau+b)/d) = sum_k c_k zeta_d^{bk} q^{ak/d} becomes a plain
  Laurent series over F_p in u = q^{1/n}.  The product is expanded with
  exact window tracking, each X-coefficient is rewritten as a polynomial
  in the q-expansion of j by peeling off most-negative exponents, and the
  resulting matrix of coefficients mod p is CRT-combined across primes
  until it stabilises.  A fresh prime then re-derives the whole matrix and
  must agree with the reconstruction.

Checks performed per level:
  * every X-coefficient is supported on integer powers of q only
  * the remainder of the j-polynomial rewrite vanishes (with headroom)
  * leading coefficient of X^psi is exactly 1
  * the coefficient matrix is symmetric
  * CRT stabilisation plus an independent verification prime
  * for prime n: the Kronecker congruence
        Phi_n(X,Y) = (X^n - Y)(X - Y^n)  (mod n)
  * Phi_2 equals the classical textbook polynomial, and known CM
    evaluations vanish (e.g. Phi_2(0, 54000) = 0)

Output format (one file per level, phi_j_<n>.txt): lines "[i,k] c" with
i >= k, meaning c * X^i Y^k (+ c * X^k Y^i when i != k).  The leading
monomial X^psi + Y^psi (coefficient 1) is implied and omitted, zero
coefficients are omitted, and lines are sorted by (i, k).

Usage: python3 scripts/gen_modpoly.py [--levels 2..30] [--out data/modpoly]
"""

import argparse
import json
import math
import os
import sys
import time
from multiprocessing import Pool

import gmpy2
from gmpy2 import mpz

SLOT_BITS = 136  # fits p^2 * series_len for p < 2^59, len < 2^17

KNOWN_J = [1, 744, 196884, 21493760, 864299970, 20245856256]  # c_{-1}..c_4
KNOWN_TAU = [1, -24, 252, -1472, 4830, -6048, -16744]  # tau(1)..tau(7)

PHI2_CLASSICAL = {
    (3, 0): 1,
    (2, 2): -1,
    (2, 1): 1488,
    (2, 0): -162000,
    (1, 1): 40773375,
    (1, 0): 8748000000,
    (0, 0): -157464000000000,
}

# (level, j1, j2) pairs that must be roots: class-number-one CM points.
CM_ZERO_CHECKS = [
    (2, 0, 54000),
    (2, 1728, 287496),
    (2, -3375, -3375),
    (2, 8000, 8000),
    (3, 0, -12288000),
    (3, -32768, -32768),
    (5, -884736, -884736),
    (7, 0, 0),
    (11, -884736000, -884736000),
    (13, 0, 0),
    (17, -147197952000, -147197952000),
]


def prime_factors(n):
    fs = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            fs.append(d)
            while n % d == 0:
                n //= d
        d += 1
    if n > 1:
        fs.append(n)
    return fs


def psi(n):
    v = n
    for p in prime_factors(n):
        v = v // p * (p + 1)
    return v


def j_series(kmax):
    """Integer q-expansion coefficients c_{-1}..c_{kmax} of the j-function.

    j = E4^3 / Delta with E4 = 1 + 240 sum sigma_3(m) q^m and
    Delta = q * prod (1 - q^m)^24 (Euler product via pentagonal numbers).
    """
    nterms = kmax + 2  # series truncated at q^{nterms-1} relative to lead

    def mul(a, b):
        la = [mpz(x) for x in a]
        lb = [mpz(x) for x in b]
        # shift to non-negative for pack
        mina = min(la) if la else 0
        minb = min(lb) if lb else 0
        # pack requires non-negative entries; use straightforward big-shift trick
        # by splitting each list into positive and negative parts.
        ap = [x if x > 0 else mpz(0) for x in la]
        an = [-x if x < 0 else mpz(0) for x in la]
        bp = [x if x > 0 else mpz(0) for x in lb]
        bn = [-x if x < 0 else mpz(0) for x in lb]
        bits = max(x.bit_length() for x in ap + an + bp + bn + [mpz(1)])
        slot = 2 * bits + nterms.bit_length() + 2

        def conv(u, v):
            if all(x == 0 for x in u) or all(x == 0 for x in v):
                return [mpz(0)] * nterms
            r = gmpy2.unpack(gmpy2.pack(u, slot) * gmpy2.pack(v, slot), slot)
            r = list(r) + [mpz(0)] * nterms
            return r[:nterms]

        pp = conv(ap, bp)
        pn = conv(ap, bn)
        np_ = conv(an, bp)
        nn = conv(an, bn)
        return [(pp[i] + nn[i] - pn[i] - np_[i]) for i in range(nterms)]

    # Euler product
    euler = [mpz(0)] * nterms
    k = 0
    while True:
        e1 = k * (3 * k - 1) // 2
        e2 = k * (3 * k + 1) // 2
        if e1 >= nterms and e2 >= nterms and k > 0:
            break
        s = mpz(1) if k % 2 == 0 else mpz(-1)
        if e1 < nterms:
            euler[e1] += s
        if 0 < e2 < nterms:
            euler[e2] += s
        k += 1
    e2_ = mul(euler, euler)
    e4_ = mul(e2_, e2_)
    e8_ = mul(e4_, e4_)
    e16 = mul(e8_, e8_)
    delta_over_q = mul(e16, e8_)  # euler^24
    for i, want in enumerate(KNOWN_TAU):
        assert delta_over_q[i] == want, "tau self-check failed"

    sigma3 = [mpz(0)] * nterms
    for d in range(1, nterms):
        d3 = mpz(d) ** 3
        for m in range(d, nterms, d):
            sigma3[m] += d3
    e4 = [mpz(1)] + [240 * sigma3[m] for m in range(1, nterms)]
    e4c = mul(mul(e4, e4), e4)

    # invert delta_over_q (leading 1) by Newton iteration over Z
    inv = [mpz(1)]
    prec = 1
    while prec < nterms:
        prec = min(2 * prec, nterms)
        g = delta_over_q[:prec]
        # inv <- inv * (2 - g * inv) mod q^prec
        gi = mul(g + [mpz(0)] * (nterms - len(g)), inv + [mpz(0)] * (nterms - len(inv)))[:prec]
        two_minus = [2 - gi[0]] + [-x for x in gi[1:prec]]
        inv = mul(inv + [mpz(0)] * (nterms - len(inv)), two_minus + [mpz(0)] * (nterms - len(two_minus)))[:prec]
    jq = mul(e4c, inv + [mpz(0)] * (nterms - len(inv)))  # coefficients of q^{-1}..q^{kmax}
    for i, want in enumerate(KNOWN_J):
        assert jq[i] == want, "j-series self-check failed"
    return jq  # jq[k+1] = c_k


def conv_mod(va, vb, p, out_len):
    """Convolution of two (already reduced) coefficient lists mod p."""
    if not va or not vb:
        return [mpz(0)] * out_len
    r = gmpy2.unpack(gmpy2.pack(va, SLOT_BITS) * gmpy2.pack(vb, SLOT_BITS), SLOT_BITS)
    full = len(va) + len(vb) - 1
    r = list(r) + [mpz(0)] * max(0, full - len(r))
    return [x % p for x in r[:out_len]] + [mpz(0)] * max(0, out_len - full)


def root_triples(n):
    out = []
    for a in range(1, n + 1):
        if n % a:
            continue
        d = n // a
        g = math.gcd(a, d)
        for b in range(d):
            if math.gcd(g, b) == 1:
                out.append((a, b, d))
    return out


def find_omega(n, p):
    fs = prime_factors(n)
    x = 2
    while True:
        w = pow(x, (p - 1) // n, p)
        if w != 1 and all(pow(w, n // f, p) != 1 for f in fs):
            return mpz(w)
        x += 1


def phi_matrix_mod_p(n, ps, jq, p):
    """Full (psi+1)x(psi+1) coefficient matrix of Phi_n mod p."""
    head = 2 * n
    omega = find_omega(n, p)
    wpow = [pow(omega, e, p) for e in range(n)]
    triples = sorted(root_triples(n), key=lambda t: -t[0])
    total_m = sum(a * a for (a, _, _) in triples)
    assert total_m == n * ps

    cmod = [mpz(int(c) % p) for c in jq]  # cmod[k+1] = c_k mod p

    # poly[r] = (lo, vals) series coefficient of X^r, exponents in q^{1/n}
    poly = [(0, [mpz(1)])]
    cum, rem = 0, total_m

    def trunc(series, lo, hi):
        slo, v = series
        shi = slo + len(v) - 1
        a = max(slo, lo)
        b = min(shi, hi)
        if a > b:
            return (lo, [mpz(0)])
        out = v[a - slo:b - slo + 1]
        if a > lo:
            out = [mpz(0)] * (a - lo) + out
        return (lo, out)

    for (a, b, d) in triples:
        m = a * a
        cum += m
        rem -= m
        tlo, thi = -cum, rem + head
        # root series on window [-m, thi + (cum - m)]
        shi = thi + (cum - m)
        vals = [mpz(0)] * (shi + m + 1)
        k = -1
        while a * a * k <= shi:
            coef = (cmod[k + 1] * wpow[(a * b * k) % n]) % p
            vals[a * a * k + m] = coef
            k += 1
        s = (-m, vals)
        deg = len(poly) - 1
        newpoly = []
        for r in range(deg + 2):
            # new[r] = old[r-1] - s * old[r]
            if r <= deg:
                olo, ov = poly[r]
                prod_lo = olo - m
                out_len = thi - prod_lo + 1
                pv = conv_mod(vals, ov, p, out_len)
                term = (prod_lo, pv)
                term = trunc(term, tlo, thi)
            else:
                term = (tlo, [mpz(0)])
            if r >= 1:
                shifted = trunc(poly[r - 1], tlo, thi)
            else:
                shifted = (tlo, [mpz(0)])
            la = len(term[1])
            lb = len(shifted[1])
            ln = max(la, lb)
            out = [mpz(0)] * ln
            for i in range(ln):
                x = shifted[1][i] if i < lb else mpz(0)
                y = term[1][i] if i < la else mpz(0)
                out[i] = (x - y) % p
            newpoly.append((tlo, out))
        poly = newpoly
    assert rem == 0 and len(poly) == ps + 1

    # integer-exponent j-powers J[D], built with shrinking upper headroom so
    # that truncation never drops a contributing term: J[D] is exact on
    # [-D, 2 + (psi - D)], of which the peel below only uses exponents <= 2.
    jint_hi = ps + 2
    jint = [mpz(int(c) % p) for c in jq[:jint_hi + 2]]  # exps -1..jint_hi
    jwin = [(0, [mpz(1)] + [mpz(0)] * (2 + ps))]
    for dd in range(1, ps + 1):
        plo, pv = jwin[dd - 1]
        prod_lo = plo - 1
        out_len = (2 + ps - dd) - prod_lo + 1
        pvn = conv_mod(jint, pv, p, out_len)
        jwin.append((prod_lo, pvn))

    mat = [[mpz(0)] * (ps + 1) for _ in range(ps + 1)]
    for r in range(ps + 1):
        lo, v = poly[r]
        assert lo == -total_m
        # integer exponents only
        for e in range(len(v)):
            if (lo + e) % n != 0:
                assert v[e] == 0, f"non-integer exponent term at level {n}, X^{r}"
        comp = {}
        for e in range(len(v)):
            if (lo + e) % n == 0:
                comp[(lo + e) // n] = v[e]
        # peel off j-powers; only exponents <= head/n are tracked
        for dd in range(ps, -1, -1):
            u = comp.get(-dd, mpz(0)) % p
            if u:
                jlo, jv = jwin[dd]
                for i, c in enumerate(jv):
                    ee = jlo + i
                    if ee > 2:
                        break
                    comp[ee] = (comp.get(ee, mpz(0)) - u * c) % p
            mat[r][dd] = u
        for e, c in comp.items():
            assert c % p == 0, f"rewrite remainder nonzero at level {n}, X^{r}, q^{e}"
    # leading coefficient: X^psi is exactly 1
    assert mat[ps][0] == 1 and all(mat[ps][k] == 0 for k in range(1, ps + 1))
    # symmetry
    for i in range(ps + 1):
        for k in range(i):
            assert mat[i][k] == mat[k][i], f"asymmetry at level {n}: ({i},{k})"
    return mat


def prime_stream(n, skip=0):
    k = (1 << 59) // n
    seen = 0
    while k > 0:
        p = k * n + 1
        if gmpy2.is_prime(p):
            seen += 1
            if seen > skip:
                yield p
        k -= 1


def generate_level(args):
    n, outdir = args
    t0 = time.time()
    ps = psi(n)
    kmax = n * ps + 2 * n + 2
    jq = j_series(kmax)

    crt = None
    modulus = mpz(1)
    stable = 0
    used = []
    stream = prime_stream(n)
    for p in stream:
        mat = phi_matrix_mod_p(n, ps, jq, p)
        used.append(p)
        if crt is None:
            crt = [[mpz(x) if x <= p // 2 else mpz(x) - p for x in row] for row in mat]
            modulus = mpz(p)
            continue
        changed = False
        minv = gmpy2.invert(modulus % p, p)
        for i in range(ps + 1):
            for k in range(ps + 1):
                r = (mat[i][k] - crt[i][k]) % p
                t = (r * minv) % p
                if t > p // 2:
                    t -= p
                if t:
                    crt[i][k] += t * modulus
                    changed = True
        modulus *= p
        if changed:
            stable = 0
        else:
            stable += 1
            if stable >= 1:
                break

    # independent verification with a fresh prime
    vp = next(iter(prime_stream(n, skip=len(used))))
    vmat = phi_matrix_mod_p(n, ps, jq, vp)
    for i in range(ps + 1):
        for k in range(ps + 1):
            assert (crt[i][k] - vmat[i][k]) % vp == 0, f"verification prime mismatch at level {n}"

    # Kronecker congruence for prime levels
    if len(prime_factors(n)) == 1 and n == prime_factors(n)[0]:
        want = {}
        want[(n + 1, 0)] = 1  # from X^{n+1} ... wait, from expansion below
        # (X^n - Y)(X - Y^n) = X^{n+1} - X^n Y^n - X Y + Y^{n+1}
        want = {(n + 1, 0): 1, (n, n): -1, (1, 1): -1, (0, n + 1): 1}
        for i in range(ps + 1):
            for k in range(ps + 1):
                w = want.get((i, k), 0)
                assert (crt[i][k] - w) % n == 0, f"Kronecker congruence fails at level {n} ({i},{k})"

    if n == 2:
        got = {}
        for i in range(ps + 1):
            for k in range(i + 1):
                if crt[i][k]:
                    got[(i, k)] = int(crt[i][k])
        assert got == PHI2_CLASSICAL, f"Phi_2 mismatch: {got}"

    for (lvl, j1, j2) in CM_ZERO_CHECKS:
        if lvl != n:
            continue
        acc = 0
        for i in range(ps + 1):
            for k in range(ps + 1):
                acc += int(crt[i][k]) * j1 ** i * j2 ** k
        assert acc == 0, f"CM zero check failed: Phi_{n}({j1},{j2}) = {acc}"

    path = os.path.join(outdir, f"phi_j_{n}.txt")
    maxc = 0
    lines = []
    for i in range(ps + 1):
        for k in range(i + 1):
            if (i, k) == (ps, 0):
                continue  # implied leading term
            c = crt[i][k]
            if c:
                lines.append(f"[{i},{k}] {c}")
                maxc = max(maxc, len(str(abs(c))))
    with open(path, "w") as f:
        f.write("\n".join(lines) + "\n")
    dt = time.time() - t0
    return {
        "level": n,
        "psi": ps,
        "primes_used": len(used) + 1,
        "stored_monomials": len(lines),
        "max_coeff_digits": maxc,
        "seconds": round(dt, 1),
    }


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--levels", default="2..30")
    ap.add_argument("--out", default="data/modpoly")
    ap.add_argument("--jobs", type=int, default=os.cpu_count())
    args = ap.parse_args()
    lo, hi = args.levels.split("..")
    levels = list(range(int(lo), int(hi) + 1))
    os.makedirs(args.out, exist_ok=True)
    # do the big levels first so the pool stays busy
    levels.sort(key=lambda n: -(n * psi(n)))
    work = [(n, args.out) for n in levels]
    results = []
    with Pool(args.jobs) as pool:
        for res in pool.imap_unordered(generate_level, work):
            results.append(res)
            print(json.dumps(res), flush=True)
    results.sort(key=lambda r: r["level"])
    with open(os.path.join(args.out, "manifest.json"), "w") as f:
        json.dump(results, f, indent=1)
    print("all levels done", flush=True)


if __name__ == "__main__":
    main()
