#!/usr/bin/env python3
"""Generate poles and residues of the best (N,N) rational approximation to
exp(z) on the negative real axis, for even N, via the Caratheodory-Fejer
construction carried out in high-precision arithmetic.

Emits a C++ table (one {pole, residue} pair per line) covering the N/2
poles in the upper half-plane, ordered by increasing imaginary part.
Each table entry is verified by inverting known Laplace transform pairs.
"""
import sys
from mpmath import mp, mpf, mpc, exp, sqrt, pi, matrix

mp.dps = 120

K = 75        # Chebyshev series truncation
NF = 512      # sampling points on the unit circle
SCL = mpf(9)  # conformal scale factor


def cheb_coeffs():
    # F(w) = exp(scl*(t-1)/(t+1)), t = Re w, sampled at NF roots of unity
    ws = [exp(2j * pi * k / NF) for k in range(NF)]
    ts = [w.real for w in ws]
    F = []
    for t in ts:
        d = t + 1
        if d == 0:
            F.append(mpf(0))  # limit of exp(scl*(t-1)/(t+1)) as t->-1+ is 0
        else:
            F.append(exp(SCL * (t - 1) / d).real)
    # c_j = (1/NF) sum F_k w_k^{-j}, real part
    c = []
    for j in range(K + 1):
        acc = mpc(0)
        for k in range(NF):
            acc += F[k] * exp(-2j * pi * j * k / NF)
        c.append((acc / NF).real)
    return c, ws, F


def polyval(coeffs_desc, x):
    acc = mpc(0)
    for c in coeffs_desc:
        acc = acc * x + c
    return acc


def cf(n, c, ws):
    # Hankel matrix of c[1..K]
    H = mp.zeros(K, K)
    for i in range(K):
        for j in range(K):
            if i + j + 1 <= K:
                H[i, j] = c[i + j + 1]
    U, S, V = mp.svd_r(H)           # H = U * diag(S) * V
    s = S[n]
    u = [U[K - 1 - r, n] for r in range(K)]   # reversed column n
    v = [V[n, r] for r in range(K)]           # row n of V
    # f = analytic part, evaluated on the circle
    f = [polyval(list(reversed(c)), w) for w in ws]
    # Blaschke product b(w) = u(w)/v(w) with u,v as poly coeffs (ascending)
    def pval_asc(p, w):
        acc = mpc(0)
        for cc in reversed(p):
            acc = acc * w + cc
        return acc
    rt = [f[k] - s * ws[k] ** K * pval_asc(u, ws[k]) / pval_asc(v, ws[k])
          for k in range(NF)]
    # poles: roots of v (descending coefficients v[0]..v[K-1]) outside unit disk
    zr = mp.polyroots(v, maxsteps=200, extraprec=200)
    qk = [z for z in zr if abs(z) > 1]
    assert len(qk) == n, f"N={n}: found {len(qk)} poles outside unit disk"
    # denominator polynomial q(w) = prod (w - qk)
    qc = [mpc(1)]
    for q in qk:
        qc = [a - q * b for a, b in zip(qc + [mpc(0)], [mpc(0)] + qc)]
    pt = [rt[k] * polyval(qc, ws[k]) for k in range(NF)]
    # numerator Laurent coefficients (real)
    ptc = []
    for j in range(n + 1):
        acc = mpc(0)
        for k in range(NF):
            acc += pt[k] * exp(-2j * pi * j * k / NF)
        ptc.append((acc / NF).real)
    ptc_desc = list(reversed(ptc))  # degree n .. 0
    ck = []
    for i in range(n):
        q = qk[i]
        prod = mpc(1)
        for j2 in range(n):
            if j2 != i:
                prod *= (q - qk[j2])
        ck.append(polyval(ptc_desc, q) / prod)
    zk = [SCL * (q - 1) ** 2 / (q + 1) ** 2 for q in qk]
    ck = [4 * cki * zki / (q ** 2 - 1) for cki, zki, q in zip(ck, zk, qk)]
    return zk, ck


def verify(zk2, ck2):
    # half-plane inversion: f(t) = -(2/t) Re sum w_k F(z_k/t)
    def inv(F, t):
        acc = mpc(0)
        for z, w in zip(zk2, ck2):
            acc += w * F(z / t)
        return (-2 / t * acc).real
    errs = []
    for F, ex in [(lambda s: 1 / s, lambda t: mpf(1)),
                  (lambda s: 1 / s ** 2, lambda t: t),
                  (lambda s: 1 / (s + 1), lambda t: exp(-t))]:
        for t in (mpf('0.1'), mpf(1), mpf(10)):
            errs.append(abs(inv(F, t) - ex(t)))
    return max(errs)


def main():
    c, ws, _ = cheb_coeffs()
    print('// Generated by scripts/gen_cf_table.py -- do not edit by hand.')
    print('// Poles z_k and residues w_k (upper half-plane members of each')
    print('// conjugate pair) of the best (N,N) rational approximation to')
    print('// exp(z) on the negative real axis.')
    for n in range(2, 34, 2):
        zk, ck = cf(n, c, ws)
        pairs = [(z, w) for z, w in zip(zk, ck) if z.imag > 0]
        assert len(pairs) == n // 2, f"N={n}: {len(pairs)} upper poles"
        pairs.sort(key=lambda p: p[0].imag)
        err = verify([p[0] for p in pairs], [p[1] for p in pairs])
        sys.stderr.write(f"N={n}: selftest err {mp.nstr(err, 3)}\n")
        print(f'static const CFNode kCFTableN{n}[] = {{')
        for z, w in pairs:
            zr = mp.nstr(z.real, 18); zi = mp.nstr(z.imag, 18)
            wr = mp.nstr(w.real, 18); wi = mp.nstr(w.imag, 18)
            print(f'    {{{{{zr}, {zi}}}, {{{wr}, {wi}}}}},')
        print('};')


if __name__ == '__main__':
    main()
