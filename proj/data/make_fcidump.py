#!/usr/bin/env python3
# Copyright 2026 The rdmkit Authors
# SPDX-License-Identifier: Apache-2.0
"""One-shot generator for the bundled FCIDUMP files.

Hydrogen-only STO-3G integrals from the closed-form s-orbital Gaussian
formulas (overlap/kinetic/nuclear/ERI with the Boys F0 function), an RHF
step to get molecular orbitals (Löwdin orthogonalization fallback when the
geometry makes canonical RHF ill-conditioned, e.g. the H4 square), and a
chemist-notation FCIDUMP writer.  A dense FCI check validates each file
before it is written.

Outputs are committed; rerunning regenerates them bit-identically.

    python3 make_fcidump.py [outdir]
"""

import math
import sys
import itertools
from pathlib import Path

import numpy as np
from scipy.special import erf

ANGSTROM_TO_BOHR = 1.8897261254578281

# STO-3G hydrogen 1s: exponents and contraction coefficients (zeta = 1.24 scaling baked in).
STO3G_H_ALPHA = np.array([3.425250914, 0.6239137298, 0.1688554040])
STO3G_H_COEF = np.array([0.1543289673, 0.5353281423, 0.4446345422])


def boys_f0(x):
    if x < 1e-12:
        return 1.0 - x / 3.0
    return 0.5 * math.sqrt(math.pi / x) * erf(math.sqrt(x))


def prim_norm(a):
    return (2.0 * a / math.pi) ** 0.75


def overlap_prim(a, ra, b, rb):
    p = a + b
    ab2 = float(np.dot(ra - rb, ra - rb))
    return (math.pi / p) ** 1.5 * math.exp(-a * b / p * ab2)


def kinetic_prim(a, ra, b, rb):
    p = a + b
    ab2 = float(np.dot(ra - rb, ra - rb))
    mu = a * b / p
    return mu * (3.0 - 2.0 * mu * ab2) * (math.pi / p) ** 1.5 * math.exp(-mu * ab2)


def nuclear_prim(a, ra, b, rb, rc):
    p = a + b
    ab2 = float(np.dot(ra - rb, ra - rb))
    rp = (a * ra + b * rb) / p
    pc2 = float(np.dot(rp - rc, rp - rc))
    return -2.0 * math.pi / p * math.exp(-a * b / p * ab2) * boys_f0(p * pc2)


def eri_prim(a, ra, b, rb, c, rc, d, rd):
    p = a + b
    q = c + d
    ab2 = float(np.dot(ra - rb, ra - rb))
    cd2 = float(np.dot(rc - rd, rc - rd))
    rp = (a * ra + b * rb) / p
    rq = (c * rc + d * rd) / q
    pq2 = float(np.dot(rp - rq, rp - rq))
    pref = 2.0 * math.pi ** 2.5 / (p * q * math.sqrt(p + q))
    return pref * math.exp(-a * b / p * ab2 - c * d / q * cd2) * boys_f0(p * q / (p + q) * pq2)


class Molecule:
    def __init__(self, coords_angstrom):
        self.centers = [np.array(r, dtype=float) * ANGSTROM_TO_BOHR for r in coords_angstrom]
        self.nbf = len(self.centers)

    def integrals(self):
        n = self.nbf
        alphas, coefs = STO3G_H_ALPHA, STO3G_H_COEF
        norms = np.array([prim_norm(a) for a in alphas])
        cn = coefs * norms

        S = np.zeros((n, n))
        T = np.zeros((n, n))
        V = np.zeros((n, n))
        for i, j in itertools.product(range(n), repeat=2):
            ri, rj = self.centers[i], self.centers[j]
            for (a, ca), (b, cb) in itertools.product(zip(alphas, cn), repeat=2):
                w = ca * cb
                S[i, j] += w * overlap_prim(a, ri, b, rj)
                T[i, j] += w * kinetic_prim(a, ri, b, rj)
                for rc in self.centers:
                    V[i, j] += w * nuclear_prim(a, ri, b, rj, rc)

        eri = np.zeros((n, n, n, n))  # chemist (ij|kl)
        for i, j, k, l in itertools.product(range(n), repeat=4):
            if eri[i, j, k, l] != 0.0:
                continue
            ri, rj, rk, rl = (self.centers[t] for t in (i, j, k, l))
            val = 0.0
            for (a, ca), (b, cb), (c, cc), (d, cd) in itertools.product(zip(alphas, cn), repeat=4):
                val += ca * cb * cc * cd * eri_prim(a, ri, b, rj, c, rk, d, rl)
            for p, q, r, s in ((i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                               (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i)):
                eri[p, q, r, s] = val

        e_nuc = 0.0
        for i in range(n):
            for j in range(i + 1, n):
                e_nuc += 1.0 / float(np.linalg.norm(self.centers[i] - self.centers[j]))
        return S, T, V, eri, e_nuc


def lowdin(S):
    w, U = np.linalg.eigh(S)
    return U @ np.diag(w ** -0.5) @ U.T


def rhf(S, H, eri, nelec, max_iter=200, tol=1e-12):
    """Closed-shell RHF; returns MO coefficients or None if it refuses to settle."""
    X = lowdin(S)
    nocc = nelec // 2
    F = H.copy()
    e_old, C = None, None
    for _ in range(max_iter):
        Fp = X.T @ F @ X
        eps, Cp = np.linalg.eigh(Fp)
        C = X @ Cp
        Cocc = C[:, :nocc]
        D = 2.0 * Cocc @ Cocc.T
        J = np.einsum("ijkl,kl->ij", eri, D)
        K = np.einsum("ikjl,kl->ij", eri, D)
        F = H + J - 0.5 * K
        e = 0.5 * float(np.sum(D * (H + F)))
        if e_old is not None and abs(e - e_old) < tol:
            # HOMO-LUMO degeneracy makes the occupied space arbitrary; caller falls back.
            if nocc < len(eps) and abs(eps[nocc] - eps[nocc - 1]) < 1e-8:
                return None
            return C
        e_old = e
    return None


def mo_transform(H, eri, C):
    h_mo = C.T @ H @ C
    tmp = np.einsum("pi,pqrs->iqrs", C, eri)
    tmp = np.einsum("qj,iqrs->ijrs", C, tmp)
    tmp = np.einsum("rk,ijrs->ijks", C, tmp)
    eri_mo = np.einsum("sl,ijks->ijkl", C, tmp)
    return h_mo, eri_mo


def fci_energy(h_mo, eri_mo, e_nuc, nelec):
    """Dense FCI over Sz = 0 determinants; spin orbital 2p+sigma, JW-free direct signs."""
    norb = h_mo.shape[0]
    nso = 2 * norb
    dets = [d for d in range(1 << nso)
            if bin(d).count("1") == nelec
            and bin(d & 0x5555555555555555).count("1") == nelec - nelec // 2]
    index = {d: i for i, d in enumerate(dets)}
    dim = len(dets)
    Hm = np.zeros((dim, dim))

    def apply_ann(det, p):
        if not (det >> p) & 1:
            return None
        sign = (-1) ** bin(det & ((1 << p) - 1)).count("1")
        return det ^ (1 << p), sign

    def apply_cre(det, p):
        if (det >> p) & 1:
            return None
        sign = (-1) ** bin(det & ((1 << p) - 1)).count("1")
        return det | (1 << p), sign

    # one-body: sum_pq h_pq a†_p a_q over same-spin spin orbitals
    for d in dets:
        col = index[d]
        for q in range(nso):
            r1 = apply_ann(d, q)
            if r1 is None:
                continue
            d1, s1 = r1
            for p in range(q % 2, nso, 2):
                r2 = apply_cre(d1, p)
                if r2 is None:
                    continue
                d2, s2 = r2
                Hm[index[d2], col] += s1 * s2 * h_mo[p // 2, q // 2]
    # two-body: 1/2 sum ⟨pq|rs⟩ a†_p a†_q a_s a_r, ⟨pq|rs⟩ = chemist (pr|qs);
    # rightmost operator acts first: a_r, a_s, a†_q, a†_p.
    for d in dets:
        col = index[d]
        for r in range(nso):
            r1 = apply_ann(d, r)
            if r1 is None:
                continue
            d1, s1 = r1
            for s in range(nso):
                r2 = apply_ann(d1, s)
                if r2 is None:
                    continue
                d2, s2 = r2
                for q in range(s % 2, nso, 2):
                    r3 = apply_cre(d2, q)
                    if r3 is None:
                        continue
                    d3, s3 = r3
                    for p in range(r % 2, nso, 2):
                        r4 = apply_cre(d3, p)
                        if r4 is None:
                            continue
                        d4, s4 = r4
                        v = eri_mo[p // 2, r // 2, q // 2, s // 2]
                        Hm[index[d4], col] += 0.5 * s1 * s2 * s3 * s4 * v
    return float(np.linalg.eigvalsh(Hm)[0]) + e_nuc


def write_fcidump(path, h_mo, eri_mo, e_nuc, nelec, ms2=0, thresh=1e-14):
    norb = h_mo.shape[0]
    lines = [f"&FCI NORB={norb},NELEC={nelec},MS2={ms2},",
             " ORBSYM=" + "1," * norb,
             " ISYM=1,",
             "&END"]
    seen = set()
    for i, j, k, l in itertools.product(range(norb), repeat=4):
        if abs(eri_mo[i, j, k, l]) < thresh:
            continue
        key = min((i, j, k, l), (j, i, k, l), (i, j, l, k), (j, i, l, k),
                  (k, l, i, j), (l, k, i, j), (k, l, j, i), (l, k, j, i))
        if key in seen:
            continue
        seen.add(key)
        a, b, c, d = key
        lines.append(f"{eri_mo[a, b, c, d]:23.16E} {a+1:3d} {b+1:3d} {c+1:3d} {d+1:3d}")
    for i in range(norb):
        for j in range(i + 1):
            if abs(h_mo[i, j]) >= thresh:
                lines.append(f"{h_mo[i, j]:23.16E} {i+1:3d} {j+1:3d}   0   0")
    lines.append(f"{e_nuc:23.16E}   0   0   0   0")
    Path(path).write_text("\n".join(lines) + "\n")


def build(path, coords, nelec, label):
    mol = Molecule(coords)
    S, T, V, eri, e_nuc = mol.integrals()
    Hcore = T + V
    C = rhf(S, Hcore, eri, nelec)
    basis = "RHF"
    if C is None:
        C = lowdin(S)
        basis = "Lowdin"
    h_mo, eri_mo = mo_transform(Hcore, eri, C)
    e_fci = fci_energy(h_mo, eri_mo, e_nuc, nelec)
    write_fcidump(path, h_mo, eri_mo, e_nuc, nelec)
    print(f"{label:28s} orbitals={basis:6s} E_FCI = {e_fci:+.10f} Ha -> {path}")
    return e_fci


def h2(r):
    return [(0.0, 0.0, 0.0), (0.0, 0.0, r)]


def h4_chain(r):
    return [(0.0, 0.0, i * r) for i in range(4)]


def h4_ring(r):
    # square with side r
    h = r / math.sqrt(2.0)
    return [(h, 0.0, 0.0), (0.0, h, 0.0), (-h, 0.0, 0.0), (0.0, -h, 0.0)]


def main():
    outdir = Path(sys.argv[1]) if len(sys.argv) > 1 else Path(__file__).parent
    outdir.mkdir(parents=True, exist_ok=True)

    grid = [0.3, 0.5, 0.7, 0.9, 1.1, 1.4, 1.7, 2.0, 2.5, 3.0]
    for r in grid:
        build(outdir / f"h2_sto3g_{r:.4f}.fcidump", h2(r), 2, f"H2 @ {r:.4f} A")
    build(outdir / "h2_sto3g_0.7500.fcidump", h2(0.75), 2, "H2 @ 0.7500 A")
    e_ref = build(outdir / "h2_sto3g_0.7414.fcidump", h2(0.7414), 2, "H2 @ 0.7414 A")
    # Textbook H2/STO-3G FCI minimum; guards the whole integral stack.
    assert abs(e_ref - (-1.137)) < 2e-3, f"H2 FCI sanity check failed: {e_ref}"

    for r in (0.75, 0.7414):
        build(outdir / f"h4_chain_sto3g_{r:.4f}.fcidump", h4_chain(r), 4, f"H4 chain @ {r:.4f} A")
        build(outdir / f"h4_ring_sto3g_{r:.4f}.fcidump", h4_ring(r), 4, f"H4 ring @ {r:.4f} A")


if __name__ == "__main__":
    main()
