"""Prime pools and Chinese-remainder reconstruction of exact coefficients.

Partition polynomials are computed independently modulo several 30-bit
primes; exact non-negative integer coefficients are recovered by CRT.  The
prime count is chosen adaptively: once adding one more prime leaves every
reconstructed coefficient unchanged, the reconstruction is accepted.
"""

from dataclasses import dataclass

import numpy as np

from .transfer import (ExactPolynomial, ModPolynomial, partition_cylindrical,
                       partition_toroidal, _map_indexed)

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_probable_prime(n):
    """Miller-Rabin; deterministic for anything below 3.3e24."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_pool(count, below=2**30):
    """The `count` largest primes below the given bound, descending."""
    out = []
    n = below - 1
    while len(out) < count:
        if is_probable_prime(n):
            out.append(n)
        n -= 2 if n % 2 else 1
    return out


def crt_pair(r1, m1, r2, m2):
    """Combine x=r1 (mod m1), x=r2 (mod m2) into x mod m1*m2."""
    inv = pow(m1, -1, m2)
    return (r1 + m1 * ((r2 - r1) * inv % m2)) % (m1 * m2)


def crt_reconstruct(residues):
    """Exact non-negative coefficients from ModPolynomials over distinct primes.

    Raises ValueError on duplicate primes or on inconsistent residue lengths.
    """
    if not residues:
        raise ValueError("need at least one residue polynomial")
    primes = [r.prime for r in residues]
    if len(set(primes)) != len(primes):
        raise ValueError("primes must be pairwise distinct")
    n = len(residues[0].coeffs)
    if any(len(r.coeffs) != n for r in residues):
        raise ValueError("residue polynomials have mismatched lengths")
    coeffs = [int(c) for c in residues[0].coeffs]
    mod = residues[0].prime
    for r in residues[1:]:
        coeffs = [crt_pair(c, mod, int(v), r.prime)
                  for c, v in zip(coeffs, r.coeffs)]
        mod *= r.prime
    return ExactPolynomial(coeffs)


@dataclass
class ReconstructionReport:
    polynomial: ExactPolynomial
    primes: list
    stable: bool


def reconstruct_partition(lh, lv, boundary, primes="auto", threads=None,
                          batch=3, max_primes=120):
    """Exact partition polynomial via per-prime runs plus CRT.

    primes="auto" grows the prime set until one extra prime changes nothing;
    an integer fixes the count (the stability check is then skipped only if
    the count is 1).
    """
    if boundary == "cylindrical":
        runner = lambda p: partition_cylindrical(lh, lv, p)
    elif boundary == "toroidal":
        runner = lambda p: partition_toroidal(lh, lv, p, threads=threads)
    else:
        raise ValueError(f"unknown boundary {boundary!r}")

    if primes == "auto":
        want = max(batch, 2)
        pool = prime_pool(want)
        residues = _map_indexed(lambda i: runner(pool[i]), want, threads)
        while True:
            ref = crt_reconstruct(residues[:-1])
            full = crt_reconstruct(residues)
            if ref.coeffs == full.coeffs:
                return ReconstructionReport(full, pool[:len(residues)], True)
            if len(residues) >= max_primes:
                raise RuntimeError("prime pool exhausted before stability")
            grow = min(batch, max_primes - len(residues))
            pool = prime_pool(len(residues) + grow)
            new = pool[len(residues):]
            residues += _map_indexed(lambda i: runner(new[i]), len(new), threads)
    else:
        count = int(primes)
        pool = prime_pool(count)
        residues = _map_indexed(lambda i: runner(pool[i]), count, threads)
        poly = crt_reconstruct(residues)
        return ReconstructionReport(poly, pool, count == 1)
