"""Exact characteristic polynomials and generalized spectra.

Everything here works over the integers: ``charpoly`` uses Berkowitz's
division-free algorithm, so equal polynomials mean equal spectra with no
tolerance policy involved.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from math import comb
from typing import Sequence

import numpy as np

from .errors import OrderMismatch
from .graph import Graph, complement


class SpectrumKind(enum.Enum):
    ADJACENCY = "adjacency"
    SIGNLESS_LAPLACIAN = "q"

    @classmethod
    def parse(cls, text: str) -> "SpectrumKind":
        text = text.lower()
        if text in ("a", "adj", "adjacency"):
            return cls.ADJACENCY
        if text in ("q", "signless", "signless_laplacian"):
            return cls.SIGNLESS_LAPLACIAN
        raise ValueError(f"unknown spectrum kind {text!r}")


@dataclass(frozen=True)
class IntPolynomial:
    """Monic integer polynomial, coefficients from leading to constant."""

    coeffs: tuple[int, ...]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __str__(self):
        return " ".join(str(c) for c in (self.degree, *self.coeffs))

    @classmethod
    def parse(cls, text: str) -> "IntPolynomial":
        parts = [int(t) for t in text.split()]
        if len(parts) != parts[0] + 2:
            raise ValueError("degree does not match coefficient count")
        return cls(tuple(parts[1:]))

    def __mul__(self, other: "IntPolynomial") -> "IntPolynomial":
        return IntPolynomial(tuple(poly_mul(self.coeffs, other.coeffs)))

    def __call__(self, x):
        acc = 0
        for c in self.coeffs:
            acc = acc * x + c
        return acc

    def power_sums(self) -> list[int]:
        """Newton power sums s_1..s_n of the roots (``s_k = trace(M^k)``)."""
        n, c = self.degree, self.coeffs
        s: list[int] = []
        for k in range(1, n + 1):
            s.append(-k * c[k] - sum(c[i] * s[k - i - 1] for i in range(1, k)))
        return s


@dataclass(frozen=True)
class GenSpectrum:
    kind: SpectrumKind
    p: IntPolynomial
    pc: IntPolynomial

    def swapped(self) -> "GenSpectrum":
        return GenSpectrum(self.kind, self.pc, self.p)


def poly_mul(a: Sequence[int], b: Sequence[int]) -> list[int]:
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _berkowitz(a: Sequence[Sequence[int]]) -> list[int]:
    n = len(a)
    p = [1]
    for r in range(n):
        row = a[r][:r]
        v = [a[i][r] for i in range(r)]
        t = [1, -a[r][r]]
        for _ in range(r):
            t.append(-sum(x * y for x, y in zip(row, v)))
            v = [sum(a[i][j] * v[j] for j in range(r)) for i in range(r)]
        p = [sum(t[i - j] * p[j] for j in range(max(0, i - len(t) + 1), min(i, r) + 1))
             for i in range(r + 2)]
    return p


def charpoly(m) -> IntPolynomial:
    """Exact ``det(xI - M)`` of a square integer matrix."""
    a = [[int(x) for x in row] for row in np.asarray(m).tolist()]
    if any(len(row) != len(a) for row in a):
        raise ValueError("matrix must be square")
    return IntPolynomial(tuple(_berkowitz(a)))


def _int64_safe(mats: np.ndarray) -> bool:
    n = mats.shape[1]
    s = int(np.abs(mats).sum(axis=2).max()) if mats.size else 0
    # |intermediates| <= 2^n s^(n+1) for Berkowitz on a matrix of max row sum s
    return (2 * max(s, 1)) ** (n + 1) < 2**62


def charpoly_batch(mats) -> np.ndarray:
    """Berkowitz over a stack of ``(B, n, n)`` integer matrices.

    Returns a ``(B, n+1)`` array of coefficients, leading first.  Uses int64
    when a magnitude bound proves it cannot overflow, Python ints otherwise.
    """
    mats = np.asarray(mats)
    nb, n, _ = mats.shape
    dtype = np.int64 if _int64_safe(mats) else object
    a = mats.astype(dtype)
    p = np.ones((nb, 1), dtype=dtype)
    for r in range(n):
        row = a[:, r, :r]
        sub = a[:, :r, :r]
        v = a[:, :r, r]
        t = np.zeros((nb, r + 2), dtype=dtype)
        t[:, 0] = 1
        t[:, 1] = -a[:, r, r]
        for k in range(r):
            t[:, k + 2] = -(row * v).sum(axis=1)
            v = (sub @ v[:, :, None])[:, :, 0]
        newp = np.zeros((nb, r + 2), dtype=dtype)
        for i in range(r + 2):
            for j in range(max(0, i - r - 1), min(i, r) + 1):
                newp[:, i] += t[:, i - j] * p[:, j]
        p = newp
    return p


def spectral_matrix(g: Graph, kind: SpectrumKind = SpectrumKind.ADJACENCY) -> np.ndarray:
    a = g.adjacency_matrix()
    if kind is SpectrumKind.SIGNLESS_LAPLACIAN:
        a = a + np.diag(a.sum(axis=1))
    return a


def gen_spectrum(g: Graph, kind: SpectrumKind = SpectrumKind.ADJACENCY) -> GenSpectrum:
    return GenSpectrum(kind, charpoly(spectral_matrix(g, kind)),
                       charpoly(spectral_matrix(complement(g), kind)))


def is_generalized_cospectral(g: Graph, h: Graph, kind: SpectrumKind = SpectrumKind.ADJACENCY) -> bool:
    if g.order != h.order:
        raise OrderMismatch(f"orders differ: {g.order} vs {h.order}")
    return gen_spectrum(g, kind) == gen_spectrum(h, kind)


def fingerprint(gs: GenSpectrum) -> bytes:
    """Injective byte key of a generalized spectrum."""
    return f"{gs.kind.value}|{gs.p}|{gs.pc}".encode()


# cotree route -------------------------------------------------------------
# Polynomials below are ascending coefficient lists.  For a join X v Y of
# orders a, b (Cvetkovic's identity):
#   p(XvY)(x) = (-1)^b pX(x) pcY(-x-1) + (-1)^a pY(x) pcX(-x-1)
#               - (-1)^(a+b) pcX(-x-1) pcY(-x-1)
# and p of the complement of a join is the product of the complements.

def shift_neg(c: Sequence[int]) -> list[int]:
    """Coefficients of q(x) = c(-x-1), ascending."""
    out = [0] * len(c)
    for i, ci in enumerate(c):
        if ci:
            sign = -ci if i % 2 else ci
            for j in range(i + 1):
                out[j] += sign * comb(i, j)
    return out


def _padd(*terms):
    size = max(len(t) for t in terms)
    out = [0] * size
    for t in terms:
        for i, c in enumerate(t):
            out[i] += c
    return out


def _pscale(c, s):
    return [s * x for x in c]


def join_pair(x: tuple, y: tuple) -> tuple:
    """(order, p, pc) of X v Y from the same data for X and Y (ascending coefficients)."""
    a, px, pcx = x
    b, py, pcy = y
    pcx_s, pcy_s = shift_neg(pcx), shift_neg(pcy)
    p = _padd(_pscale(poly_mul(px, pcy_s), (-1) ** b),
              _pscale(poly_mul(py, pcx_s), (-1) ** a),
              _pscale(poly_mul(pcx_s, pcy_s), -((-1) ** (a + b))))
    return a + b, p, poly_mul(pcx, pcy)


def union_pair(x: tuple, y: tuple) -> tuple:
    n, pc, p = join_pair((x[0], x[2], x[1]), (y[0], y[2], y[1]))
    return n, p, pc
