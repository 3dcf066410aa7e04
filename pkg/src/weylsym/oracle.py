"""Floating-point cross-check: realize q and p as truncated oscillator matrices.

A word of ``d`` ladder-operator factors only touches basis states up to
``d`` levels away, so the top-left ``(N - d) x (N - d)`` block of a
degree-``d`` polynomial is free of truncation error.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .algebra import OperatorPoly
from .errors import EngineError

__all__ = ["MatrixRep", "ladder", "position", "momentum", "represent", "CompareReport", "compare"]


@dataclass(frozen=True, eq=False)
class MatrixRep:
    dim: int
    hbar: float
    matrix: np.ndarray

    def block(self, size: int) -> np.ndarray:
        return self.matrix[:size, :size]

    def is_hermitian(self, size: int | None = None, tol: float = 1e-10) -> bool:
        b = self.matrix if size is None else self.block(size)
        return bool(np.max(np.abs(b - b.conj().T), initial=0.0) < tol)


def ladder(dim: int) -> np.ndarray:
    """Lowering operator ``a`` with ``sqrt(j+1)`` on the superdiagonal."""
    return np.diag(np.sqrt(np.arange(1, dim, dtype=float)), k=1).astype(complex)


@lru_cache(maxsize=64)
def _qp(dim: int, hbar: float):
    a = ladder(dim)
    ad = a.conj().T
    s = np.sqrt(hbar / 2)
    qm = s * (a + ad)
    pm = 1j * s * (ad - a)
    qm.setflags(write=False)
    pm.setflags(write=False)
    return qm, pm


def position(dim: int, hbar: float = 1.0) -> np.ndarray:
    return _qp(dim, float(hbar))[0].copy()


def momentum(dim: int, hbar: float = 1.0) -> np.ndarray:
    return _qp(dim, float(hbar))[1].copy()


def represent(A: OperatorPoly, dim: int, hbar: float = 1.0) -> MatrixRep:
    """Evaluate ``A`` with q, p as oscillator matrices and ``h = -i*hbar``."""
    if not A.is_atom_free:
        raise EngineError("cannot represent atoms as matrices")
    if dim < 1 or hbar <= 0:
        raise EngineError("dim must be positive and hbar strictly positive")
    if dim < A.degree:
        raise EngineError("truncation too small")
    qm, pm = _qp(dim, float(hbar))
    eye = np.eye(dim, dtype=complex)
    hval = -1j * hbar
    total = np.zeros((dim, dim), dtype=complex)
    for t in A:
        mat = eye
        for g in t.word:
            mat = mat @ (qm if g.kind == "Q" else pm)
        total += complex(t.coeff) * hval ** t.h_exp * mat
    return MatrixRep(dim, float(hbar), total)


@dataclass(frozen=True)
class CompareReport:
    max_abs_diff: float
    safe_dim: int


def compare(A: OperatorPoly, B: OperatorPoly, dim: int, hbar: float = 1.0) -> CompareReport:
    """Largest entrywise difference of the two representations on the safe block."""
    d = max(A.degree, B.degree)
    if dim <= d:
        raise EngineError(f"dim must exceed the polynomial degree {d}")
    safe = dim - d
    diff = represent(A, dim, hbar).block(safe) - represent(B, dim, hbar).block(safe)
    return CompareReport(float(np.max(np.abs(diff), initial=0.0)), safe)
