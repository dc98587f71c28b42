"""Construction of the unitary class fixed by a mode-permutation symmetry.

Any eigenbasis A of the permutation operator, bracketed by diagonal phase
matrices, U = Theta A Sigma, satisfies P U = Z U D with Z collecting the
input phases. The eigenbasis freedom is exposed in two controlled ways:
Haar-random rotations inside each degenerate eigenspace (seeded) and an
explicit column reordering carried out in lockstep with the eigenvalue
diagonal. The DFT matrix is the closed-form member of this class for cyclic
mode shifts.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .linalg import STRUCT_TOL, haar_random_unitary, is_unitary
from .permutations import (
    EigenStructure,
    Permutation,
    RootOfUnity,
    eigenstructure,
    symmetry_residual,
)


class SymmetryError(RuntimeError):
    """A constructed object failed one of its structural invariants."""


@dataclass(frozen=True)
class UnitarySpec:
    """Recipe for one member of the symmetry class of a permutation.

    ``theta_phases``/``sigma_phases`` are the n phase angles of the input and
    output diagonal matrices (defaults: all zero). ``rotation_seed`` switches
    on Haar rotations of the degenerate eigenspaces. ``column_order`` lists,
    1-based, which canonical column lands at each position.
    """

    permutation: Permutation
    theta_phases: tuple[float, ...] | None = None
    sigma_phases: tuple[float, ...] | None = None
    rotation_seed: int | None = None
    column_order: tuple[int, ...] | None = None

    def phases(self, which: str) -> np.ndarray:
        raw = self.theta_phases if which == "theta" else self.sigma_phases
        if raw is None:
            return np.zeros(self.permutation.n)
        arr = np.asarray(raw, dtype=float)
        if arr.shape != (self.permutation.n,):
            raise ValueError(f"{which} phase list must have length {self.permutation.n}")
        return arr


@dataclass(frozen=True)
class ConstructedUnitary:
    """A concrete unitary of the class, with the eigenvalue of each column."""

    matrix: np.ndarray
    eigenvalues: tuple[RootOfUnity, ...]
    spec: UnitarySpec = field(repr=False)

    @property
    def n(self) -> int:
        return self.matrix.shape[0]


def _degenerate_groups(eigenvalues) -> list[list[int]]:
    groups: dict[RootOfUnity, list[int]] = {}
    for idx, value in enumerate(eigenvalues):
        groups.setdefault(value, []).append(idx)
    return list(groups.values())


def build_unitary(spec: UnitarySpec) -> ConstructedUnitary:
    """Materialise U = Theta A Sigma for the given spec.

    Degenerate blocks are located by exact eigenvalue equality, never by
    float binning, and each block is rotated as a whole so every column keeps
    its eigenvalue. The returned object is checked against both invariants
    (unitarity and the mode-exchange relation) before it leaves.
    """
    p = spec.permutation
    structure: EigenStructure = eigenstructure(p)
    basis = structure.eigenvectors.copy()
    values = list(structure.eigenvalues)

    if spec.rotation_seed is not None:
        rng = np.random.default_rng(spec.rotation_seed)
        for cols in _degenerate_groups(values):
            block = haar_random_unitary(len(cols), rng)
            basis[:, cols] = basis[:, cols] @ block

    if spec.column_order is not None:
        order = [c - 1 for c in spec.column_order]
        if sorted(order) != list(range(p.n)):
            raise ValueError(f"column_order is not a permutation of 1..{p.n}")
        basis = basis[:, order]
        values = [values[c] for c in order]

    theta = np.exp(1j * spec.phases("theta"))
    sigma = np.exp(1j * spec.phases("sigma"))
    matrix = theta[:, None] * basis * sigma[None, :]

    if not is_unitary(matrix, STRUCT_TOL):
        raise SymmetryError("constructed matrix failed the unitarity check")
    residual = symmetry_residual(p, matrix, theta, values)
    if residual > STRUCT_TOL:
        raise SymmetryError(f"mode-exchange residual {residual} exceeds {STRUCT_TOL}")
    return ConstructedUnitary(matrix, tuple(values), spec)


def eigenvalue_sorted_order(eigenvalues) -> tuple[int, ...]:
    """1-based column order that sorts columns by ascending phase fraction.

    Stable, so columns sharing an eigenvalue keep their relative order.
    """
    return tuple(
        idx + 1 for idx in sorted(range(len(eigenvalues)), key=lambda i: eigenvalues[i])
    )


def fourier_unitary(n: int) -> np.ndarray:
    """DFT matrix U_jk = exp(i*2*pi*(j-1)*(k-1)/n)/sqrt(n)."""
    if n < 1:
        raise ValueError("need at least one mode")
    idx = np.arange(n)
    return np.exp(2j * np.pi * np.outer(idx, idx) / n) / np.sqrt(n)


def fourier_symmetry(n: int, m: int) -> tuple[Permutation, tuple[RootOfUnity, ...]]:
    """Cyclic-shift symmetry of the n-mode DFT for each divisor m >= 2.

    The shift by n/m has order m; column k of the DFT is its eigenvector with
    eigenvalue exp(i*2*pi*(k-1)/m). The entrywise relation
    U[pi(j), k] = U[j, k] * lambda_k is verified here (the phase matrix Z is
    the identity for this family) before the pair is returned.
    """
    if m < 2:
        raise ValueError("symmetry order must be at least 2")
    if n % m != 0:
        raise ValueError(f"{m} does not divide {n}")
    shift = n // m
    perm = Permutation([(j + shift) % n for j in range(n)])
    values = tuple(RootOfUnity(k, m) for k in range(n))
    u = fourier_unitary(n)
    lam = np.array([v.to_complex() for v in values])
    residual = float(np.max(np.abs(u[list(perm.image), :] - u * lam[None, :])))
    if residual > STRUCT_TOL:
        raise SymmetryError(f"DFT symmetry residual {residual} exceeds {STRUCT_TOL}")
    return perm, values
