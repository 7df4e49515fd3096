"""Passive linear-optical networks as unitary mode maps.

An N-mode element is an N x N unitary L acting on creation operators,
a_i^dag -> sum_k L[k, i] a_k^dag, so column i lists how input mode i
spreads over the outputs.  Composition therefore multiplies matrices
with the later element on the left.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .errors import BadModeIndex, NotUnitary, RowsNotOrthonormal

UNITARITY_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class Interferometer:
    """N x N unitary with a free-text provenance tag."""

    matrix: np.ndarray
    provenance: str = ""

    def __post_init__(self):
        a = np.array(self.matrix, dtype=complex)
        if a.ndim != 2 or a.shape[0] != a.shape[1] or a.shape[0] < 1:
            raise NotUnitary(f"interferometer matrix must be square, got {a.shape}")
        gram = a.conj().T @ a
        if not np.allclose(gram, np.eye(a.shape[0]), atol=UNITARITY_TOL, rtol=0.0):
            raise NotUnitary(
                "matrix is not unitary within "
                f"{UNITARITY_TOL} (max deviation "
                f"{np.max(np.abs(gram - np.eye(a.shape[0]))):.3e})"
            )
        a.setflags(write=False)
        object.__setattr__(self, "matrix", a)

    @property
    def n_modes(self) -> int:
        return self.matrix.shape[0]

    def to_json_dict(self) -> dict:
        return {
            "n_modes": self.n_modes,
            "matrix": [
                [{"re": float(z.real), "im": float(z.imag)} for z in row]
                for row in self.matrix
            ],
            "provenance": self.provenance,
        }

    @classmethod
    def from_json_dict(cls, data: dict) -> "Interferometer":
        n = int(data["n_modes"])
        rows = data["matrix"]
        if len(rows) != n or any(len(r) != n for r in rows):
            raise NotUnitary("serialized matrix shape disagrees with n_modes")
        a = np.array(
            [[complex(z["re"], z["im"]) for z in row] for row in rows], dtype=complex
        )
        return cls(a, provenance=str(data.get("provenance", "")))

    def to_json(self) -> str:
        return json.dumps(self.to_json_dict(), sort_keys=True)

    @classmethod
    def from_json(cls, text: str) -> "Interferometer":
        return cls.from_json_dict(json.loads(text))


def beam_splitter(theta: float, phi: float = 0.0) -> Interferometer:
    """Two-mode coupler with reflectivity cos(theta)**2.

    Matrix [[e^{i phi} cos t, -sin t], [sin t, e^{-i phi} cos t]];
    a quoted reflectivity r means theta = arccos(sqrt(r)).
    """
    ct, st = math.cos(theta), math.sin(theta)
    ph = complex(math.cos(phi), math.sin(phi))
    m = np.array([[ph * ct, -st], [st, ph.conjugate() * ct]], dtype=complex)
    return Interferometer(m, provenance=f"beam_splitter(theta={theta!r}, phi={phi!r})")


def embed_two_mode(
    element: Interferometer, modes: tuple[int, int], n_modes: int
) -> Interferometer:
    """Place a two-mode element on the given pair of modes of an N-mode identity."""
    i, j = modes
    if element.n_modes != 2:
        raise BadModeIndex("embed_two_mode expects a two-mode element")
    if i == j or not (0 <= i < n_modes) or not (0 <= j < n_modes):
        raise BadModeIndex(f"bad mode pair {modes} for {n_modes} modes")
    m = np.eye(n_modes, dtype=complex)
    b = element.matrix
    m[i, i], m[i, j] = b[0, 0], b[0, 1]
    m[j, i], m[j, j] = b[1, 0], b[1, 1]
    return Interferometer(
        m, provenance=f"embed({element.provenance or '2-mode'} @ modes {modes})"
    )


def compose(*elements: Interferometer) -> Interferometer:
    """Apply elements in the order given (earliest first)."""
    if not elements:
        raise ValueError("compose needs at least one element")
    n = elements[0].n_modes
    total = np.eye(n, dtype=complex)
    for el in elements:
        if el.n_modes != n:
            raise BadModeIndex("composed elements must share the mode count")
        total = el.matrix @ total
    return Interferometer(total, provenance=f"compose({len(elements)} elements)")


def complete_rows(partial_rows, n_modes: int) -> Interferometer:
    """Extend given orthonormal rows to a full unitary.

    The given rows are kept exactly as rows 0..k-1; the remaining rows
    come from Gram-Schmidt on the canonical basis vectors taken in index
    order, which makes the completion deterministic.
    """
    rows = [np.asarray(r, dtype=complex) for r in partial_rows]
    k = len(rows)
    if k > n_modes or any(r.shape != (n_modes,) for r in rows):
        raise RowsNotOrthonormal(
            f"expected at most {n_modes} rows of length {n_modes}"
        )
    if k:
        stack = np.vstack(rows)
        gram = stack @ stack.conj().T
        if not np.allclose(gram, np.eye(k), atol=UNITARITY_TOL, rtol=0.0):
            raise RowsNotOrthonormal(
                "given rows are not orthonormal within tolerance "
                f"(max deviation {np.max(np.abs(gram - np.eye(k))):.3e})"
            )
    basis = list(rows)
    for idx in range(n_modes):
        if len(basis) == n_modes:
            break
        v = np.zeros(n_modes, dtype=complex)
        v[idx] = 1.0
        # two Gram-Schmidt passes keep the result orthonormal to ~1e-15
        for _ in range(2):
            for b in basis:
                v = v - (b.conj() @ v) * b
        norm = np.linalg.norm(v)
        if norm > 1e-6:
            basis.append(v / norm)
    if len(basis) != n_modes:
        raise RowsNotOrthonormal("could not complete the rows to a unitary")
    m = np.vstack(basis)
    if k:
        m[:k] = np.vstack(rows)  # keep callers' rows bit-for-bit
    return Interferometer(m, provenance=f"complete_rows({k} given)")


def haar_random(n_modes: int, seed: int) -> Interferometer:
    """Seeded Haar-random unitary via QR of a complex Gaussian matrix.

    The R-diagonal phases are divided out so the distribution is exactly
    Haar; identical seeds give bit-identical matrices.
    """
    if n_modes < 1:
        raise BadModeIndex("need at least one mode")
    rng = np.random.default_rng(seed)
    z = rng.standard_normal((n_modes, n_modes)) + 1j * rng.standard_normal(
        (n_modes, n_modes)
    )
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    q = q * (d / np.abs(d))
    return Interferometer(q, provenance=f"haar_random(n={n_modes}, seed={seed})")
