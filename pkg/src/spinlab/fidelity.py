"""Mean fidelity of direction encodings, by three independent routes.

The restricted-rotation optimum comes from the top eigenpair of a small
tridiagonal matrix. The same number is the largest zero of a classical
orthogonal polynomial (Legendre for even N, the (0,1) Jacobi family for odd
N), and both are cross-checked against direct quadrature of the defining
integral. Keeping all three routes alive is the point: they share no code.
"""

from __future__ import annotations

import math

import numpy as np

from . import numerics
from .codes import (MultiRepState, _block_amplitudes, code_state,
                    grid_unit_vectors, matched_decoder, minimal_sn, sphere_grid)
from .su2 import Direction, Z_AXIS


def build_m(nspins: int) -> numerics.Tridiag:
    """Tridiagonal overlap matrix whose top eigenvalue sets the best restricted fidelity.

    Rows are ordered from the S = N/2 block (top left) down to S = sn
    (bottom right). With k counting rows from the bottom, the entries are

        even N:  d_k = 0,              c_k = k / sqrt(4k^2 - 1)
        odd  N:  d_k = 1/(4k^2 - 1),   c_k = sqrt(k(k+1)) / (2k + 1)
    """
    if nspins < 1:
        raise ValueError("nspins must be >= 1")
    if nspins % 2 == 0:
        size = nspins // 2 + 1
        diag = np.zeros(size)
        cs = [k / math.sqrt(4.0 * k * k - 1.0) for k in range(1, size)]
    else:
        size = (nspins + 1) // 2
        diag = np.array([1.0 / (4.0 * k * k - 1.0) for k in range(size, 0, -1)])
        cs = [math.sqrt(k * (k + 1.0)) / (2.0 * k + 1.0) for k in range(1, size)]
    return numerics.Tridiag(diag, np.array(cs[::-1]))


def max_fidelity_rotation(nspins: int) -> tuple[float, MultiRepState]:
    """Best mean fidelity over rotation-covariant encodings of N spins.

    Returns the fidelity (1 + lambda_max)/2 and the optimizing code, whose
    coefficients are the top eigenvector mapped onto the irrep tower
    (first entry = S = N/2 block). The eigenvector of this matrix is
    sign-definite, so the coefficients are taken nonnegative.
    """
    m = build_m(nspins)
    lam, vec = numerics.tridiag_max_eigenpair(m)
    if np.any(vec < -1e-12):
        raise RuntimeError("leading eigenvector is not sign-definite")
    coeffs = np.clip(vec, 0.0, None)
    coeffs = coeffs / np.linalg.norm(coeffs)
    code = MultiRepState(minimal_sn(nspins), nspins, coeffs.astype(complex))
    return (1.0 + lam) / 2.0, code


def max_fidelity_polynomial(nspins: int) -> float:
    """Best restricted fidelity via the largest orthogonal-polynomial zero."""
    if nspins < 1:
        raise ValueError("nspins must be >= 1")
    if nspins % 2 == 0:
        x = numerics.largest_zero("legendre", nspins // 2 + 1)
    else:
        x = numerics.largest_zero("jacobi01", (nspins + 1) // 2)
    return (1.0 + x) / 2.0


def fidelity_optimal(d: int) -> float:
    """Best possible mean fidelity of any d-dimensional encoding: d/(d+1)."""
    if d < 2:
        raise ValueError("d must be >= 2")
    return d / (d + 1)


def fidelity_parallel(nspins: int) -> float:
    """Mean fidelity of N aligned product spins: (N+1)/(N+2)."""
    if nspins < 1:
        raise ValueError("nspins must be >= 1")
    return (nspins + 1) / (nspins + 2)


def fidelity_quadrature(code: MultiRepState, decoder: MultiRepState | None = None,
                        theta_order: int | None = None, phi_count: int | None = None,
                        decoder_direction: Direction = Z_AXIS) -> float:
    """Mean fidelity by direct quadrature of the defining average.

    Computes D * int dn (1 + n.m)/2 |<A(n)|B(m)>|^2 over the normalized
    sphere measure, with B the covariant decoder family (phase-matched to
    the code unless one is passed explicitly) evaluated at the fixed
    direction m. The integrand is band-limited, so the default grid is
    exact, not approximate.
    """
    n = code.nspins
    min_theta, min_phi = n + 2, n + 2
    theta_order = min_theta if theta_order is None else theta_order
    phi_count = min_phi if phi_count is None else phi_count
    if theta_order < min_theta or phi_count < min_phi:
        raise ValueError("quadrature grid too coarse for exactness")
    decoder = matched_decoder(code) if decoder is None else decoder
    if decoder.sn != code.sn or decoder.nspins != code.nspins:
        raise ValueError("decoder must live on the code's irrep tower")
    w, th, ph = sphere_grid(theta_order, phi_count)
    amp = _block_amplitudes(code, th, ph)
    bvec = code_state(decoder, decoder_direction)
    overlap_sq = np.abs(bvec.conj() @ amp) ** 2
    score = (1.0 + grid_unit_vectors(th, ph) @ decoder_direction.unit_vector) / 2.0
    return float(code.dim * np.sum(w * score * overlap_sq))


def asymptotic_table(max_n: int) -> list[tuple[int, float, float]]:
    """Rows (N, F, N^2 (1-F)) for the optimal restricted encodings.

    The scaled deficit in the last column climbs toward the square of the
    first J0 zero; useful for checking the large-N falloff.
    """
    if max_n < 1:
        raise ValueError("max_n must be >= 1")
    rows = []
    for n in range(1, max_n + 1):
        f = max_fidelity_polynomial(n)
        rows.append((n, f, n * n * (1.0 - f)))
    return rows
