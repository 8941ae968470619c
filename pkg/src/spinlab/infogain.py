"""Average information gain of the covariant decoding measurement."""

from __future__ import annotations

import math

import numpy as np

from .codes import (AlphaFamily, MultiRepState, _block_amplitudes, alpha_code,
                    code_state, matched_decoder, sphere_grid)
from .su2 import Z_AXIS

_LOG2E = 1.0 / math.log(2.0)
_MAX_THETA_ORDER = 8192


def info_gain_closed(nspins: int) -> float:
    """Closed form N - (1 - 2^-N) log2(e) for the optimal 2^N-dimensional code.

    Equals log2(d) - (1 - 1/d) log2(e) at d = 2^N; approaches N - log2(e)
    from below as N grows.
    """
    if nspins < 1:
        raise ValueError("nspins must be >= 1")
    return nspins - (1.0 - 2.0 ** (-nspins)) * _LOG2E


def info_gain_quadrature(code: MultiRepState, decoder: MultiRepState | None = None,
                         theta_order: int = 64, phi_count: int = 4,
                         tol: float = 1e-8) -> float:
    """Average gain int dn q log2(q) with q = D |<A(n)|B(z)>|^2.

    q integrates to 1 whenever the decoder resolves the identity (checked,
    since a failed check means the "gain" is meaningless). The integrand has
    logarithmic kinks wherever the overlap vanishes, so the theta rule is
    not exact; two rules 1.5x apart must agree within tol, and the order
    doubles until they do.
    """
    decoder = matched_decoder(code) if decoder is None else decoder
    if decoder.sn != code.sn or decoder.nspins != code.nspins:
        raise ValueError("decoder must live on the code's irrep tower")
    bvec = code_state(decoder, Z_AXIS)
    dim = code.dim

    def at_order(order: int) -> float:
        w, th, ph = sphere_grid(order, phi_count)
        q = dim * np.abs(bvec.conj() @ _block_amplitudes(code, th, ph)) ** 2
        mass = float(np.sum(w * q))
        if abs(mass - 1.0) > 1e-8:
            raise RuntimeError(
                f"outcome density integrates to {mass!r}, not 1; "
                "the decoder does not resolve the identity")
        terms = np.where(q > 0.0, q * np.log2(np.where(q > 0.0, q, 1.0)), 0.0)
        return float(np.sum(w * terms))

    order = theta_order
    coarse = at_order(order)
    while order <= _MAX_THETA_ORDER:
        fine = at_order(order * 3 // 2)
        if abs(fine - coarse) <= tol:
            return fine
        order *= 2
        coarse = at_order(order)
    raise RuntimeError("information-gain quadrature did not stabilize")


def maximize_alpha(tol: float = 1e-6, beta: float = 0.0) -> tuple[float, float]:
    """Alpha maximizing the two-spin family's information gain.

    A 64-point scan over [0, pi/2] brackets the peak, then golden-section
    narrows the bracket to width tol. Returns (alpha_star, gain_star).
    """
    if not 0.0 < tol <= 1e-4:
        raise ValueError("tol must lie in (0, 1e-4]")

    def gain(alpha: float) -> float:
        return info_gain_quadrature(alpha_code(AlphaFamily(alpha, beta)))

    xs = np.linspace(0.0, math.pi / 2.0, 64)
    gains = [gain(x) for x in xs]
    peak = int(np.argmax(gains))
    if peak == 0 or peak == xs.size - 1:
        raise RuntimeError("no interior maximum bracketed by the scan")
    a, b = float(xs[peak - 1]), float(xs[peak + 1])
    invphi = (math.sqrt(5.0) - 1.0) / 2.0
    c = b - invphi * (b - a)
    d = a + invphi * (b - a)
    gc, gd = gain(c), gain(d)
    while b - a > tol:
        if gc > gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = gain(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = gain(d)
    best = 0.5 * (a + b)
    return best, gain(best)
