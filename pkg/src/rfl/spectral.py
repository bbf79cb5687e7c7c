"""Spectral radius computation and the quotient-matrix closed forms.

Power iteration runs on A + I rather than A: bipartite spectra are symmetric
about 0, so plain iteration oscillates between the +rho and -rho eigenvectors;
the unit offset keeps the matrix nonnegative and isolates rho + 1.  Join-type
and extremal graphs additionally admit a 4x4 equitable quotient matrix whose
characteristic polynomial is biquadratic, giving an exact closed form.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass

import numpy as np

from .graphs import BipartiteGraph, ExtremalParams, GraphError, build_extremal, build_join

DEFAULT_TOL = 1e-10
MAX_ITERATIONS = 100_000
METHOD_AGREEMENT_TOL = 1e-7


def default_tolerance() -> float:
    """Configured tolerance; the RFL_DEFAULT_TOL env var overrides."""
    raw = os.environ.get("RFL_DEFAULT_TOL")
    return float(raw) if raw else DEFAULT_TOL


class ConvergenceError(RuntimeError):
    """Power iteration failed to converge within the iteration cap."""


class InconsistencyError(RuntimeError):
    """Two independent computations of the same quantity disagree."""


@dataclass(frozen=True)
class SpectralReport:
    value: float
    method: str  # power-iteration | quotient-closed-form | quartic-bisection
    iterations: int
    residual: float


def adjacency_matrix(g: BipartiteGraph) -> np.ndarray:
    n = g.n
    a = np.zeros((2 * n, 2 * n))
    for x, y in g.edges():
        a[x - 1, y - 1] = 1.0
        a[y - 1, x - 1] = 1.0
    return a


def spectral_radius(
    g: BipartiteGraph, tol: float | None = None, max_iterations: int = MAX_ITERATIONS
) -> SpectralReport:
    """Power iteration on A + I with the all-ones start vector.

    Converges when successive Rayleigh quotients differ by less than tol;
    reports rho(A) = rho(A + I) - 1.  Works unchanged on disconnected graphs
    (the offset matrix is nonnegative, so the dominant eigenvalue is
    1 + the maximum component radius).
    """
    if tol is None:
        tol = default_tolerance()
    if tol <= 0:
        raise GraphError(f"tolerance must be positive, got {tol}")
    a = adjacency_matrix(g)
    np.fill_diagonal(a, 1.0)
    v = np.ones(2 * g.n)
    v /= np.linalg.norm(v)
    rayleigh = 1.0
    for iteration in range(1, max_iterations + 1):
        w = a @ v
        norm = np.linalg.norm(w)
        if norm == 0.0:
            raise ConvergenceError("matrix annihilated the iterate")
        v = w / norm
        new_rayleigh = float(v @ (a @ v))
        residual = abs(new_rayleigh - rayleigh)
        rayleigh = new_rayleigh
        if residual < tol:
            return SpectralReport(
                value=max(rayleigh - 1.0, 0.0),
                method="power-iteration",
                iterations=iteration,
                residual=residual,
            )
    raise ConvergenceError(
        f"no convergence to tol={tol} within {max_iterations} iterations "
        f"(last Rayleigh step {abs(residual):.3e})"
    )


@dataclass(frozen=True)
class QuotientMatrix4:
    """4x4 equitable quotient matrix over the blocks (X1, X2, Y1, Y2)."""

    entries: tuple[tuple[float, ...], ...]
    partition_sizes: tuple[int, int, int, int]

    def as_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=float)

    def char_poly_coeffs(self) -> tuple[float, float]:
        """(c2, c0) of the biquadratic characteristic polynomial
        x^4 - c2 x^2 + c0."""
        m = self.as_array()
        upper = m[:2, 2:]
        lower = m[2:, :2]
        prod = upper @ lower
        return float(np.trace(prod)), float(np.linalg.det(prod))


def quotient_matrix(params: ExtremalParams) -> QuotientMatrix4:
    """Quotient matrix of build_join(params); p = k gives the extremal graph's."""
    n, k, p = params.n, params.k, params.p
    b = n + k - p - 1
    entries = (
        (0.0, 0.0, float(b), float(p - k + 1)),
        (0.0, 0.0, float(b), 0.0),
        (float(p - 1), float(n - p + 1), 0.0, 0.0),
        (float(p - 1), 0.0, 0.0, 0.0),
    )
    return QuotientMatrix4(entries, (p - 1, n - p + 1, b, p - k + 1))


def extremal_charpoly(n: int, k: int, x: float) -> float:
    """Characteristic polynomial of the extremal graph's quotient matrix:
    x^4 - [n(n-1) + (k-1)] x^2 + (n-1)(n-k+1)(k-1)."""
    return x**4 - (n * (n - 1) + (k - 1)) * x**2 + (n - 1) * (n - k + 1) * (k - 1)


def join_charpoly(params: ExtremalParams, x: float) -> float:
    """Characteristic polynomial of the join graph's quotient matrix:
    x^4 - [n(n+k-p-1) + (p-1)(p-k+1)] x^2 + (n+k-p-1)(p-k+1)(n-p+1)(p-1)."""
    n, k, p = params.n, params.k, params.p
    c2 = n * (n + k - p - 1) + (p - 1) * (p - k + 1)
    c0 = (n + k - p - 1) * (p - k + 1) * (n - p + 1) * (p - 1)
    return x**4 - c2 * x**2 + c0


def largest_biquadratic_root(c2: float, c0: float) -> float:
    """Largest real root of x^4 - c2 x^2 + c0, cross-checked by bisection
    on [sqrt(c2/2), sqrt(c2)]."""
    if c2 <= 0 or c0 < 0:
        raise GraphError(f"need c2 > 0 and c0 >= 0, got ({c2}, {c0})")
    disc = c2 * c2 - 4.0 * c0
    if disc < 0:
        raise GraphError(f"negative discriminant for ({c2}, {c0}); bad coefficients")
    closed = math.sqrt((c2 + math.sqrt(disc)) / 2.0)
    bisected = _bisect_biquadratic(c2, c0)
    if abs(closed - bisected) > 1e-8 * max(1.0, closed):
        raise InconsistencyError(
            f"closed form {closed!r} and bisection {bisected!r} disagree for ({c2}, {c0})"
        )
    return closed


def _bisect_biquadratic(c2: float, c0: float, steps: int = 100) -> float:
    # f(lo) = c0 - c2^2/4 <= 0 and f(hi) = c0 >= 0 bracket the largest root
    lo, hi = math.sqrt(c2 / 2.0), math.sqrt(c2)
    f = lambda x: x**4 - c2 * x**2 + c0
    for _ in range(steps):
        mid = 0.5 * (lo + hi)
        if f(mid) <= 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def quotient_spectral_radius(params: ExtremalParams, method: str = "closed") -> SpectralReport:
    """Spectral radius of build_join(params) from its quotient matrix."""
    c2, c0 = quotient_matrix(params).char_poly_coeffs()
    if method == "closed":
        value = largest_biquadratic_root(c2, c0)
        bisected = _bisect_biquadratic(c2, c0)
        return SpectralReport(value, "quotient-closed-form", 0, abs(value - bisected))
    if method == "bisect":
        value = _bisect_biquadratic(c2, c0)
        return SpectralReport(value, "quartic-bisection", 100, abs(join_charpoly(params, value)))
    raise GraphError(f"unknown quotient method {method!r}")


def extremal_spectral_radius(n: int, k: int) -> float:
    """Closed-form rho of the extremal graph."""
    c2 = n * (n - 1) + (k - 1)
    c0 = (n - 1) * (n - k + 1) * (k - 1)
    return largest_biquadratic_root(c2, c0)


@dataclass(frozen=True)
class SpectralMargin:
    """Comparison of a join graph against the extremal graph at the same (n, k)."""

    params: ExtremalParams
    rho_extremal: float
    rho_join: float
    margin: float
    holds: bool
    sign_value: float  # (P_extremal - P_join) at x = sqrt(n(n-1)); expected < 0
    sign_ok: bool


def join_margin(params: ExtremalParams, tol: float | None = None) -> SpectralMargin:
    """Strict-inequality check rho(join) < rho(extremal), by both the closed
    form and power iteration, plus the sign of the polynomial difference at
    sqrt(n(n-1)).

    Requires p >= k+1 (p = k compares the extremal graph with itself).
    Raises InconsistencyError if the two rho methods disagree beyond 1e-7.
    """
    n, k, p = params.n, params.k, params.p
    if p < k + 1:
        raise GraphError(f"margin check needs p >= k+1, got p = {p}")
    rho_b_closed = extremal_spectral_radius(n, k)
    rho_j_closed = largest_biquadratic_root(*quotient_matrix(params).char_poly_coeffs())
    rho_b_power = spectral_radius(build_extremal(n, k), tol=tol).value
    rho_j_power = spectral_radius(build_join(params), tol=tol).value
    for closed, power, which in (
        (rho_b_closed, rho_b_power, "extremal"),
        (rho_j_closed, rho_j_power, "join"),
    ):
        if abs(closed - power) > METHOD_AGREEMENT_TOL:
            raise InconsistencyError(
                f"{which} rho: closed form {closed!r} vs power iteration {power!r} "
                f"differ beyond {METHOD_AGREEMENT_TOL}"
            )
    margin = rho_b_closed - rho_j_closed
    x0 = math.sqrt(n * (n - 1))
    sign_value = extremal_charpoly(n, k, x0) - join_charpoly(params, x0)
    return SpectralMargin(
        params=params,
        rho_extremal=rho_b_closed,
        rho_join=rho_j_closed,
        margin=margin,
        holds=margin > 1e-9,
        sign_value=sign_value,
        sign_ok=sign_value < 0.0,
    )
