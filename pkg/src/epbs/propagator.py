"""Closed-form and numerical evolution operators G(z) = exp(-i*H_N*z).

The operator factorizes into an ordered product over the subspace algebra,

    G(z) = e^{-i(omega0 - i*Gamma/2) N z}
           * e^{-i f_+(z) J_+} * e^{-i f_z(z) J_z} * e^{-i f_-(z) J_-},

where the scalar coefficient functions obey the coupled system

    f_+' = kappa (1 + f_+^2) - Gamma f_+,
    f_z' = -i Gamma + 2 i kappa f_+,
    f_-' = kappa e^{-i f_z},

with f_+(0) = f_z(0) = f_-(0) = 0, and are known in closed form.  With
theta = z*Delta_lambda/2 the solutions reduce to the branch-free pair

    w(z) = cos(theta) + (Gamma/Delta_lambda) sin(theta),
    f_+(z) = f_-(z) = q(z)/w(z),     q(z) = 2*kappa*sin(theta)/Delta_lambda,
    f_z(z) = -2i ln w(z),

which stay real for real or purely imaginary Delta_lambda (hyperbolic
functions take over above the loss threshold) and have their only true
singularities at the zeros of w.  At the critical loss Delta_lambda -> 0
the limits are q = kappa*z, w = 1 + kappa*z, f_+/- = kappa*z/(1+kappa*z).

Because J_z eigenvalues step by one, the middle factor is the diagonal of
*integer* powers w^(N-2m); no complex logarithm is ever exponentiated, so
the assembly is free of branch cuts even when w(z) winds through negative
values.  Four evaluation paths are provided and cross-validated: the
closed-form product, its critical-loss limit, dense scaling-and-squaring
matrix exponentials, and direct numerical integration of the coefficient
system.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm as _scipy_expm

from .errors import (
    OverflowGuardError,
    PoleProximityError,
    RiccatiBlowupError,
)
from .fock_core import (
    BeamsplitterParams,
    HamiltonianMatrix,
    OperatorSet,
    build_hamiltonian,
    build_operators,
)

__all__ = [
    "WeiNormanParams",
    "PropagatorMatrix",
    "wei_norman_params",
    "ep_limit_params",
    "assemble_propagator",
    "matrix_exp_oracle",
    "ode_oracle",
    "evolution_operator",
    "evolve_state",
    "first_pole",
    "EP_SWITCH_THRESHOLD",
    "POLE_TOLERANCE",
    "EXPM_NORM_BOUND",
]

# |Delta_lambda|*z below which the critical-loss limit formulas are used.
EP_SWITCH_THRESHOLD = 1e-6
# |w(z)| below which the factored form is rejected as pole-adjacent.
POLE_TOLERANCE = 1e-6
# Documented bound on ||H||_1 * z for the matrix-exponential path.
EXPM_NORM_BOUND = 1e5
# Below the trigger the entrywise cancellation of the single-shot product
# (which grows like a power of 1/|w| towards a zero of w) costs accuracy, so
# the evaluation is split across two pole-far distances instead.
W_SPLIT_TRIGGER = 0.75
W_SPLIT_FLOOR = 0.55


@dataclass(frozen=True)
class WeiNormanParams:
    """Scalar coefficients of the factored propagator at one distance z.

    ``f_plus == f_minus`` holds for every z.  ``w`` is real for the closed
    form in either regime (it only becomes genuinely complex when produced
    by the numerical integrator) and carries all branch information:
    e^{-i f_z} == w^{-2} exactly, so diagonal factors are integer powers of
    w.  ``prefactor_exponent`` is -i(omega0 - i*Gamma/2)*N*z; its real part
    -Gamma*N*z/2 is the global decay and is kept separate so norms and
    intensities can be formed in log space.
    """

    z: float
    f_plus: float
    f_minus: float
    f_z: complex
    prefactor_exponent: complex
    w: complex
    n_photons: int  # binds the prefactor to the subspace it was built for
    source: str = "wei_norman"


def first_pole(params: BeamsplitterParams, z_start: float = 0.0) -> float | None:
    """Distance of the first zero of w(z) past ``z_start``.

    Zeros exist only below the loss threshold, at theta values with
    tan(theta) = -Delta_lambda/Gamma; above threshold returns ``None``.
    """
    dl2 = 4.0 * params.kappa**2 - params.gamma**2
    if dl2 <= 0:
        return None
    d = math.sqrt(dl2)
    if params.gamma == 0.0:
        theta0 = math.pi / 2.0
    else:
        theta0 = math.pi - math.atan(d / params.gamma)
    z0 = 2.0 * theta0 / d
    period = 2.0 * math.pi / d
    if z0 <= z_start:
        z0 += math.ceil((z_start - z0) / period) * period
        if z0 <= z_start:
            z0 += period
    return z0


def _prefactor_exponent(params: BeamsplitterParams, z: float) -> complex:
    return -1j * (params.omega0 - 0.5j * params.gamma) * params.n_photons * z


def wei_norman_params(
    params: BeamsplitterParams, z: float, pole_tol: float = POLE_TOLERANCE
) -> WeiNormanParams:
    """Closed-form coefficient functions at distance z.

    Raises ``ValueError`` for z < 0 or when |Delta_lambda|*z is inside the
    critical-loss switch window (use ``ep_limit_params`` there), and
    ``PoleProximityError`` when |w(z)| < ``pole_tol``.
    """
    if z < 0:
        raise ValueError(f"z must be >= 0, got {z}")
    if z == 0.0:
        return WeiNormanParams(
            z=0.0, f_plus=0.0, f_minus=0.0, f_z=0j, prefactor_exponent=0j,
            w=1.0 + 0j, n_photons=params.n_photons,
        )

    kappa, gamma = params.kappa, params.gamma
    dl2 = 4.0 * kappa * kappa - gamma * gamma
    u = math.sqrt(abs(dl2)) * z
    if u < EP_SWITCH_THRESHOLD:
        raise ValueError(
            f"|Delta_lambda|*z = {u:.2e} is below the critical-loss switch "
            f"threshold {EP_SWITCH_THRESHOLD:.0e}; use ep_limit_params"
        )

    if dl2 > 0:
        d = math.sqrt(dl2)
        theta = 0.5 * z * d
        s = math.sin(theta) / d
        w = math.cos(theta) + gamma * s
    else:
        d = math.sqrt(-dl2)
        x = 0.5 * z * d
        if x > 700.0:
            raise OverflowGuardError(
                f"w(z) ~ exp({x:.3g}) exceeds double-precision range at z={z!r}"
            )
        s = math.sinh(x) / d
        w = math.cosh(x) + gamma * s

    if abs(w) < pole_tol:
        raise PoleProximityError(z, abs(w), pole_tol)

    f = 2.0 * kappa * s / w
    return WeiNormanParams(
        z=float(z),
        f_plus=f,
        f_minus=f,
        f_z=-2j * cmath.log(w),
        prefactor_exponent=_prefactor_exponent(params, z),
        w=complex(w),
        n_photons=params.n_photons,
    )


def ep_limit_params(params: BeamsplitterParams, z: float) -> WeiNormanParams:
    """Coefficient functions in the Delta_lambda -> 0 limit.

    f_+/- = kappa*z/(1 + kappa*z) and w = 1 + kappa*z are exact at the
    critical loss (not approximations of it); f_+/- approach unity for
    kappa*z >> 1, which is what turns the propagator polynomial in z there.
    """
    if z < 0:
        raise ValueError(f"z must be >= 0, got {z}")
    kz = params.kappa * z
    return WeiNormanParams(
        z=float(z),
        f_plus=kz / (1.0 + kz),
        f_minus=kz / (1.0 + kz),
        f_z=-2j * math.log1p(kz),
        prefactor_exponent=_prefactor_exponent(params, z),
        w=1.0 + kz + 0j,
        n_photons=params.n_photons,
        source="ep_limit",
    )


@dataclass(frozen=True)
class PropagatorMatrix:
    """G(z) split as exp(prefactor_exponent) * core.

    ``core`` is the product of the three algebra factors (scalar prefactor
    removed); it has unit determinant and stays representable long after the
    full matrix has decayed below the double-precision floor, which is what
    makes log-space intensities possible.  ``matrix`` reassembles the full
    operator and may underflow to zero entries for very large Gamma*N*z.
    """

    core: np.ndarray
    prefactor_exponent: complex
    method: str

    @property
    def matrix(self) -> np.ndarray:
        return np.exp(self.prefactor_exponent) * self.core

    @property
    def dim(self) -> int:
        return self.core.shape[0]


@lru_cache(maxsize=64)
def _assembly_table(n: int):
    """Precompute the entrywise polynomial expansion of the factored product.

    Writing f = q/w, the (i, j) entry of the three-factor product collapses
    to w^(N-i-j) * (-i)^(i+j) * sum_l (-1)^l c_ijl q^(i+j-2l) with constant
    coefficients c_ijl; grouping powers of w per entry removes the
    (1/w)^N cancellation the literal factor-by-factor product suffers near
    the zeros of w.
    """
    dim = n + 1
    # ladder products A[k] = <k| J_+^k |0> ; A[i]/A[l] = <i| J_+^(i-l) |l>
    amps = np.sqrt((np.arange(n) + 1.0) * (n - np.arange(n)))
    ladder = np.concatenate([[1.0], np.cumprod(amps)])
    fact = np.array([math.factorial(k) for k in range(dim)], dtype=float)

    entry_idx, coefs, q_exps = [], [], []
    for i in range(dim):
        for j in range(dim):
            for l in range(min(i, j) + 1):
                c = ladder[i] * ladder[j] / (ladder[l] ** 2 * fact[i - l] * fact[j - l])
                entry_idx.append(i * dim + j)
                coefs.append(c if l % 2 == 0 else -c)
                q_exps.append(i + j - 2 * l)

    entry_idx = np.asarray(entry_idx, dtype=np.intp)
    seg_starts = np.flatnonzero(np.r_[1, np.diff(entry_idx)])
    ij = np.arange(dim * dim)
    i_plus_j = ij // dim + ij % dim
    phase = np.array([1.0, -1.0j, -1.0, 1.0j])[i_plus_j % 4]
    return (
        np.asarray(coefs, dtype=float),
        np.asarray(q_exps, dtype=np.intp),
        seg_starts,
        n - i_plus_j,  # exponent of w per entry
        phase,
    )


def _integer_powers(base: complex, lo: int, hi: int) -> np.ndarray:
    """base**k for k = lo .. hi as a lookup array (index k - lo)."""
    pows = np.empty(hi - lo + 1, dtype=complex)
    pows[-lo] = 1.0
    for k in range(1, hi + 1):
        pows[k - lo] = pows[k - 1 - lo] * base
    inv = 1.0 / base
    for k in range(-1, lo - 1, -1):
        pows[k - lo] = pows[k + 1 - lo] * inv
    return pows


def assemble_propagator(wn: WeiNormanParams, ops: OperatorSet) -> PropagatorMatrix:
    """Evaluate the factored propagator from its scalar coefficients.

    The raising/lowering exponentials terminate after N+1 nilpotent terms
    and the diagonal factor holds integer powers w^(N-2m); the three factors
    are contracted entrywise as polynomials in q = f_+ * w (see
    ``_assembly_table``).  Raises on dimension mismatch and when powers of w
    or q would overflow the double range.
    """
    n = ops.number_op_scalar
    if wn.n_photons != n:
        raise ValueError(
            f"coefficients were built for N={wn.n_photons} but the operator "
            f"set represents N={n}"
        )

    w = complex(wn.w)
    q = wn.f_plus * w
    if abs(w) < 1e-300:
        raise PoleProximityError(wn.z, abs(w), 1e-300)
    log_w = abs(math.log(abs(w))) if w != 0 else math.inf
    log_q = math.log(max(abs(q), 1.0))
    if n * log_w > 700.0 or 2 * n * log_q > 700.0:
        raise OverflowGuardError(
            f"propagator assembly overflows double precision at z={wn.z!r} "
            f"(N*|ln|w|| = {n * log_w:.3g}, 2N*ln|q| = {2 * n * log_q:.3g})"
        )

    coefs, q_exps, seg_starts, w_exps, phase = _assembly_table(n)
    q_pows = _integer_powers(q, 0, 2 * n) if q != 0 else np.array(
        [1.0 + 0j] + [0j] * (2 * n)
    )
    w_pows = _integer_powers(w, -n, n)

    poly = np.add.reduceat(coefs * q_pows[q_exps], seg_starts)
    core = (phase * w_pows[w_exps + n] * poly).reshape(n + 1, n + 1)
    return PropagatorMatrix(
        core=core, prefactor_exponent=complex(wn.prefactor_exponent), method=wn.source
    )


def matrix_exp_oracle(h: HamiltonianMatrix, z: float) -> PropagatorMatrix:
    """exp(-i*H*z) by dense scaling-and-squaring (Pade kernel).

    Independent of the factored path; never diagonalizes, so it remains
    well-defined on the defective matrix at the critical loss.  Rejects
    ||H||_1 * z beyond ``EXPM_NORM_BOUND``, past which squaring cost and
    roundoff make the result untrustworthy.
    """
    if z < 0:
        raise ValueError(f"z must be >= 0, got {z}")
    a = np.asarray(h.matrix)
    scale = float(np.linalg.norm(a, 1)) * z
    if scale > EXPM_NORM_BOUND:
        raise OverflowGuardError(
            f"||H||_1 * z = {scale:.3g} exceeds the matrix-exponential bound "
            f"{EXPM_NORM_BOUND:.1e}"
        )
    return PropagatorMatrix(
        core=_scipy_expm(-1j * a * z), prefactor_exponent=0j, method="matrix_exp"
    )


_BLOWUP_LIMIT = 1e6


def ode_oracle(
    params: BeamsplitterParams,
    z_grid,
    rtol: float = 1e-10,
    atol: float = 1e-12,
) -> list[WeiNormanParams]:
    """Integrate the coefficient system numerically along an ascending grid.

    Uses an adaptive 8th-order Runge-Kutta scheme on the complex system; the
    tolerances keep the oracle ~100x tighter than the comparisons it backs.
    The grid must start at 0.  If f_+ blows up inside the requested range
    (the same poles as the closed form), ``RiccatiBlowupError`` reports the
    estimated blow-up location.
    """
    grid = np.asarray(z_grid, dtype=float)
    if grid.ndim != 1 or grid.size == 0:
        raise ValueError("z grid must be a non-empty 1-D sequence")
    if grid[0] != 0.0:
        raise ValueError(f"z grid must start at 0, got {grid[0]}")
    if np.any(np.diff(grid) < 0):
        raise ValueError("z grid must be ascending")

    kappa, gamma = params.kappa, params.gamma

    def rhs(_z, y):
        f_p, f_z, _f_m = y
        return [
            kappa * (1.0 + f_p * f_p) - gamma * f_p,
            -1j * gamma + 2j * kappa * f_p,
            kappa * np.exp(-1j * f_z),
        ]

    def blowup(_z, y):
        return abs(y[0]) - _BLOWUP_LIMIT

    blowup.terminal = True

    sol = solve_ivp(
        rhs,
        (0.0, float(grid[-1])),
        np.zeros(3, dtype=complex),
        method="DOP853",
        t_eval=grid,
        rtol=rtol,
        atol=atol,
        events=blowup,
    )
    if sol.status == 1:  # terminated by the blow-up event
        raise RiccatiBlowupError(float(sol.t_events[0][0]), float(grid[-1]))
    if not sol.success:
        raise RiccatiBlowupError(float(sol.t[-1]) if sol.t.size else 0.0, float(grid[-1]))

    out = []
    for k, z in enumerate(grid):
        f_p, f_z, f_m = sol.y[:, k]
        out.append(
            WeiNormanParams(
                z=float(z),
                f_plus=float(f_p.real),
                f_minus=float(f_m.real),
                f_z=complex(f_z),
                prefactor_exponent=_prefactor_exponent(params, float(z)),
                w=cmath.exp(0.5j * f_z),
                n_photons=params.n_photons,
                source="ode",
            )
        )
    return out


def evolution_operator(
    params: BeamsplitterParams,
    z: float,
    ops: OperatorSet | None = None,
    pole_tol: float = POLE_TOLERANCE,
) -> PropagatorMatrix:
    """G(z) through the path-switching policy.

    Closed-form product wherever it is regular and its critical-loss limit
    when |Delta_lambda|*z is below the switch threshold.  Near the zeros of
    w (only possible below threshold) a single product evaluation loses
    accuracy, so the operator is formed as G(z1) G(z2) with both halves
    pole-far -- an exact semigroup identity that keeps the closed form in
    charge; the matrix exponential remains as the last-resort fallback (the
    operator itself is entire, only the factorization is singular).
    """
    if ops is None:
        ops = build_operators(params.n_photons)
    kappa, gamma = params.kappa, params.gamma
    dl2 = 4.0 * kappa * kappa - gamma * gamma
    u = math.sqrt(abs(dl2)) * z
    if u < EP_SWITCH_THRESHOLD:
        return assemble_propagator(ep_limit_params(params, z), ops)

    if dl2 > 0:
        # w = sqrt(1+g^2) cos(theta - phi): zeros at theta - phi = pi/2 mod pi
        d = math.sqrt(dl2)
        g = gamma / d
        theta = 0.5 * z * d
        phi = math.atan(g)
        scale = math.hypot(1.0, g)
        if scale * abs(math.cos(theta - phi)) < W_SPLIT_TRIGGER:
            split = _split_point(theta, phi, scale)
            if split is not None:
                z1 = 2.0 * split / d
                g1 = assemble_propagator(wei_norman_params(params, z1, pole_tol), ops)
                g2 = assemble_propagator(wei_norman_params(params, z - z1, pole_tol), ops)
                return PropagatorMatrix(
                    core=g1.core @ g2.core,
                    prefactor_exponent=g1.prefactor_exponent + g2.prefactor_exponent,
                    method="wei_norman",
                )
            return matrix_exp_oracle(build_hamiltonian(params), z)

    try:
        wn = wei_norman_params(params, z, pole_tol=pole_tol)
    except PoleProximityError:
        return matrix_exp_oracle(build_hamiltonian(params), z)
    return assemble_propagator(wn, ops)


def _split_point(theta: float, phi: float, scale: float) -> float | None:
    """theta1 in (0, theta) putting both halves away from the zeros of w.

    Candidates around the midpoint shifted by twelfths of the pole lattice
    period pi are scanned for the largest min |w| of the two halves.
    """
    best_theta1, best_score = None, 0.0
    for k in range(-6, 7):
        theta1 = 0.5 * theta + k * (math.pi / 12.0)
        if not 0.02 * theta <= theta1 <= 0.98 * theta:
            continue
        score = scale * min(
            abs(math.cos(theta1 - phi)), abs(math.cos(theta - theta1 - phi))
        )
        if score > best_score:
            best_theta1, best_score = theta1, score
    if best_score < W_SPLIT_FLOOR:
        return None
    return best_theta1


def evolve_state(
    state: np.ndarray, g: PropagatorMatrix, check_normalized: bool = True
) -> np.ndarray:
    """Apply G(z) to a state vector without renormalizing.

    The squared norm of the result is the post-selection probability.  The
    input must be unit-normalized to 1e-10 unless the check is disabled.
    """
    state = np.asarray(state, dtype=complex)
    if state.shape != (g.dim,):
        raise ValueError(f"state has shape {state.shape}, expected ({g.dim},)")
    if check_normalized:
        norm = np.linalg.norm(state)
        if abs(norm - 1.0) > 1e-10:
            raise ValueError(f"input state is not normalized: ||psi|| = {norm!r}")
    return g.matrix @ state
