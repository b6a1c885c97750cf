"""Conserved quantities of the second-order update rule.

For any matrix G commuting with H, the two-time correlation

    q_G(n) = <psi_{n+1}, G psi_n> + <psi_n, G psi_{n+1}>

is the same Gaussian integer for every n; with G = identity it doubles the
total link number L, the integer that replaces the familiar norm.  All
checks here are entry-exact: a failed comparison means a broken stepper,
never roundoff.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator

from .dynamics import Trajectory
from .errors import DimensionMismatch, NonCommutingError
from .gaussian import GaussInt, GaussMatrix, GaussVector, inner_product, mat_vec


def q_G(psi_n: GaussVector, psi_next: GaussVector, G: GaussMatrix) -> GaussInt:
    """Two-time correlation of a consecutive state pair under G.

    Real (zero imaginary part) whenever G is Hermitian; conserved along
    trajectories whenever G commutes with the model Hamiltonian.
    """
    return inner_product(psi_next, mat_vec(G, psi_n)) + inner_product(
        psi_n, mat_vec(G, psi_next)
    )


def q1(psi_n: GaussVector, psi_next: GaussVector) -> int:
    """q_G with G = identity: 2 * Re <psi_{n+1}, psi_n>, an ordinary int."""
    re = 0
    for a, b in zip(psi_next, psi_n):
        re += a.re * b.re + a.im * b.im
    return 2 * re


def conservation_residual(
    psi_prev: GaussVector,
    psi_n: GaussVector,
    psi_next: GaussVector,
    G: GaussMatrix,
) -> GaussInt:
    """<psi_n, G dpsi> + <dpsi, G psi_n> with dpsi = psi_{n+1} - psi_{n-1}.

    Vanishes on every trajectory triple when [G, H] = 0.
    """
    dpsi = psi_next - psi_prev
    return inner_product(psi_n, mat_vec(G, dpsi)) + inner_product(dpsi, mat_vec(G, psi_n))


def commutator(G: GaussMatrix, H: GaussMatrix) -> GaussMatrix:
    if G.shape != H.shape or not G.is_square():
        raise DimensionMismatch(f"commutator needs equal square shapes, got {G.shape} and {H.shape}")
    return G @ H - H @ G


def commutes(G: GaussMatrix, H: GaussMatrix) -> bool:
    """True iff GH - HG = 0 entry-exact."""
    return commutator(G, H).is_zero()


@dataclass(frozen=True)
class LinkReport:
    """Per-degree-of-freedom link counts for one consecutive pair.

    weights is None exactly when total = 0 (the regime with no meaningful
    continuum limit); otherwise the exact rationals L_a / L, which may lie
    outside [0, 1] and always sum to 1.
    """

    per_alpha: tuple[int, ...]
    total: int
    weights: tuple[Fraction, ...] | None

    def __post_init__(self) -> None:
        assert self.total == sum(self.per_alpha)
        if self.weights is not None:
            assert sum(self.weights) == 1


def link_counts(psi_n: GaussVector, psi_next: GaussVector) -> LinkReport:
    """Count links between two consecutive states.

    L_a = x_{n+1} x_n + p_{n+1} p_n per slot a (plain integer products);
    the total equals q1 / 2 identically.
    """
    if len(psi_n) != len(psi_next):
        raise DimensionMismatch(f"state lengths differ: {len(psi_n)} vs {len(psi_next)}")
    per = tuple(b.re * a.re + b.im * a.im for a, b in zip(psi_n, psi_next))
    total = sum(per)
    weights = tuple(Fraction(la, total) for la in per) if total != 0 else None
    return LinkReport(per_alpha=per, total=total, weights=weights)


@dataclass(frozen=True)
class PairStats:
    """Per-pair snapshot used by trajectory verification and CSV export."""

    n: int
    q: GaussInt
    links: LinkReport


@dataclass(frozen=True)
class ConservationReport:
    ok: bool
    q_value: GaussInt | None
    pairs_checked: int
    first_violation: int | None
    message: str = ""


def iter_pair_stats(traj: Trajectory, G: GaussMatrix) -> Iterator[PairStats]:
    """q_G and link counts for every consecutive pair of a trajectory."""
    for n, a, b in traj.pairs():
        yield PairStats(n=n, q=q_G(a, b, G), links=link_counts(a, b))


def verify_trajectory(traj: Trajectory, G: GaussMatrix) -> ConservationReport:
    """Check that q_G is one constant along the trajectory and that the
    link total matches q1 / 2 at every step.

    Raises NonCommutingError (with the commutator as witness) when G does
    not commute with the model Hamiltonian; a report with ok = False and
    the first offending pair index signals a broken trajectory instead.
    """
    H = traj.hamiltonian()
    if G.shape != H.shape:
        raise DimensionMismatch(f"G has shape {G.shape}, model needs {H.shape}")
    comm = commutator(G, H)
    if not comm.is_zero():
        raise NonCommutingError(
            f"G does not commute with the Hamiltonian; commutator = {comm}",
            witness=comm,
        )
    value: GaussInt | None = None
    count = 0
    for stats in iter_pair_stats(traj, G):
        if value is None:
            value = stats.q
        elif stats.q != value:
            return ConservationReport(
                ok=False,
                q_value=value,
                pairs_checked=count,
                first_violation=stats.n,
                message=f"q_G changed from {value} to {stats.q} at pair {stats.n}",
            )
        if 2 * stats.links.total != q1(traj[stats.n], traj[stats.n + 1]):
            return ConservationReport(
                ok=False,
                q_value=value,
                pairs_checked=count,
                first_violation=stats.n,
                message=f"link total 2L != q1 at pair {stats.n}",
            )
        count += 1
    return ConservationReport(
        ok=True, q_value=value, pairs_checked=count, first_violation=None
    )
