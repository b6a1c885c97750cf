"""Orbit classification: exact periods and permutation-like evolution.

A state is called single-component when exactly one slot is nonzero; an
orbit whose every visited state is single-component evolves by permuting
basis slots up to a scalar factor.  Recurrence is judged on the state
*pair* and by entry-exact equality: two states differing by an overall
phase count as different.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DegenerateStateError
from .gaussian import GaussInt, GaussMatrix, GaussVector
from .dynamics import ModelLike, _as_spec_and_matrix, step_forward
from .conservation import link_counts
from .models import HamiltonianSpec, basis_state


def classify_state(psi: GaussVector) -> tuple[int, GaussInt] | None:
    """(1-based slot index, scalar factor) for a single-component state,
    None for a superposed one.  The zero vector is rejected: a permutation
    ontology has no 'nothing' state."""
    hits = [(i, c) for i, c in enumerate(psi) if c]
    if not hits:
        raise DegenerateStateError("zero vector has no component to classify")
    if len(hits) != 1:
        return None
    idx, value = hits[0]
    return idx + 1, value


@dataclass(frozen=True)
class Visit:
    """One visited state: slot/phase when single-component, k=None otherwise."""

    n: int
    k: int | None
    phase: GaussInt | None


@dataclass(frozen=True)
class CycleReport:
    """Outcome of a period search.

    period is None when no recurrence of the initial pair occurred within
    the budget.  visits covers one full period when found (steps 0..P-1),
    otherwise every computed state.  ontological is True iff every visited
    state is single-component.  link_number is the conserved total L of
    the initial pair.  expected_period, when set by a family scan, lets
    callers flag measured-vs-expected mismatches without hard-coding.
    """

    period: int | None
    visits: tuple[Visit, ...]
    ontological: bool
    link_number: int
    max_steps: int
    pair_index: int | None = None
    expected_period: int | None = None

    @property
    def found(self) -> bool:
        return self.period is not None

    @property
    def matches_expected(self) -> bool | None:
        if self.expected_period is None:
            return None
        return self.period == self.expected_period


def _visit(n: int, psi: GaussVector) -> Visit:
    if psi.is_zero():
        return Visit(n=n, k=None, phase=None)
    cls = classify_state(psi)
    if cls is None:
        return Visit(n=n, k=None, phase=None)
    return Visit(n=n, k=cls[0], phase=cls[1])


def find_period(
    psi0: GaussVector,
    psi1: GaussVector,
    model: ModelLike,
    max_steps: int,
    pair_index: int | None = None,
    expected_period: int | None = None,
) -> CycleReport:
    """Smallest P <= max_steps with (psi_P, psi_{P+1}) = (psi_0, psi_1),
    comparing entries exactly.  Sequential search, so a found period is
    minimal by construction."""
    if max_steps < 1:
        raise ValueError(f"max_steps must be >= 1, got {max_steps}")
    _, H = _as_spec_and_matrix(model)
    links = link_counts(psi0, psi1)
    states = [psi0, psi1]
    prev, curr = psi0, psi1
    period = None
    for p in range(1, max_steps + 1):
        prev, curr = curr, step_forward(prev, curr, H)
        states.append(curr)
        # pair starting at step p is (states[p], states[p+1])
        if states[p] == psi0 and states[p + 1] == psi1:
            period = p
            break
    visited = states[:period] if period is not None else states
    visits = tuple(_visit(n, s) for n, s in enumerate(visited))
    ontological = all(v.k is not None for v in visits)
    return CycleReport(
        period=period,
        visits=visits,
        ontological=ontological,
        link_number=links.total,
        max_steps=max_steps,
        pair_index=pair_index,
        expected_period=expected_period,
    )


def default_scan_budget(m: int) -> int:
    """Twice the expected cyclic-family period plus margin."""
    return 8 * m + 8


def scan_ontological_pairs(spec: HamiltonianSpec, max_steps: int | None = None) -> list[CycleReport]:
    """Run find_period for every neighbouring basis pair (e_k, e_{k+1}),
    k = 1..m-1, tagging each report with the expected 4m period of the
    cyclic family."""
    m = spec.dim
    budget = default_scan_budget(m) if max_steps is None else max_steps
    reports = []
    for k in range(1, m):
        reports.append(
            find_period(
                basis_state(m, k),
                basis_state(m, k + 1),
                spec,
                budget,
                pair_index=k,
                expected_period=4 * m,
            )
        )
    return reports
