"""Angular-momentum and energy structure of a coefficient table.

Direct weighted moments over the stored amplitudes, the branch-resolved
partial moments, their closed-form values, and distribution marginals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

from .expansion import CoefficientTable
from .states import PacketParams

__all__ = [
    "LadderMoments",
    "ObservableReport",
    "PartialMoments",
    "closed_form_energy",
    "closed_form_lz",
    "compute_report",
    "marginals",
    "partial_moment_identities",
]

_REPORT_TAIL_LIMIT = 1e-6
_IDENTITY_TAIL_LIMIT = 1e-9


@dataclass(frozen=True)
class PartialMoments:
    """Branch-resolved first moments over the m >= 0 and m < 0 ladders."""

    nr_m_nonneg: float  # mean n_r restricted to m >= 0
    nr_m_neg: float  # mean n_r restricted to m < 0
    ccw_quanta_m_nonneg: float  # mean (m + n_r) over m >= 0
    cw_quanta_m_neg: float  # mean (-m + n_r) over m < 0


@dataclass(frozen=True)
class ObservableReport:
    """Mean quantum numbers of a packet, summed directly from its table.

    mean_lz is in units of hbar, mean_energy in units of hbar omega, and
    norm_deficit is the truncation tail carried over from the table.
    """

    mean_m: float
    mean_abs_m: float
    mean_nr: float
    mean_lz: float
    mean_energy: float
    norm_deficit: float
    partials: PartialMoments


class LadderMoments(NamedTuple):
    """Combined branch moments and their closed-form targets.

    cw_quanta and ccw_quanta are the mean numbers of clockwise and
    counter-clockwise circular quanta; principal is the mean of
    2 n_r + |m| and net_m the mean of m.
    """

    cw_quanta: float
    ccw_quanta: float
    principal: float
    net_m: float


def compute_report(table: CoefficientTable) -> ObservableReport:
    """Weighted moments sum C^2 f(m, n_r) over the stored modes.

    Rejects tables whose truncation tail exceeds 1e-6, since the moments
    would silently lose that much weight.
    """
    if table.tail_mass >= _REPORT_TAIL_LIMIT:
        raise ValueError(
            f"tail mass {table.tail_mass:.3e} too large for trustworthy moments"
        )
    items = [(mode, c * c) for mode, c in table.entries.items()]
    mean_m = math.fsum(w * mode.m for mode, w in items)
    mean_abs_m = math.fsum(w * abs(mode.m) for mode, w in items)
    mean_nr = math.fsum(w * mode.n_r for mode, w in items)
    mean_energy = math.fsum(w * (mode.principal + 1) for mode, w in items)
    partials = PartialMoments(
        nr_m_nonneg=math.fsum(w * mode.n_r for mode, w in items if mode.m >= 0),
        nr_m_neg=math.fsum(w * mode.n_r for mode, w in items if mode.m < 0),
        ccw_quanta_m_nonneg=math.fsum(
            w * (mode.m + mode.n_r) for mode, w in items if mode.m >= 0
        ),
        cw_quanta_m_neg=math.fsum(
            w * (-mode.m + mode.n_r) for mode, w in items if mode.m < 0
        ),
    )
    return ObservableReport(
        mean_m=mean_m,
        mean_abs_m=mean_abs_m,
        mean_nr=mean_nr,
        mean_lz=mean_m,
        mean_energy=mean_energy,
        norm_deficit=table.tail_mass,
        partials=partials,
    )


def closed_form_lz(params: PacketParams) -> float:
    """Mean angular momentum xi0 eta0 in hbar units, negated for advanced chirality.

    The circular case reduces to xi0^2, i.e. M R^2 omega in physical units.
    """
    return params.chirality.sign * params.xi0 * params.eta0


def closed_form_energy(params: PacketParams) -> float:
    """Mean energy (xi0^2 + eta0^2)/2 + 1 in hbar omega units.

    The classical orbit energy plus the zero-point term.
    """
    return params.mean_quanta + 1.0


def partial_moment_identities(table: CoefficientTable) -> LadderMoments:
    """Branch-moment combinations with closed-form circular-quanta values.

    For a retarded packet: cw_quanta = half_diff^2, ccw_quanta = half_sum^2,
    principal = their sum and net_m = their difference (advanced chirality
    swaps the two quanta means). Sums are taken directly over table entries.
    """
    if table.tail_mass >= _IDENTITY_TAIL_LIMIT:
        raise ValueError(
            f"tail mass {table.tail_mass:.3e} too large for identity checks"
        )
    report = compute_report(table)
    p = report.partials
    return LadderMoments(
        cw_quanta=p.nr_m_nonneg + p.cw_quanta_m_neg,
        ccw_quanta=p.nr_m_neg + p.ccw_quanta_m_nonneg,
        principal=2.0 * report.mean_nr + report.mean_abs_m,
        net_m=report.mean_m,
    )


def marginals(table: CoefficientTable) -> tuple[dict[int, float], dict[int, float]]:
    """Distributions over m and over the principal number N.

    Both sum to 1 - tail_mass; keys are sorted ascending.
    """
    p_m: dict[int, float] = {}
    p_n: dict[int, float] = {}
    for mode, c in table.entries.items():
        w = c * c
        p_m[mode.m] = p_m.get(mode.m, 0.0) + w
        p_n[mode.principal] = p_n.get(mode.principal, 0.0) + w
    return dict(sorted(p_m.items())), dict(sorted(p_n.items()))
