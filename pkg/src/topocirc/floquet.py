"""Builders for the driven 1D and 2D lattice circuits and the
mean-displacement detection protocol.

Angle bookkeeping. The drives are parameterized by rotation angles
(alpha, beta) in 1D and (gamma, delta) in 2D, chosen so that the
one-cycle Bloch quasienergies obey

    cos E(k) = cos(alpha/2) cos(beta/2) - sin(alpha/2) sin(beta/2) cos k.

Each cycle therefore applies on-site composite gates with subspace mixing
angle alpha/4 twice and hopping gates with angle beta/2 once, i.e. the
per-step angle equals coupling times step duration (J_o T/3 = alpha/4,
J_s T/3 = beta/2). The same bookkeeping gives 2D step angles pi/4,
gamma/4 and delta/2. The closed-form edge states of the invariants
module are exact eigenvectors of these cycles, which pins the convention.

The shifted cycle used by the displacement protocol is the conjugate
symmetric frame: half a hopping step, the full on-site evolution, then
the second hopping half. Started this way the drive begins with a
hopping gate, and the time-averaged displacement centers quantize.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import pi

import numpy as np

from .circuits import Circuit, run_cycles
from .gates import CompositeU
from .lattice import LatticeMap1D, LatticeMap2D
from .states import SingleExcitationState


class BoundaryReachError(RuntimeError):
    """Amplitude reached the open ends of the chain during a displacement run."""


@dataclass(frozen=True)
class FloquetParams1D:
    alpha: float
    beta: float
    num_sites: int
    cycles: int = 1

    def __post_init__(self):
        if self.num_sites < 2:
            raise ValueError("need at least two sites")
        if self.cycles < 0:
            raise ValueError("cycle count must be >= 0")


@dataclass(frozen=True)
class FloquetParams2D:
    gamma: float
    delta: float
    num_sites_x: int
    num_sites_y: int
    cycles: int = 1

    def __post_init__(self):
        if self.num_sites_x < 2 or self.num_sites_y < 2:
            raise ValueError("need at least two sites in each direction")
        if self.cycles < 0:
            raise ValueError("cycle count must be >= 0")


def _onsite_layer_1d(m: LatticeMap1D, theta: float) -> list[CompositeU]:
    return [
        CompositeU(theta, m.qubit_up(x), m.qubit_down(x))
        for x in range(1, m.num_sites + 1)
    ]


def _soc_layer_1d(m: LatticeMap1D, theta: float) -> list[CompositeU]:
    return [
        CompositeU(theta, m.qubit_down(x), m.qubit_up(x + 1))
        for x in range(1, m.num_sites)
    ]


def u1_cycle(params: FloquetParams1D) -> Circuit:
    """One drive cycle: on-site, hopping, on-site."""
    m = LatticeMap1D(params.num_sites)
    return Circuit(
        m.num_qubits,
        [
            _onsite_layer_1d(m, params.alpha / 4.0),
            _soc_layer_1d(m, params.beta / 2.0),
            _onsite_layer_1d(m, params.alpha / 4.0),
        ],
    )


def u1_prime_cycle(params: FloquetParams1D) -> Circuit:
    """Shifted cycle starting with a hopping gate (conjugate symmetric frame)."""
    m = LatticeMap1D(params.num_sites)
    return Circuit(
        m.num_qubits,
        [
            _soc_layer_1d(m, params.beta / 4.0),
            _onsite_layer_1d(m, params.alpha / 4.0),
            _onsite_layer_1d(m, params.alpha / 4.0),
            _soc_layer_1d(m, params.beta / 4.0),
        ],
    )


def build_u1_circuit(params: FloquetParams1D) -> Circuit:
    return u1_cycle(params).repeated(params.cycles)


def build_u1_prime_circuit(params: FloquetParams1D) -> Circuit:
    return u1_prime_cycle(params).repeated(params.cycles)


def u2_cycle(params: FloquetParams2D) -> Circuit:
    """One 2D drive cycle: on-site, x-hopping, y-hopping; open boundaries."""
    m = LatticeMap2D(params.num_sites_x, params.num_sites_y)
    onsite = [
        CompositeU(pi / 4.0, m.qubit_up(x, y), m.qubit_down(x, y))
        for y in range(1, m.num_sites_y + 1)
        for x in range(1, m.num_sites_x + 1)
    ]
    soc_x = [
        CompositeU(params.gamma / 4.0, m.qubit_down(x, y), m.qubit_up(x + 1, y))
        for y in range(1, m.num_sites_y + 1)
        for x in range(1, m.num_sites_x)
    ]
    soc_y = [
        CompositeU(params.delta / 2.0, m.qubit_down(x, y), m.qubit_up(x, y + 1))
        for y in range(1, m.num_sites_y)
        for x in range(1, m.num_sites_x + 1)
    ]
    return Circuit(m.num_qubits, [onsite, soc_x, soc_y])


def build_u2_circuit(params: FloquetParams2D) -> Circuit:
    return u2_cycle(params).repeated(params.cycles)


@dataclass
class DisplacementSeries:
    """Per-cycle mean displacements and their running time averages.

    p_bar comes from the plain drive, p_bar_prime from the shifted drive;
    the detected pair is p_zero = -p_bar - p_bar_prime and
    p_pi = p_bar - p_bar_prime. Centers are means over cycles 1..n_max.
    """

    cycles: np.ndarray
    p_bar: np.ndarray
    p_bar_prime: np.ndarray
    p_zero: np.ndarray = field(init=False)
    p_pi: np.ndarray = field(init=False)
    center_zero_running: np.ndarray = field(init=False)
    center_pi_running: np.ndarray = field(init=False)

    def __post_init__(self):
        self.p_zero = -self.p_bar - self.p_bar_prime
        self.p_pi = self.p_bar - self.p_bar_prime
        counts = np.arange(1, len(self.cycles) + 1)
        self.center_zero_running = np.cumsum(self.p_zero) / counts
        self.center_pi_running = np.cumsum(self.p_pi) / counts

    @property
    def center_zero(self) -> float:
        return float(self.center_zero_running[-1])

    @property
    def center_pi(self) -> float:
        return float(self.center_pi_running[-1])

    def to_dict(self) -> dict:
        return {
            "cycles": self.cycles.tolist(),
            "p_bar": self.p_bar.tolist(),
            "p_bar_prime": self.p_bar_prime.tolist(),
            "p_zero": self.p_zero.tolist(),
            "p_pi": self.p_pi.tolist(),
            "center_zero": self.center_zero,
            "center_pi": self.center_pi,
        }


def mean_displacement(params: FloquetParams1D, n_max: int) -> DisplacementSeries:
    """Mean-displacement series detecting the winding number pair.

    The chain length must be odd and satisfy N >= 4*n_max + 1 so no
    amplitude reaches the open ends. The excitation starts on the central
    odd (spin-up) qubit; the displacement is the even-qubit excitation
    distribution weighted by site offset from the start.
    """
    n = params.num_sites
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    if n % 2 == 0:
        raise ValueError("number of sites must be odd")
    if n < 4 * n_max + 1:
        raise ValueError(f"need num_sites >= {4 * n_max + 1} for n_max={n_max}")
    m = LatticeMap1D(n)
    x0 = (n + 1) // 2
    offsets = np.arange(1, n + 1) - x0
    end_qubits = [m.qubit_up(1), m.qubit_down(1), m.qubit_up(n), m.qubit_down(n)]

    results = []
    for cycle in (u1_cycle(params), u1_prime_cycle(params)):
        state = SingleExcitationState.localized(m.num_qubits, m.qubit_up(x0))
        series = np.empty(n_max)
        for i in range(n_max):
            run_cycles(cycle, state, 1)
            if np.abs(state.amplitudes[end_qubits]).max() > 1e-6:
                raise BoundaryReachError(
                    f"amplitude reached the chain ends at cycle {i + 1}"
                )
            p_down = np.abs(state.amplitudes[1::2]) ** 2
            series[i] = float(offsets @ p_down)
        results.append(series)

    return DisplacementSeries(
        cycles=np.arange(1, n_max + 1),
        p_bar=results[0],
        p_bar_prime=results[1],
    )
