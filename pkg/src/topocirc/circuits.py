"""Circuits as ordered gate layers, plus the two propagation engines."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .gates import CNOT, RY, RZ, CompositeU, Gate, composite_u_block, expand_composite_u, gate_qubits
from .states import SingleExcitationState, StateVector, SubspaceModeError, apply_gate


@dataclass
class Circuit:
    """Ordered list of gate layers; layer 0 acts first.

    Gates within one layer must act on disjoint qubits.
    """

    num_qubits: int
    layers: list[list[Gate]] = field(default_factory=list)

    def __post_init__(self):
        for i, layer in enumerate(self.layers):
            seen: set[int] = set()
            for gate in layer:
                qs = gate_qubits(gate)
                for q in qs:
                    if not 0 <= q < self.num_qubits:
                        raise ValueError(
                            f"layer {i}: qubit {q} out of range for {self.num_qubits} qubits"
                        )
                    if q in seen:
                        raise ValueError(f"layer {i}: qubit {q} used by two gates")
                    seen.add(q)

    def gates(self):
        """All gates in time order."""
        for layer in self.layers:
            yield from layer

    @property
    def num_gates(self) -> int:
        return sum(len(layer) for layer in self.layers)

    def repeated(self, n: int) -> "Circuit":
        if n < 0:
            raise ValueError("repeat count must be >= 0")
        return Circuit(self.num_qubits, [list(layer) for _ in range(n) for layer in self.layers])

    def expand_macros(self) -> "Circuit":
        """Expand every CompositeU into its 8 elementary gates.

        Macros that share a layer stay parallel: sub-layer j holds the j-th
        elementary gate of every macro in the original layer.
        """
        out: list[list[Gate]] = []
        for layer in self.layers:
            plain = [g for g in layer if not isinstance(g, CompositeU)]
            macros = [g for g in layer if isinstance(g, CompositeU)]
            if plain:
                out.append(plain)
            if macros:
                expansions = [expand_composite_u(m.theta, m.qubit_a, m.qubit_b) for m in macros]
                for j in range(8):
                    out.append([exp[j] for exp in expansions])
        return Circuit(self.num_qubits, out)


def apply_circuit(state, circuit: Circuit):
    """Apply every gate of the circuit in time order."""
    for gate in circuit.gates():
        apply_gate(state, gate)
    return state


def compile_single_excitation(circuit: Circuit) -> np.ndarray:
    """Unitary induced on the single-excitation subspace, as a QxQ matrix.

    The circuit may contain only excitation-conserving gates (CompositeU,
    RZ). Each CompositeU contributes a 2x2 block update.
    """
    q = circuit.num_qubits
    u = np.eye(q, dtype=complex)
    for gate in circuit.gates():
        if isinstance(gate, CompositeU):
            b = composite_u_block(gate.theta)
            rows = [gate.qubit_a, gate.qubit_b]
            u[rows, :] = b @ u[rows, :]
        elif isinstance(gate, RZ):
            u *= np.exp(-0.5j * gate.phi)
            u[gate.qubit, :] *= np.exp(1j * gate.phi)
        else:
            raise SubspaceModeError(
                f"{type(gate).__name__} does not conserve excitation number"
            )
    return u


class _CompiledLayer:
    """Vectorized single-excitation update for one layer."""

    __slots__ = ("idx_a", "idx_b", "cos", "msin", "phase_global", "rz_idx", "rz_factor")

    def __init__(self, layer: list[Gate]):
        pairs = [(g.qubit_a, g.qubit_b, g.theta) for g in layer if isinstance(g, CompositeU)]
        rzs = [(g.qubit, g.phi) for g in layer if isinstance(g, RZ)]
        for g in layer:
            if not isinstance(g, (CompositeU, RZ)):
                raise SubspaceModeError(
                    f"{type(g).__name__} does not conserve excitation number"
                )
        if pairs:
            self.idx_a = np.array([p[0] for p in pairs])
            self.idx_b = np.array([p[1] for p in pairs])
            thetas = np.array([p[2] for p in pairs])
            self.cos = np.cos(thetas)
            self.msin = -1j * np.sin(thetas)
        else:
            self.idx_a = None
        if rzs:
            self.phase_global = np.prod([np.exp(-0.5j * phi) for _, phi in rzs])
            self.rz_idx = np.array([q for q, _ in rzs])
            self.rz_factor = np.array([np.exp(1j * phi) for _, phi in rzs])
        else:
            self.phase_global = None

    def apply(self, amps: np.ndarray) -> None:
        if self.idx_a is not None:
            va = amps[self.idx_a]
            vb = amps[self.idx_b]
            amps[self.idx_a] = self.cos * va + self.msin * vb
            amps[self.idx_b] = self.cos * vb + self.msin * va
        if self.phase_global is not None:
            amps *= self.phase_global
            amps[self.rz_idx] *= self.rz_factor


def run_cycles(cycle: Circuit, state, n: int):
    """Apply the cycle circuit n times; returns the evolved state.

    SingleExcitationState input uses precompiled per-layer vector updates,
    which keeps one cycle at O(gates) array work independent of qubit count.
    """
    if n < 0:
        raise ValueError("cycle count must be >= 0")
    if isinstance(state, SingleExcitationState):
        compiled = [_CompiledLayer(layer) for layer in cycle.layers]
        amps = state.amplitudes
        for _ in range(n):
            for layer in compiled:
                layer.apply(amps)
        return state
    if isinstance(state, StateVector):
        for _ in range(n):
            apply_circuit(state, cycle)
        return state
    raise TypeError(f"unknown state type {type(state).__name__}")
