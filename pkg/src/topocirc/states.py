"""State representations and gate application.

Two interchangeable representations are provided:

* :class:`StateVector` stores all ``2**Q`` amplitudes. Basis ordering is
  little-endian: qubit 0 is the least significant bit of the basis index.
* :class:`SingleExcitationState` stores one amplitude per qubit, the
  restriction to the Hamming-weight-1 sector. Only excitation-conserving
  gates (``RZ``, ``CompositeU``) act in this representation; bare ``RY``
  or ``CNOT`` are rejected because they leave the sector.

Gate kernels accept arrays with leading batch dimensions; the state index
must be the last axis. The noise module reuses them for batched
trajectories.
"""

from __future__ import annotations

import numpy as np

from .gates import CNOT, RY, RZ, CompositeU, Gate, composite_u_matrix, ry_matrix, rz_matrix


class SubspaceModeError(ValueError):
    """A gate that does not conserve excitation number was applied in subspace mode."""


def _check_finite(amps: np.ndarray) -> None:
    if not np.all(np.isfinite(amps.view(np.float64))):
        raise ValueError("amplitudes contain NaN or Inf")


class StateVector:
    """Dense amplitudes over all computational basis states of Q qubits."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        amplitudes = np.ascontiguousarray(amplitudes, dtype=complex)
        if amplitudes.shape != (2**num_qubits,):
            raise ValueError(
                f"expected {2**num_qubits} amplitudes, got {amplitudes.shape}"
            )
        _check_finite(amplitudes)
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    @classmethod
    def vacuum(cls, num_qubits: int) -> "StateVector":
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[0] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def basis_state(cls, num_qubits: int, excited=()) -> "StateVector":
        """Computational basis state with the given qubits excited."""
        index = 0
        for q in excited:
            if not 0 <= q < num_qubits:
                raise ValueError(f"qubit index {q} out of range")
            index |= 1 << q
        amps = np.zeros(2**num_qubits, dtype=complex)
        amps[index] = 1.0
        return cls(num_qubits, amps)

    @classmethod
    def from_label(cls, label: str) -> "StateVector":
        """Build a product state from a 'g'/'e' string; position i is qubit i."""
        excited = [i for i, ch in enumerate(label) if ch == "e"]
        if any(ch not in "ge" for ch in label):
            raise ValueError("state label must contain only 'g' and 'e'")
        return cls.basis_state(len(label), excited)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "StateVector":
        return StateVector(self.num_qubits, self.amplitudes.copy())

    def project_single_excitation(self) -> "SingleExcitationState":
        """Restriction to the Hamming-weight-1 basis states (renormalized check is caller's job)."""
        q = self.num_qubits
        amps = self.amplitudes[1 << np.arange(q)]
        return SingleExcitationState(q, amps)


class SingleExcitationState:
    """Amplitude per qubit in the single-excitation sector."""

    __slots__ = ("num_qubits", "amplitudes")

    def __init__(self, num_qubits: int, amplitudes: np.ndarray):
        amplitudes = np.ascontiguousarray(amplitudes, dtype=complex)
        if amplitudes.shape != (num_qubits,):
            raise ValueError(f"expected {num_qubits} amplitudes, got {amplitudes.shape}")
        _check_finite(amplitudes)
        self.num_qubits = num_qubits
        self.amplitudes = amplitudes

    @classmethod
    def localized(cls, num_qubits: int, qubit: int) -> "SingleExcitationState":
        if not 0 <= qubit < num_qubits:
            raise ValueError(f"qubit index {qubit} out of range")
        amps = np.zeros(num_qubits, dtype=complex)
        amps[qubit] = 1.0
        return cls(num_qubits, amps)

    def norm(self) -> float:
        return float(np.linalg.norm(self.amplitudes))

    def copy(self) -> "SingleExcitationState":
        return SingleExcitationState(self.num_qubits, self.amplitudes.copy())

    def to_statevector(self) -> StateVector:
        full = np.zeros(2**self.num_qubits, dtype=complex)
        full[1 << np.arange(self.num_qubits)] = self.amplitudes
        return StateVector(self.num_qubits, full)


# ---------------------------------------------------------------------------
# statevector kernels (batched: state index on the last axis)


def apply_single_qubit(amps: np.ndarray, num_qubits: int, qubit: int, m: np.ndarray) -> np.ndarray:
    lead = amps.shape[:-1]
    v = amps.reshape(lead + (2 ** (num_qubits - qubit - 1), 2, 2**qubit))
    v0 = v[..., 0, :]
    v1 = v[..., 1, :]
    t0 = m[0, 0] * v0 + m[0, 1] * v1
    t1 = m[1, 0] * v0 + m[1, 1] * v1
    v[..., 0, :] = t0
    v[..., 1, :] = t1
    return amps


def apply_cnot(amps: np.ndarray, num_qubits: int, control: int, target: int) -> np.ndarray:
    hi, lo = max(control, target), min(control, target)
    lead = amps.shape[:-1]
    v = amps.reshape(
        lead + (2 ** (num_qubits - 1 - hi), 2, 2 ** (hi - lo - 1), 2, 2**lo)
    )
    if control == hi:
        a = v[..., 1, :, 0, :].copy()
        v[..., 1, :, 0, :] = v[..., 1, :, 1, :]
        v[..., 1, :, 1, :] = a
    else:
        a = v[..., 0, :, 1, :].copy()
        v[..., 0, :, 1, :] = v[..., 1, :, 1, :]
        v[..., 1, :, 1, :] = a
    return amps


def apply_two_qubit(amps: np.ndarray, num_qubits: int, qubit_a: int, qubit_b: int, m4: np.ndarray) -> np.ndarray:
    """Apply a 4x4 matrix given in the ordered-pair basis 2*bit(qa)+bit(qb)."""
    hi, lo = max(qubit_a, qubit_b), min(qubit_a, qubit_b)
    lead = amps.shape[:-1]
    v = amps.reshape(
        lead + (2 ** (num_qubits - 1 - hi), 2, 2 ** (hi - lo - 1), 2, 2**lo)
    )
    slices = {}
    for bhi in (0, 1):
        for blo in (0, 1):
            ba, bb = (bhi, blo) if qubit_a == hi else (blo, bhi)
            slices[2 * ba + bb] = v[..., bhi, :, blo, :]
    old = [slices[i].copy() for i in range(4)]
    for i in range(4):
        slices[i][...] = (
            m4[i, 0] * old[0] + m4[i, 1] * old[1] + m4[i, 2] * old[2] + m4[i, 3] * old[3]
        )
    return amps


def _check_indices(num_qubits: int, qubits) -> None:
    for q in qubits:
        if not 0 <= q < num_qubits:
            raise ValueError(f"qubit index {q} out of range for {num_qubits} qubits")


def apply_gate(state, gate: Gate):
    """Apply one gate in place; returns the state for chaining."""
    if isinstance(state, StateVector):
        amps, q = state.amplitudes, state.num_qubits
        if isinstance(gate, RY):
            _check_indices(q, (gate.qubit,))
            apply_single_qubit(amps, q, gate.qubit, ry_matrix(gate.theta))
        elif isinstance(gate, RZ):
            _check_indices(q, (gate.qubit,))
            apply_single_qubit(amps, q, gate.qubit, rz_matrix(gate.phi))
        elif isinstance(gate, CNOT):
            _check_indices(q, (gate.control, gate.target))
            apply_cnot(amps, q, gate.control, gate.target)
        elif isinstance(gate, CompositeU):
            _check_indices(q, (gate.qubit_a, gate.qubit_b))
            apply_two_qubit(amps, q, gate.qubit_a, gate.qubit_b, composite_u_matrix(gate.theta))
        else:
            raise TypeError(f"unknown gate {gate!r}")
        return state

    if isinstance(state, SingleExcitationState):
        amps, q = state.amplitudes, state.num_qubits
        if isinstance(gate, RZ):
            _check_indices(q, (gate.qubit,))
            amps *= np.exp(-0.5j * gate.phi)
            amps[gate.qubit] *= np.exp(1j * gate.phi)
        elif isinstance(gate, CompositeU):
            _check_indices(q, (gate.qubit_a, gate.qubit_b))
            c, s = np.cos(gate.theta), np.sin(gate.theta)
            va, vb = amps[gate.qubit_a], amps[gate.qubit_b]
            amps[gate.qubit_a] = c * va - 1j * s * vb
            amps[gate.qubit_b] = c * vb - 1j * s * va
        elif isinstance(gate, (RY, CNOT)):
            raise SubspaceModeError(
                f"{type(gate).__name__} does not conserve excitation number in subspace mode"
            )
        else:
            raise TypeError(f"unknown gate {gate!r}")
        return state

    raise TypeError(f"unknown state type {type(state).__name__}")


def excitation_distribution(state) -> np.ndarray:
    """Per-qubit excitation probability p[q] = P(qubit q is excited)."""
    if isinstance(state, SingleExcitationState):
        return np.abs(state.amplitudes) ** 2
    if isinstance(state, StateVector):
        q = state.num_qubits
        probs = np.abs(state.amplitudes) ** 2
        out = np.empty(q)
        for i in range(q):
            out[i] = probs.reshape(2 ** (q - i - 1), 2, 2**i)[:, 1, :].sum()
        return out
    raise TypeError(f"unknown state type {type(state).__name__}")
