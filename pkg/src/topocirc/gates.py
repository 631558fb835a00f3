"""Elementary gates and the composite two-qubit excitation-hopping gate.

Conventions used throughout the package:

* ``|g> = |0>`` and ``|e> = |1>``.
* ``RY(theta) = exp(-i theta sigma_y / 2)``,
  ``RZ(phi) = diag(exp(-i phi / 2), exp(+i phi / 2))``.
* Two-qubit matrices on an ordered pair ``(qa, qb)`` use the local basis
  index ``2*bit(qa) + bit(qb)``, i.e. basis order ``(gg, ge, eg, ee)`` with
  the first letter referring to ``qa``.

``CompositeU(theta, qa, qb)`` is the macro gate that rotates the
single-excitation pair states while leaving ``|gg>`` and ``|ee>``
untouched:

    U(theta) = cos(theta) (|ge><ge| + |eg><eg|)
               - i sin(theta) (|ge><eg| + |eg><ge|)

It expands deterministically into 4 CNOTs and 4 single-qubit rotations.
The expansion is ordered so that its matrix product reproduces the block
form above; the reversed ordering produces the conjugate block and is
rejected by the golden tests.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Union

import numpy as np

# Z+ / Z- in the composite sequence are rz(+3pi/2) / rz(-3pi/2)
Z_PLUS_ANGLE = 1.5 * math.pi


@dataclass(frozen=True)
class RY:
    theta: float
    qubit: int


@dataclass(frozen=True)
class RZ:
    phi: float
    qubit: int


@dataclass(frozen=True)
class CNOT:
    control: int
    target: int

    def __post_init__(self):
        if self.control == self.target:
            raise ValueError("CNOT control and target must differ")


@dataclass(frozen=True)
class CompositeU:
    theta: float
    qubit_a: int
    qubit_b: int

    def __post_init__(self):
        if self.qubit_a == self.qubit_b:
            raise ValueError("CompositeU qubits must differ")


Gate = Union[RY, RZ, CNOT, CompositeU]


def gate_qubits(gate: Gate) -> tuple[int, ...]:
    """Qubits touched by a gate, in declaration order."""
    if isinstance(gate, (RY, RZ)):
        return (gate.qubit,)
    if isinstance(gate, CNOT):
        return (gate.control, gate.target)
    return (gate.qubit_a, gate.qubit_b)


def ry_matrix(theta: float) -> np.ndarray:
    c, s = math.cos(theta / 2.0), math.sin(theta / 2.0)
    return np.array([[c, -s], [s, c]], dtype=complex)


def rz_matrix(phi: float) -> np.ndarray:
    return np.array(
        [[np.exp(-0.5j * phi), 0.0], [0.0, np.exp(0.5j * phi)]], dtype=complex
    )


def expand_composite_u(theta: float, qubit_a: int, qubit_b: int) -> list[Gate]:
    """Canonical 8-gate expansion of ``CompositeU(theta, qa, qb)``.

    Returned in time order (first gate acts first).
    """
    if qubit_a == qubit_b:
        raise ValueError("CompositeU qubits must differ")
    a, b = qubit_a, qubit_b
    return [
        CNOT(a, b),
        RZ(Z_PLUS_ANGLE, a),
        RY(-theta, a),
        CNOT(b, a),
        RY(theta, a),
        CNOT(b, a),
        RZ(-Z_PLUS_ANGLE, a),
        CNOT(a, b),
    ]


# CNOT matrices in the ordered-pair basis (gg, ge, eg, ee)
_CNOT_AB = np.array(
    [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]], dtype=complex
)
_CNOT_BA = np.array(
    [[1, 0, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0]], dtype=complex
)
_I2 = np.eye(2, dtype=complex)


def pair_matrix(gate: Gate, qubit_a: int, qubit_b: int) -> np.ndarray:
    """4x4 matrix of an elementary gate embedded on the pair (qa, qb)."""
    if isinstance(gate, RY):
        m = ry_matrix(gate.theta)
    elif isinstance(gate, RZ):
        m = rz_matrix(gate.phi)
    elif isinstance(gate, CNOT):
        if (gate.control, gate.target) == (qubit_a, qubit_b):
            return _CNOT_AB.copy()
        if (gate.control, gate.target) == (qubit_b, qubit_a):
            return _CNOT_BA.copy()
        raise ValueError("CNOT does not act on the given pair")
    else:
        raise TypeError(f"not an elementary gate: {gate!r}")
    if gate.qubit == qubit_a:
        return np.kron(m, _I2)
    if gate.qubit == qubit_b:
        return np.kron(_I2, m)
    raise ValueError("gate does not act on the given pair")


def composite_u_matrix(theta: float) -> np.ndarray:
    """Exact matrix product of the canonical 8-gate sequence on a pair.

    Serves as the oracle for the block structure: identical to
    ``composite_u_target(theta)`` up to floating point roundoff.
    """
    m = np.eye(4, dtype=complex)
    for gate in expand_composite_u(theta, 0, 1):
        m = pair_matrix(gate, 0, 1) @ m
    return m


def composite_u_target(theta: float) -> np.ndarray:
    """Target block form of the composite gate on a pair.

    Identity on (gg, ee); rotation ``cos/-i sin`` on the (ge, eg) block.
    """
    c, s = math.cos(theta), math.sin(theta)
    m = np.eye(4, dtype=complex)
    m[1, 1] = c
    m[2, 2] = c
    m[1, 2] = -1j * s
    m[2, 1] = -1j * s
    return m


def composite_u_block(theta: float) -> np.ndarray:
    """2x2 action of the composite gate on the single-excitation pair."""
    c, s = math.cos(theta), math.sin(theta)
    return np.array([[c, -1j * s], [-1j * s, c]], dtype=complex)
