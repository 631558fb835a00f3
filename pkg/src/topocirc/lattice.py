"""Mappings between spinful lattice sites and qubit indices.

Sites are 1-based (matching the usual Q_1 ... Q_2N naming), qubits are
0-based. In 1D, site x maps to the qubit pair (2x-2, 2x-1): the even-index
qubit carries spin up, the odd-index qubit spin down. In 2D, sites are
laid out row-major with x fastest.
"""

from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class LatticeMap1D:
    num_sites: int

    def __post_init__(self):
        if self.num_sites < 1:
            raise ValueError("need at least one site")

    @property
    def num_qubits(self) -> int:
        return 2 * self.num_sites

    def _check(self, x: int) -> None:
        if not 1 <= x <= self.num_sites:
            raise ValueError(f"site {x} out of range 1..{self.num_sites}")

    def qubit_up(self, x: int) -> int:
        """Qubit simulating spin up at site x (odd qubit Q_{2x-1})."""
        self._check(x)
        return 2 * x - 2

    def qubit_down(self, x: int) -> int:
        """Qubit simulating spin down at site x (even qubit Q_{2x})."""
        self._check(x)
        return 2 * x - 1


@dataclass(frozen=True)
class LatticeMap2D:
    num_sites_x: int
    num_sites_y: int

    def __post_init__(self):
        if self.num_sites_x < 1 or self.num_sites_y < 1:
            raise ValueError("need at least one site in each direction")

    @property
    def num_qubits(self) -> int:
        return 2 * self.num_sites_x * self.num_sites_y

    def _site_index(self, x: int, y: int) -> int:
        if not (1 <= x <= self.num_sites_x and 1 <= y <= self.num_sites_y):
            raise ValueError(
                f"site ({x},{y}) out of range "
                f"1..{self.num_sites_x} x 1..{self.num_sites_y}"
            )
        return (y - 1) * self.num_sites_x + (x - 1)

    def qubit_up(self, x: int, y: int) -> int:
        return 2 * self._site_index(x, y)

    def qubit_down(self, x: int, y: int) -> int:
        return 2 * self._site_index(x, y) + 1
