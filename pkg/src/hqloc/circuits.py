"""Parameterized circuits: the data-encoding feature map and the trainable ansatz.

A :class:`ParamCircuit` holds gate templates whose angles are either concrete
floats or slot references resolved by :meth:`ParamCircuit.bind`:

* :class:`ParamSlot` -- angle taken directly from the trainable vector phi,
* :class:`FeaturePhase` -- angle ``2 * x[i]`` (angle encoding of one feature),
* :class:`PairPhase` -- angle ``2 * (pi - x[i]) * (pi - x[j])`` coupling two
  features on the entangled pair.

Both public builders return fully bound circuits. Features are expected to be
pre-scaled to [0, 1] by the data pipeline before encoding.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .statevector import Gate, Statevector, apply_gates, zero_state

N_FEATURES = 3
N_ANSATZ_PARAMS = 6


@dataclass(frozen=True)
class ParamSlot:
    """Angle taken from the trainable parameter vector at ``index``."""

    index: int


@dataclass(frozen=True)
class FeaturePhase:
    """Angle ``2 * x[index]`` for single-qubit phase encoding."""

    index: int


@dataclass(frozen=True)
class PairPhase:
    """Angle ``2 * (pi - x[i]) * (pi - x[j])`` on an entangled qubit pair."""

    i: int
    j: int


AngleSpec = float | ParamSlot | FeaturePhase | PairPhase | None


@dataclass(frozen=True)
class GateTemplate:
    kind: str
    target: int
    control: int | None = None
    angle: AngleSpec = None


@dataclass(frozen=True)
class ParamCircuit:
    """Ordered gate templates over ``n_qubits`` with open data/parameter slots."""

    n_qubits: int
    gates: tuple[GateTemplate, ...]
    n_features: int = 0
    n_params: int = 0

    def bind(self, x=None, phi=None) -> "ParamCircuit":
        """Substitute feature vector ``x`` and/or parameter vector ``phi``.

        Returns a circuit whose touched slots are concrete floats; fully bound
        once both slot families are resolved.
        """
        if self.n_features and x is None:
            raise ValueError(f"circuit expects a feature vector of length {self.n_features}")
        if self.n_params and phi is None:
            raise ValueError(f"circuit expects a parameter vector of length {self.n_params}")
        if x is not None:
            x = np.asarray(x, dtype=float)
            if x.shape != (self.n_features,):
                raise ValueError(
                    f"expected {self.n_features} features, got shape {x.shape}"
                )
        if phi is not None:
            phi = np.asarray(phi, dtype=float)
            if phi.shape != (self.n_params,):
                raise ValueError(
                    f"expected {self.n_params} parameters, got shape {phi.shape}"
                )
        bound = []
        for g in self.gates:
            a = g.angle
            if isinstance(a, ParamSlot):
                a = float(phi[a.index])
            elif isinstance(a, FeaturePhase):
                a = 2.0 * float(x[a.index])
            elif isinstance(a, PairPhase):
                a = 2.0 * (math.pi - float(x[a.i])) * (math.pi - float(x[a.j]))
            bound.append(replace(g, angle=a))
        return ParamCircuit(self.n_qubits, tuple(bound), 0, 0)

    def concrete_gates(self) -> list[Gate]:
        """Materialize a fully bound circuit as simulator gates."""
        gates = []
        for g in self.gates:
            if not (g.angle is None or isinstance(g.angle, float)):
                raise ValueError(f"unbound angle slot {g.angle!r}; call bind() first")
            gates.append(Gate(g.kind, g.target, g.control, g.angle))
        return gates


def zz_feature_map_template(n_qubits: int = N_FEATURES) -> ParamCircuit:
    """Angle-encoding feature map with linearly entangled pair phases, one repetition.

    Layout: H on every qubit, a single-feature phase per qubit, then for each
    neighbouring pair (i, i+1) the sandwich CX / pair phase on i+1 / CX.
    """
    if n_qubits < 1:
        raise ValueError("feature map needs at least one qubit")
    gates = [GateTemplate("H", q) for q in range(n_qubits)]
    gates += [GateTemplate("P", q, angle=FeaturePhase(q)) for q in range(n_qubits)]
    for i in range(n_qubits - 1):
        gates.append(GateTemplate("CX", i + 1, control=i))
        gates.append(GateTemplate("P", i + 1, angle=PairPhase(i, i + 1)))
        gates.append(GateTemplate("CX", i + 1, control=i))
    return ParamCircuit(n_qubits, tuple(gates), n_features=n_qubits, n_params=0)


def real_amplitudes_template(n_qubits: int = N_FEATURES) -> ParamCircuit:
    """Trainable ansatz: RY layer, linear CX chain, RY layer; one repetition.

    Uses 2 * n_qubits parameters and keeps amplitudes real for real inputs
    (RY and CX both have real matrices).
    """
    if n_qubits < 1:
        raise ValueError("ansatz needs at least one qubit")
    gates = [GateTemplate("RY", q, angle=ParamSlot(q)) for q in range(n_qubits)]
    gates += [GateTemplate("CX", i + 1, control=i) for i in range(n_qubits - 1)]
    gates += [
        GateTemplate("RY", q, angle=ParamSlot(n_qubits + q)) for q in range(n_qubits)
    ]
    return ParamCircuit(n_qubits, tuple(gates), n_features=0, n_params=2 * n_qubits)


def zz_feature_map(n_qubits: int, x) -> ParamCircuit:
    """Feature map bound to the concrete feature vector ``x``."""
    return zz_feature_map_template(n_qubits).bind(x=x)


def real_amplitudes(n_qubits: int, phi) -> ParamCircuit:
    """Ansatz bound to the concrete parameter vector ``phi``."""
    return real_amplitudes_template(n_qubits).bind(phi=phi)


def run_circuit(state: Statevector, circuit: ParamCircuit) -> Statevector:
    """Apply a fully bound circuit to ``state``."""
    return apply_gates(state, circuit.concrete_gates())


def feature_state(x) -> Statevector:
    """Encode a feature vector into a statevector via the feature map."""
    x = np.asarray(x, dtype=float)
    return run_circuit(zero_state(x.size), zz_feature_map(x.size, x))
