"""
Encoding RSSI readings into quantum states
==========================================

A 3-anchor RSSI reading becomes a 3-qubit state in two steps: scale each
signal strength to [0, 1], then run the entangling feature map. The map is
the workhorse behind both the hybrid model and the quantum-fingerprint
baseline, so this script looks at what it actually produces.
"""

import numpy as np

from hqloc.baselines import (
    build_fingerprint_db,
    fidelity,
    fingerprint_fidelities,
    fingerprint_predict,
    swap_test_fidelity,
)
from hqloc.circuits import feature_state, real_amplitudes_template, zz_feature_map
from hqloc.data import RssiSample, fit_scaler, transform

##############################################################################
# Scaling
# ~~~~~~~
#
# Raw RSSI lives around -40..-90 dBm. The scaler maps each anchor's
# training range onto [0, 1] and clips anything outside it.

train = [
    RssiSample(rssi=(-52.0, -61.0, -48.0), position=(1.0, 1.0)),
    RssiSample(rssi=(-44.0, -70.0, -55.0), position=(4.5, 1.0)),
    RssiSample(rssi=(-58.0, -49.0, -62.0), position=(1.0, 4.0)),
    RssiSample(rssi=(-63.0, -55.0, -41.0), position=(4.5, 4.0)),
]
scaler = fit_scaler(train)
x = transform(scaler, (-50.0, -60.0, -50.0))
print("scaled features:", np.round(x, 4))

##############################################################################
# The feature map circuit
# ~~~~~~~~~~~~~~~~~~~~~~~
#
# The encoding is: H on every qubit, a phase proportional to each feature,
# then for every neighbouring qubit pair a CX / phase / CX sandwich whose
# angle mixes the two features. Binding the features produces 12 concrete
# gates on 3 qubits.

circuit = zz_feature_map(3, x)
print("\nfeature map gates:")
for gate in circuit.concrete_gates():
    angle = "" if gate.angle is None else f"  angle={gate.angle:+.4f}"
    control = "" if gate.control is None else f"  control={gate.control}"
    print(f"  {gate.kind:<2} target={gate.target}{control}{angle}")

state = feature_state(x)
print("\nencoded amplitudes (moduli):", np.round(np.abs(state.amplitudes), 4))

##############################################################################
# The trainable ansatz that follows the encoding in the hybrid model is a
# RY layer, a CX chain, and a second RY layer: 8 gates, 6 angles, and only
# real amplitudes, which keeps the model's outputs smooth in its parameters.

print("\nansatz template:", len(real_amplitudes_template(3).gates), "gates,",
      real_amplitudes_template(3).n_params, "trainable angles")

##############################################################################
# Fidelity as reading similarity
# ~~~~~~~~~~~~~~~~~~~~~~~~~~~~~~
#
# The squared overlap |<a|b>|^2 of two encoded readings acts as a kernel:
# it is 1 for identical readings and falls off as they separate.

nearby = transform(scaler, (-50.5, -60.5, -50.5))
far = transform(scaler, (-60.0, -50.0, -60.0))
print("\nfidelity with itself:        ", fidelity(state, feature_state(x)))
print("fidelity with nearby reading:", round(fidelity(state, feature_state(nearby)), 6))
print("fidelity with far reading:   ", round(fidelity(state, feature_state(far)), 6))

##############################################################################
# The swap test estimates the same overlap the way a quantum device would,
# with an ancilla qubit and controlled swaps instead of direct access to
# the amplitudes. Exact simulation confirms both routes agree.

a, b = feature_state(x), feature_state(far)
print("\ndirect overlap:   ", fidelity(a, b))
print("swap-test overlap:", swap_test_fidelity(a, b))

##############################################################################
# Fingerprint matching
# ~~~~~~~~~~~~~~~~~~~~
#
# The quantum-fingerprint baseline stores one encoded state per surveyed
# position and answers a query with the position of the highest-fidelity
# entry. No training involved; it is pure nearest-neighbour in state space.

features = np.array([transform(scaler, s.rssi) for s in train])
coords = np.array([s.position for s in train])
db = build_fingerprint_db(features, coords)
print("\nfidelities against the four stored fingerprints:",
      np.round(fingerprint_fidelities(db, x), 4))
print("predicted position:", fingerprint_predict(db, x))
