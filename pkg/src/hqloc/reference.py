"""Published reference RMSE values (meters) on the public three-scenario datasets.

Yardsticks for judging reproduction runs against the real datasets, used
by the acceptance suite. Keys are (scenario, technology); methods cover
the classical network, KNN, the quantum-fingerprint matcher, and the
hybrid model evaluated on quantum hardware and on an exact simulator.
"""

REFERENCE_RMSE_M = {
    ("Sc-1", "Bluetooth"): {
        "classical_nn": 1.277, "knn": 1.220, "quantum_fingerprint": 1.300,
        "hqnn_hardware": 1.273, "hqnn_simulator": 1.216,
    },
    ("Sc-1", "WiFi"): {
        "classical_nn": 1.290, "knn": 1.296, "quantum_fingerprint": 1.526,
        "hqnn_hardware": 1.367, "hqnn_simulator": 1.289,
    },
    ("Sc-1", "Zigbee"): {
        "classical_nn": 1.368, "knn": 1.342, "quantum_fingerprint": 1.471,
        "hqnn_hardware": 1.196, "hqnn_simulator": 1.108,
    },
    ("Sc-2", "Bluetooth"): {
        "classical_nn": 1.175, "knn": 1.273, "quantum_fingerprint": 2.171,
        "hqnn_hardware": 1.353, "hqnn_simulator": 1.279,
    },
    ("Sc-2", "WiFi"): {
        "classical_nn": 1.583, "knn": 1.272, "quantum_fingerprint": 1.755,
        "hqnn_hardware": 1.339, "hqnn_simulator": 1.231,
    },
    ("Sc-2", "Zigbee"): {
        "classical_nn": 0.819, "knn": 1.261, "quantum_fingerprint": 2.105,
        "hqnn_hardware": 0.971, "hqnn_simulator": 0.918,
    },
    ("Sc-3", "Bluetooth"): {
        "classical_nn": 1.384, "knn": 1.432, "quantum_fingerprint": 2.396,
        "hqnn_hardware": 1.337, "hqnn_simulator": 1.201,
    },
    ("Sc-3", "WiFi"): {
        "classical_nn": 0.999, "knn": 1.201, "quantum_fingerprint": 2.532,
        "hqnn_hardware": 1.224, "hqnn_simulator": 1.138,
    },
    ("Sc-3", "Zigbee"): {
        "classical_nn": 1.306, "knn": 1.379, "quantum_fingerprint": 2.616,
        "hqnn_hardware": 1.471, "hqnn_simulator": 1.298,
    },
}
