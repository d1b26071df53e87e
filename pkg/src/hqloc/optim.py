"""Parameter update rules: Adam (primary) and plain SGD.

One optimizer state spans the full flat parameter vector, so quantum angles
and classical weights are updated jointly by the same rule.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np


@dataclass(frozen=True)
class AdamState:
    m: np.ndarray
    v: np.ndarray
    t: int
    beta1: float = 0.9
    beta2: float = 0.999
    eps: float = 1e-8
    eta: float = 0.001


def init_adam(
    n_params: int,
    eta: float = 0.001,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
) -> AdamState:
    """Fresh moment estimates (all zero) for a parameter vector of length ``n_params``."""
    return AdamState(
        m=np.zeros(n_params), v=np.zeros(n_params), t=0,
        beta1=beta1, beta2=beta2, eps=eps, eta=eta,
    )


def adam_step(
    state: AdamState, params: np.ndarray, grads: np.ndarray
) -> tuple[AdamState, np.ndarray]:
    """One Adam update; returns the advanced state and the new parameters.

    m <- b1*m + (1-b1)*g, v <- b2*v + (1-b2)*g^2, then bias-corrected
    m_hat = m/(1-b1^t), v_hat = v/(1-b2^t) with t incremented first, and
    theta <- theta - eta * m_hat / (sqrt(v_hat) + eps), all elementwise.
    """
    params = np.asarray(params, dtype=float)
    grads = np.asarray(grads, dtype=float)
    if params.shape != grads.shape or params.shape != state.m.shape:
        raise ValueError(
            f"length mismatch: params {params.shape}, grads {grads.shape}, "
            f"state {state.m.shape}"
        )
    if not np.all(np.isfinite(grads)):
        raise ValueError("non-finite gradient entries")
    t = state.t + 1
    m = state.beta1 * state.m + (1.0 - state.beta1) * grads
    v = state.beta2 * state.v + (1.0 - state.beta2) * grads**2
    m_hat = m / (1.0 - state.beta1**t)
    v_hat = v / (1.0 - state.beta2**t)
    new_params = params - state.eta * m_hat / (np.sqrt(v_hat) + state.eps)
    return replace(state, m=m, v=v, t=t), new_params


def sgd_step(params: np.ndarray, grads: np.ndarray, eta: float) -> np.ndarray:
    """Plain gradient descent: theta <- theta - eta * g, elementwise."""
    params = np.asarray(params, dtype=float)
    grads = np.asarray(grads, dtype=float)
    if params.shape != grads.shape:
        raise ValueError(f"length mismatch: params {params.shape}, grads {grads.shape}")
    return params - eta * grads
