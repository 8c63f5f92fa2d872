"""Shared test oracles, kept independent of the code paths they check."""

import numpy as np
from scipy.linalg import expm

from mscompile import Circuit, TrigSeries

X2 = np.array([[0.0, 1.0], [1.0, 0.0]], dtype=complex)
H2 = np.array([[1.0, 1.0], [1.0, -1.0]], dtype=complex) / np.sqrt(2.0)


def embed(n: int, u2: np.ndarray, qubit: int) -> np.ndarray:
    """Dense single-qubit embedding, qubit 0 = least significant bit."""
    op = np.array([[1.0]], dtype=complex)
    for q in range(n - 1, -1, -1):
        op = np.kron(op, u2 if q == qubit else np.eye(2))
    return op


def dense_ms(n: int, tau: float) -> np.ndarray:
    """Scaling-and-squaring exponential of the literal double-sum generator."""
    gen = np.zeros((2**n, 2**n), dtype=complex)
    xs = [embed(n, X2, j) for j in range(n)]
    for j in range(n):
        for k in range(n):
            gen += xs[j] @ xs[k]
    return expm(-0.25j * tau * gen)


def slow_unitary(circuit: Circuit) -> np.ndarray:
    """Reference simulator: dense kron embeddings, no fast paths."""

    def rot(axis, angle):
        paulis = {
            "RX": X2,
            "RY": np.array([[0, -1j], [1j, 0]], dtype=complex),
            "RZ": np.array([[1, 0], [0, -1]], dtype=complex),
        }
        return expm(-0.5j * angle * paulis[axis])

    n = circuit.num_qubits
    u = np.eye(2**n, dtype=complex)
    for gate in circuit.gates:
        if gate.kind == "MS":
            g = dense_ms(n, gate.angle)
        elif gate.kind == "H":
            g = embed(n, H2, gate.qubit)
        else:
            g = embed(n, rot(gate.kind, gate.angle), gate.qubit)
        u = g @ u
    return u


def quadruple_matrix(a, b, c, d, theta) -> np.ndarray:
    av, bv, cv, dv = a(theta), b(theta), c(theta), d(theta)
    return np.array([[av + 1j * dv, 1j * bv + cv], [1j * bv - cv, av - 1j * dv]])


def series_from_samples(values: np.ndarray, degree: int, parity: str) -> TrigSeries:
    """Recover trig-series coefficients from uniform samples over [0, 2*pi)."""
    k = len(values)
    spec = np.fft.rfft(values)
    if parity == "even":
        coeffs = [float(spec[0].real) / k]
        coeffs += [2.0 * float(spec[m].real) / k for m in range(1, degree + 1)]
    else:
        coeffs = [0.0]
        coeffs += [-2.0 * float(spec[m].imag) / k for m in range(1, degree + 1)]
    return TrigSeries(parity, tuple(coeffs))


def random_admissible_series(rng, max_degree=8, with_b=False):
    """Random (A, B) with max(A^2 + B^2) safely below 1 on the circle."""
    deg = int(rng.integers(1, max_degree + 1))
    grid = np.linspace(0.0, 2.0 * np.pi, 8192, endpoint=False)
    a = np.asarray(rng.normal(size=deg + 1))
    a_series = TrigSeries.even(tuple(a))
    margin = 1.0 + 10.0 ** rng.uniform(-3, 0)
    a_series = TrigSeries.even(tuple(a / (np.max(np.abs(a_series.evaluate(grid))) * margin)))
    if not with_b:
        return a_series, TrigSeries.zero("odd")
    b = np.concatenate([[0.0], rng.normal(size=deg)])
    b_series = TrigSeries.odd(tuple(b))
    room = np.sqrt(np.maximum(1e-15, 1.0 - a_series.evaluate(grid) ** 2))
    squeeze = np.max(np.abs(b_series.evaluate(grid)) / room) * (1.0 + 10.0 ** rng.uniform(-3, 0))
    return a_series, TrigSeries.odd(tuple(b / squeeze))
