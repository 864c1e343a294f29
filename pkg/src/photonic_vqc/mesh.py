"""Four-mode programmable MZI mesh: unitary construction and state evolution.

The mesh is built from six Mach-Zehnder interferometers, each a 2x2 unitary
parameterized by an internal phase theta (transmission) and an external phase
phi (relative input phase). MZIs are embedded into the four-mode space as
direct sums with identity and composed right-to-left (MZI 1 applied first).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

N_MODES = 4
N_MZIS = 6
N_PHASES = 2 * N_MZIS

TWO_PI = 2.0 * np.pi

# Mode pair (0-based) acted on by each MZI, in application order. The two
# triples form two identical layers covering pairs (1,2), (3,4), (2,3) in
# 1-based mode numbering.
MODE_PAIRS = ((0, 1), (2, 3), (1, 2), (0, 1), (2, 3), (1, 2))

NORM_TOL = 1e-6


def wrap_phase(x):
    """Reduce an angle (or array of angles) into [0, 2*pi)."""
    return np.mod(x, TWO_PI)


@dataclass(frozen=True)
class MeshParameters:
    """The 12 trainable phases of the 6-MZI mesh, stored reduced mod 2*pi."""

    theta: np.ndarray
    phi: np.ndarray

    def __post_init__(self):
        theta = np.asarray(self.theta, dtype=float)
        phi = np.asarray(self.phi, dtype=float)
        if theta.shape != (N_MZIS,) or phi.shape != (N_MZIS,):
            raise ValueError(
                f"expected {N_MZIS} theta and {N_MZIS} phi values, "
                f"got shapes {theta.shape} and {phi.shape}"
            )
        object.__setattr__(self, "theta", wrap_phase(theta))
        object.__setattr__(self, "phi", wrap_phase(phi))

    @classmethod
    def from_genes(cls, genes) -> "MeshParameters":
        """Build from the flat gene layout [phi1, theta1, ..., phi6, theta6]."""
        genes = np.asarray(genes, dtype=float)
        if genes.shape != (N_PHASES,):
            raise ValueError(f"expected {N_PHASES} genes, got shape {genes.shape}")
        return cls(theta=genes[1::2], phi=genes[0::2])

    def to_genes(self) -> np.ndarray:
        genes = np.empty(N_PHASES)
        genes[0::2] = self.phi
        genes[1::2] = self.theta
        return genes


def build_mzi(theta: float, phi: float) -> np.ndarray:
    """2x2 transfer matrix of a single MZI.

    Composite of two 50:50 beam splitters with internal phase theta and
    external phase phi:

        i * e^{i theta/2} * [[e^{i phi} sin(theta/2), cos(theta/2)],
                             [e^{i phi} cos(theta/2), -sin(theta/2)]]
    """
    half = 0.5 * theta
    s, c = np.sin(half), np.cos(half)
    ephi = np.exp(1j * phi)
    pref = 1j * np.exp(1j * half)
    return pref * np.array([[ephi * s, c], [ephi * c, -s]], dtype=complex)


def embed_mzi(mzi_index: int, theta: float, phi: float) -> np.ndarray:
    """4x4 matrix of MZI `mzi_index` (1..6): its 2x2 form on the assigned
    mode pair, identity elsewhere."""
    if not 1 <= mzi_index <= N_MZIS:
        raise ValueError(f"mzi_index must be in 1..{N_MZIS}, got {mzi_index}")
    a, b = MODE_PAIRS[mzi_index - 1]
    u = np.eye(N_MODES, dtype=complex)
    block = build_mzi(theta, phi)
    u[a, a], u[a, b] = block[0, 0], block[0, 1]
    u[b, a], u[b, b] = block[1, 0], block[1, 1]
    return u


def compose_mesh(params: MeshParameters) -> np.ndarray:
    """Full 4x4 mesh unitary U6 * U5 * ... * U1 (U1 applied first)."""
    u = np.eye(N_MODES, dtype=complex)
    for k in range(N_MZIS):
        u = embed_mzi(k + 1, params.theta[k], params.phi[k]) @ u
    return u


def forward(state: np.ndarray, params: MeshParameters) -> np.ndarray:
    """Evolve a normalized 4-amplitude state through the mesh."""
    state = np.asarray(state, dtype=complex)
    if state.shape != (N_MODES,):
        raise ValueError(f"state must have {N_MODES} amplitudes, got {state.shape}")
    norm = np.linalg.norm(state)
    if abs(norm - 1.0) > NORM_TOL:
        raise ValueError(f"input state is not normalized (norm = {norm})")
    return compose_mesh(params) @ state


def multi_layer_forward(state: np.ndarray, layers) -> np.ndarray:
    """Cascade of mesh layers with measure-and-re-encode between layers.

    Each layer applies its mesh, measures exact per-mode intensities, and
    re-encodes the next layer's input as the componentwise square root of
    those intensities. Returns the final intensity vector.
    """
    layers = list(layers)
    if not layers:
        raise ValueError("at least one layer of mesh parameters is required")
    s = np.asarray(state, dtype=complex)
    intensities = None
    for layer in layers:
        s = forward(s, layer)
        intensities = np.abs(s) ** 2
        s = np.sqrt(intensities).astype(complex)
    return intensities
