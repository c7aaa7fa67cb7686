import logging
from typing import Literal

import numpy as np
from scipy import linalg

from sepvol.operators import DensityMatrix, FactorShape, HermitianOp, ProductVector

from ._stream import StreamLike, as_generator

logger = logging.getLogger(__name__)

Field = Literal["real", "complex"]


def complex_gaussian(rng: np.random.Generator, size) -> np.ndarray:
    """``(g₁ + i g₂)/√2`` with independent standard normals, so ``E|z|² = 1``."""
    return (rng.standard_normal(size) + 1j * rng.standard_normal(size)) / np.sqrt(2)


def ginibre_states(d: int, size: int, rng: np.random.Generator) -> np.ndarray:
    """
    Batch of Hilbert-Schmidt uniform density matrices, shape ``(size, d, d)``.

    ``ρ = GG†/tr(GG†)`` with ``G`` a square complex Ginibre matrix.
    """
    g = complex_gaussian(rng, (size, d, d))
    w = g @ np.conj(np.swapaxes(g, -1, -2))
    tr = np.trace(w, axis1=-2, axis2=-1).real
    rho = w / tr[:, None, None]
    return (rho + np.conj(np.swapaxes(rho, -1, -2))) / 2


def haar_vectors(
    dim: int, size: int, rng: np.random.Generator, field: Field = "complex"
) -> np.ndarray:
    """Batch of uniform unit vectors in ``ℂ^dim`` (or ``ℝ^dim``), shape ``(size, dim)``."""
    if field == "complex":
        x = complex_gaussian(rng, (size, dim))
    elif field == "real":
        x = rng.standard_normal((size, dim))
    else:
        raise ValueError(f"field must be 'real' or 'complex', got {field!r}.")
    return x / np.linalg.norm(x, axis=-1, keepdims=True)


def gaussian_hermitian_batch(
    d: int, size: int, rng: np.random.Generator, traceless: bool = False
) -> np.ndarray:
    """
    Batch of standard Gaussian Hermitian matrices, shape ``(size, d, d)``.

    Coordinates in any HS-orthonormal basis of ``ℬ_sa`` (or of its trace-zero
    hyperplane when ``traceless``) are i.i.d. standard normal.
    """
    z = complex_gaussian(rng, (size, d, d))
    g = (z + np.conj(np.swapaxes(z, -1, -2))) / np.sqrt(2)
    if traceless:
        tr = np.trace(g, axis1=-2, axis2=-1).real
        g = g - (tr / d)[:, None, None] * np.eye(d)
    return g


def sample_density_uniform(shape: FactorShape, stream: StreamLike = None) -> DensityMatrix:
    """
    Draw a state from the normalized Lebesgue (flat Hilbert-Schmidt) measure on ``𝒟``.

    Parameters
    ----------
    shape
        Factor structure of the state.
    stream
        :class:`~sepvol.sampling.SeededStream`, integer seed, or generator.

    Examples
    --------
    >>> rho = sample_density_uniform(FactorShape(2, 2), SeededStream(0))
    """
    rng = as_generator(stream)
    rho = ginibre_states(shape.d, 1, rng)[0]
    return DensityMatrix(HermitianOp(rho, shape))


def sample_pure_product(shape: FactorShape, stream: StreamLike = None) -> ProductVector:
    """``N`` independent Haar-uniform unit vectors in ``ℂᴰ``."""
    rng = as_generator(stream)
    return ProductVector(list(haar_vectors(shape.D, shape.N, rng)))


def sample_gaussian_hermitian(
    shape: FactorShape, traceless: bool = False, stream: StreamLike = None
) -> HermitianOp:
    """
    Standard Gaussian vector of ``(ℬ_sa, ⟨·,·⟩_HS)``.

    Parameters
    ----------
    shape
        Factor structure.
    traceless
        Restrict to the hyperplane of trace-zero operators.
    stream
        :class:`~sepvol.sampling.SeededStream`, integer seed, or generator.
    """
    rng = as_generator(stream)
    return HermitianOp(gaussian_hermitian_batch(shape.d, 1, rng, traceless)[0], shape)


def sample_sphere(dim_real: int, stream: StreamLike = None) -> np.ndarray:
    """Uniform point of ``S^{dim_real − 1} ⊂ ℝ^{dim_real}``."""
    if dim_real < 1:
        raise ValueError(f"dim_real must be at least 1, got {dim_real}.")
    return haar_vectors(dim_real, 1, as_generator(stream), field="real")[0]


def sample_haar_unitary(d: int, stream: StreamLike = None) -> np.ndarray:
    """Haar-random ``d × d`` unitary via QR of a Ginibre matrix with phase fix."""
    rng = as_generator(stream)
    q, r = linalg.qr(complex_gaussian(rng, (d, d)))
    phases = np.diag(r) / np.abs(np.diag(r))
    return q * phases


def product_kets(factors: np.ndarray) -> np.ndarray:
    """
    Kets of a batch of product vectors.

    Parameters
    ----------
    factors
        Array of shape ``(size, N, D)``.

    Returns
    -------
    Array of shape ``(size, Dᴺ)``.
    """
    out = factors[:, 0, :]
    for k in range(1, factors.shape[1]):
        out = (out[:, :, None] * factors[:, k, None, :]).reshape(out.shape[0], -1)
    return out
