from ._samplers import (
    complex_gaussian,
    gaussian_hermitian_batch,
    ginibre_states,
    haar_vectors,
    product_kets,
    sample_density_uniform,
    sample_gaussian_hermitian,
    sample_haar_unitary,
    sample_pure_product,
    sample_sphere,
)
from ._stream import SeededStream, StreamLike, as_generator, as_stream

__all__ = [
    "SeededStream",
    "StreamLike",
    "as_stream",
    "as_generator",
    "sample_density_uniform",
    "sample_pure_product",
    "sample_gaussian_hermitian",
    "sample_sphere",
    "sample_haar_unitary",
    "complex_gaussian",
    "ginibre_states",
    "haar_vectors",
    "gaussian_hermitian_batch",
    "product_kets",
]
