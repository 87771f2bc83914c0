"""Sampling and reconstruction of band-limited functions on commutative spaces.

Spaces: the circle, spheres, central functions on SU(2), radial functions on
R^d and on the Heisenberg group.  Band spaces are reproducing kernel Hilbert
spaces; the modules here evaluate their kernels, build sample sets and frames,
and reconstruct functions from samples.
"""

from .kernels import (BandCoefficients, band_dimension, central_dimension, kernel_eval, kernel_gram,
                      project_band, random_band_function, sinc_kernel, synthesize, truncate)
from .reconstruct import (ContractionError, FrameAnalysis, NotAFrameError, ReconstructionError,
                          dual_frame, frame_analysis, invert_T, neumann_reconstruct,
                          oversample_reconstruct)
from .sampling import SampleSet, build_partition, generate, separation_report
from .spaces import (SU2, EuclideanRadial, HeisenbergBand, HeisenbergRadial, Sphere, Torus,
                     UnsupportedSpaceError, quadrature)

__version__ = "0.1.0"

__all__ = [
    "Torus", "Sphere", "SU2", "EuclideanRadial", "HeisenbergRadial", "HeisenbergBand",
    "UnsupportedSpaceError", "quadrature",
    "BandCoefficients", "band_dimension", "central_dimension", "kernel_eval", "kernel_gram",
    "sinc_kernel", "project_band", "synthesize", "random_band_function", "truncate",
    "SampleSet", "generate", "separation_report", "build_partition",
    "FrameAnalysis", "frame_analysis", "neumann_reconstruct", "dual_frame", "invert_T",
    "oversample_reconstruct", "ReconstructionError", "NotAFrameError", "ContractionError",
]
