"""Table column/row boundaries from binary segmentation masks.

Mask transitions are turned into a 1-D density of interval midpoints, which
is regularized by alternating hard thresholding and Gaussian smoothing; the
surviving modes are the structural coordinates.
"""

from .accumulate import (IntervalSelection, accumulate_histogram, interval_midpoints, normalize,
                         scan_transitions, smooth_initial)
from .density import KernelSpec, convolve, gaussian_kernel, renormalize
from .errors import (ConfigurationError, EmptyInputError, EmptySignalError, InputFormatError,
                     TablePeaksError, UndefinedMetricError)
from .evaluate import CasaReport, GroundTruthCell, assign_words_to_cells, boundary_recovery, casa
from .geometry import (BoundarySet, RegionPartition, WordBox, boundaries_to_regions,
                       infer_rows_from_words, peaks_to_coordinates)
from .mask_model import (GeometryTransform, GridSpec, NoiseSpec, load_mask, resize_mask, synth_mask,
                         transpose)
from .pipeline import Extraction, PipelineConfig, extract
from .regularize import (EnergyDiagnostic, IterationSchedule, RegularizationTrace, energy, find_peaks,
                         iterate, resolve_threshold, threshold)
from .synth import DensityNoiseSpec, MixtureSpec, add_noise, discretize_mixture

__version__ = "0.1.0"

__all__ = [
    "BoundarySet", "CasaReport", "ConfigurationError", "DensityNoiseSpec", "EmptyInputError",
    "EmptySignalError", "EnergyDiagnostic", "Extraction", "GeometryTransform", "GridSpec",
    "GroundTruthCell", "InputFormatError", "IntervalSelection", "IterationSchedule", "KernelSpec",
    "MixtureSpec", "NoiseSpec", "PipelineConfig", "RegionPartition", "RegularizationTrace",
    "TablePeaksError", "UndefinedMetricError", "WordBox", "accumulate_histogram", "add_noise",
    "assign_words_to_cells", "boundaries_to_regions", "boundary_recovery", "casa", "convolve",
    "discretize_mixture", "energy", "extract", "find_peaks", "gaussian_kernel",
    "infer_rows_from_words", "interval_midpoints", "iterate", "load_mask", "normalize",
    "peaks_to_coordinates", "renormalize", "resize_mask", "resolve_threshold", "scan_transitions",
    "smooth_initial", "synth_mask", "threshold", "transpose",
]
