"""Exact spatially weighted local histograms in constant time per window."""

from .baselines import (RingRule, WeddingCakeConfig, brute_force_histogram, brute_force_sweep,
                        wedding_cake_histogram, wedding_cake_sweep)
from .engine import (BorderPolicy, QuadrantDecomposition, WindowQuery, decompose,
                     quadrant_histogram, swih_query, swih_sweep)
from .errors import *  # noqa: F401,F403
from .image import (FeatureImage, GrayImage, Quantizer, WeightedHistogram, normalize,
                    quantize_image, read_pgm, write_pgm)
from .kernels import KernelKind, KernelSpec, kernel_weight_sum, manhattan_distance, parse_kernel, weight_at
from .matching import LikelihoodMap, Method, Similarity, likelihood_map, peak, similarity, target_model
from .scene import SceneSpec, generate_scene
from .tables import (Direction, IntegralTableSet, RectRegion, build_tables, directional_table_value,
                     load_tables, rect_sum, save_tables)

__version__ = "0.1.0"
