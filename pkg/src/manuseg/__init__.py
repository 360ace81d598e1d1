"""Text line segmentation for handwritten manuscript images.

Stages: median + fuzzy C-means binarization, doodle and struck-line
separation, black run-length smearing and horizontal-histogram line
detection with overlap splitting, plus an evaluation harness and a
synthetic page generator.
"""

from .components import Component, LabelMap, clean_isolated, label_components, remove_small
from .config import PipelineConfig, load_config, write_config
from .estimators import (FcmBinarizer, MedianSmoother, TextDoodleSeparator,
                         TextLineDetector, make_line_pipeline)
from .evaluate import (EvalCounts, EvalReport, aggregate, evaluate_corpus, iou,
                       match_lines, prf, read_boxes, write_boxes)
from .linedetect import (LineBox, SmearParams, classify_rows, detect_lines,
                         gaussian_smooth, horizontal_histogram, smear,
                         split_overlapping)
from .preprocess import (FcmParams, binarize_pipeline, fcm_binarize, fcm_cluster,
                         median_filter_3x3)
from .raster import (check_binary_image, check_gray_image, load_binary, load_gray,
                     rotate_quarter, save_binary, save_gray, save_rgb)
from .synth import SynthSpec, generate_page, load_synth_spec
from .textsep import (SeparationParams, classify_components, density_mask,
                      remove_struck_lines, separate)

__version__ = "0.1.0"

__all__ = [
    "Component", "LabelMap", "clean_isolated", "label_components", "remove_small",
    "PipelineConfig", "load_config", "write_config",
    "FcmBinarizer", "MedianSmoother", "TextDoodleSeparator", "TextLineDetector",
    "make_line_pipeline",
    "EvalCounts", "EvalReport", "aggregate", "evaluate_corpus", "iou",
    "match_lines", "prf", "read_boxes", "write_boxes",
    "LineBox", "SmearParams", "classify_rows", "detect_lines", "gaussian_smooth",
    "horizontal_histogram", "smear", "split_overlapping",
    "FcmParams", "binarize_pipeline", "fcm_binarize", "fcm_cluster", "median_filter_3x3",
    "check_binary_image", "check_gray_image", "load_binary", "load_gray",
    "rotate_quarter", "save_binary", "save_gray", "save_rgb",
    "SynthSpec", "generate_page", "load_synth_spec",
    "SeparationParams", "classify_components", "density_mask",
    "remove_struck_lines", "separate",
]
