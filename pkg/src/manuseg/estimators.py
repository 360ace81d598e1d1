"""Scikit-learn compatible wrappers around the segmentation stages.

Each stage is a transformer over 2-D image arrays, so the whole chain
composes with sklearn pipelines and parameter search:

    pipe = make_line_pipeline()
    boxes = pipe.fit(page).predict(page)

The transformers are stateless per image (binarization re-estimates its
cluster centers on whatever page it is given); fit only validates input
and, for the binarizer, exposes the fitted centers for inspection.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.pipeline import Pipeline

from . import linedetect, preprocess, textsep
from .raster import check_binary_image, check_gray_image


class MedianSmoother(TransformerMixin, BaseEstimator):
    """3x3 median filter for grayscale pages (edge-replicated borders)."""

    def fit(self, X, y=None):
        check_gray_image(X)
        self.is_fitted_ = True
        return self

    def transform(self, X):
        return preprocess.median_filter_3x3(X)


class FcmBinarizer(TransformerMixin, BaseEstimator):
    """Two-cluster fuzzy C-means binarization of a grayscale page.

    transform() returns a {0,1} ink image. Centers are re-estimated per
    page; fit() additionally stores them as cluster_centers_ along with
    n_iter_.
    """

    def __init__(self, fuzzifier=2.0, tolerance=1e-3, max_iterations=100):
        self.fuzzifier = fuzzifier
        self.tolerance = tolerance
        self.max_iterations = max_iterations

    def _params(self):
        return preprocess.FcmParams(fuzzifier=self.fuzzifier, tolerance=self.tolerance,
                                    max_iterations=self.max_iterations)

    def fit(self, X, y=None):
        result = preprocess.fcm_cluster(check_gray_image(X), self._params())
        self.cluster_centers_ = result.centers
        self.n_iter_ = result.n_iterations
        self.is_fitted_ = True
        return self

    def transform(self, X):
        return preprocess.fcm_binarize(X, self._params())


class TextDoodleSeparator(TransformerMixin, BaseEstimator):
    """Strip doodles and struck-out lines from a binary page.

    transform() returns the text image; the matching doodle image from the
    last call is kept in doodle_image_ for export.
    """

    def __init__(self, density_threshold_t1=20, doodle_area_threshold=3000,
                 doodle_density_fraction=0.10, strike_min_run=120, connectivity=8):
        self.density_threshold_t1 = density_threshold_t1
        self.doodle_area_threshold = doodle_area_threshold
        self.doodle_density_fraction = doodle_density_fraction
        self.strike_min_run = strike_min_run
        self.connectivity = connectivity

    def _params(self):
        return textsep.SeparationParams(
            density_threshold_t1=self.density_threshold_t1,
            doodle_area_threshold=self.doodle_area_threshold,
            doodle_density_fraction=self.doodle_density_fraction,
            strike_min_run=self.strike_min_run)

    def fit(self, X, y=None):
        check_binary_image(X)
        self.is_fitted_ = True
        return self

    def transform(self, X):
        text, doodle = textsep.separate(X, self._params(), self.connectivity)
        self.doodle_image_ = doodle
        return text


class TextLineDetector(BaseEstimator):
    """Predict text line boxes on a binary text image.

    predict() returns an (n, 4) int array of (x, y, width, height) rows
    sorted top-to-bottom, left-to-right.
    """

    def __init__(self, block_width_w=20, block_ink_threshold_t=2, gaussian_sigma=1.0,
                 min_smear_area=150, valley_threshold_t2=5, overlap_height_ratio=1.6,
                 connectivity=8):
        self.block_width_w = block_width_w
        self.block_ink_threshold_t = block_ink_threshold_t
        self.gaussian_sigma = gaussian_sigma
        self.min_smear_area = min_smear_area
        self.valley_threshold_t2 = valley_threshold_t2
        self.overlap_height_ratio = overlap_height_ratio
        self.connectivity = connectivity

    def _params(self):
        return linedetect.SmearParams(
            block_width_w=self.block_width_w,
            block_ink_threshold_t=self.block_ink_threshold_t,
            gaussian_sigma=self.gaussian_sigma,
            min_smear_area=self.min_smear_area,
            valley_threshold_t2=self.valley_threshold_t2,
            overlap_height_ratio=self.overlap_height_ratio)

    def fit(self, X, y=None):
        check_binary_image(X)
        self.is_fitted_ = True
        return self

    def predict(self, X):
        boxes = linedetect.detect_lines(X, self._params(), self.connectivity)
        return np.array(boxes, dtype=np.int64).reshape(len(boxes), 4)


def make_line_pipeline(**params) -> Pipeline:
    """Full page-to-boxes pipeline as an sklearn Pipeline.

    Keyword arguments use the usual sklearn step syntax, e.g.
    make_line_pipeline(binarize__fuzzifier=1.8).
    """
    pipe = Pipeline([
        ("smooth", MedianSmoother()),
        ("binarize", FcmBinarizer()),
        ("separate", TextDoodleSeparator()),
        ("detect", TextLineDetector()),
    ])
    if params:
        pipe.set_params(**params)
    return pipe
