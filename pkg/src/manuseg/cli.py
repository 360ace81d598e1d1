"""Command-line front end.

Subcommands:
  segment   full pipeline: binarize, separate, detect lines; writes boxes,
            a green-box overlay, text/doodle images and the row histogram
  separate  binarize and split text from doodles only
  eval      score predicted box files against ground truth (CSV on stdout)
  synth     generate a synthetic page with exact ground truth
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import replace

import numpy as np

from . import linedetect, preprocess, raster, textsep
from .config import PipelineConfig, load_config
from .evaluate import match_lines, prf, read_boxes, write_boxes
from .synth import generate_page, load_synth_spec

GREEN = (0, 255, 0)


def draw_overlay(gray: np.ndarray, boxes, thickness: int = 2) -> np.ndarray:
    """Render box borders in green over a grayscale page."""
    rgb = np.repeat(gray[:, :, None], 3, axis=2).astype(np.uint8)
    h, w = gray.shape
    for b in boxes:
        x0, y0 = max(0, b.x), max(0, b.y)
        x1, y1 = min(w, b.x + b.width), min(h, b.y + b.height)
        t = thickness
        rgb[y0 : min(y0 + t, y1), x0:x1] = GREEN
        rgb[max(y1 - t, y0) : y1, x0:x1] = GREEN
        rgb[y0:y1, x0 : min(x0 + t, x1)] = GREEN
        rgb[y0:y1, max(x1 - t, x0) : x1] = GREEN
    return rgb


def _load_inputs(args) -> tuple[np.ndarray, PipelineConfig]:
    page = raster.load_gray(args.input)
    config = load_config(args.config) if args.config else PipelineConfig()
    return page, config


def _run_separation(page: np.ndarray, config: PipelineConfig):
    binary = preprocess.binarize_pipeline(page, config.fcm_params())
    return textsep.separate(binary, config.separation_params(), config.connectivity)


def cmd_segment(args) -> int:
    page, config = _load_inputs(args)
    if args.rotate:
        page = raster.rotate_quarter(page, args.rotate // 90)
    text, doodle = _run_separation(page, config)
    params = config.smear_params()
    boxes = linedetect.detect_lines(text, params, config.connectivity)
    smeared = linedetect.smear(linedetect.gaussian_smooth(text, params.gaussian_sigma), params)
    hist = linedetect.horizontal_histogram(smeared)

    os.makedirs(args.out, exist_ok=True)
    write_boxes(boxes, os.path.join(args.out, "boxes.txt"))
    raster.save_rgb(draw_overlay(page, boxes), os.path.join(args.out, "overlay.ppm"))
    raster.save_binary(text, os.path.join(args.out, "text.pgm"))
    raster.save_binary(doodle, os.path.join(args.out, "doodle.pgm"))
    with open(os.path.join(args.out, "histogram.csv"), "w", encoding="ascii") as fh:
        for row, count in enumerate(hist):
            fh.write(f"{row},{count}\n")
    return 0


def cmd_separate(args) -> int:
    page, config = _load_inputs(args)
    text, doodle = _run_separation(page, config)
    os.makedirs(args.out, exist_ok=True)
    raster.save_binary(text, os.path.join(args.out, "text.pgm"))
    raster.save_binary(doodle, os.path.join(args.out, "doodle.pgm"))
    return 0


def _box_files(directory: str) -> dict[str, str]:
    return {os.path.splitext(name)[0]: os.path.join(directory, name)
            for name in sorted(os.listdir(directory)) if name.endswith(".txt")}


def cmd_eval(args) -> int:
    config = load_config(args.config) if args.config else PipelineConfig()
    pred_files = _box_files(args.pred)
    gt_files = _box_files(args.gt)
    if not set(pred_files) & set(gt_files):
        raise RuntimeError("no document names shared between prediction and ground-truth dirs")

    print("doc,tp,fp,fn,precision,recall,fmeasure")
    scores = []
    for doc in sorted(set(pred_files) | set(gt_files)):
        pred = read_boxes(pred_files[doc]) if doc in pred_files else []
        gt = read_boxes(gt_files[doc]) if doc in gt_files else []
        counts = match_lines(pred, gt, config.iou_min)
        p, r, fm = prf(counts)
        scores.append((p, r, fm))
        print(f"{doc},{counts.tp},{counts.fp},{counts.fn},{p:.4f},{r:.4f},{fm:.4f}")
    n = len(scores)
    mp, mr, mfm = (sum(col) / n for col in zip(*scores))
    print(f"MEAN,,,,{mp:.4f},{mr:.4f},{mfm:.4f}")
    return 0


def cmd_synth(args) -> int:
    spec = load_synth_spec(args.spec)
    if args.seed is not None:
        spec = replace(spec, seed=args.seed)
    page, boxes = generate_page(spec)
    os.makedirs(args.out, exist_ok=True)
    raster.save_gray(page, os.path.join(args.out, "page.pgm"))
    write_boxes(boxes, os.path.join(args.out, "truth.txt"))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="manuseg",
        description="Text line segmentation for handwritten manuscript pages")
    sub = parser.add_subparsers(dest="command", required=True)

    seg = sub.add_parser("segment", help="run the full line detection pipeline")
    seg.add_argument("input", help="input page (PGM P2/P5)")
    seg.add_argument("--config", help="key=value configuration file")
    seg.add_argument("--out", required=True, help="output directory")
    seg.add_argument("--rotate", type=int, choices=(0, 90, 180, 270), default=0,
                     help="rotate the page clockwise before processing")
    seg.set_defaults(func=cmd_segment)

    sep = sub.add_parser("separate", help="binarize and split text from doodles")
    sep.add_argument("input", help="input page (PGM P2/P5)")
    sep.add_argument("--config", help="key=value configuration file")
    sep.add_argument("--out", required=True, help="output directory")
    sep.set_defaults(func=cmd_separate)

    ev = sub.add_parser("eval", help="score predicted boxes against ground truth")
    ev.add_argument("pred", help="directory of predicted box files (*.txt)")
    ev.add_argument("gt", help="directory of ground-truth box files (*.txt)")
    ev.add_argument("--config", help="key=value configuration file")
    ev.set_defaults(func=cmd_eval)

    syn = sub.add_parser("synth", help="generate a synthetic page with ground truth")
    syn.add_argument("spec", help="key=value generator spec file")
    syn.add_argument("--out", required=True, help="output directory")
    syn.add_argument("--seed", type=int, help="override the spec's seed")
    syn.set_defaults(func=cmd_synth)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, RuntimeError) as exc:
        print(f"manuseg: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
