"""Line detection scoring: IoU box matching and precision/recall/F-measure.

Per-document scores are averaged arithmetically over the corpus; the
corpus mean F-measure is the mean of per-document F-measures, not the
F-measure of the mean precision and recall.
"""

from __future__ import annotations

from dataclasses import dataclass

from .linedetect import LineBox


@dataclass(frozen=True)
class EvalCounts:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    def __post_init__(self):
        if self.tp < 0 or self.fp < 0 or self.fn < 0:
            raise ValueError("counts must be non-negative")


@dataclass(frozen=True)
class DocumentScore:
    doc_id: str
    counts: EvalCounts
    precision: float
    recall: float
    fmeasure: float


@dataclass(frozen=True)
class EvalReport:
    per_document: list[DocumentScore]
    mean_precision: float
    mean_recall: float
    mean_fmeasure: float


def iou(a: LineBox, b: LineBox) -> float:
    """Intersection-over-union of two boxes; 0 when disjoint."""
    ix = max(0, min(a.x + a.width, b.x + b.width) - max(a.x, b.x))
    iy = max(0, min(a.y + a.height, b.y + b.height) - max(a.y, b.y))
    inter = ix * iy
    if inter == 0:
        return 0.0
    union = a.width * a.height + b.width * b.height - inter
    return inter / union


def match_lines(pred: list[LineBox], gt: list[LineBox], iou_min: float = 0.5) -> EvalCounts:
    """Greedy one-to-one matching of predictions to ground truth.

    Candidate pairs with IoU >= iou_min are taken in descending IoU order
    (ties broken by lower ground-truth index, then lower prediction index);
    each box matches at most once.
    """
    if not 0 < iou_min <= 1:
        raise ValueError("iou_min must be in (0, 1]")
    pairs = []
    for gi, g in enumerate(gt):
        for pi, p in enumerate(pred):
            score = iou(p, g)
            if score >= iou_min:
                pairs.append((-score, gi, pi))
    pairs.sort()
    used_pred: set[int] = set()
    used_gt: set[int] = set()
    tp = 0
    for _, gi, pi in pairs:
        if gi in used_gt or pi in used_pred:
            continue
        used_gt.add(gi)
        used_pred.add(pi)
        tp += 1
    return EvalCounts(tp=tp, fp=len(pred) - tp, fn=len(gt) - tp)


def fmeasure(p: float, r: float) -> float:
    return 0.0 if p + r == 0 else 2 * p * r / (p + r)


def prf(c: EvalCounts) -> tuple[float, float, float]:
    """Precision, recall and F-measure with zero-denominator conventions:
    P=0 when tp+fp==0, R=0 when tp+fn==0, FM=0 when P+R==0."""
    p = 0.0 if c.tp + c.fp == 0 else c.tp / (c.tp + c.fp)
    r = 0.0 if c.tp + c.fn == 0 else c.tp / (c.tp + c.fn)
    return p, r, fmeasure(p, r)


def aggregate(per_doc: list[tuple[float, float, float]]) -> tuple[float, float, float]:
    """Unweighted arithmetic means of per-document (P, R, FM)."""
    if not per_doc:
        raise ValueError("cannot aggregate an empty corpus")
    n = len(per_doc)
    return tuple(sum(col) / n for col in zip(*per_doc))


def evaluate_corpus(docs: list[tuple[str, list[LineBox], list[LineBox]]],
                    iou_min: float = 0.5) -> EvalReport:
    """Score (doc_id, predictions, ground truth) triples and average them."""
    scores = []
    for doc_id, pred, gt in docs:
        counts = match_lines(pred, gt, iou_min)
        p, r, fm = prf(counts)
        scores.append(DocumentScore(doc_id, counts, p, r, fm))
    mp, mr, mfm = aggregate([(s.precision, s.recall, s.fmeasure) for s in scores])
    return EvalReport(scores, mp, mr, mfm)


def read_boxes(path) -> list[LineBox]:
    """Read a box file: one "x y width height" line per box, '#' comments
    and blank lines ignored."""
    boxes = []
    with open(path, "r", encoding="ascii") as fh:
        for lineno, line in enumerate(fh, start=1):
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            fields = line.split()
            if len(fields) != 4:
                raise ValueError(f"{path}:{lineno}: expected 4 fields, got {len(fields)}")
            x, y, w, h = (int(f) for f in fields)
            if x < 0 or y < 0 or w < 1 or h < 1:
                raise ValueError(f"{path}:{lineno}: invalid box {line!r}")
            boxes.append(LineBox(x, y, w, h))
    return boxes


def write_boxes(boxes: list[LineBox], path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for b in boxes:
            fh.write(f"{b.x} {b.y} {b.width} {b.height}\n")
