import numpy as np
import pytest

from manuseg.synth import SynthSpec, generate_page, load_synth_spec


def test_determinism():
    spec = SynthSpec(seed=99, doodle_radius=40, strike_length=200, skew_degrees=3.0)
    page_a, boxes_a = generate_page(spec)
    page_b, boxes_b = generate_page(spec)
    assert np.array_equal(page_a, page_b)
    assert boxes_a == boxes_b


def test_different_seeds_differ():
    a, _ = generate_page(SynthSpec(seed=1))
    b, _ = generate_page(SynthSpec(seed=2))
    assert not np.array_equal(a, b)


def test_zero_lines_blank_page():
    spec = SynthSpec(line_count_min=0, line_count_max=0, seed=5)
    page, boxes = generate_page(spec)
    assert (page == 255).all()
    assert boxes == []


def test_boxes_match_drawn_ink():
    spec = SynthSpec(line_count_min=5, line_count_max=5, seed=7)
    page, boxes = generate_page(spec)
    assert len(boxes) == 5
    ink = page < 128
    for b in boxes:
        region = ink[b.y : b.y + b.height, b.x : b.x + b.width]
        # tight bbox: ink touches every edge of the box
        assert region[0].any() and region[-1].any()
        assert region[:, 0].any() and region[:, -1].any()


def test_boxes_disjoint_with_requested_gaps():
    spec = SynthSpec(line_count_min=6, line_count_max=6, gap_min=24, gap_max=40, seed=8)
    _, boxes = generate_page(spec)
    for a, b in zip(boxes, boxes[1:]):
        gap = b.y - (a.y + a.height)
        assert gap >= spec.gap_min - (40 - 24)  # mark tops vary inside each band
        assert a.y + a.height <= b.y


def test_boxes_within_page():
    spec = SynthSpec(seed=9, skew_degrees=5.0, doodle_radius=40)
    page, boxes = generate_page(spec)
    h, w = page.shape
    for b in boxes:
        assert 0 <= b.x and b.x + b.width <= w
        assert 0 <= b.y and b.y + b.height <= h


def test_doodle_kept_out_of_text_column():
    spec = SynthSpec(seed=10, doodle_radius=40)
    page, boxes = generate_page(spec)
    right = max(b.x + b.width for b in boxes)
    assert right < page.shape[1] - 2 * spec.doodle_radius


@pytest.mark.parametrize("kwargs", [
    dict(page_width=50), dict(line_count_min=3, line_count_max=2),
    dict(line_height_min=0), dict(gap_min=0), dict(ink_fill=0.0),
    dict(skew_degrees=30.0), dict(doodle_radius=-1),
])
def test_invalid_spec(kwargs):
    with pytest.raises(ValueError):
        SynthSpec(**kwargs)


def test_load_spec_file(tmp_path):
    (tmp_path / "s.cfg").write_text(
        "page_width = 300\npage_height = 400\nseed = 11\nskew_degrees = 2.5\n")
    spec = load_synth_spec(tmp_path / "s.cfg")
    assert spec.page_width == 300
    assert spec.skew_degrees == 2.5
    assert spec.ink_fill == 0.25  # default retained


def test_load_spec_unknown_key(tmp_path):
    (tmp_path / "s.cfg").write_text("page_widht = 300\n")
    with pytest.raises(ValueError, match="unknown"):
        load_synth_spec(tmp_path / "s.cfg")
