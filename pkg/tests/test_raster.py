import numpy as np
import pytest

from manuseg.raster import (PgmError, load_binary, load_gray, rotate_quarter,
                            save_binary, save_gray, save_rgb)


def write_bytes(path, payload):
    path.write_bytes(payload)
    return str(path)


class TestLoadGray:
    def test_p2_decode(self, tmp_path):
        p = write_bytes(tmp_path / "a.pgm", b"P2\n2 2\n255\n0 255 128 64\n")
        img = load_gray(p)
        assert img.shape == (2, 2)
        assert img.tolist() == [[0, 255], [128, 64]]

    def test_p5_decode(self, tmp_path):
        p = write_bytes(tmp_path / "a.pgm", b"P5\n3 1\n255\n" + bytes([10, 20, 30]))
        assert load_gray(p).tolist() == [[10, 20, 30]]

    def test_header_comments_tolerated(self, tmp_path):
        p = write_bytes(tmp_path / "a.pgm",
                        b"P2\n# a comment\n2 1 # trailing\n255\n7 8\n")
        assert load_gray(p).tolist() == [[7, 8]]

    def test_bad_magic_rejected(self, tmp_path):
        p = write_bytes(tmp_path / "a.pgm", b"P7\n2 2\n255\n0 0 0 0\n")
        with pytest.raises(PgmError):
            load_gray(p)

    def test_maxval_above_255_rejected(self, tmp_path):
        p = write_bytes(tmp_path / "a.pgm", b"P2\n1 1\n300\n12\n")
        with pytest.raises(PgmError):
            load_gray(p)

    def test_truncated_payload(self, tmp_path):
        p = write_bytes(tmp_path / "a.pgm", b"P5\n4 4\n255\nab")
        with pytest.raises(PgmError):
            load_gray(p)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            load_gray(tmp_path / "nope.pgm")


class TestSaveBinary:
    def test_ink_is_black(self, tmp_path):
        save_binary(np.array([[1]], dtype=np.uint8), tmp_path / "a.pgm")
        assert (tmp_path / "a.pgm").read_bytes().endswith(b"\x00")

    def test_background_is_white(self, tmp_path):
        save_binary(np.array([[0]], dtype=np.uint8), tmp_path / "a.pgm")
        assert (tmp_path / "a.pgm").read_bytes().endswith(b"\xff")

    def test_round_trip(self, tmp_path):
        save_binary(np.array([[1, 0]], dtype=np.uint8), tmp_path / "a.pgm")
        raw = (tmp_path / "a.pgm").read_bytes()
        assert raw.endswith(bytes([0, 255]))
        assert load_binary(tmp_path / "a.pgm").tolist() == [[1, 0]]

    def test_round_trip_random(self, tmp_path):
        rng = np.random.default_rng(7)
        img = rng.integers(0, 2, size=(23, 31)).astype(np.uint8)
        save_binary(img, tmp_path / "a.pgm")
        assert np.array_equal(load_binary(tmp_path / "a.pgm"), img)


def test_gray_save_load_lossless(tmp_path):
    rng = np.random.default_rng(1)
    img = rng.integers(0, 256, size=(17, 11)).astype(np.uint8)
    save_gray(img, tmp_path / "a.pgm")
    assert np.array_equal(load_gray(tmp_path / "a.pgm"), img)


def test_save_rgb_header_and_payload(tmp_path):
    rgb = np.zeros((1, 2, 3), dtype=np.uint8)
    rgb[0, 1] = (0, 255, 0)
    save_rgb(rgb, tmp_path / "a.ppm")
    assert (tmp_path / "a.ppm").read_bytes() == b"P6\n2 1\n255\n\x00\x00\x00\x00\xff\x00"


class TestRotateQuarter:
    def test_identity(self):
        img = np.arange(12, dtype=np.uint8).reshape(3, 4)
        assert np.array_equal(rotate_quarter(img, 0), img)

    def test_single_turn_small(self):
        img = np.array([[5, 9]], dtype=np.uint8)  # 2x1: [a, b]
        out = rotate_quarter(img, 1)
        assert out.tolist() == [[5], [9]]

    def test_index_formula_oracle(self):
        rng = np.random.default_rng(3)
        img = rng.integers(0, 256, size=(5, 7)).astype(np.uint8)
        out = rotate_quarter(img, 1)
        h, w = img.shape
        assert out.shape == (w, h)
        for y in range(w):
            for x in range(h):
                assert out[y, x] == img[h - 1 - x, y]

    def test_four_turns_identity(self):
        rng = np.random.default_rng(4)
        img = rng.integers(0, 256, size=(6, 9)).astype(np.uint8)
        out = img
        for _ in range(4):
            out = rotate_quarter(out, 1)
        assert np.array_equal(out, img)

    def test_half_turn_equals_two_single_turns(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            img = rng.integers(0, 256, size=(16, 16)).astype(np.uint8)
            assert np.array_equal(rotate_quarter(img, 2),
                                  rotate_quarter(rotate_quarter(img, 1), 1))

    def test_preserves_value_multiset(self):
        rng = np.random.default_rng(6)
        img = rng.integers(0, 256, size=(8, 13)).astype(np.uint8)
        for turns in (1, 2, 3):
            assert np.array_equal(np.sort(rotate_quarter(img, turns).ravel()),
                                  np.sort(img.ravel()))

    @pytest.mark.parametrize("turns", [-1, 4, 5])
    def test_invalid_turns(self, turns):
        with pytest.raises(ValueError):
            rotate_quarter(np.zeros((2, 2), dtype=np.uint8), turns)
