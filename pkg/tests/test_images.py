from __future__ import annotations

import numpy as np
import pytest

from slicemod.errors import ValidationError
from slicemod.images import (ImageBuffer, read_csv_matrix, read_image,
                             read_netpbm, write_ppm)


class TestReadNetpbm:
    def test_ascii_gray_with_comments_and_maxval(self):
        data = b"P2 # gray\n# another comment\n2 2\n100\n0 50\n100 25\n"
        img = read_netpbm(data)
        assert (img.width, img.height, img.channels) == (2, 2, 1)
        np.testing.assert_allclose(
            img.pixels[:, :, 0], [[0.0, 0.5], [1.0, 0.25]], atol=1e-15)

    def test_ascii_color(self):
        data = b"P3\n1 2\n255\n255 0 0\n0 255 0\n"
        img = read_netpbm(data)
        assert img.channels == 3
        np.testing.assert_array_equal(img.pixels[0, 0], [1.0, 0.0, 0.0])
        np.testing.assert_array_equal(img.pixels[1, 0], [0.0, 1.0, 0.0])

    def test_binary_gray(self):
        data = b"P5\n3 1\n255\n" + bytes([0, 128, 255])
        img = read_netpbm(data)
        np.testing.assert_allclose(
            img.pixels[0, :, 0], [0.0, 128 / 255, 1.0], atol=1e-15)

    def test_binary_color_low_maxval(self):
        data = b"P6 2 1 3 " + bytes([0, 1, 2, 3, 3, 3])
        img = read_netpbm(data)
        np.testing.assert_allclose(
            img.pixels[0, 0], [0.0, 1 / 3, 2 / 3], atol=1e-15)
        np.testing.assert_array_equal(img.pixels[0, 1], [1.0, 1.0, 1.0])

    def test_binary_raster_may_contain_whitespace_bytes(self):
        data = b"P5\n2 1\n255\n" + bytes([32, 10])
        img = read_netpbm(data)
        np.testing.assert_allclose(
            img.pixels[0, :, 0], [32 / 255, 10 / 255], atol=1e-15)

    @pytest.mark.parametrize("data, why", [
        (b"", "empty"),
        (b"P7\n1 1\n255\n0", "magic"),
        (b"P2\n0 2\n255\n", "zero width"),
        (b"P2\n2 2\n0\n0 0 0 0", "maxval zero"),
        (b"P2\n2 2\n300\n0 0 0 0", "maxval too big"),
        (b"P2\n2 2\n255\n0 0 0", "truncated ascii"),
        (b"P2\n2 2\n255\n0 0 0 0 0", "trailing ascii"),
        (b"P2\n2 2\n255\n0 0 0 x", "non-integer sample"),
        (b"P2\n2 2\n100\n0 0 0 101", "sample above maxval"),
        (b"P5\n2 2\n255\nabc", "truncated binary"),
        (b"P2\n2\n", "short header"),
    ])
    def test_malformed_inputs_rejected(self, data, why):
        with pytest.raises(ValidationError):
            read_netpbm(data)

    def test_binary_raster_needs_single_separator(self):
        # a comment sign right after the maxval token is not a raster separator
        with pytest.raises(ValidationError, match="separator"):
            read_netpbm(b"P5\n1 1\n255#c\n" + bytes([7]))


class TestCsvMatrix:
    def test_unit_range_taken_as_is(self):
        img = read_csv_matrix("0.5,1\n0,0.25\n")
        np.testing.assert_array_equal(
            img.pixels[:, :, 0], [[0.5, 1.0], [0.0, 0.25]])

    def test_byte_range_rescaled(self):
        img = read_csv_matrix("0,128\n255,64\n")
        np.testing.assert_allclose(
            img.pixels[:, :, 0],
            np.array([[0, 128], [255, 64]]) / 255.0, atol=1e-15)

    def test_single_row(self):
        img = read_csv_matrix("0.1,0.2,0.3\n")
        assert (img.width, img.height) == (3, 1)

    @pytest.mark.parametrize("text", [
        "", "-1,0\n", "0,300\n", "a,b\n", "1,2\n3\n",
    ])
    def test_bad_csv_rejected(self, text):
        with pytest.raises(ValidationError):
            read_csv_matrix(text)


class TestWriteAndDispatch:
    def test_ppm_round_trip_preserves_bytes(self, tmp_path):
        rng = np.random.default_rng(0)
        rgb = rng.integers(0, 256, (5, 4, 3), dtype=np.uint8)
        path = tmp_path / "x.ppm"
        write_ppm(path, rgb)
        img = read_image(path)
        np.testing.assert_allclose(img.pixels, rgb / 255.0, atol=1e-15)
        assert path.read_bytes().startswith(b"P6\n4 5\n255\n")

    def test_read_image_dispatches_on_extension(self, tmp_path):
        csv = tmp_path / "m.csv"
        csv.write_text("0.5,0.5\n")
        assert read_image(csv).channels == 1
        pgm = tmp_path / "m.pgm"
        pgm.write_bytes(b"P5\n1 1\n255\n\x40")
        assert read_image(pgm).pixels[0, 0, 0] == pytest.approx(64 / 255)

    @pytest.mark.parametrize("bad", [
        np.zeros((2, 2, 3), dtype=np.float64),
        np.zeros((2, 2), dtype=np.uint8),
        np.zeros((2, 2, 1), dtype=np.uint8),
    ])
    def test_write_ppm_validates_input(self, tmp_path, bad):
        with pytest.raises(ValidationError):
            write_ppm(tmp_path / "bad.ppm", bad)


class TestImageBuffer:
    def test_rejects_bad_shape_and_range(self):
        with pytest.raises(ValidationError):
            ImageBuffer(2, 2, 1, np.zeros((2, 2, 3)))
        with pytest.raises(ValidationError):
            ImageBuffer(2, 2, 2, np.zeros((2, 2, 2)))
        with pytest.raises(ValidationError):
            ImageBuffer(1, 1, 1, np.array([[[1.5]]]))
        with pytest.raises(ValidationError):
            ImageBuffer(1, 1, 1, np.array([[[np.nan]]]))
        with pytest.raises(ValidationError):
            ImageBuffer(0, 1, 1, np.zeros((1, 0, 1)))

    def test_pixel_count(self):
        img = ImageBuffer(3, 2, 1, np.zeros((2, 3, 1)))
        assert img.n_pixels == 6
