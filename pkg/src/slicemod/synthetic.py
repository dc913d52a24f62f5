"""Synthetic raster scenes for demos and end-to-end tests."""

from __future__ import annotations

import numpy as np

from .images import ImageBuffer

__all__ = ["four_region_image"]

_SKY = (0.62, 0.78, 0.94)
_GRASS = (0.33, 0.55, 0.25)
_BLOB_A = (0.46, 0.29, 0.17)
_BLOB_B = (0.12, 0.11, 0.13)


def four_region_image(width: int = 80, height: int = 50,
                      noise: float = 0.02, seed: int = 7) -> ImageBuffer:
    """Flat-colored scene with four regions and mild Gaussian noise.

    A sky band over a grass field, with two elliptical blobs resting on
    the grass.  Region contrasts are large against the noise level, so a
    reasonable segmentation should recover all four regions.
    """
    rng = np.random.default_rng(seed)
    img = np.empty((height, width, 3))
    horizon = int(round(0.34 * height))
    img[:horizon] = _SKY
    img[horizon:] = _GRASS
    yy, xx = np.mgrid[0:height, 0:width]

    def ellipse(cy, cx, ry, rx):
        return ((yy - cy) / ry) ** 2 + ((xx - cx) / rx) ** 2 <= 1.0

    img[ellipse(0.62 * height, 0.30 * width, 0.20 * height, 0.16 * width)] = _BLOB_A
    img[ellipse(0.66 * height, 0.68 * width, 0.18 * height, 0.15 * width)] = _BLOB_B
    img += rng.normal(0.0, noise, size=img.shape)
    np.clip(img, 0.0, 1.0, out=img)
    return ImageBuffer(width, height, 3, img)
