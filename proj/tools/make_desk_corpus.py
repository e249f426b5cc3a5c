#!/usr/bin/env python3
"""Regenerates tests/data/corpus from the public-domain scikit-image samples.

Each image is area-downsampled so its short side is 256 pixels, center
cropped to 256x256 and written as binary PPM.
"""
import os
import sys

import numpy as np
import skimage
from skimage import data, io
from skimage.transform import resize

SOURCES = [
    ("astronaut", lambda: data.astronaut()),
    ("coffee", lambda: data.coffee()),
    ("chelsea", lambda: data.chelsea()),
    ("rocket", lambda: data.rocket()),
    ("hubble", lambda: data.hubble_deep_field()),
    ("retina", lambda: data.retina()),
    ("ihc", lambda: data.immunohistochemistry()),
    ("colorwheel", lambda: data.colorwheel()),
    ("motorcycle_left", lambda: _bundled("motorcycle_left.png")),
    ("motorcycle_right", lambda: _bundled("motorcycle_right.png")),
]
SIDE = 256


def _bundled(name):
    return io.imread(os.path.join(os.path.dirname(skimage.__file__), "data", name))


def _prepare(img):
    img = img[..., :3].astype(np.float64)
    h, w = img.shape[:2]
    scale = SIDE / min(h, w)
    nh, nw = max(SIDE, round(h * scale)), max(SIDE, round(w * scale))
    img = resize(img, (nh, nw), anti_aliasing=True, preserve_range=True)
    y0, x0 = (nh - SIDE) // 2, (nw - SIDE) // 2
    img = img[y0:y0 + SIDE, x0:x0 + SIDE]
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def main():
    out = sys.argv[1] if len(sys.argv) > 1 else os.path.join(
        os.path.dirname(__file__), "..", "tests", "data", "corpus")
    os.makedirs(out, exist_ok=True)
    for i, (name, load) in enumerate(SOURCES):
        img = _prepare(load())
        path = os.path.join(out, f"{i:02d}_{name}.ppm")
        with open(path, "wb") as f:
            f.write(f"P6\n{SIDE} {SIDE}\n255\n".encode())
            f.write(img.tobytes())
        print(path)


if __name__ == "__main__":
    main()
