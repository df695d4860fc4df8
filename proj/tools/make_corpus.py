#!/usr/bin/env python3
"""Builds the 112x112 test corpus under tests/data/corpus112.

The crops come from the photographs bundled with scikit-image, so the
corpus can be regenerated offline. Each source photograph is cut into
square windows of side 112*s (s = 1, 2, 3) on a fixed grid and reduced by
block averaging; the face thumbnails shipped with scikit-image are
upsampled to 112x112. Output is deterministic for a given scikit-image
release.
"""

import argparse
import pathlib

import numpy as np
from PIL import Image
from skimage import data, transform

SIZE = 112

# name -> (loader, scales, max crops per scale)
SOURCES = {
    "astronaut": (data.astronaut, (2, 3, 4), 4),
    "camera": (data.camera, (2, 3, 4), 4),
    "coffee": (data.coffee, (2, 3), 4),
    "chelsea": (data.chelsea, (1, 2), 4),
    "rocket": (data.rocket, (2, 3), 4),
    "retina": (data.retina, (3, 4, 6), 4),
    "coins": (data.coins, (1, 2), 4),
    "moon": (data.moon, (2, 3, 4), 4),
    "ihc": (data.immunohistochemistry, (2, 3, 4), 4),
    "clock": (data.clock, (1, 2), 4),
    "hubble": (data.hubble_deep_field, (3, 4), 4),
}

FACES = 30


def crops(img, scale, limit):
    side = SIZE * scale
    h, w = img.shape[:2]
    if side > h or side > w:
        return
    ys = np.linspace(0, h - side, 3).astype(int)
    xs = np.linspace(0, w - side, 3).astype(int)
    grid = [(ys[i // 3], xs[i % 3]) for i in (4, 0, 2, 6, 8, 1, 3, 5, 7)]
    seen = []
    for y, x in grid:
        if (y, x) in seen:
            continue
        seen.append((y, x))
        if len(seen) > limit:
            return
        win = img[y:y + side, x:x + side].astype(np.float64)
        if scale > 1:
            shape = (SIZE, scale, SIZE, scale) + win.shape[2:]
            win = win.reshape(shape).mean(axis=(1, 3))
        yield np.clip(np.rint(win), 0, 255).astype(np.uint8)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", type=pathlib.Path,
                        default=pathlib.Path(__file__).resolve().parents[1]
                        / "tests" / "data" / "corpus112")
    args = parser.parse_args()
    args.out.mkdir(parents=True, exist_ok=True)
    for old in args.out.glob("*.png"):
        old.unlink()

    written = 0
    for name, (loader, scales, limit) in SOURCES.items():
        img = loader()
        for scale in scales:
            for k, crop in enumerate(crops(img, scale, limit)):
                Image.fromarray(crop).save(args.out / f"{name}_s{scale}_{k}.png")
                written += 1

    faces = data.lfw_subset()[:FACES]
    for k, face in enumerate(faces):
        up = transform.resize(face, (SIZE, SIZE), order=3, anti_aliasing=False)
        arr = np.clip(np.rint(up * 255.0), 0, 255).astype(np.uint8)
        Image.fromarray(arr).save(args.out / f"face_{k:03d}.png")
        written += 1
    print(f"wrote {written} images to {args.out}")


if __name__ == "__main__":
    main()
