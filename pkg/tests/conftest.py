import math
import random

import pytest

from gadget_forge.frame import GadgetSpec, validate

CUBE = GadgetSpec(math.pi / 2, math.pi / 2, math.pi / 2)
# 80/100 side faces with a 120-degree top apex: gamma = 60 degrees.
WIDE = GadgetSpec(2 * math.pi / 3, math.radians(80), math.radians(100))


def random_valid_spec(rng: random.Random, deltas=True, margin=0.1) -> GadgetSpec:
    """Rejection-sample a spec satisfying all admissibility conditions.

    Keeps the same margin away from the validity boundaries (including the
    gap angle collapsing to zero) so double precision stays meaningful.
    """
    while True:
        a = rng.uniform(margin, math.pi - margin)
        bl = rng.uniform(margin, math.pi - margin)
        br = rng.uniform(margin, math.pi - margin)
        spec = GadgetSpec(a, bl, br)
        if spec.gamma < margin:
            continue
        if not validate(spec).ok:
            continue
        if deltas and rng.random() < 0.6:
            dl = rng.uniform(0.0, min(bl, math.pi / 2) * 0.95)
            dr = rng.uniform(0.0, min(br, math.pi / 2) * 0.95)
            spec = GadgetSpec(a, bl, br, dl, dr)
            if not validate(spec).ok:
                continue
        return spec


def random_flat_spec(rng: random.Random) -> GadgetSpec:
    while True:
        bl = rng.uniform(0.6, math.pi - 0.6)
        br = rng.uniform(0.6, math.pi - 0.6)
        if bl + br >= math.pi * 0.999:
            continue
        spec = GadgetSpec(bl + br, bl, br)
        if validate(spec).ok:
            return spec


@pytest.fixture
def rng():
    return random.Random(20240817)
