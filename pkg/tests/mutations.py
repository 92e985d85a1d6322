"""Single-ray perturbations of a serialized certificate."""

from __future__ import annotations

import copy
from typing import Iterator


def ray_mutations(data: dict) -> Iterator[tuple[str, dict]]:
    """Yield ``(label, mutated copy)`` adding 1 to one coordinate of one fan ray."""
    for key in ("fan_before", "fan_after"):
        fan = data.get(key)
        if fan is None:
            continue
        for i, ray in enumerate(fan["rays"]):
            for j in range(len(ray)):
                out = copy.deepcopy(data)
                out[key]["rays"][i][j] = str(int(ray[j]) + 1)
                yield f"{key} ray {i} coordinate {j}", out
