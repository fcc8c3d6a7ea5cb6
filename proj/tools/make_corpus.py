#!/usr/bin/env python3
"""Regenerate tools/configs/corpus. Output is deterministic."""
import itertools
import json
from pathlib import Path

OUT = Path(__file__).resolve().parent / "configs" / "corpus"

COLORS = {
    "A1": [[1], [2], [3], [0]],
    "A2": [[1, 0], [0, 1], [1, 1], [2, 1], [0, 3], [1, 2]],
}
DUAL_COXETER = {"A1": 2, "A2": 3}

# (parent, sign) per ribbon; every ribbon encloses at most one other
SHAPES = [
    [],
    [(-1, 1)],
    [(-1, -1), (0, 1)],
    [(-1, 1), (0, -1), (-1, -1)],
    [(-1, -1), (0, 1), (1, 1)],
]


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()
    windings = itertools.cycle([-2, -1, 0, 1, 2, 1, -1])
    count = 0
    for group in ("A1", "A2"):
        colors = itertools.cycle(COLORS[group])
        for genus in (0, 1):
            for shift in range(5):
                k = DUAL_COXETER[group] + shift
                for s, shape in enumerate(SHAPES):
                    link = [{"color": next(colors), "winding": next(windings), "sign": sign, "parent": parent}
                            for parent, sign in shape]
                    cfg = {
                        "group": group,
                        "level": k,
                        "genus": genus,
                        "mode": "embedded" if (shift + s) % 2 else "abstract",
                        "N": 4,
                        "refinement": 2 if genus else 1,
                        "link": link,
                        "outputs": ["wlo", "shadow", "compare"],
                    }
                    name = f"{group.lower()}_g{genus}_k{k}_m{len(shape)}_{s}.json"
                    (OUT / name).write_text(json.dumps(cfg, indent=2) + "\n")
                    count += 1
    print(f"wrote {count} configs to {OUT}")


if __name__ == "__main__":
    main()
