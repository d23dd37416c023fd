#!/usr/bin/env python3
"""Export every generator output as a JSON fixture.

The web editor mirrors the normal/triangle generator formulas locally
(the service exposes no generator endpoint), so the TypeScript suite
checks its vectors against these server-side results for all 480 legal
(center, tail) click pairs.  Regenerate after any generator change:

    python frontend/scripts/export_fixtures.py
"""

import json
from pathlib import Path

from fuzzchip.core import make_normal, make_triangle

OUT = Path(__file__).resolve().parent.parent / "fixtures" / "generator_vectors.json"


def main():
    entries = []
    for kind, generator in (("normal", make_normal), ("triangle", make_triangle)):
        for center in range(16):
            for tail in range(16):
                if center == tail:
                    continue
                entries.append(
                    {
                        "kind": kind,
                        "center": center,
                        "tail": tail,
                        "levels": list(generator(center, tail).levels),
                    }
                )
    OUT.parent.mkdir(parents=True, exist_ok=True)
    OUT.write_text(json.dumps(entries, indent=0) + "\n", encoding="utf-8")
    print(f"wrote {OUT} ({len(entries)} vectors)")


if __name__ == "__main__":
    main()
