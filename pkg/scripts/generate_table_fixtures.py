#!/usr/bin/env python3
"""Regenerate the versioned transform-table fixture.

The shipped JSON is the source of truth for tests; run this only when
the table encoding itself changes, and review the diff.
"""

import json
import pathlib

from drops.cartesian import tables_as_json

out = pathlib.Path(__file__).resolve().parents[1] / "src" / "drops" / "tables" / "trilinear_tables.json"
with out.open("w", encoding="utf-8") as fh:
    json.dump(tables_as_json(), fh, indent=1)
    fh.write("\n")
print(f"wrote {out}")
