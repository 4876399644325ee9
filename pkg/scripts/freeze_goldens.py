"""Regenerate src/grext/fixtures/goldens.json from a verified run."""

import json
import sys
from pathlib import Path

from grext.suites import freeze_goldens


def dump(obj, indent=0):
    # dicts one key per line, lists inline
    if isinstance(obj, dict):
        pad = "  " * (indent + 1)
        body = ",\n".join(f"{pad}{json.dumps(k)}: {dump(v, indent + 1)}" for k, v in obj.items())
        return "{\n" + body + "\n" + "  " * indent + "}"
    return json.dumps(obj)


target = Path(__file__).resolve().parents[1] / "src" / "grext" / "fixtures" / "goldens.json"
target.write_text(dump(freeze_goldens()) + "\n")
sys.stdout.write(f"wrote {target}\n")
