"""Validates every sample config against the schema of its command (the filename prefix)."""
import json
import pathlib
import sys

import jsonschema

root = pathlib.Path(sys.argv[1])
bad = 0
for cfg in sorted((root / "configs").glob("*.json")):
    command = cfg.name.split("_")[0]
    schema = json.loads((root / "schemas" / f"{command}.schema.json").read_text())
    try:
        jsonschema.validate(json.loads(cfg.read_text()), schema)
        print("ok", cfg.name)
    except jsonschema.ValidationError as e:
        print("invalid", cfg.name, e.message)
        bad += 1
sys.exit(1 if bad else 0)
