"""Rebuild every file in this directory from manifest.json.

    python3 fixtures/regenerate.py [OUTDIR]
"""

import json
import sys
from pathlib import Path

from pqhybrid.cli import main

HERE = Path(__file__).resolve().parent


def regenerate(outdir: Path) -> None:
    manifest = json.loads((HERE / "manifest.json").read_text())
    common = ["--seed", manifest["seed"], "--clock", str(manifest["clock"])]
    for run in manifest["runs"]:
        target = outdir / run["out"]
        if run["args"][0] == "issue":
            target.mkdir(parents=True, exist_ok=True)
        code = main(run["args"] + common + ["--out", str(target)])
        if code != 0:
            raise SystemExit(f"{run['args']} exited {code}")


if __name__ == "__main__":
    regenerate(Path(sys.argv[1]) if len(sys.argv) > 1 else HERE)
