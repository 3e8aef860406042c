"""Generate a compared set and serve it for the web viewer.

Writes eight datasets (a gap sweep and a spike sweep), then starts the
local API server. Open the printed URL in a browser; with the frontend
built (see frontend/README notes in the top-level README) the viewer
offers method/layout/scope toggles and hover inspection.
"""

import sys
from pathlib import Path

from accustripes import flaw_sweep, save_dataset
from accustripes.cli import main

out_dir = Path(__file__).parent / "output" / "viewer_data"
out_dir.mkdir(parents=True, exist_ok=True)

paths = []
for flaw, seed in (("gap", 7), ("spike", 8)):
    for i, dist in enumerate(flaw_sweep(2500, flaw, seed=seed, location=0.4)):
        path = out_dir / f"{flaw}_{i}.json"
        save_dataset(dist, path)
        paths.append(str(path))

ui_dir = Path(__file__).resolve().parent.parent / "frontend" / "dist"
args = ["serve", "--port", "8000", "--inputs", *paths]
if ui_dir.is_dir():
    args += ["--ui-dir", str(ui_dir)]
else:
    print("frontend/dist not found; serving the bare API", file=sys.stderr)

sys.exit(main(args))
