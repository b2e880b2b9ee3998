"""Data file emission and session serialization.

CSV carries the plottable surface rows (valid cells only); JSON carries a
full-fidelity record including axes, masks, and run parameters.  Floats
are written with shortest round-trip formatting so a parsed file
reproduces the in-memory values bit for bit.
"""

import csv
import io
import os
import json
import math

import numpy as np

from .noise import PauliWeights
from .stats import SurfaceGrid

SURFACE_COLUMNS = ("phi1", "phi2", "p_ns", "p_s", "p_abs")


def _fmt(x):
    # repr of a Python float is the shortest string that parses back exactly
    return repr(float(x))


def surface_rows(surface):
    """Valid surface cells as (phi1, phi2, p_ns, p_s, p_abs) tuples."""
    rows = []
    for i, f1 in enumerate(surface.phi1_axis):
        for j, f2 in enumerate(surface.phi2_axis):
            v = surface.p_ns[i, j]
            if math.isnan(v):
                continue
            rows.append(
                (float(f1), float(f2), float(v), float(surface.p_s[i, j]),
                 float(surface.p_abs[i, j]))
            )
    return rows


def surface_to_csv(surface, path_or_file):
    """Write the valid cells of a surface as CSV with a header row."""
    rows = surface_rows(surface)
    own = isinstance(path_or_file, (str, bytes, os.PathLike))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh)
        writer.writerow(SURFACE_COLUMNS)
        for row in rows:
            writer.writerow([_fmt(x) for x in row])
    finally:
        if own:
            fh.close()


def surface_from_csv(path_or_file):
    """Read a surface CSV back into a dict of column arrays."""
    own = isinstance(path_or_file, (str, bytes, os.PathLike))
    fh = open(path_or_file, newline="") if own else path_or_file
    try:
        reader = csv.reader(fh)
        header = tuple(next(reader))
        if header != SURFACE_COLUMNS:
            raise ValueError(f"unexpected surface CSV header {header}")
        cols = {name: [] for name in SURFACE_COLUMNS}
        for row in reader:
            for name, cell in zip(SURFACE_COLUMNS, row):
                cols[name].append(float(cell))
    finally:
        if own:
            fh.close()
    return {name: np.array(vals) for name, vals in cols.items()}


def _grid_to_lists(grid):
    return [[None if math.isnan(v) else v for v in row] for row in np.asarray(grid, dtype=float)]


def _grid_from_lists(rows):
    return np.array([[math.nan if v is None else v for v in row] for row in rows], dtype=float)


def surface_to_json(surface, path_or_file=None):
    """Full-fidelity JSON for a surface; returns the string if no target given."""
    doc = {
        "kind": "strategy-surface",
        "step": surface.step,
        "entangled": surface.entangled,
        "weights": None if surface.weights is None else
            [surface.weights.px, surface.weights.py, surface.weights.pz],
        "theta_nodes": surface.theta_nodes,
        "phi1_axis": [float(x) for x in surface.phi1_axis],
        "phi2_axis": [float(x) for x in surface.phi2_axis],
        "p_ns": _grid_to_lists(surface.p_ns),
        "p_s": _grid_to_lists(surface.p_s),
        "p_abs": _grid_to_lists(surface.p_abs),
    }
    text = json.dumps(doc, allow_nan=False)
    if path_or_file is None:
        return text
    if isinstance(path_or_file, (str, bytes, os.PathLike)):
        with open(path_or_file, "w") as fh:
            fh.write(text)
    else:
        path_or_file.write(text)
    return None


def surface_from_json(path_or_file):
    """Reconstruct a SurfaceGrid from its JSON emission."""
    if isinstance(path_or_file, (str, bytes, os.PathLike)):
        with open(path_or_file) as fh:
            doc = json.load(fh)
    elif isinstance(path_or_file, io.IOBase) or hasattr(path_or_file, "read"):
        doc = json.load(path_or_file)
    else:
        doc = path_or_file
    weights = doc["weights"]
    return SurfaceGrid(
        phi1_axis=np.array(doc["phi1_axis"], dtype=float),
        phi2_axis=np.array(doc["phi2_axis"], dtype=float),
        p_ns=_grid_from_lists(doc["p_ns"]),
        p_s=_grid_from_lists(doc["p_s"]),
        p_abs=_grid_from_lists(doc["p_abs"]),
        entangled=bool(doc["entangled"]),
        weights=None if weights is None else PauliWeights(*weights),
        theta_nodes=int(doc["theta_nodes"]),
        step=float(doc["step"]),
    )


def series_to_csv(points, path_or_file):
    """Write sweep points (SweepPoint or (p, values) pairs) as CSV."""
    rows = [(pt.p, pt.values) for pt in points]
    if not rows:
        raise ValueError("nothing to write")
    keys = list(rows[0][1])
    own = isinstance(path_or_file, (str, bytes, os.PathLike))
    fh = open(path_or_file, "w", newline="") if own else path_or_file
    try:
        writer = csv.writer(fh)
        writer.writerow(["p"] + keys)
        for p, values in rows:
            writer.writerow([_fmt(p)] + [_fmt(values[k]) for k in keys])
    finally:
        if own:
            fh.close()


def series_to_json(points, path_or_file=None):
    doc = [{"p": pt.p, **pt.values} for pt in points]
    text = json.dumps(doc, allow_nan=False)
    if path_or_file is None:
        return text
    if isinstance(path_or_file, (str, bytes, os.PathLike)):
        with open(path_or_file, "w") as fh:
            fh.write(text)
    else:
        path_or_file.write(text)
    return None


def session_view(session):
    """Client-facing session record honoring the information-hiding rules.

    The host's prize preparation and policy stay hidden until Resolved;
    the opened door itself is public from DoorOpened on (the player
    watches the doors open).  Session seeds are never serialized.
    """
    doc = {
        "id": session.id,
        "phase": session.phase,
        "entangled": session.entangled,
        "noise_p": session.noise_p,
        "rounds": session.rounds,
        "player_angles": list(session.player_angles) if session.player_angles else None,
        "bet": session.bet,
        "score": session.score.as_dict(),
    }
    if session.door is not None:
        doc["door"] = {
            "phi1": session.door.phi1,
            "phi2": session.door.phi2,
            "phi3": session.door.phi3,
            "coefficients": [float(c) for c in session.door.coefficients],
            "blocked_box": session.door.blocked_box(),
        }
    else:
        doc["door"] = None
    if session.phase == "Resolved":
        tb1, tb2 = session.host.prize_angles()
        prize = session.host.prize
        doc["outcome"] = {
            "i": session.outcome.i,
            "j": session.outcome.j,
            "bet": session.outcome.bet,
            "win": session.outcome.win,
        }
        doc["host"] = {
            "prize": prize if isinstance(prize, str) else [float(x) for x in prize],
            "prize_angles": [tb1, tb2],
            "door_policy": session.host.door if isinstance(session.host.door, str)
                else [float(x) for x in session.host.door],
        }
        diag = float(np.trace(session.distribution_matrix()))
        doc["probabilities"] = {"p_ns": diag, "p_s": 1.0 - diag}
    else:
        doc["outcome"] = None
    return doc
