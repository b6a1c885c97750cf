"""File formats and text parsing.

Three formats, all documented in the README:

* model files: one JSON object {dim, label, S, A} with integer matrices
  (nested rows or a flat row-major list);
* trajectory files: JSON Lines, a header object followed by one record per
  state, integer parts as decimal strings so magnitude is unbounded;
* reports: CSV with a header row, floats printed with 17 significant
  digits, '\n' line endings.

Writers emit canonical bytes (sorted keys, fixed separators) so identical
inputs give identical files.
"""

from __future__ import annotations

import csv
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import IO, Iterable, Iterator

from .dynamics import Trajectory
from .errors import ModelValidationError
from .gaussian import GaussInt, GaussVector
from .models import HamiltonianSpec

TRAJECTORY_FORMAT = "hamca-trajectory"
TRAJECTORY_VERSION = 1


def format_float(x: float) -> str:
    """Fixed 17-significant-digit decimal form used in all reports."""
    return format(float(x), ".17g")


# ---------------------------------------------------------------------------
# Gaussian-integer literals: "0", "-3", "i", "-2i", "1+i", "4-7i"
# ---------------------------------------------------------------------------

_GAUSS_RE = re.compile(
    r"""^\s*
    (?:(?P<re>[+-]?\d+)(?!\d*i))?              # optional real part
    \s*
    (?:(?P<im>[+-](?:\d+)?|(?:\d+)?)i)?        # optional imaginary part
    \s*$""",
    re.VERBOSE,
)


def format_gauss(z: GaussInt) -> str:
    return str(z)


def parse_gauss(text: str) -> GaussInt:
    s = text.strip()
    if not s:
        raise ValueError("empty Gaussian-integer literal")
    m = _GAUSS_RE.match(s)
    if not m or (m.group("re") is None and m.group("im") is None):
        raise ValueError(f"cannot parse Gaussian integer from {text!r}")
    re_part = int(m.group("re")) if m.group("re") is not None else 0
    im_raw = m.group("im")
    if im_raw is None:
        im_part = 0
    elif im_raw in ("", "+"):
        im_part = 1
    elif im_raw == "-":
        im_part = -1
    else:
        im_part = int(im_raw)
    return GaussInt(re_part, im_part)


def parse_gauss_vector(text: str) -> GaussVector:
    """Comma-separated Gaussian-integer components, e.g. '1-i, 0, 2i'."""
    parts = [p for p in text.split(",")]
    if not parts or all(not p.strip() for p in parts):
        raise ValueError(f"cannot parse state vector from {text!r}")
    return GaussVector(tuple(parse_gauss(p) for p in parts))


def load_gauss_vector(path: str | Path) -> GaussVector:
    """State vector file: JSON array of component literals or [re, im] pairs."""
    data = json.loads(Path(path).read_text())
    if not isinstance(data, list) or not data:
        raise ValueError(f"{path}: expected a non-empty JSON array of components")
    comps = []
    for item in data:
        if isinstance(item, str):
            comps.append(parse_gauss(item))
        elif isinstance(item, list) and len(item) == 2:
            comps.append(GaussInt(int(item[0]), int(item[1])))
        elif isinstance(item, int):
            comps.append(GaussInt(item))
        else:
            raise ValueError(f"{path}: cannot interpret component {item!r}")
    return GaussVector(tuple(comps))


# ---------------------------------------------------------------------------
# model files
# ---------------------------------------------------------------------------


def save_model(spec: HamiltonianSpec, path: str | Path) -> None:
    doc = json.dumps(spec.to_dict(), sort_keys=True, separators=(",", ":"))
    Path(path).write_text(doc + "\n")


def load_model(path: str | Path) -> HamiltonianSpec:
    try:
        data = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise ModelValidationError(f"{path}: not valid JSON ({exc})") from exc
    if not isinstance(data, dict):
        raise ModelValidationError(f"{path}: model document must be a JSON object")
    return HamiltonianSpec.from_dict(data)


# ---------------------------------------------------------------------------
# trajectory files (JSON Lines, decimal-string integers)
# ---------------------------------------------------------------------------


def _state_record(n: int, psi: GaussVector) -> str:
    rec = {
        "n": n,
        "re": [str(c.re) for c in psi],
        "im": [str(c.im) for c in psi],
    }
    return json.dumps(rec, sort_keys=True, separators=(",", ":"))


def _header_record(model: HamiltonianSpec, l: float) -> str:
    head = {
        "format": TRAJECTORY_FORMAT,
        "version": TRAJECTORY_VERSION,
        "l": format_float(l),
        "model": model.to_dict(),
    }
    return json.dumps(head, sort_keys=True, separators=(",", ":"))


class TrajectoryWriter:
    """Streaming trajectory writer; one state per line after the header."""

    def __init__(self, fh: IO[str], model: HamiltonianSpec, l: float):
        self._fh = fh
        self._count = 0
        fh.write(_header_record(model, l) + "\n")

    def write_state(self, psi: GaussVector) -> None:
        self._fh.write(_state_record(self._count, psi) + "\n")
        self._count += 1

    @property
    def states_written(self) -> int:
        return self._count


def write_trajectory(traj: Trajectory, path: str | Path) -> None:
    with open(path, "w", newline="") as fh:
        writer = TrajectoryWriter(fh, traj.model, traj.l)
        for psi in traj:
            writer.write_state(psi)


def _parse_header(line: str, path) -> tuple[HamiltonianSpec, float]:
    head = json.loads(line)
    if head.get("format") != TRAJECTORY_FORMAT:
        raise ValueError(f"{path}: not a trajectory file (missing format marker)")
    model = HamiltonianSpec.from_dict(head["model"])
    return model, float(head["l"])


def _parse_state(line: str, model: HamiltonianSpec, path) -> tuple[int, GaussVector]:
    rec = json.loads(line)
    res = rec["re"]
    ims = rec["im"]
    if len(res) != model.dim or len(ims) != model.dim:
        raise ValueError(f"{path}: state record {rec.get('n')} has wrong length")
    return int(rec["n"]), GaussVector(tuple(GaussInt(int(r), int(i)) for r, i in zip(res, ims)))


def read_trajectory_stream(path: str | Path):
    """Open a trajectory file for streaming.

    Returns (model, l, iterator of (n, GaussVector)).  The iterator keeps
    the file handle open until exhausted.
    """
    fh = open(path)
    first = fh.readline()
    if not first:
        fh.close()
        raise ValueError(f"{path}: empty trajectory file")
    try:
        model, l = _parse_header(first, path)
    except Exception:
        fh.close()
        raise

    def gen() -> Iterator[tuple[int, GaussVector]]:
        with fh:
            for line in fh:
                if line.strip():
                    yield _parse_state(line, model, path)

    return model, l, gen()


def load_trajectory(path: str | Path) -> Trajectory:
    model, l, states = read_trajectory_stream(path)
    ordered = []
    for n, psi in states:
        if n != len(ordered):
            raise ValueError(f"{path}: state records out of order at n = {n}")
        ordered.append(psi)
    return Trajectory(model=model, states=tuple(ordered), l=l)


# ---------------------------------------------------------------------------
# CSV reports
# ---------------------------------------------------------------------------


def csv_writer(fh: IO[str]) -> csv.writer:
    return csv.writer(fh, lineterminator="\n")


def write_conservation_csv(fh: IO[str], dim: int, stats: Iterable) -> None:
    """Columns: n, q_re, q_im, L, L_1..L_m, w_1..w_m (weights blank at L=0)."""
    w = csv_writer(fh)
    w.writerow(
        ["n", "q_re", "q_im", "L"]
        + [f"L_{a}" for a in range(1, dim + 1)]
        + [f"w_{a}" for a in range(1, dim + 1)]
    )
    for st in stats:
        weights = (
            [str(frac) for frac in st.links.weights]
            if st.links.weights is not None
            else [""] * dim
        )
        w.writerow(
            [st.n, st.q.re, st.q.im, st.links.total]
            + [str(v) for v in st.links.per_alpha]
            + weights
        )


def write_cycle_csv(fh: IO[str], reports: Iterable) -> None:
    """One row per visited state, with the per-orbit summary repeated on
    each row: pair, period, ontological, link_number, n, k, phase_re, phase_im."""
    w = csv_writer(fh)
    w.writerow(["pair", "period", "ontological", "link_number", "n", "k", "phase_re", "phase_im"])
    for rep in reports:
        period = rep.period if rep.period is not None else ""
        pair = rep.pair_index if rep.pair_index is not None else ""
        for v in rep.visits:
            w.writerow(
                [
                    pair,
                    period,
                    int(rep.ontological),
                    rep.link_number,
                    v.n,
                    v.k if v.k is not None else "",
                    v.phase.re if v.phase is not None else "",
                    v.phase.im if v.phase is not None else "",
                ]
            )


def write_float_csv(fh: IO[str], header: list[str], rows: Iterable[Iterable]) -> None:
    """Generic numeric report; floats go through format_float."""
    w = csv_writer(fh)
    w.writerow(header)
    for row in rows:
        w.writerow([format_float(v) if isinstance(v, float) else v for v in row])
