"""CSV dumps of chains."""

from __future__ import annotations

import csv
import io

from .chain import ChainResult

CSV_HEADER = ("step", "vx", "vy", "vz", "lu", "lv", "lw", "residual")


def chain_to_csv(result: ChainResult) -> str:
    """One row per vertex: the vertex, the side leaving it and that step's residual.

    The last vertex of an open chain has no outgoing side, so its side and
    residual fields are empty.  Floats are written with ``repr`` (lossless).
    """
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for k, v in enumerate(result.vertices):
        row = [k, *map(repr, map(float, v.coords))]
        if k < len(result.sides):
            row += [*map(repr, map(float, result.sides[k].coeffs)), repr(float(result.residuals[k]))]
        else:
            row += ["", "", "", ""]
        w.writerow(row)
    return buf.getvalue()
