"""Text formatting and CSV emission helpers.

All numeric output goes through :func:`fmt` (17 significant digits) so that
files round-trip doubles exactly and repeated runs diff cleanly.
"""

from __future__ import annotations

import os


def fmt(x: float) -> str:
    """Format a float at full double precision."""
    return format(float(x), ".17g")


def fmt_int(x) -> str:
    return str(int(x))


def write_csv(path, schema: str, columns, rows) -> None:
    """Write a CSV with a versioned schema comment line and a header row.

    ``rows`` is an iterable of sequences of already-formatted strings.
    """
    lines = [f"# schema {schema}", ",".join(columns)]
    for row in rows:
        lines.append(",".join(row))
    text = "\n".join(lines) + "\n"
    tmp = f"{path}.tmp"
    with open(tmp, "w", encoding="ascii", newline="\n") as fh:
        fh.write(text)
    os.replace(tmp, path)
