"""Text formats: .sgt multiplication tables, .pgen partial-map generators,
.rees Rees matrix descriptions.  Lines starting with '#' are comments."""

from __future__ import annotations

from pathlib import Path

import numpy as np

from .core import FiniteSemigroup, from_partial_maps, from_table
from .errors import BadParameters


def _data_lines(text: str) -> list[str]:
    out = []
    for ln in text.splitlines():
        stripped = ln.strip()
        if stripped and not stripped.startswith("#"):
            out.append(stripped)
    return out


def parse_sgt(text: str) -> FiniteSemigroup:
    lines = _data_lines(text)
    if not lines:
        raise BadParameters("empty .sgt input")
    n = int(lines[0])
    if len(lines) != n + 1:
        raise BadParameters(f".sgt expects {n} table rows, found {len(lines) - 1}")
    rows = [[int(tok) for tok in ln.split()] for ln in lines[1 : n + 1]]
    return from_table(rows)


def dump_sgt(s: FiniteSemigroup, header: str | None = None) -> str:
    lines = []
    if header:
        lines.append(f"# {header}")
    lines.append(str(s.size))
    for row in s.table:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def parse_pgen(text: str) -> tuple[FiniteSemigroup, list]:
    lines = _data_lines(text)
    if not lines:
        raise BadParameters("empty .pgen input")
    degree = int(lines[0])
    gens = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != degree:
            raise BadParameters(f".pgen generator needs {degree} tokens, got {len(toks)}")
        gens.append([-1 if tok == "-" else int(tok) for tok in toks])
    return from_partial_maps(degree, gens)


def dump_pgen(degree: int, gens: list) -> str:
    lines = [str(degree)]
    for m in gens:
        lines.append(" ".join("-" if v < 0 else str(int(v)) for v in m))
    return "\n".join(lines) + "\n"


def parse_rees(text: str):
    """Header 'G=<n> A=<a> B=<b> zero=<0|1>', the group table, then B rows of
    A sandwich tokens ('0' or a 1-based group element index)."""
    from .builders import rees_matrix

    lines = _data_lines(text)
    if not lines:
        raise BadParameters("empty .rees input")
    fields = dict(part.split("=") for part in lines[0].split())
    try:
        m, na, nb, zero = (
            int(fields["G"]),
            int(fields["A"]),
            int(fields["B"]),
            bool(int(fields["zero"])),
        )
    except KeyError as exc:
        raise BadParameters(f".rees header missing field {exc}") from exc
    if len(lines) != 1 + m + nb:
        raise BadParameters(f".rees expects {m} group rows and {nb} sandwich rows")
    gtable = [[int(tok) for tok in ln.split()] for ln in lines[1 : 1 + m]]
    sandwich = [[int(tok) for tok in ln.split()] for ln in lines[1 + m : 1 + m + nb]]
    for row in sandwich:
        if len(row) != na:
            raise BadParameters(f".rees sandwich rows need {na} tokens")
    return rees_matrix(from_table(gtable), np.array(sandwich), adjoin_zero=zero)


def dump_rees(group: FiniteSemigroup, sandwich: np.ndarray, zero: bool) -> str:
    c = np.asarray(sandwich)
    nb, na = c.shape
    lines = [f"G={group.size} A={na} B={nb} zero={1 if zero else 0}"]
    for row in group.table:
        lines.append(" ".join(str(int(v)) for v in row))
    for row in c:
        lines.append(" ".join(str(int(v)) for v in row))
    return "\n".join(lines) + "\n"


def read_semigroup(path: str, fmt: str | None = None) -> FiniteSemigroup:
    """Load a semigroup from a file ('-' reads stdin); format from extension
    unless given explicitly ('sgt', 'pgen', 'rees')."""
    if path == "-":
        import sys

        text = sys.stdin.read()
        name = ""
    else:
        p = Path(path)
        text = p.read_text()
        name = p.name
    if fmt is None:
        if name.endswith(".pgen"):
            fmt = "pgen"
        elif name.endswith(".rees"):
            fmt = "rees"
        else:
            fmt = "sgt"
    if fmt == "sgt":
        return parse_sgt(text)
    if fmt == "pgen":
        return parse_pgen(text)[0]
    if fmt == "rees":
        return parse_rees(text).semigroup
    raise BadParameters(f"unknown format {fmt!r}")
