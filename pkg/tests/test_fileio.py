from __future__ import annotations

import numpy as np
import pytest

from sgmindeg import builders
from sgmindeg.errors import BadParameters
from sgmindeg.fileio import (
    dump_pgen,
    dump_rees,
    dump_sgt,
    parse_pgen,
    parse_rees,
    parse_sgt,
    read_semigroup,
)


def test_sgt_roundtrip(tmp_path):
    s = builders.symmetric_inverse(2).semigroup
    text = dump_sgt(s, header="SIM_2")
    back = parse_sgt(text)
    assert np.array_equal(back.table, s.table)
    p = tmp_path / "sim2.sgt"
    p.write_text(text)
    assert np.array_equal(read_semigroup(str(p)).table, s.table)


def test_sgt_comments_and_errors():
    assert parse_sgt("# comment\n1\n0\n").size == 1
    with pytest.raises(BadParameters):
        parse_sgt("")
    with pytest.raises(BadParameters):
        parse_sgt("2\n0 1\n")  # missing row


def test_pgen_roundtrip(tmp_path):
    gens = [(1, 0), (0, -1)]
    text = dump_pgen(2, gens)
    assert "-" in text
    s, maps = parse_pgen(text)
    assert maps[0] == (1, 0) and maps[1] == (0, -1)
    p = tmp_path / "gen.pgen"
    p.write_text(text)
    s2 = read_semigroup(str(p))
    assert s2.size == s.size


def test_rees_roundtrip(tmp_path):
    g = builders.symmetric_group(3).semigroup
    sandwich = np.array([[1, 1], [1, 2]])
    text = dump_rees(g, sandwich, zero=False)
    built = parse_rees(text)
    assert built.semigroup.size == 24
    p = tmp_path / "m.rees"
    p.write_text(text)
    s = read_semigroup(str(p))
    assert s.size == 24


def test_rees_header_errors():
    with pytest.raises(BadParameters):
        parse_rees("G=1 A=1\n0\n1\n")
    with pytest.raises(BadParameters):
        parse_rees("G=1 A=2 B=1 zero=0\n0\n1\n")  # sandwich row too short
