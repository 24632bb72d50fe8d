from __future__ import annotations

import math

import numpy as np
import pytest

from quons.io import (MtcFile, ParseError, file_to_mtc, fingerprint, mtc_to_file, parse_map, parse_mtc,
                      recoupling_entries, serialize_mtc)
from quons.mtc import builtin, verify_modular_data
from quons.recoupling import build_recoupling, verify_recoupling

R = 1 / math.sqrt(2)
SEMION = f"""\
# hand-written semion data
mtc my_semion
labels 1 s
unit 1
dual s s
N 1 1 1 1
N 1 s s 1
N s 1 s 1
N s s 1 1
S 1 {R} 0 {R} 0
S s {R} 0 {-R} 0
"""


def test_semion_file_verifies():
    m, F = file_to_mtc(parse_mtc(SEMION))
    assert m.labels == ("1", "s") and F is None
    assert verify_modular_data(m).passed


@pytest.mark.parametrize("name", ["fibonacci", "ising", "z4", "su2_3"])
def test_round_trip(name):
    m = builtin(name)
    f = mtc_to_file(m, recoupling_entries(build_recoupling(m)))
    text = serialize_mtc(f)
    g = parse_mtc(text)
    assert g == f
    assert serialize_mtc(g) == text
    assert fingerprint(g) == fingerprint(f)


def test_loaded_recoupling_validates():
    m = builtin("ising")
    f = parse_mtc(serialize_mtc(mtc_to_file(m, recoupling_entries(build_recoupling(m)))))
    m2, F = file_to_mtc(f)
    assert np.allclose(m2.S, m.S)
    assert verify_recoupling(build_recoupling(m2, F=F)).passed


def test_unit_moved_first():
    # S rows list columns in file label order
    text = SEMION.replace("labels 1 s", "labels s 1").replace(f"S s {R} 0 {-R} 0", f"S s {-R} 0 {R} 0")
    m, _ = file_to_mtc(parse_mtc(text))
    assert m.labels == ("1", "s")
    assert verify_modular_data(m).passed


def test_builtin_name_supplies_s():
    text = "mtc fibonacci\nlabels 1 tau\nunit 1\nN 1 1 1 1\nN 1 tau tau 1\nN tau 1 tau 1\n" \
           "N tau tau 1 1\nN tau tau tau 1\n"
    m, _ = file_to_mtc(parse_mtc(text))
    assert m.dual == (0, 1)
    assert verify_modular_data(m).passed


def test_missing_labels_line():
    with pytest.raises(ParseError) as err:
        parse_mtc("mtc x\nN tau tau one 1\n")
    assert err.value.line == 2
    assert "labels" in str(err.value)


@pytest.mark.parametrize("text,line,col", [
    ("mtc x\nlabels a b\nunit c\n", 3, 6),
    ("mtc x\nlabels a a\n", 2, 8),
    ("mtc x\nlabels a b\nunit a\nN a b b x\n", 4, 9),
    ("mtc x\nlabels a\nunit a\nQ a\n", 4, 1),
    ("mtc x\nmtc y\n", 2, 1),
    ("mtc x\nlabels a b\nunit a\nS a 1 0\n", 4, 1),
])
def test_positioned_errors(text, line, col):
    with pytest.raises(ParseError) as err:
        parse_mtc(text)
    assert (err.value.line, err.value.column) == (line, col)


def test_no_s_and_not_builtin():
    text = "mtc unknown\nlabels 1\nunit 1\nN 1 1 1 1\n"
    with pytest.raises(ValueError):
        file_to_mtc(parse_mtc(text))


def test_map_errors():
    with pytest.raises(ParseError):
        parse_map("map x\nvertex +1 x\n")
    with pytest.raises(ParseError):
        parse_map("map x\n")
    with pytest.raises(ParseError):
        parse_map("vertex +1 +1\n")


def test_mtcfile_equality():
    f = parse_mtc(SEMION)
    assert f == parse_mtc(SEMION)
    assert f != MtcFile("other", f.labels, f.unit)
