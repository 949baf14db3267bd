import os

import pytest

pgarcs = pytest.importorskip("pgarcs")

SRC = pgarcs.source_dir
LIB = os.path.join(SRC, "residuals", "q5t3")


def exceptional(card):
    space = pgarcs.ProjectiveSpace.build(4, 5)
    return pgarcs.read_generator_file(os.path.join(SRC, "data", f"exceptional{card}.genmat"), space, card)


def test_space_sizes():
    s = pgarcs.ProjectiveSpace.build(4, 5)
    assert s.num_points == 156
    assert s.num_lines == 806


def test_exceptional_143():
    a = exceptional(143)
    assert a.cardinality == 143
    assert pgarcs.is_strong(a, 3)
    assert pgarcs.lifting_points(a, 3) == []
    assert pgarcs.spectrum(a) == {18: 26, 28: 65, 33: 65}
    assert pgarcs.lambda_distribution(a) == {0: 65, 1: 65, 3: 26}


def test_automorphism_order_128():
    assert pgarcs.automorphism_order(exceptional(128)) == (1920, 7680)


def test_planar_classification_small():
    assert len(pgarcs.classify_strong_planar(5, 3, 18)) == 4
    assert len(pgarcs.classify_strong_planar(5, 3, 23)) == 1


def test_exclusion():
    assert pgarcs.exclude(LIB, 118).empty
    r = pgarcs.exclude(LIB, 143)
    assert not r.empty
    assert sorted(r.line_types) == ["A1", "A3", "B2", "B5"]
    assert len(r.pencils) == 9


def test_lemmas():
    assert pgarcs.eta_table(0)[(0, 3)] == 15
    assert pgarcs.eta_table(4)[(0, 8)] == 29
    assert all(pgarcs.exclusion_infeasible(m) for m in (0, 4, 5, 6, 9, 10, 11, 22))
    assert pgarcs.check_a1() == (101, True)
    assert "a0 = 13 - a3" in pgarcs.planar_spectrum_family(9, 3)


def test_two_mod_q():
    labels = {label for _, label in pgarcs.two_mod_q_spectra(5)}
    assert labels == {1, 2, 3, 4, 5, 6, 7}
    assert [n for n, label in pgarcs.two_mod_q_spectra(3) if label == 0] == [11]
