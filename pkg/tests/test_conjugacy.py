import pytest

from divfield.conjugacy import (
    ClassLabel,
    Kind,
    class_count,
    class_size,
    classify,
    classify_N,
    coset_space_size,
    enumerate_classes,
    format_product,
    group_order,
    representative,
)
from divfield.errors import InvalidParameterError, NonUnitError
from divfield.mat2 import Mat2
from divfield.oracle import brute_conjugacy_partition


def test_classify_examples():
    assert classify(Mat2(32, 20, 5, 32, 625)) == ClassLabel(Kind.I_PLUS, 5, 4, 32, 4, mu=1)
    assert classify(Mat2(0, 1, -313, -1, 9)) == ClassLabel(Kind.II, 3, 2, 4, 0)
    assert classify(Mat2(2, 0, 0, 6, 7)) == ClassLabel(Kind.III, 7, 1, 2, 6)
    assert classify(Mat2(2, 6, 3, 2, 9)) == ClassLabel(Kind.I_MINUS, 3, 2, 2, 2, mu=1)


def test_classify_scalar_and_elliptic():
    assert classify(Mat2.scalar(4, 25)).kind is Kind.I
    # x^2 + x + 3 is irreducible mod 7
    label = classify(Mat2(0, -3, 1, -1, 7))
    assert label == ClassLabel(Kind.IV, 7, 1, 4, 6)


def test_classify_rejects_singular_and_even():
    with pytest.raises(NonUnitError):
        classify(Mat2(3, 0, 0, 1, 9))
    with pytest.raises(InvalidParameterError):
        classify(Mat2.identity(8))


def test_classify_n_product():
    labels = classify_N(Mat2(2, 42, 21, 20, 63))
    assert format_product(labels) == "I-_{1}(2,2) mod 9 x III(2,6) mod 7"


def test_representative():
    assert representative(ClassLabel(Kind.I_PLUS, 5, 4, 2, 4, mu=1)) == Mat2(2, 20, 5, 2, 625)
    assert representative(ClassLabel(Kind.I, 7, 1, 3)) == Mat2.scalar(3, 7)
    assert representative(ClassLabel(Kind.IV, 7, 1, 4, 6)) == Mat2(0, 4, 1, 6, 7)


def test_label_text_round_trip():
    for label in enumerate_classes(3, 2):
        assert ClassLabel.parse(label.format()) == label


def test_invalid_labels():
    with pytest.raises(InvalidParameterError):
        ClassLabel.parse("I+_{1}(2,2) mod 9")
    with pytest.raises(InvalidParameterError):
        representative(ClassLabel(Kind.III, 7, 1, 2, 9))
    with pytest.raises(ValueError):
        ClassLabel.parse("V(1,2) mod 7")


def test_class_sizes():
    assert class_size(ClassLabel(Kind.I, 3, 2, 1)) == 1
    assert class_size(ClassLabel(Kind.I_MINUS, 3, 2, 2, 2, mu=1)) == 6
    assert class_size(ClassLabel(Kind.III, 7, 1, 2, 6)) == 56


@pytest.mark.parametrize("p, n, order, cosets", [(3, 1, 48, 8), (7, 1, 2016, 48), (3, 2, 3888, 72)])
def test_enumeration_covers_group(p, n, order, cosets):
    assert group_order(p, n) == order
    assert coset_space_size(p, n) == cosets
    assert sum(class_size(label) for label in enumerate_classes(p, n)) == order


def test_coset_space_mod_625():
    assert coset_space_size(5, 4) == 375000


def test_class_count_gl2_f3():
    assert sum(class_count(3, 1).values()) == 8


@pytest.mark.parametrize("p, n", [(3, 1), (5, 1), (3, 2)])
def test_classification_matches_brute_partition(p, n):
    classes = brute_conjugacy_partition(p, n)
    labels = list(enumerate_classes(p, n))
    assert len(classes) == len(labels)
    seen = set()
    for members in classes:
        found = {classify(g) for g in members}
        assert len(found) == 1
        (label,) = found
        assert class_size(label) == len(members)
        seen.add(label)
    assert seen == set(labels)


def test_to_json():
    out = ClassLabel(Kind.I_PRIME_M, 5, 2, 3, mu=1).to_json()
    assert out == {"kind": "I'm", "p": 5, "n": 2, "alpha": 3, "mu": 1}
