"""Factorization of graded words into identity-grade and leftover segments."""

import random

import pytest

import shirshov as sh


def _z2_alphabet():
    group = sh.build_group(sh.cyclic(2))
    return sh.GradedAlphabet(group, [("x", 1), ("y", 0)])


def test_alphabet_validation():
    group = sh.build_group(sh.cyclic(2))
    with pytest.raises(ValueError, match="at least one generator"):
        sh.GradedAlphabet(group, [])
    with pytest.raises(ValueError, match="duplicate generator"):
        sh.GradedAlphabet(group, [("x", 0), ("x", 1)])
    with pytest.raises(ValueError, match="out of range"):
        sh.GradedAlphabet(group, [("x", 2)])
    alpha = _z2_alphabet()
    assert alpha.symbols == ("x", "y")
    with pytest.raises(ValueError, match="unknown symbol"):
        alpha.grade("z")


def test_grade_of_examples():
    alpha = _z2_alphabet()
    assert sh.grade_of(alpha, ("x", "x", "y")) == 0
    assert sh.grade_of(alpha, ()) == 0
    assert sh.grade_of(alpha, ("x", "y")) == 1


def test_factorize_main_example():
    fact = sh.factorize(_z2_alphabet(), ("x", "x", "x", "y"))
    assert [(s.tag, s.start, s.end) for s in fact.segments] == \
        [("Y", 1, 1), ("A", 2, 4)]
    assert fact.k == 1
    assert fact.y_total == 1


def test_factorize_all_identity_grades():
    alpha = _z2_alphabet()
    fact = sh.factorize(alpha, ("y",) * 6)
    assert [(s.tag, s.start, s.end) for s in fact.segments] == [("A", 1, 6)]
    assert fact.k == 1 and fact.y_total == 0
    assert sh.power_count(fact, 5) == 5


def test_factorize_all_leftover():
    group = sh.build_group(sh.cyclic(3))
    alpha = sh.GradedAlphabet(group, [("u", 1)])
    fact = sh.factorize(alpha, ("u", "u"))
    assert [(s.tag, s.start, s.end) for s in fact.segments] == [("Y", 1, 2)]
    assert fact.k == 0 and fact.y_total == 2
    assert sh.power_count(fact, 2) == 2


def test_factorize_empty_word():
    fact = sh.factorize(_z2_alphabet(), ())
    assert fact.segments == ()
    assert fact.k == 0 and fact.y_total == 0


def test_factorize_merges_adjacent_intervals():
    # Grades 0,0,1,1 decompose into adjacent identity-product intervals that
    # must come back as one A-segment.
    fact = sh.factorize(_z2_alphabet(), ("y", "y", "x", "x"))
    assert [(s.tag, s.start, s.end) for s in fact.segments] == [("A", 1, 4)]
    assert fact.k == 1


def test_power_count_examples():
    fact = sh.factorize(_z2_alphabet(), ("x", "x", "x", "y"))
    assert sh.power_count(fact, 2) == 3
    with pytest.raises(ValueError):
        sh.power_count(fact, 0)


def test_height_bound_examples():
    assert sh.height_bound(2, 2) == 5
    for h in (1, 3, 9):
        assert sh.height_bound(h, 1) == h
    assert sh.height_bound(1, 6) == 11
    with pytest.raises(ValueError):
        sh.height_bound(0, 3)
    with pytest.raises(ValueError):
        sh.height_bound(1, 0)


def test_verify_factorization_clean_on_factorize_output():
    rng = random.Random(23)
    group = sh.build_group(sh.dihedral(3))
    alpha = sh.GradedAlphabet(
        group, [(f"s{k}", rng.randrange(group.order)) for k in range(4)]
    )
    for _ in range(100):
        word = tuple(f"s{rng.randrange(4)}" for _ in range(rng.randrange(0, 60)))
        fact = sh.factorize(alpha, word)
        rep = sh.verify_factorization(alpha, word, fact)
        assert rep.ok, rep.violations


def test_verify_flags_bad_a_segment_grade():
    alpha = _z2_alphabet()
    word = ("x", "y")
    fact = sh.Factorization(segments=(sh.Segment("A", 1, 2),))
    rep = sh.verify_factorization(alpha, word, fact)
    assert any("not the identity" in v for v in rep.violations)


def test_verify_flags_unmerged_a_segments():
    alpha = _z2_alphabet()
    word = ("y", "y")
    fact = sh.Factorization(segments=(sh.Segment("A", 1, 1), sh.Segment("A", 2, 2)))
    rep = sh.verify_factorization(alpha, word, fact)
    assert any("not merged" in v for v in rep.violations)


def test_verify_flags_partition_gap():
    alpha = _z2_alphabet()
    word = ("y", "y", "y")
    fact = sh.Factorization(segments=(sh.Segment("A", 1, 2),))
    rep = sh.verify_factorization(alpha, word, fact)
    assert not rep.ok


def test_segments_partition_word_in_order():
    rng = random.Random(5)
    group = sh.build_group(sh.product(sh.cyclic(2), sh.cyclic(4)))
    alpha = sh.GradedAlphabet(
        group, [(f"t{k}", rng.randrange(group.order)) for k in range(3)]
    )
    for _ in range(80):
        word = tuple(f"t{rng.randrange(3)}" for _ in range(rng.randrange(0, 80)))
        fact = sh.factorize(alpha, word)
        spans = [(s.start, s.end) for s in fact.segments]
        pos = 1
        for a, b in spans:
            assert a == pos and b >= a
            pos = b + 1
        assert pos == len(word) + 1
        tags = [s.tag for s in fact.segments]
        for t1, t2 in zip(tags, tags[1:]):
            assert t1 != t2  # strict alternation after merging


def test_structure_depends_only_on_grades():
    group = sh.build_group(sh.cyclic(3))
    a1 = sh.GradedAlphabet(group, [("x", 1), ("y", 2)])
    a2 = sh.GradedAlphabet(group, [("p", 1), ("q", 2)])
    w1 = ("x", "y", "x", "x", "y")
    w2 = ("p", "q", "p", "p", "q")
    f1 = sh.factorize(a1, w1)
    f2 = sh.factorize(a2, w2)
    assert f1.segments == f2.segments


def test_invariants_random_small_groups():
    rng = random.Random(97)
    specs = [sh.cyclic(k) for k in range(1, 9)] + [sh.dihedral(3), sh.symmetric(3)]
    groups = [sh.build_group(s) for s in specs]
    for _ in range(300):
        group = rng.choice(groups)
        m = group.order
        nsym = rng.randrange(1, 5)
        alpha = sh.GradedAlphabet(
            group, [(f"a{k}", rng.randrange(m)) for k in range(nsym)]
        )
        word = tuple(f"a{rng.randrange(nsym)}" for _ in range(rng.randrange(0, 100)))
        fact = sh.factorize(alpha, word)
        assert sh.verify_factorization(alpha, word, fact).ok
        assert fact.y_total <= m - 1
        assert fact.k <= m
        for h in (1, 2, 3):
            assert sh.power_count(fact, h) <= sh.height_bound(h, m)


def test_alphabet_json_round_trip():
    doc = {
        "group": {"cyclic": 2},
        "generators": [{"sym": "x", "grade": 1}, {"sym": "y", "grade": 0}],
    }
    alpha = sh.alphabet_from_json(doc)
    assert sh.alphabet_to_json(alpha) == doc
    assert alpha.grade("x") == 1
    with pytest.raises(ValueError):
        sh.alphabet_from_json({"group": {"cyclic": 2}})
    with pytest.raises(ValueError):
        sh.alphabet_from_json({"group": {"cyclic": 2}, "generators": [["x", 1]]})


def test_word_json():
    assert sh.word_from_json(["x", "x", "y"]) == ("x", "x", "y")
    assert sh.word_from_json([]) == ()
    with pytest.raises(ValueError):
        sh.word_from_json("xy")
    with pytest.raises(ValueError):
        sh.word_from_json([1, 2])


def test_factorization_json_round_trip():
    fact = sh.factorize(_z2_alphabet(), ("x", "x", "x", "y"))
    doc = sh.factorization_to_json(fact)
    assert doc == [{"tag": "Y", "span": [1, 1]}, {"tag": "A", "span": [2, 4]}]
    assert sh.factorization_from_json(doc) == fact
    with pytest.raises(ValueError):
        sh.factorization_from_json([{"tag": "B", "span": [1, 1]}])
