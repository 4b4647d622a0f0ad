"""Factorization of graded words into identity-grade blocks and leftover letters.

Every word w = w_1 ... w_n over a group-graded alphabet factors as
y_1 a_1 y_2 a_2 ... where each A-segment a_i is a block whose grades multiply
to the identity and the Y-segments collect the leftover letters.  The
A-segments come from an optimal interval decomposition of the grade sequence
(adjacent chosen intervals merged), so the Y-segments hold at most |G| - 1
letters in total.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple, Sequence

from .groups import FiniteGroup, build_group, spec_from_json, spec_to_json
from .intervals import GradeSequence, decompose_optimal

__all__ = [
    "GradedAlphabet",
    "Segment",
    "Factorization",
    "FactorizationReport",
    "grade_of",
    "factorize",
    "power_count",
    "height_bound",
    "verify_factorization",
    "alphabet_from_json",
    "alphabet_to_json",
    "word_from_json",
    "factorization_from_json",
    "factorization_to_json",
]

Word = tuple[str, ...]


class GradedAlphabet:
    """Ordered generator symbols with grades in a finite group."""

    def __init__(self, group: FiniteGroup, generators: Sequence[tuple[str, int]]):
        gens = tuple((str(sym), grade) for sym, grade in generators)
        if not gens:
            raise ValueError("an alphabet needs at least one generator.")
        grades: dict[str, int] = {}
        for sym, grade in gens:
            if not sym:
                raise ValueError("generator symbols must be nonempty.")
            if sym in grades:
                raise ValueError(f"duplicate generator symbol {sym!r}.")
            if not isinstance(grade, int) or isinstance(grade, bool) \
                    or not 0 <= grade < group.order:
                raise ValueError(
                    f"grade {grade!r} of {sym!r} out of range [0,{group.order - 1}]."
                )
            grades[sym] = grade
        self.group = group
        self.generators = gens
        self._grades = grades

    @property
    def symbols(self) -> tuple[str, ...]:
        return tuple(sym for sym, _ in self.generators)

    def grade(self, sym: str) -> int:
        try:
            return self._grades[sym]
        except KeyError:
            raise ValueError(f"unknown symbol {sym!r}.") from None


class Segment(NamedTuple):
    """Tagged span of word positions; tag is "A" (identity grade) or "Y"."""

    tag: str
    start: int
    end: int

    @property
    def length(self) -> int:
        return self.end - self.start + 1


@dataclass(frozen=True)
class Factorization:
    """Alternating Y/A segments partitioning the positions of a word."""

    segments: tuple[Segment, ...]

    @property
    def k(self) -> int:
        """Number of A-segments."""
        return sum(1 for s in self.segments if s.tag == "A")

    @property
    def y_total(self) -> int:
        """Total length of the Y-segments."""
        return sum(s.length for s in self.segments if s.tag == "Y")


def grade_of(alphabet: GradedAlphabet, word: Sequence[str]) -> int:
    """Product of the letter grades of a word (identity for the empty word)."""
    table = alphabet.group.mul_table
    acc = 0
    for sym in word:
        acc = table[acc][alphabet.grade(sym)]
    return acc


def factorize(alphabet: GradedAlphabet, word: Sequence[str]) -> Factorization:
    """Factor a word into maximal identity-grade A-segments and leftover Y-segments."""
    grades = [alphabet.grade(sym) for sym in word]
    dec = decompose_optimal(GradeSequence(alphabet.group, grades))

    merged: list[list[int]] = []
    for iv in dec.intervals:
        if merged and merged[-1][1] + 1 == iv.start:
            merged[-1][1] = iv.end
        else:
            merged.append([iv.start, iv.end])

    segments: list[Segment] = []
    nxt = 1
    for a, b in merged:
        if nxt < a:
            segments.append(Segment("Y", nxt, a - 1))
        segments.append(Segment("A", a, b))
        nxt = b + 1
    if nxt <= len(word):
        segments.append(Segment("Y", nxt, len(word)))
    return Factorization(segments=tuple(segments))


def power_count(fact: Factorization, h: int) -> int:
    """Powers needed to express the word when each A-segment costs height h.

    Each A-segment contributes at most h powers of base-set elements and each
    Y-segment one power per letter, giving h*k + sum of Y-segment lengths.
    """
    if h < 1:
        raise ValueError(f"height must be >= 1, got {h}.")
    return h * fact.k + fact.y_total


def height_bound(h: int, m: int) -> int:
    """Height (h+1)*m - 1 reached over a grading group of order m."""
    if h < 1:
        raise ValueError(f"height must be >= 1, got {h}.")
    if m < 1:
        raise ValueError(f"group order must be >= 1, got {m}.")
    return (h + 1) * m - 1


@dataclass(frozen=True)
class FactorizationReport:
    """Outcome of verify_factorization."""

    violations: tuple[str, ...]

    @property
    def ok(self) -> bool:
        return not self.violations


def verify_factorization(
    alphabet: GradedAlphabet, word: Sequence[str], fact: Factorization
) -> FactorizationReport:
    """Check every factorization invariant for a claimed factorization."""
    word = tuple(word)
    n = len(word)
    m = alphabet.group.order
    violations: list[str] = []

    nxt = 1
    shaped = True
    for seg in fact.segments:
        if seg.tag not in ("A", "Y"):
            violations.append(f"segment tag {seg.tag!r} is not \"A\" or \"Y\".")
            shaped = False
        if seg.start != nxt or seg.end < seg.start or seg.end > n:
            violations.append(
                f"segment [{seg.start},{seg.end}] breaks the partition of [1,{n}]."
            )
            shaped = False
            break
        nxt = seg.end + 1
    if shaped and nxt != n + 1:
        violations.append(f"segments stop at {nxt - 1}, word has length {n}.")

    for prev, cur in zip(fact.segments, fact.segments[1:]):
        if prev.tag == cur.tag == "A":
            violations.append(
                f"adjacent A-segments [{prev.start},{prev.end}] and "
                f"[{cur.start},{cur.end}] are not merged."
            )
        elif prev.tag == cur.tag == "Y":
            violations.append(
                f"adjacent Y-segments [{prev.start},{prev.end}] and "
                f"[{cur.start},{cur.end}] are not merged."
            )

    for seg in fact.segments:
        if seg.tag == "A" and 1 <= seg.start <= seg.end <= n:
            g = grade_of(alphabet, word[seg.start - 1 : seg.end])
            if g != 0:
                violations.append(
                    f"A-segment [{seg.start},{seg.end}] has grade "
                    f"{alphabet.group.name_of(g)}, not the identity."
                )

    y_total = sum(s.length for s in fact.segments if s.tag == "Y")
    y_count = sum(1 for s in fact.segments if s.tag == "Y")
    k = sum(1 for s in fact.segments if s.tag == "A")
    if y_total > m - 1:
        violations.append(f"Y-segments hold {y_total} letters, more than |G|-1={m - 1}.")
    if y_count > m - 1:
        violations.append(f"{y_count} Y-segments, more than |G|-1={m - 1}.")
    if k > m:
        violations.append(f"{k} A-segments, more than |G|={m}.")

    return FactorizationReport(violations=tuple(violations))


def alphabet_from_json(obj: object) -> GradedAlphabet:
    """Parse {"group": spec, "generators": [{"sym": ..., "grade": ...}, ...]}."""
    if not isinstance(obj, dict) or "group" not in obj or "generators" not in obj:
        raise ValueError("alphabet needs \"group\" and \"generators\" fields.")
    group = build_group(spec_from_json(obj["group"]))
    gens = obj["generators"]
    if not isinstance(gens, list):
        raise ValueError("\"generators\" must be a list.")
    pairs = []
    for g in gens:
        if not isinstance(g, dict) or "sym" not in g or "grade" not in g:
            raise ValueError(f"generator {g!r} needs \"sym\" and \"grade\".")
        if not isinstance(g["sym"], str):
            raise ValueError(f"generator symbol {g['sym']!r} must be a string.")
        pairs.append((g["sym"], g["grade"]))
    return GradedAlphabet(group, pairs)


def alphabet_to_json(alphabet: GradedAlphabet) -> dict:
    if alphabet.group.spec is None:
        raise ValueError("alphabet group has no serializable spec.")
    return {
        "group": spec_to_json(alphabet.group.spec),
        "generators": [
            {"sym": sym, "grade": grade} for sym, grade in alphabet.generators
        ],
    }


def word_from_json(obj: object) -> Word:
    if not isinstance(obj, list) or not all(isinstance(s, str) for s in obj):
        raise ValueError(f"a word is a list of symbol strings, got {obj!r}.")
    return tuple(obj)


def factorization_from_json(obj: object) -> Factorization:
    if not isinstance(obj, list):
        raise ValueError("a factorization is a list of segments.")
    segs = []
    for s in obj:
        if (
            not isinstance(s, dict)
            or s.get("tag") not in ("A", "Y")
            or not isinstance(s.get("span"), list)
            or len(s["span"]) != 2
            or not all(isinstance(x, int) for x in s["span"])
        ):
            raise ValueError(f"segment {s!r} needs a tag and a [start, end] span.")
        segs.append(Segment(s["tag"], s["span"][0], s["span"][1]))
    return Factorization(segments=tuple(segs))


def factorization_to_json(fact: Factorization) -> list:
    return [{"tag": s.tag, "span": [s.start, s.end]} for s in fact.segments]
