"""String rewriting to normal forms in finitely presented graded algebras.

An algebra is presented by a graded alphabet and rewrite rules sending a
word (the left-hand side) to a linear combination of words.  normalize()
repeatedly replaces the leftmost occurrence of a longest-matching left-hand
side in each monomial and collects like terms, e.g. under the single rule
"x y" -> "y y x" the word "x x y" normalizes to "y y y y x x".  Confluence
and termination of the presentation are the caller's assertion; a step
budget turns runaway presentations into an error instead of a hang.

Coefficients live in F_p (default p = 1000003) or in the exact rationals.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .words import (
    GradedAlphabet,
    Word,
    alphabet_from_json,
    alphabet_to_json,
    grade_of,
    word_from_json,
)

__all__ = [
    "DEFAULT_PRIME",
    "DEFAULT_STEP_BUDGET",
    "StepBudgetExceeded",
    "PrimeField",
    "RationalField",
    "RewriteRule",
    "AlgebraSpec",
    "normalize",
    "field_from_json",
    "algebra_from_json",
    "algebra_to_json",
]

DEFAULT_PRIME = 1000003
DEFAULT_STEP_BUDGET = 100_000

# A linear combination maps monomial words to nonzero field coefficients.
LinComb = dict


class StepBudgetExceeded(RuntimeError):
    """Raised when normalize() runs out of rewrite steps."""


def _is_prime(p: int) -> bool:
    if p < 2:
        return False
    d = 2
    while d * d <= p:
        if p % d == 0:
            return False
        d += 1
    return True


class PrimeField:
    """Arithmetic in F_p on plain ints in [0, p)."""

    def __init__(self, p: int = DEFAULT_PRIME):
        if not isinstance(p, int) or not _is_prime(p):
            raise ValueError(f"field modulus must be prime, got {p!r}.")
        self.p = p
        self.zero = 0
        self.one = 1 % p

    def is_zero(self, a: int) -> bool:
        return a == 0

    def add(self, a: int, b: int) -> int:
        return (a + b) % self.p

    def neg(self, a: int) -> int:
        return -a % self.p

    def mul(self, a: int, b: int) -> int:
        return (a * b) % self.p

    def inv(self, a: int) -> int:
        if a % self.p == 0:
            raise ZeroDivisionError("no inverse of 0.")
        return pow(a, -1, self.p)

    def parse(self, s: str) -> int:
        try:
            return int(s, 10) % self.p
        except (TypeError, ValueError):
            raise ValueError(f"bad F_{self.p} coefficient {s!r}.") from None

    def show(self, a: int) -> str:
        return str(a % self.p)

    def to_json(self) -> dict:
        return {"prime": self.p}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, PrimeField) and other.p == self.p

    def __repr__(self) -> str:
        return f"PrimeField({self.p})"


class RationalField:
    """Exact rational arithmetic on fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)

    def is_zero(self, a: Fraction) -> bool:
        return a == 0

    def add(self, a: Fraction, b: Fraction) -> Fraction:
        return a + b

    def neg(self, a: Fraction) -> Fraction:
        return -a

    def mul(self, a: Fraction, b: Fraction) -> Fraction:
        return a * b

    def inv(self, a: Fraction) -> Fraction:
        if a == 0:
            raise ZeroDivisionError("no inverse of 0.")
        return 1 / a

    def parse(self, s: str) -> Fraction:
        try:
            return Fraction(s)
        except (TypeError, ValueError, ZeroDivisionError):
            raise ValueError(f"bad rational coefficient {s!r}.") from None

    def show(self, a: Fraction) -> str:
        return str(a)

    def to_json(self) -> dict:
        return {"rationals": True}

    def __eq__(self, other: object) -> bool:
        return isinstance(other, RationalField)

    def __repr__(self) -> str:
        return "RationalField()"


def field_from_json(obj: object):
    if isinstance(obj, dict):
        if set(obj) == {"prime"}:
            return PrimeField(obj["prime"])
        if set(obj) == {"rationals"} and obj["rationals"] is True:
            return RationalField()
    raise ValueError(f"field must be {{\"prime\": p}} or {{\"rationals\": true}}, got {obj!r}.")


def _contains(hay: Word, needle: Word) -> bool:
    L = len(needle)
    return any(hay[i : i + L] == needle for i in range(len(hay) - L + 1))


@dataclass(frozen=True)
class RewriteRule:
    """lhs word -> linear combination of words, as ((word, coeff), ...)."""

    lhs: Word
    rhs: tuple[tuple[Word, object], ...]

    def __post_init__(self):
        if not self.lhs:
            raise ValueError("rule lhs must be a nonempty word.")
        for rword, _ in self.rhs:
            if _contains(rword, self.lhs):
                raise ValueError(
                    f"rule lhs {' '.join(self.lhs)!r} occurs in its own rhs "
                    f"monomial {' '.join(rword)!r}; the rule cannot terminate."
                )


class AlgebraSpec:
    """A graded alphabet, rewrite rules, and a coefficient field."""

    def __init__(
        self,
        alphabet: GradedAlphabet,
        rules: Sequence[RewriteRule],
        field: PrimeField | RationalField | None = None,
    ):
        field = PrimeField() if field is None else field
        rules = tuple(rules)
        for rule in rules:
            lhs_grade = grade_of(alphabet, rule.lhs)
            seen: set[Word] = set()
            for rword, coef in rule.rhs:
                if field.is_zero(coef):
                    raise ValueError(
                        f"zero coefficient on {' '.join(rword)!r} in a rule rhs."
                    )
                if rword in seen:
                    raise ValueError(
                        f"duplicate monomial {' '.join(rword)!r} in a rule rhs."
                    )
                seen.add(rword)
                if grade_of(alphabet, rword) != lhs_grade:
                    raise ValueError(
                        f"rule {' '.join(rule.lhs)!r} is not grade-homogeneous: "
                        f"rhs monomial {' '.join(rword)!r} has a different grade."
                    )
        self.alphabet = alphabet
        self.rules = rules
        self.field = field
        self._max_lhs = max((len(rule.lhs) for rule in rules), default=0)
        # Bucket rules by the first lhs symbol, longest lhs first, so the
        # first hit at a position is the longest match there (earlier rule
        # wins among equal lengths).  lhs is kept in list form to compare
        # against list slices of the word being rewritten.
        by_first: dict[str, list[tuple[int, RewriteRule]]] = {}
        for idx, rule in enumerate(rules):
            by_first.setdefault(rule.lhs[0], []).append((idx, rule))
        self._buckets = {
            sym: tuple(
                (list(rule.lhs), len(rule.lhs), rule)
                for _, rule in sorted(pairs, key=lambda p: (-len(p[1].lhs), p[0]))
            )
            for sym, pairs in by_first.items()
        }

    def _find_in(self, buf: list, start: int) -> Optional[tuple[int, RewriteRule, int]]:
        """Leftmost occurrence of a longest-matching lhs at a position >= start."""
        n = len(buf)
        buckets = self._buckets
        for pos in range(start, n):
            bucket = buckets.get(buf[pos])
            if bucket is None:
                continue
            rest = n - pos
            for lhs, L, rule in bucket:
                if L <= rest and buf[pos : pos + L] == lhs:
                    return pos, rule, L
        return None


def normalize(
    spec: AlgebraSpec, word: Sequence[str], step_budget: int | None = None
) -> LinComb:
    """Rewrite a word to its normal form, a {monomial: coefficient} map.

    Each application of a rule to one monomial costs one step; exceeding the
    budget (default DEFAULT_STEP_BUDGET) raises StepBudgetExceeded.
    """
    budget = DEFAULT_STEP_BUDGET if step_budget is None else step_budget
    if budget < 1:
        raise ValueError(f"step budget must be >= 1, got {budget}.")
    field = spec.field
    w = tuple(word)
    for sym in w:
        spec.alphabet.grade(sym)
    if not spec.rules:
        return {w: field.one}
    find = spec._find_in
    back = spec._max_lhs - 1
    # Pending monomials carry a scan hint: every position left of it is known
    # to start no lhs occurrence, so scans resume there instead of at 0.  A
    # rewrite at pos can only create occurrences starting at pos - back or
    # later, which keeps the hint valid as it advances.
    pending: dict[Word, list] = {w: [field.one, 0]}
    out: LinComb = {}
    steps = 0
    while pending:
        mono, (coef, hint) = pending.popitem()
        buf = list(mono)
        hit = find(buf, hint)
        # Single-term rules keep the element a single monomial, so apply them
        # by splicing the buffer in place; only branching rules need to fork.
        while hit is not None:
            pos, rule, L = hit
            if len(rule.rhs) != 1:
                break
            steps += 1
            if steps > budget:
                raise StepBudgetExceeded(
                    f"step budget {budget} exhausted while rewriting; "
                    "possibly non-terminating presentation."
                )
            rword, rcoef = rule.rhs[0]
            buf[pos : pos + L] = rword
            coef = field.mul(coef, rcoef)
            hint = pos - back
            if hint < 0:
                hint = 0
            hit = find(buf, hint)
        if hit is None:
            key = tuple(buf)
            acc = field.add(out.get(key, field.zero), coef)
            if field.is_zero(acc):
                out.pop(key, None)
            else:
                out[key] = acc
            continue
        pos, rule, L = hit
        steps += 1
        if steps > budget:
            raise StepBudgetExceeded(
                f"step budget {budget} exhausted while rewriting; "
                "possibly non-terminating presentation."
            )
        pre = tuple(buf[:pos])
        post = tuple(buf[pos + L :])
        nh = pos - back
        if nh < 0:
            nh = 0
        for rword, rcoef in rule.rhs:
            nw = pre + rword + post
            entry = pending.get(nw)
            if entry is None:
                pending[nw] = [field.mul(coef, rcoef), nh]
                continue
            acc = field.add(entry[0], field.mul(coef, rcoef))
            if field.is_zero(acc):
                del pending[nw]
            else:
                entry[0] = acc
                if nh < entry[1]:
                    entry[1] = nh
    return out


def algebra_from_json(obj: object) -> AlgebraSpec:
    """Parse {"alphabet": ..., "rules": [...], "field": ...}."""
    if not isinstance(obj, dict) or "alphabet" not in obj:
        raise ValueError("algebra needs an \"alphabet\" field.")
    alphabet = alphabet_from_json(obj["alphabet"])
    field = field_from_json(obj.get("field", {"prime": DEFAULT_PRIME}))
    rules = []
    for r in obj.get("rules", []):
        if not isinstance(r, dict) or "lhs" not in r or "rhs" not in r:
            raise ValueError(f"rule {r!r} needs \"lhs\" and \"rhs\".")
        lhs = word_from_json(r["lhs"])
        if not isinstance(r["rhs"], list):
            raise ValueError("rule \"rhs\" must be a list of terms.")
        rhs = []
        for t in r["rhs"]:
            if not isinstance(t, dict) or "coef" not in t or "word" not in t:
                raise ValueError(f"rhs term {t!r} needs \"coef\" and \"word\".")
            rhs.append((word_from_json(t["word"]), field.parse(t["coef"])))
        rules.append(RewriteRule(lhs, tuple(rhs)))
    return AlgebraSpec(alphabet, rules, field)


def algebra_to_json(spec: AlgebraSpec) -> dict:
    return {
        "alphabet": alphabet_to_json(spec.alphabet),
        "rules": [
            {
                "lhs": list(rule.lhs),
                "rhs": [
                    {"coef": spec.field.show(coef), "word": list(rword)}
                    for rword, coef in rule.rhs
                ],
            }
            for rule in spec.rules
        ],
        "field": spec.field.to_json(),
    }
