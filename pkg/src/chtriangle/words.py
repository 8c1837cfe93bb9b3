"""Reduced words over the three involutive generators and their evaluation.

The abstract group is the free product of three order-2 groups; a word is a
tuple over {1, 2, 3} with no two adjacent letters equal.  Words serialize as
digit strings, e.g. "1323".
"""

from __future__ import annotations

from collections.abc import Iterator, Sequence

from .core import Isometry
from .family import FamilyPoint, TriangleSpec

Word = tuple[int, ...]

LETTERS = (1, 2, 3)


def reduce_word(seq: Sequence[int]) -> Word:
    """Cancel adjacent equal letters until none remain; the unique normal form."""
    out: list[int] = []
    for letter in seq:
        if letter not in LETTERS:
            raise ValueError(f"letter {letter!r} outside {{1,2,3}}")
        if out and out[-1] == letter:
            out.pop()
        else:
            out.append(letter)
    return tuple(out)


def parse_word(text: str) -> Word:
    """Digit string to word, validating reducedness is NOT enforced here."""
    if text in ("", "-"):
        return ()
    return reduce_word(int(ch) for ch in text)


def word_str(w: Word) -> str:
    return "".join(str(k) for k in w)


def evaluate(f: FamilyPoint, w: Sequence[int]) -> Isometry:
    """Ordered product of generator matrices; the empty word is the identity."""
    m = Isometry.identity()
    for letter in w:
        m = m @ f.generator(letter)
    return m


def wa_wb(spec: TriangleSpec) -> tuple[Word, Word]:
    """The two distinguished short words whose degeneration bounds discreteness.

    With generator 1 opposite p, 2 opposite q, 3 opposite r these are
    1-3-2-3 (a product of two complex reflections) and 1-2-3.
    """
    if not isinstance(spec, TriangleSpec):
        raise TypeError("wa_wb expects a TriangleSpec")
    return (1, 3, 2, 3), (1, 2, 3)


def enumerate_words(max_len: int) -> Iterator[Word]:
    """All reduced words of length <= max_len, shortest first, each once."""
    if max_len < 0:
        raise ValueError("max_len must be >= 0")
    yield ()
    level: list[Word] = [()]
    for _ in range(max_len):
        nxt: list[Word] = []
        for w in level:
            for letter in LETTERS:
                if w and w[-1] == letter:
                    continue
                ext = w + (letter,)
                nxt.append(ext)
                yield ext
        level = nxt


def cyclic_reduce(w: Word) -> Word:
    """Strip matching first/last letters; conjugacy-class representative helper."""
    w = reduce_word(w)
    while len(w) >= 2 and w[0] == w[-1]:
        w = reduce_word(w[1:-1])
    return w


def conjugacy_key(w: Word) -> Word:
    """Canonical key identifying words up to cyclic rotation and inversion.

    Rotation is conjugation; inversion (reversal, since generators are
    involutions) preserves every class function used by the scans
    (discriminant, translation length), so both are safe to merge when
    deduplicating scan word lists.
    """
    w = cyclic_reduce(w)
    if not w:
        return w
    candidates = []
    for base in (w, w[::-1]):
        for k in range(len(base)):
            candidates.append(base[k:] + base[:k])
    return min(candidates)
