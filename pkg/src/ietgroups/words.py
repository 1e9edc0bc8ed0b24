"""Reduced words in the free group on the letters ``r`` and ``t``."""

from __future__ import annotations

from typing import Iterable

from .iet import Iet, compose, identity, inverse, power

LETTERS = ("r", "t")


class Word:
    """Freely reduced word stored as ``(letter, exponent)`` blocks.

    Adjacent blocks carry different letters and exponents are nonzero; the
    empty word is the identity.  Products read as compositions of maps, so
    the rightmost block acts first.
    """

    __slots__ = ("blocks",)

    def __init__(self, blocks: Iterable[tuple] = ()):
        self.blocks = reduce_blocks(blocks)

    def __iter__(self):
        return iter(self.blocks)

    def __len__(self):
        """Number of blocks."""
        return len(self.blocks)

    @property
    def length(self) -> int:
        """Word length: sum of absolute exponents."""
        return sum(abs(e) for _, e in self.blocks)

    def is_trivial(self) -> bool:
        return not self.blocks

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.blocks + other.blocks)

    def inverse(self) -> "Word":
        return Word((x, -e) for x, e in reversed(self.blocks))

    def __invert__(self) -> "Word":
        return self.inverse()

    def __pow__(self, n: int) -> "Word":
        base = self if n >= 0 else self.inverse()
        return Word(base.blocks * abs(n))

    def is_reduced(self) -> bool:
        return all(e != 0 for _, e in self.blocks) and all(
            a[0] != b[0] for a, b in zip(self.blocks, self.blocks[1:])
        )

    def __eq__(self, other):
        if not isinstance(other, Word):
            return NotImplemented
        return self.blocks == other.blocks

    def __hash__(self):
        return hash(self.blocks)

    def __repr__(self):
        if not self.blocks:
            return "Word(1)"
        return "Word(" + " ".join(f"{x}^{e}" if e != 1 else x for x, e in self.blocks) + ")"

    def to_json(self) -> list:
        return [[x, e] for x, e in self.blocks]

    @classmethod
    def from_json(cls, obj) -> "Word":
        if not isinstance(obj, list):
            raise ValueError("word JSON must be a list of [letter, exponent] pairs")
        raw = []
        for item in obj:
            if not isinstance(item, list) or len(item) != 2:
                raise ValueError("word JSON must be a list of [letter, exponent] pairs")
            raw.append((item[0], item[1]))
        return cls(raw)


def reduce_blocks(raw: Iterable[tuple]) -> tuple:
    """Free reduction with cascading cancellation."""
    stack: list[list] = []
    for letter, exp in raw:
        if letter not in LETTERS:
            raise ValueError(f"unknown letter {letter!r}")
        if isinstance(exp, bool) or not isinstance(exp, int):
            raise ValueError(f"exponent must be an integer, got {exp!r}")
        if exp == 0:
            continue
        if stack and stack[-1][0] == letter:
            stack[-1][1] += exp
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([letter, exp])
    return tuple((x, e) for x, e in stack)


def reduce(raw: Iterable[tuple]) -> Word:
    return Word(raw)


def is_trivial(w: Word) -> bool:
    return w.is_trivial()


def letter(x: str, e: int = 1) -> Word:
    return Word([(x, e)])


def evaluate_word(w: Word, R: Iet, T: Iet) -> Iet:
    """Substitute ``r -> R``, ``t -> T`` and compose; the rightmost block acts first."""
    gens = {"r": R, "t": T}
    cache: dict[tuple, Iet] = {}

    def block(x, e):
        key = (x, e)
        if key not in cache:
            if (x, -e) in cache:
                cache[key] = inverse(cache[(x, -e)])
            elif e > 0:
                cache[key] = power(gens[x], e)
            else:
                cache[key] = inverse(power(gens[x], -e))
        return cache[key]

    result = identity()
    for x, e in w.blocks:
        result = compose(result, block(x, e))
    return result
