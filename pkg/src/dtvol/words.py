"""Words in the free group on two letters a, b, and the relator words used
by the double twist knot presentations and the two-bridge normal form.

Words are always stored freely reduced.  ASCII form uses case for inversion
("aB" means a b^-1); the pretty form renders superscript minus ("ab⁻¹").
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

_SUP_INV = "⁻¹"  # superscript -1


@dataclass(frozen=True)
class FreeWord:
    """Reduced word; letters are (generator, exponent) with exponent +-1."""

    letters: tuple[tuple[str, int], ...] = ()

    @staticmethod
    def from_letters(letters) -> "FreeWord":
        return FreeWord(_reduce(tuple(letters)))

    @staticmethod
    def from_ascii(text: str) -> "FreeWord":
        """Parse "aB Ab" style input (capital = inverse, spaces ignored)."""
        letters = []
        for ch in text:
            if ch.isspace():
                continue
            low = ch.lower()
            if low not in ("a", "b"):
                raise ValueError(f"unexpected character {ch!r} in word")
            letters.append((low, -1 if ch.isupper() else 1))
        return FreeWord.from_letters(letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: "FreeWord") -> "FreeWord":
        return FreeWord.from_letters(self.letters + other.letters)

    def inverse(self) -> "FreeWord":
        return FreeWord(tuple((g, -e) for g, e in reversed(self.letters)))

    def reverse(self) -> "FreeWord":
        """Reversed letter order; exponents are kept, not inverted."""
        return FreeWord.from_letters(tuple(reversed(self.letters)))

    def __pow__(self, n: int) -> "FreeWord":
        if n == 0:
            return FreeWord()
        base = self if n > 0 else self.inverse()
        out = FreeWord()
        for _ in range(abs(n)):
            out = out * base
        return out

    def ascii(self) -> str:
        return "".join(g if e > 0 else g.upper() for g, e in self.letters)

    def pretty(self) -> str:
        return "".join(g if e > 0 else g + _SUP_INV for g, e in self.letters)

    def __str__(self) -> str:
        return self.pretty() if self.letters else "1"


def _reduce(letters: tuple[tuple[str, int], ...]) -> tuple[tuple[str, int], ...]:
    stack: list[tuple[str, int]] = []
    for g, e in letters:
        if e not in (1, -1) or g not in ("a", "b"):
            raise ValueError(f"bad letter {(g, e)!r}")
        if stack and stack[-1][0] == g and stack[-1][1] == -e:
            stack.pop()
        else:
            stack.append((g, e))
    return tuple(stack)


def tilde(u: FreeWord) -> FreeWord:
    """Letterwise substitution a -> b^-1, b -> a^-1 (then reduce)."""
    swap = {"a": "b", "b": "a"}
    return FreeWord.from_letters(tuple((swap[g], -e) for g, e in u.letters))


@dataclass(frozen=True)
class TwoBridgeParams:
    """Normal-form parameters of a two-bridge knot: p > |q| >= 1, both odd, coprime."""

    p: int
    q: int

    def __post_init__(self) -> None:
        if self.p % 2 == 0 or self.q % 2 == 0:
            raise ValueError(f"p and q must both be odd, got ({self.p}, {self.q})")
        if not (self.p > abs(self.q) >= 1):
            raise ValueError(f"need p > |q| >= 1, got ({self.p}, {self.q})")
        if gcd(self.p, self.q) != 1:
            raise ValueError(f"p and q must be coprime, got ({self.p}, {self.q})")


def twobridge_word(params: TwoBridgeParams) -> FreeWord:
    """Relator word a^{e_1} b^{e_2} ... b^{e_{p-1}} with e_i = (-1)^floor(i q / p)."""
    p, q = params.p, params.q
    letters = []
    for i in range(1, p):
        sign = -1 if ((i * q) // p) % 2 else 1
        gen = "a" if i % 2 == 1 else "b"
        letters.append((gen, sign))
    return FreeWord.from_letters(letters)


@dataclass(frozen=True)
class KnotParam:
    """Double twist knot J(k, 2n), normalized to k >= 2 and n != 0."""

    k: int
    n: int

    def __post_init__(self) -> None:
        if self.k < 2:
            raise ValueError(f"need k >= 2, got k={self.k}")
        if self.n == 0:
            raise ValueError("need n != 0 (J(k,0) is trivial)")

    @property
    def odd(self) -> bool:
        return self.k % 2 == 1

    @property
    def m(self) -> int:
        """Half-twist count: k = 2m+1 (odd family) or k = 2m (even family)."""
        return (self.k - 1) // 2 if self.odd else self.k // 2

    @property
    def family(self) -> str:
        return "odd" if self.odd else "even"

    def __str__(self) -> str:
        return f"J({self.k},{2 * self.n})"


def jk_word(k: int) -> FreeWord:
    """The word w with pi_1 = <a,b | w^n a = b w^n> for J(k, 2n).

    k = 2m+1: (b a^-1)^m b a (b^-1 a)^m; k = 2m: (b a^-1)^m (b^-1 a)^m.
    """
    if k < 2:
        raise ValueError(f"need k >= 2, got {k}")
    ba_inv = FreeWord.from_ascii("bA")
    binv_a = FreeWord.from_ascii("Ba")
    if k % 2 == 1:
        m = (k - 1) // 2
        return ba_inv**m * FreeWord.from_ascii("ba") * binv_a**m
    m = k // 2
    return ba_inv**m * binv_a**m
