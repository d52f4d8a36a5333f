"""Words in the free braid monoid and their symmetry transforms.

A braid diagram on ``n`` strands is a word in the free monoid on the
letters ``s1, s1^-1, ..., s(n-1), s(n-1)^-1``.  No braid-group relations
are imposed: two words that represent the same element of the braid
group generally have different chord diagrams and different independence
complexes, so equality here is literal letter-by-letter equality.

Every letter carries a persistent integer id.  The ids survive the
rewrites performed by the reduction pipeline and act as the join key
between letters and the vertices of the Lando graph built from the
word's closure, so that "delete the vertex of letter 17" stays
meaningful after the word has been rewritten.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable


class BraidParseError(ValueError):
    """Raised when a braid word string cannot be parsed."""

    def __init__(self, message: str, position: int):
        super().__init__(f"token {position}: {message}")
        self.position = position


@dataclass(frozen=True)
class BraidLetter:
    """A single generator occurrence: ``sign * sigma_gen``."""

    id: int
    gen: int
    sign: int

    def __str__(self) -> str:
        return f"s{self.gen}" if self.sign > 0 else f"s{self.gen}^-1"


@dataclass(frozen=True)
class BraidWord:
    """An ordered word over the 2(n-1) monoid letters; () is the empty word."""

    n: int
    letters: tuple[BraidLetter, ...] = ()

    def __post_init__(self):
        if self.n < 2:
            raise ValueError(f"strand count must be >= 2, got {self.n}")
        seen = set()
        for lt in self.letters:
            if not 1 <= lt.gen <= self.n - 1:
                raise ValueError(f"generator {lt.gen} out of range for n={self.n}")
            if lt.sign not in (1, -1):
                raise ValueError(f"invalid sign {lt.sign}")
            if lt.id in seen:
                raise ValueError(f"duplicate letter id {lt.id}")
            seen.add(lt.id)

    def __len__(self) -> int:
        return len(self.letters)

    def __str__(self) -> str:
        return " ".join(str(lt.gen * lt.sign) for lt in self.letters) or "(empty)"

    def signed_gens(self) -> tuple[int, ...]:
        """The word as a tuple of signed generator indices."""
        return tuple(lt.gen * lt.sign for lt in self.letters)

    def fresh_id(self) -> int:
        """An id larger than every id used so far in this word."""
        return max((lt.id for lt in self.letters), default=-1) + 1


def word(signed_gens: Iterable[int], n: int = 4) -> BraidWord:
    """Build a word from signed generator indices, assigning sequential ids."""
    letters = []
    for i, k in enumerate(signed_gens):
        if k == 0 or abs(k) >= n:
            raise ValueError(f"generator {k} out of range for n={n}")
        letters.append(BraidLetter(id=i, gen=abs(k), sign=1 if k > 0 else -1))
    return BraidWord(n=n, letters=tuple(letters))


def parse(text: str, n: int = 4) -> BraidWord:
    """Parse whitespace- or comma-separated signed generator tokens.

    ``"1 2 -1"`` with n=4 is s1 s2 s1^-1; the empty string is the empty
    word.  Letter ids are assigned sequentially from 0.
    """
    tokens = [t for t in text.replace(",", " ").split() if t]
    letters = []
    for pos, tok in enumerate(tokens):
        try:
            k = int(tok)
        except ValueError:
            raise BraidParseError(f"{tok!r} is not an integer", pos) from None
        if k == 0:
            raise BraidParseError("generator index 0 is not a letter", pos)
        if abs(k) >= n:
            raise BraidParseError(
                f"generator {abs(k)} out of range for n={n} (need |k| <= {n - 1})", pos
            )
        letters.append(BraidLetter(id=pos, gen=abs(k), sign=1 if k > 0 else -1))
    return BraidWord(n=n, letters=tuple(letters))


def rotate(w: BraidWord, r: int) -> BraidWord:
    """Cyclic rotation: letter r becomes the first letter.  Ids are kept."""
    if len(w) == 0:
        if r != 0:
            raise ValueError("rotation offset out of range for the empty word")
        return w
    if not 0 <= r < len(w):
        raise ValueError(f"rotation offset {r} out of range for length {len(w)}")
    return BraidWord(n=w.n, letters=w.letters[r:] + w.letters[:r])


def reverse(w: BraidWord) -> BraidWord:
    """Read the word backwards.  Ids are kept."""
    return BraidWord(n=w.n, letters=tuple(reversed(w.letters)))


def involution(w: BraidWord) -> BraidWord:
    """The index flip s_i -> s_(n-i), e.g. s1 <-> s3 for 4 strands."""
    letters = tuple(
        BraidLetter(id=lt.id, gen=w.n - lt.gen, sign=lt.sign) for lt in w.letters
    )
    return BraidWord(n=w.n, letters=letters)


def mirror(w: BraidWord) -> BraidWord:
    """Flip the sign of every letter (the mirror diagram)."""
    letters = tuple(
        BraidLetter(id=lt.id, gen=lt.gen, sign=-lt.sign) for lt in w.letters
    )
    return BraidWord(n=w.n, letters=letters)


def transform(w: BraidWord, t: str, r: int = 0) -> BraidWord:
    """Apply a named symmetry transform: rotate, reverse, involution, mirror.

    rotate/reverse/involution preserve the Lando graph of the closure;
    mirror exchanges the A- and B-state roles.
    """
    if t == "rotate":
        return rotate(w, r)
    if t == "reverse":
        return reverse(w)
    if t == "involution":
        return involution(w)
    if t == "mirror":
        return mirror(w)
    raise ValueError(f"unknown transform {t!r}")


def positive_part(w: BraidWord) -> BraidWord:
    """The subword of positive letters, ids preserved."""
    return BraidWord(n=w.n, letters=tuple(lt for lt in w.letters if lt.sign > 0))


def writhe(w: BraidWord) -> int:
    """(#positive letters) - (#negative letters).

    For braid closures all strands are coherently oriented, so this is
    the writhe of the oriented closed diagram.
    """
    return sum(lt.sign for lt in w.letters)
