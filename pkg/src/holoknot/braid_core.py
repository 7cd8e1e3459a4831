"""Braid words, permutations and permutation braids.

Conventions
-----------
A letter ``i > 0`` is the generator sigma_i, ``-i`` its inverse.

A `Permutation` lists, for each position ``k`` (1-based), the label of the
strand that ends at position ``k``. The generator sigma_i swaps the entries
at positions ``i`` and ``i + 1``, so reading a word left to right multiplies
permutations on the right: ``permutation_of(compose(w1, w2)) ==
permutation_of(w1).compose(permutation_of(w2))``.
"""

__all__ = [
    "MAX_VISITED_WORDS",
    "BraidWord",
    "Permutation",
    "PermutationBraid",
    "compose",
    "invert",
    "free_reduce",
    "permutation_of",
    "exponent_sum",
    "delta",
    "is_delta_fragment",
    "permutation_braid_word",
    "positive_equivalent",
    "sign_equivalent",
    "parse_braid_word",
    "format_braid_word",
]

import collections
import collections.abc
import dataclasses
import re

from .errors import BraidParseError, InputError, IterationCapError

MAX_VISITED_WORDS = 1_000_000

STRANDS_RE = re.compile(r"^n=(\d+)$")
LETTER_RE = re.compile(r"^[+-]?\d+$")


@dataclasses.dataclass(frozen=True)
class BraidWord:
    """A word in the Artin generators of the braid group on ``strands``.

    Parameters
    ----------
    strands
        Number of strands n >= 1.
    letters
        Nonzero integers with absolute value at most n - 1.

    Raises
    ------
    InputError
        If ``strands < 1`` or a letter is out of range.
    """

    strands: int
    letters: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.strands < 1:
            raise InputError(f"strands={self.strands} must be >= 1")
        letters = tuple(int(letter) for letter in self.letters)
        bad_letters = [
            letter
            for letter in letters
            if letter == 0 or abs(letter) >= self.strands
        ]
        if bad_letters:
            raise InputError(
                f"letters {bad_letters} out of range for n={self.strands}"
            )
        object.__setattr__(self, "letters", letters)

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self) -> collections.abc.Iterator[int]:
        return iter(self.letters)

    def __str__(self) -> str:
        return format_braid_word(self)

    def is_positive(self) -> bool:
        """Are all letters positive? True for the empty word."""
        return all(letter > 0 for letter in self.letters)

    def is_negative(self) -> bool:
        """Are all letters negative? True for the empty word."""
        return all(letter < 0 for letter in self.letters)


@dataclasses.dataclass(frozen=True)
class Permutation:
    """A bijection of {1, ..., n}, stored as position -> strand label.

    Raises
    ------
    InputError
        If ``images`` is not a bijection of {1, ..., n}.
    """

    images: tuple[int, ...]

    def __post_init__(self) -> None:
        images = tuple(int(value) for value in self.images)
        if sorted(images) != list(range(1, len(images) + 1)):
            raise InputError(f"images={images} is not a permutation")
        object.__setattr__(self, "images", images)

    @classmethod
    def identity(cls, n: int) -> "Permutation":
        return cls(tuple(range(1, n + 1)))

    @classmethod
    def transposition(cls, i: int, n: int) -> "Permutation":
        """The image of sigma_i in S_n."""
        images = list(range(1, n + 1))
        images[i - 1], images[i] = images[i], images[i - 1]
        return cls(tuple(images))

    @property
    def n(self) -> int:
        return len(self.images)

    def compose(self, other: "Permutation") -> "Permutation":
        """Return ``self`` followed by ``other``."""
        if other.n != self.n:
            raise InputError(f"Cannot compose S_{self.n} with S_{other.n}")
        return Permutation(
            tuple(self.images[value - 1] for value in other.images)
        )

    def inverse(self) -> "Permutation":
        inverse = [0] * self.n
        for position, value in enumerate(self.images, start=1):
            inverse[value - 1] = position
        return Permutation(tuple(inverse))

    def inversion_count(self) -> int:
        images = self.images
        return sum(
            1
            for a in range(self.n)
            for b in range(a + 1, self.n)
            if images[a] > images[b]
        )

    def right_descents(self) -> frozenset[int]:
        """Generators i such that the permutation braid ends with sigma_i."""
        images = self.images
        return frozenset(
            i for i in range(1, self.n) if images[i - 1] > images[i]
        )

    def left_descents(self) -> frozenset[int]:
        """Generators i such that the permutation braid starts with
        sigma_i."""
        return self.inverse().right_descents()

    def cycle_type(self) -> tuple[int, ...]:
        """Cycle lengths in decreasing order; a conjugacy invariant."""
        seen = [False] * self.n
        lengths = []
        for start in range(self.n):
            length = 0
            position = start
            while not seen[position]:
                seen[position] = True
                position = self.images[position] - 1
                length += 1
            if length:
                lengths.append(length)
        return tuple(sorted(lengths, reverse=True))

    def is_identity(self) -> bool:
        return all(
            value == position
            for position, value in enumerate(self.images, start=1)
        )


@dataclasses.dataclass(frozen=True)
class PermutationBraid:
    """A fragment of Delta: a positive braid in which each pair of
    strands crosses at most once.

    Equality and hashing use the permutation only; ``word`` is the
    canonical representative from `permutation_braid_word`.
    """

    perm: Permutation
    word: BraidWord = dataclasses.field(compare=False)

    def __post_init__(self) -> None:
        if self.word.strands != self.perm.n:
            raise InputError(
                f"word has {self.word.strands} strands, "
                f"perm has {self.perm.n}"
            )
        if not self.word.is_positive():
            raise InputError(f"word {self.word} is not positive")
        if len(self.word) != self.perm.inversion_count():
            raise InputError(
                f"word {self.word} is not a permutation braid word"
            )

    @classmethod
    def from_perm(cls, perm: Permutation) -> "PermutationBraid":
        return cls(perm=perm, word=permutation_braid_word(perm))


def _check_strands(w1: BraidWord, w2: BraidWord) -> None:
    if w1.strands != w2.strands:
        raise InputError(
            f"Strand count mismatch: {w1.strands} != {w2.strands}"
        )


def compose(w1: BraidWord, w2: BraidWord) -> BraidWord:
    """Concatenate two words on the same number of strands.

    Raises
    ------
    InputError
        If the strand counts differ.
    """
    _check_strands(w1, w2)
    return BraidWord(w1.strands, w1.letters + w2.letters)


def invert(w: BraidWord) -> BraidWord:
    """Reverse the letters and flip their signs."""
    return BraidWord(
        w.strands, tuple(-letter for letter in reversed(w.letters))
    )


def free_reduce(w: BraidWord) -> BraidWord:
    """Cancel adjacent inverse pairs until none remain."""
    stack: list[int] = []
    for letter in w.letters:
        if stack and stack[-1] == -letter:
            stack.pop()
        else:
            stack.append(letter)
    return BraidWord(w.strands, tuple(stack))


def permutation_of(w: BraidWord) -> Permutation:
    """The image of ``w`` in the symmetric group."""
    images = list(range(1, w.strands + 1))
    for letter in w.letters:
        i = abs(letter)
        images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def exponent_sum(w: BraidWord) -> int:
    return sum(1 if letter > 0 else -1 for letter in w.letters)


def delta(n: int) -> BraidWord:
    """Garside's fundamental braid,
    (s_1 ... s_{n-1})(s_1 ... s_{n-2}) ... (s_1 s_2)(s_1).

    Raises
    ------
    InputError
        If ``n < 1``.
    """
    if n < 1:
        raise InputError(f"n={n} must be >= 1")
    letters: list[int] = []
    for top in range(n - 1, 0, -1):
        letters += range(1, top + 1)
    return BraidWord(n, tuple(letters))


def is_delta_fragment(p: BraidWord) -> None | Permutation:
    """Return the permutation of ``p`` if no pair of strands crosses twice
    along ``p``, else None.

    Raises
    ------
    InputError
        If ``p`` has a negative letter.
    """
    if not p.is_positive():
        raise InputError(f"{p} is not a positive word")
    images = list(range(1, p.strands + 1))
    for i in p.letters:
        if images[i - 1] > images[i]:
            return None
        images[i - 1], images[i] = images[i], images[i - 1]
    return Permutation(tuple(images))


def permutation_braid_word(perm: Permutation) -> BraidWord:
    """The canonical positive word of a permutation braid.

    Bubble-sort the images with left-to-right passes, recording the
    position of every swap; the word is the reversed swap record.
    Its length is the inversion count of ``perm``.
    """
    images = list(perm.images)
    swaps = []
    swapped = True
    while swapped:
        swapped = False
        for j in range(len(images) - 1):
            if images[j] > images[j + 1]:
                images[j], images[j + 1] = images[j + 1], images[j]
                swaps.append(j + 1)
                swapped = True
    return BraidWord(perm.n, tuple(reversed(swaps)))


def _positive_neighbors(
    letters: tuple[int, ...]
) -> collections.abc.Iterator[tuple[int, ...]]:
    """Words one far commutation or braid relation away; all letters > 0."""
    for j in range(len(letters) - 1):
        a, b = letters[j], letters[j + 1]
        if abs(a - b) >= 2:
            yield letters[:j] + (b, a) + letters[j + 2 :]
        elif (
            abs(a - b) == 1
            and j + 2 < len(letters)
            and letters[j + 2] == a
        ):
            yield letters[:j] + (b, a, b) + letters[j + 3 :]


def positive_equivalent(
    p1: BraidWord, p2: BraidWord, max_visited: int = MAX_VISITED_WORDS
) -> bool:
    """Are two positive words connected by far commutations and braid
    relations?

    Breadth-first closure over words of the common length.

    Parameters
    ----------
    p1, p2
        Positive words on the same number of strands.
    max_visited
        Maximum number of distinct words to visit.

    Raises
    ------
    InputError
        If a word is not positive or the strand counts differ.
    IterationCapError
        If more than ``max_visited`` words are visited.
    """
    _check_strands(p1, p2)
    for word in (p1, p2):
        if not word.is_positive():
            raise InputError(f"{word} is not a positive word")
    if len(p1) != len(p2):
        return False
    if p1.letters == p2.letters:
        return True
    if permutation_of(p1) != permutation_of(p2):
        return False
    target = p2.letters
    visited = {p1.letters}
    queue = collections.deque([p1.letters])
    while queue:
        letters = queue.popleft()
        for neighbor in _positive_neighbors(letters):
            if neighbor == target:
                return True
            if neighbor not in visited:
                visited.add(neighbor)
                if len(visited) > max_visited:
                    raise IterationCapError(
                        f"positive rewriting closure exceeded "
                        f"{max_visited} words"
                    )
                queue.append(neighbor)
    return False


def sign_equivalent(
    w1: BraidWord, w2: BraidWord, max_visited: int = MAX_VISITED_WORDS
) -> bool:
    """Positive equivalence for positive words, its mirror for negative
    words, False for words of mixed or different signs.
    """
    if w1.is_positive() and w2.is_positive():
        return positive_equivalent(w1, w2, max_visited)
    if w1.is_negative() and w2.is_negative():
        return positive_equivalent(
            BraidWord(w1.strands, tuple(-letter for letter in w1)),
            BraidWord(w2.strands, tuple(-letter for letter in w2)),
            max_visited,
        )
    return False


def parse_braid_word(text: str) -> BraidWord:
    """Parse the text format ``n=<int>`` followed by letters.

    Blank lines and lines starting with ``#`` are ignored.

    Raises
    ------
    BraidParseError
        With the line and column of the offending token.
    """
    strands: None | int = None
    letters: list[int] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if line.lstrip().startswith("#"):
            continue
        for match in re.finditer(r"\S+", line):
            token = match.group()
            column = match.start() + 1
            if strands is None:
                strands_match = STRANDS_RE.match(token)
                if strands_match is None or int(strands_match.group(1)) < 1:
                    raise BraidParseError(
                        f"expected 'n=<strands>', got {token!r}",
                        line_number,
                        column,
                    )
                strands = int(strands_match.group(1))
                continue
            if LETTER_RE.match(token) is None:
                raise BraidParseError(
                    f"expected a nonzero integer, got {token!r}",
                    line_number,
                    column,
                )
            letter = int(token)
            if letter == 0 or abs(letter) >= strands:
                raise BraidParseError(
                    f"letter {letter} out of range for n={strands}",
                    line_number,
                    column,
                )
            letters.append(letter)
    if strands is None:
        raise BraidParseError("missing 'n=<strands>'", 1, 1)
    return BraidWord(strands, tuple(letters))


def format_braid_word(w: BraidWord) -> str:
    return " ".join([f"n={w.strands}"] + [str(letter) for letter in w])
