"""Garside normal forms, summit forms and the conjugacy problem.

Permutation braids are handled internally as tuples of images (see
`holoknot.braid_core` for the conventions) and wrapped in
`PermutationBraid` only in returned values.
"""

__all__ = [
    "NormalForm",
    "ConjugationWitness",
    "tau",
    "negative_split",
    "left_normal_form",
    "words_equal",
    "conjugate_by_fragment",
    "left_complement",
    "cycling",
    "decycling",
    "summit_form",
    "summit_set",
    "conjugate_test",
    "format_normal_form",
    "parse_normal_form",
]

import collections.abc
import dataclasses
import functools
import itertools
import re

import structlog

from .braid_core import (
    BraidWord,
    Permutation,
    PermutationBraid,
    compose,
    delta,
    exponent_sum,
    free_reduce,
    invert,
    is_delta_fragment,
    permutation_of,
)
from .config import EngineConfig
from .errors import BraidParseError, InputError, IterationCapError

PermT = tuple[int, ...]

NORMAL_FORM_RE = re.compile(
    r"^\s*(?:n=(?P<n>\d+)\s+)?(?:Δ|D)\^(?P<inf>[+-]?\d+)\s*\|(?P<tail>.*)$"
)

log = structlog.get_logger("Garside")


@dataclasses.dataclass(frozen=True)
class NormalForm:
    """Left normal form Delta^inf P_1 ... P_r of a braid.

    Parameters
    ----------
    strands
        Number of strands.
    inf
        Power of Delta.
    factors
        The permutation braids P_1, ..., P_r; none is trivial or Delta.
    """

    strands: int
    inf: int
    factors: tuple[PermutationBraid, ...] = ()

    def __post_init__(self) -> None:
        delta_perm = _delta_perm(self.strands)
        for factor in self.factors:
            if factor.perm.n != self.strands:
                raise InputError(
                    f"factor {factor.word} does not have {self.strands} "
                    "strands"
                )
            if factor.perm.is_identity() or factor.perm.images == delta_perm:
                raise InputError(
                    f"factor {factor.word} is trivial or equal to Delta"
                )

    @property
    def canonical_length(self) -> int:
        """The number r of non-Delta factors."""
        return len(self.factors)

    @property
    def sup(self) -> int:
        return self.inf + len(self.factors)

    def factor_images(self) -> tuple[PermT, ...]:
        return tuple(factor.perm.images for factor in self.factors)

    def delta_word(self) -> BraidWord:
        """Delta^inf as a word; negative powers use invert(delta(n))."""
        block = delta(self.strands)
        if self.inf < 0:
            block = invert(block)
        return BraidWord(self.strands, block.letters * abs(self.inf))

    def factors_word(self) -> BraidWord:
        """Concatenation of the canonical factor words."""
        letters: tuple[int, ...] = ()
        for factor in self.factors:
            letters += factor.word.letters
        return BraidWord(self.strands, letters)

    def word(self) -> BraidWord:
        return compose(self.delta_word(), self.factors_word())

    def is_left_weighted(self) -> bool:
        """Does every adjacent factor pair satisfy left-greedy
        maximality?"""
        images = self.factor_images()
        return all(
            _renormalize_pair(a, b) == (a, b)
            for a, b in zip(images[:-1], images[1:])
        )

    def sort_key(self) -> tuple[int, int, tuple[PermT, ...]]:
        return (self.inf, len(self.factors), self.factor_images())

    def __str__(self) -> str:
        return format_normal_form(self)


@dataclasses.dataclass(frozen=True)
class ConjugationWitness:
    """A positive conjugator A_1 A_2 ... A_z, each A_i a fragment of
    Delta."""

    strands: int
    steps: tuple[PermutationBraid, ...] = ()

    def word(self) -> BraidWord:
        letters: tuple[int, ...] = ()
        for step in self.steps:
            letters += step.word.letters
        return BraidWord(self.strands, letters)


@functools.cache
def _identity_perm(n: int) -> PermT:
    return tuple(range(1, n + 1))


@functools.cache
def _delta_perm(n: int) -> PermT:
    return tuple(range(n, 0, -1))


@functools.cache
def _transposition_perm(i: int, n: int) -> PermT:
    return Permutation.transposition(i, n).images


@functools.cache
def _permutation_braid(images: PermT) -> PermutationBraid:
    return PermutationBraid.from_perm(Permutation(images))


@functools.cache
def _fragments(n: int) -> tuple[PermT, ...]:
    """All non-trivial permutation braids on n strands, sorted."""
    identity = _identity_perm(n)
    return tuple(
        perm
        for perm in itertools.permutations(range(1, n + 1))
        if perm != identity
    )


def _inverse(perm: PermT) -> PermT:
    inverse = [0] * len(perm)
    for position, value in enumerate(perm, start=1):
        inverse[value - 1] = position
    return tuple(inverse)


def _tau_perm(perm: PermT, power: int = 1) -> PermT:
    if power % 2 == 0:
        return perm
    n = len(perm)
    return tuple(n + 1 - perm[n - 1 - k] for k in range(n))


def _left_complement(perm: PermT) -> PermT:
    """C with C * perm = Delta."""
    n = len(perm)
    return tuple(n + 1 - value for value in _inverse(perm))


def left_complement(perm: Permutation) -> Permutation:
    """The permutation braid C with C * perm = Delta."""
    return Permutation(_left_complement(perm.images))


def _right_complement(perm: PermT) -> PermT:
    """B with perm * B = Delta."""
    inverse = _inverse(perm)
    n = len(perm)
    return tuple(inverse[n - 1 - k] for k in range(n))


def _split_perm(i: int, n: int) -> PermT:
    """U_i with U_i * sigma_i = Delta."""
    images = list(_delta_perm(n))
    images[i - 1], images[i] = images[i], images[i - 1]
    return tuple(images)


def _renormalize_pair(a: PermT, b: PermT) -> tuple[PermT, PermT]:
    """Move generators from the head of b to the tail of a while a stays
    a fragment of Delta."""
    first = list(a)
    second = list(b)
    n = len(first)
    while True:
        position = [0] * (n + 1)
        for index, value in enumerate(second):
            position[value] = index
        for s in range(1, n):
            if position[s] > position[s + 1] and first[s - 1] < first[s]:
                break
        else:
            return tuple(first), tuple(second)
        first[s - 1], first[s] = first[s], first[s - 1]
        second[position[s]] = s + 1
        second[position[s + 1]] = s


def _append_factor(
    factors: list[PermT], perm: PermT, identity: PermT
) -> None:
    factors.append(perm)
    j = len(factors) - 2
    while j >= 0:
        a, b = _renormalize_pair(factors[j], factors[j + 1])
        if a == factors[j]:
            break
        factors[j], factors[j + 1] = a, b
        j -= 1
    while factors and factors[-1] == identity:
        factors.pop()


def _normalize(
    n: int, inf: int, perms: collections.abc.Iterable[PermT]
) -> NormalForm:
    """Normal form of Delta^inf times the product of ``perms``."""
    identity = _identity_perm(n)
    delta_perm = _delta_perm(n)
    factors: list[PermT] = []
    for perm in perms:
        if perm != identity:
            _append_factor(factors, perm, identity)
    changed = True
    while changed:
        changed = False
        for j in range(len(factors) - 1):
            a, b = _renormalize_pair(factors[j], factors[j + 1])
            if a != factors[j]:
                factors[j], factors[j + 1] = a, b
                changed = True
    lead = 0
    while lead < len(factors) and factors[lead] == delta_perm:
        lead += 1
    return NormalForm(
        strands=n,
        inf=inf + lead,
        factors=tuple(
            _permutation_braid(perm)
            for perm in factors[lead:]
            if perm != identity
        ),
    )


def tau(w: BraidWord) -> BraidWord:
    """Conjugate by Delta: sigma_i -> sigma_{n-i}, signs kept."""
    n = w.strands
    return BraidWord(
        n,
        tuple(
            n - letter if letter > 0 else -(n + letter) for letter in w.letters
        ),
    )


def negative_split(i: int, n: int) -> tuple[BraidWord, PermutationBraid]:
    """Split sigma_i^-1 as Delta^-1 U_i.

    Returns
    -------
    delta_inverse
        The canonical word invert(delta(n)).
    fragment
        The permutation braid U_i with Delta = U_i sigma_i.

    Raises
    ------
    InputError
        If i is not in 1..n-1.
    """
    if not 1 <= i <= n - 1:
        raise InputError(f"generator index {i} out of range for n={n}")
    return invert(delta(n)), _permutation_braid(_split_perm(i, n))


def left_normal_form(w: BraidWord) -> NormalForm:
    """The left normal form of the element represented by ``w``.

    Each sigma_i^-1 is replaced by Delta^-1 U_i, the Delta^-1 factors are
    moved to the left by twisting everything they pass with tau, and the
    resulting fragments are made left-weighted.
    """
    n = w.strands
    twisted: list[PermT] = [()] * len(w.letters)
    delta_power = 0
    for index in range(len(w.letters) - 1, -1, -1):
        letter = w.letters[index]
        if letter > 0:
            perm = _transposition_perm(letter, n)
        else:
            perm = _split_perm(-letter, n)
        twisted[index] = _tau_perm(perm, delta_power)
        if letter < 0:
            delta_power -= 1
    return _normalize(n, delta_power, twisted)


def words_equal(w1: BraidWord, w2: BraidWord) -> bool:
    """Do two words represent the same braid?

    Raises
    ------
    InputError
        If the strand counts differ.
    """
    if w1.strands != w2.strands:
        raise InputError(
            f"Strand count mismatch: {w1.strands} != {w2.strands}"
        )
    if free_reduce(w1).letters == free_reduce(w2).letters:
        return True
    if permutation_of(w1) != permutation_of(w2):
        return False
    return left_normal_form(w1) == left_normal_form(w2)


def _conjugate_by(nf: NormalForm, perm: PermT) -> NormalForm:
    """Normal form of A^-1 x A for the fragment A = perm."""
    k = nf.inf
    complement = _tau_perm(_left_complement(perm), k)
    return _normalize(
        nf.strands,
        k - 1,
        [complement, *nf.factor_images(), perm],
    )


def conjugate_by_fragment(
    nf: NormalForm, fragment: PermutationBraid
) -> NormalForm:
    """Normal form of A^-1 x A for a fragment A of Delta."""
    return _conjugate_by(nf, fragment.perm.images)


def _cycle(nf: NormalForm) -> tuple[NormalForm, list[PermT]]:
    if not nf.factors:
        return nf, []
    images = nf.factor_images()
    conjugator = _tau_perm(images[0], nf.inf)
    cycled = _normalize(nf.strands, nf.inf, [*images[1:], conjugator])
    return cycled, [conjugator]


def _decycle(nf: NormalForm) -> tuple[NormalForm, list[PermT]]:
    if not nf.factors:
        return nf, []
    images = nf.factor_images()
    last = images[-1]
    decycled = _normalize(
        nf.strands, nf.inf, [_tau_perm(last, nf.inf), *images[:-1]]
    )
    # A_r^-1 Delta^2 = (A_r^-1 Delta) Delta, a positive conjugator.
    return decycled, [_right_complement(last), _delta_perm(nf.strands)]


def cycling(nf: NormalForm) -> NormalForm:
    """Conjugate by the tau^inf-twisted first factor.

    A pure power of Delta is returned unchanged.
    """
    return _cycle(nf)[0]


def decycling(nf: NormalForm) -> NormalForm:
    """Conjugate by the inverse of the last factor.

    A pure power of Delta is returned unchanged.
    """
    return _decycle(nf)[0]


def _run_phase(
    nf: NormalForm,
    move: collections.abc.Callable[
        [NormalForm], tuple[NormalForm, list[PermT]]
    ],
    improved: collections.abc.Callable[[NormalForm, NormalForm], bool],
    steps: list[PermT],
    name: str,
) -> NormalForm:
    """Apply ``move`` until |Delta| consecutive applications bring no
    improvement."""
    n = nf.strands
    patience = n * (n - 1) // 2
    cap = (nf.canonical_length + 1) * patience + 1
    idle = 0
    iterations = 0
    while nf.factors and idle < patience:
        iterations += 1
        if iterations > cap:
            raise IterationCapError(f"{name} exceeded {cap} iterations")
        moved, conjugators = move(nf)
        steps += conjugators
        idle = 0 if improved(nf, moved) else idle + 1
        nf = moved
    return nf


def summit_form(w: BraidWord) -> tuple[NormalForm, ConjugationWitness]:
    """A summit representative of the conjugacy class of ``w``.

    Cycle until inf stops rising, then decycle until sup stops falling.

    Returns
    -------
    summit
        Normal form with maximal inf and minimal canonical length.
    witness
        Positive W with W^-1 w W equal to ``summit``.

    Raises
    ------
    IterationCapError
        If a phase exceeds its iteration cap.
    """
    nf = left_normal_form(w)
    steps: list[PermT] = []
    nf = _run_phase(
        nf, _cycle, lambda old, new: new.inf > old.inf, steps, "cycling"
    )
    nf = _run_phase(
        nf, _decycle, lambda old, new: new.sup < old.sup, steps, "decycling"
    )
    log.debug(
        "summit reached",
        strands=w.strands,
        inf=nf.inf,
        canonical_length=nf.canonical_length,
        witness_steps=len(steps),
    )
    witness = ConjugationWitness(
        w.strands, tuple(_permutation_braid(step) for step in steps)
    )
    return nf, witness


def _check_strand_cap(n: int, config: EngineConfig) -> None:
    if n > config.strand_cap:
        raise IterationCapError(
            f"n={n} exceeds the summit-set strand cap {config.strand_cap}"
        )


def summit_set(
    w: BraidWord, config: None | EngineConfig = None
) -> tuple[NormalForm, ...]:
    """The summit set of the conjugacy class of ``w``.

    Closure of a summit representative under conjugation by fragments of
    Delta, restricted to the same (inf, canonical length).

    Returns
    -------
    members
        Sorted by (inf, canonical length, factor permutations).

    Raises
    ------
    IterationCapError
        If ``w.strands`` exceeds ``config.strand_cap``.
    """
    config = EngineConfig() if config is None else config
    _check_strand_cap(w.strands, config)
    summit, _ = summit_form(w)
    key = (summit.inf, summit.canonical_length)
    members = {summit}
    frontier = [summit]
    fragments = _fragments(w.strands)
    while frontier:
        new_frontier = []
        for member in frontier:
            for fragment in fragments:
                conjugate = _conjugate_by(member, fragment)
                if (
                    conjugate.inf,
                    conjugate.canonical_length,
                ) == key and conjugate not in members:
                    members.add(conjugate)
                    new_frontier.append(conjugate)
        frontier = new_frontier
    return tuple(sorted(members, key=NormalForm.sort_key))


def _conjugation_path(
    source: NormalForm, target: NormalForm
) -> None | list[PermT]:
    """Fragments A_1..A_m with (A_1..A_m)^-1 source (A_1..A_m) = target,
    staying inside the summit set."""
    if source == target:
        return []
    key = (source.inf, source.canonical_length)
    parents: dict[NormalForm, tuple[NormalForm, PermT]] = dict()
    frontier = [source]
    seen = {source}
    fragments = _fragments(source.strands)
    while frontier:
        new_frontier = []
        for member in frontier:
            for fragment in fragments:
                conjugate = _conjugate_by(member, fragment)
                if (
                    conjugate.inf,
                    conjugate.canonical_length,
                ) != key or conjugate in seen:
                    continue
                seen.add(conjugate)
                parents[conjugate] = (member, fragment)
                if conjugate == target:
                    path = []
                    node = conjugate
                    while node != source:
                        node, step = parents[node]
                        path.append(step)
                    return path[::-1]
                new_frontier.append(conjugate)
        frontier = new_frontier
    return None


def conjugate_test(
    w1: BraidWord, w2: BraidWord, config: None | EngineConfig = None
) -> None | BraidWord:
    """Decide whether two braids are conjugate.

    Returns
    -------
    witness
        A freely reduced word c with c^-1 w1 c equal to w2, or None if the
        braids are not conjugate.

    Raises
    ------
    InputError
        If the strand counts differ.
    IterationCapError
        If the strand count exceeds ``config.strand_cap``.
    """
    config = EngineConfig() if config is None else config
    if w1.strands != w2.strands:
        raise InputError(
            f"Strand count mismatch: {w1.strands} != {w2.strands}"
        )
    if exponent_sum(w1) != exponent_sum(w2):
        return None
    if permutation_of(w1).cycle_type() != permutation_of(w2).cycle_type():
        return None
    summit1, witness1 = summit_form(w1)
    summit2, witness2 = summit_form(w2)
    if (summit1.inf, summit1.canonical_length) != (
        summit2.inf,
        summit2.canonical_length,
    ):
        return None
    if summit1 != summit2:
        _check_strand_cap(w1.strands, config)
    path = _conjugation_path(summit1, summit2)
    if path is None:
        return None
    conjugator = witness1.word()
    for step in path:
        conjugator = compose(conjugator, _permutation_braid(step).word)
    conjugator = free_reduce(compose(conjugator, invert(witness2.word())))
    conjugated = compose(compose(invert(conjugator), w1), conjugator)
    if not words_equal(conjugated, w2):
        raise RuntimeError(f"conjugator {conjugator} failed verification")
    return conjugator


def format_normal_form(nf: NormalForm, with_strands: bool = False) -> str:
    """Serialize as ``Δ^<k> | <factor> . <factor>``."""
    text = f"Δ^{nf.inf} |"
    if nf.factors:
        text += " " + " . ".join(
            " ".join(str(letter) for letter in factor.word)
            for factor in nf.factors
        )
    if with_strands:
        text = f"n={nf.strands} {text}"
    return text


def parse_normal_form(text: str, strands: None | int = None) -> NormalForm:
    """Parse the output of `format_normal_form`.

    Parameters
    ----------
    text
        One line of text.
    strands
        The strand count, required when the text has no ``n=`` prefix.

    Raises
    ------
    BraidParseError
        If the text is malformed, a factor is not a proper fragment of
        Delta, or the factors are not left-weighted.
    """
    match = NORMAL_FORM_RE.match(text)
    if match is None:
        raise BraidParseError("expected 'Δ^<k> | <factors>'", 1, 1)
    if match.group("n") is not None:
        strands = int(match.group("n"))
    if strands is None or strands < 1:
        raise BraidParseError("strand count unknown", 1, 1)
    tail = match.group("tail").strip()
    factors = []
    if tail:
        for chunk in tail.split("."):
            try:
                letters = tuple(int(token) for token in chunk.split())
                perm = is_delta_fragment(BraidWord(strands, letters))
            except ValueError as e:
                raise BraidParseError(
                    f"bad factor {chunk.strip()!r}: {e}",
                    1,
                    match.start("tail") + 1,
                ) from e
            if perm is None:
                raise BraidParseError(
                    f"factor {chunk.strip()!r} is not a fragment of Delta",
                    1,
                    match.start("tail") + 1,
                )
            factors.append(_permutation_braid(perm.images))
    try:
        nf = NormalForm(strands, int(match.group("inf")), tuple(factors))
    except InputError as e:
        raise BraidParseError(str(e), 1, match.start("tail") + 1) from e
    if not nf.is_left_weighted():
        raise BraidParseError(
            "factors are not left-weighted", 1, match.start("tail") + 1
        )
    return nf
