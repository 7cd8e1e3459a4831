"""Holonomic forms N|P, their moves, and isotopy certificates.

A holonomic form is a closed braid written as an all-negative word N
followed by an all-positive word P. The inner interface is the junction
N|P of the open word NP; the cyclic interface is the junction P|N where
the closed braid wraps around.
"""

__all__ = [
    "MoveTag",
    "Interface",
    "Direction",
    "HolonomicForm",
    "SignEquivalence",
    "InterfaceTransfer",
    "StrandChange",
    "PositiveConjugation",
    "Move",
    "CertificateStep",
    "IsotopyCertificate",
    "CertificateVerdict",
    "Stabilize",
    "Destabilize",
    "MoveTo",
    "ScriptStep",
    "holonomize",
    "canonical_holonomic_form",
    "comb_to_delta_power",
    "holonomic_normal_form",
    "holonomic_summit",
    "apply_move",
    "v3_move",
    "markov_stabilize",
    "markov_destabilize",
    "verify_certificate",
    "certify_conjugate_isotopy",
    "replay_markov_script",
    "format_holonomic_form",
    "parse_holonomic_form",
    "format_certificate",
    "parse_certificate",
    "parse_markov_script",
]

import collections.abc
import dataclasses
import enum
import re
import typing

import structlog

from .braid_core import (
    BraidWord,
    compose,
    delta,
    invert,
    permutation_braid_word,
    permutation_of,
)
from .errors import BraidParseError, IllegalMoveError, InputError
from .garside import (
    NormalForm,
    conjugate_test,
    left_complement,
    left_normal_form,
    negative_split,
    summit_form,
    tau,
    words_equal,
)

LettersT = tuple[int, ...]

HOLONOMIC_FORM_RE = re.compile(
    r"^n=(?P<n>\d+)\s+N=(?P<N>[-+\d,]*)\s+P=(?P<P>[-+\d,]*)$"
)

log = structlog.get_logger("HolonomicAlgebra")


class MoveTag(str, enum.Enum):
    V3A = "V3a"
    V3B = "V3b"
    V3C = "V3c"
    M1 = "M1"
    M2 = "M2"
    CONJ_POS = "CONJ-POS"


class Interface(str, enum.Enum):
    INNER = "inner"
    CYCLIC = "cyclic"


class Direction(str, enum.Enum):
    PUSH = "push"
    PULL = "pull"


@dataclasses.dataclass(frozen=True)
class HolonomicForm:
    """A closed braid N|P with N all-negative and P all-positive.

    Raises
    ------
    InputError
        If the parts have the wrong signs or strand counts.
    """

    strands: int
    negative_part: BraidWord
    positive_part: BraidWord

    def __post_init__(self) -> None:
        for part in (self.negative_part, self.positive_part):
            if part.strands != self.strands:
                raise InputError(
                    f"part {part} does not have {self.strands} strands"
                )
        if not self.negative_part.is_negative():
            raise InputError(f"N={self.negative_part} has positive letters")
        if not self.positive_part.is_positive():
            raise InputError(f"P={self.positive_part} has negative letters")

    @classmethod
    def from_letters(
        cls,
        strands: int,
        negative: collections.abc.Iterable[int] = (),
        positive: collections.abc.Iterable[int] = (),
    ) -> "HolonomicForm":
        return cls(
            strands,
            BraidWord(strands, tuple(negative)),
            BraidWord(strands, tuple(positive)),
        )

    @property
    def negative_letters(self) -> LettersT:
        return self.negative_part.letters

    @property
    def positive_letters(self) -> LettersT:
        return self.positive_part.letters

    def word(self) -> BraidWord:
        """The open braid NP."""
        return compose(self.negative_part, self.positive_part)

    def __str__(self) -> str:
        return format_holonomic_form(self)


@dataclasses.dataclass(frozen=True)
class SignEquivalence:
    """Replace one part by a sign-equivalent word (V3 a)."""

    part: typing.Literal["N", "P"]
    word: LettersT


@dataclasses.dataclass(frozen=True)
class InterfaceTransfer:
    """Move a negative word across an interface (V3 b).

    ``push`` at the inner interface turns N|N1 P1 into N N1|P1;
    ``pull`` turns N N1|P into N|P1 with P1 = N1 P as elements.
    At the cyclic interface the mirror moves turn N|P1 N1 into N1 N|P1
    and N1 N|P into N|P1 with P1 = P N1.
    """

    interface: Interface
    direction: Direction
    negative: LettersT
    positive: LettersT


@dataclasses.dataclass(frozen=True)
class StrandChange:
    """Insert or remove sigma_n^sign at an interface (V3 c, M1, M2).

    Insertion adds a strand and places sigma_n^sign: at the inner
    interface a negative letter ends N and a positive letter starts P;
    at the cyclic interface a positive letter ends P and a negative letter
    starts N. Removal deletes the matching letter sigma_{n-1}^sign.
    """

    interface: Interface
    sign: int
    insert: bool


@dataclasses.dataclass(frozen=True)
class PositiveConjugation:
    """Conjugate by a positive word W: N|P becomes W^-1 N|P W."""

    word: LettersT


Move = SignEquivalence | InterfaceTransfer | StrandChange | PositiveConjugation

MOVE_TYPES: dict[MoveTag, type] = {
    MoveTag.V3A: SignEquivalence,
    MoveTag.V3B: InterfaceTransfer,
    MoveTag.V3C: StrandChange,
    MoveTag.M1: StrandChange,
    MoveTag.M2: StrandChange,
    MoveTag.CONJ_POS: PositiveConjugation,
}


@dataclasses.dataclass(frozen=True)
class CertificateStep:
    tag: MoveTag
    move: Move
    result: HolonomicForm


@dataclasses.dataclass(frozen=True)
class IsotopyCertificate:
    """A start form and the moves leading from it, with every
    intermediate form recorded in full."""

    start: HolonomicForm
    steps: tuple[CertificateStep, ...] = ()

    @property
    def end(self) -> HolonomicForm:
        return self.steps[-1].result if self.steps else self.start

    def then(self, other: "IsotopyCertificate") -> "IsotopyCertificate":
        """Chain ``other`` after this certificate.

        Raises
        ------
        InputError
            If ``other`` does not start where this certificate ends.
        """
        if other.start != self.end:
            raise InputError(
                f"cannot chain: {other.start} does not follow {self.end}"
            )
        return IsotopyCertificate(self.start, self.steps + other.steps)

    def reversed(self) -> "IsotopyCertificate":
        """The certificate walking from `end` back to `start`.

        Raises
        ------
        InputError
            If a step is a positive conjugation, which has no holonomic
            inverse move.
        """
        forms = [self.start] + [step.result for step in self.steps]
        steps = []
        for index in range(len(self.steps) - 1, -1, -1):
            step = self.steps[index]
            before = forms[index]
            tag, move = _inverse_move(step.tag, step.move, before)
            steps.append(CertificateStep(tag, move, before))
        return IsotopyCertificate(self.end, tuple(steps))


@dataclasses.dataclass(frozen=True)
class CertificateVerdict:
    """Outcome of `verify_certificate`; truthy when the certificate is
    valid.

    ``failed_step`` is the 1-based index of the first failing step.
    """

    ok: bool
    failed_step: None | int = None
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok


@dataclasses.dataclass(frozen=True)
class Stabilize:
    sign: int


@dataclasses.dataclass(frozen=True)
class Destabilize:
    pass


@dataclasses.dataclass(frozen=True)
class MoveTo:
    target: HolonomicForm


ScriptStep = Stabilize | Destabilize | MoveTo


def _inverse_move(
    tag: MoveTag, move: Move, before: HolonomicForm
) -> tuple[MoveTag, Move]:
    if isinstance(move, SignEquivalence):
        old = (
            before.negative_letters
            if move.part == "N"
            else before.positive_letters
        )
        return tag, SignEquivalence(move.part, old)
    if isinstance(move, InterfaceTransfer):
        direction = (
            Direction.PULL
            if move.direction == Direction.PUSH
            else Direction.PUSH
        )
        return tag, InterfaceTransfer(
            move.interface,
            direction,
            move.negative,
            before.positive_letters,
        )
    if isinstance(move, StrandChange):
        inverse_tag = {
            MoveTag.V3C: MoveTag.V3C,
            MoveTag.M1: MoveTag.M2,
            MoveTag.M2: MoveTag.M1,
        }[tag]
        return inverse_tag, StrandChange(
            move.interface, move.sign, not move.insert
        )
    raise InputError(f"{tag.value} steps cannot be reversed")


def _same_element(n: int, letters1: LettersT, letters2: LettersT) -> bool:
    return words_equal(BraidWord(n, letters1), BraidWord(n, letters2))


def _word(n: int, letters: LettersT, what: str) -> BraidWord:
    try:
        return BraidWord(n, letters)
    except InputError as e:
        raise IllegalMoveError(f"{what}: {e}") from e


def _form(n: int, negative: LettersT, positive: LettersT) -> HolonomicForm:
    try:
        return HolonomicForm.from_letters(n, negative, positive)
    except InputError as e:
        raise IllegalMoveError(f"result is not holonomic: {e}") from e


def _apply_sign_equivalence(
    h: HolonomicForm, move: SignEquivalence
) -> HolonomicForm:
    n = h.strands
    new = _word(n, move.word, "replacement word").letters
    if move.part == "N":
        old = h.negative_letters
        if any(letter > 0 for letter in new):
            raise IllegalMoveError(f"replacement N={new} is not negative")
    elif move.part == "P":
        old = h.positive_letters
        if any(letter < 0 for letter in new):
            raise IllegalMoveError(f"replacement P={new} is not positive")
    else:
        raise IllegalMoveError(f"unknown part {move.part!r}")
    if len(new) != len(old):
        raise IllegalMoveError(
            f"replacement changes the length of {move.part}: "
            f"{len(old)} -> {len(new)}"
        )
    if not _same_element(n, old, new):
        raise IllegalMoveError(
            f"{move.part}={new} is not equivalent to {move.part}={old}"
        )
    if move.part == "N":
        return _form(n, new, h.positive_letters)
    return _form(n, h.negative_letters, new)


def _apply_interface_transfer(
    h: HolonomicForm, move: InterfaceTransfer
) -> HolonomicForm:
    n = h.strands
    n1 = _word(n, move.negative, "transferred word").letters
    p1 = _word(n, move.positive, "positive word").letters
    if any(letter > 0 for letter in n1):
        raise IllegalMoveError(f"transferred word {n1} is not negative")
    if any(letter < 0 for letter in p1):
        raise IllegalMoveError(f"positive word {p1} is not positive")
    negative = h.negative_letters
    positive = h.positive_letters
    inner = move.interface == Interface.INNER
    if move.direction == Direction.PUSH:
        expected = n1 + p1 if inner else p1 + n1
        if not _same_element(n, positive, expected):
            raise IllegalMoveError(
                f"P={positive} is not equal to the product {expected}"
            )
        new_negative = negative + n1 if inner else n1 + negative
        return _form(n, new_negative, p1)
    if inner:
        if negative[len(negative) - len(n1) :] != n1:
            raise IllegalMoveError(f"N={negative} does not end with {n1}")
        remainder = negative[: len(negative) - len(n1)]
        expected = n1 + positive
    else:
        if negative[: len(n1)] != n1:
            raise IllegalMoveError(f"N={negative} does not start with {n1}")
        remainder = negative[len(n1) :]
        expected = positive + n1
    if not _same_element(n, p1, expected):
        raise IllegalMoveError(
            f"P={p1} is not equal to the product {expected}"
        )
    return _form(n, remainder, p1)


def _apply_strand_change(
    h: HolonomicForm, move: StrandChange
) -> HolonomicForm:
    if move.sign not in (1, -1):
        raise IllegalMoveError(f"sign={move.sign} must be +1 or -1")
    n = h.strands
    negative = h.negative_letters
    positive = h.positive_letters
    inner = move.interface == Interface.INNER
    if move.insert:
        letter = move.sign * n
        if inner:
            if letter < 0:
                return _form(n + 1, negative + (letter,), positive)
            return _form(n + 1, negative, (letter,) + positive)
        if letter > 0:
            return _form(n + 1, negative, positive + (letter,))
        return _form(n + 1, (letter,) + negative, positive)

    if n < 2:
        raise IllegalMoveError(f"cannot remove a strand from n={n}")
    letter = move.sign * (n - 1)
    count = sum(1 for value in negative + positive if abs(value) == n - 1)
    if count != 1:
        raise IllegalMoveError(
            f"sigma_{n - 1} occurs {count} times; exactly once is required"
        )
    if inner and letter < 0 and negative[-1:] == (letter,):
        return _form(n - 1, negative[:-1], positive)
    if inner and letter > 0 and positive[:1] == (letter,):
        return _form(n - 1, negative, positive[1:])
    if not inner and letter > 0 and positive[-1:] == (letter,):
        return _form(n - 1, negative, positive[:-1])
    if not inner and letter < 0 and negative[:1] == (letter,):
        return _form(n - 1, negative[1:], positive)
    raise IllegalMoveError(
        f"letter {letter} is not at the {move.interface.value} interface"
    )


def _apply_positive_conjugation(
    h: HolonomicForm, move: PositiveConjugation
) -> HolonomicForm:
    n = h.strands
    w = _word(n, move.word, "conjugator").letters
    if any(letter < 0 for letter in w):
        raise IllegalMoveError(f"conjugator {w} is not positive")
    inverse = tuple(-letter for letter in reversed(w))
    return _form(n, inverse + h.negative_letters, h.positive_letters + w)


def apply_move(h: HolonomicForm, tag: MoveTag, move: Move) -> HolonomicForm:
    """Apply a tagged move to a holonomic form.

    Raises
    ------
    IllegalMoveError
        If the move does not fit the tag or a side condition fails.
    """
    tag = MoveTag(tag)
    if not isinstance(move, MOVE_TYPES[tag]):
        raise IllegalMoveError(
            f"{type(move).__name__} is not a {tag.value} move"
        )
    if isinstance(move, SignEquivalence):
        return _apply_sign_equivalence(h, move)
    if isinstance(move, InterfaceTransfer):
        return _apply_interface_transfer(h, move)
    if isinstance(move, StrandChange):
        if tag == MoveTag.M1 and not move.insert:
            raise IllegalMoveError("M1 must insert a letter")
        if tag == MoveTag.M2 and move.insert:
            raise IllegalMoveError("M2 must remove a letter")
        return _apply_strand_change(h, move)
    return _apply_positive_conjugation(h, move)


def v3_move(h: HolonomicForm, move: Move) -> HolonomicForm:
    """Apply a V3 move: (a) `SignEquivalence`, (b) `InterfaceTransfer`,
    (c) `StrandChange`.

    Raises
    ------
    IllegalMoveError
        If a side condition fails or ``move`` is not a V3 move.
    """
    if isinstance(move, SignEquivalence):
        return apply_move(h, MoveTag.V3A, move)
    if isinstance(move, InterfaceTransfer):
        return apply_move(h, MoveTag.V3B, move)
    if isinstance(move, StrandChange):
        return apply_move(h, MoveTag.V3C, move)
    raise IllegalMoveError(f"{type(move).__name__} is not a V3 move")


class _CertificateBuilder:
    """Apply moves one at a time, recording those that change the form."""

    def __init__(self, start: HolonomicForm) -> None:
        self.start = start
        self.current = start
        self.steps: list[CertificateStep] = []

    def apply(self, tag: MoveTag, move: Move) -> HolonomicForm:
        result = apply_move(self.current, tag, move)
        if result != self.current:
            self.steps.append(CertificateStep(tag, move, result))
            self.current = result
        return result

    def extend(self, certificate: IsotopyCertificate) -> None:
        if certificate.start != self.current:
            raise InputError(
                f"cannot extend: {certificate.start} != {self.current}"
            )
        self.steps += certificate.steps
        self.current = certificate.end

    def certificate(self) -> IsotopyCertificate:
        return IsotopyCertificate(self.start, tuple(self.steps))


def _delta_block(n: int, power: int) -> LettersT:
    block = delta(n).letters
    if power < 0:
        block = invert(delta(n)).letters
    return block * abs(power)


def _delta_power_of(h: HolonomicForm) -> int:
    """q such that N is the canonical word of Delta^-q."""
    block = len(delta(h.strands))
    if block == 0:
        return 0
    return len(h.negative_letters) // block


def holonomize(w: BraidWord) -> HolonomicForm:
    """Split ``w`` as N|P with the same element and strand count.

    Each sigma_i^-1 becomes Delta^-1 U_i and every Delta^-1 is moved to
    the left, twisting by tau the letters it passes.
    """
    n = w.strands
    pieces: list[LettersT] = []
    negatives = 0
    for letter in reversed(w.letters):
        if letter > 0:
            piece = BraidWord(n, (letter,))
        else:
            piece = negative_split(-letter, n)[1].word
        if negatives % 2:
            piece = tau(piece)
        pieces.append(piece.letters)
        if letter < 0:
            negatives += 1
    positive = tuple(
        letter for piece in reversed(pieces) for letter in piece
    )
    return HolonomicForm.from_letters(
        n, _delta_block(n, -negatives), positive
    )


def canonical_holonomic_form(nf: NormalForm) -> HolonomicForm:
    """Render a normal form as N|P: Delta^inf goes to N when negative and
    to the head of P otherwise."""
    n = nf.strands
    factors = nf.factors_word().letters
    if nf.inf < 0:
        return HolonomicForm.from_letters(
            n, _delta_block(n, nf.inf), factors
        )
    return HolonomicForm.from_letters(
        n, (), _delta_block(n, nf.inf) + factors
    )


def comb_to_delta_power(
    h: HolonomicForm,
) -> tuple[HolonomicForm, IsotopyCertificate]:
    """Bring N to q copies of the canonical Delta^-1 word.

    N is first rewritten (V3 a) as Delta^-q R with R a product of inverse
    fragments. Each trailing inverse fragment X^-1 of R is then absorbed:
    the complement Y with Y X = Delta is pushed into N from the head of P
    (V3 b, P = Y^-1 Y P), and X^-1 Y^-1 = Delta^-1 is combed to the left
    (V3 a).

    Returns
    -------
    combed
        The form Delta^-q | Q.
    certificate
        The moves from ``h`` to ``combed``.
    """
    n = h.strands
    builder = _CertificateBuilder(h)
    if not h.negative_letters:
        return h, builder.certificate()
    nf = left_normal_form(invert(h.negative_part))
    q = nf.inf
    chunks = [
        tau(invert(factor.word)) if q % 2 else invert(factor.word)
        for factor in reversed(nf.factors)
    ]

    def combed_negative() -> LettersT:
        return _delta_block(n, -q) + tuple(
            letter for chunk in chunks for letter in chunk.letters
        )

    builder.apply(MoveTag.V3A, SignEquivalence("N", combed_negative()))
    while chunks:
        fragment = invert(chunks.pop())
        complement = permutation_braid_word(
            left_complement(permutation_of(fragment))
        ).letters
        builder.apply(
            MoveTag.V3B,
            InterfaceTransfer(
                Interface.INNER,
                Direction.PUSH,
                negative=tuple(-letter for letter in reversed(complement)),
                positive=complement + builder.current.positive_letters,
            ),
        )
        chunks = [tau(chunk) for chunk in chunks]
        q += 1
        builder.apply(MoveTag.V3A, SignEquivalence("N", combed_negative()))
    log.debug("combed", strands=n, delta_power=-q)
    return builder.current, builder.certificate()


def holonomic_normal_form(
    h: HolonomicForm,
) -> tuple[HolonomicForm, IsotopyCertificate]:
    """Convert N|P to the canonical rendering of its normal form.

    After combing, P is replaced by its normal-form word Delta^p P_1..P_r
    (V3 a) and the min(p, q) Delta pairs meeting at the interface cancel
    by pulling Delta^-m back into P (V3 b).

    Returns
    -------
    form
        ``canonical_holonomic_form(left_normal_form(h.word()))``.
    certificate
        The moves from ``h`` to ``form``.
    """
    n = h.strands
    combed, certificate = comb_to_delta_power(h)
    builder = _CertificateBuilder(combed)
    q = _delta_power_of(combed)
    nf = left_normal_form(combed.positive_part)
    builder.apply(MoveTag.V3A, SignEquivalence("P", nf.word().letters))
    cancelled = min(q, nf.inf)
    if cancelled > 0:
        builder.apply(
            MoveTag.V3B,
            InterfaceTransfer(
                Interface.INNER,
                Direction.PULL,
                negative=_delta_block(n, -cancelled),
                positive=_delta_block(n, nf.inf - cancelled)
                + nf.factors_word().letters,
            ),
        )
    return builder.current, certificate.then(builder.certificate())


def _positive_conjugator(word: BraidWord) -> LettersT:
    """A positive word inducing the same conjugation as ``word``.

    Delta^2 is central, so the normal form Delta^k F can be replaced by
    Delta^(k mod 2) F.
    """
    nf = left_normal_form(word)
    return (
        _delta_block(word.strands, nf.inf % 2) + nf.factors_word().letters
    )


def holonomic_summit(
    h: HolonomicForm,
) -> tuple[HolonomicForm, IsotopyCertificate]:
    """Move N|P to a summit form of its conjugacy class.

    Returns
    -------
    summit
        Canonical rendering of the summit representative found by
        `holoknot.garside.summit_form`.
    certificate
        Holonomic moves, with every conjugation by a positive word.

    Raises
    ------
    IterationCapError
        Propagated from `holoknot.garside.summit_form`.
    """
    current, certificate = holonomic_normal_form(h)
    summit, witness = summit_form(current.word())
    builder = _CertificateBuilder(current)
    conjugator = _positive_conjugator(witness.word())
    if conjugator:
        builder.apply(MoveTag.CONJ_POS, PositiveConjugation(conjugator))
    final, tail = holonomic_normal_form(builder.current)
    certificate = certificate.then(builder.certificate()).then(tail)
    if final != canonical_holonomic_form(summit):
        raise RuntimeError(f"summit mismatch: {final} != {summit}")
    log.debug(
        "holonomic summit",
        strands=h.strands,
        inf=summit.inf,
        canonical_length=summit.canonical_length,
        steps=len(certificate.steps),
    )
    return final, certificate


def markov_stabilize(h: HolonomicForm, sign: int) -> HolonomicForm:
    """Add a strand and place sigma_n^sign at the inner interface.

    Raises
    ------
    IllegalMoveError
        If ``sign`` is not +1 or -1.
    """
    return apply_move(
        h, MoveTag.M1, StrandChange(Interface.INNER, sign, True)
    )


def _destabilization_site(h: HolonomicForm) -> StrandChange:
    n = h.strands
    if n < 2:
        raise IllegalMoveError(f"cannot remove a strand from n={n}")
    negative = h.negative_letters
    positive = h.positive_letters
    count = sum(1 for value in negative + positive if abs(value) == n - 1)
    if count != 1:
        raise IllegalMoveError(
            f"sigma_{n - 1} occurs {count} times; exactly once is required"
        )
    top = n - 1
    if negative[-1:] == (-top,):
        return StrandChange(Interface.INNER, -1, False)
    if positive[:1] == (top,):
        return StrandChange(Interface.INNER, 1, False)
    if positive[-1:] == (top,):
        return StrandChange(Interface.CYCLIC, 1, False)
    if negative[:1] == (-top,):
        return StrandChange(Interface.CYCLIC, -1, False)
    raise IllegalMoveError(f"sigma_{top} is not at an interface")


def markov_destabilize(h: HolonomicForm) -> HolonomicForm:
    """Remove the last strand and its single letter sigma_{n-1}^{+-1}.

    Raises
    ------
    IllegalMoveError
        If the letter does not occur exactly once or is not at the inner
        or cyclic interface.
    """
    return apply_move(h, MoveTag.M2, _destabilization_site(h))


def verify_certificate(c: IsotopyCertificate) -> CertificateVerdict:
    """Replay every step of a certificate and compare with the recorded
    intermediate forms.

    Steps are checked independently against their recorded predecessor.
    """
    previous = c.start
    for index, step in enumerate(c.steps, start=1):
        try:
            expected = apply_move(previous, step.tag, step.move)
        except (IllegalMoveError, InputError) as e:
            return CertificateVerdict(False, index, str(e))
        if expected != step.result:
            return CertificateVerdict(
                False,
                index,
                f"recorded {step.result} but the move gives {expected}",
            )
        previous = step.result
    return CertificateVerdict(True)


def certify_conjugate_isotopy(
    h: HolonomicForm, target: HolonomicForm
) -> IsotopyCertificate:
    """Certificate of a holonomic isotopy from ``h`` to a conjugate
    ``target``.

    Both forms are moved to summit forms; the conjugator between the
    summits, made positive by a central even power of Delta, is applied as
    one positive conjugation, and the normal-form certificate of
    ``target`` is walked backwards.

    Raises
    ------
    IllegalMoveError
        If the two forms have different strand counts or are not
        conjugate.
    """
    if h.strands != target.strands:
        raise IllegalMoveError(
            f"strand counts differ: {h.strands} != {target.strands}"
        )
    summit, certificate = holonomic_summit(h)
    conjugator = conjugate_test(summit.word(), target.word())
    if conjugator is None:
        raise IllegalMoveError(f"{h} is not conjugate to {target}")
    builder = _CertificateBuilder(summit)
    positive = _positive_conjugator(conjugator)
    if positive:
        builder.apply(MoveTag.CONJ_POS, PositiveConjugation(positive))
    _, tail = holonomic_normal_form(builder.current)
    certificate = certificate.then(builder.certificate()).then(tail)
    _, target_certificate = holonomic_normal_form(target)
    return certificate.then(target_certificate.reversed())


def replay_markov_script(
    start: HolonomicForm, script: collections.abc.Iterable[ScriptStep]
) -> IsotopyCertificate:
    """Run a user-supplied sequence of Markov moves and holonomic
    isotopies, returning one certificate.

    Raises
    ------
    IllegalMoveError
        If a step cannot be applied.
    """
    builder = _CertificateBuilder(start)
    for step in script:
        if isinstance(step, Stabilize):
            builder.apply(
                MoveTag.M1, StrandChange(Interface.INNER, step.sign, True)
            )
        elif isinstance(step, Destabilize):
            builder.apply(MoveTag.M2, _destabilization_site(builder.current))
        elif isinstance(step, MoveTo):
            builder.extend(
                certify_conjugate_isotopy(builder.current, step.target)
            )
        else:
            raise InputError(f"unknown script step {step!r}")
    return builder.certificate()


def _format_letters(letters: LettersT) -> str:
    return ",".join(str(letter) for letter in letters)


def _parse_letters(text: str, line: int, column: int) -> LettersT:
    if not text:
        return ()
    try:
        return tuple(int(token) for token in text.split(","))
    except ValueError as e:
        raise BraidParseError(f"bad letter list {text!r}", line, column) from e


def format_holonomic_form(h: HolonomicForm) -> str:
    return (
        f"n={h.strands} N={_format_letters(h.negative_letters)} "
        f"P={_format_letters(h.positive_letters)}"
    )


def parse_holonomic_form(
    text: str, line: int = 1, column: int = 1
) -> HolonomicForm:
    """Parse ``n=<n> N=<letters> P=<letters>``.

    Raises
    ------
    BraidParseError
        If the text is malformed or the parts have the wrong signs.
    """
    match = HOLONOMIC_FORM_RE.match(text.strip())
    if match is None:
        raise BraidParseError(
            f"expected 'n=<n> N=<letters> P=<letters>', got {text.strip()!r}",
            line,
            column,
        )
    offset = column + len(text) - len(text.lstrip())
    negative = _parse_letters(
        match.group("N"), line, offset + match.start("N")
    )
    positive = _parse_letters(
        match.group("P"), line, offset + match.start("P")
    )
    try:
        return HolonomicForm.from_letters(
            int(match.group("n")), negative, positive
        )
    except InputError as e:
        raise BraidParseError(str(e), line, offset) from e


def _format_move(tag: MoveTag, move: Move) -> str:
    if isinstance(move, SignEquivalence):
        return f"part={move.part} word={_format_letters(move.word)}"
    if isinstance(move, InterfaceTransfer):
        return (
            f"interface={move.interface.value} "
            f"direction={move.direction.value} "
            f"n1={_format_letters(move.negative)} "
            f"p1={_format_letters(move.positive)}"
        )
    if isinstance(move, StrandChange):
        text = f"interface={move.interface.value} sign={move.sign:+d}"
        if tag == MoveTag.V3C:
            action = "insert" if move.insert else "remove"
            text = f"interface={move.interface.value} action={action} "
            text += f"sign={move.sign:+d}"
        return text
    return f"w={_format_letters(move.word)}"


def format_certificate(c: IsotopyCertificate) -> str:
    """One line per step, ``<tag> <payload> => <form>``, after a
    ``START => <form>`` line."""
    lines = [f"START => {format_holonomic_form(c.start)}"]
    for step in c.steps:
        lines.append(
            f"{step.tag.value} {_format_move(step.tag, step.move)} => "
            f"{format_holonomic_form(step.result)}"
        )
    return "\n".join(lines) + "\n"


def _parse_move(
    tag: MoveTag, fields: dict[str, str], line: int, column: int
) -> Move:
    def field(name: str) -> str:
        if name not in fields:
            raise BraidParseError(
                f"{tag.value} step needs '{name}='", line, column
            )
        return fields[name]

    try:
        if tag == MoveTag.V3A:
            part = field("part")
            if part not in ("N", "P"):
                raise BraidParseError(f"bad part {part!r}", line, column)
            return SignEquivalence(
                typing.cast(typing.Literal["N", "P"], part),
                _parse_letters(field("word"), line, column),
            )
        if tag == MoveTag.V3B:
            return InterfaceTransfer(
                Interface(field("interface")),
                Direction(field("direction")),
                _parse_letters(field("n1"), line, column),
                _parse_letters(field("p1"), line, column),
            )
        if tag == MoveTag.CONJ_POS:
            return PositiveConjugation(
                _parse_letters(field("w"), line, column)
            )
        if tag == MoveTag.V3C:
            action = field("action")
            if action not in ("insert", "remove"):
                raise BraidParseError(f"bad action {action!r}", line, column)
            insert = action == "insert"
        else:
            insert = tag == MoveTag.M1
        return StrandChange(
            Interface(field("interface")), int(field("sign")), insert
        )
    except ValueError as e:
        if isinstance(e, BraidParseError):
            raise
        raise BraidParseError(str(e), line, column) from e


def parse_certificate(text: str) -> IsotopyCertificate:
    """Parse the output of `format_certificate`.

    Blank lines and lines starting with ``#`` are ignored.

    Raises
    ------
    BraidParseError
        With the line and column of the first malformed entry.
    """
    start: None | HolonomicForm = None
    steps = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        head, separator, tail = line.partition("=>")
        if not separator:
            raise BraidParseError("missing '=>'", line_number, 1)
        form_column = len(head) + len(separator) + 1
        form = parse_holonomic_form(tail, line_number, form_column)
        tokens = head.split()
        if not tokens:
            raise BraidParseError("missing tag", line_number, 1)
        if start is None:
            if tokens != ["START"]:
                raise BraidParseError(
                    "first entry must be 'START => <form>'", line_number, 1
                )
            start = form
            continue
        try:
            tag = MoveTag(tokens[0])
        except ValueError as e:
            raise BraidParseError(
                f"unknown tag {tokens[0]!r}", line_number, 1
            ) from e
        fields = dict()
        for token in tokens[1:]:
            name, equals, value = token.partition("=")
            if not equals:
                raise BraidParseError(
                    f"expected key=value, got {token!r}",
                    line_number,
                    line.find(token) + 1,
                )
            fields[name] = value
        move = _parse_move(tag, fields, line_number, len(tokens[0]) + 2)
        steps.append(CertificateStep(tag, move, form))
    if start is None:
        raise BraidParseError("empty certificate", 1, 1)
    return IsotopyCertificate(start, tuple(steps))


def parse_markov_script(
    text: str,
) -> tuple[HolonomicForm, list[ScriptStep]]:
    """Parse a start form followed by ``M1 +1``, ``M1 -1``, ``M2`` and
    ``GOTO <form>`` lines.

    Raises
    ------
    BraidParseError
        With the line and column of the first malformed entry.
    """
    start: None | HolonomicForm = None
    script: list[ScriptStep] = []
    for line_number, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        column = len(line) - len(line.lstrip()) + 1
        if start is None:
            start = parse_holonomic_form(line, line_number, 1)
            continue
        tokens = stripped.split(maxsplit=1)
        keyword = tokens[0].upper()
        if keyword == "M1" and len(tokens) == 2 and tokens[1] in ("+1", "-1"):
            script.append(Stabilize(int(tokens[1])))
        elif keyword == "M2" and len(tokens) == 1:
            script.append(Destabilize())
        elif keyword == "GOTO" and len(tokens) == 2:
            script.append(
                MoveTo(
                    parse_holonomic_form(
                        tokens[1], line_number, column + len(tokens[0]) + 1
                    )
                )
            )
        else:
            raise BraidParseError(
                f"expected 'M1 +1', 'M1 -1', 'M2' or 'GOTO <form>', "
                f"got {stripped!r}",
                line_number,
                column,
            )
    if start is None:
        raise BraidParseError("missing start form", 1, 1)
    return start, script
