__all__ = [
    "CATALOG",
    "brute_force_summit_set",
    "modify_environ",
    "random_holonomic_form",
    "random_word",
    "scramble_word",
    "write_text_file",
]

import collections.abc
import contextlib
import itertools
import os
import pathlib
import random
import typing
import unittest.mock

from .braid_core import BraidWord, compose, free_reduce, invert
from .curve_engine import FourierSeries
from .garside import NormalForm, left_normal_form
from .holonomic_algebra import HolonomicForm

# Random seed used for all random values.
random.seed(47)

# Small trigonometric series with known behavior.
# Each holonomic curve is named for the knot it traces.
CATALOG: dict[str, FourierSeries] = {
    # cos t: two simple zeros, no double points, braid index 1.
    "unknot": FourierSeries(cos_coeffs=(1.0,)),
    # cos t + sin 2t: one negative crossing.
    "unknot_negative_loop": FourierSeries(
        cos_coeffs=(1.0,), sin_coeffs=(0.0, 1.0)
    ),
    # cos t - sin 2t: the mirror image of the previous curve.
    "unknot_positive_loop": FourierSeries(
        cos_coeffs=(1.0,), sin_coeffs=(0.0, -1.0)
    ),
    # sin t + 4 sin 2t + sin 4t: three positive crossings.
    "trefoil": FourierSeries(sin_coeffs=(1.0, 4.0, 0.0, 1.0)),
    # The trefoil series plus 1.5 sin 5t: no separating axis point.
    "no_axis": FourierSeries(sin_coeffs=(1.0, 4.0, 0.0, 1.0, 1.5)),
}


def random_word(
    n: int, length: int, rng: None | random.Random = None
) -> BraidWord:
    """A random (not necessarily reduced) word with ``length`` letters."""
    choose = rng.choice if rng is not None else random.choice
    generators = [i for i in range(1, n)] + [-i for i in range(1, n)]
    return BraidWord(n, tuple(choose(generators) for _ in range(length)))


def _rewrite_once(letters: list[int], rng: random.Random) -> list[int]:
    """Apply one random braid-group identity to ``letters``."""
    n_letters = len(letters)
    kind = rng.randrange(4)
    if kind == 0 or n_letters < 2:
        # Insert a cancelling pair.
        max_letter = max((abs(letter) for letter in letters), default=1)
        letter = rng.choice((1, -1)) * rng.randint(1, max_letter)
        index = rng.randint(0, n_letters)
        return letters[:index] + [letter, -letter] + letters[index:]
    if kind == 1:
        # Far commutation.
        sites = [
            i
            for i in range(n_letters - 1)
            if abs(abs(letters[i]) - abs(letters[i + 1])) >= 2
        ]
        if sites:
            i = rng.choice(sites)
            letters = list(letters)
            letters[i], letters[i + 1] = letters[i + 1], letters[i]
        return letters
    if kind == 2:
        # a b a = b a b with all three letters of one sign.
        sites = [
            i
            for i in range(n_letters - 2)
            if letters[i] == letters[i + 2]
            and abs(abs(letters[i]) - abs(letters[i + 1])) == 1
            and (letters[i] > 0) == (letters[i + 1] > 0)
        ]
        if sites:
            i = rng.choice(sites)
            a, b = letters[i], letters[i + 1]
            letters = letters[:i] + [b, a, b] + letters[i + 3 :]
        return letters
    # Free cancellation.
    sites = [
        i for i in range(n_letters - 1) if letters[i] == -letters[i + 1]
    ]
    if sites:
        i = rng.choice(sites)
        letters = letters[:i] + letters[i + 2 :]
    return letters


def scramble_word(
    w: BraidWord, moves: int = 20, rng: None | random.Random = None
) -> BraidWord:
    """A word equal to ``w`` in the braid group, built by ``moves`` random
    insertions, cancellations, commutations and braid relations."""
    rng = rng if rng is not None else random.Random(random.random())
    letters = list(w.letters)
    if w.strands == 1:
        return w
    for _ in range(moves):
        letters = _rewrite_once(letters, rng)
    return BraidWord(w.strands, tuple(letters))


def random_holonomic_form(
    n: int,
    negative_length: int,
    positive_length: int,
    rng: None | random.Random = None,
) -> HolonomicForm:
    """A random holonomic form N P with the given part lengths."""
    randint = rng.randint if rng is not None else random.randint
    return HolonomicForm.from_letters(
        n,
        [-randint(1, n - 1) for _ in range(negative_length)],
        [randint(1, n - 1) for _ in range(positive_length)],
    )


def _reduced_words(
    n: int, max_length: int
) -> collections.abc.Iterator[BraidWord]:
    generators = [i for i in range(1, n)] + [-i for i in range(1, n)]
    for length in range(max_length + 1):
        for letters in itertools.product(generators, repeat=length):
            if all(a != -b for a, b in zip(letters[:-1], letters[1:])):
                yield BraidWord(n, letters)


def brute_force_summit_set(
    w: BraidWord, max_length: int = 4
) -> tuple[NormalForm, ...]:
    """Summit set of ``w`` found by trying every freely reduced conjugator
    with at most ``max_length`` letters.

    Only complete when the summit set is reachable within ``max_length``;
    use it on short words with few strands.
    """
    forms: dict[typing.Any, NormalForm] = {}
    for conjugator in _reduced_words(w.strands, max_length):
        conjugate = free_reduce(
            compose(compose(invert(conjugator), w), conjugator)
        )
        nf = left_normal_form(conjugate)
        forms[nf.sort_key()] = nf
    best_inf = max(nf.inf for nf in forms.values())
    best_length = min(
        nf.canonical_length for nf in forms.values() if nf.inf == best_inf
    )
    return tuple(
        forms[key]
        for key in sorted(forms)
        if forms[key].inf == best_inf
        and forms[key].canonical_length == best_length
    )


def write_text_file(
    directory: str | pathlib.Path, name: str, text: str
) -> pathlib.Path:
    """Write ``text`` to ``directory/name`` and return the path."""
    path = pathlib.Path(directory) / name
    path.write_text(text)
    return path


@contextlib.contextmanager
def modify_environ(**kwargs: typing.Any) -> collections.abc.Iterator:
    """Context manager to temporarily patch os.environ.

    This calls `unittest.mock.patch` and is only intended for unit tests.

    Parameters
    ----------
    kwargs : `dict` [`str`, `str` or `None`]
        Environment variables to set or clear. A string value sets the
        variable; None deletes it, if present.

    Raises
    ------
    RuntimeError
        If any value in kwargs is not of type `str` or `None`.

    Notes
    -----
    Example of use::

        with modify_environ(HOLOKNOT_GRID_SIZE="1024", HOME=None):
            config = load_config()
    """
    bad_value_strs = [
        f"{name}: {value!r}"
        for name, value in kwargs.items()
        if not isinstance(value, str) and value is not None
    ]
    if bad_value_strs:
        raise RuntimeError(
            "The following arguments are not of type str or None: "
            + ", ".join(bad_value_strs)
        )

    new_environ = os.environ.copy()
    for name, value in kwargs.items():
        if value is None:
            new_environ.pop(name, None)
        else:
            new_environ[name] = value
    with unittest.mock.patch("os.environ", new_environ):
        yield
