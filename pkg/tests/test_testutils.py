import os
import pathlib
import random
import tempfile
import unittest

from holoknot.braid_core import BraidWord, delta
from holoknot.curve_engine import genericity_report
from holoknot.garside import left_normal_form, summit_set, words_equal
from holoknot.testutils import (
    CATALOG,
    brute_force_summit_set,
    modify_environ,
    random_holonomic_form,
    random_word,
    scramble_word,
    write_text_file,
)

random.seed(12)


class TestUtilsTestCase(unittest.TestCase):
    def test_random_words(self) -> None:
        rng = random.Random(1)
        for n in (2, 3, 5):
            w = random_word(n, 12, rng)
            self.assertEqual(w.strands, n)
            self.assertEqual(len(w), 12)
            self.assertTrue(all(1 <= abs(a) < n for a in w.letters))

        h = random_holonomic_form(4, 3, 5, rng)
        self.assertEqual(h.strands, 4)
        self.assertEqual(len(h.negative_letters), 3)
        self.assertEqual(len(h.positive_letters), 5)

    def test_scramble_word(self) -> None:
        rng = random.Random(2)
        for w in (
            BraidWord(3, (1, 2, -1)),
            delta(4),
            BraidWord(2),
            random_word(5, 10, rng),
        ):
            scrambled = scramble_word(w, 30, rng)
            self.assertEqual(scrambled.strands, w.strands)
            self.assertTrue(words_equal(scrambled, w))
        self.assertEqual(scramble_word(BraidWord(1)), BraidWord(1))

    def test_brute_force_summit_set(self) -> None:
        for w in (BraidWord(3, (1,)), BraidWord(3, (1, 2, -1))):
            self.assertEqual(brute_force_summit_set(w, 3), summit_set(w))
        members = brute_force_summit_set(BraidWord(2, (1, 1)), 2)
        self.assertEqual(members, (left_normal_form(BraidWord(2, (1, 1))),))

    def test_catalog(self) -> None:
        for name in ("unknot", "trefoil"):
            self.assertTrue(genericity_report(CATALOG[name]).all_pass)
        self.assertFalse(genericity_report(CATALOG["no_axis"]).all_pass)

    def test_write_text_file(self) -> None:
        with tempfile.TemporaryDirectory() as directory:
            path = write_text_file(directory, "word.txt", "n=2 1\n")
            self.assertEqual(path, pathlib.Path(directory) / "word.txt")
            self.assertEqual(path.read_text(), "n=2 1\n")

    def test_modify_environ(self) -> None:
        original_environ = os.environ.copy()
        self.assertGreater(len(original_environ), 2)
        existing = random.sample(sorted(original_environ), 2)
        added = "HOLOKNOT_TESTUTILS_UNUSED_NAME"
        self.assertNotIn(added, os.environ)
        changes = {
            existing[0]: None,
            existing[1]: "changed",
            added: "1024",
            "HOLOKNOT_TESTUTILS_NEVER_SET": None,
        }
        with modify_environ(**changes):
            for name, value in changes.items():
                if value is None:
                    self.assertNotIn(name, os.environ)
                else:
                    self.assertEqual(os.environ[name], value)
            for name, value in os.environ.items():
                if name not in changes:
                    self.assertEqual(value, original_environ[name])
        self.assertEqual(os.environ, original_environ)

        for bad_value in (3, 1.5, True):
            with self.assertRaises(RuntimeError):
                with modify_environ(**{added: bad_value}):
                    pass
            self.assertEqual(os.environ, original_environ)
