__all__ = ["register"]

import argparse

from ..braid_core import format_braid_word, sign_equivalent
from ..config import EngineConfig
from ..errors import DomainError
from ..garside import (
    conjugate_test,
    format_normal_form,
    left_normal_form,
    summit_form,
    summit_set,
    words_equal,
)
from ..report import RunReport
from . import read_word


def run_nf(args: argparse.Namespace, config: EngineConfig) -> RunReport:
    report = RunReport(command="nf")
    nf = left_normal_form(read_word(report, args.word))
    text = format_normal_form(nf)
    report.results.update(
        normal_form=text,
        strands=nf.strands,
        inf=nf.inf,
        canonical_length=nf.canonical_length,
    )
    report.summary.append(text)
    return report


def run_eq(args: argparse.Namespace, config: EngineConfig) -> RunReport:
    report = RunReport(command="eq")
    w1 = read_word(report, args.word1)
    w2 = read_word(report, args.word2)
    if not args.rewriting:
        equal = words_equal(w1, w2)
    elif (w1.is_positive() and w2.is_positive()) or (
        w1.is_negative() and w2.is_negative()
    ):
        equal = sign_equivalent(w1, w2, config.max_positive_words)
    else:
        raise DomainError(
            "--rewriting needs two positive or two negative words"
        )
    report.results["equal"] = equal
    report.summary.append("EQUAL" if equal else "NOT EQUAL")
    return report


def run_conj(args: argparse.Namespace, config: EngineConfig) -> RunReport:
    report = RunReport(command="conj")
    witness = conjugate_test(
        read_word(report, args.word1), read_word(report, args.word2), config
    )
    report.results["conjugate"] = witness is not None
    if witness is None:
        report.summary.append("NOT CONJUGATE")
    else:
        report.results["witness"] = format_braid_word(witness)
        report.summary += [
            "CONJUGATE",
            f"witness: {format_braid_word(witness)}",
        ]
    return report


def run_summit(
    args: argparse.Namespace, config: EngineConfig
) -> RunReport:
    report = RunReport(command="summit")
    summit, witness = summit_form(read_word(report, args.word))
    text = format_normal_form(summit)
    conjugator = format_braid_word(witness.word())
    report.results.update(
        summit=text,
        inf=summit.inf,
        canonical_length=summit.canonical_length,
        witness=conjugator,
    )
    report.summary += [text, f"witness: {conjugator}"]
    return report


def run_summit_set(
    args: argparse.Namespace, config: EngineConfig
) -> RunReport:
    report = RunReport(command="summit-set")
    members = [
        format_normal_form(member)
        for member in summit_set(read_word(report, args.word), config)
    ]
    report.results["members"] = members
    report.summary += members
    return report


def register(subparsers: argparse._SubParsersAction) -> None:
    parser = subparsers.add_parser("nf", help="left normal form of a word")
    parser.add_argument("word", help="braid word file")
    parser.set_defaults(handler=run_nf)

    parser = subparsers.add_parser(
        "eq", help="decide whether two words are the same braid"
    )
    parser.add_argument("word1", help="braid word file")
    parser.add_argument("word2", help="braid word file")
    parser.add_argument(
        "--rewriting",
        action="store_true",
        help="search braid relations instead of comparing normal forms; "
        "both words must be positive or both negative",
    )
    parser.set_defaults(handler=run_eq)

    parser = subparsers.add_parser(
        "conj", help="decide conjugacy and print a conjugating word"
    )
    parser.add_argument("word1", help="braid word file")
    parser.add_argument("word2", help="braid word file")
    parser.set_defaults(handler=run_conj)

    parser = subparsers.add_parser(
        "summit", help="a summit form of the conjugacy class"
    )
    parser.add_argument("word", help="braid word file")
    parser.set_defaults(handler=run_summit)

    parser = subparsers.add_parser(
        "summit-set", help="all summit forms of the conjugacy class"
    )
    parser.add_argument("word", help="braid word file")
    parser.set_defaults(handler=run_summit_set)
