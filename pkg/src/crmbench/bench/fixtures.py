"""Accessors for the data files bundled with the package."""

from __future__ import annotations

from importlib import resources


def _fixture_bytes(name: str) -> bytes:
    return resources.files("crmbench.fixtures").joinpath(name).read_bytes()


def wordlist_bytes() -> bytes:
    return _fixture_bytes("wordlist.txt")


def wordlist_text() -> str:
    return wordlist_bytes().decode("ascii")


def grammar_text() -> str:
    return _fixture_bytes("toy_grammar.txt").decode("ascii")


def natural_pgm_bytes() -> bytes:
    return _fixture_bytes("natural.pgm")
