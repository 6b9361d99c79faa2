"""The 27-symbol letter alphabet: a..z plus a word-end marker."""

from __future__ import annotations

ALPHABET_SIZE = 27
WORD_END = 26  # index of the word-end marker

VOWELS = frozenset("aeiouy")
VOWEL_INDICES = frozenset(ord(c) - ord("a") for c in VOWELS)

_LETTERS = "abcdefghijklmnopqrstuvwxyz"


def letter_to_index(ch: str) -> int:
    i = ord(ch) - ord("a")
    if not 0 <= i < 26:
        raise ValueError(f"not a lowercase letter: {ch!r}")
    return i


def index_to_letter(i: int) -> str:
    if not 0 <= i < 26:
        raise ValueError(f"not a letter index: {i}")
    return _LETTERS[i]


def normalize_to_words(text: str) -> list[str]:
    """Lowercase a-z runs; every other character acts as a word boundary."""
    words = []
    current = []
    for ch in text.lower():
        if "a" <= ch <= "z":
            current.append(ch)
        elif current:
            words.append("".join(current))
            current = []
    if current:
        words.append("".join(current))
    return words


def word_to_symbols(word: str) -> list[int]:
    """Letters of one word followed by the word-end marker."""
    return [letter_to_index(c) for c in word] + [WORD_END]


def symbols_to_words(symbols) -> list[str]:
    words = []
    current = []
    for s in symbols:
        if s == WORD_END:
            words.append("".join(current))
            current = []
        else:
            current.append(index_to_letter(s))
    if current:
        words.append("".join(current))
    return words
