"""Thue-Morse words, separator-padded valid words and run compression.

Words are plain ``str`` values over the alphabet ``0``, ``1``, ``_`` (separator)
and ``|`` (end marker).
"""

from itertools import groupby

import numpy as np

SEPARATOR = "_"
END = "|"
ALPHABET = frozenset("01_|")

_COMPLEMENT = str.maketrans("01", "10")
_PADDED_SUBSTITUTION = {"0": "0_1_1_0", "1": "1_0_0_1", "_": "_"}


def thue_morse_bit(i: int) -> int:
    """Return ``t_i``: the parity of the number of ones in the binary form of ``i``."""
    if i < 0:
        raise ValueError("index must be non-negative")
    return bin(i).count("1") & 1


def complement(word: str) -> str:
    return word.translate(_COMPLEMENT)


def thue_morse_word_by_complement(k: int) -> str:
    """``T_k`` built by repeatedly appending the complement."""
    word = "0"
    for _ in range(k):
        word += complement(word)
    return word


def thue_morse_word_by_substitution(k: int) -> str:
    """``T_k`` built with the morphism 0 -> 01, 1 -> 10."""
    word = "0"
    for _ in range(k):
        word = "".join("01" if x == "0" else "10" for x in word)
    return word


def pad(letters: str, block: int = 1) -> str:
    """Insert separators around every letter, repeating each letter ``block`` times."""
    return SEPARATOR + "".join(x * block + SEPARATOR for x in letters)


def valid_word(i: int) -> str:
    """The ``i``-th valid word: ``_0_`` with the padded substitution applied ``i`` times."""
    word = "_0_"
    for _ in range(i):
        word = "".join(_PADDED_SUBSTITUTION[x] for x in word)
    return word


def valid_word_length(i: int) -> int:
    return 2 * 4**i + 1


def valid_word_index(length: int) -> int | None:
    """Return ``i`` with ``valid_word_length(i) == length``, or ``None``."""
    if length < 3 or length % 2 == 0:
        return None
    m, i = (length - 1) // 2, 0
    while m > 1 and m % 4 == 0:
        m //= 4
        i += 1
    return i if m == 1 else None


def is_valid_word(word: str) -> bool:
    i = valid_word_index(len(word))
    return i is not None and word == valid_word(i)


def compress(word: str) -> str:
    """Collapse every maximal run of equal symbols to a single symbol."""
    return "".join(x for x, _ in groupby(word))


def is_cube_free(word: str) -> bool:
    """True iff ``word`` has no factor ``XXX`` with ``X`` non-empty."""
    a = np.frombuffer(word.encode("ascii"), dtype=np.uint8)
    n = len(a)
    for period in range(1, n // 3 + 1):
        # XXX with |X| = period <=> 2*period consecutive j with a[j] == a[j+period]
        eq = a[:-period] == a[period:]
        if np.count_nonzero(eq) < 2 * period:
            continue
        breaks = np.flatnonzero(~eq)
        bounds = np.concatenate(([-1], breaks, [len(eq)]))
        if np.diff(bounds).max() - 1 >= 2 * period:
            return False
    return True


def is_palindrome(word: str) -> bool:
    return word == word[::-1]


def padded_thue_morse(length: int, block: int, complemented: bool = False) -> str:
    """``_x1^b_x2^b_..._xp^b_`` where ``x1..xp`` is the Thue-Morse prefix of ``length``."""
    letters = "".join(str(thue_morse_bit(j)) for j in range(length))
    return pad(complement(letters) if complemented else letters, block)
