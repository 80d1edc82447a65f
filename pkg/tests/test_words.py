import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from sbsim.words import (
    compress,
    complement,
    is_cube_free,
    is_palindrome,
    is_valid_word,
    pad,
    padded_thue_morse,
    thue_morse_bit,
    thue_morse_word_by_complement,
    thue_morse_word_by_substitution,
    valid_word,
    valid_word_index,
    valid_word_length,
)


def recursive_bit(i):
    # t_0 = 0, t_2i = t_i, t_2i+1 = 1 - t_i
    if i == 0:
        return 0
    return recursive_bit(i // 2) if i % 2 == 0 else 1 - recursive_bit(i // 2)


def has_cube_brute_force(word):
    n = len(word)
    for start in range(n):
        for p in range(1, (n - start) // 3 + 1):
            x = word[start : start + p]
            if word[start : start + 3 * p] == x * 3:
                return True
    return False


def test_thue_morse_bit_matches_recursion():
    assert all(thue_morse_bit(i) == recursive_bit(i) for i in range(5000))


def test_thue_morse_bit_known_prefix():
    assert "".join(str(thue_morse_bit(i)) for i in range(20)) == "01101001100101101001"
    assert thue_morse_bit(0) == 0


def test_powers_of_two_are_one():
    assert all(thue_morse_bit(2**k) == 1 for k in range(21))


def test_small_words():
    assert thue_morse_word_by_complement(0) == "0"
    assert thue_morse_word_by_complement(3) == "01101001"
    assert thue_morse_word_by_complement(4) == "0110100110010110"
    assert thue_morse_word_by_substitution(1) == "01"
    assert thue_morse_word_by_substitution(2) == "0110"


def test_constructions_agree_with_bits():
    for k in range(13):
        word = thue_morse_word_by_complement(k)
        assert word == thue_morse_word_by_substitution(k)
        assert word == "".join(str(thue_morse_bit(i)) for i in range(2**k))


def test_complement():
    assert complement("0110") == "1001"
    assert complement("_0|") == "_1|"


def test_valid_words():
    assert valid_word(0) == "_0_"
    assert valid_word(1) == "_0_1_1_0_"
    assert valid_word(2) == "_0_1_1_0_1_0_0_1_1_0_0_1_0_1_1_0_"
    for i in range(6):
        assert len(valid_word(i)) == valid_word_length(i) == 2 * 4**i + 1
        assert valid_word(i) == pad(thue_morse_word_by_complement(2 * i))
        assert valid_word_index(len(valid_word(i))) == i


def test_is_valid_word():
    assert is_valid_word("_0_")
    assert not is_valid_word("_0_1_1_0_1_0_0_1_1_0_1_0_0_1_")
    assert not is_valid_word("")
    assert not is_valid_word("0")
    assert not is_valid_word("_1_")
    assert valid_word_index(4) is None
    assert valid_word_index(7) is None


def test_compress():
    assert compress("_0000000_1111111_") == "_0_1_"
    assert compress("_0_") == "_0_"
    assert compress("") == ""


@given(st.text(alphabet="01_|", max_size=40))
def test_compress_idempotent(word):
    once = compress(word)
    assert compress(once) == once
    assert all(a != b for a, b in zip(once, once[1:]))


def test_cube_free_examples():
    assert not is_cube_free("000")
    assert not is_cube_free("010101")
    assert is_cube_free("0110")
    assert is_cube_free("")


def test_cube_free_matches_brute_force():
    rng = random.Random(7)
    for _ in range(400):
        word = "".join(rng.choice("01") for _ in range(rng.randint(0, 24)))
        assert is_cube_free(word) == (not has_cube_brute_force(word)), word
    for k in range(8):
        assert is_cube_free(thue_morse_word_by_complement(k))


def test_palindromes():
    for i in range(6):
        assert is_palindrome(thue_morse_word_by_complement(2 * i))
    assert not is_palindrome(thue_morse_word_by_complement(3))


def test_padded_thue_morse():
    assert padded_thue_morse(4, 7) == "_0000000_1111111_1111111_0000000_"
    assert padded_thue_morse(2, 1, complemented=True) == "_1_0_"


@pytest.mark.parametrize("i", range(3))
def test_single_mutations_rejected(i):
    word = valid_word(i)
    for j, x in enumerate(word):
        for y in "01_":
            if y != x:
                assert not is_valid_word(word[:j] + y + word[j + 1 :])
