"""Simplified variants of word forms.

The simplified variant of a form is what both the string similarity and the
stemmer look at: the form is case-folded, folded to ASCII, and stripped of
every vowel except one in the first position.
"""

from __future__ import annotations

import unicodedata
from functools import lru_cache

VOWELS = frozenset("aeiouy")

# Latin letters whose diacritic is not a combining mark, so NFKD leaves them alone.
_LATIN_EXTRA = {
    "ł": "l", "Ł": "L",
    "ø": "o", "Ø": "O",
    "đ": "d", "Đ": "D",
    "ð": "d", "Ð": "D",
    "ħ": "h", "Ħ": "H",
    "ı": "i",
    "ŧ": "t", "Ŧ": "T",
    "ƀ": "b", "ƶ": "z", "Ƶ": "Z",
    "æ": "ae", "Æ": "AE",
    "œ": "oe", "Œ": "OE",
    "þ": "th", "Þ": "TH",
    "ß": "ss",
}
_LATIN_TABLE = str.maketrans(_LATIN_EXTRA)


def transliterate(s: str) -> str:
    """Fold `s` to ASCII.

    Compatibility decomposition splits accented letters into a base letter
    plus combining marks; the marks are dropped, as is anything else that is
    still outside ASCII afterwards. Scripts without a Latin decomposition
    (Arabic, Hangul, CJK, ...) therefore come out empty.

    >>> transliterate("čaj")
    'caj'
    >>> transliterate("東京")
    ''
    """
    if s.isascii():
        return s
    decomposed = unicodedata.normalize("NFKD", s.translate(_LATIN_TABLE))
    return "".join(ch for ch in decomposed if ch.isascii())


def delete_noninitial_vowels(s: str) -> str:
    if not s:
        return s
    return s[0] + "".join(ch for ch in s[1:] if ch not in VOWELS)


@lru_cache(maxsize=1 << 18)
def simplify(form: str) -> str:
    """Return the simplified variant of `form`.

    >>> simplify("Praha")
    'prh'
    >>> simplify("Oslo")
    'osl'
    """
    # lower() again after folding: compatibility forms such as U+210C decompose to capitals
    ascii_form = transliterate(form.casefold()).lower()
    return delete_noninitial_vowels(ascii_form)
