"""Substitutions over finite alphabets and their fixed-point prefixes.

The central object is the four-letter substitution

    a -> aca,  b -> d,  c -> b,  d -> c

whose unique one-sided fixed point starting with ``a`` drives everything
else in this package.  The letter at any 1-based position m of that fixed
point is determined by the dyadic valuation of m alone, which gives a
closed-form oracle (``grigorchuk_letter``) against which the iterative
generator can be checked bit for bit.

All positions in public APIs are 1-based.
"""

from __future__ import annotations

import os
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from typing import Mapping

import numpy as np

from .errors import InvalidInputError, ResourceLimitError

MAX_BYTES_ENV = "ODOSHIFT_MAX_BYTES"
DEFAULT_MAX_BYTES = 1 << 28


def sequence_byte_cap() -> int:
    """Current cap on sequence allocation (one byte per letter)."""
    raw = os.environ.get(MAX_BYTES_ENV)
    if raw is None:
        return DEFAULT_MAX_BYTES
    try:
        cap = int(raw)
    except ValueError:
        raise InvalidInputError(f"{MAX_BYTES_ENV} must be an integer, got {raw!r}")
    if cap <= 0:
        raise InvalidInputError(f"{MAX_BYTES_ENV} must be positive, got {cap}")
    return cap


@dataclass(frozen=True)
class Alphabet:
    """Ordered finite set of single-character symbols."""

    letters: str

    def __post_init__(self):
        if not self.letters:
            raise InvalidInputError("alphabet must be nonempty")
        if len(set(self.letters)) != len(self.letters):
            raise InvalidInputError(f"duplicate symbols in alphabet {self.letters!r}")
        if len(self.letters) > 255:
            raise InvalidInputError("alphabet size must be at most 255")
        for ch in self.letters:
            if not ch.isprintable() or len(ch) != 1:
                raise InvalidInputError(f"alphabet symbol {ch!r} is not a printable character")

    def __contains__(self, letter: str) -> bool:
        return letter in self.letters

    def __len__(self) -> int:
        return len(self.letters)

    def index(self, letter: str) -> int:
        try:
            return self.letters.index(letter)
        except ValueError:
            raise InvalidInputError(f"letter {letter!r} not in alphabet {self.letters!r}")

    @cached_property
    def _code_table(self) -> np.ndarray:
        lut = np.full(256, 255, dtype=np.uint8)
        for i, ch in enumerate(self.letters):
            lut[ord(ch)] = i
        return lut


@dataclass(frozen=True)
class SymbolicPrefix:
    """Finite prefix of a one-sided infinite sequence, positions 1..L."""

    alphabet: Alphabet
    text: str

    def __post_init__(self):
        if len(self.text) < 1:
            raise InvalidInputError("prefix must contain at least one letter")
        extra = set(self.text) - set(self.alphabet.letters)
        if extra:
            raise InvalidInputError(f"letters {sorted(extra)} not in alphabet {self.alphabet.letters!r}")

    def __len__(self) -> int:
        return len(self.text)

    def at(self, position: int) -> str:
        """Letter at 1-based position."""
        if position < 1 or position > len(self.text):
            raise InvalidInputError(f"position {position} outside 1..{len(self.text)}")
        return self.text[position - 1]

    @cached_property
    def codes(self) -> np.ndarray:
        """Read-only uint8 view: codes[i] is the alphabet index at position i+1."""
        raw = np.frombuffer(self.text.encode("ascii"), dtype=np.uint8)
        out = self.alphabet._code_table[raw]
        out.flags.writeable = False
        return out

    def shifted(self, n: int) -> "SymbolicPrefix":
        """Prefix of the n-fold shift (drop the first n letters)."""
        if n < 0 or n >= len(self.text):
            raise InvalidInputError(f"shift {n} outside 0..{len(self.text) - 1}")
        return SymbolicPrefix(self.alphabet, self.text[n:])


@dataclass(frozen=True)
class Substitution:
    """Total map letter -> nonempty word, extended to words homomorphically."""

    alphabet: Alphabet
    rules: Mapping[str, str] = field(hash=False)

    def __post_init__(self):
        for letter in self.alphabet.letters:
            if letter not in self.rules:
                raise InvalidInputError(f"no rule for letter {letter!r}")
        for letter, word in self.rules.items():
            if letter not in self.alphabet:
                raise InvalidInputError(f"rule for {letter!r} outside alphabet")
            if not word:
                raise InvalidInputError(f"rule for {letter!r} is erasing; rules must be nonempty")
            for ch in word:
                if ch not in self.alphabet:
                    raise InvalidInputError(f"rule {letter!r} -> {word!r} uses letter {ch!r} outside alphabet")


def validate_prolongable(sub: Substitution, seed: str) -> bool:
    """True iff sub(seed) starts with seed and has at least two letters."""
    if seed not in sub.alphabet:
        raise InvalidInputError(f"seed {seed!r} not in alphabet {sub.alphabet.letters!r}")
    word = sub.rules[seed]
    return len(word) >= 2 and word[0] == seed


def _step(sub: Substitution, text: str, cap: int) -> str:
    counts = Counter(text)
    projected = sum(n * len(sub.rules[ch]) for ch, n in counts.items())
    if projected > cap:
        raise ResourceLimitError(
            f"substitution step would produce {projected} letters, over the cap of {cap};"
            f" set {MAX_BYTES_ENV}>={projected} to allow it",
            required_bytes=projected,
        )
    return "".join(sub.rules[ch] for ch in text)


def iterate(sub: Substitution, word: SymbolicPrefix, steps: int) -> SymbolicPrefix:
    """Apply the substitution ``steps`` times to ``word``."""
    if steps < 0:
        raise InvalidInputError(f"steps must be nonnegative, got {steps}")
    cap = sequence_byte_cap()
    text = word.text
    for ch in set(text):
        if ch not in sub.rules:
            raise InvalidInputError(f"letter {ch!r} has no substitution rule")
    for _ in range(steps):
        text = _step(sub, text, cap)
    return SymbolicPrefix(sub.alphabet, text)


def fixed_point_prefix(sub: Substitution, seed: str, length: int) -> SymbolicPrefix:
    """First ``length`` letters of the substitution-invariant sequence grown from ``seed``.

    Each application to a prefix of the fixed point yields a longer prefix of
    the same fixed point, so intermediate words are truncated to ``length``
    to keep memory linear in the request.
    """
    if length < 1:
        raise InvalidInputError(f"length must be positive, got {length}")
    if not validate_prolongable(sub, seed):
        raise InvalidInputError(
            f"seed {seed!r} is not prolongable: rule must start with the seed and have length >= 2"
        )
    cap = sequence_byte_cap()
    if length > cap:
        raise ResourceLimitError(
            f"requested length {length} exceeds the cap of {cap} bytes", required_bytes=length
        )
    text = seed
    while len(text) < length:
        text = _step(sub, text[:length], cap)
    return SymbolicPrefix(sub.alphabet, text[:length])


def dyadic_valuation(m: int) -> int:
    """Largest k such that 2**k divides m."""
    if m < 1:
        raise InvalidInputError(f"dyadic valuation requires m >= 1, got {m}")
    return (m & -m).bit_length() - 1


# ---------------------------------------------------------------------------
# The Grigorchuk substitution and its closed-form letter oracle.

GRIGORCHUK_ALPHABET = Alphabet("abcd")

_GRIGORCHUK_RULES = {"a": "aca", "b": "d", "c": "b", "d": "c"}

_GRIGORCHUK_SUB = Substitution(GRIGORCHUK_ALPHABET, _GRIGORCHUK_RULES)

# valuation residue mod 3 (for valuation > 0) -> letter
_VALUATION_LETTER = {0: "d", 1: "c", 2: "b"}


def grigorchuk_substitution() -> Substitution:
    return _GRIGORCHUK_SUB


def grigorchuk_letter(m: int) -> str:
    """Letter at position m of the fixed point, from the valuation of m alone."""
    k = dyadic_valuation(m)
    if k == 0:
        return "a"
    return _VALUATION_LETTER[k % 3]


def grigorchuk_codes(length: int) -> np.ndarray:
    """Vectorized closed-form oracle: codes for positions 1..length."""
    if length < 1:
        raise InvalidInputError(f"length must be positive, got {length}")
    m = np.arange(1, length + 1, dtype=np.int64)
    # exponent of the lowest set bit; frexp is exact on powers of two
    v = np.frexp((m & -m).astype(np.float64))[1] - 1
    table = np.array(
        [GRIGORCHUK_ALPHABET.index(_VALUATION_LETTER[r]) for r in range(3)], dtype=np.uint8
    )
    codes = table[v % 3]
    codes[v == 0] = GRIGORCHUK_ALPHABET.index("a")
    return codes


@lru_cache(maxsize=4)
def grigorchuk_prefix(length: int) -> SymbolicPrefix:
    """Cached prefix of the Grigorchuk fixed point."""
    return fixed_point_prefix(_GRIGORCHUK_SUB, "a", length)


# ---------------------------------------------------------------------------
# Text formats.  Prefixes: one line of letters.  Substitutions: one rule per
# line, "x -> word", with '#' comments.


def parse_substitution(source: str) -> Substitution:
    rules = {}
    for lineno, line in enumerate(source.splitlines(), start=1):
        line = line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split("->")
        if len(parts) != 2:
            raise InvalidInputError(f"line {lineno}: expected 'x -> word', got {line!r}")
        letter, word = parts[0].strip(), parts[1].strip()
        if len(letter) != 1:
            raise InvalidInputError(f"line {lineno}: rule source must be a single letter, got {letter!r}")
        if letter in rules:
            raise InvalidInputError(f"line {lineno}: duplicate rule for {letter!r}")
        rules[letter] = word
    if not rules:
        raise InvalidInputError("no rules found")
    return Substitution(Alphabet("".join(rules)), rules)


def format_substitution(sub: Substitution) -> str:
    return "\n".join(f"{ch} -> {sub.rules[ch]}" for ch in sub.alphabet.letters) + "\n"


def load_substitution(path) -> Substitution:
    with open(path, "r", encoding="ascii") as fh:
        return parse_substitution(fh.read())


def parse_prefix(source: str, alphabet: Alphabet | None = None) -> SymbolicPrefix:
    text = source.strip()
    if alphabet is None:
        alphabet = Alphabet("".join(sorted(set(text))))
    return SymbolicPrefix(alphabet, text)


def load_prefix(path, alphabet: Alphabet | None = None) -> SymbolicPrefix:
    with open(path, "r", encoding="ascii") as fh:
        return parse_prefix(fh.read(), alphabet)


def save_prefix(prefix: SymbolicPrefix, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        fh.write(prefix.text + "\n")
