"""The factor map onto the dyadic integers, and fiber classification.

The subshift generated by the Grigorchuk fixed point maps onto the binary
odometer: there is a unique continuous map f with f(shift x) = f(x) + 1 and
f(fixed point) = 0.  The first k dyadic digits of f(x) are computable from
the first 2^(k+2) letters of x: they are the binary expansion of 2^k - M_k,
where M_k is the level-k non-constant column of the period skeleton.

The map is injective away from a countable exceptional set: the backward
orbit of the single point (here the fixed point itself) whose shift
preimage is not a singleton.  ``classify_fiber`` decides, from a finite
window, which side of that dichotomy a sequence appears to be on.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import InsufficientDataError, InvalidInputError
from .odometer import DyadicInt
from .substitution import (
    GRIGORCHUK_ALPHABET,
    SymbolicPrefix,
    grigorchuk_prefix,
)
from .toeplitz import PeriodSkeleton, period_skeleton, skeleton_levels_from_codes

TOEPLITZ_POINT = "toeplitz_point"
OMEGA_STAR_ORBIT = "omega_star_orbit"

DEFAULT_MASTER_LENGTH = 1 << 22
DEFAULT_LANGUAGE_HORIZON = 64


@dataclass(frozen=True)
class EncodingResult:
    """First-k-digit dyadic encoding of a sequence, with its provenance."""

    value: DyadicInt
    window_used: int
    skeleton: PeriodSkeleton


def encode_value(prefix_codes, k: int) -> int:
    """Integer value of the first k dyadic digits, straight from the skeleton."""
    levels, _ = skeleton_levels_from_codes(prefix_codes, k)
    return (1 << k) - levels[-1]


def encode_fG(prefix: SymbolicPrefix, k: int) -> EncodingResult:
    """First k dyadic digits of the factor-map value of ``prefix``.

    Normalized so the unshifted fixed point encodes to 0.
    """
    if k < 1:
        raise InvalidInputError(f"precision k must be positive, got {k}")
    skeleton = period_skeleton(prefix, k)
    value = (1 << k) - skeleton.levels[-1]
    return EncodingResult(
        value=DyadicInt.from_int(value, k),
        window_used=skeleton.window_used,
        skeleton=skeleton,
    )


@dataclass(frozen=True)
class EquivarianceReport:
    ok: bool
    precision: int
    shifts_checked: int
    first_violation: int | None  # shift count n where encode(n+1) != encode(n) + 1
    values: tuple  # encoded integers at shifts 0..shifts


def verify_equivariance(prefix: SymbolicPrefix, k: int, shifts: int) -> EquivarianceReport:
    """Check encode(shift^(n+1) x) = encode(shift^n x) + 1 mod 2^k for n < shifts."""
    if shifts < 1:
        raise InvalidInputError(f"shifts must be positive, got {shifts}")
    window = 1 << (k + 2)
    need = shifts + window
    if len(prefix) < need:
        raise InsufficientDataError(
            f"{shifts} shifts at precision {k} need prefix length {need}, have {len(prefix)}",
            required_length=need,
        )
    codes = prefix.codes
    values = [encode_value(codes[n : n + window], k) for n in range(shifts + 1)]
    modulus = 1 << k
    first_violation = None
    for n in range(shifts):
        if values[n + 1] != (values[n] + 1) % modulus:
            first_violation = n
            break
    return EquivarianceReport(
        ok=first_violation is None,
        precision=k,
        shifts_checked=shifts,
        first_violation=first_violation,
        values=tuple(values),
    )


@lru_cache(maxsize=2)
def _master_text(length: int) -> str:
    return grigorchuk_prefix(length).text


def sigma_preimage_letters(
    prefix: SymbolicPrefix,
    language_horizon: int = DEFAULT_LANGUAGE_HORIZON,
    master_length: int = DEFAULT_MASTER_LENGTH,
) -> set:
    """Letters l such that l + prefix stays in the language up to the horizon.

    Every factor of l + prefix other than its length-horizon head is already
    a factor of the prefix, so only the head needs to be searched for in the
    master language index (a long prefix of the fixed point, whose factor
    set is the full language by minimality).
    """
    if language_horizon < 2:
        raise InvalidInputError(f"language horizon must be >= 2, got {language_horizon}")
    if 4 * language_horizon > master_length:
        raise InsufficientDataError(
            f"horizon {language_horizon} exceeds the support of a master prefix of length"
            f" {master_length}; need at least {4 * language_horizon}",
            required_length=4 * language_horizon,
        )
    if len(prefix) < language_horizon - 1:
        raise InsufficientDataError(
            f"prefix of length {len(prefix)} too short for horizon {language_horizon}",
            required_length=language_horizon - 1,
        )
    master = _master_text(master_length)
    head = prefix.text[: language_horizon - 1]
    return {l for l in prefix.alphabet.letters if (l + head) in master}


@dataclass(frozen=True)
class FiberReport:
    classification: str  # TOEPLITZ_POINT or OMEGA_STAR_ORBIT
    stabilization_index: int | None  # n with shift^n(x) = the exceptional point
    sigma_preimage_letters: frozenset
    skeleton: PeriodSkeleton


def classify_fiber(
    prefix: SymbolicPrefix,
    K: int,
    language_horizon: int = DEFAULT_LANGUAGE_HORIZON,
) -> FiberReport:
    """Decide whether ``prefix`` looks like a Toeplitz point or sits over the exceptional orbit.

    The encoded value N_k = 2^k - M_k stabilizing at n means shift^n of the
    sequence is the exceptional point (n = 0: the sequence is that point
    itself); M_k stabilizing at n means shift^n maps it there from behind
    (a non-Toeplitz sequence).  If neither column index settles within the
    window, the sequence is a Toeplitz point as far as the data can tell.
    """
    skeleton = period_skeleton(prefix, K)
    levels = skeleton.levels
    classification = TOEPLITZ_POINT
    stabilization_index = None
    if all(m == 1 << (k + 1) for k, m in enumerate(levels)):
        # M_k = 2^k throughout: the window is consistent with the exceptional point itself
        classification = OMEGA_STAR_ORBIT
        stabilization_index = 0
    elif K >= 2 and levels[-1] == levels[-2]:
        classification = OMEGA_STAR_ORBIT
        stabilization_index = levels[-1]
    letters = sigma_preimage_letters(prefix, language_horizon)
    return FiberReport(
        classification=classification,
        stabilization_index=stabilization_index,
        sigma_preimage_letters=frozenset(letters),
        skeleton=skeleton,
    )


# l_k letters of the Grigorchuk skeleton: level k is filled by the letter of
# valuation k-1 (a, then c, b, d repeating).
def grigorchuk_level_letter(k: int) -> str:
    if k < 1:
        raise InvalidInputError(f"level must be positive, got {k}")
    if k == 1:
        return "a"
    return {1: "c", 2: "b", 0: "d"}[(k - 1) % 3]


def reconstruct_from_skeleton(
    level_residues,
    length: int,
    tail_letter: str,
    letters=None,
) -> SymbolicPrefix:
    """Build a prefix with prescribed non-constant columns M'_1, M'_2, ...

    Position m gets the fill letter of the first level whose column it leaves;
    positions that track every prescribed column get ``tail_letter`` (the
    choice is not canonical, matching the non-uniqueness of such points).
    Residues must be nested: M'_{k+1} = M'_k mod 2^k.
    """
    residues = list(level_residues)
    K = len(residues)
    if K < 1:
        raise InvalidInputError("need at least one level residue")
    for k, m in enumerate(residues, start=1):
        if not 1 <= m <= 1 << k:
            raise InvalidInputError(f"residue {m} at level {k} outside 1..{1 << k}")
        if k >= 2 and m % (1 << (k - 1)) != residues[k - 2] % (1 << (k - 1)):
            raise InvalidInputError(f"residue {m} at level {k} is not nested in {residues[k - 2]}")
    if letters is None:
        letters = [grigorchuk_level_letter(k) for k in range(1, K + 1)]
    out = []
    for m in range(1, length + 1):
        letter = tail_letter
        for k in range(1, K + 1):
            if m % (1 << k) != residues[k - 1] % (1 << k):
                letter = letters[k - 1]
                break
        out.append(letter)
    return SymbolicPrefix(GRIGORCHUK_ALPHABET, "".join(out))
