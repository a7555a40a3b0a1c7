"""Partial periods, essential periods, and the level-k period skeleton.

A position n of a sequence has partial period p when the letters at
n, n+p, n+2p, ... all agree.  Two certification modes are offered:

* ``rigid`` checks the first three multiples only.  For sequences drawn
  from the orbit closure of the Grigorchuk fixed point this is already
  conclusive: four equal terms force all further terms to agree.
* ``heuristic`` scans every multiple available in the prefix and reports
  how far it looked.  It is valid for arbitrary input but certifies
  nothing beyond the data.

The period skeleton records, for each level k, the unique residue class
M_k mod 2^k whose column is not constant, together with the letter l_k
that fills the column which became constant at level k.  These per-level
data are what the dyadic encoding in ``factormap`` is built from.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError, InvalidInputError, NotInSubshiftError
from .substitution import SymbolicPrefix

RIGID = "rigid"
HEURISTIC = "heuristic"

TOEPLITZ_LIKE = "toeplitz_like"
EVENTUALLY_CONSTANT_MK = "eventually_constant_Mk"

_RIGID_TERMS = 3  # multiples checked beyond the base position


def _check_mode(mode: str) -> None:
    if mode not in (RIGID, HEURISTIC):
        raise InvalidInputError(f"mode must be {RIGID!r} or {HEURISTIC!r}, got {mode!r}")


@dataclass(frozen=True)
class PartialPeriodCertificate:
    position: int
    period: int
    verified_horizon: int  # largest k with position + k*period checked
    mode: str

    @property
    def holds(self) -> bool:
        return True


@dataclass(frozen=True)
class PeriodRefutation:
    position: int
    period: int
    failed_multiple: int  # smallest k with a differing letter
    mode: str

    @property
    def holds(self) -> bool:
        return False


def is_partially_periodic_at(prefix: SymbolicPrefix, n: int, p: int, mode: str = RIGID):
    """Certificate or refutation for partial period p at position n."""
    _check_mode(mode)
    if n < 1 or p < 1:
        raise InvalidInputError(f"need n >= 1 and p >= 1, got n={n}, p={p}")
    L = len(prefix)
    if mode == RIGID:
        need = n + _RIGID_TERMS * p
        if need > L:
            raise InsufficientDataError(
                f"rigid test at (n={n}, p={p}) needs prefix length {need}, have {L}",
                required_length=need,
            )
        kmax = _RIGID_TERMS
    else:
        if n + p > L:
            raise InsufficientDataError(
                f"heuristic test at (n={n}, p={p}) needs prefix length {n + p}, have {L}",
                required_length=n + p,
            )
        kmax = (L - n) // p
    base = prefix.text[n - 1]
    for k in range(1, kmax + 1):
        if prefix.text[n - 1 + k * p] != base:
            return PeriodRefutation(position=n, period=p, failed_multiple=k, mode=mode)
    return PartialPeriodCertificate(position=n, period=p, verified_horizon=kmax, mode=mode)


def smallest_partial_period(prefix: SymbolicPrefix, n: int, mode: str = RIGID) -> int:
    """Least p accepted at position n, scanning p = 1, 2, ..."""
    _check_mode(mode)
    if n < 1 or n > len(prefix):
        raise InvalidInputError(f"position {n} outside 1..{len(prefix)}")
    L = len(prefix)
    terms = _RIGID_TERMS if mode == RIGID else 1
    p = 1
    while n + terms * p <= L:
        if is_partially_periodic_at(prefix, n, p, mode).holds:
            return p
        p += 1
    raise InsufficientDataError(
        f"no partial period certifiable at position {n} within prefix length {L};"
        f" testing p={p} needs length {n + terms * p}",
        required_length=n + terms * p,
    )


@dataclass(frozen=True)
class EPSet:
    """Essential partial periods found below a horizon, with witnesses."""

    periods: tuple
    horizon: int
    witnesses: dict  # period -> a position whose smallest partial period it is

    def __contains__(self, p: int) -> bool:
        return p in self.witnesses


def essential_periods(prefix: SymbolicPrefix, horizon: int, mode: str = RIGID) -> EPSet:
    """Set of p <= horizon realized as the smallest partial period of some position."""
    _check_mode(mode)
    if horizon < 1:
        raise InvalidInputError(f"horizon must be positive, got {horizon}")
    L = len(prefix)
    if mode == RIGID:
        if 4 * horizon > L:
            raise InsufficientDataError(
                f"rigid mode with horizon {horizon} needs prefix length {4 * horizon}, have {L}",
                required_length=4 * horizon,
            )
        return _essential_periods_rigid(prefix, horizon)
    if horizon + 1 > L:
        raise InsufficientDataError(
            f"heuristic mode with horizon {horizon} needs prefix length {horizon + 1}, have {L}",
            required_length=horizon + 1,
        )
    return _essential_periods_heuristic(prefix, horizon)


def _essential_periods_rigid(prefix: SymbolicPrefix, horizon: int) -> EPSet:
    codes = prefix.codes
    nmax = len(prefix) - _RIGID_TERMS * horizon
    # every scanned position can be tested against every p <= horizon
    unresolved = np.arange(nmax, dtype=np.int64)  # 0-based indices
    witnesses = {}
    for p in range(1, horizon + 1):
        if unresolved.size == 0:
            break
        base = codes[unresolved]
        ok = (
            (codes[unresolved + p] == base)
            & (codes[unresolved + 2 * p] == base)
            & (codes[unresolved + 3 * p] == base)
        )
        if ok.any():
            witnesses[p] = int(unresolved[ok][0]) + 1
            unresolved = unresolved[~ok]
    return EPSet(periods=tuple(sorted(witnesses)), horizon=horizon, witnesses=witnesses)


def _essential_periods_heuristic(prefix: SymbolicPrefix, horizon: int) -> EPSet:
    codes = prefix.codes
    L = len(prefix)
    witnesses = {}
    for n in range(1, L - horizon + 1):
        for p in range(1, horizon + 1):
            if n + p > L:
                break
            tail = codes[n - 1 + p :: p]
            if (tail == codes[n - 1]).all():
                witnesses.setdefault(p, n)
                break
    return EPSet(periods=tuple(sorted(witnesses)), horizon=horizon, witnesses=witnesses)


@dataclass(frozen=True)
class PeriodSkeleton:
    """Per-level non-constant column M_k and fill letter l_k, k = 1..K."""

    levels: tuple  # M_k for k = 1..K
    letters: tuple  # l_k for k = 1..K
    classification: str
    window_used: int

    @property
    def depth(self) -> int:
        return len(self.levels)


def skeleton_levels_from_codes(codes: np.ndarray, K: int):
    """Core scan: (M_1..M_K, l_1..l_K codes) from a code array, window 2^(K+2).

    Operates on raw uint8 codes so callers can slice shifted windows without
    re-materializing prefix objects.
    """
    window = 1 << (K + 2)
    if len(codes) < window:
        raise InsufficientDataError(
            f"skeleton at depth {K} needs prefix length {window}, have {len(codes)}",
            required_length=window,
        )
    levels = []
    letters = []
    prev_m = None
    for k in range(1, K + 1):
        cols = 1 << k
        block = codes[: 4 * cols].reshape(4, cols)
        nonconst = np.nonzero((block != block[0]).any(axis=0))[0]
        if len(nonconst) == 0:
            raise NotInSubshiftError(
                f"window of length {4 * cols} is periodic with period {cols};"
                f" no level-{k} non-constant column exists"
            )
        if len(nonconst) > 1:
            raise NotInSubshiftError(
                f"{len(nonconst)} non-constant columns at level {k}; a valid sequence has exactly one"
            )
        m = int(nonconst[0]) + 1
        if prev_m is None:
            newly = 1 if m == 2 else 2
        else:
            half = 1 << (k - 1)
            if m % half != prev_m % half:
                raise NotInSubshiftError(
                    f"level-{k} column {m} is not nested in level-{k - 1} column {prev_m}"
                )
            newly = prev_m if m != prev_m else prev_m + half
        levels.append(m)
        letters.append(int(block[0, newly - 1]))
        prev_m = m
    return levels, letters


def period_skeleton(prefix: SymbolicPrefix, K: int) -> PeriodSkeleton:
    """Scan all residue columns of levels 1..K over the window [1, 2^(K+2)]."""
    if K < 1:
        raise InvalidInputError(f"depth K must be positive, got {K}")
    levels, letter_codes = skeleton_levels_from_codes(prefix.codes, K)
    letters = tuple(prefix.alphabet.letters[c] for c in letter_codes)
    if K >= 2 and levels[-1] == levels[-2]:
        classification = EVENTUALLY_CONSTANT_MK
    else:
        classification = TOEPLITZ_LIKE
    return PeriodSkeleton(
        levels=tuple(levels),
        letters=letters,
        classification=classification,
        window_used=1 << (K + 2),
    )
