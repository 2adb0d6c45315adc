"""Exact recovery of a single-reflection dictionary from binary-coded data.

Data columns follow y = (I - 2uu^T) x with x a 0/1 vector. Reflections
preserve norms, so ||y||^2 must equal the popcount of x; for a guessed x with
matching norm the direction is pinned down (up to sign) as (x - y)/||x - y||.
Brute-force enumeration of guesses per column plus a two-column intersection
identifies u uniquely; the enumeration is exponential by design and refuses
instances above a size cap.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .core import Reflector, SIGN_EPS, make_reflector

NORM_MATCH_ATOL = 1e-6   # |popcount - ||y||^2| above this rules a guess out
SOLUTION_ATOL = 1e-9     # re-substitution residual allowed for a candidate
FIXED_ATOL = 1e-9        # ||x - y|| at or below this means the column is fixed
MATCH_ATOL = 1e-8        # +-equivalence threshold when intersecting candidates
DECODE_ATOL = 1e-6       # how far decoded codes may sit from {0, 1}
ENUMERATION_CAP = 24     # brute force is exponential; refuse larger instances

_CHUNK = 1 << 15         # supports solved per vectorized block


class RecoveryError(ValueError):
    """Base class for recovery failures that are data outcomes, not bugs."""


class AmbiguousRecoveryError(RecoveryError):
    """More than one reflection dictionary is consistent with the data."""


class NoCommonCandidateError(RecoveryError):
    """No single reflection with binary codes explains the data."""


class InstanceTooLargeError(RecoveryError):
    """Instance exceeds the brute-force enumeration cap."""


class _SubspaceMarker:
    """Sentinel: the guess equals the column, so any direction orthogonal to it works."""

    __slots__ = ()

    def __repr__(self):
        return "SUBSPACE_MARKER"


SUBSPACE_MARKER = _SubspaceMarker()


def solve_column(y, x) -> Reflector | _SubspaceMarker | None:
    """Solve (I - 2uu^T) x = y for a unit direction u.

    Returns the canonical Reflector when the unique-up-to-sign solution
    exists, SUBSPACE_MARKER when x equals y (the column is fixed and only
    constrains u to be orthogonal to it), and None when no unit-norm solution
    exists. Candidates are re-substituted before being accepted.
    """
    y = np.asarray(y, dtype=float)
    x = np.asarray(x, dtype=float)
    if x.shape != y.shape:
        raise ValueError("dimension mismatch between column and guess")
    difference = x - y
    if np.linalg.norm(difference) <= FIXED_ATOL * max(1.0, np.linalg.norm(x)):
        return SUBSPACE_MARKER
    if abs(x @ x - y @ y) > NORM_MATCH_ATOL:
        return None  # reflections preserve norms
    reflector = make_reflector(difference)
    u = reflector.u
    if np.linalg.norm(x - 2.0 * (u @ x) * u - y) > SOLUTION_ATOL:
        return None
    return reflector


def _canonicalize_rows(U: np.ndarray) -> np.ndarray:
    """Row-wise canonical sign: first entry above SIGN_EPS made positive."""
    anchor = np.argmax(np.abs(U) > SIGN_EPS, axis=1)
    signs = np.where(U[np.arange(U.shape[0]), anchor] < 0.0, -1.0, 1.0)
    return U * signs[:, None]


def _windowed_scan(A: np.ndarray, B: np.ndarray, tol: float):
    """Yield (i, distances) for rows of A against the tol-window of sorted B.

    Canonical rows that match up to sign have first coordinates within
    tol (plus sign-anchor slack), so sorting B by its first coordinate
    bounds each scan to a narrow window.
    """
    order = np.argsort(B[:, 0], kind="stable")
    sorted_B = B[order]
    first = sorted_B[:, 0]
    window = tol + 1e-9
    for i, row in enumerate(A):
        lo = np.searchsorted(first, row[0] - window, "left")
        hi = np.searchsorted(first, row[0] + window, "right")
        if lo == hi:
            yield i, None, None
            continue
        block = sorted_B[lo:hi]
        distances = np.minimum(
            np.linalg.norm(block - row, axis=1), np.linalg.norm(block + row, axis=1)
        )
        yield i, distances, order[lo:hi]


def _match_mask(A: np.ndarray, B: np.ndarray, tol: float) -> np.ndarray:
    """Per row of A: does any row of B match it up to sign within tol."""
    mask = np.zeros(A.shape[0], dtype=bool)
    if B.shape[0]:
        for i, distances, _ in _windowed_scan(A, B, tol):
            mask[i] = distances is not None and bool((distances <= tol).any())
    return mask


def _dedupe_rows(U: np.ndarray, tol: float) -> np.ndarray:
    """Indices of one representative per sign-equivalence class, ascending."""
    count = U.shape[0]
    if count == 0:
        return np.array([], dtype=np.intp)
    order = np.argsort(U[:, 0], kind="stable")
    first = U[order, 0]
    window = tol + 1e-9
    keep = np.zeros(count, dtype=bool)
    for position, index in enumerate(order):
        row = U[index]
        lo = np.searchsorted(first, row[0] - window, "left")
        duplicate = False
        for earlier in range(lo, position):
            other = order[earlier]
            if not keep[other]:
                continue
            b = U[other]
            if min(np.linalg.norm(row - b), np.linalg.norm(row + b)) <= tol:
                duplicate = True
                break
        if not duplicate:
            keep[index] = True
    return np.flatnonzero(keep)


@dataclass(frozen=True)
class CandidateSet:
    """Reflector candidates induced by one data column.

    guesses holds the binary vector behind each candidate. A subspace
    constraint is recorded when some guess equals the column itself; note
    explains empty sets (zero column, norm not near an integer).
    """

    candidates: tuple[Reflector, ...]
    guesses: tuple[tuple[int, ...], ...]
    has_subspace_constraint: bool = False
    note: str = ""

    def __len__(self) -> int:
        return len(self.candidates)

    def directions(self) -> np.ndarray:
        """Candidate directions stacked as rows (empty (0, 0) when none)."""
        if not self.candidates:
            return np.empty((0, 0))
        return np.array([c.u for c in self.candidates])


def _support_blocks(n: int, ones: int):
    supports = itertools.combinations(range(n), ones)
    while True:
        block = list(itertools.islice(supports, _CHUNK))
        if not block:
            return
        yield np.array(block, dtype=np.intp)


def enumerate_candidates(y, cap: int = ENUMERATION_CAP) -> CandidateSet:
    """All reflector candidates for one column under binary codes.

    Only guesses whose popcount matches round(||y||^2) can solve the column,
    which prunes the 2^n guesses down to one binomial slice; supports are
    visited in lexicographic order and solved in vectorized blocks (the
    scalar reference path is solve_column). Duplicate candidates (up to
    sign) are dropped.
    """
    y = np.asarray(y, dtype=float)
    n = y.shape[0]
    if n > cap:
        raise InstanceTooLargeError(
            f"instance too large: n = {n} exceeds enumeration cap {cap}"
        )
    norm_sq = float(y @ y)
    ones = int(round(norm_sq))
    if ones < 0 or ones > n or abs(norm_sq - ones) > NORM_MATCH_ATOL:
        return CandidateSet((), (), note="column norm inconsistent with binary codes")
    if ones == 0:
        return CandidateSet((), (), note="zero column")

    fixed_cut = FIXED_ATOL * max(1.0, np.sqrt(float(ones)))
    has_marker = False
    direction_blocks: list[np.ndarray] = []
    guess_blocks: list[np.ndarray] = []
    for supports in _support_blocks(n, ones):
        X = np.zeros((supports.shape[0], n))
        X[np.arange(supports.shape[0])[:, None], supports] = 1.0
        D = X - y
        distances = np.linalg.norm(D, axis=1)
        if (distances <= fixed_cut).any():
            has_marker = True
        usable = distances > fixed_cut
        U = D[usable] / distances[usable, None]
        Xu = X[usable]
        coefficients = np.einsum("ij,ij->i", U, Xu)
        residuals = np.linalg.norm(Xu - 2.0 * coefficients[:, None] * U - y, axis=1)
        solved = residuals <= SOLUTION_ATOL
        if solved.any():
            direction_blocks.append(_canonicalize_rows(U[solved]))
            guess_blocks.append(Xu[solved])

    if not direction_blocks:
        return CandidateSet((), (), has_marker)
    directions = np.vstack(direction_blocks)
    guesses = np.vstack(guess_blocks)
    keep = _dedupe_rows(directions, MATCH_ATOL)
    return CandidateSet(
        tuple(Reflector(directions[i]) for i in keep),
        tuple(tuple(int(b) for b in guesses[i]) for i in keep),
        has_marker,
    )


@dataclass(frozen=True)
class RecoveryResult:
    """Recovered reflection, binary codes, and reconstruction residual."""

    u: Reflector
    X: np.ndarray
    residual: float


def _is_binary(y: np.ndarray) -> bool:
    rounded = np.rint(y)
    if np.max(np.abs(y - rounded)) > DECODE_ATOL:
        return False
    return bool(rounded.min() >= 0.0 and rounded.max() <= 1.0)


def recover(Y, cap: int = ENUMERATION_CAP) -> RecoveryResult:
    """Recover the reflection dictionary and binary codes from Y = (I-2uu^T) X.

    Intersects the candidate sets of the first two informative columns; under
    the binary model that intersection contains a single reflection, which
    then decodes every column of X directly (x = H y, H being an involution).

    Degenerate columns carry no usable finite candidates and are skipped when
    picking the two columns to intersect: zero columns, columns that are
    themselves binary (the dictionary may fix them), and duplicates of an
    already chosen column.

    Raises:
        ValueError: fewer than two data columns.
        InstanceTooLargeError: n exceeds the enumeration cap.
        NoCommonCandidateError: no reflection is consistent with the chosen
            columns, or decoding does not yield binary codes.
        AmbiguousRecoveryError: several reflections remain (e.g. all columns
            identical) or too few informative columns exist to decide.
    """
    Y = np.asarray(Y, dtype=float)
    if Y.ndim != 2:
        raise ValueError("Y must be a matrix")
    n, p = Y.shape
    if p < 2:
        raise ValueError("recovery needs at least two data columns")
    if n > cap:
        raise InstanceTooLargeError(
            f"instance too large: n = {n} exceeds enumeration cap {cap}"
        )

    chosen: list[tuple[int, CandidateSet]] = []
    duplicates: list[tuple[int, CandidateSet]] = []
    for j in range(p):
        column = Y[:, j]
        if np.linalg.norm(column) <= FIXED_ATOL:
            continue  # zero column: satisfied by every direction
        if _is_binary(column):
            continue  # possibly fixed by the dictionary; finite candidates mislead
        candidate_set = enumerate_candidates(column, cap=cap)
        if len(candidate_set) == 0:
            raise NoCommonCandidateError(
                f"no common candidate: column {j} admits no reflection under binary codes"
            )
        if any(np.allclose(column, Y[:, i], atol=1e-12) for i, _ in chosen):
            duplicates.append((j, candidate_set))
            continue
        chosen.append((j, candidate_set))
        if len(chosen) == 2:
            break
    if len(chosen) < 2:
        chosen.extend(duplicates)
    if len(chosen) < 2:
        raise AmbiguousRecoveryError(
            "ambiguous: fewer than two informative columns in the data"
        )

    (index_a, set_a), (index_b, set_b) = chosen[0], chosen[1]
    matches = _match_mask(set_a.directions(), set_b.directions(), MATCH_ATOL)
    count = int(matches.sum())
    if count == 0:
        raise NoCommonCandidateError(
            f"no common candidate between columns {index_a} and {index_b}"
        )
    if count > 1:
        raise AmbiguousRecoveryError(
            f"ambiguous: columns {index_a} and {index_b} share {count} candidates"
        )
    u = set_a.candidates[int(np.flatnonzero(matches)[0])]

    H = np.eye(n) - 2.0 * np.outer(u.u, u.u)
    decoded = H @ Y  # H is its own inverse
    X = np.rint(decoded)
    if np.max(np.abs(decoded - X)) > DECODE_ATOL or X.min() < 0.0 or X.max() > 1.0:
        raise NoCommonCandidateError(
            "codes decoded from the recovered reflection are not binary"
        )
    residual = float(np.linalg.norm(H @ X - Y, "fro"))
    return RecoveryResult(u, X.astype(int), residual)


def non_uniqueness_example(p: int) -> tuple[Reflector, np.ndarray, Reflector, np.ndarray]:
    """Two distinct (reflection, codes) pairs producing identical data.

    With real-valued codes the factorization Y = HX is never unique: fix two
    different reflections and solve the per-column consistency equations,
    which here reduces to X1 = H1 H2 X2. Returns (u1, X1, u2, X2) with
    u1 != +-u2 and identical products to machine precision. The first column
    of X2 is (1, 0); later columns are distinct by construction, and a zero
    column in X2 would map to a zero column in X1.
    """
    if p < 1:
        raise ValueError("p must be positive")
    u1 = make_reflector(np.array([np.sqrt(1.0 / 3.0), np.sqrt(2.0 / 3.0)]))
    u2 = make_reflector(np.array([1.0, 1.0]))
    H1 = np.eye(2) - 2.0 * np.outer(u1.u, u1.u)
    H2 = np.eye(2) - 2.0 * np.outer(u2.u, u2.u)
    X2 = np.vstack([1.0 + np.arange(p), np.arange(p, dtype=float)])
    X1 = H1 @ (H2 @ X2)
    return u1, X1, u2, X2
