"""Spectra of self-adjoint polynomials from truncated Fock-space compressions."""
from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np
from scipy import linalg

from ..bounds import NormCertificate, NormCertifier
from ..combinatorics import multiset_permutations
from ..errors import DomainError, NotSelfAdjointError
from ..fock import FockSpace, LeveledVector, apply_polynomial, check_open_q
from ..ncpoly import NcPolynomial, Word, asymmetric_terms, format_polynomial, format_word
from ..parallel import fold_map

logger = logging.getLogger(__name__)

GRID_DECIMALS = 12


def truncated_basis(d: int, level: int) -> List[Word]:
    """Words of length 0..level over 1..d, ordered by (level, letter type, lex)."""
    if d < 1:
        raise DomainError(f"d must be positive, got {d}")
    if level < 0:
        raise DomainError(f"level must be nonnegative, got {level}")
    basis: List[Word] = []
    for k in range(level + 1):
        for letters in combinations_with_replacement(range(1, d + 1), k):
            basis.extend(multiset_permutations(letters))
    return basis


def _resolve_dimension(P: NcPolynomial, dimension: Optional[int]) -> int:
    inferred = max(1, P.dimension_hint)
    if dimension is None:
        return inferred
    if dimension < inferred:
        raise DomainError(f"d = {dimension} is below the {inferred} variables used by the polynomial")
    return dimension


def _check_self_adjoint(P: NcPolynomial) -> None:
    offending = asymmetric_terms(P)
    if offending:
        raise NotSelfAdjointError([format_word(word) for word in offending])


def _whitening_factor(space: FockSpace, basis: Sequence[Word]) -> Tuple[np.ndarray, np.ndarray]:
    """Block-diagonal L-hat and per-row log scales s with Gram = diag(e^s) L-hat L-hat^T diag(e^s)."""
    factor = np.zeros((len(basis), len(basis)))
    half_logs = np.zeros(len(basis))
    start = 0
    while start < len(basis):
        letters = tuple(sorted(basis[start]))
        block = space.gram_block(letters)
        stop = start + block.size
        try:
            factor[start:stop, start:stop] = block.scaled_cholesky()
        except linalg.LinAlgError as exc:
            raise DomainError(
                f"Gram block {letters} is not numerically positive definite at q={space.q!r}"
            ) from exc
        half_logs[start:stop] = block.log_scale / 2.0
        start = stop
    return factor, half_logs


def orthonormal_compression(
    P: NcPolynomial,
    q: float,
    level: int,
    *,
    dimension: Optional[int] = None,
    space: Optional[FockSpace] = None,
) -> np.ndarray:
    """Matrix of Q_N P(A) Q_N in an orthonormal basis of levels 0..N, for any P."""
    q = check_open_q(q)
    if level < P.degree:
        raise DomainError(f"level {level} is below the polynomial degree {P.degree}")
    d = _resolve_dimension(P, dimension)
    space = space or FockSpace(q)
    basis = truncated_basis(d, level)
    index = {word: i for i, word in enumerate(basis)}
    factor, half_logs = _whitening_factor(space, basis)
    # entries of diag(e^s) M diag(e^-s); nonzero only between nearby levels
    words_matrix = np.zeros((len(basis), len(basis)))
    for column, word in enumerate(basis):
        image = apply_polynomial(P, LeveledVector(levels={len(word): {word: 1.0}}, q=q, d=d))
        for target, coefficient in image.truncate(level).terms():
            row = index[target]
            words_matrix[row, column] = coefficient * math.exp(half_logs[row] - half_logs[column])

    # L-hat^T M-hat L-hat^{-T}
    right = linalg.solve_triangular(factor, words_matrix.T, lower=True).T
    compressed = factor.T @ right
    if not np.all(np.isfinite(compressed)):
        raise DomainError(f"compression at q={q!r}, level {level} is not finite in double precision")
    logger.debug("compressed %s at q=%r to dimension %d", format_polynomial(P), q, len(basis))
    return compressed


def compressed_matrix(
    P: NcPolynomial,
    q: float,
    level: int,
    *,
    dimension: Optional[int] = None,
    space: Optional[FockSpace] = None,
) -> np.ndarray:
    """Orthonormal compression of a self-adjoint P, before symmetrization."""
    _check_self_adjoint(P)
    return orthonormal_compression(P, q, level, dimension=dimension, space=space)


def symmetry_defect(matrix: np.ndarray) -> float:
    if matrix.size == 0:
        return 0.0
    return float(np.max(np.abs(matrix - matrix.T)))


def truncated_matrix(
    P: NcPolynomial,
    q: float,
    level: int,
    *,
    dimension: Optional[int] = None,
    space: Optional[FockSpace] = None,
) -> np.ndarray:
    """Symmetric matrix of P(A) compressed to Fock levels 0..N."""
    matrix = compressed_matrix(P, q, level, dimension=dimension, space=space)
    defect = symmetry_defect(matrix)
    if defect > 1e-8:
        logger.warning("compression is off symmetric by %.3g at q=%r level=%d", defect, q, level)
    return (matrix + matrix.T) / 2.0


def compression_norm(
    P: NcPolynomial,
    q: float,
    level: int,
    *,
    dimension: Optional[int] = None,
    space: Optional[FockSpace] = None,
) -> float:
    """Spectral norm of the compression; a lower bound for ||P(A)||."""
    matrix = orthonormal_compression(P, q, level, dimension=dimension, space=space)
    if matrix.size == 0:
        return 0.0
    return float(linalg.svdvals(matrix)[0])


@dataclass(frozen=True, slots=True)
class SpectrumEstimate:
    eigenvalues: Tuple[float, ...]
    level: int
    q: float
    poly_text: str

    @property
    def spectral_radius(self) -> float:
        return max((abs(value) for value in self.eigenvalues), default=0.0)

    def to_document(self) -> Dict[str, Any]:
        return {
            "q": self.q,
            "level": self.level,
            "poly": self.poly_text,
            "eigenvalues": list(self.eigenvalues),
        }


def spectrum_estimate(
    P: NcPolynomial,
    q: float,
    level: int,
    *,
    dimension: Optional[int] = None,
    space: Optional[FockSpace] = None,
) -> SpectrumEstimate:
    matrix = truncated_matrix(P, q, level, dimension=dimension, space=space)
    eigenvalues = linalg.eigvalsh(matrix) if matrix.size else np.empty(0)
    return SpectrumEstimate(
        eigenvalues=tuple(float(value) for value in np.sort(eigenvalues)),
        level=level,
        q=float(q),
        poly_text=format_polynomial(P),
    )


def _as_point_set(values: Iterable[float], name: str) -> np.ndarray:
    points = np.unique(np.asarray(list(values), dtype=float))
    if points.size == 0:
        raise DomainError(f"Hausdorff distance needs a nonempty set {name}")
    if not np.all(np.isfinite(points)):
        raise DomainError(f"set {name} contains non-finite values")
    return points


def _directed(source: np.ndarray, target: np.ndarray) -> float:
    # both sorted; nearest target point sits at the insertion index or just left of it
    slots = np.searchsorted(target, source)
    right = np.clip(slots, 0, target.size - 1)
    left = np.clip(slots - 1, 0, target.size - 1)
    nearest = np.minimum(np.abs(source - target[right]), np.abs(source - target[left]))
    return float(nearest.max())


def hausdorff_distance(A: Iterable[float], B: Iterable[float]) -> float:
    """max(sup_a d(a, B), sup_b d(b, A)) for finite real sets."""
    a = _as_point_set(A, "A")
    b = _as_point_set(B, "B")
    return max(_directed(a, b), _directed(b, a))


def adjacent_hausdorff(spectra: Sequence[SpectrumEstimate]) -> List[float]:
    """Distances between consecutive spectra of a sweep."""
    return [
        hausdorff_distance(left.eigenvalues, right.eigenvalues)
        for left, right in zip(spectra, spectra[1:])
    ]


def q_edge(q: float) -> float:
    """Right edge 2/sqrt(1-q) of the q-semicircular support."""
    return 2.0 / math.sqrt(1.0 - check_open_q(q))


def q_grid(q_from: float, q_to: float, steps: int) -> List[float]:
    """Uniform grid including both endpoints."""
    if steps < 2:
        raise DomainError(f"a sweep needs at least 2 steps, got {steps}")
    start = check_open_q(q_from)
    stop = check_open_q(q_to)
    return [round(start + (stop - start) * k / (steps - 1), GRID_DECIMALS) for k in range(steps)]


@dataclass(slots=True)
class SweepOptions:
    target_gap: Optional[float] = None
    n: Optional[int] = None
    with_spectra: bool = False
    level: int = 8
    dimension: Optional[int] = None
    workers: Optional[int] = 1

    @classmethod
    def default(cls) -> "SweepOptions":
        return cls()

    @classmethod
    def from_config(
        cls, spectra: Dict[str, Any] | None, runtime: Dict[str, Any] | None = None
    ) -> "SweepOptions":
        defaults = cls.default()
        spectra = spectra or {}
        runtime = runtime or {}
        threads = runtime.get("threads")
        return cls(
            level=int(spectra.get("level") or defaults.level),
            workers=int(threads) if threads is not None else None,
        )


@dataclass(frozen=True, slots=True)
class SweepRow:
    q: float
    lower: float
    upper: float
    direct_upper: float
    n_used: int
    level_used: int
    exhausted_budget: bool = False
    spectrum: Optional[SpectrumEstimate] = None

    @classmethod
    def from_certificate(
        cls, certificate: NormCertificate, spectrum: Optional[SpectrumEstimate] = None
    ) -> "SweepRow":
        return cls(
            q=certificate.q,
            lower=certificate.lower,
            upper=certificate.upper,
            direct_upper=certificate.upper_direct,
            n_used=certificate.n_used,
            level_used=certificate.level_used,
            exhausted_budget=certificate.exhausted_budget,
            spectrum=spectrum,
        )


def sweep(
    P: NcPolynomial,
    q_from: float,
    q_to: float,
    steps: int,
    options: Optional[SweepOptions] = None,
    certifier: Optional[NormCertifier] = None,
) -> List[SweepRow]:
    """Certify ||P|| (and optionally estimate the spectrum) at every grid point, in q order.

    Without a fixed ``n`` or a target gap each point runs the full doubling
    schedule of the certifier.
    """
    options = options or SweepOptions.default()
    certifier = certifier or NormCertifier()
    grid = q_grid(q_from, q_to, steps)
    if options.with_spectra:
        _check_self_adjoint(P)

    def run_point(q: float) -> SweepRow:
        if options.n is None and options.target_gap is None:
            certificate = certifier.certify_schedule(P, q)
        else:
            certificate = certifier.certify(P, q, target_gap=options.target_gap, n=options.n)
        spectrum = None
        if options.with_spectra:
            spectrum = spectrum_estimate(P, q, options.level, dimension=options.dimension)
        logger.info("sweep q=%r done: [%.6g, %.6g]", q, certificate.lower, certificate.upper)
        return SweepRow.from_certificate(certificate, spectrum)

    return fold_map(run_point, grid, options.workers)
